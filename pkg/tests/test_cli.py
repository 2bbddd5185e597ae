import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from bosonzqft.boson import BosonPolynomial
from bosonzqft.cli import RunConfig, UsageError, main, parse_weight_spec, run
from bosonzqft.egf import EgfSeries
from bosonzqft.zqft import GraphClassTable


def cli(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_parse_weight_spec():
    assert parse_weight_spec("ones", 4).weights == (1, 1, 1, 1)
    assert parse_weight_spec("one-plus-delta:2", 4).weights == (1, 1, 0, 0)
    assert parse_weight_spec("[0,1,1,1]", 6).weights == (0, 1, 1, 1, 0, 0)
    assert parse_weight_spec("[1/2, -3]", 1).weights == (Fraction(1, 2),)


@pytest.mark.parametrize("bad", ["nope", "[]", "[1,x]", "[1.5]", "ones:2", "delta", "delta:x", "[1,2", "[1/0]"])
def test_parse_weight_spec_errors(bad):
    with pytest.raises(UsageError):
        parse_weight_spec(bad, 4)


def test_unknown_preset_lists_names():
    with pytest.raises(UsageError, match="one-plus-delta"):
        parse_weight_spec("bogus", 3)


def test_zseries_example1(capsys):
    status, out, _ = cli(capsys, "zseries", "--L", "one-plus-delta:2", "--V", "ones", "--order", "6", "--format", "json")
    assert status == 0
    doc = json.loads(out)
    assert doc["agree"] is True
    series = EgfSeries.from_dict(doc["bell"])
    assert [int(c) for c in series] == [1, 1, 4, 20, 150, 1352, 15428]
    assert EgfSeries.from_dict(doc["pf"]) == series


def test_zseries_plain_and_csv(capsys):
    status, out, _ = cli(capsys, "zseries", "--L", "linear", "--V", "ones", "-n", "3")
    assert status == 0 and out.splitlines()[-1].split() == ["3", "50", "50"]
    status, out, _ = cli(capsys, "zseries", "--L", "[1/2]", "--V", "ones", "-n", "2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "A_n (bell)", "A_n (pf)"]
    assert rows[2] == ["1", "1/2", "1/2"]
    assert '"1/2"' in out


def test_zseries_mismatch_exit_code(capsys, monkeypatch):
    import bosonzqft.cli as mod

    monkeypatch.setattr(mod, "z_series_pf", lambda p: EgfSeries.zero(p.order))
    status, _, _ = cli(capsys, "zseries", "--L", "ones", "--V", "ones", "-n", "3")
    assert status == 1


def test_normalorder(capsys):
    status, out, _ = cli(capsys, "normalorder", "--word", "a ad")
    assert status == 0 and out.strip() == "ad a + 1"
    status, out, _ = cli(capsys, "normalorder", "--word", "a ad", "--format", "json")
    assert BosonPolynomial.from_list(json.loads(out)) == BosonPolynomial({(1, 1): 1, (0, 0): 1})


def test_normalorder_kernel(capsys):
    status, out, _ = cli(capsys, "normalorder", "--word", "ad ad a", "--kernel", "-n", "4", "--format", "json")
    assert status == 0
    assert json.loads(out)["V"] == ["1", "2", "6", "24"]
    status, out, _ = cli(capsys, "normalorder", "--word", "a+ad", "--kernel", "-n", "3", "--z", "1/2,3", "--format", "json")
    assert json.loads(out)["V"] == ["7/2", "1", "0"]


def test_graphs(capsys):
    status, out, _ = cli(capsys, "graphs", "--L", "one-plus-delta:2", "--V", "ones", "-n", "3", "--format", "json")
    assert status == 0
    table = GraphClassTable.from_json(out)
    assert table.n == 3 and table.total == 20
    status, out, _ = cli(capsys, "graphs", "--L", "ones", "--V", "ones", "-n", "2")
    assert "total 4" in out


def test_graphs_order_limit(capsys):
    status, _, err = cli(capsys, "graphs", "--L", "ones", "--V", "ones", "-n", "9")
    assert status == 2 and "at most 8" in err


def test_closedform(capsys):
    status, out, _ = cli(capsys, "closedform", "--closed-form", "Z2", "-n", "10", "--format", "json")
    assert status == 0
    assert [int(c) for c in EgfSeries.from_dict(json.loads(out))][::2] == [1, 5, 129, 7485, 755265, 116338005]


def test_sequence(capsys):
    status, out, _ = cli(capsys, "sequence", "involution", "-n", "7", "--format", "json")
    assert json.loads(out)["values"] == ["1", "1", "2", "4", "10", "26", "76", "232"]
    for name in ("bell", "idempotent", "idempotent-pair", "restricted-bell", "hermite-kdf:3", "modified-hermite"):
        assert cli(capsys, "sequence", name, "-n", "5")[0] == 0
    assert cli(capsys, "sequence", "nonsense")[0] == 2


def test_preset_list(capsys):
    status, out, _ = cli(capsys, "--preset-list")
    assert status == 0
    assert out.split() == [
        "ones", "linear", "factorial", "no-singletons", "even-linear",
        "delta:N", "one-plus-delta:N", "gamma-ratio:N",
    ]


def test_usage_errors(capsys):
    assert cli(capsys, "zseries", "--L", "ones")[0] == 2
    assert cli(capsys)[0] == 2
    assert cli(capsys, "normalorder", "--word", "a b")[0] == 2
    assert cli(capsys, "normalorder", "--word", "a", "--kernel", "--z", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["bogus-command"])
    assert exc.value.code == 2


def test_verify(capsys):
    status, out, _ = cli(capsys, "verify", "--order", "6", "--format", "json")
    doc = json.loads(out)
    assert status == 0 and doc["failed"] == 0 and doc["passed"] > 50
    suites = {c["suite"] for c in doc["checks"]}
    assert suites >= {"pf-symmetry", "exp-log", "z-routes", "kernels", "bargmann", "paper", "bell"}


def test_output_is_deterministic():
    cfg = RunConfig("graphs", order=4, format="json", L_spec="one-plus-delta:2", V_spec="factorial")
    assert run(cfg) == run(cfg)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bosonzqft", "zseries", "--L", "ones", "--V", "ones", "-n", "4", "--format", "csv"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == '4,"225","225"'
