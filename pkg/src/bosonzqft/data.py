"""Published values used as regression fixtures.

Each entry: (L preset, V preset, first index, values).  Values start at
``A_{first}``.
"""

EXAMPLES = {
    "example1-M2": ("one-plus-delta:2", "ones", 1, [1, 4, 20, 150, 1352, 15428]),
    # printed as 527 at n=5; (1 + C(5,3)) * B_5 = 11 * 52 = 572
    "example1-M3": ("one-plus-delta:3", "ones", 1, [1, 2, 10, 75, 572, 6293]),
    "example2": ("linear", "ones", 1, [1, 6, 50, 615, 10192, 214571]),
    "example3": ("no-singletons", "factorial", 1, [0, 3, 13, 292, 5511, 166091]),
    "example4": ("even-linear", "ones", 1, [0, 4, 0, 240, 0, 49938, 0, 24608160, 0]),
}

# Z1 coefficients A_0..A_7 and Z2 even coefficients A_0, A_2, ..., A_10.
Z1 = [1, 2, 5, 14, 43, 142, 499, 1850]
Z2_EVEN = [1, 5, 129, 7485, 755265, 116338005]

BELL = [1, 1, 2, 5, 15, 52, 203]
FACTORIAL_EXP = [1, 1, 3, 13, 73, 501, 4051]  # exp(x/(1-x))
INVOLUTIONS = [1, 1, 2, 4, 10, 26, 76, 232]
IDEMPOTENT = [1, 1, 3, 10, 41, 196, 1057]
RESTRICTED_BELL = [1, 0, 1, 1, 4, 11, 41]
