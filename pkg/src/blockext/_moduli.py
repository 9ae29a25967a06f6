"""Shipped modulus polynomials for GF(2^q), q = 1..128.

Each entry lists the exponents with nonzero coefficients, highest first,
so ``(8, 4, 3, 1, 0)`` is x^8 + x^4 + x^3 + x + 1.  For every degree the
entry is the first irreducible polynomial found scanning weight-2, then
trinomials by ascending middle exponent, then pentanomials by ascending
(k3, k2, k1); ``scripts/gen_moduli.py`` regenerates the table and the test
suite re-validates every entry.  Any irreducible modulus gives an
isomorphic field; a fixed table is shipped so that extractor outputs are
reproducible across installations.
"""

MODULUS_EXPONENTS = {
    1: (1, 0),
    2: (2, 1, 0),
    3: (3, 1, 0),
    4: (4, 1, 0),
    5: (5, 2, 0),
    6: (6, 1, 0),
    7: (7, 1, 0),
    8: (8, 4, 3, 1, 0),
    9: (9, 1, 0),
    10: (10, 3, 0),
    11: (11, 2, 0),
    12: (12, 3, 0),
    13: (13, 4, 3, 1, 0),
    14: (14, 5, 0),
    15: (15, 1, 0),
    16: (16, 5, 3, 1, 0),
    17: (17, 3, 0),
    18: (18, 3, 0),
    19: (19, 5, 2, 1, 0),
    20: (20, 3, 0),
    21: (21, 2, 0),
    22: (22, 1, 0),
    23: (23, 5, 0),
    24: (24, 4, 3, 1, 0),
    25: (25, 3, 0),
    26: (26, 4, 3, 1, 0),
    27: (27, 5, 2, 1, 0),
    28: (28, 1, 0),
    29: (29, 2, 0),
    30: (30, 1, 0),
    31: (31, 3, 0),
    32: (32, 7, 3, 2, 0),
    33: (33, 10, 0),
    34: (34, 7, 0),
    35: (35, 2, 0),
    36: (36, 9, 0),
    37: (37, 6, 4, 1, 0),
    38: (38, 6, 5, 1, 0),
    39: (39, 4, 0),
    40: (40, 5, 4, 3, 0),
    41: (41, 3, 0),
    42: (42, 7, 0),
    43: (43, 6, 4, 3, 0),
    44: (44, 5, 0),
    45: (45, 4, 3, 1, 0),
    46: (46, 1, 0),
    47: (47, 5, 0),
    48: (48, 5, 3, 2, 0),
    49: (49, 9, 0),
    50: (50, 4, 3, 2, 0),
    51: (51, 6, 3, 1, 0),
    52: (52, 3, 0),
    53: (53, 6, 2, 1, 0),
    54: (54, 9, 0),
    55: (55, 7, 0),
    56: (56, 7, 4, 2, 0),
    57: (57, 4, 0),
    58: (58, 19, 0),
    59: (59, 7, 4, 2, 0),
    60: (60, 1, 0),
    61: (61, 5, 2, 1, 0),
    62: (62, 29, 0),
    63: (63, 1, 0),
    64: (64, 4, 3, 1, 0),
    65: (65, 18, 0),
    66: (66, 3, 0),
    67: (67, 5, 2, 1, 0),
    68: (68, 9, 0),
    69: (69, 6, 5, 2, 0),
    70: (70, 5, 3, 1, 0),
    71: (71, 6, 0),
    72: (72, 10, 9, 3, 0),
    73: (73, 25, 0),
    74: (74, 35, 0),
    75: (75, 6, 3, 1, 0),
    76: (76, 21, 0),
    77: (77, 6, 5, 2, 0),
    78: (78, 6, 5, 3, 0),
    79: (79, 9, 0),
    80: (80, 9, 4, 2, 0),
    81: (81, 4, 0),
    82: (82, 8, 3, 1, 0),
    83: (83, 7, 4, 2, 0),
    84: (84, 5, 0),
    85: (85, 8, 2, 1, 0),
    86: (86, 21, 0),
    87: (87, 13, 0),
    88: (88, 7, 6, 2, 0),
    89: (89, 38, 0),
    90: (90, 27, 0),
    91: (91, 8, 5, 1, 0),
    92: (92, 21, 0),
    93: (93, 2, 0),
    94: (94, 21, 0),
    95: (95, 11, 0),
    96: (96, 10, 9, 6, 0),
    97: (97, 6, 0),
    98: (98, 11, 0),
    99: (99, 6, 3, 1, 0),
    100: (100, 15, 0),
    101: (101, 7, 6, 1, 0),
    102: (102, 29, 0),
    103: (103, 9, 0),
    104: (104, 4, 3, 1, 0),
    105: (105, 4, 0),
    106: (106, 15, 0),
    107: (107, 9, 7, 4, 0),
    108: (108, 17, 0),
    109: (109, 5, 4, 2, 0),
    110: (110, 33, 0),
    111: (111, 10, 0),
    112: (112, 5, 4, 3, 0),
    113: (113, 9, 0),
    114: (114, 5, 3, 2, 0),
    115: (115, 8, 7, 5, 0),
    116: (116, 4, 2, 1, 0),
    117: (117, 5, 2, 1, 0),
    118: (118, 33, 0),
    119: (119, 8, 0),
    120: (120, 4, 3, 1, 0),
    121: (121, 18, 0),
    122: (122, 6, 2, 1, 0),
    123: (123, 2, 0),
    124: (124, 19, 0),
    125: (125, 7, 6, 5, 0),
    126: (126, 21, 0),
    127: (127, 1, 0),
    128: (128, 7, 2, 1, 0),
}


def modulus_int(q: int) -> int:
    """The shipped degree-q modulus as a bit-packed integer."""
    exps = MODULUS_EXPONENTS[q]
    value = 0
    for e in exps:
        value |= 1 << e
    return value
