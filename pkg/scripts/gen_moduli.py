#!/usr/bin/env python3
"""Regenerate the shipped low-weight modulus table.

For each degree q in 1..128, scans candidates in a fixed order - the
weight-2 polynomial x^q + 1, trinomials x^q + x^k + 1 by ascending k, then
pentanomials x^q + x^k3 + x^k2 + x^k1 + 1 by ascending (k3, k2, k1) - and
keeps the first irreducible one.  Prints the table as the exponent-tuple
dict used in src/blockext/_moduli.py; a diff against the shipped file means
either the scan order or the irreducibility test changed.
"""

import sys

from blockext.gf2q import is_irreducible


def candidates(q):
    yield (1 << q) | 1
    for k in range(1, q):
        yield (1 << q) | (1 << k) | 1
    for k3 in range(3, q):
        for k2 in range(2, k3):
            for k1 in range(1, k2):
                yield (1 << q) | (1 << k3) | (1 << k2) | (1 << k1) | 1


def exponents(poly):
    return tuple(i for i in range(poly.bit_length()) if (poly >> i) & 1)[::-1]


def main():
    print("MODULUS_EXPONENTS = {")
    for q in range(1, 129):
        for cand in candidates(q):
            if is_irreducible(cand):
                print(f"    {q}: {exponents(cand)!r},")
                break
        else:
            print(f"no low-weight irreducible polynomial of degree {q}", file=sys.stderr)
            return 1
    print("}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
