#!/usr/bin/env python3
"""Planning walkthrough: from source parameters to a full extraction plan.

A plan starts from four numbers: bits per sample b, samples per source N,
the certified min-entropy rate (entropy bits per sample bit, as an exact
rational), and the target distance epsilon.  Everything else is derived:
the vector length n, the field width q, the block count, and a proven
log2-domain bound on the total distance of the output from uniform.
"""

from fractions import Fraction

from blockext import (
    error_bound_block,
    error_bound_eq,
    error_bound_neq,
    extraction_rate,
    plan_eq,
    plan_neq,
)
from blockext.report import plan_to_text

# The headline configuration: 16-bit samples carrying 10.74 entropy bits
# each, 2^47 samples (2^51 raw bits) per source, output within 2^-30 of
# uniform.
rate = Fraction("10.74") / 16
plan = plan_eq(16, 2**47, rate, Fraction(1, 2**30))
print(plan_to_text(plan))

print(f"one block consumes {plan.block_bits} bits per source "
      f"({plan.vec_len} elements x {plan.field_bits} bits)")
print(f"per-block log2 error: "
      f"{error_bound_block(plan.vec_len, plan.field_bits, rate):.3f}")
print(f"total log2 error over {plan.num_blocks} blocks: "
      f"{error_bound_eq(plan):.3f}  (target {float(plan.epsilon):.3g} = 2^-30)")

exact, approx = extraction_rate(plan)
print(f"extraction rate: {exact:.5f} of the min-entropy "
      f"(headline approximation {approx:.5f})")

# The incremental-block variant needs no N up front.  Growing the element
# width by one sample per block makes the infinite error series geometric;
# the starting width alone controls the limit.
print()
for q1 in (32, 64, 96):
    nplan = plan_neq(16, rate, q1, growth=1)
    print(f"incremental plan q1={q1:3d}: infinite-run log2 error limit "
          f"{nplan.log2_error_limit:.3f}; after 5 blocks "
          f"{error_bound_neq(nplan, 5):.3f}, "
          f"m_5 = {nplan.output_bits_after(5)} bits")
