#!/usr/bin/env python3
"""Tabulate modular-reduction counts: quadrant PLUQ vs row-major elimination.

Runs both instrumented algorithms on full-rank generic-profile inputs and
prints the measured counter next to its model value.  The quadrant
decomposition needs fewer reductions once the dimension passes ~16.
"""

import argparse

from pluq import (
    OpCounts,
    gen_full_rank_generic,
    ple_row_major,
    pluq,
    r_ple_recurrence,
    r_pluq_closed_form,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=1009)
    parser.add_argument("--max-dim", type=int, default=256)
    args = parser.parse_args()

    print(f"{'m':>5} {'pluq':>10} {'2m^2-2m':>10} {'row-major':>10} {'model':>10} {'ratio':>7}")
    m = 2
    while m <= args.max_dim:
        a = gen_full_rank_generic(m, args.p, seed=m)
        quad = OpCounts()
        pluq(a.copy(), threshold=1, counts=quad)
        row = OpCounts()
        ple_row_major(a, row)
        print(
            f"{m:>5} {quad.modular_reductions:>10} {r_pluq_closed_form(m):>10} "
            f"{row.modular_reductions:>10} {r_ple_recurrence(m, m):>10} "
            f"{row.modular_reductions / quad.modular_reductions:>7.3f}"
        )
        m *= 2


if __name__ == "__main__":
    main()
