#!/usr/bin/env python3
"""L1 norms of exponential sums over sparse blocks: two regimes.

For S(a) = sum over the block of e(a x / p), the L1 norm (1/p) sum |S(a)|
is squeezed between Holder/Parseval bounds.  Fibonacci blocks of length
floor(N^gamma) keep L1 near sqrt(length) because they barely collide;
geometric blocks g, g^2, ..., g^N have small additive energy T, and the
discrete Karatsuba bound L1 >= (N^3/T)^(1/2) stays in charge.
"""

import math

from sparsemod import (
    least_primitive_root,
    littlewood_fib,
    littlewood_pow,
    norm_report,
    sieve_primes,
)
from sparsemod.valueset import ResidueMultiset, SequenceSpec


def main():
    print("== Fibonacci blocks, gamma = 0.3 ==")
    print("     p   len      L1       L2^2   energy   L1/sqrt(len)")
    for p in (997, 2003, 4999, 9973):
        lf = littlewood_fib(p, p, 0.3)
        r = lf.report
        print(f"  {p:5d}  {lf.seq_len:3d}  {r.l1:8.4f}  {r.l2sq:8.3f}  "
              f"{r.energy:6d}     {lf.ratio:.4f}")

    print("\n== chain inequalities on one report ==")
    ms = ResidueMultiset.from_spec(SequenceSpec.fibonacci(1, 15), 9973)
    r = norm_report(ms)
    print(f"  L1^2   = {r.l1**2:10.4f}  <=  L2sq     = {r.l2sq:.4f}")
    print(f"  L2sq   = {r.l2sq:10.4f}  <=  L1^(2/3) T^(1/3) = "
          f"{r.l1 ** (2 / 3) * r.energy ** (1 / 3):.4f}")
    print(f"  L2sq^2 = {r.l2sq**2:10.1f}  <=  T        = {r.energy}")
    print(f"  L1     = {r.l1:10.4f}  >=  Karatsuba = {r.karatsuba_lb:.4f}")

    print("\n== geometric blocks g^1..g^N, N = floor(p^0.45) ==")
    print("     p    g    N   energy T   log T/log N   (N^3/T)^1/2    L1")
    for p in [q for q in sieve_primes(40_000) if q >= 10_000][:6]:
        g = least_primitive_root(p)
        n = math.floor(p**0.45)
        res = littlewood_pow(p, g, n)
        kara = math.sqrt(n**3 / res.report.energy)
        print(f"  {p:5d}  {g:3d}  {n:3d}   {res.report.energy:7d}      "
              f"{res.energy_exponent:.3f}        {kara:7.3f}   {res.report.l1:7.3f}")


if __name__ == "__main__":
    main()
