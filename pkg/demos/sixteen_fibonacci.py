#!/usr/bin/env python3
"""Every residue mod p as a sum of at most 16 Fibonacci numbers.

Two routes.  The direct route folds the Fibonacci residue set into itself
until it covers F_p and reports the fold count s_min.  The constructive
route mirrors the covering argument: pick even-index windows F = {F_{2n}}
and L = {L_{2m}} with |F||L| > 2p, cover F_p by an 8-fold sumset of the
product set F*L, and split each product F_{2n}L_{2m} into exactly two
Fibonacci numbers, F_{2(n+m)} + F_{2(n-m)}.
"""

import random

from sparsemod import (
    ConstructionError,
    fib_mod,
    sieve_primes,
    waring_constructive,
    waring_fib_direct,
)


def main():
    rng = random.Random(16)

    print("== direct folding, N = 5000 ==")
    print("   p   s_min  coverage growth")
    for p in (2503, 2521, 3001, 4999):
        res = waring_fib_direct(p, 283, 16)
        print(f"  {p:5d}  {res.s_min:3d}    {list(res.coverage_sizes)}")

    print("\n== constructive route at p = 101, N = 5000, delta = 5 ==")
    lam = rng.randrange(101)
    rep = waring_constructive(101, 5000, 5.0, lam)
    print(f"  target {lam}: windows give |F| = {rep.f_size}, |L| = {rep.l_size}"
          f" (need |F||L| > 2p = 202)")
    print(f"  product pairs (n, m): {list(rep.pairs)}")
    print(f"  16 Fibonacci indices: {list(rep.fib_indices)}")
    total = sum(fib_mod(i, 101) for i in rep.fib_indices) % 101
    print(f"  re-evaluated sum mod 101 = {total}")

    print("\n== primes where the windows are too thin ==")
    # short Pisano periods starve the even-index window; the construction
    # refuses instead of silently searching a set that cannot cover
    for p in (89, 199, 211):
        try:
            waring_constructive(p, 20000, 5.0, 1)
            print(f"  {p}: fine")
        except ConstructionError as exc:
            print(f"  {p}: {exc}")

    print("\n== how often s_min stays tiny, p in (2500, 5000] ==")
    counts = {}
    for p in [q for q in sieve_primes(5000) if q > 2500]:
        s = waring_fib_direct(p, 283, 16).s_min
        counts[s] = counts.get(s, 0) + 1
    for s in sorted(counts, key=lambda v: (v is None, v)):
        print(f"  s_min = {s}: {counts[s]} primes")


if __name__ == "__main__":
    main()
