#!/usr/bin/env python3
"""Representations by s < 100/eps Fibonacci numbers with indices <= N^eps.

The parameter schedule: k = floor(8/eps) - 1 and s = 4k, so s*eps < 100
always.  The search takes X = k-fold sums of odd-index Fibonacci residues,
Y = a window of Lucas numbers, Z = k-fold sums of even-index residues;
once |X||Y||Z|^2 > p^3, a ternary-count argument guarantees a solution of
x*y + z1 + z2 = lambda, which expands into 4k Fibonacci numbers via
L_m F_{2n-1} = F_{m+2n-1} + F_{m-2n+1}.
"""

from fractions import Fraction

from sparsemod import ConstructionError, fib_mod, waring_eps_params, waring_eps_verify


def main():
    print("== the parameter schedule ==")
    print("   eps      k      s    s*eps")
    for eps in ("0.5", "0.4", "0.25", "0.1", "0.05", "0.01"):
        par = waring_eps_params(eps)
        prod = float(Fraction(eps) * par.s)
        print(f"  {eps:>5}  {par.k:5d}  {par.s:5d}  {prod:6.2f}")

    print("\n== end to end at p = 97, eps = 1/2 ==")
    nmax = 3**17
    print(f"  N = 3^17 = {nmax} (any smaller N leaves |X||Y||Z|^2 <= p^3)")
    for lam in (0, 11, 96):
        rep = waring_eps_verify(97, nmax, "0.5", lam)
        sx, sy, sz = rep.set_sizes
        total = sum(fib_mod(i, 97) for i in rep.fib_indices) % 97
        top = max(rep.fib_indices)
        print(f"  lambda = {lam:2d}: |X|,|Y|,|Z| = {sx},{sy},{sz}; "
              f"m = {rep.m}; {rep.params.s} indices, max {top} "
              f"(N^eps = {int(nmax**0.5)}); sum = {total}")

    print("\n== precondition refusal at small N ==")
    try:
        waring_eps_verify(97, 10**6, "0.5", 11)
    except ConstructionError as exc:
        print(f"  N = 10^6: {exc}")


if __name__ == "__main__":
    main()
