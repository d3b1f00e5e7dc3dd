"""Primes, orders, and fast-doubling Fibonacci/Lucas arithmetic.

The rest of the package reduces everything to a handful of kernels kept
here: a sieve, deterministic Miller-Rabin, Legendre symbols, multiplicative
orders, the rank of apparition z(p) (least l >= 1 with F_l = 0 mod p), and
F_n / L_n modulo m by fast doubling in O(log n) multiplications.

Conventions
-----------
F_1 = F_2 = 1 and L_1 = 1, L_2 = 3; both sequences are extended to index 0
by the recurrence (F_0 = 0, L_0 = 2).  Indices and moduli are validated
against a 2^62 operating range; this module targets desk scale and general
integer factorization is deliberately out of scope (divisor searches rely
on trial division).
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigError

INDEX_CAP = 1 << 62
MODULUS_CAP = 1 << 62

# Witnesses certifying Miller-Rabin for every n < 2^64.
_MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for n < 2^64."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_WITNESSES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit in increasing order; limit < 2 gives []."""
    if limit < 2:
        return []
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for q in range(2, math.isqrt(limit) + 1):
        if mask[q]:
            mask[q * q :: q] = False
    return [int(q) for q in np.flatnonzero(mask)]


def _check_index(n: int) -> None:
    if not 0 <= n <= INDEX_CAP:
        raise ConfigError(f"sequence index {n} outside [0, 2^62]")


def _check_modulus(m: int) -> None:
    if not 2 <= m <= MODULUS_CAP:
        raise ConfigError(f"modulus {m} outside [2, 2^62]")


def fib_pair_mod(n: int, m: int) -> tuple[int, int]:
    """(F_n mod m, F_{n+1} mod m) by fast doubling, n >= 0.

    Doubling step: F_{2k} = F_k (2 F_{k+1} - F_k) and
    F_{2k+1} = F_k^2 + F_{k+1}^2, applied along the bits of n.
    """
    _check_index(n)
    _check_modulus(m)
    a, b = 0, 1 % m
    for shift in range(n.bit_length() - 1, -1, -1):
        c = a * ((2 * b - a) % m) % m
        d = (a * a + b * b) % m
        if (n >> shift) & 1:
            a, b = d, (c + d) % m
        else:
            a, b = c, d
    return a, b


def fib_mod(n: int, m: int) -> int:
    """F_n mod m for n >= 0 (F_0 = 0)."""
    return fib_pair_mod(n, m)[0]


def lucas_mod(n: int, m: int) -> int:
    """L_n mod m for n >= 0 (L_0 = 2), via L_n = 2 F_{n+1} - F_n."""
    a, b = fib_pair_mod(n, m)
    return (2 * b - a) % m


def fib_lucas_mod(n: int, m: int) -> tuple[int, int]:
    """(F_n mod m, L_n mod m) in O(log n) multiplications."""
    a, b = fib_pair_mod(n, m)
    return a, (2 * b - a) % m


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n >= 1, ascending.  Trial division only;
    intended for the desk-scale inputs this package handles."""
    if n < 1:
        raise ConfigError("prime_factors expects n >= 1")
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n >= 1, ascending."""
    if n < 1:
        raise ConfigError("divisors expects n >= 1")
    small, large = [], []
    q = 1
    while q * q <= n:
        if n % q == 0:
            small.append(q)
            if q * q != n:
                large.append(n // q)
        q += 1
    return small + large[::-1]


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, 1} by Euler's criterion; p an odd prime."""
    if p == 2 or not is_prime(p):
        raise ConfigError(f"legendre requires an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def legendre5(p: int) -> int:
    """(5|p), extended to p = 2 by the Kronecker symbol (5|2) = -1.

    With this extension z(p) divides p - legendre5(p) for every prime p,
    including p = 2 (z = 3) and p = 5 (z = 5).
    """
    if p == 2:
        return -1
    return legendre(5, p)


def mult_order(a: int, p: int) -> int:
    """Multiplicative order of a modulo the prime p; requires gcd(a, p) = 1.

    The order divides p - 1, so start there and strip prime factors while
    the power stays 1.
    """
    if not is_prime(p):
        raise ConfigError(f"mult_order requires a prime modulus, got {p}")
    if a % p == 0:
        raise ConfigError(f"{a} is not invertible mod {p}")
    t = p - 1
    for q in prime_factors(p - 1):
        while t % q == 0 and pow(a, t // q, p) == 1:
            t //= q
    return t


def mult_order_scan(a: int, p: int) -> int:
    """Linear-scan oracle for mult_order (walk powers of a until 1)."""
    if not is_prime(p) or a % p == 0:
        raise ConfigError("mult_order_scan requires a prime p and gcd(a,p)=1")
    x = a % p
    t = 1
    while x != 1:
        x = x * a % p
        t += 1
    return t


def order_of_appearance(p: int) -> int:
    """Rank of apparition z(p): least l >= 1 with F_l = 0 mod p.

    For a prime p, z(p) divides p - (5|p); the answer is the smallest
    divisor d of that bound with F_d = 0 mod p.  p = 2 and p = 5 are the
    classical special cases (z = 3 and z = 5).
    """
    if not is_prime(p):
        raise ConfigError(f"order_of_appearance requires a prime, got {p}")
    if p == 2:
        return 3
    if p == 5:
        return 5
    bound = p - legendre(5, p)
    for d in divisors(bound):
        if fib_mod(d, p) == 0:
            return d
    raise AssertionError(f"no divisor of {bound} annihilates F mod {p}")


def order_of_appearance_scan(m: int) -> int:
    """Linear-scan oracle for z: step the recurrence until F_l = 0 mod m.

    Works for any modulus m >= 2, not just primes.
    """
    _check_modulus(m)
    a, b = 1 % m, 1 % m
    l = 1
    while a != 0:
        a, b = b, (a + b) % m
        l += 1
    return l


def is_primitive_root(g: int, p: int) -> bool:
    """True iff g generates the full multiplicative group mod the prime p."""
    if not is_prime(p):
        raise ConfigError(f"is_primitive_root requires a prime, got {p}")
    if g % p == 0:
        return False
    return all(pow(g, (p - 1) // q, p) != 1 for q in prime_factors(p - 1))


def least_primitive_root(p: int) -> int:
    """Smallest positive primitive root modulo the prime p."""
    if not is_prime(p):
        raise ConfigError(f"least_primitive_root requires a prime, got {p}")
    if p == 2:
        return 1
    facs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in facs):
            return g
    raise AssertionError(f"no primitive root below {p}")


@dataclass(frozen=True)
class PrimeRecord:
    """Per-prime bookkeeping used by the surveys.

    t_p is the multiplicative order of 2 mod p (None for p = 2, where 2 is
    not invertible); z_p the rank of apparition; legendre5 the extended
    symbol (5|p), which is 0 iff p = 5.
    """

    p: int
    t_p: Optional[int]
    z_p: int
    legendre5: int


def prime_record(p: int) -> PrimeRecord:
    return PrimeRecord(
        p=p,
        t_p=None if p == 2 else mult_order(2, p),
        z_p=order_of_appearance(p),
        legendre5=legendre5(p),
    )
