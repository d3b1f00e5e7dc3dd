"""L1/L2/L4 norms of incomplete exponential sums over F_p.

For a residue multiset {x_n mod p} put S(a) = sum_n e(2 pi i a x_n / p).
norm_report evaluates S directly on the sparse support for every a and
returns L1 = (1/p) sum |S|, L2sq = (1/p) sum |S|^2 and the additive energy
T_p = (1/p) sum |S|^4 (an integer: the number of index quadruples with
x_a + x_b = x_c + x_d).  Chain facts are enforced as postconditions, not
just tests:

    L1^2 <= L2sq               (Cauchy-Schwarz)
    L2sq <= L1^(2/3) T^(1/3)   (Hoelder)
    L2sq^2 <= T                (Cauchy-Schwarz)
    L1 >= L2sq^(3/2) / T^(1/2) (the lower-bound chain; equals
                                (N^3/T)^(1/2) for multiplicity-1 sets)

Sums are accumulated with exact-rounding compensated summation
(math.fsum), and phases come from a precomputed table of e(2 pi i k / p)
built conjugate-symmetric so |S(p - a)| = |S(a)| holds to the last bit.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConfigError, GuardError, InvariantError
from .numtheory import is_prime, is_primitive_root
from .valueset import ResidueMultiset, SequenceSpec, collision_stats
from .sumsets import ipow_floor

P_GUARD = 1_000_000
SIZE_GUARD = 100_000
CHAIN_RTOL = 1e-6


@dataclass(frozen=True)
class NormReport:
    """Normalized norms of S over a full period.

    energy is the integer quadruple count; energy_residual records how far
    the floating accumulation landed from it before rounding.
    """

    p: int
    size: int
    l1: float
    l2sq: float
    energy: int
    energy_residual: float
    karatsuba_lb: float


def _phase_table(p: int) -> np.ndarray:
    tab = np.exp((2j * np.pi / p) * np.arange(p))
    half = (p - 1) // 2
    if half >= 1:
        tab[p - half :] = np.conj(tab[1 : half + 1][::-1])
    return tab


def _abs_spectrum(ms: ResidueMultiset, full_scan: bool = False) -> np.ndarray:
    """|S(a)| for a = 0..p-1, chunked so the index table stays small.

    By default only a <= p/2 is evaluated and the rest mirrored through
    |S(p - a)| = |S(a)| (exact for the symmetric phase table); full_scan
    evaluates every a independently and serves as the cross-check path.
    """
    p = ms.p
    support = np.array(sorted(ms.counts), dtype=np.int64)
    weights = np.array([ms.counts[int(r)] for r in support], dtype=np.float64)
    tab = _phase_table(p)
    out = np.empty(p, dtype=np.float64)
    top = p if full_scan else p // 2 + 1
    step = max(1, 4_000_000 // len(support))
    for lo in range(0, top, step):
        a = np.arange(lo, min(lo + step, top), dtype=np.int64)
        idx = (a[:, None] * support[None, :]) % p
        out[lo : lo + len(a)] = np.abs(tab[idx] @ weights)
    if not full_scan:
        half = (p - 1) // 2
        if half >= 1:
            out[p - half :] = out[1 : half + 1][::-1]
    return out


def _check_chain(l1: float, l2sq: float, raw_energy: float, kara: float,
                 p: int) -> None:
    checks = (
        (l1 * l1 <= l2sq * (1 + CHAIN_RTOL), "L1^2 <= L2sq"),
        (l2sq <= (l1 ** (2 / 3)) * (raw_energy ** (1 / 3)) * (1 + CHAIN_RTOL),
         "L2sq <= L1^(2/3) T^(1/3)"),
        (l2sq * l2sq <= raw_energy * (1 + CHAIN_RTOL), "L2sq^2 <= T"),
        (l1 >= kara * (1 - CHAIN_RTOL), "L1 >= lower bound"),
    )
    for ok, name in checks:
        if not ok:
            raise InvariantError(
                f"chain inequality {name} failed at p={p}: "
                f"l1={l1!r} l2sq={l2sq!r} T={raw_energy!r}")


def norm_report(ms: ResidueMultiset, p_guard: int = P_GUARD) -> NormReport:
    """Evaluate S on its sparse support for every a and report the norms."""
    if ms.total < 1:
        raise ConfigError("empty multiset")
    if ms.p > p_guard:
        raise GuardError(f"p = {ms.p} exceeds the guard {p_guard}")
    p = ms.p
    absS = _abs_spectrum(ms)
    vals = absS.tolist()
    l1 = math.fsum(vals) / p
    sq = [v * v for v in vals]
    l2sq = math.fsum(sq) / p
    raw = math.fsum(v * v for v in sq) / p
    energy = round(raw)
    if all(c == 1 for c in ms.counts.values()):
        kara = math.sqrt(ms.total**3 / energy)
    else:
        kara = l2sq**1.5 / math.sqrt(energy)
    _check_chain(l1, l2sq, raw, kara, p)
    return NormReport(p=p, size=ms.total, l1=l1, l2sq=l2sq, energy=energy,
                      energy_residual=abs(raw - energy), karatsuba_lb=kara)


def l1_full_scan(ms: ResidueMultiset, p_guard: int = P_GUARD) -> float:
    """L1 with S evaluated at every a independently (no symmetry shortcut).

    Cross-check for the mirrored production path in norm_report.
    """
    if ms.total < 1:
        raise ConfigError("empty multiset")
    if ms.p > p_guard:
        raise GuardError(f"p = {ms.p} exceeds the guard {p_guard}")
    return math.fsum(_abs_spectrum(ms, full_scan=True).tolist()) / ms.p


def additive_energy_direct(ms: ResidueMultiset,
                           size_guard: int = SIZE_GUARD) -> int:
    """Exact quadruple count by tabulating pairwise-sum multiplicities."""
    if ms.total < 1:
        raise ConfigError("empty multiset")
    if ms.total > size_guard:
        raise GuardError(f"size {ms.total} exceeds the guard {size_guard}")
    p = ms.p
    res = np.array(sorted(ms.counts), dtype=np.int64)
    cnt = np.array([ms.counts[int(r)] for r in res], dtype=np.float64)
    conv = np.zeros(p, dtype=np.float64)
    step = max(1, 4_000_000 // len(res))
    for i in range(0, len(res), step):
        sums = (res[i : i + step, None] + res[None, :]) % p
        w = cnt[i : i + step, None] * cnt[None, :]
        conv += np.bincount(sums.ravel(), weights=w.ravel(), minlength=p)
    # counts <= size^2 <= 10^10 stay exactly representable in float64;
    # the squares would not, so finish in exact integers.
    return sum(int(v) ** 2 for v in conv[conv > 0])


@dataclass(frozen=True)
class FibLittlewood:
    """Norms of the Fibonacci block 1..floor(N^gamma) mod p; ratio is
    L1 / sqrt(block length)."""

    p: int
    nmax: int
    gamma: float
    seq_len: int
    report: NormReport
    ratio: float


def littlewood_fib(p: int, nmax: int, gamma: float,
                   p_guard: int = P_GUARD) -> FibLittlewood:
    if not is_prime(p):
        raise ConfigError(f"p must be prime, got {p}")
    if p > nmax:
        raise ConfigError("need p <= nmax")
    g = Fraction(str(gamma)) if isinstance(gamma, float) else Fraction(gamma)
    if not 0 < g < Fraction(1, 3):
        raise ConfigError(f"gamma must lie in (0, 1/3), got {gamma}")
    seq_len = ipow_floor(nmax, g)
    ms = ResidueMultiset.from_spec(SequenceSpec.fibonacci(1, seq_len), p)
    report = norm_report(ms, p_guard=p_guard)
    # Diagonal solutions alone force the block length below L2sq.
    if report.l2sq < seq_len * (1 - CHAIN_RTOL):
        raise InvariantError(
            f"L2sq = {report.l2sq!r} below the diagonal bound {seq_len}")
    return FibLittlewood(p=p, nmax=nmax, gamma=float(gamma), seq_len=seq_len,
                         report=report, ratio=report.l1 / math.sqrt(seq_len))


@dataclass(frozen=True)
class PowLittlewood:
    """Norms of {g^n : n <= N} mod p for a primitive root g with N < sqrt(p).

    ratio divides L1 by N^(1/48); energy_exponent is log T / log N (None
    at N = 1).
    """

    p: int
    base: int
    length: int
    report: NormReport
    ratio: float
    energy_exponent: float | None


def littlewood_pow(p: int, base: int, length: int,
                   p_guard: int = P_GUARD) -> PowLittlewood:
    if not is_prime(p):
        raise ConfigError(f"p must be prime, got {p}")
    if not is_primitive_root(base, p):
        raise ConfigError(f"{base} is not a primitive root mod {p}")
    if length < 1 or length * length >= p:
        raise ConfigError("need 1 <= N < sqrt(p)")
    ms = ResidueMultiset.from_spec(SequenceSpec.power(base, 1, length), p)
    report = norm_report(ms, p_guard=p_guard)
    stats = collision_stats(ms)
    max_mult = max(ms.counts.values())
    if report.energy > length**3 * max_mult:
        raise InvariantError(
            f"energy {report.energy} above the trivial cap N^3*mult at p={p}")
    exponent = (math.log(report.energy) / math.log(length)
                if length > 1 else None)
    assert stats.distinct == length  # n <= N < sqrt(p) < ord(g) forces distinctness
    return PowLittlewood(p=p, base=base, length=length, report=report,
                         ratio=report.l1 / length ** (1 / 48),
                         energy_exponent=exponent)
