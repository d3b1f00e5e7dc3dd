"""Sumset coverage of F_p and Waring-type Fibonacci representations.

Subsets of Z/pZ are bit vectors packed into a single Python integer, so a
(k+1)-fold sumset is the union over generators v of the k-fold sumset
cyclically rotated by v -- one shift-or pass per generator.  On top of that
sit three constructions:

* glibichuk_check: |A||B| > 2p forces the 8-fold sumset of A*B to be all
  of F_p; checked exactly, with a missing-residue witness on failure.
* waring_constructive: writes any residue as a sum of 16 Fibonacci numbers
  by covering F_p with 8 products F_{2n} L_{2m} and rewriting each product
  as F_{2(n+m)} + F_{2(n-m)}.
* waring_eps_verify: the short-index variant; s = 4k indices below N^eps,
  found by solving x*y + z_1 + z_2 = lambda over structured sum sets.

Counting solutions of x y + z_1 + z_2 = lambda exactly (ternary_count)
supplies the solvability bound behind the eps variant:
|T - |X||Y||Z|^2 / p| <= sqrt(p |X||Y|) |Z|.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

import numpy as np

from .errors import ConfigError, ConstructionError, GuardError, InvariantError
from .numtheory import fib_mod, fib_pair_mod, lucas_mod


class ResidueSet:
    """A subset of Z/pZ as a p-bit mask inside one Python int."""

    __slots__ = ("p", "bits")

    def __init__(self, p: int, bits: int = 0):
        if p < 2:
            raise ConfigError("modulus must be >= 2")
        self.p = p
        self.bits = bits & ((1 << p) - 1)

    @classmethod
    def from_iterable(cls, p: int, xs: Iterable[int]) -> "ResidueSet":
        bits = 0
        for x in xs:
            bits |= 1 << (x % p)
        return cls(p, bits)

    @classmethod
    def full(cls, p: int) -> "ResidueSet":
        return cls(p, (1 << p) - 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, x: int) -> bool:
        return (self.bits >> (x % self.p)) & 1 == 1

    def __iter__(self):
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __eq__(self, other) -> bool:
        return (isinstance(other, ResidueSet)
                and self.p == other.p and self.bits == other.bits)

    def __repr__(self) -> str:
        return f"ResidueSet(p={self.p}, size={len(self)})"

    def is_full(self) -> bool:
        return self.bits == (1 << self.p) - 1

    def missing_residue(self) -> Optional[int]:
        """Smallest residue not in the set, or None when full."""
        if self.is_full():
            return None
        inv = ~self.bits & ((1 << self.p) - 1)
        return (inv & -inv).bit_length() - 1

    def rotate(self, v: int) -> "ResidueSet":
        """The translate {x + v : x in self} (cyclic bit rotation)."""
        return ResidueSet(self.p, _rotate(self.bits, v % self.p, self.p))


def _rotate(bits: int, v: int, p: int) -> int:
    if v == 0:
        return bits
    return ((bits << v) | (bits >> (p - v))) & ((1 << p) - 1)


def _fold_once(bits: int, gens: list[int], p: int) -> int:
    mask = (1 << p) - 1
    out = 0
    for v in gens:
        out |= (bits << v) | (bits >> (p - v)) if v else bits
    return out & mask


def _sumset_layers(gens: list[int], p: int, k: int) -> list[int]:
    """Bit masks of the j-fold sumsets of gens for j = 1..k."""
    base = 0
    for v in gens:
        base |= 1 << v
    layers = [base]
    for _ in range(k - 1):
        layers.append(_fold_once(layers[-1], gens, p))
    return layers


def _decompose_sum(target: int, layers: list[int], gens: list[int], p: int) -> list[int]:
    """Greedy witness extraction: split target into len(layers) generators,
    taking the smallest feasible generator at each level."""
    picks = []
    t = target % p
    for j in range(len(layers) - 1, 0, -1):
        for v in gens:
            if (layers[j - 1] >> ((t - v) % p)) & 1:
                picks.append(v)
                t = (t - v) % p
                break
        else:
            raise InvariantError(f"{target} not decomposable at level {j + 1}")
    if not (layers[0] >> t) & 1:
        raise InvariantError(f"{target} not decomposable at level 1")
    picks.append(t)
    return picks


@dataclass(frozen=True)
class CoverResult:
    """Growth of the k-fold sumsets of a generating set.

    coverage_sizes[j-1] = |j-fold sumset| up to the first full fold (or
    s_max); s_min is the first fold reaching all of F_p, None if not
    reached within the budget.
    """

    p: int
    s_min: Optional[int]
    coverage_sizes: tuple[int, ...]

    @property
    def covered(self) -> bool:
        return self.s_min is not None


def product_set(a: ResidueSet, b: ResidueSet) -> ResidueSet:
    """{x * y mod p : x in a, y in b}, exact."""
    if a.p != b.p:
        raise ConfigError("mismatched moduli")
    p = a.p
    bits = 0
    bl = list(b)
    for x in a:
        if x == 0:
            bits |= 1
            continue
        for y in bl:
            bits |= 1 << (x * y % p)
    return ResidueSet(p, bits)


def k_fold_sumset(v: ResidueSet, k: int) -> CoverResult:
    """Iterated sumsets of v, stopping at full coverage or after k folds."""
    if k < 1:
        raise ConfigError("fold count must be >= 1")
    if not v.bits:
        raise ConfigError("empty generating set")
    p = v.p
    gens = list(v)
    mask = (1 << p) - 1
    s = v.bits
    sizes = [s.bit_count()]
    while s != mask and len(sizes) < k:
        s = _fold_once(s, gens, p)
        sizes.append(s.bit_count())
    return CoverResult(p=p, s_min=len(sizes) if s == mask else None,
                       coverage_sizes=tuple(sizes))


@dataclass(frozen=True)
class GlibichukResult:
    passed: bool
    missing_residue: Optional[int]
    product_size: int
    precondition_met: bool  # |A||B| > 2p
    cover: CoverResult


def glibichuk_check(a: ResidueSet, b: ResidueSet) -> GlibichukResult:
    """Does the 8-fold sumset of A*B cover F_p?

    When |A||B| > 2p this must pass; callers may probe smaller sets, so
    the precondition is recorded rather than enforced.
    """
    prod = product_set(a, b)
    cover = k_fold_sumset(prod, 8)
    if cover.covered:
        missing = None
    else:
        gens = list(prod)
        eight = prod.bits
        for _ in range(7):
            eight = _fold_once(eight, gens, prod.p)
        missing = ResidueSet(prod.p, eight).missing_residue()
    return GlibichukResult(
        passed=cover.covered,
        missing_residue=missing,
        product_size=len(prod),
        precondition_met=len(a) * len(b) > 2 * a.p,
        cover=cover,
    )


def fib_residue_set(p: int, max_index: int) -> ResidueSet:
    """{F_n mod p : 1 <= n <= max_index}."""
    if max_index < 1:
        raise ConfigError("max_index must be >= 1")
    bits = 0
    a, b = 1 % p, 1 % p
    for _ in range(max_index):
        bits |= 1 << a
        a, b = b, (a + b) % p
    return ResidueSet(p, bits)


def waring_fib_direct(p: int, max_index: int, s_max: int = 16) -> CoverResult:
    """Smallest s <= s_max such that every residue mod p is a sum of s
    Fibonacci numbers with indices <= max_index."""
    return k_fold_sumset(fib_residue_set(p, max_index), s_max)


@dataclass(frozen=True)
class WaringRepresentation:
    """lambda = sum of 8 products F_{2n_i} L_{2m_i} = sum of 16 Fibonacci
    numbers mod p (index 0 contributes F_0 = 0 when n_i = m_i)."""

    p: int
    target: int
    pairs: tuple[tuple[int, int], ...]       # (n_i, m_i), n_i >= m_i
    fib_indices: tuple[int, ...]             # 2(n_i + m_i), 2(n_i - m_i)
    f_size: int                              # |{F_{2n} mod p}| over the window
    l_size: int                              # |{L_{2m} mod p}| over the window


def _even_fib_window(p: int, lo: int, hi: int) -> dict[int, int]:
    """residue -> smallest n with F_{2n} = residue, for lo < n <= hi."""
    wit: dict[int, int] = {}
    if lo + 1 > hi:
        return wit
    a, b = fib_pair_mod(2 * (lo + 1), p)
    for n in range(lo + 1, hi + 1):
        wit.setdefault(a, n)
        a, b = (a + b) % p, (a + 2 * b) % p
    return wit


def _even_lucas_window(p: int, hi: int) -> dict[int, int]:
    """residue -> smallest m with L_{2m} = residue, for 1 <= m <= hi."""
    wit: dict[int, int] = {}
    a, b = lucas_mod(2, p), lucas_mod(3, p)
    for m in range(1, hi + 1):
        wit.setdefault(a, m)
        a, b = (a + b) % p, (a + 2 * b) % p
    return wit


def waring_constructive(p: int, nmax: int, delta: float, lam: int) -> WaringRepresentation:
    """Represent lam mod p as a sum of 16 Fibonacci numbers.

    Takes the even-index window F = {F_{2n} : delta*sqrt(N)/10 < n <=
    delta*sqrt(N)/5} and L = {L_{2m} : 1 <= m <= sqrt(N/delta)}; once
    |F||L| > 2p as value sets mod p, the 8-fold sumset of F*L covers F_p,
    and each product splits as F_{2(n+m)} + F_{2(n-m)}.  The returned sum
    is re-evaluated mod p before returning.
    """
    if p < 2 or p > nmax:
        raise ConfigError("need 2 <= p <= nmax")
    if delta <= 0:
        raise ConfigError("delta must be positive")
    root = math.sqrt(nmax)
    n_lo = math.floor(delta * root / 10)
    n_hi = math.floor(delta * root / 5)
    m_hi = math.floor(math.sqrt(nmax / delta))
    if n_lo + 1 > n_hi or m_hi < 1:
        raise ConstructionError(
            f"empty index window (delta={delta}, N={nmax})")
    f_wit = _even_fib_window(p, n_lo, n_hi)
    l_wit = _even_lucas_window(p, m_hi)
    if len(f_wit) * len(l_wit) <= 2 * p:
        raise ConstructionError(
            f"|F||L| = {len(f_wit)}*{len(l_wit)} <= 2p = {2 * p}: "
            "product set too small to force 8-fold coverage")

    # Product residues with (n, m) witnesses; prefer n > m so that both
    # Fibonacci indices in the rewrite are nonnegative.
    prod_wit: dict[int, tuple[int, int]] = {}
    f_items = sorted(f_wit.items(), key=lambda t: t[1])
    l_items = sorted(l_wit.items(), key=lambda t: t[1])
    for fr, n in f_items:
        for lr, m in l_items:
            r = fr * lr % p
            cur = prod_wit.get(r)
            if cur is None or (cur[0] < cur[1] and n >= m):
                prod_wit[r] = (n, m)
    gens = sorted(prod_wit)
    layers = _sumset_layers(gens, p, 8)
    if layers[-1] != (1 << p) - 1:
        raise InvariantError(
            f"8-fold sumset misses residues at p={p} despite |F||L| > 2p")
    target = lam % p
    picks = _decompose_sum(target, layers, gens, p)
    pairs = tuple(prod_wit[u] for u in picks)
    if any(n < m for n, m in pairs):
        raise ConstructionError(
            f"window overlap left a product with n < m (delta={delta}); "
            "use a larger delta (delta^(3/2) > 10 separates the windows)")
    indices = []
    for n, m in pairs:
        indices.extend((2 * (n + m), 2 * (n - m)))
    check = sum(fib_mod(i, p) for i in indices) % p
    if check != target:
        raise InvariantError(f"representation re-evaluates to {check}, not {target}")
    return WaringRepresentation(p=p, target=target, pairs=pairs,
                                fib_indices=tuple(indices),
                                f_size=len(f_wit), l_size=len(l_wit))


@dataclass(frozen=True)
class TernaryReport:
    """Exact count of (x, y, z1, z2) with x y + z1 + z2 = lambda mod p,
    against the main term |X||Y||Z|^2 / p and the error radius
    sqrt(p |X||Y|) |Z|."""

    p: int
    lam: int
    count: int
    main: float
    bound: float


def ternary_count(x: ResidueSet, y: ResidueSet, z: ResidueSet, lam: int,
                  tuple_guard: int = 10**9) -> TernaryReport:
    """Count solutions of x*y + z1 + z2 = lam exactly.

    The inequality |count - main| <= bound is checked in exact integer
    arithmetic before returning (it is a theorem; failure would be a
    finding).
    """
    if not (x.p == y.p == z.p):
        raise ConfigError("mismatched moduli")
    p = x.p
    nx, ny, nz = len(x), len(y), len(z)
    if min(nx, ny, nz) == 0:
        raise ConfigError("empty factor set")
    if nx * ny * nz * nz > tuple_guard:
        raise GuardError(f"|X||Y||Z|^2 = {nx * ny * nz * nz} > {tuple_guard}")
    lam %= p

    zarr = np.fromiter(z, dtype=np.int64, count=nz)
    pair_counts = np.zeros(p, dtype=np.int64)
    step = max(1, 4_000_000 // nz)
    for i in range(0, nz, step):
        block = (zarr[i : i + step, None] + zarr[None, :]) % p
        pair_counts += np.bincount(block.ravel(), minlength=p)

    xy_counts = np.zeros(p, dtype=np.int64)
    yarr = np.fromiter(y, dtype=np.int64, count=ny)
    for xv in x:
        xy_counts += np.bincount(xv * yarr % p, minlength=p)

    # count = sum_v #{xy = v} * #{z1+z2 = lam - v}
    idx = (lam - np.arange(p)) % p
    count = int(np.dot(xy_counts, pair_counts[idx]))

    # |count - q/p| <= sqrt(p nx ny) nz  <=>  (count*p - q)^2 <= p^3 nx ny nz^2
    q = nx * ny * nz * nz
    if (count * p - q) ** 2 > p**3 * nx * ny * nz * nz:
        raise InvariantError(
            f"ternary bound violated at p={p}, lam={lam}: count={count}")
    return TernaryReport(p=p, lam=lam, count=count, main=q / p,
                         bound=math.sqrt(p * nx * ny) * nz)


@dataclass(frozen=True)
class WaringEpsParams:
    """k = least integer with 1/(k+2) < eps/8, and s = 4k < 100/eps."""

    eps: Fraction
    k: int
    s: int


def _as_fraction(x: Union[int, float, str, Fraction]) -> Fraction:
    # Floats are read as the decimal literal they print as, so 0.4 means
    # 2/5 and threshold arithmetic stays exact.
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def waring_eps_params(eps: Union[float, str, Fraction]) -> WaringEpsParams:
    """Term count for the short-index representation at quality eps."""
    e = _as_fraction(eps)
    if not 0 < e <= Fraction(1, 2):
        raise ConfigError(f"eps must lie in (0, 1/2], got {eps}")
    k = math.floor(8 / e) - 1
    s = 4 * k
    if not s * e < 100:
        raise InvariantError(f"s = {s} fails s*eps < 100 at eps = {e}")
    return WaringEpsParams(eps=e, k=k, s=s)


def _iroot(n: int, r: int) -> int:
    """floor(n ** (1/r)) by integer Newton iteration."""
    if n < 0 or r < 1:
        raise ConfigError("iroot needs n >= 0, r >= 1")
    if r == 1 or n in (0, 1):
        return n
    # start above the root; the iteration then decreases monotonically
    x = 1 << ((n.bit_length() + r - 1) // r + 1)
    while True:
        y = ((r - 1) * x + n // x ** (r - 1)) // r
        if y >= x:
            break
        x = y
    while x**r > n:
        x -= 1
    while (x + 1) ** r <= n:
        x += 1
    return x


def ipow_floor(n: int, exponent: Fraction) -> int:
    """floor(n ** exponent) exactly, for n >= 1 and exponent >= 0.

    Exponents are expected to be short decimals (0.3 = 3/10); the guard
    rejects fractions whose numerator would force an astronomically large
    power.
    """
    if n < 1:
        raise ConfigError("need n >= 1")
    e = Fraction(exponent)
    if e < 0:
        raise ConfigError("need exponent >= 0")
    if n.bit_length() * e.numerator > 8_000_000:
        raise GuardError(f"exponent {e} too fine-grained for exact flooring")
    return _iroot(n**e.numerator, e.denominator)


@dataclass(frozen=True)
class EpsRepresentation:
    """lam = L_m * (F_{2n_1-1} + ... + F_{2n_k-1}) + z1 + z2 mod p, expanded
    into s = 4k Fibonacci indices, all at most N^eps."""

    p: int
    nmax: int
    params: WaringEpsParams
    target: int
    m: int
    n_tuple: tuple[int, ...]       # odd-index block inside x
    z1_tuple: tuple[int, ...]      # even-index block inside z1
    z2_tuple: tuple[int, ...]
    fib_indices: tuple[int, ...]
    set_sizes: tuple[int, int, int]  # |X|, |Y|, |Z|


def waring_eps_verify(p: int, nmax: int, eps: Union[float, str, Fraction],
                      lam: int) -> EpsRepresentation:
    """Find a short-index Waring representation and self-verify it.

    X runs over k-fold sums of F_{2n-1} (n <= N^{1/(k+2)}), Y over L_m for
    N^{7/(k+2)}/2 < m <= N^{7/(k+2)}, Z over k-fold sums of F_{2l}.  The
    solvability precondition |X||Y||Z|^2 > p^3 guarantees a solution of
    x y + z1 + z2 = lam; the product L_m F_{2n-1} = F_{m+2n-1} + F_{m-2n+1}
    turns it into 4k Fibonacci terms.  Search order is deterministic
    (ascending m, then ascending x, with least-index witnesses).
    """
    if not 2 <= p <= nmax:
        raise ConfigError("need 2 <= p <= nmax")
    params = waring_eps_params(eps)
    k = params.k
    b_cap = _iroot(nmax, k + 2)
    if b_cap < 1:
        raise ConstructionError(f"N^(1/(k+2)) < 1 at N={nmax}, k={k}")
    m_hi = _iroot(nmax**7, k + 2)
    m_lo = _iroot(nmax**7 >> (k + 2), k + 2)  # floor of the half-range point
    # Keep every expanded index >= 1: m - (2n-1) >= 1 needs m >= 2 b_cap.
    m_start = max(m_lo + 1, 2 * b_cap)
    if m_start > m_hi:
        raise ConstructionError(
            f"Lucas window ({m_lo}, {m_hi}] cannot clear 2*N^(1/(k+2)) = {2 * b_cap}")

    w_x = [fib_mod(2 * n - 1, p) for n in range(1, b_cap + 1)]
    w_z = [fib_mod(2 * l, p) for l in range(1, b_cap + 1)]
    gens_x = sorted(set(w_x))
    gens_z = sorted(set(w_z))
    layers_x = _sumset_layers(gens_x, p, k)
    layers_z = _sumset_layers(gens_z, p, k)

    y_wit: dict[int, int] = {}
    a, b = lucas_mod(m_start, p), lucas_mod(m_start + 1, p)
    for m in range(m_start, m_hi + 1):
        y_wit.setdefault(a, m)
        a, b = b, (a + b) % p

    sx = layers_x[-1].bit_count()
    sy = len(y_wit)
    sz = layers_z[-1].bit_count()
    if sx * sy * sz * sz <= p**3:
        raise ConstructionError(
            f"|X||Y||Z|^2 = {sx}*{sy}*{sz}^2 <= p^3 = {p**3}: "
            "solvability not guaranteed at these sizes")

    # First witness index for each generator residue.
    x_idx = {}
    for n, r in enumerate(w_x, start=1):
        x_idx.setdefault(r, n)
    z_idx = {}
    for l, r in enumerate(w_z, start=1):
        z_idx.setdefault(r, l)

    pair_wit: dict[int, tuple[int, int]] = {}
    z_res = [r for r in range(p) if (layers_z[-1] >> r) & 1]
    for z1 in z_res:
        for z2 in z_res:
            pair_wit.setdefault((z1 + z2) % p, (z1, z2))

    target = lam % p
    x_res = [r for r in range(p) if (layers_x[-1] >> r) & 1]
    for m in sorted(y_wit.values()):
        yv = lucas_mod(m, p)
        for xv in x_res:
            rest = (target - xv * yv) % p
            hit = pair_wit.get(rest)
            if hit is None:
                continue
            n_tuple = tuple(sorted(x_idx[r] for r in
                                   _decompose_sum(xv, layers_x, gens_x, p)))
            z1_tuple = tuple(sorted(z_idx[r] for r in
                                    _decompose_sum(hit[0], layers_z, gens_z, p)))
            z2_tuple = tuple(sorted(z_idx[r] for r in
                                    _decompose_sum(hit[1], layers_z, gens_z, p)))
            indices = []
            for n in n_tuple:
                indices.extend((m + 2 * n - 1, m - 2 * n + 1))
            indices.extend(2 * l for l in z1_tuple)
            indices.extend(2 * l for l in z2_tuple)
            if min(indices) < 1:
                raise InvariantError("expanded index below 1 despite m filter")
            e = params.eps
            top = max(indices)
            if top**e.denominator > nmax**e.numerator:
                raise InvariantError(
                    f"index {top} exceeds N^eps at N={nmax}, eps={e}")
            check = sum(fib_mod(i, p) for i in indices) % p
            if check != target:
                raise InvariantError(
                    f"representation re-evaluates to {check}, not {target}")
            return EpsRepresentation(
                p=p, nmax=nmax, params=params, target=target, m=m,
                n_tuple=n_tuple, z1_tuple=z1_tuple, z2_tuple=z2_tuple,
                fib_indices=tuple(indices), set_sizes=(sx, sy, sz))
    raise InvariantError(
        f"no solution found at p={p}, N={nmax}, eps={params.eps} although "
        "|X||Y||Z|^2 > p^3 guarantees one")
