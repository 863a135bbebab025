"""Circle-method side of the square-integer average: the Weyl multiplier,
the oscillatory profile gamma_N, Dirichlet rational approximation, smooth
bumps, and the arc decomposition a_N + c_N with its further splits.

Grid frequencies are exact dyadic rationals j/L; all phase reductions on
grids are done in integer arithmetic before any exponential is taken.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import fresnel

from .arith import DomainError
from .gauss import gauss_G0

TWO_PI = 2.0 * math.pi


class QuadratureError(ArithmeticError):
    """Adaptive quadrature exceeded its panel budget."""


class ContractError(ValueError):
    """A caller violated an interface precondition."""


# ---------------------------------------------------------------------------
# smooth bump
# ---------------------------------------------------------------------------

def eta(t):
    """Smooth even bump: 1 on [-1/4,1/4], 0 outside (-1/2,1/2).

    Built from the standard exp(-1/t) partition function, so the sandwich
    chi_[-1/4,1/4] <= eta <= chi_[-1/2,1/2] is exact.
    """
    t = np.abs(np.asarray(t, dtype=np.float64))
    out = np.zeros_like(t)
    out[t <= 0.25] = 1.0
    mid = (t > 0.25) & (t < 0.5)
    s = (0.5 - t[mid]) * 4.0  # s in (0,1): 1 near inner edge, 0 near outer
    f1 = np.exp(-1.0 / s)
    f2 = np.exp(-1.0 / (1.0 - s))
    out[mid] = f1 / (f1 + f2)
    if out.ndim == 0:
        return float(out)
    return out


def eta_scaled(k: float, t):
    """eta_k(t) = eta(k t)."""
    return eta(np.asarray(t) * k)


# ---------------------------------------------------------------------------
# Weyl multiplier
# ---------------------------------------------------------------------------

def weyl_multiplier(xi, N: int) -> complex:
    """(1/N) sum_{k=1}^{N} e(k^2 xi), with exact rational phase reduction."""
    if N < 1:
        raise DomainError(f"weyl_multiplier: N={N} must be positive")
    frac = Fraction(xi)
    num, den = frac.numerator, frac.denominator
    k = np.arange(1, N + 1, dtype=object)
    r = np.array([(kk * kk * num) % den for kk in k], dtype=np.float64)
    z = np.exp(2j * np.pi * r / den)
    return complex(math.fsum(z.real), math.fsum(z.imag)) / N


def weyl_multiplier_grid(N: int, L: int) -> np.ndarray:
    """Weyl multiplier at every xi = j/L, j in [0,L), via one inverse DFT
    of the histogram of k^2 mod L."""
    if N < 1 or L < 1:
        raise DomainError("weyl_multiplier_grid: N and L must be positive")
    k = np.arange(1, N + 1, dtype=np.int64)
    c = (k % L) * (k % L) % L  # k^2 mod L without overflow for L < 2^31
    hist = np.bincount(c, minlength=L).astype(np.float64)
    return (L / N) * np.fft.ifft(hist)


# ---------------------------------------------------------------------------
# gamma_N
# ---------------------------------------------------------------------------

def gamma_N(xi, N: int, tol: float = 1e-12):
    """gamma_N(xi) = (1/N) int_0^N e(xi t^2/2) dt.

    Evaluated in closed form through the Fresnel integrals (absolute error
    well below any tol >= 1e-12); accepts scalars or arrays.
    """
    if N < 1:
        raise DomainError(f"gamma_N: N={N} must be positive")
    if tol < 1e-12:
        raise DomainError(f"gamma_N: tol={tol} below supported precision")
    c = np.asarray(xi, dtype=np.float64) * (N * N)
    z = np.sqrt(2.0 * np.abs(c))
    s_z, c_z = fresnel(z)
    with np.errstate(invalid="ignore", divide="ignore"):
        val = np.where(z > 0, (c_z + 1j * np.sign(c) * s_z) / np.where(z > 0, z, 1.0), 1.0 + 0j)
    if val.ndim == 0:
        return complex(val)
    return val


def gamma_N_quad(xi: float, N: int, tol: float = 1e-12, max_panels: int = 1 << 21) -> complex:
    """The same integral by adaptive panels: int_0^1 e(xi N^2 u^2 / 2) du,
    one Gauss-Legendre 15-point rule per half oscillation.

    Kept as the independent route for verifying the closed form; raises
    QuadratureError when the oscillation count exceeds the panel budget.
    """
    if N < 1:
        raise DomainError(f"gamma_N_quad: N={N} must be positive")
    c = float(xi) * N * N  # phase is pi * c * u^2
    ac = abs(c)
    n_half = max(1, math.ceil(ac))  # boundaries at phase multiples of pi
    if n_half > max_panels:
        raise QuadratureError(
            f"gamma_N_quad: {n_half} panels exceed budget {max_panels}"
        )
    edges = np.sqrt(np.arange(n_half + 1) / max(ac, 1.0))
    edges[-1] = 1.0
    nodes, weights = np.polynomial.legendre.leggauss(15)
    a, b = edges[:-1], edges[1:]
    half = (b - a) / 2.0
    mid = (a + b) / 2.0
    u = mid[:, None] + half[:, None] * nodes[None, :]
    w = half[:, None] * weights[None, :]
    vals = w * np.exp(1j * np.pi * c * u * u)
    return complex(math.fsum(vals.real.ravel()), math.fsum(vals.imag.ravel()))


def gamma_N_series(xi: float, N: int, tol: float = 1e-14, max_terms: int = 600) -> complex:
    """Power-series oracle: int_0^1 e(c u^2 / 2) du = sum (i pi c)^k / (k! (2k+1)),
    with c = xi N^2.  The alternating terms peak near exp(pi |c|), so the
    series is refused once cancellation would swamp tol."""
    c = float(xi) * N * N
    z = 1j * math.pi * c
    if math.exp(min(abs(z), 700.0)) * 1e-16 > tol:
        raise QuadratureError(
            f"gamma_N_series: |xi| N^2 = {abs(c):.3g} too large for float64 cancellation"
        )
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    for k in range(1, max_terms):
        term *= z / k
        contrib = term / (2 * k + 1)
        total += contrib
        if abs(contrib) < tol and abs(term) < tol:
            return complex(total)
    raise QuadratureError("gamma_N_series: did not converge (|c| too large)")


# ---------------------------------------------------------------------------
# Dirichlet approximation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReducedRational:
    """A reduced fraction a/q, the center of a circle-method arc on 2T."""

    a: int
    q: int

    def __post_init__(self):
        if self.q < 1 or math.gcd(self.a, self.q) != 1:
            raise DomainError(f"ReducedRational: {self.a}/{self.q} not reduced")

    def value(self) -> Fraction:
        return Fraction(self.a, self.q)


def dirichlet_approx(xi, N: int) -> ReducedRational:
    """Reduced a/q with q <= 4N and |2 xi - a/q| <= 1/(4 N q).

    The smallest such q is returned: by exhaustive search over q for
    N <= 64, through continued-fraction convergents of 2 xi otherwise.
    """
    if N < 1:
        raise DomainError(f"dirichlet_approx: N={N} must be positive")
    t = 2 * Fraction(xi)
    Q = 4 * N
    if N <= 64:
        for q in range(1, Q + 1):
            a = round(t * q)
            if abs(t - Fraction(a, q)) <= Fraction(1, Q * q) and math.gcd(a, q) == 1:
                return ReducedRational(a, q)
        raise ArithmeticError("dirichlet_approx: exhaustive search failed")
    # continued-fraction convergents of t
    num, den = t.numerator, t.denominator
    h0, h1 = 1, 0  # h: numerators, k: denominators
    k0, k1 = 0, 1
    n, d = num, den
    while True:
        if d == 0:
            break
        a0 = n // d
        n, d = d, n - a0 * d
        h0, h1 = a0 * h0 + h1, h0
        k0, k1 = a0 * k0 + k1, k0
        if k0 > Q:
            break
        if abs(t - Fraction(h0, k0)) <= Fraction(1, Q * k0):
            return ReducedRational(h0, k0)
    raise ArithmeticError("dirichlet_approx: no convergent satisfied the bound")


# ---------------------------------------------------------------------------
# arcs and the multiplier decomposition
# ---------------------------------------------------------------------------

def arcs_at_level(s: int) -> list[ReducedRational]:
    """All reduced a/q in [0,2) with 2^{s-1} <= q < 2^s."""
    out = []
    for q in range(1 << (s - 1), 1 << s):
        for a in range(0, 2 * q):
            if math.gcd(a, q) == 1:
                out.append(ReducedRational(a, q))
    return out


def _theta(two_xi: float, a: int, q: int) -> float:
    """Signed distance 2 xi - a/q on 2T, representative in (-1, 1]."""
    d = (two_xi - a / q + 1.0) % 2.0 - 1.0
    return d


@dataclass(frozen=True)
class ArcDecomposition:
    """Pointwise values of the circle-method pieces at one frequency.

    low_pass is the narrow-bump (eta_{qN^2/J}) part of the major arcs:
    b_{N,1} in the fixed-scale split (M = J), and the a-tilde term in the
    maximal-variant split (M > J).  high_near collects the bump differences
    on levels s <= log2 J; high_far the levels above.  Always
    low_pass + high_near + high_far = a_full and a_full + c = weyl.
    """

    weyl: complex
    a_full: complex
    c: complex
    per_scale: tuple[complex, ...]
    low_pass: complex
    high_near: complex
    high_far: complex

    @property
    def a_tilde(self) -> complex:
        return self.low_pass

    def b_split(self) -> tuple[complex, complex]:
        """(b_{N,1}, b_{N,2}) for the fixed-scale decomposition M = J."""
        return self.low_pass, self.high_near + self.high_far


def _arc_terms_at(two_xi: float, N: int, s: int, width_scale: float | None):
    """Sum of G0(a,q) eta(...) gamma_N(...) over arcs of level s at 2 xi.

    width_scale None means the dyadic bump eta_{2^{2s}}; otherwise the bump
    scale is width_scale * q (i.e. eta_{q N^2/J} with width_scale = N^2/J).
    """
    total = 0.0 + 0.0j
    for q in range(1 << (s - 1), 1 << s):
        scale = float(1 << (2 * s)) if width_scale is None else width_scale * q
        half_width = 0.5 / scale
        # candidate numerators near 2 xi (and its wrap)
        seen = set()
        for base in (two_xi, two_xi - 2.0, two_xi + 2.0):
            a = round(base * q)
            for cand in (a - 1, a, a + 1):
                aa = cand % (2 * q)
                if aa in seen or math.gcd(aa, q) != 1:
                    continue
                seen.add(aa)
                th = _theta(two_xi, aa, q)
                # account for the non-canonical representative if needed
                if abs(th) >= half_width:
                    continue
                total += gauss_G0(aa, q) * eta(scale * th) * gamma_N(th, N)
    return total


def arc_multipliers(xi: float, N: int, M: int, J: int | None = None) -> ArcDecomposition:
    """Evaluate the decomposition pieces of the Weyl multiplier at xi.

    M = 2^m <= N/4 is the major-arc cutoff; when J (a power of two <= M)
    is given, the narrow-bump refinement with eta_{q N^2 / J} is computed
    as well.
    """
    if M < 1 or M & (M - 1):
        raise DomainError(f"arc_multipliers: M={M} must be a power of two")
    if M > N // 4:
        raise ContractError(f"arc_multipliers: M={M} exceeds N/4={N // 4}")
    if J is not None and (J & (J - 1) or J > M):
        raise ContractError(f"arc_multipliers: J={J} must be a power of two <= M")
    m = M.bit_length() - 1
    two_xi = 2.0 * float(Fraction(xi) % 1)
    per_scale = []
    for s in range(1, m + 1):
        per_scale.append(_arc_terms_at(two_xi, N, s, None))
    a_full = sum(per_scale, 0.0 + 0.0j)
    w = weyl_multiplier(Fraction(xi) % 1, N)
    c = w - a_full
    low = 0.0 + 0.0j
    high_near = 0.0 + 0.0j
    high_far = 0.0 + 0.0j
    if J is not None:
        s0 = J.bit_length() - 1
        for s in range(1, s0 + 1):
            narrow = _arc_terms_at(two_xi, N, s, N * N / J)
            low += narrow
            high_near += per_scale[s - 1] - narrow
        for s in range(s0 + 1, m + 1):
            high_far += per_scale[s - 1]
    else:
        high_near = a_full
    return ArcDecomposition(
        weyl=w,
        a_full=a_full,
        c=c,
        per_scale=tuple(per_scale),
        low_pass=low,
        high_near=high_near,
        high_far=high_far,
    )


# ---------------------------------------------------------------------------
# grid sampling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultiplierGrid:
    """Values of a 1-periodic multiplier at the L frequencies j/L."""

    L: int
    values: np.ndarray

    def __post_init__(self):
        if self.L < 1 or self.L & (self.L - 1):
            raise DomainError(f"MultiplierGrid: L={self.L} must be a power of two")
        if len(self.values) != self.L or not np.all(np.isfinite(self.values)):
            raise DomainError("MultiplierGrid: bad values array")


def _accumulate_arcs_grid(
    out: np.ndarray, N: int, s: int, L: int, width_scale: float | None
) -> None:
    """Add the level-s arc contributions to a length-L grid (xi = j/L)."""
    j = None
    for q in range(1 << (s - 1), 1 << s):
        scale = float(1 << (2 * s)) if width_scale is None else width_scale * q
        half_width = 0.5 / scale
        # points per arc: |2j/L - a/q| < half_width
        radius = int(math.floor(half_width * L / 2.0)) + 1
        offs = np.arange(-radius, radius + 1)
        for a in range(0, 2 * q):
            if math.gcd(a, q) != 1:
                continue
            center = a * L / (2.0 * q)
            j = (int(round(center)) + offs) % L
            th = (2.0 * j / L - a / q + 1.0) % 2.0 - 1.0
            mask = np.abs(th) < half_width
            if not np.any(mask):
                continue
            jm, thm = j[mask], th[mask]
            out[jm] += gauss_G0(a, q) * eta(scale * thm) * gamma_N(thm, N)


def sample_multiplier(
    which: str,
    N: int,
    M: int | None,
    J: int | None,
    L: int,
) -> MultiplierGrid:
    """Sample one of the multiplier pieces on the dyadic grid j/L.

    which is one of weyl | a_N | c_N | b_N1 | b_N2 | a_tilde.  L must be a
    power of two with L >= 4 N^2 so downstream periodized convolution stays
    clean.
    """
    if L & (L - 1) or L < 4 * N * N:
        raise ContractError(f"sample_multiplier: L={L} must be a power of two >= 4N^2")
    if which == "weyl":
        return MultiplierGrid(L, weyl_multiplier_grid(N, L))
    if M is None or M & (M - 1) or M > N // 4:
        raise ContractError(f"sample_multiplier: M={M} must be a power of two <= N/4")
    m = M.bit_length() - 1
    need_narrow = which in ("b_N1", "b_N2", "a_tilde")
    if need_narrow and (J is None or J & (J - 1) or J > M):
        raise ContractError(f"sample_multiplier: J={J} must be a power of two <= M")

    if which in ("a_N", "c_N"):
        vals = np.zeros(L, dtype=np.complex128)
        for s in range(1, m + 1):
            _accumulate_arcs_grid(vals, N, s, L, None)
        if which == "c_N":
            vals = weyl_multiplier_grid(N, L) - vals
        return MultiplierGrid(L, vals)

    s0 = J.bit_length() - 1
    narrow = np.zeros(L, dtype=np.complex128)
    for s in range(1, s0 + 1):
        _accumulate_arcs_grid(narrow, N, s, L, N * N / J)
    if which in ("b_N1", "a_tilde") and M == J:
        return MultiplierGrid(L, narrow)
    if which == "a_tilde":
        return MultiplierGrid(L, narrow)
    wide = np.zeros(L, dtype=np.complex128)
    if which == "b_N1":  # maximal-variant split: sum of bump differences, s <= s0
        for s in range(1, s0 + 1):
            _accumulate_arcs_grid(wide, N, s, L, None)
        return MultiplierGrid(L, wide - narrow)
    if which == "b_N2":
        for s in range(1, m + 1):
            _accumulate_arcs_grid(wide, N, s, L, None)
        if M == J:
            return MultiplierGrid(L, wide - narrow)
        tail = np.zeros(L, dtype=np.complex128)
        for s in range(s0 + 1, m + 1):
            _accumulate_arcs_grid(tail, N, s, L, None)
        return MultiplierGrid(L, tail)
    raise DomainError(f"sample_multiplier: unknown piece {which!r}")


def arc_level_grid(N: int, s: int, L: int) -> np.ndarray:
    """The single-level arc multiplier (denominators in [2^{s-1}, 2^s),
    dyadic bumps) sampled at xi = j/L, j in [0, L).

    Unlike sample_multiplier this imposes no lower bound on L; it is meant
    for periodic-circle operator norms where wraparound is part of the
    model.
    """
    if N < 1 or s < 1 or L < 1:
        raise DomainError("arc_level_grid: N, s, L must be positive")
    if (1 << s) > N // 4:
        raise ContractError(f"arc_level_grid: level s={s} needs 2^s <= N/4 = {N // 4}")
    out = np.zeros(L, dtype=np.complex128)
    _accumulate_arcs_grid(out, N, s, L, None)
    return out


# ---------------------------------------------------------------------------
# FJK remainder
# ---------------------------------------------------------------------------

def fjk_remainder(xi, N: int) -> tuple[float, float]:
    """|m_N(xi) - G0(a,q) gamma_N(2xi - a/q)| and its N/sqrt(q) normalization,
    with a/q the Dirichlet approximant of 2 xi."""
    r = dirichlet_approx(xi, N)
    th = float(2 * Fraction(xi) - r.value())
    main = gauss_G0(r.a, r.q) * gamma_N(th, N)
    rem = abs(weyl_multiplier(xi, N) - main)
    return rem, rem * N / math.sqrt(r.q)
