"""The exponential-sum family H, H0, H1, Htilde, H_j and the logarithmic
average S_J(x) = sum_{q<=J} |H(q,x)|/q.

All five kinds are trigonometric sums over a residue class of numerators a,
so one period of values (in x) is a single inverse DFT of the weight vector.
``h_vector`` exposes that; ``h_sum`` is the scalar entry point.  The support
machinery (``support_verdict`` and ``divisor_set``) encodes the vanishing
patterns used to prove the (log J)^2 bound on S_J.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import DomainError, factorize, jacobi
from .gauss import gauss_G0_vector, gauss_G_vector

_KINDS = ("H", "H0", "H1", "Htilde") + tuple(f"Hj{j}" for j in range(8))


def h_period(kind: str, q: int) -> int:
    """Fundamental period (in x) of the given sum."""
    return q if kind in ("H0", "H1") else 2 * q


def _coprime_mask(n: int, q: int) -> np.ndarray:
    a = np.arange(n, dtype=np.int64)
    return np.gcd(a, q) == 1


def h_weights(kind: str, q: int) -> np.ndarray:
    """Weight vector w with h(q,x) = sum_a w[a] e(ax/P), P = h_period."""
    if q < 1:
        raise DomainError(f"h_weights: q={q} must be positive")
    if kind == "H":
        w = gauss_G0_vector(q).copy()
        w[~_coprime_mask(2 * q, q)] = 0
        w[0] = 0  # a runs over [1, 2q-1]
        return w
    if kind == "H0":
        return gauss_G_vector(q)
    if kind == "H1":
        w = np.zeros(q, dtype=np.complex128)
        g = gauss_G_vector(q)
        for a in range(1, q + 1):  # a = q contributes only when q = 1
            if math.gcd(a, q) == 1:
                w[a % q] += g[a % q]
        return w
    if kind == "Htilde" or (kind.startswith("Hj") and kind[2:].isdigit()):
        fac = factorize(q)
        qp = fac.odd_part
        w = np.zeros(2 * q, dtype=np.complex128)
        scale = 1.0 / math.sqrt(q)
        if kind == "Htilde":
            wanted = lambda a: True
        else:
            j = int(kind[2:])
            wanted = lambda a: a % 8 == j
        for a in range(1, 2 * q):
            if wanted(a) and math.gcd(a, qp) == 1:
                w[a] = scale * jacobi(a, qp)
        return w
    raise DomainError(f"h_weights: unknown kind {kind!r}")


@lru_cache(maxsize=4096)
def _h_vector_cached(kind: str, q: int) -> np.ndarray:
    P = h_period(kind, q)
    vals = P * np.fft.ifft(h_weights(kind, q))
    vals.setflags(write=False)
    return vals


def h_vector(kind: str, q: int) -> np.ndarray:
    """One period of values: entry x is h(q,x), x in [0, h_period)."""
    if kind not in _KINDS:
        raise DomainError(f"h_vector: unknown kind {kind!r}")
    return _h_vector_cached(kind, q)


def h_sum(kind: str, q: int, x: int) -> complex:
    """Direct evaluation of the chosen sum at (q, x)."""
    vals = h_vector(kind, q)
    return complex(vals[x % len(vals)])


def h0_fast(q: int, x: int) -> int:
    """H0(q,x) = r_q(-x): square-root count via the prime-power formula."""
    from .arith import count_sqrts

    return count_sqrts(-x % q, q)


@dataclass(frozen=True)
class HSupportVerdict:
    in_support: bool
    bound: float


def _odd_prime_conditions(odd_factors, x: int) -> bool:
    """The per-prime membership test shared by all three support sets."""
    x = abs(x)
    for p, k in odd_factors:
        pk = p**k
        if k % 2 == 0 and x % pk == 0:
            continue
        if x % (pk // p) == 0 and x % pk != 0:
            continue
        return False
    return True


def support_verdict(q: int, x: int, flavor: str = "plain") -> HSupportVerdict:
    """Membership of x in the support set for H(q,.) (plain) or Htilde(q,.)
    (tilde), with the associated upper bound on the modulus."""
    if q < 1:
        raise DomainError(f"support_verdict: q={q} must be positive")
    fac = factorize(q)
    b = fac.two_exponent
    odd = fac.odd_factors
    odd_bound = 1
    for p, k in odd:
        odd_bound *= p ** (k // 2)
    if flavor == "plain":
        if b == 0:
            ok = _odd_prime_conditions(odd, x)
            bound = float(odd_bound)
        else:
            ok = x % (1 << max(b - 2, 0)) == 0 and _odd_prime_conditions(odd, x)
            bound = 2.0 ** (b / 2) * odd_bound
    elif flavor == "tilde":
        ok = x % (1 << (b + 1)) == 0 and _odd_prime_conditions(odd, x)
        bound = 2.0 ** (b / 2 + 1) * odd_bound
    else:
        raise DomainError(f"support_verdict: unknown flavor {flavor!r}")
    return HSupportVerdict(ok, bound if ok else 0.0)


@dataclass(frozen=True)
class DivisorSet:
    """All q in [1,J] at which H(q,x) can be nonzero."""

    x: int
    J: int
    members: tuple[int, ...]


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(math.isqrt(n)) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


def divisor_set(x: int, J: int) -> DivisorSet:
    """Enumerate the admissible-exponent pattern of moduli for fixed x."""
    if J < 1:
        raise DomainError(f"divisor_set: J={J} must be positive")
    primes = _primes_upto(J)
    odd_primes = [p for p in primes if p != 2]
    members: set[int] = set()

    if x == 0:
        # q = 2^b * (odd square), with the odd square itself at most J
        odd_sq = [1]
        for p in odd_primes:
            extra = []
            for s in odd_sq:
                v = s * p * p
                while v <= J:
                    extra.append(v)
                    v *= p * p
            odd_sq.extend(extra)
        for s in odd_sq:
            q = s
            while q <= J:
                members.add(q)
                q *= 2
        return DivisorSet(0, J, tuple(sorted(members)))

    ax = abs(x)
    a = 0
    while ax % 2 == 0:
        ax //= 2
        a += 1
    x_odd = []
    for p, ell in factorize(ax).factors:
        x_odd.append((p, ell))
    fresh = [p for p in odd_primes if all(p != pj for pj, _ in x_odd)]

    # admissible odd-prime-power cores: even exponents <= ell, or ell + 1
    cores = [1]
    for p, ell in x_odd:
        choices = [p**k for k in range(0, ell + 1, 2)] + [p ** (ell + 1)]
        cores = [c * pw for c in cores for pw in choices if c * pw <= J]
    # squarefree products of fresh primes, capped by J
    def extend(core: int, idx: int):
        for b in range(a + 3):
            q = core << b
            if q > J:
                break
            members.add(q)
        for i in range(idx, len(fresh)):
            nxt = core * fresh[i]
            if nxt > J:
                break
            extend(nxt, i + 1)

    for c in cores:
        extend(c, 0)
    return DivisorSet(x, J, tuple(sorted(members)))


def abs_h_on_points(q: int, xs: np.ndarray) -> np.ndarray:
    """|H(q, x)| for an array of integers x."""
    vals = h_vector("H", q)
    return np.abs(vals[np.mod(xs, 2 * q)])


def log_average_S(x: int, J: int, method: str = "direct") -> float:
    """S_J(x) = sum_{q=1}^{J} |H(q,x)| / q."""
    if J < 1:
        raise DomainError(f"log_average_S: J={J} must be positive")
    if method == "direct":
        qs = range(1, J + 1)
    elif method == "support_filtered":
        qs = divisor_set(x, J).members
    else:
        raise DomainError(f"log_average_S: unknown method {method!r}")
    return math.fsum(abs(h_sum("H", q, x)) / q for q in qs)


def _adversarial_candidates(J: int, cap_count: int = 4000) -> list[int]:
    """Highly divisible x values (products of small prime powers <= J^2),
    which maximize the size of the divisor set."""
    cap = J * J
    primes = [p for p in _primes_upto(64) if p <= max(J, 2)]
    out = {0, 1}
    frontier = [1]
    for p in primes:
        nxt = []
        for v in frontier:
            w = v * p
            while w <= cap:
                nxt.append(w)
                w *= p
        frontier.extend(nxt)
        frontier = sorted(set(frontier))[: cap_count * 4]
    out.update(frontier[:cap_count])
    return sorted(out)


def scan_max_S(
    J: int,
    x_range: tuple[int, int],
    adversarial: bool = False,
) -> tuple[int, float]:
    """Maximize S_J over a window of x (plus adversarial candidates).

    Returns (argmax x, max value); ties break to the smallest x.
    """
    lo, hi = x_range
    if hi < lo:
        raise DomainError("scan_max_S: empty x range")
    xs = list(range(lo, hi + 1))
    if adversarial:
        xs = sorted(set(xs) | set(_adversarial_candidates(J)))
    xs_arr = np.array(xs, dtype=np.int64)
    S = accumulate_S(J, xs_arr)
    best = int(np.argmax(S))  # argmax returns the first (smallest-x) max
    return xs[best], float(S[best])


def accumulate_S(J: int, xs: np.ndarray, snapshots: dict | None = None) -> np.ndarray:
    """S_J at each point of xs; if ``snapshots`` is given, it is filled with
    copies of the running sum at each J' in snapshots.keys() <= J."""
    S = np.zeros(len(xs), dtype=np.float64)
    marks = sorted(snapshots.keys()) if snapshots is not None else []
    for q in range(1, J + 1):
        S += abs_h_on_points(q, xs) / q
        if marks and q == marks[0]:
            snapshots[marks.pop(0)] = S.copy()
    return S
