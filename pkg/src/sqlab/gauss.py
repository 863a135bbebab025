"""Normalized quadratic Gauss sums G(a,q) and G0(a,q).

Each sum comes in two routes: direct summation (the oracle) and the
three-case closed form built from Jacobi symbols.  ``gauss_G_vector`` /
``gauss_G0_vector`` evaluate the direct sums for every numerator at once via
one FFT, which is what the bulk identity scans use.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .arith import DomainError, epsilon, jacobi, sqrt_count_vector_bruteforce


def _e_frac(num: int, den: int) -> complex:
    """e(num/den) with the argument reduced exactly before the exponential."""
    return cmath.exp(2j * math.pi * (num % den) / den)


def gauss_G_direct(a: int, q: int) -> complex:
    """(1/q) sum_{n<q} e(a n^2 / q), compensated accumulation."""
    if q < 1:
        raise DomainError(f"gauss_G_direct: q={q} must be positive")
    re = math.fsum(math.cos(2 * math.pi * (a * n * n % q) / q) for n in range(q))
    im = math.fsum(math.sin(2 * math.pi * (a * n * n % q) / q) for n in range(q))
    return complex(re / q, im / q)


def gauss_G_closed(a: int, q: int) -> complex:
    """Closed form for G(a,q); non-coprime (a,q) reduced first."""
    if q < 1:
        raise DomainError(f"gauss_G_closed: q={q} must be positive")
    g = math.gcd(a, q)
    a, q = a // g, q // g  # gcd(0, q) = q, so a = 0 lands on G(0,1) = 1
    if q % 4 == 2:
        return 0.0 + 0.0j
    if q % 2 == 1:
        return epsilon(q) * jacobi(a, q) / math.sqrt(q)
    # a odd, 4 | q
    return (1 + 1j) / epsilon(a) * jacobi(q, a) / math.sqrt(q)


def gauss_G(a: int, q: int, method: str = "closed") -> complex:
    """Normalized Gauss sum G(a,q) by the requested route."""
    if method == "closed":
        return gauss_G_closed(a, q)
    if method == "direct":
        return gauss_G_direct(a, q)
    raise DomainError(f"gauss_G: unknown method {method!r}")


def gauss_G0(a: int, q: int, method: str = "closed") -> complex:
    """Normalized Gauss sum G0(a,q) = G(a,2q) with modulus 2q."""
    if q < 1:
        raise DomainError(f"gauss_G0: q={q} must be positive")
    return gauss_G(a, 2 * q, method)


def gauss_G_vector(q: int) -> np.ndarray:
    """Direct G(a,q) for all a in [0,q) at once.

    G(a,q) = (1/q) sum_c v[c] e(ac/q) where v is the histogram of n^2 mod q,
    which is exactly an inverse DFT of v.
    """
    v = sqrt_count_vector_bruteforce(q).astype(np.float64)
    return np.fft.ifft(v)


def gauss_G0_vector(q: int) -> np.ndarray:
    """Direct G0(a,q) for all a in [0,2q) at once."""
    return gauss_G_vector(2 * q)
