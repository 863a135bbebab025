"""Discrete averaging operators along the squares, their maximal variant,
Fourier-multiplier application on periodized grids, and the high/low
frequency splitting used to compare the average against its smooth part.

Signals are finitely supported functions Z -> R stored as an offset plus a
contiguous sample block.  All operators return new Signal instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import DomainError
from .circle import ContractError, MultiplierGrid, sample_multiplier


@dataclass(frozen=True)
class Signal:
    """A finitely supported function on Z: samples[i] is the value at
    offset + i."""

    offset: int
    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise DomainError("Signal: samples must be a nonempty 1-d array")
        if not np.all(np.isfinite(arr)):
            raise DomainError("Signal: samples must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def support(self) -> tuple[int, int]:
        """[first, last] integer indices carrying the block (inclusive)."""
        return self.offset, self.offset + len(self.samples) - 1

    def value_at(self, n: int) -> float:
        i = n - self.offset
        if 0 <= i < len(self.samples):
            return float(self.samples[i])
        return 0.0

    def values_at(self, ns: np.ndarray) -> np.ndarray:
        ns = np.asarray(ns, dtype=np.int64)
        i = ns - self.offset
        ok = (i >= 0) & (i < len(self.samples))
        out = np.zeros(ns.shape, dtype=np.float64)
        out[ok] = self.samples[i[ok]]
        return out

    def trimmed(self) -> "Signal":
        """Drop zero padding at both ends (keeps one sample if all zero)."""
        nz = np.nonzero(self.samples)[0]
        if len(nz) == 0:
            return Signal(self.offset, np.zeros(1))
        return Signal(self.offset + int(nz[0]), self.samples[nz[0] : nz[-1] + 1])

    def to_dict(self) -> dict:
        return {"offset": int(self.offset), "samples": [float(v) for v in self.samples]}

    @classmethod
    def from_dict(cls, d: dict) -> "Signal":
        return cls(int(d["offset"]), np.asarray(d["samples"], dtype=np.float64))

    @classmethod
    def indicator(cls, a: int, b: int) -> "Signal":
        """Indicator of the integer interval [a, b]."""
        if b < a:
            raise DomainError(f"indicator: empty interval [{a},{b}]")
        return cls(a, np.ones(b - a + 1))

    @classmethod
    def delta(cls, n: int = 0) -> "Signal":
        return cls(n, np.ones(1))


@dataclass(frozen=True)
class IntervalZ:
    """The integer interval [a, b], b >= a."""

    a: int
    b: int

    def __post_init__(self):
        if self.b < self.a:
            raise DomainError(f"IntervalZ: empty [{self.a},{self.b}]")

    def __len__(self) -> int:
        return self.b - self.a + 1

    def __contains__(self, n: int) -> bool:
        return self.a <= n <= self.b

    def double(self) -> "IntervalZ":
        """2I: same left endpoint, doubled length."""
        return IntervalZ(self.a, 2 * self.b - self.a + 1)

    def triple(self) -> "IntervalZ":
        """3I: one copy of I glued on each side of 2I's span, i.e. the
        concentric enlargement used by the stopping-time averages."""
        return IntervalZ(2 * self.a - self.b - 1, 2 * self.b - self.a + 1)


def _next_pow2(n: int) -> int:
    return 1 << max(0, (n - 1).bit_length())


def average_squares(f: Signal, N: int, method: str = "direct") -> Signal:
    """A_N f(x) = (1/N) sum_{k=1}^{N} f(x + k^2).

    direct accumulates N shifted copies; dft convolves with the histogram
    of {-k^2 : k <= N} on a circle large enough that no wraparound touches
    the true support.
    """
    if N < 1:
        raise DomainError(f"average_squares: N={N} must be positive")
    n = len(f.samples)
    NN = N * N
    out_len = n + NN  # support shifts by -k^2, k^2 in [1, N^2]
    if method == "direct":
        acc = np.zeros(out_len)
        for k in range(1, N + 1):
            acc[NN - k * k : NN - k * k + n] += f.samples
        return Signal(f.offset - NN, acc / N)
    if method == "dft":
        L = _next_pow2(4 * (n + NN))
        kernel = np.bincount((-(np.arange(1, N + 1, dtype=np.int64) ** 2)) % L, minlength=L)
        conv = np.fft.irfft(np.fft.rfft(f.samples, L) * np.fft.rfft(kernel, L), L)
        return Signal(f.offset - NN, np.roll(conv, NN)[:out_len] / N)
    raise DomainError(f"average_squares: unknown method {method!r}")


def maximal_average(f: Signal, N_max: int, dyadic: bool = True) -> Signal:
    """sup over N of A_N |f|, with N ranging over powers of two up to N_max
    (dyadic=True) or over all 1 <= N <= N_max."""
    if N_max < 1:
        raise DomainError(f"maximal_average: N_max={N_max} must be positive")
    g = Signal(f.offset, np.abs(f.samples))
    if dyadic:
        Ns = [1 << s for s in range(N_max.bit_length()) if (1 << s) <= N_max]
    else:
        Ns = list(range(1, N_max + 1))
    out_off = f.offset - N_max * N_max
    best = np.zeros(len(g.samples) + N_max * N_max)
    for N in Ns:
        a = average_squares(g, N, method="dft" if N > 64 else "direct")
        i = a.offset - out_off
        best[i : i + len(a.samples)] = np.maximum(best[i : i + len(a.samples)], a.samples)
    return Signal(out_off, best)


def norm_p(f: Signal, p: float, interval: IntervalZ | None = None) -> float:
    """lp norm of f, or the normalized norm <|f|^p>_I^{1/p} on an interval.

    p = inf gives the sup; interval=None gives the global (unnormalized)
    norm.
    """
    if interval is None:
        vals = np.abs(f.samples)
        scale = 1.0
    else:
        vals = np.abs(f.values_at(np.arange(interval.a, interval.b + 1)))
        scale = 1.0 / len(interval)
    if math.isinf(p):
        return float(np.max(vals)) if vals.size else 0.0
    if p <= 0:
        raise DomainError(f"norm_p: p={p} must be positive")
    return float((scale * np.sum(vals**p)) ** (1.0 / p))


def average_on(f: Signal, interval: IntervalZ, p: float = 1.0) -> float:
    """<|f|^p>_I^{1/p} = (|I|^{-1} sum_{x in I} |f(x)|^p)^{1/p}."""
    return norm_p(f, p, interval)


def bilinear_form(f: Signal, g: Signal) -> float:
    """sum_x f(x) g(x)."""
    lo = max(f.offset, g.offset)
    hi = min(f.offset + len(f.samples), g.offset + len(g.samples))
    if hi <= lo:
        return 0.0
    return float(
        np.dot(f.samples[lo - f.offset : hi - f.offset], g.samples[lo - g.offset : hi - g.offset])
    )


def apply_multiplier(f: Signal, grid: MultiplierGrid) -> Signal:
    """Apply a Fourier multiplier, sampled at frequencies j/L, to f by
    periodized convolution.

    The output lives on a window of length L centered so that a convolution
    kernel concentrated near frequency 0 (equivalently, spatially spread
    over [-L/2, L/2)) is captured without wraparound ambiguity.  L must
    exceed 2x the signal length.
    """
    L = grid.L
    n = len(f.samples)
    if L < 2 * n:
        raise ContractError(f"apply_multiplier: grid L={L} too small for signal length {n}")
    buf = np.zeros(L, dtype=np.complex128)
    buf[:n] = f.samples
    # analysis transform e(-x xi) (numpy fft): under it the A_N kernel
    # (1/N) sum_k delta_{-k^2} has symbol (1/N) sum_k e(k^2 xi), the Weyl sum
    out = np.fft.ifft(np.fft.fft(buf) * grid.values)
    out = np.roll(out, L // 2)
    return Signal(f.offset - L // 2, out.real)


def high_low_split(f: Signal, N: int, J: int, L: int | None = None) -> tuple[Signal, Signal]:
    """Split A_N f into a high-frequency part and a low-frequency part.

    The low part applies the narrow major-arc multiplier built from bumps of
    width J/(q N^2) at each rational a/(2q) with q < J; the high part is the
    complement within the full Weyl multiplier, so High + Low = A_N f exactly
    up to FFT roundoff.  For J >= N/4 no splitting is meaningful at this
    cutoff and the pair (0, A_N f) is returned.
    """
    if N < 1 or J < 1 or J & (J - 1):
        raise DomainError(f"high_low_split: need N>=1 and J a power of two, got N={N} J={J}")
    af = average_squares(f, N, method="dft" if N > 64 else "direct")
    if J >= max(1, N // 4):
        zero = Signal(af.offset, np.zeros(len(af.samples)))
        return zero, af
    if L is None:
        L = _next_pow2(max(4 * N * N, 2 * (len(f.samples) + N * N)))
    low_grid = sample_multiplier("b_N1", N, J, J, L)
    weyl_grid = sample_multiplier("weyl", N, None, None, L)
    high_grid = MultiplierGrid(L, weyl_grid.values - low_grid.values)
    high = apply_multiplier(f, high_grid)
    low = apply_multiplier(f, low_grid)
    return high, low
