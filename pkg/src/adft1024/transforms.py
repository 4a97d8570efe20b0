"""Reference DFT/FFT paths and the multiplierless 32-point kernel.

The exact transforms use the unitary convention (1/sqrt(N) on both the
forward and inverse paths).  The 32-point kernel is the eight-stage sparse
product from :mod:`adft1024.factors`; the raw product has Gaussian-integer
entries and coincides with the unnormalized exact kernel rounded entrywise
to the nearest Gaussian integer, so the unitary-comparable version is the
raw product scaled by 1/sqrt(32).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .factors import SparseFactor, all_factors

# Normalization applied after the adds-only factor chain.  The raw product
# approximates the unnormalized exact kernel one-for-one (unit-magnitude
# entries rounded to Gaussian integers), so the unitary-matched scale is
# 1/sqrt(32); this is the scale under which the reported error statistics
# reproduce.
OUTPUT_SCALE = 1.0 / math.sqrt(32.0)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=16)
def dft_matrix(n: int) -> np.ndarray:
    """Unitary n-point DFT matrix: entry (k, m) = omega_n^{km} / sqrt(n)."""
    if n < 1:
        raise ValueError("transform size must be >= 1")
    k, m = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return _readonly(np.exp(-2j * np.pi * (k * m % n) / n) / math.sqrt(n))


def dft_direct(x: np.ndarray) -> np.ndarray:
    """Direct O(N^2) unitary DFT; the oracle for every other transform path.

    Accepts a vector (N,) or a batch (N, B) of column vectors.
    """
    x = np.asarray(x, dtype=complex)
    return dft_matrix(x.shape[0]) @ x

def idft_direct(X: np.ndarray) -> np.ndarray:
    """Direct unitary inverse DFT; round-trips dft_direct to 1e-10."""
    X = np.asarray(X, dtype=complex)
    return dft_matrix(X.shape[0]).conj() @ X


@lru_cache(maxsize=16)
def _bit_reverse_indices(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    rev = np.zeros(n, dtype=np.intp)
    for i in range(n):
        rev[i] = int(format(i, f"0{bits}b")[::-1], 2) if bits else 0
    return _readonly(rev)


def fft_radix2(x: np.ndarray) -> np.ndarray:
    """Iterative radix-2 decimation-in-time FFT, unitary scaling.

    Matches dft_direct to 1e-10 relative; input length must be a power of
    two.
    """
    x = np.asarray(x, dtype=complex)
    n = x.shape[0]
    if n < 1 or n & (n - 1):
        raise ValueError("radix-2 FFT requires a power-of-two length")
    y = x[_bit_reverse_indices(n)].copy()
    m = 2
    while m <= n:
        half = m // 2
        tw = np.exp(-2j * np.pi * np.arange(half) / m)
        blocks = y.reshape(n // m, m)
        even = blocks[:, :half].copy()
        odd = blocks[:, half:] * tw
        blocks[:, :half] = even + odd
        blocks[:, half:] = even - odd
        m *= 2
    return y / math.sqrt(n)


@dataclass(frozen=True)
class Adft32Factorization:
    """The eight-stage kernel plus the scalar applied after the chain."""

    factors: tuple[SparseFactor, ...]
    output_scale: float

    def stage_addition_counts(self) -> list[int]:
        return [f.real_addition_count() for f in self.factors]


@lru_cache(maxsize=1)
def adft32_factorization() -> Adft32Factorization:
    return Adft32Factorization(factors=all_factors(), output_scale=OUTPUT_SCALE)


@lru_cache(maxsize=4)
def _adft32_product() -> np.ndarray:
    """Raw factor product (Gaussian-integer entries, no scaling)."""
    out = np.eye(32, dtype=complex)
    for f in adft32_factorization().factors:
        out = f.to_dense() @ out
    return _readonly(out)


def adft32_matrix(scale: float | None = None) -> np.ndarray:
    """Dense 32-point kernel: scale * (W7 @ ... @ W0).

    scale=None applies the package convention OUTPUT_SCALE; scale=1.0 gives
    the raw integer-valued product.
    """
    s = OUTPUT_SCALE if scale is None else scale
    if s == 1.0:
        return _adft32_product()
    return _readonly(s * _adft32_product())


def adft32_apply(x: np.ndarray, scale: float | None = None) -> np.ndarray:
    """Apply the 32-point kernel to x ((32,) or (32, B)).

    The factor chain itself uses additions, subtractions and re/im swaps
    only; the output scale is one final scalar multiply (skip it with
    scale=1.0 to stay on the pure integer path).
    """
    x = np.asarray(x, dtype=complex)
    if x.shape[0] != 32:
        raise ValueError("kernel input must have leading dimension 32")
    y = x
    for f in adft32_factorization().factors:
        y = f.apply(y)
    s = OUTPUT_SCALE if scale is None else scale
    return y if s == 1.0 else s * y


def best_fit_scale(approx: np.ndarray, exact: np.ndarray) -> float:
    """Real s minimizing ||s*approx - exact||_F (closed-form least squares)."""
    approx = np.asarray(approx, dtype=complex)
    exact = np.asarray(exact, dtype=complex)
    if approx.shape != exact.shape:
        raise ValueError("matrices must have the same shape")
    denom = float(np.real(np.vdot(approx, approx)))
    if denom == 0.0:
        raise ValueError("cannot fit a scale to the zero matrix")
    return float(np.real(np.vdot(approx, exact)) / denom)
