"""1024-point transforms composed from 32-point kernels.

A length-1024 vector is reshaped column-major into a 32x32 array, its rows
are transformed by one 32-point kernel, the result is weighted elementwise
by exact 1024th roots of unity, the columns are transformed by a second
32-point kernel, and the array is flattened back.  Choosing the exact DFT
for both kernels reproduces the exact 1024-point DFT; the three approximate
variants swap the multiplierless kernel into one or both positions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .transforms import _readonly, adft32_apply, dft_matrix

N = 32
SIZE = N * N


class Variant(enum.Enum):
    """Which 32-point kernel goes into the row/column positions."""

    EXACT = "exact"   # exact rows, exact columns
    ALG1 = "alg1"     # approximate rows, approximate columns
    ALG2 = "alg2"     # approximate rows, exact columns
    ALG3 = "alg3"     # exact rows, approximate columns

    @property
    def row_kernel_exact(self) -> bool:
        return self in (Variant.EXACT, Variant.ALG3)

    @property
    def col_kernel_exact(self) -> bool:
        return self in (Variant.EXACT, Variant.ALG2)


VARIANTS = (Variant.EXACT, Variant.ALG1, Variant.ALG2, Variant.ALG3)
APPROX_VARIANTS = (Variant.ALG1, Variant.ALG2, Variant.ALG3)


@dataclass(frozen=True)
class TransformSpec:
    """Selector consumed by every analysis: a variant at block length 1024."""

    variant: Variant
    size: int = SIZE

    def __post_init__(self):
        if self.size != SIZE:
            raise ValueError(f"only size {SIZE} is supported")


@dataclass(frozen=True)
class TwiddleMatrix:
    """32x32 grid of exact 1024th roots of unity, entry (m, n) = w^(m*n).

    trivial_mask marks the entries equal to one (m or n zero): 63 cells,
    leaving 961 nontrivial complex weights.
    """

    entries: np.ndarray
    trivial_mask: np.ndarray

    @property
    def nontrivial_count(self) -> int:
        return int((~self.trivial_mask).sum())


@lru_cache(maxsize=1)
def twiddle_matrix() -> TwiddleMatrix:
    m, n = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    prod = m * n
    entries = np.exp(-2j * np.pi * (prod % SIZE) / SIZE)
    return TwiddleMatrix(entries=_readonly(entries),
                         trivial_mask=_readonly(prod % SIZE == 0))


def invvec(x: np.ndarray) -> np.ndarray:
    """Column-major reshape of a length-N^2 vector to N x N: (i, c) = x[c*N+i].

    Accepts an extra trailing batch axis.
    """
    x = np.asarray(x)
    n = int(round(np.sqrt(x.shape[0])))
    if n * n != x.shape[0]:
        raise ValueError("input length must be a perfect square")
    return x.reshape((n, n) + x.shape[1:], order="F")


def vec(mat: np.ndarray) -> np.ndarray:
    """Column-major flatten; exact inverse of invvec."""
    mat = np.asarray(mat)
    r, c = mat.shape[:2]
    return mat.reshape((r * c,) + mat.shape[2:], order="F")


def _kernel(exact: bool, block: np.ndarray) -> np.ndarray:
    """Apply the configured 32-point kernel to the columns of block."""
    if exact:
        return dft_matrix(N) @ block
    return adft32_apply(block)


def transform_1024(x: np.ndarray, spec: TransformSpec) -> np.ndarray:
    """Evaluate the selected 1024-point transform on x ((1024,) or (1024, B)).

    The exact variant equals dft_direct to 1e-9 relative.
    """
    x = np.asarray(x, dtype=complex)
    if x.shape[0] != SIZE:
        raise ValueError(f"input must have leading dimension {SIZE}")
    batched = x.ndim == 2
    xb = x if batched else x[:, None]
    nbatch = xb.shape[1]

    a = invvec(xb)                                   # a[i, c, b] = x[c*N+i, b]
    rows_in = a.transpose(1, 0, 2).reshape(N, N * nbatch)
    rows_out = _kernel(spec.variant.row_kernel_exact, rows_in)
    p = rows_out.reshape(N, N, nbatch)               # p[k, i, b]: row i transformed

    q = twiddle_matrix().entries[:, :, None] * p

    cols_in = q.transpose(1, 0, 2).reshape(N, N * nbatch)
    cols_out = _kernel(spec.variant.col_kernel_exact, cols_in)
    r = cols_out.reshape(N, N, nbatch)               # r[d, k, b]

    out = r.reshape(SIZE, nbatch)                    # bin index = d*N + k
    return out if batched else out[:, 0]


@lru_cache(maxsize=8)
def _transform_matrix_cached(variant: Variant) -> np.ndarray:
    cols = transform_1024(np.eye(SIZE, dtype=complex), TransformSpec(variant))
    return _readonly(cols)


def transform_matrix(spec: TransformSpec) -> np.ndarray:
    """Dense 1024x1024 matrix of the selected transform (column c is the
    transform of the c-th unit impulse).  Cached and read-only."""
    return _transform_matrix_cached(spec.variant)
