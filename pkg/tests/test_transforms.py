"""Exact transform oracles and the 32-point kernel contracts."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adft1024.transforms import (OUTPUT_SCALE, adft32_apply, adft32_factorization,
                                 adft32_matrix, best_fit_scale, dft_direct,
                                 dft_matrix, fft_radix2, idft_direct)

from conftest import complex_vector


def test_dft_matrix_n1():
    np.testing.assert_array_equal(dft_matrix(1), np.array([[1.0 + 0j]]))


def test_dft_matrix_n2():
    expected = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    np.testing.assert_allclose(dft_matrix(2), expected, atol=1e-15)


def test_dft_matrix_rejects_zero():
    with pytest.raises(ValueError):
        dft_matrix(0)


@pytest.mark.parametrize("n", [2, 4, 8, 16, 32])
def test_dft_matrix_unitary(n):
    f = dft_matrix(n)
    np.testing.assert_allclose(f @ f.conj().T, np.eye(n), atol=1e-10)


def test_impulse_transforms_to_constant():
    x = np.zeros(32, dtype=complex)
    x[0] = 1.0
    np.testing.assert_allclose(dft_direct(x), np.full(32, 1 / math.sqrt(32)),
                               atol=1e-12)


def test_dc_concentrates_in_bin_zero():
    got = dft_direct(np.ones(32, dtype=complex))
    expected = np.zeros(32, dtype=complex)
    expected[0] = math.sqrt(32)
    np.testing.assert_allclose(got, expected, atol=1e-12)


def test_pure_exponential_hits_single_bin():
    n = np.arange(32)
    got = dft_direct(np.exp(2j * np.pi * n * 5 / 32))
    assert abs(abs(got[5]) - math.sqrt(32)) < 1e-10
    rest = np.delete(np.abs(got), 5)
    assert rest.max() <= 1e-10


def test_idft_of_scaled_dc_is_all_ones():
    x = np.zeros(32, dtype=complex)
    x[0] = math.sqrt(32)
    np.testing.assert_allclose(idft_direct(x), np.ones(32), atol=1e-12)


def test_idft_round_trip_random(rng):
    x = complex_vector(rng, 32)
    got = idft_direct(dft_direct(x))
    assert np.linalg.norm(got - x) / np.linalg.norm(x) < 1e-10


def test_idft_round_trip_ramp():
    x = np.arange(32, dtype=complex)
    got = idft_direct(dft_direct(x))
    assert np.linalg.norm(got - x) / np.linalg.norm(x) < 1e-10


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 31 - 1))
def test_parseval_energy_preserved(seed):
    x = complex_vector(np.random.default_rng(seed), 32)
    assert abs(np.linalg.norm(dft_direct(x)) - np.linalg.norm(x)) < 1e-10


def test_fft_radix2_smallest_case():
    np.testing.assert_allclose(fft_radix2(np.array([1.0, 0.0])),
                               np.array([1, 1]) / math.sqrt(2), atol=1e-15)


def test_fft_radix2_rejects_non_power_of_two():
    with pytest.raises(ValueError):
        fft_radix2(np.zeros(24, dtype=complex))


@pytest.mark.parametrize("n", [2, 4, 8, 64, 256, 1024])
def test_fft_radix2_matches_direct(n, rng):
    x = complex_vector(rng, n)
    ref = dft_direct(x)
    tol = 1e-9 if n >= 1024 else 1e-10
    assert np.linalg.norm(fft_radix2(x) - ref) / np.linalg.norm(ref) < tol


def test_fft_radix2_thousand_vector_oracle(rng):
    worst = 0.0
    for _ in range(1000):
        x = complex_vector(rng, 32)
        ref = dft_direct(x)
        err = np.linalg.norm(fft_radix2(x) - ref) / np.linalg.norm(ref)
        worst = max(worst, err)
    assert worst < 1e-10


def test_factorization_shape_and_scale():
    fact = adft32_factorization()
    assert len(fact.factors) == 8
    assert fact.output_scale == OUTPUT_SCALE == pytest.approx(1 / math.sqrt(32))
    assert sum(fact.stage_addition_counts()) == 348


def test_product_identical_under_two_evaluation_orders():
    left_fold = np.eye(32, dtype=complex)
    for f in adft32_factorization().factors:
        left_fold = f.to_dense() @ left_fold
    by_columns = adft32_apply(np.eye(32, dtype=complex), scale=1.0)
    np.testing.assert_array_equal(left_fold, by_columns)


def test_raw_product_is_gaussian_integer():
    m = adft32_matrix(scale=1.0)
    assert np.all(m.real == np.rint(m.real))
    assert np.all(m.imag == np.rint(m.imag))


def test_raw_product_rounds_the_unnormalized_kernel():
    # independent oracle: entrywise nearest-Gaussian-integer rounding of the
    # unnormalized exact kernel
    k, m = np.meshgrid(np.arange(32), np.arange(32), indexing="ij")
    unnormalized = np.exp(-2j * np.pi * k * m / 32)
    rounded = np.round(unnormalized.real) + 1j * np.round(unnormalized.imag)
    np.testing.assert_array_equal(adft32_matrix(scale=1.0), rounded)


def test_kernel_is_symmetric():
    m = adft32_matrix(scale=1.0)
    np.testing.assert_array_equal(m, m.T)


def test_apply_matches_dense_kernel(rng):
    x = complex_vector(rng, 32)
    np.testing.assert_allclose(adft32_apply(x), adft32_matrix() @ x, atol=1e-12)


def test_apply_is_linear(rng):
    x, y = complex_vector(rng, 32), complex_vector(rng, 32)
    a, b = 0.7 - 0.2j, -1.3 + 0.4j
    lhs = adft32_apply(a * x + b * y)
    rhs = a * adft32_apply(x) + b * adft32_apply(y)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_impulse_extracts_first_column():
    x = np.zeros(32, dtype=complex)
    x[0] = 1.0
    np.testing.assert_allclose(adft32_apply(x), adft32_matrix()[:, 0], atol=1e-14)


def test_apply_rejects_wrong_length():
    with pytest.raises(ValueError):
        adft32_apply(np.zeros(33, dtype=complex))


def test_worst_row_response_error_near_minus_ten_db():
    grid = 8192
    omega = -np.pi + 2 * np.pi * np.arange(grid) / grid
    kernel = np.exp(-1j * np.outer(np.arange(32), omega))
    h_exact = dft_matrix(32) @ kernel
    h_hat = adft32_matrix() @ kernel
    peak = np.abs(h_exact).max(axis=1)
    worst_db = 20 * np.log10((np.abs(h_hat - h_exact).max(axis=1) / peak).max())
    assert -11.5 <= worst_db <= -9.5


def test_best_fit_scale_identity():
    f = dft_matrix(32)
    assert best_fit_scale(f, f) == pytest.approx(1.0, abs=1e-12)


def test_best_fit_scale_inverse_of_doubling():
    f = dft_matrix(32)
    assert best_fit_scale(2 * np.asarray(f), f) == pytest.approx(0.5, abs=1e-12)


def test_best_fit_scale_rejects_zero_matrix():
    with pytest.raises(ValueError):
        best_fit_scale(np.zeros((2, 2)), np.eye(2))


def test_best_fit_scale_of_raw_kernel_matches_lstsq_oracle():
    raw = adft32_matrix(scale=1.0)
    f32 = np.asarray(dft_matrix(32))
    got = best_fit_scale(raw, f32)
    # independent oracle: real least squares on the stacked re/im system
    design = np.concatenate([raw.real.ravel(), raw.imag.ravel()])[:, None]
    target = np.concatenate([f32.real.ravel(), f32.imag.ravel()])
    ref = float(np.linalg.lstsq(design, target, rcond=None)[0][0])
    assert got == pytest.approx(ref, abs=1e-12)
    assert got == pytest.approx(0.14877702668826304, abs=1e-12)
