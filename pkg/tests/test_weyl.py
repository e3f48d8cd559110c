import cmath
import math

import numpy as np
import pytest

from catent.weyl import (
    TrigPolynomial,
    coherent_weights,
    convergence_gap,
    reconstruct,
    sample,
)


def random_poly(rng, max_terms=4, max_freq=3):
    terms = {}
    for _ in range(rng.integers(1, max_terms + 1)):
        n = (int(rng.integers(-max_freq, max_freq + 1)),
             int(rng.integers(-max_freq, max_freq + 1)))
        terms[n] = complex(rng.normal(), rng.normal())
    return TrigPolynomial(terms)


def test_sample_constant_is_identity():
    ones = sample(TrigPolynomial.constant(1.0), 5)
    assert np.allclose(ones, 1.0)


def test_sample_wave_pattern():
    vals = sample(TrigPolynomial.wave(1, 0), 4)
    expected = np.repeat([1, 1j, -1, -1j], 4)
    assert np.allclose(vals, expected, atol=1e-14)


def test_sample_aliases_grid_frequency():
    n_grid = 6
    vals = sample(TrigPolynomial.wave(n_grid, 0), n_grid)
    assert np.allclose(vals, 1.0, atol=1e-12)


def test_sample_is_star_morphism():
    rng = np.random.default_rng(2)
    for _ in range(20):
        f = random_poly(rng)
        g = random_poly(rng)
        n_grid = int(rng.integers(2, 9))
        lhs = sample(f * g, n_grid)
        rhs = sample(f, n_grid) * sample(g, n_grid)
        assert np.max(np.abs(lhs - rhs)) < 1e-11
        assert np.max(np.abs(sample(f.conjugate(), n_grid) - sample(f, n_grid).conj())) < 1e-12


@pytest.mark.parametrize(
    "freq,expect",
    [((0, 0), 1.0), ((6, 0), 1.0), ((0, 12), 1.0), ((1, 0), 0.0), ((3, 5), 0.0), ((6, 1), 0.0)],
)
def test_tracial_state_on_waves(freq, expect):
    n_grid = 6
    mean = np.mean(sample(TrigPolynomial.wave(*freq), n_grid))
    assert abs(mean - expect) < 1e-12


def test_coherent_weights_on_lattice_point():
    w = coherent_weights((2 / 7, 3 / 7), 7)
    assert abs(w.lambda11 - 1.0) < 1e-12
    assert abs(w.lambda12) + abs(w.lambda21) + abs(w.lambda22) < 1e-7
    assert w.base == (2, 3)


def test_coherent_weights_cell_center():
    w = coherent_weights((0.5 / 5, 0.5 / 5), 5)
    for lam in (w.lambda11, w.lambda12, w.lambda21, w.lambda22):
        assert abs(lam - 0.5) < 1e-12


def test_coherent_weights_normalized():
    rng = np.random.default_rng(9)
    for _ in range(10_000):
        x = (rng.random(), rng.random())
        w = coherent_weights(x, 11)
        assert abs(w.squares().sum() - 1.0) < 1e-12


def test_reconstruct_equals_sample_on_lattice():
    rng = np.random.default_rng(3)
    f = random_poly(rng)
    n_grid = 6
    vals = sample(f, n_grid)
    for l1 in range(n_grid):
        for l2 in range(n_grid):
            got = reconstruct(vals, (l1 / n_grid, l2 / n_grid))
            assert abs(got - vals[l1 * n_grid + l2]) < 1e-12


def test_reconstruct_all_ones():
    vals = np.ones(8 * 8, dtype=complex)
    rng = np.random.default_rng(4)
    for _ in range(50):
        assert abs(reconstruct(vals, (rng.random(), rng.random())) - 1.0) < 1e-12


def test_reconstruct_worked_example():
    # f = wave((1,0)), N=10, x=(0.05, 0): the cell fractions are (1/2, 0), so
    # the value is cos^2(pi/4) * 1 + sin^2(pi/4) * exp(2 pi i / 10)
    vals = sample(TrigPolynomial.wave(1, 0), 10)
    got = reconstruct(vals, (0.05, 0.0))
    expected = (1 + cmath.exp(1j * math.pi / 5)) / 2
    assert abs(got - expected) < 1e-12


def test_convergence_gap_constant_is_zero():
    assert convergence_gap(TrigPolynomial.constant(1.0), 10) < 1e-14


@pytest.mark.parametrize("freq", [(1, 0), (1, 1)])
def test_convergence_gap_decays_with_grid(freq):
    f = TrigPolynomial.wave(*freq)
    gaps = [convergence_gap(f, n_grid) for n_grid in (10, 50, 250)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 0.1


def test_convergence_gap_reproducible():
    f = TrigPolynomial.wave(2, -1)
    assert convergence_gap(f, 25) == convergence_gap(f, 25)


def test_trig_polynomial_drops_zero_terms():
    f = TrigPolynomial({(1, 0): 0.0, (0, 1): 2.0})
    assert set(f.terms) == {(0, 1)}


def test_trig_polynomial_eval_scalar_and_array():
    f = TrigPolynomial.wave(1, 2, coeff=0.5)
    x = f(0.25, 0.5)
    assert isinstance(x, complex)
    arr = f(np.array([0.0, 0.25]), np.array([0.0, 0.5]))
    assert arr.shape == (2,)
    assert abs(arr[1] - x) < 1e-15


def test_input_guards():
    with pytest.raises(ValueError):
        sample(TrigPolynomial.constant(1.0), 1)
    with pytest.raises(ValueError):
        reconstruct(np.ones(5), (0.1, 0.1))  # 5 is not a square
    with pytest.raises(ValueError):
        convergence_gap(TrigPolynomial.constant(1.0), 4, samples=0)
