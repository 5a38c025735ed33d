"""Tests for the model generators."""

import numpy as np
import pytest

from ptgram import (
    EnsembleExhausted,
    InvalidGrid,
    ModelSpec,
    check_pt_symmetry,
    classify_spectrum,
    discretized_schrodinger,
    eigendecompose,
    lattice_chain,
    random_pt,
    random_unbroken_pt,
    run_pipeline,
    two_level,
)

SQRT3 = np.sqrt(3.0)

ALL_GENERATED = [
    two_level(1.0, 2.0),
    two_level(2.0, 1.0),
    lattice_chain(9, 0.4, 1.0),
    lattice_chain(16, 0.0, 1.0),
    discretized_schrodinger(16, 4.0, 1.0),
    discretized_schrodinger(17, 4.0, 2.0),
    random_pt(8, seed=1),
    random_unbroken_pt(8, seed=1),
]


@pytest.mark.parametrize("h,parity", ALL_GENERATED)
def test_every_pair_is_exactly_symmetric(h, parity):
    assert check_pt_symmetry(h, parity) < 1e-12


@pytest.mark.parametrize("h,parity", ALL_GENERATED)
def test_every_parity_is_exact_involution(h, parity):
    p = parity.matrix
    n = p.shape[0]
    assert np.array_equal(p @ p, np.eye(n).astype(complex))
    assert np.array_equal(p, p.conj().T)


class TestTwoLevel:
    def test_hermitian_limit(self):
        h, _ = two_level(0.0, 1.0)
        values = [lam for lam, _ in eigendecompose(h)]
        assert np.allclose(values, [-1.0, 1.0], atol=1e-14)

    def test_unbroken_closed_form(self):
        h, parity = two_level(1.0, 2.0)
        art = run_pipeline(h, parity)
        assert np.allclose(art.system.eigenvalues, [-SQRT3, SQRT3], atol=1e-12)
        assert art.signature.values.tolist() == [-1, 1]

    def test_broken_closed_form(self):
        h, _ = two_level(2.0, 1.0)
        values = np.array([lam for lam, _ in eigendecompose(h)])
        assert np.min(np.abs(values - 1j * SQRT3)) < 1e-12
        assert np.min(np.abs(values + 1j * SQRT3)) < 1e-12
        assert not classify_spectrum(values).unbroken

    def test_unbroken_region_matches_criterion(self):
        # scan the coupling plane; the coalescence ring |b| = |g| itself is
        # degenerate and belongs to neither phase
        for g in np.linspace(-2.0, 2.0, 21):
            for b in np.linspace(-2.0, 2.0, 21):
                if abs(b * b - g * g) < 1e-9:
                    continue
                h, _ = two_level(g, b)
                values = np.linalg.eigvals(h)
                unbroken = classify_spectrum(values).unbroken
                assert unbroken == (b * b > g * g), f"g={g}, b={b}"


class TestLatticeChain:
    def test_hermitian_limit_all_real(self):
        h, parity = lattice_chain(16, 0.0, 1.0)
        assert np.max(np.abs(h - h.conj().T)) == 0.0
        art = run_pipeline(h, parity)
        assert art.classification.unbroken
        assert np.max(np.abs(art.gram_pair.gram - np.eye(16))) < 1e-12

    def test_n2_reduces_to_two_level(self):
        chain, chain_parity = lattice_chain(2, 0.7, 1.3)
        pair, pair_parity = two_level(0.7, 1.3)
        assert np.array_equal(chain, pair)
        assert np.array_equal(chain_parity.matrix, pair_parity.matrix)

    def test_breaking_sweep(self):
        # weak gain/loss keeps the spectrum real; strong gain/loss breaks it
        h, _ = lattice_chain(16, 0.05, 1.0)
        assert classify_spectrum(np.linalg.eigvals(h)).unbroken
        h, _ = lattice_chain(16, 3.0, 1.0)
        assert not classify_spectrum(np.linalg.eigvals(h)).unbroken

    def test_interior_gain_profile(self):
        h, parity = lattice_chain(8, 0.3, 1.0, gain_sites=(1, 2))
        assert h[1, 1] == 0.3j and h[6, 6] == -0.3j
        assert h[2, 2] == 0.3j and h[5, 5] == -0.3j
        assert check_pt_symmetry(h, parity) == 0.0

    def test_validation(self):
        with pytest.raises(ValueError):
            lattice_chain(1, 0.0, 1.0)
        with pytest.raises(ValueError):
            lattice_chain(8, 0.1, 1.0, gain_sites=(4,))  # right of its mirror
        with pytest.raises(ValueError):
            lattice_chain(9, 0.1, 1.0, gain_sites=(4,))  # center site
        with pytest.raises(ValueError):
            lattice_chain(8, 0.1, 1.0, gain_sites=(0, 0))


class TestDiscretizedSchrodinger:
    def test_hermitian_case_low_spectrum(self):
        h, _ = discretized_schrodinger(128, 6.0, 0.0)
        assert np.max(np.abs(h.imag)) == 0.0
        values = np.sort(np.linalg.eigvalsh(h.real))
        # quadratic confinement: lowest levels near 1, 3, 5, all positive
        assert values[0] > 0
        assert abs(values[0] - 1.0) < 0.05
        assert abs(values[1] - 3.0) < 0.05

    def test_grid_is_mirror_symmetric(self):
        h, parity = discretized_schrodinger(33, 5.0, 1.0)
        assert check_pt_symmetry(h, parity) == 0.0
        # center point of an odd grid sits at x = 0 with vanishing potential
        kinetic = 2.0 / (2 * 5.0 / 33) ** 2
        assert abs(h[16, 16] - kinetic) < 1e-12

    def test_complex_deformation_is_symmetric_matrix(self):
        h, _ = discretized_schrodinger(24, 4.0, 1.5)
        assert np.max(np.abs(h - h.T)) == 0.0
        assert np.max(np.abs(h.imag)) > 0.1

    def test_invalid_grid(self):
        with pytest.raises(InvalidGrid):
            discretized_schrodinger(4, 5.0, 1.0)
        with pytest.raises(InvalidGrid):
            discretized_schrodinger(16, 0.0, 1.0)
        with pytest.raises(InvalidGrid):
            discretized_schrodinger(16, -3.0, 1.0)
        with pytest.raises(ValueError):
            discretized_schrodinger(16, 3.0, -1.0)


class TestRandomPt:
    def test_deterministic(self):
        h1, _ = random_pt(8, seed=42)
        h2, _ = random_pt(8, seed=42)
        assert np.array_equal(h1, h2)
        h3, _ = random_pt(8, seed=43)
        assert not np.array_equal(h1, h3)

    def test_exact_symmetries(self):
        h, parity = random_pt(10, seed=3)
        assert check_pt_symmetry(h, parity) == 0.0
        assert np.array_equal(h, h.T)

    def test_small_draws_are_two_level_like(self):
        h, _ = random_pt(2, seed=6)
        assert h[0, 1] == h[1, 0]
        assert h[0, 1].imag == 0.0  # swap parity + transpose symmetry force a real coupling
        assert h[1, 1] == np.conj(h[0, 0])

    def test_scale(self):
        h1, _ = random_pt(6, seed=9, scale=1.0)
        h2, _ = random_pt(6, seed=9, scale=2.0)
        assert np.allclose(2.0 * h1, h2)


class TestRandomUnbrokenPt:
    @pytest.mark.parametrize("n", [2, 8, 32, 64])
    def test_unbroken_and_well_conditioned(self, n):
        h, parity = random_unbroken_pt(n, seed=100 + n)
        assert check_pt_symmetry(h, parity) == 0.0
        assert np.array_equal(h, h.T)
        values, vectors = np.linalg.eig(h)
        assert classify_spectrum(values).unbroken
        assert np.linalg.cond(vectors) < 1e8

    def test_not_hermitian(self):
        h, _ = random_unbroken_pt(12, seed=1)
        assert np.max(np.abs(h - h.conj().T)) > 0.1

    def test_deterministic(self):
        h1, _ = random_unbroken_pt(16, seed=5)
        h2, _ = random_unbroken_pt(16, seed=5)
        assert np.array_equal(h1, h2)

    def test_retry_budget_exhausts(self):
        with pytest.raises(EnsembleExhausted):
            random_unbroken_pt(8, seed=0, mixing=400.0, max_retries=2)


class TestModelSpec:
    def test_dispatch_matches_direct_calls(self):
        spec = ModelSpec("two-level", {"g": 1.0, "b": 2.0}, dim=2)
        h, _ = spec.build()
        assert np.array_equal(h, two_level(1.0, 2.0)[0])

        spec = ModelSpec("lattice-chain", {"gamma": 0.3, "t": 1.0}, dim=10)
        h, _ = spec.build()
        assert np.array_equal(h, lattice_chain(10, 0.3, 1.0)[0])

        spec = ModelSpec("discretized-schrodinger", {"L": 4.0, "epsilon": 1.0}, dim=16)
        h, _ = spec.build()
        assert np.array_equal(h, discretized_schrodinger(16, 4.0, 1.0)[0])

        spec = ModelSpec("random-pt", {}, dim=8, seed=42)
        h, _ = spec.build()
        assert np.array_equal(h, random_pt(8, seed=42)[0])

    def test_validation(self):
        with pytest.raises(ValueError):
            ModelSpec("unknown", {}, dim=2)
        with pytest.raises(ValueError):
            ModelSpec("two-level", {"g": 1.0}, dim=2)  # missing b
        with pytest.raises(ValueError):
            ModelSpec("two-level", {"g": 1.0, "b": 2.0}, dim=3)
        with pytest.raises(ValueError):
            ModelSpec("random-pt", {}, dim=8)  # missing seed
