"""Tests for Gram assembly, the sign-flip inversion identity, and the two
dual-basis construction routes."""

import numpy as np
import pytest

from ptgram import (
    BiorthonormalSystem,
    NotPositiveDefinite,
    Signature,
    biorthonormalize,
    check_indefinite_norms,
    check_unconventional_completeness,
    dual_gram,
    dual_via_inversion,
    dual_via_signature,
    extract_signature,
    fix_pt_phase,
    gram_matrix,
    inverse_via_signature,
    make_parity,
    pair_left_right,
    run_pipeline,
    solve,
    two_level,
    verify_signature_theorem,
)

SQRT3 = np.sqrt(3.0)
G_CLOSED = np.array([[2 / SQRT3, 1 / SQRT3], [1 / SQRT3, 2 / SQRT3]])
G_INV_CLOSED = np.array([[2 / SQRT3, -1 / SQRT3], [-1 / SQRT3, 2 / SQRT3]])


@pytest.fixture(scope="module")
def two_level_art():
    h, parity = two_level(1.0, 2.0)
    art = run_pipeline(h, parity)
    assert art.failure is None
    return art


def _plus_signature(n):
    return Signature(values=np.ones(n, dtype=np.int64), residuals=np.zeros(n), valid=True)


class TestGramMatrix:
    def test_hermitian_gives_identity(self):
        rng = np.random.default_rng(31)
        a = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
        h = 0.5 * (a + a.conj().T)
        pair = gram_matrix(biorthonormalize(pair_left_right(h)))
        assert np.max(np.abs(pair.gram - np.eye(9))) < 1e-12

    def test_two_level_closed_form(self, two_level_art):
        assert np.max(np.abs(two_level_art.gram_pair.gram - G_CLOSED)) < 1e-10

    def test_random_hermitian_positive_definite(self, small_ensemble):
        for art in small_ensemble[:10]:
            g = art.gram_pair.gram
            assert np.max(np.abs(g - g.conj().T)) < 1e-12
            assert np.linalg.eigvalsh(g)[0] > 0

    def test_dependent_states_rejected(self):
        v = np.array([1.0, 1j]) / np.sqrt(2)
        states = np.column_stack([v, v])
        sys = BiorthonormalSystem(
            eigenvalues=np.zeros(2, dtype=complex),
            states=states,
            duals=states.copy(),
            duality_defect=0.0,
            completeness_defect=0.0,
        )
        with pytest.raises(NotPositiveDefinite):
            gram_matrix(sys)


class TestDualGram:
    def test_hermitian_identity(self):
        rng = np.random.default_rng(5)
        a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        h = 0.5 * (a + a.conj().T)
        sys = biorthonormalize(pair_left_right(h))
        assert np.max(np.abs(dual_gram(sys) - np.eye(6))) < 1e-12

    def test_two_level_closed_form(self, two_level_art):
        assert np.max(np.abs(dual_gram(two_level_art.system) - G_INV_CLOSED)) < 1e-10

    def test_matches_solver_inverse(self, small_ensemble):
        for art in small_ensemble:
            g = art.gram_pair.gram
            inverse = solve(g, np.eye(g.shape[0], dtype=complex))
            assert np.max(np.abs(dual_gram(art.system) - inverse)) < 1e-8


class TestInverseViaSignature:
    def test_identity_all_plus(self):
        out = inverse_via_signature(np.eye(3), _plus_signature(3))
        assert np.array_equal(out, np.eye(3))

    def test_two_level_analytic(self):
        sig = Signature(values=np.array([-1, 1]), residuals=np.zeros(2), valid=True)
        out = inverse_via_signature(G_CLOSED, sig)
        assert np.max(np.abs(out - G_INV_CLOSED)) < 1e-14

    def test_random_flip_inverts(self, small_ensemble):
        for art in small_ensemble:
            g = art.gram_pair.gram
            flipped = inverse_via_signature(g, art.signature)
            assert np.max(np.abs(flipped @ g - np.eye(g.shape[0]))) < 1e-8


class TestVerifySignatureTheorem:
    def test_identity(self):
        check = verify_signature_theorem(np.eye(4), _plus_signature(4))
        assert check.residual == 0.0
        assert check.diagonal_gap < 1e-14

    def test_two_level(self, two_level_art):
        check = verify_signature_theorem(two_level_art.gram_pair.gram, two_level_art.signature)
        assert check.residual < 1e-12
        assert check.diagonal_gap < 1e-12
        # both diagonals sit at 2/sqrt(3)
        assert np.max(np.abs(np.diag(two_level_art.gram_pair.gram) - 2 / SQRT3)) < 1e-10

    def test_random_ensemble(self, small_ensemble):
        for art in small_ensemble:
            check = verify_signature_theorem(art.gram_pair.gram, art.signature)
            assert check.residual < 1e-8
            assert check.diagonal_gap < 1e-10

    def test_residual_grows_toward_coalescence(self):
        # the identity degrades as the two-level couplings approach |b| = |g|
        residuals = []
        for b in (2.0, 1.0001):
            h, parity = two_level(1.0, b)
            art = run_pipeline(h, parity)
            assert art.failure is None
            residuals.append(art.theorem.residual)
        assert residuals[-1] > residuals[0]


class TestDualRoutes:
    def test_orthonormal_states_identity_gram(self):
        rng = np.random.default_rng(2)
        q, _ = np.linalg.qr(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
        g = q.conj().T @ q
        duals = dual_via_inversion(q, g)
        assert np.max(np.abs(duals - q)) < 1e-10
        duals_sig = dual_via_signature(q, np.eye(5), _plus_signature(5))
        assert np.max(np.abs(duals_sig - q)) == 0.0

    def test_two_level_reproduces_adjoint_eigenvectors(self, two_level_art):
        sys = two_level_art.system
        duals = dual_via_inversion(sys.states, two_level_art.gram_pair.gram)
        assert np.max(np.linalg.norm(duals - sys.duals, axis=0)) < 1e-10
        duals_sig = dual_via_signature(sys.states, two_level_art.gram_pair.gram, two_level_art.signature)
        assert np.max(np.linalg.norm(duals_sig - duals, axis=0)) < 1e-12

    def test_inversion_route_duality(self, small_ensemble):
        for art in small_ensemble[:10]:
            sys = art.system
            duals = dual_via_inversion(sys.states, art.gram_pair.gram)
            defect = np.max(np.abs(duals.conj().T @ sys.states - np.eye(sys.dim)))
            assert defect < 1e-8

    def test_routes_agree_on_ensemble(self, small_ensemble):
        for art in small_ensemble:
            assert art.route_discrepancy < 1e-8


class TestSignedRelations:
    def test_two_level_completeness_and_norms(self, two_level_art):
        _, parity = two_level(1.0, 2.0)
        sys, sig = two_level_art.system, two_level_art.signature
        assert check_unconventional_completeness(sys, sig, parity) < 1e-12
        assert check_indefinite_norms(sys, sig, parity) < 1e-12
        bilinear = sys.states.T @ sys.states
        assert np.max(np.abs(bilinear - np.diag([-1.0, 1.0]))) < 1e-12

    def test_hermitian_parity_eigenbasis(self):
        h = np.array([[0.0, 1.0], [1.0, 0.0]])
        parity = make_parity("swap-pairs", 2)
        sys = fix_pt_phase(biorthonormalize(pair_left_right(h)), parity)
        sig, rescaled = extract_signature(sys, parity)
        assert check_unconventional_completeness(rescaled, sig, parity) < 1e-12

    def test_trivial_parity_identity_norms(self):
        h = np.diag([1.0, 2.0, 3.0])
        parity = make_parity("explicit", 3, matrix=np.eye(3))
        sys = fix_pt_phase(biorthonormalize(pair_left_right(h)), parity)
        sig, rescaled = extract_signature(sys, parity)
        assert sig.values.tolist() == [1, 1, 1]
        assert np.max(np.abs(rescaled.states.T @ rescaled.states - np.eye(3))) < 1e-12
        assert check_indefinite_norms(rescaled, sig, parity) < 1e-12

    def test_random_ensemble(self, small_ensemble):
        for art in small_ensemble:
            assert art.signed_completeness < 1e-8
            assert art.indefinite_norms < 1e-8

    def test_invalid_signature_rejected(self, two_level_art):
        _, parity = two_level(1.0, 2.0)
        bad = Signature(values=np.array([-1, 1]), residuals=np.ones(2), valid=False)
        with pytest.raises(ValueError):
            check_indefinite_norms(two_level_art.system, bad, parity)
