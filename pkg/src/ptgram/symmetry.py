"""Parity, antiunitary-symmetry checks, spectrum classification, state sign
structure, and the associated charge operator.

Time reversal is fixed throughout as entrywise complex conjugation in the
working basis, so invariance of H under combined parity + conjugation reads
P conj(H) P = H, and invariance of a state reads P conj(v) = v up to phase.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .biortho import BiorthonormalSystem
from .errors import (
    InvalidParity,
    NotPTInvariant,
    SignatureUndefined,
    UnpairedComplexEigenvalue,
)
from .linalg import as_complex_matrix, max_abs

__all__ = [
    "ParityOperator",
    "Signature",
    "SpectrumClassification",
    "make_parity",
    "check_pt_symmetry",
    "check_pseudo_hermiticity",
    "classify_spectrum",
    "fix_pt_phase",
    "extract_signature",
    "build_charge",
]

PARITY_KINDS = ("grid-reversal", "swap-pairs", "explicit")


@dataclass(frozen=True)
class ParityOperator:
    """A self-adjoint involution (P^2 = I, P = P-adjoint)."""

    matrix: np.ndarray
    kind: str

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_trivial(self) -> bool:
        """True when P is the identity (a valid but vacuous parity)."""
        return max_abs(self.matrix - np.eye(self.dim)) <= 1e-12


@dataclass(frozen=True)
class Signature:
    """Per-state signs relating each dual to the parity-reflected state.

    ``residuals[k]`` is the 2-norm defect of  dual_k = values[k] * P state_k;
    ``valid`` is True when every residual is below the tolerance it was
    extracted with.
    """

    values: np.ndarray  # int entries, each +1 or -1
    residuals: np.ndarray
    valid: bool

    @property
    def dim(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class SpectrumClassification:
    """Partition of eigenvalue indices into real ones and conjugate pairs."""

    real_indices: tuple[int, ...]
    conjugate_pairs: tuple[tuple[int, int], ...]
    unbroken: bool


def make_parity(kind: str, dim: int, matrix=None, tol: float = 1e-12) -> ParityOperator:
    """Build a parity operator of the requested kind.

    ``grid-reversal`` reflects site i to dim-1-i (anti-diagonal permutation);
    ``swap-pairs`` exchanges sites pairwise (2x2 blocks; an odd trailing site
    is left fixed); ``explicit`` validates a user-supplied matrix.

    Raises :class:`InvalidParity` when the result is not a self-adjoint
    involution within ``tol``.
    """
    if kind not in PARITY_KINDS:
        raise InvalidParity(f"unknown parity kind {kind!r}; expected one of {PARITY_KINDS}")
    if dim < 1:
        raise InvalidParity(f"parity dimension must be >= 1, got {dim}")

    if kind == "grid-reversal":
        p = np.fliplr(np.eye(dim, dtype=np.complex128))
    elif kind == "swap-pairs":
        p = np.zeros((dim, dim), dtype=np.complex128)
        for i in range(0, dim - 1, 2):
            p[i, i + 1] = p[i + 1, i] = 1.0
        if dim % 2:
            p[dim - 1, dim - 1] = 1.0
    else:
        if matrix is None:
            raise InvalidParity("explicit parity requires a matrix")
        p = as_complex_matrix(matrix, name="parity")
        if p.shape != (dim, dim):
            raise InvalidParity(f"explicit parity has shape {p.shape}, expected {(dim, dim)}")

    eye = np.eye(dim, dtype=np.complex128)
    involution_defect = max_abs(p @ p - eye)
    hermiticity_defect = max_abs(p - p.conj().T)
    if involution_defect > tol:
        raise InvalidParity(f"P^2 differs from identity by {involution_defect:.3e}")
    if hermiticity_defect > tol:
        raise InvalidParity(f"P differs from its adjoint by {hermiticity_defect:.3e}")
    return ParityOperator(matrix=p, kind=kind)


def _check_dims(h: np.ndarray, parity: ParityOperator) -> np.ndarray:
    h = as_complex_matrix(h, name="H")
    if h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if h.shape[0] != parity.dim:
        raise ValueError(f"matrix dim {h.shape[0]} does not match parity dim {parity.dim}")
    return h


def check_pt_symmetry(h: np.ndarray, parity: ParityOperator) -> float:
    """Max-abs residual of P conj(H) P - H (zero iff H commutes with the
    combined parity-conjugation operation)."""
    h = _check_dims(h, parity)
    p = parity.matrix
    return max_abs(p @ h.conj() @ p - h)


def check_pseudo_hermiticity(h: np.ndarray, parity: ParityOperator) -> float:
    """Max-abs residual of P H P - H-adjoint.

    Coincides with the parity-conjugation residual exactly when H equals its
    transpose; the two are reported independently and never conflated.
    """
    h = _check_dims(h, parity)
    p = parity.matrix
    return max_abs(p @ h @ p - h.conj().T)


def classify_spectrum(eigenvalues, tol_real: float = 1e-8) -> SpectrumClassification:
    """Split a spectrum into real eigenvalues and conjugate pairs.

    An eigenvalue counts as real when |Im E| <= tol_real * (1 + |E|).  The
    remaining ones are greedily matched into pairs minimizing
    |E_a - conj(E_b)|; a leftover complex eigenvalue raises
    :class:`UnpairedComplexEigenvalue`.
    """
    lam = np.asarray(eigenvalues, dtype=np.complex128)
    if lam.ndim != 1:
        raise ValueError("eigenvalues must be a 1-d sequence")
    if not np.all(np.isfinite(lam)):
        raise ValueError("eigenvalues contain non-finite entries")

    real_idx = [k for k in range(lam.size) if abs(lam[k].imag) <= tol_real * (1 + abs(lam[k]))]
    complex_idx = [k for k in range(lam.size) if k not in set(real_idx)]

    candidates = []
    for i, a in enumerate(complex_idx):
        for b in complex_idx[i + 1:]:
            d = abs(lam[a] - np.conj(lam[b]))
            if d <= tol_real * (1 + abs(lam[a]) + abs(lam[b])):
                candidates.append((d, a, b))
    candidates.sort()

    taken: set[int] = set()
    pairs: list[tuple[int, int]] = []
    for _, a, b in candidates:
        if a not in taken and b not in taken:
            pairs.append((a, b))
            taken.update((a, b))
    leftover = [k for k in complex_idx if k not in taken]
    if leftover:
        k = leftover[0]
        raise UnpairedComplexEigenvalue(
            f"eigenvalue {lam[k]:.6g} has no conjugate partner within tolerance"
        )
    return SpectrumClassification(
        real_indices=tuple(real_idx),
        conjugate_pairs=tuple(pairs),
        unbroken=not pairs,
    )


def _with_fresh_defects(eigenvalues: np.ndarray, states: np.ndarray,
                        duals: np.ndarray) -> BiorthonormalSystem:
    """Assemble a system with duality/completeness defects measured on the
    given arrays (transforms preserve them only up to round-off)."""
    eye = np.eye(states.shape[0], dtype=np.complex128)
    return BiorthonormalSystem(
        eigenvalues=eigenvalues.copy(),
        states=states,
        duals=duals,
        duality_defect=max_abs(duals.conj().T @ states - eye),
        completeness_defect=max_abs(states @ duals.conj().T - eye),
    )


def fix_pt_phase(
    sys: BiorthonormalSystem, parity: ParityOperator, tol_phase: float = 1e-8
) -> BiorthonormalSystem:
    """Re-phase every state so it is exactly invariant under parity +
    conjugation, adjusting duals to keep the pair dual.

    For each state v the reflection w = P conj(v) must equal e^{i a} v; the
    state is multiplied by e^{i a / 2} (principal branch), after which
    P conj(v) = v.  The dual picks up the same factor so the mutual
    normalization is untouched.

    Raises :class:`NotPTInvariant` when some w is not proportional to v
    within ``tol_phase`` (broken symmetry phase or degeneracy mixing).
    """
    if parity.dim != sys.dim:
        raise ValueError(f"parity dim {parity.dim} does not match system dim {sys.dim}")
    p = parity.matrix
    states = sys.states.copy()
    duals = sys.duals.copy()
    for k in range(sys.dim):
        v = states[:, k]
        w = p @ v.conj()
        nrm2 = float(np.real(np.vdot(v, v)))
        gamma = np.vdot(v, w) / nrm2
        defect = float(np.linalg.norm(w - gamma * v)) / np.sqrt(nrm2)
        if defect > tol_phase:
            raise NotPTInvariant(
                f"state {k} is not parity-conjugation invariant (defect {defect:.3e})"
            )
        phase = np.exp(0.5j * np.angle(gamma))
        states[:, k] = phase * v
        duals[:, k] = phase * duals[:, k]
    return _with_fresh_defects(sys.eigenvalues, states, duals)


def extract_signature(
    sys: BiorthonormalSystem,
    parity: ParityOperator,
    tol_signature: float = 1e-8,
    tol_zero: float = 1e-12,
) -> tuple[Signature, BiorthonormalSystem]:
    """Assign each state its sign and rescale so the dual equals the signed
    parity reflection of the state, vector-exactly.

    The sign of state k is sign(Re <dual_k | P | dual_k>), which coincides
    with the sign of <state_k | P | state_k> whenever dual and reflected
    state are actually proportional.  Each (state, dual) pair is then
    rescaled by a common real factor -- states by beta, duals by 1/beta,
    which preserves duality -- chosen so that dual_k = s_k P state_k;
    equivalently <state_k|P|state_k> = s_k after the rescale.
    ``residuals`` records the remaining 2-norm defect of that relation
    computed from the actual (independently obtained) dual vectors, so a
    structural failure shows up instead of being normalized away.

    Returns the signature together with the rescaled system (inputs are
    immutable).

    Raises :class:`SignatureUndefined` when some parity expectation is
    within ``tol_zero`` of zero (degeneracy or broken phase).
    """
    if parity.dim != sys.dim:
        raise ValueError(f"parity dim {parity.dim} does not match system dim {sys.dim}")
    p = parity.matrix
    states = sys.states.copy()
    duals = sys.duals.copy()
    n = sys.dim

    signs = np.zeros(n, dtype=np.int64)
    residuals = np.zeros(n)
    for k in range(n):
        v = states[:, k]
        d = duals[:, k]
        nrm2 = float(np.real(np.vdot(v, v)))
        r = float(np.real(np.vdot(v, p @ v)))
        dual_expectation = float(np.real(np.vdot(d, p @ d)))
        if abs(r) <= tol_zero * nrm2:
            raise SignatureUndefined(
                f"parity expectation of state {k} is {r:.3e}; sign undefined"
            )
        signs[k] = 1 if dual_expectation > 0 else -1
        beta = abs(r) ** -0.5
        states[:, k] = beta * v
        duals[:, k] = duals[:, k] / beta
        residuals[k] = float(np.linalg.norm(duals[:, k] - signs[k] * (p @ states[:, k])))

    signature = Signature(
        values=signs,
        residuals=residuals,
        valid=bool(np.all(residuals <= tol_signature)),
    )
    return signature, _with_fresh_defects(sys.eigenvalues, states, duals)


def build_charge(sys: BiorthonormalSystem, signature: Signature) -> np.ndarray:
    """Charge operator sum_k s_k |state_k><dual_k|.

    Squares to the identity and commutes with the generating matrix; it is
    generally not self-adjoint (its adjoint swaps the roles of states and
    duals).
    """
    if not signature.valid:
        raise ValueError("cannot build the charge operator from an invalid signature")
    if signature.dim != sys.dim:
        raise ValueError("signature and system dimensions differ")
    s = signature.values.astype(np.complex128)
    return (sys.states * s) @ sys.duals.conj().T
