"""Generators of concrete Hamiltonian/parity pairs for tests, demos, and
benchmarks.

Four families: an analytically solvable two-level system, a gain/loss
tight-binding chain, a finite-difference Schroedinger operator with a
complex-deformed potential, and seeded random ensembles.  Every generator
returns a matrix whose parity-conjugation residual is exactly zero (the
symmetry is imposed by construction, entry by entry) together with a
permutation parity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import EnsembleExhausted, InvalidGrid
from .symmetry import ParityOperator, classify_spectrum, make_parity

__all__ = [
    "ModelSpec",
    "two_level",
    "lattice_chain",
    "discretized_schrodinger",
    "random_pt",
    "random_unbroken_pt",
]

FAMILIES = ("two-level", "lattice-chain", "discretized-schrodinger", "random-pt")


def two_level(g: float, b: float) -> tuple[np.ndarray, ParityOperator]:
    """Two-site gain/loss model [[ig, b], [b, -ig]] with swap parity.

    Eigenvalues are +/- sqrt(b^2 - g^2): real (unbroken) iff b^2 > g^2, a
    conjugate pair (broken) iff b^2 < g^2, and coalescing at |b| = |g|.
    """
    h = np.array([[1j * g, b], [b, -1j * g]], dtype=np.complex128)
    return h, make_parity("swap-pairs", 2)


def lattice_chain(
    n: int, gamma: float, t: float, gain_sites: tuple[int, ...] | None = None
) -> tuple[np.ndarray, ParityOperator]:
    """Tight-binding chain with mirror-balanced gain and loss.

    Hopping ``t`` on the off-diagonals; every site k in ``gain_sites`` gets
    on-site +i*gamma and its mirror n-1-k gets -i*gamma.  Default profile
    puts gain/loss on the two end sites only.  The result is symmetric under
    grid reversal combined with conjugation by construction.
    """
    if n < 2:
        raise ValueError(f"chain length must be >= 2, got {n}")
    sites = (0,) if gain_sites is None else tuple(gain_sites)
    if len(set(sites)) != len(sites):
        raise ValueError(f"gain sites contain duplicates: {sites}")
    for k in sites:
        if not 0 <= k < n:
            raise ValueError(f"gain site {k} outside the chain of length {n}")
        if k >= n - 1 - k:
            raise ValueError(
                f"gain site {k} is not strictly left of its mirror {n - 1 - k}"
            )
    h = np.zeros((n, n), dtype=np.complex128)
    idx = np.arange(n - 1)
    h[idx, idx + 1] = t
    h[idx + 1, idx] = t
    for k in sites:
        h[k, k] = 1j * gamma
        h[n - 1 - k, n - 1 - k] = -1j * gamma
    return h, make_parity("grid-reversal", n)


def discretized_schrodinger(n: int, length: float, epsilon: float) -> tuple[np.ndarray, ParityOperator]:
    """Second-difference kinetic term plus V(x) = x^2 (i x)^epsilon on a
    mirror-symmetric grid over [-length, length].

    The grid is cell-centered (x_j = -length + (j + 1/2) dx, dx = 2 length/n),
    so x_{n-1-j} = -x_j holds exactly and the assembled matrix is exactly
    invariant under grid reversal + conjugation: the potential is evaluated
    on the left half and mirror-conjugated onto the right half.  The power
    uses the principal branch.

    Raises :class:`InvalidGrid` for parameters that cannot produce a valid
    mirror-symmetric discretization (n < 8 or a non-positive length).
    """
    if n < 8:
        raise InvalidGrid(f"need at least 8 grid points, got {n}")
    if not (np.isfinite(length) and length > 0):
        raise InvalidGrid(f"grid half-width must be positive and finite, got {length}")
    if not (np.isfinite(epsilon) and epsilon >= 0):
        raise ValueError(f"potential deformation must be >= 0, got {epsilon}")

    dx = 2.0 * length / n
    x = -length + (np.arange(n) + 0.5) * dx

    h = np.zeros((n, n), dtype=np.complex128)
    inv_dx2 = 1.0 / (dx * dx)
    idx = np.arange(n - 1)
    h[np.arange(n), np.arange(n)] = 2.0 * inv_dx2
    h[idx, idx + 1] = -inv_dx2
    h[idx + 1, idx] = -inv_dx2

    # left half, then exact mirror-conjugation; center point (odd n) sits at
    # x = 0 where the potential vanishes identically
    v = np.zeros(n, dtype=np.complex128)
    half = n // 2
    v[:half] = x[:half] ** 2 * (1j * x[:half]) ** epsilon
    v[n - half:] = np.conj(v[:half][::-1])
    h[np.arange(n), np.arange(n)] += v
    return h, make_parity("grid-reversal", n)


def _reverse_conj(m: np.ndarray) -> np.ndarray:
    """Grid-reversal parity conjugation P conj(M) P, done by indexing so the
    symmetrized result is exact to the bit."""
    return np.conj(m[::-1, ::-1])


def random_pt(n: int, seed: int, scale: float = 1.0) -> tuple[np.ndarray, ParityOperator]:
    """Seeded random dense matrix, exactly symmetric under grid reversal +
    conjugation and exactly equal to its transpose.

    The draw is H = (A + P conj(A) P)/2 followed by transpose
    symmetrization; the transpose step keeps the matrix in the class where
    parity-based pseudo-Hermiticity coincides with the reversal-conjugation
    symmetry, which the dual/Gram sign structure relies on.  The spectrum is
    generically a mix of real values and conjugate pairs, so instances may be
    broken; same seed and parameters give a bit-identical matrix.
    """
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    rng = np.random.default_rng(seed)
    a = scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    h = 0.5 * (a + _reverse_conj(a))
    h = 0.5 * (h + h.T)
    return h, make_parity("grid-reversal", n)


def random_unbroken_pt(
    n: int,
    seed: int,
    scale: float = 1.0,
    mixing: float = 1.0,
    cond_limit: float = 1e8,
    max_retries: int = 8,
) -> tuple[np.ndarray, ParityOperator]:
    """Seeded random instance with a guaranteed-real spectrum.

    Rejection sampling of raw draws cannot deliver all-real spectra beyond
    small dimensions (the fraction decays to zero around n = 6), so unbroken
    instances are built constructively: a real symmetric core H0 commuting
    with the grid reversal is conjugated by T = expm(i * mixing * K) where K
    is real antisymmetric and anticommutes with the reversal.  T is then a
    reversal-compatible complex-orthogonal map, so the conjugated matrix
    keeps both the reversal-conjugation symmetry and its transpose symmetry
    while the (real) spectrum of H0 is preserved; ``mixing`` sets how
    non-Hermitian the result is.  Draws failing the eigenvector-condition
    bound or (exceptionally) the spectrum check are redrawn up to
    ``max_retries`` times before :class:`EnsembleExhausted` is raised.
    """
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    rng = np.random.default_rng(seed)
    parity = make_parity("grid-reversal", n)
    for _ in range(max(1, max_retries)):
        w = rng.standard_normal((n, n))
        core = 0.5 * scale * (w + w.T)
        core = 0.5 * (core + core[::-1, ::-1])

        r = rng.standard_normal((n, n))
        anti = 0.5 * (r - r.T)
        anti = 0.5 * (anti - anti[::-1, ::-1])
        norm = np.linalg.norm(anti, 2)
        if norm == 0.0:
            continue
        anti *= mixing / norm

        t = scipy.linalg.expm(1j * anti)
        try:
            h = t @ core @ np.linalg.inv(t)
        except np.linalg.LinAlgError:
            continue
        h = 0.5 * (h + _reverse_conj(h))
        h = 0.5 * (h + h.T)
        if not np.all(np.isfinite(h.view(np.float64))):
            continue

        values, vectors = np.linalg.eig(h)
        condition = float(np.linalg.cond(vectors))
        if not np.isfinite(condition) or condition > cond_limit:
            continue
        try:
            if not classify_spectrum(values).unbroken:
                continue
        except Exception:
            continue
        return h, parity
    raise EnsembleExhausted(
        f"no acceptable unbroken instance of dim {n} within {max_retries} draws "
        f"(mixing {mixing}, condition limit {cond_limit:.1e})"
    )


@dataclass(frozen=True)
class ModelSpec:
    """Parsed description of a model instance.

    ``parameters`` must carry exactly the names the family needs:
    two-level: g, b; lattice-chain: gamma, t; discretized-schrodinger:
    L, epsilon; random-pt: scale (optional, default 1) plus a seed.
    """

    family: str
    parameters: dict = field(default_factory=dict)
    dim: int = 2
    seed: int | None = None

    _REQUIRED = {
        "two-level": ("g", "b"),
        "lattice-chain": ("gamma", "t"),
        "discretized-schrodinger": ("L", "epsilon"),
        "random-pt": (),
    }

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown model family {self.family!r}; expected one of {FAMILIES}")
        missing = [k for k in self._REQUIRED[self.family] if k not in self.parameters]
        if missing:
            raise ValueError(f"model {self.family!r} is missing parameters {missing}")
        if self.family == "two-level" and self.dim != 2:
            raise ValueError(f"two-level model forces dim 2, got {self.dim}")
        if self.dim < 2:
            raise ValueError(f"model dimension must be >= 2, got {self.dim}")
        if self.family == "random-pt" and self.seed is None:
            raise ValueError("random-pt requires a seed")

    def build(self) -> tuple[np.ndarray, ParityOperator]:
        p = self.parameters
        if self.family == "two-level":
            return two_level(float(p["g"]), float(p["b"]))
        if self.family == "lattice-chain":
            return lattice_chain(self.dim, float(p["gamma"]), float(p["t"]))
        if self.family == "discretized-schrodinger":
            return discretized_schrodinger(self.dim, float(p["L"]), float(p["epsilon"]))
        return random_pt(self.dim, int(self.seed), float(p.get("scale", 1.0)))
