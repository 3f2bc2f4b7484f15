"""Invariant 3x3 subspaces {|1,n_a,n_b>, |2,n_a+1,n_b>, |3,n_a+1,n_b+1>}.

Each block is stored with its common diagonal shift removed, which leaves

    [[0,     a_eff, 0    ],
     [a_eff, 0,     b_eff],
     [0,     b_eff, delta]]

with a_eff = |g12| sqrt(n_a+1) and b_eff = |g23| sqrt(n_b+1).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConvergenceFailure, DomainError
from .model import require_validated

DEFAULT_EIG_RESIDUAL = 1e-10


@dataclass(frozen=True)
class BlockIndex:
    n_a: int
    n_b: int

    def __post_init__(self):
        if int(self.n_a) != self.n_a or int(self.n_b) != self.n_b:
            raise DomainError("occupation numbers must be integers")
        if self.n_a < 0 or self.n_b < 0:
            raise DomainError(f"occupation numbers must be >= 0, got {self}")


@dataclass(frozen=True)
class BlockMatrix:
    a_eff: float
    b_eff: float
    delta: float = 0.0
    shift: float = 0.0

    def matrix(self):
        a, b = self.a_eff, self.b_eff
        return np.array([[0.0, a, 0.0], [a, 0.0, b], [0.0, b, self.delta]])

    @property
    def resonant(self):
        return self.delta == 0.0


@dataclass(frozen=True)
class EigenSystem3:
    values: np.ndarray   # ascending
    vectors: np.ndarray  # columns are eigenvectors


def build_block(params, idx):
    require_validated(params)
    a_eff = abs(params.g12) * math.sqrt(idx.n_a + 1)
    b_eff = abs(params.g23) * math.sqrt(idx.n_b + 1)
    shift = idx.n_a * params.omega_a + idx.n_b * params.omega_b + params.omega_levels[0]
    if not all(map(math.isfinite, (a_eff, b_eff, shift))):
        raise OverflowError(f"block {idx} overflows double precision")
    return BlockMatrix(a_eff, b_eff, params.delta, shift)


def _canonical_sign(v):
    # first component with non-negligible magnitude made positive
    for x in v:
        if abs(x) > 1e-12:
            return v if x > 0 else -v
    return v


def _null_vector(shifted):
    r0, r1, r2 = shifted
    cands = [np.cross(r0, r1), np.cross(r0, r2), np.cross(r1, r2)]
    norms = [np.linalg.norm(c) for c in cands]
    best = int(np.argmax(norms))
    return cands[best], norms[best]


def _check(h, lams, vecs, tol):
    residual = np.linalg.norm(h @ vecs - vecs * lams, axis=0).max()
    ortho = np.abs(vecs.T @ vecs - np.eye(3)).max()
    return residual <= tol and ortho <= tol, residual, ortho


def _closed_form(h, lams, scale):
    vecs = np.empty((3, 3))
    for k, lam in enumerate(lams):
        v, nrm = _null_vector(h - lam * np.eye(3))
        if nrm <= 1e-14 * scale * scale:
            return None
        vecs[:, k] = _canonical_sign(v / nrm)
    return vecs


def _lapack(h, scale):
    lams, vecs = np.linalg.eigh(h)
    # merge numerically equal eigenvalues; order each cluster by eigenvector
    # lexicographic order so degenerate spectra serialise deterministically
    clusters = np.concatenate([[0], np.cumsum(np.diff(lams) > 1e-12 * scale)])
    for c in np.unique(clusters):
        lams[clusters == c] = lams[clusters == c].mean()
    vecs = np.column_stack([_canonical_sign(vecs[:, k]) for k in range(3)])
    order = sorted(range(3), key=lambda k: (clusters[k], tuple(vecs[:, k])))
    return lams[order], vecs[:, order]


def eigensystem(block, eig_residual=DEFAULT_EIG_RESIDUAL):
    """Closed-form eigenpairs of a shift-removed block.

    Eigenvalues come from the trigonometric cubic with a Newton polish;
    eigenvectors from cross products of rows of (H - lam I).  Nearly
    degenerate spectra, where that loses accuracy, fall back to LAPACK.
    """
    a, b, d = block.a_eff, block.b_eff, block.delta
    h = block.matrix()
    scale = max(1.0, abs(a), abs(b), abs(d))
    tol = eig_residual * scale
    lams = np.array(_kernels.tridiag_eigvals(abs(a), abs(b), d))

    vecs = None
    if np.min(np.diff(lams)) > 1e-8 * scale:
        vecs = _closed_form(h, lams, scale)
    if vecs is None or not _check(h, lams, vecs, tol)[0]:
        lams, vecs = _lapack(h, scale)
    ok, residual, ortho = _check(h, lams, vecs, tol)
    if not ok:
        raise ConvergenceFailure(
            f"3x3 eigensolve residual {residual:.3g}, orthogonality {ortho:.3g} (tol {tol:.3g})")
    return EigenSystem3(lams, vecs)


def resonant_amplitude(a_eff, b_eff, t):
    """Closed form <e1|exp(-iHt)|e1> for delta = 0 (vectorised)."""
    a2 = np.square(a_eff)
    b2 = np.square(b_eff)
    g2 = a2 + b2
    with np.errstate(invalid="ignore", divide="ignore"):
        amp = (b2 + a2 * np.cos(np.sqrt(g2) * t)) / g2
    return np.where(g2 == 0.0, 1.0, amp)


def survival_amplitude(block, t, eig_residual=DEFAULT_EIG_RESIDUAL):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("times must be >= 0")
    if block.resonant:
        amp = resonant_amplitude(block.a_eff, block.b_eff, t).astype(complex)
    else:
        es = eigensystem(block, eig_residual)
        w = es.vectors[0] ** 2
        amp = np.exp(-1j * np.multiply.outer(t, es.values)) @ w
    return amp[()] if amp.ndim == 0 else amp


def survival_probability_block(block, t, eig_residual=DEFAULT_EIG_RESIDUAL):
    prob = np.abs(survival_amplitude(block, t, eig_residual)) ** 2
    if np.any(prob > 1.0 + eig_residual):
        raise ConvergenceFailure("survival probability exceeds unity")
    return np.clip(prob, 0.0, 1.0)[()]


def populations(block, t, eig_residual=DEFAULT_EIG_RESIDUAL):
    """Populations of the three basis states starting from |e1>; shape (len(t), 3)."""
    es = eigensystem(block, eig_residual)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    phases = np.exp(-1j * np.multiply.outer(t, es.values))
    psi = (phases * es.vectors[0]) @ es.vectors.T
    return np.abs(psi) ** 2
