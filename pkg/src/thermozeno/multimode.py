"""Three-level system coupled to p oscillators on 1-2 and q oscillators on 2-3.

Basis of each invariant subspace, in order:
    |1, n, m>,
    a_k^+ |2, n, m> / sqrt(n_k+1)                          k = 1..p
    a_k^+ b_l^+ |3, n, m> / sqrt((n_k+1)(m_l+1))           k = 1..p, l = 1..q (l fastest)
Dimension 1 + p + p q.  The diagonal holds free energies minus that of |1, n, m>.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (CutoffOverflow, DimensionOverflow, DomainError, NonPositiveFrequency,
                     ResonanceViolation)
from .model import ModelParams, Tolerances, validate
from .thermal import (SurvivalCurve, check_times, mode_cutoff, mode_tail, mode_weights,
                      per_mode_retained, set_workers, survival_curve)

DEFAULT_MAX_DIM = 4096


@dataclass(frozen=True)
class MultimodeSpec:
    omega_levels: tuple
    modes_12: tuple   # ((nu_k, g12_k), ...)
    modes_23: tuple   # ((mu_l, g23_l), ...)
    temperature: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "omega_levels", tuple(float(w) for w in self.omega_levels))
        object.__setattr__(self, "modes_12", tuple((float(f), float(g)) for f, g in self.modes_12))
        object.__setattr__(self, "modes_23", tuple((float(f), float(g)) for f, g in self.modes_23))
        if len(self.omega_levels) != 3:
            raise DomainError("omega_levels needs exactly three energies")
        if not self.modes_12 or not self.modes_23:
            raise DomainError("need p >= 1 and q >= 1 modes")
        for f, _ in self.modes_12 + self.modes_23:
            if not f > 0:
                raise NonPositiveFrequency(f"mode frequency must be > 0, got {f}")
        if not self.temperature >= 0:
            raise DomainError("temperature must be >= 0")

    @property
    def p(self):
        return len(self.modes_12)

    @property
    def q(self):
        return len(self.modes_23)

    @property
    def dim(self):
        return 1 + self.p + self.p * self.q

    def diagonal_offsets(self):
        """(delta_k, delta_kl) relative to the energy of |1, n, m>."""
        w1, w2, w3 = self.omega_levels
        nu = np.array([f for f, _ in self.modes_12])
        mu = np.array([f for f, _ in self.modes_23])
        d1 = w2 - w1 + nu
        d2 = (w3 - w1) + nu[:, None] + mu[None, :]
        return d1, d2

    def as_dict(self):
        return {
            "omega_levels": list(self.omega_levels),
            "modes_12": [list(m) for m in self.modes_12],
            "modes_23": [list(m) for m in self.modes_23],
            "temperature": self.temperature,
        }


@dataclass(frozen=True)
class MultiBlockIndex:
    n_vec: tuple
    m_vec: tuple

    def __post_init__(self):
        if any(n < 0 for n in self.n_vec) or any(m < 0 for m in self.m_vec):
            raise DomainError("occupation numbers must be >= 0")


@dataclass(frozen=True)
class MultiBlockMatrix:
    matrix: np.ndarray
    alpha: np.ndarray    # length p
    beta: np.ndarray     # length q
    p: int
    q: int

    @property
    def dim(self):
        return self.matrix.shape[0]


def sparsity_pattern(p, q):
    """Boolean mask of the entries allowed to be non-zero (diagonal included)."""
    dim = 1 + p + p * q
    mask = np.eye(dim, dtype=bool)
    for k in range(p):
        mask[0, 1 + k] = mask[1 + k, 0] = True
        for l in range(q):
            j = 1 + p + k * q + l
            mask[1 + k, j] = mask[j, 1 + k] = True
    return mask


def build_multiblock(spec, idx, max_dim=DEFAULT_MAX_DIM):
    p, q = spec.p, spec.q
    if len(idx.n_vec) != p or len(idx.m_vec) != q:
        raise DomainError(f"index lengths {len(idx.n_vec)}, {len(idx.m_vec)} do not match p={p}, q={q}")
    dim = spec.dim
    if dim > max_dim:
        raise DimensionOverflow(f"block dimension {dim} exceeds cap {max_dim}")
    alpha = np.array([g * math.sqrt(n + 1) for (_, g), n in zip(spec.modes_12, idx.n_vec)])
    beta = np.array([g * math.sqrt(m + 1) for (_, g), m in zip(spec.modes_23, idx.m_vec)])
    d1, d2 = spec.diagonal_offsets()
    h = np.zeros((dim, dim))
    for k in range(p):
        h[0, 1 + k] = h[1 + k, 0] = alpha[k]
        h[1 + k, 1 + k] = d1[k]
        for l in range(q):
            j = 1 + p + k * q + l
            h[1 + k, j] = h[j, 1 + k] = beta[l]
            h[j, j] = d2[k, l]
    return MultiBlockMatrix(h, alpha, beta, p, q)


def _evolve(block, t):
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t < 0):
        raise DomainError("times must be >= 0")
    w, v = np.linalg.eigh(block.matrix)
    phases = np.exp(-1j * np.multiply.outer(t, w))
    return (phases * v[0]) @ v.T


def survival_probability_multiblock(block, t):
    psi = _evolve(block, t)
    prob = np.clip(np.abs(psi[:, 0]) ** 2, 0.0, 1.0)
    return prob[0] if np.ndim(t) == 0 else prob


def populations_multiblock(block, t):
    """Populations over the full basis starting from |1, n, m>; shape (len(t), dim)."""
    return np.abs(_evolve(block, t)) ** 2


def _as_three_level(spec):
    """ValidatedParams for p = q = 1 when the 1-2 transition is resonant, else None."""
    (nu, g12), = spec.modes_12
    (mu, g23), = spec.modes_23
    _, w2, w3 = spec.omega_levels
    delta = mu - (w2 - w3)
    try:
        return validate(ModelParams(spec.omega_levels, nu, mu, g12, g23, 0.0, spec.temperature),
                        "resonant")
    except ResonanceViolation:
        pass
    try:
        return validate(ModelParams(spec.omega_levels, nu, mu, g12, g23, delta, spec.temperature),
                        "detuned")
    except ResonanceViolation:
        return None


def _mode_ensemble(spec, tol):
    freqs = [f for f, _ in spec.modes_12] + [f for f, _ in spec.modes_23]
    retained = per_mode_retained(tol.tail_mass, len(freqs))
    cutoffs = [mode_cutoff(f, spec.temperature, retained, tol.max_cutoff) for f in freqs]
    tails = [mode_tail(f, spec.temperature, c) for f, c in zip(freqs, cutoffs)]
    kept = math.prod(1.0 - x for x in tails)
    return freqs, cutoffs, 1.0 - kept


def estimate_block_count(spec, tol=Tolerances()):
    _, cutoffs, _ = _mode_ensemble(spec, tol)
    return math.prod(c + 1 for c in cutoffs)


def thermal_survival(spec, times, tol=Tolerances(), workers=None, allow_general=False,
                     dense=False):
    """Thermally averaged survival of |1> over the product Fock ensemble.

    p > 1 needs ``allow_general``; the block count is checked against
    ``tol.max_blocks`` before any work.  With p = q = 1 and a resonant 1-2
    transition the 3x3 fast path is used unless ``dense`` is set.
    """
    if spec.p > 1 and not allow_general:
        raise DomainError("thermal averaging for p > 1 requires allow_general=True")
    times = check_times(times)
    if spec.dim > DEFAULT_MAX_DIM:
        raise DimensionOverflow(f"block dimension {spec.dim} exceeds cap {DEFAULT_MAX_DIM}")

    if spec.p == 1 and spec.q == 1 and not dense:
        params = _as_three_level(spec)
        if params is not None:
            curve = survival_curve(params, times, tol, workers)
            curve.metadata["spec"] = spec.as_dict()
            return curve

    freqs, cutoffs, discarded = _mode_ensemble(spec, tol)
    n_blocks = math.prod(c + 1 for c in cutoffs)
    if n_blocks > tol.max_blocks:
        raise CutoffOverflow(f"{n_blocks} blocks exceed max_blocks={tol.max_blocks}")

    width = max(cutoffs) + 1
    weights = np.zeros((len(freqs), width))
    for i, (f, c) in enumerate(zip(freqs, cutoffs)):
        weights[i, :c + 1] = mode_weights(f, spec.temperature, c)
    d1, d2 = spec.diagonal_offsets()
    set_workers(workers)
    p1 = _kernels.thermal_sum_multiblock(
        np.array([g for _, g in spec.modes_12]),
        np.array([g for _, g in spec.modes_23]),
        np.ascontiguousarray(d1), np.ascontiguousarray(d2),
        np.array([c + 1 for c in cutoffs], dtype=np.int64),
        weights, times)
    meta = {
        "spec": spec.as_dict(),
        "tolerances": tol.as_dict(),
        "cutoffs": cutoffs,
        "n_blocks": n_blocks,
        "discarded_mass": discarded,
    }
    return SurvivalCurve(times, np.clip(p1, 0.0, 1.0), meta)


def thermal_survival_1xq(spec, times, tol=Tolerances(), workers=None, dense=False):
    if spec.p != 1:
        raise DomainError(f"thermal_survival_1xq needs p = 1, got p = {spec.p}")
    return thermal_survival(spec, times, tol, workers, dense=dense)
