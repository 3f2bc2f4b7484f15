"""Near-zero eigenpair of the Hermitian 3x3 matrix

    M = [[0,         alpha1,  0    ],
         [alpha1^*,  0,       alpha2],
         [0,         alpha2^*, delta]]

in the basis |A>, |B>, |C>, and the survival floor it implies for |A>.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConvergenceFailure

DEFAULT_EIG_RESIDUAL = 1e-10


@dataclass(frozen=True)
class ArrowheadMatrix3:
    alpha1: complex
    alpha2: complex
    delta: float

    def matrix(self):
        a1, a2 = complex(self.alpha1), complex(self.alpha2)
        return np.array([
            [0.0, a1, 0.0],
            [a1.conjugate(), 0.0, a2],
            [0.0, a2.conjugate(), self.delta],
        ], dtype=complex)

    def secular(self, lam):
        """P(lam) = det(M - lam I)."""
        s1, s2 = abs(self.alpha1) ** 2, abs(self.alpha2) ** 2
        d = self.delta
        return -lam ** 3 + d * lam ** 2 + (s1 + s2) * lam - s1 * d

    def eigenvalue_bound(self):
        """|alpha1^2 delta / alpha2^2|; the near-zero eigenvalue lies strictly inside."""
        return abs(self.alpha1) ** 2 * abs(self.delta) / abs(self.alpha2) ** 2


@dataclass(frozen=True)
class NearZeroEigenpair:
    lambda_near: float
    overlap_A: float
    vector: np.ndarray


def _newton(m, lam, steps=3):
    s1, s2, d = abs(m.alpha1) ** 2, abs(m.alpha2) ** 2, m.delta
    for _ in range(steps):
        f = m.secular(lam)
        fp = -3.0 * lam ** 2 + 2.0 * d * lam + (s1 + s2)
        if f == 0.0 or fp == 0.0:
            break
        cand = lam - f / fp
        if abs(m.secular(cand)) >= abs(f):
            break
        lam = cand
    return lam


def _best_vector(h, lam, a1, a2, d):
    """Eigenvector from the top-row form, or the bottom-row form when lam ~ delta
    makes (delta - lam) cancel; both span the same line."""
    s1 = abs(a1) ** 2
    forms = (
        lambda: [1.0, lam / a1, -lam * a2.conjugate() / ((d - lam) * a1)],
        # at a root, delta - lam = |a2|^2 lam / (|a1|^2 - lam^2): no cancellation near lam ~ delta
        lambda: [1.0, lam / a1, -(s1 - lam * lam) / (a1 * a2)],
        lambda: [a1 * (lam - d) / (a2.conjugate() * lam), (lam - d) / a2.conjugate(), 1.0],
    )
    best, best_res = None, math.inf
    for form in forms:
        try:
            v = np.array(form(), dtype=complex)
        except ZeroDivisionError:
            continue
        nrm = np.linalg.norm(v)
        if not (np.all(np.isfinite(v)) and 0.0 < nrm < math.inf):
            continue
        v = v / nrm
        v = v * np.exp(-1j * np.angle(v[0])) if abs(v[0]) > 0 else v
        res = np.linalg.norm(h @ v - lam * v)
        if res < best_res:
            best, best_res = v, res
    return best


def _unit_pair(a1, a2, d):
    """Near-zero eigenpair of a matrix whose largest entry has modulus 1."""
    s1, s2 = abs(a1) ** 2, abs(a2) ** 2
    if s1 == 0.0:
        # |A> is decoupled
        return 0.0, np.array([1.0, 0.0, 0.0], dtype=complex)
    if s2 == 0.0:
        # |C> is decoupled; spectrum {+|a1|, -|a1|, delta}
        lam = min((abs(a1), -abs(a1), d), key=lambda r: (abs(r), r))
        if lam == d and abs(d) < abs(a1):
            return lam, np.array([0.0, 0.0, 1.0], dtype=complex)
        lam = math.copysign(abs(a1), lam)
        return lam, np.array([1.0, lam / a1, 0.0], dtype=complex) / math.sqrt(2.0)
    if d == 0.0:
        alpha = math.sqrt(s1 + s2)
        return 0.0, np.array([a2 / alpha, 0.0, -a1.conjugate() / alpha], dtype=complex)
    roots = _kernels.tridiag_eigvals(abs(a1), abs(a2), d)
    # smallest modulus, ties toward negative
    lam = min(roots, key=lambda r: (abs(r), r))
    lam = _newton(ArrowheadMatrix3(a1, a2, d), lam)
    return lam, _best_vector(ArrowheadMatrix3(a1, a2, d).matrix(), lam, a1, a2, d)


def near_zero_eigenpair(m, eig_residual=DEFAULT_EIG_RESIDUAL):
    a1, a2, d = complex(m.alpha1), complex(m.alpha2), float(m.delta)
    c = max(abs(a1), abs(a2), abs(d))
    if c == 0.0:
        return NearZeroEigenpair(0.0, 1.0, np.array([1.0, 0.0, 0.0], dtype=complex))
    # eigenvectors are scale invariant; work at unit scale to avoid under/overflow
    lam, vec = _unit_pair(a1 / c, a2 / c, d / c)
    lam *= c

    h = m.matrix()
    tol = eig_residual * max(1.0, c)
    if vec is None or not np.all(np.isfinite(vec)) or np.linalg.norm(h @ vec - lam * vec) > tol:
        # near-degenerate corner cases: take the LAPACK eigenvector
        w, v = np.linalg.eigh(h / c)
        k = int(np.argmin(np.abs(w * c - lam)))
        lam = float(w[k] * c)
        vec = v[:, k] * np.exp(-1j * np.angle(v[0, k])) if abs(v[0, k]) > 0 else v[:, k]
        if np.linalg.norm(h @ vec - lam * vec) > tol:
            raise ConvergenceFailure(f"near-zero eigenpair failed for {m}")

    overlap = min(1.0, float(abs(vec[0])))
    return NearZeroEigenpair(float(lam), overlap, vec)


def overlap_formula(m, lam):
    """The normalisation factor P_eta written out in closed form (alpha1 != 0)."""
    s1, s2 = abs(m.alpha1) ** 2, abs(m.alpha2) ** 2
    e2 = lam * lam
    return (1.0 + e2 / s1 + e2 * s2 / ((m.delta - lam) ** 2 * s1)) ** -0.5


def floor_from_overlap(overlap):
    return max(0.0, 2.0 * overlap * overlap - 1.0) ** 2


def survival_floor(m, eig_residual=DEFAULT_EIG_RESIDUAL):
    """Lower bound on |<A|exp(-iMt)|A>|^2 valid for every t; 0 when vacuous."""
    return floor_from_overlap(near_zero_eigenpair(m, eig_residual).overlap_A)


@dataclass(frozen=True)
class OverlapLimitReport:
    ratios: tuple
    overlaps: tuple
    deficits: tuple          # 1 - overlap
    scaled_deficits: tuple   # (1 - overlap) / r^2
    monotone: bool


def overlap_limit_check(ratios=(0.1, 0.03, 0.01), delta_ratio=0.5, alpha2=1.0):
    """Track 1 - |<A|eta>| as r = |alpha1/alpha2| shrinks at fixed delta/alpha2."""
    overlaps = []
    for r in ratios:
        m = ArrowheadMatrix3(r * alpha2, alpha2, delta_ratio * abs(alpha2))
        overlaps.append(near_zero_eigenpair(m).overlap_A)
    deficits = tuple(1.0 - o for o in overlaps)
    scaled = tuple(dv / r ** 2 if r else 0.0 for dv, r in zip(deficits, ratios))
    monotone = all(b >= a for a, b in zip(overlaps, overlaps[1:]))
    return OverlapLimitReport(tuple(ratios), tuple(overlaps), deficits, scaled, monotone)
