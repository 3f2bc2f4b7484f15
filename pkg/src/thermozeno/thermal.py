"""Thermal ensemble over (n_a, n_b) and the ensemble survival probability P1(t)."""

import logging
import math
from dataclasses import dataclass, field

import numba
import numpy as np

from . import _kernels
from .errors import CutoffOverflow, DomainError
from .model import RESONANT, Tolerances, require_validated

log = logging.getLogger(__name__)

DEFAULT_POINTS = 400


@dataclass(frozen=True)
class ThermalEnsemble:
    weights_a: np.ndarray
    weights_b: np.ndarray
    cutoff_a: int
    cutoff_b: int
    discarded_mass: float


@dataclass
class SurvivalCurve:
    times: np.ndarray
    p1: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.times.shape != self.p1.shape:
            raise ValueError("times and p1 must have equal lengths")

    def minimum(self):
        return float(self.p1.min())

    def tail_mean(self, fraction=0.25):
        """Mean of p1 over the last ``fraction`` of the grid."""
        n = max(1, int(round(len(self.p1) * fraction)))
        return float(self.p1[-n:].mean())


def mode_cutoff(omega, temperature, retained, max_cutoff=10**6):
    """Smallest N with 1 - exp(-omega (N+1)/T) >= retained."""
    if temperature == 0.0:
        return 0
    x = omega / temperature
    discard = 1.0 - retained
    if math.exp(-x) <= discard:
        return 0
    n = max(0, math.ceil(-math.log(discard) / x) - 1)
    # guard against rounding in the log/ceil
    while n > 0 and -math.expm1(-x * n) >= retained:
        n -= 1
    while -math.expm1(-x * (n + 1)) < retained:
        n += 1
    if n > max_cutoff:
        raise CutoffOverflow(
            f"cutoff {n} for omega={omega}, T={temperature} exceeds limit {max_cutoff}")
    return n


def mode_weights(omega, temperature, cutoff):
    """N e^{-omega n/T} for n = 0..cutoff with N = 1 - e^{-omega/T}."""
    if temperature == 0.0:
        return np.ones(1)
    x = omega / temperature
    n = np.arange(cutoff + 1)
    return -math.expm1(-x) * np.exp(-x * n)


def mode_tail(omega, temperature, cutoff):
    """Exact Boltzmann mass beyond ``cutoff``: e^{-omega (cutoff+1)/T}."""
    if temperature == 0.0:
        return 0.0
    return math.exp(-omega * (cutoff + 1) / temperature)


def per_mode_retained(tail_mass, n_modes):
    """Retained mass per mode so the product over n_modes modes is >= 1 - tail_mass."""
    return math.exp(math.log1p(-tail_mass) / n_modes)


def build_ensemble(params, tol=Tolerances()):
    require_validated(params)
    T = params.temperature
    if T < 0:
        raise DomainError("temperature must be >= 0")
    retained = per_mode_retained(tol.tail_mass, 2)
    ca = mode_cutoff(params.omega_a, T, retained, tol.max_cutoff)
    cb = mode_cutoff(params.omega_b, T, retained, tol.max_cutoff)
    ta = mode_tail(params.omega_a, T, ca)
    tb = mode_tail(params.omega_b, T, cb)
    return ThermalEnsemble(
        weights_a=mode_weights(params.omega_a, T, ca),
        weights_b=mode_weights(params.omega_b, T, cb),
        cutoff_a=ca,
        cutoff_b=cb,
        discarded_mass=ta + tb - ta * tb,
    )


def uniform_times(t_max, n_points=DEFAULT_POINTS):
    if n_points < 1 or not t_max >= 0:
        raise DomainError("time grid needs n_points >= 1 and t_max >= 0")
    return np.linspace(0.0, float(t_max), int(n_points))


def check_times(times):
    times = np.ascontiguousarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise DomainError("times must be a non-empty 1-D array")
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise DomainError("times must be non-negative and ascending")
    return times


def set_workers(workers):
    """Set numba's thread count, clamped to what the runtime allows."""
    if workers is None:
        return
    limit = numba.config.NUMBA_NUM_THREADS
    n = max(1, min(int(workers), limit))
    if n != workers:
        log.info("workers=%s clamped to %s", workers, n)
    numba.set_num_threads(n)


def survival_curve(params, times, tol=Tolerances(), workers=None):
    """Exact thermal survival probability of |1> up to certified tail mass.

    The result is bit-identical for any worker count.
    """
    require_validated(params)
    times = check_times(times)
    ens = build_ensemble(params, tol)
    set_workers(workers)
    a2 = params.g12 ** 2 * np.arange(1, ens.cutoff_a + 2, dtype=float)
    b2 = params.g23 ** 2 * np.arange(1, ens.cutoff_b + 2, dtype=float)
    p1 = _kernels.thermal_sum_3x3(a2, b2, ens.weights_a, ens.weights_b,
                                  float(params.delta), times, params.mode == RESONANT)
    p1 = np.clip(p1, 0.0, 1.0)
    meta = {
        "params": params.as_dict(),
        "tolerances": tol.as_dict(),
        "cutoff_a": ens.cutoff_a,
        "cutoff_b": ens.cutoff_b,
        "discarded_mass": ens.discarded_mass,
    }
    return SurvivalCurve(times, p1, meta)
