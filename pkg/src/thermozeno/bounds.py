"""Analytic survival bounds for the resonant two-oscillator model.

All bounds hold for every t >= 0.  The finite-temperature bound keeps only
the blocks whose coupling ratio exceeds chi(eps); every such block stays in
|1> with probability >= sqrt(1 - eps).
"""

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError, ZeroCoupling
from .model import require_validated

HIGH_T_FLAG = 0.1


@dataclass(frozen=True)
class BoundReport:
    epsilon: float
    chi: float
    alpha_eps: float
    beta_eps: float
    eta: float
    finite_T_bound: float
    high_T_bound: float
    validity: tuple

    @property
    def high_temperature(self):
        return max(self.validity) < HIGH_T_FLAG

    def as_dict(self):
        d = asdict(self)
        d["validity"] = list(self.validity)
        d["high_temperature"] = self.high_temperature
        return d


def _check_eps(epsilon):
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")


def chi(epsilon):
    _check_eps(epsilon)
    s = (1.0 - epsilon) ** 0.25
    # 1 - s computed without cancellation for small epsilon
    one_minus_s = -math.expm1(0.25 * math.log1p(-epsilon))
    return math.sqrt((1.0 + s) / one_minus_s)


def zeno_coefficients(params, epsilon):
    """(alpha_eps, beta_eps) so that n_b >= alpha_eps n_a + beta_eps is the Zeno condition."""
    require_validated(params)
    if params.g23 == 0.0:
        raise ZeroCoupling("g23 = 0: no block satisfies the Zeno condition")
    c2 = chi(epsilon) ** 2
    ratio = params.g12 ** 2 / params.g23 ** 2
    return ratio * c2, ratio * c2 - 1.0


def zeno_threshold(params, epsilon, n_a):
    alpha, beta = zeno_coefficients(params, epsilon)
    return alpha * n_a + beta


def satisfies_zeno_condition(params, epsilon, n_a, n_b):
    """g23 sqrt(n_b+1) >= chi g12 sqrt(n_a+1), compared in squared form."""
    lhs = params.g23 ** 2 * (n_b + 1)
    rhs = chi(epsilon) ** 2 * params.g12 ** 2 * (n_a + 1)
    return lhs >= rhs


def eta(params):
    require_validated(params)
    if params.g23 == 0.0:
        return math.inf
    return (params.g12 ** 2 / params.g23 ** 2) * (params.omega_b / params.omega_a)


def _check_temperature(params):
    if not params.temperature > 0.0:
        raise DomainError("the thermal bound needs T > 0")


def finite_T_lower_bound(params, epsilon):
    require_validated(params)
    _check_eps(epsilon)
    _check_temperature(params)
    if params.g23 == 0.0:
        return 0.0
    alpha, beta = zeno_coefficients(params, epsilon)
    T = params.temperature
    head = math.exp(-(beta + 1.0) * params.omega_b / T)
    ratio = math.expm1(-params.omega_a / T) / math.expm1(-(params.omega_a + alpha * params.omega_b) / T)
    return min(1.0, head * ratio * math.sqrt(1.0 - epsilon))


def ceiling_lower_bound(params, epsilon, rel_cut=1e-18):
    """Slow reference: the bound before relaxing ceil(x) to x + 1.

    Sums N_a e^{-omega_a n_a/T} e^{-omega_b ceil(n~_b)/T} sqrt(1-eps) over n_a,
    truncating where e^{-omega_a n_a/T} drops below ``rel_cut``.
    """
    require_validated(params)
    _check_eps(epsilon)
    _check_temperature(params)
    if params.g23 == 0.0:
        return 0.0
    T = params.temperature
    xa = params.omega_a / T
    n_max = int(math.ceil(-math.log(rel_cut) / xa))
    n_a = np.arange(n_max + 1, dtype=float)
    alpha, beta = zeno_coefficients(params, epsilon)
    n_b_min = np.maximum(np.ceil(alpha * n_a + beta), 0.0)
    terms = np.exp(-xa * n_a - params.omega_b * n_b_min / T)
    return float(-math.expm1(-xa) * math.fsum(terms) * math.sqrt(1.0 - epsilon))


def high_T_lower_bound(params, epsilon):
    require_validated(params)
    return math.sqrt(1.0 - epsilon) / (1.0 + eta(params) * chi(epsilon) ** 2)


def validity_ratios(params, epsilon):
    """Left-hand sides of the two high-temperature conditions; both must be << 1."""
    _check_temperature(params)
    alpha, beta = zeno_coefficients(params, epsilon)
    T = params.temperature
    return ((beta + 1.0) * params.omega_b / T, (params.omega_a + alpha * params.omega_b) / T)


def bound_report(params, epsilon):
    alpha, beta = zeno_coefficients(params, epsilon)
    return BoundReport(
        epsilon=epsilon,
        chi=chi(epsilon),
        alpha_eps=alpha,
        beta_eps=beta,
        eta=eta(params),
        finite_T_bound=finite_T_lower_bound(params, epsilon),
        high_T_bound=high_T_lower_bound(params, epsilon),
        validity=validity_ratios(params, epsilon),
    )


def epsilon_grid(n_points=64, lo=1e-6, hi=1.0 - 1e-6):
    return np.geomspace(lo, hi, n_points)


def _maximise(fn, n_points):
    """Grid search, then bounded Brent between the neighbours of the best node."""
    grid = epsilon_grid(n_points)
    values = np.array([fn(float(e)) for e in grid])
    i = int(np.argmax(values))
    best_eps, best_val = float(grid[i]), float(values[i])
    if best_val <= 0.0:
        return best_eps
    lo, hi = float(grid[max(i - 1, 0)]), float(grid[min(i + 1, len(grid) - 1)])
    res = minimize_scalar(lambda e: -fn(e), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12 * hi})
    if res.success and -res.fun > best_val:
        return float(res.x)
    return best_eps


def best_bound(params, n_points=64):
    """BoundReport at the epsilon maximising the finite-T bound."""
    require_validated(params)
    _check_temperature(params)
    eps = _maximise(lambda e: finite_T_lower_bound(params, e), n_points)
    return bound_report(params, eps)


def best_high_T_bound(params, n_points=64):
    require_validated(params)
    eps = _maximise(lambda e: high_T_lower_bound(params, e), n_points)
    return high_T_lower_bound(params, eps)
