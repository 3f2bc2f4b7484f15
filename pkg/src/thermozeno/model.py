"""Physical parameters of the three-level system plus two oscillators.

Units: hbar = k_B = 1.  Frequencies, couplings, detunings and temperatures
share one angular-frequency unit.
"""

from dataclasses import dataclass, fields

from .errors import DomainError, NonPositiveFrequency, ResonanceViolation

RESONANT = "resonant"
DETUNED = "detuned"
MODES = (RESONANT, DETUNED)

# relative tolerance on the Bohr-frequency identities
_RESONANCE_RTOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    omega_levels: tuple
    omega_a: float
    omega_b: float
    g12: float
    g23: float
    delta: float = 0.0
    temperature: float = 0.0

    @classmethod
    def from_frequencies(cls, omega_a, omega_b, g12, g23, delta=0.0,
                         temperature=0.0, omega_3=0.0):
        """Build level energies consistent with the oscillator frequencies.

        The 1-2 transition is resonant with mode a; the 2-3 transition is
        detuned from mode b by ``delta``.
        """
        omega_2 = omega_3 + omega_b - delta
        omega_1 = omega_2 + omega_a
        return cls((float(omega_1), float(omega_2), float(omega_3)),
                   float(omega_a), float(omega_b), float(g12), float(g23),
                   float(delta), float(temperature))

    def replace(self, **changes):
        values = {f.name: getattr(self, f.name) for f in fields(ModelParams)}
        values.update(changes)
        return ModelParams(**values)

    def as_dict(self):
        return {
            "omega_levels": list(self.omega_levels),
            "omega_a": self.omega_a,
            "omega_b": self.omega_b,
            "g12": self.g12,
            "g23": self.g23,
            "delta": self.delta,
            "temperature": self.temperature,
        }


@dataclass(frozen=True)
class ValidatedParams(ModelParams):
    """ModelParams that passed :func:`validate`; only built by it."""

    mode: str = RESONANT

    def as_dict(self):
        d = super().as_dict()
        d["mode"] = self.mode
        return d


@dataclass(frozen=True)
class Tolerances:
    tail_mass: float = 1e-6
    eig_residual: float = 1e-10
    epsilon: float = 0.1
    max_cutoff: int = 10**6
    max_blocks: int = 10**7

    def __post_init__(self):
        if not 0.0 < self.tail_mass < 1.0:
            raise DomainError(f"tail_mass must lie in (0, 1), got {self.tail_mass}")
        if not self.eig_residual > 0.0:
            raise DomainError(f"eig_residual must be positive, got {self.eig_residual}")
        if not 0.0 < self.epsilon < 1.0:
            raise DomainError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.max_cutoff < 0 or self.max_blocks < 1:
            raise DomainError("max_cutoff and max_blocks must be positive")

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _check_identity(name, lhs, rhs, scale):
    mismatch = lhs - rhs
    if abs(mismatch) > _RESONANCE_RTOL * max(1.0, scale):
        raise ResonanceViolation(name, mismatch)


def validate(params, mode=None):
    """Check ``params`` for the declared mode and return ValidatedParams.

    ``mode`` defaults to the mode already attached to a ValidatedParams, or
    "resonant" otherwise.  Idempotent.
    """
    if mode is None:
        mode = getattr(params, "mode", RESONANT)
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}; expected one of {MODES}")
    levels = tuple(float(w) for w in params.omega_levels)
    if len(levels) != 3:
        raise DomainError("omega_levels needs exactly three energies")
    for name in ("omega_a", "omega_b"):
        value = getattr(params, name)
        if not value > 0.0:
            raise NonPositiveFrequency(f"{name} must be > 0, got {value}")
    if not params.temperature >= 0.0:
        raise DomainError(f"temperature must be >= 0, got {params.temperature}")

    w1, w2, w3 = levels
    scale = max(abs(w1), abs(w2), abs(w3), params.omega_a, params.omega_b)
    _check_identity("omega_1 - omega_2 = omega_a", w1 - w2, params.omega_a, scale)
    if mode == RESONANT:
        _check_identity("omega_2 - omega_3 = omega_b", w2 - w3, params.omega_b, scale)
        _check_identity("delta = 0", params.delta, 0.0, scale)
    else:
        _check_identity("delta = omega_b - (omega_2 - omega_3)",
                        params.delta, params.omega_b - (w2 - w3), scale)

    return ValidatedParams(levels, float(params.omega_a), float(params.omega_b),
                           float(params.g12), float(params.g23), float(params.delta),
                           float(params.temperature), mode)


def require_validated(params):
    if not isinstance(params, ValidatedParams):
        raise TypeError("expected ValidatedParams; call model.validate() first")
    return params
