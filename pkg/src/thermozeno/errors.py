"""Exception hierarchy shared by all modules."""


class ThermoZenoError(Exception):
    """Base class; the CLI turns these into structured error reports."""


class NonPositiveFrequency(ThermoZenoError, ValueError):
    pass


class ResonanceViolation(ThermoZenoError, ValueError):
    def __init__(self, identity, mismatch):
        self.identity = identity
        self.mismatch = mismatch
        super().__init__(f"{identity} violated by {mismatch:.6g}")


class DomainError(ThermoZenoError, ValueError):
    pass


class ZeroCoupling(ThermoZenoError, ValueError):
    pass


class ConvergenceFailure(ThermoZenoError, ArithmeticError):
    pass


class CutoffOverflow(ThermoZenoError, OverflowError):
    pass


class DimensionOverflow(ThermoZenoError, OverflowError):
    pass


class ConfigError(ThermoZenoError, ValueError):
    pass
