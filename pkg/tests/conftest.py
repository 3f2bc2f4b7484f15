import functools

import numpy as np
import pytest

from thermozeno.model import ModelParams, Tolerances, validate
from thermozeno.thermal import survival_curve, uniform_times

ACCEPTANCE_LINES = []


def record(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@functools.lru_cache(maxsize=None)
def cached_curve(omega_a, omega_b, g12, g23, temperature, delta=0.0, tail_mass=1e-6,
                 t_max=20.0, points=400):
    mode = "detuned" if delta else "resonant"
    params = validate(ModelParams.from_frequencies(omega_a, omega_b, g12, g23, delta,
                                                   temperature), mode)
    return survival_curve(params, uniform_times(t_max, points), Tolerances(tail_mass=tail_mass))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def fig2a_params():
    def make(T):
        return validate(ModelParams.from_frequencies(10.0, 1.0, 1.0, 1.0, temperature=T))
    return make
