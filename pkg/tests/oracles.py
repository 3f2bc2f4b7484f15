"""Independent reference computations used only by the tests."""

import numpy as np
from scipy.linalg import expm


def block_matrix(a, b, d=0.0):
    return np.array([[0.0, a, 0.0], [a, 0.0, b], [0.0, b, d]])


def expm_amplitude(h, t, i=0):
    return expm(-1j * h * t)[i, i]


def expm_survival(h, times, i=0):
    return np.array([abs(expm_amplitude(h, t, i)) ** 2 for t in np.atleast_1d(times)])


def propagate(h, times):
    """|<0|psi(t)>|^2 on a uniform grid via repeated one-step propagators."""
    times = np.asarray(times)
    dt = times[1] - times[0]
    step = expm(-1j * h * dt)
    psi = np.zeros(h.shape[0], dtype=complex)
    psi[0] = 1.0
    if times[0] != 0.0:
        psi = expm(-1j * h * times[0]) @ psi
    out = np.empty(len(times))
    for k in range(len(times)):
        out[k] = abs(psi[0]) ** 2
        psi = step @ psi
    return out


def brute_thermal(omega_a, omega_b, g12, g23, delta, T, times, na_max, nb_max):
    """Direct double sum over Fock blocks with matrix-exponential evolution."""
    xa, xb = omega_a / T, omega_b / T
    total = np.zeros(len(times))
    for na in range(na_max + 1):
        for nb in range(nb_max + 1):
            w = (1 - np.exp(-xa)) * (1 - np.exp(-xb)) * np.exp(-xa * na - xb * nb)
            h = block_matrix(g12 * np.sqrt(na + 1), g23 * np.sqrt(nb + 1), delta)
            total += w * expm_survival(h, times)
    return total
