"""Compiled per-block kernels and deterministic thermal reductions.

The 3x3 blocks all have the form

    [[0, a, 0],
     [a, 0, b],
     [0, b, d]]

(possibly with complex a, b; only |a|^2 and |b|^2 enter the spectrum), with
characteristic polynomial  lam^3 - d lam^2 - (a2 + b2) lam + a2 d = 0.

Reductions run over rows in parallel, each row accumulated sequentially
with Neumaier compensation, then rows are merged serially in ascending
order.  The result therefore does not depend on the thread count.
"""

import math

import numba
import numpy as np
from numba import njit, prange

# the bundled TBB is too old for numba; skip it instead of warning
numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


@njit(cache=True)
def _charpoly(lam, a2, b2, d):
    return ((lam - d) * lam - (a2 + b2)) * lam + a2 * d


@njit(cache=True)
def _charpoly_deriv(lam, a2, b2, d):
    return (3.0 * lam - 2.0 * d) * lam - (a2 + b2)


@njit(cache=True)
def _polish(lam, a2, b2, d):
    f = _charpoly(lam, a2, b2, d)
    fp = _charpoly_deriv(lam, a2, b2, d)
    if fp != 0.0 and f != 0.0:
        cand = lam - f / fp
        if abs(_charpoly(cand, a2, b2, d)) < abs(f):
            return cand
    return lam


@njit(cache=True)
def tridiag_eigvals(a, b, d):
    """Ascending eigenvalues for coupling moduli a, b >= 0 and corner d."""
    # work on the matrix scaled to unit size to avoid under/overflow
    scale = max(a, b, abs(d))
    if scale == 0.0:
        return 0.0, 0.0, 0.0
    a2 = (a / scale) ** 2
    b2 = (b / scale) ** 2
    d = d / scale
    if d == 0.0:
        g = math.sqrt(a2 + b2) * scale
        return -g, 0.0, g
    s = a2 + b2
    shift = d / 3.0
    p = -s - d * d / 3.0
    q = -2.0 * d * d * d / 27.0 - d * s / 3.0 + a2 * d
    r = 2.0 * math.sqrt(-p / 3.0)
    arg = 3.0 * q / (p * r)
    if arg > 1.0:
        arg = 1.0
    elif arg < -1.0:
        arg = -1.0
    theta = math.acos(arg) / 3.0
    x0 = r * math.cos(theta) + shift
    x1 = r * math.cos(theta - 2.0 * math.pi / 3.0) + shift
    x2 = r * math.cos(theta - 4.0 * math.pi / 3.0) + shift
    # the largest-modulus root is accurate; small roots from the trig form can
    # lose all relative precision, so rebuild them from the product of roots
    # (-a2 d) and the pairwise sum (-s)
    if abs(x1) > abs(x0) and abs(x1) >= abs(x2):
        x0, x1 = x1, x0
    elif abs(x2) > abs(x0):
        x0, x2 = x2, x0
    x0 = _polish(x0, a2, b2, d)
    prod = -a2 * d / x0
    tot = (-s - prod) / x0
    disc = max(tot * tot - 4.0 * prod, 0.0)
    h = 0.5 * (tot + math.copysign(math.sqrt(disc), tot))
    if h != 0.0:
        x1, x2 = h, prod / h
    else:
        x1, x2 = 0.0, 0.0
    x1 = _polish(x1, a2, b2, d)
    x2 = _polish(x2, a2, b2, d)
    # sort three values
    if x0 > x1:
        x0, x1 = x1, x0
    if x1 > x2:
        x1, x2 = x2, x1
    if x0 > x1:
        x0, x1 = x1, x0
    return x0 * scale, x1 * scale, x2 * scale


@njit(cache=True)
def first_component_weights(a2, b2, d, l0, l1, l2):
    """|<e1|v_k>|^2 from the eigenvector-eigenvalue identity.

    Valid when the eigenvalues are distinct, which holds whenever a2 > 0
    and b2 > 0 (irreducible tridiagonal).
    """
    w0 = (l0 * (l0 - d) - b2) / ((l0 - l1) * (l0 - l2))
    w1 = (l1 * (l1 - d) - b2) / ((l1 - l0) * (l1 - l2))
    w2 = (l2 * (l2 - d) - b2) / ((l2 - l0) * (l2 - l1))
    w0 = min(max(w0, 0.0), 1.0)
    w1 = min(max(w1, 0.0), 1.0)
    w2 = min(max(w2, 0.0), 1.0)
    return w0, w1, w2


@njit(cache=True)
def resonant_probability(a2, b2, t):
    g2 = a2 + b2
    if g2 == 0.0:
        return 1.0
    amp = (b2 + a2 * math.cos(math.sqrt(g2) * t)) / g2
    return amp * amp


@njit(cache=True)
def _row_resonant(a2, b2_row, wa, wb, times, out_s, out_c):
    nt = times.shape[0]
    for j in range(b2_row.shape[0]):
        b2 = b2_row[j]
        w = wa * wb[j]
        g2 = a2 + b2
        g = math.sqrt(g2)
        for k in range(nt):
            amp = (b2 + a2 * math.cos(g * times[k])) / g2
            term = w * amp * amp
            s = out_s[k]
            tot = s + term
            if abs(s) >= abs(term):
                out_c[k] += (s - tot) + term
            else:
                out_c[k] += (term - tot) + s
            out_s[k] = tot


@njit(cache=True)
def _row_detuned(a2, b2_row, d, wa, wb, times, out_s, out_c):
    nt = times.shape[0]
    for j in range(b2_row.shape[0]):
        b2 = b2_row[j]
        w = wa * wb[j]
        if a2 == 0.0:
            c0 = 1.0
            w01 = w02 = w12 = 0.0
            f01 = f02 = f12 = 0.0
        elif b2 == 0.0:
            # e1 lives in the 2x2 block [[0, a], [a, 0]]: P = cos^2(a t)
            c0 = 0.5
            w01 = 0.25
            f01 = 2.0 * math.sqrt(a2)
            w02 = w12 = 0.0
            f02 = f12 = 0.0
        else:
            l0, l1, l2 = tridiag_eigvals(math.sqrt(a2), math.sqrt(b2), d)
            v0, v1, v2 = first_component_weights(a2, b2, d, l0, l1, l2)
            c0 = v0 * v0 + v1 * v1 + v2 * v2
            w01 = v0 * v1
            w02 = v0 * v2
            w12 = v1 * v2
            f01 = l1 - l0
            f02 = l2 - l0
            f12 = l2 - l1
        for k in range(nt):
            t = times[k]
            prob = c0 + 2.0 * (w01 * math.cos(f01 * t) + w02 * math.cos(f02 * t)
                               + w12 * math.cos(f12 * t))
            if prob < 0.0:
                prob = 0.0
            elif prob > 1.0:
                prob = 1.0
            term = w * prob
            s = out_s[k]
            tot = s + term
            if abs(s) >= abs(term):
                out_c[k] += (s - tot) + term
            else:
                out_c[k] += (term - tot) + s
            out_s[k] = tot


@njit(cache=True)
def _merge_rows(part_s, part_c):
    nrow, nt = part_s.shape
    out = np.empty(nt)
    for k in range(nt):
        s = 0.0
        c = 0.0
        for i in range(nrow):
            x = part_s[i, k]
            tot = s + x
            if abs(s) >= abs(x):
                c += (s - tot) + x
            else:
                c += (x - tot) + s
            s = tot
            c += part_c[i, k]
        out[k] = s + c
    return out


@njit(cache=True, parallel=True)
def thermal_sum_3x3(a2_arr, b2_arr, wa, wb, d, times, resonant):
    """Sum_{n_a, n_b} wa[n_a] wb[n_b] P(a2_arr[n_a], b2_arr[n_b], d; t)."""
    na = wa.shape[0]
    nt = times.shape[0]
    part_s = np.zeros((na, nt))
    part_c = np.zeros((na, nt))
    for i in prange(na):
        if resonant:
            _row_resonant(a2_arr[i], b2_arr, wa[i], wb, times, part_s[i], part_c[i])
        else:
            _row_detuned(a2_arr[i], b2_arr, d, wa[i], wb, times, part_s[i], part_c[i])
    return _merge_rows(part_s, part_c)


@njit(cache=True)
def _multiblock_row(first, alpha_scale, beta_scale, diag1, diag2, digits_len,
                    weights, times, out_s, out_c):
    """Accumulate every block whose first occupation index equals ``first``.

    Mode order is (n_1..n_p, m_1..m_q); the last index runs fastest.
    """
    p = alpha_scale.shape[0]
    q = beta_scale.shape[0]
    nmodes = p + q
    dim = 1 + p + p * q
    nt = times.shape[0]
    digits = np.zeros(nmodes, dtype=np.int64)
    digits[0] = first
    count = 1
    for m in range(1, nmodes):
        count *= digits_len[m]
    mat = np.zeros((dim, dim))
    for _ in range(count):
        w = 1.0
        for m in range(nmodes):
            w *= weights[m, digits[m]]
        mat[:, :] = 0.0
        for k in range(p):
            alpha = alpha_scale[k] * math.sqrt(digits[k] + 1.0)
            mat[0, 1 + k] = alpha
            mat[1 + k, 0] = alpha
            mat[1 + k, 1 + k] = diag1[k]
            for l in range(q):
                beta = beta_scale[l] * math.sqrt(digits[p + l] + 1.0)
                idx = 1 + p + k * q + l
                mat[1 + k, idx] = beta
                mat[idx, 1 + k] = beta
                mat[idx, idx] = diag2[k, l]
        evals, evecs = np.linalg.eigh(mat)
        for kt in range(nt):
            t = times[kt]
            re = 0.0
            im = 0.0
            for e in range(dim):
                c = evecs[0, e] * evecs[0, e]
                re += c * math.cos(evals[e] * t)
                im -= c * math.sin(evals[e] * t)
            prob = re * re + im * im
            if prob > 1.0:
                prob = 1.0
            term = w * prob
            s = out_s[kt]
            tot = s + term
            if abs(s) >= abs(term):
                out_c[kt] += (s - tot) + term
            else:
                out_c[kt] += (term - tot) + s
            out_s[kt] = tot
        # advance mixed-radix counter over modes 1..nmodes-1
        m = nmodes - 1
        while m >= 1:
            digits[m] += 1
            if digits[m] < digits_len[m]:
                break
            digits[m] = 0
            m -= 1


@njit(cache=True, parallel=True)
def thermal_sum_multiblock(alpha_scale, beta_scale, diag1, diag2, digits_len,
                           weights, times):
    n_first = digits_len[0]
    nt = times.shape[0]
    part_s = np.zeros((n_first, nt))
    part_c = np.zeros((n_first, nt))
    for i in prange(n_first):
        _multiblock_row(i, alpha_scale, beta_scale, diag1, diag2, digits_len,
                        weights, times, part_s[i], part_c[i])
    return _merge_rows(part_s, part_c)
