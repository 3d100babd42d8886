"""Pure-Python implementations of the hot loops.

Behaviour is kept identical to ``_ckernels.pyx``; the compiled module is
preferred when it imports.
"""
import numpy as np

POLE = -2
NOT_CONVERGED = -1


def hyp0f1_series(b, z, rel_tol, max_terms):
    """Sum ``sum_m z**m / ((b)_m m!)``.

    Returns ``(total, n_terms, abs_sum)``.  ``n_terms`` is ``POLE`` when a
    Pochhammer factor vanishes and ``NOT_CONVERGED`` when ``max_terms`` is
    exhausted; ``abs_sum`` is the sum of the term moduli, a measure of the
    cancellation that went into ``total``.
    Truncation needs three consecutive terms below ``rel_tol * |total|`` and
    the remaining tail must already be in its monotone decreasing regime.
    """
    b = complex(b)
    z = complex(z)
    abs_z = abs(z)
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    abs_sum = 1.0
    small = 0
    for m in range(max_terms):
        bm = b + m
        if bm == 0:
            return total, POLE, abs_sum
        term = term * z / ((m + 1) * bm)
        total += term
        abs_sum += abs(term)
        nxt = b + (m + 1)
        if (abs(term) < rel_tol * abs(total) and nxt.real > 0
                and abs_z < (m + 2) * abs(nxt)):
            small += 1
            if small == 3:
                return total, m + 2, abs_sum
        else:
            small = 0
    return total, NOT_CONVERGED, abs_sum


def numerov(q, h, u0, u1):
    """Numerov recursion for ``u'' + q(r) u = 0`` on a uniform grid."""
    q = np.asarray(q, dtype=np.float64)
    n = q.shape[0]
    u = np.empty(n, dtype=np.float64)
    c = h * h / 12.0
    u[0] = u0
    if n > 1:
        u[1] = u1
    ql = q.tolist()
    prev, cur = u0, u1
    for i in range(1, n - 1):
        nxt = (2.0 * cur * (1.0 - 5.0 * c * ql[i])
               - prev * (1.0 + c * ql[i - 1])) / (1.0 + c * ql[i + 1])
        u[i + 1] = nxt
        prev, cur = cur, nxt
    return u


# --- double-double arithmetic (Dekker / Knuth error-free transforms) --------

_SPLIT = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a, b):
    p = a * b
    t = _SPLIT * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLIT * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(ah, al, bh, bl):
    s, e = _two_sum(ah, bh)
    e += al + bl
    return _two_sum(s, e)


def _dd_mul(ah, al, bh, bl):
    p, e = _two_prod(ah, bh)
    e += ah * bl + al * bh
    return _two_sum(p, e)


def _dd_div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = _dd_mul(q1, 0.0, bh, bl)
    rh, rl = _dd_add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = _dd_mul(q2, 0.0, bh, bl)
    rh, rl = _dd_add(rh, rl, -ph, -pl)
    q3 = rh / bh
    s, e = _two_sum(q1, q2)
    return _dd_add(s, e, q3, 0.0)


def hyp0f1_series_dd(b_hi, b_lo, z_hi, z_lo, rel_tol, max_terms):
    """Real 0F1 series carried in double-double arithmetic.

    ``b`` and ``z`` are passed as unevaluated sums ``hi + lo`` so that the
    rounding of ``nu + 1`` and of ``-x**2/4`` does not enter the terms.
    Returns ``(total, n_terms)`` with the same status codes as
    :func:`hyp0f1_series`; ``total`` is rounded to a double.
    """
    th, tl = 1.0, 0.0
    sh, sl = 1.0, 0.0
    small = 0
    abs_z = abs(z_hi)
    for m in range(max_terms):
        bh, bl = _two_sum(b_hi, float(m))
        bh, bl = _two_sum(bh, bl + b_lo)
        if bh == 0.0 and bl == 0.0:
            return sh, POLE
        dh, dl = _dd_mul(bh, bl, float(m + 1), 0.0)
        th, tl = _dd_mul(th, tl, z_hi, z_lo)
        th, tl = _dd_div(th, tl, dh, dl)
        sh, sl = _dd_add(sh, sl, th, tl)
        nxt = b_hi + (m + 1)
        if abs(th) < rel_tol * abs(sh) and nxt > 0 and abs_z < (m + 2) * abs(nxt):
            small += 1
            if small == 3:
                return sh + sl, m + 2
        else:
            small = 0
    return sh + sl, NOT_CONVERGED


def hyp0f1_series_cdd(br_hi, br_lo, bi, zr_hi, zr_lo, zi, rel_tol, max_terms):
    """Complex 0F1 series with real and imaginary parts in double-double.

    ``b = (br_hi + br_lo) + i bi`` and ``z = (zr_hi + zr_lo) + i zi``.
    Returns ``(total, n_terms)`` like :func:`hyp0f1_series_dd`.
    """
    trh, trl, tih, til = 1.0, 0.0, 0.0, 0.0
    srh, srl, sih, sil = 1.0, 0.0, 0.0, 0.0
    abs_z = abs(complex(zr_hi, zi))
    small = 0
    for m in range(max_terms):
        # d = (m + 1) (b + m)
        dr, drl = _two_sum(br_hi, float(m))
        dr, drl = _two_sum(dr, drl + br_lo)
        if dr == 0.0 and drl == 0.0 and bi == 0.0:
            return complex(srh, sih), POLE
        dr, drl = _dd_mul(dr, drl, float(m + 1), 0.0)
        di, dil = _two_prod(bi, float(m + 1))
        # t *= z
        ah, al = _dd_mul(trh, trl, zr_hi, zr_lo)
        bh, bl = _dd_mul(tih, til, zi, 0.0)
        rh, rl = _dd_add(ah, al, -bh, -bl)
        ah, al = _dd_mul(trh, trl, zi, 0.0)
        bh, bl = _dd_mul(tih, til, zr_hi, zr_lo)
        ih, il = _dd_add(ah, al, bh, bl)
        # t /= d  as  t conj(d) / |d|^2
        nh, nl = _dd_add(*_dd_mul(dr, drl, dr, drl), *_dd_mul(di, dil, di, dil))
        ah, al = _dd_mul(rh, rl, dr, drl)
        bh, bl = _dd_mul(ih, il, di, dil)
        xr, xrl = _dd_add(ah, al, bh, bl)
        ah, al = _dd_mul(ih, il, dr, drl)
        bh, bl = _dd_mul(rh, rl, di, dil)
        xi, xil = _dd_add(ah, al, -bh, -bl)
        trh, trl = _dd_div(xr, xrl, nh, nl)
        tih, til = _dd_div(xi, xil, nh, nl)
        srh, srl = _dd_add(srh, srl, trh, trl)
        sih, sil = _dd_add(sih, sil, tih, til)
        nxt = complex(br_hi + (m + 1), bi)
        if (abs(complex(trh, tih)) < rel_tol * abs(complex(srh, sih)) and nxt.real > 0
                and abs_z < (m + 2) * abs(nxt)):
            small += 1
            if small == 3:
                return complex(srh + srl, sih + sil), m + 2
        else:
            small = 0
    return complex(srh + srl, sih + sil), NOT_CONVERGED
