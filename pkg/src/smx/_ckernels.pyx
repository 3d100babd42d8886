# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; mirrors ``_pykernels`` exactly."""
import numpy as np
cimport numpy as cnp

cdef extern from "complex.h" nogil:
    double cabs(double complex)

cdef extern from "math.h" nogil:
    double fabs(double)

cdef enum:
    _POLE = -2
    _NOT_CONVERGED = -1

POLE = _POLE
NOT_CONVERGED = _NOT_CONVERGED


def hyp0f1_series(b, z, double rel_tol, int max_terms):
    cdef double complex cb = b
    cdef double complex cz = z
    cdef double complex term = 1.0
    cdef double complex total = 1.0
    cdef double complex bm, nxt
    cdef double abs_z = cabs(cz)
    cdef double abs_sum = 1.0
    cdef int small = 0
    cdef int m
    cdef int status = _NOT_CONVERGED
    with nogil:
        for m in range(max_terms):
            bm = cb + m
            if bm.real == 0.0 and bm.imag == 0.0:
                status = _POLE
                break
            term = term * cz / ((m + 1) * bm)
            total = total + term
            abs_sum += cabs(term)
            nxt = cb + (m + 1)
            if (cabs(term) < rel_tol * cabs(total) and nxt.real > 0
                    and abs_z < (m + 2) * cabs(nxt)):
                small += 1
                if small == 3:
                    status = m + 2
                    break
            else:
                small = 0
    return complex(total), status, abs_sum


cdef double _SPLIT = 134217729.0


cdef inline void _two_sum(double a, double b, double *s, double *e) noexcept nogil:
    cdef double ss = a + b
    cdef double bb = ss - a
    s[0] = ss
    e[0] = (a - (ss - bb)) + (b - bb)


cdef inline void _two_prod(double a, double b, double *p, double *e) noexcept nogil:
    cdef double pp = a * b
    cdef double t = _SPLIT * a
    cdef double ah = t - (t - a)
    cdef double al = a - ah
    t = _SPLIT * b
    cdef double bh = t - (t - b)
    cdef double bl = b - bh
    p[0] = pp
    e[0] = ((ah * bh - pp) + ah * bl + al * bh) + al * bl


cdef inline void _dd_add(double ah, double al, double bh, double bl,
                         double *rh, double *rl) noexcept nogil:
    cdef double s, e
    _two_sum(ah, bh, &s, &e)
    e += al + bl
    _two_sum(s, e, rh, rl)


cdef inline void _dd_mul(double ah, double al, double bh, double bl,
                         double *rh, double *rl) noexcept nogil:
    cdef double p, e
    _two_prod(ah, bh, &p, &e)
    e += ah * bl + al * bh
    _two_sum(p, e, rh, rl)


cdef inline void _dd_div(double ah, double al, double bh, double bl,
                         double *rh, double *rl) noexcept nogil:
    cdef double q1, q2, q3, ph, pl, xh, xl, s, e
    q1 = ah / bh
    _dd_mul(q1, 0.0, bh, bl, &ph, &pl)
    _dd_add(ah, al, -ph, -pl, &xh, &xl)
    q2 = xh / bh
    _dd_mul(q2, 0.0, bh, bl, &ph, &pl)
    _dd_add(xh, xl, -ph, -pl, &xh, &xl)
    q3 = xh / bh
    _two_sum(q1, q2, &s, &e)
    _dd_add(s, e, q3, 0.0, rh, rl)


def hyp0f1_series_dd(double b_hi, double b_lo, double z_hi, double z_lo,
                     double rel_tol, int max_terms):
    cdef double th = 1.0, tl = 0.0, sh = 1.0, sl = 0.0
    cdef double bh, bl, dh, dl, nxt
    cdef double abs_z = fabs(z_hi)
    cdef int small = 0
    cdef int m
    cdef int status = _NOT_CONVERGED
    with nogil:
        for m in range(max_terms):
            _two_sum(b_hi, <double>m, &bh, &bl)
            _two_sum(bh, bl + b_lo, &bh, &bl)
            if bh == 0.0 and bl == 0.0:
                status = _POLE
                break
            _dd_mul(bh, bl, <double>(m + 1), 0.0, &dh, &dl)
            _dd_mul(th, tl, z_hi, z_lo, &th, &tl)
            _dd_div(th, tl, dh, dl, &th, &tl)
            _dd_add(sh, sl, th, tl, &sh, &sl)
            nxt = b_hi + (m + 1)
            if fabs(th) < rel_tol * fabs(sh) and nxt > 0 and abs_z < (m + 2) * fabs(nxt):
                small += 1
                if small == 3:
                    status = m + 2
                    break
            else:
                small = 0
    if status == _POLE:
        return sh, status
    return sh + sl, status


def hyp0f1_series_cdd(double br_hi, double br_lo, double bi, double zr_hi, double zr_lo,
                      double zi, double rel_tol, int max_terms):
    cdef double trh = 1.0, trl = 0.0, tih = 0.0, til = 0.0
    cdef double srh = 1.0, srl = 0.0, sih = 0.0, sil = 0.0
    cdef double dr, drl, di, dil, ah, al, bh, bl, rh, rl, ih, il
    cdef double nh, nl, n2h, n2l, xr, xrl, xi, xil
    cdef double complex nxt
    cdef double abs_z = cabs(zr_hi + 1j * zi)
    cdef int small = 0
    cdef int m
    cdef int status = _NOT_CONVERGED
    with nogil:
        for m in range(max_terms):
            _two_sum(br_hi, <double>m, &dr, &drl)
            _two_sum(dr, drl + br_lo, &dr, &drl)
            if dr == 0.0 and drl == 0.0 and bi == 0.0:
                status = _POLE
                break
            _dd_mul(dr, drl, <double>(m + 1), 0.0, &dr, &drl)
            _two_prod(bi, <double>(m + 1), &di, &dil)
            _dd_mul(trh, trl, zr_hi, zr_lo, &ah, &al)
            _dd_mul(tih, til, zi, 0.0, &bh, &bl)
            _dd_add(ah, al, -bh, -bl, &rh, &rl)
            _dd_mul(trh, trl, zi, 0.0, &ah, &al)
            _dd_mul(tih, til, zr_hi, zr_lo, &bh, &bl)
            _dd_add(ah, al, bh, bl, &ih, &il)
            _dd_mul(dr, drl, dr, drl, &nh, &nl)
            _dd_mul(di, dil, di, dil, &n2h, &n2l)
            _dd_add(nh, nl, n2h, n2l, &nh, &nl)
            _dd_mul(rh, rl, dr, drl, &ah, &al)
            _dd_mul(ih, il, di, dil, &bh, &bl)
            _dd_add(ah, al, bh, bl, &xr, &xrl)
            _dd_mul(ih, il, dr, drl, &ah, &al)
            _dd_mul(rh, rl, di, dil, &bh, &bl)
            _dd_add(ah, al, -bh, -bl, &xi, &xil)
            _dd_div(xr, xrl, nh, nl, &trh, &trl)
            _dd_div(xi, xil, nh, nl, &tih, &til)
            _dd_add(srh, srl, trh, trl, &srh, &srl)
            _dd_add(sih, sil, tih, til, &sih, &sil)
            nxt = (br_hi + (m + 1)) + 1j * bi
            if (cabs(trh + 1j * tih) < rel_tol * cabs(srh + 1j * sih) and nxt.real > 0
                    and abs_z < (m + 2) * cabs(nxt)):
                small += 1
                if small == 3:
                    status = m + 2
                    break
            else:
                small = 0
    if status == _POLE:
        return complex(srh, sih), status
    return complex(srh + srl, sih + sil), status


def numerov(q, double h, double u0, double u1):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] qa = np.ascontiguousarray(q, dtype=np.float64)
    cdef Py_ssize_t n = qa.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] u = np.empty(n, dtype=np.float64)
    cdef double[::1] qv = qa
    cdef double[::1] uv = u
    cdef double c = h * h / 12.0
    cdef Py_ssize_t i
    uv[0] = u0
    if n > 1:
        uv[1] = u1
    with nogil:
        for i in range(1, n - 1):
            uv[i + 1] = (2.0 * uv[i] * (1.0 - 5.0 * c * qv[i])
                         - uv[i - 1] * (1.0 + c * qv[i - 1])) / (1.0 + c * qv[i + 1])
    return u
