# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled series kernels: the Cython twin of ``_kernels_py``.

Function-by-function mirror of the pure-Python module, same loop structure
and stopping rules; keep the two in lockstep.
"""

from libc.math cimport cos, exp, fabs, log1p, pow

cdef double _PI = 3.141592653589793
cdef double _INF = float("inf")


def theta2_series(double x, double tol, long kmax):
    """theta2(x) = 2 sum_{k>=1} e^{-pi (k-1/2)^2 x}."""
    cdef double s = 0.0, abs_sum = 0.0, tail = _INF, term, first, ratio
    cdef long k = 0
    while k < kmax:
        k += 1
        term = 2.0 * exp(-_PI * (k - 0.5) * (k - 0.5) * x)
        s += term
        abs_sum += term
        first = 2.0 * exp(-_PI * (k + 0.5) * (k + 0.5) * x)
        ratio = exp(-2.0 * _PI * (k + 1) * x)
        tail = first / (1.0 - ratio)
        if tail < tol:
            break
    return s, tail, abs_sum, k


def theta3_series(double x, double tol, long kmax):
    """Returns theta3(x) - 1 = 2 sum_{k>=1} e^{-pi k^2 x}."""
    cdef double tail = 2.0 * exp(-_PI * x) / (1.0 - exp(-3.0 * _PI * x))
    cdef double s = 0.0, abs_sum = 0.0, term, first, ratio
    cdef long k = 0
    if tail < tol:
        return 0.0, tail, 0.0, 0
    while k < kmax:
        k += 1
        term = 2.0 * exp(-_PI * k * k * x)
        s += term
        abs_sum += term
        first = 2.0 * exp(-_PI * (k + 1) * (k + 1) * x)
        ratio = exp(-_PI * (2 * k + 3) * x)
        tail = first / (1.0 - ratio)
        if tail < tol:
            break
    return s, tail, abs_sum, k


def theta4_series(double x, double tol, long kmax):
    """Returns theta4(x) - 1 = 2 sum_{k>=1} (-1)^k e^{-pi k^2 x}."""
    cdef double tail = 2.0 * exp(-_PI * x) / (1.0 - exp(-3.0 * _PI * x))
    cdef double s = 0.0, abs_sum = 0.0, sign = 1.0, mag, first, ratio
    cdef long k = 0
    if tail < tol:
        return 0.0, tail, 0.0, 0
    while k < kmax:
        k += 1
        sign = -sign
        mag = 2.0 * exp(-_PI * k * k * x)
        s += sign * mag
        abs_sum += mag
        first = 2.0 * exp(-_PI * (k + 1) * (k + 1) * x)
        ratio = exp(-_PI * (2 * k + 3) * x)
        tail = first / (1.0 - ratio)
        if tail < tol:
            break
    return s, tail, abs_sum, k


def theta1p_series(double x, double tol, long kmax):
    """theta1plus(x) = 2 sum_{k>=0} (-1)^k (2k+1) e^{-pi (k+1/2)^2 x}."""
    cdef double s = 0.0, abs_sum = 0.0, tail = _INF, sign = -1.0, mag, first, ratio
    cdef long n = 0, k = -1
    while n < kmax:
        k += 1
        n += 1
        sign = -sign
        mag = 2.0 * (2 * k + 1) * exp(-_PI * (k + 0.5) * (k + 0.5) * x)
        s += sign * mag
        abs_sum += mag
        first = 2.0 * (2 * k + 3) * exp(-_PI * (k + 1.5) * (k + 1.5) * x)
        ratio = ((2.0 * k + 5.0) / (2.0 * k + 3.0)) * exp(-2.0 * _PI * (k + 2) * x)
        if ratio < 1.0:
            tail = first / (1.0 - ratio)
            if tail < tol:
                break
    return s, tail, abs_sum, n


def big_theta_series(double z, double x, double tol, long kmax):
    """Returns Theta(z, ix) - 1 = 2 sum_{k>=1} e^{-pi k^2 x} cos(2 pi k z)."""
    cdef double tail = 2.0 * exp(-_PI * x) / (1.0 - exp(-3.0 * _PI * x))
    cdef double s = 0.0, abs_sum = 0.0, mag, first, ratio
    cdef long k = 0
    if tail < tol:
        return 0.0, tail, 0.0, 0
    while k < kmax:
        k += 1
        mag = 2.0 * exp(-_PI * k * k * x)
        s += mag * cos(2.0 * _PI * k * z)
        abs_sum += mag
        first = 2.0 * exp(-_PI * (k + 1) * (k + 1) * x)
        ratio = exp(-_PI * (2 * k + 3) * x)
        tail = first / (1.0 - ratio)
        if tail < tol:
            break
    return s, tail, abs_sum, k


cdef inline int _family(int kind, double* wA, double* gB, double* hB,
                        double* sB, double* wB) except -1:
    # family A is (a=2k, s=-1, weight wA); family B per kind
    if kind == 2:
        wA[0] = 1.0; gB[0] = 2.0; hB[0] = 0.0; sB[0] = 1.0; wB[0] = 2.0
    elif kind == 3:
        wA[0] = 1.0; gB[0] = 2.0; hB[0] = 1.0; sB[0] = 1.0; wB[0] = 2.0
    elif kind == 4:
        wA[0] = 1.0; gB[0] = 2.0; hB[0] = 1.0; sB[0] = -1.0; wB[0] = 2.0
    elif kind == 1:
        wA[0] = 3.0; gB[0] = 0.0; hB[0] = 0.0; sB[0] = 0.0; wB[0] = 0.0
    else:
        raise ValueError(f"unknown kind code {kind}")
    return 0


def theta_log_product(int kind, double x, double tol, long kmax):
    """Sum over k of the log factors of the theta product (prefactor excluded)."""
    cdef double wA = 0, gB = 0, hB = 0, sB = 0, wB = 0
    _family(kind, &wA, &gB, &hB, &sB, &wB)
    cdef double q2 = exp(-2.0 * _PI * x)
    cdef double logsum = 0.0, abs_sum = 0.0, max_part = 0.0, tail = _INF
    cdef double uA, uB, partA, partB, uA1, uB1
    cdef long k = 0
    while k < kmax:
        k += 1
        uA = exp(-2.0 * _PI * k * x)
        partA = wA * log1p(-uA)
        logsum += partA
        abs_sum -= partA
        if wB != 0.0:
            uB = exp(-_PI * (gB * k - hB) * x)
            partB = wB * log1p(sB * uB)
            logsum += partB
            abs_sum += fabs(partB)
        if fabs(logsum) > max_part:
            max_part = fabs(logsum)
        uA1 = exp(-2.0 * _PI * (k + 1) * x)
        tail = wA * uA1 / ((1.0 - uA1) * (1.0 - q2))
        if wB != 0.0:
            uB1 = exp(-_PI * (gB * (k + 1) - hB) * x)
            tail += wB * uB1 / ((1.0 - uB1) * (1.0 - q2))
        if tail < tol:
            break
    return logsum, tail, abs_sum, max_part, k


def big_theta_log_product(double z, double x, double tol, long kmax):
    """Triple-product log factors of Theta(z, ix) for real z, leading 1 removed."""
    cdef double c = cos(2.0 * _PI * z)
    cdef double q = exp(-_PI * x)
    cdef double q2 = q * q
    cdef double logsum = 0.0, abs_sum = 0.0, max_part = 0.0, tail = _INF
    cdef double uA, uodd, term, uA1, uodd1, cap
    cdef long k = 0
    while k < kmax:
        k += 1
        uA = exp(-2.0 * _PI * k * x)
        uodd = exp(-_PI * (2 * k - 1) * x)
        term = log1p(-uA) + log1p(uodd * (2.0 * c + uodd))
        logsum += term
        abs_sum += fabs(term)
        if fabs(logsum) > max_part:
            max_part = fabs(logsum)
        uA1 = exp(-2.0 * _PI * (k + 1) * x)
        uodd1 = exp(-_PI * (2 * k + 1) * x)
        cap = 3.0 * uodd1
        if cap < 0.5:
            tail = uA1 / ((1.0 - uA1) * (1.0 - q2)) + (cap / (1.0 - cap)) / (1.0 - q2)
            if tail < tol:
                break
    return logsum, tail, abs_sum, max_part, k


cdef inline double _bj(int j, double t):
    cdef double den = 1.0 - t
    if j == 1:
        return 1.0 / den
    if j == 2:
        return 1.0 / (den * den)
    if j == 3:
        return (1.0 + t) / (den * den * den)
    return (1.0 + t * (4.0 + t)) / (den * den * den * den)


cdef double _psi_tail(int j, long k, double x, double wA, double gB,
                      double hB, double wB):
    cdef double aA = 2.0 * (k + 1)
    cdef double tA = exp(-aA * _PI * x)
    cdef double ratioA = pow((k + 2.0) / (k + 1.0), j) * exp(-2.0 * _PI * x)
    cdef double tail, aB, tB, ratioB
    if ratioA >= 1.0:
        return _INF
    tail = wA * pow(aA * _PI, j) * tA * _bj(j, tA) / (1.0 - ratioA)
    if wB != 0.0:
        aB = gB * (k + 1) - hB
        tB = exp(-aB * _PI * x)
        ratioB = pow((aB + gB) / aB, j) * exp(-gB * _PI * x)
        if ratioB >= 1.0:
            return _INF
        tail += wB * pow(aB * _PI, j) * tB * _bj(j, tB) / (1.0 - ratioB)
    return tail


def psi_family(int kind, double x, double tol, long kmax):
    """First four x-derivatives of log(theta_kind), series part only."""
    cdef double wA = 0, gB = 0, hB = 0, sB = 0, wB = 0
    _family(kind, &wA, &gB, &hB, &sB, &wB)
    cdef double d1 = 0, d2 = 0, d3 = 0, d4 = 0
    cdef double a1 = 0, a2 = 0, a3 = 0, a4 = 0
    cdef double t1 = _INF, t2 = _INF, t3 = _INF, t4 = _INF
    cdef double cA, tA, den, f1, f2, f3, f4
    cdef double cB, tB, st, denB, h1, h2, h3, h4
    cdef long k = 0
    while k < kmax:
        k += 1
        cA = 2.0 * k * _PI
        tA = exp(-cA * x)
        den = 1.0 - tA
        f1 = cA * tA / den
        f2 = -cA * cA * tA / (den * den)
        f3 = cA * cA * cA * tA * (1.0 + tA) / (den * den * den)
        f4 = -cA * cA * cA * cA * tA * (1.0 + tA * (4.0 + tA)) / (den * den * den * den)
        d1 += wA * f1
        d2 += wA * f2
        d3 += wA * f3
        d4 += wA * f4
        a1 += wA * fabs(f1)
        a2 += wA * fabs(f2)
        a3 += wA * fabs(f3)
        a4 += wA * fabs(f4)
        if wB != 0.0:
            cB = (gB * k - hB) * _PI
            tB = exp(-cB * x)
            st = sB * tB
            denB = 1.0 + st
            h1 = -cB * st / denB
            h2 = cB * cB * st / (denB * denB)
            h3 = -cB * cB * cB * st * (1.0 - st) / (denB * denB * denB)
            h4 = cB * cB * cB * cB * st * (1.0 - 4.0 * st + tB * tB) / (denB * denB * denB * denB)
            d1 += wB * h1
            d2 += wB * h2
            d3 += wB * h3
            d4 += wB * h4
            a1 += wB * fabs(h1)
            a2 += wB * fabs(h2)
            a3 += wB * fabs(h3)
            a4 += wB * fabs(h4)
        t1 = _psi_tail(1, k, x, wA, gB, hB, wB)
        if t1 < tol:
            t2 = _psi_tail(2, k, x, wA, gB, hB, wB)
            t3 = _psi_tail(3, k, x, wA, gB, hB, wB)
            t4 = _psi_tail(4, k, x, wA, gB, hB, wB)
            if t2 < tol and t3 < tol and t4 < tol:
                break
    return d1, d2, d3, d4, t1, t2, t3, t4, a1, a2, a3, a4, k


def psi1_logderiv_sum(double x, double tol, long kmax):
    """sum_{k>=1} 2 k pi x / (e^{2 k pi x} - 1) with exact geometric tail."""
    cdef double r = exp(-2.0 * _PI * x)
    cdef double s = 0.0, abs_sum = 0.0, tail = _INF, e, term, rk1, poly
    cdef long k = 0
    while k < kmax:
        k += 1
        e = exp(-2.0 * _PI * k * x)
        term = 2.0 * k * _PI * x * e / (1.0 - e)
        s += term
        abs_sum += term
        rk1 = exp(-2.0 * _PI * (k + 1) * x)
        poly = rk1 * ((k + 1) - k * r) / ((1.0 - r) * (1.0 - r))
        tail = 2.0 * _PI * x * poly / (1.0 - rk1)
        if tail < tol:
            break
    return s, tail, abs_sum, k


def eta_log_product(double y, double tol, long kmax):
    """sum_{k>=1} log(1 - e^{-2 pi k y})."""
    cdef double r = exp(-2.0 * _PI * y)
    cdef double s = 0.0, abs_sum = 0.0, tail = _INF, u, term, u1
    cdef long k = 0
    while k < kmax:
        k += 1
        u = exp(-2.0 * _PI * k * y)
        term = log1p(-u)
        s += term
        abs_sum -= term
        u1 = exp(-2.0 * _PI * (k + 1) * y)
        tail = u1 / ((1.0 - u1) * (1.0 - r))
        if tail < tol:
            break
    return s, tail, abs_sum, abs_sum, k


def lattice_zeta_sum(double inv_a2, double a2, double s_exp, long radius):
    """Box-truncated primed lattice sum over the positive quadrant plus axes."""
    cdef double axis = 0.0, quad = 0.0, mm
    cdef long m, n
    for m in range(1, radius + 1):
        axis += pow(m * m * inv_a2, -s_exp) + pow(m * m * a2, -s_exp)
    for m in range(1, radius + 1):
        mm = m * m * inv_a2
        for n in range(1, radius + 1):
            quad += pow(mm + n * n * a2, -s_exp)
    return 2.0 * axis + 4.0 * quad, (2 * radius + 1) * (2 * radius + 1) - 1


def heat_box_sum(double cm, double cn, long radius):
    """sum_{|m|,|n|<=R} e^{-cm m^2 - cn n^2}, zero mode included."""
    cdef double axis = 0.0, quad = 0.0, em
    cdef long m, n
    for m in range(1, radius + 1):
        axis += exp(-cm * m * m) + exp(-cn * m * m)
    for m in range(1, radius + 1):
        em = exp(-cm * m * m)
        for n in range(1, radius + 1):
            quad += em * exp(-cn * n * n)
    return 1.0 + 2.0 * axis + 4.0 * quad, (2 * radius + 1) * (2 * radius + 1)
