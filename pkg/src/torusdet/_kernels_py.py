"""Pure-Python series kernels.

Every function here is a tight scalar loop that sums a theta-type series or
product until an analytic tail bound drops below ``tol`` (or the term budget
``kmax`` is exhausted).  Returned tuples carry the partial sum, the tail
bound actually achieved, the sum of absolute term magnitudes (for rounding
accounting in the calling layer), and the number of terms consumed.

The compiled module ``_kernels_cy`` implements the same functions with the
same loop structure; keep the two in lockstep.

Factor conventions for the product-derived series: each theta function is a
product over k >= 1 of factors (1 + s * e^{-a k' pi x}) with

    theta2:     (a=2k, s=-1, w=1) and (a=2k,   s=+1, w=2)
    theta3:     (a=2k, s=-1, w=1) and (a=2k-1, s=+1, w=2)
    theta4:     (a=2k, s=-1, w=1) and (a=2k-1, s=-1, w=2)
    theta1plus: (a=2k, s=-1, w=3)

(the exponential prefactors 2 e^{-pi x / 4} of theta2/theta1plus are handled
by the callers).  With t = e^{-a pi x} and c = a pi, the first four x-derivatives
of log(1 + s t) are

    f1 = -c   s t / (1 + s t)
    f2 =  c^2 s t / (1 + s t)^2
    f3 = -c^3 s t (1 - s t)       / (1 + s t)^3
    f4 =  c^4 s t (1 - 4 s t + t^2) / (1 + s t)^4

and |f_j| <= c^j t B_j(t) with B_1 = 1/(1-t), B_2 = 1/(1-t)^2,
B_3 = (1+t)/(1-t)^3, B_4 = (1+4t+t^2)/(1-t)^4 for either sign.
"""

from __future__ import annotations

import math

_PI = math.pi
_INF = math.inf


def theta2_series(x: float, tol: float, kmax: int):
    """theta2(x) = 2 sum_{k>=1} e^{-pi (k-1/2)^2 x}."""
    s = 0.0
    abs_sum = 0.0
    k = 0
    tail = _INF
    while k < kmax:
        k += 1
        term = 2.0 * math.exp(-_PI * (k - 0.5) * (k - 0.5) * x)
        s += term
        abs_sum += term
        # omitted terms shrink by at least e^{-2 pi (k+1) x} each step
        first = 2.0 * math.exp(-_PI * (k + 0.5) * (k + 0.5) * x)
        ratio = math.exp(-2.0 * _PI * (k + 1) * x)
        tail = first / (1.0 - ratio)
        if tail < tol:
            break
    return s, tail, abs_sum, k


def theta3_series(x: float, tol: float, kmax: int):
    """Returns theta3(x) - 1 = 2 sum_{k>=1} e^{-pi k^2 x}."""
    tail = 2.0 * math.exp(-_PI * x) / (1.0 - math.exp(-3.0 * _PI * x))
    if tail < tol:
        return 0.0, tail, 0.0, 0
    s = 0.0
    abs_sum = 0.0
    k = 0
    while k < kmax:
        k += 1
        term = 2.0 * math.exp(-_PI * k * k * x)
        s += term
        abs_sum += term
        first = 2.0 * math.exp(-_PI * (k + 1) * (k + 1) * x)
        ratio = math.exp(-_PI * (2 * k + 3) * x)
        tail = first / (1.0 - ratio)
        if tail < tol:
            break
    return s, tail, abs_sum, k


def theta4_series(x: float, tol: float, kmax: int):
    """Returns theta4(x) - 1 = 2 sum_{k>=1} (-1)^k e^{-pi k^2 x}."""
    tail = 2.0 * math.exp(-_PI * x) / (1.0 - math.exp(-3.0 * _PI * x))
    if tail < tol:
        return 0.0, tail, 0.0, 0
    s = 0.0
    abs_sum = 0.0
    k = 0
    sign = 1.0
    while k < kmax:
        k += 1
        sign = -sign
        mag = 2.0 * math.exp(-_PI * k * k * x)
        s += sign * mag
        abs_sum += mag
        first = 2.0 * math.exp(-_PI * (k + 1) * (k + 1) * x)
        ratio = math.exp(-_PI * (2 * k + 3) * x)
        tail = first / (1.0 - ratio)
        if tail < tol:
            break
    return s, tail, abs_sum, k


def theta1p_series(x: float, tol: float, kmax: int):
    """theta1plus(x) = 2 sum_{k>=0} (-1)^k (2k+1) e^{-pi (k+1/2)^2 x}."""
    s = 0.0
    abs_sum = 0.0
    n = 0
    k = -1
    sign = -1.0
    tail = _INF
    while n < kmax:
        k += 1
        n += 1
        sign = -sign
        mag = 2.0 * (2 * k + 1) * math.exp(-_PI * (k + 0.5) * (k + 0.5) * x)
        s += sign * mag
        abs_sum += mag
        first = 2.0 * (2 * k + 3) * math.exp(-_PI * (k + 1.5) * (k + 1.5) * x)
        ratio = ((2 * k + 5) / (2 * k + 3)) * math.exp(-2.0 * _PI * (k + 2) * x)
        if ratio < 1.0:
            tail = first / (1.0 - ratio)
            if tail < tol:
                break
    return s, tail, abs_sum, n


def big_theta_series(z: float, x: float, tol: float, kmax: int):
    """Returns Theta(z, ix) - 1 = 2 sum_{k>=1} e^{-pi k^2 x} cos(2 pi k z)."""
    tail = 2.0 * math.exp(-_PI * x) / (1.0 - math.exp(-3.0 * _PI * x))
    if tail < tol:
        return 0.0, tail, 0.0, 0
    s = 0.0
    abs_sum = 0.0
    k = 0
    while k < kmax:
        k += 1
        mag = 2.0 * math.exp(-_PI * k * k * x)
        s += mag * math.cos(2.0 * _PI * k * z)
        abs_sum += mag
        first = 2.0 * math.exp(-_PI * (k + 1) * (k + 1) * x)
        ratio = math.exp(-_PI * (2 * k + 3) * x)
        tail = first / (1.0 - ratio)
        if tail < tol:
            break
    return s, tail, abs_sum, k


def _family_params(kind: int):
    # (gB, hB, sB, wB); family A is always (a=2k, s=-1) with weight wA
    if kind == 2:
        return 1.0, 2, 0, 1.0, 2.0
    if kind == 3:
        return 1.0, 2, 1, 1.0, 2.0
    if kind == 4:
        return 1.0, 2, 1, -1.0, 2.0
    if kind == 1:
        return 3.0, 0, 0, 0.0, 0.0
    raise ValueError(f"unknown kind code {kind}")


def theta_log_product(kind: int, x: float, tol: float, kmax: int):
    """Sum over k of the log factors of the theta product (prefactor excluded).

    For kind codes 2/3/4/1 per the module table.  Truncation error of the
    log-sum is bounded via |log(1 + u)| <= |u| / (1 - |u|).
    """
    wA, gB, hB, sB, wB = _family_params(kind)
    q2 = math.exp(-2.0 * _PI * x)
    logsum = 0.0
    abs_sum = 0.0
    max_part = 0.0
    k = 0
    tail = _INF
    while k < kmax:
        k += 1
        uA = math.exp(-2.0 * _PI * k * x)
        partA = wA * math.log1p(-uA)
        logsum += partA
        abs_sum -= partA
        if wB != 0.0:
            uB = math.exp(-_PI * (gB * k - hB) * x)
            partB = wB * math.log1p(sB * uB)
            logsum += partB
            abs_sum += abs(partB)
        if abs(logsum) > max_part:
            max_part = abs(logsum)
        uA1 = math.exp(-2.0 * _PI * (k + 1) * x)
        tail = wA * uA1 / ((1.0 - uA1) * (1.0 - q2))
        if wB != 0.0:
            uB1 = math.exp(-_PI * (gB * (k + 1) - hB) * x)
            tail += wB * uB1 / ((1.0 - uB1) * (1.0 - q2))
        if tail < tol:
            break
    return logsum, tail, abs_sum, max_part, k


def big_theta_log_product(z: float, x: float, tol: float, kmax: int):
    """Log of the Jacobi triple product for Theta(z, ix), z real, without
    the leading 1: sum_k log(1-q^{2k}) + log(1 + 2 c q^{2k-1} + q^{2(2k-1)})
    with q = e^{-pi x}, c = cos(2 pi z)."""
    c = math.cos(2.0 * _PI * z)
    q = math.exp(-_PI * x)
    q2 = q * q
    logsum = 0.0
    abs_sum = 0.0
    max_part = 0.0
    k = 0
    tail = _INF
    while k < kmax:
        k += 1
        uA = math.exp(-2.0 * _PI * k * x)
        uodd = math.exp(-_PI * (2 * k - 1) * x)
        term = math.log1p(-uA) + math.log1p(uodd * (2.0 * c + uodd))
        logsum += term
        abs_sum += abs(term)
        if abs(logsum) > max_part:
            max_part = abs(logsum)
        uA1 = math.exp(-2.0 * _PI * (k + 1) * x)
        uodd1 = math.exp(-_PI * (2 * k + 1) * x)
        cap = 3.0 * uodd1
        if cap < 0.5:
            tail = uA1 / ((1.0 - uA1) * (1.0 - q2)) + (cap / (1.0 - cap)) / (1.0 - q2)
            if tail < tol:
                break
    return logsum, tail, abs_sum, max_part, k


def psi_family(kind: int, x: float, tol: float, kmax: int):
    """First four x-derivatives of log(theta_kind), series part only.

    Returns (d1, d2, d3, d4, t1, t2, t3, t4, a1, a2, a3, a4, n): derivative
    sums, per-order tail bounds, and per-order absolute-magnitude sums.
    The -pi/4 prefactor of theta2/theta1plus is NOT included.
    """
    wA, gB, hB, sB, wB = _family_params(kind)
    d1 = d2 = d3 = d4 = 0.0
    a1 = a2 = a3 = a4 = 0.0
    t1 = t2 = t3 = t4 = _INF
    k = 0
    while k < kmax:
        k += 1
        # family A: a = 2k, s = -1
        cA = 2.0 * k * _PI
        tA = math.exp(-cA * x)
        den = 1.0 - tA
        f1 = cA * tA / den
        f2 = -cA * cA * tA / (den * den)
        f3 = cA * cA * cA * tA * (1.0 + tA) / (den * den * den)
        f4 = -cA * cA * cA * cA * tA * (1.0 + tA * (4.0 + tA)) / (den * den * den * den)
        d1 += wA * f1
        d2 += wA * f2
        d3 += wA * f3
        d4 += wA * f4
        a1 += wA * abs(f1)
        a2 += wA * abs(f2)
        a3 += wA * abs(f3)
        a4 += wA * abs(f4)
        if wB != 0.0:
            cB = (gB * k - hB) * _PI
            tB = math.exp(-cB * x)
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
            a1 += wB * abs(h1)
            a2 += wB * abs(h2)
            a3 += wB * abs(h3)
            a4 += wB * abs(h4)
        # tail bounds from first omitted index with geometric ratio
        t1 = _psi_tail(1, k, x, wA, gB, hB, wB)
        if t1 < tol:
            t2 = _psi_tail(2, k, x, wA, gB, hB, wB)
            t3 = _psi_tail(3, k, x, wA, gB, hB, wB)
            t4 = _psi_tail(4, k, x, wA, gB, hB, wB)
            if t2 < tol and t3 < tol and t4 < tol:
                break
    return d1, d2, d3, d4, t1, t2, t3, t4, a1, a2, a3, a4, k


def _bj(j: int, t: float) -> float:
    # |f_j| <= c^j t B_j(t), either sign of the factor
    den = 1.0 - t
    if j == 1:
        return 1.0 / den
    if j == 2:
        return 1.0 / (den * den)
    if j == 3:
        return (1.0 + t) / (den * den * den)
    return (1.0 + t * (4.0 + t)) / (den * den * den * den)


def _psi_tail(j: int, k: int, x: float, wA: float, gB: float, hB: float, wB: float) -> float:
    tail = _INF
    aA = 2.0 * (k + 1)
    tA = math.exp(-aA * _PI * x)
    ratioA = ((k + 2) / (k + 1)) ** j * math.exp(-2.0 * _PI * x)
    if ratioA < 1.0:
        tail = wA * (aA * _PI) ** j * tA * _bj(j, tA) / (1.0 - ratioA)
        if wB != 0.0:
            aB = gB * (k + 1) - hB
            tB = math.exp(-aB * _PI * x)
            ratioB = ((aB + gB) / aB) ** j * math.exp(-gB * _PI * x)
            if ratioB >= 1.0:
                return _INF
            tail += wB * (aB * _PI) ** j * tB * _bj(j, tB) / (1.0 - ratioB)
    return tail


def psi1_logderiv_sum(x: float, tol: float, kmax: int):
    """sum_{k>=1} 2 k pi x / (e^{2 k pi x} - 1) with exact geometric tail."""
    r = math.exp(-2.0 * _PI * x)
    s = 0.0
    abs_sum = 0.0
    k = 0
    tail = _INF
    while k < kmax:
        k += 1
        e = math.exp(-2.0 * _PI * k * x)
        term = 2.0 * k * _PI * x * e / (1.0 - e)
        s += term
        abs_sum += term
        # sum_{k>K} k r^k = r^{K+1} ((K+1) - K r) / (1-r)^2
        rk1 = math.exp(-2.0 * _PI * (k + 1) * x)
        poly = rk1 * ((k + 1) - k * r) / ((1.0 - r) * (1.0 - r))
        tail = 2.0 * _PI * x * poly / (1.0 - rk1)
        if tail < tol:
            break
    return s, tail, abs_sum, k


def eta_log_product(y: float, tol: float, kmax: int):
    """sum_{k>=1} log(1 - e^{-2 pi k y})."""
    r = math.exp(-2.0 * _PI * y)
    s = 0.0
    abs_sum = 0.0
    k = 0
    tail = _INF
    while k < kmax:
        k += 1
        u = math.exp(-2.0 * _PI * k * y)
        term = math.log1p(-u)
        s += term
        abs_sum -= term
        u1 = math.exp(-2.0 * _PI * (k + 1) * y)
        tail = u1 / ((1.0 - u1) * (1.0 - r))
        if tail < tol:
            break
    return s, tail, abs_sum, abs_sum, k


def lattice_zeta_sum(inv_a2: float, a2: float, s_exp: float, radius: int):
    """Box-truncated primed lattice sum sum'_{|m|,|n|<=R} (m^2/alpha^2 + n^2 alpha^2)^{-s}.

    Uses the four-fold (m,n) -> (+-m, +-n) symmetry; the double loop runs
    over the positive quadrant.
    """
    axis = 0.0
    for m in range(1, radius + 1):
        axis += (m * m * inv_a2) ** (-s_exp) + (m * m * a2) ** (-s_exp)
    quad = 0.0
    for m in range(1, radius + 1):
        mm = m * m * inv_a2
        for n in range(1, radius + 1):
            quad += (mm + n * n * a2) ** (-s_exp)
    total = 2.0 * axis + 4.0 * quad
    return total, (2 * radius + 1) ** 2 - 1


def heat_box_sum(cm: float, cn: float, radius: int):
    """sum_{|m|,|n|<=R} e^{-cm m^2 - cn n^2}, zero mode included."""
    axis = 0.0
    for m in range(1, radius + 1):
        axis += math.exp(-cm * m * m) + math.exp(-cn * m * m)
    quad = 0.0
    for m in range(1, radius + 1):
        em = math.exp(-cm * m * m)
        for n in range(1, radius + 1):
            quad += em * math.exp(-cn * n * n)
    total = 1.0 + 2.0 * axis + 4.0 * quad
    return total, (2 * radius + 1) ** 2
