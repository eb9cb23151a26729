"""Numerical kernel: deformed hyperbolic functions, Gegenbauer polynomials,
terminating Gauss sums and log-gamma.

The deformed functions are

    sinh_q(x) = (e^x - q e^-x) / 2,    cosh_q(x) = (e^x + q e^-x) / 2

with tanh_q, coth_q, sech_q, csch_q built from them.  They satisfy
cosh_q^2 - sinh_q^2 = q and cosh_q(x) = sqrt(q) cosh(x - ln(q)/2).
"""

import math

import numpy as np

from .errors import DomainError, ParameterError, PoleError

KINDS = ("sinh", "cosh", "tanh", "coth", "sech", "csch")

POLE_THRESHOLD = 1e-300
_CANCEL = 4.0 * np.finfo(float).eps


def _split(x, q):
    """Return (m, a, b) with sinh_q = e^m (a - b)/2 and cosh_q = e^m (a + b)/2.

    m = |x|, so e^-2m never overflows and the ratios below are finite for
    any finite x.
    """
    x = np.asarray(x, dtype=float)
    m = np.abs(x)
    t = np.exp(-2.0 * m)
    pos = x >= 0
    a = np.where(pos, 1.0, t)
    b = np.where(pos, q * t, q * np.ones_like(t))
    return m, a, b


def _evaluate(kind, x, q):
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    m, a, b = _split(x, q)
    if kind in ("coth", "csch"):
        den = a - b
        with np.errstate(over="ignore"):
            scaled = 0.5 * np.exp(m) * np.abs(den)
        bad = (np.abs(den) <= _CANCEL * (np.abs(a) + np.abs(b))) | (scaled < POLE_THRESHOLD)
        if np.any(bad):
            xs = np.asarray(x, dtype=float)[bad] if np.ndim(x) else x
            raise PoleError(f"{kind}_q pole: sinh_q vanishes at x={xs} (q={q})")
    with np.errstate(over="ignore"):
        if kind == "sinh":
            out = 0.5 * np.exp(m) * (a - b)
        elif kind == "cosh":
            out = 0.5 * np.exp(m) * (a + b)
        elif kind == "tanh":
            out = (a - b) / (a + b)
        elif kind == "coth":
            out = (a + b) / (a - b)
        elif kind == "sech":
            out = 2.0 * np.exp(-m) / (a + b)
        else:
            out = 2.0 * np.exp(-m) / (a - b)
    if np.ndim(out) == 0:
        return out.item()
    return out


def deformed_hyperbolic(kind, x, q):
    """Real q-deformed hyperbolic function ``kind`` at ``x`` (scalar or array).

    ``q`` may be an array broadcasting against ``x``.  Raises DomainError for
    q <= 0 and PoleError for coth/csch at x = ln(q)/2.
    """
    q = np.asarray(q, dtype=float)
    if not np.all(q > 0):
        raise DomainError(f"deformation q must be > 0, got {q}")
    if q.ndim == 0:
        q = float(q)
    return _evaluate(kind, x, q)


def deformed_hyperbolic_complex(kind, x, q):
    """Same formulas with complex deformation ``q`` (q != 0); complex output."""
    q = complex(q)
    if q == 0:
        raise DomainError("complex deformation q must be nonzero")
    return _evaluate(kind, x, q)


def sinh_q(x, q):
    return deformed_hyperbolic("sinh", x, q)


def cosh_q(x, q):
    return deformed_hyperbolic("cosh", x, q)


def tanh_q(x, q):
    return deformed_hyperbolic("tanh", x, q)


def coth_q(x, q):
    return deformed_hyperbolic("coth", x, q)


def sech_q(x, q):
    return deformed_hyperbolic("sech", x, q)


def csch_q(x, q):
    return deformed_hyperbolic("csch", x, q)


def gegenbauer(n, lam, x):
    """Gegenbauer polynomial C_n^lam(x) by forward three-term recurrence.

    Works elementwise on arrays and with any scalar type that supports
    arithmetic (float, complex, mpmath numbers).
    """
    if n < 0 or int(n) != n:
        raise ParameterError(f"degree n must be a nonnegative integer, got {n}")
    n = int(n)
    if isinstance(x, (list, tuple)):
        x = np.asarray(x)
    one = x * 0 + 1
    if n == 0:
        return one
    prev, cur = one, 2 * lam * x
    for m in range(2, n + 1):
        prev, cur = cur, (2 * x * (m + lam - 1) * cur - (m + 2 * lam - 2) * prev) / m
    return cur


def _exact_sum(n, b, c, z):
    # floats are dyadic rationals: carry integer numerators over a common
    # denominator and round once at the end
    bn, bd = float(b).as_integer_ratio()
    cn, cd = float(c).as_integer_ratio()
    zn, zd = float(z).as_integer_ratio()
    nums, dens = [1], [1]
    for j in range(n):
        nums.append(nums[-1] * (j - n) * (bn + j * bd) * zn * cd)
        dens.append(dens[-1] * (cn + j * cd) * (j + 1) * bd * zd)
    common = dens[-1]
    total = sum(num * (common // den) for num, den in zip(nums, dens))
    return total / common


def gauss_2f1_terminating(n, b, c, z):
    """2F1(-n, b; c; z) as the finite sum over j = 0..n.

    Real scalar arguments are summed exactly in rational arithmetic (the
    alternating terms cancel badly near zeros of the polynomial); arrays and
    complex or mpmath inputs use the plain floating sum.
    """
    if n < 0 or int(n) != n:
        raise ParameterError(f"n must be a nonnegative integer, got {n}")
    n = int(n)
    for j in range(n):
        if c + j == 0:
            raise ParameterError(f"Pochhammer (c)_j vanishes: c + {j} = 0 with c={c}")
    if all(isinstance(v, (int, float)) for v in (b, c, z)):
        return _exact_sum(n, b, c, z)
    term = z * 0 + 1.0
    total = term
    for j in range(n):
        term = term * (-n + j) * (b + j) / ((c + j) * (j + 1)) * z
        total = total + term
    return total


# Lanczos, g = 7, nine terms.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# zeta(k) - 1 for k = 2..30, used for ln Gamma(2 + z), |z| <= 1/2.
_ZETA_M1 = (
    0.64493406684822643647,
    0.2020569031595942854,
    0.082323233711138191516,
    0.036927755143369926331,
    0.017343061984449139715,
    0.0083492773819228268398,
    0.0040773561979443393787,
    0.0020083928260822144179,
    0.00099457512781808533715,
    0.0004941886041194645587,
    0.00024608655330804829864,
    0.00012271334757848914675,
    0.000061248135058704829259,
    0.000030588236307020493552,
    0.000015282259408651871733,
    7.6371976378997622736e-6,
    3.8172932649998398565e-6,
    1.9082127165539389257e-6,
    9.5396203387279611315e-7,
    4.7693298678780646312e-7,
    2.3845050272773299e-7,
    1.1921992596531107307e-7,
    5.9608189051259479612e-8,
    2.9803503514652280186e-8,
    1.4901554828365041235e-8,
    7.450711789835429492e-9,
    3.7253340247884570548e-9,
    1.8626597235130490064e-9,
    9.3132743241966818287e-10,
)
_EULER_GAMMA = 0.57721566490153286061


def _lgamma_near_two(z):
    # ln Gamma(2 + z) = (1 - gamma) z + sum_k (-1)^k (zeta(k) - 1) z^k / k
    total = 0.0
    power = -z
    for k, c in enumerate(_ZETA_M1, start=2):
        power *= -z
        total += c * power / k
    return (1.0 - _EULER_GAMMA) * z + total


def _lgamma_lanczos(x):
    x -= 1.0
    s = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        s += _LANCZOS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (x + 0.5) * math.log(t) - t + math.log(s)


def log_gamma(x):
    """ln Gamma(x) for real x > 0.

    Lanczos sum away from the zeros of ln Gamma; a zeta series around x = 1
    and x = 2 keeps the relative error small there.
    """
    x = float(x)
    if not x > 0 or not math.isfinite(x):
        raise DomainError(f"log_gamma requires finite x > 0, got {x}")
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    if x < 1.5:
        z = x - 1.0
        return _lgamma_near_two(z) - math.log1p(z)
    if x < 2.5:
        return _lgamma_near_two(x - 2.0)
    return _lgamma_lanczos(x)
