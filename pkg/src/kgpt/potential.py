"""The q-deformed modified Pöschl-Teller well and its special cases.

Scalar and vector potentials are taken equal:

    V(r) = -D / cosh_q^2(alpha r)                       (real family)
    V(r) = D q_c csch_{q_c}^2(alpha r),  q_c = e^{2i alpha eps}   (PT variant)

The coordinate lives on the full line r in (-inf, inf).  Since
cosh_q(x) = sqrt(q) cosh(x - ln(q)/2), the real family is the undeformed
well of depth D/q shifted to r0 = ln(q)/(2 alpha).
"""

import csv
import io
import math
import numbers
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import ParameterError
from .special_functions import (
    deformed_hyperbolic,
    deformed_hyperbolic_complex,
)


def _require(ok, predicate):
    if not ok:
        raise ParameterError(f"invariant violated: {predicate}")


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs of one problem; natural units hbar = c = 1 by default."""

    mu: float = 1.0
    alpha: float = 1.0
    D: float = 1.0
    q: float = 1.0
    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        for name in ("mu", "alpha", "D", "q", "hbar", "c"):
            value = getattr(self, name)
            _require(isinstance(value, numbers.Real) and math.isfinite(value),
                     f"{name} is a finite real number (got {value!r})")
            object.__setattr__(self, name, float(value))
        _require(self.mu > 0, f"mu > 0 (got {self.mu})")
        _require(self.alpha > 0, f"alpha > 0 (got {self.alpha})")
        _require(self.q > 0, f"q > 0 (got {self.q})")
        _require(self.D >= 0, f"D >= 0 (got {self.D})")
        _require(self.hbar > 0, f"hbar > 0 (got {self.hbar})")
        _require(self.c > 0, f"c > 0 (got {self.c})")

    @property
    def rest_energy(self):
        return self.mu * self.c**2

    @property
    def hbar_c(self):
        return self.hbar * self.c

    @property
    def center(self):
        """Location of the well bottom, ln(q)/(2 alpha)."""
        return math.log(self.q) / (2.0 * self.alpha)

    def to_dict(self):
        return {"mu": self.mu, "alpha": self.alpha, "D": self.D, "q": self.q,
                "hbar": self.hbar, "c": self.c}


@dataclass(frozen=True)
class PTParams:
    """PT-symmetric variant: complex deformation q_c = exp(2i alpha epsilon)."""

    D: float
    alpha: float
    epsilon: float
    mu: float = 1.0
    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        _require(self.D > 0, f"D > 0 (got {self.D})")
        _require(self.alpha > 0, f"alpha > 0 (got {self.alpha})")
        _require(abs(self.epsilon) > math.pi / 4, f"|epsilon| > pi/4 (got {self.epsilon})")
        _require(self.mu > 0 and self.hbar > 0 and self.c > 0, "mu, hbar, c > 0")

    @property
    def q_c(self):
        return complex(np.exp(2j * self.alpha * self.epsilon))

    @property
    def rest_energy(self):
        return self.mu * self.c**2

    @property
    def hbar_c(self):
        return self.hbar * self.c

    def quantization_params(self):
        """Real parameters with the same quantization condition.

        The PT well gives k = sqrt(1/4 + D(E + mu c^2)/(alpha^2 hbar^2 c^2)),
        which is exactly the undeformed (q = 1) real well of depth D.
        """
        return ModelParams(mu=self.mu, alpha=self.alpha, D=self.D, q=1.0,
                           hbar=self.hbar, c=self.c)

    def to_dict(self):
        q_c = self.q_c
        return {"D": self.D, "alpha": self.alpha, "epsilon": self.epsilon,
                "mu": self.mu, "hbar": self.hbar, "c": self.c,
                "q_c": [q_c.real, q_c.imag]}


# Special cases -------------------------------------------------------------

@dataclass(frozen=True)
class Reflectionless:
    lam: int

    def __post_init__(self):
        _require(float(self.lam).is_integer() and self.lam >= 1,
                 f"reflectionless lambda is an integer >= 1 (got {self.lam})")


@dataclass(frozen=True)
class QSymmetric:
    lam: float
    q: float

    def __post_init__(self):
        _require(self.lam**2 > 0.25, f"lambda^2 > 1/4 (got lambda={self.lam})")
        _require(self.q > 0, f"q > 0 (got {self.q})")


@dataclass(frozen=True)
class Symmetric:
    lam: float

    def __post_init__(self):
        _require(self.lam**2 > 0.25, f"lambda^2 > 1/4 (got lambda={self.lam})")


@dataclass(frozen=True)
class PTSymmetric:
    D: float
    alpha: float
    epsilon: float

    def __post_init__(self):
        _require(self.D > 0, f"D > 0 (got {self.D})")
        _require(self.alpha > 0, f"alpha > 0 (got {self.alpha})")
        _require(abs(self.epsilon) > math.pi / 4, f"|epsilon| > pi/4 (got {self.epsilon})")


def from_special_case(case, mu=1.0, hbar=1.0, c=1.0):
    """Map a special case onto ModelParams (or PTParams for the PT variant)."""
    if isinstance(case, Reflectionless):
        lam = int(case.lam)
        return ModelParams(mu=mu, alpha=1.0, D=0.5 * lam * (lam + 1), q=1.0, hbar=hbar, c=c)
    if isinstance(case, QSymmetric):
        return ModelParams(mu=mu, alpha=1.0, D=case.lam**2 - 0.25, q=case.q, hbar=hbar, c=c)
    if isinstance(case, Symmetric):
        return ModelParams(mu=mu, alpha=1.0, D=case.lam**2 - 0.25, q=1.0, hbar=hbar, c=c)
    if isinstance(case, PTSymmetric):
        return PTParams(D=case.D, alpha=case.alpha, epsilon=case.epsilon, mu=mu, hbar=hbar, c=c)
    raise ParameterError(f"unknown special case {case!r}")


# Evaluation ----------------------------------------------------------------

def potential_value(params, r):
    """V(r) for ModelParams (real) or PTParams (complex)."""
    if isinstance(params, PTParams):
        csch = deformed_hyperbolic_complex("csch", params.alpha * np.asarray(r, dtype=float), params.q_c)
        return params.D * params.q_c * csch**2
    sech = deformed_hyperbolic("sech", params.alpha * np.asarray(r, dtype=float), params.q)
    return -params.D * sech**2


def potential_minimum(params, half_line=False):
    """(r0, v_min) of the real well.

    With ``half_line`` the search is restricted to r >= 0, where for q < 1
    the minimum sits at the origin with value -4D/(1+q)^2.
    """
    if half_line and params.q < 1:
        return 0.0, -4.0 * params.D / (1.0 + params.q) ** 2
    return params.center, -params.D / params.q


@dataclass
class ScanCurve:
    q: float
    r: np.ndarray
    v: np.ndarray
    r_min: float = field(default=math.nan)
    v_min: float = field(default=math.nan)


def _locate_minimum(params, r, v):
    # V' = 2 D alpha sinh_q / cosh_q^3, so the stationary point is the zero
    # of tanh_q(alpha r) inside the bracket around the sampled minimum.
    i = int(np.argmin(v))
    lo, hi = r[max(i - 1, 0)], r[min(i + 1, len(r) - 1)]

    def slope(x):
        return deformed_hyperbolic("tanh", params.alpha * x, params.q)

    f_lo, f_hi = slope(lo), slope(hi)
    if f_lo == 0:
        x = lo
    elif f_hi == 0:
        x = hi
    elif f_lo * f_hi < 0:
        x = brentq(slope, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    else:
        x = r[i]
    return float(x), float(potential_value(params, x))


def potential_scan(q_list, D, alpha, r_min, r_max, n_points):
    """Sample V(r) on a uniform grid for each deformation in ``q_list``."""
    if not r_min < r_max:
        raise ParameterError(f"invariant violated: r_min < r_max (got {r_min}, {r_max})")
    if int(n_points) != n_points or n_points < 2:
        raise ParameterError(f"invariant violated: n_points >= 2 (got {n_points})")
    r = np.linspace(r_min, r_max, int(n_points))
    curves = []
    for q in q_list:
        params = ModelParams(D=D, alpha=alpha, q=q)
        v = np.asarray(potential_value(params, r), dtype=float)
        r_lo, v_lo = _locate_minimum(params, r, v) if D > 0 else (math.nan, math.nan)
        curves.append(ScanCurve(q=float(q), r=r, v=v, r_min=r_lo, v_min=v_lo))
    return curves


def scan_to_csv(curves):
    """CSV text: column r, then one V column per q."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["r"] + [f"V_q={c.q!r}" for c in curves])
    for i, r in enumerate(curves[0].r):
        writer.writerow([repr(float(r))] + [repr(float(c.v[i])) for c in curves])
    return buf.getvalue()


def scan_to_json(curves, D, alpha):
    return {
        "D": float(D),
        "alpha": float(alpha),
        "curves": [
            {
                "q": c.q,
                "minimum": {"r": c.r_min, "v": c.v_min},
                "samples": [{"r": float(r), "v": float(v)} for r, v in zip(c.r, c.v)],
            }
            for c in curves
        ],
    }
