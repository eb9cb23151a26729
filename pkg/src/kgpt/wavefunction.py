"""Normalized closed-form eigenfunctions and their numerical checks.

    Psi_n(r) = N (q sech_q^2(alpha r))^{xi/2} C_n^{k-n}(tanh_q(alpha r)),
    N^2 = alpha n! Gamma(k-n) Gamma(2k-2n) / (sqrt(pi) Gamma(k-n-1/2) Gamma(2k-n)),

with xi = k - n - 1/2.  Non-integer factorials are Gamma(z + 1), evaluated in
log space.
"""

import csv
import io
import math
import warnings
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import integrate

from .errors import ConvergenceError, DomainError, ParameterError
from .potential import ModelParams, PTParams, potential_value
from .special_functions import (
    deformed_hyperbolic,
    deformed_hyperbolic_complex,
    gegenbauer,
    log_gamma,
)

QUAD_TOL = 1e-10
RESIDUAL_DPS = 30


@dataclass(frozen=True)
class GridSpec:
    """Uniform symmetric grid on [-L, L] with an odd number of points."""

    half_width: float
    points: int

    def __post_init__(self):
        if not self.half_width > 0:
            raise ParameterError(f"invariant violated: half_width > 0 (got {self.half_width})")
        if int(self.points) != self.points or self.points < 101 or self.points % 2 == 0:
            raise ParameterError(f"invariant violated: points is an odd integer >= 101 (got {self.points})")
        object.__setattr__(self, "points", int(self.points))
        object.__setattr__(self, "half_width", float(self.half_width))

    @classmethod
    def from_spacing(cls, half_width, spacing):
        """Grid with exactly ``spacing``; L is rounded up to a whole number of steps."""
        steps = math.ceil(half_width / spacing - 1e-9)
        return cls(steps * spacing, 2 * steps + 1)

    @property
    def spacing(self):
        return 2.0 * self.half_width / (self.points - 1)

    def nodes(self):
        return np.linspace(-self.half_width, self.half_width, self.points)

    def halved(self):
        """Same interval, half the spacing."""
        return GridSpec(self.half_width, 2 * self.points - 1)

    def decays(self, params, rel=1e-12):
        """True when |V(+-L)| < rel * D."""
        v = np.abs(potential_value(params, np.array([-self.half_width, self.half_width])))
        return bool(np.all(v < rel * params.D)) if params.D > 0 else True

    def to_dict(self):
        return {"half_width": self.half_width, "points": self.points, "spacing": self.spacing}


def decay_half_width(params, rel=1e-12):
    """Smallest L with |V(+-L)| < rel * D for the real family."""
    target = 1.0 / math.sqrt(rel * params.q)
    return (abs(params.center) * params.alpha + math.acosh(max(target, 1.0))) / params.alpha


def default_grid(params, xi=None, points=4001):
    """Grid wide enough for both the potential and a state decaying as e^{-alpha xi |r|}."""
    half_width = max(10.0 / params.alpha, decay_half_width(params) * 1.0000001)
    if xi is not None and xi > 0:
        half_width = max(half_width, 10.0 / (params.alpha * xi) + abs(params.center))
    return GridSpec(half_width, points)


# Normalization ------------------------------------------------------------

def normalization_constant(params, level):
    """N from the Gegenbauer weighted-norm integral, in log-gamma form."""
    n, k = level.n, level.k
    lam = k - n
    if not lam - 0.5 > 0:
        raise DomainError(f"normalization needs k - n - 1/2 > 0 (got {lam - 0.5!r})")
    log_n_sq = (
        math.log(params.alpha)
        + log_gamma(n + 1.0)
        + log_gamma(lam)
        + log_gamma(2.0 * lam)
        - 0.5 * math.log(math.pi)
        - log_gamma(lam - 0.5)
        - log_gamma(2.0 * lam + n)
    )
    return math.exp(0.5 * log_n_sq)


@dataclass(frozen=True)
class NormalizedState:
    params: ModelParams
    level: object
    norm_constant: float

    def __post_init__(self):
        if not self.norm_constant > 0:
            raise ParameterError(f"invariant violated: norm_constant > 0 (got {self.norm_constant})")
        if not self.gegenbauer_index > 0.5:
            raise ParameterError(
                f"invariant violated: Gegenbauer index k - n = xi + 1/2 > 1/2 (got {self.gegenbauer_index})")

    @property
    def gegenbauer_index(self):
        return self.level.k - self.level.n

    def __call__(self, r):
        return wavefunction_value(self, r)

    def coefficient(self, r):
        """Bracket of the radial equation, U'' + coefficient(r) U = 0."""
        p, lv = self.params, self.level
        sech = deformed_hyperbolic("sech", p.alpha * np.asarray(r, dtype=float), p.q)
        return lv.e_tilde_sq + p.D * (p.rest_energy + lv.energy) / p.hbar_c**2 * sech**2

    def _mp_functions(self):
        p, lv = self.params, self.level
        q = mpmath.mpf(p.q)
        alpha = mpmath.mpf(p.alpha)
        xi = mpmath.mpf(lv.xi)
        lam = mpmath.mpf(lv.k) - lv.n
        norm = mpmath.mpf(self.norm_constant)
        energy = mpmath.mpf(lv.energy)
        mc2 = mpmath.mpf(p.rest_energy)
        hc2 = mpmath.mpf(p.hbar_c) ** 2
        e_tilde_sq = (energy**2 - mc2**2) / hc2
        coupling = mpmath.mpf(p.D) * (mc2 + energy) / hc2
        sqrt_q = mpmath.sqrt(q)

        def psi(r):
            x = alpha * r
            ex, emx = mpmath.exp(x), mpmath.exp(-x)
            ch = (ex + q * emx) / 2
            sh = (ex - q * emx) / 2
            return norm * (sqrt_q / ch) ** xi * gegenbauer(lv.n, lam, sh / ch)

        def coef(r):
            x = alpha * r
            ch = (mpmath.exp(x) + q * mpmath.exp(-x)) / 2
            return e_tilde_sq + coupling / ch**2

        return psi, coef


def make_state(params, level):
    return NormalizedState(params, level, normalization_constant(params, level))


def wavefunction_value(state, r):
    p, lv = state.params, state.level
    x = p.alpha * np.asarray(r, dtype=float)
    sech = deformed_hyperbolic("sech", x, p.q)
    tanh = deformed_hyperbolic("tanh", x, p.q)
    amplitude = np.power(math.sqrt(p.q) * sech, lv.xi)
    out = state.norm_constant * amplitude * gegenbauer(lv.n, state.gegenbauer_index, tanh)
    return out.item() if np.ndim(out) == 0 else out


# PT-symmetric variant ------------------------------------------------------

@dataclass(frozen=True)
class PTState:
    """Closed-form eigenfunction of the PT-symmetric well (complex valued)."""

    params: PTParams
    level: object
    norm_constant: float

    @property
    def gegenbauer_index(self):
        return self.level.k - self.level.n

    def __call__(self, r):
        return pt_wavefunction_value(self.params, self.level, r, self.norm_constant)

    def coefficient(self, r):
        p, lv = self.params, self.level
        v = potential_value(p, r)
        return lv.e_tilde_sq - (p.rest_energy + lv.energy) / p.hbar_c**2 * v

    def _mp_functions(self):
        p, lv = self.params, self.level
        q_c = mpmath.mpc(p.q_c.real, p.q_c.imag)
        alpha = mpmath.mpf(p.alpha)
        half_xi = mpmath.mpf(lv.xi) / 2
        lam = mpmath.mpf(lv.k) - lv.n
        prefactor = mpmath.mpf(self.norm_constant) * mpmath.power(-q_c, half_xi)
        energy = mpmath.mpf(lv.energy)
        mc2 = mpmath.mpf(p.rest_energy)
        hc2 = mpmath.mpf(p.hbar_c) ** 2
        e_tilde_sq = (energy**2 - mc2**2) / hc2
        coupling = mpmath.mpf(p.D) * q_c * (mc2 + energy) / hc2

        def psi(r):
            x = alpha * r
            ex, emx = mpmath.exp(x), mpmath.exp(-x)
            sh = (ex - q_c * emx) / 2
            ch = (ex + q_c * emx) / 2
            return prefactor * mpmath.power(1 / sh**2, half_xi) * gegenbauer(lv.n, lam, ch / sh)

        def coef(r):
            x = alpha * r
            sh = (mpmath.exp(x) - q_c * mpmath.exp(-x)) / 2
            return e_tilde_sq - coupling / sh**2

        return psi, coef


def make_pt_state(params, level):
    # N^{q_c} has the same form as the real-family constant
    return PTState(params, level, normalization_constant(params.quantization_params(), level))


def pt_wavefunction_value(params, level, r, norm_constant=None):
    """Psi(r) = N (-q_c)^{xi/2} [csch_{q_c}^2]^{xi/2} C_n^{k-n}(coth_{q_c}); principal branch."""
    if norm_constant is None:
        norm_constant = normalization_constant(params.quantization_params(), level)
    x = params.alpha * np.asarray(r, dtype=float)
    csch = deformed_hyperbolic_complex("csch", x, params.q_c)
    coth = deformed_hyperbolic_complex("coth", x, params.q_c)
    half_xi = level.xi / 2.0
    out = (norm_constant * np.power(complex(-params.q_c), half_xi)
           * np.power(csch**2 + 0j, half_xi) * gegenbauer(level.n, level.k - level.n, coth))
    return out.item() if np.ndim(out) == 0 else out


# Sampling and checks -------------------------------------------------------

def sample_wavefunction(state, grid):
    r = grid.nodes()
    return r, state(r)


def samples_to_csv(r, psi):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    is_complex = np.iscomplexobj(psi)
    writer.writerow(["r", "psi_real", "psi_imag"] if is_complex else ["r", "psi_real"])
    for x, y in zip(r, psi):
        row = [repr(float(x)), repr(float(np.real(y)))]
        if is_complex:
            row.append(repr(float(np.imag(y))))
        writer.writerow(row)
    return buf.getvalue()


def samples_to_json(r, psi):
    samples = []
    for x, y in zip(r, psi):
        item = {"r": float(x), "psi_real": float(np.real(y))}
        if np.iscomplexobj(psi):
            item["psi_imag"] = float(np.imag(y))
        samples.append(item)
    return samples


def count_sign_changes(values, rel_floor=0.0):
    """Sign changes of a real sequence, skipping entries below rel_floor * max|values|."""
    values = np.asarray(values, dtype=float)
    floor = rel_floor * np.max(np.abs(values))
    signs = np.sign(values[np.abs(values) > floor])
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def norm_quadrature(state):
    """Integral of |Psi|^2 over the real line.

    Substituting r = r0 + artanh(t)/alpha maps the line onto (-1, 1); the
    two halves are integrated adaptively.
    """
    p = state.params
    r0 = p.center

    def integrand(t):
        r = r0 + math.atanh(t) / p.alpha
        return abs(state(r)) ** 2 / (p.alpha * (1.0 - t * t))

    total, error = 0.0, 0.0
    for a, b in ((-1.0, 0.0), (0.0, 1.0)):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            value, err = integrate.quad(integrand, a, b, epsabs=1e-13, epsrel=1e-13, limit=500)
        total += value
        error += err
    if not error <= QUAD_TOL * max(1.0, total):
        raise ConvergenceError(f"norm quadrature stalled: estimate {total!r} with error {error!r}")
    return total


def ode_residual_max(state, grid, dps=RESIDUAL_DPS):
    """Max scaled residual |U'' + coefficient * U| of the closed form on ``grid``.

    U'' uses the five-point O(h^4) stencil.  With ``dps`` set the stencil is
    evaluated in mpmath at that many digits so rounding does not mask the
    truncation error at small h; ``dps=None`` stays in double precision.
    """
    r = grid.nodes()
    h = grid.spacing
    if dps is None:
        u = np.asarray(state(r))
        d2 = (-u[:-4] + 16 * u[1:-3] - 30 * u[2:-2] + 16 * u[3:-1] - u[4:]) / (12 * h * h)
        coef = np.asarray(state.coefficient(r[2:-2]))
        res = np.abs(d2 + coef * u[2:-2])
        return float(np.max(res) / (np.max(np.abs(u)) * np.max(np.abs(coef))))

    with mpmath.workdps(dps):
        psi, coef_fn = state._mp_functions()
        L = mpmath.mpf(grid.half_width)
        hm = 2 * L / (grid.points - 1)
        xs = [-L + i * hm for i in range(grid.points)]
        u = [psi(x) for x in xs]
        inv = 1 / (12 * hm * hm)
        worst = mpmath.mpf(0)
        coef_max = mpmath.mpf(0)
        for i in range(2, grid.points - 2):
            d2 = (-u[i - 2] + 16 * u[i - 1] - 30 * u[i] + 16 * u[i + 1] - u[i + 2]) * inv
            c = coef_fn(xs[i])
            worst = max(worst, abs(d2 + c * u[i]))
            coef_max = max(coef_max, abs(c))
        u_max = max(abs(v) for v in u)
        return float(worst / (u_max * coef_max))
