"""Finite-difference check of the closed-form spectrum.

The radial equation is discretized as the symmetric tridiagonal operator

    A(E) = -d^2/dx^2 - [D (mu c^2 + E) / (hbar c)^2] sech_q^2(alpha x)

with Dirichlet walls at +-L.  Its n-th eigenvalue eps_n(E) must equal
(E^2 - mu^2 c^4)/(hbar c)^2, and that self-consistency condition is solved
by scan plus bisection.  Nothing here uses the closed-form spectrum except
compare_level, which reports the difference.
"""

import math
from dataclasses import dataclass, field

import numba
import numpy as np
from scipy.linalg import solve_banded

from .errors import ConvergenceError, MultipleRootsError, NoBoundState, ParameterError
from .special_functions import deformed_hyperbolic
from .spectrum import solve_level
from .wavefunction import GridSpec, count_sign_changes, default_grid, make_state

EIG_TOL = 1e-12
ENERGY_TOL = 1e-10
SCAN_POINTS = 64
MAX_SCAN_POINTS = 1024


@dataclass(frozen=True)
class TridiagonalOperator:
    diagonal: np.ndarray
    off_diagonal: np.ndarray
    grid: GridSpec

    def __post_init__(self):
        m = self.grid.points - 2
        if len(self.diagonal) != m or len(self.off_diagonal) != m - 1:
            raise ParameterError(
                f"invariant violated: {m} interior unknowns need diagonal/off-diagonal of "
                f"length {m}/{m - 1}, got {len(self.diagonal)}/{len(self.off_diagonal)}")

    @property
    def size(self):
        return len(self.diagonal)

    def dense(self):
        return (np.diag(self.diagonal) + np.diag(self.off_diagonal, 1)
                + np.diag(self.off_diagonal, -1))


def operator_from_potential(v_eff, grid):
    """-d^2/dx^2 + v_eff on the interior nodes of ``grid``."""
    h = grid.spacing
    x = grid.nodes()[1:-1]
    diag = 2.0 / h**2 + np.asarray(v_eff(x), dtype=float)
    off = np.full(len(x) - 1, -1.0 / h**2)
    return TridiagonalOperator(diag, off, grid)


def discretize_operator(params, E, grid):
    coupling = params.D * (params.rest_energy + E) / params.hbar_c**2

    def v_eff(x):
        return -coupling * deformed_hyperbolic("sech", params.alpha * x, params.q) ** 2

    return operator_from_potential(v_eff, grid)


@numba.njit(cache=True)
def _count_below(d, e2, sigma):
    # Sturm count: number of eigenvalues < sigma (LDL^T pivots)
    count = 0
    piv = d[0] - sigma
    if piv < 0.0:
        count += 1
    for i in range(1, d.shape[0]):
        if piv == 0.0:
            piv = 1e-300
        piv = d[i] - sigma - e2[i - 1] / piv
        if piv < 0.0:
            count += 1
    return count


@numba.njit(cache=True)
def _bisect_eigenvalue(d, e2, n, lo, hi, tol):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if _count_below(d, e2, mid) > n:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _gershgorin(op):
    e = np.abs(op.off_diagonal)
    radius = np.zeros(op.size)
    radius[:-1] += e
    radius[1:] += e
    return float(np.min(op.diagonal - radius)), float(np.max(op.diagonal + radius))


def nth_eigenvalue(op, n, tol=EIG_TOL):
    """(n+1)-th smallest eigenvalue by Sturm-sequence bisection."""
    if int(n) != n or not 0 <= n < op.size:
        raise IndexError(f"eigenvalue index {n} out of range for {op.size} unknowns")
    lo, hi = _gershgorin(op)
    d = np.ascontiguousarray(op.diagonal, dtype=float)
    e2 = np.ascontiguousarray(op.off_diagonal, dtype=float) ** 2
    return float(_bisect_eigenvalue(d, e2, int(n), lo - 1.0, hi + 1.0, tol))


def nth_eigenpair(op, n):
    """Eigenvalue and unit (discrete L2) eigenvector via inverse iteration."""
    value = nth_eigenvalue(op, n)
    m = op.size
    shift = value + 1e-10 * max(1.0, abs(value))
    ab = np.zeros((3, m))
    ab[0, 1:] = op.off_diagonal
    ab[1, :] = op.diagonal - shift
    ab[2, :-1] = op.off_diagonal
    vec = np.ones(m) / math.sqrt(m)
    for _ in range(4):
        vec = solve_banded((1, 1), ab, vec)
        vec /= np.linalg.norm(vec)
    vec /= math.sqrt(op.grid.spacing)
    full = np.concatenate(([0.0], vec, [0.0]))
    return value, full


def _g(params, n, E, grid):
    eps = nth_eigenvalue(discretize_operator(params, E, grid), n)
    return eps - (E * E - params.rest_energy**2) / params.hbar_c**2


def self_consistent_energy(params, n, grid, scan_points=SCAN_POINTS):
    """Root of eps_n(E) = (E^2 - mu^2 c^4)/(hbar c)^2 inside (-mu c^2, mu c^2)."""
    if int(n) != n or n < 0:
        raise ParameterError(f"invariant violated: n is a nonnegative integer (got {n})")
    if n >= grid.points - 2:
        raise NoBoundState(n, "more levels requested than grid unknowns")
    mc2 = params.rest_energy
    # probes just inside both edges catch roots squeezed against +-mu c^2
    edge = mc2 * (1.0 - 1e-12)
    m = scan_points
    while True:
        nodes = np.concatenate(([-edge], -mc2 + 2.0 * mc2 * np.arange(1, m) / m, [edge]))
        values = np.array([_g(params, n, E, grid) for E in nodes])
        idx = np.nonzero(values[:-1] * values[1:] <= 0)[0]
        if len(idx) <= 1 or m >= MAX_SCAN_POINTS:
            break
        m *= 2
    if len(idx) > 1:
        raise MultipleRootsError(
            f"oracle n={n}: {len(idx)} sign changes of the self-consistency function")
    if len(idx) == 0:
        raise NoBoundState(n, "self-consistency function has no sign change")
    i = idx[0]
    a, b, fa = nodes[i], nodes[i + 1], values[i]
    if fa == 0:
        return float(a)
    for _ in range(200):
        if b - a <= ENERGY_TOL * mc2:
            break
        mid = 0.5 * (a + b)
        fm = _g(params, n, mid, grid)
        if fm == 0:
            return float(mid)
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
    else:
        raise ConvergenceError(f"oracle n={n}: bisection did not shrink the bracket")
    return float(0.5 * (a + b))


@dataclass
class OracleReport:
    n: int
    e_analytic: float | None
    e_numeric: float | None
    delta: float | None
    grids_used: list = field(default_factory=list)
    extrapolated: bool = False
    numeric_by_grid: list = field(default_factory=list)
    monotone: bool = True

    @property
    def bound(self):
        return self.e_analytic is not None or self.e_numeric is not None

    def to_dict(self):
        return {
            "n": self.n,
            "e_analytic": self.e_analytic,
            "e_numeric": self.e_numeric,
            "delta": self.delta,
            "extrapolated": self.extrapolated,
            "monotone": self.monotone,
            "grids": [dict(g.to_dict(), e_numeric=e) for g, e in zip(self.grids_used, self.numeric_by_grid)],
        }


def richardson(coarse, fine, order=2):
    """Cancel the leading h^order error of two runs with spacing ratio 2."""
    return fine + (fine - coarse) / (2**order - 1)


def default_grids(params, n, points=(2001, 4001)):
    """Coarse/fine pair on the default interval, sized from the analytic xi estimate."""
    try:
        xi = solve_level(params, n).xi
    except NoBoundState:
        xi = None
    base = default_grid(params, xi)
    return [GridSpec(base.half_width, p) for p in points]


def compare_level(params, n, grids=None):
    """Self-consistent energies per grid, extrapolated and compared with the closed form."""
    if grids is None:
        grids = default_grids(params, n)
    if len(grids) < 2:
        raise ParameterError("invariant violated: at least two grids are needed")
    for g0, g1 in zip(grids, grids[1:]):
        if not math.isclose(g0.spacing, 2.0 * g1.spacing, rel_tol=1e-9):
            raise ParameterError("invariant violated: successive grids halve the spacing")

    try:
        e_analytic = solve_level(params, n).energy
    except NoBoundState:
        e_analytic = None

    numeric = []
    for g in grids:
        try:
            numeric.append(self_consistent_energy(params, n, g))
        except NoBoundState:
            numeric.append(None)

    report = OracleReport(n=n, e_analytic=e_analytic, e_numeric=None, delta=None,
                          grids_used=list(grids), numeric_by_grid=numeric)
    if any(e is None for e in numeric):
        if not all(e is None for e in numeric):
            report.monotone = False
        return report
    report.e_numeric = richardson(numeric[-2], numeric[-1])
    report.extrapolated = True
    diffs = np.diff(numeric)
    if len(numeric) >= 3:
        report.monotone = bool(np.all(np.sign(diffs) == np.sign(diffs[0]))
                               and np.all(np.abs(diffs[1:]) < np.abs(diffs[:-1])))
    if e_analytic is not None:
        report.delta = abs(e_analytic - report.e_numeric)
    return report


def compare_wavefunction(params, n, grid):
    """Max pointwise gap between the oracle eigenvector and the closed form.

    Both are unit-normalized on the grid and sign-aligned; also returns the
    sign-change count of the eigenvector.
    """
    e_num = self_consistent_energy(params, n, grid)
    _, vec = nth_eigenpair(discretize_operator(params, e_num, grid), n)
    state = make_state(params, solve_level(params, n))
    psi = np.asarray(state(grid.nodes()))
    psi = psi / math.sqrt(np.sum(psi**2) * grid.spacing)
    if np.dot(psi, vec) < 0:
        vec = -vec
    return float(np.max(np.abs(psi - vec))), count_sign_changes(vec, rel_floor=1e-10)
