"""Bound-state energies from the implicit quantization condition.

For level n the energy E solves

    f_n(E) = E^2 - mu^2 c^4 + alpha^2 hbar^2 c^2 [(n + 1/2) - k(E)]^2 = 0,
    k(E)   = sqrt(1/4 + gamma(gamma+1)/q),
    gamma(gamma+1) = D (mu c^2 + E) / (alpha^2 hbar^2 c^2).

k depends on E, so each level is a one-dimensional root problem.  Only roots
with xi = k - n - 1/2 > 0 are normalizable; they live in the window
(max(-mu c^2, E*), mu c^2) where k(E*) = n + 1/2.
"""

import csv
import io
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import ConvergenceError, DomainError, MultipleRootsError, NoBoundState, ParameterError

SCAN_SUBDIVISIONS = 1024
MAX_SUBDIVISIONS = 16384
ROOT_TOL = 1e-12
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    energy: float
    k: float
    xi: float
    gamma_product: float
    e_tilde_sq: float

    def to_dict(self):
        return {"n": self.n, "E": self.energy, "k": self.k, "xi": self.xi}


@dataclass(frozen=True)
class Spectrum:
    params: object
    levels: tuple = field(default_factory=tuple)

    @property
    def count(self):
        return len(self.levels)

    @property
    def energies(self):
        return np.array([lv.energy for lv in self.levels])

    def to_dict(self):
        return {
            "params": self.params.to_dict(),
            "levels": [lv.to_dict() for lv in self.levels],
            "count": self.count,
        }

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "E", "k", "xi"])
        for lv in self.levels:
            writer.writerow([lv.n, repr(lv.energy), repr(lv.k), repr(lv.xi)])
        return buf.getvalue()


def gamma_product(params, E):
    """gamma(gamma+1) = D (mu c^2 + E) / (alpha^2 hbar^2 c^2)."""
    return params.D * (params.rest_energy + E) / (params.alpha * params.hbar_c) ** 2


def k_of_E(params, E):
    radicand = 0.25 + gamma_product(params, E) / params.q
    if np.any(np.asarray(radicand) < 0):
        raise DomainError(f"k(E) radicand is negative for E={E}")
    return np.sqrt(radicand) if np.ndim(radicand) else math.sqrt(radicand)


def level_residual(params, n, E):
    """f_n(E); units of energy squared (mu^2 c^4 in natural units)."""
    k = k_of_E(params, E)
    return E * E - params.rest_energy**2 + (params.alpha * params.hbar_c) ** 2 * ((n + 0.5) - k) ** 2


def existence_threshold(params, n):
    """E* with k(E*) = n + 1/2; level n binds iff E* < mu c^2."""
    if not params.D > 0:
        raise ParameterError("invariant violated: D > 0 for the existence threshold")
    scale = params.q * (params.alpha * params.hbar_c) ** 2
    return -params.rest_energy + scale * ((n + 0.5) ** 2 - 0.25) / params.D


def make_level(params, n, E):
    k = k_of_E(params, E)
    return EnergyLevel(
        n=int(n),
        energy=float(E),
        k=float(k),
        xi=float(k - n - 0.5),
        gamma_product=float(gamma_product(params, E)),
        e_tilde_sq=float((E * E - params.rest_energy**2) / params.hbar_c**2),
    )


def _sign_changes(params, n, lo, hi, m):
    nodes = lo + (hi - lo) * np.arange(1, m + 1) / m
    values = level_residual(params, n, nodes)
    # just right of lo the residual is negative: f(E*) = E*^2 - mu^2 c^4 < 0
    # for n >= 1, and f'(-mu c^2) = -2 mu c^2 for n = 0
    signs = np.concatenate(([-1.0], np.sign(values)))
    edges = np.concatenate(([lo], nodes))
    # a node that lands exactly on a root is bracketed by its nonzero neighbours
    keep = np.nonzero(signs)[0]
    signs, edges = signs[keep], edges[keep]
    idx = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    return [(edges[i], edges[i + 1]) for i in idx]


def solve_level(params, n, subdivisions=SCAN_SUBDIVISIONS):
    """Energy of level n; raises NoBoundState if it does not exist."""
    if int(n) != n or n < 0:
        raise ParameterError(f"invariant violated: n is a nonnegative integer (got {n})")
    n = int(n)
    if not params.D > 0:
        raise NoBoundState(n, "D = 0: k = 1/2 gives xi = -n <= 0")
    mc2 = params.rest_energy
    e_star = existence_threshold(params, n)
    if e_star >= mc2:
        raise NoBoundState(n, f"existence threshold {e_star!r} >= mu c^2")
    lo, hi = max(-mc2, e_star), mc2

    m = subdivisions
    while True:
        brackets = _sign_changes(params, n, lo, hi, m)
        if len(brackets) <= 1 or m >= MAX_SUBDIVISIONS:
            break
        m *= 2
    if len(brackets) > 1:
        raise MultipleRootsError(
            f"level n={n}: {len(brackets)} sign changes of the residual inside "
            f"({lo!r}, {hi!r}) at {m} subdivisions")
    if not brackets:
        raise ConvergenceError(f"level n={n}: no sign change inside ({lo!r}, {hi!r})")

    a, b = brackets[0]

    def f(E):
        return level_residual(params, n, E)

    if a == lo and not f(a) < 0:
        # the left edge is the spurious xi = 0 root (or E*): step inside
        while True:
            a = lo + 0.5 * (a - lo if a > lo else b - lo)
            if f(a) < 0:
                break
            if a - lo < 1e-300:
                raise ConvergenceError(f"level n={n}: cannot separate root from window edge")
    if f(b) == 0:
        E = b
    else:
        E = brentq(f, a, b, xtol=ROOT_TOL * mc2, rtol=4 * np.finfo(float).eps, maxiter=500)

    level = make_level(params, n, E)
    residual = abs(f(E))
    if not (level.xi > 0 and level.e_tilde_sq < 0 and residual <= RESIDUAL_TOL * mc2**2):
        raise ConvergenceError(
            f"level n={n}: root E={E!r} fails acceptance "
            f"(xi={level.xi!r}, e_tilde_sq={level.e_tilde_sq!r}, residual={residual!r})")
    return level


def level_count(params):
    """Number of n with n + 1/2 < k(mu c^2)."""
    if not params.D > 0:
        return 0
    k_top = k_of_E(params, params.rest_energy)
    return max(0, math.ceil(k_top - 0.5))


def enumerate_spectrum(params):
    """All bound levels n = 0, 1, ... of ``params``."""
    levels = []
    if params.D > 0:
        n = 0
        while existence_threshold(params, n) < params.rest_energy:
            try:
                levels.append(solve_level(params, n))
            except ConvergenceError as exc:
                raise type(exc)(f"while enumerating n={n}: {exc}") from exc
            n += 1
    energies = [lv.energy for lv in levels]
    if any(b <= a for a, b in zip(energies, energies[1:])):
        warnings.warn(f"energies not strictly increasing in n: {energies}", RuntimeWarning)
    return Spectrum(params=params, levels=tuple(levels))
