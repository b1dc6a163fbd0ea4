"""Optimization sweeps: the (r, u) distance landscape, optimal angles
theta*(alpha), domain classification, and the improved sequential angle."""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .cyclic import CyclicElement, lmr_coeffs, r_theta_coeffs
from .distances import closed_form_rotation_distance

DOMAIN_TOL = 1e-10


@dataclass
class LandscapePoint:
    r: float
    u: float
    value: float


class Domain(Enum):
    A = "A"
    B = "B"
    BOUNDARY = "Boundary"


def landscape_value(n: int, r, u):
    """Reflection-target diamond distance at ct_0 = e^{i eta}, mean tail
    phase r e^{i gamma}, u = eta - gamma. Vectorized over r and u."""
    r = np.asarray(r, dtype=float)
    u = np.asarray(u, dtype=float)
    c0sq = (1.0 + 2.0 * n * r * np.cos(u) + (n * r) ** 2) / (n + 1) ** 2
    gap = np.sqrt((n + 2 + n * r * np.cos(u)) ** 2 + (n * r * np.sin(u)) ** 2) / (n + 1)
    A = 1.0 - c0sq
    value_b = 2.0 * gap**2 / (2.0 * gap + c0sq - 1.0)
    return np.where(gap > A, value_b, 2.0 * A)


def landscape_point(n: int, r: float, u: float) -> LandscapePoint:
    return LandscapePoint(float(r), float(u), float(landscape_value(n, r, u)))


def landscape(n: int, grid_r: int = 513, grid_u: int = 513) -> np.ndarray:
    """Record array (r, u, value) over the [0,1] x [0,2pi) grid, row-major in r."""
    rs = np.linspace(0.0, 1.0, grid_r)
    us = np.linspace(0.0, 2.0 * np.pi, grid_u)
    R, U = np.meshgrid(rs, us, indexing="ij")
    V = landscape_value(n, R, U)
    out = np.zeros(R.size, dtype=[("r", float), ("u", float), ("value", float)])
    out["r"] = R.reshape(-1)
    out["u"] = U.reshape(-1)
    out["value"] = V.reshape(-1)
    return out


def critical_u(n: int, r: float) -> float:
    """Minimizing u along fixed r in the interior domain."""
    arg = (n**3 * (r**3 - 3 * r) - 12 * n**2 * r - 12 * n * r) / (2.0 * (n + 2) ** 3)
    return float(np.arccos(np.clip(arg, -1.0, 1.0)))


def boundary_curve(n: int, num: int = 257) -> np.ndarray:
    """Domain A/B boundary points (r, u), bisected along r for each u."""

    def margin(r, u):
        c0sq = (1.0 + 2.0 * n * r * np.cos(u) + (n * r) ** 2) / (n + 1) ** 2
        gap = np.sqrt((n + 2 + n * r * np.cos(u)) ** 2 + (n * r * np.sin(u)) ** 2) / (n + 1)
        return (1.0 - c0sq) - gap

    pts = []
    for u in np.linspace(0.0, 2.0 * np.pi, num):
        lo, hi = 0.0, 1.0
        if margin(lo, u) * margin(hi, u) > 0:
            continue
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if margin(lo, u) * margin(mid, u) <= 0:
                hi = mid
            else:
                lo = mid
        pts.append((0.5 * (lo + hi), u))
    return np.array(pts, dtype=float)


def _golden_min(f, a, b, tol):
    gr = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - gr * (b - a)
    d = a + gr * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = f(d)
    mid = 0.5 * (a + b)
    return mid, f(mid)


def theta_star(n: int, alpha: float, tolerance: float = 1e-10) -> float:
    """argmin over theta in [0, pi] of the rotation distance.

    Golden section with three bracketing restarts; the objective is unimodal
    per bracket on every inspected landscape but no global proof exists, so
    the brackets guard against a missed basin.
    """
    objective = lambda th: closed_form_rotation_distance(r_theta_coeffs(n, th), alpha)
    best = None
    for a, b in ((0.0, np.pi / 3), (np.pi / 3, 2 * np.pi / 3), (2 * np.pi / 3, np.pi)):
        x, v = _golden_min(objective, a, b, tolerance)
        if best is None or v < best[1]:
            best = (x, v)
    return float(best[0])


def domain_classify(e: CyclicElement, alpha: float) -> Domain:
    c0 = e.coeffs[0]
    ct0 = np.sum(e.coeffs)
    margin = (1.0 - abs(c0) ** 2) - abs(ct0 * np.conj(c0) - np.exp(1j * alpha))
    if margin >= DOMAIN_TOL:
        return Domain.A
    if margin <= -DOMAIN_TOL:
        return Domain.B
    return Domain.BOUNDARY


def lmr_equal_angle_distance(n: int, alpha: float, theta: float | None = None) -> float:
    """Distance of the sequential channel with all angles equal."""
    theta = alpha / n if theta is None else theta
    return closed_form_rotation_distance(lmr_coeffs(np.full(n, theta)), alpha)


def lmr_improved_angle(n: int, alpha: float) -> float:
    if n <= 2:
        raise ValueError("improved angle requires n > 2")
    return alpha / (n + alpha * np.sqrt(3.0) / 2.0)


def lmr_improvement(n: int, alpha: float) -> float:
    """Distance gap between the naive alpha/n angle and the improved one.

    Positive for every finite n > 2; approaches 2 sqrt(3) alpha^3 / n^2 from
    below with a sizable 1/n^3 correction.
    """
    naive = lmr_equal_angle_distance(n, alpha)
    improved = lmr_equal_angle_distance(n, alpha, lmr_improved_angle(n, alpha))
    return naive - improved
