"""Exact failure probability (DFT) and reliability (DRBD) evaluation.

Components are independent, so every gate reduces to a product:

    OR / series complement   1 - prod(1 - p_i)
    AND                      prod(p_i)

Warm spares use ``wsp_fail_prob``: the spare may fail while dormant, before
the main does, in which case the gate fails with the main; otherwise the
spare takes over when the main fails and lives a fresh active lifetime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from senrel.dist import FailureDistribution, _check_time
from senrel.model import (
    BasicEvent,
    Block,
    NAnd,
    NOr,
    Node,
    Parallel,
    RWsp,
    Series,
    Wsp,
    is_dft,
    require_valid,
)

QUAD_TOL = 1e-10
_DEGENERATE_RATE = 1e-12


@dataclass(frozen=True)
class WspParams:
    lambda_main: float
    lambda_active: float
    lambda_dormant: float

    def __post_init__(self):
        for name in ("lambda_main", "lambda_active", "lambda_dormant"):
            rate = getattr(self, name)
            if not (math.isfinite(rate) and rate > 0):
                raise ValueError(f"{name} must be positive and finite, got {rate!r}")

    @classmethod
    def from_dormancy(cls, rate: float, alpha: float, active_rate: float | None = None):
        active = rate if active_rate is None else active_rate
        return cls(rate, active, alpha * active)

    @classmethod
    def of(cls, leaf: Wsp | RWsp) -> WspParams:
        return cls(leaf.main.rate, leaf.spare_active.rate, leaf.spare_dormant.rate)


def wsp_fail_prob(params: WspParams, t: float) -> float:
    """Probability that a warm spare gate has failed by ``t`` (exponential laws).

    Closed form of the defining integral:

        F(t) = (1 - e^{-l t}) - l e^{-la t} (1 - e^{-c t}) / c,   c = l + ld - la

    and ``l t e^{-la t}`` for the second term when ``c`` vanishes.
    """
    _check_time(t)
    lam, lam_a, lam_d = params.lambda_main, params.lambda_active, params.lambda_dormant
    c = lam + lam_d - lam_a
    main_failed = -math.expm1(-lam * t)
    if abs(c) < _DEGENERATE_RATE:
        replaced = lam * t * math.exp(-lam_a * t)
    else:
        replaced = lam * math.exp(-lam_a * t) * (-math.expm1(-c * t)) / c
    return min(1.0, max(0.0, main_failed - replaced))


def _adaptive_simpson(f, a: float, b: float, tol: float, panels: int = 8, max_depth: int = 60) -> float:
    total = 0.0
    width = (b - a) / panels
    stack = []
    for k in range(panels):
        lo = a + k * width
        hi = b if k == panels - 1 else lo + width
        mid = 0.5 * (lo + hi)
        flo, fmid, fhi = f(lo), f(mid), f(hi)
        whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
        stack.append((lo, hi, flo, fmid, fhi, whole, tol / panels, 0))
    while stack:
        lo, hi, flo, fmid, fhi, whole, eps, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        delta = left + right - whole
        if depth >= max_depth or abs(delta) <= 15.0 * eps:
            total += left + right + delta / 15.0
        else:
            stack.append((lo, mid, flo, flm, fmid, left, eps / 2.0, depth + 1))
            stack.append((mid, hi, fmid, frm, fhi, right, eps / 2.0, depth + 1))
    return total


def wsp_fail_prob_quad(
    main: FailureDistribution,
    spare_active: FailureDistribution,
    spare_dormant: FailureDistribution,
    t: float,
    tol: float = QUAD_TOL,
) -> float:
    """Warm spare failure probability by adaptive Simpson quadrature of

        int_0^t f_main(y) [F_d(y) + (1 - F_d(y)) F_a(t - y)] dy

    taken over u = F_main(y), i.e. int_0^{F_main(t)} g(F_main^{-1}(u)) du,
    which keeps the integrand bounded and avoids resolving the main's
    density peak.  Uses only the laws' cdf/ppf, so it is an independent
    check of the closed form in :func:`wsp_fail_prob`.
    """
    _check_time(t)
    if t == 0:
        return 0.0
    quantile, f_dormant, f_active = main.ppf, spare_dormant.cdf, spare_active.cdf

    def integrand(u):
        y = quantile(u)
        if y == math.inf:
            return 1.0
        dormant = f_dormant(y)
        rest = t - y
        return dormant + (1.0 - dormant) * f_active(rest if rest > 0.0 else 0.0)

    value = _adaptive_simpson(integrand, 0.0, main.cdf(t), tol)
    return min(1.0, max(0.0, value))


def _leaf_fail(leaf, t: float) -> float:
    if isinstance(leaf, (Wsp, RWsp)):
        return wsp_fail_prob(WspParams.of(leaf), t)
    return leaf.dist.cdf(t)


def _fail(node: Node, t: float) -> float:
    if isinstance(node, (NOr, Series)):
        survive = 1.0
        for child in node.children:
            survive *= 1.0 - _fail(child, t)
        return 1.0 - survive
    if isinstance(node, (NAnd, Parallel)):
        failed = 1.0
        for child in node.children:
            failed *= _fail(child, t)
        return failed
    return _leaf_fail(node, t)


def _work(node: Node, t: float) -> float:
    if isinstance(node, Block):
        return node.dist.sf(t)
    if isinstance(node, RWsp):
        return 1.0 - wsp_fail_prob(WspParams.of(node), t)
    if isinstance(node, Series):
        works = 1.0
        for child in node.children:
            works *= _work(child, t)
        return works
    if isinstance(node, Parallel):
        failed = 1.0
        for child in node.children:
            failed *= 1.0 - _work(child, t)
        return 1.0 - failed
    raise TypeError(f"not a DRBD node: {node!r}")


def prob_fail(node: Node, t: float) -> float:
    """Probability that the DFT top event has occurred by ``t``."""
    require_valid(node)
    if not is_dft(node):
        raise TypeError("prob_fail expects a DFT; use reliability for a DRBD")
    _check_time(t)
    return _fail(node, t)


def reliability(node: Node, t: float) -> float:
    """Probability that the DRBD system still works at ``t``."""
    require_valid(node)
    if is_dft(node):
        raise TypeError("reliability expects a DRBD; use prob_fail for a DFT")
    _check_time(t)
    return _work(node, t)


def evaluate(node: Node, t: float) -> float:
    """``prob_fail`` for a DFT, ``reliability`` for a DRBD."""
    return prob_fail(node, t) if is_dft(node) else reliability(node, t)


@dataclass(frozen=True)
class Curve:
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple((float(t), float(v)) for t, v in self.points))
        ts = [t for t, _ in self.points]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("curve times must be strictly increasing")
        if any(not 0.0 <= v <= 1.0 for _, v in self.points):
            raise ValueError("curve values must be probabilities")

    @property
    def times(self) -> list[float]:
        return [t for t, _ in self.points]

    @property
    def values(self) -> list[float]:
        return [v for _, v in self.points]


def check_grid(grid) -> list[float]:
    grid = [float(t) for t in grid]
    if not grid:
        raise ValueError("time grid is empty")
    if grid[0] < 0:
        raise ValueError("time grid must start at t >= 0")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("time grid must be strictly increasing")
    return grid


def linear_grid(start: float, end: float, points: int) -> list[float]:
    if points < 2 or end <= start or start < 0:
        raise ValueError("grid needs start >= 0, end > start and at least 2 points")
    step = (end - start) / (points - 1)
    return [start + i * step for i in range(points - 1)] + [float(end)]


def eval_curve(node: Node, grid) -> Curve:
    require_valid(node)
    grid = check_grid(grid)
    ev = _fail if is_dft(node) else _work
    return Curve(tuple((t, ev(node, t)) for t in grid))
