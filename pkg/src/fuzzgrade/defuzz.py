"""Center-of-gravity defuzzification.

``cog_tfn`` and ``cog_tpfn`` are closed forms for the centroid of the
region under the membership graph.  ``cog_numeric`` integrates an arbitrary
piecewise-linear membership function instead and shares no code with the
closed forms, so the two can check each other.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import DegenerateError, FuzzyNumber, TrapezoidalFN, TriangularFN


@dataclass(frozen=True)
class Centroid:
    x: float
    y: float


def cog_tfn(A: TriangularFN) -> Centroid:
    a, b, c = A.entries
    if a == c:
        raise DegenerateError()
    return Centroid((a + b + c) / 3.0, 1.0 / 3.0)


def cog_tpfn(A: TrapezoidalFN) -> Centroid:
    """Centroid of the trapezoid ``(a, b, c, d)``.

    Collapses to :func:`cog_tfn` when the plateau has zero width, so both
    paths return identical floats for a triangle.
    """
    a, b, c, d = A.entries
    if b == c:
        return cog_tfn(TriangularFN(a, b, d))
    denom = 3.0 * (c + d - a - b)
    if denom <= 0:
        raise DegenerateError()
    # measured from a, so the squares do not cancel far from the origin
    b, c, d = b - a, c - a, d - a
    x = a + (c * c + d * d - b * b + d * c) / denom
    y = (2 * c + d - 2 * b) / denom
    return Centroid(x, y)


def cog(fn: FuzzyNumber) -> Centroid:
    if isinstance(fn, TriangularFN):
        return cog_tfn(fn)
    return cog_tpfn(fn)


def cog_composite(fn: TrapezoidalFN) -> Centroid:
    """Trapezoid centroid as the area-weighted mean of its pieces.

    Splits the shape into left triangle, rectangle and right triangle, the
    same decomposition the closed form is derived from.
    """
    a, b, c, d = fn.entries
    pieces = [
        ((b - a) / 2.0, (a + 2 * b) / 3.0, 1.0 / 3.0),
        (c - b, (b + c) / 2.0, 0.5),
        ((d - c) / 2.0, (d + 2 * c) / 3.0, 1.0 / 3.0),
    ]
    area = sum(s for s, _, _ in pieces)
    if area <= 0:
        raise DegenerateError()
    x = sum(s * px for s, px, _ in pieces) / area
    y = sum(s * py for s, _, py in pieces) / area
    return Centroid(x, y)


class PiecewiseLinearMembership:
    """Membership function given by breakpoints ``(x, m)``, zero outside.

    Abscissas must be nondecreasing.  A repeated abscissa encodes a jump,
    which is how a zero-width ramp is represented.
    """

    def __init__(self, breakpoints: Sequence[tuple[float, float]]):
        pts = [(float(x), float(m)) for x, m in breakpoints]
        if len(pts) < 2:
            raise ValueError("need at least two breakpoints")
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if x1 < x0:
                raise ValueError("breakpoint abscissas must be nondecreasing")
        for _, m in pts:
            if not 0.0 <= m <= 1.0:
                raise ValueError(f"membership value {m} outside [0, 1]")
        self.breakpoints = tuple(pts)

    @classmethod
    def from_fn(cls, fn: FuzzyNumber) -> PiecewiseLinearMembership:
        a, b, c, d = fn.to_trapezoidal().entries
        return cls([(a, 0.0), (b, 1.0), (c, 1.0), (d, 0.0)])

    def panels(self):
        """Yield ``(x0, x1, m0, m1)`` for every segment of positive width."""
        for (x0, m0), (x1, m1) in zip(self.breakpoints, self.breakpoints[1:]):
            if x1 > x0:
                yield x0, x1, m0, m1

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for x0, x1, m0, m1 in self.panels():
            inside = (x >= x0) & (x <= x1)
            out[inside] = m0 + (m1 - m0) * (x[inside] - x0) / (x1 - x0)
        return out


def _simpson(y: np.ndarray, h: float) -> float:
    return h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum())


def cog_numeric(m: PiecewiseLinearMembership, steps: int = 100_000) -> Centroid:
    """Area centroid of the region under ``m`` by composite Simpson quadrature.

    The panels are aligned with the breakpoints and ``steps`` subintervals
    are shared among them in proportion to their width.
    """
    if steps < 2:
        raise ValueError("steps must be at least 2")
    panels = list(m.panels())
    total_width = sum(x1 - x0 for x0, x1, _, _ in panels)
    if total_width <= 0:
        raise DegenerateError()

    area = moment_x = moment_y = 0.0
    for x0, x1, m0, m1 in panels:
        n = max(2, int(round(steps * (x1 - x0) / total_width)))
        n += n % 2
        xs = np.linspace(x0, x1, n + 1)
        # evaluate inside the panel so jumps at shared abscissas take this panel's side
        ms = m0 + (m1 - m0) * (xs - x0) / (x1 - x0)
        h = (x1 - x0) / n
        area += _simpson(ms, h)
        moment_x += _simpson(xs * ms, h)
        moment_y += _simpson(0.5 * ms * ms, h)

    if area <= 0:
        raise DegenerateError()
    return Centroid(float(moment_x / area), float(moment_y / area))
