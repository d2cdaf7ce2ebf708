"""Charts of the projective plane and the conjugacy near the line at infinity.

Three affine charts cover CP^2 here: the working chart (x, y), the chart
(s, t) = (1/x, y/x) containing the line at infinity {s = 0}, and the chart
(u, v) = (x/y, 1/y) containing the point where all fibers {x = const} meet.
The conjugacy extends continuously to both loci: over {s = 0} it acts as the
rigid translation t -> t + alpha/(i sqrt(2 pi)) carrying the third
singular point of the perturbed foliation onto the model one, and at the
fiber-accumulation point it fixes (u, v) = (0, 0).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum

from .conjugacy import ConjugacyMap, phi, tail_delta
from .errors import ChartUndefined
from .foliation import (
    COEF_X2,
    Sector,
    coef_x3,
    sector_select,
    weak_separatrix_parts,
)
from .numerics import QuadratureConfig


class Chart(str, Enum):
    XY = "xy"
    ST = "st"
    UV = "uv"


@dataclass(frozen=True)
class ProjectivePoint:
    chart: Chart
    coords: tuple[complex, complex]

    def __post_init__(self):
        a, b = self.coords
        object.__setattr__(self, "coords", (complex(a), complex(b)))


def chart_transition(p: ProjectivePoint, target: Chart) -> ProjectivePoint:
    """Exact rational re-coordinatization between the three charts.

    Raises ChartUndefined when the target chart's denominator vanishes at p
    (e.g. the origin of xy has no st or uv representative).
    """
    if p.chart is target:
        return p
    a, b = p.coords
    if p.chart is Chart.XY:
        x, y = a, b
        if target is Chart.ST:
            if x == 0:
                raise ChartUndefined("st needs x != 0")
            return ProjectivePoint(Chart.ST, (1.0 / x, y / x))
        if y == 0:
            raise ChartUndefined("uv needs y != 0")
        return ProjectivePoint(Chart.UV, (x / y, 1.0 / y))
    if p.chart is Chart.ST:
        s, t = a, b
        if target is Chart.XY:
            if s == 0:
                raise ChartUndefined("xy needs s != 0")
            return ProjectivePoint(Chart.XY, (1.0 / s, t / s))
        if t == 0:
            raise ChartUndefined("uv needs t != 0")
        return ProjectivePoint(Chart.UV, (1.0 / t, s / t))
    u, v = a, b
    if target is Chart.XY:
        if v == 0:
            raise ChartUndefined("xy needs v != 0")
        return ProjectivePoint(Chart.XY, (u / v, 1.0 / v))
    if u == 0:
        raise ChartUndefined("st needs u != 0")
    return ProjectivePoint(Chart.ST, (v / u, 1.0 / u))


def weak_separatrix_at_infinity(alpha: complex, tag: Sector, s: complex,
                                cfg: QuadratureConfig = QuadratureConfig()
                                ) -> complex:
    """The c = 0 sectorial solution evaluated at x = 1/s, |s| <= 1.

    Quadrature along the vertical ray from s on which the integrand decays
    superexponentially; matches the annulus representation of
    leaf_value(alpha, tag, 0, 1/s) where both are defined.
    """
    s = complex(s)
    if abs(s) > 1.0:
        raise ChartUndefined("the ray representation is used for |s| <= 1")
    want2 = complex(alpha) != 0
    r1, r2 = weak_separatrix_parts(tag, s, cfg, want2=want2)
    es = cmath.exp(-0.5 * s * s)
    w = -es * COEF_X2 * r1
    if want2:
        w -= es * coef_x3(alpha) * r2
    return w


def phi_st(cmap: ConjugacyMap, s: complex, t: complex) -> tuple[complex, complex]:
    """The conjugacy in the chart at infinity: (s, t) -> (s, T).

    For s != 0 this is phi at (x, y) = (1/s, t/s) rewritten through t = y/x;
    the first coordinate is preserved since |x| >= 1 keeps the base factor
    trivial.  At s = 0 the map is the translation T = t + alpha/(i sqrt(2 pi)),
    the continuous limit of the s != 0 values; it moves the singular point
    of the perturbed foliation at infinity onto the model one.  Exactly the
    identity when alpha = 0.
    """
    s = complex(s)
    t = complex(t)
    if s == 0:
        return 0j, t + coef_x3(cmap.alpha)
    if abs(s) > 1.0:
        raise ChartUndefined("|s| > 1 is handled in the xy chart")
    x = 1.0 / s
    delta = tail_delta(cmap, sector_select(x), x, t / s)
    return s, t + s * delta


def phi_uv(cmap: ConjugacyMap, u: complex, v: complex) -> tuple[complex, complex]:
    """The conjugacy in the chart (u, v) = (x/y, 1/y).

    Evaluates by re-charting to (x, y), applying phi, and re-charting back:
    U = X/Y, V = 1/Y.  Undefined at u = 0 or v = 0 and wherever the image
    hits Y = 0; an annulus gap at |x| = |u/v| propagates.
    """
    u = complex(u)
    v = complex(v)
    if u == 0 or v == 0:
        raise ChartUndefined("phi_uv needs u != 0 and v != 0")
    x = u / v
    y = 1.0 / v
    x_out, y_out = phi(cmap, x, y)
    if x_out == x and y_out == y:
        return u, v                       # fixed point: skip the lossy re-charting
    if y_out == 0:
        raise ChartUndefined("image lies outside the uv chart (Y = 0)")
    return x_out / y_out, 1.0 / y_out


def t_at_infinity(alpha: complex) -> complex:
    """t-coordinate of the singular point on the line at infinity."""
    return -coef_x3(alpha)


def singularity_inventory(alpha: complex = 0.0) -> list[ProjectivePoint]:
    """The three singular points of the foliation on CP^2.

    The saddle-node at the origin of the xy chart, the point where every
    fiber {x = const} meets (the origin of the uv chart), and the singular
    point on the line at infinity, which sits at the st origin for the model
    and moves to t = i alpha / sqrt(2 pi) for the perturbed foliation.
    """
    return [
        ProjectivePoint(Chart.XY, (0j, 0j)),
        ProjectivePoint(Chart.UV, (0j, 0j)),
        ProjectivePoint(Chart.ST, (0j, t_at_infinity(alpha))),
    ]
