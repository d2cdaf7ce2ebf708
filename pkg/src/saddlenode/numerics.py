"""Complex path quadrature, ODE transport and small special-value tables.

The quadrature is a deterministic batched Gauss pair: every panel is
evaluated with 15-point and 7-point Gauss-Legendre rules, the 15-point value
is kept and |G15 - G7| serves as the panel error estimate.  Panels whose
estimate is within a factor 4 of the worst one are bisected together, so the
refinement pattern (and hence the result, bit for bit) depends only on the
integrand and the configuration, never on timing or iteration order.

The ODE transport is an independent Dormand-Prince 5(4) integrator for the
defining equation of the foliation family; it shares no code with the
quadrature route on purpose, so the two can be used as mutual oracles.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidPath, NonConvergence, OutOfRange, StepFailure

__all__ = [
    "Line",
    "Arc",
    "PathSpec",
    "QuadratureConfig",
    "QuadratureResult",
    "integrate_path",
    "ode_transport",
    "gamma_half_integer",
    "reversed_path",
]


# ---------------------------------------------------------------------------
# paths

@dataclass(frozen=True)
class Line:
    """Straight segment from z0 to z1, parametrized on [0, 1]."""

    z0: complex
    z1: complex

    @property
    def start(self) -> complex:
        return self.z0

    @property
    def end(self) -> complex:
        return self.z1

    def point(self, t):
        return self.z0 + t * (self.z1 - self.z0)

    def deriv(self, t):
        d = self.z1 - self.z0
        return d if np.isscalar(t) else np.full(np.shape(t), d)

    def scale(self) -> float:
        return max(abs(self.z0), abs(self.z1))

    def min_abs_interior(self) -> float:
        # distance from 0 to the open segment, clamped to interior parameters
        d = self.z1 - self.z0
        dd = abs(d) ** 2
        if dd == 0.0:
            return abs(self.z0)
        t = -(self.z0.real * d.real + self.z0.imag * d.imag) / dd
        t = min(1.0, max(0.0, t))
        if t in (0.0, 1.0):
            return abs(self.point(0.5))
        return abs(self.z0 + t * d)


@dataclass(frozen=True)
class Arc:
    """Circular arc center + radius*exp(i*theta), theta from theta0 to theta1.

    theta1 < theta0 means clockwise traversal; the angles are not reduced
    modulo 2 pi, so a full turn is expressed as theta1 = theta0 -+ 2 pi.
    """

    center: complex
    radius: float
    theta0: float
    theta1: float

    @property
    def start(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.theta0)

    @property
    def end(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.theta1)

    def point(self, t):
        th = self.theta0 + t * (self.theta1 - self.theta0)
        return self.center + self.radius * np.exp(1j * th)

    def deriv(self, t):
        th = self.theta0 + t * (self.theta1 - self.theta0)
        return 1j * (self.theta1 - self.theta0) * self.radius * np.exp(1j * th)

    def scale(self) -> float:
        return abs(self.center) + self.radius

    def min_abs_interior(self) -> float:
        # the arc hits 0 only if |center| == radius at angle arg(-center)
        if abs(abs(self.center) - self.radius) > 1e-13 * max(1.0, self.radius):
            return abs(abs(self.center) - self.radius)
        phi = cmath.phase(-self.center) if self.center != 0 else self.theta0
        lo, hi = sorted((self.theta0, self.theta1))
        # shift phi by multiples of 2 pi into [lo, hi] if possible
        k = math.floor((lo - phi) / (2 * math.pi))
        for kk in (k, k + 1, k + 2):
            ph = phi + 2 * math.pi * kk
            if lo - 1e-12 <= ph <= hi + 1e-12:
                if abs(ph - self.theta0) < 1e-9 or abs(ph - self.theta1) < 1e-9:
                    continue  # endpoint hit, judged by the endpoint rule
                return 0.0
        return abs(abs(self.center) - self.radius) + self.radius * 1e-12


Segment = Line | Arc


@dataclass(frozen=True)
class PathSpec:
    """Connected chain of segments in the punctured plane.

    Interior points must avoid 0.  An endpoint of the whole path may sit at
    0 only when the matching removable flag is set, which promises that the
    integrand tends to 0 there (superexponential decay of exp(1/(2z^2))
    tangent to the imaginary axis).
    """

    segments: tuple
    removable_start: bool = False
    removable_end: bool = False

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        self.validate()

    @property
    def start(self) -> complex:
        return self.segments[0].start

    @property
    def end(self) -> complex:
        return self.segments[-1].end

    def validate(self):
        segs = self.segments
        if not segs:
            return
        scale = max(s.scale() for s in segs)
        tol = 1e-9 * max(1.0, scale)
        for prev, nxt in zip(segs, segs[1:]):
            if abs(prev.end - nxt.start) > tol:
                raise InvalidPath(
                    f"segments disconnected: {prev.end} vs {nxt.start}")
        # interior zeros are never allowed
        for i, s in enumerate(segs):
            if s.min_abs_interior() < 1e-13 * max(1.0, scale):
                raise InvalidPath("path passes through 0 in its interior")
            if i > 0 and abs(s.start) < tol:
                raise InvalidPath("path touches 0 at a junction")
        if abs(self.start) < tol and not self.removable_start:
            raise InvalidPath("path starts at 0 without removable flag")
        if abs(self.end) < tol and not self.removable_end:
            raise InvalidPath("path ends at 0 without removable flag")


def reversed_path(path: PathSpec) -> PathSpec:
    """The same trace walked backwards."""
    rev = []
    for s in reversed(path.segments):
        if isinstance(s, Line):
            rev.append(Line(s.z1, s.z0))
        else:
            rev.append(Arc(s.center, s.radius, s.theta1, s.theta0))
    return PathSpec(tuple(rev), removable_start=path.removable_end,
                    removable_end=path.removable_start)


# ---------------------------------------------------------------------------
# quadrature

@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 4000

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise OutOfRange("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise OutOfRange("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int


_X15, _W15 = np.polynomial.legendre.leggauss(15)
_X7, _W7 = np.polynomial.legendre.leggauss(7)
_T01 = np.concatenate(((_X15 + 1.0) / 2.0, (_X7 + 1.0) / 2.0))  # 22 nodes


def _panel_values(f, seg, a, b):
    """G15 and G7 on the t-subintervals [a_i, b_i] of one segment."""
    h = (b - a)[:, None]
    t = a[:, None] + _T01[None, :] * h
    with np.errstate(under="ignore"):
        z = seg.point(t)
        v = np.asarray(f(z), dtype=complex) * seg.deriv(t)
    g15 = (v[:, :15] @ _W15) * (h[:, 0] / 2.0)
    g7 = (v[:, 15:] @ _W7) * (h[:, 0] / 2.0)
    return g15, np.abs(g15 - g7)


def _initial_panels(seg) -> int:
    if isinstance(seg, Arc):
        return max(4, int(math.ceil(abs(seg.theta1 - seg.theta0) / (math.pi / 4))))
    return 4


def integrate_path(f, path: PathSpec, cfg: QuadratureConfig = QuadratureConfig()) -> QuadratureResult:
    """Adaptive integral of f along path.

    Parameters
    ----------
    f : callable
        Integrand; must accept numpy arrays of complex points and return the
        values elementwise.  It is never evaluated at panel endpoints, so a
        removable endpoint needs no special casing beyond decaying fast
        enough for the panel estimates to settle.
    path : PathSpec
    cfg : QuadratureConfig

    Returns
    -------
    QuadratureResult
        value is the summed G15 estimate, error_estimate the summed panel
        discrepancies, evaluations the number of integrand points used.

    Raises
    ------
    NonConvergence
        if the subdivision budget is exhausted above tolerance, or the
        integrand produced non-finite values.
    """
    if not path.segments:
        return QuadratureResult(0j, 0.0, 0)
    seg_a: list[np.ndarray] = []
    seg_b: list[np.ndarray] = []
    seg_val: list[np.ndarray] = []
    seg_err: list[np.ndarray] = []
    evals = 0
    for seg in path.segments:
        n0 = _initial_panels(seg)
        edges = np.linspace(0.0, 1.0, n0 + 1)
        a, b = edges[:-1], edges[1:]
        val, err = _panel_values(f, seg, a, b)
        evals += a.size * 22
        seg_a.append(a)
        seg_b.append(b)
        seg_val.append(val)
        seg_err.append(err)

    while True:
        total = sum(v.sum() for v in seg_val)
        if not np.isfinite(total):
            raise NonConvergence("integrand produced non-finite values")
        err_total = float(sum(e.sum() for e in seg_err))
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        if err_total <= tol:
            return QuadratureResult(complex(total), err_total, evals)
        n_panels = sum(a.size for a in seg_a)
        if n_panels > cfg.max_subdivisions:
            raise NonConvergence(
                f"error {err_total:.3e} above tolerance {tol:.3e} "
                f"after {n_panels} panels")
        worst = max(float(e.max()) for e in seg_err)
        cut = 0.25 * worst
        for i, seg in enumerate(path.segments):
            mask = seg_err[i] >= cut
            if not mask.any():
                continue
            a_s, b_s = seg_a[i][mask], seg_b[i][mask]
            mid = (a_s + b_s) / 2.0
            new_a = np.concatenate((a_s, mid))
            new_b = np.concatenate((mid, b_s))
            val, err = _panel_values(f, seg, new_a, new_b)
            evals += new_a.size * 22
            keep = ~mask
            seg_a[i] = np.concatenate((seg_a[i][keep], new_a))
            seg_b[i] = np.concatenate((seg_b[i][keep], new_b))
            seg_val[i] = np.concatenate((seg_val[i][keep], val))
            seg_err[i] = np.concatenate((seg_err[i][keep], err))


# ---------------------------------------------------------------------------
# ODE transport along a path (independent oracle for the leaf quadrature)

_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
          187 / 2100, 1 / 40)


def _dp54(rhs, y0: complex, atol: float, rtol: float) -> complex:
    """Dormand-Prince 5(4) over t in [0, 1], complex scalar state."""
    t, y = 0.0, y0
    h = 0.05
    k1 = rhs(t, y)
    while t < 1.0:
        h = min(h, 1.0 - t)
        if h < 1e-13:
            raise StepFailure("step size underflow")
        k = [k1]
        for i in range(1, 7):
            yi = y + h * sum(aij * kj for aij, kj in zip(_DP_A[i], k))
            k.append(rhs(t + _DP_C[i] * h, yi))
        y5 = y + h * sum(b * kj for b, kj in zip(_DP_B5, k))
        y4 = y + h * sum(b * kj for b, kj in zip(_DP_B4, k))
        err = abs(y5 - y4) / (atol + rtol * max(abs(y), abs(y5)))
        if err <= 1.0:
            t += h
            y = y5
            k1 = k[6]  # FSAL
            h *= min(5.0, max(0.2, 0.9 * (err + 1e-300) ** -0.2))
        else:
            h *= max(0.1, 0.9 * err ** -0.2)
            k1 = k[0]
    return y


def ode_transport(alpha: complex, start, path: PathSpec,
                  cfg: QuadratureConfig = QuadratureConfig()) -> complex:
    """Analytic continuation of a leaf along an x-plane path.

    Integrates y' = y/x^3 - 1/(i pi x) - alpha/(i sqrt(2 pi)) from the leaf
    point start = (x0, y0); start must sit over path.start.  Returns y over
    path.end.  An empty path returns y0 unchanged.
    """
    x0, y0 = start
    if not path.segments:
        return complex(y0)
    if abs(complex(x0) - path.start) > 1e-9 * max(1.0, abs(path.start)):
        raise InvalidPath("start point does not sit over the path start")
    c1 = 1.0 / (1j * math.pi)
    c2 = alpha / (1j * math.sqrt(2 * math.pi))
    y = complex(y0)
    for seg in path.segments:
        def rhs(t, yy, seg=seg):
            z = seg.point(t)
            return (yy / z ** 3 - c1 / z - c2) * seg.deriv(t)
        y = _dp54(rhs, y, cfg.abs_tol, cfg.rel_tol)
    return y


# ---------------------------------------------------------------------------
# gamma at half integers

_GAMMA_HALF = {
    1: math.sqrt(math.pi),
    2: 1.0,
    3: math.sqrt(math.pi) / 2.0,
    4: 1.0,
}


def gamma_half_integer(a: int) -> float:
    """Gamma(a/2) for a in {1, 2, 3, 4}."""
    try:
        return _GAMMA_HALF[a]
    except (KeyError, TypeError):
        raise OutOfRange(f"gamma_half_integer supports a in 1..4, got {a!r}") from None
