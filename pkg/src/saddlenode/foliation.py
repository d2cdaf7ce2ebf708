"""The saddle-node family x^3 y' = y - x^2/(i pi) - alpha x^3/(i sqrt(2 pi)).

Sectorial general solutions, their leaf coordinate c, the Stokes constants
connecting the two sectors, the Hankel loop integrals with their closed
form, the node/saddle split of the x-plane, and the divergent formal series
showing the family is not an unfolding.

All leaf evaluation happens in exponent-shifted form: products
exp(-1/(2x^2)) * integral(exp(1/(2z^2)) ...) are computed as a single
integral of exp(1/(2z^2) - 1/(2x^2)) so no intermediate blows up on the
saddle side of a sector.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (AlphaTooLarge, OutOfRange, OutsideAnnulus, OutsideSector,
                     Overflow, WrongHalfPlane, ZeroInput)
from .numerics import (Arc, Line, PathSpec, QuadratureConfig,
                       gamma_half_integer, integrate_path)

__all__ = [
    "COEF_X2",
    "coef_x3",
    "FoliationParameter",
    "Sector",
    "HalfPlane",
    "RegionKind",
    "RegionClass",
    "MartinetRamisModulus",
    "DEFAULT_ANNULUS",
    "EXPONENT_CAP",
    "convert_from_original",
    "sector_contains",
    "sector_select",
    "base_path",
    "leaf_integral_parts",
    "leaf_value",
    "leaf_invert",
    "stokes_estimate",
    "hankel_numeric",
    "hankel_closed_form",
    "modulus",
    "classify_region",
    "formal_series_coefficients",
]

# coefficients of the normalized equation y' = y/x^3 - COEF_X2/x - coef_x3
COEF_X2 = 1.0 / (1j * math.pi)


def coef_x3(alpha: complex) -> complex:
    return alpha / (1j * math.sqrt(2.0 * math.pi))


DEFAULT_ANNULUS = (0.2, 1.5)
EXPONENT_CAP = 40.0

_SECTOR_HALF_APERTURE = 3.0 * math.pi / 4.0


def convert_from_original(alpha_orig: complex, y_orig: complex | None = None):
    """Normalize parameters of the original family x^3 y' = y + x^2 + a x^3.

    Returns (alpha_norm, y_norm): alpha_norm = sqrt(2/pi) * alpha_orig and
    y_norm = -i pi * y_orig (None passes through).
    """
    alpha_norm = math.sqrt(2.0 / math.pi) * alpha_orig
    y_norm = None if y_orig is None else -1j * math.pi * y_orig
    return alpha_norm, y_norm


@dataclass(frozen=True)
class FoliationParameter:
    """Normalized parameter; the conjugacy construction needs |alpha| < 1/10."""

    alpha: complex

    @classmethod
    def from_original(cls, alpha_orig: complex) -> "FoliationParameter":
        return cls(convert_from_original(alpha_orig)[0])

    def require_map_regime(self):
        if abs(self.alpha) >= 0.1:
            raise AlphaTooLarge(f"|alpha| = {abs(self.alpha):.4f} >= 1/10")
        return self


class Sector(enum.Enum):
    """V+ = {|arg x - pi/2| < 3 pi/4}, V- the reflection through the real axis."""

    PLUS = "+"
    MINUS = "-"

    @property
    def sign(self) -> int:
        return 1 if self is Sector.PLUS else -1

    @property
    def axis(self) -> float:
        return self.sign * math.pi / 2.0

    @classmethod
    def from_str(cls, s: str) -> "Sector":
        key = s.strip().lower()
        if key in ("+", "plus", "p"):
            return cls.PLUS
        if key in ("-", "minus", "m"):
            return cls.MINUS
        raise OutOfRange(f"unknown sector {s!r}")


class HalfPlane(enum.Enum):
    RE_NEG = "ReNeg"
    RE_POS = "RePos"


def _ang_dist(a: float, b: float) -> float:
    return abs(math.remainder(a - b, 2.0 * math.pi))


def sector_contains(tag: Sector, x: complex) -> bool:
    if x == 0:
        raise ZeroInput("sector membership undefined at x = 0")
    return _ang_dist(cmath.phase(x), tag.axis) < _SECTOR_HALF_APERTURE


def sector_select(x: complex) -> Sector:
    """Deterministic representative sector; ties on the real axis go to Plus."""
    if x == 0:
        raise ZeroInput("no sector at x = 0")
    th = cmath.phase(x)
    return Sector.PLUS if _ang_dist(th, math.pi / 2) <= _ang_dist(th, -math.pi / 2) \
        else Sector.MINUS


def base_path(tag: Sector, x: complex) -> PathSpec:
    """Canonical integration path from the sector's axis into x.

    A segment from 0 (removable endpoint) along +-i up to radius |x|, then
    an arc of that radius swept inside the sector to x.
    """
    if not sector_contains(tag, x):
        raise OutsideSector(f"{x} not in sector {tag.value}")
    r = abs(x)
    th = cmath.phase(x)
    # continue the angle into the sector's range around +-pi/2
    if tag is Sector.PLUS and th <= -math.pi / 4:
        th += 2.0 * math.pi
    elif tag is Sector.MINUS and th >= math.pi / 4:
        th -= 2.0 * math.pi
    anchor = tag.sign * 1j * r
    segs: list = [Line(0j, anchor)]
    if abs(th - tag.axis) > 1e-12:
        segs.append(Arc(0j, r, tag.axis, th))
    return PathSpec(tuple(segs), removable_start=True)


def _guard_shift_overflow(x: complex):
    # crude bound on the shifted exponent along the canonical path
    r = abs(x)
    if r > 0 and 1.0 / (r * r) > 705.0:
        raise Overflow("shifted exponent may overflow at this radius")


def leaf_integral_parts(tag: Sector, x: complex, shift: complex,
                        cfg: QuadratureConfig = QuadratureConfig(),
                        want_z: bool = True):
    """Shifted integrals (J1, Jz) along the canonical path to x.

    J1 = int exp(1/(2z^2) - shift) dz/z and Jz = int exp(1/(2z^2) - shift) dz
    (Jz is None when want_z is false).  With shift = 1/(2x^2) these are the
    exp(-1/(2x^2))-weighted pieces of the general-solution integral.
    """
    _guard_shift_overflow(x)
    path = base_path(tag, x)

    def f1(z):
        return np.exp(0.5 / (z * z) - shift) / z

    def fz(z):
        return np.exp(0.5 / (z * z) - shift)

    j1 = integrate_path(f1, path, cfg).value
    jz = integrate_path(fz, path, cfg).value if want_z else None
    return j1, jz


def _check_annulus(x: complex, annulus) -> None:
    r_min, r_max = annulus
    r = abs(x)
    if not (r_min <= r <= r_max):
        raise OutsideAnnulus(
            f"|x| = {r:.4f} outside [{r_min}, {r_max}]")


def leaf_value(alpha: complex, tag: Sector, c: complex, x: complex,
               cfg: QuadratureConfig = QuadratureConfig(),
               annulus=DEFAULT_ANNULUS) -> complex:
    """y of the sectorial general solution with leaf coordinate c at x."""
    if x == 0:
        raise ZeroInput("leaf evaluation needs x != 0")
    _check_annulus(x, annulus)
    shift = 0.5 / (x * x)
    j1, jz = leaf_integral_parts(tag, x, shift, cfg, want_z=(alpha != 0))
    j_alpha = COEF_X2 * j1
    if alpha != 0:
        j_alpha = j_alpha + coef_x3(alpha) * jz
    return c * cmath.exp(-shift) - j_alpha


def leaf_invert(alpha: complex, tag: Sector, x: complex, y: complex,
                cfg: QuadratureConfig = QuadratureConfig(),
                annulus=DEFAULT_ANNULUS) -> complex:
    """Leaf coordinate c with leaf_value(alpha, tag, c, x) = y."""
    if x == 0:
        raise ZeroInput("leaf inversion needs x != 0")
    _check_annulus(x, annulus)
    shift = 0.5 / (x * x)
    if shift.real > EXPONENT_CAP:
        raise Overflow(
            f"Re(1/(2x^2)) = {shift.real:.2f} above cap {EXPONENT_CAP}")
    j1, jz = leaf_integral_parts(tag, x, shift, cfg, want_z=(alpha != 0))
    j_alpha = COEF_X2 * j1
    if alpha != 0:
        j_alpha = j_alpha + coef_x3(alpha) * jz
    return (y + j_alpha) * cmath.exp(shift)


def stokes_estimate(alpha: complex, half_plane: HalfPlane, x: complex,
                    c: complex = 0j,
                    cfg: QuadratureConfig = QuadratureConfig(),
                    annulus=DEFAULT_ANNULUS) -> complex:
    """Measured Stokes multiplier at x, constant in both x and c.

    On Re x < 0 returns (y- - y+) exp(1/(2x^2)), which equals 1 - alpha; on
    Re x > 0 returns (y+ - y-) exp(1/(2x^2)), which equals 1 + alpha.  The
    two sectorial solutions are evaluated at the same c, so the difference
    isolates the connection constant.
    """
    if half_plane is HalfPlane.RE_NEG:
        if not x.real < 0:
            raise WrongHalfPlane("ReNeg estimate needs Re x < 0")
    elif half_plane is HalfPlane.RE_POS:
        if not x.real > 0:
            raise WrongHalfPlane("RePos estimate needs Re x > 0")
    else:
        raise OutOfRange(f"unknown half plane {half_plane!r}")
    yp = leaf_value(alpha, Sector.PLUS, c, x, cfg, annulus)
    ym = leaf_value(alpha, Sector.MINUS, c, x, cfg, annulus)
    w = cmath.exp(0.5 / (x * x))
    if half_plane is HalfPlane.RE_NEG:
        return (ym - yp) * w
    return (yp - ym) * w


def hankel_closed_form(a: int, j: int) -> complex:
    """-(2 i pi / Gamma(a/2)) (1/2)^(a/2) (-1)^(a j) for a in 1..4, j in {0,1}."""
    if j not in (0, 1):
        raise OutOfRange(f"j must be 0 or 1, got {j!r}")
    g = gamma_half_integer(a)
    return -(2j * math.pi / g) * 0.5 ** (a / 2.0) * (-1.0) ** (a * j)


def hankel_numeric(a: int, j: int,
                   cfg: QuadratureConfig = QuadratureConfig()) -> complex:
    """Loop integral of z^a exp(1/(2z^2)) / z^3 over the circle through 0.

    The circle has radius 1 and center (-1)^j and is traversed clockwise,
    entering and leaving 0 tangent to the imaginary axis where the integrand
    dies superexponentially (both endpoints removable).
    """
    if a not in (1, 2, 3, 4):
        raise OutOfRange(f"a must be in 1..4, got {a!r}")
    if j == 0:
        arc = Arc(1.0 + 0j, 1.0, math.pi, -math.pi)
    elif j == 1:
        arc = Arc(-1.0 + 0j, 1.0, 0.0, -2.0 * math.pi)
    else:
        raise OutOfRange(f"j must be 0 or 1, got {j!r}")
    path = PathSpec((arc,), removable_start=True, removable_end=True)
    p = a - 3

    def f(z):
        return z ** p * np.exp(0.5 / (z * z))

    return integrate_path(f, path, cfg).value


def weak_separatrix_parts(tag: Sector, s: complex,
                          cfg: QuadratureConfig = QuadratureConfig(),
                          want2: bool = True):
    """Vertical-ray integrals (R1, R2) representing y_{alpha,0}(1/s).

    R1 = int exp(zeta^2/2) dzeta/zeta and R2 = the same with dzeta/zeta^2,
    taken from zeta = s along the vertical ray on which exp(zeta^2/2) dies:
    toward -i*infinity for the Plus sector, +i*infinity for Minus (the ray is
    the image of the canonical path under zeta = 1/z).  Truncated once
    Re(zeta^2)/2 < -40.  Then

        y^tag_{alpha,0}(1/s) = -exp(-s^2/2) (R1/(i pi) + alpha R2/(i sqrt(2 pi))).
    """
    s = complex(s)
    if s == 0:
        raise ZeroInput("the ray representation needs s != 0")
    if not sector_contains(tag, 1.0 / s):
        raise OutsideSector(f"1/s = {1.0/s} not in sector {tag.value}")
    t_end = math.sqrt(s.real * s.real + 80.0) + 0.5
    end = complex(s.real, -tag.sign * t_end)
    path = PathSpec((Line(s, end),))

    def f1(z):
        return np.exp(0.5 * z * z) / z

    def f2(z):
        return np.exp(0.5 * z * z) / (z * z)

    r1 = integrate_path(f1, path, cfg).value
    r2 = integrate_path(f2, path, cfg).value if want2 else None
    return r1, r2


@dataclass(frozen=True)
class MartinetRamisModulus:
    mu: complex
    tau0: complex
    tau1: complex
    phi0: complex
    phi1: complex


def modulus(alpha: complex) -> MartinetRamisModulus:
    """Analytic-classification constants of F_alpha: (0, 1+alpha, 1-alpha, 0, 0)."""
    return MartinetRamisModulus(0j, 1.0 + alpha, 1.0 - alpha, 0j, 0j)


class RegionKind(enum.Enum):
    NODE = "Node"
    SADDLE = "Saddle"
    NEUTRAL = "Neutral"


@dataclass(frozen=True)
class RegionClass:
    kind: RegionKind
    epsilon: float


def classify_region(x: complex, eps: float = 0.05) -> RegionClass:
    """Node / saddle split by the sign of Re(1/x^2) against +-eps."""
    if x == 0:
        raise ZeroInput("region undefined at x = 0")
    if eps <= 0:
        raise OutOfRange("eps must be positive")
    w = (1.0 / (x * x)).real
    if w > eps:
        kind = RegionKind.NODE
    elif w < -eps:
        kind = RegionKind.SADDLE
    else:
        kind = RegionKind.NEUTRAL
    return RegionClass(kind, eps)


def formal_series_coefficients(n_max: int) -> list[int]:
    """Coefficients of the unique formal solution of x^3 f' = (1+3x^2) f - x^6.

    Exact integers: a_n = (n-5) a_{n-2} + [n = 6], zero below order 6 and at
    every odd order.  The even tail is a_{6+2k} = (2k+1)!!, so the series
    diverges for every x != 0.
    """
    if n_max < 0:
        raise OutOfRange("n_max must be >= 0")
    a = [0] * (n_max + 1)
    for n in range(6, n_max + 1):
        a[n] = (n - 5) * a[n - 2] + (1 if n == 6 else 0)
    return a
