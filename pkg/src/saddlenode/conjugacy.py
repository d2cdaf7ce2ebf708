"""Fibered topological equivalence between the perturbed and model foliations.

The map phi sends a leaf of the model (alpha = 0) foliation to a leaf of the
perturbed one.  Over each sector it acts on the leaf constant c through the
transverse correction psi and bends the base coordinate through a sectorial
factor f, mollified in the angular direction by a cutoff pair (chi1, chi2)
supported near the sector-overlap bisectors and switched off radially
outside |x| < 1.

Everything is evaluated in difference form: the output is y plus explicitly
small corrections, each of which vanishes identically when alpha = 0, so the
map degenerates to the identity exactly rather than to machine precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    AlphaTooLarge,
    AnnulusGap,
    BranchViolation,
    OutsideSector,
    ZeroInput,
)
from .foliation import (
    COEF_X2,
    DEFAULT_ANNULUS,
    Sector,
    coef_x3,
    leaf_integral_parts,
    sector_contains,
    sector_select,
    weak_separatrix_parts,
)
from .numerics import QuadratureConfig
from .transverse import TransverseMap, psi_adjust


@dataclass(frozen=True)
class CutoffConfig:
    """Angular and radial mollifier parameters.

    delta: half-planes are blended where |cos(2 arg x)| < delta, i.e. in an
    angular band of half-width asin(delta)/2 around each bisector
    pi/4 + k pi/2.  r: the sectorial factor is used unmodified for |x| <= r
    and interpolated linearly to 1 on r <= |x| <= 1.
    """

    delta: float = 0.2
    r: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if not 0.0 < self.r < 1.0:
            raise ValueError("r must lie in (0, 1)")


def chi_pair(cutoffs: CutoffConfig, theta: float) -> tuple[float, float]:
    """Partition of unity (chi1, chi2) in the angle theta.

    chi1 is a tent of half-width asin(delta)/2 around the bisector angles
    pi/4 + k pi/2; chi2 = 1 - chi1 equals 1 exactly where |cos 2 theta| >= delta.
    """
    u = math.remainder(theta - math.pi / 4.0, math.pi / 2.0)
    d = abs(u)
    w = math.asin(cutoffs.delta) / 2.0
    chi1 = max(0.0, 1.0 - d / w)
    return chi1, 1.0 - chi1


def _radial_weight(cutoffs: CutoffConfig, ax: float) -> float:
    # xi1 multiplies the sectorial deviation: 1 inside |x| <= r, 0 for |x| >= 1
    if ax >= 1.0:
        return 0.0
    if ax <= cutoffs.r:
        return 1.0
    return (1.0 - ax) / (1.0 - cutoffs.r)


@dataclass(frozen=True)
class ConjugacyMap:
    """phi for one value of alpha, |alpha| < 1/10.

    Carries the two transverse maps, the cutoff parameters, the quadrature
    settings used for leaf integrals, and the base annulus on which the
    interior evaluation is defined.
    """

    alpha: complex
    cutoffs: CutoffConfig = CutoffConfig()
    quad: QuadratureConfig = QuadratureConfig()
    r_min: float = DEFAULT_ANNULUS[0]
    r_max: float = DEFAULT_ANNULUS[1]

    def __post_init__(self):
        a = complex(self.alpha)
        object.__setattr__(self, "alpha", a)
        if abs(a) >= 0.1:
            raise AlphaTooLarge(f"|alpha| = {abs(a):.4g} >= 1/10")
        if not 0.0 < self.r_min < 1.0 <= self.r_max:
            raise ValueError("need 0 < r_min < 1 <= r_max")
        object.__setattr__(self, "_psi_plus", TransverseMap(a, "+"))
        object.__setattr__(self, "_psi_minus", TransverseMap(a, "-"))

    def transverse(self, tag: Sector) -> TransverseMap:
        return self._psi_plus if tag is Sector.PLUS else self._psi_minus

    # thin method forms of the module operations
    def f_sector(self, tag: Sector, x: complex, c: complex) -> complex:
        return f_sector(self, tag, x, c)

    def f_hat(self, tag: Sector, x: complex, c: complex) -> complex:
        return f_hat(self, tag, x, c)

    def x_map(self, tag: Sector, x: complex, c: complex) -> complex:
        return x_map(self, tag, x, c)

    def y_map(self, tag: Sector, x: complex, y: complex) -> complex:
        return phi_sectorial(self, tag, x, y)[1]

    def phi(self, x: complex, y: complex) -> tuple[complex, complex]:
        return phi(self, x, y)

    def phi_sectorial(self, tag: Sector, x: complex,
                      y: complex) -> tuple[complex, complex]:
        return phi_sectorial(self, tag, x, y)


def _fs_dev(cmap: ConjugacyMap, tag: Sector, x: complex, c: complex) -> complex:
    """f_sector - 1, kept in difference form.

    f_sector = chi2 + chi1 * c / psi(c), so the deviation is
    chi1 * (-adj / (c + adj)) with adj = psi(c) - c.  Exactly zero whenever
    the angular cutoff vanishes or c sits on a flat of the profile.
    """
    chi1, _ = chi_pair(cmap.cutoffs, cmath.phase(x))
    if chi1 == 0.0:
        return 0j
    adj = psi_adjust(cmap.transverse(tag), c)
    if adj == 0:
        return 0j
    return chi1 * (-adj / (c + adj))


def f_sector(cmap: ConjugacyMap, tag: Sector, x: complex, c: complex) -> complex:
    """Angularly mollified sectorial factor chi2 + chi1 * c / psi(c)."""
    x = complex(x)
    if x == 0:
        raise ZeroInput("f_sector needs x != 0 to read off arg x")
    return 1.0 + _fs_dev(cmap, tag, x, c)


def _fh_dev(cmap: ConjugacyMap, tag: Sector, x: complex, c: complex) -> complex:
    xi1 = _radial_weight(cmap.cutoffs, abs(x))
    if xi1 == 0.0:
        return 0j
    dev = _fs_dev(cmap, tag, x, c)
    if dev == 0:
        return 0j
    return xi1 * dev

def f_hat(cmap: ConjugacyMap, tag: Sector, x: complex, c: complex) -> complex:
    """Radial interpolation of f_sector: equal to it for |x| <= r, 1 for |x| >= 1."""
    x = complex(x)
    if x == 0:
        raise ZeroInput("f_hat needs x != 0")
    return 1.0 + _fh_dev(cmap, tag, x, c)


def x_map(cmap: ConjugacyMap, tag: Sector, x: complex, c: complex) -> complex:
    """Base component X of phi: x corrected so that E(X) = E(x) * f_hat.

    Solves 1/X^2 = 1/x^2 - 2 log f_hat, i.e. X = x / sqrt(1 - 2 x^2 log f_hat)
    on the principal branch.  Returns x unchanged whenever the deviation
    vanishes.  Raises BranchViolation if the radicand leaves the right
    half-plane (cannot happen for |alpha| < 1/10 on |x| <= 1).
    """
    x = complex(x)
    if x == 0:
        raise ZeroInput("x_map needs x != 0")
    fdev = _fh_dev(cmap, tag, x, c)
    if fdev == 0:
        return x
    log_f = cmath.log(1.0 + fdev)
    radicand = 1.0 - 2.0 * x * x * log_f
    if radicand.real <= 0.0:
        raise BranchViolation(
            f"1 - 2 x^2 log f_hat = {radicand} left the principal branch")
    return x / cmath.sqrt(radicand)


def _phi_interior(cmap: ConjugacyMap, tag: Sector, x: complex,
                  y: complex) -> tuple[complex, complex]:
    # shared-exponent leaf integrals: Jic(x) = exp(-shift) * int (...) e^{1/2z^2} dz/z...
    shift = 0.5 / (x * x)
    ex = cmath.exp(-shift)
    alpha = cmap.alpha
    c2 = coef_x3(alpha)
    want_z = alpha != 0
    j1x, jzx = leaf_integral_parts(tag, x, shift, cmap.quad, want_z=want_z)
    j_alpha = COEF_X2 * j1x + (c2 * jzx if want_z else 0.0)
    b0 = y + j_alpha                      # equals c * E(x) on the nose
    c = b0 * cmath.exp(shift)
    adj = psi_adjust(cmap.transverse(tag), c)
    fdev = _fh_dev(cmap, tag, x, c)

    if fdev == 0:
        x_out = x
        j1x_out = j1x                     # same point, same integral
    else:
        log_f = cmath.log(1.0 + fdev)
        radicand = 1.0 - 2.0 * x * x * log_f
        if radicand.real <= 0.0:
            raise BranchViolation(
                f"1 - 2 x^2 log f_hat = {radicand} left the principal branch")
        x_out = x / cmath.sqrt(radicand)
        j1x_out, _ = leaf_integral_parts(tag, x_out, 0.5 / (x_out * x_out),
                                         cmap.quad, want_z=False)

    # Y = psi(c) E(X) - J0(X) with E(X) = E(x)(1 + fdev); expanding around y
    # via c E(x) = y + J_alpha(x) leaves three explicitly small corrections
    d_model = COEF_X2 * (j1x - j1x_out)
    d_coef = c2 * jzx if want_z else 0.0
    b = b0 + adj * ex                     # psi(c) * E(x)
    y_out = y + d_model + d_coef + adj * ex + fdev * b
    return x_out, y_out


def tail_delta(cmap: ConjugacyMap, tag: Sector, x: complex,
               y: complex) -> complex:
    """Y - y for |x| >= 1, where the cutoff forces f_hat = 1 and X = x.

    Exposed separately because the chart at infinity needs the correction
    itself: there Y and y diverge while their difference stays bounded.
    Leaf integrals are taken along the vertical ray in the s = 1/x chart,
    which stays well clear of the turning region.  Exactly 0 at alpha = 0.
    """
    s = 1.0 / x
    alpha = cmap.alpha
    want2 = alpha != 0
    r1, r2 = weak_separatrix_parts(tag, s, cmap.quad, want2=want2)
    es = cmath.exp(-0.5 * s * s)
    c2 = coef_x3(alpha)
    w_model = -es * COEF_X2 * r1
    w_alpha = w_model + (-es * c2 * r2 if want2 else 0.0)
    c = (y - w_alpha) * cmath.exp(0.5 * s * s)
    adj = psi_adjust(cmap.transverse(tag), c)
    d_coef = w_model - w_alpha            # = es * c2 * r2, exactly 0 at alpha = 0
    return d_coef + adj * es


def _phi_tail(cmap: ConjugacyMap, tag: Sector, x: complex,
              y: complex) -> tuple[complex, complex]:
    return x, y + tail_delta(cmap, tag, x, y)


def phi_sectorial(cmap: ConjugacyMap, tag: Sector, x: complex,
                  y: complex) -> tuple[complex, complex]:
    """phi evaluated with a caller-chosen sector tag.

    The tag selects which sectorial leaf decomposition is used; on the
    overlap both choices agree by construction.  x must lie in the closed
    sector, and either satisfy |x| >= r_min or be 0 (where phi is the
    identity on the fiber).
    """
    x = complex(x)
    y = complex(y)
    if x == 0:
        return 0j, y
    if not sector_contains(tag, x):
        raise OutsideSector(f"x = {x} not in sector {tag.value}")
    ax = abs(x)
    if ax >= 1.0:
        return _phi_tail(cmap, tag, x, y)
    if ax < cmap.r_min:
        raise AnnulusGap(
            f"|x| = {ax:.4g} < r_min = {cmap.r_min}; phi is only evaluated "
            "on the annulus and at x = 0")
    return _phi_interior(cmap, tag, x, y)


def phi(cmap: ConjugacyMap, x: complex, y: complex) -> tuple[complex, complex]:
    """The conjugacy (x, y) -> (X, Y), choosing the sector nearest to arg x."""
    x = complex(x)
    y = complex(y)
    if x == 0:
        return 0j, y
    return phi_sectorial(cmap, sector_select(x), x, y)
