"""Piecewise-affine transverse homeomorphisms psi+- of the leaf space.

psi+(c) = c + alpha g(Re c) and psi-(c) = c - alpha + alpha g(1 + Re(c - alpha))
with g the 2-periodic trapezoid of ramp width eta = (1 - |Re alpha|)/3.  They
solve the compatibility system

    psi+(c + 1 - alpha) = psi-(c) + 1
    psi-(c + 1 + alpha) = psi+(c) + 1
    psi+-(0) = 0,   psi+-(c)/c -> 1  as |c| -> infinity

exactly: both sides of each equation reduce to the same arithmetic
expression by the 2-periodicity of g, so the identities survive in floating
point to rounding error.  Evaluation always forms the bounded adjustment
psi(c) - c first (modulus at most |alpha|), keeping huge |c| safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AlphaTooLarge, OutOfRange

__all__ = [
    "eta_of",
    "BumpProfile",
    "bump_g",
    "TransverseMap",
    "psi_adjust",
    "psi_apply",
    "psi_invert",
    "check_system",
]


def eta_of(alpha: complex) -> float:
    """Ramp width eta = (1 - |Re alpha|)/3; needs |alpha| < 1/10."""
    if abs(alpha) >= 0.1:
        raise AlphaTooLarge(f"|alpha| = {abs(alpha):.4f} >= 1/10")
    return (1.0 - abs(complex(alpha).real)) / 3.0


@dataclass(frozen=True)
class BumpProfile:
    eta: float

    def __post_init__(self):
        if not 0.0 < self.eta <= 1.0 / 3.0 + 1e-12:
            raise OutOfRange(f"eta = {self.eta} outside (0, 1/3]")


def bump_g(profile: BumpProfile, t: float) -> float:
    """2-periodic trapezoid: 0 on [0,eta], ramps to 1 on [eta,2eta], flat 1
    on [2eta,2-2eta], back down symmetrically.  Exact 0 and 1 on the flats.
    """
    eta = profile.eta
    r = math.fmod(t, 2.0)  # fmod is exact
    if r < 0.0:
        r += 2.0
    if r <= eta or r >= 2.0 - eta:
        return 0.0
    if r < 2.0 * eta:
        return (r - eta) / eta
    if r <= 2.0 - 2.0 * eta:
        return 1.0
    return (2.0 - eta - r) / eta


@dataclass(frozen=True)
class TransverseMap:
    """One of the pair (psi+, psi-); side picks the defining formula."""

    alpha: complex
    side: str  # "+" or "-"
    profile: BumpProfile = field(default=None)

    def __post_init__(self):
        if abs(self.alpha) >= 0.1:
            raise AlphaTooLarge(f"|alpha| = {abs(self.alpha):.4f} >= 1/10")
        if self.side not in ("+", "-"):
            raise OutOfRange(f"side must be '+' or '-', got {self.side!r}")
        if self.profile is None:
            object.__setattr__(self, "profile", BumpProfile(eta_of(self.alpha)))


def psi_adjust(tmap: TransverseMap, c: complex) -> complex:
    """psi(c) - c; depends on Re c only, vanishes exactly on the g-flats."""
    alpha = complex(tmap.alpha)
    if tmap.side == "+":
        g = bump_g(tmap.profile, complex(c).real)
        return alpha * g if g != 0.0 else 0j
    g = bump_g(tmap.profile, 1.0 + complex(c).real - alpha.real)
    # the minus side rides the flat g == 1 near c = 0, giving an exact zero
    return alpha * (g - 1.0) if g != 1.0 else 0j


def psi_apply(tmap: TransverseMap, c: complex) -> complex:
    return c + psi_adjust(tmap, c)


def _real_adjust(tmap: TransverseMap, rho: float) -> float:
    return psi_adjust(tmap, complex(rho, 0.0)).real


def psi_invert(tmap: TransverseMap, w: complex) -> complex:
    """Two-sided inverse of psi_apply.

    Re w = rho + Re(psi_adjust)(rho) is strictly increasing piecewise linear
    in rho with slope within [1 - |Re alpha|/eta, 1 + |Re alpha|/eta], both
    bounds positive, and maps 2k to 2k exactly; solve it on the bracketing
    period cell by walking the breakpoints, then subtract the adjustment.
    """
    w = complex(w)
    target = w.real
    alpha = complex(tmap.alpha)
    eta = tmap.profile.eta
    k = math.floor(target / 2.0)
    lo = 2.0 * k
    while lo + _real_adjust(tmap, lo) > target:
        lo -= 2.0
    while (lo + 2.0) + _real_adjust(tmap, lo + 2.0) < target:
        lo += 2.0
    # breakpoints of the adjustment inside [lo, lo+2]
    if tmap.side == "+":
        offs = (0.0, eta, 2.0 * eta, 2.0 - 2.0 * eta, 2.0 - eta, 2.0)
        bps = [lo + o for o in offs]
    else:
        base = alpha.real - 1.0  # g argument hits breakpoints at rho = base + off + 2m
        bps = sorted({lo, lo + 2.0, *_breaks_between(base, lo, lo + 2.0, eta)})
    rho = _solve_piecewise(tmap, bps, target)
    if tmap.side == "+":
        g = bump_g(tmap.profile, rho)
        adj = alpha * g if g != 0.0 else 0j
    else:
        g = bump_g(tmap.profile, 1.0 + rho - alpha.real)
        adj = alpha * (g - 1.0) if g != 1.0 else 0j
    return w - adj


def _breaks_between(base: float, lo: float, hi: float, eta: float):
    # rho values in [lo, hi] where 1 + rho - Re(alpha) crosses a g breakpoint
    out = []
    for off in (0.0, eta, 2.0 * eta, 2.0 - 2.0 * eta, 2.0 - eta):
        # rho = base + off + 2m
        m0 = math.floor((lo - base - off) / 2.0)
        for m in (m0, m0 + 1, m0 + 2):
            rho = base + off + 2.0 * m
            if lo <= rho <= hi:
                out.append(rho)
    return out


def _solve_piecewise(tmap: TransverseMap, bps, target: float) -> float:
    vals = [b + _real_adjust(tmap, b) for b in bps]
    for (b0, b1), (v0, v1) in zip(zip(bps, bps[1:]), zip(vals, vals[1:])):
        if v0 <= target <= v1:
            if v1 == v0:
                return b0
            t = (target - v0) / (v1 - v0)
            return b0 + t * (b1 - b0)
    # numeric fringe: clamp to the nearest cell edge
    return bps[0] if target < vals[0] else bps[-1]


def check_system(alpha: complex, n_samples: int = 1000, seed: int = 42) -> dict:
    """Deviations of the compatibility system on seeded random samples."""
    if abs(alpha) >= 0.1:
        raise AlphaTooLarge(f"|alpha| = {abs(alpha):.4f} >= 1/10")
    rng = np.random.default_rng(seed)
    plus = TransverseMap(alpha, "+")
    minus = TransverseMap(alpha, "-")
    cs = rng.uniform(-3.0, 3.0, size=(n_samples, 2))
    dev_sys = 0.0
    for re, im in cs:
        c = complex(re, im)
        d1 = psi_apply(plus, c + 1.0 - alpha) - (psi_apply(minus, c) + 1.0)
        d2 = psi_apply(minus, c + 1.0 + alpha) - (psi_apply(plus, c) + 1.0)
        dev_sys = max(dev_sys, abs(d1), abs(d2))
    dev_origin = max(abs(psi_apply(plus, 0j)), abs(psi_apply(minus, 0j)))
    dev_limit = 0.0
    for mag in (1e3, 1e6):
        for tm in (plus, minus):
            c = complex(mag, mag)
            dev_limit = max(dev_limit, abs(psi_apply(tm, c) / c - 1.0))
    dev_small = max(abs(psi_apply(plus, 1e-3 + 0j) - 1e-3),
                    abs(psi_apply(minus, 1e-3 + 0j) - 1e-3))
    return {
        "system_max_dev": dev_sys,
        "origin_dev": dev_origin,
        "limit_dev": dev_limit,
        "small_c_dev": dev_small,
        "samples": n_samples,
        "seed": seed,
    }
