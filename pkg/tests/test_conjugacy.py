"""Tests for the fibered equivalence phi.

The load-bearing facts: phi is the identity exactly at alpha = 0, it sends
the leaf with constant c to the model leaf with constant psi(c), the two
sectorial evaluations agree on the overlap, and the base correction solves
E(X) = E(x) * f_hat on the principal branch.
"""

import cmath
import math

import mpmath
import numpy as np
import pytest

from saddlenode.conjugacy import (
    ConjugacyMap,
    CutoffConfig,
    chi_pair,
    f_hat,
    f_sector,
    phi,
    phi_sectorial,
    tail_delta,
    x_map,
)
from saddlenode.errors import (
    AlphaTooLarge,
    AnnulusGap,
    OutsideSector,
    ZeroInput,
)
from saddlenode.foliation import Sector, leaf_value
from saddlenode.transverse import psi_apply


def test_cutoff_config_defaults_and_validation():
    cfg = CutoffConfig()
    assert cfg.delta == 0.2
    assert cfg.r == 0.5
    with pytest.raises(ValueError):
        CutoffConfig(delta=0.0)
    with pytest.raises(ValueError):
        CutoffConfig(delta=1.0)
    with pytest.raises(ValueError):
        CutoffConfig(r=1.0)


def test_chi_pair_values():
    cfg = CutoffConfig()
    assert chi_pair(cfg, math.pi / 4) == (1.0, 0.0)
    assert chi_pair(cfg, 0.0) == (0.0, 1.0)
    assert chi_pair(cfg, math.pi / 2) == (0.0, 1.0)
    # support boundary sits at asin(delta)/2 from the bisector
    w = math.asin(cfg.delta) / 2
    c1, _ = chi_pair(cfg, math.pi / 4 + 0.5 * w)
    assert abs(c1 - 0.5) < 1e-12


def test_chi_pair_partition_and_support():
    cfg = CutoffConfig()
    for theta in np.linspace(-7, 7, 201):
        c1, c2 = chi_pair(cfg, float(theta))
        assert c1 + c2 == 1.0
        assert 0.0 <= c1 <= 1.0
        if c2 == 1.0:
            assert abs(math.cos(2 * theta)) >= cfg.delta - 1e-12
        else:
            assert abs(math.cos(2 * theta)) < cfg.delta + 1e-12


def test_chi_pair_quarter_turn_period():
    cfg = CutoffConfig(delta=0.35)
    for theta in (-1.3, 0.2, 0.77, 2.0):
        a = chi_pair(cfg, theta)
        b = chi_pair(cfg, theta + math.pi / 2)
        assert abs(a[0] - b[0]) < 1e-12


def test_conjugacy_map_validation():
    with pytest.raises(AlphaTooLarge):
        ConjugacyMap(0.1)
    with pytest.raises(ValueError):
        ConjugacyMap(0.05, r_min=0.0)
    with pytest.raises(ValueError):
        ConjugacyMap(0.05, r_max=0.9)


def test_f_sector_trivial_cases():
    cm = ConjugacyMap(0.05)
    # real x: the angular cutoff vanishes, no deviation at all
    assert f_sector(cm, Sector.PLUS, 0.8 + 0j, 1.0 + 0j) == 1.0
    assert f_sector(cm, Sector.MINUS, -0.6 + 0j, 2.3 - 1j) == 1.0
    # c on the inner flat of the profile: psi(c) = c so the ratio is 1
    x = 0.5 * cmath.exp(0.25j * math.pi)
    assert f_sector(cm, Sector.PLUS, x, 0.1 + 5j) == 1.0
    with pytest.raises(ZeroInput):
        f_sector(cm, Sector.PLUS, 0j, 1.0)


def test_f_sector_on_bisector():
    cm = ConjugacyMap(0.05)
    x = 0.5 * cmath.exp(0.25j * math.pi)
    got = f_sector(cm, Sector.PLUS, x, 1.0 + 0j)
    assert abs(got - 1.0 / 1.05) < 1e-15, "chi1 = 1 and psi(1) = 1.05 here"


def test_f_hat_radial_interpolation():
    cm = ConjugacyMap(0.05)
    c = 1.0 + 0j
    inner = 0.4 * cmath.exp(0.25j * math.pi)
    assert f_hat(cm, Sector.PLUS, inner, c) == f_sector(cm, Sector.PLUS, inner, c)
    outer = 2.0 * cmath.exp(0.25j * math.pi)
    assert f_hat(cm, Sector.PLUS, outer, c) == 1.0
    mid = 0.75 * cmath.exp(0.25j * math.pi)
    dev_mid = f_hat(cm, Sector.PLUS, mid, c) - 1.0
    dev_full = f_sector(cm, Sector.PLUS, mid, c) - 1.0
    assert abs(dev_mid - 0.5 * dev_full) < 1e-16


def test_x_map_identity_when_flat():
    cm = ConjugacyMap(0.05)
    x = 0.8 + 0j
    assert x_map(cm, Sector.PLUS, x, 1.0 + 0j) == x
    with pytest.raises(ZeroInput):
        x_map(cm, Sector.PLUS, 0j, 1.0)


def test_x_map_against_high_precision():
    """On the bisector with c = 1 the factor is exactly 20/21."""
    cm = ConjugacyMap(0.05)
    x = 0.4 * cmath.exp(0.25j * math.pi)
    got = x_map(cm, Sector.PLUS, x, 1.0 + 0j)
    with mpmath.workdps(50):
        xm = mpmath.mpc(x.real, x.imag)
        f = mpmath.mpf(20) / 21
        want = xm / mpmath.sqrt(1 - 2 * xm * xm * mpmath.log(f))
        want = complex(want)
    assert abs(got - want) < 1e-14


def test_x_map_solves_exponent_relation():
    cm = ConjugacyMap(0.05)
    for x, c in [
        (0.45 * cmath.exp(0.25j * math.pi), 1.3 - 0.4j),
        (0.75 * cmath.exp(-0.22j * math.pi), 0.9 + 0.2j),
        (0.3 * cmath.exp(0.72j * math.pi), -1.1 + 0j),
    ]:
        tag = Sector.PLUS if x.imag >= 0 else Sector.MINUS
        bigx = x_map(cm, tag, x, c)
        lhs = cmath.exp(-0.5 / (bigx * bigx))
        rhs = cmath.exp(-0.5 / (x * x)) * f_hat(cm, tag, x, c)
        assert abs(lhs / rhs - 1.0) < 1e-12


def test_identity_at_alpha_zero():
    cm = ConjugacyMap(0.0)
    pts = [
        (0.7j, 0.3 + 0.2j),
        (0.5 * cmath.exp(0.25j * math.pi), -1.0 + 0.4j),
        (1.3 + 0.2j, 5.0 - 2j),
        (-0.9 + 0.1j, 0.01j),
    ]
    for x, y in pts:
        assert phi(cm, x, y) == (x, y)
    assert phi_sectorial(cm, Sector.MINUS, -0.7j, 2.0 + 0j) == (-0.7j, 2.0 + 0j)
    assert phi(cm, 0j, 0.25 + 1j) == (0j, 0.25 + 1j)
    assert tail_delta(cm, Sector.PLUS, 1.2j, 0.4 + 0j) == 0j


def test_fiber_over_zero_is_fixed():
    cm = ConjugacyMap(0.07)
    for y in (0j, 1.5 - 0.3j, -2j):
        assert phi(cm, 0, y) == (0j, y)


def test_domain_guards():
    cm = ConjugacyMap(0.05)
    with pytest.raises(AnnulusGap):
        phi(cm, 0.1 + 0j, 0.2 + 0j)
    with pytest.raises(OutsideSector):
        phi_sectorial(cm, Sector.PLUS, -0.5j, 0.1 + 0j)


def test_tail_returns_same_x():
    cm = ConjugacyMap(0.04 + 0.01j)
    x = 1.25 * cmath.exp(0.3j)
    bigx, bigy = phi(cm, x, 0.6 - 0.2j)
    assert bigx == x
    assert bigy != 0.6 - 0.2j  # the fiber does move


def test_leaf_to_leaf_invariant():
    """y on the leaf c maps to the model leaf psi(c)."""
    alpha = 0.06 + 0.02j
    cm = ConjugacyMap(alpha)
    rng = np.random.default_rng(19)
    worst = 0.0
    for tag in (Sector.PLUS, Sector.MINUS):
        tm = cm.transverse(tag)
        for _ in range(12):
            r = rng.uniform(0.3, 0.95)
            th = tag.sign * rng.uniform(-0.2, 1.2) * math.pi
            x = r * cmath.exp(1j * th)
            c = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            y = leaf_value(alpha, tag, c, x)
            bigx, bigy = phi_sectorial(cm, tag, x, y)
            want = leaf_value(0.0, tag, psi_apply(tm, c), bigx)
            worst = max(worst, abs(bigy - want))
    assert worst < 1e-9, f"max leaf deviation {worst:.3e}"


def test_leaf_invariant_through_tail():
    alpha = 0.05
    cm = ConjugacyMap(alpha)
    x = 1.1j
    c = 0.7 + 0j
    y = leaf_value(alpha, Sector.PLUS, c, x)
    bigx, bigy = phi_sectorial(cm, Sector.PLUS, x, y)
    assert bigx == x
    want = leaf_value(0.0, Sector.PLUS, psi_apply(cm.transverse(Sector.PLUS), c), x)
    assert abs(bigy - want) < 1e-9


def test_weak_separatrix_goes_to_model_separatrix():
    # psi(0) = 0, so the c = 0 leaf lands on the model c = 0 leaf
    alpha = 0.08
    cm = ConjugacyMap(alpha)
    for x in (0.9j, 0.6 * cmath.exp(0.6j * math.pi)):
        y = leaf_value(alpha, Sector.PLUS, 0j, x)
        bigy = cm.y_map(Sector.PLUS, x, y)
        assert abs(bigy - leaf_value(0.0, Sector.PLUS, 0j, x)) < 1e-10


def test_unit_leaf_picks_up_alpha_shift():
    """On real x the base is fixed and Y lands on the model leaf 1 + alpha."""
    alpha = 0.05
    cm = ConjugacyMap(alpha)
    x = 0.9 + 0j
    y = leaf_value(alpha, Sector.PLUS, 1.0 + 0j, x)
    bigx, bigy = phi_sectorial(cm, Sector.PLUS, x, y)
    assert bigx == x
    want = leaf_value(0.0, Sector.PLUS, 0j, x) \
        + (1 + alpha) * cmath.exp(-0.5 / (x * x))
    assert abs(bigy - want) < 1e-10


def test_sector_gluing_on_overlap():
    cm = ConjugacyMap(0.06 + 0.02j)
    rng = np.random.default_rng(7)
    for _ in range(10):
        r = rng.uniform(0.3, 0.95)
        th = rng.uniform(-0.2, 0.2) * math.pi
        if rng.uniform() < 0.5:
            th += math.pi
        x = r * cmath.exp(1j * th)
        y = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        p = phi_sectorial(cm, Sector.PLUS, x, y)
        m = phi_sectorial(cm, Sector.MINUS, x, y)
        assert abs(p[0] - m[0]) < 1e-12
        assert abs(p[1] - m[1]) < 1e-12


def test_sector_gluing_in_tail():
    cm = ConjugacyMap(0.05)
    x = 1.1 + 0j
    y = 0.4 + 0.1j
    p = phi_sectorial(cm, Sector.PLUS, x, y)
    m = phi_sectorial(cm, Sector.MINUS, x, y)
    assert abs(p[1] - m[1]) < 1e-10


def test_continuity_across_unit_circle():
    cm = ConjugacyMap(0.07)
    eps = 1e-8
    th = 0.3
    y = 0.3 + 0.1j
    inner = phi(cm, (1 - eps) * cmath.exp(1j * th), y)
    outer = phi(cm, (1 + eps) * cmath.exp(1j * th), y)
    assert abs(inner[0] - outer[0]) < 1e-6
    assert abs(inner[1] - outer[1]) < 1e-6


def test_fibers_stay_separated():
    cm = ConjugacyMap(0.05)
    x = 0.5 * cmath.exp(0.25j * math.pi)
    rng = np.random.default_rng(31)
    ys = [complex(a, b) for a, b in rng.uniform(-1, 1, (20, 2))]
    images = [phi(cm, x, y) for y in ys]
    ratio = math.inf
    for i in range(len(ys)):
        for j in range(i):
            gap = max(abs(images[i][0] - images[j][0]),
                      abs(images[i][1] - images[j][1]))
            ratio = min(ratio, gap / abs(ys[i] - ys[j]))
    assert ratio > 0.5
