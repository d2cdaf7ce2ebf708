"""Leaf traces along a base circle, rendered to SVG with a CSV companion.

A trace fixes |x| = R and sweeps arg x, evaluating the sectorial solutions
y_c(x) for a family of leaf coordinates c.  The expensive part, the leaf
integral at x, does not depend on c, so it is computed once per angle and
shared across the whole family.  The sector is chosen per angle by nearest
axis; the visible jumps across the switching angles are the connection
phenomenon itself, not an artifact.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import OutOfRange
from .foliation import (
    COEF_X2,
    coef_x3,
    leaf_integral_parts,
    sector_select,
)
from .numerics import QuadratureConfig


@dataclass(frozen=True)
class LeafTrace:
    alpha: complex
    radius: float
    theta: np.ndarray        # angles swept, shape (n,)
    cs: np.ndarray           # leaf coordinates, shape (k,)
    values: np.ndarray       # y values, shape (k, n)


def trace_leaves(alpha: complex, radius: float, count: int,
                 n_theta: int = 181,
                 cfg: QuadratureConfig = QuadratureConfig()) -> LeafTrace:
    """Evaluate count leaves on the circle |x| = radius.

    Leaf coordinates are spread evenly on the real segment [-2, 2]
    (a single leaf means c = 0, the weak separatrix).  One leaf integral
    is computed per angle and reused for every c.
    """
    alpha = complex(alpha)
    if not 0.2 <= radius <= 1.5:
        raise OutOfRange("radius must lie in [0.2, 1.5]")
    if count < 1:
        raise OutOfRange("count must be >= 1")
    if n_theta < 2:
        raise OutOfRange("n_theta must be >= 2")
    cs = np.array([0j]) if count == 1 else np.linspace(-2.0, 2.0, count) + 0j
    thetas = np.linspace(-math.pi, math.pi, n_theta)
    c2 = coef_x3(alpha)
    want_z = alpha != 0
    values = np.empty((count, n_theta), dtype=complex)
    for i, th in enumerate(thetas):
        x = radius * cmath.exp(1j * th)
        tag = sector_select(x)
        shift = 0.5 / (x * x)
        j1, jz = leaf_integral_parts(tag, x, shift, cfg, want_z=want_z)
        j_alpha = COEF_X2 * j1 + (c2 * jz if want_z else 0.0)
        decay = cmath.exp(-shift)
        values[:, i] = cs * decay - j_alpha
    return LeafTrace(alpha=alpha, radius=float(radius), theta=thetas,
                     cs=cs, values=values)


def write_csv(trace: LeafTrace, path) -> Path:
    """Delimited form: columns theta, re_y, im_y, c_index; one block per leaf."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta", "re_y", "im_y", "c_index"])
        for k in range(len(trace.cs)):
            for th, y in zip(trace.theta, trace.values[k]):
                writer.writerow([repr(float(th)), repr(float(y.real)),
                                 repr(float(y.imag)), k])
    return path


def write_svg(trace: LeafTrace, path) -> Path:
    """Two stacked panels: Re y and Im y against arg x, one curve per leaf."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    fig, (ax_re, ax_im) = plt.subplots(2, 1, sharex=True, figsize=(8.0, 6.0))
    for k, c in enumerate(trace.cs):
        label = f"c = {complex(c):.3g}" if len(trace.cs) <= 8 else None
        ax_re.plot(trace.theta, trace.values[k].real, lw=1.0, label=label)
        ax_im.plot(trace.theta, trace.values[k].imag, lw=1.0)
    ax_re.set_ylabel("Re y")
    ax_im.set_ylabel("Im y")
    ax_im.set_xlabel("arg x")
    a = trace.alpha
    ax_re.set_title(f"leaves on |x| = {trace.radius:g}, alpha = {a.real:g}{a.imag:+g}i")
    if len(trace.cs) <= 8:
        ax_re.legend(loc="upper right", fontsize=8)
    for ax in (ax_re, ax_im):
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path


def render_leaves(trace: LeafTrace, out) -> list[Path]:
    """Write the requested artifact(s); SVG output always gets a CSV companion.

    out must end in .svg or .csv.  Returns the paths written.
    """
    out = Path(out)
    suffix = out.suffix.lower()
    if suffix == ".csv":
        return [write_csv(trace, out)]
    if suffix == ".svg":
        svg = write_svg(trace, out)
        companion = write_csv(trace, out.with_suffix(".csv"))
        return [svg, companion]
    raise ValueError("output must end in .svg or .csv")
