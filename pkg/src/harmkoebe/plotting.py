"""Matplotlib figures written next to the CLI's delimited output."""

from __future__ import annotations

import numpy as np


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_grid_image(img, path, title=None):
    """Draw the image of a polar grid (see :func:`harmkoebe.render.build_grid_image`)."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 6))
    for c in img.circles:
        c = np.append(c, c[:1])
        ax.plot(c.real, c.imag, color="tab:blue", lw=0.7)
    for s in img.spokes:
        ax.plot(s.real, s.imag, color="tab:red", lw=0.7)
    ax.set_aspect("equal")
    ax.set_xlabel("Re w")
    ax.set_ylabel("Im w")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_bounds(a, R, path, radii=None):
    """Growth and distortion bounds of order ``a + R`` against the values of ``K_{a,R}``."""
    from .analysis import distortion_bounds, growth_bounds
    from .shear import make_KaR

    plt = _pyplot()
    alpha = a + R
    r = np.linspace(0.02, 0.9, 90) if radii is None else np.asarray(radii, dtype=float)
    f = make_KaR(a, R)
    g = np.array([growth_bounds(alpha, x) for x in r])
    d = np.array([distortion_bounds(alpha, x) for x in r])
    fr = np.abs(f.value(r.astype(complex)))
    fm = np.abs(f.value(-r.astype(complex)))
    dh = np.abs(f.h.deriv_fn(r.astype(complex))) + np.abs(f.g.deriv_fn(r.astype(complex)))
    dl = np.abs(f.h.deriv_fn(-r.astype(complex))) - np.abs(f.g.deriv_fn(-r.astype(complex)))

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.plot(r, g[:, 1], "k-", label="upper bound")
    ax1.plot(r, g[:, 0], "k--", label="lower bound")
    ax1.plot(r[::6], fr[::6], "o", ms=4, label="|f(r)|")
    ax1.plot(r[::6], fm[::6], "s", ms=4, label="|f(-r)|")
    ax1.set_xlabel("r")
    ax1.set_title(f"growth, alpha = {alpha:g}")
    ax1.set_yscale("log")
    ax1.legend(fontsize=8)
    ax2.plot(r, d[:, 1], "k-", label="upper bound")
    ax2.plot(r, d[:, 0], "k--", label="lower bound")
    ax2.plot(r[::6], dh[::6], "o", ms=4, label="|h'(r)|+|g'(r)|")
    ax2.plot(r[::6], dl[::6], "s", ms=4, label="|h'(-r)|-|g'(-r)|")
    ax2.set_xlabel("r")
    ax2.set_title("distortion")
    ax2.set_yscale("log")
    ax2.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
