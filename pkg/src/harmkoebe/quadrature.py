"""Adaptive composite Gauss-Legendre quadrature along radial segments ``[0, z]``.

All requested points are processed together: every pending panel of every
point is evaluated in one vectorized call per refinement sweep.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import IntegrationFailure

ATOL = 1e-10
RTOL = 1e-13
MAX_PANELS = 2 ** 16

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(15)


def _panel_rule(t0: np.ndarray, t1: np.ndarray):
    half = 0.5 * (t1 - t0)
    mid = 0.5 * (t1 + t0)
    t = mid[:, None] + half[:, None] * _NODES[None, :]
    return t, half[:, None] * _WEIGHTS[None, :]


def integrate_segments(integrand: Callable[[np.ndarray], np.ndarray], z,
                       atol: float = ATOL, rtol: float = RTOL,
                       max_panels: int = MAX_PANELS) -> np.ndarray:
    """Integrate ``integrand`` along the straight path from 0 to each ``z``.

    ``integrand(w)`` takes an array of points and returns an array of shape
    ``(k,) + w.shape`` (``k`` simultaneous integrands).  The result has shape
    ``(k,) + z.shape``.  A panel is accepted when a 15-point rule and its
    two-half refinement agree within ``max(atol, rtol |I|)`` scaled by the
    panel length.
    """
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    probe = np.asarray(integrand(np.zeros(1, dtype=complex)))
    k = probe.shape[0]
    total = np.zeros((k, flat.size), dtype=complex)
    panels = np.ones(flat.size, dtype=np.int64)

    idx = np.arange(flat.size)
    t0 = np.zeros(flat.size)
    t1 = np.ones(flat.size)
    while idx.size:
        tm = 0.5 * (t0 + t1)
        ts, ws = zip(*(_panel_rule(a, b) for a, b in ((t0, t1), (t0, tm), (tm, t1))))
        pts = [flat[idx][:, None] * t for t in ts]
        vals = [np.asarray(integrand(p)) for p in pts]
        dz = flat[idx][None, :]
        coarse = np.einsum("kpn,pn->kp", vals[0], ws[0]) * dz
        fine = (np.einsum("kpn,pn->kp", vals[1], ws[1])
                + np.einsum("kpn,pn->kp", vals[2], ws[2])) * dz
        err = np.max(np.abs(fine - coarse), axis=0)
        if not np.all(np.isfinite(fine)):
            raise IntegrationFailure("integrand is not finite on the segment")
        bound = np.maximum(atol, rtol * np.max(np.abs(fine), axis=0)) * (t1 - t0)
        ok = err <= bound
        np.add.at(total, (slice(None), idx[ok]), fine[:, ok])

        split = ~ok
        idx, a, m, b = idx[split], t0[split], tm[split], t1[split]
        np.add.at(panels, idx, 1)
        if idx.size and panels[idx].max() > max_panels:
            worst = flat[idx[np.argmax(panels[idx])]]
            raise IntegrationFailure(
                f"quadrature did not converge within {max_panels} panels at z={complex(worst)!r}")
        idx = np.concatenate([idx, idx])
        t0 = np.concatenate([a, m])
        t1 = np.concatenate([m, b])
    return total.reshape((k,) + z.shape)
