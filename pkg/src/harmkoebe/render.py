"""
Images of polar grids under a map of the disk.

Concentric circles ``|z| = k r_max / rings`` and radii ``arg z = 2 pi j / spokes``
are sampled, pushed through the map, and written as SVG polylines or a
binary PPM raster.  Both writers are byte-deterministic for fixed inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadParameter


@dataclass(frozen=True)
class RenderSpec:
    rings: int = 8
    spokes: int = 16
    max_radius: float = 0.95
    fmt: str = "svg"
    size: int = 512
    resolution: int = 256
    window: tuple[float, float, float, float] | None = None  # xmin, xmax, ymin, ymax

    def __post_init__(self):
        if self.rings < 1 or self.spokes < 1:
            raise BadParameter("rings and spokes must be at least 1")
        if not 0 < self.max_radius < 1:
            raise BadParameter(f"max_radius must lie in (0, 1), got {self.max_radius!r}")
        if self.fmt not in ("svg", "ppm"):
            raise BadParameter(f"unknown image format {self.fmt!r}")
        if self.resolution < 2 or self.size < 8:
            raise BadParameter("resolution must be >= 2 and size >= 8")
        if self.window is not None:
            x0, x1, y0, y1 = self.window
            if not (x1 > x0 and y1 > y0):
                raise BadParameter(f"empty window {self.window!r}")


@dataclass
class GridImage:
    """Images of the grid circles (closed) and radii (open) as complex vertex arrays."""

    circles: list = field(default_factory=list)
    spokes: list = field(default_factory=list)

    @property
    def polylines(self) -> list:
        return list(self.circles) + list(self.spokes)

    @property
    def vertices(self) -> np.ndarray:
        return np.concatenate([np.ravel(p) for p in self.polylines])

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        v = self.vertices
        return float(v.real.min()), float(v.real.max()), float(v.imag.min()), float(v.imag.max())


def grid_points(rspec: RenderSpec) -> tuple[np.ndarray, np.ndarray]:
    """Preimage vertices: ``(rings, resolution)`` circle points and ``(spokes, resolution)`` radius points."""
    n = rspec.resolution
    radii = rspec.max_radius * np.arange(1, rspec.rings + 1) / rspec.rings
    circ = radii[:, None] * np.exp(2j * np.pi * np.arange(n) / n)[None, :]
    dirs = np.exp(2j * np.pi * np.arange(rspec.spokes) / rspec.spokes)
    spk = dirs[:, None] * np.linspace(0.0, rspec.max_radius, n)[None, :]
    return circ, spk


def build_grid_image(f, rspec: RenderSpec) -> GridImage:
    """Map the grid through ``f`` (anything with a vectorized ``value``)."""
    circ, spk = grid_points(rspec)
    pts = np.concatenate([circ.ravel(), spk.ravel()])
    w = np.asarray(f.value(pts), dtype=complex)
    if not np.all(np.isfinite(w)):
        raise BadParameter("map produced non-finite values on the grid")
    wc = w[: circ.size].reshape(circ.shape)
    ws = w[circ.size :].reshape(spk.shape)
    return GridImage(list(wc), list(ws))


def _window(img: GridImage, rspec: RenderSpec) -> tuple[float, float, float, float]:
    if rspec.window is not None:
        return tuple(float(v) for v in rspec.window)
    x0, x1, y0, y1 = img.bbox
    span = max(x1 - x0, y1 - y0, 1e-12)
    mx = 0.05 * span
    return x0 - mx, x1 + mx, y0 - mx, y1 + mx


def to_svg(img: GridImage, rspec: RenderSpec) -> str:
    x0, x1, y0, y1 = _window(img, rspec)
    w, h = x1 - x0, y1 - y0
    stroke = max(w, h) / 800.0
    px = rspec.size
    py = max(1, int(round(px * h / w)))

    def pts(line):
        # SVG y grows downward
        return " ".join(f"{z.real:.6f},{-z.imag:.6f}" for z in line)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{px}" height="{py}" '
        f'viewBox="{x0:.6f} {-y1:.6f} {w:.6f} {h:.6f}">',
        f'<g fill="none" stroke="black" stroke-width="{stroke:.6g}">',
    ]
    out += [f'<polygon class="circle" points="{pts(c)}"/>' for c in img.circles]
    out += [f'<polyline class="spoke" points="{pts(s)}"/>' for s in img.spokes]
    out += ["</g>", "</svg>"]
    return "\n".join(out) + "\n"


def _draw_line(canvas: np.ndarray, x0: int, y0: int, x1: int, y1: int):
    # Bresenham, clipped per pixel
    H, W = canvas.shape[:2]
    dx, dy = abs(x1 - x0), -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    steps = 0
    while True:
        if 0 <= x0 < W and 0 <= y0 < H:
            canvas[y0, x0] = 0
        if (x0 == x1 and y0 == y1) or steps > 4 * (W + H):
            break
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x0 += sx
        if e2 <= dx:
            err += dx
            y0 += sy
        steps += 1


def to_ppm(img: GridImage, rspec: RenderSpec) -> bytes:
    """Binary P6 raster, black lines on white, no anti-aliasing."""
    x0, x1, y0, y1 = _window(img, rspec)
    W = rspec.size
    H = max(1, int(round(W * (y1 - y0) / (x1 - x0))))
    canvas = np.full((H, W, 3), 255, dtype=np.uint8)
    gray = canvas[:, :, 0]

    def pix(line):
        u = np.rint((line.real - x0) / (x1 - x0) * (W - 1))
        v = np.rint((y1 - line.imag) / (y1 - y0) * (H - 1))
        # far-off-window vertices are clamped so line loops stay bounded
        big = 4 * (W + H)
        return np.clip(u, -big, big).astype(int), np.clip(v, -big, big).astype(int)

    for closed, lines in ((True, img.circles), (False, img.spokes)):
        for line in lines:
            u, v = pix(np.asarray(line))
            n = len(u)
            for k in range(n if closed else n - 1):
                m = (k + 1) % n
                _draw_line(gray, u[k], v[k], u[m], v[m])
    canvas[:, :, 1] = gray
    canvas[:, :, 2] = gray
    return f"P6\n{W} {H}\n255\n".encode("ascii") + canvas.tobytes()


def render(f, rspec: RenderSpec) -> bytes:
    img = build_grid_image(f, rspec)
    if rspec.fmt == "svg":
        return to_svg(img, rspec).encode("utf-8")
    return to_ppm(img, rspec)
