"""Partition of the plane into escaping set, basin of the origin, and the
undecided points near their common boundary; grid rendering to PPM."""

from __future__ import annotations

import cmath
import enum
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import MapParams, circle_dist, eval_H, radial_stretch
from .circle import circle_map
from .errors import InvalidParameter, ResourceLimit

R_ESCAPE = 2.0           # |z| > 2 forces |H(z)| >= |z|^2 > 2|z|
MAX_RESOLUTION = 8192    # per grid side


def r_attract(p: MapParams) -> float:
    """|z| below this forces |H(z)| <= K^2 |z|^2 < |z|/2."""
    return 1.0 / (2.0 * p.K * p.K)


class PointClass(enum.Enum):
    ESCAPED = "escaped"
    ATTRACTED = "attracted"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class PointResult:
    label: PointClass
    n: int  # first iterate past the certifying radius (0 for the seed itself)


def classify_point(p: MapParams, z: complex, max_iter: int) -> PointResult:
    """Escaping / attracted-to-0 / undecided, via certified absorbing radii."""
    if max_iter < 1:
        raise InvalidParameter("need max_iter >= 1")
    ra = r_attract(p)
    w = complex(z)
    for n in range(max_iter + 1):
        m = abs(w)
        if m > R_ESCAPE:
            return PointResult(PointClass.ESCAPED, n)
        if m < ra:
            return PointResult(PointClass.ATTRACTED, n)
        w = eval_H(p, w)
    return PointResult(PointClass.UNDECIDED, max_iter)


def radial_fixed_point(p: MapParams, phi: float) -> float:
    """The radius r = 1/alpha at which the fixed ray phi carries a fixed point."""
    if circle_dist(circle_map(p, phi), phi) > 1e-8:
        raise InvalidParameter(f"{phi} is not a fixed angle of the circle map")
    r = 1.0 / radial_stretch(p, phi)
    z = r * cmath.exp(1j * phi)
    if abs(eval_H(p, z) - z) >= 1e-12:
        raise InvalidParameter(f"fixed-point residual too large at phi={phi}")
    return r


@dataclass(frozen=True)
class Window:
    center: complex
    width: float
    height: float

    @staticmethod
    def from_bounds(xmin: float, xmax: float, ymin: float, ymax: float) -> "Window":
        if not (xmax > xmin and ymax > ymin):
            raise InvalidParameter("window bounds must satisfy xmin < xmax, ymin < ymax")
        return Window(complex((xmin + xmax) / 2.0, (ymin + ymax) / 2.0),
                      xmax - xmin, ymax - ymin)


@dataclass(frozen=True)
class PlaneGrid:
    window: Window
    resolution: tuple[int, int]  # (width px, height px)
    labels: np.ndarray           # uint8, 0 undecided / 1 escaped / 2 attracted
    counts: np.ndarray           # int32, certifying iterate per pixel
    max_iter: int

    def stats(self) -> dict:
        total = self.labels.size
        return {
            "escaped_fraction": float(np.mean(self.labels == 1)),
            "attracted_fraction": float(np.mean(self.labels == 2)),
            "undecided_fraction": float(np.mean(self.labels == 0)),
            "pixels": int(total),
            "max_iter": self.max_iter,
        }


def _classify_block(p: MapParams, z: np.ndarray, max_iter: int):
    """Vectorized classify_point over a complex array."""
    c = 0.5 * (p.K + 1.0)
    mu = p.mu
    ra = r_attract(p)
    labels = np.zeros(z.shape, dtype=np.uint8)
    counts = np.full(z.shape, max_iter, dtype=np.int32)
    w = z.astype(complex)
    active = np.ones(z.shape, dtype=bool)
    for n in range(max_iter + 1):
        m = np.abs(w)
        esc = active & (m > R_ESCAPE)
        att = active & (m < ra)
        labels[esc] = 1
        labels[att] = 2
        counts[esc | att] = n
        active &= ~(esc | att)
        if n == max_iter or not active.any():
            break
        wa = c * (w[active] + mu * np.conj(w[active]))
        w[active] = wa * wa
    return labels, counts


def render_grid(p: MapParams, window: Window, resolution, max_iter: int) -> PlaneGrid:
    """Classify every pixel of a grid over the window.

    Row blocks are classified independently (optionally in threads, capped
    by QRDYN_THREADS) and reassembled in order, so the result is
    deterministic.
    """
    if isinstance(resolution, int):
        resolution = (resolution, resolution)
    nx, ny = resolution
    if nx < 1 or ny < 1:
        raise InvalidParameter("resolution must be positive")
    if nx > MAX_RESOLUTION or ny > MAX_RESOLUTION:
        raise ResourceLimit(f"resolution {nx}x{ny} exceeds {MAX_RESOLUTION} per side")

    xs = window.center.real + window.width * ((np.arange(nx) + 0.5) / nx - 0.5)
    ys = window.center.imag + window.height * ((np.arange(ny) + 0.5) / ny - 0.5)
    # row 0 is the top of the image
    zgrid = xs[None, :] + 1j * ys[::-1, None]

    n_threads = max(1, min(os.cpu_count() or 1,
                           int(os.environ.get("QRDYN_THREADS", "4"))))
    rows_per = max(1, math.ceil(ny / (4 * n_threads)))
    blocks = [zgrid[i:i + rows_per] for i in range(0, ny, rows_per)]
    if n_threads == 1 or len(blocks) == 1:
        results = [_classify_block(p, b, max_iter) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=n_threads) as ex:
            results = list(ex.map(lambda b: _classify_block(p, b, max_iter), blocks))
    labels = np.concatenate([r[0] for r in results], axis=0)
    counts = np.concatenate([r[1] for r in results], axis=0)
    return PlaneGrid(window=window, resolution=(nx, ny), labels=labels,
                     counts=counts, max_iter=max_iter)


def grid_to_rgb(grid: PlaneGrid) -> np.ndarray:
    """Color scheme: escaped pixels hued by log2 of the escape time,
    attracted pixels on a gray ramp, undecided black."""
    ny, nx = grid.labels.shape
    rgb = np.zeros((ny, nx, 3), dtype=np.uint8)

    esc = grid.labels == 1
    if esc.any():
        hue = np.log2(grid.counts[esc] + 1.0) / math.log2(grid.max_iter + 2.0)
        h6 = (hue % 1.0) * 6.0
        i = h6.astype(int) % 6
        f = h6 - np.floor(h6)
        v = np.full_like(f, 255.0)
        q = 255.0 * (1.0 - f)
        t = 255.0 * f
        r = np.choose(i, [v, q, 0 * v, 0 * v, t, v])
        g = np.choose(i, [t, v, v, q, 0 * v, 0 * v])
        b = np.choose(i, [0 * v, 0 * v, t, v, v, q])
        rgb[esc] = np.stack([r, g, b], axis=-1).astype(np.uint8)

    att = grid.labels == 2
    if att.any():
        shade = 255.0 - 175.0 * grid.counts[att] / max(1, grid.max_iter)
        s = np.clip(shade, 60.0, 255.0).astype(np.uint8)
        rgb[att] = np.stack([s, s, s], axis=-1)
    return rgb


def write_ppm(grid: PlaneGrid, path: str) -> None:
    """Binary P6 image of the grid."""
    rgb = grid_to_rgb(grid)
    ny, nx = grid.labels.shape
    with open(path, "wb") as f:
        f.write(f"P6\n{nx} {ny}\n255\n".encode("ascii"))
        f.write(rgb.tobytes())


def write_stats(grid: PlaneGrid, p: MapParams, path: str) -> None:
    """Summary statistics JSON, with the certifying radii recorded."""
    payload = grid.stats()
    payload.update({
        "K": p.K,
        "theta": p.theta,
        "escape_radius": R_ESCAPE,
        "attract_radius": r_attract(p),
        "window": {"center": [grid.window.center.real, grid.window.center.imag],
                   "width": grid.window.width, "height": grid.window.height},
        "resolution": list(grid.resolution),
    })
    with open(path, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")
