"""Figures: representation diagnostics, bounds tables and Gray code matrices.

Region membership on the raster is decided exactly; floats appear only
when coordinates are handed to matplotlib.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .geometry import BOUNDED, CLOSED, Polygon, ProductRep, bounding_box  # noqa: E402
from .graycode import GrayCode  # noqa: E402

DEFAULT_RESOLUTION = 256


def _style():
    plt.rcParams.update({
        "font.size": 10,
        "axes.titlesize": 11,
        "axes.linewidth": 0.8,
        "figure.dpi": 100,
        "svg.hashsalt": "polyrep",
        "svg.fonttype": "none",
    })


def save(fig, path: str | Path) -> None:
    path = Path(path)
    metadata = {"Date": None} if path.suffix.lower() == ".svg" else None
    fig.savefig(path, bbox_inches="tight", metadata=metadata)
    plt.close(fig)


def _sign_raster(f, xs: Sequence[Fraction], ys: Sequence[Fraction]) -> np.ndarray:
    """Exact signs of an affine form on the grid xs x ys, rows indexed by y."""
    res_x = len(xs)
    out = np.empty((len(ys), res_x), dtype=np.int8)
    dx = xs[1] - xs[0] if res_x > 1 else Fraction(1)
    slope = f.a1 * dx
    idx = np.arange(res_x)
    for r, y in enumerate(ys):
        start = f((xs[0], y))
        if slope == 0:
            out[r, :] = (start > 0) - (start < 0)
            continue
        root = -start / slope  # value vanishes at this (fractional) column index
        below = idx < root
        at = (idx == root) if root.denominator == 1 else np.zeros(res_x, dtype=bool)
        neg = below if slope > 0 else ~below & ~at
        out[r, :] = 1
        out[r, neg] = -1
        out[r, at] = 0
    return out


def representation_mask(P: Polygon, rep: ProductRep, window, resolution: int = DEFAULT_RESOLUTION):
    """Grid coordinates and a boolean mask of cells where every product is
    positive (open mode) or non-negative (closed mode)."""
    x0, y0, x1, y1 = window
    xs = [x0 + (x1 - x0) * Fraction(2 * i + 1, 2 * resolution) for i in range(resolution)]
    ys = [y0 + (y1 - y0) * Fraction(2 * j + 1, 2 * resolution) for j in range(resolution)]
    signs = {lab: _sign_raster(P.form(lab), xs, ys) for lab in P.labels}
    mask = np.ones((resolution, resolution), dtype=bool)
    for member in rep.family:
        s = np.ones((resolution, resolution), dtype=np.int8)
        for lab in member:
            s = s * signs[lab]
        mask &= (s >= 0) if rep.mode == CLOSED else (s > 0)
    return xs, ys, mask


def _clip_line(f, window):
    """Endpoints (as floats) of the part of the line f = 0 inside the window."""
    x0, y0, x1, y1 = window
    pts = []
    if f.a2 != 0:
        for x in (x0, x1):
            y = -(f.a1 * x + f.b) / f.a2
            if y0 <= y <= y1:
                pts.append((x, y))
    if f.a1 != 0:
        for y in (y0, y1):
            x = -(f.a2 * y + f.b) / f.a1
            if x0 <= x <= x1:
                pts.append((x, y))
    pts = sorted(set(pts))
    if len(pts) < 2:
        return None
    return [float(pts[0][0]), float(pts[-1][0])], [float(pts[0][1]), float(pts[-1][1])]


def _boundary_path(P: Polygon, window):
    """Polyline of the polygon boundary, rays extended past the window."""
    x0, y0, x1, y1 = window
    reach = 4 * max(x1 - x0, y1 - y0, Fraction(1))
    if P.kind == BOUNDED:
        pts = list(P.vertices) + [P.vertices[0]]
    elif not P.vertices:
        return None
    else:
        def ray(v, f, nbr):
            d = (-f.a2, f.a1)
            norm = max(abs(d[0]), abs(d[1]))
            d = (d[0] / norm, d[1] / norm)
            if nbr((v[0] + d[0], v[1] + d[1])) < 0:
                d = (-d[0], -d[1])
            return (v[0] + reach * d[0], v[1] + reach * d[1])

        first = ray(P.vertices[0], P.edges[0], P.edges[1])
        last = ray(P.vertices[-1], P.edges[-1], P.edges[-2])
        pts = [first] + list(P.vertices) + [last]
    return [float(p[0]) for p in pts], [float(p[1]) for p in pts]


def default_window(P: Polygon):
    return bounding_box(P, Fraction(1, 4))


def plot_representation(P: Polygon, rep: ProductRep, path: str | Path, window=None,
                        resolution: int = DEFAULT_RESOLUTION, marks: Sequence = ()) -> None:
    _style()
    window = tuple(Fraction(w) for w in window) if window is not None else default_window(P)
    x0, y0, x1, y1 = window
    _, _, mask = representation_mask(P, rep, window, resolution)
    fig, ax = plt.subplots(figsize=(5, 5))
    extent = [float(x0), float(x1), float(y0), float(y1)]
    ax.imshow(mask, origin="lower", extent=extent, cmap="Blues", vmin=0, vmax=1.6,
              interpolation="nearest", aspect="auto")
    factors = sorted({lab for member in rep.family for lab in member})
    for lab in factors:
        seg = _clip_line(P.form(lab), window)
        if seg is not None:
            ax.plot(*seg, color="0.35", lw=0.7, ls="--")
    boundary = _boundary_path(P, window)
    if boundary is not None:
        ax.plot(*boundary, color="k", lw=1.5)
    else:
        seg = _clip_line(P.edges[0], window)
        if seg is not None:
            ax.plot(*seg, color="k", lw=1.5)
    for x in marks:
        ax.plot([float(x[0])], [float(x[1])], "x", color="crimson", ms=8, mew=2)
    sign = ">= 0" if rep.mode == CLOSED else "> 0"
    ax.set_title(f"{rep.n} products {sign}, {len(P.edges)} edges")
    ax.set_xlim(extent[0], extent[1])
    ax.set_ylim(extent[2], extent[3])
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    save(fig, path)


def plot_bounds(rows: Sequence[dict], path: str | Path) -> None:
    """Achieved family size against the lower bound, one panel line per k.

    Each row needs keys m, k, lower, achieved; optional exact_open.
    """
    _style()
    ks = sorted({r["k"] for r in rows})
    fig, ax = plt.subplots(figsize=(6, 4))
    colors = plt.cm.viridis(np.linspace(0, 0.9, len(ks)))
    for k, color in zip(ks, colors):
        sub = sorted((r for r in rows if r["k"] == k), key=lambda r: r["m"])
        ms = [r["m"] for r in sub]
        ax.plot(ms, [r["achieved"] for r in sub], "o-", color=color, ms=3, lw=1, label=f"k={k}")
        ax.plot(ms, [r["lower"] for r in sub], ":", color=color, lw=1)
        exact = [(r["m"], r["exact_open"]) for r in sub if r.get("exact_open") not in (None, "")]
        if exact:
            ax.plot(*zip(*exact), "s", mfc="none", color=color, ms=6)
    ax.set_xlabel("m (edges)")
    ax.set_ylabel("number of products")
    ax.legend(fontsize=8, ncol=2, frameon=False)
    ax.set_title("constructed (solid) vs lower bound (dotted)")
    save(fig, path)


def plot_gray_code(code: GrayCode, path: str | Path) -> None:
    _style()
    bits = np.array([[c >> i & 1 for c in code.columns] for i in range(code.n)])
    fig, ax = plt.subplots(figsize=(max(4, min(12, len(code.columns) / 10)), 0.4 * code.n + 1))
    ax.imshow(bits, cmap="Greys", aspect="auto", interpolation="nearest")
    ax.set_yticks(range(code.n), [str(i + 1) for i in range(code.n)])
    ax.set_xlabel("column")
    ax.set_ylabel("row")
    save(fig, path)

