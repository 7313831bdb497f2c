import xml.etree.ElementTree as ET
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger
from scipy.spatial import ConvexHull, QhullError

from src.cluster.points import ClusterResult, PointSet
from src.config import config
from src.theory.regions import LANDMARKS

SVG_NS = "http://www.w3.org/2000/svg"
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]
UNCLUSTERED = "#555555"

# left, right, top, bottom
MARGINS = (64, 24, 32, 52)


def _px(v: float) -> str:
    return f"{round(v, 2) + 0.0:.2f}"


def _tick(v: float) -> str:
    return format(v + 0.0, ".4g")


class _Frame:
    """Maps data coordinates onto the plot area."""

    def __init__(self, xs: List[float], ys: List[float], width: int, height: int, padding: float):
        self.width, self.height = width, height
        self.xlo, self.xhi = self._padded(min(xs), max(xs), padding)
        self.ylo, self.yhi = self._padded(min(ys), max(ys), padding)
        left, right, top, bottom = MARGINS
        self.left, self.top = left, top
        self.inner_w = width - left - right
        self.inner_h = height - top - bottom

    @staticmethod
    def _padded(lo: float, hi: float, padding: float) -> Tuple[float, float]:
        span = hi - lo
        if span == 0.0:
            span = max(abs(lo), 1.0)
        return lo - padding * span, hi + padding * span

    def x(self, v: float) -> float:
        return self.left + (v - self.xlo) / (self.xhi - self.xlo) * self.inner_w

    def y(self, v: float) -> float:
        return self.top + (self.yhi - v) / (self.yhi - self.ylo) * self.inner_h

    def ticks(self, lo: float, hi: float, count: int) -> List[float]:
        return [float(t) for t in np.linspace(lo, hi, count)]


def _as_pointset(points: Union[PointSet, Mapping[str, Sequence[float]]]) -> PointSet:
    if isinstance(points, PointSet):
        return points
    return PointSet.from_mapping(points)


def _line(parent, frame: _Frame, x1, y1, x2, y2, cls: str):
    ET.SubElement(parent, "line", {
        "class": cls,
        "x1": _px(frame.x(x1)), "y1": _px(frame.y(y1)),
        "x2": _px(frame.x(x2)), "y2": _px(frame.y(y2)),
    })


def _draw_axes(svg, frame: _Frame, ticks: int, axis_labels: Tuple[str, str]):
    axes = ET.SubElement(svg, "g", {"class": "axes", "stroke": "#000", "font-size": "11"})
    _line(axes, frame, frame.xlo, frame.ylo, frame.xhi, frame.ylo, "axis")
    _line(axes, frame, frame.xlo, frame.ylo, frame.xlo, frame.yhi, "axis")
    for t in frame.ticks(frame.xlo, frame.xhi, ticks):
        x, y = frame.x(t), frame.y(frame.ylo)
        ET.SubElement(axes, "line", {"class": "tick", "x1": _px(x), "y1": _px(y), "x2": _px(x), "y2": _px(y + 5)})
        label = ET.SubElement(axes, "text", {"class": "tick-label", "x": _px(x), "y": _px(y + 18), "text-anchor": "middle", "stroke": "none"})
        label.text = _tick(t)
    for t in frame.ticks(frame.ylo, frame.yhi, ticks):
        x, y = frame.x(frame.xlo), frame.y(t)
        ET.SubElement(axes, "line", {"class": "tick", "x1": _px(x - 5), "y1": _px(y), "x2": _px(x), "y2": _px(y)})
        label = ET.SubElement(axes, "text", {"class": "tick-label", "x": _px(x - 8), "y": _px(y + 4), "text-anchor": "end", "stroke": "none"})
        label.text = _tick(t)
    xt = ET.SubElement(axes, "text", {"class": "axis-title", "x": _px(frame.left + frame.inner_w / 2), "y": _px(frame.height - 8), "text-anchor": "middle", "stroke": "none"})
    xt.text = axis_labels[0]
    yt = ET.SubElement(axes, "text", {"class": "axis-title", "x": "14", "y": _px(frame.top + frame.inner_h / 2), "text-anchor": "middle", "stroke": "none"})
    yt.text = axis_labels[1]


def _draw_overlay(svg, frame: _Frame):
    overlay = ET.SubElement(svg, "g", {"class": "overlay", "stroke": "#888", "stroke-dasharray": "4 3", "fill": "none"})
    # S = 2I - 1, clipped to the visible window
    lo = max(frame.xlo, (frame.ylo + 1.0) / 2.0)
    hi = min(frame.xhi, (frame.yhi + 1.0) / 2.0)
    if lo < hi:
        _line(overlay, frame, lo, 2.0 * lo - 1.0, hi, 2.0 * hi - 1.0, "overlay-line")
    if frame.ylo <= 1.0 <= frame.yhi:
        _line(overlay, frame, frame.xlo, 1.0, frame.xhi, 1.0, "overlay-line")
    for name, (lx, ly) in LANDMARKS.items():
        ET.SubElement(overlay, "circle", {"class": "landmark", "cx": _px(frame.x(lx)), "cy": _px(frame.y(ly)), "r": "3", "fill": "#888", "stroke": "none"})
        text = ET.SubElement(overlay, "text", {"class": "landmark-label", "x": _px(frame.x(lx) + 5), "y": _px(frame.y(ly) + 12), "font-size": "11", "fill": "#888", "stroke": "none"})
        text.text = name


def _hull_vertices(pts: np.ndarray) -> np.ndarray:
    """Hull corners in drawing order; two extreme points when the cluster is collinear."""
    unique = np.unique(pts, axis=0)
    if len(unique) <= 2:
        return unique
    try:
        return unique[ConvexHull(unique).vertices]
    except QhullError:
        order = np.lexsort((unique[:, 1], unique[:, 0]))
        return unique[[order[0], order[-1]]]


def _draw_hulls(svg, frame: _Frame, X: np.ndarray, ids: Sequence[str], clusters: ClusterResult):
    hulls = ET.SubElement(svg, "g", {"class": "hulls"})
    for c in range(clusters.k):
        members = [i for i, pid in enumerate(ids) if clusters.assignment.get(pid) == c]
        if not members:
            continue
        color = PALETTE[c % len(PALETTE)]
        corners = _hull_vertices(X[members])
        style = {"fill": color, "fill-opacity": "0.12", "stroke": color, "stroke-width": "1.5"}
        if len(corners) == 1:
            ET.SubElement(hulls, "circle", {"class": "hull", "data-cluster": str(c), "cx": _px(frame.x(corners[0, 0])), "cy": _px(frame.y(corners[0, 1])), "r": "10", **style})
        else:
            coords = " ".join(f"{_px(frame.x(x))},{_px(frame.y(y))}" for x, y in corners)
            ET.SubElement(hulls, "polygon", {"class": "hull", "data-cluster": str(c), "points": coords, **style})


def render_scatter(
    points: Union[PointSet, Mapping[str, Sequence[float]]],
    clusters: Optional[ClusterResult] = None,
    overlay: bool = False,
    axis_labels: Tuple[str, str] = ("I", "S"),
) -> str:
    """Standalone SVG scatter of labeled 2-D points, with cluster hulls and optional reference overlay."""
    ps = _as_pointset(points)
    if len(ps) == 0:
        raise ValueError("render_scatter needs at least one point to scale the axes")
    X = ps.array
    if X.shape[1] != 2:
        raise ValueError(f"render_scatter draws 2-D points, got dimension {X.shape[1]}")

    xs, ys = X[:, 0].tolist(), X[:, 1].tolist()
    if overlay:
        xs += [p[0] for p in LANDMARKS.values()]
        ys += [p[1] for p in LANDMARKS.values()]
    frame = _Frame(xs, ys, config.plot.width, config.plot.height, config.plot.padding)

    svg = ET.Element("svg", {
        "xmlns": SVG_NS,
        "width": str(frame.width),
        "height": str(frame.height),
        "viewBox": f"0 0 {frame.width} {frame.height}",
        "font-family": "sans-serif",
    })
    ET.SubElement(svg, "rect", {"class": "background", "x": "0", "y": "0", "width": str(frame.width), "height": str(frame.height), "fill": "#fff"})

    _draw_axes(svg, frame, config.plot.ticks, axis_labels)
    if overlay:
        _draw_overlay(svg, frame)
    if clusters is not None:
        _draw_hulls(svg, frame, X, ps.ids, clusters)

    marks = ET.SubElement(svg, "g", {"class": "points", "font-size": "11"})
    colors: Dict[str, str] = {}
    if clusters is not None:
        colors = {pid: PALETTE[c % len(PALETTE)] for pid, c in clusters.assignment.items()}
    for pid, (x, y) in zip(ps.ids, X):
        cx, cy = frame.x(x), frame.y(y)
        ET.SubElement(marks, "circle", {"class": "marker", "cx": _px(cx), "cy": _px(cy), "r": "3.5", "fill": colors.get(pid, UNCLUSTERED)})
        label = ET.SubElement(marks, "text", {"class": "point-label", "x": _px(cx + 6), "y": _px(cy - 6)})
        label.text = pid

    ET.indent(svg)
    logger.debug(f"SVG: rendered {len(ps)} points, clusters={clusters is not None}, overlay={overlay}")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"
