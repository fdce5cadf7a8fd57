"""Standalone SVG figures: barcodes, persistence diagrams and step curves.

Output is byte-deterministic for a given input: coordinates are printed with
a fixed number of decimals and elements are emitted in input order.
"""
import math
import xml.etree.ElementTree as ET
from typing import Mapping, Sequence

WIDTH = 640
MARGIN = 48
LANE = 14
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
ARROW = "→"


def _fmt(x: float) -> str:
    text = f"{x:.2f}"
    return "0.00" if text == "-0.00" else text


def _label(x: float) -> str:
    return f"{x:g}"


def _canvas(height: float, title: str) -> ET.Element:
    root = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "width": str(WIDTH),
            "height": _fmt(height),
            "viewBox": f"0 0 {WIDTH} {_fmt(height)}",
        },
    )
    ET.SubElement(root, "title").text = title
    ET.SubElement(
        root, "text", {"x": _fmt(WIDTH / 2), "y": "20", "text-anchor": "middle", "font-size": "14"}
    ).text = title
    return root


def _span(values: Sequence[float]) -> tuple[float, float]:
    finite = [v for v in values if math.isfinite(v)]
    if not finite:
        return 0.0, 1.0
    lo, hi = min(finite), max(finite)
    if hi <= lo:
        hi = lo + 1.0
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _scale(lo: float, hi: float, start: float, end: float):
    def at(v: float) -> float:
        return start + (v - lo) / (hi - lo) * (end - start)

    return at


def _axis(root: ET.Element, y: float, lo: float, hi: float, at) -> None:
    ET.SubElement(
        root, "line",
        {"x1": _fmt(MARGIN), "y1": _fmt(y), "x2": _fmt(WIDTH - MARGIN), "y2": _fmt(y), "stroke": "#000"},
    )
    for k in range(5):
        v = lo + (hi - lo) * k / 4
        ET.SubElement(
            root, "text", {"x": _fmt(at(v)), "y": _fmt(y + 14), "text-anchor": "middle", "font-size": "10"}
        ).text = _label(round(v, 3))


def _serialize(root: ET.Element) -> str:
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"


def barcode_svg(bars: Sequence[tuple[int, float, float]], title: str = "barcode") -> str:
    """One horizontal lane per (dim, birth, death) bar, grouped by dimension.

    Infinite bars run to the right edge and end in an arrow glyph.
    """
    ordered = sorted(bars, key=lambda bar: (bar[0], bar[1], bar[2]))
    dims = sorted({bar[0] for bar in ordered})
    height = 2 * MARGIN + LANE * (len(ordered) + len(dims)) + 20
    root = _canvas(height, title)
    lo, hi = _span([v for _, b, d in ordered for v in (b, d)])
    at = _scale(lo, hi, MARGIN, WIDTH - MARGIN)

    y = MARGIN
    for dim in dims:
        ET.SubElement(root, "text", {"x": "4", "y": _fmt(y + 10), "font-size": "11"}).text = f"dim {dim}"
        y += LANE
        color = PALETTE[dim % len(PALETTE)]
        group = ET.SubElement(root, "g", {"stroke": color, "stroke-width": "4"})
        for bar_dim, birth, death in ordered:
            if bar_dim != dim:
                continue
            end = at(death) if math.isfinite(death) else WIDTH - MARGIN
            ET.SubElement(
                group, "line",
                {"x1": _fmt(at(birth)), "y1": _fmt(y), "x2": _fmt(end), "y2": _fmt(y)},
            )
            if not math.isfinite(death):
                ET.SubElement(
                    root, "text",
                    {"x": _fmt(end + 2), "y": _fmt(y + 4), "font-size": "12", "fill": color},
                ).text = ARROW
            y += LANE
    _axis(root, y + 4, lo, hi, at)
    return _serialize(root)


def diagram_svg(points: Sequence[tuple[float, float, int]], title: str = "diagram") -> str:
    """Scatter of (birth, death) with the diagonal; infinite deaths sit on a top line."""
    size = WIDTH
    root = _canvas(size, title)
    lo, hi = _span([v for b, d, _ in points for v in (b, d)])
    x_at = _scale(lo, hi, MARGIN, size - MARGIN)
    y_at = _scale(lo, hi, size - MARGIN, MARGIN + 20)
    inf_y = MARGIN

    ET.SubElement(
        root, "line",
        {
            "x1": _fmt(x_at(lo)), "y1": _fmt(y_at(lo)), "x2": _fmt(x_at(hi)), "y2": _fmt(y_at(hi)),
            "stroke": "#888", "stroke-dasharray": "4 3",
        },
    )
    if any(not math.isfinite(d) for _, d, _ in points):
        ET.SubElement(
            root, "line",
            {"x1": _fmt(MARGIN), "y1": _fmt(inf_y), "x2": _fmt(size - MARGIN), "y2": _fmt(inf_y), "stroke": "#ccc"},
        )
        ET.SubElement(root, "text", {"x": "8", "y": _fmt(inf_y + 4), "font-size": "12"}).text = "+∞"
    group = ET.SubElement(root, "g", {"fill": PALETTE[0]})
    for birth, death, multiplicity in sorted(points):
        cy = y_at(death) if math.isfinite(death) else inf_y
        ET.SubElement(group, "circle", {"cx": _fmt(x_at(birth)), "cy": _fmt(cy), "r": "4"})
        if multiplicity > 1:
            ET.SubElement(
                root, "text", {"x": _fmt(x_at(birth) + 6), "y": _fmt(cy - 6), "font-size": "10"}
            ).text = f"×{multiplicity}"
    _axis(root, size - MARGIN + 4, lo, hi, x_at)
    return _serialize(root)


def curve_svg(xs: Sequence[float], series: Mapping[str, Sequence[float]], title: str = "curves") -> str:
    """Right-continuous step curves sharing the x values, one polyline per series."""
    height = 420
    root = _canvas(height, title)
    x_lo, x_hi = _span(list(xs))
    y_lo, y_hi = _span([v for values in series.values() for v in values] + [0.0])
    x_at = _scale(x_lo, x_hi, MARGIN, WIDTH - MARGIN)
    y_at = _scale(y_lo, y_hi, height - MARGIN, MARGIN + 20)

    for k, (name, values) in enumerate(series.items()):
        color = PALETTE[k % len(PALETTE)]
        coords = []
        for idx, (x, v) in enumerate(zip(xs, values)):
            coords.append(f"{_fmt(x_at(x))},{_fmt(y_at(v))}")
            nxt = xs[idx + 1] if idx + 1 < len(xs) else x_hi
            coords.append(f"{_fmt(x_at(nxt))},{_fmt(y_at(v))}")
        ET.SubElement(
            root, "polyline", {"points": " ".join(coords), "fill": "none", "stroke": color, "stroke-width": "2"}
        )
        ET.SubElement(
            root, "text", {"x": _fmt(MARGIN + 4), "y": _fmt(MARGIN + 20 + 14 * k), "font-size": "11", "fill": color}
        ).text = name
    _axis(root, height - MARGIN + 4, x_lo, x_hi, x_at)
    return _serialize(root)


def series_from_rows(rows: Sequence[Mapping]) -> tuple[list[float], dict[str, list[float]]]:
    """x values and named series from hf-vectors or betti-curve step rows."""
    xs = [row["t"] for row in rows]
    series: dict[str, list[float]] = {}
    # no critical values: empty axes
    if not rows:
        return xs, series
    if "h" in rows[0]:
        width = max(len(row["h"]) for row in rows)
        for m in range(width):
            series[f"h{m}"] = [row["h"][m] if m < len(row["h"]) else 0 for row in rows]
        return xs, series
    for q in range(len(rows[0]["reduced_betti"]) - 1):
        series[f"b~{q}"] = [row["reduced_betti"][q + 1] for row in rows]
    for key in rows[0].get("graded", {}):
        series[f"beta {key}"] = [row["graded"][key] for row in rows]
    return xs, series
