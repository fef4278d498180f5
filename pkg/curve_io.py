import json
import os
import tempfile
from typing import Any

import numpy as np

from geom_kernel import DomainError
from region_builder import BoundaryCurve, RegionFamily

FORMATS = ("csv", "json", "svg")
SVG_MARGIN = 0.02


def _clean(x: float) -> float:
    # folds -0.0 into 0.0
    return float(x) + 0.0


def _num17(x: float) -> str:
    return format(_clean(x), ".17g")


def atomic_write(path: str, text: str) -> None:
    """Write ``text`` to a temp file next to ``path`` and rename it into place."""
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix=".tmp_", dir=folder)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def curve_rows(curve: BoundaryCurve) -> list[list[float]]:
    return [
        [_clean(t), _clean(p.real), _clean(p.imag)]
        for t, p in zip(curve.params, curve.points)
    ]


def curve_to_csv(curve: BoundaryCurve) -> str:
    lines = []
    if curve.approximate:
        lines.append("# approximate")
    lines.append("param,re,im")
    for row in curve_rows(curve):
        lines.append(",".join(_num17(x) for x in row))
    return "\n".join(lines) + "\n"


def curve_to_json(curve: BoundaryCurve, family: RegionFamily, r: float) -> str:
    payload = {
        "family": RegionFamily(family).value,
        "r": float(r),
        "approximate": bool(curve.approximate),
        "points": curve_rows(curve),
    }
    return json.dumps(payload, indent=2) + "\n"


def curve_to_svg(curve: BoundaryCurve, family: RegionFamily, r: float) -> str:
    """Closed path in the unit square; the plane-to-square map is kept in <metadata>."""
    pts = curve.points
    lo_x, hi_x = float(np.min(pts.real)), float(np.max(pts.real))
    lo_y, hi_y = float(np.min(pts.imag)), float(np.max(pts.imag))
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-300)
    scale = (1.0 - 2 * SVG_MARGIN) / span
    offset_x = SVG_MARGIN - scale * lo_x
    offset_y = SVG_MARGIN + scale * hi_y
    xs = offset_x + scale * pts.real
    ys = offset_y - scale * pts.imag
    cmds = [f"M {_num17(xs[0])} {_num17(ys[0])}"]
    cmds += [f"L {_num17(x)} {_num17(y)}" for x, y in zip(xs[1:], ys[1:])]
    cmds.append("Z")
    meta = {
        "family": RegionFamily(family).value,
        "r": float(r),
        "approximate": bool(curve.approximate),
        "transform": {
            "x": "offset_x + scale * re",
            "y": "offset_y - scale * im",
            "scale": scale,
            "offset_x": offset_x,
            "offset_y": offset_y,
        },
    }
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1">\n'
        f"  <metadata>{json.dumps(meta)}</metadata>\n"
        f'  <path d="{" ".join(cmds)}" fill="none" stroke="black" '
        'stroke-width="0.002"/>\n'
        "</svg>\n"
    )


def render_curve(
    curve: BoundaryCurve, family: RegionFamily, r: float, fmt: str
) -> str:
    if fmt == "csv":
        return curve_to_csv(curve)
    if fmt == "json":
        return curve_to_json(curve, family, r)
    if fmt == "svg":
        return curve_to_svg(curve, family, r)
    raise DomainError(f"unknown output format {fmt!r}; expected one of {FORMATS}")


def read_curve_json(path: str) -> tuple[dict[str, Any], BoundaryCurve]:
    with open(path, "r", encoding="utf-8") as f:
        payload = json.load(f)
    rows = np.asarray(payload["points"], dtype=np.float64)
    curve = BoundaryCurve(
        points=rows[:, 1] + 1j * rows[:, 2],
        params=rows[:, 0],
        closed=True,
        approximate=bool(payload.get("approximate", False)),
    )
    return payload, curve
