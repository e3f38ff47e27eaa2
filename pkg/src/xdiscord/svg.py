"""Bare-bones SVG output: polyline panels and heat maps. No raster, no dependencies."""

from __future__ import annotations

import numpy as np

_PANEL_W, _PANEL_H, _PAD = 260, 170, 32


def _header(width: int, height: int, title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="8" y="16" font-size="13">{title}</text>',
    ]


def _polyline(xs, ys, x0, y0, w, h, xmax, color) -> str:
    pts = " ".join(
        f"{x0 + w * x / xmax:.2f},{y0 + h * (1.0 - y):.2f}" for x, y in zip(xs, ys)
    )
    return f'<polyline fill="none" stroke="{color}" stroke-width="1" points="{pts}"/>'


def write_line_panels(path, rows, p_values, title: str = "") -> None:
    """One panel per ``p`` with concurrence (red) and discord (blue) against tau+."""
    cols = 3
    nrows = (len(p_values) + cols - 1) // cols
    width = cols * (_PANEL_W + _PAD) + _PAD
    height = nrows * (_PANEL_H + _PAD) + 2 * _PAD
    out = _header(width, height, title)
    out.append(f'<text x="{width - 150}" y="16" fill="red">C</text>'
               f'<text x="{width - 130}" y="16" fill="blue">D</text>')
    for k, p in enumerate(p_values):
        sel = [r for r in rows if r.p == float(p)]
        if not sel:
            continue
        x0 = _PAD + (k % cols) * (_PANEL_W + _PAD)
        y0 = 2 * _PAD + (k // cols) * (_PANEL_H + _PAD)
        taus = [r.tau_plus for r in sel]
        xmax = max(taus[-1], 1e-12)
        out.append(f'<rect x="{x0}" y="{y0}" width="{_PANEL_W}" height="{_PANEL_H}" '
                   'fill="none" stroke="black"/>')
        out.append(f'<text x="{x0 + 4}" y="{y0 - 4}">p = {p:g}</text>')
        out.append(f'<text x="{x0 + _PANEL_W - 40}" y="{y0 + _PANEL_H + 12}">{xmax:g}</text>')
        out.append(_polyline(taus, [r.concurrence for r in sel], x0, y0, _PANEL_W, _PANEL_H, xmax, "red"))
        out.append(_polyline(taus, [r.discord for r in sel], x0, y0, _PANEL_W, _PANEL_H, xmax, "blue"))
    out.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(out) + "\n")


def _gray(v: float) -> str:
    level = int(round(255 * (1.0 - min(max(v, 0.0), 1.0))))
    return f"rgb({level},{level},255)"


def write_heatmaps(path, rows, quantities, title: str = "") -> None:
    """Value against (tau+, p) as coloured cells, one map per quantity."""
    taus = np.unique([r.tau_plus for r in rows])
    ps = np.unique([r.p for r in rows])
    cell_w = max(1.0, 400.0 / taus.size)
    cell_h = max(1.0, 200.0 / ps.size)
    map_w, map_h = cell_w * taus.size, cell_h * ps.size
    width = int(len(quantities) * (map_w + _PAD) + _PAD)
    height = int(map_h + 3 * _PAD)
    t_index = {t: i for i, t in enumerate(taus)}
    p_index = {p: j for j, p in enumerate(ps)}
    out = _header(width, height, title)
    for q, name in enumerate(quantities):
        x0 = _PAD + q * (map_w + _PAD)
        y0 = 2 * _PAD
        out.append(f'<text x="{x0}" y="{y0 - 6}">{name} (x: tau+, y: p)</text>')
        for r in rows:
            i, j = t_index[r.tau_plus], p_index[r.p]
            out.append(
                f'<rect x="{x0 + i * cell_w:.2f}" y="{y0 + map_h - (j + 1) * cell_h:.2f}" '
                f'width="{cell_w:.2f}" height="{cell_h:.2f}" fill="{_gray(getattr(r, name))}"/>'
            )
    out.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(out) + "\n")
