"""Minimal SVG line plots (polylines, axes, optional log scaling)."""
import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 420
MARGIN = {"left": 80, "right": 20, "top": 40, "bottom": 60}
COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]


def _ticks(lo, hi, n=5):
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def line_plot(series, title, xlabel, ylabel, logx=False, logy=False):
    """Render ``series`` = [(label, xs, ys, dashed), ...] to an SVG string."""
    tx = (lambda v: math.log10(v)) if logx else (lambda v: v)
    ty = (lambda v: math.log10(v)) if logy else (lambda v: v)
    pts = []
    for _, xs, ys, _ in series:
        for x, y in zip(xs, ys):
            if (logx and x <= 0) or (logy and y <= 0):
                continue
            pts.append((tx(x), ty(y)))
    if not pts:
        pts = [(0.0, 0.0), (1.0, 1.0)]
    x_lo, x_hi = min(p[0] for p in pts), max(p[0] for p in pts)
    y_lo, y_hi = min(p[1] for p in pts), max(p[1] for p in pts)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1, x_hi + 1
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1, y_hi + 1
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(v):
        return MARGIN["left"] + (v - x_lo) / (x_hi - x_lo) * pw

    def sy(v):
        return MARGIN["top"] + (1 - (v - y_lo) / (y_hi - y_lo)) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'font-family="sans-serif" font-size="12">',
           f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
           f'<text x="{WIDTH / 2}" y="22" text-anchor="middle" font-size="15">{escape(title)}</text>']
    x0, y0 = MARGIN["left"], MARGIN["top"] + ph
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0 + pw}" y2="{y0}" stroke="black"/>')
    out.append(f'<line x1="{x0}" y1="{MARGIN["top"]}" x2="{x0}" y2="{y0}" stroke="black"/>')
    for v in _ticks(x_lo, x_hi):
        label = f"1e{v:.1f}" if logx else f"{v:.3g}"
        out.append(f'<line x1="{sx(v):.2f}" y1="{y0}" x2="{sx(v):.2f}" y2="{y0 + 5}" stroke="black"/>')
        out.append(f'<text x="{sx(v):.2f}" y="{y0 + 18}" text-anchor="middle">{label}</text>')
    for v in _ticks(y_lo, y_hi):
        label = f"1e{v:.1f}" if logy else f"{v:.3g}"
        out.append(f'<line x1="{x0 - 5}" y1="{sy(v):.2f}" x2="{x0}" y2="{sy(v):.2f}" stroke="black"/>')
        out.append(f'<text x="{x0 - 8}" y="{sy(v) + 4:.2f}" text-anchor="end">{label}</text>')
    out.append(f'<text x="{x0 + pw / 2}" y="{HEIGHT - 15}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="18" y="{MARGIN["top"] + ph / 2}" text-anchor="middle" '
               f'transform="rotate(-90 18 {MARGIN["top"] + ph / 2})">{escape(ylabel)}</text>')
    for i, (label, xs, ys, dashed) in enumerate(series):
        color = COLORS[i % len(COLORS)]
        coords = [f"{sx(tx(x)):.2f},{sy(ty(y)):.2f}" for x, y in zip(xs, ys)
                  if not ((logx and x <= 0) or (logy and y <= 0))]
        dash = ' stroke-dasharray="6,4"' if dashed else ""
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2"{dash} '
                   f'points="{" ".join(coords)}"/>')
        for c in coords:
            cx, cy = c.split(",")
            out.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="{color}"/>')
        ly = MARGIN["top"] + 16 * i + 8
        out.append(f'<line x1="{x0 + pw - 150}" y1="{ly}" x2="{x0 + pw - 125}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"{dash}/>')
        out.append(f'<text x="{x0 + pw - 120}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, svg):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
