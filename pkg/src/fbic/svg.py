"""Static SVG plots of rate regions."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .rate_region import RatePolytope

SIZE = 640
PAD = 64  # room for tick labels
COLORS = ("#1f77b4", "#d62728", "#2ca02c")


def _ticks(hi: float, count: int = 5) -> list[float]:
    if hi <= 0:
        return [0.0]
    return [hi * k / count for k in range(count + 1)]


def _fmt(v: float) -> str:
    return f"{v:g}" if float(v).is_integer() else f"{v:.2f}"


def render_regions(regions: list[tuple[str, RatePolytope]]) -> str:
    """One filled polygon per region; axes auto-scaled to the bounding box plus 10%."""
    xs = [float(v.r1) for _, p in regions for v in p.vertices]
    ys = [float(v.r2) for _, p in regions for v in p.vertices]
    xmax = max(max(xs, default=0), 1e-9) * 1.1
    ymax = max(max(ys, default=0), 1e-9) * 1.1
    span = SIZE - 2 * PAD

    def px(x: float, y: float) -> tuple[float, float]:
        return PAD + x / xmax * span, SIZE - PAD - y / ymax * span

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="11">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    x0, y0 = px(0, 0)
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{SIZE - PAD}" y2="{y0}" stroke="black"/>')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{PAD}" stroke="black"/>')
    for t in _ticks(xmax / 1.1):
        x, _ = px(t, 0)
        out.append(f'<text x="{x:.1f}" y="{y0 + 16:.1f}" text-anchor="middle">{_fmt(t)}</text>')
    for t in _ticks(ymax / 1.1):
        _, y = px(0, t)
        out.append(f'<text x="{x0 - 6:.1f}" y="{y + 4:.1f}" text-anchor="end">{_fmt(t)}</text>')
    out.append(f'<text x="{SIZE / 2}" y="{SIZE - 16}" text-anchor="middle">R1 (bits)</text>')
    out.append(f'<text x="16" y="{SIZE / 2}" text-anchor="middle" transform="rotate(-90 16 {SIZE / 2})">R2 (bits)</text>')

    for k, (name, poly) in enumerate(regions):
        color = COLORS[k % len(COLORS)]
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in (px(float(v.r1), float(v.r2)) for v in poly.vertices))
        out.append(f'<polygon points="{pts}" fill="{color}" fill-opacity="0.15" stroke="{color}" stroke-width="2"/>')
        for v in poly.vertices:
            x, y = px(float(v.r1), float(v.r2))
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{color}"/>')
            out.append(f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" fill="{color}">({_fmt(float(v.r1))}, {_fmt(float(v.r2))})</text>')
        out.append(f'<text x="{SIZE - PAD}" y="{PAD + 16 * k}" text-anchor="end" fill="{color}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
