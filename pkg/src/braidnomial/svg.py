"""Deterministic SVG rendering of braid words, read top to bottom."""

from __future__ import annotations

from .braids import BraidWord

DX, DY, MARGIN, GAP = 40, 36, 30, 7


def _x(k: int) -> float:
    return MARGIN + k * DX


def braid_svg(word: BraidWord, labels=None, title: str = "") -> str:
    n = word.strand_count
    labels = list(labels) if labels is not None else [f"Y{k}" for k in range(n)]
    rows = len(word.letters)
    width = 2 * MARGIN + (n - 1) * DX
    height = 2 * MARGIN + 20 + max(rows, 1) * DY
    top = MARGIN + 20
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>{title}</title>" if title else "",
        '<g fill="none" stroke="black" stroke-width="2" stroke-linecap="round">',
    ]
    out = [s for s in out if s]
    for k, lab in enumerate(labels):
        out.append(f'<text x="{_x(k):.1f}" y="{MARGIN:.1f}" font-size="12" text-anchor="middle" '
                   f'stroke="none" fill="black">{lab}</text>')
    if not rows:
        for k in range(n):
            out.append(f'<line class="strand" x1="{_x(k):.1f}" y1="{top:.1f}" x2="{_x(k):.1f}" y2="{top + DY:.1f}"/>')
    for row, letter in enumerate(word.letters):
        y0, y1 = top + row * DY, top + (row + 1) * DY
        i = abs(letter)
        for k in range(n):
            if k not in (i - 1, i):
                out.append(f'<line class="strand" x1="{_x(k):.1f}" y1="{y0:.1f}" x2="{_x(k):.1f}" y2="{y1:.1f}"/>')
        a, b = _x(i - 1), _x(i)
        # positive letter: the strand coming from the left passes over
        over = (a, y0, b, y1) if letter > 0 else (b, y0, a, y1)
        under = (b, y0, a, y1) if letter > 0 else (a, y0, b, y1)
        mx, my = (a + b) / 2, (y0 + y1) / 2
        ux, uy = under[2] - under[0], under[3] - under[1]
        norm = (ux * ux + uy * uy) ** 0.5
        gx, gy = GAP * ux / norm, GAP * uy / norm
        out.append(f'<g class="crossing" data-gen="{i}" data-sign="{1 if letter > 0 else -1}">')
        out.append(f'<line class="over" x1="{over[0]:.1f}" y1="{over[1]:.1f}" x2="{over[2]:.1f}" y2="{over[3]:.1f}"/>')
        out.append(f'<line class="under" x1="{under[0]:.1f}" y1="{under[1]:.1f}" x2="{mx - gx:.1f}" y2="{my - gy:.1f}"/>')
        out.append(f'<line class="under" x1="{mx + gx:.1f}" y1="{my + gy:.1f}" x2="{under[2]:.1f}" y2="{under[3]:.1f}"/>')
        out.append("</g>")
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def strand_labels(n_total: int, m: int, order=None) -> list:
    order = range(n_total) if order is None else order
    if m == 1:
        return [f"Y{k}" for k in order]
    return [f"Y{k // m}^({k % m})" for k in order]
