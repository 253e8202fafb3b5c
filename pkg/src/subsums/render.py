"""Static figures and sweep data: cover bar charts and the two-ratio map.

All output is plain SVG or CSV assembled from exact rationals, quantized
to centi-pixels at the last moment, so identical inputs produce
byte-identical files.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .classify import Verdict, VerdictKind, classify
from .errors import EmptyUnion
from .intervals import IntervalUnion
from .sequences import is_nonincreasing, multi_geometric

# Minimum rendered bar width, in pixels, so hairline components stay visible.
MIN_BAR_WIDTH = Fraction(1, 2)

SWEEP_DIGIT_BASE_LIMIT = 12
MARKED_CELL = (Fraction(9, 20), Fraction(6, 11))

VERDICT_FILL = {
    VerdictKind.FINITE_UNION: "#74add1",
    VerdictKind.CANTOR_SET: "#f46d43",
    VerdictKind.SYMMETRIC_CANTORVAL: "#66bd63",
    VerdictKind.UNDETERMINED: "#ffffff",
    VerdictKind.UNBOUNDED_INTERVAL: "#cccccc",
    VerdictKind.WHOLE_LINE: "#cccccc",
}


def _px(value: Fraction) -> str:
    """Quantize a pixel coordinate to centi-pixels, as a decimal string."""
    q = round(Fraction(value) * 100)
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // 100}.{q % 100:02d}"


def bar_chart(
    u: IntervalUnion,
    width_px: int = 1000,
    height_px: int = 200,
    out_path: Optional[str] = None,
) -> str:
    """Render an interval union as a bar graph, one filled bar per component.

    The union's hull is mapped onto the full drawing width. Returns the
    SVG text and writes it to out_path when given.
    """
    if u.is_empty:
        raise EmptyUnion("cannot chart an empty union")
    hull = u.hull()
    span = hull.length
    margin = Fraction(height_px, 10)
    bar_top = margin
    bar_height = height_px - 2 * margin
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width_px}" '
        f'height="{height_px}" viewBox="0 0 {width_px} {height_px}">',
        f'<rect width="{width_px}" height="{height_px}" fill="#ffffff"/>',
    ]
    for piece in u:
        if span == 0:
            left = Fraction(0)
            width = Fraction(width_px)
        else:
            left = (piece.left - hull.left) * width_px / span
            width = piece.length * width_px / span
        if width < MIN_BAR_WIDTH:
            width = MIN_BAR_WIDTH
        lines.append(
            f'<rect x="{_px(left)}" y="{_px(bar_top)}" width="{_px(width)}" '
            f'height="{_px(bar_height)}" fill="#1a1a1a"/>'
        )
    lines.append("</svg>")
    text = "\n".join(lines) + "\n"
    if out_path is not None:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    return text


@dataclass(frozen=True)
class SweepCell:
    """One classified point of the two-ratio parameter square."""

    alpha: Fraction
    beta: Fraction
    contraction: Fraction
    verdict: Verdict
    feasible: bool


@dataclass(frozen=True)
class SweepGrid:
    """Uniform lattice of classified cells plus the marked reference cell."""

    alpha_steps: int
    beta_steps: int
    cells: tuple

    def cell(self, alpha, beta) -> SweepCell:
        for cell in self.cells:
            if cell.alpha == alpha and cell.beta == beta:
                return cell
        raise KeyError(f"no cell at ({alpha}, {beta})")


def _classify_cell(alpha: Fraction, beta: Fraction, digit_base_limit: int) -> SweepCell:
    spec = multi_geometric((alpha, beta), Fraction(1))
    verdict = classify(spec, digit_base_limit=digit_base_limit)
    lam = (1 - alpha) * (1 - beta)
    return SweepCell(alpha, beta, lam, verdict, is_nonincreasing(spec))


def sweep(
    resolution: int = 21,
    out_csv: Optional[str] = None,
    out_svg: Optional[str] = None,
    digit_base_limit: int = SWEEP_DIGIT_BASE_LIMIT,
) -> SweepGrid:
    """Classify a resolution^2 lattice of two-ratio cells, plus the marked one.

    Lattice points are (i/(resolution+1), j/(resolution+1)) for i, j in
    1..resolution, strictly inside the unit square, in alpha-major order.
    The marked cell is appended last. Infeasible cells (no non-increasing
    arrangement in the given ratio order) are still classified via the
    reordering and flagged.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    denom = resolution + 1
    cells = []
    for i in range(1, resolution + 1):
        for j in range(1, resolution + 1):
            alpha = Fraction(i, denom)
            beta = Fraction(j, denom)
            cells.append(_classify_cell(alpha, beta, digit_base_limit))
    cells.append(_classify_cell(*MARKED_CELL, digit_base_limit))
    grid = SweepGrid(resolution, resolution, tuple(cells))
    if out_csv is not None:
        _write_csv(grid, out_csv)
    if out_svg is not None:
        _write_svg(grid, out_svg)
    return grid


def sweep_csv_text(grid: SweepGrid) -> str:
    rows = ["alpha,beta,lambda,verdict,certificate,feasible"]
    for cell in grid.cells:
        certificate = cell.verdict.certificate or ""
        rows.append(
            f"{cell.alpha},{cell.beta},{cell.contraction},"
            f"{cell.verdict.kind.value},{certificate},"
            f"{'true' if cell.feasible else 'false'}"
        )
    return "\n".join(rows) + "\n"


def _write_csv(grid: SweepGrid, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(sweep_csv_text(grid))


def sweep_svg_text(grid: SweepGrid) -> str:
    """1000x1000 verdict map: alpha rightward, beta upward, hatch = infeasible."""
    size = 1000
    denom = grid.alpha_steps + 1
    cell_px = Fraction(size, denom)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        "<defs>",
        '<pattern id="hatch" width="8" height="8" patternUnits="userSpaceOnUse">',
        '<path d="M0,8 L8,0" stroke="#999999" stroke-width="1.5"/>',
        "</pattern>",
        "</defs>",
        f'<rect width="{size}" height="{size}" fill="#f7f7f7"/>',
    ]
    marked = None
    for cell in grid.cells:
        x_center = cell.alpha * size
        y_center = size - cell.beta * size
        if (cell.alpha, cell.beta) == MARKED_CELL:
            marked = (x_center, y_center, cell)
            continue
        x = x_center - cell_px / 2
        y = y_center - cell_px / 2
        fill = VERDICT_FILL[cell.verdict.kind]
        lines.append(
            f'<rect x="{_px(x)}" y="{_px(y)}" width="{_px(cell_px)}" '
            f'height="{_px(cell_px)}" fill="{fill}" stroke="#dddddd" '
            f'stroke-width="0.5"/>'
        )
        if not cell.feasible:
            lines.append(
                f'<rect x="{_px(x)}" y="{_px(y)}" width="{_px(cell_px)}" '
                f'height="{_px(cell_px)}" fill="url(#hatch)"/>'
            )
    if marked is not None:
        x_center, y_center, cell = marked
        fill = VERDICT_FILL[cell.verdict.kind]
        lines.append(
            f'<circle cx="{_px(x_center)}" cy="{_px(y_center)}" r="9" '
            f'fill="{fill}" stroke="#1a1a1a" stroke-width="2.5"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _write_svg(grid: SweepGrid, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(sweep_svg_text(grid))
