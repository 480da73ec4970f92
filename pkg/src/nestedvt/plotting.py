"""Chart output: a dependency-free SVG line chart and matplotlib figures.

``emit_svg`` is self-contained so plotting works anywhere the library
does; the experiment report path additionally renders a matplotlib PNG
next to each CSV when figures are enabled.
"""

from __future__ import annotations

import csv
from io import StringIO

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_WIDTH, _HEIGHT = 640, 420
_MARGIN_LEFT, _MARGIN_RIGHT, _MARGIN_TOP, _MARGIN_BOTTOM = 70, 20, 30, 50


def read_csv_table(path) -> tuple[list[str], list[dict[str, str]]]:
    """Read one of our CSVs, skipping '#' comment lines."""
    with open(path, "r", encoding="ascii") as fh:
        data_lines = [line for line in fh if line.strip() and not line.lstrip().startswith("#")]
    if not data_lines:
        return [], []
    reader = csv.DictReader(StringIO("".join(data_lines)))
    rows = list(reader)
    return list(reader.fieldnames or []), rows


def _scale(value: float, lo: float, hi: float, out_lo: float, out_hi: float) -> float:
    if hi == lo:
        return (out_lo + out_hi) / 2.0
    return out_lo + (value - lo) / (hi - lo) * (out_hi - out_lo)


def emit_svg(csv_path, x_col: str, y_cols: list[str], out_path) -> None:
    """Render a minimal line chart of y_cols against x_col.

    Unknown columns raise ValueError; an empty CSV still produces a
    valid empty-axes chart.
    """
    header, rows = read_csv_table(csv_path)
    if rows:
        for col in [x_col, *y_cols]:
            if col not in header:
                raise ValueError(f"unknown column {col!r}; available: {header}")
    xs = [float(row[x_col]) for row in rows]
    series = {col: [float(row[col]) for row in rows] for col in y_cols}

    plot_left = _MARGIN_LEFT
    plot_right = _WIDTH - _MARGIN_RIGHT
    plot_top = _MARGIN_TOP
    plot_bottom = _HEIGHT - _MARGIN_BOTTOM

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<line x1="{plot_left}" y1="{plot_bottom}" x2="{plot_right}" y2="{plot_bottom}" '
        'stroke="black"/>',
        f'<line x1="{plot_left}" y1="{plot_top}" x2="{plot_left}" y2="{plot_bottom}" '
        'stroke="black"/>',
        f'<text x="{(plot_left + plot_right) / 2:.1f}" y="{_HEIGHT - 12}" '
        f'text-anchor="middle" font-size="13">{x_col}</text>',
    ]
    if xs:
        x_lo, x_hi = min(xs), max(xs)
        all_y = [v for values in series.values() for v in values]
        y_lo, y_hi = min(all_y), max(all_y)
        parts.append(
            f'<text x="{plot_left}" y="{plot_bottom + 16}" text-anchor="middle" '
            f'font-size="11">{x_lo:.4g}</text>'
        )
        parts.append(
            f'<text x="{plot_right}" y="{plot_bottom + 16}" text-anchor="middle" '
            f'font-size="11">{x_hi:.4g}</text>'
        )
        parts.append(
            f'<text x="{plot_left - 6}" y="{plot_bottom + 4}" text-anchor="end" '
            f'font-size="11">{y_lo:.4g}</text>'
        )
        parts.append(
            f'<text x="{plot_left - 6}" y="{plot_top + 4}" text-anchor="end" '
            f'font-size="11">{y_hi:.4g}</text>'
        )
        for idx, (col, values) in enumerate(series.items()):
            color = _PALETTE[idx % len(_PALETTE)]
            points = [
                (
                    _scale(x, x_lo, x_hi, plot_left, plot_right),
                    _scale(y, y_lo, y_hi, plot_bottom, plot_top),
                )
                for x, y in zip(xs, values)
            ]
            if len(points) > 1:
                path = " ".join(f"{px:.2f},{py:.2f}" for px, py in points)
                parts.append(
                    f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>'
                )
            for px, py in points:
                parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="2.5" fill="{color}"/>')
            legend_y = plot_top + 16 * idx
            parts.append(
                f'<rect x="{plot_right - 130}" y="{legend_y - 9}" width="10" height="10" '
                f'fill="{color}"/>'
            )
            parts.append(
                f'<text x="{plot_right - 115}" y="{legend_y}" font-size="12">{col}</text>'
            )
    else:
        parts.append(
            f'<text x="{(plot_left + plot_right) / 2:.1f}" y="{(plot_top + plot_bottom) / 2:.1f}" '
            'text-anchor="middle" font-size="13" fill="#888">no data</text>'
        )
    parts.append("</svg>")
    with open(out_path, "w", encoding="ascii") as fh:
        fh.write("\n".join(parts) + "\n")


def render_figure(csv_path, x_col: str, y_cols: list[str], out_path, title: str = "") -> None:
    """Matplotlib rendering of the same chart, for the report path."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    header, rows = read_csv_table(csv_path)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if rows:
        for col in [x_col, *y_cols]:
            if col not in header:
                raise ValueError(f"unknown column {col!r}; available: {header}")
        xs = [float(row[x_col]) for row in rows]
        for col in y_cols:
            ax.plot(xs, [float(row[col]) for row in rows], marker="o", markersize=3, label=col)
        ax.legend()
    ax.set_xlabel(x_col)
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
