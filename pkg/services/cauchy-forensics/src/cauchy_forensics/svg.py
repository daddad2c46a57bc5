"""
SVG bar chart of a turnout histogram

Plain string building with fixed number formatting, so identical bins
always produce identical bytes.
"""

import logging
from pathlib import Path
from typing import List, Sequence, Union
from xml.sax.saxutils import escape

from .errors import InputFileError
from .models import HistogramBin

logger = logging.getLogger(__name__)

WIDTH = 800
HEIGHT = 420
MARGIN_LEFT = 60
MARGIN_RIGHT = 20
MARGIN_TOP = 40
MARGIN_BOTTOM = 60

BAR_FILL = "#4c72b0"
OVERFLOW_FILL = "#c44e52"
AXIS_STROKE = "#333333"


class SVG:
    """Minimal SVG document builder"""

    def __init__(self):
        self.svg = ""

    def header(self, width: int, height: int):
        self.svg += (
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
            f'<svg version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" '
            'xmlns="http://www.w3.org/2000/svg">\n'
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>\n'
        )

    def rect(self, x1: float, y1: float, x2: float, y2: float, fill: str, extra: str = ""):
        self.svg += (
            f'<rect x="{x1:.2f}" y="{y1:.2f}" width="{x2 - x1:.2f}" height="{y2 - y1:.2f}" '
            f'fill="{fill}"{" " + extra if extra else ""}/>\n'
        )

    def line(self, x1: float, y1: float, x2: float, y2: float, stroke: str = AXIS_STROKE):
        self.svg += f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="{stroke}"/>\n'

    def text(self, x: float, y: float, string: str, extra: str = ""):
        self.svg += f'<text x="{x:.2f}" y="{y:.2f}"{" " + extra if extra else ""}>{escape(string)}</text>\n'

    def get_svg(self) -> str:
        return f"{self.svg}</svg>\n"


def _fmt(value: float) -> str:
    return f"{value:g}"


def render_histogram(bins: Sequence[HistogramBin], bin_width: float, title: str = "") -> str:
    """Bars on a 0-100 % axis plus a separate overflow bar for >100 % turnout"""
    logger.debug("rendering %d bins at width %s", len(bins), bin_width)
    regular = [b for b in bins if not b.overflow]
    overflow = [b for b in bins if b.overflow]

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    slot = max(bin_width, 5.0)
    domain = 100.0 + 2 * slot  # gap + overflow bar
    x0, y0 = MARGIN_LEFT, HEIGHT - MARGIN_BOTTOM
    top = max([b.count for b in bins] + [1])

    def sx(pct: float) -> float:
        return x0 + plot_w * pct / domain

    def sy(count: float) -> float:
        return y0 - plot_h * count / top

    doc = SVG()
    doc.header(WIDTH, HEIGHT)
    if title:
        doc.text(WIDTH / 2, 24, title, 'text-anchor="middle" font-size="16"')

    for b in regular:
        if b.count:
            doc.rect(sx(b.low), sy(b.count), sx(b.high), y0, BAR_FILL,
                     f'data-low="{_fmt(b.low)}" data-count="{b.count}"')
    for b in overflow:
        doc.rect(sx(100.0 + slot), sy(b.count), sx(100.0 + 2 * slot), y0, OVERFLOW_FILL,
                 f'stroke="#000000" stroke-dasharray="4 2" data-low="100" data-count="{b.count}" class="overflow"')
        doc.text(sx(100.0 + 1.5 * slot), sy(b.count) - 4, str(b.count), 'text-anchor="middle" font-size="10"')

    # axes
    doc.line(x0, y0, x0 + plot_w, y0)
    doc.line(x0, y0, x0, MARGIN_TOP)
    for pct in range(0, 101, 10):
        doc.line(sx(pct), y0, sx(pct), y0 + 5)
        doc.text(sx(pct), y0 + 18, str(pct), 'text-anchor="middle" font-size="10"')
    doc.text(sx(100.0 + 1.5 * slot), y0 + 18, ">100", 'text-anchor="middle" font-size="10"')

    for count in _count_ticks(top):
        doc.line(x0 - 5, sy(count), x0, sy(count))
        doc.text(x0 - 8, sy(count) + 3, str(count), 'text-anchor="end" font-size="10"')

    doc.text(x0 + plot_w / 2, HEIGHT - 18, "turnout %", 'text-anchor="middle" font-size="12"')
    doc.text(16, MARGIN_TOP + plot_h / 2, "count",
             f'text-anchor="middle" font-size="12" transform="rotate(-90 16 {MARGIN_TOP + plot_h / 2:.2f})"')
    return doc.get_svg()


def _count_ticks(top: int) -> List[int]:
    """At most ~8 ticks on a 1-2-5 progression"""
    step, k = 1, 0
    while top / step > 8:
        k += 1
        step = (1, 2, 5)[k % 3] * 10 ** (k // 3)
    return list(range(0, top + 1, step))


def write_svg(content: str, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(content)
    except OSError as e:
        raise InputFileError(f"cannot write {path}: {e}") from e
    logger.debug("wrote %d bytes of SVG to %s", len(content), path)
    return path
