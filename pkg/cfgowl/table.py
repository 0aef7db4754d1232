"""Plain-text tables for classification reports and benchmark summaries."""

from collections import namedtuple
from functools import partial
import numbers
import textwrap

try:
    import wcwidth  # optional wide-character (CJK) support
except ImportError:
    wcwidth = None


# if True, enable wide-character (CJK) support
WIDE_CHARS_MODE = wcwidth is not None

_DEFAULT_FLOATFMT = "g"


Line = namedtuple("Line", ["begin", "hline", "sep", "end"])


DataRow = namedtuple("DataRow", ["begin", "sep", "end"])


# A table is laid out as
#
#     --- lineabove ---------
#         headerrow
#     --- linebelowheader ---
#         datarow
#     --- linebetweenrows ---
#     ... (more datarows) ...
#     --- linebelow ---------
#
# line* elements are None or a Line, *row elements are None or a DataRow;
# with_header_hide lists the elements left out when the table has headers.
TableFormat = namedtuple(
    "TableFormat",
    [
        "lineabove",
        "linebelowheader",
        "linebetweenrows",
        "linebelow",
        "headerrow",
        "datarow",
        "padding",
        "with_header_hide",
    ],
)


_table_formats = {
    "simple": TableFormat(
        lineabove=Line("", "-", "  ", ""),
        linebelowheader=Line("", "-", "  ", ""),
        linebetweenrows=None,
        linebelow=Line("", "-", "  ", ""),
        headerrow=DataRow("", "  ", ""),
        datarow=DataRow("", "  ", ""),
        padding=0,
        with_header_hide=["lineabove", "linebelow"],
    ),
    "plain": TableFormat(
        lineabove=None,
        linebelowheader=None,
        linebetweenrows=None,
        linebelow=None,
        headerrow=DataRow("", "  ", ""),
        datarow=DataRow("", "  ", ""),
        padding=0,
        with_header_hide=None,
    ),
    "grid": TableFormat(
        lineabove=Line("+", "-", "+", "+"),
        linebelowheader=Line("+", "=", "+", "+"),
        linebetweenrows=Line("+", "-", "+", "+"),
        linebelow=Line("+", "-", "+", "+"),
        headerrow=DataRow("|", "|", "|"),
        datarow=DataRow("|", "|", "|"),
        padding=1,
        with_header_hide=None,
    ),
    "pipe": TableFormat(
        lineabove=Line("|", "-", "|", "|"),
        linebelowheader=Line("|", "-", "|", "|"),
        linebetweenrows=None,
        linebelow=None,
        headerrow=DataRow("|", "|", "|"),
        datarow=DataRow("|", "|", "|"),
        padding=1,
        with_header_hide=["lineabove"],
    ),
    "rst": TableFormat(
        lineabove=Line("", "=", "  ", ""),
        linebelowheader=Line("", "=", "  ", ""),
        linebetweenrows=None,
        linebelow=Line("", "=", "  ", ""),
        headerrow=DataRow("", "  ", ""),
        datarow=DataRow("", "  ", ""),
        padding=0,
        with_header_hide=None,
    ),
}


tabulate_formats = sorted(_table_formats.keys())


def _visible_width(s):
    """Printed width of a single line, wide characters counted twice.

    >>> _visible_width("C:min7")
    6

    """
    if wcwidth is not None and WIDE_CHARS_MODE:
        width = wcwidth.wcswidth(s)
        if width >= 0:
            return width
    return len(s)


def _padright(width, s):
    return s + " " * max(0, width - _visible_width(s))


def _padleft(width, s):
    return " " * max(0, width - _visible_width(s)) + s


def _is_number(value):
    return isinstance(value, numbers.Number) and not isinstance(value, bool)


def _format(value, floatfmt):
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, floatfmt)
    return str(value)


def _cell_lines(text, maxwidth):
    lines = []
    for line in text.splitlines() or [""]:
        if maxwidth and _visible_width(line) > maxwidth:
            lines.extend(
                textwrap.wrap(line, maxwidth, break_long_words=False, break_on_hyphens=False)
                or [""]
            )
        else:
            lines.append(line)
    return lines


def _pad_row(cells, padding):
    pad = " " * padding
    return [pad + cell + pad for cell in cells]


def _build_simple_row(padded_cells, rowfmt):
    "Format row according to DataRow format without padding."
    begin, sep, end = rowfmt
    return (begin + sep.join(padded_cells) + end).rstrip()


def _build_line(colwidths, linefmt):
    "Return a string which represents a horizontal line."
    begin, fill, sep, end = linefmt
    cells = [fill * w for w in colwidths]
    return _build_simple_row(cells, (begin, sep, end))


def _append_multiline_row(lines, cells, colwidths, aligns, rowfmt, pad):
    nlines = max(len(c) for c in cells)
    for i in range(nlines):
        row = []
        for cell, width, align in zip(cells, colwidths, aligns):
            text = cell[i] if i < len(cell) else ""
            padfn = _padleft if align == "right" else _padright
            row.append(padfn(width, text))
        lines.append(_build_simple_row(_pad_row(row, pad), rowfmt))
    return lines


def _format_table(fmt, headers, rows, colwidths, aligns):
    """Produce a plain-text representation of the table."""
    lines = []
    hidden = fmt.with_header_hide if (headers and fmt.with_header_hide) else []
    pad = fmt.padding
    padded_widths = [w + 2 * pad for w in colwidths]
    append_row = partial(_append_multiline_row, colwidths=colwidths, aligns=aligns, pad=pad)

    if fmt.lineabove and "lineabove" not in hidden:
        lines.append(_build_line(padded_widths, fmt.lineabove))
    if headers:
        append_row(lines, headers, rowfmt=fmt.headerrow)
        if fmt.linebelowheader and "linebelowheader" not in hidden:
            lines.append(_build_line(padded_widths, fmt.linebelowheader))
    for i, row in enumerate(rows):
        if i and fmt.linebetweenrows and "linebetweenrows" not in hidden:
            lines.append(_build_line(padded_widths, fmt.linebetweenrows))
        append_row(lines, row, rowfmt=fmt.datarow)
    if fmt.linebelow and "linebelow" not in hidden:
        lines.append(_build_line(padded_widths, fmt.linebelow))
    return "\n".join(lines)


def tabulate(rows, headers=(), tablefmt="simple", floatfmt=_DEFAULT_FLOATFMT, maxcolwidths=None):
    """Format `rows` (a list of lists) as a plain-text table.

    Numeric columns are flushed right, all others left. Cells may span
    several lines; `maxcolwidths` (one width or one per column) wraps
    longer cells at whitespace.

    >>> print(tabulate([["C:min7", "MinorOn_Cm"], ["F:min7", "Off_F"]],
    ...                ["Token", "Classes"]))
    Token   Classes
    ------  ----------
    C:min7  MinorOn_Cm
    F:min7  Off_F

    >>> print(tabulate([["G:7", 6]], ["Token", "Classes"], tablefmt="grid"))
    +-------+---------+
    | Token | Classes |
    +=======+=========+
    | G:7   |       6 |
    +-------+---------+

    """
    if tablefmt not in _table_formats:
        raise ValueError("unknown table format %r (expected one of %s)"
                         % (tablefmt, ", ".join(tabulate_formats)))
    fmt = _table_formats[tablefmt]
    rows = [list(r) for r in rows]
    headers = list(headers)
    ncols = max([len(headers)] + [len(r) for r in rows])
    if ncols == 0:
        return ""
    if headers:
        headers += [""] * (ncols - len(headers))
    rows = [r + [None] * (ncols - len(r)) for r in rows]

    if maxcolwidths is None or isinstance(maxcolwidths, int):
        maxcolwidths = [maxcolwidths] * ncols

    aligns = []
    for i in range(ncols):
        values = [r[i] for r in rows if r[i] is not None and r[i] != ""]
        numeric = bool(values) and all(_is_number(v) for v in values)
        aligns.append("right" if numeric else "left")

    cells = [
        [_cell_lines(_format(v, floatfmt), w) for v, w in zip(r, maxcolwidths)] for r in rows
    ]
    header_cells = [_cell_lines(h, None) for h in headers]
    colwidths = []
    for i in range(ncols):
        column = [c[i] for c in cells] + ([header_cells[i]] if headers else [])
        colwidths.append(max(_visible_width(line) for cell in column for line in cell))
    return _format_table(fmt, header_cells, cells, colwidths, aligns)
