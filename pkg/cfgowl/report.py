"""Classification reports: JSON documents and text tables."""

from collections import namedtuple
import json

from .owl import local_name
from .table import tabulate


ReportRow = namedtuple("ReportRow", ["position", "token", "individual", "classes"])


def class_display_names(class_iris):
    """Sorted, decoded local names of `class_iris`.

    >>> class_display_names(["http://example.org/cfgowl#C%3Amin7",
    ...                      "http://example.org/cfgowl#MinorOn_Cm"])
    ('C:min7', 'MinorOn_Cm')

    """
    return tuple(sorted({local_name(c) for c in class_iris}))


class ClassificationReport(namedtuple("ClassificationReport", ["mode", "rows"])):
    """Inferred classes per sequence position, in sequence order."""

    __slots__ = ()

    def classes(self, position):
        return set(self.rows[position].classes)

    def to_dicts(self):
        return [
            {
                "position": row.position,
                "token": row.token,
                "individual": row.individual,
                "classes": list(row.classes),
                "mode": self.mode,
            }
            for row in self.rows
        ]

    def to_json(self):
        return json.dumps(self.to_dicts(), indent=2, ensure_ascii=False) + "\n"

    def without(self, names):
        """Copy of the report with the classes in `names` removed."""
        names = set(names)
        rows = [
            row._replace(classes=tuple(c for c in row.classes if c not in names))
            for row in self.rows
        ]
        return ClassificationReport(self.mode, tuple(rows))


def label_positions(report, labels):
    """Per position, the labels of the classes it carries.

    `labels` maps class display names to labels; a position may collect
    several labels or none.
    """
    return [[labels[c] for c in row.classes if c in labels] for row in report.rows]


def report_table(report, tablefmt="simple", labels=None, maxwidth=60):
    """Text table with one row per sequence element."""
    headers = ["#", "Token", "Inferred classes"]
    rows = [[row.position, row.token, " ".join(row.classes)] for row in report.rows]
    if labels:
        headers.append("Type")
        for row, found in zip(rows, label_positions(report, labels)):
            row.append(" ".join(found))
    widths = [None, None, maxwidth, None]
    return tabulate(rows, headers, tablefmt=tablefmt, maxcolwidths=widths[: len(headers)])


def compare_reports(narrow, wide, ignore=()):
    """Positions where `narrow` has classes `wide` lacks, as {position: classes}."""
    ignore = set(ignore)
    extra = {}
    for a, b in zip(narrow.rows, wide.rows):
        missing = set(a.classes) - set(b.classes) - ignore
        if missing:
            extra[a.position] = sorted(missing)
    return extra
