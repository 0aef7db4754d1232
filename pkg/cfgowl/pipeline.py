"""One call per classification mode, with timing and axiom counts."""

from collections import OrderedDict, namedtuple
import time

from .cfg2owl import DEFAULT_CONFIG
from .materializer import (
    DL,
    HYBRID,
    classify_components,
    dl_components,
    hybrid_components,
    modes,
)
from .owl import count_axioms
from .report import compare_reports


ModeResult = namedtuple("ModeResult", ["mode", "report", "elapsed_ms", "counts"])


def run(g, seq, mode=DL, bricks=None, alignments=(), config=DEFAULT_CONFIG, scaffolding=True):
    """Classify `seq` in `mode`; the report equals classify_dl/classify_hybrid output.

    `counts` holds the axiom count of every ontology that took part, by
    component: tbox, abox and alignment in DL mode; tree, terminal_rules,
    abox and alignment in hybrid mode.
    """
    if mode not in modes:
        raise ValueError("unknown mode %r (expected one of %s)" % (mode, ", ".join(modes)))
    seq = tuple(seq)
    started = time.perf_counter()
    if mode == DL:
        components = dl_components(g, seq, alignments, config)
    else:
        components = hybrid_components(g, bricks, seq, alignments, config)
    report = classify_components(components, seq, mode, config, scaffolding)
    elapsed = (time.perf_counter() - started) * 1000.0
    counts = OrderedDict((name, count_axioms(o)) for name, o in components.items())
    return ModeResult(mode, report, elapsed, counts)


def total_axioms(result):
    return sum(result.counts.values())


def hybrid_excess(g, seq, bricks=None, alignments=(), config=DEFAULT_CONFIG):
    """Classes the hybrid mode finds that the DL mode does not, by position.

    Helper classes are left out of the comparison; an empty result means the
    hybrid classification is contained in the DL one.
    """
    dl = run(g, seq, DL, bricks, alignments, config, scaffolding=False)
    hybrid = run(g, seq, HYBRID, bricks, alignments, config, scaffolding=False)
    return compare_reports(hybrid.report, dl.report)
