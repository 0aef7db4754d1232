"""Grammar growth benchmark.

Each iteration adds fresh variables with random alternatives to the grammar,
then times DL-mode and hybrid-mode classification of a fixed sequence.
The added symbols never reach the bricks or the sequence, so the
classification itself must not change along the way.
"""

from collections import namedtuple
import csv
import logging
import time

import numpy as np

from .abox import sequence_to_abox
from .cfg2owl import DEFAULT_CONFIG, convert
from .grammar import TERMINAL, VARIABLE, InvariantError, Production, Symbol, make_grammar
from .materializer import classify_dl, classify_hybrid, modes, relaxed
from .owl import count_axioms


logger = logging.getLogger(__name__)


TIMING_REPEATS = 5

GROWN_VARIABLE_PREFIX = "_Grown"
GROWN_TERMINAL_PREFIX = "_grown"

CSV_HEADER = ["iteration", "productions_total", "axioms_total", "dl_time_ms", "hybrid_time_ms"]


class GrowthConfig(
    namedtuple(
        "GrowthConfig",
        ["seed", "iterations", "step", "alternatives", "binary_probability"],
    )
):
    """How many productions each iteration adds, and what they look like.

    Every one of the `step` new variables gets k alternatives, k uniform in
    the `alternatives` range; an alternative is binary with probability
    `binary_probability` and a fresh terminal otherwise.
    """

    __slots__ = ()

    def __new__(cls, seed=0, iterations=20, step=5, alternatives=(1, 10),
                binary_probability=0.8):
        low, high = alternatives
        if step < 1:
            raise ValueError("step must be at least 1")
        if iterations < 0:
            raise ValueError("iterations must not be negative")
        if not 1 <= low <= high:
            raise ValueError("invalid alternatives range %r" % (alternatives,))
        if not 0.0 <= binary_probability <= 1.0:
            raise ValueError("binary_probability must be within [0, 1]")
        return super().__new__(
            cls, int(seed), int(iterations), int(step), (int(low), int(high)),
            float(binary_probability),
        )


BenchRow = namedtuple("BenchRow", CSV_HEADER)


def _is_grown(symbol):
    prefix = GROWN_VARIABLE_PREFIX if symbol.kind == VARIABLE else GROWN_TERMINAL_PREFIX
    return symbol.text.startswith(prefix)


def _fresh(name, taken):
    candidate = name
    k = 0
    while candidate in taken:
        candidate = "%s_%d" % (name, k)
        k += 1
    taken.add(candidate)
    return candidate


def grow_grammar(g, config, iteration):
    """`g` plus `config.step` new variables, drawn from a generator seeded
    by (seed, iteration).

    Binary alternatives only combine symbols introduced by earlier growth,
    so nothing added can derive from, or be derived by, the original grammar.
    """
    rng = np.random.default_rng([config.seed, iteration])
    taken = {s.text for s in g.variables + g.terminals}
    pool = [s for s in g.variables + g.terminals if _is_grown(s)]
    fresh = [
        Symbol(VARIABLE, _fresh("%s%d_%d" % (GROWN_VARIABLE_PREFIX, iteration, j), taken))
        for j in range(config.step)
    ]
    pool.extend(fresh)
    low, high = config.alternatives
    productions = list(g.productions)
    for j, v in enumerate(fresh):
        for a in range(int(rng.integers(low, high + 1))):
            if rng.random() < config.binary_probability:
                first, second = rng.integers(0, len(pool), size=2)
                rhs = (pool[first], pool[second])
            else:
                text = _fresh("%s%d_%d_%d" % (GROWN_TERMINAL_PREFIX, iteration, j, a), taken)
                rhs = (Symbol(TERMINAL, text),)
            productions.append(Production(v, rhs))
    return make_grammar(productions, start=g.start, bricks=g.bricks)._replace(duplicates=())


def median_time(fn, repeats=TIMING_REPEATS):
    """(median wall time in ms over `repeats` calls, result of a warm-up call)."""
    result = fn()
    samples = []
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        samples.append((time.perf_counter() - started) * 1000.0)
    return float(np.median(samples)), result


def run_bench(g, seq, bricks=None, config=GrowthConfig(), conversion=DEFAULT_CONFIG):
    """One BenchRow for the grammar as given, then one per growth iteration.

    Raises InvariantError when the DL or the hybrid classification of `seq`
    drifts from the one obtained with the original grammar.
    """
    seq = tuple(seq)
    grammar = relaxed(g, bricks)
    abox_count = count_axioms(sequence_to_abox(seq, grammar, conversion))
    baselines = None
    rows = []
    for iteration in range(config.iterations + 1):
        if iteration:
            grammar = grow_grammar(grammar, config, iteration)
        dl_ms, dl_report = median_time(lambda: classify_dl(grammar, seq, config=conversion))
        hybrid_ms, hybrid_report = median_time(
            lambda: classify_hybrid(grammar, bricks, seq, config=conversion))
        if baselines is None:
            baselines = (dl_report, hybrid_report)
        for mode, report, baseline in zip(modes, (dl_report, hybrid_report), baselines):
            if report != baseline:
                raise InvariantError(
                    "%s classification changed after growth iteration %d" % (mode, iteration))
        axioms = count_axioms(convert(grammar, conversion)) + abox_count
        row = BenchRow(iteration, len(grammar.productions), axioms, dl_ms, hybrid_ms)
        logger.info("iteration %d: %d productions, %d axioms, dl %.2f ms, hybrid %.2f ms",
                    *row)
        rows.append(row)
    return rows


def write_csv(rows, f):
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([
            row.iteration,
            row.productions_total,
            row.axioms_total,
            "%.3f" % row.dl_time_ms,
            "%.3f" % row.hybrid_time_ms,
        ])


def linear_fit(xs, ys):
    """Least-squares line through (xs, ys) as (slope, intercept, r2).

    >>> slope, intercept, r2 = linear_fit([0, 1, 2, 3], [1, 3, 5, 7])
    >>> round(slope, 6), round(intercept, 6), round(r2, 6)
    (2.0, 1.0, 1.0)

    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if len(x) < 2:
        raise ValueError("a linear fit needs at least two points")
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if total == 0.0 else 1.0 - float(np.sum(residual ** 2)) / total
    return float(slope), float(intercept), r2
