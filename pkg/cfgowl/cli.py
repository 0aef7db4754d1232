"""Command-line interface: ``cfgowl COMMAND [options]``."""

import getopt
import logging
import sys
import textwrap

from .abox import default_bricks, segment_parse
from .bench import GrowthConfig, linear_fit, run_bench, write_csv
from .cfg2owl import ConversionConfig, convert, make_rule
from .grammar import (
    ERROR,
    RELAXED,
    GrammarError,
    InvariantError,
    cnf_modes,
    enumerate_language,
    format_grammar,
    parse_grammar,
    to_cnf,
    validate,
    variable,
)
from .materializer import modes, relaxed
from .owl import DEFAULT_BASE, read_turtle, serialize_manchester, serialize_turtle
from .parser import format_tree, read_sequence
from .pipeline import run, total_axioms
from .report import report_table
from .table import tabulate, tabulate_formats


logger = logging.getLogger(__name__)


_ONTOLOGY_FORMATS = {"ttl": serialize_turtle, "omn": serialize_manchester}

_REPORT_FORMATS = ["json"] + tabulate_formats


class UsageError(Exception):
    """Bad flags; the usage text of the command is printed."""


def _usage(fn):
    return textwrap.dedent(fn.__doc__)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _getopt(args, shortopts, longopts, required=()):
    try:
        opts, rest = getopt.getopt(args, "h" + shortopts, ["help"] + longopts)
    except getopt.GetoptError as e:
        raise UsageError(str(e))
    if rest:
        raise UsageError("unexpected arguments: %s" % " ".join(rest))
    given = {opt.lstrip("-") for opt, _ in opts}
    if "h" in given or "help" in given:
        return None
    options = {}
    for opt, value in opts:
        options.setdefault(_long_name(opt, shortopts, longopts), []).append(value)
    for name in required:
        if name not in options:
            raise UsageError("option --%s is required" % name)
    return options


def _long_name(opt, shortopts, longopts):
    """Map a short flag to the long option listed at the same position."""
    if opt.startswith("--"):
        return opt[2:]
    letters = [c for c in shortopts if c != ":"]
    return longopts[letters.index(opt[1])].rstrip("=")


def _last(options, name, default=None):
    return options[name][-1] if name in options else default


def _choice(value, choices, what):
    if value not in choices:
        raise UsageError("%s is not a supported %s (expected one of %s)"
                         % (value, what, ", ".join(choices)))
    return value


def _load_grammar(path):
    return parse_grammar(_read(path))


def _bricks(options):
    value = _last(options, "bricks")
    if value is None:
        return None
    names = [name.strip() for name in value.split(",") if name.strip()]
    if not names:
        raise GrammarError("--bricks lists no variable")
    return tuple(variable(name) for name in names)


def _conversion(options, include_inverse=True):
    return ConversionConfig(
        base=_last(options, "base", DEFAULT_BASE),
        next_property=_last(options, "next-iri"),
        include_inverse=include_inverse,
    )


def _labels(options):
    labels = {}
    for value in options.get("label", ()):
        name, sep, label = value.partition("=")
        if not sep or not name:
            raise UsageError("--label expects CLASS=LABEL, got %r" % value)
        labels[name] = label
    return labels


def _cmd_normalize(args):
    """\
    Usage: cfgowl normalize -g FILE [options]

    Rewrite a grammar in Chomsky Normal Form.

    -g FILE, --grammar FILE   grammar file
    -m MODE, --mode MODE      strict or relaxed (default: relaxed)
    -o FILE, --out FILE       write the grammar to FILE (default: stdout)
    --verify-upto N           check that both grammars derive the same strings
                              of length at most N
    """
    options = _getopt(args, "g:m:o:", ["grammar=", "mode=", "out=", "verify-upto="],
                      required=["grammar"])
    if options is None:
        return _usage(_cmd_normalize)
    mode = _choice(_last(options, "mode", RELAXED), cnf_modes, "normal form")
    g = _load_grammar(_last(options, "grammar"))
    normalized = to_cnf(g, mode)
    verify = _last(options, "verify-upto")
    if verify is not None:
        n = int(verify)
        if enumerate_language(g, n) != enumerate_language(normalized, n):
            raise InvariantError(
                "the normalized grammar derives other strings of length at most %d" % n)
        logger.info("languages agree on strings of length at most %d", n)
    _write(_last(options, "out"), format_grammar(normalized))
    return 0


def _cmd_validate(args):
    """\
    Usage: cfgowl validate -g FILE

    Report duplicate, undeclared, unproductive and unreachable symbols.
    Exits with status 2 if an error is found.

    -g FILE, --grammar FILE   grammar file
    """
    options = _getopt(args, "g:", ["grammar="], required=["grammar"])
    if options is None:
        return _usage(_cmd_validate)
    g = _load_grammar(_last(options, "grammar"))
    diagnostics = validate(g)
    for d in diagnostics:
        print("%s: %s: %s" % (d.severity, d.code, d.message))
    return 2 if any(d.severity == ERROR for d in diagnostics) else 0


def _cmd_convert(args):
    """\
    Usage: cfgowl convert -g FILE [options]

    Convert a grammar into an OWL ontology. Grammars not in relaxed CNF
    are normalized first.

    -g FILE, --grammar FILE   grammar file
    -o FILE, --out FILE       write the ontology to FILE (default: stdout)
    -f FMT, --format FMT      ttl (Turtle) or omn (Manchester) (default: ttl)
    --base IRI                namespace of the generated entities
                              (default: http://example.org/cfgowl)
    --next-iri IRI            property linking consecutive elements
                              (default: BASE#directlyPrecedes)
    --no-inverse              leave out the inverse property chains
    """
    options = _getopt(
        args, "g:o:f:",
        ["grammar=", "out=", "format=", "base=", "next-iri=", "no-inverse"],
        required=["grammar"],
    )
    if options is None:
        return _usage(_cmd_convert)
    fmt = _choice(_last(options, "format", "ttl"), sorted(_ONTOLOGY_FORMATS), "format")
    config = _conversion(options, include_inverse="no-inverse" not in options)
    g = relaxed(_load_grammar(_last(options, "grammar")))
    ontology = convert(g, config)
    logger.info("%d axioms", len(ontology))
    _write(_last(options, "out"), _ONTOLOGY_FORMATS[fmt](ontology))
    return 0


def _cmd_parse(args):
    """\
    Usage: cfgowl parse -g FILE -s FILE [options]

    Split a sequence into brick derivations and print one bracketed
    parse tree per segment.

    -g FILE, --grammar FILE     grammar file
    -s FILE, --sequence FILE    sequence file
    --bricks V1,V2,...          brick variables (default: the bricks:
                                directive, else the start symbol)
    """
    options = _getopt(args, "g:s:", ["grammar=", "sequence=", "bricks="],
                      required=["grammar", "sequence"])
    if options is None:
        return _usage(_cmd_parse)
    bricks = _bricks(options)
    g = relaxed(_load_grammar(_last(options, "grammar")), bricks)
    seq = read_sequence(_read(_last(options, "sequence")))
    bricks = bricks or default_bricks(g)
    for tree in segment_parse(g, bricks, seq):
        print(format_tree(tree))
    return 0


def _cmd_classify(args):
    """\
    Usage: cfgowl classify -g FILE -s FILE [options]

    Infer the classes of every element of a sequence.

    -g FILE, --grammar FILE     grammar file
    -s FILE, --sequence FILE    sequence file
    -m MODE, --mode MODE        dl (saturate the converted grammar) or
                                hybrid (parse, then align) (default: dl)
    --bricks V1,V2,...          brick variables for the hybrid mode
    -a FILE, --align FILE       Turtle ontology merged before reasoning;
                                may be repeated
    --no-scaffolding            leave VariableOne/VariableTwo out of the report
    -f FMT, --format FMT        json, or a table format: plain, simple,
                                grid, pipe, rst (default: simple)
    -l CLASS=LABEL, --label CLASS=LABEL
                                add a column naming LABEL for positions
                                in CLASS; may be repeated
    -o FILE, --out FILE         write the report to FILE (default: stdout)
    --base IRI                  namespace of the generated entities
    --next-iri IRI              property linking consecutive elements
    """
    options = _getopt(
        args, "g:s:m:a:f:l:o:",
        ["grammar=", "sequence=", "mode=", "align=", "format=", "label=", "out=",
         "bricks=", "no-scaffolding", "base=", "next-iri="],
        required=["grammar", "sequence"],
    )
    if options is None:
        return _usage(_cmd_classify)
    mode = _choice(_last(options, "mode", modes[0]), modes, "mode")
    fmt = _choice(_last(options, "format", "simple"), _REPORT_FORMATS, "report format")
    labels = _labels(options)
    config = _conversion(options)
    g = _load_grammar(_last(options, "grammar"))
    seq = read_sequence(_read(_last(options, "sequence")))
    alignments = tuple(read_turtle(_read(path)) for path in options.get("align", ()))
    result = run(
        g, seq, mode,
        bricks=_bricks(options),
        alignments=alignments,
        config=config,
        scaffolding="no-scaffolding" not in options,
    )
    logger.info("%s mode: %d axioms (%s), %.2f ms", mode, total_axioms(result),
                ", ".join("%s %d" % kv for kv in result.counts.items()), result.elapsed_ms)
    if fmt == "json":
        text = result.report.to_json()
    else:
        text = report_table(result.report, fmt, labels=labels) + "\n"
    _write(_last(options, "out"), text)
    return 0


def _iri(value, config):
    """A full IRI, or a local name in the conversion namespace."""
    if "://" in value or value.startswith("urn:"):
        return value
    return config.class_iri(value)


def _cmd_rule(args):
    """\
    Usage: cfgowl rule --a CLASS --b CLASS --rule CLASS [options]

    Write a Turtle ontology inferring RULE for an element of class A
    directly followed by an element of class B. Classes are full IRIs
    or local names in the --base namespace. Pass the result back to
    classify with --align.

    --a CLASS                 class of the first element
    --b CLASS                 class of the second element
    --rule CLASS              class inferred for both elements
    -o FILE, --out FILE       write the ontology to FILE (default: stdout)
    --base IRI                namespace of the generated entities
    --next-iri IRI            property linking consecutive elements
    """
    options = _getopt(args, "o:", ["out=", "a=", "b=", "rule=", "base=", "next-iri="],
                      required=["a", "b", "rule"])
    if options is None:
        return _usage(_cmd_rule)
    config = _conversion(options)
    ontology = make_rule(
        _iri(_last(options, "a"), config),
        _iri(_last(options, "b"), config),
        _iri(_last(options, "rule"), config),
        config,
    )
    _write(_last(options, "out"), serialize_turtle(ontology))
    return 0


def _cmd_bench(args):
    """\
    Usage: cfgowl bench -g FILE -s FILE [options]

    Grow the grammar step by step and time both classification modes.
    Writes one CSV row per iteration; with --out, a summary of the
    growth trend is printed as well.

    -g FILE, --grammar FILE     grammar file
    -s FILE, --sequence FILE    sequence file
    --bricks V1,V2,...          brick variables for the hybrid mode
    -n N, --iterations N        number of growth iterations (default: 20)
    --step N                    variables added per iteration (default: 5)
    --seed N                    random seed (default: 0)
    -o FILE, --out FILE         write the CSV to FILE (default: stdout)
    """
    options = _getopt(
        args, "g:s:n:o:",
        ["grammar=", "sequence=", "iterations=", "out=", "bricks=", "step=", "seed="],
        required=["grammar", "sequence"],
    )
    if options is None:
        return _usage(_cmd_bench)
    growth = GrowthConfig(
        seed=int(_last(options, "seed", 0)),
        iterations=int(_last(options, "iterations", 20)),
        step=int(_last(options, "step", 5)),
    )
    g = _load_grammar(_last(options, "grammar"))
    seq = read_sequence(_read(_last(options, "sequence")))
    rows = run_bench(g, seq, _bricks(options), growth)
    out = _last(options, "out")
    if out is None or out == "-":
        write_csv(rows, sys.stdout)
        return 0
    with open(out, "w", encoding="utf-8", newline="") as f:
        write_csv(rows, f)
    if len(rows) > 1:
        productions = [r.productions_total for r in rows]
        summary = []
        for name in ("axioms_total", "dl_time_ms", "hybrid_time_ms"):
            slope, intercept, r2 = linear_fit(productions, [getattr(r, name) for r in rows])
            summary.append([name, slope, intercept, r2])
        print(tabulate(summary, ["per production", "slope", "intercept", "R²"],
                       floatfmt=".4g"))
    return 0


_commands = {
    "normalize": _cmd_normalize,
    "validate": _cmd_validate,
    "convert": _cmd_convert,
    "parse": _cmd_parse,
    "classify": _cmd_classify,
    "rule": _cmd_rule,
    "bench": _cmd_bench,
}


def _main(argv=None):
    """\
    Usage: cfgowl [-v] COMMAND [options]

    Convert context-free grammars into OWL ontologies and classify
    sequences with them. Run "cfgowl COMMAND --help" for the options
    of a command.

    Commands:

    normalize     rewrite a grammar in Chomsky Normal Form
    validate      report problems in a grammar
    convert       convert a grammar into an OWL ontology
    parse         split a sequence into brick parse trees
    classify      infer the classes of the elements of a sequence
    rule          write an alignment rule ontology
    bench         time both classification modes on a growing grammar

    Options:

    -h, --help    show this message
    -v, --verbose report progress and axiom counts on stderr

    Exit status is 0 on success, 2 on bad input and 3 when an internal
    check fails.
    """
    usage = _usage(_main)
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        opts, args = getopt.getopt(argv, "hv", ["help", "verbose"])
    except getopt.GetoptError as e:
        print(e, file=sys.stderr)
        print(usage, file=sys.stderr)
        sys.exit(2)
    level = logging.WARNING
    for opt, _ in opts:
        if opt in ["-h", "--help"]:
            print(usage)
            sys.exit(0)
        elif opt in ["-v", "--verbose"]:
            level = logging.INFO
    if not args:
        print(usage, file=sys.stderr)
        sys.exit(2)
    if args[0] not in _commands:
        print("%s is not a cfgowl command" % args[0], file=sys.stderr)
        print(usage, file=sys.stderr)
        sys.exit(2)
    logging.basicConfig(level=level, format="%(levelname)s: %(name)s: %(message)s")
    command = _commands[args[0]]
    try:
        status = command(args[1:])
    except UsageError as e:
        print(e, file=sys.stderr)
        print(_usage(command), file=sys.stderr)
        sys.exit(2)
    except InvariantError as e:
        print("cfgowl: internal check failed: %s" % e, file=sys.stderr)
        sys.exit(3)
    except (ValueError, OSError) as e:
        print("cfgowl: %s" % e, file=sys.stderr)
        sys.exit(2)
    if isinstance(status, str):
        print(status)
        status = 0
    sys.exit(status)
