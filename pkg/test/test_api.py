"""API properties.

"""

import cfgowl
from cfgowl import (
    DEFAULT_CONFIG,
    classify_dl,
    classify_hybrid,
    convert,
    make_rule,
    materialize,
    parse,
    run,
    segment_parse,
    sequence_to_abox,
    to_cnf,
)
from cfgowl.fixtures import fixture, fixtures
from cfgowl.materializer import modes
from cfgowl.table import tabulate, tabulate_formats
from common import raises, skip


try:
    from inspect import signature, _empty
except ImportError:
    signature = None
    _empty = None


def test_all():
    "API: every name in __all__ is importable"
    for name in cfgowl.__all__:
        assert hasattr(cfgowl, name), name


def test_modes():
    "API: the classification modes are dl and hybrid"
    assert modes == ["dl", "hybrid"]


def test_tabulate_formats():
    "API: tabulate_formats is a list of strings"
    assert type(tabulate_formats) is list
    for fmt in tabulate_formats:
        assert type(fmt) is str  # noqa


def _check_signature(function, expected_sig):
    if not signature:
        skip("")
    actual_sig = signature(function)
    print(f"expected: {expected_sig}\nactual: {str(actual_sig)}\n")

    assert len(actual_sig.parameters) == len(expected_sig)

    for (e, ev), (a, av) in zip(expected_sig, actual_sig.parameters.items()):
        assert e == a and ev == av.default


def test_convert_signature():
    "API: convert() type signature is unchanged"
    _check_signature(convert, [("g", _empty), ("config", DEFAULT_CONFIG)])


def test_to_cnf_signature():
    "API: to_cnf() type signature is unchanged"
    _check_signature(to_cnf, [("g", _empty), ("mode", "relaxed")])


def test_parse_signature():
    "API: parse() type signature is unchanged"
    _check_signature(parse, [("g", _empty), ("seq", _empty), ("start", None)])


def test_abox_signatures():
    "API: sequence_to_abox() and segment_parse() type signatures are unchanged"
    _check_signature(
        sequence_to_abox, [("seq", _empty), ("g", _empty), ("config", DEFAULT_CONFIG)])
    _check_signature(segment_parse, [("g", _empty), ("bricks", _empty), ("seq", _empty)])


def test_make_rule_signature():
    "API: make_rule() type signature is unchanged"
    expected_sig = [
        ("class_a", _empty),
        ("class_b", _empty),
        ("rule_class", _empty),
        ("config", DEFAULT_CONFIG),
        ("existing", None),
    ]
    _check_signature(make_rule, expected_sig)


def test_materialize_signature():
    "API: materialize() type signature is unchanged"
    _check_signature(
        materialize, [("tbox", _empty), ("aboxes", ()), ("subclass_only", False)])


def test_classify_signatures():
    "API: classify_dl(), classify_hybrid() and run() type signatures are unchanged"
    common = [("alignments", ()), ("config", DEFAULT_CONFIG), ("scaffolding", True)]
    _check_signature(classify_dl, [("g", _empty), ("seq", _empty)] + common)
    _check_signature(
        classify_hybrid, [("g", _empty), ("bricks", _empty), ("seq", _empty)] + common)
    _check_signature(
        run,
        [("g", _empty), ("seq", _empty), ("mode", "dl"), ("bricks", None)] + common,
    )


def test_tabulate_signature():
    "API: tabulate() type signature is unchanged"
    assert type(tabulate) is type(lambda: None)  # noqa
    expected_sig = [
        ("rows", _empty),
        ("headers", ()),
        ("tablefmt", "simple"),
        ("floatfmt", "g"),
        ("maxcolwidths", None),
    ]
    _check_signature(tabulate, expected_sig)


def test_fixtures():
    "API: bundled fixtures are listed and resolved to files"
    assert fixtures() == ["binary_sum", "binary_sum_source", "bluebossa", "self_embedding"]
    bluebossa = fixture("bluebossa", "hybrid")
    assert bluebossa.alignment.endswith("mto_align.ttl")
    assert bluebossa.expected.endswith("bluebossa.hybrid.json")
    assert fixture("binary_sum_source").sequence is None
    assert fixture("self_embedding").expected is None
    with raises(ValueError):
        fixture("giant_steps")
