"""Test output of tables, reports and ontology documents."""

import json

from cfgowl.owl import (
    CLASS,
    NAMED_INDIVIDUAL,
    OBJECT_PROPERTY,
    ClassAssertion,
    Declaration,
    EquivalentClasses,
    HasSelf,
    InverseOf,
    IntersectionOf,
    NamedClass,
    ObjectPropertyAssertion,
    Ontology,
    SubClassOf,
    SubPropertyChainOf,
    UnionOf,
    read_turtle,
    serialize_manchester,
    serialize_turtle,
)
from cfgowl.report import (
    ClassificationReport,
    ReportRow,
    compare_reports,
    label_positions,
    report_table,
)
from cfgowl.table import tabulate, tabulate_formats
from common import assert_equal, load_alignment, raises, skip

# _test_table shows
#  - left alignment of text,
#  - right alignment of numbers
_test_table = [["C:min7", 0], ["F:min7", 12]]
_test_table_headers = ["Token", "#"]

B = "http://example.org/cfgowl#"


def test_formats():
    "Output: the supported table formats"
    assert_equal(["grid", "pipe", "plain", "rst", "simple"], tabulate_formats)


def test_plain():
    "Output: plain with headers"
    expected = "\n".join(["Token    #", "C:min7   0", "F:min7  12"])
    result = tabulate(_test_table, _test_table_headers, tablefmt="plain")
    assert_equal(expected, result)


def test_simple():
    "Output: simple with headers"
    expected = "\n".join(["Token    #", "------  --", "C:min7   0", "F:min7  12"])
    result = tabulate(_test_table, _test_table_headers, tablefmt="simple")
    assert_equal(expected, result)


def test_simple_headerless():
    "Output: simple without headers"
    expected = "\n".join(["------  --", "C:min7   0", "F:min7  12", "------  --"])
    result = tabulate(_test_table, tablefmt="simple")
    assert_equal(expected, result)


def test_grid():
    "Output: grid with headers"
    expected = "\n".join(
        [
            "+--------+----+",
            "| Token  |  # |",
            "+========+====+",
            "| C:min7 |  0 |",
            "+--------+----+",
            "| F:min7 | 12 |",
            "+--------+----+",
        ]
    )
    result = tabulate(_test_table, _test_table_headers, tablefmt="grid")
    assert_equal(expected, result)


def test_pipe():
    "Output: pipe with headers"
    expected = "\n".join(
        ["| Token  |  # |", "|--------|----|", "| C:min7 |  0 |", "| F:min7 | 12 |"]
    )
    result = tabulate(_test_table, _test_table_headers, tablefmt="pipe")
    assert_equal(expected, result)


def test_rst():
    "Output: rst with headers"
    expected = "\n".join(
        ["======  ==", "Token    #", "======  ==", "C:min7   0", "F:min7  12", "======  =="]
    )
    result = tabulate(_test_table, _test_table_headers, tablefmt="rst")
    assert_equal(expected, result)


def test_floats_and_missing_values():
    "Output: floats use floatfmt, None is an empty cell"
    expected = "\n".join(["x   ms", "-  ---", "a  1.5", "b", "c  2.0"])
    result = tabulate([["a", 1.5], ["b", None], ["c", 2.0]], ["x", "ms"], floatfmt=".1f")
    assert_equal(expected, result)


def test_maxcolwidths():
    "Output: long cells wrap at whitespace"
    expected = "\n".join(["a  VariableOne", "   VariableTwo", "   R"])
    result = tabulate([["a", "VariableOne VariableTwo R"]], tablefmt="plain",
                      maxcolwidths=[None, 11])
    assert_equal(expected, result)


def test_wide_characters():
    "Output: wide characters take two columns"
    try:
        import wcwidth  # noqa
    except ImportError:
        skip("test_wide_characters is skipped")
    expected = "\n".join(["和音   1", "ab    22"])
    result = tabulate([["和音", 1], ["ab", 22]], tablefmt="plain")
    assert_equal(expected, result)


def test_empty_table():
    "Output: a table without rows or headers is empty"
    assert_equal("", tabulate([]))


def test_unknown_format():
    "Output: unknown table formats are rejected"
    with raises(ValueError):
        tabulate(_test_table, tablefmt="latex")


def _report():
    return ClassificationReport(
        "dl",
        (
            ReportRow(0, "C:min7", B + "C%3Amin7_0", ("MinorOn_Cm", "OnOffMinorIV_Cm")),
            ReportRow(1, "F:min7", B + "F%3Amin7_1", ("Off_F",)),
        ),
    )


def test_report_table():
    "Output: report table with one row per position"
    expected = "\n".join(
        [
            "#  Token   Inferred classes",
            "0  C:min7  MinorOn_Cm OnOffMinorIV_Cm",
            "1  F:min7  Off_F",
        ]
    )
    assert_equal(expected, report_table(_report(), "plain"))


def test_report_table_labels():
    "Output: report table with a label column"
    expected = "\n".join(
        [
            "#  Token   " + "Inferred classes".ljust(26) + "  Type",
            "0  C:min7  MinorOn_Cm OnOffMinorIV_Cm",
            "1  F:min7  " + "Off_F".ljust(26) + "  Off",
        ]
    )
    assert_equal(expected, report_table(_report(), "plain", labels={"Off_F": "Off"}))
    assert_equal([[], ["Off"]], label_positions(_report(), {"Off_F": "Off"}))


def test_report_table_wraps_classes():
    "Output: report table wraps the class column"
    result = report_table(_report(), "plain", maxwidth=12)
    assert_equal(
        ["#  Token   Inferred classes", "0  C:min7  MinorOn_Cm", " " * 11 + "OnOffMinorIV_Cm",
         "1  F:min7  Off_F"],
        result.splitlines(),
    )


def test_report_json():
    "Output: JSON report keeps key order and non-ASCII text"
    text = _report().to_json()
    assert text.endswith("]\n")
    rows = json.loads(text)
    assert_equal(["position", "token", "individual", "classes", "mode"], list(rows[0]))
    assert_equal(_report().to_dicts(), rows)
    report = ClassificationReport("hybrid", (ReportRow(0, "和音", B + "x_0", ()),))
    assert "和音" in report.to_json()


def test_compare_reports():
    "Output: positions where one report has classes the other lacks"
    full = _report()
    bare = full.without(["OnOffMinorIV_Cm"])
    assert_equal({}, compare_reports(bare, full))
    assert_equal({0: ["OnOffMinorIV_Cm"]}, compare_reports(full, bare))
    assert_equal({}, compare_reports(full, bare, ignore=["OnOffMinorIV_Cm"]))


def _ontology():
    nxt = B + "directlyPrecedes"
    return Ontology(
        "http://example.org/cfgowl",
        [
            Declaration(CLASS, B + "A"),
            Declaration(OBJECT_PROPERTY, B + "R_A"),
            Declaration(NAMED_INDIVIDUAL, B + "C%3Amin7_0"),
            SubClassOf(NamedClass(B + "A"), NamedClass(B + "B")),
            EquivalentClasses(NamedClass(B + "A"), HasSelf(B + "R_A")),
            SubPropertyChainOf((B + "R_A", nxt, InverseOf(B + "R_B")), B + "R_VariableOne"),
            SubClassOf(
                UnionOf((IntersectionOf((NamedClass(B + "A"), NamedClass(B + "V"))),
                         NamedClass(B + "1"))),
                NamedClass(B + "S"),
            ),
            ClassAssertion(NamedClass(B + "A"), B + "C%3Amin7_0"),
            ObjectPropertyAssertion(nxt, B + "C%3Amin7_0", B + "F%3Amin7_1"),
        ],
    )


def test_manchester():
    "Output: Manchester frames in first-emission order"
    lines = serialize_manchester(_ontology()).splitlines()
    assert_equal("Prefix: : <http://example.org/cfgowl#>", lines[0])
    assert "Ontology: <http://example.org/cfgowl>" in lines
    frame = lines.index("Class: :A")
    assert_equal(["    SubClassOf: :B", "    EquivalentTo: :R_A some Self"],
                 lines[frame + 1:frame + 3])
    assert lines.index("ObjectProperty: :R_A") > frame
    assert "    SubPropertyChain: :R_A o :directlyPrecedes o inverse(:R_B)" in lines
    individual = lines.index("Individual: :C%3Amin7_0")
    assert_equal(["    Types: :A", "    Facts: :directlyPrecedes :F%3Amin7_1"],
                 lines[individual + 1:individual + 3])
    assert_equal("(:A and :V) or <http://example.org/cfgowl#1> SubClassOf: :S", lines[-1])


def test_turtle():
    "Output: Turtle documents read back to the same axioms"
    o = _ontology()
    text = serialize_turtle(o)
    assert "<http://example.org/cfgowl> a owl:Ontology ." in text.splitlines()
    again = read_turtle(text)
    assert_equal("http://example.org/cfgowl", again.base)
    assert_equal(set(o), set(again))
    assert_equal(len(o), len(again))


def test_turtle_is_deterministic():
    "Output: serializing twice gives the same text"
    assert_equal(serialize_turtle(_ontology()), serialize_turtle(_ontology()))


def test_read_alignment():
    "Output: plain rdfs:subClassOf files are read as inclusions, labels skipped"
    alignment = load_alignment()
    assert_equal(10, len(alignment))
    kinds = sorted(type(a).__name__ for a in alignment)
    assert_equal(["Declaration"] * 2 + ["SubClassOf"] * 8, kinds)
