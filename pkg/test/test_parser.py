"""Recognition and parsing."""

import logging

from cfgowl.grammar import (
    RELAXED,
    STRICT,
    GrammarError,
    enumerate_language,
    parse_grammar,
    to_cnf,
)
from cfgowl.parser import (
    NotInLanguageError,
    SequenceError,
    cyk_recognize,
    format_tree,
    leaves,
    parse,
    read_sequence,
    recognize,
)
from common import (
    all_sequences,
    assert_equal,
    load_grammar,
    load_sequence,
    random_cnf_grammar,
    raises,
)


def _self_embedding():
    return to_cnf(load_grammar("self_embedding"), RELAXED)


def test_recognize_binary_sum():
    "Parser: binary sums are recognized"
    g = load_grammar("binary_sum")
    assert recognize(g, ["1", "+", "0"])
    assert recognize(g, ["1", "0", "+", "1", "1"])
    assert not recognize(g, ["1", "+"])
    assert not recognize(g, ["+", "1"])


def test_recognize_empty_sequence():
    "Parser: the empty sequence is never in the language"
    assert not recognize(load_grammar("binary_sum"), [])


def test_recognize_unknown_token(caplog):
    "Parser: tokens outside the alphabet are rejected with a warning"
    with caplog.at_level(logging.WARNING, logger="cfgowl.parser"):
        assert not recognize(load_grammar("binary_sum"), ["1", "+", "2"])
    assert "tokens not in the grammar: 2" in caplog.text


def test_recognize_any_cfg():
    "Parser: recognition does not need a normal form"
    g = load_grammar("self_embedding")
    assert recognize(g, "a a a b b b".split())
    assert not recognize(g, "a a b b b".split())


def test_recognize_other_start():
    "Parser: recognition from a variable other than the start symbol"
    g = load_grammar("bluebossa")
    seq = ["D:hdim7", "G:7", "C:minmaj7"]
    assert not recognize(g, seq)
    assert recognize(g, seq, start=g.bricks[1])


def test_parse_binary_sum():
    "Parser: parse tree of 1 + 0"
    tree = parse(load_grammar("binary_sum"), ["1", "+", "0"])
    assert_equal("Expression(Expression_0(Expression(1), Plus(+)), Expression(0))",
                 format_tree(tree))
    assert_equal((0, 3), tree.span)
    assert_equal(("1", "+", "0"), leaves(tree))


def test_parse_self_embedding():
    "Parser: parse tree of a a b b in relaxed CNF"
    tree = parse(_self_embedding(), load_sequence("self_embedding"))
    assert_equal("R(R_0(a, R(a, b)), b)", format_tree(tree))
    inner = tree.children[0].children[1]
    assert_equal((1, 3), inner.span)


def test_parse_prefers_first_production():
    "Parser: among several derivations the first listed production wins"
    g = parse_grammar('S -> A B | B A\nA -> "x"\nB -> "x"')
    assert_equal("S(A(x), B(x))", format_tree(parse(g, ["x", "x"])))


def test_parse_not_in_language():
    "Parser: sequences outside the language report their viable prefix"
    with raises(NotInLanguageError) as e:
        parse(_self_embedding(), ["a", "b", "b"])
    assert_equal(2, e.value.prefix_length)
    with raises(NotInLanguageError) as e:
        parse(_self_embedding(), [])
    assert_equal(0, e.value.prefix_length)


def test_parse_needs_relaxed_cnf():
    "Parser: parse trees need a grammar in relaxed CNF"
    with raises(GrammarError):
        parse(load_grammar("self_embedding"), ["a", "b"])


def test_cyk_needs_strict_cnf():
    "Parser: CYK rejects grammars outside strict CNF"
    with raises(GrammarError):
        cyk_recognize(_self_embedding(), ["a", "b"])


def test_cyk_binary_sum():
    "Parser: CYK agrees on the binary sum fixture"
    g = load_grammar("binary_sum")
    for seq in all_sequences(["0", "1", "+"], 5):
        assert_equal(recognize(g, seq), cyk_recognize(g, seq))


def test_earley_agrees_with_cyk_on_random_grammars():
    "Parser: Earley and CYK agree on random strict CNF grammars"
    sequences = all_sequences(["a", "b"], 6)
    for seed in range(100):
        g = random_cnf_grammar(seed)
        for seq in sequences:
            assert recognize(g, seq) == cyk_recognize(g, seq), (seed, seq)


def test_enumerated_strings_are_recognized():
    "Parser: every enumerated string is recognized and parses to its leaves"
    for seed in range(20):
        g = random_cnf_grammar(seed)
        for seq in enumerate_language(g, 5):
            assert recognize(g, seq), (seed, seq)
            assert_equal(seq, leaves(parse(g, seq)))


def test_strict_and_relaxed_forms_agree():
    "Parser: both normal forms of the binary sum grammar accept the same strings"
    source = load_grammar("binary_sum_source")
    strict, relaxed = to_cnf(source, STRICT), to_cnf(source, RELAXED)
    for seq in all_sequences(["0", "1", "+"], 5):
        assert_equal(recognize(strict, seq), recognize(relaxed, seq))


def test_read_sequence():
    "Parser: sequence files accept quotes and comments"
    text = '# tune\nC:min7 F:min7\n  "F:7(#11)" "a \\"b\\""  # trailing\n'
    assert_equal(("C:min7", "F:min7", "F:7(#11)", 'a "b"'), read_sequence(text))
    assert_equal((), read_sequence(""))


def test_read_sequence_bare_hash():
    "Parser: '#' inside a bare token is part of the token"
    assert_equal(("F:7(#11)",), read_sequence("F:7(#11)"))


def test_read_sequence_unterminated_quote():
    "Parser: an unterminated quote is a sequence error"
    with raises(SequenceError):
        read_sequence('C:min7 "F:7')


def test_bluebossa_sequence():
    "Parser: the Blue Bossa fixture has eleven chords"
    seq = load_sequence("bluebossa")
    assert_equal(11, len(seq))
    assert_equal(("C:min7", "F:min7"), seq[:2])
    assert_equal("Db:maj7", seq[7])
