"""Sequences and parse trees as OWL assertions."""

import logging

from .cfg2owl import DEFAULT_CONFIG
from .grammar import RELAXED, TERMINAL, GrammarError, Symbol, is_cnf
from .owl import (
    NAMED_INDIVIDUAL,
    ClassAssertion,
    Declaration,
    NamedClass,
    ObjectPropertyAssertion,
    Ontology,
    SubClassOf,
    encode_local,
)
from .parser import Chart, ParseTree, SequenceError, productions_by_lhs


logger = logging.getLogger(__name__)


def individual_iri(token, position, config=DEFAULT_CONFIG):
    """IRI of the element at `position`; repeated tokens get distinct individuals.

    >>> individual_iri("C:min7", 0)
    'http://example.org/cfgowl#C%3Amin7_0'

    """
    return config.entity("%s_%d" % (encode_local(token), position))


def sequence_individuals(seq, config=DEFAULT_CONFIG):
    return [individual_iri(token, i, config) for i, token in enumerate(seq)]


def sequence_to_abox(seq, g, config=DEFAULT_CONFIG):
    """One typed individual per position, each linked to its successor.

    A single token yields one individual and no links.
    """
    known = {t.text for t in g.terminals}
    for i, token in enumerate(seq):
        if token not in known:
            raise SequenceError("token %r at position %d is not a terminal of the grammar"
                                % (token, i))
    ontology = Ontology(config.base)
    individuals = sequence_individuals(seq, config)
    for token, individual in zip(seq, individuals):
        ontology.add(Declaration(NAMED_INDIVIDUAL, individual))
        ontology.add(ClassAssertion(NamedClass(config.class_iri(token)), individual))
    for subject, obj in zip(individuals, individuals[1:]):
        ontology.add(ObjectPropertyAssertion(config.next_property, subject, obj))
    return ontology


def parse_tree_to_axioms(tree, config=DEFAULT_CONFIG):
    """C_leaf ⊑ C_ancestor for every terminal leaf and each variable above it.

    Nearer ancestors come first.
    """
    ontology = Ontology(config.base)

    def walk(node, ancestors):
        if not node.children:
            if node.label.kind == TERMINAL:
                leaf = NamedClass(config.class_iri(node.label.text))
                for a in reversed(ancestors):
                    ontology.add(SubClassOf(leaf, NamedClass(config.class_iri(a.text))))
            return
        for child in node.children:
            walk(child, ancestors + (node.label,))

    walk(tree, ())
    return ontology


def default_bricks(g):
    return tuple(g.bricks) or (g.start,)


def check_bricks(g, bricks):
    unknown = sorted({b.text for b in bricks if b not in g.variables})
    if unknown:
        raise GrammarError("bricks are not variables of the grammar: %s" % ", ".join(unknown))


def segment_parse(g, bricks, seq):
    """Cover `seq` left to right with derivations of brick variables.

    At each position the longest prefix some brick derives becomes a segment;
    among equally long ones the brick defined first in the grammar wins.
    A token no brick covers becomes a bare leaf segment.
    """
    if not is_cnf(g, RELAXED):
        raise GrammarError("segmentation needs a grammar in relaxed CNF")
    bricks = set(bricks)
    check_bricks(g, bricks)
    by_lhs = productions_by_lhs(g)
    ordered = [v for v in by_lhs if v in bricks]
    tokens = tuple(seq)
    segments = []
    uncovered = []
    i = 0
    while i < len(tokens):
        chart = Chart(g, tokens[i:], ordered, offset=i, by_lhs=by_lhs)
        best = None
        for brick in ordered:
            ends = chart.ends(brick)
            if ends and (best is None or ends[-1] > best[1]):
                best = (brick, ends[-1])
        if best is None:
            segments.append(ParseTree(Symbol(TERMINAL, tokens[i]), (), (i, i + 1)))
            uncovered.append(i)
            i += 1
        else:
            segments.append(chart.tree(best[0], best[1]))
            i = best[1]
    if uncovered:
        logger.warning("no brick covers the tokens at positions %s",
                       ", ".join(str(i) for i in uncovered))
    return segments
