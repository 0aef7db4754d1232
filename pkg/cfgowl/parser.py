"""Recognizing and parsing token sequences against a grammar.

The working parser is an Earley chart over grammars without ε-productions;
a CYK recognizer is kept next to it as an independent oracle.
"""

from collections import namedtuple
import logging
import re

from .grammar import RELAXED, STRICT, TERMINAL, VARIABLE, GrammarError, Symbol, is_cnf


logger = logging.getLogger(__name__)


ParseTree = namedtuple("ParseTree", ["label", "children", "span"])


class SequenceError(ValueError):
    """A malformed sequence file or a token the grammar does not know."""


class NotInLanguageError(ValueError):
    """The sequence is not derivable; `prefix_length` tokens were still viable."""

    def __init__(self, message, prefix_length):
        self.prefix_length = prefix_length
        super().__init__(message)


_Item = namedtuple("_Item", ["production", "dot", "origin"])


def productions_by_lhs(g):
    """Map each variable to the indexes of its productions, in grammar order."""
    index = {}
    for i, p in enumerate(g.productions):
        index.setdefault(p.lhs, []).append(i)
    return index


class Chart:
    """Earley chart for `tokens`, with every symbol of `starts` predicted at 0.

    Spans reported by ends() and tree() are shifted by `offset`, so a chart
    built over a suffix of a longer sequence speaks in positions of the
    whole sequence.
    """

    def __init__(self, grammar, tokens, starts, offset=0, by_lhs=None):
        self.grammar = grammar
        self.tokens = tuple(tokens)
        self.offset = offset
        self.by_lhs = by_lhs if by_lhs is not None else productions_by_lhs(grammar)
        n = len(self.tokens)
        self.sets = [[] for _ in range(n + 1)]
        self._seen = [set() for _ in range(n + 1)]
        self._waiting = [{} for _ in range(n + 1)]
        self._predicted = [set() for _ in range(n + 1)]
        self.completed = set()
        for s in starts:
            self._predict(s, 0)
        for j in range(n + 1):
            self._process(j)

    def _add(self, j, item):
        if item in self._seen[j]:
            return
        self._seen[j].add(item)
        self.sets[j].append(item)
        rhs = self.grammar.productions[item.production].rhs
        if item.dot < len(rhs) and rhs[item.dot].kind == VARIABLE:
            self._waiting[j].setdefault(rhs[item.dot], []).append(item)

    def _predict(self, symbol, j):
        if symbol in self._predicted[j]:
            return
        self._predicted[j].add(symbol)
        for i in self.by_lhs.get(symbol, ()):
            self._add(j, _Item(i, 0, j))

    def _process(self, j):
        items = self.sets[j]
        k = 0
        while k < len(items):
            item = items[k]
            k += 1
            p = self.grammar.productions[item.production]
            if item.dot < len(p.rhs):
                symbol = p.rhs[item.dot]
                if symbol.kind == VARIABLE:
                    self._predict(symbol, j)
                elif j < len(self.tokens) and self.tokens[j] == symbol.text:
                    self._add(j + 1, _Item(item.production, item.dot + 1, item.origin))
            else:
                # origin < j always holds without ε-productions, so the
                # waiting list of the origin set is already complete
                self.completed.add((p.lhs, item.origin, j))
                for waiting in self._waiting[item.origin].get(p.lhs, ()):
                    self._add(j, _Item(waiting.production, waiting.dot + 1, waiting.origin))

    def accepts(self, symbol):
        return (symbol, 0, len(self.tokens)) in self.completed

    def viable_prefix(self):
        """Length of the longest prefix after which the chart is not empty."""
        return max((j for j, items in enumerate(self.sets) if items), default=0)

    def ends(self, symbol):
        """End positions of the spans from 0 that `symbol` derives, ascending."""
        return sorted(
            self.offset + j
            for j in range(1, len(self.tokens) + 1)
            if (symbol, 0, j) in self.completed
        )

    def tree(self, symbol, end=None):
        """Derivation tree of `symbol` over the tokens up to `end`."""
        if not is_cnf(self.grammar, RELAXED):
            raise GrammarError("parse trees need a grammar in relaxed CNF")
        j = len(self.tokens) if end is None else end - self.offset
        return self._build(symbol, 0, j)

    def _derives(self, symbol, i, j):
        if symbol.kind == TERMINAL:
            return j == i + 1 and self.tokens[i] == symbol.text
        return (symbol, i, j) in self.completed

    def _leaf(self, symbol, i):
        return ParseTree(symbol, (), (self.offset + i, self.offset + i + 1))

    def _subtree(self, symbol, i, j):
        if symbol.kind == TERMINAL:
            return self._leaf(symbol, i)
        return self._build(symbol, i, j)

    def _build(self, symbol, i, j):
        span = (self.offset + i, self.offset + j)
        for index in self.by_lhs.get(symbol, ()):
            rhs = self.grammar.productions[index].rhs
            if len(rhs) == 1:
                if self._derives(rhs[0], i, j):
                    return ParseTree(symbol, (self._leaf(rhs[0], i),), span)
                continue
            first, second = rhs
            for k in range(i + 1, j):
                if self._derives(first, i, k) and self._derives(second, k, j):
                    children = (self._subtree(first, i, k), self._subtree(second, k, j))
                    return ParseTree(symbol, children, span)
        raise AssertionError("no derivation of %s over %r" % (symbol.text, span))


def _unknown_tokens(g, tokens):
    known = {t.text for t in g.terminals}
    return [t for t in tokens if t not in known]


def recognize(g, seq, start=None):
    """True if `seq` is in the language of `g`.

    >>> from cfgowl.grammar import parse_grammar
    >>> g = parse_grammar('S -> "a" S "b" | "a" "b"')
    >>> recognize(g, ["a", "a", "b", "b"]), recognize(g, ["a", "b", "b"])
    (True, False)

    """
    tokens = tuple(seq)
    if not tokens:
        return False
    unknown = _unknown_tokens(g, tokens)
    if unknown:
        logger.warning("tokens not in the grammar: %s", ", ".join(sorted(set(unknown))))
        return False
    start = start or g.start
    return Chart(g, tokens, [start]).accepts(start)


def parse(g, seq, start=None):
    """Return the derivation tree of `seq`.

    Among several derivations the one using, at every node, the production
    listed first in the grammar and then the leftmost split point is chosen.
    """
    if not is_cnf(g, RELAXED):
        raise GrammarError("parse needs a grammar in relaxed CNF; run to_cnf first")
    tokens = tuple(seq)
    start = start or g.start
    chart = Chart(g, tokens, [start])
    if not tokens or not chart.accepts(start):
        prefix = chart.viable_prefix()
        raise NotInLanguageError(
            "sequence is not in the language of %s (longest viable prefix: %d tokens)"
            % (start.text, prefix),
            prefix,
        )
    return chart.tree(start)


def cyk_recognize(g, seq):
    """CYK recognition for grammars in strict CNF."""
    if not is_cnf(g, STRICT):
        raise GrammarError("CYK recognition needs a grammar in strict CNF")
    tokens = tuple(seq)
    n = len(tokens)
    if n == 0:
        return False
    unary = {}
    binary = {}
    for p in g.productions:
        if len(p.rhs) == 1:
            unary.setdefault(p.rhs[0].text, set()).add(p.lhs)
        else:
            binary.setdefault(p.rhs, set()).add(p.lhs)
    table = {}
    for i, token in enumerate(tokens):
        table[i, i + 1] = set(unary.get(token, ()))
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            j = i + length
            cell = set()
            for k in range(i + 1, j):
                for b in table[i, k]:
                    for c in table[k, j]:
                        cell |= binary.get((b, c), set())
            table[i, j] = cell
    return g.start in table[0, n]


_SEQUENCE_TOKEN = re.compile(
    r"""
      (?P<space>\s+)
    | (?P<comment>\#.*)
    | (?P<quoted>"(?:[^"\\]|\\.)*")
    | (?P<bare>[^\s"\#][^\s"]*)
    """,
    re.VERBOSE,
)


def read_sequence(text):
    """Tokens of a sequence file.

    >>> read_sequence('C:min7 F:min7  # bars 1-2\\n"F:7(#11)"')
    ('C:min7', 'F:min7', 'F:7(#11)')

    """
    tokens = []
    for lineno, line in enumerate(text.splitlines(), 1):
        pos = 0
        while pos < len(line):
            m = _SEQUENCE_TOKEN.match(line, pos)
            if m is None:
                raise SequenceError("line %d, column %d: unterminated quoted token"
                                    % (lineno, pos + 1))
            if m.lastgroup == "comment":
                break
            if m.lastgroup == "quoted":
                tokens.append(re.sub(r"\\(.)", r"\1", m.group()[1:-1]))
            elif m.lastgroup == "bare":
                tokens.append(m.group())
            pos = m.end()
    return tuple(tokens)


def format_tree(tree):
    """Bracketed rendering of a parse tree.

    >>> leaf = ParseTree(Symbol(TERMINAL, "1"), (), (0, 1))
    >>> format_tree(ParseTree(Symbol(VARIABLE, "Expression"), (leaf,), (0, 1)))
    'Expression(1)'

    """
    if not tree.children:
        return tree.label.text
    return "%s(%s)" % (tree.label.text, ", ".join(format_tree(c) for c in tree.children))


def leaves(tree):
    if not tree.children:
        return (tree.label.text,)
    return tuple(text for child in tree.children for text in leaves(child))
