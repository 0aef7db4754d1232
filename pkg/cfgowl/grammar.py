"""Context-free grammars: the grammar file format, validation and normal forms."""

from collections import namedtuple
import logging
import re


logger = logging.getLogger(__name__)


TERMINAL = "terminal"
VARIABLE = "variable"

STRICT = "strict"
RELAXED = "relaxed"
cnf_modes = [RELAXED, STRICT]

# enumerate_language is a test oracle; the number of strings explodes past this
MAX_ENUMERATION_LENGTH = 12

ERROR = "error"
WARNING = "warning"


Symbol = namedtuple("Symbol", ["kind", "text"])

Production = namedtuple("Production", ["lhs", "rhs"])

# variables and terminals are kept in first-appearance order; ``duplicates``
# holds the productions dropped while loading, so that validate() can report them
Grammar = namedtuple(
    "Grammar",
    ["variables", "terminals", "productions", "start", "bricks", "duplicates"],
    defaults=((), ()),
)

Diagnostic = namedtuple("Diagnostic", ["severity", "code", "message"])


class GrammarError(ValueError):
    """A grammar that cannot be loaded or does not have the required shape."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = "line %d, column %d: %s" % (line, column or 1, message)
        super().__init__(message)


class InvariantError(RuntimeError):
    """A run-time check of an internal guarantee failed."""


_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def variable(text):
    """Variable symbol named `text`.

    >>> variable("Expression")
    Symbol(kind='variable', text='Expression')

    """
    if not _IDENTIFIER.match(text):
        raise GrammarError("invalid variable name %r" % text)
    return Symbol(VARIABLE, text)


def terminal(text):
    if not text:
        raise GrammarError("terminals must not be empty")
    return Symbol(TERMINAL, text)


def is_variable(symbol):
    return symbol.kind == VARIABLE


def is_terminal(symbol):
    return symbol.kind == TERMINAL


def _ordered(symbols):
    seen = set()
    result = []
    for s in symbols:
        if s not in seen:
            seen.add(s)
            result.append(s)
    return result


def make_grammar(productions, start=None, bricks=()):
    """Build a Grammar from productions, dropping repeated ones.

    Variables and terminals are collected in the order they first appear.
    The start symbol defaults to the left-hand side of the first production.
    """
    kept = []
    dropped = []
    seen = set()
    for p in productions:
        p = Production(p.lhs, tuple(p.rhs))
        if p in seen:
            dropped.append(p)
        else:
            seen.add(p)
            kept.append(p)
    if start is None:
        if not kept:
            raise GrammarError("empty grammar")
        start = kept[0].lhs
    bricks = tuple(bricks)
    symbols = []
    for p in kept:
        symbols.append(p.lhs)
        symbols.extend(p.rhs)
    symbols = _ordered(symbols)
    variables = _ordered(
        [s for s in symbols if s.kind == VARIABLE] + [start] + list(bricks)
    )
    terminals = [s for s in symbols if s.kind == TERMINAL]
    return Grammar(
        tuple(variables), tuple(terminals), tuple(kept), start, bricks, tuple(dropped)
    )


def productions_of(g, lhs):
    return [p for p in g.productions if p.lhs == lhs]


# ---------------------------------------------------------------------------
# grammar file format

_Token = namedtuple("_Token", ["kind", "value", "column"])

_TOKEN = re.compile(
    r"""
      (?P<space>\s+)
    | (?P<comment>\#.*)
    | (?P<arrow>->)
    | (?P<bar>\|)
    | (?P<string>"(?:[^"\\]|\\.)*")
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_DIRECTIVE = re.compile(r"\s*(start|bricks)\s*:(.*)\Z")


def _unescape(body):
    return re.sub(r"\\(.)", r"\1", body)


def _quote(text):
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _tokenize(line, lineno):
    pos = 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if m is None:
            if line[pos] == '"':
                raise GrammarError("unterminated terminal string", lineno, pos + 1)
            raise GrammarError("unexpected character %r" % line[pos], lineno, pos + 1)
        kind = m.lastgroup
        if kind == "comment":
            return
        if kind != "space":
            value = m.group()
            if kind == "string":
                value = _unescape(value[1:-1])
                if not value:
                    raise GrammarError("empty terminal string", lineno, pos + 1)
            yield _Token(kind, value, pos + 1)
        pos = m.end()


def _directive_names(value, lineno):
    value = value.split("#", 1)[0]
    names = [n for n in re.split(r"[\s,]+", value) if n]
    for n in names:
        if not _IDENTIFIER.match(n):
            raise GrammarError("invalid variable name %r in directive" % n, lineno)
    return names


def _alternatives(tokens, lineno):
    """Split `tokens` (symbols and bars) into lists of (token, ...)."""
    alternatives = [[]]
    for tok in tokens:
        if tok.kind == "bar":
            alternatives.append([])
        elif tok.kind in ("ident", "string"):
            alternatives[-1].append(tok)
        else:
            raise GrammarError("unexpected %r" % tok.value, lineno, tok.column)
    for alt in alternatives:
        if not alt:
            column = tokens[-1].column if tokens else 1
            raise GrammarError("empty alternative (ε-productions are not supported)",
                               lineno, column)
    return alternatives


def parse_grammar(text):
    """Parse the text of a grammar file.

    >>> g = parse_grammar('S -> "a" S "b" | "a" "b"')
    >>> [t.text for t in g.terminals], len(g.productions), g.start.text
    (['a', 'b'], 2, 'S')

    """
    rules = []  # [lhs token, line, [alternatives]]
    start = None
    bricks = None
    current = None
    for lineno, line in enumerate(text.splitlines(), 1):
        m = _DIRECTIVE.match(line)
        if m:
            names = _directive_names(m.group(2), lineno)
            if m.group(1) == "start":
                if len(names) != 1:
                    raise GrammarError("start: expects exactly one variable", lineno)
                start = (names[0], lineno)
            else:
                bricks = (names, lineno)
            current = None
            continue
        tokens = list(_tokenize(line, lineno))
        if not tokens:
            continue
        if tokens[0].kind == "bar":
            if current is None:
                raise GrammarError("continuation line without a rule", lineno, 1)
            current[2].extend(_alternatives(tokens[1:], lineno))
            continue
        if tokens[0].kind != "ident":
            raise GrammarError("a rule must start with a variable", lineno,
                               tokens[0].column)
        if len(tokens) < 2 or tokens[1].kind != "arrow":
            column = tokens[1].column if len(tokens) > 1 else len(line) + 1
            raise GrammarError("expected '->'", lineno, column)
        current = [tokens[0], lineno, _alternatives(tokens[2:], lineno)]
        rules.append(current)

    if not rules and start is None:
        raise GrammarError("empty grammar")

    lhs_names = {r[0].value for r in rules}
    terminal_names = set()
    productions = []
    lines = []
    for lhs, lineno, alternatives in rules:
        for alt in alternatives:
            rhs = []
            for tok in alt:
                if tok.kind == "ident":
                    if tok.value not in lhs_names:
                        raise GrammarError("undeclared variable %r" % tok.value,
                                           lineno, tok.column)
                    rhs.append(Symbol(VARIABLE, tok.value))
                else:
                    terminal_names.add(tok.value)
                    rhs.append(Symbol(TERMINAL, tok.value))
            productions.append(Production(Symbol(VARIABLE, lhs.value), tuple(rhs)))
            lines.append(lineno)

    clash = sorted(terminal_names & lhs_names)
    if clash:
        raise GrammarError("terminal %r has the name of a variable" % clash[0])

    seen = set()
    for p, lineno in zip(productions, lines):
        if p in seen:
            logger.warning("line %d: duplicate production %s dropped",
                           lineno, format_production(p))
        seen.add(p)

    start_symbol = None
    if start is not None:
        name, lineno = start
        if name in terminal_names:
            raise GrammarError("start symbol %r is a terminal" % name, lineno)
        start_symbol = Symbol(VARIABLE, name)
    brick_symbols = ()
    if bricks is not None:
        names, lineno = bricks
        for name in names:
            if name not in lhs_names:
                raise GrammarError("brick %r is not defined by any rule" % name, lineno)
        brick_symbols = tuple(Symbol(VARIABLE, n) for n in _ordered(names))
    return make_grammar(productions, start=start_symbol, bricks=brick_symbols)


def format_production(p):
    rhs = " ".join(s.text if s.kind == VARIABLE else _quote(s.text) for s in p.rhs)
    return "%s -> %s" % (p.lhs.text, rhs)


def format_grammar(g):
    """Render `g` in the grammar file format; parse_grammar() reads it back."""
    lines = ["start: %s" % g.start.text]
    if g.bricks:
        lines.append("bricks: %s" % ", ".join(b.text for b in g.bricks))
    grouped = {}
    for p in g.productions:
        grouped.setdefault(p.lhs, []).append(p)
    for lhs, productions in grouped.items():
        alternatives = [format_production(p).split(" -> ", 1)[1] for p in productions]
        lines.append("%s -> %s" % (lhs.text, " | ".join(alternatives)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# analysis


def _productive(productions):
    productive = set()
    changed = True
    while changed:
        changed = False
        for p in productions:
            if p.lhs in productive:
                continue
            if all(s.kind == TERMINAL or s in productive for s in p.rhs):
                productive.add(p.lhs)
                changed = True
    return productive


def _reachable(productions, roots):
    by_lhs = {}
    for p in productions:
        by_lhs.setdefault(p.lhs, []).append(p)
    reached = set(roots)
    stack = list(roots)
    while stack:
        for p in by_lhs.get(stack.pop(), ()):
            for s in p.rhs:
                if s not in reached:
                    reached.add(s)
                    stack.append(s)
    return reached


def _roots(g):
    return (g.start,) + tuple(g.bricks)


def validate(g):
    """Return a list of Diagnostic for `g`; an empty list means a clean grammar."""
    diagnostics = []
    for p in g.duplicates:
        diagnostics.append(Diagnostic(
            WARNING, "duplicate-production",
            "duplicate production %s" % format_production(p)))

    declared = set(g.variables) | set(g.terminals)
    for p in g.productions:
        for s in (p.lhs,) + p.rhs:
            if s not in declared:
                diagnostics.append(Diagnostic(
                    ERROR, "undeclared-symbol",
                    "symbol %r is used but not declared" % s.text))

    start_ok = g.start.kind == VARIABLE and g.start in g.variables
    if not start_ok:
        diagnostics.append(Diagnostic(
            ERROR, "start-not-variable",
            "start symbol %r is not a variable of the grammar" % g.start.text))

    productive = _productive(g.productions)
    if start_ok and g.start not in productive:
        diagnostics.append(Diagnostic(
            ERROR, "unproductive-start",
            "start symbol %r derives no terminal string" % g.start.text))
    for v in g.variables:
        if v not in productive and v != g.start:
            diagnostics.append(Diagnostic(
                WARNING, "unproductive-symbol",
                "variable %r derives no terminal string" % v.text))

    reachable = _reachable(g.productions, _roots(g))
    for s in g.variables + g.terminals:
        if s not in reachable:
            diagnostics.append(Diagnostic(
                WARNING, "unreachable-symbol",
                "%s %r is not reachable from the start symbol or a brick"
                % (s.kind, s.text)))
    return diagnostics


def is_cnf(g, mode=RELAXED):
    """True if every production of `g` has the normal-form shape of `mode`."""
    return all(_normal_form_production(p, mode) for p in g.productions)


def _normal_form_production(p, mode):
    if len(p.rhs) == 1:
        return p.rhs[0].kind == TERMINAL
    if len(p.rhs) == 2:
        return mode == RELAXED or all(s.kind == VARIABLE for s in p.rhs)
    return False


# ---------------------------------------------------------------------------
# normal forms

_TERMINAL_WORDS = {
    "+": "Plus",
    "-": "Minus",
    "*": "Star",
    "/": "Slash",
    "=": "Equals",
    "(": "LeftParen",
    ")": "RightParen",
    ",": "Comma",
    ".": "Dot",
    ";": "Semicolon",
    "0": "Zero",
    "1": "One",
    "2": "Two",
    "3": "Three",
    "4": "Four",
    "5": "Five",
    "6": "Six",
    "7": "Seven",
    "8": "Eight",
    "9": "Nine",
}


def _terminal_variable_name(text):
    """Name of the variable standing for terminal `text` in strict CNF.

    >>> _terminal_variable_name("+"), _terminal_variable_name("a")
    ('Plus', 'T_a')
    >>> _terminal_variable_name("C:min7")
    'T_C_min7'

    """
    if text in _TERMINAL_WORDS:
        return _TERMINAL_WORDS[text]
    return "T_" + re.sub(r"[^A-Za-z0-9_]", "_", text)


def _fresh_name(base, names):
    k = 0
    while "%s_%d" % (base, k) in names:
        k += 1
    name = "%s_%d" % (base, k)
    names.add(name)
    return name


def _unique_name(name, names):
    if name in names:
        return _fresh_name(name, names)
    names.add(name)
    return name


def _replace_terminals(productions, names):
    replacements = {}
    extra = []
    result = []
    for p in productions:
        if len(p.rhs) < 2:
            result.append(p)
            continue
        rhs = []
        for s in p.rhs:
            if s.kind == TERMINAL:
                if s not in replacements:
                    v = Symbol(VARIABLE, _unique_name(_terminal_variable_name(s.text), names))
                    replacements[s] = v
                    extra.append(Production(v, (s,)))
                s = replacements[s]
            rhs.append(s)
        result.append(Production(p.lhs, tuple(rhs)))
    return result + extra


def _binarize(productions, names):
    result = []
    extra = []
    for p in productions:
        if len(p.rhs) <= 2:
            result.append(p)
            continue
        head = p.rhs[0]
        for s in p.rhs[1:-1]:
            v = Symbol(VARIABLE, _fresh_name(p.lhs.text, names))
            extra.append(Production(v, (head, s)))
            head = v
        result.append(Production(p.lhs, (head, p.rhs[-1])))
    return result + extra


def _is_unit(p):
    return len(p.rhs) == 1 and p.rhs[0].kind == VARIABLE


def _unit_closure(first, units):
    order = [first]
    seen = {first}
    i = 0
    while i < len(order):
        for target in units.get(order[i], ()):
            if target not in seen:
                seen.add(target)
                order.append(target)
        i += 1
    return order


def _remove_units(productions):
    units = {}
    proper = {}
    for p in productions:
        if _is_unit(p):
            units.setdefault(p.lhs, []).append(p.rhs[0])
        else:
            proper.setdefault(p.lhs, []).append(p)
    result = []
    for p in productions:
        if not _is_unit(p):
            result.append(p)
            continue
        for target in _unit_closure(p.rhs[0], units):
            result.extend(Production(p.lhs, q.rhs) for q in proper.get(target, ()))
    return result


def _prune(productions, roots):
    productive = _productive(productions)
    kept = [
        p
        for p in productions
        if p.lhs in productive
        and all(s.kind == TERMINAL or s in productive for s in p.rhs)
    ]
    reachable = _reachable(kept, roots)
    kept = [p for p in kept if p.lhs in reachable]
    before = {s for p in productions for s in (p.lhs,) + p.rhs if s.kind == VARIABLE}
    after = {s for p in kept for s in (p.lhs,) + p.rhs}
    pruned = sorted(s.text for s in before - after - set(roots))
    if pruned:
        logger.warning("pruned unreachable or unproductive variables: %s",
                       ", ".join(pruned))
    return kept


def to_cnf(g, mode=RELAXED):
    """Rewrite `g` in Chomsky Normal Form.

    In relaxed mode binary right-hand sides may mix variables and terminals;
    strict mode replaces each such terminal t by a variable with the single
    production ``T -> t``. Right-hand sides longer than two are split
    left to right with fresh variables ``<lhs>_<k>``, unit productions are
    inlined, and symbols unreachable from the start symbol and the bricks
    are pruned.
    """
    if mode not in cnf_modes:
        raise ValueError("unknown normal form %r (expected one of %s)"
                         % (mode, ", ".join(cnf_modes)))
    names = {s.text for s in g.variables + g.terminals}
    productions = list(g.productions)
    if mode == STRICT:
        productions = _replace_terminals(productions, names)
    productions = _binarize(productions, names)
    productions = _remove_units(productions)
    productions = _prune(productions, _roots(g))
    return make_grammar(productions, start=g.start, bricks=g.bricks)._replace(
        duplicates=()
    )


# ---------------------------------------------------------------------------
# language oracle


def _concatenations(rhs, derived, max_len):
    partial = {()}
    for s in rhs:
        options = {(s.text,)} if s.kind == TERMINAL else derived.get(s, ())
        partial = {a + b for a in partial for b in options if len(a) + len(b) <= max_len}
        if not partial:
            break
    return partial


def enumerate_language(g, max_len):
    """All token sequences of length at most `max_len` derivable from the start symbol.

    Derivations are expanded bottom-up until no variable gains a new string;
    strings longer than `max_len` are never built, which is enough since no
    production shrinks a sentential form.

    >>> g = parse_grammar('S -> "a" S | "b"')
    >>> sorted(enumerate_language(g, 3))
    [('a', 'a', 'b'), ('a', 'b'), ('b',)]

    """
    if max_len > MAX_ENUMERATION_LENGTH:
        raise ValueError("max_len %d exceeds the enumeration limit %d"
                         % (max_len, MAX_ENUMERATION_LENGTH))
    if max_len <= 0:
        return set()
    derived = {}
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            new = _concatenations(p.rhs, derived, max_len)
            bucket = derived.setdefault(p.lhs, set())
            size = len(bucket)
            bucket |= new
            if len(bucket) != size:
                changed = True
    return set(derived.get(g.start, ()))
