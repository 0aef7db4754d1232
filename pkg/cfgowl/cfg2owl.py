"""Grammar to OWL conversion.

Every grammar symbol becomes a class C_s made reflexive through a property
R_s (``C_s EquivalentTo: R_s some Self``). A binary production R -> A B
propagates along the next-property with two chains into the shared roles
R_VariableOne and R_VariableTwo, and a general inclusion turns the classes those roles mark
into C_R. A terminal production R -> t is the plain inclusion C_t ⊑ C_R.
"""

from collections import namedtuple
from urllib.parse import urlsplit

from .grammar import RELAXED, GrammarError, is_cnf
from .owl import (
    CLASS,
    DEFAULT_BASE,
    OBJECT_PROPERTY,
    THING,
    Declaration,
    EquivalentClasses,
    HasSelf,
    IntersectionOf,
    InverseOf,
    NamedClass,
    Ontology,
    SomeValuesFrom,
    SubClassOf,
    SubPropertyChainOf,
    UnionOf,
    encode_local,
)


NEXT_LOCAL = "directlyPrecedes"
DEFAULT_NEXT_PROPERTY = DEFAULT_BASE + "#" + NEXT_LOCAL

VARIABLE_ONE = "VariableOne"
VARIABLE_TWO = "VariableTwo"
ROLE_ONE = "R_" + VARIABLE_ONE
ROLE_TWO = "R_" + VARIABLE_TWO


def _is_absolute(iri):
    parts = urlsplit(iri)
    return bool(parts.scheme) and bool(parts.netloc or parts.path)


class ConversionConfig(
    namedtuple("ConversionConfig", ["base", "next_property", "include_inverse"])
):
    """Where converted entities live and which property links sequence elements.

    The next-property defaults to ``<base>#directlyPrecedes``.

    >>> ConversionConfig().next_property
    'http://example.org/cfgowl#directlyPrecedes'
    >>> ConversionConfig().class_iri("C:min7")
    'http://example.org/cfgowl#C%3Amin7'

    """

    __slots__ = ()

    def __new__(cls, base=DEFAULT_BASE, next_property=None, include_inverse=True):
        base = base.rstrip("#")
        if next_property is None:
            next_property = base + "#" + NEXT_LOCAL
        for iri in (base, next_property):
            if not _is_absolute(iri):
                raise ValueError("expected an absolute IRI, got %r" % iri)
        return super().__new__(cls, base, next_property, bool(include_inverse))

    def entity(self, local):
        return "%s#%s" % (self.base, local)

    def class_iri(self, text):
        return self.entity(encode_local(text))

    def role_iri(self, class_iri):
        """Rolification property of the class `class_iri`.

        Classes outside the base namespace keep their whole IRI in the role
        name, so equal local names in two namespaces get distinct roles.

        >>> ConversionConfig().role_iri("http://example.org/cfgowl#Off_F")
        'http://example.org/cfgowl#R_Off_F'
        >>> ConversionConfig().role_iri("http://purl.org/mto/Minor")
        'http://example.org/cfgowl#R_http%3A%2F%2Fpurl.org%2Fmto%2FMinor'

        """
        prefix = self.base + "#"
        if class_iri.startswith(prefix):
            return self.entity("R_" + class_iri[len(prefix):])
        return self.entity("R_" + encode_local(class_iri))

    @property
    def variable_one(self):
        return self.entity(VARIABLE_ONE)

    @property
    def variable_two(self):
        return self.entity(VARIABLE_TWO)

    @property
    def scaffolding_classes(self):
        return (self.variable_one, self.variable_two)


DEFAULT_CONFIG = ConversionConfig()


def scaffolding(config=DEFAULT_CONFIG):
    """The two shared roles, the two helper classes marking rule boundaries, and next."""
    r1, r2 = config.entity(ROLE_ONE), config.entity(ROLE_TWO)
    return [
        Declaration(OBJECT_PROPERTY, r1),
        Declaration(OBJECT_PROPERTY, r2),
        Declaration(CLASS, config.variable_one),
        EquivalentClasses(NamedClass(config.variable_one), SomeValuesFrom(r1, THING)),
        Declaration(CLASS, config.variable_two),
        EquivalentClasses(NamedClass(config.variable_two), SomeValuesFrom(r2, THING)),
        Declaration(OBJECT_PROPERTY, config.next_property),
    ]


def rolification(class_iri, config=DEFAULT_CONFIG):
    role = config.role_iri(class_iri)
    return [
        Declaration(OBJECT_PROPERTY, role),
        Declaration(CLASS, class_iri),
        EquivalentClasses(NamedClass(class_iri), HasSelf(role)),
    ]


def binary_rule(class_a, class_b, rule_class, config=DEFAULT_CONFIG):
    """Axioms making an A element followed by a B element members of rule_class."""
    role_a, role_b = config.role_iri(class_a), config.role_iri(class_b)
    nxt = config.next_property
    axioms = [SubPropertyChainOf((role_a, nxt, role_b), config.entity(ROLE_ONE))]
    if config.include_inverse:
        axioms.append(
            SubPropertyChainOf((role_b, InverseOf(nxt), role_a), config.entity(ROLE_TWO))
        )
    left = UnionOf((
        IntersectionOf((NamedClass(class_a), NamedClass(config.variable_one))),
        IntersectionOf((NamedClass(class_b), NamedClass(config.variable_two))),
    ))
    axioms.append(SubClassOf(left, NamedClass(rule_class)))
    return axioms


def terminal_rule(terminal_class, rule_class):
    return SubClassOf(NamedClass(terminal_class), NamedClass(rule_class))


def _check_symbols(g, config):
    reserved = set(config.scaffolding_classes)
    for s in g.variables + g.terminals:
        if config.class_iri(s.text) in reserved:
            raise GrammarError("symbol %r clashes with a helper class" % s.text)


def convert(g, config=DEFAULT_CONFIG):
    """Ontology of the grammar `g`, which must be in relaxed CNF.

    The start symbol plays no part: the ontology classifies every
    subsequence derivable from any variable. Symbols that occur in no
    production are left out, so a grammar without productions yields the
    scaffolding alone.
    """
    if not is_cnf(g, RELAXED):
        raise GrammarError("grammar is not in relaxed CNF; run to_cnf first")
    _check_symbols(g, config)
    ontology = Ontology(config.base)
    ontology.extend(scaffolding(config))
    used = {s for p in g.productions for s in (p.lhs,) + p.rhs}
    for s in g.variables + g.terminals:
        if s not in used:
            continue
        ontology.extend(rolification(config.class_iri(s.text), config))
    for p in g.productions:
        rule_class = config.class_iri(p.lhs.text)
        if len(p.rhs) == 2:
            a, b = (config.class_iri(s.text) for s in p.rhs)
            ontology.extend(binary_rule(a, b, rule_class, config))
        else:
            ontology.add(terminal_rule(config.class_iri(p.rhs[0].text), rule_class))
    return ontology


def terminal_rule_axioms(g, config=DEFAULT_CONFIG):
    """Only the terminal-production inclusions of `g`."""
    return Ontology(config.base, [
        terminal_rule(config.class_iri(p.rhs[0].text), config.class_iri(p.lhs.text))
        for p in g.productions
        if len(p.rhs) == 1
    ])


def _check_roles(classes, config, existing):
    owners = {}
    for cls in classes:
        owners.setdefault(config.role_iri(cls), set()).add(cls)
    for axiom in existing or ():
        if (
            isinstance(axiom, EquivalentClasses)
            and isinstance(axiom.first, NamedClass)
            and isinstance(axiom.second, HasSelf)
            and axiom.second.prop in owners
        ):
            owners[axiom.second.prop].add(axiom.first.iri)
    for role, shared in owners.items():
        if len(shared) > 1:
            raise ValueError("classes %s would share the role %s"
                             % (", ".join(sorted(shared)), role))


def make_rule(class_a, class_b, rule_class, config=DEFAULT_CONFIG, existing=None):
    """Ontology declaring that an element of `class_a` directly followed by an
    element of `class_b` is a `rule_class` boundary.

    Arguments are full class IRIs, from any namespace. Axioms already in the
    `existing` ontology are not repeated. Raises ValueError when two
    distinct classes would be rolified with the same role.
    """
    _check_roles((class_a, class_b), config, existing)
    axioms = list(scaffolding(config))
    axioms += rolification(class_a, config)
    axioms += rolification(class_b, config)
    axioms.append(Declaration(CLASS, rule_class))
    axioms += binary_rule(class_a, class_b, rule_class, config)
    if existing is not None:
        axioms = [a for a in axioms if a not in existing]
    return Ontology(config.base, axioms)
