"""A small OWL 2 axiom model with deterministic Manchester and Turtle writers.

Only the constructs the grammar conversion emits are modelled. IRIs are
plain strings; entities minted from grammar symbols live under
``<base>#<local>`` with the symbol text percent-encoded.
"""

import dataclasses
import re
from urllib.parse import quote, unquote

try:
    import rdflib
    from rdflib.collection import Collection
except ImportError:  # pragma: no cover
    rdflib = None


OWL = "http://www.w3.org/2002/07/owl#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"

OWL_THING = OWL + "Thing"

DEFAULT_BASE = "http://example.org/cfgowl"

CLASS = "Class"
OBJECT_PROPERTY = "ObjectProperty"
NAMED_INDIVIDUAL = "NamedIndividual"
entity_kinds = [CLASS, OBJECT_PROPERTY, NAMED_INDIVIDUAL]


class UnsupportedAxiomError(ValueError):
    """An axiom or graph shape outside the supported fragment."""

    def __init__(self, axiom, reason="unsupported axiom"):
        self.axiom = axiom
        super().__init__("%s: %r" % (reason, axiom))


def encode_local(text):
    """Percent-encode `text` for use as the local part of an IRI.

    >>> encode_local("C:min7"), encode_local("F:7(#11)")
    ('C%3Amin7', 'F%3A7%28%2311%29')

    """
    return quote(text, safe="")


def local_name(iri):
    """Decoded local part of `iri`, after ``#`` or else the last ``/``.

    >>> local_name("http://example.org/cfgowl#C%3Amin7")
    'C:min7'
    >>> local_name("http://purl.org/ontology/mto/MinorProgression")
    'MinorProgression'

    """
    if "#" in iri:
        local = iri.rsplit("#", 1)[1]
    else:
        local = iri.rstrip("/").rsplit("/", 1)[-1]
    return unquote(local)


# class expressions


@dataclasses.dataclass(frozen=True)
class NamedClass:
    iri: str


@dataclasses.dataclass(frozen=True)
class Thing:
    pass


THING = Thing()


@dataclasses.dataclass(frozen=True)
class HasSelf:
    prop: str


@dataclasses.dataclass(frozen=True)
class SomeValuesFrom:
    prop: str
    filler: object


def _check_operands(expr):
    if len(expr.operands) < 2:
        raise ValueError("%s needs at least two operands" % type(expr).__name__)


@dataclasses.dataclass(frozen=True)
class IntersectionOf:
    operands: tuple

    def __post_init__(self):
        _check_operands(self)


@dataclasses.dataclass(frozen=True)
class UnionOf:
    operands: tuple

    def __post_init__(self):
        _check_operands(self)


# axioms


@dataclasses.dataclass(frozen=True)
class Declaration:
    kind: str
    iri: str


@dataclasses.dataclass(frozen=True)
class SubClassOf:
    sub: object
    sup: object


@dataclasses.dataclass(frozen=True)
class EquivalentClasses:
    first: object
    second: object


@dataclasses.dataclass(frozen=True)
class InverseOf:
    prop: str


@dataclasses.dataclass(frozen=True)
class SubPropertyChainOf:
    chain: tuple
    sup: str

    def __post_init__(self):
        if len(self.chain) < 2:
            raise ValueError("a property chain needs at least two members")


@dataclasses.dataclass(frozen=True)
class ClassAssertion:
    cls: object
    individual: str


@dataclasses.dataclass(frozen=True)
class ObjectPropertyAssertion:
    prop: str
    subject: str
    obj: str


class Ontology:
    """Axioms in emission order; adding an axiom twice keeps the first copy."""

    def __init__(self, base=DEFAULT_BASE, axioms=(), prefixes=None):
        self.base = base
        self.prefixes = dict(prefixes or {})
        self._axioms = []
        self._seen = set()
        self.extend(axioms)

    def add(self, axiom):
        """Append `axiom`; return False if it was already there."""
        if axiom in self._seen:
            return False
        self._seen.add(axiom)
        self._axioms.append(axiom)
        return True

    def extend(self, axioms):
        for axiom in axioms:
            self.add(axiom)
        return self

    @property
    def axioms(self):
        return tuple(self._axioms)

    def merged(self, *others):
        result = Ontology(self.base, self._axioms, self.prefixes)
        for other in others:
            result.prefixes.update(other.prefixes)
            result.extend(other)
        return result

    def __iter__(self):
        return iter(self._axioms)

    def __len__(self):
        return len(self._axioms)

    def __contains__(self, axiom):
        return axiom in self._seen

    def __eq__(self, other):
        if not isinstance(other, Ontology):
            return NotImplemented
        return self.base == other.base and self._axioms == other._axioms

    def __repr__(self):
        return "Ontology(%r, <%d axioms>)" % (self.base, len(self))


def merge(*ontologies, base=None):
    """Union of `ontologies` in order, without repeated axioms."""
    if base is None:
        base = ontologies[0].base if ontologies else DEFAULT_BASE
    return Ontology(base).merged(*ontologies)


def count_axioms(o):
    """Declarations plus logical axioms, each distinct statement once.

    >>> count_axioms(Ontology())
    0

    """
    return len(o)


def iter_named_classes(expr):
    if isinstance(expr, NamedClass):
        yield expr.iri
    elif isinstance(expr, SomeValuesFrom):
        yield from iter_named_classes(expr.filler)
    elif isinstance(expr, (IntersectionOf, UnionOf)):
        for operand in expr.operands:
            yield from iter_named_classes(operand)


# ---------------------------------------------------------------------------
# Manchester syntax

_MANCHESTER_FRAME = {
    CLASS: "Class",
    OBJECT_PROPERTY: "ObjectProperty",
    NAMED_INDIVIDUAL: "Individual",
}

_MANCHESTER_LOCAL = re.compile(
    r"(?:[A-Za-z_]|%[0-9A-Fa-f]{2})(?:[A-Za-z0-9_-]|%[0-9A-Fa-f]{2})*\Z"
)
_TURTLE_LOCAL = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*\Z")


class _Names:
    def __init__(self, base, prefixes, local_pattern):
        self.local_pattern = local_pattern
        self.namespaces = [("", base + "#")]
        self.namespaces.extend((p, ns) for p, ns in sorted(prefixes.items()))
        self.namespaces.append(("owl", OWL))

    def __call__(self, iri):
        for prefix, ns in self.namespaces:
            if iri.startswith(ns):
                local = iri[len(ns):]
                if self.local_pattern.match(local):
                    return "%s:%s" % (prefix, local)
        return "<%s>" % iri


def _manchester_expr(expr, name, nested=False):
    if isinstance(expr, NamedClass):
        return name(expr.iri)
    if isinstance(expr, Thing):
        return "owl:Thing"
    if isinstance(expr, HasSelf):
        text = "%s some Self" % name(expr.prop)
    elif isinstance(expr, SomeValuesFrom):
        text = "%s some %s" % (name(expr.prop), _manchester_expr(expr.filler, name, True))
    elif isinstance(expr, IntersectionOf):
        text = " and ".join(_manchester_expr(e, name, True) for e in expr.operands)
    elif isinstance(expr, UnionOf):
        text = " or ".join(_manchester_expr(e, name, True) for e in expr.operands)
    else:
        raise UnsupportedAxiomError(expr, "unsupported class expression")
    return "(%s)" % text if nested else text


def _manchester_property(term, name):
    if isinstance(term, InverseOf):
        return "inverse(%s)" % name(term.prop)
    return name(term)


def _manchester_entry(axiom, name):
    """(frame key or None for a general axiom, line)."""
    if isinstance(axiom, Declaration):
        return (axiom.kind, axiom.iri), None
    if isinstance(axiom, (SubClassOf, EquivalentClasses)):
        if isinstance(axiom, SubClassOf):
            keyword, left, right = "SubClassOf", axiom.sub, axiom.sup
        else:
            keyword, left, right = "EquivalentTo", axiom.first, axiom.second
        if isinstance(left, NamedClass):
            return (CLASS, left.iri), "%s: %s" % (keyword, _manchester_expr(right, name))
        return None, "%s %s: %s" % (
            _manchester_expr(left, name), keyword, _manchester_expr(right, name))
    if isinstance(axiom, SubPropertyChainOf):
        chain = " o ".join(_manchester_property(t, name) for t in axiom.chain)
        return (OBJECT_PROPERTY, axiom.sup), "SubPropertyChain: %s" % chain
    if isinstance(axiom, ClassAssertion):
        return (NAMED_INDIVIDUAL, axiom.individual), "Types: %s" % _manchester_expr(
            axiom.cls, name)
    if isinstance(axiom, ObjectPropertyAssertion):
        return (NAMED_INDIVIDUAL, axiom.subject), "Facts: %s %s" % (
            name(axiom.prop), name(axiom.obj))
    raise UnsupportedAxiomError(axiom)


def serialize_manchester(o):
    """Manchester-syntax document: one frame per entity in first-emission order.

    Axioms whose left side is not a named class go to a trailing section.
    """
    name = _Names(o.base, o.prefixes, _MANCHESTER_LOCAL)
    lines = ["Prefix: : <%s#>" % o.base]
    for prefix, ns in sorted(o.prefixes.items()):
        lines.append("Prefix: %s: <%s>" % (prefix, ns))
    lines.append("Prefix: owl: <%s>" % OWL)
    lines.append("")
    lines.append("Ontology: <%s>" % o.base)

    frames = {}
    general = []
    for axiom in o:
        key, line = _manchester_entry(axiom, name)
        if key is None:
            general.append(line)
            continue
        entries = frames.setdefault(key, [])
        if line is not None:
            entries.append(line)
    for (kind, iri), entries in frames.items():
        lines.append("")
        lines.append("%s: %s" % (_MANCHESTER_FRAME[kind], name(iri)))
        lines.extend("    " + e for e in entries)
    if general:
        lines.append("")
        lines.extend(general)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Turtle


class _TurtleWriter:
    def __init__(self, o):
        self.base = o.base
        self.name = _Names(o.base, o.prefixes, _TURTLE_LOCAL)
        self.prefixes = o.prefixes
        self.statements = []
        self.bnodes = 0

    def bnode(self):
        label = "_:b%d" % self.bnodes
        self.bnodes += 1
        return label

    def expr(self, expr):
        if isinstance(expr, NamedClass):
            return self.name(expr.iri)
        if isinstance(expr, Thing):
            return "owl:Thing"
        node = self.bnode()
        if isinstance(expr, HasSelf):
            body = "a owl:Restriction ; owl:onProperty %s ; owl:hasSelf true" % self.name(
                expr.prop)
        elif isinstance(expr, SomeValuesFrom):
            body = "a owl:Restriction ; owl:onProperty %s ; owl:someValuesFrom %s" % (
                self.name(expr.prop), self.expr(expr.filler))
        elif isinstance(expr, (IntersectionOf, UnionOf)):
            keyword = "intersectionOf" if isinstance(expr, IntersectionOf) else "unionOf"
            members = " ".join(self.expr(e) for e in expr.operands)
            body = "a owl:Class ; owl:%s ( %s )" % (keyword, members)
        else:
            raise UnsupportedAxiomError(expr, "unsupported class expression")
        self.statements.append("%s %s ." % (node, body))
        return node

    def prop(self, term):
        if isinstance(term, InverseOf):
            node = self.bnode()
            self.statements.append("%s owl:inverseOf %s ." % (node, self.name(term.prop)))
            return node
        return self.name(term)

    def axiom(self, axiom):
        if isinstance(axiom, Declaration):
            self.statements.append("%s a owl:%s ." % (self.name(axiom.iri), axiom.kind))
        elif isinstance(axiom, SubClassOf):
            sub, sup = self.expr(axiom.sub), self.expr(axiom.sup)
            self.statements.append("%s rdfs:subClassOf %s ." % (sub, sup))
        elif isinstance(axiom, EquivalentClasses):
            first, second = self.expr(axiom.first), self.expr(axiom.second)
            self.statements.append("%s owl:equivalentClass %s ." % (first, second))
        elif isinstance(axiom, SubPropertyChainOf):
            members = " ".join(self.prop(t) for t in axiom.chain)
            self.statements.append(
                "%s owl:propertyChainAxiom ( %s ) ." % (self.name(axiom.sup), members))
        elif isinstance(axiom, ClassAssertion):
            cls = self.expr(axiom.cls)
            self.statements.append("%s a %s ." % (self.name(axiom.individual), cls))
        elif isinstance(axiom, ObjectPropertyAssertion):
            self.statements.append("%s %s %s ." % (
                self.name(axiom.subject), self.name(axiom.prop), self.name(axiom.obj)))
        else:
            raise UnsupportedAxiomError(axiom)

    def text(self):
        header = ["@prefix : <%s#> ." % self.base]
        for prefix, ns in sorted(self.prefixes.items()):
            header.append("@prefix %s: <%s> ." % (prefix, ns))
        header += [
            "@prefix owl: <%s> ." % OWL,
            "@prefix rdf: <%s> ." % RDF,
            "@prefix rdfs: <%s> ." % RDFS,
            "@prefix xsd: <%s> ." % XSD,
            "",
            "<%s> a owl:Ontology ." % self.base,
            "",
        ]
        return "\n".join(header + self.statements) + "\n"


def serialize_turtle(o):
    writer = _TurtleWriter(o)
    for axiom in o:
        writer.axiom(axiom)
    return writer.text()


# ---------------------------------------------------------------------------
# reading Turtle back


class _GraphReader:
    def __init__(self, graph):
        self.graph = graph
        self.ns_owl = rdflib.Namespace(OWL)
        self.ns_rdfs = rdflib.Namespace(RDFS)

    def value(self, node, prop):
        return self.graph.value(node, prop)

    def items(self, node):
        return list(Collection(self.graph, node))

    def expr(self, node):
        owl = self.ns_owl
        if isinstance(node, rdflib.URIRef):
            return THING if str(node) == OWL_THING else NamedClass(str(node))
        prop = self.value(node, owl.onProperty)
        if prop is not None and self.value(node, owl.hasSelf) is not None:
            return HasSelf(str(prop))
        filler = self.value(node, owl.someValuesFrom)
        if prop is not None and filler is not None:
            return SomeValuesFrom(str(prop), self.expr(filler))
        members = self.value(node, owl.intersectionOf)
        if members is not None:
            return IntersectionOf(tuple(self.expr(m) for m in self.items(members)))
        members = self.value(node, owl.unionOf)
        if members is not None:
            return UnionOf(tuple(self.expr(m) for m in self.items(members)))
        raise UnsupportedAxiomError(node, "unsupported class expression")

    def chain_term(self, node):
        if isinstance(node, rdflib.URIRef):
            return str(node)
        inverse = self.value(node, self.ns_owl.inverseOf)
        if inverse is None:
            raise UnsupportedAxiomError(node, "unsupported property chain member")
        return InverseOf(str(inverse))

    def axioms(self, s, p, o):
        owl, rdfs = self.ns_owl, self.ns_rdfs
        if p == rdfs.subClassOf:
            return [SubClassOf(self.expr(s), self.expr(o))]
        if p == owl.equivalentClass:
            return [EquivalentClasses(self.expr(s), self.expr(o))]
        if not isinstance(s, rdflib.URIRef):
            return []
        if p == rdflib.RDF.type:
            kinds = {
                owl.Class: CLASS,
                owl.ObjectProperty: OBJECT_PROPERTY,
                owl.NamedIndividual: NAMED_INDIVIDUAL,
            }
            if o in kinds:
                return [Declaration(kinds[o], str(s))]
            if isinstance(o, rdflib.URIRef) and str(o).startswith((OWL, RDF, RDFS)):
                return []
            return [ClassAssertion(self.expr(o), str(s))]
        if p == owl.propertyChainAxiom:
            chain = tuple(self.chain_term(t) for t in self.items(o))
            return [SubPropertyChainOf(chain, str(s))]
        if isinstance(o, rdflib.URIRef) and not str(p).startswith((OWL, RDF, RDFS)):
            return [ObjectPropertyAssertion(str(p), str(s), str(o))]
        # annotations and literal-valued statements
        return []


def _triple_key(triple):
    return tuple((isinstance(t, rdflib.BNode), str(t)) for t in triple)


def read_turtle(text):
    """Ontology from a Turtle document in the subset serialize_turtle() writes.

    Plain ``rdfs:subClassOf`` alignment files are read too; labels and
    comments are skipped.
    """
    if rdflib is None:
        raise ImportError("reading Turtle needs rdflib")
    graph = rdflib.Graph()
    graph.parse(data=text, format="turtle")
    ontology_node = graph.value(
        predicate=rdflib.RDF.type, object=rdflib.URIRef(OWL + "Ontology")
    )
    base = str(ontology_node).rstrip("#") if ontology_node is not None else DEFAULT_BASE
    reader = _GraphReader(graph)
    ontology = Ontology(base)
    for triple in sorted(graph, key=_triple_key):
        ontology.extend(reader.axioms(*triple))
    return ontology
