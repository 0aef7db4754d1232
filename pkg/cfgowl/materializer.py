"""Forward-chaining materialization over the axiom fragment the conversion emits.

The fragment is Horn-like, so its least model is reached by applying rules
until nothing new follows:

- asserted class and property facts hold;
- C ⊑ D: C(x) gives D(x);
- (A ⊓ V1) ⊔ (B ⊓ V2) ⊑ R: A(x) and V1(x) give R(x), likewise for B and V2;
- C ≡ R some Self: C(x) gives R(x, x) and R(x, x) gives C(x);
- V ≡ R some Thing: R(x, y) gives V(x);
- P1 o ... o Pn ⊑ S: a path x0 P1 x1 ... Pn xn gives S(x0, xn); a chain
  member ``inverse(P)`` walks a P edge backwards.

Every derived fact keeps the first rule instance that produced it.
"""

from collections import OrderedDict, deque, namedtuple

from .abox import (
    check_bricks,
    default_bricks,
    parse_tree_to_axioms,
    segment_parse,
    sequence_individuals,
    sequence_to_abox,
)
from .cfg2owl import DEFAULT_CONFIG, convert, terminal_rule_axioms
from .grammar import RELAXED, is_cnf, to_cnf
from .owl import (
    CLASS,
    ClassAssertion,
    Declaration,
    EquivalentClasses,
    HasSelf,
    IntersectionOf,
    InverseOf,
    NamedClass,
    ObjectPropertyAssertion,
    SomeValuesFrom,
    SubClassOf,
    SubPropertyChainOf,
    Thing,
    UnionOf,
    UnsupportedAxiomError,
    iter_named_classes,
    merge,
)
from .report import ClassificationReport, ReportRow, class_display_names


DL = "dl"
HYBRID = "hybrid"
modes = [DL, HYBRID]


TypeFact = namedtuple("TypeFact", ["individual", "cls"])
EdgeFact = namedtuple("EdgeFact", ["prop", "subject", "obj"])

Justification = namedtuple("Justification", ["rule", "axiom", "premises"])

ASSERTED = "asserted"


class FactBase:
    """Class-membership and property facts with one justification each."""

    def __init__(self):
        self._types = OrderedDict()
        self._successors = {}
        self._predecessors = {}
        self.provenance = OrderedDict()

    def add(self, fact, justification):
        """Record `fact`; return False if it was known already."""
        if fact in self.provenance:
            return False
        self.provenance[fact] = justification
        if isinstance(fact, TypeFact):
            self._types.setdefault(fact.individual, set()).add(fact.cls)
        else:
            self._successors.setdefault(fact.prop, {}).setdefault(
                fact.subject, set()).add(fact.obj)
            self._predecessors.setdefault(fact.prop, {}).setdefault(
                fact.obj, set()).add(fact.subject)
        return True

    def types(self, individual):
        return frozenset(self._types.get(individual, ()))

    def has_type(self, individual, cls):
        return cls in self._types.get(individual, ())

    def has_edge(self, prop, subject, obj):
        return obj in self._successors.get(prop, {}).get(subject, ())

    def successors(self, prop, subject):
        return sorted(self._successors.get(prop, {}).get(subject, ()))

    def predecessors(self, prop, obj):
        return sorted(self._predecessors.get(prop, {}).get(obj, ()))

    def individuals(self):
        return list(self._types)

    def type_facts(self):
        return [f for f in self.provenance if isinstance(f, TypeFact)]

    def edge_facts(self):
        return [f for f in self.provenance if isinstance(f, EdgeFact)]

    def justification(self, fact):
        return self.provenance.get(fact)

    def __contains__(self, fact):
        return fact in self.provenance

    def __len__(self):
        return len(self.provenance)


class RuleSet:
    """Axioms compiled into lookup tables keyed by the fact that triggers them."""

    def __init__(self, subclass_only=False):
        self.subclass_only = subclass_only
        self.subclass = {}
        self.conjunctions = {}
        self.class_roles = {}
        self.self_classes = {}
        self.existentials = {}
        self.chains = {}
        self.assertions = []

    def compile(self, axiom):
        if isinstance(axiom, Declaration):
            return
        if isinstance(axiom, ClassAssertion):
            if isinstance(axiom.cls, Thing):
                return
            if not isinstance(axiom.cls, NamedClass):
                raise UnsupportedAxiomError(axiom, "only named classes can be asserted")
            self.assertions.append((TypeFact(axiom.individual, axiom.cls.iri), axiom))
        elif isinstance(axiom, ObjectPropertyAssertion):
            self.assertions.append((EdgeFact(axiom.prop, axiom.subject, axiom.obj), axiom))
        elif isinstance(axiom, SubClassOf):
            self._inclusion(axiom.sub, axiom.sup, axiom)
        elif isinstance(axiom, EquivalentClasses):
            self._equivalence(axiom)
        elif isinstance(axiom, SubPropertyChainOf):
            if self.subclass_only:
                return
            for position, term in enumerate(axiom.chain):
                prop = term.prop if isinstance(term, InverseOf) else term
                self.chains.setdefault(prop, []).append((position, axiom))
        else:
            raise UnsupportedAxiomError(axiom)

    def _inclusion(self, sub, sup, axiom):
        if isinstance(sup, Thing):
            return
        if not isinstance(sup, NamedClass):
            raise UnsupportedAxiomError(axiom, "the superclass must be a named class")
        if isinstance(sub, NamedClass):
            self.subclass.setdefault(sub.iri, []).append((sup.iri, axiom))
        elif self.subclass_only:
            return
        elif isinstance(sub, UnionOf):
            for operand in sub.operands:
                self._inclusion(operand, sup, axiom)
        elif isinstance(sub, IntersectionOf) and all(
            isinstance(o, NamedClass) for o in sub.operands
        ):
            members = tuple(sorted(o.iri for o in sub.operands))
            for cls in members:
                self.conjunctions.setdefault(cls, []).append((members, sup.iri, axiom))
        else:
            raise UnsupportedAxiomError(axiom)

    def _equivalence(self, axiom):
        first, second = axiom.first, axiom.second
        if not isinstance(first, NamedClass):
            first, second = second, first
        if isinstance(first, NamedClass) and isinstance(second, NamedClass):
            self._inclusion(first, second, axiom)
            self._inclusion(second, first, axiom)
        elif self.subclass_only:
            return
        elif isinstance(first, NamedClass) and isinstance(second, HasSelf):
            self.class_roles.setdefault(first.iri, []).append((second.prop, axiom))
            self.self_classes.setdefault(second.prop, []).append((first.iri, axiom))
        elif (
            isinstance(first, NamedClass)
            and isinstance(second, SomeValuesFrom)
            and isinstance(second.filler, Thing)
        ):
            # the other direction needs fresh individuals, outside the fragment
            self.existentials.setdefault(second.prop, []).append((first.iri, axiom))
        else:
            raise UnsupportedAxiomError(axiom)

    def consequences(self, fact, facts):
        if isinstance(fact, TypeFact):
            return self._type_consequences(fact, facts)
        return self._edge_consequences(fact, facts)

    def _type_consequences(self, fact, facts):
        x = fact.individual
        result = []
        for sup, axiom in self.subclass.get(fact.cls, ()):
            result.append((TypeFact(x, sup), Justification("subclass", axiom, (fact,))))
        for members, sup, axiom in self.conjunctions.get(fact.cls, ()):
            if all(facts.has_type(x, c) for c in members):
                premises = tuple(TypeFact(x, c) for c in members)
                result.append((TypeFact(x, sup), Justification("intersection", axiom, premises)))
        for role, axiom in self.class_roles.get(fact.cls, ()):
            result.append((EdgeFact(role, x, x), Justification("self", axiom, (fact,))))
        return result

    def _edge_consequences(self, fact, facts):
        result = []
        if fact.subject == fact.obj:
            for cls, axiom in self.self_classes.get(fact.prop, ()):
                result.append(
                    (TypeFact(fact.subject, cls), Justification("self", axiom, (fact,))))
        for cls, axiom in self.existentials.get(fact.prop, ()):
            result.append(
                (TypeFact(fact.subject, cls), Justification("existential", axiom, (fact,))))
        for position, axiom in self.chains.get(fact.prop, ()):
            for start, end, premises in _chain_paths(axiom.chain, position, fact, facts):
                result.append(
                    (EdgeFact(axiom.sup, start, end), Justification("chain", axiom, premises)))
        return result


def _step_forward(term, x, facts):
    """(y, premise) for every y with term(x, y)."""
    if isinstance(term, InverseOf):
        return [(y, EdgeFact(term.prop, y, x)) for y in facts.predecessors(term.prop, x)]
    return [(y, EdgeFact(term, x, y)) for y in facts.successors(term, x)]


def _step_backward(term, y, facts):
    """(x, premise) for every x with term(x, y)."""
    if isinstance(term, InverseOf):
        return [(x, EdgeFact(term.prop, y, x)) for x in facts.successors(term.prop, y)]
    return [(x, EdgeFact(term, x, y)) for x in facts.predecessors(term, y)]


def _chain_paths(chain, position, fact, facts):
    """Paths through `chain` whose member at `position` is matched by `fact`."""
    term = chain[position]
    if isinstance(term, InverseOf):
        first, last = fact.obj, fact.subject
    else:
        first, last = fact.subject, fact.obj
    paths = [(first, last, (fact,))]
    for term in reversed(chain[:position]):
        paths = [
            (x, end, (premise,) + premises)
            for start, end, premises in paths
            for x, premise in _step_backward(term, start, facts)
        ]
    for term in chain[position + 1:]:
        paths = [
            (start, y, premises + (premise,))
            for start, end, premises in paths
            for y, premise in _step_forward(term, end, facts)
        ]
    return paths


def materialize(tbox, aboxes=(), subclass_only=False):
    """Least set of facts entailed by `tbox` and `aboxes`.

    With `subclass_only` only named inclusions are applied; chains,
    self restrictions and general inclusions are skipped.
    """
    rules = RuleSet(subclass_only)
    for ontology in (tbox,) + tuple(aboxes):
        for axiom in ontology:
            rules.compile(axiom)
    facts = FactBase()
    agenda = deque()
    for fact, axiom in rules.assertions:
        if facts.add(fact, Justification(ASSERTED, axiom, ())):
            agenda.append(fact)
    while agenda:
        fact = agenda.popleft()
        for derived, justification in rules.consequences(fact, facts):
            if facts.add(derived, justification):
                agenda.append(derived)
    return facts


# ---------------------------------------------------------------------------
# classification


def relaxed(g, bricks=None):
    """`g` in relaxed CNF; `bricks` replace its own and survive pruning."""
    if bricks:
        check_bricks(g, bricks)
        g = g._replace(bricks=tuple(bricks))
    return g if is_cnf(g, RELAXED) else to_cnf(g, RELAXED)


def dl_components(g, seq, alignments=(), config=DEFAULT_CONFIG):
    """Ontologies saturated in DL mode, keyed by component name."""
    g = relaxed(g)
    return OrderedDict([
        ("tbox", convert(g, config)),
        ("abox", sequence_to_abox(seq, g, config)),
        ("alignment", merge(*alignments, base=config.base)),
    ])


def hybrid_components(g, bricks, seq, alignments=(), config=DEFAULT_CONFIG):
    """Ontologies saturated in hybrid mode: the parse of `seq` replaces the TBox."""
    g = relaxed(g, bricks)
    segments = segment_parse(g, bricks or default_bricks(g), seq)
    tree = merge(*(parse_tree_to_axioms(s, config) for s in segments), base=config.base)
    return OrderedDict([
        ("tree", tree),
        ("terminal_rules", terminal_rule_axioms(g, config)),
        ("abox", sequence_to_abox(seq, g, config)),
        ("alignment", merge(*alignments, base=config.base)),
    ])


def _axiom_classes(axiom):
    if isinstance(axiom, Declaration):
        return [axiom.iri] if axiom.kind == CLASS else []
    if isinstance(axiom, SubClassOf):
        return [*iter_named_classes(axiom.sub), *iter_named_classes(axiom.sup)]
    if isinstance(axiom, EquivalentClasses):
        return [*iter_named_classes(axiom.first), *iter_named_classes(axiom.second)]
    if isinstance(axiom, ClassAssertion):
        return list(iter_named_classes(axiom.cls))
    return []


def named_classes(ontologies):
    """Classes declared or used in a class axiom of any of `ontologies`."""
    return {iri for o in ontologies for axiom in o for iri in _axiom_classes(axiom)}


def build_report(facts, seq, mode, config=DEFAULT_CONFIG, scaffolding=True, known=None):
    """Per-position named classes of the sequence individuals.

    When `known` is given, classes outside it are left out.
    """
    hidden = set() if scaffolding else set(config.scaffolding_classes)
    rows = []
    for i, (token, individual) in enumerate(zip(seq, sequence_individuals(seq, config))):
        classes = [
            c for c in facts.types(individual)
            if c not in hidden and (known is None or c in known)
        ]
        rows.append(ReportRow(i, token, individual, class_display_names(classes)))
    return ClassificationReport(mode, tuple(rows))


def classify_components(components, seq, mode, config=DEFAULT_CONFIG, scaffolding=True):
    ontologies = list(components.values())
    facts = materialize(ontologies[0], ontologies[1:], subclass_only=(mode == HYBRID))
    known = named_classes(ontologies) if mode == DL else None
    return build_report(facts, seq, mode, config, scaffolding, known)


def classify_dl(g, seq, alignments=(), config=DEFAULT_CONFIG, scaffolding=True):
    """Classify every element of `seq` by saturating the converted grammar."""
    seq = tuple(seq)
    components = dl_components(g, seq, alignments, config)
    return classify_components(components, seq, DL, config, scaffolding)


def classify_hybrid(g, bricks, seq, alignments=(), config=DEFAULT_CONFIG, scaffolding=True):
    """Classify every element of `seq` from its brick segmentation."""
    seq = tuple(seq)
    components = hybrid_components(g, bricks, seq, alignments, config)
    return classify_components(components, seq, HYBRID, config, scaffolding)
