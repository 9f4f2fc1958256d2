"""Galois derivations and concept lattices.

The derivation pair maps an object-side fuzzy set A to the intent
``m -> meet_g imp(A(g), I(g, m))`` and dually for attribute-side sets; its
composites are closure operators and the fixpoint pairs form a complete
lattice. Enumeration is an exhaustive scan-plus-closure over one chosen
side, which keeps a dual-side oracle available: scanning extents and
scanning intents must produce the same concept set.

A scan needs a value domain. ``"generated"`` (the default) scans the
subalgebra generated by the values actually present in the context, which
is where a context's arithmetic lives and keeps candidate counts minimal;
``"full"`` scans every element of the ambient algebra and can surface
additional fixpoints valued outside the data.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .context import FuzzyContext
from .errors import BudgetError, DimensionError, MembershipError, StructureError
from .lia import TruthValue

OBJECTS = "objects"
ATTRIBUTES = "attributes"

EXTENT_SCAN = "extent"
INTENT_SCAN = "intent"

GENERATED_DOMAIN = "generated"
FULL_DOMAIN = "full"

DEFAULT_CANDIDATE_BUDGET = 10**6


@dataclass(frozen=True, slots=True)
class FuzzySet:
    """A vector of truth values aligned with one side of a context."""

    side: str
    values: tuple[TruthValue, ...]

    def __post_init__(self):
        if self.side not in (OBJECTS, ATTRIBUTES):
            raise ValueError(f"side must be 'objects' or 'attributes', got {self.side!r}")
        object.__setattr__(self, "values", tuple(self.values))

    def __len__(self) -> int:
        return len(self.values)


def object_set(values: Iterable[TruthValue]) -> FuzzySet:
    return FuzzySet(OBJECTS, tuple(values))


def attribute_set(values: Iterable[TruthValue]) -> FuzzySet:
    return FuzzySet(ATTRIBUTES, tuple(values))


@dataclass(frozen=True, slots=True)
class Concept:
    """A fixpoint pair: derive(extent) = intent and derive(intent) = extent."""

    extent: FuzzySet
    intent: FuzzySet

    def __post_init__(self):
        if self.extent.side != OBJECTS or self.intent.side != ATTRIBUTES:
            raise ValueError("a concept pairs an object-side set with an attribute-side set")


def _check_sized(fset: FuzzySet, side: str, size: int) -> None:
    if fset.side != side:
        raise DimensionError(f"expected a {side}-side set, got {fset.side}-side")
    if len(fset.values) != size:
        raise DimensionError(f"set of size {len(fset.values)} against {side} list of size {size}")


def pointwise_leq(context: FuzzyContext, left: FuzzySet, right: FuzzySet) -> bool:
    if left.side != right.side:
        raise DimensionError("cannot compare sets from different sides")
    if len(left.values) != len(right.values):
        raise DimensionError("cannot compare sets of different sizes")
    leq = context.algebra.leq
    return all(leq(a, b) for a, b in zip(left.values, right.values))


def pointwise_meet(context: FuzzyContext, left: FuzzySet, right: FuzzySet) -> FuzzySet:
    if left.side != right.side or len(left.values) != len(right.values):
        raise DimensionError("cannot meet sets of different side or size")
    meet = context.algebra.meet
    return FuzzySet(left.side, tuple(meet(a, b) for a, b in zip(left.values, right.values)))


def pointwise_join(context: FuzzyContext, left: FuzzySet, right: FuzzySet) -> FuzzySet:
    if left.side != right.side or len(left.values) != len(right.values):
        raise DimensionError("cannot join sets of different side or size")
    join = context.algebra.join
    return FuzzySet(left.side, tuple(join(a, b) for a, b in zip(left.values, right.values)))


def derive_intent(context: FuzzyContext, extent: FuzzySet) -> FuzzySet:
    """Map an object-side set to its intent.

    Per attribute: the meet over all objects of imp(A(g), I(g, m)). With no
    objects the meet is empty and every intent component is top.
    """
    _check_sized(extent, OBJECTS, len(context.objects))
    alg = context.algebra
    values = tuple(
        alg.meet_all(alg.imp(a, row[m]) for a, row in zip(extent.values, context.rows))
        for m in range(len(context.attributes))
    )
    return FuzzySet(ATTRIBUTES, values)


def derive_extent(context: FuzzyContext, intent: FuzzySet) -> FuzzySet:
    """Dual of derive_intent: per object, meet over attributes of
    imp(B(m), I(g, m)); the empty attribute set yields an all-top extent."""
    _check_sized(intent, ATTRIBUTES, len(context.attributes))
    alg = context.algebra
    values = tuple(
        alg.meet_all(alg.imp(b, v) for b, v in zip(intent.values, row))
        for row in context.rows
    )
    return FuzzySet(OBJECTS, values)


def closure_extent(context: FuzzyContext, extent: FuzzySet) -> FuzzySet:
    """The object-side closure; extensive and idempotent."""
    return derive_extent(context, derive_intent(context, extent))


def closure_intent(context: FuzzyContext, intent: FuzzySet) -> FuzzySet:
    """The attribute-side closure; extensive and idempotent."""
    return derive_intent(context, derive_extent(context, intent))


def scan_domain(context: FuzzyContext, domain) -> tuple[TruthValue, ...]:
    """Resolve a domain spec to the concrete values a scan ranges over.

    ``"full"`` is every algebra element, ``"generated"`` the subalgebra
    generated by the context's cells; an explicit sequence of values is
    passed through after membership checks.
    """
    if domain == FULL_DOMAIN:
        return context.algebra.elements
    if domain == GENERATED_DOMAIN:
        return context.algebra.generated_subalgebra(context.all_values())
    if isinstance(domain, str):
        raise ValueError(f"unknown domain {domain!r}; use 'generated' or 'full'")
    values = tuple(domain)
    if not values:
        raise ValueError("a scan domain needs at least one value")
    for v in values:
        context.algebra.check_member(v)
    return values


def _extent_sort_key(concept: Concept):
    return tuple(v.coords for v in concept.extent.values)


class ConceptLattice:
    """The concepts of one context, ordered by extent inclusion.

    Concepts are kept in canonical display order: extents sorted descending
    lexicographically on their coordinate vectors, which is a linear
    extension of the pointwise order, so index 0 is the greatest concept and
    the last index the least. Cover pairs (i, j) mean concept i is covered
    by concept j.
    """

    def __init__(self, context: FuzzyContext, concepts: Iterable[Concept]):
        self.context = context
        self.concepts: tuple[Concept, ...] = tuple(
            sorted(set(concepts), key=_extent_sort_key, reverse=True)
        )
        self._position = {c: i for i, c in enumerate(self.concepts)}

    def __len__(self) -> int:
        return len(self.concepts)

    def __iter__(self) -> Iterator[Concept]:
        return iter(self.concepts)

    def __getitem__(self, index: int) -> Concept:
        return self.concepts[index]

    def index_of(self, concept: Concept) -> int:
        try:
            return self._position[concept]
        except KeyError:
            raise MembershipError("concept does not belong to this lattice") from None

    def leq(self, lower: Concept, upper: Concept) -> bool:
        self.index_of(lower)
        self.index_of(upper)
        return pointwise_leq(self.context, lower.extent, upper.extent)

    @property
    def top(self) -> Concept:
        return self.concepts[0]

    @property
    def bottom(self) -> Concept:
        return self.concepts[-1]

    def extent_set(self) -> frozenset[FuzzySet]:
        return frozenset(c.extent for c in self.concepts)

    def pairs(self) -> frozenset[tuple[FuzzySet, FuzzySet]]:
        return frozenset((c.extent, c.intent) for c in self.concepts)

    @cached_property
    def order_pairs(self) -> tuple[tuple[int, int], ...]:
        """All strict order pairs (i, j) with concept i below concept j."""
        out = []
        for i, lower in enumerate(self.concepts):
            for j, upper in enumerate(self.concepts):
                if i != j and pointwise_leq(self.context, lower.extent, upper.extent):
                    out.append((i, j))
        return tuple(out)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Transitive reduction of the order: the Hasse edges."""
        below = {}
        for i, j in self.order_pairs:
            below.setdefault(j, set()).add(i)
        out = []
        for i, j in self.order_pairs:
            if not any(i in below.get(k, ()) for k in below.get(j, ()) if k != i):
                out.append((i, j))
        return tuple(sorted(out))


def enumerate_concepts(
    context: FuzzyContext,
    engine: str = EXTENT_SCAN,
    *,
    domain=GENERATED_DOMAIN,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> ConceptLattice:
    """Collect every concept by exhaustive scan plus closure.

    The extent engine closes all |domain|^|objects| object-side candidates;
    the intent engine dually scans the attribute side. Each collected pair
    is verified as a mutual fixpoint before it is admitted: over a valid
    implication algebra the check never rejects anything, but it keeps the
    two engines in agreement even on table algebras that fail the axioms,
    where scan closures need not be fixpoints at all. A scan whose
    candidate count exceeds the budget raises BudgetError naming the count.
    """
    values = scan_domain(context, domain)
    if engine == EXTENT_SCAN:
        side = len(context.objects)
    elif engine == INTENT_SCAN:
        side = len(context.attributes)
    else:
        raise ValueError(f"unknown engine {engine!r}; use 'extent' or 'intent'")
    count = len(values) ** side
    if count > budget:
        raise BudgetError(
            f"{engine} scan needs {count} candidates, over the budget of {budget}"
        )

    concepts = []
    if engine == EXTENT_SCAN:
        extents = set()
        for combo in itertools.product(values, repeat=side):
            intent = derive_intent(context, FuzzySet(OBJECTS, combo))
            extents.add(derive_extent(context, intent))
        for extent in extents:
            intent = derive_intent(context, extent)
            if derive_extent(context, intent) == extent:
                concepts.append(Concept(extent, intent))
    else:
        intents = set()
        for combo in itertools.product(values, repeat=side):
            extent = derive_extent(context, FuzzySet(ATTRIBUTES, combo))
            intents.add(derive_intent(context, extent))
        for intent in intents:
            extent = derive_extent(context, intent)
            if derive_intent(context, extent) == intent:
                concepts.append(Concept(extent, intent))
    return ConceptLattice(context, concepts)


def _locate(lattice: ConceptLattice, extent: FuzzySet, intent: FuzzySet) -> Concept:
    concept = Concept(extent, intent)
    try:
        return lattice.concepts[lattice.index_of(concept)]
    except MembershipError:
        raise StructureError(
            "computed concept is missing from the lattice; was it fully enumerated?"
        ) from None


def concept_meet(lattice: ConceptLattice, left: Concept, right: Concept) -> Concept:
    """Greatest common subconcept: pointwise meet of extents, closure of the
    pointwise join of intents. The result is a member of the lattice."""
    lattice.index_of(left)
    lattice.index_of(right)
    extent = pointwise_meet(lattice.context, left.extent, right.extent)
    intent = closure_intent(lattice.context, pointwise_join(lattice.context, left.intent, right.intent))
    return _locate(lattice, extent, intent)


def concept_join(lattice: ConceptLattice, left: Concept, right: Concept) -> Concept:
    """Least common superconcept: closure of the pointwise join of extents,
    pointwise meet of intents."""
    lattice.index_of(left)
    lattice.index_of(right)
    extent = closure_extent(lattice.context, pointwise_join(lattice.context, left.extent, right.extent))
    intent = pointwise_meet(lattice.context, left.intent, right.intent)
    return _locate(lattice, extent, intent)


def concept_label(lattice: ConceptLattice, index: int) -> str:
    """Display form ``k# (extent | intent)`` in canonical value spelling."""
    fmt = lattice.context.algebra.format_value
    concept = lattice.concepts[index]
    extent = " ".join(fmt(v) for v in concept.extent.values)
    intent = " ".join(fmt(v) for v in concept.intent.values)
    return f"{index}# ({extent} | {intent})"


def export_dot(lattice: ConceptLattice) -> str:
    """Graphviz digraph: one box per concept, one edge per cover, drawn
    bottom-to-top so the greatest concept lands at the top."""
    lines = ["digraph concept_lattice {", "  rankdir=BT;", "  node [shape=box];"]
    for i in range(len(lattice)):
        lines.append(f'  c{i} [label="{concept_label(lattice, i)}"];')
    for i, j in lattice.covers:
        lines.append(f"  c{i} -> c{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(lattice: ConceptLattice) -> str:
    """Deterministic JSON document with labels in canonical spelling.

    Schema: ``{algebra, objects, attributes, concepts: [{extent, intent}],
    covers: [[i, j], ...]}`` where covers pair lower with upper indexes.
    """
    context = lattice.context
    fmt = context.algebra.format_value
    doc = {
        "algebra": context.algebra.describe(),
        "objects": list(context.objects),
        "attributes": list(context.attributes),
        "concepts": [
            {
                "extent": [fmt(v) for v in c.extent.values],
                "intent": [fmt(v) for v in c.intent.values],
            }
            for c in lattice.concepts
        ],
        "covers": [list(pair) for pair in lattice.covers],
    }
    return json.dumps(doc, indent=2) + "\n"
