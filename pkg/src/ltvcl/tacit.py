"""Tacit-attribute mining via congener contexts.

An attribute extension is congener when it leaves the family of concept
extents unchanged; columns that are meets of existing columns, or constant
top, are sufficient for that and are exactly the tacit attributes this
module hunts for. The fast extension path rewrites each base concept's
intent directly (appending the meet of the source intent components, or
top) instead of re-enumerating, and the mining pipeline cross-checks it
against a full recomputation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .context import ORIGINAL, ExtensionConfig, FuzzyContext, extend_context, restrict_agrees
from .errors import PreconditionError, UnclassifiedColumnError
from .galois import (
    ATTRIBUTES,
    DEFAULT_CANDIDATE_BUDGET,
    EXTENT_SCAN,
    GENERATED_DOMAIN,
    Concept,
    ConceptLattice,
    FuzzySet,
    closure_extent,
    enumerate_concepts,
    scan_domain,
)

RULE_PAIR_MEET = "pair-meet"
RULE_K_MEET = "k-meet"
RULE_ALL_TOP = "all-top"


@dataclass(frozen=True)
class CongenerReport:
    """Extent-family comparison between a context and its extension.

    ``witnesses`` lists the extents present on exactly one side, tagged
    "base" or "extended"; the extension is congener exactly when that list
    is empty.
    """

    base_extent_count: int
    extended_extent_count: int
    witnesses: tuple[tuple[str, FuzzySet], ...]

    @property
    def is_congener(self) -> bool:
        return not self.witnesses


@dataclass(frozen=True)
class TheoremCheck:
    """Which sufficient condition a new column satisfies, if any.

    ``rule`` is "pair-meet" for a meet of two original columns, "k-meet"
    for any other source count, "all-top" for the constant-top column, and
    None when no condition matched (the column is unclassified and only a
    full enumeration can settle the congener question).
    """

    attribute: str
    rule: str | None
    satisfied: bool
    sources: tuple[str, ...] = ()


@dataclass(frozen=True)
class MiningReport:
    """End-to-end mining outcome: the tacit columns and their formulas, the
    per-column checks, the congener verdict, and whether the fast extension
    agreed with the recomputed lattice concept for concept."""

    tacit_attributes: tuple[tuple[str, str], ...]
    theorem_checks: tuple[TheoremCheck, ...]
    congener: CongenerReport
    fast_extension_verified: bool

    def as_dict(self, context: FuzzyContext) -> dict:
        """The JSON-facing shape of the report."""
        fmt = context.algebra.format_value
        by_attr = {check.attribute: check for check in self.theorem_checks}
        tacit = []
        for name, _formula in self.tacit_attributes:
            check = by_attr.get(name)
            if check is not None and check.rule == RULE_ALL_TOP:
                kind = "top"
            elif check is not None and check.satisfied:
                kind = "meet"
            else:
                kind = "unclassified"
            tacit.append(
                {"name": name, "kind": kind, "sources": list(check.sources) if check else []}
            )
        return {
            "tacit": tacit,
            "congener": self.congener.is_congener,
            "concepts_base": self.congener.base_extent_count,
            "concepts_ext": self.congener.extended_extent_count,
            "fast_verified": self.fast_extension_verified,
            "witnesses": [
                {"side": side, "extent": [fmt(v) for v in extent.values]}
                for side, extent in self.congener.witnesses
            ],
        }


def _require_restriction(base: FuzzyContext, extended: FuzzyContext) -> None:
    if not restrict_agrees(base, extended):
        raise PreconditionError(
            "the extension disagrees with the base context on an original cell"
        )


def _joint_domain(base: FuzzyContext, extended: FuzzyContext, domain):
    """Both lattices must be scanned over one domain; for 'generated' that
    is the subalgebra generated by the extension (a superset of the base's,
    since the original columns are shared)."""
    if domain == GENERATED_DOMAIN:
        return scan_domain(extended, GENERATED_DOMAIN)
    return domain


def _congener_report(
    base: FuzzyContext, base_lattice: ConceptLattice, extended_lattice: ConceptLattice
) -> CongenerReport:
    base_extents = base_lattice.extent_set()
    ext_extents = extended_lattice.extent_set()
    witnesses = [("base", e) for e in base_extents - ext_extents]
    witnesses += [("extended", e) for e in ext_extents - base_extents]
    witnesses.sort(key=lambda w: (w[0], tuple(v.coords for v in w[1].values)))
    # equal extent families force equal order structure as well: the concept
    # order is pointwise extent comparison, so no separate check is needed
    return CongenerReport(
        base_extent_count=len(base_extents),
        extended_extent_count=len(ext_extents),
        witnesses=tuple(witnesses),
    )


def is_congener(
    base: FuzzyContext,
    extended: FuzzyContext,
    *,
    engine: str = EXTENT_SCAN,
    domain=GENERATED_DOMAIN,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> CongenerReport:
    """Enumerate both concept lattices and compare their extent families."""
    _require_restriction(base, extended)
    values = _joint_domain(base, extended, domain)
    base_lattice = enumerate_concepts(base, engine, domain=values, budget=budget)
    ext_lattice = enumerate_concepts(extended, engine, domain=values, budget=budget)
    return _congener_report(base, base_lattice, ext_lattice)


def check_pointwise_condition(base: FuzzyContext, extended: FuzzyContext, extent: FuzzySet) -> bool:
    """For one object-side set A, test whether the base closure stays below
    the closure taken through each new column alone.

    Per new attribute n with column values c and v = meet_g imp(A(g), c(g)),
    the test is closure(A)(g) <= imp(v, c(g)) for every g. Quantified over
    every A in the scan domain this agrees with the congener verdict, which
    the test suite checks exhaustively at desk scale.
    """
    _require_restriction(base, extended)
    alg = base.algebra
    closed = closure_extent(base, extent)
    base_names = set(base.attributes)
    for m, name in enumerate(extended.attributes):
        if name in base_names:
            continue
        column = extended.column(m)
        v = alg.meet_all(alg.imp(a, c) for a, c in zip(extent.values, column))
        for g in range(len(base.objects)):
            if not alg.leq(closed.values[g], alg.imp(v, column[g])):
                return False
    return True


def classify_columns(
    base: FuzzyContext,
    extended: FuzzyContext,
    *,
    min_arity: int = 2,
    max_arity: int | None = None,
) -> list[TheoremCheck]:
    """Match every new column against the sufficient conditions.

    A column equal to top everywhere is classified all-top; otherwise the
    original-attribute subsets of arity min_arity..max_arity are searched in
    lexicographic order, arity ascending, for an exact column match (the
    algebra is finite and discrete, so equality is exact by construction).
    Columns matching nothing come back unsatisfied with rule None.
    """
    _require_restriction(base, extended)
    alg = base.algebra
    n_orig = len(base.attributes)
    if max_arity is None:
        max_arity = n_orig
    base_names = set(base.attributes)
    base_columns = [base.column(m) for m in range(n_orig)]
    checks: list[TheoremCheck] = []
    for m, name in enumerate(extended.attributes):
        if name in base_names:
            continue
        column = extended.column(m)
        if all(v == alg.top for v in column):
            checks.append(TheoremCheck(name, RULE_ALL_TOP, True))
            continue
        match: tuple[int, ...] | None = None
        for arity in range(max(min_arity, 1), max_arity + 1):
            for subset in itertools.combinations(range(n_orig), arity):
                candidate = tuple(
                    alg.meet_all(base_columns[s][g] for s in subset)
                    for g in range(len(base.objects))
                )
                if candidate == column:
                    match = subset
                    break
            if match is not None:
                break
        if match is None:
            checks.append(TheoremCheck(name, None, False))
        else:
            rule = RULE_PAIR_MEET if len(match) == 2 else RULE_K_MEET
            sources = tuple(base.attributes[s] for s in match)
            checks.append(TheoremCheck(name, rule, True, sources))
    return checks


def extend_concepts_fast(
    base_lattice: ConceptLattice,
    base: FuzzyContext,
    extended: FuzzyContext,
    *,
    checks: list[TheoremCheck] | None = None,
) -> ConceptLattice:
    """Rewrite the base concepts into the extension's lattice without
    re-enumerating.

    Every concept keeps its extent; its intent gains, per new column, the
    meet of the intent components at the column's sources, or top for the
    constant-top column. Sound only when every new column is classified; an
    unclassified column raises and the caller must fall back to
    enumerate_concepts on the extension.
    """
    if checks is None:
        checks = classify_columns(base, extended)
    else:
        _require_restriction(base, extended)
    unexplained = [c.attribute for c in checks if not c.satisfied]
    if unexplained:
        raise UnclassifiedColumnError(
            "fast extension is unsound for unclassified columns "
            f"{unexplained}; enumerate the extended context instead"
        )
    by_attr = {c.attribute: c for c in checks}
    alg = base.algebra
    base_index = {name: i for i, name in enumerate(base.attributes)}

    concepts = []
    for concept in base_lattice:
        intent = concept.intent.values
        extended_values = []
        for name in extended.attributes:
            if name in base_index:
                extended_values.append(intent[base_index[name]])
                continue
            check = by_attr[name]
            if check.rule == RULE_ALL_TOP:
                extended_values.append(alg.top)
            else:
                extended_values.append(
                    alg.meet_all(intent[base_index[s]] for s in check.sources)
                )
        concepts.append(Concept(concept.extent, FuzzySet(ATTRIBUTES, tuple(extended_values))))
    return ConceptLattice(extended, concepts)


def mine(
    context: FuzzyContext,
    config: ExtensionConfig | None = None,
    *,
    engine: str = EXTENT_SCAN,
    domain=GENERATED_DOMAIN,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> MiningReport:
    """Full pipeline: extend, classify, fast-extend, verify, report.

    The congener verdict always comes from full re-enumeration of the
    extended context; the fast path is verified against it concept for
    concept rather than trusted.
    """
    extended = extend_context(context, config)
    checks = classify_columns(context, extended)
    values = _joint_domain(context, extended, domain)
    base_lattice = enumerate_concepts(context, engine, domain=values, budget=budget)
    full_lattice = enumerate_concepts(extended, engine, domain=values, budget=budget)
    congener = _congener_report(context, base_lattice, full_lattice)

    fast_verified = False
    if all(c.satisfied for c in checks):
        fast_lattice = extend_concepts_fast(base_lattice, context, extended, checks=checks)
        fast_verified = fast_lattice.pairs() == full_lattice.pairs()

    tacit = tuple(
        (name, prov.formula(extended.attributes))
        for name, prov in zip(extended.attributes, extended.provenance)
        if prov.kind != ORIGINAL
    )
    return MiningReport(
        tacit_attributes=tacit,
        theorem_checks=tuple(checks),
        congener=congener,
        fast_extension_verified=fast_verified,
    )
