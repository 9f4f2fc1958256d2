"""Truth-valued formal contexts.

A context pairs object and attribute name lists with a grid of algebra
values, plus per-attribute provenance so derived columns remember how they
were built. This module owns the textual file format and the
attribute-extension generator that manufactures candidate tacit columns
(pairwise and k-wise column meets, and the constant-top column).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .errors import ParseError, StructureError
from .lia import Algebra, ProductAlgebra, TruthValue, load_table_algebra

ORIGINAL = "original"
MEET = "meet"
TOP = "top"


@dataclass(frozen=True, slots=True)
class AttributeProvenance:
    """How a column came to be: given data, a meet of columns, or all-top."""

    kind: str
    sources: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in (ORIGINAL, MEET, TOP):
            raise ValueError(f"unknown provenance kind {self.kind!r}")
        if self.kind == MEET:
            if len(self.sources) < 2:
                raise ValueError("a meet column needs at least two sources")
            if list(self.sources) != sorted(set(self.sources)):
                raise ValueError("meet sources must be strictly increasing")
        elif self.sources:
            raise ValueError(f"{self.kind} provenance takes no sources")

    @classmethod
    def original(cls) -> "AttributeProvenance":
        return cls(ORIGINAL)

    @classmethod
    def meet_of(cls, sources) -> "AttributeProvenance":
        return cls(MEET, tuple(int(s) for s in sources))

    @classmethod
    def constant_top(cls) -> "AttributeProvenance":
        return cls(TOP)

    def formula(self, attribute_names) -> str:
        if self.kind == MEET:
            return "meet(" + ",".join(attribute_names[s] for s in self.sources) + ")"
        if self.kind == TOP:
            return "top"
        return "original"


@dataclass(frozen=True)
class FuzzyContext:
    """Objects x attributes grid of truth values over one algebra.

    Rows follow the object order, columns the attribute order. Immutable
    after construction; derived contexts are new instances.
    """

    algebra: Algebra
    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    rows: tuple[tuple[TruthValue, ...], ...]
    provenance: tuple[AttributeProvenance, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "rows", tuple(tuple(row) for row in self.rows))
        if not self.provenance:
            object.__setattr__(
                self,
                "provenance",
                tuple(AttributeProvenance.original() for _ in self.attributes),
            )
        else:
            object.__setattr__(self, "provenance", tuple(self.provenance))

        if len(set(self.objects)) != len(self.objects):
            raise ValueError("duplicate object name")
        if len(set(self.attributes)) != len(self.attributes):
            raise ValueError("duplicate attribute name")
        if len(self.rows) != len(self.objects):
            raise ValueError(
                f"{len(self.objects)} objects but {len(self.rows)} rows"
            )
        for obj, row in zip(self.objects, self.rows):
            if len(row) != len(self.attributes):
                raise ValueError(
                    f"row {obj!r} has {len(row)} values for "
                    f"{len(self.attributes)} attributes"
                )
            for v in row:
                self.algebra.check_member(v)
        if len(self.provenance) != len(self.attributes):
            raise ValueError("provenance list does not match the attribute list")
        for prov in self.provenance:
            if prov.kind == MEET:
                for s in prov.sources:
                    if not 0 <= s < len(self.attributes):
                        raise ValueError(f"meet source index {s} out of range")
                    if self.provenance[s].kind != ORIGINAL:
                        raise ValueError("meet sources must be original attributes")

    def value(self, g: int, m: int) -> TruthValue:
        return self.rows[g][m]

    def column(self, m: int) -> tuple[TruthValue, ...]:
        return tuple(row[m] for row in self.rows)

    def attribute_index(self, name: str) -> int:
        try:
            return self.attributes.index(name)
        except ValueError:
            raise StructureError(f"no attribute named {name!r}") from None

    def object_index(self, name: str) -> int:
        try:
            return self.objects.index(name)
        except ValueError:
            raise StructureError(f"no object named {name!r}") from None

    def all_values(self) -> tuple[TruthValue, ...]:
        return tuple(v for row in self.rows for v in row)


@dataclass(frozen=True)
class ExtensionConfig:
    """Knobs for the candidate-column generator.

    ``max_meet_arity`` bounds the k-wise meets (the candidate count grows as
    the number of attribute subsets, so the default stays at pairs);
    ``meet_subsets`` pins an explicit list of source-index tuples instead of
    enumerating, which is how the two-column preset is expressed.
    """

    max_meet_arity: int = 2
    include_top_column: bool = True
    novelty_filter: bool = True
    meet_subsets: tuple[tuple[int, ...], ...] | None = None


def extend_context(context: FuzzyContext, config: ExtensionConfig | None = None) -> FuzzyContext:
    """Append candidate tacit columns to an unextended context.

    Candidates are the column meets of every subset of original attributes
    with arity 2..max_meet_arity (subsets in lexicographic index order, arity
    ascending), then one all-top column. With the novelty filter on, a
    candidate equal to an existing or already-added column is dropped.
    Original columns are never touched; new columns carry meet/top
    provenance and fresh names continuing the ``m<k>`` numbering.
    """
    cfg = config or ExtensionConfig()
    if cfg.max_meet_arity < 2:
        raise ValueError(f"max_meet_arity must be >= 2, got {cfg.max_meet_arity}")
    if any(p.kind != ORIGINAL for p in context.provenance):
        raise ValueError("context has derived columns already; extend the original")

    algebra = context.algebra
    n_attrs = len(context.attributes)
    if cfg.meet_subsets is not None:
        subsets = []
        for subset in cfg.meet_subsets:
            idx = tuple(int(s) for s in subset)
            if len(idx) < 2 or list(idx) != sorted(set(idx)):
                raise ValueError(f"meet subset {subset!r} must be >= 2 strictly increasing indices")
            if idx[0] < 0 or idx[-1] >= n_attrs:
                raise ValueError(f"meet subset {subset!r} out of range")
            subsets.append(idx)
    else:
        subsets = [
            combo
            for arity in range(2, min(cfg.max_meet_arity, n_attrs) + 1)
            for combo in itertools.combinations(range(n_attrs), arity)
        ]

    seen = {context.column(m) for m in range(n_attrs)}
    new_columns: list[tuple[AttributeProvenance, tuple[TruthValue, ...]]] = []

    def admit(provenance: AttributeProvenance, column: tuple[TruthValue, ...]) -> None:
        if cfg.novelty_filter and column in seen:
            return
        new_columns.append((provenance, column))
        seen.add(column)

    for subset in subsets:
        column = tuple(
            algebra.meet_all(row[s] for s in subset) for row in context.rows
        )
        admit(AttributeProvenance.meet_of(subset), column)
    if cfg.include_top_column:
        admit(
            AttributeProvenance.constant_top(),
            tuple(algebra.top for _ in context.objects),
        )

    names = list(context.attributes)
    used = set(names)
    counter = n_attrs + 1
    for _ in new_columns:
        while f"m{counter}" in used:
            counter += 1
        names.append(f"m{counter}")
        used.add(f"m{counter}")
        counter += 1

    rows = tuple(
        tuple(row) + tuple(col[g] for _, col in new_columns)
        for g, row in enumerate(context.rows)
    )
    provenance = context.provenance + tuple(p for p, _ in new_columns)
    return FuzzyContext(algebra, context.objects, tuple(names), rows, provenance)


def restrict_agrees(base: FuzzyContext, extended: FuzzyContext) -> bool:
    """True iff the extended context, restricted to the base attributes,
    equals the base grid cell for cell.

    The two contexts must share the algebra and the object list, and every
    base attribute must be present in the extension; a missing name raises
    StructureError rather than returning False.
    """
    if base.algebra != extended.algebra:
        raise StructureError("contexts use different algebras")
    if base.objects != extended.objects:
        raise StructureError("contexts do not list the same objects")
    positions = [extended.attribute_index(name) for name in base.attributes]
    for g in range(len(base.objects)):
        for m, pos in enumerate(positions):
            if base.rows[g][m] != extended.rows[g][pos]:
                return False
    return True


def parse_context(text: str, base_dir: str = ".") -> FuzzyContext:
    """Parse the line-oriented context format.

    Layout (``#`` starts a comment)::

        algebra product 3 2        # or: algebra table <path>
        alias a=SlT b=SlF I=AbT O=AbF
        attributes m1 m2 m3
        g1 a b I
        g2 b O a

    The algebra line comes first, optional alias lines next, then the
    attribute list, then one row per object. Table paths resolve relative to
    ``base_dir``. All parsed attributes carry original provenance.
    """
    algebra: Algebra | None = None
    aliases: dict[str, TruthValue] = {}
    attributes: list[str] | None = None
    objects: list[str] = []
    rows: list[tuple[TruthValue, ...]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]

        if head == "algebra":
            if algebra is not None:
                raise ParseError("duplicate 'algebra' line", lineno)
            if len(parts) >= 2 and parts[1] == "product":
                try:
                    sizes = [int(p) for p in parts[2:]]
                except ValueError:
                    raise ParseError("product sizes must be integers", lineno) from None
                if not sizes:
                    raise ParseError("'algebra product' needs chain sizes", lineno)
                try:
                    algebra = ProductAlgebra(sizes)
                except ValueError as exc:
                    raise ParseError(str(exc), lineno) from None
            elif len(parts) == 3 and parts[1] == "table":
                path = parts[2]
                full = os.path.join(base_dir, path)
                try:
                    with open(full, encoding="utf-8") as handle:
                        algebra = load_table_algebra(handle.read(), source=path)
                except OSError as exc:
                    raise ParseError(f"cannot read table file {path!r}: {exc}", lineno) from None
            else:
                raise ParseError("expected 'algebra product <sizes>' or 'algebra table <path>'", lineno)
            continue

        if algebra is None:
            raise ParseError("the first directive must be 'algebra'", lineno)

        if head == "alias":
            if attributes is not None:
                raise ParseError("'alias' must precede 'attributes'", lineno)
            for item in parts[1:]:
                token, sep, target = item.partition("=")
                if not sep or not token or not target:
                    raise ParseError(f"alias entries look like tok=Value, got {item!r}", lineno)
                if token in aliases:
                    raise ParseError(f"duplicate alias {token!r}", lineno)
                try:
                    aliases[token] = algebra.parse_value(target)
                except ValueError as exc:
                    raise ParseError(str(exc), lineno) from None
            continue

        if head == "attributes":
            if attributes is not None:
                raise ParseError("duplicate 'attributes' line", lineno)
            attributes = parts[1:]
            if len(set(attributes)) != len(attributes):
                raise ParseError("duplicate attribute name", lineno)
            continue

        if attributes is None:
            raise ParseError("object rows must follow the 'attributes' line", lineno)
        obj = head
        if obj in objects:
            raise ParseError(f"duplicate object name {obj!r}", lineno)
        tokens = parts[1:]
        if len(tokens) != len(attributes):
            raise ParseError(
                f"row {obj!r} has {len(tokens)} values for {len(attributes)} attributes",
                lineno,
            )
        values = []
        for token in tokens:
            if token in aliases:
                values.append(aliases[token])
                continue
            try:
                values.append(algebra.parse_value(token))
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        objects.append(obj)
        rows.append(tuple(values))

    if algebra is None:
        raise ParseError("missing 'algebra' line")
    if attributes is None:
        raise ParseError("missing 'attributes' line")
    return FuzzyContext(algebra, tuple(objects), tuple(attributes), tuple(rows))


def serialize_context(context: FuzzyContext) -> str:
    """Render a context in canonical form (no aliases, single spaces).

    Parsing the result reproduces the context exactly, except that derived
    columns come back as plain data: their provenance is emitted as comments
    for the reader, not as machine state.
    """
    lines = [f"algebra {context.algebra.describe()}"]
    lines.append(("attributes " + " ".join(context.attributes)).rstrip())
    for name, prov in zip(context.attributes, context.provenance):
        if prov.kind != ORIGINAL:
            lines.append(f"# {name} = {prov.formula(context.attributes)}")
    fmt = context.algebra.format_value
    for obj, row in zip(context.objects, context.rows):
        lines.append((obj + " " + " ".join(fmt(v) for v in row)).rstrip())
    return "\n".join(lines) + "\n"
