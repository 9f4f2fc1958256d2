"""Finite lattice implication algebras.

Two constructions are provided. ``ProductAlgebra`` combines Lukasiewicz
chains coordinatewise; on a factor chain of size n the implication is
``(i, j) -> min(n - i + j, n)``, negation is ``i -> n + 1 - i``, and
meet/join are the coordinatewise min/max. ``TableAlgebra`` takes explicit
implication and negation tables and derives its order from them; nothing
is assumed about a loaded table, so run :func:`check_axioms` to find out
whether it actually is a lattice implication algebra.

The default product of a 3-chain and a 2-chain carries the six linguistic
labels AbT, VeT, SlT, SlF, VeF, AbF (modifier + polarity); every other
algebra spells its values as comma-separated coordinates or table names.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BudgetError, DimensionError, LoadError, StructureError

DEFAULT_AXIOM_BUDGET = 64

MODIFIERS = ("Sl", "Ve", "Ab")
META_TRUE = "Tr"
META_FALSE = "Fa"


@dataclass(frozen=True, slots=True)
class TruthValue:
    """A point of a finite algebra: one 1-based index per factor chain.

    Values carry no identity beyond their coordinates; all operations live
    on the owning algebra.
    """

    coords: tuple[int, ...]

    def __repr__(self) -> str:
        return f"TruthValue({self.coords})"


@dataclass(frozen=True, slots=True)
class LinguisticLabel:
    """A hedged truth judgment: a modifier (Sl/Ve/Ab) plus Tr or Fa."""

    modifier: str
    meta: str

    def __post_init__(self):
        if self.modifier not in MODIFIERS:
            raise ValueError(f"unknown modifier {self.modifier!r}")
        if self.meta not in (META_TRUE, META_FALSE):
            raise ValueError(f"unknown meta truth value {self.meta!r}")

    @property
    def spelling(self) -> str:
        return self.modifier + self.meta[0]

    @classmethod
    def from_spelling(cls, text: str) -> "LinguisticLabel":
        if len(text) == 3 and text[:2] in MODIFIERS and text[2] in "TF":
            return cls(text[:2], META_TRUE if text[2] == "T" else META_FALSE)
        raise ValueError(f"not a canonical label: {text!r}")


class Algebra:
    """Interface shared by product and table algebras.

    Concrete algebras expose ``top``, ``bottom``, ``elements`` (in canonical
    display order) and the operations ``leq``, ``meet``, ``join``, ``imp``,
    ``neg``; plus ``format_value``/``parse_value`` for the textual form and
    ``describe`` for the one-line header used by context files.

    Algebras are immutable after construction and every operation is a pure
    function, so instances may be shared freely between threads.
    """

    top: TruthValue
    bottom: TruthValue

    def meet_all(self, values: Iterable[TruthValue]) -> TruthValue:
        """Fold meet over the values; the empty meet is the top element."""
        out = self.top
        for v in values:
            out = self.meet(out, v)
        return out

    def join_all(self, values: Iterable[TruthValue]) -> TruthValue:
        """Fold join over the values; the empty join is the bottom element."""
        out = self.bottom
        for v in values:
            out = self.join(out, v)
        return out

    def generated_subalgebra(self, values: Iterable[TruthValue]) -> tuple[TruthValue, ...]:
        """Close the given values, plus top, under imp/neg/meet/join.

        The result is returned in canonical element order. Seeding with top
        guarantees the closure is never empty and always contains bottom
        (as ``neg(top)``).
        """
        closed = {self.top}
        for v in values:
            self.check_member(v)
            closed.add(v)
        while True:
            current = list(closed)
            new = set()
            for x in current:
                nx = self.neg(x)
                if nx not in closed:
                    new.add(nx)
                for y in current:
                    for z in (self.imp(x, y), self.meet(x, y), self.join(x, y)):
                        if z not in closed:
                            new.add(z)
            if not new:
                break
            closed |= new
        return tuple(sorted(closed, key=self.sort_key))

    def hasse_covers(self) -> tuple[tuple[TruthValue, TruthValue], ...]:
        """Cover pairs (x, y) with x strictly below y and nothing between."""
        els = self.elements
        covers = []
        for x in els:
            for y in els:
                if x == y or not self.leq(x, y):
                    continue
                if any(z != x and z != y and self.leq(x, z) and self.leq(z, y) for z in els):
                    continue
                covers.append((x, y))
        covers.sort(key=lambda pair: (self.sort_key(pair[0]), self.sort_key(pair[1])))
        return tuple(covers)

    # concrete algebras implement the rest
    @property
    def elements(self) -> tuple[TruthValue, ...]:
        raise NotImplementedError

    def check_member(self, v: TruthValue) -> None:
        raise NotImplementedError

    def sort_key(self, v: TruthValue):
        raise NotImplementedError

    def leq(self, x: TruthValue, y: TruthValue) -> bool:
        raise NotImplementedError

    def meet(self, x: TruthValue, y: TruthValue) -> TruthValue:
        raise NotImplementedError

    def join(self, x: TruthValue, y: TruthValue) -> TruthValue:
        raise NotImplementedError

    def imp(self, x: TruthValue, y: TruthValue) -> TruthValue:
        raise NotImplementedError

    def neg(self, x: TruthValue) -> TruthValue:
        raise NotImplementedError

    def format_value(self, v: TruthValue) -> str:
        raise NotImplementedError

    def parse_value(self, token: str) -> TruthValue:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


class ProductAlgebra(Algebra):
    """Product of Lukasiewicz chains, ordered coordinatewise."""

    def __init__(self, chain_sizes: Sequence[int]):
        sizes = tuple(int(n) for n in chain_sizes)
        if not sizes:
            raise ValueError("at least one factor chain is required")
        if any(n < 2 for n in sizes):
            raise ValueError(f"every chain size must be >= 2, got {list(sizes)}")
        self.chain_sizes = sizes
        self.top = TruthValue(sizes)
        self.bottom = TruthValue((1,) * len(sizes))

    def __eq__(self, other) -> bool:
        return isinstance(other, ProductAlgebra) and other.chain_sizes == self.chain_sizes

    def __hash__(self) -> int:
        return hash(("product", self.chain_sizes))

    def __repr__(self) -> str:
        return f"ProductAlgebra({list(self.chain_sizes)})"

    def describe(self) -> str:
        return "product " + " ".join(str(n) for n in self.chain_sizes)

    @property
    def size(self) -> int:
        out = 1
        for n in self.chain_sizes:
            out *= n
        return out

    @cached_property
    def elements(self) -> tuple[TruthValue, ...]:
        ranges = [range(1, n + 1) for n in self.chain_sizes]
        values = [TruthValue(c) for c in itertools.product(*ranges)]
        values.sort(key=self.sort_key)
        return tuple(values)

    def sort_key(self, v: TruthValue):
        # canonical display order runs top-down, later factors first; on the
        # default algebra this yields AbT VeT SlT SlF VeF AbF
        return tuple(-c for c in reversed(v.coords))

    def value(self, *coords: int) -> TruthValue:
        v = TruthValue(tuple(int(c) for c in coords))
        self.check_member(v)
        return v

    def check_member(self, v: TruthValue) -> None:
        if not isinstance(v, TruthValue) or len(v.coords) != len(self.chain_sizes):
            raise DimensionError(f"{v!r} does not have arity {len(self.chain_sizes)}")
        for c, n in zip(v.coords, self.chain_sizes):
            if not 1 <= c <= n:
                raise DimensionError(f"coordinate {c} outside chain of size {n} in {v!r}")

    def leq(self, x: TruthValue, y: TruthValue) -> bool:
        self.check_member(x)
        self.check_member(y)
        return all(a <= b for a, b in zip(x.coords, y.coords))

    def meet(self, x: TruthValue, y: TruthValue) -> TruthValue:
        self.check_member(x)
        self.check_member(y)
        return TruthValue(tuple(a if a <= b else b for a, b in zip(x.coords, y.coords)))

    def join(self, x: TruthValue, y: TruthValue) -> TruthValue:
        self.check_member(x)
        self.check_member(y)
        return TruthValue(tuple(a if a >= b else b for a, b in zip(x.coords, y.coords)))

    def imp(self, x: TruthValue, y: TruthValue) -> TruthValue:
        self.check_member(x)
        self.check_member(y)
        return TruthValue(
            tuple(min(n - a + b, n) for a, b, n in zip(x.coords, y.coords, self.chain_sizes))
        )

    def neg(self, x: TruthValue) -> TruthValue:
        self.check_member(x)
        return TruthValue(tuple(n + 1 - a for a, n in zip(x.coords, self.chain_sizes)))

    @property
    def is_linguistic(self) -> bool:
        return self.chain_sizes == (3, 2)

    def format_value(self, v: TruthValue) -> str:
        self.check_member(v)
        if self.is_linguistic:
            return label_from_value(v, self).spelling
        return ",".join(str(c) for c in v.coords)

    def parse_value(self, token: str) -> TruthValue:
        if self.is_linguistic:
            try:
                return label_to_value(LinguisticLabel.from_spelling(token), self)
            except ValueError:
                pass
        try:
            coords = tuple(int(part) for part in token.split(","))
        except ValueError:
            raise ValueError(f"unknown value {token!r} for algebra '{self.describe()}'") from None
        v = TruthValue(coords)
        try:
            self.check_member(v)
        except DimensionError as exc:
            raise ValueError(str(exc)) from None
        return v


def make_product_algebra(chain_sizes: Sequence[int]) -> ProductAlgebra:
    """Build a product of Lukasiewicz chains; every size must be >= 2."""
    return ProductAlgebra(chain_sizes)


def default_algebra() -> ProductAlgebra:
    """The six-element algebra of (modifier, polarity) linguistic labels."""
    return ProductAlgebra((3, 2))


def label_to_value(label: LinguisticLabel, algebra: Algebra) -> TruthValue:
    """Encode a linguistic label on the default product 3 2 algebra.

    Tr labels sit on the upper rail at their modifier rank; Fa labels mirror
    the rank on the lower rail, so Ab pins the extremes (AbT = top,
    AbF = bottom) and Sl sits closest to the middle.
    """
    _require_linguistic(algebra)
    rank = MODIFIERS.index(label.modifier) + 1
    if label.meta == META_TRUE:
        return TruthValue((rank, 2))
    return TruthValue((4 - rank, 1))


def label_from_value(value: TruthValue, algebra: Algebra) -> LinguisticLabel:
    """Decode a default-algebra value back to its linguistic label."""
    _require_linguistic(algebra)
    algebra.check_member(value)
    i, j = value.coords
    if j == 2:
        return LinguisticLabel(MODIFIERS[i - 1], META_TRUE)
    return LinguisticLabel(MODIFIERS[(4 - i) - 1], META_FALSE)


def _require_linguistic(algebra: Algebra) -> None:
    if not (isinstance(algebra, ProductAlgebra) and algebra.is_linguistic):
        raise ValueError("linguistic labels are defined only on the product 3 2 algebra")


class TableAlgebra(Algebra):
    """Algebra described by explicit implication and negation tables.

    The order is derived from the implication alone: the top element is the
    common value of the diagonal (a non-constant diagonal means the relation
    cannot even be reflexive and the table is rejected), and x <= y iff
    imp(x, y) = top. Antisymmetry is validated at load; everything else is
    left to :func:`check_axioms`. Meets and joins are searched in the
    derived order and raise :class:`StructureError` when no unique bound
    exists.
    """

    def __init__(
        self,
        element_names: Sequence[str],
        imp_table: dict[tuple[str, str], str],
        neg_table: dict[str, str],
        source: str | None = None,
    ):
        names = tuple(element_names)
        if not names:
            raise LoadError("a table algebra needs at least one element")
        if len(set(names)) != len(names):
            raise LoadError(f"duplicate element name in {list(names)}")
        self.element_names = names
        self.source = source
        self._index = {name: i for i, name in enumerate(names)}

        for x in names:
            for y in names:
                v = imp_table.get((x, y))
                if v is None:
                    raise LoadError(f"implication table is missing entry ({x}, {y})")
                if v not in self._index:
                    raise LoadError(f"implication entry ({x}, {y}) = {v!r} is not an element")
        for x in names:
            v = neg_table.get(x)
            if v is None:
                raise LoadError(f"negation table is missing entry for {x}")
            if v not in self._index:
                raise LoadError(f"negation entry {x} -> {v!r} is not an element")
        self._imp = {k: imp_table[k] for k in itertools.product(names, repeat=2)}
        self._neg = {x: neg_table[x] for x in names}

        diagonal = {self._imp[(x, x)] for x in names}
        if len(diagonal) != 1:
            raise LoadError(
                "derived order is not reflexive: the diagonal takes values "
                f"{sorted(diagonal)} instead of a single top element"
            )
        self._top_name = diagonal.pop()
        n = len(names)
        self._le = [
            [self._imp[(names[i], names[j])] == self._top_name for j in range(n)]
            for i in range(n)
        ]
        for i in range(n):
            for j in range(i + 1, n):
                if self._le[i][j] and self._le[j][i]:
                    raise LoadError(
                        f"derived order is not antisymmetric: {names[i]} and {names[j]} "
                        "lie below each other"
                    )

        self.top = TruthValue((self._index[self._top_name] + 1,))
        bottoms = [i for i in range(n) if all(self._le[i][j] for j in range(n))]
        self._bottom_index = bottoms[0] if bottoms else None
        self._meet_cache: dict[tuple[int, int], int] = {}
        self._join_cache: dict[tuple[int, int], int] = {}

    @property
    def bottom(self) -> TruthValue:
        if self._bottom_index is None:
            raise StructureError("the derived order has no least element")
        return TruthValue((self._bottom_index + 1,))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TableAlgebra)
            and other.element_names == self.element_names
            and other._imp == self._imp
            and other._neg == self._neg
        )

    def __hash__(self) -> int:
        return hash(("table", self.element_names))

    def __repr__(self) -> str:
        return f"TableAlgebra({list(self.element_names)})"

    def describe(self) -> str:
        if self.source is None:
            raise ValueError("table algebra was built in memory and has no source path")
        return f"table {self.source}"

    @property
    def size(self) -> int:
        return len(self.element_names)

    @cached_property
    def elements(self) -> tuple[TruthValue, ...]:
        return tuple(TruthValue((i + 1,)) for i in range(len(self.element_names)))

    def sort_key(self, v: TruthValue):
        return v.coords[0]

    def value_of(self, name: str) -> TruthValue:
        if name not in self._index:
            raise ValueError(f"unknown element {name!r}")
        return TruthValue((self._index[name] + 1,))

    def name_of(self, v: TruthValue) -> str:
        self.check_member(v)
        return self.element_names[v.coords[0] - 1]

    def check_member(self, v: TruthValue) -> None:
        if not isinstance(v, TruthValue) or len(v.coords) != 1:
            raise DimensionError(f"{v!r} is not a table-algebra value")
        if not 1 <= v.coords[0] <= len(self.element_names):
            raise DimensionError(f"{v!r} outside table of {len(self.element_names)} elements")

    def leq(self, x: TruthValue, y: TruthValue) -> bool:
        self.check_member(x)
        self.check_member(y)
        return self._le[x.coords[0] - 1][y.coords[0] - 1]

    def _bound(self, x: TruthValue, y: TruthValue, cache, below: bool, what: str) -> TruthValue:
        i, j = x.coords[0] - 1, y.coords[0] - 1
        key = (i, j) if i <= j else (j, i)
        hit = cache.get(key)
        if hit is not None:
            return TruthValue((hit + 1,))
        n = len(self.element_names)
        if below:
            candidates = [k for k in range(n) if self._le[k][i] and self._le[k][j]]
            best = [k for k in candidates if all(self._le[m][k] for m in candidates)]
        else:
            candidates = [k for k in range(n) if self._le[i][k] and self._le[j][k]]
            best = [k for k in candidates if all(self._le[k][m] for m in candidates)]
        if len(best) != 1:
            raise StructureError(
                f"no unique {what} for ({self.element_names[i]}, {self.element_names[j]}): "
                "the derived order is not a lattice"
            )
        cache[key] = best[0]
        return TruthValue((best[0] + 1,))

    def meet(self, x: TruthValue, y: TruthValue) -> TruthValue:
        self.check_member(x)
        self.check_member(y)
        return self._bound(x, y, self._meet_cache, True, "greatest lower bound")

    def join(self, x: TruthValue, y: TruthValue) -> TruthValue:
        self.check_member(x)
        self.check_member(y)
        return self._bound(x, y, self._join_cache, False, "least upper bound")

    def imp(self, x: TruthValue, y: TruthValue) -> TruthValue:
        self.check_member(x)
        self.check_member(y)
        return self.value_of(self._imp[(self.name_of(x), self.name_of(y))])

    def neg(self, x: TruthValue) -> TruthValue:
        self.check_member(x)
        return self.value_of(self._neg[self.name_of(x)])

    def format_value(self, v: TruthValue) -> str:
        return self.name_of(v)

    def parse_value(self, token: str) -> TruthValue:
        return self.value_of(token)


def load_table_algebra(text: str, source: str | None = None) -> TableAlgebra:
    """Parse the line-oriented table format into a TableAlgebra.

    Expected layout (``#`` starts a comment)::

        elements O I
        imp O I I
        imp I O I
        neg O I
        neg I O

    One ``imp`` row per element, in declared order; one ``neg`` line per
    element. Totality, reflexivity and antisymmetry of the derived order are
    validated here; run :func:`check_axioms` for the full law suite.
    """
    names: list[str] = []
    imp_rows: list[tuple[int, str, list[str]]] = []
    neg_lines: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, rest = parts[0], parts[1:]
        if kind == "elements":
            if names:
                raise LoadError("duplicate 'elements' line", lineno)
            if not rest:
                raise LoadError("'elements' needs at least one name", lineno)
            names = rest
        elif kind == "imp":
            if not names:
                raise LoadError("'imp' before 'elements'", lineno)
            if len(rest) != 1 + len(names):
                raise LoadError(
                    f"'imp' row needs a row name and {len(names)} values", lineno
                )
            imp_rows.append((lineno, rest[0], rest[1:]))
        elif kind == "neg":
            if not names:
                raise LoadError("'neg' before 'elements'", lineno)
            if len(rest) != 2:
                raise LoadError("'neg' takes exactly a name and a value", lineno)
            neg_lines.append((lineno, rest[0], rest[1]))
        else:
            raise LoadError(f"unknown directive {kind!r}", lineno)

    if not names:
        raise LoadError("missing 'elements' line")
    if len(imp_rows) != len(names):
        raise LoadError(f"expected {len(names)} 'imp' rows, found {len(imp_rows)}")
    imp_table: dict[tuple[str, str], str] = {}
    for (lineno, row_name, values), expected in zip(imp_rows, names):
        if row_name != expected:
            raise LoadError(
                f"'imp' rows must follow the declared order; expected {expected!r}", lineno
            )
        for col_name, v in zip(names, values):
            imp_table[(row_name, col_name)] = v
    neg_table: dict[str, str] = {}
    for lineno, name, v in neg_lines:
        if name in neg_table:
            raise LoadError(f"duplicate 'neg' line for {name!r}", lineno)
        neg_table[name] = v
    return TableAlgebra(names, imp_table, neg_table, source=source)


@dataclass
class AxiomReport:
    """Outcome of the exhaustive law check.

    Each violation is a (law, witness) pair where the witness lists the
    offending elements in display spelling. ``passed`` holds exactly when no
    violation was found.
    """

    violations: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def check_axioms(algebra: Algebra, element_budget: int = DEFAULT_AXIOM_BUDGET) -> AxiomReport:
    """Exhaustively test the bounded-lattice laws, the order-reversing
    involution, and the seven implication axioms over every element tuple.

    The check is cubic in the element count and meant for desk-scale
    validation; algebras larger than ``element_budget`` raise BudgetError.
    Every violating instance is reported with a witness tuple.
    """
    els = algebra.elements
    n = len(els)
    if n > element_budget:
        raise BudgetError(f"{n} elements exceed the axiom-check budget of {element_budget}")
    name = algebra.format_value
    report = AxiomReport()
    bad = report.violations

    def safe(op, *args):
        try:
            return op(*args)
        except StructureError:
            return None

    # bounded: a greatest and a least element must exist
    if not any(all(algebra.leq(x, t) for x in els) for t in els):
        bad.append(("bounded-top", ()))
    if not any(all(algebra.leq(b, x) for x in els) for b in els):
        bad.append(("bounded-bottom", ()))

    # totality of meet/join under the derived order
    undefined_pairs = set()
    for x, y in itertools.product(els, repeat=2):
        if safe(algebra.meet, x, y) is None:
            bad.append(("meet-defined", (name(x), name(y))))
            undefined_pairs.add((x, y))
        if safe(algebra.join, x, y) is None:
            bad.append(("join-defined", (name(x), name(y))))
            undefined_pairs.add((x, y))

    def meet(x, y):
        return None if (x, y) in undefined_pairs else safe(algebra.meet, x, y)

    def join(x, y):
        return None if (x, y) in undefined_pairs else safe(algebra.join, x, y)

    for x in els:
        if meet(x, x) is not None and meet(x, x) != x:
            bad.append(("meet-idem", (name(x),)))
        if join(x, x) is not None and join(x, x) != x:
            bad.append(("join-idem", (name(x),)))
        if algebra.neg(algebra.neg(x)) != x:
            bad.append(("neg-involutive", (name(x),)))

    for x, y in itertools.product(els, repeat=2):
        mxy, myx = meet(x, y), meet(y, x)
        jxy, jyx = join(x, y), join(y, x)
        if mxy is not None and myx is not None and mxy != myx:
            bad.append(("meet-comm", (name(x), name(y))))
        if jxy is not None and jyx is not None and jxy != jyx:
            bad.append(("join-comm", (name(x), name(y))))
        if jxy is not None and meet(x, jxy) is not None and meet(x, jxy) != x:
            bad.append(("absorb-meet-join", (name(x), name(y))))
        if mxy is not None and join(x, mxy) is not None and join(x, mxy) != x:
            bad.append(("absorb-join-meet", (name(x), name(y))))
        if algebra.leq(x, y) and not algebra.leq(algebra.neg(y), algebra.neg(x)):
            bad.append(("neg-antitone", (name(x), name(y))))

    imp = algebra.imp
    top = algebra.top
    for x in els:
        if imp(x, x) != top:
            bad.append(("lia-2", (name(x),)))
    for x, y in itertools.product(els, repeat=2):
        if imp(x, y) != imp(algebra.neg(y), algebra.neg(x)):
            bad.append(("lia-3", (name(x), name(y))))
        if imp(x, y) == top and imp(y, x) == top and x != y:
            bad.append(("lia-4", (name(x), name(y))))
        if imp(imp(x, y), y) != imp(imp(y, x), x):
            bad.append(("lia-5", (name(x), name(y))))

    for x, y, z in itertools.product(els, repeat=3):
        if imp(x, imp(y, z)) != imp(y, imp(x, z)):
            bad.append(("lia-1", (name(x), name(y), name(z))))
        witness = (name(x), name(y), name(z))
        mxy, jxy = meet(x, y), join(x, y)
        myz, jyz = meet(y, z), join(y, z)
        if jxy is not None:
            rhs = meet(imp(x, z), imp(y, z))
            if rhs is not None and imp(jxy, z) != rhs:
                bad.append(("lia-6", witness))
        if mxy is not None:
            rhs = join(imp(x, z), imp(y, z))
            if rhs is not None and imp(mxy, z) != rhs:
                bad.append(("lia-7", witness))
        if mxy is not None and myz is not None:
            left, right = meet(x, myz), meet(mxy, z)
            if left is not None and right is not None and left != right:
                bad.append(("meet-assoc", witness))
        if jxy is not None and jyz is not None:
            left, right = join(x, jyz), join(jxy, z)
            if left is not None and right is not None and left != right:
                bad.append(("join-assoc", witness))

    return report
