import random
from pathlib import Path

import pytest

from ltvcl import (
    Concept,
    FuzzyContext,
    attribute_set,
    object_set,
    parse_context,
)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def load_context(name: str) -> FuzzyContext:
    path = DATA_DIR / name
    return parse_context(path.read_text(encoding="utf-8"), base_dir=str(DATA_DIR))


@pytest.fixture(scope="session")
def demo():
    return load_context("demo.ctx")


@pytest.fixture(scope="session")
def demo_extended():
    return load_context("demo_extended.ctx")


def oset(context, labels: str):
    """Object-side fuzzy set from space-separated canonical labels."""
    return object_set(context.algebra.parse_value(t) for t in labels.split())


def aset(context, labels: str):
    """Attribute-side fuzzy set from space-separated canonical labels."""
    return attribute_set(context.algebra.parse_value(t) for t in labels.split())


def concept_of(context, extent_labels: str, intent_labels: str) -> Concept:
    return Concept(oset(context, extent_labels), aset(context, intent_labels))


def concept_set(context, table):
    """Turn golden (extent, intent) label rows into a set of concepts."""
    return {concept_of(context, e, i) for e, i in table}


def random_context(rng: random.Random, algebra, n_objects: int, n_attrs: int) -> FuzzyContext:
    rows = tuple(
        tuple(rng.choice(algebra.elements) for _ in range(n_attrs))
        for _ in range(n_objects)
    )
    objects = tuple(f"g{i + 1}" for i in range(n_objects))
    attributes = tuple(f"m{j + 1}" for j in range(n_attrs))
    return FuzzyContext(algebra, objects, attributes, rows)


def append_column(context: FuzzyContext, name: str, values) -> FuzzyContext:
    """A copy of the context with one extra raw data column."""
    values = tuple(values)
    return FuzzyContext(
        context.algebra,
        context.objects,
        context.attributes + (name,),
        tuple(row + (v,) for row, v in zip(context.rows, values)),
    )
