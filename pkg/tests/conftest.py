import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from etkit import build_algebra, validate_table

PAPER_ROWS = [[2, 2, 0], [1, 0, 2]]

# cover edges read off the worked example's diagram, as (lower, upper) labels
PAPER_COVERS = {
    ("0", "a"), ("0", "b"), ("0", "c"),
    ("a", "2a"), ("a", "a⊕b"), ("a", "a⊕c"),
    ("b", "a⊕b"), ("b", "2b"),
    ("c", "2c"), ("c", "a⊕c"),
    ("2a", "2a⊕b"),
    ("a⊕b", "2a⊕b"), ("a⊕b", "2c"),
    ("2b", "2c"),
    ("a⊕c", "1"), ("2a⊕b", "1"), ("2c", "1"),
}


@pytest.fixture(scope="session")
def paper_table():
    return validate_table(PAPER_ROWS)


@pytest.fixture(scope="session")
def paper_algebra(paper_table):
    return build_algebra(paper_table)


@pytest.fixture(scope="session")
def boolean_table():
    return validate_table([[1, 1]])


@pytest.fixture(scope="session")
def boolean_algebra(boolean_table):
    return build_algebra(boolean_table)


def chain_table(n):
    return validate_table([[n]])


@pytest.fixture(scope="session")
def labels_of(paper_algebra):
    """Map label -> class id for the paper algebra."""
    return {paper_algebra.label(c) : c.class_id for c in paper_algebra.classes}
