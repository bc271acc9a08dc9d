import pytest

from _fuzz import nilpotent_corpus, solvable_corpus
from nilgeom.catalog import NILMANIFOLD_FAMILIES, abelian, grid_algebras, heisenberg3


@pytest.fixture(scope="session")
def fuzzed_nilpotent():
    return nilpotent_corpus()


@pytest.fixture(scope="session")
def fuzzed_solvable():
    return solvable_corpus()


@pytest.fixture(scope="session")
def catalog_algebras():
    algs = [a for family in NILMANIFOLD_FAMILIES for a in grid_algebras(family)]
    return algs + [heisenberg3(1), heisenberg3(2), abelian(5), abelian(3)]
