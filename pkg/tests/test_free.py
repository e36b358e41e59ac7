"""Finitely generated free algebras over finite sets of generating algebras."""

import pytest

from biheyt.algebras import chain_algebra, product
from biheyt.duality import dual_poset
from biheyt.errors import BudgetExceededError
from biheyt.free import element_vector, free_algebra
from biheyt.morphisms import homomorphisms, is_isomorphic
from biheyt.algebras import residuation_violation


def test_one_generator_over_chain3(f1):
    assert f1.algebra.size == 12
    assert f1.generators == (2,)
    assert f1.algebra.bot == 0
    assert f1.algebra.top == 1
    assert tuple(f1.vectors[2]) == (0, 1, 2)
    assert element_vector(f1, 2) == (0, 1, 2)


def test_coordinates_enumerate_assignments(f1):
    # one coordinate per assignment of the single variable into the chain
    assert f1.coordinates == ((0, (0,)), (0, (1,)), (0, (2,)))


def test_free_on_one_generator_is_product_of_chains(f1):
    model = product(product(chain_algebra(3), chain_algebra(2)), chain_algebra(2))
    assert is_isomorphic(f1.algebra, model) is not None


def test_universal_property_counts(f1):
    # maps out of the free algebra correspond to points of the target
    assert len(homomorphisms(f1.algebra, chain_algebra(3))) == 3
    assert len(homomorphisms(f1.algebra, chain_algebra(2))) == 2


def test_free_is_residuated(f1):
    assert residuation_violation(f1.algebra, sample=300) is None


def test_free_over_two_element_chain():
    r = free_algebra([chain_algebra(2)], 1)
    assert r.algebra.size == 4
    assert is_isomorphic(r.algebra, product(chain_algebra(2), chain_algebra(2)))


def test_redundant_generating_algebra_changes_nothing(f1):
    r = free_algebra([chain_algebra(3), chain_algebra(2)], 1)
    assert len(r.coordinates) == 5
    assert is_isomorphic(r.algebra, f1.algebra) is not None


def test_zero_variables():
    r = free_algebra([chain_algebra(3)], 0)
    assert r.algebra.size == 2
    assert r.generators == ()


def test_two_generators_over_chain3(f2):
    assert f2.algebra.size == 3888


def test_dual_of_free_on_one_generator(f1):
    p = dual_poset(f1.algebra)
    assert p.size == 4


def test_cell_budget_exhaustion():
    with pytest.raises(BudgetExceededError):
        free_algebra([chain_algebra(3)], 2, free_cell_budget=100)
    with pytest.raises(BudgetExceededError):
        free_algebra([chain_algebra(3)], 1, table_cell_budget=10)


def test_bad_arguments():
    with pytest.raises(ValueError):
        free_algebra([], 1)
    with pytest.raises(ValueError):
        free_algebra([chain_algebra(3)], -1)
