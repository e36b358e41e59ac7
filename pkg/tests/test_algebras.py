"""Algebra core: construction from orders, chains, products, predicates."""

import numpy as np
import pytest

from biheyt.algebras import (
    BiHeytingAlgebra,
    chain_algebra,
    from_lattice_order,
    is_boolean,
    is_chain,
    product,
    residuation_violation,
    subset_algebra,
)
from biheyt.errors import (
    BudgetExceededError,
    NotDistributiveError,
    NotLatticeError,
)
from biheyt.posets import Poset

from oracles import naive_residuation_ok


def test_chain3_tables():
    a = chain_algebra(3)
    assert a.meet.tolist() == [[0, 0, 0], [0, 1, 1], [0, 1, 2]]
    assert a.join.tolist() == [[0, 1, 2], [1, 1, 2], [2, 2, 2]]
    # imp(x, y) = top when x <= y, else y
    assert a.imp.tolist() == [[2, 2, 2], [0, 2, 2], [0, 1, 2]]
    # coimp(x, y) = bot when x <= y, else x
    assert a.coimp.tolist() == [[0, 0, 0], [1, 0, 0], [2, 2, 0]]


def test_chain3_negations():
    a = chain_algebra(3)
    assert [a.neg(x) for x in range(3)] == [2, 0, 0]
    assert [a.coneg(x) for x in range(3)] == [2, 2, 0]


def test_chain2_negations():
    a = chain_algebra(2)
    assert [a.neg(x) for x in range(2)] == [1, 0]
    assert [a.coneg(x) for x in range(2)] == [1, 0]


def test_chain_labels():
    a = chain_algebra(4)
    assert [a.label(x) for x in range(4)] == ["0", "a", "b", "1"]


def test_chain_too_short():
    with pytest.raises(ValueError):
        chain_algebra(1)


def test_from_lattice_order_chain_matches():
    p = Poset.chain(5)
    a = from_lattice_order(p.leq)
    assert a == chain_algebra(5)
    assert a.bot == 0 and a.top == 4


def test_no_top_is_not_lattice():
    # two maximal elements above a common bottom
    leq = np.eye(3, dtype=bool)
    leq[0, 1] = leq[0, 2] = True
    with pytest.raises(NotLatticeError):
        from_lattice_order(leq)


def test_no_meet_is_not_lattice():
    # bottom, top, and two incomparable middles with two lower bounds:
    # hexagon where {2,3} has no least upper bound below top
    leq = np.eye(6, dtype=bool)
    order = {(0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
             (2, 4), (2, 5), (3, 4), (3, 5), (4, 1), (5, 1), (2, 1), (3, 1)}
    for i, j in order:
        leq[i, j] = True
    with pytest.raises(NotLatticeError):
        from_lattice_order(leq)


def test_diamond_not_distributive():
    # three incomparable middles: the modular lattice M3
    leq = np.eye(5, dtype=bool)
    for m in (1, 2, 3):
        leq[0, m] = True
        leq[m, 4] = True
    leq[0, 4] = True
    with pytest.raises(NotDistributiveError):
        from_lattice_order(leq)


def test_pentagon_not_distributive():
    leq = np.eye(5, dtype=bool)
    for i, j in [(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4), (3, 4)]:
        leq[i, j] = True
    with pytest.raises(NotDistributiveError):
        from_lattice_order(leq)


def test_declared_bounds_checked():
    p = Poset.chain(3)
    with pytest.raises(NotLatticeError):
        from_lattice_order(p.leq, bot=1)


def test_product_of_chains():
    a = product(chain_algebra(3), chain_algebra(2))
    assert a.size == 6
    assert a.bot == 0 and a.top == 5
    # coordinates: index = 2 * (first) + (second)
    assert bool(a.leq[2, 3]) and not bool(a.leq[3, 2])
    assert int(a.meet[3, 4]) == 2  # (1,1) meet (2,0) = (1,0)
    assert a.label(3) == "(a,1)"


def test_product_matches_order_reconstruction():
    a = product(chain_algebra(3), chain_algebra(2))
    b = from_lattice_order(a.leq)
    assert a == b
    assert np.array_equal(a.imp, b.imp)
    assert np.array_equal(a.coimp, b.coimp)


def test_is_boolean():
    assert is_boolean(chain_algebra(2))
    assert is_boolean(product(chain_algebra(2), chain_algebra(2)))
    assert not is_boolean(chain_algebra(3))


def test_is_chain():
    assert is_chain(chain_algebra(4))
    assert not is_chain(product(chain_algebra(2), chain_algebra(2)))


def test_residuation_holds_on_samples():
    for a in (
        chain_algebra(2),
        chain_algebra(5),
        product(chain_algebra(3), chain_algebra(2)),
        product(product(chain_algebra(2), chain_algebra(2)), chain_algebra(3)),
    ):
        assert residuation_violation(a) is None
        assert naive_residuation_ok(a)


def test_residuation_violation_detected():
    good = chain_algebra(3)
    bad_imp = good.imp.copy()
    bad_imp[1, 0] = 2  # claims meet(1, 2) <= 0
    bad = BiHeytingAlgebra(
        good.leq, good.bot, good.top, good.meet, good.join, bad_imp, good.coimp
    )
    assert residuation_violation(bad) is not None


def test_subset_algebra_chain():
    three = chain_algebra(3)
    sub, elems = subset_algebra(three, 0b101)
    assert elems == (0, 2)
    assert sub == chain_algebra(2)


def test_subset_algebra_rejects_non_closed():
    a = product(chain_algebra(2), chain_algebra(2))
    with pytest.raises(ValueError):
        subset_algebra(a, 0b1011)  # drops an atom but keeps imp values


def test_subset_algebra_needs_bounds():
    with pytest.raises(ValueError):
        subset_algebra(chain_algebra(3), 0b011)


def test_json_round_trip():
    a = product(chain_algebra(3), chain_algebra(2))
    d = a.to_json_dict()
    assert sorted(d) == ["bot", "leq", "size", "top"]
    b = BiHeytingAlgebra.from_json_dict(d)
    assert a == b
    assert np.array_equal(a.coimp, b.coimp)


def test_degenerate():
    one = from_lattice_order(np.eye(1, dtype=bool))
    assert one.degenerate
    assert one.bot == one.top == 0
    assert not chain_algebra(2).degenerate


def test_size_cap():
    with pytest.raises(BudgetExceededError):
        product(chain_algebra(64), chain_algebra(65))
