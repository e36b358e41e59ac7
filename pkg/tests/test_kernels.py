"""The compiled kernels must agree with the reference implementation
bit for bit, result ordering included."""

import itertools

import numpy as np
import pytest

import biheyt._kernels_py as ref
from biheyt.algebras import chain_algebra, product
from biheyt.free import free_algebra

cy = pytest.importorskip(
    "biheyt._kernels_cy", reason="compiled kernels are not built"
)


def stacks(a):
    return a.ops_stack(), a.bot, a.top


HOM_CASES = [
    (chain_algebra(2), chain_algebra(3)),
    (chain_algebra(3), chain_algebra(3)),
    (chain_algebra(3), chain_algebra(2)),
    (product(chain_algebra(2), chain_algebra(2)), product(chain_algebra(2), chain_algebra(2))),
    (chain_algebra(3), product(chain_algebra(3), chain_algebra(2))),
    (product(chain_algebra(3), chain_algebra(2)), chain_algebra(3)),
]


@pytest.mark.parametrize("case", range(len(HOM_CASES)))
@pytest.mark.parametrize("injective", [False, True])
def test_find_homs_parity(case, injective):
    a, b = HOM_CASES[case]
    ops_a, bot_a, top_a = stacks(a)
    ops_b, bot_b, top_b = stacks(b)
    args = (ops_a, ops_b, bot_a, top_a, bot_b, top_b, injective)
    expected = ref.find_homs(*args, -1, 10**9)
    got = cy.find_homs(*args, -1, 10**9)
    assert got == expected


def test_find_homs_limit_and_budget_parity():
    sq = product(chain_algebra(2), chain_algebra(2))
    ops, bot, top = stacks(sq)
    for limit in (1, 2, -1):
        assert cy.find_homs(ops, ops, bot, top, bot, top, False, limit, 10**9) == \
            ref.find_homs(ops, ops, bot, top, bot, top, False, limit, 10**9)
    for budget in (1, 3, 7):
        got = cy.find_homs(ops, ops, bot, top, bot, top, False, -1, budget)
        expected = ref.find_homs(ops, ops, bot, top, bot, top, False, -1, budget)
        assert got == expected
        assert got[2]  # exceeded


def test_close_subset_parity():
    rng = np.random.default_rng(7)
    for a in (chain_algebra(5), product(chain_algebra(3), chain_algebra(3))):
        ops = a.ops_stack()
        for _ in range(20):
            seed = (rng.random(a.size) < 0.3).astype(np.uint8)
            got = cy.close_subset(ops, seed, a.bot, a.top)
            expected = ref.close_subset(ops, seed, a.bot, a.top)
            assert np.array_equal(got, expected)


def test_congruence_closure_parity():
    big = product(product(chain_algebra(3), chain_algebra(2)), chain_algebra(2))
    ops = big.ops_stack()
    pairs_list = [[(0, 1)], [(2, 5)], [(0, 1), (4, 9)], []]
    for pairs in pairs_list:
        got = cy.congruence_closure(ops, pairs)
        expected = ref.congruence_closure(ops, pairs)
        assert np.array_equal(got, expected)


def _free_inputs(gens, n_vars):
    # mirror the packing free_algebra performs, without the budget caps
    import itertools as it

    coords = []
    for gi, g in enumerate(gens):
        for assignment in it.product(*(range(g.size) for _ in range(n_vars))):
            coords.append((gi, assignment))
    k = len(coords)
    smax = max(g.size for g in gens)
    tables4 = np.zeros((4, k, smax, smax), dtype=np.uint8)
    leq_pc = np.zeros((k, smax, smax), dtype=np.uint8)
    sizes = np.zeros(k, dtype=np.int64)
    for ci, (gi, _) in enumerate(coords):
        g = gens[gi]
        s = g.size
        sizes[ci] = s
        tables4[:, ci, :s, :s] = g.ops_stack()
        leq_pc[ci, :s, :s] = g.leq
    bot_row = np.array([gens[gi].bot for gi, _ in coords], dtype=np.uint8)
    top_row = np.array([gens[gi].top for gi, _ in coords], dtype=np.uint8)
    init = [bot_row, top_row]
    for v in range(n_vars):
        init.append(np.array([a[v] for _, a in coords], dtype=np.uint8))
    return tables4, leq_pc, sizes, np.array(init, dtype=np.uint8)


FREE_CASES = [
    ([3], 1),
    ([2, 2], 2),
    ([3], 2),
]


@pytest.mark.parametrize("case", range(len(FREE_CASES)))
def test_free_closure_and_tables_parity(case):
    chain_sizes, n_vars = FREE_CASES[case]
    gens = [chain_algebra(n) for n in chain_sizes]
    tables4, leq_pc, sizes, init = _free_inputs(gens, n_vars)
    got_elems, got_exc = cy.free_closure(tables4, sizes, init, 10**6)
    exp_elems, exp_exc = ref.free_closure(tables4, sizes, init, 10**6)
    assert got_exc == exp_exc is False
    assert np.array_equal(got_elems, exp_elems)
    got_leq, got_ops = cy.free_tables(got_elems, tables4, leq_pc, sizes)
    exp_leq, exp_ops = ref.free_tables(exp_elems, tables4, leq_pc, sizes)
    assert np.array_equal(got_leq, exp_leq)
    assert np.array_equal(got_ops, exp_ops)


def test_free_closure_exceeded_parity():
    gens = [chain_algebra(3)]
    tables4, leq_pc, sizes, init = _free_inputs(gens, 1)
    got_elems, got_exc = cy.free_closure(tables4, sizes, init, 5)
    exp_elems, exp_exc = ref.free_closure(tables4, sizes, init, 5)
    assert got_exc and exp_exc
    assert np.array_equal(got_elems, exp_elems)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_poset_enum_keys_parity(n):
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    got = cy.poset_enum_keys(n, perms)
    expected = ref.poset_enum_keys(n, perms)
    assert np.array_equal(got, expected)


def test_free_algebra_same_under_forced_fallback(monkeypatch):
    from biheyt import _kernels

    r_fast = free_algebra([chain_algebra(3)], 1)
    monkeypatch.setattr(_kernels, "free_closure", ref.free_closure)
    monkeypatch.setattr(_kernels, "free_tables", ref.free_tables)
    r_slow = free_algebra([chain_algebra(3)], 1)
    assert r_fast.algebra == r_slow.algebra
    assert np.array_equal(r_fast.vectors, r_slow.vectors)
