"""Compare the compiled kernels against the pure Python reference.

Run as: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import itertools
import time

import numpy as np

import biheyt._kernels_py as ref
from biheyt.algebras import chain_algebra, product
from biheyt.free import free_algebra

try:
    import biheyt._kernels_cy as cy
except ImportError:
    cy = None


def bench(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def hom_case():
    f1 = free_algebra([chain_algebra(3)], 1).algebra
    left = product(chain_algebra(3), f1)
    args = (
        left.ops_stack(), f1.ops_stack(),
        left.bot, left.top, f1.bot, f1.top,
        False, -1, 10**9,
    )
    return "homs 3xF(1) -> F(1)", args


def free_case():
    g = chain_algebra(3)
    k = 9
    s = g.size
    tables4 = np.zeros((4, k, s, s), dtype=np.uint8)
    leq_pc = np.zeros((k, s, s), dtype=np.uint8)
    sizes = np.full(k, s, dtype=np.int64)
    tables4[:, :] = g.ops_stack()[:, None]
    leq_pc[:] = g.leq
    assignments = list(itertools.product(range(s), repeat=2))
    init = [
        np.full(k, g.bot, dtype=np.uint8),
        np.full(k, g.top, dtype=np.uint8),
        np.array([a[0] for a in assignments], dtype=np.uint8),
        np.array([a[1] for a in assignments], dtype=np.uint8),
    ]
    return tables4, leq_pc, sizes, np.array(init, dtype=np.uint8)


def congruence_case():
    big = product(product(chain_algebra(4), chain_algebra(3)), chain_algebra(3))
    return big.ops_stack(), [(0, 5), (11, 17)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=3)
    opts = ap.parse_args()

    if cy is None:
        print("compiled kernels are not available; showing reference timings only")

    rows = []

    name, args = hom_case()
    t_py, out_py = bench(lambda: ref.find_homs(*args), opts.repeats)
    t_cy = out_cy = None
    if cy:
        t_cy, out_cy = bench(lambda: cy.find_homs(*args), opts.repeats)
        assert out_cy == out_py
    rows.append((name, t_py, t_cy))

    tables4, leq_pc, sizes, init = free_case()

    def run_free(mod):
        elems, exceeded = mod.free_closure(tables4, sizes, init, 10**6)
        assert not exceeded
        return mod.free_tables(elems, tables4, leq_pc, sizes)

    t_py, out_py = bench(lambda: run_free(ref), opts.repeats)
    if cy:
        t_cy, out_cy = bench(lambda: run_free(cy), opts.repeats)
        assert np.array_equal(out_cy[0], out_py[0])
        assert np.array_equal(out_cy[1], out_py[1])
    rows.append(("free closure+tables, two vars over 3", t_py, t_cy))

    perms = np.array(list(itertools.permutations(range(5))), dtype=np.int64)
    t_py, out_py = bench(lambda: ref.poset_enum_keys(5, perms), opts.repeats)
    if cy:
        t_cy, out_cy = bench(lambda: cy.poset_enum_keys(5, perms), opts.repeats)
        assert np.array_equal(out_cy, out_py)
    rows.append(("poset isomorphism classes, 5 points", t_py, t_cy))

    ops, pairs = congruence_case()
    t_py, out_py = bench(lambda: ref.congruence_closure(ops, pairs), opts.repeats * 10)
    if cy:
        t_cy, out_cy = bench(lambda: cy.congruence_closure(ops, pairs), opts.repeats * 10)
        assert np.array_equal(out_cy, out_py)
    rows.append(("congruence closure on a 36 element product", t_py, t_cy))

    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'python':>9}  {'cython':>9}  {'speedup':>7}")
    for name, t_py, t_cy in rows:
        if t_cy is None:
            print(f"{name:<{width}}  {t_py:>8.3f}s  {'-':>9}  {'-':>7}")
        else:
            print(f"{name:<{width}}  {t_py:>8.3f}s  {t_cy:>8.3f}s  {t_py / t_cy:>6.1f}x")


if __name__ == "__main__":
    main()
