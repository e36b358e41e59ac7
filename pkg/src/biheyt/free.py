"""Finitely generated free algebras over a finite set of finite algebras.

An element of the free algebra on x1..xn over algebras A1..Am is the
vector of its values under every assignment of the variables into every
Ai, so the carrier lives inside the product of one copy of Ai per
assignment. We close {bot, top, x1, .., xn} under the four operations
pointwise; operations and order on the result are again pointwise.

Coordinates are ordered by (generating algebra index, assignment), with
assignments enumerated x1-most-significant. Elements are numbered in
discovery order: the seed vectors first (bot, top, then the variable
projections), then each closure round's products, scanning meet, join,
imp, coimp, left argument index ascending, right ascending.
"""

import itertools
from dataclasses import dataclass
from math import prod

import numpy as np

from . import _kernels as kernels
from .algebras import BiHeytingAlgebra
from .budgets import FREE_CELL_BUDGET_DEFAULT, TABLE_CELL_BUDGET_DEFAULT
from .errors import BudgetExceededError

_CODE_BITS_MAX = 62


@dataclass(frozen=True)
class FreeAlgebraResult:
    algebra: BiHeytingAlgebra
    generators: tuple[int, ...]  # carrier indices of x1..xn
    coordinates: tuple[tuple[int, tuple[int, ...]], ...]
    vectors: np.ndarray  # (size, n_coords) uint8, row = element as a vector
    generating_algebras: tuple[BiHeytingAlgebra, ...]


def free_algebra(
    generating_algebras,
    n_vars: int,
    *,
    free_cell_budget: int | None = None,
    table_cell_budget: int | None = None,
) -> FreeAlgebraResult:
    gens = tuple(generating_algebras)
    if not gens:
        raise ValueError("need at least one generating algebra")
    if n_vars < 0:
        raise ValueError("n_vars must be nonnegative")
    cell_budget = FREE_CELL_BUDGET_DEFAULT if free_cell_budget is None else free_cell_budget
    tbl_budget = TABLE_CELL_BUDGET_DEFAULT if table_cell_budget is None else table_cell_budget

    coords: list[tuple[int, tuple[int, ...]]] = []
    for g, a in enumerate(gens):
        if a.size > 255:
            raise BudgetExceededError(
                "factor algebras above 255 elements do not fit the packed layout",
                spent=a.size,
                cap=255,
            )
        for assignment in itertools.product(range(a.size), repeat=n_vars):
            coords.append((g, assignment))
    k = len(coords)
    sizes = np.array([gens[g].size for g, _ in coords], dtype=np.int64)
    if prod(int(s) for s in sizes) > 1 << _CODE_BITS_MAX:
        raise BudgetExceededError(
            "coordinate space too wide to pack element codes into 63 bits",
            cap=1 << _CODE_BITS_MAX,
        )

    smax = int(sizes.max())
    tables4 = np.zeros((4, k, smax, smax), dtype=np.uint8)
    leq_pc = np.zeros((k, smax, smax), dtype=np.uint8)
    for c, (g, _) in enumerate(coords):
        a = gens[g]
        tables4[:, c, : a.size, : a.size] = a.ops_stack()
        leq_pc[c, : a.size, : a.size] = a.leq

    init = np.zeros((2 + n_vars, k), dtype=np.uint8)
    for c, (g, assignment) in enumerate(coords):
        a = gens[g]
        init[0, c] = a.bot
        init[1, c] = a.top
        for v in range(n_vars):
            init[2 + v, c] = assignment[v]

    max_elems = cell_budget // max(k, 1)
    elems, exceeded = kernels.free_closure(tables4, sizes, init, max_elems)
    if exceeded:
        raise BudgetExceededError(
            f"free algebra closure passed {max_elems} elements "
            f"({k} coordinates each)",
            spent=(len(elems) + 1) * k,
            cap=cell_budget,
        )
    n = len(elems)
    if 4 * n * n > tbl_budget:
        raise BudgetExceededError(
            f"operation tables for {n} elements need {4 * n * n} cells",
            spent=4 * n * n,
            cap=tbl_budget,
        )
    leq, ops = kernels.free_tables(elems, tables4, leq_pc, sizes)

    weights = _weights(sizes)
    codes = elems.astype(np.int64) @ weights
    where = {int(c): i for i, c in enumerate(codes)}
    bot = where[int(init[0].astype(np.int64) @ weights)]
    top = where[int(init[1].astype(np.int64) @ weights)]
    generators = tuple(
        where[int(init[2 + v].astype(np.int64) @ weights)] for v in range(n_vars)
    )
    vectors = elems.copy()
    vectors.setflags(write=False)
    algebra = BiHeytingAlgebra(leq.astype(bool), bot, top, *ops)
    return FreeAlgebraResult(algebra, generators, tuple(coords), vectors, gens)


def _weights(sizes: np.ndarray) -> np.ndarray:
    w = np.ones(len(sizes), dtype=np.int64)
    for i in range(len(sizes) - 2, -1, -1):
        w[i] = w[i + 1] * sizes[i + 1]
    return w


def element_vector(result: FreeAlgebraResult, x: int) -> tuple[int, ...]:
    """Value of carrier element x at every coordinate."""
    return tuple(int(v) for v in result.vectors[x])
