"""Resource caps for the search-shaped operations.

A single node budget covers backtracking searches and assignment
enumerations; the free-algebra constructor has two cell budgets of its
own (ambient product size and materialized table size). The node budget
default can be overridden with the BIHEYT_BUDGET environment variable,
read at call time so tests and the CLI can adjust it per invocation.
"""

import os

from .errors import BudgetExceededError

NODE_BUDGET_DEFAULT = 20_000_000
FREE_CELL_BUDGET_DEFAULT = 2**24  # ambient carrier size * coordinate count
TABLE_CELL_BUDGET_DEFAULT = 2**26  # 4 * N^2 for a materialized N-element algebra
POSET_ENUM_MAX_DEFAULT = 6
UPSET_SIZE_MAX = 24
SUBALGEBRA_SIZE_MAX_DEFAULT = 128


def default_node_budget() -> int:
    raw = os.environ.get("BIHEYT_BUDGET")
    if raw is None:
        return NODE_BUDGET_DEFAULT
    try:
        value = int(raw)
    except ValueError as exc:
        raise BudgetExceededError(f"BIHEYT_BUDGET is not an integer: {raw!r}") from exc
    if value <= 0:
        raise BudgetExceededError(f"BIHEYT_BUDGET must be positive, got {value}")
    return value


def resolve_node_budget(node_budget: int | None) -> int:
    return default_node_budget() if node_budget is None else node_budget
