"""Finite bi-Heyting algebras with materialized operation tables.

An algebra is a value object: element indices 0..n-1, a read-only order
matrix, and four int16 tables (meet, join, imp, coimp). imp(a, b) is the
largest c with meet(a, c) <= b; coimp(a, b) is the smallest c with
a <= join(b, c). Negation and co-negation are derived: neg(a) =
imp(a, bot), coneg(a) = coimp(top, a).

from_lattice_order is the validating constructor (poset axioms, bounds,
meets/joins exist, distributivity, residuation); the structural
constructors (product, up-set algebras, quotients, free algebras) build
their tables directly and are checked against this path in the tests.

The one-element algebra is representable (degenerate flag) but refused by
the operations that exclude it.
"""

import json

import numpy as np

from .bitsets import members
from .errors import (
    BudgetExceededError,
    NotDistributiveError,
    NotLatticeError,
    ResiduationFailureError,
)
from .posets import Poset, require_valid

# int16 tables; 4 * 4096^2 cells is also the default table budget.
MAX_TABLE_ELEMS = 4096

_OP_NAMES = ("meet", "join", "imp", "coimp")


class BiHeytingAlgebra:
    def __init__(self, leq, bot, top, meet, join, imp, coimp, labels=None):
        leq = np.array(leq, dtype=bool)
        n = leq.shape[0]
        if n > MAX_TABLE_ELEMS:
            raise BudgetExceededError(
                f"algebra size {n} exceeds the table cap {MAX_TABLE_ELEMS}",
                spent=n,
                cap=MAX_TABLE_ELEMS,
            )
        tables = []
        for t in (meet, join, imp, coimp):
            arr = np.array(t, dtype=np.int16)
            if arr.shape != (n, n):
                raise ValueError(f"table shape {arr.shape} does not match size {n}")
            arr.setflags(write=False)
            tables.append(arr)
        leq.setflags(write=False)
        self.leq = leq
        self.size = n
        self.bot = int(bot)
        self.top = int(top)
        self.meet, self.join, self.imp, self.coimp = tables
        self.labels = tuple(labels) if labels is not None else None
        self._ops_stack = None

    @property
    def degenerate(self) -> bool:
        return self.size == 1

    def leq_(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    def neg(self, x: int) -> int:
        return int(self.imp[x, self.bot])

    def coneg(self, x: int) -> int:
        return int(self.coimp[self.top, x])

    def ops_stack(self) -> np.ndarray:
        """Stacked (4, n, n) int16 tables, C-contiguous, for the kernels."""
        if self._ops_stack is None:
            self._ops_stack = np.ascontiguousarray(
                np.stack([self.meet, self.join, self.imp, self.coimp])
            )
        return self._ops_stack

    def poset(self) -> Poset:
        return Poset(self.leq)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def to_json_dict(self) -> dict:
        return {
            "size": self.size,
            "leq": self.leq.tolist(),
            "bot": self.bot,
            "top": self.top,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "BiHeytingAlgebra":
        try:
            size = data["size"]
            leq = data["leq"]
            bot = data["bot"]
            top = data["top"]
        except (KeyError, TypeError) as exc:
            raise NotLatticeError(
                f"algebra JSON needs 'size', 'leq', 'bot', 'top': {exc}"
            ) from exc
        a = from_lattice_order(leq, bot=bot, top=top, labels=data.get("labels"))
        if a.size != size:
            raise NotLatticeError(f"declared size {size} but leq is {a.size}x{a.size}")
        return a

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def loads(cls, text: str) -> "BiHeytingAlgebra":
        return cls.from_json_dict(json.loads(text))

    def __eq__(self, other):
        # tables are derived from the order, so leq + bounds identify the algebra
        return (
            isinstance(other, BiHeytingAlgebra)
            and self.size == other.size
            and self.bot == other.bot
            and self.top == other.top
            and bool(np.array_equal(self.leq, other.leq))
        )

    def __hash__(self):
        return hash((self.size, self.bot, self.top, self.leq.tobytes()))

    def __repr__(self):
        tag = ", degenerate" if self.degenerate else ""
        return f"BiHeytingAlgebra(size={self.size}{tag})"


def _down_masks(leq, n):
    return [sum(1 << k for k in range(n) if leq[k, j]) for j in range(n)]


def _up_masks(leq, n):
    return [sum(1 << k for k in range(n) if leq[j, k]) for j in range(n)]


def _bound_of(masks, full, kind):
    found = [i for i, m in enumerate(masks) if m == full]
    if not found:
        raise NotLatticeError(f"no {kind} element")
    return found[0]


def _extremum(cands: int, dominates: list[int], kind: str, pair) -> int:
    """The member k of cands whose mask dominates all of cands, or raise."""
    t = cands
    while t:
        low = t & -t
        k = low.bit_length() - 1
        if cands & ~dominates[k] == 0:
            return k
        t ^= low
    raise NotLatticeError(f"no {kind} for pair {pair}")


def from_lattice_order(leq, bot=None, top=None, labels=None) -> BiHeytingAlgebra:
    """Validating constructor from an order matrix.

    Checks, in order: poset axioms, bounds, all meets/joins exist,
    distributivity, then derives imp/coimp and verifies both residuation
    laws on every triple before returning.
    """
    p = require_valid(Poset(leq))
    n = p.size
    mat = p.leq
    if n == 0:
        raise NotLatticeError("empty carrier")
    down = _down_masks(mat, n)
    up = _up_masks(mat, n)
    full = (1 << n) - 1

    found_bot = _bound_of(up, full, "bottom")
    found_top = _bound_of(down, full, "top")
    if bot is not None and int(bot) != found_bot:
        raise NotLatticeError(f"declared bot {bot} but least element is {found_bot}")
    if top is not None and int(top) != found_top:
        raise NotLatticeError(f"declared top {top} but greatest element is {found_top}")
    bot, top = found_bot, found_top

    meet = np.empty((n, n), dtype=np.int16)
    join = np.empty((n, n), dtype=np.int16)
    for i in range(n):
        for j in range(i, n):
            m = _extremum(down[i] & down[j], down, "meet", (i, j))
            v = _extremum(up[i] & up[j], up, "join", (i, j))
            meet[i, j] = meet[j, i] = m
            join[i, j] = join[j, i] = v

    # distributivity: meet(a, join(b,c)) == join(meet(a,b), meet(a,c))
    for a in range(n):
        lhs = meet[a][join]
        rhs = join[meet[a][:, None], meet[a][None, :]]
        if not np.array_equal(lhs, rhs):
            b, c = map(int, np.argwhere(lhs != rhs)[0])
            raise NotDistributiveError(f"distributivity fails at ({a}, {b}, {c})")

    imp = np.empty((n, n), dtype=np.int16)
    coimp = np.empty((n, n), dtype=np.int16)
    for a in range(n):
        for b in range(n):
            cands = 0
            for c in range(n):
                if mat[meet[a, c], b]:
                    cands |= 1 << c
            imp[a, b] = _residual(cands, down, (a, b), "imp")
            cands = 0
            for c in range(n):
                if mat[a, join[b, c]]:
                    cands |= 1 << c
            coimp[a, b] = _coresidual(cands, up, (a, b))

    alg = BiHeytingAlgebra(mat, bot, top, meet, join, imp, coimp, labels=labels)
    w = residuation_violation(alg)
    if w is not None:
        raise ResiduationFailureError(w)
    return alg


def _residual(cands: int, down, pair, kind) -> int:
    try:
        return _extremum(cands, down, kind, pair)
    except NotLatticeError as exc:
        raise ResiduationFailureError(f"no greatest residual for {pair}") from exc


def _coresidual(cands: int, up, pair) -> int:
    try:
        return _extremum(cands, up, "coimp", pair)
    except NotLatticeError as exc:
        raise ResiduationFailureError(f"no least co-residual for {pair}") from exc


def residuation_violation(a: BiHeytingAlgebra, sample: int | None = None, seed: int = 0):
    """First violated residuation instance as a string, or None.

    Exhaustive over all triples; pass sample to spot-check large algebras
    with a seeded random subset of left arguments instead.
    """
    n = a.size
    leq, meet, join, imp, coimp = a.leq, a.meet, a.join, a.imp, a.coimp
    if sample is None or sample >= n:
        rows = range(n)
    else:
        rows = sorted(np.random.default_rng(seed).choice(n, size=sample, replace=False))
    for x in rows:
        # meet(x, c) <= b  iff  c <= imp(x, b)
        lhs = leq[meet[x]]
        rhs = leq[:, imp[x]]
        if not np.array_equal(lhs, rhs):
            c, b = map(int, np.argwhere(lhs != rhs)[0])
            return f"residuation fails at x={x}, b={b}, c={c}"
        # x <= join(b, c)  iff  coimp(x, b) <= c
        lhs = leq[x, join]
        rhs = leq[coimp[x]]
        if not np.array_equal(lhs, rhs):
            b, c = map(int, np.argwhere(lhs != rhs)[0])
            return f"co-residuation fails at x={x}, b={b}, c={c}"
    return None


def chain_algebra(n: int) -> BiHeytingAlgebra:
    """The n-element chain; needs n >= 2."""
    if n < 2:
        raise ValueError(f"chain algebra needs n >= 2, got {n}")
    if n == 2:
        labels = ["0", "1"]
    else:
        interior = [chr(ord("a") + i) if i < 26 else f"m{i}" for i in range(n - 2)]
        labels = ["0", *interior, "1"]
    return from_lattice_order(np.triu(np.ones((n, n), dtype=bool)), labels=labels)


def _flat(label: str) -> str:
    return label[1:-1] if label.startswith("(") and label.endswith(")") else label


def product(a: BiHeytingAlgebra, b: BiHeytingAlgebra) -> BiHeytingAlgebra:
    """Direct product; index (i, j) -> i * |b| + j (a-index major)."""
    na, nb = a.size, b.size
    if na * nb > MAX_TABLE_ELEMS:
        raise BudgetExceededError(
            f"product size {na * nb} exceeds the table cap {MAX_TABLE_ELEMS}",
            spent=na * nb,
            cap=MAX_TABLE_ELEMS,
        )
    leq = np.kron(a.leq.astype(np.uint8), b.leq.astype(np.uint8)).astype(bool)

    def combine(ta, tb):
        return (
            ta.astype(np.int32)[:, None, :, None] * nb + tb.astype(np.int32)[None, :, None, :]
        ).reshape(na * nb, na * nb).astype(np.int16)

    labels = None
    if a.labels is not None and b.labels is not None:
        labels = [
            f"({_flat(la)},{_flat(lb)})" for la in a.labels for lb in b.labels
        ]
    return BiHeytingAlgebra(
        leq,
        a.bot * nb + b.bot,
        a.top * nb + b.top,
        combine(a.meet, b.meet),
        combine(a.join, b.join),
        combine(a.imp, b.imp),
        combine(a.coimp, b.coimp),
        labels=labels,
    )


def is_boolean(a: BiHeytingAlgebra) -> bool:
    """Every element has a complement: join(x, neg(x)) = top suffices here."""
    idx = np.arange(a.size)
    return bool((a.join[idx, a.imp[idx, a.bot]] == a.top).all())


def is_chain(a: BiHeytingAlgebra) -> bool:
    return bool((a.leq | a.leq.T).all())


def subset_algebra(a: BiHeytingAlgebra, mask: int) -> tuple[BiHeytingAlgebra, tuple[int, ...]]:
    """The algebra carried by a subuniverse mask, re-indexed ascending.

    The mask must be closed under the operations and contain the bounds;
    use morphisms.generated_subalgebra to produce one. Returns the algebra
    and the member tuple (new index -> old index).
    """
    if not (mask >> a.bot) & 1 or not (mask >> a.top) & 1:
        raise ValueError("subuniverse mask must contain bot and top")
    elems = members(mask)
    pos = {e: i for i, e in enumerate(elems)}
    idx = np.array(elems)
    leq = a.leq[np.ix_(idx, idx)]
    tables = []
    for t in (a.meet, a.join, a.imp, a.coimp):
        sub = t[np.ix_(idx, idx)]
        if not np.isin(sub, idx).all():
            raise ValueError(f"mask {mask:#x} is not closed under the operations")
        tables.append(np.vectorize(pos.__getitem__, otypes=[np.int16])(sub))
    labels = [a.label(e) for e in elems] if a.labels else None
    return (
        BiHeytingAlgebra(leq, pos[a.bot], pos[a.top], *tables, labels=labels),
        elems,
    )
