"""Finite posets over elements 0..n-1.

Conventions
-----------
- The order is a dense boolean matrix `leq`, leq[i, j] meaning i <= j.
  It is stored read-only; posets are value objects.
- Element sets travel as int bitmasks (see bitsets). Set lists are
  returned in canonical order: cardinality first, then lexicographically
  by sorted member indices.
- Constructors accept arbitrary square boolean matrices so that
  validate_poset can report violations; every other operation assumes a
  valid poset.
"""

import itertools
import json
from functools import cached_property

import numpy as np

from . import _kernels as kernels
from .bitsets import canonical_mask_order, members
from .budgets import POSET_ENUM_MAX_DEFAULT, UPSET_SIZE_MAX
from .errors import BudgetExceededError, InvalidPosetError


class Poset:
    def __init__(self, leq):
        arr = np.array(leq, dtype=bool)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidPosetError(f"leq must be square, got shape {arr.shape}")
        arr.setflags(write=False)
        self.leq = arr
        self.size = arr.shape[0]

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls(np.triu(np.ones((n, n), dtype=bool)))

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls(np.eye(n, dtype=bool))

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        """up_masks[i] = bitmask of {j : i <= j}."""
        return tuple(_row_mask(self.leq[i]) for i in range(self.size))

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        return tuple(_row_mask(self.leq[:, i]) for i in range(self.size))

    def to_json_dict(self) -> dict:
        return {"size": self.size, "leq": self.leq.tolist()}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Poset":
        try:
            size = data["size"]
            leq = data["leq"]
        except (KeyError, TypeError) as exc:
            raise InvalidPosetError(f"poset JSON needs 'size' and 'leq': {exc}") from exc
        p = cls(leq)
        if p.size != size:
            raise InvalidPosetError(f"declared size {size} but leq is {p.size}x{p.size}")
        return p

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def loads(cls, text: str) -> "Poset":
        return cls.from_json_dict(json.loads(text))

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.size == other.size
            and bool(np.array_equal(self.leq, other.leq))
        )

    def __hash__(self):
        return hash((self.size, self.leq.tobytes()))

    def __repr__(self):
        return f"Poset(size={self.size})"


def _row_mask(row) -> int:
    m = 0
    for j in np.flatnonzero(row):
        m |= 1 << int(j)
    return m


def validate_poset(p: Poset) -> str | None:
    """None if p is a poset, else a description of the first violated axiom.

    Scan order is fixed (reflexivity, antisymmetry, transitivity; ascending
    witnesses) so the report is deterministic.
    """
    leq = p.leq
    n = p.size
    for i in range(n):
        if not leq[i, i]:
            return f"not reflexive at {i}"
    for i in range(n):
        for j in range(i + 1, n):
            if leq[i, j] and leq[j, i]:
                return f"antisymmetry violated at ({i}, {j})"
    for i, j, k in itertools.product(range(n), repeat=3):
        if leq[i, j] and leq[j, k] and not leq[i, k]:
            return f"transitivity violated at ({i}, {j}, {k})"
    return None


def require_valid(p: Poset) -> Poset:
    verdict = validate_poset(p)
    if verdict is not None:
        raise InvalidPosetError(verdict)
    return p


def up_closure(p: Poset, s: int) -> int:
    out = 0
    for i in members(s):
        out |= p.up_masks[i]
    return out


def down_closure(p: Poset, s: int) -> int:
    out = 0
    for i in members(s):
        out |= p.down_masks[i]
    return out


def is_upset(p: Poset, s: int) -> bool:
    return up_closure(p, s) == s


def upsets(p: Poset) -> list[int]:
    """All up-closed subsets as bitmasks, in canonical set order."""
    n = p.size
    if n > UPSET_SIZE_MAX:
        raise BudgetExceededError(
            f"upset enumeration capped at poset size {UPSET_SIZE_MAX}, got {n}",
            spent=n,
            cap=UPSET_SIZE_MAX,
        )
    ups = p.up_masks
    found = []
    for s in range(1 << n):
        t = s
        ok = True
        while t:
            low = t & -t
            if ups[low.bit_length() - 1] & ~s:
                ok = False
                break
            t ^= low
        if ok:
            found.append(s)
    return canonical_mask_order(found)


def disjoint_union(p: Poset, q: Poset) -> Poset:
    """p then q on a shared carrier, no cross relations."""
    n, m = p.size, q.size
    leq = np.zeros((n + m, n + m), dtype=bool)
    leq[:n, :n] = p.leq
    leq[n:, n:] = q.leq
    return Poset(leq)


def poset_isomorphic(p: Poset, q: Poset) -> tuple[int, ...] | None:
    """An order-isomorphism p -> q as an image tuple, or None.

    Deterministic: backtracking in element order with ascending candidate
    images returns the lexicographically least isomorphism.
    """
    n = p.size
    if n != q.size:
        return None
    p_profile = sorted((int(p.leq[i].sum()), int(p.leq[:, i].sum())) for i in range(n))
    q_profile = sorted((int(q.leq[i].sum()), int(q.leq[:, i].sum())) for i in range(n))
    if p_profile != q_profile:
        return None

    image = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for v in range(n):
            if used[v]:
                continue
            ok = True
            for j in range(i):
                w = image[j]
                if (
                    p.leq[i, j] != q.leq[v, w]
                    or p.leq[j, i] != q.leq[w, v]
                ):
                    ok = False
                    break
            if ok:
                image[i] = v
                used[v] = True
                if extend(i + 1):
                    return True
                image[i] = -1
                used[v] = False
        return False

    return tuple(image) if extend(0) else None


def enumerate_posets(n: int, *, max_n: int | None = None) -> list[Poset]:
    """All posets on n elements, one per isomorphism class.

    Canonical form: the lexicographically minimal leq matrix (row-major
    bitstring) over all relabelings; the list is sorted by that form.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    cap = POSET_ENUM_MAX_DEFAULT if max_n is None else max_n
    if n > cap:
        raise BudgetExceededError(
            f"poset enumeration capped at n = {cap}, got {n}", spent=n, cap=cap
        )
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    keys = kernels.poset_enum_keys(n, perms)
    return [Poset(unpack_key(int(k), n)) for k in keys]


def pack_key(leq, n: int) -> int:
    """Row-major bitstring of the matrix; bit (0,0) most significant."""
    key = 0
    for i in range(n):
        for j in range(n):
            key = (key << 1) | int(bool(leq[i][j]))
    return key


def unpack_key(key: int, n: int):
    leq = np.zeros((n, n), dtype=bool)
    for pos in range(n * n):
        if (key >> (n * n - 1 - pos)) & 1:
            leq[pos // n, pos % n] = True
    return leq


def hasse_edges(p: Poset) -> list[tuple[int, int]]:
    """Cover pairs (i, j): i < j with nothing strictly between."""
    n = p.size
    leq = p.leq
    edges = []
    for i in range(n):
        for j in range(n):
            if i == j or not leq[i, j]:
                continue
            if any(leq[i, k] and leq[k, j] for k in range(n) if k != i and k != j):
                continue
            edges.append((i, j))
    return edges


def to_dot(p: Poset, labels=None) -> str:
    """Hasse diagram (transitive reduction) as a bottom-to-top DOT digraph."""
    if labels is None:
        labels = [str(i) for i in range(p.size)]
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for i in range(p.size):
        lines.append(f'  n{i} [label="{labels[i]}"];')
    for i, j in hasse_edges(p):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines)
