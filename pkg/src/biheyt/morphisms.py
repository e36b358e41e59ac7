"""Structure-preserving maps and quotient machinery.

Homomorphisms preserve bot, top, and all four operations. Searches are
backtracking with forced-image propagation (bot/top first, then elements
in index order, candidate images ascending), so result lists come out in
lexicographic order of the image tuple and "first found" is well-defined.
A blown node budget raises BudgetExceededError; an exhausted search that
found nothing returns an empty list. Congruences are partitions stored as
block-id-per-element, blocks numbered by least member.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as kernels
from .algebras import BiHeytingAlgebra, subset_algebra
from .bitsets import canonical_mask_order, mask_of, members
from .budgets import SUBALGEBRA_SIZE_MAX_DEFAULT, resolve_node_budget
from .errors import (
    BudgetExceededError,
    DegenerateAlgebraError,
    InvalidCongruenceError,
)

_OPS = ("meet", "join", "imp", "coimp")


@dataclass(frozen=True)
class Morphism:
    source: BiHeytingAlgebra
    target: BiHeytingAlgebra
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def verify(self) -> str | None:
        """None if this is a homomorphism, else the first violation."""
        a, b, h = self.source, self.target, self.map
        if len(h) != a.size:
            return f"map has {len(h)} entries for a {a.size}-element source"
        if any(not 0 <= v < b.size for v in h):
            return "map image out of range"
        if h[a.bot] != b.bot:
            return f"bot maps to {h[a.bot]}, not {b.bot}"
        if h[a.top] != b.top:
            return f"top maps to {h[a.top]}, not {b.top}"
        hm = np.asarray(h, dtype=np.int16)
        for name in _OPS:
            ta = getattr(a, name)
            tb = getattr(b, name)
            lhs = hm[ta]
            rhs = tb[hm[:, None], hm[None, :]]
            if not np.array_equal(lhs, rhs):
                x, y = map(int, np.argwhere(lhs != rhs)[0])
                return f"{name}({x}, {y}) not preserved"
        return None

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.size

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def __repr__(self):
        return f"Morphism({self.source.size}->{self.target.size}, {list(self.map)})"


def _search(a, b, *, injective, limit, node_budget):
    budget = resolve_node_budget(node_budget)
    maps, nodes, exceeded = kernels.find_homs(
        a.ops_stack(),
        b.ops_stack(),
        a.bot,
        a.top,
        b.bot,
        b.top,
        injective,
        -1 if limit is None else limit,
        budget,
    )
    if exceeded:
        raise BudgetExceededError(
            f"homomorphism search stopped after {nodes} nodes",
            spent=nodes,
            cap=budget,
        )
    return [Morphism(a, b, m) for m in maps]


def homomorphisms(a, b, *, limit=None, node_budget=None) -> list[Morphism]:
    """All homomorphisms a -> b, lexicographic by image tuple."""
    return _search(a, b, injective=False, limit=limit, node_budget=node_budget)


def embeddings(a, b, *, limit=None, node_budget=None) -> list[Morphism]:
    """All injective homomorphisms a -> b, lexicographic by image tuple."""
    return _search(a, b, injective=True, limit=limit, node_budget=node_budget)


def is_isomorphic(a, b, *, node_budget=None) -> Morphism | None:
    """First isomorphism a -> b if any (sizes equal + injective suffices)."""
    if a.size != b.size:
        return None
    found = embeddings(a, b, limit=1, node_budget=node_budget)
    return found[0] if found else None


def generated_subalgebra(a: BiHeytingAlgebra, seed) -> int:
    """Mask of the subuniverse generated by seed (mask or iterable of indices).

    Always contains bot and top.
    """
    mask = seed if isinstance(seed, int) else mask_of(seed)
    flags = np.zeros(a.size, dtype=np.uint8)
    for i in members(mask):
        flags[i] = 1
    closed = kernels.close_subset(a.ops_stack(), flags, a.bot, a.top)
    return mask_of(int(i) for i in np.flatnonzero(closed))


def subalgebras(a: BiHeytingAlgebra, *, size_cap: int | None = None) -> list[int]:
    """All subuniverse masks, in canonical set order.

    BFS over closed sets: extend each known subuniverse by one element and
    re-close. The algebra size is capped (subuniverse counts explode).
    """
    cap = SUBALGEBRA_SIZE_MAX_DEFAULT if size_cap is None else size_cap
    if a.size > cap:
        raise BudgetExceededError(
            f"subalgebra enumeration capped at size {cap}, got {a.size}",
            spent=a.size,
            cap=cap,
        )
    start = generated_subalgebra(a, 0)
    found = {start}
    queue = [start]
    while queue:
        s = queue.pop()
        for e in range(a.size):
            if (s >> e) & 1:
                continue
            t = generated_subalgebra(a, s | (1 << e))
            if t not in found:
                found.add(t)
                queue.append(t)
    return canonical_mask_order(found)


@dataclass(frozen=True)
class Congruence:
    algebra: BiHeytingAlgebra
    parts: tuple[int, ...]  # block id per element, blocks numbered by least member
    n_blocks: int = field(default=0)

    @classmethod
    def from_parts(cls, algebra, parts) -> "Congruence":
        ids: dict[int, int] = {}
        canon = []
        for p in parts:
            if p not in ids:
                ids[p] = len(ids)
            canon.append(ids[p])
        return cls(algebra, tuple(canon), len(ids))

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n_blocks)]
        for e, p in enumerate(self.parts):
            out[p].append(e)
        return tuple(tuple(b) for b in out)

    def is_identity(self) -> bool:
        return self.n_blocks == self.algebra.size

    def is_total(self) -> bool:
        return self.n_blocks == 1

    def verify(self) -> str | None:
        """None if compatible with all four operations, else first violation."""
        a = self.algebra
        parts = np.asarray(self.parts, dtype=np.int16)
        if len(parts) != a.size:
            return f"{len(parts)} entries for a {a.size}-element algebra"
        for name in _OPS:
            t = getattr(a, name)
            tp = parts[t]
            for blk in self.blocks():
                x = blk[0]
                for y in blk[1:]:
                    if not np.array_equal(tp[x], tp[y]):
                        z = int(np.argwhere(tp[x] != tp[y])[0][0])
                        return f"{name}({x}, {z}) vs {name}({y}, {z}) split blocks"
                    if not np.array_equal(tp[:, x], tp[:, y]):
                        z = int(np.argwhere(tp[:, x] != tp[:, y])[0][0])
                        return f"{name}({z}, {x}) vs {name}({z}, {y}) split blocks"
        return None

    def meet_with(self, other: "Congruence") -> "Congruence":
        """Common refinement (intersection as relations)."""
        return Congruence.from_parts(self.algebra, list(zip(self.parts, other.parts)))


def congruence_generated(a: BiHeytingAlgebra, pairs) -> Congruence:
    """Least congruence collapsing every pair (worklist closure under the
    unary operation translations)."""
    arr = np.array([(int(x), int(y)) for x, y in pairs], dtype=np.int64).reshape(-1, 2)
    parts = kernels.congruence_closure(a.ops_stack(), arr)
    return Congruence.from_parts(a, (int(p) for p in parts))


def principal_congruence_parts(a: BiHeytingAlgebra) -> dict[tuple[int, int], tuple[int, ...]]:
    """parts arrays of cg(x, y) for every pair x < y (ascending pair order)."""
    out = {}
    for x in range(a.size):
        for y in range(x + 1, a.size):
            out[(x, y)] = tuple(
                int(p) for p in kernels.congruence_closure(
                    a.ops_stack(), np.array([[x, y]], dtype=np.int64)
                )
            )
    return out


def is_subdirectly_irreducible(a: BiHeytingAlgebra) -> tuple[bool, Congruence | None]:
    """(True, monolith) when the intersection of all principal congruences
    is nontrivial; (False, None) otherwise. Degenerate algebras are refused.
    """
    if a.degenerate:
        raise DegenerateAlgebraError("subdirect irreducibility is undefined for size 1")
    keys = [[] for _ in range(a.size)]
    for parts in principal_congruence_parts(a).values():
        for e in range(a.size):
            keys[e].append(parts[e])
    meet = Congruence.from_parts(a, [tuple(k) for k in keys])
    if meet.is_identity():
        return False, None
    return True, meet


def quotient(a: BiHeytingAlgebra, c: Congruence) -> BiHeytingAlgebra:
    """a / c with blocks ordered by least member; refuses bad partitions."""
    if c.algebra is not a and c.algebra != a:
        raise InvalidCongruenceError("congruence belongs to a different algebra")
    problem = c.verify()
    if problem is not None:
        raise InvalidCongruenceError(problem)
    parts = np.asarray(c.parts, dtype=np.int16)
    reps = [blk[0] for blk in c.blocks()]
    idx = np.array(reps)
    tables = [parts[getattr(a, name)[np.ix_(idx, idx)]] for name in _OPS]
    meet_q = tables[0]
    m = c.n_blocks
    leq = meet_q == np.arange(m, dtype=np.int16)[:, None]
    labels = None
    if a.labels is not None:
        labels = ["{" + ",".join(a.label(e) for e in blk) + "}" for blk in c.blocks()]
    return BiHeytingAlgebra(
        leq, int(parts[a.bot]), int(parts[a.top]), *tables, labels=labels
    )


@dataclass(frozen=True)
class PowerEmbedding:
    embeds: bool
    separators: dict[tuple[int, int], Morphism]
    failed_pair: tuple[int, int] | None
    hom_count: int

    def distinct_homs(self) -> list[Morphism]:
        seen = set()
        out = []
        for h in self.separators.values():
            if h.map not in seen:
                seen.add(h.map)
                out.append(h)
        return out


def embeds_in_power(b: BiHeytingAlgebra, f: BiHeytingAlgebra, *, node_budget=None) -> PowerEmbedding:
    """Does b embed into some finite power of f?

    Finite quasivariety membership: yes iff every pair of distinct elements
    of b is separated by a homomorphism b -> f. Certificate: the first
    separating hom (in canonical hom order) per pair; a missing pair is a
    definite no, since the hom enumeration is complete.
    """
    homs = homomorphisms(b, f, node_budget=node_budget)
    separators: dict[tuple[int, int], Morphism] = {}
    for x in range(b.size):
        for y in range(x + 1, b.size):
            for h in homs:
                if h.map[x] != h.map[y]:
                    separators[(x, y)] = h
                    break
            else:
                return PowerEmbedding(False, {}, (x, y), len(homs))
    return PowerEmbedding(True, separators, None, len(homs))


def subalgebra_algebra(a: BiHeytingAlgebra, mask: int):
    """Re-export of algebras.subset_algebra for callers holding masks."""
    return subset_algebra(a, mask)
