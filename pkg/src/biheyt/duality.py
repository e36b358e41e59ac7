"""Finite duality between algebras and posets.

The algebra of up-closed subsets of a finite poset is bi-Heyting: meet and
join are intersection and union, relative pseudocomplement is the largest
upset inside the set-complement of the down closure of the difference, and
its dual is the up closure of the difference. In the other direction the
join-irreducible elements of an algebra (exactly one lower cover), under
the REVERSE of the algebra order, recover a poset; evaluating each element
on them gives the representation isomorphism.
"""

import numpy as np

from .algebras import BiHeytingAlgebra
from .bitsets import members
from .errors import DegenerateAlgebraError
from .morphisms import Morphism
from .posets import Poset, down_closure, up_closure, upsets


def upset_algebra(p: Poset) -> BiHeytingAlgebra:
    """Algebra of all upsets of p, carrier in canonical set order."""
    carrier = upsets(p)
    index = {m: i for i, m in enumerate(carrier)}
    n = len(carrier)
    full = (1 << p.size) - 1
    meet = np.empty((n, n), dtype=np.int16)
    join = np.empty((n, n), dtype=np.int16)
    imp = np.empty((n, n), dtype=np.int16)
    coimp = np.empty((n, n), dtype=np.int16)
    leq = np.empty((n, n), dtype=bool)
    for i, u in enumerate(carrier):
        for j, v in enumerate(carrier):
            meet[i, j] = index[u & v]
            join[i, j] = index[u | v]
            diff = u & ~v
            imp[i, j] = index[full & ~down_closure(p, diff)]
            coimp[i, j] = index[up_closure(p, diff)]
            leq[i, j] = diff == 0
    labels = ["{" + ",".join(str(e) for e in members(m)) + "}" for m in carrier]
    return BiHeytingAlgebra(
        leq, index[0], index[full], meet, join, imp, coimp, labels=labels
    )


def join_irreducibles(a: BiHeytingAlgebra) -> tuple[int, ...]:
    """Elements with exactly one lower cover, ascending index order."""
    out = []
    for j in range(a.size):
        below = [x for x in range(a.size) if x != j and a.leq_(x, j)]
        covers = [
            x
            for x in below
            if not any(x != y and a.leq_(x, y) for y in below)
        ]
        if len(covers) == 1:
            out.append(j)
    return tuple(out)


def dual_poset(a: BiHeytingAlgebra) -> Poset:
    """Join-irreducibles of a under the reversed algebra order."""
    if a.degenerate:
        raise DegenerateAlgebraError("the one-element algebra has no dual poset")
    ji = join_irreducibles(a)
    k = len(ji)
    leq = np.empty((k, k), dtype=bool)
    for i, x in enumerate(ji):
        for j, y in enumerate(ji):
            leq[i, j] = a.leq_(y, x)
    return Poset(leq)


def representation_iso(a: BiHeytingAlgebra) -> Morphism:
    """Isomorphism from a onto the upset algebra of its dual poset.

    Each element goes to the set of dual points (reverse-ordered
    join-irreducibles) that lie below it in a. The result is checked;
    failure would mean the input was not actually bi-Heyting.
    """
    p = dual_poset(a)
    b = upset_algebra(p)
    ji = join_irreducibles(a)
    carrier = upsets(p)
    index = {m: i for i, m in enumerate(carrier)}
    image = []
    for x in range(a.size):
        m = 0
        for i, j in enumerate(ji):
            if a.leq_(j, x):
                m |= 1 << i
        image.append(index[m])
    iso = Morphism(a, b, tuple(image))
    problem = iso.verify()
    if problem is not None:
        raise AssertionError(f"representation broke: {problem}")
    if not iso.is_bijective():
        raise AssertionError("representation is not a bijection")
    return iso
