"""Independent naive implementations used to cross-check the library.

Everything here is written from the definitions, with no sharing, no
pruning, and no reuse of library internals beyond the public data layout
(tables, leq matrices, the term AST). Slow on purpose.
"""

import itertools

import numpy as np


def naive_poset_count(n: int) -> int:
    """Isomorphism classes of posets on n points, from all n^2 relations."""
    if n <= 4:
        return len(_naive_poset_keys_small(n))
    return len(_naive_poset_keys_numpy(n))


def naive_poset_keys(n: int) -> list:
    keys = _naive_poset_keys_small(n) if n <= 4 else _naive_poset_keys_numpy(n)
    return sorted(keys)


def _naive_poset_keys_small(n: int) -> set:
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    perms = list(itertools.permutations(range(n)))
    keys = set()
    for bits in itertools.product((False, True), repeat=len(cells)):
        leq = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), b in zip(cells, bits):
            leq[i][j] = b
        if not _is_poset(leq, n):
            continue
        keys.add(min(_relabel_key(leq, p, n) for p in perms))
    return keys


def _is_poset(leq, n) -> bool:
    for i in range(n):
        for j in range(n):
            if leq[i][j] and leq[j][i] and i != j:
                return False
            for k in range(n):
                if leq[i][j] and leq[j][k] and not leq[i][k]:
                    return False
    return True


def _relabel_key(leq, p, n) -> int:
    key = 0
    for i in range(n):
        for j in range(n):
            key = (key << 1) | (1 if leq[p[i]][p[j]] else 0)
    return key


def _naive_poset_keys_numpy(n: int) -> set:
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    count = 1 << len(cells)
    rel = np.zeros((count, n, n), dtype=bool)
    rel[:, np.arange(n), np.arange(n)] = True
    idx = np.arange(count, dtype=np.int64)
    for b, (i, j) in enumerate(cells):
        rel[:, i, j] = (idx >> b) & 1
    anti = ~(rel & rel.transpose(0, 2, 1) & ~np.eye(n, dtype=bool)).any(axis=(1, 2))
    reach = np.matmul(rel.astype(np.uint8), rel.astype(np.uint8)) > 0
    trans = ~(reach & ~rel).any(axis=(1, 2))
    good = rel[anti & trans]
    weights = 1 << np.arange(n * n - 1, -1, -1, dtype=np.int64)
    best = None
    for p in itertools.permutations(range(n)):
        p = list(p)
        keys = good[:, p][:, :, p].reshape(len(good), n * n).astype(np.int64) @ weights
        best = keys if best is None else np.minimum(best, keys)
    return set(int(k) for k in np.unique(best))


def naive_homs(a, b, injective=False) -> list:
    """All homomorphisms a -> b by filtering every possible map."""
    out = []
    tables_a = [np.asarray(getattr(a, t)) for t in ("meet", "join", "imp", "coimp")]
    tables_b = [np.asarray(getattr(b, t)) for t in ("meet", "join", "imp", "coimp")]
    for image in itertools.product(range(b.size), repeat=a.size):
        if image[a.bot] != b.bot or image[a.top] != b.top:
            continue
        if injective and len(set(image)) != len(image):
            continue
        ok = True
        for ta, tb in zip(tables_a, tables_b):
            for x in range(a.size):
                for y in range(a.size):
                    if image[ta[x][y]] != tb[image[x]][image[y]]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(image))
    return out


def naive_eval(a, term, assignment) -> int:
    kind = type(term).__name__
    if kind == "Var":
        return assignment[term.index - 1]
    if kind == "Const":
        return a.bot if term.value == 0 else a.top
    left = naive_eval(a, term.left, assignment)
    right = naive_eval(a, term.right, assignment)
    table = {"meet": a.meet, "join": a.join, "imp": a.imp, "coimp": a.coimp}[term.op]
    return int(table[left][right])


def naive_rule_holds(a, rule):
    """(holds, first counter-assignment) by full enumeration."""
    for assignment in itertools.product(range(a.size), repeat=rule.arity):
        premises_ok = True
        for eq in rule.premises:
            if naive_eval(a, eq.left, assignment) != naive_eval(a, eq.right, assignment):
                premises_ok = False
                break
        if not premises_ok:
            continue
        if naive_eval(a, rule.conclusion.left, assignment) != naive_eval(
            a, rule.conclusion.right, assignment
        ):
            return False, assignment
    return True, None


def naive_residuation_ok(a) -> bool:
    """imp is the largest residual and coimp the least co-residual,
    checked element by element from the definitions."""
    for x in range(a.size):
        for y in range(a.size):
            cands = [
                c for c in range(a.size) if a.leq[a.meet[x][c]][y]
            ]
            best = None
            for c in cands:
                if all(a.leq[d][c] for d in cands):
                    best = c
            if best is None or best != a.imp[x][y]:
                return False
            cands = [c for c in range(a.size) if a.leq[x][a.join[y][c]]]
            least = None
            for c in cands:
                if all(a.leq[c][d] for d in cands):
                    least = c
            if least is None or least != a.coimp[x][y]:
                return False
    return True


def naive_upsets(p) -> set:
    """Masks of all up-closed subsets, by filtering every subset."""
    out = set()
    for mask in range(1 << p.size):
        ok = True
        for i in range(p.size):
            if not (mask >> i) & 1:
                continue
            for j in range(p.size):
                if p.leq[i][j] and not (mask >> j) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(mask)
    return out


def naive_subuniverses(a) -> set:
    """Masks of all subsets containing bot and top closed under the ops."""
    out = set()
    for mask in range(1 << a.size):
        if not (mask >> a.bot) & 1 or not (mask >> a.top) & 1:
            continue
        elems = [e for e in range(a.size) if (mask >> e) & 1]
        ok = True
        for t in ("meet", "join", "imp", "coimp"):
            table = getattr(a, t)
            for x in elems:
                for y in elems:
                    if not (mask >> int(table[x][y])) & 1:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.add(mask)
    return out


def naive_join_irreducibles(a) -> list:
    """Nonbottom elements that are not the join of two strictly smaller
    ones. For distributive lattices this matches the unique-lower-cover
    characterization the library uses."""
    out = []
    for x in range(a.size):
        if x == a.bot:
            continue
        decomposable = False
        for u in range(a.size):
            for v in range(a.size):
                if (
                    a.leq[u][x] and u != x
                    and a.leq[v][x] and v != x
                    and int(a.join[u][v]) == x
                ):
                    decomposable = True
        if not decomposable:
            out.append(x)
    return out
