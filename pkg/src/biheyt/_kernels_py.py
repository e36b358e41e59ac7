"""Fallback kernels: plain Python for the backtracking searches, numpy for
the bulk array passes.

This module is the reference for the kernel contract; biheyt._kernels_cy
reimplements the same functions with identical outputs (bit-for-bit,
including result ordering), just faster. Shapes and dtypes:

- find_homs(ops_a, ops_b, bot_a, top_a, bot_b, top_b, injective, limit,
  node_budget) -> (maps, nodes, exceeded)
    ops_*: int16 arrays (4, n, n) stacked meet/join/imp/coimp tables.
    maps: list of image tuples in lexicographic order. limit < 0 means all.
    nodes counts image assignments (chosen or forced); when it passes
    node_budget the search stops and exceeded is True.
- close_subset(ops, seed, bot, top) -> uint8 flags (n,)
    Closure of seed (uint8 flags) plus the constants under the four ops.
- congruence_closure(ops, pairs) -> int16 block ids (n,), blocks numbered
    by least member.
- free_closure(tables4, sizes, init, max_elems) -> (elems, exceeded)
    tables4: uint8 (4, k, s, s) per-coordinate operation tables; sizes:
    int64 (k,) coordinate carrier sizes; init: uint8 (m, k) seed rows
    (order preserved, duplicates dropped). Closure runs in rounds: each
    round applies, op-major then left then right index ascending, every
    ordered pair with both arguments present at the round start and at
    least one argument from the previous round's discoveries; new rows
    are appended in encounter order. elems is uint8 (N, k) in discovery
    order.
- free_tables(elems, tables4, leq_pc, sizes) -> (leq, ops)
    leq_pc: uint8 (k, s, s) per-coordinate order; returns leq uint8 (N, N)
    and ops int16 (4, N, N) with entries indexing into elems.
- poset_enum_keys(n, perms) -> uint64 (K,) ascending
    Canonical keys (min-over-relabelings row-major bitstring, bit (0,0)
    most significant) of all posets on n elements, one per iso class.
"""

import numpy as np

IMPLEMENTATION = "python"


class _BudgetHit(Exception):
    pass


def find_homs(ops_a, ops_b, bot_a, top_a, bot_b, top_b, injective, limit, node_budget):
    na = ops_a.shape[1]
    nb = ops_b.shape[1]
    A = [[list(map(int, row)) for row in ops_a[t]] for t in range(4)]
    B = [[list(map(int, row)) for row in ops_b[t]] for t in range(4)]

    img = [-1] * na
    used = [False] * nb
    fixed: list[int] = []
    results: list[tuple[int, ...]] = []
    state = {"nodes": 0}

    def try_assign(e: int, v: int, trail: list[int]) -> bool:
        queue = [(e, v)]
        qi = 0
        while qi < len(queue):
            x, w = queue[qi]
            qi += 1
            cur = img[x]
            if cur == w:
                continue
            if cur != -1:
                return False
            if injective and used[w]:
                return False
            state["nodes"] += 1
            if state["nodes"] > node_budget:
                raise _BudgetHit
            img[x] = w
            if injective:
                used[w] = True
            trail.append(x)
            fixed.append(x)
            for y in fixed:
                wy = img[y]
                for t in range(4):
                    queue.append((A[t][x][y], B[t][w][wy]))
                    queue.append((A[t][y][x], B[t][wy][w]))
        return True

    def undo(trail: list[int]) -> None:
        for x in reversed(trail):
            if injective:
                used[img[x]] = False
            img[x] = -1
            fixed.pop()

    def dfs(pos: int) -> bool:
        while pos < na and img[pos] != -1:
            pos += 1
        if pos == na:
            results.append(tuple(img))
            return limit < 0 or len(results) < limit
        for v in range(nb):
            if injective and used[v]:
                continue
            trail: list[int] = []
            ok = try_assign(pos, v, trail)
            if ok and not dfs(pos + 1):
                undo(trail)
                return False
            undo(trail)
        return True

    exceeded = False
    try:
        trail0: list[int] = []
        if try_assign(bot_a, bot_b, trail0) and try_assign(top_a, top_b, trail0):
            dfs(0)
    except _BudgetHit:
        exceeded = True
    return results, state["nodes"], exceeded


def close_subset(ops, seed, bot, top):
    n = ops.shape[1]
    A = [[list(map(int, row)) for row in ops[t]] for t in range(4)]
    flags = bytearray(n)
    elems: list[int] = []

    def add(e: int) -> None:
        if not flags[e]:
            flags[e] = 1
            elems.append(e)

    add(bot)
    add(top)
    for i in np.flatnonzero(np.asarray(seed)):
        add(int(i))
    i = 0
    while i < len(elems):
        x = elems[i]
        for j in range(i + 1):
            y = elems[j]
            for t in range(4):
                add(A[t][x][y])
                add(A[t][y][x])
        i += 1
    return np.frombuffer(bytes(flags), dtype=np.uint8).copy()


def congruence_closure(ops, pairs):
    n = ops.shape[1]
    A = [[list(map(int, row)) for row in ops[t]] for t in range(4)]
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue: list[tuple[int, int]] = []

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra > rb:
                ra, rb = rb, ra
            parent[rb] = ra
            queue.append((ra, rb))

    for a, b in pairs:
        union(int(a), int(b))
    qi = 0
    while qi < len(queue):
        a, b = queue[qi]
        qi += 1
        for t in range(4):
            rowa = A[t][a]
            rowb = A[t][b]
            for z in range(n):
                union(rowa[z], rowb[z])
                union(A[t][z][a], A[t][z][b])

    parts = np.empty(n, dtype=np.int16)
    id_of: dict[int, int] = {}
    for i in range(n):
        r = find(i)
        if r not in id_of:
            id_of[r] = len(id_of)
        parts[i] = id_of[r]
    return parts


def _weights(sizes) -> np.ndarray:
    k = len(sizes)
    w = np.empty(k, dtype=np.int64)
    acc = 1
    for c in range(k - 1, -1, -1):
        w[c] = acc
        acc *= int(sizes[c])
    return w


def free_closure(tables4, sizes, init, max_elems):
    k = tables4.shape[1]
    w = _weights(sizes)
    coords = np.arange(k)

    cap = 1024
    E = np.zeros((cap, k), dtype=np.uint8)
    n_elems = 0
    known = np.empty(0, dtype=np.int64)

    def push_rows(rows, codes):
        nonlocal E, cap, n_elems, known
        m = len(rows)
        while n_elems + m > cap:
            cap *= 2
            E = np.resize(E, (cap, k))
        E[n_elems : n_elems + m] = rows
        n_elems += m
        known = np.union1d(known, codes)

    init = np.asarray(init, dtype=np.uint8)
    init_codes = init.astype(np.int64) @ w
    seen: set[int] = set()
    for row, code in zip(init, init_codes):
        if int(code) not in seen:
            seen.add(int(code))
            push_rows(row[None, :], np.array([code], dtype=np.int64))

    frontier_start = 0
    while frontier_start < n_elems:
        round_end = n_elems
        for t in range(4):
            tab = tables4[t]
            for i in range(round_end):
                x = E[i]
                if i >= frontier_start:
                    ys = E[:round_end]
                else:
                    ys = E[frontier_start:round_end]
                if len(ys) == 0:
                    continue
                res = tab[coords[None, :], x[None, :], ys]
                codes = res.astype(np.int64) @ w
                _, first = np.unique(codes, return_index=True)
                order = np.sort(first)
                oc = codes[order]
                pos = np.searchsorted(known, oc)
                pos_c = np.minimum(pos, len(known) - 1) if len(known) else pos
                is_new = (
                    (pos >= len(known)) | (known[pos_c] != oc)
                    if len(known)
                    else np.ones(len(oc), dtype=bool)
                )
                if is_new.any():
                    push_rows(res[order][is_new], oc[is_new])
                    if n_elems > max_elems:
                        return E[:n_elems].copy(), True
        frontier_start = round_end
    return E[:n_elems].copy(), False


def free_tables(elems, tables4, leq_pc, sizes):
    N, k = elems.shape
    w = _weights(sizes)
    codes = elems.astype(np.int64) @ w
    order = np.argsort(codes)
    sorted_codes = codes[order]
    order = order.astype(np.int64)
    coords = np.arange(k)

    leq = np.empty((N, N), dtype=np.uint8)
    ops = np.empty((4, N, N), dtype=np.int16)
    for i in range(N):
        x = elems[i]
        leq[i] = leq_pc[coords[None, :], x[None, :], elems].all(axis=1)
        for t in range(4):
            res = tables4[t][coords[None, :], x[None, :], elems]
            rcodes = res.astype(np.int64) @ w
            ops[t, i] = order[np.searchsorted(sorted_codes, rcodes)]
    return leq, ops


def poset_enum_keys(n, perms):
    nbits = n * (n - 1) // 2
    count = 1 << nbits
    cand = np.arange(count, dtype=np.int64)
    M = np.zeros((count, n, n), dtype=bool)
    M[:, np.arange(n), np.arange(n)] = True
    b = 0
    for i in range(n):
        for j in range(i + 1, n):
            M[:, i, j] = (cand >> b) & 1
            b += 1
    # upper-triangular candidates: antisymmetry is free, transitivity is not
    Mu = M.astype(np.uint8)
    closed = ~((np.matmul(Mu, Mu) > 0) & ~M).any(axis=(1, 2))
    V = M[closed]
    weights = (1 << np.arange(n * n - 1, -1, -1, dtype=np.int64))
    best = None
    for p in perms:
        keys = V[:, p][:, :, p].reshape(len(V), n * n).astype(np.int64) @ weights
        best = keys if best is None else np.minimum(best, keys)
    return np.unique(best).astype(np.uint64)
