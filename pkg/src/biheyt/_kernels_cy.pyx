# cython: language_level=3
"""Compiled kernels. Same six functions as biheyt._kernels_py, same
outputs bit for bit (result ordering included); see that module's
docstring for the contract."""

import numpy as np

cimport cython
from libc.stdint cimport int16_t, int32_t, int64_t, uint8_t, uint64_t

IMPLEMENTATION = "cython"


cdef class _HomSearch:
    cdef const int16_t[:, :, ::1] A
    cdef const int16_t[:, :, ::1] B
    cdef int na, nb
    cdef bint injective
    cdef long long limit, node_budget, nodes
    cdef int16_t[::1] img
    cdef uint8_t[::1] used
    cdef int16_t[::1] fixed
    cdef int n_fixed
    cdef int16_t[::1] trail
    cdef int n_trail
    cdef int32_t[::1] qx
    cdef int32_t[::1] qw
    cdef int qcap
    cdef list results

    def __init__(self, ops_a, ops_b, injective, limit, node_budget):
        self.A = np.ascontiguousarray(ops_a, dtype=np.int16)
        self.B = np.ascontiguousarray(ops_b, dtype=np.int16)
        self.na = self.A.shape[1]
        self.nb = self.B.shape[1]
        self.injective = injective
        self.limit = limit
        self.node_budget = node_budget
        self.nodes = 0
        self.img = np.full(self.na, -1, dtype=np.int16)
        self.used = np.zeros(self.nb, dtype=np.uint8)
        self.fixed = np.empty(self.na, dtype=np.int16)
        self.n_fixed = 0
        self.trail = np.empty(self.na + 1, dtype=np.int16)
        self.n_trail = 0
        self.qcap = 4 * (self.na + 8)
        self.qx = np.empty(self.qcap, dtype=np.int32)
        self.qw = np.empty(self.qcap, dtype=np.int32)
        self.results = []

    cdef int _grow_queue(self) except -1:
        cdef int newcap = self.qcap * 2
        qx2 = np.empty(newcap, dtype=np.int32)
        qw2 = np.empty(newcap, dtype=np.int32)
        qx2[: self.qcap] = np.asarray(self.qx)
        qw2[: self.qcap] = np.asarray(self.qw)
        self.qx = qx2
        self.qw = qw2
        self.qcap = newcap
        return 0

    @cython.boundscheck(False)
    @cython.wraparound(False)
    cdef int try_assign(self, int e, int v) except? -9:
        # 1 ok, 0 contradiction, -1 budget
        cdef int qi = 0, qlen = 0
        cdef int x, w, cur, yi, y, wy, t
        self.qx[0] = e
        self.qw[0] = v
        qlen = 1
        while qi < qlen:
            x = self.qx[qi]
            w = self.qw[qi]
            qi += 1
            cur = self.img[x]
            if cur == w:
                continue
            if cur != -1:
                return 0
            if self.injective and self.used[w]:
                return 0
            self.nodes += 1
            if self.nodes > self.node_budget:
                return -1
            self.img[x] = w
            if self.injective:
                self.used[w] = 1
            self.trail[self.n_trail] = x
            self.n_trail += 1
            self.fixed[self.n_fixed] = x
            self.n_fixed += 1
            while qlen + 8 * self.n_fixed + 8 > self.qcap:
                self._grow_queue()
            for yi in range(self.n_fixed):
                y = self.fixed[yi]
                wy = self.img[y]
                for t in range(4):
                    self.qx[qlen] = self.A[t, x, y]
                    self.qw[qlen] = self.B[t, w, wy]
                    qlen += 1
                    self.qx[qlen] = self.A[t, y, x]
                    self.qw[qlen] = self.B[t, wy, w]
                    qlen += 1
        return 1

    @cython.boundscheck(False)
    @cython.wraparound(False)
    cdef void undo_to(self, int mark):
        cdef int x
        while self.n_trail > mark:
            self.n_trail -= 1
            x = self.trail[self.n_trail]
            if self.injective:
                self.used[self.img[x]] = 0
            self.img[x] = -1
            self.n_fixed -= 1

    cdef int dfs(self, int pos) except? -9:
        # 1 keep going, 0 limit reached, -1 budget
        cdef int v, mark, ok, r
        cdef int i
        while pos < self.na and self.img[pos] != -1:
            pos += 1
        if pos == self.na:
            self.results.append(tuple(int(self.img[i]) for i in range(self.na)))
            if self.limit < 0 or len(self.results) < self.limit:
                return 1
            return 0
        for v in range(self.nb):
            if self.injective and self.used[v]:
                continue
            mark = self.n_trail
            ok = self.try_assign(pos, v)
            if ok == -1:
                return -1
            if ok == 1:
                r = self.dfs(pos + 1)
                if r == -1:
                    return -1
                if r == 0:
                    self.undo_to(mark)
                    return 0
            self.undo_to(mark)
        return 1

    def run(self, int bot_a, int top_a, int bot_b, int top_b):
        cdef int ok, r
        cdef bint exceeded = False
        ok = self.try_assign(bot_a, bot_b)
        if ok == 1:
            ok = self.try_assign(top_a, top_b)
        if ok == -1:
            exceeded = True
        elif ok == 1:
            r = self.dfs(0)
            if r == -1:
                exceeded = True
        return self.results, int(self.nodes), exceeded


def find_homs(ops_a, ops_b, bot_a, top_a, bot_b, top_b, injective, limit, node_budget):
    search = _HomSearch(ops_a, ops_b, bool(injective), int(limit), int(node_budget))
    return search.run(int(bot_a), int(top_a), int(bot_b), int(top_b))


@cython.boundscheck(False)
@cython.wraparound(False)
def close_subset(ops, seed, bot, top):
    cdef const int16_t[:, :, ::1] A = np.ascontiguousarray(ops, dtype=np.int16)
    cdef int n = A.shape[1]
    flags_arr = np.zeros(n, dtype=np.uint8)
    elems_arr = np.empty(n, dtype=np.int32)
    cdef uint8_t[::1] flags = flags_arr
    cdef int32_t[::1] elems = elems_arr
    cdef const uint8_t[::1] seed_v = np.ascontiguousarray(seed, dtype=np.uint8)
    cdef int n_elems = 0
    cdef int i, j, t, x, y, e

    if not flags[bot]:
        flags[bot] = 1
        elems[n_elems] = bot
        n_elems += 1
    if not flags[top]:
        flags[top] = 1
        elems[n_elems] = top
        n_elems += 1
    for e in range(n):
        if seed_v[e] and not flags[e]:
            flags[e] = 1
            elems[n_elems] = e
            n_elems += 1
    i = 0
    while i < n_elems:
        x = elems[i]
        for j in range(i + 1):
            y = elems[j]
            for t in range(4):
                e = A[t, x, y]
                if not flags[e]:
                    flags[e] = 1
                    elems[n_elems] = e
                    n_elems += 1
                e = A[t, y, x]
                if not flags[e]:
                    flags[e] = 1
                    elems[n_elems] = e
                    n_elems += 1
        i += 1
    return flags_arr


@cython.boundscheck(False)
@cython.wraparound(False)
cdef int _find_root(int32_t[::1] parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@cython.boundscheck(False)
@cython.wraparound(False)
def congruence_closure(ops, pairs):
    cdef const int16_t[:, :, ::1] A = np.ascontiguousarray(ops, dtype=np.int16)
    cdef int n = A.shape[1]
    parent_arr = np.arange(n, dtype=np.int32)
    cdef int32_t[::1] parent = parent_arr
    # the merge queue can hold at most n-1 root pairs
    qa_arr = np.empty(n + 1, dtype=np.int32)
    qb_arr = np.empty(n + 1, dtype=np.int32)
    cdef int32_t[::1] qa = qa_arr
    cdef int32_t[::1] qb = qb_arr
    cdef int qlen = 0, qi = 0
    cdef const int64_t[:, ::1] pv = np.ascontiguousarray(
        np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    )
    cdef int i, a, b, t, z, ra, rb

    for i in range(pv.shape[0]):
        ra = _find_root(parent, <int> pv[i, 0])
        rb = _find_root(parent, <int> pv[i, 1])
        if ra != rb:
            if ra > rb:
                ra, rb = rb, ra
            parent[rb] = ra
            qa[qlen] = ra
            qb[qlen] = rb
            qlen += 1
    while qi < qlen:
        a = qa[qi]
        b = qb[qi]
        qi += 1
        for t in range(4):
            for z in range(n):
                ra = _find_root(parent, A[t, a, z])
                rb = _find_root(parent, A[t, b, z])
                if ra != rb:
                    if ra > rb:
                        ra, rb = rb, ra
                    parent[rb] = ra
                    qa[qlen] = ra
                    qb[qlen] = rb
                    qlen += 1
                ra = _find_root(parent, A[t, z, a])
                rb = _find_root(parent, A[t, z, b])
                if ra != rb:
                    if ra > rb:
                        ra, rb = rb, ra
                    parent[rb] = ra
                    qa[qlen] = ra
                    qb[qlen] = rb
                    qlen += 1

    parts_arr = np.empty(n, dtype=np.int16)
    cdef int16_t[::1] parts = parts_arr
    id_arr = np.full(n, -1, dtype=np.int32)
    cdef int32_t[::1] id_of = id_arr
    cdef int next_id = 0, r
    for i in range(n):
        r = _find_root(parent, i)
        if id_of[r] == -1:
            id_of[r] = next_id
            next_id += 1
        parts[i] = <int16_t> id_of[r]
    return parts_arr


cdef class _CodeSet:
    """Open-addressing set of nonnegative int64 codes."""
    cdef int64_t[::1] keys
    cdef uint8_t[::1] full
    cdef int64_t cap, count

    def __init__(self, int64_t cap0=1024):
        self.cap = cap0
        self.count = 0
        self.keys = np.zeros(cap0, dtype=np.int64)
        self.full = np.zeros(cap0, dtype=np.uint8)

    @cython.boundscheck(False)
    @cython.wraparound(False)
    @cython.cdivision(True)
    cdef bint add(self, int64_t code):
        # True if newly inserted
        cdef int64_t h = <int64_t> (
            (<uint64_t> code * <uint64_t> 0x9E3779B97F4A7C15)
            & <uint64_t> (self.cap - 1)
        )
        while self.full[h]:
            if self.keys[h] == code:
                return False
            h += 1
            if h == self.cap:
                h = 0
        self.keys[h] = code
        self.full[h] = 1
        self.count += 1
        if self.count * 10 > self.cap * 7:
            self._grow()
        return True

    cdef void _grow(self):
        old_keys = np.asarray(self.keys).copy()
        old_full = np.asarray(self.full).copy()
        cdef int64_t oldcap = self.cap
        self.cap *= 2
        self.keys = np.zeros(self.cap, dtype=np.int64)
        self.full = np.zeros(self.cap, dtype=np.uint8)
        self.count = 0
        cdef int64_t i
        for i in range(oldcap):
            if old_full[i]:
                self.add(old_keys[i])


@cython.boundscheck(False)
@cython.wraparound(False)
def free_closure(tables4, sizes, init, max_elems):
    cdef const uint8_t[:, :, :, ::1] tab = np.ascontiguousarray(tables4, dtype=np.uint8)
    cdef int k = tab.shape[1]
    cdef const int64_t[::1] sz = np.ascontiguousarray(sizes, dtype=np.int64)
    w_arr = np.empty(k, dtype=np.int64)
    cdef int64_t[::1] w = w_arr
    cdef int64_t acc = 1
    cdef int c
    for c in range(k - 1, -1, -1):
        w[c] = acc
        acc *= sz[c]

    cdef int64_t cap = 1024
    E_arr = np.zeros((cap, k), dtype=np.uint8)
    cdef uint8_t[:, ::1] E = E_arr
    cdef int64_t n_elems = 0
    codes = _CodeSet()

    cdef const uint8_t[:, ::1] init_v = np.ascontiguousarray(init, dtype=np.uint8)
    cdef int64_t code
    cdef int m = init_v.shape[0]
    cdef int i, t
    cdef int64_t row, frontier_start, round_end, ystart, y
    row_arr = np.empty(k, dtype=np.uint8)
    cdef uint8_t[::1] res = row_arr

    for i in range(m):
        code = 0
        for c in range(k):
            code += init_v[i, c] * w[c]
        if codes.add(code):
            if n_elems == cap:
                cap *= 2
                E_arr = np.resize(E_arr, (cap, k))
                E = E_arr
            for c in range(k):
                E[n_elems, c] = init_v[i, c]
            n_elems += 1

    frontier_start = 0
    while frontier_start < n_elems:
        round_end = n_elems
        for t in range(4):
            for row in range(round_end):
                ystart = 0 if row >= frontier_start else frontier_start
                for y in range(ystart, round_end):
                    code = 0
                    for c in range(k):
                        res[c] = tab[t, c, E[row, c], E[y, c]]
                        code += res[c] * w[c]
                    if codes.add(code):
                        if n_elems == cap:
                            cap *= 2
                            E_arr = np.resize(E_arr, (cap, k))
                            E = E_arr
                        for c in range(k):
                            E[n_elems, c] = res[c]
                        n_elems += 1
                if n_elems > max_elems:
                    return E_arr[:n_elems].copy(), True
        frontier_start = round_end
    return E_arr[:n_elems].copy(), False


@cython.boundscheck(False)
@cython.wraparound(False)
cdef int64_t _lower_bound(const int64_t[::1] arr, int64_t value) nogil:
    cdef int64_t lo = 0, hi = arr.shape[0], mid
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid] < value:
            lo = mid + 1
        else:
            hi = mid
    return lo


@cython.boundscheck(False)
@cython.wraparound(False)
def free_tables(elems, tables4, leq_pc, sizes):
    cdef const uint8_t[:, ::1] E = np.ascontiguousarray(elems, dtype=np.uint8)
    cdef const uint8_t[:, :, :, ::1] tab = np.ascontiguousarray(tables4, dtype=np.uint8)
    cdef const uint8_t[:, :, ::1] lpc = np.ascontiguousarray(leq_pc, dtype=np.uint8)
    cdef int64_t N = E.shape[0]
    cdef int k = E.shape[1]
    cdef const int64_t[::1] sz = np.ascontiguousarray(sizes, dtype=np.int64)

    w_arr = np.empty(k, dtype=np.int64)
    cdef int64_t[::1] w = w_arr
    cdef int64_t acc = 1
    cdef int c
    for c in range(k - 1, -1, -1):
        w[c] = acc
        acc *= sz[c]

    codes_arr = np.empty(N, dtype=np.int64)
    cdef int64_t[::1] codes = codes_arr
    cdef int64_t i, j
    for i in range(N):
        acc = 0
        for c in range(k):
            acc += E[i, c] * w[c]
        codes[i] = acc
    order_arr = np.argsort(codes_arr, kind="stable").astype(np.int64)
    cdef const int64_t[::1] order = order_arr
    sorted_arr = codes_arr[order_arr]
    cdef const int64_t[::1] sorted_codes = sorted_arr

    leq_arr = np.empty((N, N), dtype=np.uint8)
    ops_arr = np.empty((4, N, N), dtype=np.int16)
    cdef uint8_t[:, ::1] leq = leq_arr
    cdef int16_t[:, :, ::1] ops = ops_arr
    cdef int t
    cdef uint8_t ok
    cdef int64_t code
    for i in range(N):
        for j in range(N):
            ok = 1
            for c in range(k):
                if not lpc[c, E[i, c], E[j, c]]:
                    ok = 0
                    break
            leq[i, j] = ok
        for t in range(4):
            for j in range(N):
                code = 0
                for c in range(k):
                    code += tab[t, c, E[i, c], E[j, c]] * w[c]
                ops[t, i, j] = <int16_t> order[_lower_bound(sorted_codes, code)]
    return leq_arr, ops_arr


@cython.boundscheck(False)
@cython.wraparound(False)
def poset_enum_keys(n, perms):
    cdef int nn = n
    cdef const int64_t[:, ::1] P = np.ascontiguousarray(perms, dtype=np.int64)
    cdef int nperms = P.shape[0]
    cdef int nbits = nn * (nn - 1) // 2
    cdef int64_t count = <int64_t> 1 << nbits
    cdef int64_t cand, key, best
    cdef int i, j, kk, b, p
    cdef uint8_t[:, ::1] M = np.zeros((nn, nn), dtype=np.uint8)
    cdef int64_t[::1] weights = (
        1 << np.arange(nn * nn - 1, -1, -1, dtype=np.int64)
    )
    keys_list = []
    cdef bint closed
    for cand in range(count):
        for i in range(nn):
            for j in range(nn):
                M[i, j] = 1 if i == j else 0
        b = 0
        for i in range(nn):
            for j in range(i + 1, nn):
                M[i, j] = <uint8_t> ((cand >> b) & 1)
                b += 1
        closed = True
        for i in range(nn):
            if not closed:
                break
            for j in range(nn):
                if M[i, j]:
                    continue
                for kk in range(nn):
                    if M[i, kk] and M[kk, j]:
                        closed = False
                        break
                if not closed:
                    break
        if not closed:
            continue
        best = -1
        for p in range(nperms):
            key = 0
            for i in range(nn):
                for j in range(nn):
                    if M[P[p, i], P[p, j]]:
                        key += weights[i * nn + j]
            if best < 0 or key < best:
                best = key
        keys_list.append(best)
    return np.unique(np.array(keys_list, dtype=np.int64)).astype(np.uint64)
