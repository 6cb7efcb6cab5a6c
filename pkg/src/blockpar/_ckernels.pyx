# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Same names, semantics and output order as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

from ._pykernels import matrix_shape, star_coefficients, strides, VARIANTS

cnp.import_array()

BACKEND = "cython"

cdef enum:
    MAXN = 64
    MAXL = 2 * MAXN + 1

cdef enum LevelKind:
    K_SELECT = 0
    K_COMB = 1
    K_PERM = 2


cdef class LayoutEnumerator:
    """Every matrix filling of one integer partition, as flat layouts.

    The stack of choice points lives in fixed C arrays: level ``l`` reads
    the pools left by level ``l - 1``, holds its current choice in
    ``idx[l]`` and writes the pools for level ``l + 1``.
    """

    cdef public tuple parts
    cdef public str variant
    cdef public int n
    cdef public list shape
    cdef int L
    cdef int kind[MAXL]
    cdef int size[MAXL]
    cdef int force[MAXL]
    cdef int mbase[MAXL]
    cdef int npos[MAXL]
    cdef int pos[MAXL][MAXN]
    cdef int outer[MAXL + 1][MAXN]
    cdef int outer_n[MAXL + 1]
    cdef int inner[MAXL + 1][MAXN]
    cdef int inner_n[MAXL + 1]
    cdef int idx[MAXL][MAXN]
    cdef int forced_now[MAXL]
    cdef int chosen[MAXN]
    cdef int layout[MAXN]
    cdef bint started
    cdef bint done

    def __init__(self, parts, variant):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        self.parts = tuple(sorted(parts))
        self.variant = variant
        self.n = sum(self.parts)
        if self.n > MAXN:
            raise ValueError(f"compiled enumerator supports n <= {MAXN}")
        self.shape = matrix_shape(list(self.parts))
        a = star_coefficients(self.shape) if variant == "bpstar" else {}
        cdef int l = 0, b = 0, j, m, k, c, ell, first
        for j, m in self.shape:
            if l + j + 3 > MAXL:
                raise ValueError("partition too large for the compiled enumerator")
            self.kind[l] = K_SELECT
            self.size[l] = j * m
            self.npos[l] = 0
            l += 1
            first = l
            if variant == "bp":
                self.kind[l] = K_COMB
                self.size[l] = m
                self.force[l] = 0
                self.mbase[l] = first
                self.npos[l] = m
                for k in range(m):
                    self.pos[l][k] = b + k * j
                l += 1
                if j > 1:
                    self.kind[l] = K_PERM
                    self.size[l] = m * (j - 1)
                    self.npos[l] = m * (j - 1)
                    for k in range(m):
                        for c in range(1, j):
                            self.pos[l][k * (j - 1) + c - 1] = b + k * j + c
                    l += 1
            else:
                for ell in range(1, j + 1):
                    self.kind[l] = K_COMB
                    self.size[l] = m
                    self.force[l] = 1 if a.get(j, 0) == ell else 0
                    self.mbase[l] = first
                    self.npos[l] = m
                    for k in range(m):
                        self.pos[l][k] = b + k * j + ell - 1
                    l += 1
            b += j * m
        self.L = l
        self.outer_n[0] = self.n
        self.inner_n[0] = 0
        for k in range(self.n):
            self.outer[0][k] = k
        self.started = False
        self.done = False

    cdef void _emit(self, int l) noexcept nogil:
        # materialise the current choice of level l into level l + 1's pools
        cdef int r = self.size[l], k, t, s, nx
        cdef int *src
        if self.kind[l] == K_SELECT:
            src = self.outer[l]
            s = self.outer_n[l]
            for k in range(r):
                self.inner[l + 1][k] = src[self.idx[l][k]]
            self.inner_n[l + 1] = r
            nx = 0
            t = 0
            for k in range(s):
                if t < r and self.idx[l][t] == k:
                    t += 1
                else:
                    self.outer[l + 1][nx] = src[k]
                    nx += 1
            self.outer_n[l + 1] = nx
            return
        # pass the outer pool through unchanged
        s = self.outer_n[l]
        for k in range(s):
            self.outer[l + 1][k] = self.outer[l][k]
        self.outer_n[l + 1] = s
        src = self.inner[l]
        s = self.inner_n[l]
        if self.kind[l] == K_PERM:
            for k in range(r):
                self.layout[self.pos[l][k]] = self.idx[l][k]
            self.inner_n[l + 1] = 0
            return
        if self.forced_now[l]:
            # idx indexes src[1:], choose r - 1 of them next to the minimum
            self.chosen[0] = src[0]
            for k in range(r - 1):
                self.chosen[k + 1] = src[1 + self.idx[l][k]]
            nx = 0
            t = 0
            for k in range(1, s):
                if t < r - 1 and self.idx[l][t] == k - 1:
                    t += 1
                else:
                    self.inner[l + 1][nx] = src[k]
                    nx += 1
        else:
            for k in range(r):
                self.chosen[k] = src[self.idx[l][k]]
            nx = 0
            t = 0
            for k in range(s):
                if t < r and self.idx[l][t] == k:
                    t += 1
                else:
                    self.inner[l + 1][nx] = src[k]
                    nx += 1
        self.inner_n[l + 1] = nx
        for k in range(r):
            self.layout[self.pos[l][k]] = self.chosen[k]

    cdef void _first(self, int l) noexcept nogil:
        cdef int k, r = self.size[l]
        cdef int low
        if self.kind[l] == K_PERM:
            for k in range(r):
                self.idx[l][k] = self.inner[l][k]
        elif self.kind[l] == K_COMB:
            low = self.inner[self.mbase[l]][0]
            self.forced_now[l] = self.force[l] and self.inner[l][0] == low
            if self.forced_now[l]:
                r -= 1
            for k in range(r):
                self.idx[l][k] = k
        else:
            for k in range(r):
                self.idx[l][k] = k
        self._emit(l)

    cdef bint _advance(self, int l) noexcept nogil:
        cdef int r = self.size[l], s, i, j, tmp
        cdef int *c = self.idx[l]
        if self.kind[l] == K_PERM:
            # next permutation in lexicographic order
            i = r - 2
            while i >= 0 and c[i] >= c[i + 1]:
                i -= 1
            if i < 0:
                return False
            j = r - 1
            while c[j] <= c[i]:
                j -= 1
            tmp = c[i]; c[i] = c[j]; c[j] = tmp
            i += 1
            j = r - 1
            while i < j:
                tmp = c[i]; c[i] = c[j]; c[j] = tmp
                i += 1
                j -= 1
        else:
            if self.kind[l] == K_SELECT:
                s = self.outer_n[l]
            else:
                s = self.inner_n[l]
                if self.forced_now[l]:
                    s -= 1
                    r -= 1
            i = r - 1
            while i >= 0 and c[i] == s - r + i:
                i -= 1
            if i < 0:
                return False
            c[i] += 1
            for j in range(i + 1, r):
                c[j] = c[j - 1] + 1
        self._emit(l)
        return True

    cdef bint _step(self) noexcept nogil:
        cdef int l
        if self.done:
            return False
        if not self.started:
            self.started = True
            for l in range(self.L):
                self._first(l)
            return True
        l = self.L - 1
        while l >= 0 and not self._advance(l):
            l -= 1
        if l < 0:
            self.done = True
            return False
        for l in range(l + 1, self.L):
            self._first(l)
        return True

    def __iter__(self):
        return self

    def __next__(self):
        if not self._step():
            raise StopIteration
        cdef int k
        return tuple([self.layout[k] for k in range(self.n)])

    def count(self):
        """Exhaust the remaining items and return how many there were."""
        cdef long long total = 0
        with nogil:
            while self._step():
                total += 1
        return total

    def fill(self, cnp.int32_t[:, ::1] out):
        """Write up to ``out.shape[0]`` layouts into ``out``; return how many."""
        cdef Py_ssize_t rows = 0, cap = out.shape[0]
        cdef int k
        if out.shape[1] != self.n:
            raise ValueError("output width must equal n")
        with nogil:
            while rows < cap and self._step():
                for k in range(self.n):
                    out[rows, k] = self.layout[k]
                rows += 1
        return rows


def successors(tables, alphabets, blocks):
    """Image index of every configuration after applying ``blocks`` in order."""
    # configuration-major copy: one cache line serves every lookup of a substep
    cdef const cnp.int64_t[:, ::1] tab = np.ascontiguousarray(np.asarray(tables, dtype=np.int64).T)
    cdef Py_ssize_t N = tab.shape[0], n = tab.shape[1]
    cdef cnp.int64_t[::1] stride = np.asarray(strides(list(alphabets)), dtype=np.int64)
    cdef cnp.int64_t[::1] radix = np.asarray(list(alphabets), dtype=np.int64)
    flat = [int(i) for b in blocks for i in b]
    cdef cnp.int64_t[::1] members = np.asarray(flat if flat else [0], dtype=np.int64)
    cdef cnp.int64_t[::1] bounds = np.cumsum([0] + [len(b) for b in blocks]).astype(np.int64)
    cdef Py_ssize_t nb = len(blocks)
    out_arr = np.empty(N, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef cnp.int64_t[::1] x = np.empty(max(n, 1), dtype=np.int64)
    cdef cnp.int64_t[::1] nxt = np.empty(max(n, 1), dtype=np.int64)
    # digits of c, advanced like an odometer instead of decoded by division
    cdef cnp.int64_t[::1] base = np.zeros(max(n, 1), dtype=np.int64)
    cdef Py_ssize_t c, i, t, cur, bi
    with nogil:
        for c in range(N):
            if c:
                i = n - 1
                while base[i] + 1 == radix[i]:
                    base[i] = 0
                    i -= 1
                base[i] += 1
            cur = c
            for i in range(n):
                x[i] = base[i]
            for bi in range(nb):
                for t in range(bounds[bi], bounds[bi + 1]):
                    i = members[t]
                    nxt[i] = tab[cur, i]
                for t in range(bounds[bi], bounds[bi + 1]):
                    i = members[t]
                    cur += (nxt[i] - x[i]) * stride[i]
                    x[i] = nxt[i]
            out[c] = cur
    return out_arr


def functional_cycles(succ):
    """Label the cycles of a functional graph; see ``_pykernels.functional_cycles``."""
    cdef const cnp.int64_t[::1] s = np.ascontiguousarray(succ, dtype=np.int64)
    cdef Py_ssize_t N = s.shape[0], start, x, ncyc = 0
    cid_arr = np.full(N, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] cid = cid_arr
    # walk marks: 0 unseen, otherwise 1 + the start of the walk that saw it
    cdef cnp.int64_t[::1] mark = np.zeros(N, dtype=np.int64)
    cycle_heads = []
    with nogil:
        for start in range(N):
            if mark[start]:
                continue
            x = start
            while not mark[x]:
                mark[x] = start + 1
                x = s[x]
            if mark[x] == start + 1 and cid[x] < 0:
                # x lies on a new cycle
                with gil:
                    cycle_heads.append(x)
                while cid[x] < 0:
                    cid[x] = ncyc
                    x = s[x]
                ncyc += 1
    cycles = []
    for head in cycle_heads:
        cyc = [head]
        x = s[head]
        while x != head:
            cyc.append(x)
            x = s[x]
        cycles.append(cyc)
    # same presentation as the fallback: cycles ordered by smallest node,
    # each starting at its smallest node
    order = sorted(range(len(cycles)), key=lambda k: min(cycles[k]))
    relabel = np.empty(len(cycles) + 1, dtype=np.int64)
    relabel[len(cycles)] = -1
    out_cycles = []
    for new, old in enumerate(order):
        relabel[old] = new
        cyc = cycles[old]
        m = cyc.index(min(cyc))
        out_cycles.append(cyc[m:] + cyc[:m])
    return relabel[cid_arr], out_cycles
