# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pysearch``; must return identical results."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy


cdef void _refine(int n, const int* mat, int* lab, char* start, int* cnt) noexcept nogil:
    cdef int s, e, c, d, i, j, v, acc, first, key, split
    while True:
        split = 0
        s = 0
        while s < n:
            e = s + 1
            while e < n and not start[e]:
                e += 1
            for v in range(n):
                acc = 0
                for j in range(s, e):
                    acc = acc + mat[v * n + lab[j]]
                cnt[v] = acc
            c = 0
            while c < n:
                d = c + 1
                while d < n and not start[d]:
                    d += 1
                if d - c > 1:
                    first = cnt[lab[c]]
                    i = c + 1
                    while i < d and cnt[lab[i]] == first:
                        i += 1
                    if i < d:
                        # stable insertion sort by count
                        for i in range(c + 1, d):
                            v = lab[i]
                            key = cnt[v]
                            j = i - 1
                            while j >= c and cnt[lab[j]] > key:
                                lab[j + 1] = lab[j]
                                j -= 1
                            lab[j + 1] = v
                        for i in range(c + 1, d):
                            if cnt[lab[i]] != cnt[lab[i - 1]]:
                                start[i] = 1
                        split = 1
                c = d
            if split:
                break
            s = e
        if not split:
            return


cdef int _find(int* parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef class _Searcher:
    cdef int n
    cdef int certlen
    cdef int* mat
    cdef int* colors
    cdef int* cnt
    cdef int* labs
    cdef char* starts
    cdef int* prefix
    cdef int* parent
    cdef int* first
    cdef int* firstlab
    cdef int* best
    cdef int* cur
    cdef int* bestlab
    cdef int* perm
    cdef int have_best
    cdef list autos
    cdef set seen

    def __cinit__(self, int n, mat, colors):
        cdef int i
        self.n = n
        self.certlen = n + n * (n - 1) // 2
        self.mat = <int*> malloc(sizeof(int) * max(1, n * n))
        self.colors = <int*> malloc(sizeof(int) * max(1, n))
        self.cnt = <int*> malloc(sizeof(int) * max(1, n))
        self.labs = <int*> malloc(sizeof(int) * max(1, n * (n + 1)))
        self.starts = <char*> malloc(sizeof(char) * max(1, n * (n + 1)))
        self.prefix = <int*> malloc(sizeof(int) * max(1, n))
        self.parent = <int*> malloc(sizeof(int) * max(1, n))
        self.first = <int*> malloc(sizeof(int) * max(1, self.certlen))
        self.firstlab = <int*> malloc(sizeof(int) * max(1, n))
        self.best = <int*> malloc(sizeof(int) * max(1, self.certlen))
        self.cur = <int*> malloc(sizeof(int) * max(1, self.certlen))
        self.bestlab = <int*> malloc(sizeof(int) * max(1, n))
        self.perm = <int*> malloc(sizeof(int) * max(1, n))
        if (not self.mat or not self.colors or not self.cnt or not self.labs
                or not self.starts or not self.prefix or not self.parent
                or not self.first or not self.firstlab or not self.best
                or not self.cur or not self.bestlab or not self.perm):
            raise MemoryError()
        for i in range(n * n):
            self.mat[i] = mat[i]
        for i in range(n):
            self.colors[i] = colors[i]
        self.have_best = 0
        self.autos = []
        self.seen = set()

    def __dealloc__(self):
        free(self.mat)
        free(self.colors)
        free(self.cnt)
        free(self.labs)
        free(self.starts)
        free(self.prefix)
        free(self.parent)
        free(self.first)
        free(self.firstlab)
        free(self.best)
        free(self.cur)
        free(self.bestlab)
        free(self.perm)

    cdef void _record(self, int* ref, int* lab):
        cdef int n = self.n
        cdef int i, moved = 0
        for i in range(n):
            self.perm[ref[i]] = lab[i]
        for i in range(n):
            if self.perm[i] != i:
                moved = 1
                break
        if not moved:
            return
        p = tuple([self.perm[i] for i in range(n)])
        if p not in self.seen:
            self.seen.add(p)
            self.autos.append(p)

    cdef int _compare(self, int* a) noexcept:
        cdef int i
        for i in range(self.certlen):
            if self.cur[i] != a[i]:
                return -1 if self.cur[i] < a[i] else 1
        return 0

    cdef void _leaf(self, int* lab):
        cdef int n = self.n
        cdef int i, j, k = 0, cmp
        for i in range(n):
            self.cur[k] = self.colors[lab[i]]
            k += 1
        for i in range(n):
            for j in range(i + 1, n):
                self.cur[k] = self.mat[lab[i] * n + lab[j]]
                k += 1
        if not self.have_best:
            self.have_best = 1
            memcpy(self.first, self.cur, sizeof(int) * self.certlen)
            memcpy(self.best, self.cur, sizeof(int) * self.certlen)
            memcpy(self.firstlab, lab, sizeof(int) * n)
            memcpy(self.bestlab, lab, sizeof(int) * n)
            return
        if self._compare(self.first) == 0:
            self._record(self.firstlab, lab)
        cmp = self._compare(self.best)
        if cmp < 0:
            memcpy(self.best, self.cur, sizeof(int) * self.certlen)
            memcpy(self.bestlab, lab, sizeof(int) * n)
        elif cmp == 0:
            self._record(self.bestlab, lab)

    cdef void _orbits(self, int depth):
        cdef int n = self.n
        cdef int v, k, a, b, ok
        for v in range(n):
            self.parent[v] = v
        for p in self.autos:
            ok = 1
            for k in range(depth):
                if p[self.prefix[k]] != self.prefix[k]:
                    ok = 0
                    break
            if not ok:
                continue
            for v in range(n):
                a = _find(self.parent, v)
                b = _find(self.parent, <int> p[v])
                if a != b:
                    if a < b:
                        self.parent[b] = a
                    else:
                        self.parent[a] = b

    cdef void _search(self, int depth):
        cdef int n = self.n
        cdef int* lab = self.labs + depth * n
        cdef char* start = self.starts + depth * n
        cdef int* lab2
        cdef char* start2
        cdef int c, d, i, j, t, w, r, skip
        _refine(n, self.mat, lab, start, self.cnt)
        c = 0
        while c < n:
            d = c + 1
            while d < n and not start[d]:
                d += 1
            if d - c > 1:
                break
            c = d
        if c >= n:
            self._leaf(lab)
            return
        lab2 = self.labs + (depth + 1) * n
        start2 = self.starts + (depth + 1) * n
        cell = [lab[i] for i in range(c, d)]
        done = []
        for w in cell:
            if done:
                self._orbits(depth)
                r = _find(self.parent, w)
                skip = 0
                for x in done:
                    if _find(self.parent, <int> x) == r:
                        skip = 1
                        break
                if skip:
                    continue
            done.append(w)
            memcpy(lab2, lab, sizeof(int) * n)
            memcpy(start2, start, sizeof(char) * n)
            i = c
            while lab2[i] != w:
                i += 1
            t = lab2[c]
            lab2[c] = lab2[i]
            lab2[i] = t
            start2[c + 1] = 1
            self.prefix[depth] = w
            self._search(depth + 1)

    def run(self):
        cdef int n = self.n
        cdef int i
        order = sorted(range(n), key=lambda v: self.colors[v])
        for i in range(n):
            self.labs[i] = order[i]
            self.starts[i] = 0
        self.starts[0] = 1
        for i in range(1, n):
            if self.colors[order[i]] != self.colors[order[i - 1]]:
                self.starts[i] = 1
        self._search(0)
        cert = tuple([self.best[i] for i in range(self.certlen)])
        lab = tuple([self.bestlab[i] for i in range(n)])
        return cert, lab, self.autos


def canonical_search(int n, mat, colors):
    if n == 0:
        return (), (), []
    return _Searcher(n, mat, colors).run()
