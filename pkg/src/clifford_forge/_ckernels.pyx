# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels over F_p; same contract as _pykernels.

The enumeration loop runs without the GIL so that disjoint index ranges can be
searched from several threads at once.
"""

from libc.stdint cimport int64_t
from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy, memset

from ._pykernels import relation_levels


cdef struct Problem:
    int64_t p
    int n
    int N2
    int ngens
    int64_t total
    int* level_start      # ngens + 1 entries, indices into rel_*
    int* rel_tstart       # nrel + 1 entries, indices into term_*
    int64_t* term_coeff
    int* term_lstart      # nterm + 1 entries, indices into letters
    int* letters
    int64_t* mats         # ngens * N2
    int64_t* prod
    int64_t* tmp
    int64_t* acc
    int64_t* found        # growable buffer of solutions, ngens * N2 entries each
    int64_t nfound
    int64_t capfound


cdef inline void _matmul(const int64_t* A, const int64_t* B, int64_t* C, int n, int64_t p) noexcept nogil:
    cdef int i, j, k
    cdef int64_t s
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s = (s + A[i * n + k] * B[k * n + j]) % p
            C[i * n + j] = s


cdef bint _rel_vanishes(Problem* P, int r) noexcept nogil:
    cdef int t, l, i, N2 = P.N2, n = P.n
    cdef int64_t c, p = P.p
    cdef int64_t* swap
    memset(P.acc, 0, N2 * sizeof(int64_t))
    for t in range(P.rel_tstart[r], P.rel_tstart[r + 1]):
        c = P.term_coeff[t]
        if P.term_lstart[t] == P.term_lstart[t + 1]:
            for i in range(n):
                P.acc[i * n + i] = (P.acc[i * n + i] + c) % p
            continue
        memcpy(P.prod, P.mats + P.letters[P.term_lstart[t]] * N2, N2 * sizeof(int64_t))
        for l in range(P.term_lstart[t] + 1, P.term_lstart[t + 1]):
            _matmul(P.prod, P.mats + P.letters[l] * N2, P.tmp, n, p)
            swap = P.prod
            P.prod = P.tmp
            P.tmp = swap
        for i in range(N2):
            P.acc[i] = (P.acc[i] + c * P.prod[i]) % p
    for i in range(N2):
        if P.acc[i] != 0:
            return False
    return True


cdef inline void _decode(int64_t idx, int64_t p, int N2, int64_t* out) noexcept nogil:
    cdef int pos
    for pos in range(N2 - 1, -1, -1):
        out[pos] = idx % p
        idx = idx // p


cdef int _record(Problem* P) noexcept nogil:
    cdef int64_t width = P.ngens * P.N2
    cdef int64_t* grown
    if P.nfound == P.capfound:
        grown = <int64_t*> realloc(P.found, 2 * P.capfound * width * sizeof(int64_t))
        if grown == NULL:
            return -1
        P.found = grown
        P.capfound *= 2
    memcpy(P.found + P.nfound * width, P.mats, width * sizeof(int64_t))
    P.nfound += 1
    return 0


cdef int _search(Problem* P, int k, int64_t lo, int64_t hi) noexcept nogil:
    cdef int64_t idx
    cdef int r
    cdef bint ok
    for idx in range(lo, hi):
        _decode(idx, P.p, P.N2, P.mats + k * P.N2)
        ok = True
        for r in range(P.level_start[k], P.level_start[k + 1]):
            if not _rel_vanishes(P, r):
                ok = False
                break
        if not ok:
            continue
        if k == P.ngens - 1:
            if _record(P) != 0:
                return -1
        elif _search(P, k + 1, 0, P.total) != 0:
            return -1
    return 0


cdef int _load(Problem* P, int64_t p, int n, int ngens, list ordered, list level_sizes) except -1:
    cdef int N2 = n * n
    cdef int i, t, l, pos
    nterm = sum(len(rel) for rel in ordered)
    nlet = sum(len(w) for rel in ordered for _, w in rel)
    P.p = p
    P.n = n
    P.N2 = N2
    P.ngens = ngens
    P.total = p ** N2
    P.level_start = <int*> malloc((ngens + 1) * sizeof(int))
    P.rel_tstart = <int*> malloc((len(ordered) + 1) * sizeof(int))
    P.term_coeff = <int64_t*> malloc((nterm + 1) * sizeof(int64_t))
    P.term_lstart = <int*> malloc((nterm + 1) * sizeof(int))
    P.letters = <int*> malloc((nlet + 1) * sizeof(int))
    P.mats = <int64_t*> malloc(ngens * N2 * sizeof(int64_t))
    P.prod = <int64_t*> malloc(N2 * sizeof(int64_t))
    P.tmp = <int64_t*> malloc(N2 * sizeof(int64_t))
    P.acc = <int64_t*> malloc(N2 * sizeof(int64_t))
    P.capfound = 16
    P.nfound = 0
    P.found = <int64_t*> malloc(P.capfound * ngens * N2 * sizeof(int64_t))
    if (P.level_start == NULL or P.rel_tstart == NULL or P.term_coeff == NULL
            or P.term_lstart == NULL or P.letters == NULL or P.mats == NULL
            or P.prod == NULL or P.tmp == NULL or P.acc == NULL or P.found == NULL):
        raise MemoryError()
    pos = 0
    for i in range(ngens):
        P.level_start[i] = pos
        pos += level_sizes[i]
    P.level_start[ngens] = pos
    t = 0
    l = 0
    for i, rel in enumerate(ordered):
        P.rel_tstart[i] = t
        for c, w in rel:
            P.term_coeff[t] = c % p
            P.term_lstart[t] = l
            for j in w:
                P.letters[l] = j
                l += 1
            t += 1
    P.rel_tstart[len(ordered)] = t
    P.term_lstart[t] = l
    return 0


cdef void _release(Problem* P) noexcept:
    free(P.level_start)
    free(P.rel_tstart)
    free(P.term_coeff)
    free(P.term_lstart)
    free(P.letters)
    free(P.mats)
    free(P.prod)
    free(P.tmp)
    free(P.acc)
    free(P.found)


cdef Problem _blank():
    cdef Problem P
    memset(&P, 0, sizeof(Problem))
    return P


def search_fp(p, n, ngens, relations, lo, hi):
    """All solutions with first-matrix index in [lo, hi), lexicographic order."""
    cdef Problem P = _blank()
    cdef int rc
    cdef int64_t clo = lo, chi = hi
    cdef int64_t i, j, width
    levels = relation_levels(ngens, relations)
    if levels is None or n == 0:
        return []
    if p >= 2 ** 31:
        raise OverflowError("compiled kernel needs p < 2^31")
    try:
        _load(&P, p, n, ngens, [rel for lv in levels for rel in lv], [len(lv) for lv in levels])
        with nogil:
            rc = _search(&P, 0, clo, chi)
        if rc != 0:
            raise MemoryError("solution buffer allocation failed")
        width = ngens * n * n
        return [tuple(P.found[i * width + j] for j in range(width)) for i in range(P.nfound)]
    finally:
        _release(&P)


def relations_vanish_fp(p, n, flat, ngens, relations):
    cdef Problem P = _blank()
    cdef int r, nrel
    cdef int64_t k
    if p >= 2 ** 31:
        raise OverflowError("compiled kernel needs p < 2^31")
    rels = list(relations)
    nrel = len(rels)
    try:
        _load(&P, p, n, ngens, rels, [nrel] + [0] * (ngens - 1))
        for k in range(ngens * n * n):
            P.mats[k] = flat[k] % p
        for r in range(nrel):
            if not _rel_vanishes(&P, r):
                return False
        return True
    finally:
        _release(&P)
