# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled drawing loops; must stay bit-identical to ``_pure.py``."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

cdef uint64_t MASK53 = (<uint64_t>1 << 53) - 1

cdef struct Xoshiro:
    uint64_t s0, s1, s2, s3


cdef inline uint64_t rotl(uint64_t x, int k) nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t next_u64(Xoshiro* g) nogil:
    cdef uint64_t result = rotl(g.s1 * 5, 7) * 9
    cdef uint64_t t = g.s1 << 17
    g.s2 ^= g.s0
    g.s3 ^= g.s1
    g.s1 ^= g.s2
    g.s0 ^= g.s3
    g.s2 ^= t
    g.s3 = rotl(g.s3, 45)
    return result


cdef inline uint64_t bounded(Xoshiro* g, uint64_t L) nogil:
    # reject the lowest (2**64 mod L) words so x % L is exactly uniform
    cdef uint64_t threshold = (<uint64_t>0 - L) % L
    cdef uint64_t x
    while True:
        x = next_u64(g)
        if x >= threshold:
            return x % L


cdef inline uint64_t draw_index(Xoshiro* g, int mode, uint64_t N, int n, uint64_t L,
                                const uint64_t* slots, uint64_t nslots) nogil:
    cdef uint64_t idx = 0, frac, t
    cdef int i
    if mode == 0:
        return bounded(g, L)
    elif mode == 1:
        frac = next_u64(g) >> 11
        for i in range(n):
            t = frac * N
            idx = idx * N + (t >> 53)
            frac = t & MASK53
        return idx
    else:
        for i in range(n):
            idx = idx * N + slots[bounded(g, nslots)]
        return idx


cdef void load(Xoshiro* g, state):
    g.s0, g.s1, g.s2, g.s3 = state


cdef tuple dump(Xoshiro* g):
    return (g.s0, g.s1, g.s2, g.s3)


cdef uint64_t* copy_slots(slots, uint64_t* nslots) except NULL:
    cdef Py_ssize_t m = len(slots), i
    cdef uint64_t* buf = <uint64_t*>malloc((m if m > 0 else 1) * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    for i in range(m):
        buf[i] = slots[i]
    nslots[0] = m
    return buf


def sample_indices(state, int mode, uint64_t N, int n, uint64_t L, Py_ssize_t k, slots=()):
    """Draw ``k`` tuple indices; return ``(state, list_of_indices)``."""
    cdef Xoshiro g
    cdef uint64_t nslots
    cdef uint64_t* sl = copy_slots(slots, &nslots)
    cdef Py_ssize_t j
    out = [0] * k
    load(&g, state)
    try:
        for j in range(k):
            out[j] = draw_index(&g, mode, N, n, L, sl, nslots)
    finally:
        free(sl)
    return dump(&g), out


def count_indices(state, int mode, uint64_t N, int n, uint64_t L, Py_ssize_t k, slots=()):
    """Draw ``k`` tuple indices; return ``(state, counts)`` with ``len(counts) == L``."""
    cdef Xoshiro g
    cdef uint64_t nslots
    cdef Py_ssize_t cells = <Py_ssize_t>L, j
    cdef uint64_t* sl = copy_slots(slots, &nslots)
    cdef long long* counts = <long long*>malloc(cells * sizeof(long long))
    if counts == NULL:
        free(sl)
        raise MemoryError()
    load(&g, state)
    try:
        for j in range(cells):
            counts[j] = 0
        with nogil:
            for j in range(k):
                counts[draw_index(&g, mode, N, n, L, sl, nslots)] += 1
        result = [counts[j] for j in range(cells)]
    finally:
        free(sl)
        free(counts)
    return dump(&g), result
