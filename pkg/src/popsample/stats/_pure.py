"""Pure-Python drawing loops, bit-identical to the compiled ``_kernels``.

Generator: xoshiro256** (Blackman & Vigna).  State is a 4-tuple of
unsigned 64-bit ints.
"""

M64 = (1 << 64) - 1
MASK53 = (1 << 53) - 1


def next_u64(s):
    """Advance the state list ``s`` in place and return the next output."""
    s0, s1, s2, s3 = s
    x = (s1 * 5) & M64
    result = ((((x << 7) | (x >> 57)) & M64) * 9) & M64
    t = (s1 << 17) & M64
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = ((s3 << 45) | (s3 >> 19)) & M64
    s[0], s[1], s[2], s[3] = s0, s1, s2, s3
    return result


def bounded(s, L):
    # reject the lowest (2**64 mod L) words so x % L is exactly uniform
    threshold = (1 << 64) % L
    while True:
        x = next_u64(s)
        if x >= threshold:
            return x % L


def draw_index(s, mode, N, n, L, slots):
    if mode == 0:
        return bounded(s, L)
    idx = 0
    if mode == 1:
        frac = next_u64(s) >> 11
        for _ in range(n):
            t = frac * N
            idx = idx * N + (t >> 53)
            frac = t & MASK53
        return idx
    m = len(slots)
    for _ in range(n):
        idx = idx * N + slots[bounded(s, m)]
    return idx


def sample_indices(state, mode, N, n, L, k, slots=()):
    s = list(state)
    out = [draw_index(s, mode, N, n, L, slots) for _ in range(k)]
    return tuple(s), out


def count_indices(state, mode, N, n, L, k, slots=()):
    s = list(state)
    counts = [0] * L
    for _ in range(k):
        counts[draw_index(s, mode, N, n, L, slots)] += 1
    return tuple(s), counts
