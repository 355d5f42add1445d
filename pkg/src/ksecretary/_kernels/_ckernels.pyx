# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: permutation enumeration and seeded simulation trials.

Bit-for-bit twin of pyref.py (same RNG streams, same enumeration order, same
counters); the loader in __init__ picks whichever is available.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

import numpy as np

ctypedef unsigned long long u64
ctypedef long long i64

cdef extern from *:
    ctypedef unsigned long long u128 "__uint128_t"

NAME = "cython"

cdef int _SR = 0
cdef int _OPT = 1

SINGLE_REF = 0
OPTIMISTIC = 1

cdef u64 GOLDEN = <u64>0x9E3779B97F4A7C15
cdef u64 STREAM_SALT = <u64>0xD1B54A32D192ED03


# ---------------------------------------------------------------------------
# RNG: splitmix64 seeding + xoshiro256** (see _rng.py for the contract)

cdef inline u64 _mix64(u64 z) noexcept nogil:
    z = (z ^ (z >> 30)) * <u64>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <u64>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef struct XoState:
    u64 s0
    u64 s1
    u64 s2
    u64 s3


cdef inline void _seed_state(XoState* st, u64 seed, u64 stream) noexcept nogil:
    cdef u64 x = _mix64(seed ^ _mix64(stream * STREAM_SALT + GOLDEN))
    x += GOLDEN
    st.s0 = _mix64(x)
    x += GOLDEN
    st.s1 = _mix64(x)
    x += GOLDEN
    st.s2 = _mix64(x)
    x += GOLDEN
    st.s3 = _mix64(x)
    if st.s0 == 0 and st.s1 == 0 and st.s2 == 0 and st.s3 == 0:
        st.s0 = GOLDEN


cdef inline u64 _rotl(u64 x, int k) noexcept nogil:
    return (x << k) | (x >> (64 - k))


cdef inline u64 _next(XoState* st) noexcept nogil:
    cdef u64 s0 = st.s0
    cdef u64 s1 = st.s1
    cdef u64 s2 = st.s2
    cdef u64 s3 = st.s3
    cdef u64 out = _rotl(s1 * 5, 7) * 9
    cdef u64 t = s1 << 17
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = _rotl(s3, 45)
    st.s0 = s0
    st.s1 = s1
    st.s2 = s2
    st.s3 = s3
    return out


cdef inline u64 _below(XoState* st, u64 m) noexcept nogil:
    # multiply-shift with rejection; unbiased for any m >= 1
    cdef u128 prod = <u128>_next(st) * <u128>m
    cdef u64 low = <u64>prod
    cdef u64 threshold
    if low < m:
        threshold = (0 - m) % m
        while low < threshold:
            prod = <u128>_next(st) * <u128>m
            low = <u64>prod
    return <u64>(prod >> 64)


# ---------------------------------------------------------------------------
# Lexicographic permutation enumeration

cdef inline bint _next_perm(int* a, int lo, int n) noexcept nogil:
    # next lexicographic permutation of a[lo..n-1]; 0 once exhausted
    cdef int i = n - 2
    cdef int j, tmp, x, y
    while i >= lo and a[i] >= a[i + 1]:
        i -= 1
    if i < lo:
        return 0
    j = n - 1
    while a[j] <= a[i]:
        j -= 1
    tmp = a[i]
    a[i] = a[j]
    a[j] = tmp
    x = i + 1
    y = n - 1
    while x < y:
        tmp = a[x]
        a[x] = a[y]
        a[y] = tmp
        x += 1
        y -= 1
    return 1


cdef inline void _insert_best(int* best, int size, int v) noexcept nogil:
    # keep `best` the ascending `size` smallest ranks seen so far
    cdef int pos
    if v >= best[size - 1]:
        return
    pos = size - 1
    while pos > 0 and best[pos - 1] > v:
        best[pos] = best[pos - 1]
        pos -= 1
    best[pos] = v


cdef void _count_table_core(int n, int k, int t, int r, int policy, i64* counts,
                            int* arr, int* best) noexcept nogil:
    cdef int sample_len = t - 1
    cdef int ref_size = r if policy == _SR else k
    cdef int p, v, z, cnt, ii
    while True:
        for ii in range(ref_size):
            best[ii] = n + 1
        for p in range(sample_len):
            _insert_best(best, ref_size, arr[p])
        cnt = 0
        if policy == _SR:
            z = best[r - 1]
            for p in range(sample_len, n):
                v = arr[p]
                if v < z:
                    counts[(v - 1) * k + cnt] += 1
                    cnt += 1
                    if cnt == k:
                        break
        else:
            for p in range(sample_len, n):
                v = arr[p]
                if v < best[k - 1 - cnt]:
                    counts[(v - 1) * k + cnt] += 1
                    cnt += 1
                    if cnt == k:
                        break
        if not _next_perm(arr, 1, n):
            break


def count_table_chunk(int n, int k, int t, int r, int policy, int lead):
    """Acceptance counts over all permutations whose first element is `lead`."""
    out = np.zeros((n, k), dtype=np.int64)
    cdef i64[:, ::1] view = out
    cdef int* arr = <int*>malloc(n * sizeof(int))
    cdef int ref_size = r if policy == _SR else k
    cdef int* best = <int*>malloc(ref_size * sizeof(int))
    cdef int ii, x
    if arr == NULL or best == NULL:
        free(arr)
        free(best)
        raise MemoryError()
    try:
        arr[0] = lead
        ii = 1
        for x in range(1, n + 1):
            if x != lead:
                arr[ii] = x
                ii += 1
        with nogil:
            _count_table_core(n, k, t, r, policy, &view[0, 0], arr, best)
    finally:
        free(arr)
        free(best)
    return out


cdef i64 _count_delta_core(int n, int t, int* arr, int* best) noexcept nogil:
    cdef int sample_len = t - 1
    cdef i64 hits = 0
    cdef int p, v, cnt, ii
    cdef bint saw2
    while True:
        best[0] = n + 1
        best[1] = n + 1
        saw2 = 0
        for p in range(sample_len):
            if arr[p] == 2:
                saw2 = 1
            _insert_best(best, 2, arr[p])
        if saw2:
            cnt = 0
            for p in range(sample_len, n):
                v = arr[p]
                if v < best[1 - cnt]:
                    if cnt == 1 and v == 1:
                        hits += 1
                    cnt += 1
                    if cnt == 2:
                        break
        if not _next_perm(arr, 1, n):
            break
    return hits


def count_delta_chunk(int n, int t, int lead):
    """Permutations (first element `lead`) where rank 2 is sampled and the
    optimistic k=2 policy accepts rank 1 as its second item."""
    cdef int* arr = <int*>malloc(n * sizeof(int))
    cdef int* best = <int*>malloc(2 * sizeof(int))
    cdef int ii, x
    cdef i64 hits
    if arr == NULL or best == NULL:
        free(arr)
        free(best)
        raise MemoryError()
    try:
        arr[0] = lead
        ii = 1
        for x in range(1, n + 1):
            if x != lead:
                arr[ii] = x
                ii += 1
        with nogil:
            hits = _count_delta_core(n, t, arr, best)
    finally:
        free(arr)
        free(best)
    return hits


# ---------------------------------------------------------------------------
# Monte Carlo trials

cdef void _mc_core(int n, int k, int t, int r, int policy, u64 seed,
                   i64 start, i64 count, i64* slot, double* vals,
                   i64* pay_sum, i64* pay_sumsq,
                   double* val_sum, double* val_sumsq,
                   int* base, int* arr, int* best) noexcept nogil:
    cdef int sample_len = t - 1
    cdef int ref_size = r if policy == _SR else k
    cdef i64 trial
    cdef XoState st
    cdef int p, q, v, z, cnt, hits, ii, tmp, threshold
    cdef double alg
    for trial in range(start, start + count):
        _seed_state(&st, seed, <u64>trial)
        memcpy(arr, base, n * sizeof(int))
        for ii in range(ref_size):
            best[ii] = n + 1
        for p in range(sample_len):
            q = p + <int>_below(&st, <u64>(n - p))
            tmp = arr[p]
            arr[p] = arr[q]
            arr[q] = tmp
            _insert_best(best, ref_size, arr[p])
        cnt = 0
        hits = 0
        alg = 0.0
        z = best[r - 1] if policy == _SR else 0
        for p in range(sample_len, n):
            if n - p > 1:
                q = p + <int>_below(&st, <u64>(n - p))
                tmp = arr[p]
                arr[p] = arr[q]
                arr[q] = tmp
            v = arr[p]
            threshold = z if policy == _SR else best[k - 1 - cnt]
            if v < threshold:
                if v <= k:
                    slot[(v - 1) * k + cnt] += 1
                    hits += 1
                if vals != NULL:
                    alg += vals[v - 1]
                cnt += 1
                if cnt == k:
                    break
        pay_sum[0] += hits
        pay_sumsq[0] += <i64>hits * <i64>hits
        if vals != NULL:
            val_sum[0] += alg
            val_sumsq[0] += alg * alg


def mc_chunk(int n, int k, int t, int r, int policy, seed,
             long long start, long long count, values=None):
    """Simulate trials [start, start+count); see pyref.mc_chunk."""
    slot = np.zeros((k, k), dtype=np.int64)
    cdef i64[:, ::1] slot_view = slot
    cdef u64 seed_u = <u64>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    cdef double[::1] vals_view
    cdef double* vals_ptr = NULL
    vals_arr = None
    if values is not None:
        vals_arr = np.ascontiguousarray(values, dtype=np.float64)
        if vals_arr.shape[0] != n:
            raise ValueError("values must have one entry per rank")
        vals_view = vals_arr
        vals_ptr = &vals_view[0]
    cdef int* base = <int*>malloc(n * sizeof(int))
    cdef int* arr = <int*>malloc(n * sizeof(int))
    cdef int ref_size = r if policy == _SR else k
    cdef int* best = <int*>malloc(ref_size * sizeof(int))
    cdef i64 pay_sum = 0, pay_sumsq = 0
    cdef double val_sum = 0.0, val_sumsq = 0.0
    cdef int ii
    if base == NULL or arr == NULL or best == NULL:
        free(base)
        free(arr)
        free(best)
        raise MemoryError()
    try:
        for ii in range(n):
            base[ii] = ii + 1
        with nogil:
            _mc_core(n, k, t, r, policy, seed_u, start, count,
                     &slot_view[0, 0], vals_ptr,
                     &pay_sum, &pay_sumsq, &val_sum, &val_sumsq,
                     base, arr, best)
    finally:
        free(base)
        free(arr)
        free(best)
    return slot, pay_sum, pay_sumsq, val_sum, val_sumsq


def xoshiro_outputs(seed, stream, int count):
    """Raw u64 outputs of one stream (cross-backend parity checks)."""
    cdef XoState st
    cdef u64 seed_u = <u64>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    cdef u64 stream_u = <u64>(int(stream) & 0xFFFFFFFFFFFFFFFF)
    _seed_state(&st, seed_u, stream_u)
    out = []
    cdef int i
    for i in range(count):
        out.append(_next(&st))
    return out
