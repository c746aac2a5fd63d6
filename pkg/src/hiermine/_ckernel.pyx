# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled counting and candidate kernels (mirror of ``_pykernel``)."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t
from libcpp.vector cimport vector

cnp.import_array()

NAME = "cython"


cdef inline Py_ssize_t lower_bound(const int64_t[::1] item, Py_ssize_t lo, Py_ssize_t hi,
                                   int64_t x) noexcept nogil:
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if item[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef void descend(const int64_t[::1] t, Py_ssize_t pos, Py_ssize_t end, Py_ssize_t node,
                  int remaining, const int64_t[::1] item, const int64_t[::1] ptr,
                  int64_t[::1] counts) noexcept nogil:
    cdef Py_ssize_t c = ptr[node]
    cdef Py_ssize_t ce = ptr[node + 1]
    cdef Py_ssize_t limit = end - remaining + 1
    cdef Py_ssize_t i = pos
    cdef int64_t x
    if c >= ce:
        return
    # many children vs a short suffix: binary search, else linear merge
    if ce - c > 8 * (limit - pos):
        while i < limit and c < ce:
            x = t[i]
            c = lower_bound(item, c, ce, x)
            if c < ce and item[c] == x:
                if remaining == 1:
                    counts[c] += 1
                else:
                    descend(t, i + 1, end, c, remaining - 1, item, ptr, counts)
                c += 1
            i += 1
        return
    while i < limit and c < ce:
        x = t[i]
        if item[c] < x:
            c += 1
        elif item[c] > x:
            i += 1
        else:
            if remaining == 1:
                counts[c] += 1
            else:
                descend(t, i + 1, end, c, remaining - 1, item, ptr, counts)
            c += 1
            i += 1


def count_level(const int64_t[::1] t_items, const int64_t[::1] t_offsets,
                Py_ssize_t t_lo, Py_ssize_t t_hi,
                const int64_t[::1] item, const int64_t[::1] ptr, int depth,
                int64_t[::1] counts):
    """Add containment counts of transactions ``[t_lo, t_hi)`` into the
    depth-`depth` entries of `counts`."""
    cdef Py_ssize_t r, a, b
    with nogil:
        for r in range(t_lo, t_hi):
            a = t_offsets[r]
            b = t_offsets[r + 1]
            if b - a < depth:
                continue
            descend(t_items, a, b, 0, depth, item, ptr, counts)


cdef bint contains(const int64_t* path, int n, const int64_t[::1] item,
                   const int64_t[::1] ptr) noexcept nogil:
    cdef Py_ssize_t v = 0, lo, hi
    cdef int d
    for d in range(n):
        hi = ptr[v + 1]
        lo = lower_bound(item, ptr[v], hi, path[d])
        if lo == hi or item[lo] != path[d]:
            return False
        v = lo
    return True


def generate_level(const int64_t[::1] item, const int64_t[::1] ptr,
                   const int64_t[::1] parent, Py_ssize_t lo, Py_ssize_t hi, int depth):
    """Join siblings among nodes ``lo..hi`` at `depth`, prune by subsets."""
    cdef vector[int64_t] out_parent, out_item
    cdef vector[int64_t] cand = vector[int64_t](depth + 1)
    cdef vector[int64_t] sub = vector[int64_t](depth)
    cdef Py_ssize_t v = lo, ci, cj, sib_end, u
    cdef int d, drop, k
    cdef bint ok
    with nogil:
        while v < hi:
            sib_end = ptr[parent[v] + 1]
            for ci in range(v, sib_end):
                u = ci
                for d in range(depth - 1, -1, -1):
                    cand[d] = item[u]
                    u = parent[u]
                for cj in range(ci + 1, sib_end):
                    cand[depth] = item[cj]
                    ok = True
                    for drop in range(depth - 1):
                        k = 0
                        for d in range(depth + 1):
                            if d != drop:
                                sub[k] = cand[d]
                                k += 1
                        if not contains(&sub[0], depth, item, ptr):
                            ok = False
                            break
                    if ok:
                        out_parent.push_back(ci)
                        out_item.push_back(item[cj])
            v = sib_end
    n = out_parent.size()
    new_parent = np.empty(n, dtype=np.int64)
    new_item = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] np_view = new_parent
    cdef int64_t[::1] ni_view = new_item
    cdef Py_ssize_t j
    for j in range(<Py_ssize_t> n):
        np_view[j] = out_parent[j]
        ni_view[j] = out_item[j]
    return new_parent, new_item
