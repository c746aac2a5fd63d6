"""Pure-Python counting and candidate kernels.

Same contract as the compiled ``_ckernel`` module and used when the
extension is not built.  The trie is flat and breadth-first: node ``v`` has
label ``item[v]``, parent ``parent[v]`` and children ``ptr[v]:ptr[v + 1]``
in ascending label order; node 0 is the root.
"""

import numpy as np

NAME = "python"


def count_level(t_items, t_offsets, t_lo, t_hi, item, ptr, depth, counts):
    """Add, for every depth-`depth` node, the number of transactions in
    ``[t_lo, t_hi)`` containing its itemset into ``counts[node]``."""
    items = t_items.tolist()
    offs = t_offsets.tolist()
    ptr_l = ptr.tolist()
    item_l = item.tolist()
    first_leaf = _depth_start(ptr_l, depth)
    children = {}
    for v in range(first_leaf):
        a, b = ptr_l[v], ptr_l[v + 1]
        if a < b:
            children[v] = {item_l[c]: c for c in range(a, b)}
    hits = [0] * len(item_l)

    def descend(node, t, pos, end, remaining):
        kids = children.get(node)
        if kids is None:
            return
        if remaining == 1:
            for i in range(pos, end):
                c = kids.get(t[i])
                if c is not None:
                    hits[c] += 1
            return
        for i in range(pos, end - remaining + 1):
            c = kids.get(t[i])
            if c is not None:
                descend(c, t, i + 1, end, remaining - 1)

    for r in range(t_lo, t_hi):
        a, b = offs[r], offs[r + 1]
        if b - a < depth:
            continue
        t = items[a:b]
        descend(0, t, 0, len(t), depth)
    counts += np.asarray(hits, dtype=np.int64)


def _depth_start(ptr_l, depth):
    # walk the first-child chain: node index where `depth` begins
    v = 0
    for _ in range(depth):
        v = ptr_l[v]
    return v


def _path(v, parent_l, item_l, depth):
    out = [0] * depth
    for d in range(depth - 1, -1, -1):
        out[d] = item_l[v]
        v = parent_l[v]
    return out


def _contains(path, item_l, ptr_l):
    v = 0
    for x in path:
        lo, hi = ptr_l[v], ptr_l[v + 1]
        while lo < hi:
            mid = (lo + hi) // 2
            if item_l[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        if lo == ptr_l[v + 1] or item_l[lo] != x:
            return False
        v = lo
    return True


def generate_level(item, ptr, parent, lo, hi, depth):
    """Join sibling nodes ``lo..hi`` (all at `depth`) and prune.

    Returns ``(new_parent, new_item)`` for the depth+1 candidates in
    breadth-first order.
    """
    item_l = item.tolist()
    ptr_l = ptr.tolist()
    parent_l = parent.tolist()
    new_parent, new_item = [], []
    v = lo
    while v < hi:
        p = parent_l[v]
        sib_end = ptr_l[p + 1]
        for ci in range(v, sib_end):
            base = _path(ci, parent_l, item_l, depth) if depth > 1 else None
            for cj in range(ci + 1, sib_end):
                x = item_l[cj]
                if depth > 1:
                    cand = base + [x]
                    ok = True
                    for drop in range(depth - 1):
                        if not _contains(cand[:drop] + cand[drop + 1:], item_l, ptr_l):
                            ok = False
                            break
                    if not ok:
                        continue
                new_parent.append(ci)
                new_item.append(x)
        v = sib_end
    return np.asarray(new_parent, dtype=np.int64), np.asarray(new_item, dtype=np.int64)
