"""numba kernels on bit-packed adjacency rows."""

from __future__ import annotations

import numba
import numpy as np
from numba import njit, prange, types
from numba.extending import intrinsic

# the bundled TBB is too old on some systems; workqueue is always available
if numba.config.THREADING_LAYER == "default":
    numba.config.THREADING_LAYER = "workqueue"


@intrinsic
def popcount(typingctx, x):
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        return builder.ctpop(args[0])

    return sig, codegen


@intrinsic
def trailing_zeros(typingctx, x):
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        return builder.cttz(args[0], context.get_constant(types.boolean, False))

    return sig, codegen


def pack_rows(adj: np.ndarray) -> np.ndarray:
    """Pack a boolean matrix into rows of little-endian uint64 words."""
    v = adj.shape[0]
    words = max(1, (adj.shape[1] + 63) // 64)
    b = np.packbits(adj, axis=1, bitorder="little")
    out = np.zeros((v, words * 8), dtype=np.uint8)
    out[:, : b.shape[1]] = b
    return out.view(np.uint64).copy()


@njit(parallel=True, cache=True)
def common_edge_counts(rows):
    """For every pair x < y: edges inside N(x) & N(y), and min/max degree there.

    Returns three (v, v) int32 arrays filled on the strict upper triangle.
    """
    v, W = rows.shape
    edges = np.zeros((v, v), dtype=np.int32)
    dmin = np.zeros((v, v), dtype=np.int32)
    dmax = np.zeros((v, v), dtype=np.int32)
    for x in prange(v):
        mask = np.empty(W, dtype=np.uint64)
        for y in range(x + 1, v):
            nonempty = False
            for w in range(W):
                mask[w] = rows[x, w] & rows[y, w]
                if mask[w]:
                    nonempty = True
            total = 0
            lo = v
            hi = 0
            if nonempty:
                for w in range(W):
                    m = mask[w]
                    while m:
                        a = w * 64 + trailing_zeros(m)
                        m &= m - np.uint64(1)
                        s = 0
                        for u in range(W):
                            s += popcount(rows[a, u] & mask[u])
                        total += s
                        if s < lo:
                            lo = s
                        if s > hi:
                            hi = s
            else:
                lo = 0
            edges[x, y] = total // 2
            dmin[x, y] = lo
            dmax[x, y] = hi
    return edges, dmin, dmax


@njit(cache=True)
def _sub(digits, pw, p, a, b):
    out = 0
    for i in range(digits.shape[1]):
        out += ((digits[a, i] - digits[b, i]) % p) * pw[i]
    return out


@njit(cache=True)
def cayley_pair_stats(in_d, digits, pw, p, d):
    """Common neighbourhood statistics of the pair (0, d) in a Cayley graph.

    The group is (Z_p)^k with elements encoded by base-p digits; ``in_d``
    marks the connection set.  Returns (common neighbours, edges among
    them, min degree, max degree) of the induced subgraph.
    """
    q = in_d.shape[0]
    common = np.empty(q, dtype=np.int64)
    c = 0
    for a in range(q):
        if in_d[a] and in_d[_sub(digits, pw, p, a, d)]:
            common[c] = a
            c += 1
    total = 0
    lo = q
    hi = 0
    for i in range(c):
        s = 0
        for j in range(c):
            if i != j and in_d[_sub(digits, pw, p, common[i], common[j])]:
                s += 1
        total += s
        if s < lo:
            lo = s
        if s > hi:
            hi = s
    if c == 0:
        lo = 0
    return c, total // 2, lo, hi


# -- partition refinement ------------------------------------------------------
#
# An ordered partition is stored as ``lab`` (position -> vertex), ``inv``
# (vertex -> position), ``cstart`` (position -> start of its cell) and
# ``cend`` (cell start -> end, exclusive).  Every decision below depends
# only on cell positions and neighbour counts, never on vertex names, so
# the refined partition and its trace are isomorphism invariant.

_MIX = np.uint64(0x9E3779B97F4A7C15)


@njit(cache=True)
def _mix(h, a, b, c):
    x = np.uint64(a) * np.uint64(1000003) + np.uint64(b) * np.uint64(8191) + np.uint64(c)
    h ^= x + _MIX + (h << np.uint64(6)) + (h >> np.uint64(2))
    return h


@njit(cache=True)
def refine(indptr, indices, lab, inv, cstart, cend, ncells, queue_init):
    """Refine to the coarsest equitable partition finer than the given one.

    Cells in ``queue_init`` (by start position) seed the splitter queue.
    Returns (trace hash, number of cells).
    """
    v = lab.shape[0]
    h = np.uint64(ncells)
    queue = np.empty(3 * v + queue_init.shape[0] + 2, dtype=np.int64)
    inq = np.zeros(v, dtype=np.bool_)
    head = 0
    tail = 0
    for s in queue_init:
        queue[tail] = s
        tail += 1
        inq[s] = True
    cnt = np.zeros(v, dtype=np.int64)
    touched_v = np.empty(v, dtype=np.int64)
    cell_mark = np.zeros(v, dtype=np.int64)
    touched_c = np.empty(v, dtype=np.int64)
    keys = np.empty(v, dtype=np.int64)
    while head < tail and ncells < v:
        w = queue[head]
        head += 1
        inq[w] = False
        we = cend[w]
        nt = 0
        for pos in range(w, we):
            x = lab[pos]
            for t in range(indptr[x], indptr[x + 1]):
                u = indices[t]
                if cnt[u] == 0:
                    touched_v[nt] = u
                    nt += 1
                cnt[u] += 1
        nc = 0
        for i in range(nt):
            c = cstart[inv[touched_v[i]]]
            if cell_mark[c] == 0:
                touched_c[nc] = c
                nc += 1
            cell_mark[c] += 1
        tc = np.sort(touched_c[:nc])
        for ci in range(nc):
            s = tc[ci]
            e = cend[s]
            size = e - s
            ntouch = cell_mark[s]
            cell_mark[s] = 0
            if size == 1:
                h = _mix(h, s, 1, cnt[lab[s]])
                continue
            lo = cnt[lab[s]]
            uniform = ntouch == size
            if uniform:
                for pos in range(s + 1, e):
                    if cnt[lab[pos]] != lo:
                        uniform = False
                        break
            if uniform:
                h = _mix(h, s, size, lo)
                continue
            for pos in range(s, e):
                keys[pos - s] = cnt[lab[pos]]
            order = np.argsort(keys[:size])
            verts = lab[s:e].copy()
            for i in range(size):
                lab[s + i] = verts[order[i]]
                inv[lab[s + i]] = s + i
            # new cells where the count changes
            was_in = inq[s]
            best_start = s
            best_size = 0
            start = s
            for i in range(1, size + 1):
                if i == size or keys[order[i]] != keys[order[i - 1]]:
                    end = s + i
                    cend[start] = end
                    for pos in range(start, end):
                        cstart[pos] = start
                    h = _mix(h, start, end - start, keys[order[i - 1]])
                    if end - start > best_size:
                        best_size = end - start
                        best_start = start
                    if start != s:
                        ncells += 1
                    start = end
            # Hopcroft: all new pieces if the cell was queued, else all but the largest
            start = s
            while start < e:
                if (was_in or start != best_start) and not inq[start]:
                    queue[tail] = start
                    tail += 1
                    inq[start] = True
                start = cend[start]
        for i in range(nt):
            cnt[touched_v[i]] = 0
    return h, ncells


@njit(cache=True)
def target_cell(cend):
    """Start of the first smallest non-singleton cell, or -1 if discrete."""
    v = cend.shape[0]
    best = -1
    best_size = v + 1
    s = 0
    while s < v:
        e = cend[s]
        if 1 < e - s < best_size:
            best = s
            best_size = e - s
        s = e
    return best


@njit(cache=True)
def is_automorphism_csr(indptr, indices, perm, adj_rows):
    """Whether perm maps every edge to an edge (rows are bit-packed)."""
    v = perm.shape[0]
    for x in range(v):
        px = perm[x]
        for t in range(indptr[x], indptr[x + 1]):
            py = perm[indices[t]]
            if not (adj_rows[px, py >> 6] >> np.uint64(py & 63)) & np.uint64(1):
                return False
    return True
