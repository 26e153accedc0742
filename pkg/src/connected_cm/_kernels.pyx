# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend: stub shuffling, component labelling, Monte Carlo
batches, and exhaustive matching enumeration.

Contracts and random streams are bit-identical to ``connected_cm._kernels_py``.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memset

import numpy as np

BACKEND = "cython"

ctypedef unsigned long long u64
ctypedef long long i64

cdef u64 GAMMA = 0x9E3779B97F4A7C15ULL


cdef inline u64 mix64(u64 z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline u64 next64(u64 *state) nogil:
    state[0] = state[0] + GAMMA
    return mix64(state[0])


cdef inline u64 next_below(u64 *state, u64 bound) nogil:
    # Unbiased bounded draw by rejection; consumes the same number of raw
    # words as the pure-Python reference.
    cdef u64 rem = (0ULL - bound) % bound      # == 2^64 mod bound
    cdef u64 lim = 0ULL - rem                  # == 2^64 - rem (mod 2^64)
    cdef u64 x = next64(state)
    if rem > 0:
        while x >= lim:
            x = next64(state)
    return x % bound


cdef inline void fill_shuffled(i64 *order, i64 ell, u64 seed) nogil:
    cdef i64 i, j, tmp
    cdef u64 state = seed
    for i in range(ell):
        order[i] = i
    for i in range(ell - 1, 0, -1):
        j = <i64> next_below(&state, <u64> (i + 1))
        tmp = order[i]
        order[i] = order[j]
        order[j] = tmp


cdef inline i64 uf_find(i64 *parent, i64 x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def shuffle_order(ell, seed):
    """Random stub order; pairing consecutive entries gives the matching."""
    out = np.empty(ell, dtype=np.int64)
    cdef i64[::1] o = out
    if ell > 0:
        fill_shuffled(&o[0], ell, <u64> (seed & 0xFFFFFFFFFFFFFFFF))
    return out


# ---------------------------------------------------------------------------
# Edge hash set (open addressing, generation stamps so no per-draw memset)
# ---------------------------------------------------------------------------

cdef struct EdgeSet:
    u64 *keys
    i64 *stamp
    i64 cap_mask
    i64 gen


cdef inline bint edgeset_insert(EdgeSet *es, u64 key) nogil:
    """Insert; returns True when the key was already present."""
    cdef u64 h = mix64(key)
    cdef i64 idx = <i64> (h & <u64> es.cap_mask)
    while True:
        if es.stamp[idx] != es.gen:
            es.stamp[idx] = es.gen
            es.keys[idx] = key
            return False
        if es.keys[idx] == key:
            return True
        idx = (idx + 1) & es.cap_mask


cdef i64 _pow2_at_least(i64 n) nogil:
    cdef i64 c = 4
    while c < n:
        c <<= 1
    return c


def classify_flags(i64[::1] stub_vertex, i64 n_vertices, seeds):
    """Per seed: bit0 = projected multigraph connected, bit1 = simple."""
    cdef i64 ell = stub_vertex.shape[0]
    cdef u64[::1] sd = np.ascontiguousarray(seeds, dtype=np.uint64)
    cdef i64 nseeds = sd.shape[0]
    out = np.zeros(nseeds, dtype=np.uint8)
    cdef unsigned char[::1] o = out

    cdef i64 cap = _pow2_at_least(2 * ell + 4)
    cdef i64 *order = <i64 *> malloc(ell * sizeof(i64))
    cdef i64 *parent = <i64 *> malloc(n_vertices * sizeof(i64))
    cdef EdgeSet es
    es.keys = <u64 *> malloc(cap * sizeof(u64))
    es.stamp = <i64 *> malloc(cap * sizeof(i64))
    es.cap_mask = cap - 1
    es.gen = 0
    if order == NULL or parent == NULL or es.keys == NULL or es.stamp == NULL:
        raise MemoryError()
    memset(es.stamp, 0, cap * sizeof(i64))

    cdef i64 s, j, u, v, ru, rv, ncomp
    cdef bint simple
    with nogil:
        for s in range(nseeds):
            fill_shuffled(order, ell, sd[s])
            for v in range(n_vertices):
                parent[v] = v
            ncomp = n_vertices
            simple = True
            es.gen += 1
            for j in range(0, ell, 2):
                u = stub_vertex[order[j]]
                v = stub_vertex[order[j + 1]]
                if u == v:
                    simple = False
                else:
                    if u < v:
                        if edgeset_insert(&es, <u64> u * <u64> n_vertices + <u64> v):
                            simple = False
                    else:
                        if edgeset_insert(&es, <u64> v * <u64> n_vertices + <u64> u):
                            simple = False
                ru = uf_find(parent, u)
                rv = uf_find(parent, v)
                if ru != rv:
                    parent[rv] = ru
                    ncomp -= 1
            o[s] = (1 if ncomp == 1 else 0) | (2 if simple else 0)

    free(order)
    free(parent)
    free(es.keys)
    free(es.stamp)
    return out


cdef i64 _giant_root(i64 *stub_vertex, i64 *order, i64 ell,
                     i64 *parent, i64 *size, i64 *minv, i64 n_vertices) nogil:
    """Union-find over the paired stubs; returns the giant's root with ties
    broken toward the component holding the lowest vertex id."""
    cdef i64 j, u, v, ru, rv, best
    for v in range(n_vertices):
        parent[v] = v
        size[v] = 1
        minv[v] = v
    for j in range(0, ell, 2):
        u = stub_vertex[order[j]]
        v = stub_vertex[order[j + 1]]
        ru = uf_find(parent, u)
        rv = uf_find(parent, v)
        if ru != rv:
            parent[rv] = ru
            size[ru] += size[rv]
            if minv[rv] < minv[ru]:
                minv[ru] = minv[rv]
    best = -1
    for v in range(n_vertices):
        if parent[v] == v:
            if best < 0 or size[v] > size[best] or (
                size[v] == size[best] and minv[v] < minv[best]
            ):
                best = v
    return best


def giant_type_counts(i64[::1] stub_vertex, i64[::1] vertex_degree, seeds, i64 kmax):
    """Per seed: counts of degree-k vertices inside the largest component."""
    cdef i64 ell = stub_vertex.shape[0]
    cdef i64 n_vertices = vertex_degree.shape[0]
    cdef u64[::1] sd = np.ascontiguousarray(seeds, dtype=np.uint64)
    cdef i64 nseeds = sd.shape[0]
    out = np.zeros((nseeds, kmax + 1), dtype=np.int64)
    cdef i64[:, ::1] o = out

    cdef i64 *order = <i64 *> malloc(ell * sizeof(i64))
    cdef i64 *parent = <i64 *> malloc(n_vertices * sizeof(i64))
    cdef i64 *size = <i64 *> malloc(n_vertices * sizeof(i64))
    cdef i64 *minv = <i64 *> malloc(n_vertices * sizeof(i64))
    if order == NULL or parent == NULL or size == NULL or minv == NULL:
        raise MemoryError()

    cdef i64 s, v, groot
    with nogil:
        for s in range(nseeds):
            fill_shuffled(order, ell, sd[s])
            groot = _giant_root(&stub_vertex[0], order, ell, parent, size, minv, n_vertices)
            for v in range(n_vertices):
                if uf_find(parent, v) == groot:
                    o[s, vertex_degree[v]] += 1

    free(order)
    free(parent)
    free(size)
    free(minv)
    return out


def giant_match_scan(i64[::1] stub_vertex, i64[::1] vertex_degree, seeds,
                     i64[::1] target, bint require_simple_giant):
    """Scan seeds for draws whose giant has exactly the target type.

    Returns (hits, first_hit_index, min_distance, sum_distance); distance is
    sum_k |v_k(giant) - target_k| and first_hit_index is -1 without a hit.
    """
    cdef i64 ell = stub_vertex.shape[0]
    cdef i64 n_vertices = vertex_degree.shape[0]
    cdef i64 kmax = target.shape[0] - 1
    cdef u64[::1] sd = np.ascontiguousarray(seeds, dtype=np.uint64)
    cdef i64 nseeds = sd.shape[0]

    cdef i64 cap = _pow2_at_least(2 * ell + 4)
    cdef i64 *order = <i64 *> malloc(ell * sizeof(i64))
    cdef i64 *parent = <i64 *> malloc(n_vertices * sizeof(i64))
    cdef i64 *size = <i64 *> malloc(n_vertices * sizeof(i64))
    cdef i64 *minv = <i64 *> malloc(n_vertices * sizeof(i64))
    cdef i64 *counts = <i64 *> malloc((kmax + 1) * sizeof(i64))
    cdef EdgeSet es
    es.keys = <u64 *> malloc(cap * sizeof(u64))
    es.stamp = <i64 *> malloc(cap * sizeof(i64))
    es.cap_mask = cap - 1
    es.gen = 0
    if (order == NULL or parent == NULL or size == NULL or minv == NULL
            or counts == NULL or es.keys == NULL or es.stamp == NULL):
        raise MemoryError()
    memset(es.stamp, 0, cap * sizeof(i64))

    cdef i64 s, j, k, u, v, groot, dist
    cdef i64 hits = 0, first = -1, min_dist = -1, sum_dist = 0
    cdef bint ok
    with nogil:
        for s in range(nseeds):
            fill_shuffled(order, ell, sd[s])
            groot = _giant_root(&stub_vertex[0], order, ell, parent, size, minv, n_vertices)
            for k in range(kmax + 1):
                counts[k] = 0
            for v in range(n_vertices):
                if uf_find(parent, v) == groot:
                    counts[vertex_degree[v]] += 1
            dist = 0
            for k in range(kmax + 1):
                if counts[k] >= target[k]:
                    dist += counts[k] - target[k]
                else:
                    dist += target[k] - counts[k]
            sum_dist += dist
            if min_dist < 0 or dist < min_dist:
                min_dist = dist
            if dist == 0:
                ok = True
                if require_simple_giant:
                    es.gen += 1
                    for j in range(0, ell, 2):
                        u = stub_vertex[order[j]]
                        v = stub_vertex[order[j + 1]]
                        if uf_find(parent, u) != groot:
                            continue
                        if u == v:
                            ok = False
                            break
                        if u < v:
                            if edgeset_insert(&es, <u64> u * <u64> n_vertices + <u64> v):
                                ok = False
                                break
                        else:
                            if edgeset_insert(&es, <u64> v * <u64> n_vertices + <u64> u):
                                ok = False
                                break
                if ok:
                    hits += 1
                    if first < 0:
                        first = s

    free(order)
    free(parent)
    free(size)
    free(minv)
    free(counts)
    free(es.keys)
    free(es.stamp)
    return hits, first, min_dist, sum_dist


# ---------------------------------------------------------------------------
# Exhaustive matching enumeration (total degree <= 16)
# ---------------------------------------------------------------------------

cdef struct EnumCounters:
    i64 total
    i64 connected
    i64 simple
    i64 simple_connected


cdef void _classify_leaf(i64 *pa, i64 *pb, i64 npairs, i64 *sv, i64 n_vertices,
                         EnumCounters *ec, int *adj, i64 *parent,
                         bint *out_conn, bint *out_simp) nogil:
    cdef i64 t, u, v, ru, rv, ncomp
    cdef bint simple = True
    memset(adj, 0, n_vertices * n_vertices * sizeof(int))
    for v in range(n_vertices):
        parent[v] = v
    ncomp = n_vertices
    for t in range(npairs):
        u = sv[pa[t]]
        v = sv[pb[t]]
        if u == v:
            simple = False
        else:
            adj[u * n_vertices + v] += 1
            adj[v * n_vertices + u] += 1
            if adj[u * n_vertices + v] > 1:
                simple = False
        ru = uf_find(parent, u)
        rv = uf_find(parent, v)
        if ru != rv:
            parent[rv] = ru
            ncomp -= 1
    ec.total += 1
    if ncomp == 1:
        ec.connected += 1
    if simple:
        ec.simple += 1
        if ncomp == 1:
            ec.simple_connected += 1
    out_conn[0] = ncomp == 1
    out_simp[0] = simple


cdef void _enum_rec(i64 lowest, i64 ell, bint *used, i64 *pa, i64 *pb, i64 depth,
                    i64 *sv, i64 n_vertices, EnumCounters *ec,
                    int *adj, i64 *parent) nogil:
    cdef i64 a = lowest
    cdef i64 b
    cdef bint conn, simp
    while a < ell and used[a]:
        a += 1
    if a >= ell:
        _classify_leaf(pa, pb, depth, sv, n_vertices, ec, adj, parent, &conn, &simp)
        return
    used[a] = True
    for b in range(a + 1, ell):
        if used[b]:
            continue
        used[b] = True
        pa[depth] = a
        pb[depth] = b
        _enum_rec(a + 1, ell, used, pa, pb, depth + 1, sv, n_vertices, ec, adj, parent)
        used[b] = False
    used[a] = False


def enumerate_counts(i64[::1] stub_vertex, i64 n_vertices):
    """Exact (total, connected, simple, simple_and_connected) over all
    perfect matchings of the stubs."""
    cdef i64 ell = stub_vertex.shape[0]
    cdef EnumCounters ec
    ec.total = 0
    ec.connected = 0
    ec.simple = 0
    ec.simple_connected = 0
    if ell == 0:
        return 0, 0, 0, 0

    cdef bint *used = <bint *> malloc(ell * sizeof(bint))
    cdef i64 *pa = <i64 *> malloc((ell // 2) * sizeof(i64))
    cdef i64 *pb = <i64 *> malloc((ell // 2) * sizeof(i64))
    cdef int *adj = <int *> malloc(n_vertices * n_vertices * sizeof(int))
    cdef i64 *parent = <i64 *> malloc(n_vertices * sizeof(i64))
    if used == NULL or pa == NULL or pb == NULL or adj == NULL or parent == NULL:
        raise MemoryError()
    cdef i64 i
    for i in range(ell):
        used[i] = False
    with nogil:
        _enum_rec(0, ell, used, pa, pb, 0, &stub_vertex[0], n_vertices, &ec, adj, parent)
    free(used)
    free(pa)
    free(pb)
    free(adj)
    free(parent)
    return ec.total, ec.connected, ec.simple, ec.simple_connected


cdef void _census_rec(i64 lowest, i64 ell, bint *used, i64 *pa, i64 *pb, i64 depth,
                      i64 *sv, i64 n_vertices, EnumCounters *ec,
                      int *adj, i64 *parent, list deg_list, dict census):
    cdef i64 a = lowest
    cdef i64 b, v, r
    cdef bint conn, simp
    while a < ell and used[a]:
        a += 1
    if a >= ell:
        _classify_leaf(pa, pb, depth, sv, n_vertices, ec, adj, parent, &conn, &simp)
        groups = {}
        for v in range(n_vertices):
            r = uf_find(parent, v)
            g = groups.get(r)
            if g is None:
                g = {}
                groups[r] = g
            dv = deg_list[v]
            g[dv] = g.get(dv, 0) + 1
        for g in groups.values():
            sig = tuple(sorted(g.items()))
            entry = census.get(sig)
            if entry is None:
                census[sig] = [1, 1 if simp else 0]
            else:
                entry[0] += 1
                if simp:
                    entry[1] += 1
        return
    used[a] = True
    for b in range(a + 1, ell):
        if used[b]:
            continue
        used[b] = True
        pa[depth] = a
        pb[depth] = b
        _census_rec(a + 1, ell, used, pa, pb, depth + 1, sv, n_vertices, ec,
                    adj, parent, deg_list, census)
        used[b] = False
    used[a] = False


def component_census(i64[::1] stub_vertex, i64 n_vertices):
    """Exhaustive per-component type census.

    Returns ``(totals, census)``: totals is the enumerate_counts tuple and
    census maps ``((degree, count), ...)`` to ``[all, simple]`` occurrence
    counts over matchings.
    """
    cdef i64 ell = stub_vertex.shape[0]
    if ell == 0:
        return (0, 0, 0, 0), {}

    degree = np.zeros(n_vertices, dtype=np.int64)
    for s in np.asarray(stub_vertex):
        degree[s] += 1
    deg_list = degree.tolist()

    census = {}
    cdef EnumCounters ec
    ec.total = 0
    ec.connected = 0
    ec.simple = 0
    ec.simple_connected = 0

    cdef bint *used = <bint *> malloc(ell * sizeof(bint))
    cdef i64 *pa = <i64 *> malloc((ell // 2) * sizeof(i64))
    cdef i64 *pb = <i64 *> malloc((ell // 2) * sizeof(i64))
    cdef int *adj = <int *> malloc(n_vertices * n_vertices * sizeof(int))
    cdef i64 *parent = <i64 *> malloc(n_vertices * sizeof(i64))
    if used == NULL or pa == NULL or pb == NULL or adj == NULL or parent == NULL:
        raise MemoryError()
    cdef i64 i
    for i in range(ell):
        used[i] = False
    _census_rec(0, ell, used, pa, pb, 0, &stub_vertex[0], n_vertices, &ec,
                adj, parent, deg_list, census)
    free(used)
    free(pa)
    free(pb)
    free(adj)
    free(parent)
    return (ec.total, ec.connected, ec.simple, ec.simple_connected), census
