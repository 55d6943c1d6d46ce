"""Slow, obviously correct reference implementations used by the tests."""

import itertools

import numpy as np


def naive_srg(adj):
    """(v, k, lambda, mu) by direct counting, or None."""
    v = len(adj)
    nbrs = [set(np.flatnonzero(adj[i]).tolist()) for i in range(v)]
    degs = {len(n) for n in nbrs}
    if len(degs) != 1:
        return None
    k = degs.pop()
    if k == 0 or k == v - 1:
        return None
    lam, mu = set(), set()
    for x, y in itertools.combinations(range(v), 2):
        c = len(nbrs[x] & nbrs[y])
        (lam if y in nbrs[x] else mu).add(c)
    if len(lam) > 1 or len(mu) > 1:
        return None
    return (v, k, lam.pop() if lam else 0, mu.pop() if mu else 0)


def naive_common_edges(adj):
    """Edges inside N(x) meet N(y), for every pair x < y."""
    v = len(adj)
    out = {}
    for x, y in itertools.combinations(range(v), 2):
        common = np.flatnonzero(adj[x] & adj[y])
        out[x, y] = int(adj[np.ix_(common, common)].sum() // 2)
    return out


def naive_four_vertex(adj):
    """(alpha, beta) if the 4-vertex condition holds, else None."""
    counts = naive_common_edges(adj)
    a = {c for (x, y), c in counts.items() if adj[x, y]}
    b = {c for (x, y), c in counts.items() if not adj[x, y]}
    if len(a) > 1 or len(b) > 1:
        return None
    return (a.pop() if a else 0, b.pop() if b else 0)


def brute_aut_order(adj, colors=None):
    v = len(adj)
    colors = [0] * v if colors is None else list(colors)
    count = 0
    for p in itertools.permutations(range(v)):
        p = np.array(p)
        if any(colors[i] != colors[p[i]] for i in range(v)):
            continue
        if np.array_equal(adj[np.ix_(p, p)], adj):
            count += 1
    return count


def poly_mulmod(a, b, modulus, p):
    """Product of coefficient lists (low degree first) modulo a monic polynomial."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    k = len(modulus) - 1
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * modulus[i]) % p
    return (prod + [0] * k)[:k]


def digits(x, p, k):
    return [(x // p**i) % p for i in range(k)]


def undigits(ds, p):
    return sum(int(c) * p**i for i, c in enumerate(ds))


def random_graph(rng, v, density=0.5):
    a = rng.random((v, v)) < density
    a = np.triu(a, 1)
    return a | a.T


def paley(q):
    sq = {(x * x) % q for x in range(1, q)}
    a = np.array([[(i - j) % q in sq for j in range(q)] for i in range(q)])
    np.fill_diagonal(a, False)
    return a


def petersen():
    vs = list(itertools.combinations(range(5), 2))
    return np.array([[not set(x) & set(y) for y in vs] for x in vs])


def rook(n):
    vs = list(itertools.product(range(n), repeat=2))
    a = np.array([[(x[0] == y[0]) != (x[1] == y[1]) for y in vs] for x in vs])
    return a


def shrikhande():
    vs = list(itertools.product(range(4), repeat=2))
    diffs = {(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)}
    return np.array([[((x[0] - y[0]) % 4, (x[1] - y[1]) % 4) in diffs for y in vs] for x in vs])


SMALL_SRGS = {
    "pentagon": (paley(5), (5, 2, 0, 1)),
    "petersen": (petersen(), (10, 3, 0, 1)),
    "paley13": (paley(13), (13, 6, 2, 3)),
    "rook3": (rook(3), (9, 4, 1, 2)),
    "rook4": (rook(4), (16, 6, 2, 2)),
    "shrikhande": (shrikhande(), (16, 6, 2, 2)),
    "2K3": (np.kron(np.eye(2, dtype=bool), ~np.eye(3, dtype=bool)), (6, 2, 1, 0)),
    "K33": (np.kron(~np.eye(2, dtype=bool), np.ones((3, 3), dtype=bool)), (6, 3, 0, 3)),
}


def random_relabel(a, rng):
    p = rng.permutation(len(a))
    return a[np.ix_(p, p)]


def oracle_corpus(n=500, seed=0):
    rng = np.random.default_rng(seed)
    import networkx as nx
    base = [a for a, _ in SMALL_SRGS.values()]
    base += [~a & ~np.eye(len(a), dtype=bool) for a in base]
    out = []
    for i in range(n):
        kind = i % 3
        if kind == 0:
            out.append(random_relabel(base[rng.integers(len(base))], rng))
        elif kind == 1:
            v = int(rng.integers(4, 17))
            d = int(rng.integers(1, v - 1))
            if v * d % 2:
                d = d - 1 if d > 1 else 2
            g = nx.random_regular_graph(d, v, seed=int(rng.integers(1 << 30)))
            out.append(nx.to_numpy_array(g, dtype=bool))
        else:
            out.append(random_graph(rng, int(rng.integers(3, 17)), rng.uniform(0.2, 0.8)))
    return out




def field_axioms_hold(F) -> bool:
    """Exhaustive check of the field axioms on the addition and multiplication tables."""
    q = F.q
    M = F.mul_table.astype(np.int64)
    A = F.add_table.astype(np.int64)
    e = np.arange(q)
    ok = np.array_equal(A[0], e) and np.array_equal(M[1], e) and not M[0].any()
    ok &= np.array_equal(A, A.T) and np.array_equal(M, M.T)
    ok &= all(len(set(row.tolist())) == q for row in A)
    ok &= all(len(set(row.tolist())) == q - 1 for row in M[1:, 1:])
    for a in range(q):
        ok &= np.array_equal(M[M[a]], M[a][M])
        ok &= np.array_equal(A[A[a]], A[a][A])
        ok &= np.array_equal(M[a][A], A[np.ix_(M[a], M[a])])
        if not ok:
            return False
    return bool(ok)
