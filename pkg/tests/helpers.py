import numpy as np

from hprodspec import graphs as g
from hprodspec.linalg import EigenDecomposition


def random_commuting_job(rng, orders=(4, 8, 16), l_range=(2, 6)):
    """Random H plus a commuting, regular factor family (circulant or Z_2^k Cayley)."""
    n = int(rng.choice(orders))
    l = int(rng.integers(l_range[0], l_range[1] + 1))
    if rng.random() < 0.5:
        factors = g.random_circulant_family(n, l, rng)
    else:
        factors = g.random_cayley_family(int(np.log2(n)), l, rng)
    H = g.random_graph(l, float(rng.uniform(0.2, 0.9)), rng)
    return H, factors


def random_params(rng, bound=3.0):
    while True:
        a, b, c, d = rng.uniform(-bound, bound, size=4)
        if abs(a) > 1e-3:
            return g.UniversalParams(float(a), float(b), float(c), float(d))


def component_count(G):
    """Connected components by union-find over the edge list."""
    parent = list(range(G.order))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in G.edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(G.order)})


def sym(rng, m, low=-2, high=2):
    X = rng.uniform(low, high, size=(m, m))
    return np.triu(X) + np.triu(X, 1).T


def eig2(a, b, r):
    """Closed-form eigenvalues of [[a, r], [r, b]], descending."""
    mid, half = (a + b) / 2, np.hypot((a - b) / 2, r)
    return np.array([mid + half, mid - half])


def tridiagonal_reference(blocks, rhos, k):
    """Tridiagonal special case computed from scratch: leftovers plus tridiagonal C_t spectra."""
    lams, vecs = [], []
    for B in blocks:
        w, V = np.linalg.eigh(B)
        lams.append(w[::-1])
        vecs.append(V[:, ::-1])
    out = [lam[k:] for lam in lams]
    for t in range(k):
        T = np.diag([lam[t] for lam in lams]) + np.diag(rhos, 1) + np.diag(rhos, -1)
        out.append(np.linalg.eigvalsh(T))
    sizes = [len(B) for B in blocks]
    off = np.concatenate([[0], np.cumsum(sizes)])
    C = np.zeros((off[-1], off[-1]))
    for j, B in enumerate(blocks):
        C[off[j] : off[j + 1], off[j] : off[j + 1]] = B
    for j, r in enumerate(rhos):
        X = r * vecs[j][:, :k] @ vecs[j + 1][:, :k].T
        C[off[j] : off[j + 1], off[j + 1] : off[j + 2]] = X
        C[off[j + 1] : off[j + 2], off[j] : off[j + 1]] = X.T
    decomps = tuple(EigenDecomposition(lam, V) for lam, V in zip(lams, vecs))
    return np.sort(np.concatenate(out))[::-1], C, decomps
