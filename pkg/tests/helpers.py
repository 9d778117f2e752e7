"""Independent array arithmetic used as oracles by several test modules."""

import numpy as np


def vpow(G, g, n):
    """g**n elementwise by binary exponentiation on arrays (n >= 0)."""
    g = np.asarray(g, dtype=np.int64)
    n = np.asarray(n, dtype=np.int64).copy()
    result = np.full(np.broadcast(g, n).shape, G.identity, dtype=np.int64)
    base = np.broadcast_to(g, result.shape).copy()
    while (n > 0).any():
        odd = (n & 1).astype(bool)
        result = np.where(odd, G.mul(result, base), result)
        base = G.mul(base, base)
        n >>= 1
    return result


def vinv(G, g):
    return G.inverses[np.asarray(g)]


def vcomm(G, g, h):
    """[g, h] = g^-1 h^-1 g h."""
    return G.mul(G.mul(vinv(G, g), vinv(G, h)), G.mul(g, h))


def closure_size(G, gens):
    """Plain Python BFS closure (oracle for the numpy closures)."""
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = G.multiply(a, s)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return len(seen)


def all_subgroups(G):
    """Every subgroup of a small group, as frozensets (joins of cyclic subgroups)."""
    def close(gens):
        seen = {G.identity}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    b = G.multiply(a, s)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(seen)

    cyclic = {close([g]) for g in range(G.order)}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        nxt = set()
        for H in frontier:
            for C in cyclic:
                if not C <= H:
                    J = close(list(H | C))
                    if J not in found:
                        found.add(J)
                        nxt.add(J)
        frontier = nxt
    return found


def frattini_by_definition(G):
    subs = all_subgroups(G)
    proper = [H for H in subs if len(H) < G.order]
    maximal = [H for H in proper if not any(H < K for K in proper)]
    if not maximal:
        return frozenset({G.identity})
    return frozenset.intersection(*maximal)


def monodromy_isomorphic(G, pair1, pair2):
    """Is there an edge bijection f with f L_x1 = L_x2 f and f L_y1 = L_y2 f?

    Uses only the left-multiplication permutations, one candidate f(e) at a time.
    """
    (x1, y1), (x2, y2) = pair1, pair2
    for c in range(G.order):
        f = {G.identity: c}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for g in frontier:
                for s, t in ((x1, x2), (y1, y2)):
                    src, dst = G.multiply(s, g), G.multiply(t, f[g])
                    if src in f:
                        if f[src] != dst:
                            ok = False
                            break
                    else:
                        f[src] = dst
                        nxt.append(src)
                if not ok:
                    break
            frontier = nxt
        if ok and len(f) == G.order and len(set(f.values())) == G.order:
            return True
    return False


def brute_force_class_count(G):
    """Number of dessin classes via pairwise monodromy tests (small groups only)."""
    pairs = [(x, y) for x in range(G.order) for y in range(G.order)
             if closure_size(G, [x, y]) == G.order]
    reps = []
    for p in pairs:
        if not any(monodromy_isomorphic(G, r, p) for r in reps):
            reps.append(p)
    return len(reps), len(pairs)
