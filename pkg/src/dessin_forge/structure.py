"""Subgroup machinery: closures, derived and Frattini subgroups, abelian
invariants, lower central series, Sylow subsets and the generating-pair test."""

from __future__ import annotations

from math import log
from typing import Iterable, Optional, Sequence

import numpy as np
from sympy import factorint, primefactors

from .errors import NotGenerating, UnsupportedInput
from .groups import FiniteGroup
from .numbertheory import radical


def closure_mask(G: FiniteGroup, generators: Iterable[int]) -> np.ndarray:
    """Boolean membership mask of the subgroup generated by ``generators``."""
    gens = np.unique(np.asarray(list(generators), dtype=np.int64))
    mask = np.zeros(G.order, dtype=bool)
    mask[G.identity] = True
    if gens.size == 0:
        return mask
    frontier = gens[~mask[gens]]
    mask[frontier] = True
    while frontier.size:
        cand = np.asarray(G.mul(frontier[:, None], gens[None, :]), dtype=np.int64).ravel()
        cand = np.unique(cand[~mask[cand]])
        mask[cand] = True
        frontier = cand
    return mask


def subgroup_closure(G: FiniteGroup, generators: Sequence[int]) -> list[int]:
    """Elements of <generators>, ascending."""
    if len(generators) == 0:
        raise ValueError("at least one generator is required")
    return np.flatnonzero(closure_mask(G, generators)).tolist()


def _commutator_array(G: FiniteGroup, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    inv = G.inverses
    return G.mul(G.mul(inv[a], inv[b]), G.mul(a, b))


def derived_subgroup(G: FiniteGroup, x: int, y: int) -> list[int]:
    """G' as the closure of all conjugates of [x, y]; requires <x, y> = G."""
    if not closure_mask(G, (x, y)).all():
        raise NotGenerating(f"({x}, {y}) does not generate {G.label}")
    c = G.commutator(x, y)
    g = np.arange(G.order)
    conjugates = G.mul(G.mul(G.inverses[g], c), g)
    return np.flatnonzero(closure_mask(G, np.unique(conjugates))).tolist()


def commutator_mask(G: FiniteGroup, A: np.ndarray, B: Optional[np.ndarray] = None) -> np.ndarray:
    """Mask of [A, B] = <[a, b] : a in A, b in B> (B defaults to all of G)."""
    a = np.flatnonzero(A) if A.dtype == bool else np.asarray(A)
    b = np.arange(G.order) if B is None else (np.flatnonzero(B) if B.dtype == bool else np.asarray(B))
    values = np.zeros(G.order, dtype=bool)
    step = max(1, (1 << 22) // max(b.size, 1))
    for start in range(0, a.size, step):
        chunk = a[start:start + step]
        values[np.asarray(_commutator_array(G, chunk[:, None], b[None, :])).ravel()] = True
    return closure_mask(G, np.flatnonzero(values))


def commutator_subgroup(G: FiniteGroup) -> np.ndarray:
    if "derived" not in G.cache:
        G.cache["derived"] = commutator_mask(G, np.ones(G.order, dtype=bool))
    return G.cache["derived"]


def lower_central_series(G: FiniteGroup, max_terms: int = 64) -> list[np.ndarray]:
    """Masks of G = g1 >= g2 >= ... until the series stabilises."""
    series = [np.ones(G.order, dtype=bool)]
    while len(series) < max_terms:
        nxt = commutator_mask(G, series[-1])
        if nxt.sum() == series[-1].sum():
            break
        series.append(nxt)
    return series


def nilpotency_class(G: FiniteGroup) -> Optional[int]:
    """Nilpotency class, or None if the lower central series stalls above 1."""
    series = lower_central_series(G)
    if series[-1].sum() != 1:
        return None
    return len(series) - 1


def is_prime_power(n: int) -> bool:
    return n > 1 and len(primefactors(n)) == 1


def sylow_mask(G: FiniteGroup, p: int) -> np.ndarray:
    """Elements of p-power order."""
    orders = G.orders
    m = orders.copy()
    while True:
        divisible = m % p == 0
        if not divisible.any():
            break
        m[divisible] //= p
    return m == 1


def is_nilpotent(G: FiniteGroup) -> bool:
    """Each Sylow subset is closed under multiplication (so each Sylow subgroup is normal)."""
    for p in primefactors(G.order):
        s = np.flatnonzero(sylow_mask(G, p))
        prods = np.asarray(G.mul(s[:, None], s[None, :]))
        if not sylow_mask(G, p)[prods].all():
            return False
    return True


def frattini_subgroup(G: FiniteGroup) -> list[int]:
    """Phi(G) = G' G^p for a p-group G."""
    if not is_prime_power(G.order):
        if G.order == 1:
            return [G.identity]
        raise UnsupportedInput(f"Frattini subgroup is implemented for p-groups; |G| = {G.order}")
    return np.flatnonzero(_frattini_nilpotent(G)).tolist()


def _frattini_nilpotent(G: FiniteGroup) -> np.ndarray:
    """Phi(G) = G' <g^m> with m the radical of |G|; valid for nilpotent G."""
    if "frattini" not in G.cache:
        m = radical(G.order)
        g = np.arange(G.order)
        powers = g.copy()
        for _ in range(m - 1):
            powers = np.asarray(G.mul(powers, g))
        gens = np.flatnonzero(commutator_subgroup(G)).tolist() + np.unique(powers).tolist()
        G.cache["frattini"] = closure_mask(G, gens)
    return G.cache["frattini"]


def coset_labels(G: FiniteGroup, H: np.ndarray) -> np.ndarray:
    """Label each element by the least element of its coset gH (H a normal subgroup mask)."""
    h = np.flatnonzero(H)
    return np.asarray(G.mul(np.arange(G.order)[:, None], h[None, :])).min(axis=1)


def abelian_invariants(G: FiniteGroup, H: Optional[np.ndarray | Sequence[int]] = None) -> list[int]:
    """Invariant factors d1 | d2 | ... of G (or of G/H), ascending.

    ``H`` must be a normal subgroup containing G' (so the quotient is abelian).
    """
    if H is None:
        H_mask = np.zeros(G.order, dtype=bool)
        H_mask[G.identity] = True
    else:
        H_mask = np.asarray(H)
        if H_mask.dtype != bool:
            tmp = np.zeros(G.order, dtype=bool)
            tmp[H_mask] = True
            H_mask = tmp
    if not H_mask[np.flatnonzero(commutator_subgroup(G))].all():
        raise UnsupportedInput(f"{G.label} modulo the given subgroup is not abelian")
    labels = coset_labels(G, H_mask)
    reps = np.unique(labels)
    # order of gH: least n with g^n in H
    orders = np.zeros(reps.size, dtype=np.int64)
    current = reps.copy()
    k = 1
    while not orders.all():
        hit = H_mask[current] & (orders == 0)
        orders[hit] = k
        current = np.asarray(G.mul(current, reps))
        k += 1
    return invariant_factors_from_orders(orders.tolist())


def invariant_factors_from_orders(orders: Sequence[int]) -> list[int]:
    """Invariant factors of a finite abelian group given the multiset of its element orders."""
    total = len(orders)
    if total == 1:
        return []
    primary: dict[int, list[int]] = {}
    for p, top in factorint(total).items():
        # dims[k] = log_p #{g : g^(p^k) = 1} = sum_i min(e_i, k)
        dims = [0]
        while dims[-1] < top:
            k = len(dims)
            dims.append(round(log(sum(1 for o in orders if p**k % o == 0), p)))
        at_least = [dims[k] - dims[k - 1] for k in range(1, len(dims))] + [0]
        exps = []
        for k in range(1, len(at_least)):
            exps += [k] * (at_least[k - 1] - at_least[k])
        primary[p] = sorted(exps, reverse=True)
    width = max(len(v) for v in primary.values())
    factors = []
    for j in range(width):
        d = 1
        for p, exps in primary.items():
            if j < len(exps):
                d *= p ** exps[j]
        factors.append(d)
    return sorted(factors)


# -- generating pairs ----------------------------------------------------------


def is_generating_pair(G: FiniteGroup, x: int, y: int) -> bool:
    """True iff <x, y> = G (tested modulo Phi(G) for p-groups)."""
    if G.order == 1:
        return True
    if is_prime_power(G.order):
        return bool(generating_pair_mask(G)[x, y])
    return bool(closure_mask(G, (x, y)).all())


def generating_pair_mask(G: FiniteGroup, method: str = "auto") -> np.ndarray:
    """|G| x |G| boolean matrix, entry [x, y] true iff <x, y> = G.

    ``method="frattini"`` works in the quotient G/Phi(G) (nilpotent groups only);
    ``method="closure"`` computes subgroup closures directly. ``"auto"`` picks
    the Frattini route whenever G is nilpotent.
    """
    key = ("genmask", method)
    if key in G.cache:
        return G.cache[key]
    if method == "auto":
        method = "frattini" if is_nilpotent(G) else "closure"
    if method == "frattini":
        mask = _frattini_pair_mask(G)
    elif method == "closure":
        mask = _closure_pair_mask(G)
    else:
        raise ValueError(f"unknown method {method!r}")
    G.cache[key] = mask
    return mask


def _frattini_pair_mask(G: FiniteGroup) -> np.ndarray:
    if not is_nilpotent(G):
        raise UnsupportedInput("the Frattini route needs a nilpotent group")
    phi = _frattini_nilpotent(G)
    labels = coset_labels(G, phi)
    reps, label_index = np.unique(labels, return_inverse=True)
    k = reps.size
    # the quotient is abelian: <a, b> = Q iff |<a>||<b>| / |<a> & <b>| = |Q|
    cyclic_bits = []
    for r in reps:
        members = label_index[np.flatnonzero(closure_mask(G, [int(r)]))]
        cyclic_bits.append(sum(1 << int(m) for m in set(members.tolist())))
    sizes = [bin(b).count("1") for b in cyclic_bits]
    quotient_ok = np.zeros((k, k), dtype=bool)
    for i in range(k):
        for j in range(k):
            inter = bin(cyclic_bits[i] & cyclic_bits[j]).count("1")
            quotient_ok[i, j] = sizes[i] * sizes[j] == k * inter
    return quotient_ok[label_index[:, None], label_index[None, :]]


def _closure_pair_mask(G: FiniteGroup, batch: int = 2048) -> np.ndarray:
    """Direct closure test; <x, y> depends only on the cyclic subgroups <x>, <y>."""
    n = G.order
    t = G.table
    inv = G.inverses
    cyc_of = np.empty(n, dtype=np.int64)
    seen: dict[bytes, int] = {}
    reps = []
    for g in range(n):
        key = closure_mask(G, [g]).tobytes()
        if key not in seen:
            seen[key] = len(reps)
            reps.append(g)
        cyc_of[g] = seen[key]
    reps = np.array(reps, dtype=np.int64)
    c = reps.size
    ii, jj = np.divmod(np.arange(c * c), c)
    result = np.zeros(c * c, dtype=bool)
    for start in range(0, c * c, batch):
        xs = reps[ii[start:start + batch]]
        ys = reps[jj[start:start + batch]]
        b = xs.size
        rows = np.arange(b)[:, None]
        # reached[r, h]: h in the right-multiplication closure from the identity
        reached = np.zeros((b, n), dtype=bool)
        reached[:, G.identity] = True
        back_x = t[:, inv[xs]].T  # back_x[r, h] = h x_r^-1
        back_y = t[:, inv[ys]].T
        while True:
            nxt = reached | reached[rows, back_x] | reached[rows, back_y]
            if (nxt == reached).all():
                break
            reached = nxt
        result[start:start + b] = reached.all(axis=1)
    result = result.reshape(c, c)
    return result[cyc_of[:, None], cyc_of[None, :]]


def generating_pairs(G: FiniteGroup) -> np.ndarray:
    """Codes x * |G| + y of all generating pairs, ascending."""
    if G.order == 1:
        return np.array([0], dtype=np.int64)
    return np.flatnonzero(generating_pair_mask(G)).astype(np.int64)


def subgroup_as_group(G: FiniteGroup, members: np.ndarray | Sequence[int], label: str = "",
                      generators: Sequence[int] = ()) -> tuple[FiniteGroup, np.ndarray]:
    """Re-index a subgroup of G as a standalone group.

    Returns the new group and the array mapping new index -> old index
    (ascending in the old indices). ``generators`` are given as old indices.
    """
    members = np.asarray(members)
    if members.dtype == bool:
        members = np.flatnonzero(members)
    members = np.sort(members.astype(np.int64))
    position = {int(m): i for i, m in enumerate(members)}

    def mul(a, b):
        prod = np.asarray(G.mul(members[a], members[b]), dtype=np.int64)
        return np.searchsorted(members, prod)

    H = FiniteGroup(
        members.size,
        mul,
        identity=position[G.identity],
        generators=[position[int(g)] for g in generators],
        label=label or f"subgroup of {G.label}",
        namer=lambda e: G.name(int(members[e])),
    )
    return H, members


def sylow_subgroup(G: FiniteGroup, p: int) -> tuple[FiniteGroup, np.ndarray]:
    mask = sylow_mask(G, p)
    return subgroup_as_group(G, mask, label=f"Sylow-{p} of {G.label}")


def group_summary(G: FiniteGroup) -> dict:
    """Order, exponent, class, derived-subgroup and abelianisation invariants."""
    derived = commutator_subgroup(G)
    d_group, _ = subgroup_as_group(G, derived)
    return {
        "order": G.order,
        "exponent": G.exponent,
        "nilpotency_class": nilpotency_class(G),
        "derived_invariants": abelian_invariants(d_group),
        "abelianisation_invariants": abelian_invariants(G, derived),
    }

