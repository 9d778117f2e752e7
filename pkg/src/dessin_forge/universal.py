"""Parallel products, the universal cover U(G), and Sylow decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from sympy import factorint

from .config import default_order_cap
from .dessin import (
    RegularDessin,
    enumerate_dessins,
    invariants,
    make_dessin,
)
from .errors import OrderCapExceeded, UnsupportedInput
from .groups import FiniteGroup
from .structure import is_nilpotent, sylow_mask, subgroup_as_group


@dataclass(frozen=True)
class ProductDessin:
    """A dessin living on the subgroup of a direct product generated by a diagonal pair."""

    ambient: tuple[str, ...]
    carrier: RegularDessin
    factors: tuple[dict, ...] = field(default=())

    @property
    def group(self) -> FiniteGroup:
        return self.carrier.group


def _diagonal_subgroup(G1: FiniteGroup, G2: FiniteGroup, gens: Sequence[tuple[int, int]],
                       order_cap: int) -> tuple[FiniteGroup, list[int]]:
    """Subgroup of G1 x G2 generated by ``gens``, re-indexed in ascending pair order."""
    n2 = G2.order
    gen_codes = np.array([a * n2 + b for a, b in gens], dtype=np.int64)

    def mul_codes(u: np.ndarray, v: np.ndarray) -> np.ndarray:
        left = np.asarray(G1.mul(u // n2, v // n2), dtype=np.int64)
        return left * n2 + np.asarray(G2.mul(u % n2, v % n2), dtype=np.int64)

    identity = G1.identity * n2 + G2.identity
    members = np.array([identity], dtype=np.int64)
    frontier = members
    while frontier.size:
        cand = mul_codes(frontier[:, None], gen_codes[None, :]).ravel()
        cand = np.unique(cand)
        cand = cand[~np.isin(cand, members, assume_unique=True)]
        if members.size + cand.size > order_cap:
            raise OrderCapExceeded(
                f"parallel product closure exceeds the order cap {order_cap}"
            )
        members = np.union1d(members, cand)
        frontier = cand

    def mul(a, b):
        return np.searchsorted(members, mul_codes(members[a], members[b]))

    def namer(e: int) -> str:
        code = int(members[e])
        return f"({G1.name(code // n2)}, {G2.name(code % n2)})"

    positions = np.searchsorted(members, gen_codes).tolist()
    H = FiniteGroup(
        members.size,
        mul,
        identity=int(np.searchsorted(members, identity)),
        generators=positions,
        label=f"<{G1.label} v {G2.label}>",
        namer=namer,
    )
    return H, positions


def parallel_product(D1: RegularDessin, D2: RegularDessin, *, order_cap: Optional[int] = None) -> ProductDessin:
    """D1 v D2: the dessin on <(x1, x2), (y1, y2)> inside G1 x G2."""
    cap = default_order_cap() if order_cap is None else order_cap
    H, (x, y) = _diagonal_subgroup(D1.group, D2.group, [(D1.x, D2.x), (D1.y, D2.y)], cap)
    H.cache["pair"] = (x, y)
    return ProductDessin((D1.group.label, D2.group.label), RegularDessin(H, x, y))


def parallel_product_all(dessins: Sequence[RegularDessin], *, order_cap: Optional[int] = None) -> ProductDessin:
    """Left fold of ``parallel_product``."""
    if not dessins:
        raise ValueError("need at least one dessin")
    current = dessins[0]
    ambient = [current.group.label]
    folded = [{"x": current.x, "y": current.y}]
    for nxt in dessins[1:]:
        try:
            current = parallel_product(current, nxt, order_cap=order_cap).carrier
        except OrderCapExceeded as exc:
            raise OrderCapExceeded(str(exc), partial=folded) from exc
        ambient.append(nxt.group.label)
        folded.append({"x": nxt.x, "y": nxt.y})
    return ProductDessin(tuple(ambient), current, tuple(folded))


def universal_dessin(G: FiniteGroup, *, order_cap: Optional[int] = None) -> ProductDessin:
    """U(G): the parallel product of one dessin from every isomorphism class on G."""
    classes = enumerate_dessins(G)
    if not classes:
        raise UnsupportedInput(f"{G.label} is not 2-generated")
    product = parallel_product_all([c.dessin for c in classes], order_cap=order_cap)
    factors = tuple(
        {"x": c.dessin.x, "y": c.dessin.y, "orbit_size": c.orbit_size} for c in classes
    )
    carrier = product.carrier
    if len(classes) > 1:
        carrier.group.label = f"U({G.label})"
    return ProductDessin(product.ambient, carrier, factors)


def is_unique_dessin_group(G: FiniteGroup) -> bool:
    return len(enumerate_dessins(G)) == 1


def universal_report(G: FiniteGroup, *, order_cap: Optional[int] = None) -> dict:
    """Serializable summary of U(G)."""
    U = universal_dessin(G, order_cap=order_cap)
    inv = invariants(U.carrier)
    return {
        "input": G.label,
        "classes_folded": len(U.factors),
        "order": U.group.order,
        "type": list(inv.type_triple),
        "genus": inv.genus,
        "totally_symmetric": inv.totally_symmetric,
        "unique_dessin": is_unique_dessin_group(U.group),
        "factors": [dict(f) for f in U.factors],
    }


def _p_part_exponent(order: int, p: int) -> int:
    """e with e = 1 mod p^k and e = 0 mod |G|/p^k, so that g^e is the p-part of g."""
    pk = p ** factorint(order)[p]
    rest = order // pk
    return rest * pow(rest, -1, pk) % order if rest > 1 else 1


def sylow_decompose(D: RegularDessin) -> list[RegularDessin]:
    """Split a dessin on a nilpotent group into dessins on its Sylow subgroups."""
    G = D.group
    if not is_nilpotent(G):
        raise UnsupportedInput(f"{G.label} is not nilpotent")
    primes = sorted(factorint(G.order))
    if len(primes) <= 1:
        return [D]
    parts = []
    for p in primes:
        e = _p_part_exponent(G.order, p)
        xp, yp = G.power(D.x, e), G.power(D.y, e)
        S, members = subgroup_as_group(G, sylow_mask(G, p), label=f"Sylow-{p}({G.label})",
                                       generators=(xp, yp))
        position = {int(m): i for i, m in enumerate(members)}
        parts.append(make_dessin(S, position[xp], position[yp]))
    return parts
