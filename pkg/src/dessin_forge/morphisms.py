"""Extending an assignment on two generators to a homomorphism."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .groups import FiniteGroup


@dataclass(frozen=True, eq=False)
class GeneratorMap:
    source: FiniteGroup
    target: FiniteGroup
    source_pair: tuple[int, int]
    target_pair: tuple[int, int]
    images: np.ndarray  # images[g] = image of g

    def __call__(self, g: int) -> int:
        return int(self.images[g])

    @property
    def is_identity(self) -> bool:
        return self.source is self.target and bool((self.images == np.arange(self.source.order)).all())


def spanning_tree(G: FiniteGroup, x: int, y: int) -> Optional[list[tuple[np.ndarray, np.ndarray, np.ndarray]]]:
    """Breadth-first levels of the right Cayley graph of (x, y) from the identity.

    Each level is (nodes, parents, generator slot 0/1). Returns None if
    (x, y) does not reach every element. Cached per pair on the group.
    """
    key = ("tree", x, y)
    if key in G.cache:
        return G.cache[key]
    n = G.order
    seen = np.zeros(n, dtype=bool)
    seen[G.identity] = True
    frontier = np.array([G.identity], dtype=np.int64)
    gens = np.array([x, y], dtype=np.int64)
    levels = []
    while frontier.size:
        prods = np.asarray(G.mul(frontier[:, None], gens[None, :]), dtype=np.int64)  # (f, 2)
        flat = prods.ravel()
        parents = np.repeat(frontier, 2)
        slots = np.tile(np.arange(2), frontier.size)
        fresh = ~seen[flat]
        flat, parents, slots = flat[fresh], parents[fresh], slots[fresh]
        flat, first = np.unique(flat, return_index=True)
        parents, slots = parents[first], slots[first]
        seen[flat] = True
        if flat.size:
            levels.append((flat, parents, slots))
        frontier = flat
    result = levels if seen.all() else None
    if len(G.cache) < 4096:
        G.cache[key] = result
    return result


def extend_generator_map(G: FiniteGroup, source_pair: tuple[int, int], H: FiniteGroup,
                         target_pair: tuple[int, int]) -> Optional[GeneratorMap]:
    """Isomorphism G -> H with x0 -> x1, y0 -> y1, or None.

    The map is propagated along a spanning tree of the Cayley graph of
    (x0, y0) and then checked on every Cayley-graph edge, which makes it a
    homomorphism; bijectivity is checked last.
    """
    x0, y0 = (int(v) for v in source_pair)
    x1, y1 = (int(v) for v in target_pair)
    if G.order != H.order:
        return None
    if G.element_order(x0) != H.element_order(x1) or G.element_order(y0) != H.element_order(y1):
        return None
    levels = spanning_tree(G, x0, y0)
    if levels is None:
        return None
    images = np.empty(G.order, dtype=np.int64)
    images[G.identity] = H.identity
    targets = np.array([x1, y1], dtype=np.int64)
    for nodes, parents, slots in levels:
        images[nodes] = H.mul(images[parents], targets[slots])
    everything = np.arange(G.order)
    for s, t in ((x0, x1), (y0, y1)):
        if not (images[np.asarray(G.mul(everything, s))] == np.asarray(H.mul(images, t))).all():
            return None
    if np.unique(images).size != H.order:
        return None
    return GeneratorMap(G, H, (x0, y0), (x1, y1), images)
