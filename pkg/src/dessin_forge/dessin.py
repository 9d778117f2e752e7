"""Regular dessins as triples (G, x, y).

Isomorphism classes of regular dessins on G are the Aut(G)-orbits on
generating pairs. ``enumerate_dessins`` finds them without building Aut(G):
it grows orbits by breadth-first search under the automorphisms discovered so
far, and only calls ``extend_generator_map`` when it meets a pair not yet
covered.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .errors import NotGenerating, UnsupportedInput
from .groups import FiniteGroup
from .morphisms import extend_generator_map
from .structure import closure_mask, generating_pairs, is_generating_pair


@dataclass(frozen=True, eq=False)
class RegularDessin:
    group: FiniteGroup
    x: int
    y: int

    @property
    def pair(self) -> tuple[int, int]:
        return (self.x, self.y)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RegularDessin) and self.group is other.group
                and self.pair == other.pair)

    def __hash__(self) -> int:
        return hash((id(self.group), self.x, self.y))

    def __repr__(self) -> str:
        G = self.group
        return f"RegularDessin({G.label}, x={G.name(self.x)}, y={G.name(self.y)})"


class DessinOperation(enum.Enum):
    SIGMA1 = "sigma1"  # (x, y) -> (y, x)
    SIGMA2 = "sigma2"  # (x, y) -> (y, x^-1)
    SIGMA3 = "sigma3"  # (x, y) -> (yx, x^-1)
    IOTA = "iota"  # (x, y) -> (x^-1, y^-1)


@dataclass(frozen=True)
class DessinInvariants:
    type_triple: tuple[int, int, int]
    black_vertices: int
    white_vertices: int
    edges: int
    faces: int
    euler_characteristic: int
    genus: int
    multiplicity: int
    symmetric: bool
    reflexible: bool
    totally_symmetric: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["type_triple"] = list(self.type_triple)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "DessinInvariants":
        d = dict(d)
        d["type_triple"] = tuple(d["type_triple"])
        return cls(**d)


@dataclass(frozen=True)
class DessinClass:
    dessin: RegularDessin
    orbit_size: int


def make_dessin(G: FiniteGroup, x: int, y: int) -> RegularDessin:
    if not is_generating_pair(G, x, y):
        raise NotGenerating(f"({G.name(x)}, {G.name(y)}) does not generate {G.label}")
    return RegularDessin(G, int(x), int(y))


def apply_operation(D: RegularDessin, op: DessinOperation) -> RegularDessin:
    G, x, y = D.group, D.x, D.y
    if op is DessinOperation.SIGMA1:
        pair = (y, x)
    elif op is DessinOperation.SIGMA2:
        pair = (y, G.inverse(x))
    elif op is DessinOperation.SIGMA3:
        pair = (G.multiply(y, x), G.inverse(x))
    elif op is DessinOperation.IOTA:
        pair = (G.inverse(x), G.inverse(y))
    else:
        raise TypeError(f"unknown operation {op!r}")
    return RegularDessin(G, *pair)


def are_isomorphic(D1: RegularDessin, D2: RegularDessin) -> bool:
    if D1.group.order != D2.group.order:
        return False
    if D1.group is D2.group and D1.pair == D2.pair:
        return True
    return extend_generator_map(D1.group, D1.pair, D2.group, D2.pair) is not None


def is_symmetric(D: RegularDessin) -> bool:
    return are_isomorphic(D, apply_operation(D, DessinOperation.SIGMA1))


def is_reflexible(D: RegularDessin) -> bool:
    return are_isomorphic(D, apply_operation(D, DessinOperation.IOTA))


def is_totally_symmetric(D: RegularDessin) -> bool:
    """Invariant under sigma1, sigma2 and sigma3 (which generate all operations)."""
    return all(
        are_isomorphic(D, apply_operation(D, op))
        for op in (DessinOperation.SIGMA1, DessinOperation.SIGMA2, DessinOperation.SIGMA3)
    )


def multiplicity(D: RegularDessin) -> int:
    """|<x> & <y>|: the number of parallel edges between adjacent vertices."""
    G = D.group
    return int((closure_mask(G, [D.x]) & closure_mask(G, [D.y])).sum())


def invariants(D: RegularDessin) -> DessinInvariants:
    G = D.group
    ox, oy = G.element_order(D.x), G.element_order(D.y)
    oxy = G.element_order(G.multiply(D.x, D.y))
    n = G.order
    black, white, faces = n // ox, n // oy, n // oxy
    chi = black + white - n + faces
    sym = is_symmetric(D)
    return DessinInvariants(
        type_triple=(ox, oy, oxy),
        black_vertices=black,
        white_vertices=white,
        edges=n,
        faces=faces,
        euler_characteristic=chi,
        genus=1 - chi // 2,
        multiplicity=multiplicity(D),
        symmetric=sym,
        reflexible=is_reflexible(D),
        totally_symmetric=sym and is_totally_symmetric(D),
    )


def edge_permutations(D: RegularDessin) -> tuple[np.ndarray, np.ndarray]:
    """(rho, lam): left multiplication by x and by y on the |G| edges."""
    G = D.group
    everything = np.arange(G.order)
    rho = np.asarray(G.mul(D.x, everything), dtype=np.int64)
    lam = np.asarray(G.mul(D.y, everything), dtype=np.int64)
    return rho, lam


def cycle_count(perm: np.ndarray) -> int:
    seen = np.zeros(perm.size, dtype=bool)
    cycles = 0
    for start in range(perm.size):
        if seen[start]:
            continue
        cycles += 1
        g = start
        while not seen[g]:
            seen[g] = True
            g = perm[g]
    return cycles


# -- enumeration ---------------------------------------------------------------


def _orbit_partition(G: FiniteGroup):
    """(codes, class_of_code, representative codes, automorphism generators)."""
    if "dessin_partition" in G.cache:
        return G.cache["dessin_partition"]
    n = G.order
    codes = generating_pairs(G)
    assign = np.full(n * n, -1, dtype=np.int32)
    autos: list[np.ndarray] = []
    reps: list[int] = []

    def image(phi: np.ndarray, members: np.ndarray) -> np.ndarray:
        return phi[members // n] * n + phi[members % n]

    def grow(cls: int, frontier: np.ndarray) -> None:
        while frontier.size and autos:
            found = []
            for phi in autos:
                img = image(phi, frontier)
                img = np.unique(img[assign[img] < 0])
                assign[img] = cls
                found.append(img)
            frontier = np.unique(np.concatenate(found))

    pos = 0
    while True:
        while pos < codes.size and assign[codes[pos]] >= 0:
            pos += 1
        if pos == codes.size:
            break
        code = int(codes[pos])
        target = divmod(code, n)
        for cls, rep in enumerate(reps):
            phi = extend_generator_map(G, divmod(rep, n), G, target)
            if phi is None:
                continue
            autos.append(phi.images)
            for k in range(len(reps)):
                members = np.flatnonzero(assign == k)
                img = image(phi.images, members)
                img = np.unique(img[assign[img] < 0])
                assign[img] = k
                grow(k, img)
            break
        else:
            reps.append(code)
            assign[code] = len(reps) - 1
            grow(len(reps) - 1, np.array([code], dtype=np.int64))
    result = (codes, assign, reps, autos)
    G.cache["dessin_partition"] = result
    return result


def enumerate_dessins(G: FiniteGroup) -> list[DessinClass]:
    """One canonical representative (lexicographically least pair) per
    isomorphism class of regular dessins on G, with its orbit size."""
    codes, assign, reps, _ = _orbit_partition(G)
    if codes.size == 0:
        return []
    sizes = np.bincount(assign[codes], minlength=len(reps))
    n = G.order
    return [
        DessinClass(RegularDessin(G, *divmod(rep, n)), int(size))
        for rep, size in zip(reps, sizes)
    ]


def generating_pair_count(G: FiniteGroup) -> int:
    return int(generating_pairs(G).size)


def count_automorphisms(G: FiniteGroup) -> int:
    """|Aut(G)| = (generating pairs) / (dessin classes), the action being semiregular."""
    classes = enumerate_dessins(G)
    if not classes:
        raise UnsupportedInput(f"{G.label} is not 2-generated")
    total = generating_pair_count(G)
    size = classes[0].orbit_size
    if any(c.orbit_size != size for c in classes) or size * len(classes) != total:
        raise AssertionError(f"unequal orbit sizes on {G.label}")
    return total // len(classes)


def automorphism_generators(G: FiniteGroup) -> list[np.ndarray]:
    """Automorphisms (as element permutations) that generate Aut(G) for 2-generated G."""
    return list(_orbit_partition(G)[3])


def dessin_class_of(D: RegularDessin) -> Optional[int]:
    """Index into ``enumerate_dessins(D.group)`` of the class containing D."""
    codes, assign, _, _ = _orbit_partition(D.group)
    cls = int(assign[D.x * D.group.order + D.y])
    return None if cls < 0 else cls
