"""Finite groups on dense integer indices, and constructors for every GroupSpec.

Elements are plain ``int`` indices in ``range(G.order)``. Multiplication goes
through a vectorised rule (numpy arrays in, numpy arrays out); groups of order
at most ``TABLE_CAP`` also carry a materialised Cayley table.
"""

from __future__ import annotations

import functools
from typing import Callable, Optional, Sequence

import numpy as np

from .config import TABLE_CAP
from .errors import OrderCapExceeded, ValidationError
from .report import VerificationReport
from .specs import (
    AbelianSquare,
    Cyclic,
    DirectProduct,
    Family,
    GroupSpec,
    Metacyclic64,
    Quaternion,
)

Mul = Callable[[np.ndarray, np.ndarray], np.ndarray]

BRUTE_ASSOCIATIVITY_LIMIT = 256
RANDOM_TRIPLES = 10**6


class FiniteGroup:
    """A finite group with elements ``0 .. order-1``.

    ``mul`` must accept broadcastable integer arrays. The group is treated as
    immutable once constructed; derived data (inverses, element orders, cached
    subgroups) is computed lazily and memoised.
    """

    def __init__(
        self,
        order: int,
        mul: Mul,
        *,
        identity: int = 0,
        generators: Sequence[int] = (),
        label: str = "",
        namer: Optional[Callable[[int], str]] = None,
        table: Optional[np.ndarray] = None,
    ):
        self.order = int(order)
        self._mul = mul
        self.identity = int(identity)
        self.generators = tuple(int(g) for g in generators)
        self.label = label
        self._namer = namer
        self.relations: list[tuple[str, int, int]] = []
        self.spec: Optional[GroupSpec] = None
        self.cache: dict = {}
        if table is None and self.order <= TABLE_CAP:
            table = _materialise(self.order, mul)
        self._table = table
        self._inverses: Optional[np.ndarray] = None
        self._orders: Optional[np.ndarray] = None

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label or '?'}, order={self.order})"

    @property
    def has_table(self) -> bool:
        return self._table is not None

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            raise OrderCapExceeded(
                f"group {self.label} of order {self.order} exceeds the table cap {TABLE_CAP}"
            )
        return self._table

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a, b) -> np.ndarray:
        """Vectorised product of index arrays."""
        if self._table is not None:
            return self._table[a, b]
        return self._mul(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))

    def multiply(self, g: int, h: int) -> int:
        return int(self.mul(g, h))

    @property
    def inverses(self) -> np.ndarray:
        if self._inverses is None:
            if self._table is not None:
                self._inverses = np.argmax(self._table == self.identity, axis=1).astype(np.int64)
            else:
                orders = self.orders
                self._inverses = np.array(
                    [self.power(g, int(o) - 1) for g, o in enumerate(orders)], dtype=np.int64
                )
        return self._inverses

    def inverse(self, g: int) -> int:
        if self._inverses is None and self._table is None:
            return self.power(g, self.element_order(g) - 1)
        return int(self.inverses[g])

    @property
    def orders(self) -> np.ndarray:
        """Element orders for every element (cached)."""
        if self._orders is None:
            everything = np.arange(self.order)
            orders = np.zeros(self.order, dtype=np.int64)
            current = everything.copy()
            k = 1
            while True:
                hit = (current == self.identity) & (orders == 0)
                orders[hit] = k
                if orders.all():
                    break
                current = self.mul(current, everything)
                k += 1
            self._orders = orders
        return self._orders

    def element_order(self, g: int) -> int:
        if self._orders is not None or self._table is not None:
            return int(self.orders[g])
        k, current = 1, int(g)
        while current != self.identity:
            current = self.multiply(current, g)
            k += 1
        return k

    def power(self, g: int, n: int) -> int:
        if n < 0:
            g, n = self.inverse(g), -n
        result, base = self.identity, int(g)
        while n:
            if n & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            n >>= 1
        return result

    def commutator(self, g: int, h: int) -> int:
        """[g, h] = g^-1 h^-1 g h."""
        gi, hi = self.inverse(g), self.inverse(h)
        return self.multiply(self.multiply(gi, hi), self.multiply(g, h))

    def name(self, g: int) -> str:
        return self._namer(int(g)) if self._namer else f"e{int(g)}"

    @property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.orders)) if self.order > 1 else 1

    @property
    def is_abelian(self) -> bool:
        t = self.table
        return bool((t == t.T).all())

    def distinguished_pair(self) -> Optional[tuple[int, int]]:
        """The (x, y) pair the constructor designates, if it has one."""
        return self.cache.get("pair")


def _materialise(order: int, mul: Mul) -> np.ndarray:
    idx = np.arange(order, dtype=np.int64)
    table = np.empty((order, order), dtype=np.int32)
    step = max(1, (1 << 22) // max(order, 1))
    for start in range(0, order, step):
        rows = idx[start:start + step, None]
        table[start:start + step] = mul(rows, idx[None, :])
    return table


def multiply(G: FiniteGroup, g: int, h: int) -> int:
    return G.multiply(g, h)


def inverse(G: FiniteGroup, g: int) -> int:
    return G.inverse(g)


def element_order(G: FiniteGroup, g: int) -> int:
    return G.element_order(g)


def commutator(G: FiniteGroup, g: int, h: int) -> int:
    return G.commutator(g, h)


# -- constructors --------------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    G = FiniteGroup(
        n,
        lambda a, b: (a + b) % n,
        generators=(1 % n,),
        label=f"C{n}",
        namer=lambda g: f"g^{g}",
    )
    G.relations = [(f"g^{n} = 1", G.power(G.generators[0], n), G.identity)]
    G.cache["pair"] = (G.generators[0], G.generators[0])
    return G


def abelian_square(p: int, a: int) -> FiniteGroup:
    N = p**a

    def mul(u, v):
        return ((u // N + v // N) % N) * N + (u % N + v % N) % N

    G = FiniteGroup(
        N * N,
        mul,
        generators=(N % (N * N), 1 % (N * N)),
        label=f"C{N}xC{N}",
        namer=lambda g: f"x^{g // N} y^{g % N}",
    )
    x, y = G.generators
    G.relations = [
        (f"x^{N} = 1", G.power(x, N), G.identity),
        (f"y^{N} = 1", G.power(y, N), G.identity),
        ("[x,y] = 1", G.commutator(x, y), G.identity),
    ]
    G.cache["pair"] = (x, y)
    return G


def quaternion_group() -> FiniteGroup:
    """Q8 as {+-1, +-i, +-j, +-k}; index = 4*sign + unit, units ordered 1, i, j, k."""
    unit = np.array([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
    sign = np.array([[0, 0, 0, 0], [0, 1, 0, 1], [0, 1, 1, 0], [0, 0, 1, 1]])

    def mul(a, b):
        ua, ub = a % 4, b % 4
        s = (a // 4 + b // 4 + sign[ua, ub]) % 2
        return 4 * s + unit[ua, ub]

    names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    G = FiniteGroup(8, mul, generators=(1, 2), label="Q8", namer=lambda g: names[g])
    x, y = G.generators
    G.relations = [
        ("i^4 = 1", G.power(x, 4), G.identity),
        ("i^2 = j^2", G.power(x, 2), G.power(y, 2)),
        ("j^-1 i j = i^-1", G.multiply(G.multiply(G.inverse(y), x), y), G.inverse(x)),
    ]
    G.cache["pair"] = (x, y)
    return G


def metacyclic64() -> FiniteGroup:
    """<g, h | g^8 = h^8 = 1, g^-1 h g = h^5> in normal form h^u g^v, index 8u + v."""

    def mul(a, b):
        u1, v1 = a // 8, a % 8
        u2, v2 = b // 8, b % 8
        twist = np.where(v1 % 2 == 1, 5, 1)
        return ((u1 + u2 * twist) % 8) * 8 + (v1 + v2) % 8

    G = FiniteGroup(64, mul, generators=(1, 8), label="M64", namer=lambda e: f"h^{e // 8} g^{e % 8}")
    g, h = G.generators
    G.relations = [
        ("g^8 = 1", G.power(g, 8), G.identity),
        ("h^8 = 1", G.power(h, 8), G.identity),
        ("g^-1 h g = h^5", G.multiply(G.multiply(G.inverse(g), h), g), G.power(h, 5)),
    ]
    G.cache["pair"] = (g, h)
    return G


def _class_two_group(p: int, a: int, b: int, label: str) -> FiniteGroup:
    """Normal form x^i y^j z^k, i, j mod p^a, k mod p^b, with y^j x^i = x^i y^j z^(-ij)."""
    N, M = p**a, p**b

    def mul(u, v):
        i1, r1 = np.divmod(u, N * M)
        j1, k1 = np.divmod(r1, M)
        i2, r2 = np.divmod(v, N * M)
        j2, k2 = np.divmod(r2, M)
        return (((i1 + i2) % N) * N + (j1 + j2) % N) * M + (k1 + k2 - j1 * i2) % M

    def namer(e):
        i, r = divmod(e, N * M)
        j, k = divmod(r, M)
        return f"x^{i} y^{j} z^{k}"

    G = FiniteGroup(N * N * M, mul, generators=(N * M, M), label=label, namer=namer)
    x, y = G.generators
    z = G.commutator(x, y)
    G.relations = [
        (f"x^{N} = 1", G.power(x, N), G.identity),
        (f"y^{N} = 1", G.power(y, N), G.identity),
        (f"z^{M} = 1", G.power(z, M), G.identity),
        ("[x,z] = 1", G.commutator(x, z), G.identity),
        ("[y,z] = 1", G.commutator(y, z), G.identity),
    ]
    G.cache["pair"] = (x, y)
    return G


def _family_three_group(a: int, label: str) -> FiniteGroup:
    """x^(2^a) = 1, x^(2^(a-1)) = y^(2^(a-1)) = z^(2^(a-2)), z = [x,y] central.

    Normal form x^i y^j z^k with i < 2^a, j < 2^(a-1), k < 2^(a-2).
    """
    A, B, C = 2**a, 2 ** (a - 1), 2 ** (a - 2)

    def mul(u, v):
        i1, r1 = np.divmod(u, B * C)
        j1, k1 = np.divmod(r1, C)
        i2, r2 = np.divmod(v, B * C)
        j2, k2 = np.divmod(r2, C)
        i = i1 + i2
        carry, j = np.divmod(j1 + j2, B)
        k = (k1 + k2 - j1 * i2 + carry * C) % B
        carry, k = np.divmod(k, C)
        i = (i + carry * B) % A
        return (i * B + j) * C + k

    def namer(e):
        i, r = divmod(e, B * C)
        j, k = divmod(r, C)
        return f"x^{i} y^{j} z^{k}"

    G = FiniteGroup(A * B * C, mul, generators=(B * C, C), label=label, namer=namer)
    x, y = G.generators
    z = G.commutator(x, y)
    G.relations = [
        (f"x^{A} = 1", G.power(x, A), G.identity),
        (f"x^{B} = y^{B}", G.power(x, B), G.power(y, B)),
        (f"y^{B} = z^{C}", G.power(y, B), G.power(z, C)),
        ("[x,z] = 1", G.commutator(x, z), G.identity),
        ("[y,z] = 1", G.commutator(y, z), G.identity),
    ]
    G.cache["pair"] = (x, y)
    return G


def direct_product(G1: FiniteGroup, G2: FiniteGroup) -> FiniteGroup:
    """G1 x G2 with index i1 * |G2| + i2."""
    n2 = G2.order

    def mul(u, v):
        left = np.asarray(G1.mul(u // n2, v // n2), dtype=np.int64)
        return left * n2 + G2.mul(u % n2, v % n2)

    def embed1(g):
        return g * n2 + G2.identity

    def embed2(g):
        return G1.identity * n2 + g

    gens = [embed1(g) for g in G1.generators] + [embed2(g) for g in G2.generators]
    G = FiniteGroup(
        G1.order * n2,
        mul,
        identity=embed1(G1.identity),
        generators=gens,
        label=f"{G1.label}x{G2.label}",
        namer=lambda e: f"({G1.name(e // n2)}, {G2.name(e % n2)})",
    )
    G.relations = [(f"{t} (left)", embed1(l), embed1(r)) for t, l, r in G1.relations]
    G.relations += [(f"{t} (right)", embed2(l), embed2(r)) for t, l, r in G2.relations]
    G.cache["factors"] = (G1, G2)
    p1, p2 = G1.distinguished_pair(), G2.distinguished_pair()
    if len(gens) == 2:
        G.cache["pair"] = (gens[0], gens[1])
    elif p1 is not None and p2 is not None:
        G.cache["pair"] = (p1[0] * n2 + p2[0], p1[1] * n2 + p2[1])
    return G


def _construct(spec: GroupSpec) -> FiniteGroup:
    if isinstance(spec, Family):
        if spec.family == "iii":
            return _family_three_group(spec.a, str(spec))
        return _class_two_group(spec.p, spec.a, spec.b, str(spec))
    if isinstance(spec, Cyclic):
        return cyclic_group(spec.n)
    if isinstance(spec, AbelianSquare):
        return abelian_square(spec.p, spec.a)
    if isinstance(spec, Quaternion):
        return quaternion_group()
    if isinstance(spec, Metacyclic64):
        return metacyclic64()
    if isinstance(spec, DirectProduct):
        return direct_product(build_group(spec.left), build_group(spec.right))
    raise TypeError(f"not a GroupSpec: {spec!r}")


def expected_order(spec: GroupSpec) -> int:
    """Order implied by the normal-form ranges of the construction."""
    if isinstance(spec, Family):
        if spec.family == "iii":
            return 2 ** (3 * spec.a - 3)
        return spec.p ** (2 * spec.a + spec.b)
    if isinstance(spec, Cyclic):
        return spec.n
    if isinstance(spec, AbelianSquare):
        return spec.p ** (2 * spec.a)
    if isinstance(spec, Quaternion):
        return 8
    if isinstance(spec, Metacyclic64):
        return 64
    return expected_order(spec.left) * expected_order(spec.right)


@functools.lru_cache(maxsize=48)
def build_group(spec: GroupSpec) -> FiniteGroup:
    """Construct and validate the group described by ``spec``.

    Raises ValidationError if the construction fails its own checks.
    """
    G = _construct(spec)
    G.spec = spec
    G.label = str(spec)
    report = validate_group(G)
    if not report.ok:
        bad = "; ".join(f"{e.claim}: {e.computed_value}" for e in report.mismatches)
        raise ValidationError(f"{spec} failed validation: {bad}", report)
    return G


# -- validation ----------------------------------------------------------------


def validate_group(G: FiniteGroup, *, seed: int = 0) -> VerificationReport:
    """Check group axioms, defining relations and generation.

    Tables up to ``BRUTE_ASSOCIATIVITY_LIMIT`` are checked on all triples;
    larger tables use Light's test against the designated generators (which
    is exhaustive once those generators reach every element). Groups without
    a table get ``RANDOM_TRIPLES`` random triples.
    """
    report = VerificationReport(G.label or "group")
    n, e = G.order, G.identity
    if G.spec is not None:
        report.add("order", expected_order(G.spec), n)
    rng = np.random.default_rng(seed)

    if G.has_table:
        t = G.table
        idx = np.arange(n)
        bad = np.flatnonzero((t[e] != idx) | (t[:, e] != idx))
        report.check("identity is two-sided", bad.size == 0,
                     None if bad.size == 0 else f"witness g={int(bad[0])}")
        inv = G.inverses
        bad = np.flatnonzero((t[idx, inv] != e) | (t[inv, idx] != e))
        report.check("inverse law", bad.size == 0,
                     None if bad.size == 0 else f"witness g={int(bad[0])}")
        witness = _associativity_witness(G)
        report.check("associativity", witness is None,
                     None if witness is None else f"witness triple {witness}")
    else:
        g = rng.integers(0, n, size=4096)
        ok = bool((G.mul(g, e) == g).all() and (G.mul(e, g) == g).all())
        report.check("identity is two-sided (sampled)", ok)
        a, b, c = rng.integers(0, n, size=(3, RANDOM_TRIPLES))
        lhs = G.mul(G.mul(a, b), c)
        rhs = G.mul(a, G.mul(b, c))
        bad = np.flatnonzero(lhs != rhs)
        report.check(
            f"associativity ({RANDOM_TRIPLES} random triples)", bad.size == 0,
            None if bad.size == 0 else f"witness triple {(int(a[bad[0]]), int(b[bad[0]]), int(c[bad[0]]))}",
        )

    for text, lhs, rhs in G.relations:
        report.add(f"relation {text}", G.name(rhs), G.name(lhs))
    if G.generators:
        from .structure import closure_mask

        report.add("generators span the group", n, int(closure_mask(G, G.generators).sum()))
    return report.finish()


def _associativity_witness(G: FiniteGroup) -> Optional[tuple[int, int, int]]:
    t = G.table.astype(np.int64)
    n = G.order
    if n <= BRUTE_ASSOCIATIVITY_LIMIT:
        for a in range(n):
            lhs = t[t[a]][:, :]  # (a b) c  indexed [b, c]
            rhs = t[a][t]  # a (b c)
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                b, c = bad[0]
                return a, int(b), int(c)
        return None
    gens = list(G.generators)
    # Light's test: (g s) h == g (s h) for every generator s.
    for s in gens:
        lhs = t[t[:, s]]  # rows g: (g s) h
        rhs = t[:, t[s]]  # a(s h) indexed [g, h]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            g, h = bad[0]
            return int(g), s, int(h)
    # the checked generators must reach everything as left-normed products
    reached = np.zeros(n, dtype=bool)
    frontier = np.array(gens, dtype=np.int64)
    reached[frontier] = True
    while frontier.size:
        cand = t[np.ix_(frontier, gens)].ravel()
        cand = np.unique(cand[~reached[cand]])
        reached[cand] = True
        frontier = cand
    if not reached.all():
        missing = int(np.flatnonzero(~reached)[0])
        raise ValidationError(f"generators of {G.label} do not reach element {missing}; Light's test is inconclusive")
    return None
