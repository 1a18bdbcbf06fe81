"""Exact finite group arithmetic on dense multiplication tables.

Elements are integers 0..order-1 and the group law is a full Cayley table,
so every operation is a table lookup.  Groups enter as cyclic products,
explicit tables, or permutation generators (closed into a table).  Subgroup
enumeration is bottom-up closure of generator sets, which is the only
super-polynomial step; the configurable order cap keeps it at desk scale.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

DEFAULT_ORDER_CAP = 4096
_FULL_CHECK_LIMIT = 256
_RANDOM_TRIPLES = 10_000


class GroupStructureError(ValueError):
    """The given data does not define a group / subgroup / homomorphism."""


class SizeCapError(ValueError):
    """A construction or enumeration exceeds the configured order cap."""


class HaarMode(enum.Enum):
    COUNTING = "counting"
    PROBABILITY = "probability"


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as a Cayley table over elements 0..order-1."""

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        n = self.order
        if n <= 0 or len(self.table) != n or any(len(r) != n for r in self.table):
            raise GroupStructureError("table must be order x order")
        if any(not (0 <= v < n) for row in self.table for v in row):
            raise GroupStructureError("table entries must be element indices")
        e = self.identity
        if self.table[e] != tuple(range(n)) or any(
            self.table[x][e] != x for x in range(n)
        ):
            raise GroupStructureError("identity row/column must be trivial")
        # inverses: each row and column is a permutation hitting the identity
        for x in range(n):
            if len(set(self.table[x])) != n:
                raise GroupStructureError(f"row {x} is not a permutation")
            if e not in self.table[x]:
                raise GroupStructureError(f"element {x} has no inverse")
        _check_associativity(self.table, n)
        if self.labels is not None and len(self.labels) != n:
            raise GroupStructureError("labels length must match order")

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int) -> int:
        return self.table[x].index(self.identity)

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.table[y][x]
            k += 1
        return k

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def __hash__(self):
        return hash((self.order, self.identity, self.table))


def _check_associativity(table, n):
    if n <= _FULL_CHECK_LIMIT:
        rng_range = range(n)
        for x in rng_range:
            tx = table[x]
            for y in rng_range:
                txy = table[tx[y]]
                ty = table[y]
                for z in rng_range:
                    if txy[z] != tx[ty[z]]:
                        raise GroupStructureError(
                            f"associativity fails at ({x},{y},{z})"
                        )
    else:
        rng = random.Random(0xA550C)
        for _ in range(_RANDOM_TRIPLES):
            x, y, z = (rng.randrange(n) for _ in range(3))
            if table[table[x][y]][z] != table[x][table[y][z]]:
                raise GroupStructureError(f"associativity fails at ({x},{y},{z})")


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a parent group, stored as a sorted member tuple."""

    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        G = self.parent
        mem = self.members
        if tuple(sorted(set(mem))) != mem or not mem:
            raise GroupStructureError("members must be sorted, distinct, nonempty")
        mset = set(mem)
        if G.identity not in mset:
            raise GroupStructureError("subgroup must contain the identity")
        for x in mem:
            if G.inv(x) not in mset:
                raise GroupStructureError(f"member {x} lacks its inverse")
            for y in mem:
                if G.table[x][y] not in mset:
                    raise GroupStructureError(f"not closed: {x}*{y} escapes")

    @property
    def order(self) -> int:
        return len(self.members)

    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def __hash__(self):
        return hash((id(self.parent), self.members))


@dataclass(frozen=True)
class Homomorphism:
    """A homomorphism given by the image of every domain element."""

    domain: FiniteGroup
    codomain: FiniteGroup
    map: tuple[int, ...]

    def __post_init__(self):
        G, H, m = self.domain, self.codomain, self.map
        if len(m) != G.order:
            raise GroupStructureError("map length must equal domain order")
        if any(not (0 <= v < H.order) for v in m):
            raise GroupStructureError("map values must be codomain indices")
        if m[G.identity] != H.identity:
            raise GroupStructureError("identity must map to identity")
        ht = H.table
        for x in range(G.order):
            gx = G.table[x]
            mx = m[x]
            for y in range(G.order):
                if m[gx[y]] != ht[mx][m[y]]:
                    raise GroupStructureError(
                        f"not multiplicative at ({x},{y})"
                    )

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __hash__(self):
        return hash((hash(self.domain), hash(self.codomain), self.map))


# -- constructors -------------------------------------------------------


def make_cyclic_product(
    moduli: Sequence[int], order_cap: int = DEFAULT_ORDER_CAP
) -> FiniteGroup:
    """Direct product of cyclic groups Z_n1 x ... x Z_nk, lexicographic encoding."""
    if not moduli or any(m < 1 for m in moduli):
        raise GroupStructureError("moduli must be positive integers")
    order = 1
    for m in moduli:
        order *= m
    if order > order_cap:
        raise SizeCapError(f"order {order} exceeds cap {order_cap}")

    def decode(i):
        out = []
        for m in reversed(moduli):
            i, r = divmod(i, m)
            out.append(r)
        return tuple(reversed(out))

    def encode(t):
        i = 0
        for m, v in zip(moduli, t):
            i = i * m + v
        return i

    table = tuple(
        tuple(
            encode(tuple((a + b) % m for a, b, m in zip(decode(x), decode(y), moduli)))
            for y in range(order)
        )
        for x in range(order)
    )
    if len(moduli) == 1:
        labels = tuple(str(i) for i in range(order))
    else:
        labels = tuple("(" + ",".join(map(str, decode(i))) + ")" for i in range(order))
    return FiniteGroup(order, table, 0, labels)


def from_cayley_table(
    table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None
) -> FiniteGroup:
    n = len(table)
    tbl = tuple(tuple(row) for row in table)
    identity = None
    for e in range(n):
        if tbl[e] == tuple(range(n)) and all(tbl[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise GroupStructureError("table has no two-sided identity")
    return FiniteGroup(n, tbl, identity, tuple(labels) if labels else None)


def from_permutations(
    degree: int,
    generators: Sequence[Sequence[int]],
    order_cap: int = DEFAULT_ORDER_CAP,
) -> FiniteGroup:
    """Close permutation generators into a full Cayley table.

    Elements are sorted lexicographically as image tuples, so the identity
    permutation always lands at index 0.
    """
    idp = tuple(range(degree))
    gens = []
    for g in generators:
        p = tuple(g)
        if sorted(p) != list(idp):
            raise GroupStructureError(f"not a permutation of 0..{degree - 1}: {g}")
        gens.append(p)
    elems = {idp}
    frontier = [idp]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in elems:
                    if len(elems) >= order_cap:
                        raise SizeCapError(f"permutation closure exceeds {order_cap}")
                    elems.add(q)
                    nxt.append(q)
        frontier = nxt
    ordered = sorted(elems)
    index = {p: i for i, p in enumerate(ordered)}
    table = tuple(
        tuple(index[tuple(p[q[i]] for i in range(degree))] for q in ordered)
        for p in ordered
    )
    labels = tuple("".join(map(str, p)) if degree <= 10 else str(p) for p in ordered)
    return FiniteGroup(len(ordered), table, index[idp], labels)


def direct_product(
    A: FiniteGroup, B: FiniteGroup, order_cap: int = DEFAULT_ORDER_CAP
) -> tuple[FiniteGroup, Homomorphism, Homomorphism]:
    """Componentwise product with the two coordinate projections."""
    order = A.order * B.order
    if order > order_cap:
        raise SizeCapError(f"order {order} exceeds cap {order_cap}")
    nb = B.order
    table = tuple(
        tuple(
            A.table[x // nb][y // nb] * nb + B.table[x % nb][y % nb]
            for y in range(order)
        )
        for x in range(order)
    )
    labels = tuple(
        f"({A.label(i // nb)},{B.label(i % nb)})" for i in range(order)
    )
    P = FiniteGroup(order, table, A.identity * nb + B.identity, labels)
    proj_a = Homomorphism(P, A, tuple(i // nb for i in range(order)))
    proj_b = Homomorphism(P, B, tuple(i % nb for i in range(order)))
    return P, proj_a, proj_b


def trivial_group() -> FiniteGroup:
    return FiniteGroup(1, ((0,),), 0, ("e",))


# -- subgroup machinery --------------------------------------------------


def closure(G: FiniteGroup, seed: Iterable[int]) -> frozenset:
    """Smallest subgroup containing seed (product closure suffices: G finite)."""
    elems = set(seed)
    elems.add(G.identity)
    frontier = list(elems)
    table = G.table
    while frontier:
        nxt = []
        for x in frontier:
            for y in list(elems):
                for z in (table[x][y], table[y][x]):
                    if z not in elems:
                        elems.add(z)
                        nxt.append(z)
        frontier = nxt
    return frozenset(elems)


def all_subgroups(
    G: FiniteGroup, order_cap: int = DEFAULT_ORDER_CAP
) -> list[Subgroup]:
    """Every subgroup of G, canonically ordered by (order, members).

    Bottom-up: grow each known subgroup by one outside element and close.
    Closures are memoized on their seed set, since different parents retry
    the same extension.
    """
    if G.order > order_cap:
        raise SizeCapError(f"|G| = {G.order} exceeds cap {order_cap}")
    memo: dict[frozenset, frozenset] = {}
    trivial = frozenset({G.identity})
    found = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for H in frontier:
            for x in range(G.order):
                if x in H:
                    continue
                seed = H | {x}
                K = memo.get(seed)
                if K is None:
                    K = closure(G, seed)
                    memo[seed] = K
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    return [
        Subgroup(G, tuple(sorted(m)))
        for m in sorted(found, key=lambda s: (len(s), tuple(sorted(s))))
    ]


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,))


def image(h: Homomorphism, H: Subgroup) -> Subgroup:
    if H.parent != h.domain:
        raise GroupStructureError("subgroup parent is not the homomorphism domain")
    return Subgroup(h.codomain, tuple(sorted({h.map[x] for x in H.members})))


def preimage(h: Homomorphism, S: Subgroup) -> Subgroup:
    if S.parent != h.codomain:
        raise GroupStructureError("subgroup parent is not the homomorphism codomain")
    mem = S.member_set()
    return Subgroup(h.domain, tuple(x for x in range(h.domain.order) if h.map[x] in mem))


def kernel(h: Homomorphism) -> Subgroup:
    e = h.codomain.identity
    return Subgroup(h.domain, tuple(x for x in range(h.domain.order) if h.map[x] == e))


def normality_witness(G: FiniteGroup, H: Subgroup):
    """Return None if H is normal, else a pair (x, n) with x*n*x^-1 outside H."""
    mem = H.member_set()
    for x in range(G.order):
        xi = G.inv(x)
        for n in H.members:
            if G.table[G.table[x][n]][xi] not in mem:
                return (x, n)
    return None


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return normality_witness(G, H) is None


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, Homomorphism]:
    """Quotient by a normal subgroup; cosets are ordered by least member."""
    if N.parent != G:
        raise GroupStructureError("subgroup parent mismatch")
    witness = normality_witness(G, N)
    if witness is not None:
        x, n = witness
        raise GroupStructureError(
            f"subgroup is not normal: conjugating member {n} by {x} escapes"
        )
    coset_of = [-1] * G.order
    reps: list[int] = []
    for x in range(G.order):
        if coset_of[x] >= 0:
            continue
        idx = len(reps)
        reps.append(x)
        for n in N.members:
            coset_of[G.table[x][n]] = idx
    q = len(reps)
    table = tuple(
        tuple(coset_of[G.table[reps[a]][reps[b]]] for b in range(q)) for a in range(q)
    )
    labels = tuple(
        "{" + ",".join(G.label(G.table[r][n]) for n in N.members) + "}" for r in reps
    )
    Q = FiniteGroup(q, table, coset_of[G.identity], labels)
    proj = Homomorphism(G, Q, tuple(coset_of))
    return Q, proj


def subgroup_group(H: Subgroup) -> tuple[FiniteGroup, Homomorphism]:
    """Present a subgroup as a group in its own right, with the inclusion map."""
    G = H.parent
    index = {x: i for i, x in enumerate(H.members)}
    n = len(H.members)
    table = tuple(
        tuple(index[G.table[x][y]] for y in H.members) for x in H.members
    )
    labels = tuple(G.label(x) for x in H.members)
    K = FiniteGroup(n, table, index[G.identity], labels)
    incl = Homomorphism(K, G, tuple(H.members))
    return K, incl


def restrict(h: Homomorphism, H: Subgroup) -> tuple[Homomorphism, FiniteGroup]:
    """Restriction of h to H, with codomain shrunk to the image h(H)."""
    if H.parent != h.domain:
        raise GroupStructureError("subgroup parent is not the homomorphism domain")
    K, incl = subgroup_group(H)
    img = image(h, H)
    M, _ = subgroup_group(img)
    img_index = {x: i for i, x in enumerate(img.members)}
    rmap = tuple(img_index[h.map[x]] for x in H.members)
    return Homomorphism(K, M, rmap), M


def compose(outer: Homomorphism, inner: Homomorphism) -> Homomorphism:
    if inner.codomain != outer.domain:
        raise GroupStructureError("composition domain mismatch")
    return Homomorphism(
        inner.domain, outer.codomain, tuple(outer.map[v] for v in inner.map)
    )


def identity_map(G: FiniteGroup) -> Homomorphism:
    return Homomorphism(G, G, tuple(range(G.order)))


def haar_mass(H: Subgroup, mode: HaarMode) -> Fraction:
    if mode is HaarMode.COUNTING:
        return Fraction(len(H.members))
    return Fraction(len(H.members), H.parent.order)


def haar_weight(G: FiniteGroup, mode: HaarMode) -> Fraction:
    """Mass of a single element."""
    return Fraction(1) if mode is HaarMode.COUNTING else Fraction(1, G.order)
