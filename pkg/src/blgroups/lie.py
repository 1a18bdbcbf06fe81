"""Finiteness analysis for compact Lie group data in exact rational arithmetic.

A compact Lie algebra splits as (sum of simple ideals) + (central torus), and
every ideal is a subset of the simple summands plus a rational subspace of
the torus.  A homomorphism kills or keeps each simple summand and acts on the
torus by an integer matrix, so all the dimension counting in the codimension
conditions reduces to subset bookkeeping plus rational matrix ranks.

The conditions are necessary over *all* ideals but only finitely many
dimension vectors occur, hence the polytope of reciprocal exponents has
finitely many facets.  Simple summands can be enumerated completely; torus
subspaces cannot, so the checker closes the kernels of the maps into a
lattice pool and certifies completeness only in the narrow situations where
it can (pure semisimple data, or torus data whose pool polytope vertices
survive an independent dense scan).  Everything else is reported UNDECIDED,
never guessed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .datum import Exponent
from .groups import SizeCapError
from .rational_linalg import (
    Matrix,
    as_matrix,
    enumerate_box_subspaces,
    image_basis,
    nullspace,
    rref,
    solve_square,
    subspace_intersection,
    subspace_sum,
)

POOL_CAP = 10_000
VERTEX_DIM_CAP = 8


@dataclass(frozen=True)
class LinearizedMap:
    """A homomorphism at the Lie algebra level.

    Simple summands are either killed or mapped isomorphically (a simple
    algebra has no other images), so kept_simple lists the surviving ones;
    the torus block is an arbitrary integer matrix, one row per dimension of
    the target's central torus.
    """

    kept_simple: tuple[int, ...]
    torus_matrix: Matrix

    def __post_init__(self):
        object.__setattr__(self, "kept_simple", tuple(sorted(set(self.kept_simple))))
        object.__setattr__(self, "torus_matrix", as_matrix(self.torus_matrix))


@dataclass(frozen=True)
class CompactLieDatum:
    simple_dims: tuple[int, ...]
    torus_dim: int
    maps: tuple[LinearizedMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "simple_dims", tuple(self.simple_dims))
        object.__setattr__(self, "maps", tuple(self.maps))
        if any(d <= 0 for d in self.simple_dims) or self.torus_dim < 0:
            raise ValueError("simple dimensions must be positive, torus_dim >= 0")
        for m in self.maps:
            if any(i >= len(self.simple_dims) for i in m.kept_simple):
                raise ValueError("kept_simple index out of range")
            for row in m.torus_matrix:
                if len(row) != self.torus_dim:
                    raise ValueError("torus matrix row width must equal torus_dim")

    @property
    def J(self) -> int:
        return len(self.maps)

    def group_dim(self) -> int:
        return sum(self.simple_dims) + self.torus_dim


@dataclass(frozen=True)
class IdealSpec:
    """An ideal: a set of simple summands plus a rational torus subspace."""

    simple_part: tuple[int, ...]
    torus_basis: Matrix = ()

    def __post_init__(self):
        object.__setattr__(self, "simple_part", tuple(sorted(set(self.simple_part))))
        object.__setattr__(self, "torus_basis", rref(self.torus_basis))


def zero_ideal() -> IdealSpec:
    return IdealSpec((), ())


def full_ideal(d: CompactLieDatum) -> IdealSpec:
    eye = tuple(
        tuple(Fraction(int(i == j)) for j in range(d.torus_dim))
        for i in range(d.torus_dim)
    )
    return IdealSpec(tuple(range(len(d.simple_dims))), eye)


def ideal_dims(d: CompactLieDatum, n: IdealSpec) -> tuple[int, list[int]]:
    """(dim n, [dim dsigma_j(n) for each map]), all by exact rank."""
    for row in n.torus_basis:
        if len(row) != d.torus_dim:
            raise ValueError("torus basis rows must have torus_dim entries")
    dim_n = sum(d.simple_dims[i] for i in n.simple_part) + len(n.torus_basis)
    image_dims = []
    for m in d.maps:
        ss = sum(d.simple_dims[i] for i in n.simple_part if i in m.kept_simple)
        tz = len(image_basis(m.torus_matrix, n.torus_basis))
        image_dims.append(ss + tz)
    return dim_n, image_dims


def map_image_dims(d: CompactLieDatum) -> list[int]:
    """dim dsigma_j(g) per map."""
    return ideal_dims(d, full_ideal(d))[1]


@dataclass(frozen=True)
class CodimReport:
    ok: bool
    violator: Optional[IdealSpec] = None
    slack: Optional[Fraction] = None


def codimension_defect(
    d: CompactLieDatum, p: Sequence[Exponent], n: IdealSpec, g_dims=None
) -> Fraction:
    """lhs - rhs of the codimension inequality at the ideal n (<= 0 means ok)."""
    if g_dims is None:
        g_dims = map_image_dims(d)
    dim_n, image_dims = ideal_dims(d, n)
    lhs = sum(
        (Exponent.of(pj).reciprocal() * (gj - nj) for pj, gj, nj in
         zip(p, g_dims, image_dims)),
        Fraction(0),
    )
    return lhs - (d.group_dim() - dim_n)


def codimension_check(
    d: CompactLieDatum, p: Sequence[Exponent], ideals: Sequence[IdealSpec]
) -> CodimReport:
    """Verify the codimension inequality for every listed proper ideal."""
    full = full_ideal(d)
    g_dims = map_image_dims(d)
    for n in ideals:
        if n == full:
            continue
        defect = codimension_defect(d, p, n, g_dims)
        if defect > 0:
            return CodimReport(False, n, defect)
    return CodimReport(True)


# -- pools ----------------------------------------------------------------


def map_kernel(d: CompactLieDatum, j: int) -> IdealSpec:
    m = d.maps[j]
    killed = tuple(i for i in range(len(d.simple_dims)) if i not in m.kept_simple)
    if m.torus_matrix:
        tb = nullspace(m.torus_matrix, d.torus_dim)
    else:
        tb = full_ideal(d).torus_basis
    return IdealSpec(killed, tb)


def _ideal_sum(d, a: IdealSpec, b: IdealSpec) -> IdealSpec:
    return IdealSpec(
        a.simple_part + b.simple_part, subspace_sum(a.torus_basis, b.torus_basis)
    )


def _ideal_intersection(d, a: IdealSpec, b: IdealSpec) -> IdealSpec:
    return IdealSpec(
        tuple(set(a.simple_part) & set(b.simple_part)),
        subspace_intersection(a.torus_basis, b.torus_basis, d.torus_dim),
    )


def closed_pool(
    d: CompactLieDatum,
    extras: Sequence[IdealSpec] = (),
    max_closure: int = 3,
    cap: int = POOL_CAP,
) -> tuple[list[IdealSpec], bool]:
    """Close kernels + extras + {0} under pairwise sum and intersection.

    Returns the pool (canonically sorted) and whether the closure reached a
    fixed point within max_closure rounds.
    """
    pool = {zero_ideal()}
    pool.update(map_kernel(d, j) for j in range(d.J))
    pool.update(extras)
    stabilized = False
    for _ in range(max_closure):
        items = sorted(pool, key=_ideal_key)
        new = set()
        for i, a in enumerate(items):
            for b in items[i + 1 :]:
                for c in (_ideal_sum(d, a, b), _ideal_intersection(d, a, b)):
                    if c not in pool:
                        new.add(c)
        if not new:
            stabilized = True
            break
        pool.update(new)
        if len(pool) > cap:
            raise SizeCapError(f"ideal pool exceeds cap {cap}")
    else:
        # one more probe: the loop may have converged exactly at the last round
        items = sorted(pool, key=_ideal_key)
        stabilized = all(
            _ideal_sum(d, a, b) in pool and _ideal_intersection(d, a, b) in pool
            for i, a in enumerate(items)
            for b in items[i + 1 :]
        )
    return sorted(pool, key=_ideal_key), stabilized


def _ideal_key(n: IdealSpec):
    return (
        len(n.simple_part) + len(n.torus_basis),
        n.simple_part,
        n.torus_basis,
    )


def kernel_lattice_pool(
    d: CompactLieDatum,
    extras: Sequence[IdealSpec] = (),
    max_closure: int = 3,
    cap: int = POOL_CAP,
) -> list[IdealSpec]:
    return closed_pool(d, extras, max_closure, cap)[0]


def all_semisimple_ideals(d: CompactLieDatum, cap_bits: int = 20) -> list[IdealSpec]:
    """Every ideal of a datum with no torus: all subsets of simple summands."""
    s = len(d.simple_dims)
    if s > cap_bits:
        raise SizeCapError(f"2^{s} subsets exceed the enumeration cap")
    out = []
    for mask in range(2**s):
        out.append(IdealSpec(tuple(i for i in range(s) if mask >> i & 1), ()))
    return sorted(out, key=_ideal_key)


# -- polytope --------------------------------------------------------------


@dataclass(frozen=True)
class RationalPolytope:
    """{ x in [0,1]^J : c . x <= b for each halfspace }, integer data."""

    dim: int
    halfspaces: tuple[tuple[tuple[int, ...], int], ...]


def bl_polytope(d: CompactLieDatum, ideals: Sequence[IdealSpec]) -> RationalPolytope:
    """One halfspace per distinct dimension vector over the given ideals."""
    if not any(n == zero_ideal() for n in ideals):
        raise ValueError("the ideal list must contain the zero ideal")
    full = full_ideal(d)
    g_dims = map_image_dims(d)
    dim_g = d.group_dim()
    seen = set()
    halfspaces = []
    for n in ideals:
        if n == full:
            continue
        dim_n, image_dims = ideal_dims(d, n)
        coeffs = tuple(g - i for g, i in zip(g_dims, image_dims))
        bound = dim_g - dim_n
        if (coeffs, bound) not in seen:
            seen.add((coeffs, bound))
            halfspaces.append((coeffs, bound))
    return RationalPolytope(d.J, tuple(sorted(halfspaces)))


def _all_constraints(P: RationalPolytope):
    """Halfspaces plus the box, uniformly as (coeffs, bound) with c.x <= b."""
    cons = [
        (tuple(Fraction(c) for c in coeffs), Fraction(b))
        for coeffs, b in P.halfspaces
    ]
    for j in range(P.dim):
        unit = [Fraction(0)] * P.dim
        unit[j] = Fraction(1)
        cons.append((tuple(unit), Fraction(1)))
        cons.append((tuple(-v for v in unit), Fraction(0)))
    return cons


def membership_point(P: RationalPolytope, point: Sequence) -> bool:
    x = [Fraction(v) for v in point]
    if len(x) != P.dim:
        raise ValueError("point dimension mismatch")
    return all(
        sum(c * v for c, v in zip(coeffs, x)) <= b
        for coeffs, b in _all_constraints(P)
    )


def membership(P: RationalPolytope, p: Sequence) -> bool:
    """Membership of the reciprocal tuple of a list of exponents."""
    return membership_point(P, [Exponent.of(pj).reciprocal() for pj in p])


def vertices(P: RationalPolytope) -> list[tuple[Fraction, ...]]:
    """Exact vertices: feasible solutions of full-rank J-subsets of constraints."""
    if P.dim > VERTEX_DIM_CAP:
        raise SizeCapError(f"vertex enumeration capped at dimension {VERTEX_DIM_CAP}")
    cons = _all_constraints(P)
    out = set()
    from itertools import combinations

    for subset in combinations(range(len(cons)), P.dim):
        A = [cons[i][0] for i in subset]
        b = [cons[i][1] for i in subset]
        x = solve_square(A, b)
        if x is not None and membership_point(P, x):
            out.add(tuple(x))
    return sorted(out)


def facet_status(P: RationalPolytope) -> list[bool]:
    """Per halfspace: True if tight at some vertex, False if redundant."""
    verts = vertices(P)
    out = []
    for coeffs, b in P.halfspaces:
        out.append(
            any(sum(c * v for c, v in zip(coeffs, x)) == b for x in verts)
        )
    return out


# -- BCCT (linearized abelian) checks --------------------------------------


@dataclass(frozen=True)
class BCCTReport:
    scaling_ok: bool
    scaling_defect: Fraction
    dimensions_ok: bool
    witness: Optional[IdealSpec] = None

    @property
    def ok(self) -> bool:
        return self.scaling_ok and self.dimensions_ok


def bcct_check(
    d: CompactLieDatum, p: Sequence[Exponent], subspace_pool: Sequence[IdealSpec]
) -> BCCTReport:
    """Scaling equality plus dimension inequalities over the given subspaces."""
    g_dims = map_image_dims(d)
    recips = [Exponent.of(pj).reciprocal() for pj in p]
    scaling_defect = sum(
        (r * gd for r, gd in zip(recips, g_dims)), Fraction(0)
    ) - d.group_dim()
    witness = None
    for n in subspace_pool:
        dim_n, image_dims = ideal_dims(d, n)
        if dim_n > sum((r * i for r, i in zip(recips, image_dims)), Fraction(0)):
            witness = n
            break
    return BCCTReport(scaling_defect == 0, scaling_defect, witness is None, witness)


# -- finiteness -------------------------------------------------------------


class Verdict(enum.Enum):
    FINITE = "FINITE"
    INFINITE = "INFINITE"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class FinitenessReport:
    verdict: Verdict
    violator: Optional[IdealSpec] = None
    slack: Optional[Fraction] = None
    pool: tuple[IdealSpec, ...] = ()
    certification: str = ""
    note: str = (
        "only a certified-complete ideal pool can upgrade 'no violator found' "
        "to FINITE; torus data admit uncountably many ideals of which only "
        "countably many close"
    )


def split_commutator_center(
    d: CompactLieDatum,
) -> tuple[CompactLieDatum, CompactLieDatum]:
    """Split into the semisimple part and the central torus part.

    The codimension defect of any ideal is the sum of the defects of its two
    parts in the part data, so the full datum passes iff both parts pass.
    """
    semisimple = CompactLieDatum(
        d.simple_dims,
        0,
        tuple(LinearizedMap(m.kept_simple, ()) for m in d.maps),
    )
    torus = CompactLieDatum(
        (),
        d.torus_dim,
        tuple(LinearizedMap((), m.torus_matrix) for m in d.maps),
    )
    return semisimple, torus


_BOX_SUBSPACE_CACHE: dict[tuple[int, int, int], list[Matrix]] = {}


def _box_subspaces(n: int, box: int, max_dim: int) -> list[Matrix]:
    key = (n, box, max_dim)
    if key not in _BOX_SUBSPACE_CACHE:
        _BOX_SUBSPACE_CACHE[key] = list(enumerate_box_subspaces(n, box, max_dim))
    return _BOX_SUBSPACE_CACHE[key]


def brute_force_torus_violator(
    d: CompactLieDatum, p: Sequence[Exponent], box: int = 3
) -> Optional[IdealSpec]:
    """Scan every subspace spanned by vectors with entries in [-box, box]."""
    if d.simple_dims:
        raise ValueError("brute force scan applies to pure torus data")
    g_dims = map_image_dims(d)
    for basis in _box_subspaces(d.torus_dim, box, max(0, d.torus_dim - 1)):
        n = IdealSpec((), basis)
        if codimension_defect(d, p, n, g_dims) > 0:
            return n
    return None


def _vertices_confirmed(
    torus: CompactLieDatum, pool: Sequence[IdealSpec], box: int
) -> bool:
    """True if no dense-scan violator exists at any pool-polytope vertex.

    The true feasible region is convex and contained in the pool polytope;
    if every pool vertex survives the independent scan, the two regions
    coincide as far as the scan can see.
    """
    P = bl_polytope(torus, list(pool) + [zero_ideal()])
    for v in vertices(P):
        exps = [Exponent(None) if x == 0 else Exponent(1 / x) for x in v]
        if brute_force_torus_violator(torus, exps, box) is not None:
            return False
    return True


def finiteness(
    d: CompactLieDatum,
    p: Sequence[Exponent],
    pool: Optional[Sequence[IdealSpec]] = None,
    extras: Sequence[IdealSpec] = (),
    max_closure: int = 3,
    confirm_box: int = 3,
    confirm_dim_cap: int = 3,
) -> FinitenessReport:
    """Decide finiteness of the constant at p, against the ideal pool.

    A violating ideal anywhere settles INFINITE.  FINITE needs completeness:
    the semisimple side is enumerated in full; the torus side is certified
    only when the pool closure stabilized and every vertex of its polytope
    survives the independent dense scan (feasible only in low torus
    dimension).  Anything else is UNDECIDED.
    """
    p = [Exponent.of(pj) for pj in p]
    if len(p) != d.J:
        raise ValueError("exponent count must match the number of maps")
    if pool is None:
        pool_list, stabilized = closed_pool(d, extras, max_closure)
    else:
        pool_list = sorted(set(pool) | {zero_ideal()}, key=_ideal_key)
        stabilized = all(
            _ideal_sum(d, a, b) in set(pool_list)
            and _ideal_intersection(d, a, b) in set(pool_list)
            for i, a in enumerate(pool_list)
            for b in pool_list[i + 1 :]
        )
    pool_tuple = tuple(pool_list)

    report = codimension_check(d, p, pool_list)
    if not report.ok:
        return FinitenessReport(
            Verdict.INFINITE, report.violator, report.slack, pool_tuple,
            "violating ideal found in the pool",
        )

    semisimple, torus = split_commutator_center(d)
    s_report = codimension_check(semisimple, p, all_semisimple_ideals(semisimple))
    if not s_report.ok:
        violator = IdealSpec(s_report.violator.simple_part, full_ideal(d).torus_basis)
        return FinitenessReport(
            Verdict.INFINITE, violator, s_report.slack, pool_tuple,
            "violating ideal found among simple summand subsets",
        )
    if d.torus_dim == 0:
        return FinitenessReport(
            Verdict.FINITE, None, None, pool_tuple,
            "semisimple datum: all ideals enumerated (constant 1 under "
            "probability Haar)",
        )

    torus_pool = [IdealSpec((), n.torus_basis) for n in pool_list]
    torus_pool = sorted(set(torus_pool), key=_ideal_key)
    t_report = codimension_check(torus, p, torus_pool)
    if not t_report.ok:
        violator = IdealSpec(tuple(range(len(d.simple_dims))), t_report.violator.torus_basis)
        return FinitenessReport(
            Verdict.INFINITE, violator, t_report.slack, pool_tuple,
            "violating torus subspace found in the pool",
        )

    if (
        stabilized
        and d.torus_dim <= confirm_dim_cap
        and _vertices_confirmed(torus, torus_pool, confirm_box)
    ):
        return FinitenessReport(
            Verdict.FINITE, None, None, pool_tuple,
            "pool closure stabilized and every pool-polytope vertex survives "
            "the dense subspace scan (constant 1 under probability Haar)",
        )
    return FinitenessReport(
        Verdict.UNDECIDED, None, None, pool_tuple,
        "pool passes but completeness is not certified",
    )
