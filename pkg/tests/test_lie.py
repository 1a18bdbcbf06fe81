from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from blgroups.datum import Exponent
from blgroups.lie import (
    CompactLieDatum,
    IdealSpec,
    LinearizedMap,
    Verdict,
    all_semisimple_ideals,
    bcct_check,
    bl_polytope,
    brute_force_torus_violator,
    closed_pool,
    codimension_check,
    codimension_defect,
    facet_status,
    finiteness,
    full_ideal,
    ideal_dims,
    kernel_lattice_pool,
    map_kernel,
    membership,
    membership_point,
    split_commutator_center,
    vertices,
    zero_ideal,
)
from blgroups.rational_linalg import (
    nullspace,
    rank,
    rref,
    subspace_intersection,
    subspace_sum,
)

E = Exponent.of


def t3_loomis_whitney():
    def delete(j):
        rows = [[1 if c == r else 0 for c in range(3)] for r in range(3) if r != j]
        return LinearizedMap((), rows)

    return CompactLieDatum((), 3, (delete(0), delete(1), delete(2)))


def t2_two_projections():
    return CompactLieDatum(
        (), 2, (LinearizedMap((), [[1, 0]]), LinearizedMap((), [[0, 1]]))
    )


# -- rational linear algebra ----------------------------------------------------


def test_rref_canonical():
    A = rref([[2, 4, 0], [1, 2, 1]])
    assert A == ((Fraction(1), Fraction(2), Fraction(0)), (Fraction(0), Fraction(0), Fraction(1)))
    assert rref(A) == A


def test_rank_and_nullspace():
    M = [[2, -1, 0], [0, 2, -1]]
    assert rank(M) == 2
    ns = nullspace(M, 3)
    assert len(ns) == 1
    v = ns[0]
    assert 2 * v[0] - v[1] == 0 and 2 * v[1] - v[2] == 0


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-3, max_value=3), min_size=3, max_size=3),
        min_size=1,
        max_size=3,
    ),
    st.lists(
        st.lists(st.integers(min_value=-3, max_value=3), min_size=3, max_size=3),
        min_size=1,
        max_size=3,
    ),
)
def test_subspace_dimension_formula(a_rows, b_rows):
    A = rref(a_rows)
    B = rref(b_rows)
    s = subspace_sum(A, B)
    i = subspace_intersection(A, B, 3)
    assert len(s) + len(i) == len(A) + len(B)


# -- dimension counting -----------------------------------------------------------


def test_ideal_dims_zero_ideal():
    d = t3_loomis_whitney()
    dim_n, images = ideal_dims(d, zero_ideal())
    assert dim_n == 0 and images == [0, 0, 0]


def test_ideal_dims_simple_factor_killed():
    d = CompactLieDatum((3, 3), 0, (LinearizedMap((0,), ()),))
    first = IdealSpec((0,), ())
    dim_n, images = ideal_dims(d, first)
    assert dim_n == 3 and images == [3]
    second = IdealSpec((1,), ())
    assert ideal_dims(d, second) == (3, [0])


def test_ideal_dims_torus_line():
    d = t3_loomis_whitney()
    line = IdealSpec((), [[1, 1, 1]])
    dim_n, images = ideal_dims(d, line)
    assert dim_n == 1 and images == [1, 1, 1]


# -- codimension conditions --------------------------------------------------------


def test_codim_lw_at_half_exponents_tight():
    d = t3_loomis_whitney()
    p = [E(2), E(2), E(2)]
    pool = kernel_lattice_pool(d)
    assert codimension_check(d, p, pool).ok
    # equality at the zero ideal, the coordinate lines, and the planes
    for n in pool:
        if n == full_ideal(d):
            continue
        defect = codimension_defect(d, p, n)
        assert defect == 0


def test_codim_lw_violated():
    d = t3_loomis_whitney()
    rep = codimension_check(d, [E("3/2"), E(2), E(2)], kernel_lattice_pool(d))
    assert not rep.ok
    assert rep.violator == zero_ideal()
    assert rep.slack == Fraction(1, 3)


def test_codim_simple_isomorphism():
    d = CompactLieDatum((3,), 0, (LinearizedMap((0,), ()),))
    rep = codimension_check(d, [E(1)], [zero_ideal()])
    assert rep.ok


# -- pools ---------------------------------------------------------------------------


def test_pool_lw_eight_subspaces():
    d = t3_loomis_whitney()
    pool, stabilized = closed_pool(d)
    assert stabilized and len(pool) == 8
    dims = sorted(len(n.torus_basis) for n in pool)
    assert dims == [0, 1, 1, 1, 2, 2, 2, 3]


def test_pool_single_injective_map():
    d = CompactLieDatum((), 2, (LinearizedMap((), [[1, 0], [0, 1]]),))
    pool = kernel_lattice_pool(d)
    assert pool == [zero_ideal()]
    extra = IdealSpec((), [[1, 1]])
    pool2 = kernel_lattice_pool(d, extras=[extra])
    assert extra in pool2


def test_pool_two_simple_factors():
    d = CompactLieDatum(
        (3, 3), 0, (LinearizedMap((0,), ()), LinearizedMap((1,), ()))
    )
    pool = kernel_lattice_pool(d)
    assert [n.simple_part for n in pool] == [(), (0,), (1,), (0, 1)]


def test_map_kernel_torus():
    d = t3_loomis_whitney()
    k0 = map_kernel(d, 0)
    assert k0.torus_basis == ((Fraction(1), Fraction(0), Fraction(0)),)


# -- polytope ------------------------------------------------------------------------


def test_polytope_lw_halfspaces():
    d = t3_loomis_whitney()
    P = bl_polytope(d, kernel_lattice_pool(d))
    assert set(P.halfspaces) == {
        ((2, 2, 2), 3),
        ((2, 1, 1), 2),
        ((1, 2, 1), 2),
        ((1, 1, 2), 2),
        ((1, 1, 0), 1),
        ((1, 0, 1), 1),
        ((0, 1, 1), 1),
    }


def test_polytope_lw_vertices():
    d = t3_loomis_whitney()
    V = vertices(bl_polytope(d, kernel_lattice_pool(d)))
    F = Fraction
    assert set(V) == {
        (F(0), F(0), F(0)),
        (F(1), F(0), F(0)),
        (F(0), F(1), F(0)),
        (F(0), F(0), F(1)),
        (F(1, 2), F(1, 2), F(1, 2)),
    }


def test_polytope_single_isomorphism_is_interval():
    d = CompactLieDatum((3,), 0, (LinearizedMap((0,), ()),))
    P = bl_polytope(d, [zero_ideal()])
    assert P.halfspaces == (((3,), 3),)
    assert vertices(P) == [(Fraction(0),), (Fraction(1),)]


def test_polytope_t2_unit_square():
    d = t2_two_projections()
    pool = kernel_lattice_pool(d)
    P = bl_polytope(d, pool)
    V = vertices(P)
    F = Fraction
    assert set(V) == {(F(0), F(0)), (F(1), F(0)), (F(0), F(1)), (F(1), F(1))}


def test_membership_inside_and_outside():
    d = t3_loomis_whitney()
    P = bl_polytope(d, kernel_lattice_pool(d))
    assert membership(P, [2, 2, 2])
    assert membership(P, ["inf", "inf", "inf"])
    assert not membership_point(P, [Fraction(2, 3), Fraction(1, 2), Fraction(1, 2)])


def test_every_vertex_is_member_and_facets_are_tight_or_flagged():
    for d in (t3_loomis_whitney(), t2_two_projections()):
        P = bl_polytope(d, kernel_lattice_pool(d))
        verts = vertices(P)
        for v in verts:
            assert membership_point(P, v)
        status = facet_status(P)
        for (coeffs, bound), tight in zip(P.halfspaces, status):
            if not tight:
                continue
            # stepping out of a tight facet leaves the polytope
            on_facet = [v for v in verts
                        if sum(c * x for c, x in zip(coeffs, v)) == bound]
            centroid = [
                sum(v[j] for v in on_facet) / Fraction(len(on_facet))
                for j in range(P.dim)
            ]
            eps = Fraction(1, 1000)
            outside = [x + eps * c for x, c in zip(centroid, coeffs)]
            assert not membership_point(P, outside)


# -- BCCT checks -----------------------------------------------------------------------


def test_bcct_lw_scaling_holds():
    d = t3_loomis_whitney()
    rep = bcct_check(d, [E(2)] * 3, kernel_lattice_pool(d))
    assert rep.scaling_ok and rep.dimensions_ok


def test_bcct_identity_map():
    d = CompactLieDatum((), 2, (LinearizedMap((), [[1, 0], [0, 1]]),))
    rep = bcct_check(d, [E(1)], [zero_ideal(), full_ideal(d)])
    assert rep.ok


def test_bcct_t2_scaling_fails():
    d = t2_two_projections()
    rep = bcct_check(d, [E(2), E(2)], kernel_lattice_pool(d))
    assert not rep.scaling_ok
    assert rep.scaling_defect == -1


# -- split and finiteness ----------------------------------------------------------------


def test_split_pure_semisimple():
    d = CompactLieDatum((3, 8), 0, (LinearizedMap((0, 1), ()),))
    s, z = split_commutator_center(d)
    assert s.simple_dims == (3, 8) and z.torus_dim == 0


def test_split_pure_torus():
    d = t3_loomis_whitney()
    s, z = split_commutator_center(d)
    assert s.simple_dims == () and z.torus_dim == 3
    assert z.maps == d.maps


def test_split_mixed_verdict_is_conjunction():
    # su(2) + T^1 with one map keeping everything, one killing the torus
    d = CompactLieDatum(
        (3,),
        1,
        (
            LinearizedMap((0,), [[1]]),
            LinearizedMap((0,), ()),
        ),
    )
    s, z = split_commutator_center(d)
    fin = finiteness(d, [E(1), E(1)])
    # torus side: only the first map sees the torus; at p=(1,1) the zero
    # subspace needs 1*1 + 1*0 <= 1: fine; semisimple side: s_0 must satisfy
    # 3+3 <= 3 at the zero ideal: violated
    assert fin.verdict is Verdict.INFINITE


def test_finiteness_two_simple_factors():
    d = CompactLieDatum(
        (3, 3), 0, (LinearizedMap((0,), ()), LinearizedMap((1,), ()))
    )
    p = [E(1), E(1)]
    fin = finiteness(d, p)
    assert fin.verdict is Verdict.FINITE
    # equality at each single factor
    assert codimension_defect(d, p, IdealSpec((0,), ())) == 0
    assert codimension_defect(d, p, IdealSpec((1,), ())) == 0


def test_finiteness_lw():
    d = t3_loomis_whitney()
    assert finiteness(d, [E(2)] * 3).verdict is Verdict.FINITE
    rep = finiteness(d, [E("3/2"), E(2), E(2)])
    assert rep.verdict is Verdict.INFINITE
    assert rep.violator == zero_ideal()
    assert rep.slack == Fraction(1, 3)


def test_finiteness_semisimple_violation():
    d = CompactLieDatum(
        (3, 3), 0, (LinearizedMap((0,), ()), LinearizedMap((0,), ()))
    )
    rep = finiteness(d, [E(1), E(1)])
    assert rep.verdict is Verdict.INFINITE
    assert rep.violator.simple_part == (1,)


def test_finiteness_undecided_above_confirmation_cap():
    d = CompactLieDatum((), 4, (LinearizedMap((), [[1, 0, 0, 0], [0, 1, 0, 0],
                                                   [0, 0, 1, 0], [0, 0, 0, 1]]),))
    rep = finiteness(d, [E(1)])
    assert rep.verdict is Verdict.UNDECIDED


def test_brute_force_scan_matches_pool_verdicts():
    d = t3_loomis_whitney()
    assert brute_force_torus_violator(d, [E(2)] * 3, box=3) is None
    n = brute_force_torus_violator(d, [E("3/2"), E(2), E(2)], box=3)
    assert n is not None and codimension_defect(d, [E("3/2"), E(2), E(2)], n) > 0


def test_brute_force_scan_finds_kernel_line_violator():
    # two copies of the same projection of T^3: their common kernel violates
    m = [[1, 0, 0], [0, 1, 0]]
    d = CompactLieDatum((), 3, (LinearizedMap((), m), LinearizedMap((), m)))
    p = [E("3/2"), E(2)]
    n = brute_force_torus_violator(d, p, box=3)
    assert n is not None
    assert codimension_defect(d, p, n) > 0
    assert finiteness(d, p).verdict is Verdict.INFINITE


def test_semisimple_ideals_enumeration():
    d = CompactLieDatum((3, 3, 8), 0, (LinearizedMap((0, 1, 2), ()),))
    ideals = all_semisimple_ideals(d)
    assert len(ideals) == 8
