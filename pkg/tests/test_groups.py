from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blgroups.groups import (
    GroupStructureError,
    HaarMode,
    Homomorphism,
    SizeCapError,
    Subgroup,
    all_subgroups,
    direct_product,
    from_cayley_table,
    from_permutations,
    haar_mass,
    identity_map,
    image,
    is_normal,
    kernel,
    make_cyclic_product,
    normality_witness,
    quotient,
    restrict,
    subgroup_group,
    trivial_subgroup,
    whole_group,
)


def reduction_mod2(Z4, Z2):
    return Homomorphism(Z4, Z2, (0, 1, 0, 1))


# -- constructors ------------------------------------------------------------


def test_cyclic_z2_table(Z2):
    assert Z2.table == ((0, 1), (1, 0))
    assert Z2.identity == 0


def test_cyclic_trivial():
    G = make_cyclic_product([1])
    assert G.order == 1 and G.table == ((0,),)


def test_klein_four_every_square_trivial():
    G = make_cyclic_product([2, 2])
    assert all(G.table[x][x] == G.identity for x in range(4))


def test_cyclic_order_cap():
    with pytest.raises(SizeCapError):
        make_cyclic_product([100], order_cap=50)


def test_bad_table_rejected():
    with pytest.raises(GroupStructureError):
        from_cayley_table([[0, 1], [1, 1]])
    # associativity failure with a valid-looking identity row: 5-element loop
    loop = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupStructureError):
        from_cayley_table(loop)


def test_permutation_closure_s3(S3):
    assert S3.order == 6
    assert S3.identity == 0
    transpositions = [x for x in S3.elements() if S3.element_order(x) == 2]
    assert len(transpositions) == 3


def test_direct_product_z2_z3(Z2, Z3):
    P, pa, pb = direct_product(Z2, Z3)
    assert P.order == 6
    assert any(P.element_order(x) == 6 for x in P.elements())


def test_direct_product_trivial_factor(Z4, E1):
    P, pa, pb = direct_product(E1, Z4)
    assert P.order == 4
    assert sorted(pb.map) == list(range(4))  # bijective


def test_direct_product_kernels(Z2):
    P, pa, pb = direct_product(Z2, Z2)
    assert kernel(pa).order == 2
    assert kernel(pb).order == 2


# -- subgroups ---------------------------------------------------------------


def brute_force_subgroups(G):
    """All subsets containing the identity that are closed under the table."""
    elems = [x for x in G.elements() if x != G.identity]
    out = []
    for r in range(len(elems) + 1):
        for extra in combinations(elems, r):
            S = frozenset((G.identity,) + extra)
            if all(G.table[x][y] in S for x in S for y in S):
                out.append(tuple(sorted(S)))
    return sorted(out, key=lambda m: (len(m), m))


def test_subgroups_z4(Z4):
    subs = all_subgroups(Z4)
    assert [s.members for s in subs] == [(0,), (0, 2), (0, 1, 2, 3)]


def test_subgroups_klein_four():
    G = make_cyclic_product([2, 2])
    assert len(all_subgroups(G)) == 5


def test_subgroups_s3(S3):
    assert len(all_subgroups(S3)) == 6


@pytest.mark.parametrize(
    "moduli", [[6], [2, 2, 2], [12], [2, 4], [3, 3], [4, 4], [2, 2, 4]]
)
def test_subgroups_match_brute_force(moduli):
    G = make_cyclic_product(moduli)
    assert [s.members for s in all_subgroups(G)] == brute_force_subgroups(G)


def test_subgroups_match_brute_force_s3(S3):
    assert [s.members for s in all_subgroups(S3)] == brute_force_subgroups(S3)


def test_subgroup_invariants_hold_for_all_listed(S3):
    for H in all_subgroups(S3):
        Subgroup(S3, H.members)  # revalidates closure on construction


def test_lagrange(S3, Z4):
    for G in (S3, Z4):
        for H in all_subgroups(G):
            assert G.order % haar_mass(H, HaarMode.COUNTING) == 0


def test_subgroup_rejects_non_closed(Z4):
    with pytest.raises(GroupStructureError):
        Subgroup(Z4, (0, 1))


# -- homomorphisms -----------------------------------------------------------


def test_image_identity(Z4):
    h = identity_map(Z4)
    H = Subgroup(Z4, (0, 2))
    assert image(h, H).members == (0, 2)


def test_image_of_diagonal(Z2):
    P, pa, pb = direct_product(Z2, Z2)
    diag = Subgroup(P, (0, 3))
    assert image(pa, diag).members == (0, 1)


def test_image_of_even_subgroup(Z4, Z2):
    h = reduction_mod2(Z4, Z2)
    assert image(h, Subgroup(Z4, (0, 2))).members == (0,)


def test_kernel_of_reduction(Z4, Z2):
    assert kernel(reduction_mod2(Z4, Z2)).members == (0, 2)


def test_homomorphism_validation(Z4, Z2):
    with pytest.raises(GroupStructureError):
        Homomorphism(Z4, Z2, (0, 1, 1, 0))


def test_quotient_z4_by_even(Z4, Z2):
    N = Subgroup(Z4, (0, 2))
    Q, proj = quotient(Z4, N)
    assert Q.order == 2
    assert kernel(proj).members == (0, 2)
    assert len(set(proj.map)) == Q.order


def test_quotient_non_normal_names_witness(S3):
    H = next(s for s in all_subgroups(S3) if s.order == 2)
    assert not is_normal(S3, H)
    x, n = normality_witness(S3, H)
    xi = S3.inv(x)
    assert S3.table[S3.table[x][n]][xi] not in H.member_set()
    with pytest.raises(GroupStructureError, match="not normal"):
        quotient(S3, H)


def test_normal_subgroup_of_s3(S3):
    A3 = next(s for s in all_subgroups(S3) if s.order == 3)
    assert is_normal(S3, A3)
    Q, _ = quotient(S3, A3)
    assert Q.order == 2


def test_image_kernel_order_identity(S3, Z2):
    sign = Homomorphism(
        S3, Z2, tuple(0 if S3.element_order(x) in (1, 3) else 1 for x in S3.elements())
    )
    for H in all_subgroups(S3):
        h, _ = restrict(sign, H)
        assert H.order == kernel(h).order * image(sign, H).order


def test_haar_mass_examples(Z4, S3):
    assert haar_mass(whole_group(Z4), HaarMode.COUNTING) == 4
    assert haar_mass(Subgroup(Z4, (0, 2)), HaarMode.PROBABILITY) == Fraction(1, 2)
    assert haar_mass(trivial_subgroup(S3), HaarMode.PROBABILITY) == Fraction(1, 6)


def test_subgroup_group_and_inclusion(S3):
    A3 = next(s for s in all_subgroups(S3) if s.order == 3)
    K, incl = subgroup_group(A3)
    assert K.order == 3
    assert set(incl.map) == set(A3.members)


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.integers(min_value=1, max_value=6), min_size=1, max_size=3)
)
def test_cyclic_products_are_groups(moduli):
    G = make_cyclic_product(moduli)  # construction re-checks the axioms
    x = max(G.elements())
    assert G.table[x][G.inv(x)] == G.identity


def test_large_group_uses_randomized_associativity_scan():
    # above the full-scan threshold construction samples triples instead
    G = make_cyclic_product([270])
    assert G.order == 270
    assert G.table[133][200] == (133 + 200) % 270
