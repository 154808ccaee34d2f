import random

import pytest
from hypothesis import given, settings, strategies as st

from kcat.actions import trivial_action
from kcat.algebras import (
    Algebra,
    algebra_of_category,
    category_of_algebra,
    check_algebra,
    check_homogeneous,
    check_twist_identities,
    coherence_skew,
    coherence_smash,
    dual_numbers,
    duality_matrix_check,
    duality_matrix_report,
    graded_category_of_algebra,
    ground_field_algebra,
    group_algebra,
    induced_algebra_action,
    is_basis_bijection,
    map_from_basis_images,
    matrix_algebra,
    matrix_unit_id,
    rebase_unit,
    skew_group_algebra,
    smash_algebra,
    truncated_polynomials,
    verify_isomorphism,
)
from kcat.catalog import crown_action, kronecker, kronecker_grading
from kcat.corpus import free_action_corpus, random_cover
from kcat.errors import InhomogeneousBasis, MalformedCategory, NotAutomorphism
from kcat.gradings import smash_product
from kcat.groups import cyclic_group, klein_four
from kcat.linalg import identity
from kcat.scalars import QQ, make_field

Z1, Z2, Z3 = cyclic_group(1), cyclic_group(2), cyclic_group(3)


def structure(A: Algebra) -> dict:
    return {(A.basis[i], A.basis[j]): {A.basis[k]: c for k, c in t} for (i, j), t in A.mul_items()}


def kronecker_algebra():
    C = kronecker(QQ)
    g = kronecker_grading(C, Z2)
    return algebra_of_category(C), g.degree


def test_algebra_of_category_examples():
    A, _ = kronecker_algebra()
    assert A.dim == 4 and check_algebra(A) == []
    D = dual_numbers(QQ)
    aD = algebra_of_category(category_of_algebra(D))
    assert aD.basis == D.basis and structure(aD) == structure(D) and aD.unit == D.unit
    assert algebra_of_category(crown_action(2, QQ).category).dim == 8


def test_category_of_algebra_needs_basis_unit():
    A, _ = kronecker_algebra()
    with pytest.raises(MalformedCategory):
        category_of_algebra(A)
    B, _ = rebase_unit(A)
    assert check_algebra(B) == [] and category_of_algebra(B).dim("*", "*") == 4


def test_skew_group_algebra_examples():
    D = dual_numbers(QQ)
    assert skew_group_algebra(D, Z1, [identity(QQ, 2)]).dim == 2
    k = ground_field_algebra(QQ)
    kG = skew_group_algebra(k, Z2, [identity(QQ, 1)] * 2)
    assert kG.dim == 2 and check_algebra(kG) == []
    assert structure(kG)[("(1,t)", "(1,t)")] == {"(1,1)": 1}
    a = crown_action(2, QQ)
    AG = skew_group_algebra(algebra_of_category(a.category), Z2, induced_algebra_action(a))
    assert AG.dim == 16 and check_algebra(AG) == []


def test_not_automorphism():
    D = dual_numbers(QQ)
    with pytest.raises(NotAutomorphism):
        skew_group_algebra(D, Z2, [identity(QQ, 2), ((1, 1), (0, 1))])
    # e -> -e is an automorphism
    assert check_algebra(skew_group_algebra(D, Z2, [identity(QQ, 2), ((1, 0), (0, -1))])) == []


def test_smash_algebra_examples():
    k = ground_field_algebra(QQ)
    S = smash_algebra(k, {"1": 0}, Z2)
    assert S.dim == 2 and check_algebra(S) == []
    assert structure(S) == {("(1,d[1])", "(1,d[1])"): {"(1,d[1])": 1}, ("(1,d[t])", "(1,d[t])"): {"(1,d[t])": 1}}

    D = dual_numbers(QQ)
    S = smash_algebra(D, {"1": 0, "e": 1}, Z2)
    assert S.dim == 4 and check_algebra(S) == []
    # d_t e = sum_u (1 d_t)(e d_u) = e d_1, since deg e = t forces u = t^-1 t
    d_t = S.e("(1,d[t])")
    e = S.add(S.e("(e,d[1])"), S.e("(e,d[t])"))
    assert S.product(d_t, e) == S.e("(e,d[1])")
    assert check_twist_identities(S, D, {"1": 0, "e": 1}, Z2) == []

    A, deg = kronecker_algebra()
    S = smash_algebra(A, deg, Z2)
    assert S.dim == 8 and check_algebra(S) == []
    assert check_twist_identities(S, A, deg, Z2) == []


def test_inhomogeneous_basis():
    D = dual_numbers(QQ)
    with pytest.raises(InhomogeneousBasis):
        smash_algebra(D, {"1": 1, "e": 0}, Z2)
    assert check_homogeneous(D, {"1": 0}, Z2)[0].kind == "MissingDegree"


def test_coherence_skew_examples():
    C = kronecker(QQ)
    psi, ok = coherence_skew(trivial_action(Z1, C))
    assert ok and is_basis_bijection(psi)
    psi, ok = coherence_skew(crown_action(2, QQ))
    assert ok and psi.domain.dim == psi.codomain.dim == 16
    D = category_of_algebra(dual_numbers(QQ))
    psi, ok = coherence_skew(trivial_action(Z3, D))
    assert ok


@pytest.mark.parametrize(
    "A,deg,G",
    [
        (ground_field_algebra(QQ), {"1": 0}, Z2),
        (dual_numbers(QQ), {"1": 0, "e": 1}, Z2),
        (*group_algebra(QQ, Z3), Z3),
        (*kronecker_algebra(), Z2),
        (truncated_polynomials(QQ, 3), {"1": 0, "a": 1, "a^2": 2}, Z3),
    ],
    ids=["k", "dual", "kZ3", "a(kronecker)", "k[a]/a^3"],
)
def test_coherence_smash(A, deg, G):
    phi, ok = coherence_smash(A, deg, G)
    assert ok and is_basis_bijection(phi)
    assert phi.domain.dim == phi.codomain.dim == G.order * A.dim


def test_group_algebra_smash_is_full_matrix_algebra():
    A, deg = group_algebra(QQ, Z3)
    sp = smash_product(graded_category_of_algebra(A, deg, Z3))
    aS = algebra_of_category(sp.category)
    M = matrix_algebra(ground_field_algebra(QQ), 3)
    # each hom space of C_A#G is one-dimensional: (f, s, t) -> E_{t,s}
    images = {bid: [(matrix_unit_id(t, s, "1"), 1)] for bid, (f, s, t) in sp.basis_label.items()}
    assert verify_isomorphism(map_from_basis_images(aS, M, images))
    phi, ok = coherence_smash(A, deg, Z3)
    assert ok


def test_matrix_algebra_examples():
    D = dual_numbers(QQ)
    M1 = matrix_algebra(D, 1)
    assert M1.dim == 2 and check_algebra(M1) == []
    M2 = matrix_algebra(ground_field_algebra(QQ), 2)
    assert M2.dim == 4 and check_algebra(M2) == []
    e12, e21 = M2.e(matrix_unit_id(0, 1, "1")), M2.e(matrix_unit_id(1, 0, "1"))
    assert M2.product(e12, e21) == M2.e(matrix_unit_id(0, 0, "1"))
    assert matrix_algebra(D, 2).dim == 8


@pytest.mark.parametrize("A,deg,G", [
    (ground_field_algebra(QQ), {"1": 0}, Z2),
    (dual_numbers(QQ), {"1": 0, "e": 1}, Z2),
    (ground_field_algebra(QQ), {"1": 0}, Z1),
    (dual_numbers(QQ), {"1": 0, "e": 0}, Z3),
], ids=["k/Z2", "dual/Z2", "k/1", "dual/Z3"])
def test_duality_matrix(A, deg, G):
    report = duality_matrix_report(A, deg, G)
    assert all(report.values()), report
    assert duality_matrix_check(A, deg, G)


def test_rebase_unit_keeps_structure():
    A, deg = kronecker_algebra()
    B, bdeg = rebase_unit(A, deg)
    assert check_algebra(B) == [] and check_homogeneous(B, bdeg, Z2) == []
    assert B.unit.count(1) == 1 and sum(1 for c in B.unit if c) == 1


@pytest.mark.parametrize("name,a", list(free_action_corpus(QQ, seed=3, n_random=3)), ids=lambda v: v if isinstance(v, str) else "")
def test_skew_coherence_corpus(name, a):
    psi, ok = coherence_skew(a)
    assert ok and is_basis_bijection(psi)
    assert psi.domain.dim == a.group.order * algebra_of_category(a.category).dim


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from(["q", "fp:3"]))
def test_constructed_algebras_are_valid(seed, spec):
    F = make_field(spec)
    a = random_cover(random.Random(seed), F)
    A = algebra_of_category(a.category)
    assert check_algebra(A) == []
    AG = skew_group_algebra(A, a.group, induced_algebra_action(a))
    assert check_algebra(AG) == [] and AG.dim == a.group.order * A.dim


@given(st.sampled_from([Z2, Z3, klein_four()]), st.integers(0, 10**6))
def test_smash_algebra_dimensions(G, seed):
    rng = random.Random(seed)
    A = truncated_polynomials(QQ, rng.randint(1, 4))
    t = rng.randrange(G.order)
    deg, d = {}, G.identity
    for b in A.basis:
        deg[b] = d
        d = G.mul(t, d)
    S = smash_algebra(A, deg, G)
    assert S.dim == G.order * A.dim and check_algebra(S) == []
    assert check_twist_identities(S, A, deg, G) == []
