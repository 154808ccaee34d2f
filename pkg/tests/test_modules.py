import random

import pytest
from hypothesis import given, strategies as st

from kcat.actions import quotient_category, trivial_action
from kcat.algebras import algebra_of_category
from kcat.catalog import crown_action, kronecker, kronecker_grading
from kcat.corpus import a3, random_cover_module, random_graded_module, random_grading, random_module
from kcat.gradings import smash_product, trivial_grading
from kcat.groups import cyclic_group, klein_four
from kcat.lincat import compose_functors, full_subcategory, identity_functor
from kcat.linalg import identity, matmul, rank, zeros
from kcat.modules import (
    GradedModule,
    Module,
    ModuleMap,
    algebra_representation,
    canonicalize,
    check_graded_module,
    check_module,
    check_module_map,
    compose_module_maps,
    cover_map_to_graded,
    cover_to_graded,
    generators,
    graded_map_to_cover,
    graded_to_cover,
    induced_sum_check,
    is_canonical_layout,
    is_fixed,
    module_from_generators,
    restrict,
    restrict_map,
    twist_map,
    twist_module,
    zero_module,
)
from kcat.scalars import QQ, make_field

Z1, Z2, Z3 = cyclic_group(1), cyclic_group(2), cyclic_group(3)


def kron_module(a=1, b=0, F=QQ):
    C = kronecker(F)
    return module_from_generators(C, {"x": 1, "y": 1}, {"a": ((F(a),),), "b": ((F(b),),)})


def regular_module(C):
    """M_y spanned by every basis morphism with target y; g acts by g o -."""
    F = C.field
    coords = {y: [b for b in C.basis if C.target(b) == y] for y in C.objects}
    dims = {y: len(v) for y, v in coords.items()}
    action = {}
    for g in C.basis:
        y, z = C.source(g), C.target(g)
        rows = [[F.zero] * dims[y] for _ in range(dims[z])]
        for j, f in enumerate(coords[y]):
            for h, c in C.basis_comp(g, f):
                rows[coords[z].index(h)][j] += c
        action[g] = tuple(tuple(r) for r in rows)
    return Module(C, dims, action)


def random_endo_map(rng, M):
    """A scalar multiple of the identity, natural for every module."""
    F = M.category.field
    c = F(rng.randint(-3, 3))
    comps = {x: tuple(tuple(c * v for v in r) for r in identity(F, M.dims[x])) for x in M.category.objects}
    return ModuleMap(M, M, comps)


# -- check_module ---------------------------------------------------------------------


def test_kronecker_module_valid():
    M = kron_module()
    assert check_module(M) == [] and M.dims == {"x": 1, "y": 1}
    assert M.action["a"] == ((1,),) and M.action["b"] == ((0,),)


def test_module_shape_and_identity_diagnostics():
    M = kron_module()
    bad = Module(M.category, M.dims, {**M.action, "a": ((1, 0),)})
    assert check_module(bad)[0].kind == "Shape"
    bad = Module(M.category, M.dims, {**M.action, "1_x": ((2,),)})
    assert check_module(bad)[0].kind == "Identity"


def test_composition_diagnostic():
    C = a3(QQ)
    M = module_from_generators(C, {"x": 1, "y": 1, "z": 1}, {"u": ((1,),), "v": ((1,),)})
    assert check_module(M) == []
    bad = Module(C, M.dims, {**M.action, "v*u": ((2,),)})
    d = check_module(bad)
    assert d[0].kind == "Composition" and set(d[0].witness) == {"v", "u"}


def test_misaligned_block_diagnostic():
    g = kronecker_grading(kronecker(QQ), Z2)
    M = module_from_generators(g.category, {"x": 1, "y": 1}, {"a": ((0,),), "b": ((1,),)})
    ok = GradedModule(M, g, {"x": {0: (0,)}, "y": {1: (0,)}})
    assert check_graded_module(ok) == []
    bad = GradedModule(M, g, {"x": {0: (0,)}, "y": {0: (0,)}})
    d = check_graded_module(bad)
    assert d and d[0].kind == "GradedAction" and d[0].witness[0] == "b"


def test_blocks_must_partition():
    g = kronecker_grading(kronecker(QQ), Z2)
    M = kron_module(0, 0)
    bad = GradedModule(M, g, {"x": {0: (0,), 1: (0,)}, "y": {0: (0,)}})
    assert check_graded_module(bad)[0].kind == "Blocks"


@pytest.mark.parametrize("make", [kronecker, a3, lambda F: crown_action(2, F).category])
def test_regular_module_valid(make):
    C = make(QQ)
    M = regular_module(C)
    assert check_module(M) == []
    assert M.total_dim == algebra_of_category(C).dim


def test_zero_module():
    C = kronecker(QQ)
    Z = zero_module(C)
    assert check_module(Z) == [] and Z.total_dim == 0


def test_generators_of_path_categories():
    assert generators(kronecker(QQ)) == ["a", "b"]
    assert generators(a3(QQ)) == ["u", "v"]


# -- agreement with a(C) --------------------------------------------------------------


@given(st.integers(0, 10**6))
def test_algebra_representation_is_a_representation(seed):
    """Each module over C is a module over a(C): the block matrices multiply like a(C)."""
    rng = random.Random(seed)
    C = a3(QQ) if seed % 2 else crown_action(2, QQ).category
    M = random_module(rng, C)
    A = algebra_of_category(C)
    basis, mats = algebra_representation(M)
    assert basis == list(A.basis)
    n = M.total_dim
    pos = {b: i for i, b in enumerate(basis)}
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            lhs = matmul(QQ, mats[i], mats[j], inner=n, cols=n)
            rhs = zeros(QQ, n, n)
            for k, c in A.basis_product(i, j):
                rhs = tuple(tuple(r + c * s for r, s in zip(ra, rb)) for ra, rb in zip(rhs, mats[k]))
            assert lhs == rhs, (bi, bj)
    unit = zeros(QQ, n, n)
    for x in C.objects:
        k = pos[C.identities[x]]
        unit = tuple(tuple(r + s for r, s in zip(ra, rb)) for ra, rb in zip(unit, mats[k]))
    assert unit == identity(QQ, n)


# -- restriction ----------------------------------------------------------------------


def test_restrict_along_identity():
    M = kron_module(2, 3)
    assert restrict(identity_functor(M.category), M) == M


def test_restrict_along_crown_projection():
    a = crown_action(2, QQ)
    q = quotient_category(a)
    Q = q.category
    # on the quotient the two arrows out of [x0] are labelled by group elements
    N = random_module(random.Random(1), Q, max_dim=2)
    FN = restrict(q.projection, N)
    assert check_module(FN) == []
    for x in a.category.objects:
        assert FN.dims[x] == N.dims[q.object_of(x)]
    dims = {}
    for x in a.category.objects:
        dims.setdefault(q.object_of(x), set()).add(FN.dims[x])
    assert all(len(v) == 1 for v in dims.values())


def test_restrict_kronecker_to_four_crown():
    g = kronecker_grading(kronecker(QQ), Z2)
    sp = smash_product(g)
    N = kron_module(1, 1)
    FN = restrict(sp.covering, N)
    assert check_module(FN) == []
    assert set(FN.dims.values()) == {1}
    for bid, (b, _, _) in sp.basis_label.items():
        assert FN.action[bid] == N.action[b]


@given(st.integers(0, 10**6))
def test_restrict_along_full_inclusion_keeps_hom_span(seed):
    rng = random.Random(seed)
    q, g = random_grading(rng, QQ)
    C = g.category
    N = random_module(rng, C)
    keep = rng.sample(C.objects, rng.randint(1, len(C.objects)))
    sub, inc = full_subcategory(C, keep)
    FN = restrict(inc, N)
    assert check_module(FN) == []
    for x in sub.objects:
        for y in sub.objects:
            flat = lambda M, bs: [tuple(v for r in M.action[b] for v in r) for b in bs]  # noqa: E731
            if sub.dim(x, y) and N.dims[x] * N.dims[y]:
                assert rank(QQ, flat(FN, sub.hom(x, y))) == rank(QQ, flat(N, C.hom(x, y)))


def test_restrict_is_functorial_in_composed_functors():
    a = crown_action(2, QQ)
    q = quotient_category(a)
    N = random_module(random.Random(5), q.category)
    idc = identity_functor(a.category)
    assert restrict(compose_functors(q.projection, idc), N) == restrict(idc, restrict(q.projection, N))


# -- twisting and fixed modules -----------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_twist_identity_and_composition(n):
    a = crown_action(n, QQ)
    G = a.group
    rng = random.Random(n)
    M = random_module(rng, a.category)
    assert twist_module(a, G.identity, M) == M
    for s in G.elements:
        Ms = twist_module(a, s, M)
        assert check_module(Ms) == []
        for t in G.elements:
            assert twist_module(a, t, Ms) == twist_module(a, G.mul(t, s), M)


def test_twist_moves_support():
    a = crown_action(3, QQ)
    C = a.category
    dims = {x: 1 if x == "x0" else 0 for x in C.objects}
    M = module_from_generators(C, dims, {b: zeros(QQ, dims[C.target(b)], dims[C.source(b)]) for b in generators(C)})
    M1 = twist_module(a, 1, M)
    assert M1.dims["x1"] == 1 and M1.dims["x0"] == 0
    assert not is_fixed(a, M)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_restricted_modules_are_fixed(n):
    a = crown_action(n, QQ)
    q = quotient_category(a)
    for seed in range(4):
        N = random_module(random.Random(seed), q.category)
        FN = restrict(q.projection, N)
        for s in a.group.elements:
            assert twist_module(a, s, FN) == FN
        assert is_fixed(a, FN)


def test_trivial_group_always_fixed():
    C = a3(QQ)
    a = trivial_action(Z1, C)
    for seed in range(5):
        assert is_fixed(a, random_module(random.Random(seed), C))


def test_twist_and_restrict_act_on_maps():
    a = crown_action(3, QQ)
    rng = random.Random(0)
    M = random_module(rng, a.category)
    phi, psi = random_endo_map(rng, M), random_endo_map(rng, M)
    assert check_module_map(phi) == []
    for s in a.group.elements:
        lhs = twist_map(a, s, compose_module_maps(psi, phi))
        rhs = compose_module_maps(twist_map(a, s, psi), twist_map(a, s, phi))
        assert lhs.components == rhs.components and check_module_map(lhs) == []
    q = quotient_category(a)
    N = random_module(rng, q.category)
    f, g = random_endo_map(rng, N), random_endo_map(rng, N)
    r = restrict_map(q.projection, compose_module_maps(g, f))
    assert r.components == compose_module_maps(restrict_map(q.projection, g), restrict_map(q.projection, f)).components
    assert check_module_map(r) == []


def test_non_natural_map_flagged():
    M = kron_module(1, 0)
    phi = ModuleMap(M, M, {"x": ((1,),), "y": ((2,),)})
    assert check_module_map(phi)[0].kind == "Naturality"


# -- graded modules and cover modules ---------------------------------------------------


def test_graded_to_cover_trivial_group():
    g = trivial_grading(kronecker(QQ), Z1)
    sp = smash_product(g)
    M = kron_module(1, 2)
    N = GradedModule(M, g, {"x": {0: (0,)}, "y": {0: (0,)}})
    CN = graded_to_cover(N, sp)
    assert CN.dims == {sp.obj("x", 0): 1, sp.obj("y", 0): 1}
    assert sorted(CN.action[bid] for bid, (b, _, _) in sp.basis_label.items() if b in "ab") == [((1,),), ((2,),)]
    assert cover_to_graded(CN, sp) == N


def test_graded_to_cover_kronecker_example():
    g = kronecker_grading(kronecker(QQ), Z2)
    sp = smash_product(g)
    M = kron_module(1, 0)
    N = GradedModule(M, g, {"x": {1: (0,)}, "y": {1: (0,)}})
    assert check_graded_module(N) == []
    CN = graded_to_cover(N, sp)
    assert check_module(CN) == []
    assert CN.dims == {sp.obj("x", 1): 1, sp.obj("y", 1): 1, sp.obj("x", 0): 0, sp.obj("y", 0): 0}
    assert cover_to_graded(CN, sp) == N


def test_regular_graded_kronecker():
    g = kronecker_grading(kronecker(QQ), Z2)
    sp = smash_product(g)
    M = regular_module(g.category)
    # the fibre at y is spanned by 1_y, a (degree 1) and b (degree t)
    blocks = {}
    for y in g.category.objects:
        blocks[y] = {}
        for i, b in enumerate(b for b in g.category.basis if g.category.target(b) == y):
            blocks[y][g.degree[b]] = blocks[y].get(g.degree[b], ()) + (i,)
    N = GradedModule(M, g, blocks)
    assert check_graded_module(N) == []
    CN = graded_to_cover(N, sp)
    assert CN.total_dim == 4 and check_module(CN) == []
    assert cover_to_graded(CN, sp) == canonicalize(N)


def test_zero_module_round_trip():
    g = kronecker_grading(kronecker(QQ), Z3)
    sp = smash_product(g)
    Z = zero_module(sp.category)
    BZ = cover_to_graded(Z, sp)
    assert BZ.module == zero_module(g.category)
    assert graded_to_cover(BZ, sp) == Z


def test_canonicalize():
    g = kronecker_grading(kronecker(QQ), Z2)
    C = g.category
    M = module_from_generators(C, {"x": 2, "y": 2}, {"a": ((0, 1), (0, 0)), "b": ((1, 0), (0, 0))})
    N = GradedModule(M, g, {"x": {0: (1,), 1: (0,)}, "y": {0: (0,), 1: (1,)}})
    assert check_graded_module(N) == [] and not is_canonical_layout(N)
    K = canonicalize(N)
    assert is_canonical_layout(K) and check_graded_module(K) == []
    assert K.module.action["a"] == ((1, 0), (0, 0)) and K.module.action["b"] == ((0, 1), (0, 0))


@given(st.integers(0, 10**6), st.sampled_from([1, 2, 3, 4, 5]))
def test_graded_round_trip_kronecker(seed, n):
    rng = random.Random(seed)
    g = kronecker_grading(kronecker(QQ), cyclic_group(n))
    sp = smash_product(g)
    N = random_graded_module(rng, g)
    assert check_graded_module(N) == []
    CN = graded_to_cover(N, sp)
    assert check_module(CN) == []
    assert cover_to_graded(CN, sp) == N
    for x in g.category.objects:
        assert sum(CN.dims[sp.obj(x, s)] for s in g.group.elements) == N.module.dims[x]


@given(st.integers(0, 10**6), st.sampled_from([2, 3, 4]))
def test_cover_round_trip_crowns(seed, n):
    rng = random.Random(seed)
    g = kronecker_grading(kronecker(QQ), cyclic_group(n))
    sp = smash_product(g)
    M = random_cover_module(rng, sp)
    assert check_module(M) == []
    BM = cover_to_graded(M, sp)
    assert check_graded_module(BM) == [] and is_canonical_layout(BM)
    assert graded_to_cover(BM, sp) == M


@given(st.integers(0, 10**6), st.sampled_from(["q", "fp:5"]))
def test_round_trips_random_gradings(seed, spec):
    rng = random.Random(seed)
    _, g = random_grading(rng, make_field(spec), max_order=4)
    sp = smash_product(g)
    N = random_graded_module(rng, g)
    assert check_graded_module(N) == []
    assert cover_to_graded(graded_to_cover(N, sp), sp) == N
    M = random_cover_module(rng, sp)
    assert graded_to_cover(cover_to_graded(M, sp), sp) == M


def test_graded_maps_round_trip():
    rng = random.Random(7)
    g = kronecker_grading(kronecker(QQ), Z3)
    sp = smash_product(g)
    M = random_cover_module(rng, sp)
    psi = random_endo_map(rng, M)
    B = cover_map_to_graded(psi, sp)
    BM = cover_to_graded(M, sp)
    assert check_module_map(B) == []
    back = graded_map_to_cover(B, BM, BM, sp)
    assert back.components == psi.components and back.source == M


# -- G-fold sums --------------------------------------------------------------------


def test_induced_sum_trivial_group():
    g = trivial_grading(kronecker(QQ), Z1)
    sp = smash_product(g)
    N = kron_module(1, 1)
    assert induced_sum_check(sp, N)
    assert cover_to_graded(restrict(sp.covering, N), sp).module == N


def test_induced_sum_kronecker_z2():
    g = kronecker_grading(kronecker(QQ), Z2)
    sp = smash_product(g)
    N = kron_module(1, 1)
    assert induced_sum_check(sp, N)
    BN = cover_to_graded(restrict(sp.covering, N), sp)
    assert BN.module.dims == {"x": 2, "y": 2}
    assert all(len(BN.block(x, s)) == 1 for x in "xy" for s in Z2.elements)


@pytest.mark.parametrize("G", [Z3, klein_four()], ids=["Z3", "V4"])
def test_induced_sum_dims(G):
    g = kronecker_grading(kronecker(QQ), G)
    sp = smash_product(g)
    for seed in range(5):
        N = random_module(random.Random(seed), g.category)
        assert induced_sum_check(sp, N)
        BN = cover_to_graded(restrict(sp.covering, N), sp)
        assert BN.module.dims == {x: G.order * N.dims[x] for x in N.dims}

