"""Finite-dimensional algebras and the coherence isomorphisms with categories.

Covers a(C), skew group algebras A[G], smash algebras A#k^G, matrix
algebras M_n(A), and the explicit maps identifying a(C[G]) with a(C)[G],
a(C_A#G) with A#k^G, and a((C_A#G)[G]) with M_|G|(A).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .actions import GAction, orbit_data, skeleton_equivalence, skew_category, skew_labels
from .errors import InhomogeneousBasis, MalformedCategory, NotAutomorphism
from .gradings import Grading, duality_checks, smash_product
from .groups import Group
from .lincat import Diagnostic, LinCat, pair_id
from .linalg import Matrix, identity, inverse, is_invertible, is_permutation_matrix, matmul, matvec
from .scalars import Field, Scalar


class Algebra:
    """An associative algebra with a chosen basis and sparse structure constants.

    ``mul[(a, b)] = ((c, k), ...)`` means ``a * b = sum k * c``.
    """

    def __init__(
        self,
        field: Field,
        basis: Sequence[str],
        mul: Mapping[tuple[str, str], Iterable[tuple[str, Scalar]]],
        unit: Mapping[str, Scalar],
    ):
        self.field = field
        self.basis = tuple(basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("duplicate algebra basis ids")
        self._pos = {b: i for i, b in enumerate(self.basis)}
        self._mul: dict[tuple[int, int], tuple[tuple[int, Scalar], ...]] = {}
        for (a, b), terms in mul.items():
            acc: dict[int, Scalar] = {}
            for c, k in terms:
                acc[self._pos[c]] = acc.get(self._pos[c], field.zero) + field(k)
            clean = tuple((c, k) for c, k in acc.items() if k)
            if clean:
                self._mul[(self._pos[a], self._pos[b])] = clean
        u = [field.zero] * len(self.basis)
        for b, c in unit.items():
            u[self._pos[b]] = field(c)
        self.unit = tuple(u)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, b: str) -> int:
        return self._pos[b]

    def basis_product(self, i: int, j: int) -> tuple[tuple[int, Scalar], ...]:
        return self._mul.get((i, j), ())

    def mul_items(self):
        return self._mul.items()

    def vector(self, terms: Mapping[str, Scalar] | Iterable[tuple[str, Scalar]]) -> tuple:
        items = terms.items() if isinstance(terms, Mapping) else terms
        v = [self.field.zero] * self.dim
        for b, c in items:
            v[self._pos[b]] = v[self._pos[b]] + self.field(c)
        return tuple(v)

    def e(self, b: str) -> tuple:
        return self.vector({b: 1})

    def product(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple:
        out = [self.field.zero] * self.dim
        nz_v = [(j, y) for j, y in enumerate(v) if y]
        for i, x in enumerate(u):
            if not x:
                continue
            for j, y in nz_v:
                for k, c in self._mul.get((i, j), ()):
                    out[k] = out[k] + x * y * c
        return tuple(out)

    def add(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple:
        return tuple(a + b for a, b in zip(u, v))

    def zero(self) -> tuple:
        return tuple(self.field.zero for _ in self.basis)

    def __repr__(self) -> str:
        return f"Algebra(dim={self.dim}, field={self.field!r})"


def check_algebra(A: Algebra) -> list[Diagnostic]:
    """Associativity on all basis triples and two-sidedness of the unit."""
    n = A.dim
    for i in range(n):
        ei = A.e(A.basis[i])
        if A.product(A.unit, ei) != ei or A.product(ei, A.unit) != ei:
            return [Diagnostic("Unit", f"unit fails on {A.basis[i]}", (A.basis[i],))]
    # a triple can only fail when one of the two inner products is non-zero
    nonzero = [(i, j) for (i, j), _ in A.mul_items()]
    triples = {(i, j, k) for i, j in nonzero for k in range(n)}
    triples |= {(i, j, k) for j, k in nonzero for i in range(n)}
    for i, j, k in sorted(triples):
        lhs: dict[int, Scalar] = {}
        for m, c in A.basis_product(i, j):
            _accumulate(lhs, A.basis_product(m, k), c)
        rhs: dict[int, Scalar] = {}
        for m, c in A.basis_product(j, k):
            _accumulate(rhs, A.basis_product(i, m), c)
        if lhs != rhs:
            t = (A.basis[i], A.basis[j], A.basis[k])
            return [Diagnostic("Associativity", f"({t[0]}{t[1]}){t[2]} != {t[0]}({t[1]}{t[2]})", t)]
    return []


@dataclass
class AlgebraMap:
    domain: Algebra
    codomain: Algebra
    matrix: Matrix  # codomain.dim x domain.dim

    def __call__(self, v: Sequence[Scalar]) -> tuple:
        return matvec(self.domain.field, self.matrix, v)

    def on_basis(self, b: str) -> tuple:
        return self(self.domain.e(b))


def map_from_basis_images(A: Algebra, B: Algebra, images: Mapping[str, Iterable[tuple[str, Scalar]]]) -> AlgebraMap:
    cols = [B.vector(images.get(b, ())) for b in A.basis]
    rows = tuple(tuple(col[i] for col in cols) for i in range(B.dim))
    return AlgebraMap(A, B, rows)


def _sparse_columns(m: Matrix, n: int) -> list[dict[int, Scalar]]:
    cols: list[dict[int, Scalar]] = [{} for _ in range(n)]
    for i, row in enumerate(m):
        for j, c in enumerate(row):
            if c:
                cols[j][i] = c
    return cols


def _accumulate(acc: dict[int, Scalar], terms, scale: Scalar) -> None:
    for k, c in terms:
        v = acc.get(k, 0) + scale * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def check_algebra_map(phi: AlgebraMap, unital: bool = True) -> list[Diagnostic]:
    """Multiplicativity on all basis pairs (and unitality), with sparse images."""
    A, B = phi.domain, phi.codomain
    cols = _sparse_columns(phi.matrix, A.dim)
    for i in range(A.dim):
        for j in range(A.dim):
            lhs: dict[int, Scalar] = {}
            for k, c in A.basis_product(i, j):
                _accumulate(lhs, cols[k].items(), c)
            rhs: dict[int, Scalar] = {}
            for p, a in cols[i].items():
                for q, b in cols[j].items():
                    _accumulate(rhs, B.basis_product(p, q), a * b)
            if lhs != rhs:
                return [Diagnostic("Multiplicative", f"phi({A.basis[i]}{A.basis[j]}) != phi({A.basis[i]})phi({A.basis[j]})", (A.basis[i], A.basis[j]))]
    if unital and phi(A.unit) != B.unit:
        return [Diagnostic("Unital", "phi(1) != 1")]
    return []


def is_bijective(phi: AlgebraMap) -> bool:
    return phi.domain.dim == phi.codomain.dim and is_invertible(phi.domain.field, phi.matrix, phi.domain.dim)


def is_basis_bijection(phi: AlgebraMap) -> bool:
    """Every basis element goes to a distinct basis element with coefficient 1."""
    return phi.domain.dim == phi.codomain.dim and is_permutation_matrix(phi.matrix)


def verify_isomorphism(phi: AlgebraMap, unital: bool = True) -> bool:
    return is_bijective(phi) and not check_algebra_map(phi, unital)


# -- algebras of categories ---------------------------------------------------


def algebra_of_category(C: LinCat) -> Algebra:
    """a(C): all hom spaces, product = composition where defined, unit = sum of identities."""
    basis = C.basis
    mul = {(g, f): terms for (g, f), terms in C.comp_items()}
    return Algebra(C.field, basis, mul, {C.identities[x]: 1 for x in C.objects})


def category_of_algebra(A: Algebra, obj: str = "*") -> LinCat:
    """The one-object category C_A; the unit must be a basis element."""
    unit_ids = [A.basis[i] for i, c in enumerate(A.unit) if c]
    if len(unit_ids) != 1 or A.unit[A.index(unit_ids[0])] != 1:
        raise MalformedCategory("the unit of A is not a basis element; use rebase_unit first")
    mul = {(A.basis[i], A.basis[j]): [(A.basis[k], c) for k, c in terms] for (i, j), terms in A.mul_items()}
    return LinCat(A.field, [obj], {(obj, obj): A.basis}, {obj: unit_ids[0]}, mul)


def rebase_unit(A: Algebra, degrees: Mapping[str, int] | None = None, unit_name: str = "1"):
    """Change basis so that the unit becomes a basis element.

    The first basis element in the support of the unit is replaced by the
    unit. Returns ``(A', degrees')``; the replaced element must have the
    identity degree for the new basis to stay homogeneous.
    """
    support = [i for i, c in enumerate(A.unit) if c]
    if len(support) == 1 and A.unit[support[0]] == 1:
        return A, dict(degrees) if degrees is not None else None
    F = A.field
    p = support[0]
    n = A.dim
    # columns of P are the new basis vectors in old coordinates
    P = [list(row) for row in identity(F, n)]
    for i in range(n):
        P[i][p] = A.unit[i]
    P = tuple(tuple(r) for r in P)
    Pinv = inverse(F, P)
    new_ids = list(A.basis)
    while unit_name in new_ids:
        unit_name += "'"
    new_ids[p] = unit_name
    cols = [tuple(P[i][j] for i in range(n)) for j in range(n)]
    mul = {}
    for i in range(n):
        for j in range(n):
            prod = matvec(F, Pinv, A.product(cols[i], cols[j]))
            terms = [(new_ids[k], c) for k, c in enumerate(prod) if c]
            if terms:
                mul[(new_ids[i], new_ids[j])] = terms
    B = Algebra(F, new_ids, mul, {unit_name: 1})
    new_deg = None
    if degrees is not None:
        new_deg = {new_ids[i]: degrees[A.basis[i]] for i in range(n)}
    return B, new_deg


# -- skew group algebras -------------------------------------------------------


def check_automorphisms(A: Algebra, G: Group, mats: Sequence[Matrix]) -> list[Diagnostic]:
    F = A.field
    for s in G.elements:
        phi = AlgebraMap(A, A, mats[s])
        if not is_bijective(phi):
            return [Diagnostic("NotBijective", f"{G.name(s)} is not invertible", (G.name(s),))]
        d = check_algebra_map(phi, unital=True)
        if d:
            return [Diagnostic("NotAutomorphism", f"{G.name(s)}: {d[0].message}", (G.name(s),))]
    for t in G.elements:
        for s in G.elements:
            if matmul(F, mats[t], mats[s]) != mats[G.mul(t, s)]:
                return [Diagnostic("NotAction", f"{G.name(t)}{G.name(s)} acts differently from {G.name(t)} after {G.name(s)}", (G.name(t), G.name(s)))]
    if mats[G.identity] != identity(F, A.dim):
        return [Diagnostic("NotAction", "the identity acts non-trivially")]
    return []


def induced_algebra_action(a: GAction) -> list[Matrix]:
    """G acting on a(C) through the action on C."""
    C = a.category
    A = algebra_of_category(C)
    mats = []
    for s in a.group.elements:
        phi = map_from_basis_images(A, A, {b: a.act_basis(s, b) for b in C.basis})
        mats.append(phi.matrix)
    return mats


def skew_group_algebra(A: Algebra, G: Group, mats: Sequence[Matrix]) -> Algebra:
    """A[G]: basis ``(a, s)``, product ``(b, t)(a, s) = (b t(a), ts)``."""
    diags = check_automorphisms(A, G, mats)
    if diags:
        raise NotAutomorphism(diags[0].message)
    ids = {(i, s): pair_id(A.basis[i], G.name(s)) for i in range(A.dim) for s in G.elements}
    basis = [ids[(i, s)] for i in range(A.dim) for s in G.elements]
    mul = {}
    for j in range(A.dim):
        for t in G.elements:
            for i in range(A.dim):
                ta = tuple(mats[t][k][i] for k in range(A.dim))
                prod = A.product(A.e(A.basis[j]), ta)
                if not any(prod):
                    continue
                for s in G.elements:
                    ts = G.mul(t, s)
                    mul[(ids[(j, t)], ids[(i, s)])] = [(ids[(k, ts)], c) for k, c in enumerate(prod) if c]
    unit = {ids[(i, G.identity)]: c for i, c in enumerate(A.unit) if c}
    return Algebra(A.field, basis, mul, unit)


def coherence_skew(a: GAction) -> tuple[AlgebraMap, bool]:
    """psi: a(C[G]) -> a(C)[G], ``(s, f) -> f (x) s``."""
    G = a.group
    K = skew_category(a)
    aK = algebra_of_category(K)
    AG = skew_group_algebra(algebra_of_category(a.category), G, induced_algebra_action(a))
    labels = skew_labels(a)
    psi = map_from_basis_images(aK, AG, {sid: [(pair_id(b, G.name(s)), 1)] for sid, (s, b) in labels.items()})
    return psi, verify_isomorphism(psi)


# -- smash algebras ------------------------------------------------------------


def delta_id(G: Group, u: int) -> str:
    return f"d[{G.name(u)}]"


def check_homogeneous(A: Algebra, degrees: Mapping[str, int], G: Group) -> list[Diagnostic]:
    for b in A.basis:
        if b not in degrees:
            return [Diagnostic("MissingDegree", f"{b!r} has no degree", (b,))]
    for i, c in enumerate(A.unit):
        if c and degrees[A.basis[i]] != G.identity:
            return [Diagnostic("UnitDegree", f"the unit has a component {A.basis[i]} outside degree 1", (A.basis[i],))]
    for (i, j), terms in A.mul_items():
        d = G.mul(degrees[A.basis[i]], degrees[A.basis[j]])
        for k, _ in terms:
            if degrees[A.basis[k]] != d:
                return [Diagnostic("Multiplicativity", f"{A.basis[i]}{A.basis[j]} has a term {A.basis[k]} of the wrong degree", (A.basis[i], A.basis[j], A.basis[k]))]
    return []


def smash_algebra(A: Algebra, degrees: Mapping[str, int], G: Group) -> Algebra:
    """A#k^G with basis ``f delta_u`` and ``delta_v f = f delta_{s^-1 v}`` for ``f`` in A_s.

    Concretely ``(g delta_v)(f delta_u) = gf delta_u`` when ``v = deg(f) u`` and 0
    otherwise; the unit is ``sum_u 1 delta_u``.
    """
    diags = check_homogeneous(A, degrees, G)
    if diags:
        raise InhomogeneousBasis(diags[0].message)
    ids = {(i, u): pair_id(A.basis[i], delta_id(G, u)) for i in range(A.dim) for u in G.elements}
    basis = [ids[(i, u)] for i in range(A.dim) for u in G.elements]
    mul = {}
    for (j, i), terms in A.mul_items():
        s = degrees[A.basis[i]]
        for u in G.elements:
            v = G.mul(s, u)
            mul[(ids[(j, v)], ids[(i, u)])] = [(ids[(k, u)], c) for k, c in terms]
    unit = {ids[(i, u)]: c for i, c in enumerate(A.unit) if c for u in G.elements}
    return Algebra(A.field, basis, mul, unit)


def check_twist_identities(S: Algebra, A: Algebra, degrees: Mapping[str, int], G: Group) -> list[Diagnostic]:
    """Re-verify the three twisting identities inside the smash algebra ``S``.

    1. ``(d_u d_t) f = d_u (d_t f)``, equal to ``f d_{s^-1 t}`` when u = t and 0 otherwise;
    2. ``d_u (g f) = (d_u g) f = (g f) d_{(ts)^-1 u}`` for ``g`` in A_t, ``f`` in A_s;
    3. ``1 f = f 1 = sum_u f d_{s^-1 u}``.
    """

    def emb(a_vec, u=None):
        # a (x) delta_u, or a (x) 1 when u is None
        terms = {}
        us = G.elements if u is None else [u]
        for i, c in enumerate(a_vec):
            if c:
                for w in us:
                    terms[pair_id(A.basis[i], delta_id(G, w))] = c
        return S.vector(terms)

    delta = {u: emb(A.unit, u) for u in G.elements}
    for f in A.basis:
        s = degrees[f]
        fv = emb(A.e(f))
        for u in G.elements:
            for t in G.elements:
                lhs = S.product(S.product(delta[u], delta[t]), fv)
                mid = S.product(delta[u], S.product(delta[t], fv))
                expected = emb(A.e(f), G.mul(G.inv(s), t)) if u == t else S.zero()
                if not (lhs == mid == expected):
                    return [Diagnostic("TwistIdempotents", f"(d_{G.name(u)} d_{G.name(t)}) {f} fails", (G.name(u), G.name(t), f))]
        for g in A.basis:
            t = degrees[g]
            gf = A.product(A.e(g), A.e(f))
            gv = emb(A.e(g))
            for u in G.elements:
                lhs = S.product(delta[u], emb(gf))
                mid = S.product(S.product(delta[u], gv), fv)
                expected = emb(gf, G.mul(G.inv(G.mul(t, s)), u))
                if not (lhs == mid == expected):
                    return [Diagnostic("TwistProducts", f"d_{G.name(u)} ({g} {f}) fails", (G.name(u), g, f))]
        total = S.zero()
        for u in G.elements:
            total = S.add(total, emb(A.e(f), G.mul(G.inv(s), u)))
        if not (S.product(S.unit, fv) == S.product(fv, S.unit) == total):
            return [Diagnostic("TwistUnit", f"1 {f} != {f} 1", (f,))]
    return []


def graded_category_of_algebra(A: Algebra, degrees: Mapping[str, int], G: Group, obj: str = "*") -> Grading:
    C = category_of_algebra(A, obj)
    return Grading(C, G, dict(degrees))


def coherence_smash(A: Algebra, degrees: Mapping[str, int], G: Group) -> tuple[AlgebraMap, bool]:
    """phi: a(C_A#G) -> A#k^G sending the elementary matrix at (t, s) with entry f to ``f delta_{s^-1}``.

    ``A`` is first rebased so that its unit is a basis element.
    """
    A, degrees = rebase_unit(A, degrees)
    sp = smash_product(graded_category_of_algebra(A, degrees, G))
    aS = algebra_of_category(sp.category)
    SA = smash_algebra(A, degrees, G)
    images = {
        bid: [(pair_id(b, delta_id(G, G.inv(s))), 1)] for bid, (b, s, _t) in sp.basis_label.items()
    }
    phi = map_from_basis_images(aS, SA, images)
    return phi, verify_isomorphism(phi)


# -- matrix algebras and duality -------------------------------------------------


def matrix_unit_id(i: int, j: int, a: str) -> str:
    return pair_id(str(i), str(j), a)


def matrix_algebra(A: Algebra, n: int) -> Algebra:
    """M_n(A) with basis ``E_ij a``."""
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    basis = [matrix_unit_id(i, j, a) for i in range(n) for j in range(n) for a in A.basis]
    mul = {}
    for (p, q), terms in A.mul_items():
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    mul[(matrix_unit_id(i, j, A.basis[p]), matrix_unit_id(j, l, A.basis[q]))] = [
                        (matrix_unit_id(i, l, A.basis[k]), c) for k, c in terms
                    ]
    unit = {matrix_unit_id(i, i, A.basis[k]): c for i in range(n) for k, c in enumerate(A.unit) if c}
    return Algebra(A.field, basis, mul, unit)


def duality_matrix_report(A: Algebra, degrees: Mapping[str, int], G: Group) -> dict[str, bool]:
    """Check a((C_A#G)[G]) = M_|G|(A) through an explicit isomorphism.

    The isomorphism sends ``f: (*,s) -> (*,t)`` to ``E_{t,s}`` times the image in
    A of the conjugate ``u_t f v_s`` at the representative, the conjugating
    isomorphisms being the orbit witnesses of the skeleton equivalence.
    """
    Ar, dr = rebase_unit(A, degrees)
    gr = graded_category_of_algebra(Ar, dr, G)
    sp = smash_product(gr)
    T = sp.action
    K = skew_category(T)
    aK = algebra_of_category(K)
    od = orbit_data(T)
    se = skeleton_equivalence(T, od, K)
    (r,) = se.skeleton.objects
    M = matrix_algebra(Ar, G.order)
    report = {
        "dimension": aK.dim == G.order ** 2 * A.dim,
        "skeleton_equivalence": se.ok,
    }
    report.update({f"chain_{k}": v for k, v in duality_checks(gr, od).items()})

    # End(r) in the skeleton is spanned by (u, (f, u, 1)) with deg f = u; read off f.
    end_basis = se.skeleton.hom(r, r)
    labels = skew_labels(T)
    theta_images = {eid: sp.basis_label[labels[eid][1]][0] for eid in end_basis}
    theta_ok = sorted(theta_images.values()) == sorted(Ar.basis) and len(end_basis) == Ar.dim
    end_alg = algebra_of_category(se.skeleton)
    theta = map_from_basis_images(end_alg, Ar, {e: [(b, 1)] for e, b in theta_images.items()})
    report["skeleton_end_structure_constants"] = theta_ok and is_basis_bijection(theta) and not check_algebra_map(theta)

    pos = {o: i for i, o in enumerate(K.objects)}
    images = {}
    for b in K.basis:
        x, y = K.source(b), K.target(b)
        conj = se.functor.on_basis(b)
        terms = []
        for eid, c in zip(se.skeleton.hom(r, r), conj.coeffs):
            if c:
                terms.append((matrix_unit_id(pos[y], pos[x], theta_images[eid]), c))
        images[b] = terms
    Phi = map_from_basis_images(aK, M, images)
    report["matrix_iso_bijective"] = is_bijective(Phi)
    report["matrix_iso_multiplicative"] = not check_algebra_map(Phi, unital=False)
    report["matrix_iso_unital"] = Phi(aK.unit) == M.unit
    return report


def duality_matrix_check(A: Algebra, degrees: Mapping[str, int], G: Group) -> bool:
    return all(duality_matrix_report(A, degrees, G).values())


# -- small algebras used throughout -------------------------------------------------


def ground_field_algebra(field: Field) -> Algebra:
    return Algebra(field, ["1"], {("1", "1"): [("1", 1)]}, {"1": 1})


def dual_numbers(field: Field) -> Algebra:
    """k[e]/(e^2) with basis 1, e."""
    return Algebra(
        field,
        ["1", "e"],
        {("1", "1"): [("1", 1)], ("1", "e"): [("e", 1)], ("e", "1"): [("e", 1)]},
        {"1": 1},
    )


def group_algebra(field: Field, G: Group) -> tuple[Algebra, dict[str, int]]:
    """kG with its natural G-grading (deg g = g)."""
    names = list(G.names)
    mul = {(names[a], names[b]): [(names[G.mul(a, b)], 1)] for a in G.elements for b in G.elements}
    A = Algebra(field, names, mul, {names[G.identity]: 1})
    return A, {names[g]: g for g in G.elements}


def truncated_polynomials(field: Field, n: int) -> Algebra:
    """k[a]/(a^n) with basis 1, a, a^2, ..."""
    ids = ["1"] + ["a" if i == 1 else f"a^{i}" for i in range(1, n)]
    mul = {}
    for i in range(n):
        for j in range(n):
            if i + j < n:
                mul[(ids[i], ids[j])] = [(ids[i + j], 1)]
    return Algebra(field, ids, mul, {"1": 1})
