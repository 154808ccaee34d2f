"""Group actions on linear categories, quotients, skew categories and skeletons."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .errors import NotFree, NotSameOrbit, UnknownObject
from .groups import Group
from .lincat import (
    Diagnostic,
    LinCat,
    LinFunctor,
    Morphism,
    check_equivalence_with_witness,
    check_functor,
    compose,
    compose_functors,
    full_subcategory,
    functor_from_basis_images,
    identity_functor,
    is_isomorphism,
    pair_id,
)
from .linalg import Matrix, is_identity, matmul, zeros


class GAction:
    """A finite group acting on a :class:`LinCat` by linear autofunctors.

    ``object_perm[s][x]`` is ``s.x``; ``hom_maps[(s, x, y)]`` is the matrix
    of ``Hom(x, y) -> Hom(sx, sy)``. Missing matrices for zero hom spaces are
    filled in as empty.
    """

    def __init__(
        self,
        group: Group,
        category: LinCat,
        object_perm: Sequence[Mapping[str, str]],
        hom_maps: Mapping[tuple[int, str, str], Matrix],
    ):
        self.group = group
        self.category = category
        self.object_perm = tuple(dict(p) for p in object_perm)
        self.hom_maps = dict(hom_maps)
        self._act_cache: dict[tuple[int, str], tuple] = {}

    def act_object(self, s: int, x: str) -> str:
        return self.object_perm[s][x]

    def matrix(self, s: int, x: str, y: str) -> Matrix:
        m = self.hom_maps.get((s, x, y))
        if m is None:
            C = self.category
            return zeros(C.field, C.dim(self.act_object(s, x), self.act_object(s, y)), C.dim(x, y))
        return m

    def act_basis(self, s: int, b: str) -> tuple:
        """Sparse image ``((h, c), ...)`` of basis element ``b`` under ``s``."""
        key = (s, b)
        hit = self._act_cache.get(key)
        if hit is None:
            C = self.category
            x, y, j = C.source(b), C.target(b), C.index(b)
            sx, sy = self.act_object(s, x), self.act_object(s, y)
            m = self.matrix(s, x, y)
            target = C.hom(sx, sy)
            hit = tuple((target[i], m[i][j]) for i in range(len(target)) if m[i][j])
            self._act_cache[key] = hit
        return hit

    def act(self, s: int, m: Morphism) -> Morphism:
        C = self.category
        sx, sy = self.act_object(s, m.source), self.act_object(s, m.target)
        out = [C.field.zero] * C.dim(sx, sy)
        hom = C.hom(m.source, m.target)
        for j, c in enumerate(m.coeffs):
            if c:
                for h, d in self.act_basis(s, hom[j]):
                    k = C.index(h)
                    out[k] = out[k] + c * d
        return Morphism(sx, sy, tuple(out))

    def __repr__(self) -> str:
        return f"GAction(order={self.group.order}, category={self.category!r})"


def permutation_action(
    group: Group,
    category: LinCat,
    object_perm: Sequence[Mapping[str, str]],
    basis_perm: Sequence[Mapping[str, str]],
) -> GAction:
    """An action permuting objects and basis morphisms (all matrices 0/1)."""
    C = category
    F = C.field
    hom_maps = {}
    for s in group.elements:
        for x, y in C.hom_pairs:
            sx, sy = object_perm[s][x], object_perm[s][y]
            target = C.hom(sx, sy)
            rows = [[F.zero] * C.dim(x, y) for _ in target]
            for j, b in enumerate(C.hom(x, y)):
                img = basis_perm[s][b]
                if C.has_basis(img) and (C.source(img), C.target(img)) == (sx, sy):
                    rows[C.index(img)][j] = F.one
            hom_maps[(s, x, y)] = tuple(tuple(r) for r in rows)
    return GAction(group, category, object_perm, hom_maps)


def trivial_action(group: Group, category: LinCat) -> GAction:
    ident = {x: x for x in category.objects}
    basis = {b: b for b in category.basis}
    return permutation_action(group, category, [ident] * group.order, [basis] * group.order)


def check_action(a: GAction) -> list[Diagnostic]:
    """Empty iff every group element acts by a functor and the action is a homomorphism."""
    G, C = a.group, a.category
    field = C.field
    objs = set(C.objects)
    if len(a.object_perm) != G.order:
        return [Diagnostic("Shape", f"object_perm has {len(a.object_perm)} entries for a group of order {G.order}")]
    for s in G.elements:
        perm = a.object_perm[s]
        if set(perm) != objs or set(perm.values()) != objs:
            return [Diagnostic("ObjectPerm", f"element {G.name(s)} does not permute the objects", (G.name(s),))]
    for (s, x, y), m in a.hom_maps.items():
        if x not in objs or y not in objs or not 0 <= s < G.order:
            return [Diagnostic("Shape", f"hom map key ({s},{x},{y}) is not valid", (s, x, y))]
        rows, cols = C.dim(a.act_object(s, x), a.act_object(s, y)), C.dim(x, y)
        if len(m) != rows or any(len(r) != cols for r in m):
            return [Diagnostic("Shape", f"hom map of {G.name(s)} on ({x},{y}) should be {rows}x{cols}", (G.name(s), x, y))]

    e = G.identity
    for x in C.objects:
        if a.act_object(e, x) != x:
            return [Diagnostic("UnitAction", f"identity moves object {x!r}", (x,))]
    for x, y in C.hom_pairs:
        if not is_identity(a.matrix(e, x, y)):
            return [Diagnostic("UnitAction", f"identity acts non-trivially on Hom({x},{y})", (x, y))]

    for t in G.elements:
        for s in G.elements:
            ts = G.mul(t, s)
            for x in C.objects:
                if a.act_object(ts, x) != a.act_object(t, a.act_object(s, x)):
                    return [Diagnostic("Homomorphism", f"({G.name(t)}{G.name(s)}).{x} != {G.name(t)}.({G.name(s)}.{x})", (G.name(t), G.name(s), x))]
            for x, y in C.hom_pairs:
                sx, sy = a.act_object(s, x), a.act_object(s, y)
                prod = matmul(field, a.matrix(t, sx, sy), a.matrix(s, x, y), inner=C.dim(sx, sy), cols=C.dim(x, y))
                if prod != a.matrix(ts, x, y):
                    return [Diagnostic("Homomorphism", f"({G.name(t)}{G.name(s)})f != {G.name(t)}({G.name(s)}f) on Hom({x},{y})", (G.name(t), G.name(s), x, y))]

    for s in G.elements:
        for x in C.objects:
            if a.act(s, C.identity(x)) != C.identity(a.act_object(s, x)):
                return [Diagnostic("Functor", f"{G.name(s)} does not preserve id_{x}", (G.name(s), x))]
        for g in C.basis:
            sg = a.act(s, C.basis_morphism(g))
            for f in C.incoming(C.source(g)):
                lhs = a.act(s, compose(C, C.basis_morphism(g), C.basis_morphism(f)))
                rhs = compose(C, sg, a.act(s, C.basis_morphism(f)))
                if lhs != rhs:
                    return [Diagnostic("Functor", f"{G.name(s)}({g} o {f}) != ({G.name(s)}{g})({G.name(s)}{f})", (G.name(s), g, f))]
    return []


@dataclass
class OrbitData:
    orbits: list[tuple[str, ...]]
    representatives: list[str]
    orbit_of: dict[str, int]
    translate_to_rep: dict[str, int]  # x -> s with s.x = representative

    def rep(self, x: str) -> str:
        return self.representatives[self.orbit_of[x]]


def orbit_data(a: GAction, reps: Sequence[str] | None = None) -> OrbitData:
    """Orbits and translations to representatives.

    Representatives default to the lexicographically least object id of each
    orbit. When the action is not free, the translation chosen is the one with
    the smallest group index.
    """
    G, C = a.group, a.category
    orbits: list[tuple[str, ...]] = []
    orbit_of: dict[str, int] = {}
    for x in C.objects:
        if x in orbit_of:
            continue
        members = []
        for s in G.elements:
            y = a.act_object(s, x)
            if y not in members:
                members.append(y)
        ordered = tuple(y for y in C.objects if y in members)
        for y in ordered:
            orbit_of[y] = len(orbits)
        orbits.append(ordered)

    if reps is None:
        representatives = [min(o) for o in orbits]
    else:
        representatives = [None] * len(orbits)  # type: ignore[list-item]
        for r in reps:
            if r not in orbit_of:
                raise UnknownObject(f"representative {r!r} is not an object")
            i = orbit_of[r]
            if representatives[i] is not None:
                raise ValueError(f"two representatives given for the orbit of {r!r}")
            representatives[i] = r
        missing = [orbits[i] for i, r in enumerate(representatives) if r is None]
        if missing:
            raise ValueError(f"no representative given for orbit {missing[0]}")

    translate = {}
    for x in C.objects:
        rep = representatives[orbit_of[x]]
        translate[x] = next(s for s in G.elements if a.act_object(s, x) == rep)
    return OrbitData(orbits, representatives, orbit_of, translate)


def is_free(a: GAction, reps: Sequence[str] | None = None) -> tuple[bool, OrbitData]:
    """Whether no non-identity element fixes an object, plus the orbit data."""
    G = a.group
    free = all(
        a.act_object(s, x) != x for s in G.elements if s != G.identity for x in a.category.objects
    )
    return free, orbit_data(a, reps)


def _twisted_structure(a: GAction, objects: Sequence[str]):
    """Homs and composition of the skew category restricted to ``objects``.

    Basis of Hom(x, y) is ``(s, b)`` for ``b`` a basis element of Hom(sx, y);
    ``(t, g) o (s, f) = (ts, g o tf)``.
    """
    G, C = a.group, a.category
    homs: dict[tuple[str, str], list[str]] = {}
    labels: dict[str, tuple[int, str]] = {}
    for x in objects:
        for y in objects:
            ids = []
            for s in G.elements:
                for b in C.hom(a.act_object(s, x), y):
                    bid = pair_id(G.name(s), b)
                    ids.append(bid)
                    labels[bid] = (s, b)
            if ids:
                homs[(x, y)] = ids
    identities = {x: pair_id(G.name(G.identity), C.identities[x]) for x in objects if x in C.identities}

    comp = {}
    for x in objects:
        for y in objects:
            for fid in homs.get((x, y), ()):
                s, f = labels[fid]
                for z in objects:
                    for gid in homs.get((y, z), ()):
                        t, g = labels[gid]
                        ts = G.mul(t, s)
                        acc: dict[str, object] = {}
                        for tf, c in a.act_basis(t, f):
                            for h, d in C.basis_comp(g, tf):
                                key = pair_id(G.name(ts), h)
                                acc[key] = acc.get(key, 0) + c * d
                        terms = [(h, c) for h, c in acc.items() if c]
                        if terms:
                            comp[(gid, fid)] = terms
    return homs, identities, comp, labels


def skew_category(a: GAction) -> LinCat:
    """The skew category C[G]; the action need not be free."""
    homs, identities, comp, _ = _twisted_structure(a, a.category.objects)
    return LinCat(a.category.field, a.category.objects, homs, identities, comp)


def skew_labels(a: GAction) -> dict[str, tuple[int, str]]:
    """Map skew basis ids to their (group element, underlying basis id)."""
    return _twisted_structure(a, a.category.objects)[3]


def orbit_object(rep: str) -> str:
    return f"[{rep}]"


@dataclass
class Quotient:
    category: LinCat
    projection: LinFunctor
    orbit_data: OrbitData
    labels: dict[str, tuple[int, str]]  # quotient basis id -> (s, b)

    def object_of(self, x: str) -> str:
        return orbit_object(self.orbit_data.rep(x))


def quotient_category(a: GAction, od: OrbitData | None = None) -> Quotient:
    """The orbit category C/G of a free action, with its Galois covering functor.

    Hom(alpha, beta) has the basis ``(s, b)`` with ``b`` a basis element of
    Hom(s.x_alpha, x_beta), x_alpha and x_beta being the representatives.
    """
    free, computed = is_free(a)
    if not free:
        raise NotFree("the quotient category needs a free action on objects")
    od = od or computed
    G, C = a.group, a.category
    reps = od.representatives
    homs, identities, comp, labels = _twisted_structure(a, reps)
    rename = {r: orbit_object(r) for r in reps}
    Q = LinCat(
        C.field,
        [rename[r] for r in reps],
        {(rename[x], rename[y]): ids for (x, y), ids in homs.items()},
        {rename[x]: b for x, b in identities.items()},
        comp,
    )

    images = {}
    for f in C.basis:
        x, y = C.source(f), C.target(f)
        u = od.translate_to_rep[y]
        label = G.mul(u, G.inv(od.translate_to_rep[x]))
        images[f] = [(pair_id(G.name(label), h), c) for h, c in a.act_basis(u, f)]
    obj_map = {x: rename[od.rep(x)] for x in C.objects}
    projection = functor_from_basis_images(C, Q, obj_map, images)
    return Quotient(Q, projection, od, labels)


def change_representatives_iso(a: GAction, q1: Quotient, q2: Quotient) -> LinFunctor:
    """Explicit isomorphism between quotients built on different representatives.

    With ``x'_alpha = c_alpha x_alpha`` the basis element ``(s, b)`` goes to
    ``(c_beta s c_alpha^-1, c_beta b)``.
    """
    G = a.group
    od1, od2 = q1.orbit_data, q2.orbit_data
    shift = {}
    for i, r1 in enumerate(od1.representatives):
        r2 = od2.representatives[i]
        shift[i] = next(c for c in G.elements if a.act_object(c, r1) == r2)
    images = {}
    C1 = q1.category
    for qid in C1.basis:
        s, b = q1.labels[qid]
        alpha = od1.orbit_of[a.category.source(b)]
        beta = od1.orbit_of[a.category.target(b)]
        cb = shift[beta]
        label = G.prod(cb, s, G.inv(shift[alpha]))
        images[qid] = [(pair_id(G.name(label), h), c) for h, c in a.act_basis(cb, b)]
    obj_map = {orbit_object(r): orbit_object(od2.representatives[i]) for i, r in enumerate(od1.representatives)}
    return functor_from_basis_images(C1, q2.category, obj_map, images)


def orbit_iso_witness(a: GAction, skew: LinCat, x: str, y: str) -> tuple[Morphism, Morphism]:
    """Mutually inverse ``u = (s, id_y): x -> y`` and ``v = (s^-1, id_x): y -> x`` in C[G]."""
    G, C = a.group, a.category
    s = next((s for s in G.elements if a.act_object(s, x) == y), None)
    if s is None:
        raise NotSameOrbit(f"{x!r} and {y!r} lie in different orbits")
    u = skew.morphism(x, y, [(pair_id(G.name(s), C.identities[y]), 1)])
    v = skew.morphism(y, x, [(pair_id(G.name(G.inv(s)), C.identities[x]), 1)])
    return u, v


@dataclass
class SkeletonEquivalence:
    """C[G] and its full subcategory on the orbit representatives.

    ``functor`` sends x to its representative by conjugating with the orbit
    witnesses; ``inclusion`` is the embedding. Both come with explicit
    essential-surjectivity witnesses.
    """

    action: GAction
    orbit_data: OrbitData
    skew: LinCat
    skeleton: LinCat
    inclusion: LinFunctor
    functor: LinFunctor
    functor_witnesses: dict[str, tuple[str, Morphism, Morphism]]
    inclusion_witnesses: dict[str, tuple[str, Morphism, Morphism]]
    checks: dict[str, bool] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def skeleton_equivalence(a: GAction, od: OrbitData | None = None, skew: LinCat | None = None) -> SkeletonEquivalence:
    od = od or orbit_data(a)
    K = skew if skew is not None else skew_category(a)
    S, E = full_subcategory(K, od.representatives)

    to_rep: dict[str, tuple[Morphism, Morphism]] = {}
    for x in K.objects:
        to_rep[x] = orbit_iso_witness(a, K, x, od.rep(x))  # u: x -> rep, v: rep -> x

    obj_map = {x: od.rep(x) for x in K.objects}
    images = {}
    for f in K.basis:
        x, y = K.source(f), K.target(f)
        conj = compose(K, to_rep[y][0], compose(K, K.basis_morphism(f), to_rep[x][1]))
        images[f] = list(zip(S.hom(conj.source, conj.target), conj.coeffs))
    F = functor_from_basis_images(K, S, obj_map, images)

    f_wit = {z: (z, S.identity(z), S.identity(z)) for z in S.objects}
    e_wit = {z: (od.rep(z), to_rep[z][1], to_rep[z][0]) for z in K.objects}
    se = SkeletonEquivalence(a, od, K, S, E, F, f_wit, e_wit)

    se.checks["functor_is_functor"] = not check_functor(F)
    se.checks["inclusion_is_functor"] = not check_functor(E)
    se.checks["functor_equivalence"] = check_equivalence_with_witness(F, f_wit)
    se.checks["inclusion_equivalence"] = check_equivalence_with_witness(E, e_wit)
    FE = compose_functors(F, E)
    se.checks["functor_after_inclusion_is_identity"] = (
        FE.object_map == {x: x for x in S.objects} and FE.hom_maps == identity_functor(S).hom_maps
    )
    return se


def skeleton_to_quotient(se: SkeletonEquivalence, q: Quotient) -> LinFunctor:
    """The basis-by-basis identification of the skeleton with C/G."""
    S = se.skeleton
    obj_map = {r: orbit_object(r) for r in S.objects}
    return functor_from_basis_images(S, q.category, obj_map, {b: [(b, 1)] for b in S.basis})


def verify_skeleton_quotient(se: SkeletonEquivalence, q: Quotient) -> bool:
    iso = skeleton_to_quotient(se, q)
    return not check_functor(iso) and is_isomorphism(iso)
