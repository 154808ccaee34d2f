"""Group gradings, the smash product category and the two reconstruction isomorphisms."""

from __future__ import annotations

from dataclasses import dataclass

from .actions import (
    GAction,
    OrbitData,
    Quotient,
    is_free,
    orbit_data,
    orbit_object,
    permutation_action,
    quotient_category,
    skeleton_equivalence,
    skew_category,
    verify_skeleton_quotient,
    skeleton_to_quotient,
)
from .errors import InvalidGrading, NotFree
from .groups import Group
from .lincat import (
    Diagnostic,
    LinCat,
    LinFunctor,
    check_functor,
    compose_functors,
    functor_from_basis_images,
    is_isomorphism,
    pair_id,
)


@dataclass
class Grading:
    """A degree for every basis morphism; hom spaces split by degree."""

    category: LinCat
    group: Group
    degree: dict[str, int]

    def component(self, x: str, y: str, s: int) -> list[str]:
        return [b for b in self.category.hom(x, y) if self.degree[b] == s]


def trivial_grading(C: LinCat, G: Group) -> Grading:
    return Grading(C, G, {b: G.identity for b in C.basis})


def check_grading(g: Grading) -> list[Diagnostic]:
    C, G = g.category, g.group
    for b in C.basis:
        d = g.degree.get(b)
        if d is None or not 0 <= d < G.order:
            return [Diagnostic("MissingDegree", f"basis element {b!r} has no valid degree", (b,))]
    for x, b in C.identities.items():
        if g.degree[b] != G.identity:
            return [Diagnostic("IdentityDegree", f"id_{x} = {b} has degree {G.name(g.degree[b])}", (b,))]
    for (gg, f), terms in C.comp_items():
        expected = G.mul(g.degree[gg], g.degree[f])
        for h, _ in terms:
            if g.degree[h] != expected:
                return [Diagnostic(
                    "Multiplicativity",
                    f"{gg} o {f} has a term {h} of degree {G.name(g.degree[h])}, expected {G.name(expected)}",
                    (gg, f, h),
                )]
    return []


@dataclass
class SmashProduct:
    category: LinCat
    action: GAction
    grading: Grading
    object_label: dict[str, tuple[str, int]]  # (x,s) id -> (x, s)
    basis_label: dict[str, tuple[str, int, int]]  # id -> (b, s, t)
    covering: LinFunctor  # B#G -> B, forgetting the group labels

    def obj(self, x: str, s: int) -> str:
        return pair_id(x, self.grading.group.name(s))


def smash_product(g: Grading) -> SmashProduct:
    """B#G: objects (x, s), Hom((x,s),(y,t)) = degree t^-1 s part of Hom(x, y).

    The translation action ``u.(x, s) = (x, us)`` moves morphisms without
    changing them.
    """
    diags = check_grading(g)
    if diags:
        raise InvalidGrading(diags[0].message)
    B, G = g.category, g.group
    name = G.name
    obj = {(x, s): pair_id(x, name(s)) for x in B.objects for s in G.elements}
    objects = [obj[(x, s)] for x in B.objects for s in G.elements]
    object_label = {v: k for k, v in obj.items()}

    homs: dict[tuple[str, str], list[str]] = {}
    basis_label: dict[str, tuple[str, int, int]] = {}
    sid = {}
    for x, y in B.hom_pairs:
        for s in G.elements:
            for t in G.elements:
                d = G.mul(G.inv(t), s)
                ids = []
                for b in B.hom(x, y):
                    if g.degree[b] == d:
                        bid = pair_id(b, name(s), name(t))
                        ids.append(bid)
                        basis_label[bid] = (b, s, t)
                        sid[(b, s, t)] = bid
                if ids:
                    homs[(obj[(x, s)], obj[(y, t)])] = ids
    identities = {obj[(x, s)]: sid[(B.identities[x], s, s)] for x in B.identities for s in G.elements}

    comp = {}
    for (c, b), terms in B.comp_items():
        for s in G.elements:
            # b: (x,s) -> (y,t) forces t = s deg(b)^-1
            t = G.mul(s, G.inv(g.degree[b]))
            u = G.mul(t, G.inv(g.degree[c]))
            comp[(sid[(c, t, u)], sid[(b, s, t)])] = [(sid[(h, s, u)], k) for h, k in terms]
    S = LinCat(B.field, objects, homs, identities, comp)

    object_perm = [{obj[(x, s)]: obj[(x, G.mul(u, s))] for (x, s) in obj} for u in G.elements]
    basis_perm = [
        {bid: sid[(b, G.mul(u, s), G.mul(u, t))] for bid, (b, s, t) in basis_label.items()}
        for u in G.elements
    ]
    action = permutation_action(G, S, object_perm, basis_perm)
    covering = functor_from_basis_images(
        S, B, {o: x for o, (x, _) in object_label.items()}, {bid: [(b, 1)] for bid, (b, _, _) in basis_label.items()}
    )
    return SmashProduct(S, action, g, object_label, basis_label, covering)


def induced_grading(q: Quotient, group: Group) -> Grading:
    """Grade C/G: the basis element ``(s, b)`` has degree ``s``.

    This is the normalisation "move the source onto its representative and
    read off the gap at the target".
    """
    return Grading(q.category, group, {qid: s for qid, (s, _) in q.labels.items()})


def identity_label_reps(sp: SmashProduct) -> OrbitData:
    """Orbit data of B#G whose representatives are the objects (x, 1)."""
    G = sp.grading.group
    reps = [sp.obj(x, G.identity) for x in sp.grading.category.objects]
    return orbit_data(sp.action, reps)


def smash_quotient_iso(sp: SmashProduct, q: Quotient) -> LinFunctor:
    """(B#G)/G -> B, keeping the first component of every label."""
    B = sp.grading.category
    obj_map = {orbit_object(r): sp.object_label[r][0] for r in q.orbit_data.representatives}
    images = {qid: [(sp.basis_label[sb][0], 1)] for qid, (_, sb) in q.labels.items()}
    return functor_from_basis_images(q.category, B, obj_map, images)


def verify_smash_quotient(g: Grading, od: OrbitData | None = None) -> tuple[LinFunctor, bool]:
    sp = smash_product(g)
    free, _ = is_free(sp.action)
    od = od or identity_label_reps(sp)
    q = quotient_category(sp.action, od)
    iso = smash_quotient_iso(sp, q)
    return iso, free and not check_functor(iso) and is_isomorphism(iso)


def reconstruct_cover(a: GAction, od: OrbitData | None = None) -> tuple[LinFunctor, bool]:
    """The functor (C/G)#G -> C, ``(alpha, s) -> s.x_alpha``, and whether it is an isomorphism.

    A basis element ``((u, b), s, t)`` with ``b: u.x_alpha -> x_beta`` goes to
    ``t.b: s.x_alpha -> t.x_beta``.
    """
    free, computed = is_free(a)
    if not free:
        raise NotFree("reconstruction needs a free action")
    q = quotient_category(a, od or computed)
    gr = induced_grading(q, a.group)
    sp = smash_product(gr)
    reps = {orbit_object(r): r for r in q.orbit_data.representatives}
    obj_map = {o: a.act_object(s, reps[alpha]) for o, (alpha, s) in sp.object_label.items()}
    images = {}
    for bid, (qid, _s, t) in sp.basis_label.items():
        _, b = q.labels[qid]
        images[bid] = list(a.act_basis(t, b))
    F = functor_from_basis_images(sp.category, a.category, obj_map, images)
    return F, not check_functor(F) and is_isomorphism(F)


def duality_checks(g: Grading, od: OrbitData | None = None) -> dict[str, bool]:
    """Every step of the chain (B#G)[G] ~ skeleton = (B#G)/G = B."""
    sp = smash_product(g)
    free, computed = is_free(sp.action)
    od = od or computed
    K = skew_category(sp.action)
    se = skeleton_equivalence(sp.action, od, K)
    q = quotient_category(sp.action, od)
    to_b = smash_quotient_iso(sp, q)
    chain = compose_functors(to_b, skeleton_to_quotient(se, q))
    checks = {"translation_free": free}
    checks.update({f"skeleton_{k}": v for k, v in se.checks.items()})
    checks["skeleton_is_quotient"] = verify_skeleton_quotient(se, q)
    checks["quotient_is_base"] = not check_functor(to_b) and is_isomorphism(to_b)
    checks["skeleton_is_base"] = not check_functor(chain) and is_isomorphism(chain)
    return checks


def verify_smash_skew_duality(g: Grading, od: OrbitData | None = None) -> bool:
    """Certify that (B#G)[G] is equivalent to B."""
    return all(duality_checks(g, od).values())
