"""Named example categories, actions and gradings."""

from __future__ import annotations

from typing import Mapping, Sequence

from .actions import GAction, permutation_action
from .gradings import Grading
from .groups import Group, cyclic_group
from .lincat import LinCat, Quiver, pair_id, path_category, path_id, quiver_paths
from .scalars import Field


def kronecker_quiver() -> Quiver:
    return Quiver.make(["x", "y"], [("a", "x", "y"), ("b", "x", "y")])


def kronecker(field: Field) -> LinCat:
    """Two objects x, y; Hom(x, y) = ka + kb; Hom(y, x) = 0."""
    return path_category(kronecker_quiver(), field)


def kronecker_grading(C: LinCat, G: Group, generator: int | None = None) -> Grading:
    """deg a = 1 and deg b = t, where ``t`` is the generator (index 1 by default)."""
    t = generator if generator is not None else (1 if G.order > 1 else G.identity)
    deg = {b: G.identity for b in C.basis}
    deg["b"] = t
    return Grading(C, G, deg)


def quiver_action(
    q: Quiver,
    field: Field,
    group: Group,
    vertex_perm: Sequence[Mapping[str, str]],
    arrow_perm: Sequence[Mapping[str, str]],
) -> GAction:
    """The action on the path category induced by quiver automorphisms."""
    C = path_category(q, field)
    paths = quiver_paths(q)
    basis_perm = []
    for s in group.elements:
        perm = {f"1_{v}": f"1_{vertex_perm[s][v]}" for v in q.vertices}
        for ps in paths.values():
            for p in ps:
                perm[path_id(p)] = path_id([arrow_perm[s][a] for a in p])
        basis_perm.append(perm)
    return permutation_action(group, C, vertex_perm, basis_perm)


def crown_quiver(n: int) -> Quiver:
    """Vertices x_i, y_i (i mod n); arrows a_i: x_i -> y_i and b_i: x_i -> y_{i-1}."""
    xs = [f"x{i}" for i in range(n)]
    ys = [f"y{i}" for i in range(n)]
    arrows = [(f"a{i}", f"x{i}", f"y{i}") for i in range(n)]
    arrows += [(f"b{i}", f"x{i}", f"y{(i - 1) % n}") for i in range(n)]
    return Quiver.make(xs + ys, arrows)


def crown_action(n: int, field: Field, group: Group | None = None, step: int = 1) -> GAction:
    """Z/m acting on the 2n-vertex crown by rotating indices ``step`` places per generator.

    With the defaults the full rotation group Z/n acts. ``step`` and a smaller
    ``group`` give the action of a proper subgroup.
    """
    group = group or cyclic_group(n)
    q = crown_quiver(n)
    vperm, aperm = [], []
    for s in group.elements:
        k = (s * step) % n
        vperm.append({**{f"x{i}": f"x{(i + k) % n}" for i in range(n)}, **{f"y{i}": f"y{(i + k) % n}" for i in range(n)}})
        aperm.append({**{f"a{i}": f"a{(i + k) % n}" for i in range(n)}, **{f"b{i}": f"b{(i + k) % n}" for i in range(n)}})
    return quiver_action(q, field, group, vperm, aperm)


def voltage_cover(q: Quiver, field: Field, group: Group, voltage: Mapping[str, int]) -> GAction:
    """Derived covering quiver with G acting by left translation of the sheets.

    Vertices (v, s); the arrow a: v -> w lifts to (a, s): (v, s) -> (w, s * voltage[a]).
    """
    G = group
    vert = lambda v, s: pair_id(v, G.name(s))  # noqa: E731
    arr = lambda a, s: pair_id(a, G.name(s))  # noqa: E731
    vertices = [vert(v, s) for v in q.vertices for s in G.elements]
    arrows = []
    for a, v, w in q.arrows:
        for s in G.elements:
            arrows.append((arr(a, s), vert(v, s), vert(w, G.mul(s, voltage[a]))))
    cover = Quiver.make(vertices, arrows)
    vperm = [{vert(v, s): vert(v, G.mul(u, s)) for v in q.vertices for s in G.elements} for u in G.elements]
    aperm = [{arr(a, s): arr(a, G.mul(u, s)) for a, _, _ in q.arrows for s in G.elements} for u in G.elements]
    return quiver_action(cover, field, G, vperm, aperm)


def disjoint_copies_action(C: LinCat, group: Group) -> GAction:
    """|G| disjoint copies of C permuted by left translation."""
    G = group
    obj = lambda x, s: pair_id(x, G.name(s))  # noqa: E731
    bas = lambda b, s: pair_id(b, G.name(s))  # noqa: E731
    objects = [obj(x, s) for s in G.elements for x in C.objects]
    homs = {(obj(x, s), obj(y, s)): [bas(b, s) for b in C.hom(x, y)] for s in G.elements for x, y in C.hom_pairs}
    ids = {obj(x, s): bas(C.identities[x], s) for s in G.elements for x in C.identities}
    comp = {
        (bas(g, s), bas(f, s)): [(bas(h, s), c) for h, c in terms]
        for s in G.elements
        for (g, f), terms in C.comp_items()
    }
    D = LinCat(C.field, objects, homs, ids, comp)
    vperm = [{obj(x, s): obj(x, G.mul(u, s)) for x in C.objects for s in G.elements} for u in G.elements]
    bperm = [{bas(b, s): bas(b, G.mul(u, s)) for b in C.basis for s in G.elements} for u in G.elements]
    return permutation_action(G, D, vperm, bperm)

