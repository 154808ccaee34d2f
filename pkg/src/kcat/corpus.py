"""Seeded random instances for the property suites.

All randomness in the package lives here; every generator takes a
:class:`random.Random` so that a seed fixes the whole corpus.
"""

from __future__ import annotations

import random
from typing import Iterator

from .actions import GAction
from .catalog import crown_action, disjoint_copies_action, kronecker, voltage_cover
from .gradings import Grading, SmashProduct
from .groups import Group, cyclic_group, klein_four, symmetric_group
from .lincat import LinCat, Quiver, path_category, path_id, quiver_paths
from .linalg import Matrix
from .modules import GradedModule, Module, generators, module_from_generators
from .scalars import Field


def small_groups(max_order: int = 6) -> list[Group]:
    gs = [cyclic_group(n) for n in range(1, max_order + 1)]
    if max_order >= 4:
        gs.append(klein_four())
    if max_order >= 6:
        gs.append(symmetric_group(3))
    return gs


def random_group(rng: random.Random, max_order: int = 6) -> Group:
    return rng.choice(small_groups(max_order))


def random_acyclic_quiver(rng: random.Random, max_vertices: int = 6, max_arrows: int = 8, max_paths: int = 40) -> Quiver:
    """Arrows only go from lower to higher vertex index, so the quiver is acyclic.

    Quivers with more than ``max_paths`` non-trivial paths are resampled to keep
    hom spaces small.
    """
    while True:
        n = rng.randint(1, max_vertices)
        vs = [f"v{i}" for i in range(n)]
        arrows = []
        if n > 1:
            for k in range(rng.randint(0, max_arrows)):
                i = rng.randrange(n - 1)
                j = rng.randrange(i + 1, n)
                arrows.append((f"c{k}", vs[i], vs[j]))
        q = Quiver.make(vs, arrows)
        if sum(len(p) for p in quiver_paths(q).values()) <= max_paths:
            return q


def path_degrees(q: Quiver, G: Group, arrow_degree: dict[str, int]) -> dict[str, int]:
    """Extend arrow degrees multiplicatively to every path of a free category."""
    deg = {f"1_{v}": G.identity for v in q.vertices}
    for ps in quiver_paths(q).values():
        for p in ps:
            d = G.identity
            for a in p:
                d = G.mul(arrow_degree[a], d)
            deg[path_id(p)] = d
    return deg


def random_grading(rng: random.Random, field: Field, max_order: int = 6) -> tuple[Quiver, Grading]:
    q = random_acyclic_quiver(rng)
    G = random_group(rng, max_order)
    C = path_category(q, field)
    arrow_degree = {a: rng.randrange(G.order) for a, _, _ in q.arrows}
    return q, Grading(C, G, path_degrees(q, G, arrow_degree))


def random_cover(rng: random.Random, field: Field, max_order: int = 4) -> GAction:
    """A derived cover of a random acyclic quiver with random voltages."""
    q = random_acyclic_quiver(rng, max_vertices=4, max_arrows=5, max_paths=12)
    G = random_group(rng, max_order)
    voltage = {a: rng.randrange(G.order) for a, _, _ in q.arrows}
    return voltage_cover(q, field, G, voltage)


def a3(field: Field) -> LinCat:
    return path_category(Quiver.make(["x", "y", "z"], [("u", "x", "y"), ("v", "y", "z")]), field)


def free_action_corpus(field: Field, seed: int = 0, n_random: int = 6) -> Iterator[tuple[str, GAction]]:
    """Crowns with n <= 5, disjoint-copy actions and random quiver covers."""
    for n in range(1, 6):
        yield f"crown{2 * n}", crown_action(n, field)
    yield "crown12/Z3", crown_action(6, field, cyclic_group(3), step=2)
    for name, C in (("kronecker", kronecker(field)), ("a3", a3(field))):
        for G in (cyclic_group(2), cyclic_group(3), klein_four()):
            yield f"copies({name},{G.order})", disjoint_copies_action(C, G)
    rng = random.Random(seed)
    for i in range(n_random):
        yield f"random_cover{i}", random_cover(rng, field)


def random_scalar(rng: random.Random, field: Field, lo: int = -2, hi: int = 2):
    return field(rng.randint(lo, hi))


def random_matrix(rng: random.Random, field: Field, rows: int, cols: int) -> Matrix:
    return tuple(tuple(random_scalar(rng, field) for _ in range(cols)) for _ in range(rows))


def random_module(rng: random.Random, C: LinCat, max_dim: int = 2) -> Module:
    """Random representation of a path-like category, given on its generators."""
    dims = {x: rng.randint(0, max_dim) for x in C.objects}
    gens = {b: random_matrix(rng, C.field, dims[C.target(b)], dims[C.source(b)]) for b in generators(C)}
    return module_from_generators(C, dims, gens)


def random_graded_module(rng: random.Random, g: Grading, max_block: int = 2) -> GradedModule:
    """Random graded module over a graded path-like category, in canonical layout."""
    C, G = g.category, g.group
    F = C.field
    sizes = {x: [rng.randint(0, max_block) for _ in G.elements] for x in C.objects}
    blocks, offset, dims = {}, {}, {}
    for x in C.objects:
        pos, bl, off = 0, {}, {}
        for s in G.elements:
            off[s] = pos
            if sizes[x][s]:
                bl[s] = tuple(range(pos, pos + sizes[x][s]))
            pos += sizes[x][s]
        blocks[x], offset[x], dims[x] = bl, off, pos
    gens = {}
    for b in generators(C):
        x, y = C.source(b), C.target(b)
        t = g.degree[b]
        rows = [[F.zero] * dims[x] for _ in range(dims[y])]
        for s in G.elements:
            ts = G.mul(t, s)
            for i in range(sizes[y][ts]):
                for j in range(sizes[x][s]):
                    rows[offset[y][ts] + i][offset[x][s] + j] = random_scalar(rng, F)
        gens[b] = tuple(tuple(r) for r in rows)
    return GradedModule(module_from_generators(C, dims, gens), g, blocks)


def random_cover_module(rng: random.Random, sp: SmashProduct, max_dim: int = 2) -> Module:
    return random_module(rng, sp.category, max_dim)
