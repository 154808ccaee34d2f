"""Modules over linear categories: restriction, twisting, and graded/cover modules.

A module assigns a dimension to every object and a matrix
``dims[y] x dims[x]`` to every basis morphism ``x -> y`` (covariant).
Equality of modules is equality of this data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .actions import GAction
from .gradings import Grading, SmashProduct
from .lincat import Diagnostic, LinCat, LinFunctor
from .linalg import Matrix, identity, matmul, zeros
from .scalars import Field


def _add(field: Field, a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def _scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in a)


def _lincomb(field: Field, rows: int, cols: int, terms) -> Matrix:
    acc = zeros(field, rows, cols)
    for m, c in terms:
        acc = _add(field, acc, _scale(c, m))
    return acc


def _submatrix(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return tuple(tuple(m[i][j] for j in cols) for i in rows)


@dataclass
class Module:
    category: LinCat
    dims: dict[str, int]
    action: dict[str, Matrix]

    def matrix(self, b: str) -> Matrix:
        return self.action[b]

    def act(self, x: str, y: str, coeffs) -> Matrix:
        """Matrix of a linear combination of basis morphisms of Hom(x, y)."""
        C = self.category
        return _lincomb(
            C.field, self.dims[y], self.dims[x], [(self.action[b], c) for b, c in zip(C.hom(x, y), coeffs) if c]
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Module):
            return NotImplemented
        same = self.category is other.category or self.category == other.category
        return same and self.dims == other.dims and self.action == other.action

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())


def zero_module(C: LinCat) -> Module:
    return Module(C, {x: 0 for x in C.objects}, {b: () for b in C.basis})


def check_module(M: Module) -> list[Diagnostic]:
    C, F = M.category, M.category.field
    for x in C.objects:
        if M.dims.get(x, -1) < 0:
            return [Diagnostic("Shape", f"no dimension for object {x!r}", (x,))]
    for b in C.basis:
        m = M.action.get(b)
        x, y = C.source(b), C.target(b)
        if m is None or len(m) != M.dims[y] or any(len(r) != M.dims[x] for r in m):
            return [Diagnostic("Shape", f"action of {b} should be {M.dims[y]}x{M.dims[x]}", (b,))]
    for x in C.objects:
        if M.action[C.identities[x]] != identity(F, M.dims[x]):
            return [Diagnostic("Identity", f"id_{x} does not act as the identity", (x,))]
    for g in C.basis:
        y = C.source(g)
        for f in C.incoming(y):
            x, z = C.source(f), C.target(g)
            lhs = matmul(F, M.action[g], M.action[f], inner=M.dims[y], cols=M.dims[x])
            rhs = _lincomb(F, M.dims[z], M.dims[x], [(M.action[h], c) for h, c in C.basis_comp(g, f)])
            if lhs != rhs:
                return [Diagnostic("Composition", f"{g}({f} m) != ({g} o {f}) m", (g, f))]
    return []


def generators(C: LinCat) -> list[str]:
    """Basis elements that are neither identities nor a unit-coefficient composite."""
    ids = set(C.identities.values())
    produced = set()
    for (g, f), terms in C.comp_items():
        if g not in ids and f not in ids and len(terms) == 1 and terms[0][1] == 1:
            produced.add(terms[0][0])
    return [b for b in C.basis if b not in ids and b not in produced]


def module_from_generators(C: LinCat, dims: Mapping[str, int], gen_action: Mapping[str, Matrix]) -> Module:
    """Extend matrices on generators to all basis morphisms through composites.

    Suited to path-like categories (free categories, their covers and
    quotients), where every non-generator basis element is ``g o f`` for some
    basis pair with coefficient 1. The result should be checked with
    :func:`check_module` for categories with relations.
    """
    F = C.field
    ids = set(C.identities.values())
    split: dict[str, tuple[str, str]] = {}
    for (g, f), terms in C.comp_items():
        if g not in ids and f not in ids and len(terms) == 1 and terms[0][1] == 1:
            split.setdefault(terms[0][0], (g, f))
    act: dict[str, Matrix] = {}
    for x in C.objects:
        act[C.identities[x]] = identity(F, dims[x])
    act.update(gen_action)

    def resolve(b: str) -> Matrix:
        if b not in act:
            g, f = split[b]
            y = C.source(g)
            act[b] = matmul(F, resolve(g), resolve(f), inner=dims[y], cols=dims[C.source(f)])
        return act[b]

    for b in C.basis:
        resolve(b)
    return Module(C, dict(dims), act)


# -- restriction and twisting ------------------------------------------------------


def restrict(F: LinFunctor, N: Module) -> Module:
    """F*N = N o F."""
    D = F.domain
    dims = {x: N.dims[F.object_map[x]] for x in D.objects}
    action = {}
    for x, y in D.hom_pairs:
        m = F.matrix(x, y)
        for j, b in enumerate(D.hom(x, y)):
            action[b] = N.act(F.object_map[x], F.object_map[y], [row[j] for row in m])
    return Module(D, dims, action)


def twist_module(a: GAction, s: int, M: Module) -> Module:
    """^sM: (^sM)_x = M_{s^-1 x}, and c acts as s^-1 c."""
    C, F = a.category, a.category.field
    si = a.group.inv(s)
    dims = {x: M.dims[a.act_object(si, x)] for x in C.objects}
    action = {}
    for c in C.basis:
        x, y = C.source(c), C.target(c)
        action[c] = _lincomb(F, dims[y], dims[x], [(M.action[h], k) for h, k in a.act_basis(si, c)])
    return Module(C, dims, action)


def is_fixed(a: GAction, M: Module) -> bool:
    """Strict fixedness: ^sM equals M as data for every s."""
    return all(twist_module(a, s, M) == M for s in a.group.elements)


# -- module maps ----------------------------------------------------------------------


@dataclass
class ModuleMap:
    source: Module
    target: Module
    components: dict[str, Matrix]  # x -> target.dims[x] x source.dims[x]


def check_module_map(phi: ModuleMap) -> list[Diagnostic]:
    M, N = phi.source, phi.target
    C, F = M.category, M.category.field
    for b in C.basis:
        x, y = C.source(b), C.target(b)
        lhs = matmul(F, N.action[b], phi.components[x], inner=N.dims[x], cols=M.dims[x])
        rhs = matmul(F, phi.components[y], M.action[b], inner=M.dims[y], cols=M.dims[x])
        if lhs != rhs:
            return [Diagnostic("Naturality", f"map does not commute with {b}", (b,))]
    return []


def compose_module_maps(psi: ModuleMap, phi: ModuleMap) -> ModuleMap:
    F = phi.source.category.field
    comps = {
        x: matmul(F, psi.components[x], phi.components[x], inner=phi.target.dims[x], cols=phi.source.dims[x])
        for x in phi.source.category.objects
    }
    return ModuleMap(phi.source, psi.target, comps)


def restrict_map(F: LinFunctor, phi: ModuleMap) -> ModuleMap:
    comps = {x: phi.components[F.object_map[x]] for x in F.domain.objects}
    return ModuleMap(restrict(F, phi.source), restrict(F, phi.target), comps)


def twist_map(a: GAction, s: int, phi: ModuleMap) -> ModuleMap:
    si = a.group.inv(s)
    comps = {x: phi.components[a.act_object(si, x)] for x in a.category.objects}
    return ModuleMap(twist_module(a, s, phi.source), twist_module(a, s, phi.target), comps)


# -- graded modules and cover modules ---------------------------------------------------


@dataclass
class GradedModule:
    """A module over a graded category with each fibre split by degree.

    ``blocks[x][s]`` lists the coordinate indices of the degree-s part at x.
    """

    module: Module
    grading: Grading
    blocks: dict[str, dict[int, tuple[int, ...]]]

    def block(self, x: str, s: int) -> tuple[int, ...]:
        return self.blocks[x].get(s, ())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedModule):
            return NotImplemented
        strip = lambda bl: {x: {s: v for s, v in d.items() if v} for x, d in bl.items()}  # noqa: E731
        return self.module == other.module and strip(self.blocks) == strip(other.blocks)


def check_graded_module(N: GradedModule) -> list[Diagnostic]:
    d = check_module(N.module)
    if d:
        return d
    C, G = N.module.category, N.grading.group
    for x in C.objects:
        coords = sorted(i for s in G.elements for i in N.block(x, s))
        if coords != list(range(N.module.dims[x])):
            return [Diagnostic("Blocks", f"degree blocks at {x!r} do not partition the fibre", (x,))]
    for b in C.basis:
        x, y = C.source(b), C.target(b)
        t = N.grading.degree[b]
        m = N.module.action[b]
        for s in G.elements:
            allowed = set(N.block(y, G.mul(t, s)))
            for j in N.block(x, s):
                for i in range(N.module.dims[y]):
                    if m[i][j] and i not in allowed:
                        return [Diagnostic(
                            "GradedAction",
                            f"{b} (degree {G.name(t)}) sends degree {G.name(s)} at {x} outside degree {G.name(G.mul(t, s))} at {y}",
                            (b, G.name(s)),
                        )]
    return []


def is_canonical_layout(N: GradedModule) -> bool:
    """Blocks are contiguous and appear in increasing degree index."""
    G = N.grading.group
    return all(
        [i for s in G.elements for i in N.block(x, s)] == list(range(N.module.dims[x]))
        for x in N.module.category.objects
    )


def canonicalize(N: GradedModule) -> GradedModule:
    """Reorder coordinates so that blocks are contiguous in degree order."""
    M, G = N.module, N.grading.group
    C = M.category
    order = {x: [i for s in G.elements for i in N.block(x, s)] for x in C.objects}
    action = {b: _submatrix(M.action[b], order[C.target(b)], order[C.source(b)]) for b in C.basis}
    blocks = {}
    for x in C.objects:
        pos, out = 0, {}
        for s in G.elements:
            n = len(N.block(x, s))
            if n:
                out[s] = tuple(range(pos, pos + n))
            pos += n
        blocks[x] = out
    return GradedModule(Module(C, dict(M.dims), action), N.grading, blocks)


def graded_to_cover(N: GradedModule, sp: SmashProduct) -> Module:
    """The B#G-module C(N) with C(N)_(x,s) = N_x^{s^-1}."""
    G = sp.grading.group
    S = sp.category
    dims = {o: len(N.block(x, G.inv(s))) for o, (x, s) in sp.object_label.items()}
    action = {}
    for bid, (b, s, t) in sp.basis_label.items():
        x, y = sp.grading.category.source(b), sp.grading.category.target(b)
        action[bid] = _submatrix(N.module.action[b], N.block(y, G.inv(t)), N.block(x, G.inv(s)))
    return Module(S, dims, action)


def cover_to_graded(M: Module, sp: SmashProduct) -> GradedModule:
    """The graded B-module B(M) = sum_s M_(x,s), with degree-s part M_(x, s^-1).

    Blocks are laid out contiguously in increasing degree index.
    """
    g = sp.grading
    B, G = g.category, g.group
    Fld = B.field
    offsets: dict[str, dict[int, int]] = {}
    blocks: dict[str, dict[int, tuple[int, ...]]] = {}
    dims = {}
    for x in B.objects:
        pos, off, bl = 0, {}, {}
        for d in G.elements:
            n = M.dims[sp.obj(x, G.inv(d))]
            off[d] = pos
            if n:
                bl[d] = tuple(range(pos, pos + n))
            pos += n
        offsets[x], blocks[x], dims[x] = off, bl, pos
    ids = {lab: bid for bid, lab in sp.basis_label.items()}
    action = {}
    for b in B.basis:
        x, y = B.source(b), B.target(b)
        e = g.degree[b]
        rows = [[Fld.zero] * dims[x] for _ in range(dims[y])]
        for d in G.elements:
            ed = G.mul(e, d)
            block = M.action[ids[(b, G.inv(d), G.inv(ed))]]
            r0, c0 = offsets[y][ed], offsets[x][d]
            for i, row in enumerate(block):
                for j, v in enumerate(row):
                    rows[r0 + i][c0 + j] = v
        action[b] = tuple(tuple(r) for r in rows)
    return GradedModule(Module(B, dims, action), g, blocks)


def graded_map_to_cover(phi: ModuleMap, N1: GradedModule, N2: GradedModule, sp: SmashProduct) -> ModuleMap:
    """C(phi): the degree-preserving map phi restricted to each degree block."""
    G = sp.grading.group
    comps = {
        o: _submatrix(phi.components[x], N2.block(x, G.inv(s)), N1.block(x, G.inv(s)))
        for o, (x, s) in sp.object_label.items()
    }
    return ModuleMap(graded_to_cover(N1, sp), graded_to_cover(N2, sp), comps)


def cover_map_to_graded(psi: ModuleMap, sp: SmashProduct) -> ModuleMap:
    """B(psi): block-diagonal assembly of the components of psi."""
    G = sp.grading.group
    B1, B2 = cover_to_graded(psi.source, sp), cover_to_graded(psi.target, sp)
    F = sp.category.field
    comps = {}
    for x in sp.grading.category.objects:
        rows = [[F.zero] * B1.module.dims[x] for _ in range(B2.module.dims[x])]
        for d in G.elements:
            block = psi.components[sp.obj(x, G.inv(d))]
            for i, r in zip(B2.block(x, d), block):
                for j, v in zip(B1.block(x, d), r):
                    rows[i][j] = v
        comps[x] = tuple(tuple(r) for r in rows)
    return ModuleMap(B1.module, B2.module, comps)


def induced_sum_check(sp: SmashProduct, N: Module) -> bool:
    """B(F*N) is the sum of |G| copies of N, graded by the group.

    With F the covering B#G -> B: every degree block at x has size dims_N(x),
    and a basis morphism b of degree e maps the degree-d copy to the degree-ed
    copy by N(b), with zero blocks elsewhere.
    """
    G = sp.grading.group
    BN = cover_to_graded(restrict(sp.covering, N), sp)
    B = sp.grading.category
    for x in B.objects:
        if BN.module.dims[x] != G.order * N.dims[x]:
            return False
        if any(len(BN.block(x, d)) != N.dims[x] for d in G.elements):
            return False
    for b in B.basis:
        x, y = B.source(b), B.target(b)
        e = sp.grading.degree[b]
        m = BN.module.action[b]
        for d in G.elements:
            for d2 in G.elements:
                blk = _submatrix(m, BN.block(y, d2), BN.block(x, d))
                expected = N.action[b] if d2 == G.mul(e, d) else zeros(B.field, N.dims[y], N.dims[x])
                if blk != expected:
                    return False
    return True


# -- agreement with modules over a(C) ---------------------------------------------------


def algebra_representation(M: Module) -> tuple[list[str], list[Matrix]]:
    """The a(C)-module structure on the direct sum of the fibres.

    Returns the a(C) basis order and one matrix per basis element.
    """
    C, F = M.category, M.category.field
    offset, pos = {}, 0
    for x in C.objects:
        offset[x] = pos
        pos += M.dims[x]
    mats = []
    for b in C.basis:
        x, y = C.source(b), C.target(b)
        rows = [[F.zero] * pos for _ in range(pos)]
        for i, r in enumerate(M.action[b]):
            for j, v in enumerate(r):
                rows[offset[y] + i][offset[x] + j] = v
        mats.append(tuple(tuple(r) for r in rows))
    return C.basis, mats
