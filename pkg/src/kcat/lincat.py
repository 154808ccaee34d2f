"""Finite k-linear categories, morphisms and linear functors.

A :class:`LinCat` stores, for every ordered pair of objects, an ordered basis
of the hom space, one designated identity basis element per object, and
sparse structure constants ``comp[(g, f)] = ((h, c), ...)`` meaning
``g o f = sum c * h``. Absent pairs compose to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadWitness,
    CyclicQuiver,
    MalformedCategory,
    NotComposable,
    UnknownObject,
)
from .linalg import Matrix, is_invertible, matmul, zeros
from .scalars import Field, Scalar

Sparse = tuple  # tuple[tuple[str, Scalar], ...]


def pair_id(*parts: str) -> str:
    """Canonical rendering of structured ids, e.g. ``(x,t^2)``."""
    return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    witness: tuple = ()

    def to_json(self) -> dict:
        return {"kind": self.kind, "message": self.message, "witness": list(self.witness)}


@dataclass(frozen=True)
class Morphism:
    source: str
    target: str
    coeffs: tuple

    def __add__(self, other: "Morphism") -> "Morphism":
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("adding morphisms of different hom spaces")
        return Morphism(self.source, self.target, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: Scalar) -> "Morphism":
        return Morphism(self.source, self.target, tuple(c * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


class LinCat:
    """A finite k-linear category with chosen hom bases.

    Construction checks only structural well-formedness (known objects, unique
    basis ids, composable comp keys). The category axioms are checked by
    :func:`validate_category`.
    """

    def __init__(
        self,
        field: Field,
        objects: Sequence[str],
        homs: Mapping[tuple[str, str], Sequence[str]],
        identities: Mapping[str, str],
        comp: Mapping[tuple[str, str], Iterable[tuple[str, Scalar]]],
    ):
        self.field = field
        self.objects: tuple[str, ...] = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise MalformedCategory("duplicate object ids")
        objset = set(self.objects)

        self._homs: dict[tuple[str, str], tuple[str, ...]] = {}
        self._info: dict[str, tuple[str, str, int]] = {}
        for (x, y), ids in homs.items():
            if x not in objset or y not in objset:
                raise MalformedCategory(f"hom space {x}|{y} names an unknown object")
            ids = tuple(ids)
            if ids:
                self._homs[(x, y)] = ids
            for i, b in enumerate(ids):
                if b in self._info:
                    raise MalformedCategory(f"basis id {b!r} is not unique")
                self._info[b] = (x, y, i)

        self.identities: dict[str, str] = {}
        for x, b in identities.items():
            if x not in objset:
                raise MalformedCategory(f"identity given for unknown object {x!r}")
            info = self._info.get(b)
            if info is None or info[0] != x or info[1] != x:
                raise MalformedCategory(f"identity {b!r} of {x!r} is not a basis element of End({x})")
            self.identities[x] = b

        self._comp: dict[tuple[str, str], Sparse] = {}
        for (g, f), terms in comp.items():
            if g not in self._info or f not in self._info:
                raise MalformedCategory(f"comp entry ({g}, {f}) names an unknown basis id")
            if self._info[g][0] != self._info[f][1]:
                raise MalformedCategory(f"comp entry ({g}, {f}) is not composable")
            acc: dict[str, Scalar] = {}
            for h, c in terms:
                if h not in self._info:
                    raise MalformedCategory(f"comp entry ({g}, {f}) yields unknown id {h!r}")
                c = field(c)
                acc[h] = acc.get(h, field.zero) + c
            clean = tuple((h, c) for h, c in acc.items() if c)
            if clean:
                self._comp[(g, f)] = clean

        self._out: dict[str, list[str]] = {x: [] for x in self.objects}
        self._in: dict[str, list[str]] = {x: [] for x in self.objects}
        for b in self.basis:
            x, y, _ = self._info[b]
            self._out[x].append(b)
            self._in[y].append(b)

    # -- basis bookkeeping -------------------------------------------------

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._homs.get((x, y), ())

    def dim(self, x: str, y: str) -> int:
        return len(self._homs.get((x, y), ()))

    @property
    def basis(self) -> list[str]:
        """All basis morphisms, grouped by (source, target) in object order."""
        return [b for x in self.objects for y in self.objects for b in self.hom(x, y)]

    def source(self, b: str) -> str:
        return self._info[b][0]

    def target(self, b: str) -> str:
        return self._info[b][1]

    def index(self, b: str) -> int:
        return self._info[b][2]

    def has_basis(self, b: str) -> bool:
        return b in self._info

    def outgoing(self, x: str) -> list[str]:
        return self._out[x]

    def incoming(self, x: str) -> list[str]:
        return self._in[x]

    def basis_comp(self, g: str, f: str) -> Sparse:
        return self._comp.get((g, f), ())

    def comp_items(self):
        return self._comp.items()

    @property
    def hom_pairs(self) -> list[tuple[str, str]]:
        return [(x, y) for x in self.objects for y in self.objects if (x, y) in self._homs]

    # -- morphisms ---------------------------------------------------------

    def zero(self, x: str, y: str) -> Morphism:
        return Morphism(x, y, tuple(self.field.zero for _ in self.hom(x, y)))

    def basis_morphism(self, b: str) -> Morphism:
        x, y, i = self._info[b]
        coeffs = [self.field.zero] * self.dim(x, y)
        coeffs[i] = self.field.one
        return Morphism(x, y, tuple(coeffs))

    def identity(self, x: str) -> Morphism:
        return self.basis_morphism(self.identities[x])

    def morphism(self, x: str, y: str, terms: Iterable[tuple[str, Scalar]]) -> Morphism:
        coeffs = [self.field.zero] * self.dim(x, y)
        for b, c in terms:
            bx, by, i = self._info[b]
            if (bx, by) != (x, y):
                raise ValueError(f"{b!r} is not in Hom({x}, {y})")
            coeffs[i] = coeffs[i] + self.field(c)
        return Morphism(x, y, tuple(coeffs))

    def terms(self, m: Morphism) -> list[tuple[str, Scalar]]:
        hom = self.hom(m.source, m.target)
        return [(hom[i], c) for i, c in enumerate(m.coeffs) if c]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinCat):
            return NotImplemented
        return (
            self.field == other.field
            and self.objects == other.objects
            and self._homs == other._homs
            and self.identities == other.identities
            and {k: dict(v) for k, v in self._comp.items()} == {k: dict(v) for k, v in other._comp.items()}
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LinCat(objects={len(self.objects)}, basis={len(self._info)}, field={self.field!r})"


def compose(C: LinCat, g: Morphism, f: Morphism) -> Morphism:
    """The bilinear composite ``g o f``."""
    if g.source != f.target:
        raise NotComposable(f"cannot compose {g.source}->{g.target} after {f.source}->{f.target}")
    x, y, z = f.source, f.target, g.target
    out = [C.field.zero] * C.dim(x, z)
    gh, fh = C.hom(y, z), C.hom(x, y)
    for i, a in enumerate(g.coeffs):
        if not a:
            continue
        for j, b in enumerate(f.coeffs):
            if not b:
                continue
            ab = a * b
            for h, c in C.basis_comp(gh[i], fh[j]):
                k = C.index(h)
                out[k] = out[k] + ab * c
    return Morphism(x, z, tuple(out))


def _sparse_scale_add(acc: dict, terms: Sparse, c: Scalar) -> None:
    for h, d in terms:
        acc[h] = acc.get(h, 0) + c * d


def _nonzero(acc: dict) -> dict:
    return {h: c for h, c in acc.items() if c}


def validate_category(C: LinCat) -> list[Diagnostic]:
    """Check identities, comp targets, identity laws and associativity.

    Returns an empty list when every axiom holds, otherwise a single
    diagnostic carrying the first failing witness.
    """
    for x in C.objects:
        if x not in C.identities:
            return [Diagnostic("NoIdentity", f"object {x!r} has no designated identity", (x,))]

    for (g, f), terms in C.comp_items():
        src, tgt = C.source(f), C.target(g)
        for h, _ in terms:
            if (C.source(h), C.target(h)) != (src, tgt):
                return [Diagnostic("BadCompTarget", f"{g} o {f} has a term {h} outside Hom({src},{tgt})", (g, f, h))]

    for b in C.basis:
        x, y = C.source(b), C.target(b)
        expected = {b: C.field.one}
        if dict(C.basis_comp(C.identities[y], b)) != expected:
            return [Diagnostic("IdentityLaw", f"id_{y} o {b} != {b}", (C.identities[y], b))]
        if dict(C.basis_comp(b, C.identities[x])) != expected:
            return [Diagnostic("IdentityLaw", f"{b} o id_{x} != {b}", (b, C.identities[x]))]

    for g in C.basis:
        x, y = C.source(g), C.target(g)
        for h in C.outgoing(y):
            hg = C.basis_comp(h, g)
            for f in C.incoming(x):
                gf = C.basis_comp(g, f)
                if not hg and not gf:
                    continue
                lhs: dict = {}
                for k, c in hg:
                    _sparse_scale_add(lhs, C.basis_comp(k, f), c)
                rhs: dict = {}
                for k, c in gf:
                    _sparse_scale_add(rhs, C.basis_comp(h, k), c)
                if _nonzero(lhs) != _nonzero(rhs):
                    return [Diagnostic("Associativity", f"({h} o {g}) o {f} != {h} o ({g} o {f})", (h, g, f))]
    return []


# -- path categories ---------------------------------------------------------


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (name, source, target)

    @classmethod
    def make(cls, vertices: Iterable[str], arrows: Iterable[tuple[str, str, str]]) -> "Quiver":
        return cls(tuple(vertices), tuple(tuple(a) for a in arrows))

    def arrow(self, name: str) -> tuple[str, str, str]:
        for a in self.arrows:
            if a[0] == name:
                return a
        raise KeyError(name)


def _topological_order(q: Quiver) -> list[str]:
    indeg = {v: 0 for v in q.vertices}
    for _, s, t in q.arrows:
        indeg[t] += 1
    order = []
    ready = [v for v in q.vertices if indeg[v] == 0]
    while ready:
        v = ready.pop(0)
        order.append(v)
        for _, s, t in q.arrows:
            if s == v:
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
    if len(order) != len(q.vertices):
        raise CyclicQuiver("quiver has a directed cycle")
    return order


def quiver_paths(q: Quiver) -> dict[tuple[str, str], list[tuple[str, ...]]]:
    """All non-trivial directed paths, as arrow-name tuples in traversal order."""
    vs = set(q.vertices)
    for name, s, t in q.arrows:
        if s not in vs or t not in vs:
            raise UnknownObject(f"arrow {name!r} names an unknown vertex")
    _topological_order(q)
    paths: dict[tuple[str, str], list[tuple[str, ...]]] = {}

    def walk(start: str, at: str, trail: tuple[str, ...]) -> None:
        for name, s, t in q.arrows:
            if s == at:
                p = trail + (name,)
                paths.setdefault((start, t), []).append(p)
                walk(start, t, p)

    for v in q.vertices:
        walk(v, v, ())
    return paths


def path_id(path: Sequence[str]) -> str:
    """Render a path in composition order: u then v is ``v*u``."""
    return "*".join(reversed(path))


def path_category(q: Quiver, field: Field) -> LinCat:
    """The free k-linear category on an acyclic quiver.

    Identities are the trivial paths ``1_x``; composition is concatenation.
    """
    paths = quiver_paths(q)
    homs: dict[tuple[str, str], list[str]] = {}
    identities = {}
    for v in q.vertices:
        identities[v] = f"1_{v}"
        homs[(v, v)] = [f"1_{v}"]
    as_tuple: dict[str, tuple[str, ...]] = {}
    for (x, y), ps in paths.items():
        for p in ps:
            pid = path_id(p)
            homs.setdefault((x, y), []).append(pid)
            as_tuple[pid] = p
    for v in q.vertices:
        as_tuple[f"1_{v}"] = ()
    lookup = {(x, y, as_tuple[b]): b for (x, y), ids in homs.items() for b in ids}
    src = {b: x for (x, y), ids in homs.items() for b in ids}
    tgt = {b: y for (x, y), ids in homs.items() for b in ids}

    comp = {}
    for f, pf in as_tuple.items():
        for g, pg in as_tuple.items():
            if src[g] == tgt[f]:
                h = lookup[(src[f], tgt[g], pf + pg)]
                comp[(g, f)] = [(h, 1)]
    return LinCat(field, q.vertices, homs, identities, comp)


# -- functors ----------------------------------------------------------------


@dataclass
class LinFunctor:
    """A linear functor given on objects and by one matrix per hom space.

    ``hom_maps[(x, y)]`` has shape ``dim Hom(Fx, Fy) x dim Hom(x, y)``; pairs
    with an empty domain hom space may be omitted.
    """

    domain: LinCat
    codomain: LinCat
    object_map: dict[str, str]
    hom_maps: dict[tuple[str, str], Matrix] = dc_field(default_factory=dict)

    def matrix(self, x: str, y: str) -> Matrix:
        m = self.hom_maps.get((x, y))
        if m is None:
            return zeros(self.codomain.field, self.codomain.dim(self.object_map[x], self.object_map[y]), self.domain.dim(x, y))
        return m

    def apply(self, m: Morphism) -> Morphism:
        mat = self.matrix(m.source, m.target)
        fx, fy = self.object_map[m.source], self.object_map[m.target]
        z = self.codomain.field.zero
        out = [z] * self.codomain.dim(fx, fy)
        for j, c in enumerate(m.coeffs):
            if c:
                for i in range(len(out)):
                    if mat[i][j]:
                        out[i] = out[i] + mat[i][j] * c
        return Morphism(fx, fy, tuple(out))

    def on_basis(self, b: str) -> Morphism:
        return self.apply(self.domain.basis_morphism(b))


def functor_from_basis_images(
    domain: LinCat,
    codomain: LinCat,
    object_map: Mapping[str, str],
    images: Mapping[str, Iterable[tuple[str, Scalar]]],
) -> LinFunctor:
    """Assemble a functor from sparse images of domain basis elements."""
    hom_maps = {}
    for x, y in domain.hom_pairs:
        fx, fy = object_map[x], object_map[y]
        cols = []
        for b in domain.hom(x, y):
            cols.append(codomain.morphism(fx, fy, images.get(b, ())).coeffs)
        rows = tuple(tuple(col[i] for col in cols) for i in range(codomain.dim(fx, fy)))
        hom_maps[(x, y)] = rows
    return LinFunctor(domain, codomain, dict(object_map), hom_maps)


def identity_functor(C: LinCat) -> LinFunctor:
    return functor_from_basis_images(C, C, {x: x for x in C.objects}, {b: [(b, 1)] for b in C.basis})


def compose_functors(G: LinFunctor, F: LinFunctor) -> LinFunctor:
    """``G o F``."""
    om = {x: G.object_map[F.object_map[x]] for x in F.domain.objects}
    hm = {}
    field = F.domain.field
    for x, y in F.domain.hom_pairs:
        fx, fy = F.object_map[x], F.object_map[y]
        hm[(x, y)] = matmul(
            field, G.matrix(fx, fy), F.matrix(x, y), inner=F.codomain.dim(fx, fy), cols=F.domain.dim(x, y)
        )
    return LinFunctor(F.domain, G.codomain, om, hm)


def check_functor(F: LinFunctor) -> list[Diagnostic]:
    """Empty iff ``F`` preserves identities and composition on all basis data."""
    D, E = F.domain, F.codomain
    for x in D.objects:
        if F.object_map.get(x) not in E.objects:
            return [Diagnostic("ObjectMap", f"object {x!r} is not sent to a codomain object", (x,))]
    for x, y in D.hom_pairs:
        m = F.matrix(x, y)
        rows, cols = E.dim(F.object_map[x], F.object_map[y]), D.dim(x, y)
        if len(m) != rows or any(len(r) != cols for r in m):
            return [Diagnostic("Shape", f"hom map on ({x},{y}) should be {rows}x{cols}", (x, y))]
    for x in D.objects:
        if F.on_basis(D.identities[x]) != E.identity(F.object_map[x]):
            return [Diagnostic("Identity", f"F(id_{x}) != id_F({x})", (x,))]
    images = {b: F.on_basis(b) for b in D.basis}
    for g in D.basis:
        for f in D.incoming(D.source(g)):
            lhs = F.apply(compose(D, D.basis_morphism(g), D.basis_morphism(f)))
            rhs = compose(E, images[g], images[f])
            if lhs != rhs:
                return [Diagnostic("Composition", f"F({g} o {f}) != F({g}) o F({f})", (g, f))]
    return []


def is_full_and_faithful(F: LinFunctor) -> bool:
    field = F.domain.field
    for x in F.domain.objects:
        for y in F.domain.objects:
            n = F.domain.dim(x, y)
            if F.codomain.dim(F.object_map[x], F.object_map[y]) != n:
                return False
            if n and not is_invertible(field, F.matrix(x, y), n):
                return False
    return True


def is_isomorphism(F: LinFunctor) -> bool:
    """Bijective on objects and invertible on every hom space."""
    images = [F.object_map[x] for x in F.domain.objects]
    if len(set(images)) != len(images) or set(images) != set(F.codomain.objects):
        return False
    return is_full_and_faithful(F)


def full_subcategory(C: LinCat, objects: Iterable[str]) -> tuple[LinCat, LinFunctor]:
    keep = list(objects)
    if not keep:
        raise UnknownObject("a full subcategory needs at least one object")
    for x in keep:
        if x not in C.objects:
            raise UnknownObject(f"{x!r} is not an object of the category")
    keepset = set(keep)
    ordered = [x for x in C.objects if x in keepset]
    homs = {(x, y): C.hom(x, y) for x in ordered for y in ordered if C.dim(x, y)}
    ids = {x: C.identities[x] for x in ordered if x in C.identities}
    comp = {}
    for (g, f), terms in C.comp_items():
        if C.source(f) in keepset and C.target(f) in keepset and C.target(g) in keepset:
            comp[(g, f)] = terms
    sub = LinCat(C.field, ordered, homs, ids, comp)
    inc = functor_from_basis_images(sub, C, {x: x for x in ordered}, {b: [(b, 1)] for b in sub.basis})
    return sub, inc


def check_equivalence_with_witness(
    F: LinFunctor,
    witnesses: Mapping[str, tuple[str, Morphism, Morphism]],
) -> bool:
    """Certify that ``F`` is an equivalence.

    ``witnesses[z] = (x, u, v)`` with ``u: F(x) -> z`` and ``v: z -> F(x)``
    must be mutually inverse for every codomain object ``z``. Returns False if
    ``F`` is not full and faithful; raises :class:`BadWitness` for a missing or
    failing witness.
    """
    if not is_full_and_faithful(F):
        return False
    E = F.codomain
    for z in E.objects:
        if z not in witnesses:
            raise BadWitness(f"no witness supplied for {z!r}", z)
        x, u, v = witnesses[z]
        fx = F.object_map.get(x)
        if (u.source, u.target) != (fx, z) or (v.source, v.target) != (z, fx):
            raise BadWitness(f"witness morphisms for {z!r} have the wrong ends", z)
        if compose(E, v, u) != E.identity(fx) or compose(E, u, v) != E.identity(z):
            raise BadWitness(f"witness pair for {z!r} is not mutually inverse", z)
    return True
