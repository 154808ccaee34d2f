"""JSON interchange formats for fields, groups, categories, actions, gradings,
modules and algebras.

Loaders raise :class:`FormatError` with a JSON-path location such as
``$.comp[3].result[0][1]``; syntax errors carry ``line:col``.
Dumpers emit sorted keys so output is byte-for-byte deterministic.
"""

from __future__ import annotations

import json
from typing import Any

from .actions import GAction
from .algebras import Algebra
from .errors import FormatError, InvalidOrder, KCatError
from .gradings import Grading
from .groups import Group, group_from_table, parse_group_flag
from .lincat import LinCat
from .linalg import Matrix
from .modules import GradedModule, Module
from .scalars import Field, make_field


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, f"{e.lineno}:{e.colno}") from None


def load_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise FormatError(f"cannot read file: {e.strerror}", path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, f"{path}:{e.lineno}:{e.colno}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str) + "\n"


# -- small typed accessors ----------------------------------------------------------


def _get(d: Any, key: str, loc: str, kind=None, optional: bool = False):
    if not isinstance(d, dict):
        raise FormatError("expected an object", loc)
    if key not in d:
        if optional:
            return None
        raise FormatError(f"missing key {key!r}", loc)
    v = d[key]
    if kind is not None and (not isinstance(v, kind) or (isinstance(v, bool) and kind is int)):
        raise FormatError(f"expected {_kind_name(kind)}", f"{loc}.{key}")
    return v


def _kind_name(kind) -> str:
    names = {dict: "an object", list: "an array", str: "a string", int: "an integer"}
    return names.get(kind, str(kind))


def _str(v: Any, loc: str) -> str:
    if not isinstance(v, str):
        raise FormatError("expected a string", loc)
    return v


def _int(v: Any, loc: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise FormatError("expected an integer", loc)
    return v


def _scalar(field: Field, v: Any, loc: str):
    if isinstance(v, int) and not isinstance(v, bool):
        return field(v)
    if not isinstance(v, str):
        raise FormatError("expected a scalar string", loc)
    try:
        return field.parse(v)
    except FormatError as e:
        raise FormatError(str(e).split(": ", 1)[-1], loc) from None


def _matrix(field: Field, v: Any, loc: str, rows: int, cols: int) -> Matrix:
    if not isinstance(v, list) or len(v) != rows:
        raise FormatError(f"expected a {rows}x{cols} matrix", loc)
    out = []
    for i, r in enumerate(v):
        if not isinstance(r, list) or len(r) != cols:
            raise FormatError(f"expected a row of length {cols}", f"{loc}[{i}]")
        out.append(tuple(_scalar(field, c, f"{loc}[{i}][{j}]") for j, c in enumerate(r)))
    return tuple(out)


def _fmt_matrix(field: Field, m: Matrix) -> list:
    return [[field.format(c) for c in r] for r in m]


def _split(key: str, n: int, loc: str) -> list[str]:
    parts = key.split("|")
    if len(parts) != n:
        raise FormatError(f"key {key!r} should have {n} '|'-separated parts", loc)
    return parts


def _check_id(s: str) -> str:
    if "|" in s:
        raise FormatError(f"id {s!r} contains the reserved character '|'")
    return s


# -- fields and groups ----------------------------------------------------------------


def field_from_json(v: Any, loc: str = "$.field") -> Field:
    if not isinstance(v, str):
        raise FormatError("field must be 'q' or 'fp:<p>'", loc)
    try:
        return make_field(v)
    except (KCatError, ValueError) as e:
        raise FormatError(str(e), loc) from None


def group_to_json(G: Group) -> dict:
    return {"order": G.order, "mul": [list(r) for r in G.table], "identity": G.identity, "names": list(G.names)}


def group_from_json(v: Any, loc: str = "$") -> Group:
    """Accepts the full table format, ``{"cyclic": n}``, or a flag string like ``"cyclic:3"``."""
    try:
        if isinstance(v, str):
            return parse_group_flag(v)
        if isinstance(v, dict) and "cyclic" in v:
            return parse_group_flag(f"cyclic:{_int(v['cyclic'], loc + '.cyclic')}")
        order = _get(v, "order", loc, int)
        mul = _get(v, "mul", loc, list)
        if len(mul) != order:
            raise FormatError(f"table must have {order} rows", loc + ".mul")
        table = []
        for i, r in enumerate(mul):
            if not isinstance(r, list) or len(r) != order:
                raise FormatError(f"row must have {order} entries", f"{loc}.mul[{i}]")
            table.append([_int(c, f"{loc}.mul[{i}][{j}]") for j, c in enumerate(r)])
        identity = _get(v, "identity", loc, int, optional=True)
        names = _get(v, "names", loc, list, optional=True)
        if names is not None:
            names = [_str(n, f"{loc}.names[{i}]") for i, n in enumerate(names)]
        return group_from_table(table, identity, names)
    except (ValueError, InvalidOrder) as e:
        raise FormatError(str(e), loc) from None


# -- categories -----------------------------------------------------------------------


def category_to_json(C: LinCat) -> dict:
    F = C.field
    comp = [
        {"g": g, "f": f, "result": [[h, F.format(c)] for h, c in terms]}
        for (g, f), terms in sorted(C.comp_items())
    ]
    for x in C.objects:
        _check_id(x)
    return {
        "field": F.spec.render(),
        "objects": list(C.objects),
        "homs": {f"{x}|{y}": list(C.hom(x, y)) for x, y in C.hom_pairs},
        "identities": dict(C.identities),
        "comp": comp,
    }


def category_from_json(d: Any, field: Field | None = None, loc: str = "$") -> LinCat:
    if field is None:
        field = field_from_json(_get(d, "field", loc), loc + ".field")
    objects = [_str(x, f"{loc}.objects[{i}]") for i, x in enumerate(_get(d, "objects", loc, list))]
    homs = {}
    for key, ids in _get(d, "homs", loc, dict).items():
        kl = f"{loc}.homs[{key!r}]"
        x, y = _split(key, 2, kl)
        if x not in objects or y not in objects:
            raise FormatError(f"hom space {key} names an unknown object", kl)
        if not isinstance(ids, list):
            raise FormatError("expected an array of basis ids", kl)
        homs[(x, y)] = [_str(b, f"{kl}[{i}]") for i, b in enumerate(ids)]
    ids = {x: _str(b, f"{loc}.identities[{x!r}]") for x, b in _get(d, "identities", loc, dict).items()}
    comp = {}
    for i, entry in enumerate(_get(d, "comp", loc, list, optional=True) or []):
        el = f"{loc}.comp[{i}]"
        g, f = _str(_get(entry, "g", el), el + ".g"), _str(_get(entry, "f", el), el + ".f")
        terms = []
        for j, t in enumerate(_get(entry, "result", el, list)):
            tl = f"{el}.result[{j}]"
            if not isinstance(t, list) or len(t) != 2:
                raise FormatError("expected [basis id, scalar]", tl)
            terms.append((_str(t[0], tl + "[0]"), _scalar(field, t[1], tl + "[1]")))
        if (g, f) in comp:
            raise FormatError(f"duplicate comp entry ({g}, {f})", el)
        comp[(g, f)] = terms
    try:
        return LinCat(field, objects, homs, ids, comp)
    except KCatError as e:
        raise FormatError(str(e), loc) from None


# -- actions and gradings ---------------------------------------------------------------


def action_to_json(a: GAction) -> dict:
    G, C = a.group, a.category
    hom_maps = {}
    for s in G.elements:
        for x, y in C.hom_pairs:
            hom_maps[f"{G.name(s)}|{x}|{y}"] = _fmt_matrix(C.field, a.matrix(s, x, y))
    return {
        "group": group_to_json(G),
        "object_perm": {G.name(s): dict(a.object_perm[s]) for s in G.elements},
        "hom_maps": hom_maps,
    }


def _element(G: Group, name: Any, loc: str) -> int:
    try:
        return G.index(_str(name, loc))
    except KeyError:
        raise FormatError(f"no group element named {name!r}", loc) from None


def action_from_json(d: Any, C: LinCat, group: Group | None = None, loc: str = "$") -> GAction:
    if group is None:
        group = group_from_json(_get(d, "group", loc), loc + ".group")
    G = group
    perms: list[dict[str, str]] = [{} for _ in G.elements]
    for name, p in _get(d, "object_perm", loc, dict).items():
        pl = f"{loc}.object_perm[{name!r}]"
        s = _element(G, name, pl)
        if not isinstance(p, dict):
            raise FormatError("expected an object", pl)
        for x, sx in p.items():
            if x not in C.objects or sx not in C.objects:
                raise FormatError(f"unknown object in {x!r} -> {sx!r}", pl)
            perms[s][x] = sx
    for s in G.elements:
        if set(perms[s]) != set(C.objects):
            raise FormatError(f"object_perm of {G.name(s)!r} must cover every object", loc + ".object_perm")
    hom_maps = {}
    for key, m in _get(d, "hom_maps", loc, dict).items():
        kl = f"{loc}.hom_maps[{key!r}]"
        sname, x, y = _split(key, 3, kl)
        s = _element(G, sname, kl)
        if x not in C.objects or y not in C.objects:
            raise FormatError("unknown object", kl)
        rows = C.dim(perms[s][x], perms[s][y])
        hom_maps[(s, x, y)] = _matrix(C.field, m, kl, rows, C.dim(x, y))
    return GAction(G, C, perms, hom_maps)


def grading_to_json(g: Grading) -> dict:
    G = g.group
    return {"group": group_to_json(G), "degrees": {b: G.name(d) for b, d in g.degree.items()}}


def grading_from_json(d: Any, C: LinCat, group: Group | None = None, loc: str = "$") -> Grading:
    if group is None:
        group = group_from_json(_get(d, "group", loc), loc + ".group")
    degrees = {}
    for b, name in _get(d, "degrees", loc, dict).items():
        bl = f"{loc}.degrees[{b!r}]"
        if not C.has_basis(b):
            raise FormatError(f"unknown basis id {b!r}", bl)
        degrees[b] = _element(group, name, bl)
    return Grading(C, group, degrees)


# -- modules ---------------------------------------------------------------------------


def module_to_json(M: Module | GradedModule) -> dict:
    out: dict[str, Any] = {}
    if isinstance(M, GradedModule):
        G = M.grading.group
        out["blocks"] = {
            x: {G.name(s): list(ix) for s, ix in sorted(bl.items()) if ix} for x, bl in M.blocks.items()
        }
        M = M.module
    F = M.category.field
    out["dims"] = dict(M.dims)
    out["action"] = {b: _fmt_matrix(F, m) for b, m in M.action.items()}
    return out


def module_from_json(d: Any, C: LinCat, grading: Grading | None = None, loc: str = "$") -> Module | GradedModule:
    """A plain module, or a graded module when the file has ``blocks`` and a grading is given."""
    dims = {}
    for x, n in _get(d, "dims", loc, dict).items():
        if x not in C.objects:
            raise FormatError(f"unknown object {x!r}", f"{loc}.dims")
        n = _int(n, f"{loc}.dims[{x!r}]")
        if n < 0:
            raise FormatError("dimension must be non-negative", f"{loc}.dims[{x!r}]")
        dims[x] = n
    for x in C.objects:
        dims.setdefault(x, 0)
    action = {}
    raw = _get(d, "action", loc, dict)
    for b, m in raw.items():
        bl = f"{loc}.action[{b!r}]"
        if not C.has_basis(b):
            raise FormatError(f"unknown basis id {b!r}", bl)
        action[b] = _matrix(C.field, m, bl, dims[C.target(b)], dims[C.source(b)])
    for b in C.basis:
        if b not in action:
            x, y = C.source(b), C.target(b)
            if dims[x] and dims[y]:
                raise FormatError(f"missing action of {b!r}", f"{loc}.action")
            action[b] = tuple(() for _ in range(dims[y]))
    M = Module(C, dims, action)
    blocks_raw = _get(d, "blocks", loc, dict, optional=True)
    if blocks_raw is None or grading is None:
        return M
    G = grading.group
    blocks: dict[str, dict[int, tuple[int, ...]]] = {x: {} for x in C.objects}
    for x, bl in blocks_raw.items():
        xl = f"{loc}.blocks[{x!r}]"
        if x not in C.objects or not isinstance(bl, dict):
            raise FormatError("unknown object or malformed block table", xl)
        for name, ix in bl.items():
            il = f"{xl}[{name!r}]"
            if not isinstance(ix, list):
                raise FormatError("expected an array of indices", il)
            blocks[x][_element(G, name, il)] = tuple(_int(i, f"{il}[{k}]") for k, i in enumerate(ix))
    return GradedModule(M, grading, blocks)


# -- algebras ----------------------------------------------------------------------------


def algebra_to_json(A: Algebra, degrees: dict[str, int] | None = None, group: Group | None = None) -> dict:
    F = A.field
    mul = [
        {"a": A.basis[i], "b": A.basis[j], "result": [[A.basis[k], F.format(c)] for k, c in terms]}
        for (i, j), terms in sorted(A.mul_items())
    ]
    out: dict[str, Any] = {
        "field": F.spec.render(),
        "basis": list(A.basis),
        "mul": mul,
        "unit": [[b, F.format(c)] for b, c in zip(A.basis, A.unit) if c],
    }
    if degrees is not None and group is not None:
        out["group"] = group_to_json(group)
        out["degrees"] = {b: group.name(d) for b, d in degrees.items()}
    return out


def algebra_from_json(
    d: Any, group: Group | None = None, loc: str = "$"
) -> tuple[Algebra, dict[str, int] | None, Group | None]:
    """Returns the algebra and, when the file grades it, the degrees and group."""
    field = field_from_json(_get(d, "field", loc), loc + ".field")
    basis = [_str(b, f"{loc}.basis[{i}]") for i, b in enumerate(_get(d, "basis", loc, list))]
    known = set(basis)
    if len(known) != len(basis):
        raise FormatError("duplicate basis ids", loc + ".basis")

    def bid(v, where):
        v = _str(v, where)
        if v not in known:
            raise FormatError(f"unknown basis id {v!r}", where)
        return v

    mul = {}
    for i, entry in enumerate(_get(d, "mul", loc, list)):
        el = f"{loc}.mul[{i}]"
        a, b = bid(_get(entry, "a", el), el + ".a"), bid(_get(entry, "b", el), el + ".b")
        terms = []
        for j, t in enumerate(_get(entry, "result", el, list)):
            tl = f"{el}.result[{j}]"
            if not isinstance(t, list) or len(t) != 2:
                raise FormatError("expected [basis id, scalar]", tl)
            terms.append((bid(t[0], tl + "[0]"), _scalar(field, t[1], tl + "[1]")))
        mul[(a, b)] = terms
    unit = {}
    for i, t in enumerate(_get(d, "unit", loc, list)):
        tl = f"{loc}.unit[{i}]"
        if not isinstance(t, list) or len(t) != 2:
            raise FormatError("expected [basis id, scalar]", tl)
        unit[bid(t[0], tl + "[0]")] = _scalar(field, t[1], tl + "[1]")
    A = Algebra(field, basis, mul, unit)
    raw = _get(d, "degrees", loc, dict, optional=True)
    if raw is None:
        return A, None, group
    if group is None:
        g = _get(d, "group", loc, optional=True)
        if g is None:
            raise FormatError("graded algebra needs a group", loc)
        group = group_from_json(g, loc + ".group")
    degrees = {bid(b, f"{loc}.degrees"): _element(group, n, f"{loc}.degrees[{b!r}]") for b, n in raw.items()}
    return A, degrees, group
