"""Command-line front end.

Every subcommand prints one JSON report on stdout and writes constructed
objects into ``--out``. Exit status: 0 when every verdict passes, 1 when a
verification fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import random
import sys
import time
from typing import Any, Callable

from . import formats
from .actions import (
    check_action,
    is_free,
    orbit_data,
    quotient_category,
    skeleton_equivalence,
    skew_category,
)
from .algebras import (
    check_algebra,
    check_homogeneous,
    check_twist_identities,
    coherence_skew,
    coherence_smash,
    dual_numbers,
    duality_matrix_report,
    smash_algebra,
)
from .catalog import crown_action, kronecker, kronecker_grading
from .corpus import random_cover_module, random_graded_module, random_module
from .errors import FormatError, GroupAxiomError, KCatError
from .gradings import (
    check_grading,
    duality_checks,
    induced_grading,
    reconstruct_cover,
    smash_product,
    verify_smash_quotient,
)
from .groups import Group, cyclic_group, klein_four, parse_group_flag
from .lincat import Diagnostic, LinCat, check_functor, validate_category
from .modules import (
    check_graded_module,
    check_module,
    cover_to_graded,
    graded_to_cover,
    induced_sum_check,
    is_fixed,
    restrict,
)
from .scalars import Field, make_field


class Report:
    def __init__(self, command: str):
        self.command = command
        self.inputs: dict[str, dict] = {}
        self.verdicts: dict[str, dict] = {}
        self.dimensions: dict[str, Any] = {}
        self.outputs: list[str] = []
        self.start = time.perf_counter()

    def verdict(self, name: str, ok: bool, witness: Any = None) -> bool:
        entry: dict[str, Any] = {"pass": bool(ok)}
        if not ok and witness is not None:
            entry["witness"] = witness
        self.verdicts[name] = entry
        return ok

    def diagnostics(self, name: str, diags: list[Diagnostic]) -> bool:
        return self.verdict(name, not diags, diags[0].to_json() if diags else None)

    @property
    def ok(self) -> bool:
        return all(v["pass"] for v in self.verdicts.values())

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "verdicts": self.verdicts,
            "dimensions": self.dimensions,
            "outputs": self.outputs,
            "pass": self.ok,
        }
        if timing:
            out["elapsed_seconds"] = round(time.perf_counter() - self.start, 6)
        return out


class Context:
    """Parsed arguments plus lazily loaded inputs."""

    def __init__(self, args: argparse.Namespace, report: Report):
        self.args = args
        self.report = report
        self._cache: dict[str, Any] = {}

    @property
    def field(self) -> Field | None:
        return make_field(self.args.field) if self.args.field else None

    def _raw(self, name: str) -> Any:
        path = getattr(self.args, name, None)
        if not path:
            raise FormatError(f"--{name} is required for this command", "argv")
        data = formats.load_file(path)
        with open(path, "rb") as fh:
            digest = hashlib.sha256(fh.read()).hexdigest()
        self.report.inputs[name] = {"path": path, "sha256": digest}
        return data

    def has(self, name: str) -> bool:
        return bool(getattr(self.args, name, None))

    def group(self, embedded: Any = None, where: str = "$.group") -> Group:
        flag = self.args.group
        if flag:
            if os.path.exists(flag):
                with open(flag, "rb") as fh:
                    self.report.inputs["group"] = {"path": flag, "sha256": hashlib.sha256(fh.read()).hexdigest()}
                return formats.group_from_json(formats.load_file(flag))
            try:
                return parse_group_flag(flag)
            except (ValueError, KCatError) as e:
                raise FormatError(str(e), "--group") from None
        if embedded is None:
            raise FormatError("no group given: pass --group or embed one in the input", where)
        return formats.group_from_json(embedded, where)

    def category(self) -> LinCat:
        if "category" not in self._cache:
            self._cache["category"] = formats.category_from_json(self._raw("category"), self.field)
        return self._cache["category"]

    def action(self):
        if "action" not in self._cache:
            d = self._raw("action")
            G = self.group(d.get("group") if isinstance(d, dict) else None)
            self._cache["action"] = formats.action_from_json(d, self.category(), G)
        return self._cache["action"]

    def grading(self):
        if "grading" not in self._cache:
            d = self._raw("grading")
            G = self.group(d.get("group") if isinstance(d, dict) else None)
            self._cache["grading"] = formats.grading_from_json(d, self.category(), G)
        return self._cache["grading"]

    def algebra(self):
        if "algebra" not in self._cache:
            d = self._raw("algebra")
            embedded = d.get("group") if isinstance(d, dict) else None
            G = self.group(embedded) if self.args.group or embedded is not None else None
            self._cache["algebra"] = formats.algebra_from_json(d, G)
        return self._cache["algebra"]

    def reps(self, a):
        if not self.args.reps:
            return None
        reps = [r.strip() for r in self.args.reps.split(",") if r.strip()]
        for r in reps:
            if r not in a.category.objects:
                raise FormatError(f"unknown object {r!r}", "--reps")
        try:
            return orbit_data(a, reps)
        except KCatError as e:
            raise FormatError(str(e), "--reps") from None

    def emit(self, name: str, obj: dict) -> None:
        out = self.args.out or "."
        os.makedirs(out, exist_ok=True)
        path = os.path.join(out, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(formats.dumps(obj))
        self.report.outputs.append(path)


def _category_dims(C: LinCat) -> dict:
    ids = set(C.identities.values())
    return {
        "objects": len(C.objects),
        "basis": len(C.basis),
        "non_identity_basis": sum(1 for b in C.basis if b not in ids),
    }


def _require_action(ctx: Context) -> tuple[Any, Any] | None:
    """Load and check an action; returns (action, orbit data) only when it is free."""
    r = ctx.report
    C = ctx.category()
    if not r.diagnostics("category_valid", validate_category(C)):
        return None
    a = ctx.action()
    if not r.diagnostics("action_valid", check_action(a)):
        return None
    od = ctx.reps(a)
    free, computed = is_free(a)
    if not r.verdict("action_free", free, {"stabilised_objects": [x for x in C.objects if any(
            a.act_object(s, x) == x for s in a.group.elements if s != a.group.identity)]}):
        return None
    return a, od or computed


def _require_grading(ctx: Context):
    r = ctx.report
    if not r.diagnostics("category_valid", validate_category(ctx.category())):
        return None
    g = ctx.grading()
    if not r.diagnostics("grading_valid", check_grading(g)):
        return None
    return g


# -- subcommands -----------------------------------------------------------------------------


def cmd_validate(ctx: Context) -> None:
    r = ctx.report
    if ctx.has("algebra"):
        A, degrees, G = ctx.algebra()
        r.dimensions["algebra"] = A.dim
        r.diagnostics("algebra_valid", check_algebra(A))
        if degrees is not None:
            r.diagnostics("algebra_homogeneous", check_homogeneous(A, degrees, G))
    if not ctx.has("category"):
        if not ctx.has("algebra"):
            raise FormatError("validate needs --category or --algebra", "argv")
        return
    C = ctx.category()
    r.dimensions["category"] = _category_dims(C)
    if not r.diagnostics("category_valid", validate_category(C)):
        return
    if ctx.has("action"):
        a = ctx.action()
        if r.diagnostics("action_valid", check_action(a)):
            free, _ = is_free(a)
            r.dimensions["action_free"] = free
    grading = None
    if ctx.has("grading"):
        grading = ctx.grading()
        if not r.diagnostics("grading_valid", check_grading(grading)):
            grading = None
    if ctx.has("module"):
        d = ctx._raw("module")
        M = formats.module_from_json(d, C, grading)
        if hasattr(M, "blocks"):
            r.diagnostics("module_valid", check_graded_module(M))
        else:
            r.diagnostics("module_valid", check_module(M))


def cmd_quotient(ctx: Context) -> None:
    r = ctx.report
    got = _require_action(ctx)
    if got is None:
        return
    a, od = got
    C, G = a.category, a.group
    q = quotient_category(a, od)
    Q = q.category
    r.diagnostics("quotient_valid", validate_category(Q))
    r.diagnostics("projection_is_functor", check_functor(q.projection))
    law = []
    reps = od.representatives
    for xa in reps:
        for xb in reps:
            lhs = Q.dim(q.object_of(xa), q.object_of(xb))
            rhs = sum(C.dim(a.act_object(s, xa), xb) for s in G.elements)
            if lhs != rhs:
                law.append([xa, xb, lhs, rhs])
    r.verdict("hom_dimension_law", not law, law)
    r.dimensions["category"] = _category_dims(C)
    r.dimensions["quotient"] = _category_dims(Q)
    r.dimensions["representatives"] = list(reps)
    ctx.emit("quotient.category.json", formats.category_to_json(Q))
    ctx.emit("quotient.grading.json", formats.grading_to_json(induced_grading(q, G)))


def cmd_skew(ctx: Context) -> None:
    r = ctx.report
    C = ctx.category()
    if not r.diagnostics("category_valid", validate_category(C)):
        return
    a = ctx.action()
    if not r.diagnostics("action_valid", check_action(a)):
        return
    K = skew_category(a)
    r.diagnostics("skew_valid", validate_category(K))
    r.verdict("skew_dimension", len(K.basis) == a.group.order * len(C.basis), [len(K.basis), len(C.basis)])
    free, computed = is_free(a)
    if free:
        se = skeleton_equivalence(a, ctx.reps(a) or computed, K)
        for k, v in se.checks.items():
            r.verdict(f"skeleton_{k}", v)
    r.dimensions["category"] = _category_dims(C)
    r.dimensions["skew"] = _category_dims(K)
    ctx.emit("skew.category.json", formats.category_to_json(K))


def cmd_smash(ctx: Context) -> None:
    r = ctx.report
    g = _require_grading(ctx)
    if g is None:
        return
    sp = smash_product(g)
    S = sp.category
    r.diagnostics("smash_valid", validate_category(S))
    r.diagnostics("translation_action_valid", check_action(sp.action))
    r.verdict("translation_action_free", is_free(sp.action)[0])
    r.diagnostics("covering_is_functor", check_functor(sp.covering))
    r.dimensions["base"] = _category_dims(g.category)
    r.dimensions["smash"] = _category_dims(S)
    ctx.emit("smash.category.json", formats.category_to_json(S))
    ctx.emit("smash.action.json", formats.action_to_json(sp.action))


def cmd_reconstruct(ctx: Context) -> None:
    r = ctx.report
    if ctx.args.direction == "smash":
        g = _require_grading(ctx)
        if g is None:
            return
        sp = smash_product(g)
        od = ctx.reps(sp.action)
        _, ok = verify_smash_quotient(g, od)
        r.verdict("smash_quotient_is_base", ok)
        r.dimensions["base"] = _category_dims(g.category)
    else:
        got = _require_action(ctx)
        if got is None:
            return
        a, od = got
        _, ok = reconstruct_cover(a, od)
        r.verdict("quotient_smash_is_cover", ok)
        r.dimensions["cover"] = _category_dims(a.category)


def cmd_coherence(ctx: Context) -> None:
    r = ctx.report
    if ctx.args.kind == "skew":
        C = ctx.category()
        if not r.diagnostics("category_valid", validate_category(C)):
            return
        a = ctx.action()
        if not r.diagnostics("action_valid", check_action(a)):
            return
        psi, ok = coherence_skew(a)
        r.verdict("psi_isomorphism", ok)
        r.verdict("skew_algebra_dimension", psi.domain.dim == a.group.order * len(C.basis))
        r.dimensions["a(C[G])"] = psi.domain.dim
        return
    A, degrees, G = ctx.algebra()
    if degrees is None:
        raise FormatError("the smash coherence check needs a graded algebra (degrees)", "$.degrees")
    if not r.diagnostics("algebra_valid", check_algebra(A)):
        return
    if not r.diagnostics("algebra_homogeneous", check_homogeneous(A, degrees, G)):
        return
    phi, ok = coherence_smash(A, degrees, G)
    r.verdict("phi_isomorphism", ok)
    S = smash_algebra(A, degrees, G)
    r.diagnostics("twist_identities", check_twist_identities(S, A, degrees, G))
    r.dimensions["A#G"] = S.dim


def cmd_duality(ctx: Context) -> None:
    r = ctx.report
    if ctx.has("algebra"):
        A, degrees, G = ctx.algebra()
        if degrees is None:
            raise FormatError("the duality check needs a graded algebra (degrees)", "$.degrees")
        if not r.diagnostics("algebra_valid", check_algebra(A)):
            return
        if not r.diagnostics("algebra_homogeneous", check_homogeneous(A, degrees, G)):
            return
        for k, v in duality_matrix_report(A, degrees, G).items():
            r.verdict(k, v)
        r.dimensions["algebra"] = A.dim
        r.dimensions["matrix_size"] = G.order
        return
    g = _require_grading(ctx)
    if g is None:
        return
    sp = smash_product(g)
    for k, v in duality_checks(g, ctx.reps(sp.action)).items():
        r.verdict(k, v)
    r.dimensions["base"] = _category_dims(g.category)


def _module_suite(g, rng: random.Random, n: int, label: str, bad: dict[str, list]) -> None:
    sp = smash_product(g)
    for i in range(n):
        tag = f"{label}#{i}"
        N = random_graded_module(rng, g)
        if check_graded_module(N) or cover_to_graded(graded_to_cover(N, sp), sp) != N:
            bad["graded_round_trip"].append(tag)
        M = random_cover_module(rng, sp)
        if check_module(M) or graded_to_cover(cover_to_graded(M, sp), sp) != M:
            bad["cover_round_trip"].append(tag)
        P = random_module(rng, g.category)
        if not is_fixed(sp.action, restrict(sp.covering, P)):
            bad["restriction_is_fixed"].append(tag)
        if not induced_sum_check(sp, P):
            bad["induced_sum"].append(tag)


def cmd_modules(ctx: Context) -> None:
    """Random module suites over the given grading, or over the Kronecker gradings
    by Z/1..Z/5 and the Klein group (whose covers are the crowns) by default."""
    r = ctx.report
    rng = random.Random(ctx.args.seed)
    n = ctx.args.count
    bad: dict[str, list] = {k: [] for k in ("graded_round_trip", "cover_round_trip", "restriction_is_fixed", "induced_sum")}
    if ctx.has("category"):
        g = _require_grading(ctx)
        if g is None:
            return
        _module_suite(g, rng, n, "input", bad)
        corpus = ["input"]
    else:
        F = ctx.field or make_field("q")
        K = kronecker(F)
        groups = [(f"Z{k}", cyclic_group(k)) for k in range(1, 6)] + [("V4", klein_four())]
        corpus = []
        for name, G in groups:
            label = f"kronecker/{name}"
            _module_suite(kronecker_grading(K, G), rng, n, label, bad)
            corpus.append(label)
    for k, v in bad.items():
        r.verdict(k, not v, {"failed_samples": v})
    if ctx.has("module"):
        if not ctx.has("category"):
            raise FormatError("--module needs --category and --grading", "argv")
        sp = smash_product(g)
        M = formats.module_from_json(ctx._raw("module"), g.category, g)
        if hasattr(M, "blocks"):
            if r.diagnostics("module_valid", check_graded_module(M)):
                r.verdict("module_round_trip", cover_to_graded(graded_to_cover(M, sp), sp) == M)
        elif r.diagnostics("module_valid", check_module(M)):
            r.verdict("module_restriction_is_fixed", is_fixed(sp.action, restrict(sp.covering, M)))
            r.verdict("module_induced_sum", induced_sum_check(sp, M))
    r.dimensions["corpus"] = corpus
    r.dimensions["samples_per_grading"] = n
    r.dimensions["seed"] = ctx.args.seed


def cmd_example(ctx: Context) -> None:
    args, r = ctx.args, ctx.report
    F = ctx.field or make_field("q")
    name = args.name
    if name == "kronecker":
        C = kronecker(F)
        G = ctx.group() if args.group else None
        ctx.emit("kronecker.category.json", formats.category_to_json(C))
        if G is not None:
            ctx.emit("kronecker.grading.json", formats.grading_to_json(kronecker_grading(C, G)))
        r.dimensions["category"] = _category_dims(C)
    elif name == "crown":
        if args.n is None or args.n < 1:
            raise FormatError("crown needs a positive size n", "argv")
        a = crown_action(args.n, F)
        ctx.emit("crown.category.json", formats.category_to_json(a.category))
        ctx.emit("crown.action.json", formats.action_to_json(a))
        r.dimensions["category"] = _category_dims(a.category)
    else:
        A = dual_numbers(F)
        if args.group:
            G = ctx.group()
            deg = {"1": G.identity, "e": 1 % G.order}
            ctx.emit("dual-numbers.algebra.json", formats.algebra_to_json(A, deg, G))
        else:
            ctx.emit("dual-numbers.algebra.json", formats.algebra_to_json(A))
        r.dimensions["algebra"] = A.dim
    r.verdict("emitted", True)


COMMANDS: dict[str, Callable[[Context], None]] = {
    "validate": cmd_validate,
    "quotient": cmd_quotient,
    "skew": cmd_skew,
    "smash": cmd_smash,
    "reconstruct": cmd_reconstruct,
    "coherence": cmd_coherence,
    "duality": cmd_duality,
    "modules": cmd_modules,
    "example": cmd_example,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="scalar field: q or fp:<p>")
    common.add_argument("--group", help="group notation (cyclic:n, sym:n, klein) or a group JSON file")
    common.add_argument("--reps", help="comma-separated orbit representatives")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--out", help="directory for constructed objects (default: current directory)")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--no-timing", action="store_true", help="omit elapsed time for byte-identical reports")
    for name in ("category", "action", "grading", "module", "algebra"):
        common.add_argument(f"--{name}", metavar="FILE", help=f"{name} JSON file")

    p = argparse.ArgumentParser(prog="kcat", description="Finite linear categories with group actions and gradings.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="validate category/action/grading/module/algebra files")
    sub.add_parser("quotient", parents=[common], help="orbit category of a free action")
    sub.add_parser("skew", parents=[common], help="skew category C[G]")
    sub.add_parser("smash", parents=[common], help="smash product B#G with its translation action")
    rc = sub.add_parser("reconstruct", parents=[common], help="(B#G)/G = B or (C/G)#G = C")
    rc.add_argument("--direction", choices=["smash", "cover"], required=True)
    co = sub.add_parser("coherence", parents=[common], help="a(C[G]) = a(C)[G] or a(B_A#G) = A#G")
    co.add_argument("--kind", choices=["skew", "smash"], required=True)
    sub.add_parser("duality", parents=[common], help="(B#G)[G] equivalent to B; matrix algebra check")
    mo = sub.add_parser("modules", parents=[common], help="module round-trip and fixed-point suites")
    mo.add_argument("--count", type=int, default=20, help="number of random samples")
    ex = sub.add_parser("example", parents=[common], help="emit an example input")
    ex.add_argument("name", choices=["kronecker", "crown", "dual-numbers"])
    ex.add_argument("n", nargs="?", type=int, help="crown size")
    return p


def _print(report: dict, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(formats.dumps(report))
        return
    stream.write(f"{report['command']}: {'PASS' if report['pass'] else 'FAIL'}\n")
    for name, v in sorted(report["verdicts"].items()):
        line = f"  {'pass' if v['pass'] else 'FAIL'}  {name}"
        if "witness" in v:
            line += f"  witness={v['witness']}"
        stream.write(line + "\n")
    for path in report["outputs"]:
        stream.write(f"  wrote {path}\n")


def main(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    report = Report(args.command)
    ctx = Context(args, report)
    try:
        COMMANDS[args.command](ctx)
    except FormatError as e:
        out = {"command": args.command, "error": {"kind": "FormatError", "location": e.location, "message": str(e)}}
        stdout.write(formats.dumps(out))
        return 2
    except GroupAxiomError as e:
        report.verdict("group_valid", False, {"kind": type(e).__name__, "message": str(e), "witness": list(e.witness)})
    except KCatError as e:
        out = {"command": args.command, "error": {"kind": type(e).__name__, "location": "$", "message": str(e)}}
        stdout.write(formats.dumps(out))
        return 2
    _print(report.to_json(timing=not args.no_timing), args.format, stdout)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
