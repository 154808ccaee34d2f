"""Shared test inputs built from the package plus an oracle filter."""

from __future__ import annotations

from kcat.algebras import category_of_algebra, truncated_polynomials
from kcat.lincat import LinCat
from kcat.scalars import QQ
from oracles import dense_category_ok


def non_associative_loop() -> LinCat:
    """Perturb one structure constant of k[a]/(a^3) until the dense oracle rejects it."""
    A = truncated_polynomials(QQ, 3)
    base = category_of_algebra(A)
    raw = {k: list(v) for k, v in base.comp_items()}
    for g in ("a", "a^2"):
        for f in ("a", "a^2"):
            for h in ("1", "a", "a^2"):
                comp = dict(raw)
                comp[(g, f)] = [(h, 1)]
                C = LinCat(QQ, base.objects, {("*", "*"): list(base.basis)}, base.identities, comp)
                if not dense_category_ok(C):
                    return C
    raise AssertionError("no perturbation found")
