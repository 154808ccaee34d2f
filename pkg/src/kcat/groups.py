"""Finite groups given by explicit multiplication tables.

Elements are the dense indices ``0..n-1``; names are for display and for the
interchange formats only.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Sequence

from .errors import InvalidOrder, NoIdentity, NoInverse, NotAssociative


@dataclass(frozen=True)
class Group:
    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]
    names: tuple[str, ...]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def prod(self, *elems: int) -> int:
        acc = self.identity
        for e in elems:
            acc = self.table[acc][e]
        return acc

    @property
    def elements(self) -> range:
        return range(self.order)

    def name(self, a: int) -> str:
        return self.names[a]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no group element named {name!r}") from None

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group(order={self.order}, names={list(self.names)})"


def group_from_table(
    table: Sequence[Sequence[int]],
    identity: int | None = None,
    names: Sequence[str] | None = None,
) -> Group:
    """Validate the group axioms on ``table`` and build a :class:`Group`.

    When ``identity`` is None the identity is searched for. Failures raise
    :class:`NoIdentity`, :class:`NoInverse` or :class:`NotAssociative` with the
    offending element or triple as ``witness``.
    """
    n = len(table)
    if n == 0:
        raise InvalidOrder("a group has at least one element")
    rows = tuple(tuple(int(v) for v in row) for row in table)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"row {i} has length {len(row)}, expected {n}")
        for v in row:
            if not 0 <= v < n:
                raise ValueError(f"entry {v} in row {i} is not an element index")

    def is_identity(e: int) -> bool:
        return all(rows[e][a] == a and rows[a][e] == a for a in range(n))

    if identity is None:
        found = [e for e in range(n) if is_identity(e)]
        if not found:
            raise NoIdentity("no two-sided identity element", ())
        identity = found[0]
    elif not 0 <= identity < n:
        raise NoIdentity(f"identity index {identity} out of range", (identity,))
    elif not is_identity(identity):
        bad = next(a for a in range(n) if rows[identity][a] != a or rows[a][identity] != a)
        raise NoIdentity(f"element {identity} is not a two-sided identity (fails on {bad})", (bad,))

    inverses = []
    for a in range(n):
        inv = next((b for b in range(n) if rows[a][b] == identity and rows[b][a] == identity), None)
        if inv is None:
            raise NoInverse(f"element {a} has no two-sided inverse", (a,))
        inverses.append(inv)

    for a, b, c in product(range(n), repeat=3):
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise NotAssociative(f"(({a}*{b})*{c}) != ({a}*({b}*{c}))", (a, b, c))

    if names is None:
        names = [str(i) for i in range(n)]
    if len(names) != n or len(set(names)) != n:
        raise ValueError("names must be n distinct strings")
    return Group(n, rows, identity, tuple(inverses), tuple(names))


def cyclic_group(n: int) -> Group:
    """Z/n with generator ``t``; element ``i`` is displayed as ``t^i``."""
    if n < 1:
        raise InvalidOrder(f"cyclic group order must be >= 1, got {n}")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = ["1", "t"] + [f"t^{i}" for i in range(2, n)]
    return group_from_table(table, 0, names[:n])


def direct_product(g: Group, h: Group) -> Group:
    pairs = [(a, b) for a in g.elements for b in h.elements]
    index = {p: i for i, p in enumerate(pairs)}
    table = [
        [index[(g.mul(a1, a2), h.mul(b1, b2))] for (a2, b2) in pairs] for (a1, b1) in pairs
    ]
    names = [f"({g.name(a)},{h.name(b)})" for a, b in pairs]
    return group_from_table(table, index[(g.identity, h.identity)], names)


def _cycle_name(perm: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, j = [], start
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        cycles.append("(" + "".join(str(x + 1) for x in cyc) + ")")
    return "".join(cycles) or "1"


def symmetric_group(n: int) -> Group:
    """S_n acting on {1..n}; ``(p*q)(i) = p(q(i))``. Names use cycle notation."""
    if n < 1:
        raise InvalidOrder(f"symmetric group degree must be >= 1, got {n}")
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return group_from_table(table, index[tuple(range(n))], [_cycle_name(p) for p in perms])


def klein_four() -> Group:
    return group_from_table(
        [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]],
        0,
        ["1", "a", "b", "ab"],
    )


def parse_group_flag(text: str) -> Group:
    """Build a group from CLI notation: ``cyclic:n``, ``klein``, ``sym:n``."""
    kind, _, arg = text.partition(":")
    if kind == "cyclic":
        return cyclic_group(int(arg))
    if kind == "sym":
        return symmetric_group(int(arg))
    if kind == "klein":
        return klein_four()
    raise ValueError(f"unknown group notation {text!r}")
