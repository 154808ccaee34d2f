"""Dense exact linear algebra on small matrices.

A matrix is a tuple of row tuples of field elements. An ``r x 0`` or
``0 x c`` matrix is still meaningful (hom spaces may be zero), so shapes are
carried explicitly where rows alone cannot determine them.
"""

from __future__ import annotations

from typing import Sequence

from .scalars import Field, Scalar

Matrix = tuple  # tuple[tuple[Scalar, ...], ...]


def zeros(field: Field, rows: int, cols: int) -> Matrix:
    z = field.zero
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def identity(field: Field, n: int) -> Matrix:
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )


def as_matrix(field: Field, rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(field(x) for x in row) for row in rows)


def column(m: Matrix, j: int) -> tuple:
    return tuple(row[j] for row in m)


def matmul(field: Field, a: Matrix, b: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    """Product ``a @ b``; ``inner``/``cols`` are needed only for empty shapes."""
    if cols is None:
        cols = len(b[0]) if b else 0
    if inner is None:
        inner = len(b)
    z = field.zero
    out = []
    for row in a:
        acc = [z] * cols
        for k in range(inner):
            c = row[k]
            if c:
                brow = b[k]
                for j in range(cols):
                    if brow[j]:
                        acc[j] = acc[j] + c * brow[j]
        out.append(tuple(acc))
    return tuple(out)


def matvec(field: Field, a: Matrix, v: Sequence[Scalar]) -> tuple:
    z = field.zero
    out = []
    for row in a:
        acc = z
        for c, x in zip(row, v):
            if c and x:
                acc = acc + c * x
        out.append(acc)
    return tuple(out)


def rank(field: Field, m: Matrix) -> int:
    rows = [list(r) for r in m]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def is_invertible(field: Field, m: Matrix, n: int | None = None) -> bool:
    """Square and full rank. ``n`` gives the size when ``m`` is empty."""
    size = len(m)
    if n is not None and size != n:
        return False
    if any(len(row) != size for row in m):
        return False
    return rank(field, m) == size


def inverse(field: Field, m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + list(e) for row, e in zip(m, identity(field, n))]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c]), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = field.inv(aug[c][c])
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def is_identity(m: Matrix) -> bool:
    return all(
        (x == 1 if i == j else x == 0) for i, row in enumerate(m) for j, x in enumerate(row)
    ) and all(len(row) == len(m) for row in m)


def is_permutation_matrix(m: Matrix) -> bool:
    """Square 0/1 matrix with exactly one 1 in each row and column."""
    n = len(m)
    if any(len(row) != n for row in m):
        return False
    seen = set()
    for row in m:
        ones = [j for j, x in enumerate(row) if x != 0]
        if len(ones) != 1 or row[ones[0]] != 1 or ones[0] in seen:
            return False
        seen.add(ones[0])
    return True
