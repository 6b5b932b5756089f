"""Integer lattice helpers built on a lower-triangular row Hermite normal form.

A full-rank lattice in Z^n is stored as an n x n matrix ``H`` with
``H[i][j] == 0`` for ``j > i``, positive diagonal, and every entry below a
pivot reduced into ``[0, H[j][j])``. The fundamental domain of such a basis is
the box ``0 <= v[c] < H[c][c]``, which is what :func:`reduce_vector` returns.
"""
from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, List, Sequence, Tuple

Matrix = Tuple[Tuple[int, ...], ...]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hnf(rows: Iterable[Sequence[int]], ncols: int) -> Matrix:
    """Canonical lower-triangular HNF of the Z-span of ``rows``.

    Raises ValueError when the rows do not span a full-rank lattice.
    """
    work = [list(r) for r in rows if any(r)]
    for r in work:
        if len(r) != ncols:
            raise ValueError("row length does not match ncols")
    basis: List[List[int]] = [None] * ncols  # type: ignore[list-item]
    for c in reversed(range(ncols)):
        pivot = None
        rest = []
        for r in work:
            if r[c] == 0:
                rest.append(r)
                continue
            if pivot is None:
                pivot = r
                continue
            a, b = pivot[c], r[c]
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            new_pivot = [x * p + y * q for p, q in zip(pivot, r)]
            other = [ag * q - bg * p for p, q in zip(pivot, r)]
            pivot = new_pivot
            if any(other):
                rest.append(other)
        if pivot is None:
            raise ValueError("rows do not span a full-rank lattice")
        if pivot[c] < 0:
            pivot = [-v for v in pivot]
        basis[c] = pivot
        work = rest
    for k in range(ncols):
        row = basis[k]
        for c in reversed(range(k)):
            q = row[c] // basis[c][c]
            if q:
                bc = basis[c]
                for t in range(c + 1):
                    row[t] -= q * bc[t]
    return tuple(tuple(r) for r in basis)


def determinant(H: Matrix) -> int:
    d = 1
    for i, row in enumerate(H):
        d *= row[i]
    return d


def reduce_vector(H: Matrix, v: Sequence[int]) -> Tuple[int, ...]:
    """Canonical representative of ``v`` modulo the lattice of ``H``."""
    n = len(H)
    if n == 1:
        return (v[0] % H[0][0],)
    if n == 2:
        (a, _), (b, c) = H
        q = v[1] // c
        return ((v[0] - q * b) % a, v[1] - q * c)
    out = list(v)
    for c in reversed(range(len(H))):
        row = H[c]
        q = out[c] // row[c]
        if q:
            for t in range(c + 1):
                out[t] -= q * row[t]
    return tuple(out)


def contains(H: Matrix, v: Sequence[int]) -> bool:
    return not any(reduce_vector(H, v))


def coordinates(H: Matrix, v: Sequence[int]) -> Tuple[int, ...]:
    """Integer coefficients of ``v`` in the rows of ``H``; ValueError if ``v`` is outside."""
    out = list(v)
    coef = [0] * len(H)
    for c in reversed(range(len(H))):
        row = H[c]
        q, r = divmod(out[c], row[c])
        if r:
            raise ValueError("vector is not in the lattice")
        coef[c] = q
        for t in range(c + 1):
            out[t] -= q * row[t]
    return tuple(coef)


def combine(H: Matrix, coef: Sequence[int]) -> Tuple[int, ...]:
    n = len(H)
    out = [0] * n
    for c, row in zip(coef, H):
        if c:
            for t in range(n):
                out[t] += c * row[t]
    return tuple(out)


def box_points(H: Matrix) -> Iterator[Tuple[int, ...]]:
    """Points of the fundamental domain of ``H`` in lexicographic order."""
    return product(*(range(H[i][i]) for i in range(len(H))))


def quotient_representatives(outer: Matrix, inner: Matrix) -> List[Tuple[int, ...]]:
    """Representatives of ``outer / inner`` for sublattices ``inner`` of ``outer``.

    Each representative lies in ``outer``; zero comes first.
    """
    rel = hnf((coordinates(outer, row) for row in inner), len(outer))
    return [combine(outer, c) for c in box_points(rel)]


def intersect(A: Matrix, B: Matrix) -> Matrix:
    """HNF of the intersection of two full-rank lattices.

    The rows ``[a | a]`` and ``[0 | b]`` span a lattice whose elements with a
    zero right half are exactly ``(x, 0)`` with ``x`` in both lattices.
    """
    n = len(A)
    rows = [tuple(a) + tuple(a) for a in A] + [(0,) * n + tuple(b) for b in B]
    H = hnf(rows, 2 * n)
    return hnf((row[:n] for row in H[:n]), n)
