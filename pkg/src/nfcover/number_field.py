"""Rings of integers given by an integral basis and a multiplication table.

Elements are plain tuples of integers holding coordinates in the integral
basis. Basis element 0 is always the identity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence, Tuple

from .errors import FieldMismatchError

Element = Tuple[int, ...]


@dataclass(frozen=True)
class NumberField:
    """The ring of integers of a number field, presented by structure constants.

    ``mult_table[a][b]`` is the coordinate vector of ``w_a * w_b``.
    """

    degree: int
    basis_labels: Tuple[str, ...]
    mult_table: Tuple[Tuple[Element, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.degree
        if n < 1:
            raise ValueError("degree must be positive")
        if len(self.basis_labels) != n or len(self.mult_table) != n:
            raise ValueError("basis labels and table must have length degree")
        for row in self.mult_table:
            if len(row) != n or any(len(v) != n for v in row):
                raise ValueError("multiplication table has wrong shape")

    def zero(self) -> Element:
        return (0,) * self.degree

    def one(self) -> Element:
        return (1,) + (0,) * (self.degree - 1)

    def from_int(self, k: int) -> Element:
        return (k,) + (0,) * (self.degree - 1)

    def basis_element(self, b: int) -> Element:
        return tuple(1 if i == b else 0 for i in range(self.degree))

    def format(self, a: Sequence[int]) -> str:
        """Human-readable rendering such as ``1 + 2*w``."""
        terms = []
        for c, label in zip(a, self.basis_labels):
            if c == 0:
                continue
            if label == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(label)
            elif c == -1:
                terms.append("-" + label)
            else:
                terms.append(f"{c}*{label}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def make_rationals() -> NumberField:
    """The rational integers as a degree-1 field."""
    return NumberField(1, ("1",), (((1,),),), name="Q")


def _is_squarefree(d: int) -> bool:
    m = abs(d)
    k = 2
    while k * k <= m:
        if m % (k * k) == 0:
            return False
        k += 1
    return True


def make_quadratic_field(d: int) -> NumberField:
    """Ring of integers of Q(sqrt(d)) with its standard integral basis {1, w}.

    ``w = sqrt(d)`` when d = 2, 3 mod 4, and ``w = (1 + sqrt(d))/2`` when
    d = 1 mod 4.
    """
    if d in (0, 1) or not _is_squarefree(d):
        raise ValueError(f"d must be squarefree and not 0 or 1, got {d}")
    w_sq = ((d - 1) // 4, 1) if d % 4 == 1 else (d, 0)
    table = (((1, 0), (0, 1)), ((0, 1), w_sq))
    return NumberField(2, ("1", "w"), table, name=f"Q(sqrt({d}))")


def make_field_from_table(labels: Sequence[str], table) -> NumberField:
    """Build a field from an explicit table and check the ring axioms."""
    n = len(labels)
    F = NumberField(
        n, tuple(labels),
        tuple(tuple(tuple(int(c) for c in v) for v in row) for row in table),
        name="table",
    )
    check_ring_axioms(F)
    return F


def check_ring_axioms(F: NumberField) -> None:
    """Raise ValueError unless the table has identity, commutativity and associativity."""
    n = F.degree
    for b in range(n):
        if F.mult_table[0][b] != F.basis_element(b):
            raise ValueError("basis element 0 is not the identity")
    for a, b in product(range(n), repeat=2):
        if F.mult_table[a][b] != F.mult_table[b][a]:
            raise ValueError(f"table is not symmetric at ({a}, {b})")
    for a, b, c in product(range(n), repeat=3):
        wa, wb, wc = F.basis_element(a), F.basis_element(b), F.basis_element(c)
        if elem_mul(F, elem_mul(F, wa, wb), wc) != elem_mul(F, wa, elem_mul(F, wb, wc)):
            raise ValueError(f"table is not associative at ({a}, {b}, {c})")


def _check(F: NumberField, *elems) -> None:
    for e in elems:
        if len(e) != F.degree:
            raise FieldMismatchError(
                f"element of length {len(e)} in a degree-{F.degree} field")


def elem_add(F: NumberField, a: Sequence[int], b: Sequence[int]) -> Element:
    _check(F, a, b)
    return tuple(x + y for x, y in zip(a, b))


def elem_sub(F: NumberField, a: Sequence[int], b: Sequence[int]) -> Element:
    _check(F, a, b)
    return tuple(x - y for x, y in zip(a, b))


def elem_neg(F: NumberField, a: Sequence[int]) -> Element:
    _check(F, a)
    return tuple(-x for x in a)


def elem_mul(F: NumberField, a: Sequence[int], b: Sequence[int]) -> Element:
    _check(F, a, b)
    n = F.degree
    out = [0] * n
    table = F.mult_table
    for i, x in enumerate(a):
        if x == 0:
            continue
        row = table[i]
        for j, y in enumerate(b):
            if y == 0:
                continue
            xy = x * y
            for k, c in enumerate(row[j]):
                if c:
                    out[k] += xy * c
    return tuple(out)


def elem_pow(F: NumberField, a: Sequence[int], e: int) -> Element:
    if e < 0:
        raise ValueError("negative exponent")
    result = F.one()
    base = tuple(a)
    while e:
        if e & 1:
            result = elem_mul(F, result, base)
        base = elem_mul(F, base, base)
        e >>= 1
    return result
