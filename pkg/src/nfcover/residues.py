"""Digit expansions modulo prime powers and the CRT maps onto parallelotopes.

For a modulus ``I = prod p_j^{r_j}`` each residue ``a mod I`` has, at every
prime, a unique expansion ``a = sum_k B_j[g_k] * t_j^k (mod p_j^{r_j})`` with
digits ``g_k`` in ``range(N(p_j))``. Concatenating the digit vectors gives
``map_f``; collapsing each vector to a base-``N(p_j)`` integer, most
significant digit first, gives ``map_f_bar``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Sequence, Tuple

from . import lattice
from .errors import CapExceededError
from .ideal import (
    DEFAULT_CAP, Factorization, IdealLattice, PrimeIdeal, factor_ideal,
    ideal_power, reduce_mod, residues_mod,
)
from .number_field import Element, NumberField, elem_add, elem_mul, elem_pow

Point = Tuple[int, ...]


@dataclass(frozen=True)
class ResidueSystem:
    prime: PrimeIdeal
    reps: Tuple[Element, ...]
    _index: Dict[Element, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {r: i for i, r in enumerate(self.reps)})

    def index_of(self, a: Sequence[int]) -> int:
        """The digit assigned to the class of ``a`` mod the prime."""
        return self._index[reduce_mod(self.prime.ideal.field, a, self.prime.ideal)]


@dataclass(frozen=True)
class Uniformizer:
    prime: PrimeIdeal
    t: Element


@dataclass(frozen=True)
class DigitExpansion:
    prime: PrimeIdeal
    r: int
    digits: Tuple[int, ...]


def build_residue_system(F: NumberField, P: PrimeIdeal, cap: int = DEFAULT_CAP) -> ResidueSystem:
    """Canonical representatives of O_K/P; the zero class comes first."""
    reps = residues_mod(F, P.ideal, cap)
    reps.sort(key=lambda r: (any(r), r))
    return ResidueSystem(P, tuple(reps))


def find_uniformizer(F: NumberField, P: PrimeIdeal) -> Uniformizer:
    """First HNF row of P that does not lie in P^2."""
    P2 = ideal_power(P.ideal, 2)
    for row in P.ideal.hnf:
        if row not in P2:
            return Uniformizer(P, tuple(row))
    raise AssertionError("a prime ideal always differs from its square")


@dataclass
class _LocalData:
    prime: PrimeIdeal
    r: int
    power: IdealLattice
    residues: ResidueSystem
    uniformizer: Uniformizer
    to_digits: Dict[Element, Tuple[int, ...]]
    from_digits: Dict[Tuple[int, ...], Element]


class CrtContext:
    """Precomputed digit tables for every prime power dividing a modulus.

    Built once, then read-only. ``bounds`` is the box of ``map_f`` and
    ``bar_bounds`` the box of ``map_f_bar``.
    """

    def __init__(self, F: NumberField, modulus: IdealLattice, cap: int = DEFAULT_CAP,
                 factorization: Factorization = None, uniformizers: Dict = None):
        if modulus.norm > cap:
            raise CapExceededError(f"N(I) = {modulus.norm} exceeds the enumeration cap {cap}")
        self.field = F
        self.modulus = modulus
        self.cap = cap
        self.factorization = factorization or factor_ideal(modulus)
        self.local: List[_LocalData] = []
        self._points = None
        self._s_subsets = {}
        for P, r in self.factorization:
            B = build_residue_system(F, P, cap)
            if uniformizers and P in uniformizers:
                t = Uniformizer(P, tuple(uniformizers[P]))
                if t.t not in P.ideal or t.t in ideal_power(P.ideal, 2):
                    raise ValueError(f"{t.t} is not in P \\ P^2")
            else:
                t = find_uniformizer(F, P)
            power = ideal_power(P.ideal, r)
            t_powers = [elem_pow(F, t.t, k) for k in range(r)]
            to_digits, from_digits = {}, {}
            for digits in product(range(P.norm), repeat=r):
                value = F.zero()
                for k, g in enumerate(digits):
                    if g:
                        value = elem_add(F, value, elem_mul(F, B.reps[g], t_powers[k]))
                key = reduce_mod(F, value, power)
                to_digits[key] = digits
                from_digits[digits] = value
            if len(to_digits) != P.norm ** r:
                raise AssertionError("digit sums do not form a complete residue system")
            self.local.append(_LocalData(P, r, power, B, t, to_digits, from_digits))

    @property
    def exponents(self) -> Tuple[int, ...]:
        return tuple(loc.r for loc in self.local)

    @property
    def prime_norms(self) -> Tuple[int, ...]:
        return tuple(loc.prime.norm for loc in self.local)

    @property
    def bounds(self) -> Tuple[int, ...]:
        return tuple(loc.prime.norm for loc in self.local for _ in range(loc.r))

    @property
    def bar_bounds(self) -> Tuple[int, ...]:
        return tuple(loc.prime.norm ** loc.r for loc in self.local)

    def offsets(self) -> List[int]:
        """Start position of each prime's digit block inside a ``map_f`` point."""
        out, acc = [], 0
        for loc in self.local:
            out.append(acc)
            acc += loc.r
        return out

    def residues(self) -> List[Element]:
        return residues_mod(self.field, self.modulus, self.cap)

    def points(self) -> List[Tuple[Element, Point]]:
        """Every canonical residue mod I paired with its ``map_f`` image (cached)."""
        if self._points is None:
            self._points = [(x, map_f(self, x)) for x in self.residues()]
        return self._points


def digit_expand(ctx: CrtContext, a: Sequence[int], j: int) -> DigitExpansion:
    loc = ctx.local[j]
    key = reduce_mod(ctx.field, a, loc.power)
    try:
        digits = loc.to_digits[key]
    except KeyError:
        raise AssertionError(f"residue {key} missing from the digit table") from None
    return DigitExpansion(loc.prime, loc.r, digits)


def digit_reconstruct(ctx: CrtContext, d: DigitExpansion) -> Element:
    for loc in ctx.local:
        if loc.prime == d.prime:
            return loc.from_digits[tuple(d.digits)]
    raise ValueError("prime does not divide the context modulus")


def map_f(ctx: CrtContext, a: Sequence[int]) -> Point:
    out: Tuple[int, ...] = ()
    for loc in ctx.local:
        out += loc.to_digits[lattice.reduce_vector(loc.power.hnf, a)]
    return out


def digits_to_int(digits: Sequence[int], base: int) -> int:
    """Base-``base`` value with ``digits[0]`` the most significant digit."""
    value = 0
    for g in digits:
        value = value * base + g
    return value


def map_f_bar(ctx: CrtContext, a: Sequence[int]) -> Point:
    return tuple(
        digits_to_int(loc.to_digits[lattice.reduce_vector(loc.power.hnf, a)], loc.prime.norm)
        for loc in ctx.local
    )
