"""Nonzero ideals of O_K as full-rank HNF sublattices.

Ideal equality is matrix equality of the canonical HNF, so ideals can be used
as dictionary keys when counting repeated moduli.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from . import lattice
from .errors import CapExceededError, FieldMismatchError, UnsupportedPrimeError
from .number_field import Element, NumberField, elem_mul, elem_pow

DEFAULT_CAP = 100_000
TRIAL_DIVISION_BOUND = 10**6


@dataclass(frozen=True)
class IdealLattice:
    field: NumberField
    hnf: lattice.Matrix

    @property
    def norm(self) -> int:
        return lattice.determinant(self.hnf)

    def is_unit(self) -> bool:
        return self.norm == 1

    def __contains__(self, a) -> bool:
        return lattice.contains(self.hnf, a)

    def __mul__(self, other: "IdealLattice") -> "IdealLattice":
        return ideal_product(self, other)

    def __add__(self, other: "IdealLattice") -> "IdealLattice":
        return ideal_sum(self, other)

    def __and__(self, other: "IdealLattice") -> "IdealLattice":
        return ideal_intersect(self, other)

    def __pow__(self, e: int) -> "IdealLattice":
        return ideal_power(self, e)

    def __repr__(self) -> str:
        return f"IdealLattice(norm={self.norm}, hnf={[list(r) for r in self.hnf]})"


@dataclass(frozen=True)
class PrimeIdeal:
    ideal: IdealLattice
    residue_char: int
    residue_deg: int

    @property
    def norm(self) -> int:
        return self.residue_char ** self.residue_deg

    def sort_key(self):
        return (self.residue_char, self.ideal.hnf)


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition, canonically ordered by :meth:`PrimeIdeal.sort_key`."""

    factors: Tuple[Tuple[PrimeIdeal, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    @property
    def primes(self) -> Tuple[PrimeIdeal, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def exponents(self) -> Tuple[int, ...]:
        return tuple(e for _, e in self.factors)


def _same_field(I: IdealLattice, J: IdealLattice) -> None:
    if I.field != J.field:
        raise FieldMismatchError("ideals belong to different fields")


def ideal_from_generators(F: NumberField, gens: Iterable[Sequence[int]]) -> IdealLattice:
    """The ideal generated by ``gens`` as an O_K-module."""
    gens = [tuple(g) for g in gens]
    for g in gens:
        if len(g) != F.degree:
            raise FieldMismatchError("generator has the wrong dimension")
    if not gens or not any(any(g) for g in gens):
        raise ValueError("the zero ideal is not allowed")
    basis = [F.basis_element(b) for b in range(F.degree)]
    rows = [elem_mul(F, g, w) for g in gens if any(g) for w in basis]
    return IdealLattice(F, lattice.hnf(rows, F.degree))


def unit_ideal(F: NumberField) -> IdealLattice:
    return ideal_from_generators(F, [F.one()])


def principal(F: NumberField, a: Sequence[int]) -> IdealLattice:
    return ideal_from_generators(F, [a])


def ideal_norm(I: IdealLattice) -> int:
    return I.norm


def ideal_sum(I: IdealLattice, J: IdealLattice) -> IdealLattice:
    _same_field(I, J)
    return IdealLattice(I.field, lattice.hnf(I.hnf + J.hnf, I.field.degree))


def ideal_product(I: IdealLattice, J: IdealLattice) -> IdealLattice:
    _same_field(I, J)
    F = I.field
    rows = [elem_mul(F, a, b) for a in I.hnf for b in J.hnf]
    return IdealLattice(F, lattice.hnf(rows, F.degree))


def ideal_intersect(I: IdealLattice, J: IdealLattice) -> IdealLattice:
    _same_field(I, J)
    return IdealLattice(I.field, lattice.intersect(I.hnf, J.hnf))


def ideal_power(I: IdealLattice, e: int) -> IdealLattice:
    if e < 0:
        raise ValueError("negative exponent")
    result = unit_ideal(I.field)
    for _ in range(e):
        result = ideal_product(result, I)
    return result


def divides(I: IdealLattice, J: IdealLattice) -> bool:
    """True iff I | J, i.e. J is contained in I."""
    _same_field(I, J)
    return all(lattice.contains(I.hnf, row) for row in J.hnf)


def reduce_mod(F: NumberField, a: Sequence[int], I: IdealLattice) -> Element:
    if len(a) != F.degree or I.field != F:
        raise FieldMismatchError("element or ideal does not match the field")
    return lattice.reduce_vector(I.hnf, a)


def residues_mod(F: NumberField, I: IdealLattice, cap: int = DEFAULT_CAP) -> List[Element]:
    """Canonical complete residue system of O_K/I, zero first, lexicographic."""
    if I.field != F:
        raise FieldMismatchError("ideal does not belong to this field")
    if I.norm > cap:
        raise CapExceededError(f"N(I) = {I.norm} exceeds the enumeration cap {cap}")
    return list(lattice.box_points(I.hnf))


# -- prime decomposition -----------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def _power_basis_generator(F: NumberField):
    """Return the monic minimal relation of ``w_1`` if the basis is ``1, w, ..., w^(n-1)``."""
    n = F.degree
    theta = F.basis_element(1)
    for k in range(2, n):
        if elem_pow(F, theta, k) != F.basis_element(k):
            return None
    top = elem_pow(F, theta, n)
    # theta^n = sum c_k theta^k  ->  x^n - sum c_k x^k
    return [1] + [-top[k] for k in reversed(range(n))]


def _poly_eval(F: NumberField, coeffs_high_first: Sequence[int]) -> Element:
    """Evaluate an integer polynomial at ``w_1`` by Horner's rule."""
    theta = F.basis_element(1)
    acc = F.zero()
    for c in coeffs_high_first:
        acc = elem_mul(F, acc, theta)
        acc = tuple(a + (c if i == 0 else 0) for i, a in enumerate(acc))
    return acc


def _factor_mod_p(min_poly: Sequence[int], p: int):
    """Monic irreducible factors of ``min_poly`` over F_p with multiplicities."""
    n = len(min_poly) - 1
    if n == 2:
        roots = [x for x in range(p) if (x * x + min_poly[1] * x + min_poly[2]) % p == 0]
        if not roots:
            return [(list(min_poly), 1)]
        if len(roots) == 1:
            return [([1, -roots[0]], 2)]
        return [([1, -r], 1) for r in roots]
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(min_poly), x, modulus=p)
    _, factors = poly.factor_list()
    out = []
    for fac, e in factors:
        coeffs = [int(c) % p for c in fac.all_coeffs()]
        out.append((coeffs, e))
    return out


def _dedekind_p_maximal(min_poly, factors, p) -> bool:
    """Dedekind's criterion: is Z[w] maximal at p for this minimal polynomial?"""
    import sympy

    x = sympy.Symbol("x")
    f = sympy.Poly(list(min_poly), x)
    g = sympy.Poly(1, x)
    h = sympy.Poly(1, x)
    prod_all = sympy.Poly(1, x)
    for coeffs, e in factors:
        fac = sympy.Poly(coeffs, x)
        g *= fac
        h *= fac ** (e - 1)
        prod_all *= fac ** e
    diff = f - prod_all
    Fq = sympy.Poly([c // p for c in diff.all_coeffs()], x)
    if any(c % p for c in diff.all_coeffs()):
        return False
    common = sympy.gcd(sympy.Poly(Fq.all_coeffs(), x, modulus=p),
                       sympy.Poly(g.all_coeffs(), x, modulus=p))
    common = sympy.gcd(common, sympy.Poly(h.all_coeffs(), x, modulus=p))
    return common.degree() == 0


@functools.lru_cache(maxsize=None)
def decompose_prime(F: NumberField, p: int) -> Tuple[Tuple[PrimeIdeal, int], ...]:
    """Primes above the rational prime ``p`` with their ramification exponents.

    Uses the factorization of the minimal polynomial of ``w_1`` mod p, which
    is valid whenever O_K = Z[w_1] locally at p. For the shipped quadratic
    fields this always holds; other tables are checked with Dedekind's
    criterion and rejected with :class:`UnsupportedPrimeError` when it fails.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if F.degree == 1:
        P = principal(F, (p,))
        return ((PrimeIdeal(P, p, 1), 1),)
    min_poly = _power_basis_generator(F)
    if min_poly is None:
        raise UnsupportedPrimeError("integral basis is not a power basis")
    factors = _factor_mod_p(min_poly, p)
    if F.degree > 2 and not _dedekind_p_maximal(min_poly, factors, p):
        raise UnsupportedPrimeError(f"Z[w] is not maximal at {p}; cannot certify")
    out = []
    for coeffs, e in factors:
        gen = _poly_eval(F, coeffs)
        P = ideal_from_generators(F, [F.from_int(p), gen])
        f = len(coeffs) - 1
        if P.norm != p ** f:
            raise UnsupportedPrimeError(f"unexpected norm {P.norm} for a prime above {p}")
        out.append((PrimeIdeal(P, p, f), e))
    out.sort(key=lambda pe: pe[0].sort_key())
    recon = unit_ideal(F)
    for P, e in out:
        recon = ideal_product(recon, ideal_power(P.ideal, e))
    if recon != principal(F, F.from_int(p)):
        raise UnsupportedPrimeError(f"decomposition of ({p}) failed to reconstruct")
    return tuple(out)


def primes_above(F: NumberField, p: int) -> List[PrimeIdeal]:
    return [P for P, _ in decompose_prime(F, p)]


def _rational_prime_factors(n: int, bound: int = TRIAL_DIVISION_BOUND) -> List[int]:
    out = []
    k = 2
    while k * k <= n and k <= bound:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        if k * k <= n:
            raise CapExceededError(f"cofactor {n} not resolved by trial division to {bound}")
        out.append(n)
    return out


def valuation(I: IdealLattice, P: PrimeIdeal) -> int:
    """Largest e with P^e | I."""
    _same_field(I, P.ideal)
    if I.norm % P.residue_char:
        return 0
    e = 0
    power = P.ideal
    while power.norm <= I.norm and divides(power, I):
        e += 1
        power = ideal_product(power, P.ideal)
    return e


def factor_ideal(I: IdealLattice) -> Factorization:
    F = I.field
    factors = []
    for p in _rational_prime_factors(I.norm):
        for P in primes_above(F, p):
            e = valuation(I, P)
            if e:
                factors.append((P, e))
    factors.sort(key=lambda pe: pe[0].sort_key())
    return Factorization(tuple(factors))


def from_factorization(F: NumberField, fac: Iterable[Tuple[PrimeIdeal, int]]) -> IdealLattice:
    result = unit_ideal(F)
    for P, e in fac:
        result = ideal_product(result, ideal_power(P.ideal, e))
    return result


def big_G(I: IdealLattice) -> int:
    """Largest norm of a prime power dividing I; 1 for the unit ideal."""
    return max((P.norm ** e for P, e in factor_ideal(I)), default=1)


def ideal_quotient_by_valuations(I: IdealLattice, J: IdealLattice) -> List[Tuple[PrimeIdeal, int]]:
    """Prime-power data of I / (I + J) via v(I) - min(v(I), v(J))."""
    out = []
    for P, e in factor_ideal(I):
        d = e - min(e, valuation(J, P))
        if d:
            out.append((P, d))
    return out
