"""Generators of exact covering systems by refinement, plus simple perturbations."""
from __future__ import annotations

import random
from typing import Iterable, List, NamedTuple, Sequence

from . import lattice
from .covering import CongruenceClass, CoveringSystem
from .errors import CapExceededError
from .ideal import (
    DEFAULT_CAP, IdealLattice, PrimeIdeal, ideal_intersect, ideal_product,
    primes_above, residues_mod,
)
from .number_field import NumberField, elem_add


def trivial_system(F: NumberField, I: IdealLattice, cap: int = DEFAULT_CAP) -> CoveringSystem:
    """One class per residue of O_K/I."""
    if I.is_unit():
        raise ValueError("the unit ideal has no proper congruence classes")
    return CoveringSystem(tuple(CongruenceClass(x, I) for x in residues_mod(F, I, cap)))


def split_class(sys: CoveringSystem, i: int, P: PrimeIdeal, cap: int = DEFAULT_CAP) -> CoveringSystem:
    """Replace class i by its N(P) subclasses modulo ``I_i * P``."""
    if not 0 <= i < len(sys):
        raise IndexError(f"no class {i}")
    cls = sys.classes[i]
    finer = ideal_product(cls.modulus, P.ideal)
    if finer.norm > cap:
        raise CapExceededError(f"N(I_i P) = {finer.norm} exceeds cap {cap}")
    shifts = lattice.quotient_representatives(cls.modulus.hnf, finer.hnf)
    F = sys.field
    pieces = tuple(CongruenceClass(elem_add(F, cls.rep, s), finer) for s in shifts)
    return CoveringSystem(sys.classes[:i] + pieces + sys.classes[i + 1:])


def default_prime_pool(F: NumberField, rational_primes: Iterable[int] = (2, 3)) -> List[PrimeIdeal]:
    return [P for p in rational_primes for P in primes_above(F, p)]


class Construction(NamedTuple):
    system: CoveringSystem
    truncated: bool


def random_system(F: NumberField, seed: int, steps: int, prime_pool: Sequence[PrimeIdeal],
                  cap: int = DEFAULT_CAP, max_classes: int = None) -> Construction:
    """Seeded refinement of a trivial system.

    A split is only taken if the common modulus stays within ``cap`` and the
    class count within ``max_classes``; when no admissible split remains the
    generation stops early and ``truncated`` is set.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    rng = random.Random(seed)
    pool = list(prime_pool)
    start = pool[rng.randrange(len(pool))]
    sys = trivial_system(F, start.ideal, cap)
    for _ in range(steps):
        options = [(i, P) for i in range(len(sys)) for P in pool]
        rng.shuffle(options)
        for i, P in options:
            if max_classes is not None and len(sys) - 1 + P.norm > max_classes:
                continue
            finer = ideal_product(sys.classes[i].modulus, P.ideal)
            if ideal_intersect(sys.modulus, finer).norm > cap:
                continue
            sys = split_class(sys, i, P, cap)
            break
        else:
            return Construction(sys, True)
    return Construction(sys, False)


def drop_class(sys: CoveringSystem, i: int) -> CoveringSystem:
    return CoveringSystem(sys.classes[:i] + sys.classes[i + 1:])


def shift_class(sys: CoveringSystem, i: int, delta: Sequence[int]) -> CoveringSystem:
    """Move class i by ``delta``; when ``delta`` is outside ``I_i`` this breaks exactness."""
    cls = sys.classes[i]
    moved = CongruenceClass(elem_add(sys.field, cls.rep, delta), cls.modulus)
    return CoveringSystem(sys.classes[:i] + (moved,) + sys.classes[i + 1:])
