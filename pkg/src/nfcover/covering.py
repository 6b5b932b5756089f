"""Covering systems of congruence classes in O_K and their cell partitions.

A system ``{a_i mod I_i}`` is exact when every element of O_K lies in exactly
one class. All classes are unions of classes modulo ``I = intersection of the
I_i``, so exactness is decided by enumerating O_K/I. Under the CRT digit map
of :mod:`nfcover.residues` each class becomes a cell of the parallelotope and
an exact system becomes a cell partition; the repetition bounds for moduli
are read off the prime exponents.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import FieldMismatchError, NotExactError
from .ideal import (
    DEFAULT_CAP, Factorization, IdealLattice, divides, factor_ideal,
    ideal_intersect, ideal_sum, reduce_mod, residues_mod, valuation,
)
from .lattice import quotient_representatives, reduce_vector
from .number_field import Element, NumberField, elem_add
from .residues import CrtContext, digit_expand


@dataclass(frozen=True)
class CongruenceClass:
    """The set ``rep + modulus``; ``rep`` is stored reduced."""

    rep: Element
    modulus: IdealLattice

    def __post_init__(self):
        if self.modulus.is_unit():
            raise ValueError("the modulus of a congruence class must be a proper ideal")
        object.__setattr__(self, "rep",
                           reduce_mod(self.modulus.field, tuple(self.rep), self.modulus))

    def __contains__(self, x) -> bool:
        return reduce_vector(self.modulus.hnf, x) == self.rep


@dataclass(frozen=True)
class CoveringSystem:
    classes: Tuple[CongruenceClass, ...]

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        if not self.classes:
            raise ValueError("a covering system needs at least one class")
        F = self.classes[0].modulus.field
        if any(c.modulus.field != F for c in self.classes):
            raise FieldMismatchError("classes belong to different fields")

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, i) -> CongruenceClass:
        return self.classes[i]

    @property
    def field(self) -> NumberField:
        return self.classes[0].modulus.field

    @property
    def moduli(self) -> List[IdealLattice]:
        return [c.modulus for c in self.classes]

    @cached_property
    def modulus(self) -> IdealLattice:
        """The common refinement ``I``, the intersection of all moduli."""
        return reduce(ideal_intersect, self.moduli)

    @cached_property
    def factorization(self) -> Factorization:
        return factor_ideal(self.modulus)

    @cached_property
    def exponents(self) -> Tuple[Tuple[int, ...], ...]:
        """``exponents[i][j]`` is the valuation of ``I_i`` at the j-th prime of ``I``."""
        cache: Dict[IdealLattice, Tuple[int, ...]] = {}
        out = []
        for M in self.moduli:
            if M not in cache:
                cache[M] = tuple(valuation(M, P) for P in self.factorization.primes)
            out.append(cache[M])
        return tuple(out)

    def density(self) -> Fraction:
        return sum((Fraction(1, M.norm) for M in self.moduli), Fraction(0))


# -- exactness ---------------------------------------------------------------

EXACT = "exact"
NOT_COVERING = "not_covering"
OVERLAP = "overlap"


@dataclass(frozen=True)
class Verdict:
    kind: str
    witness: Optional[Element] = None
    indices: Tuple[int, ...] = ()

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT

    def __str__(self) -> str:
        if self.kind == EXACT:
            return "Exact"
        if self.kind == NOT_COVERING:
            return f"NotCovering(witness={list(self.witness)})"
        return f"Overlap(witness={list(self.witness)}, classes={list(self.indices)})"


def _class_lookup(sys: CoveringSystem):
    groups: Dict[IdealLattice, Dict[Element, List[int]]] = {}
    for i, c in enumerate(sys.classes):
        groups.setdefault(c.modulus, {}).setdefault(c.rep, []).append(i)
    return [(M.hnf, reps) for M, reps in groups.items()]


def classes_containing(sys: CoveringSystem, x: Sequence[int], lookup=None) -> List[int]:
    lookup = lookup or _class_lookup(sys)
    hits: List[int] = []
    for hnf, reps in lookup:
        hits.extend(reps.get(reduce_vector(hnf, x), ()))
    return sorted(hits)


def verify_exact(sys: CoveringSystem, cap: int = DEFAULT_CAP) -> Verdict:
    """Brute-force exactness over O_K/I, reporting the first failing residue."""
    lookup = _class_lookup(sys)
    for x in residues_mod(sys.field, sys.modulus, cap):
        hits = []
        for hnf, reps in lookup:
            hits.extend(reps.get(reduce_vector(hnf, x), ()))
            if len(hits) > 1:
                break
        if not hits:
            return Verdict(NOT_COVERING, x)
        if len(hits) > 1:
            return Verdict(OVERLAP, x, tuple(classes_containing(sys, x, lookup)[:2]))
    return Verdict(EXACT)


def require_exact(sys: CoveringSystem, cap: int = DEFAULT_CAP) -> None:
    verdict = verify_exact(sys, cap)
    if not verdict.is_exact:
        raise NotExactError(verdict)


# -- cells -------------------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    """A sub-box of a parallelotope: ``None`` marks a free coordinate."""

    entries: Tuple[Optional[int], ...]
    bounds: Tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != len(self.bounds):
            raise ValueError("cell and parallelotope dimensions differ")
        for u, b in zip(self.entries, self.bounds):
            if u is not None and not 0 <= u < b:
                raise ValueError(f"fixed value {u} outside [0, {b})")

    @property
    def index_set(self) -> frozenset:
        """Free positions, 1-based."""
        return frozenset(i + 1 for i, u in enumerate(self.entries) if u is None)

    @property
    def size(self) -> int:
        out = 1
        for u, b in zip(self.entries, self.bounds):
            if u is None:
                out *= b
        return out

    def __contains__(self, point) -> bool:
        return all(u is None or u == x for u, x in zip(self.entries, point))

    def disjoint(self, other: "Cell") -> bool:
        return any(u is not None and v is not None and u != v
                   for u, v in zip(self.entries, other.entries))

    def pattern(self) -> str:
        return "(" + ", ".join("*" if u is None else str(u) for u in self.entries) + ")"


@dataclass(frozen=True)
class CellPartition:
    bounds: Tuple[int, ...]
    cells: Tuple[Cell, ...]

    def volume(self) -> int:
        out = 1
        for b in self.bounds:
            out *= b
        return out

    def is_partition(self) -> bool:
        """Pairwise disjoint and sizes summing to the whole box."""
        if sum(c.size for c in self.cells) != self.volume():
            return False
        cells = self.cells
        return all(cells[a].disjoint(cells[b])
                   for a in range(len(cells)) for b in range(a + 1, len(cells)))


def class_to_cell(ctx: CrtContext, cls: CongruenceClass) -> Cell:
    """Image of a class under ``map_f``: the leading digits at each prime are fixed."""
    if not divides(cls.modulus, ctx.modulus):
        raise ValueError("class modulus does not divide the context modulus")
    entries: List[Optional[int]] = []
    for j, loc in enumerate(ctx.local):
        depth = valuation(cls.modulus, loc.prime)
        digits = digit_expand(ctx, cls.rep, j).digits
        entries.extend(digits[k] if k < depth else None for k in range(loc.r))
    return Cell(tuple(entries), ctx.bounds)


def class_image(ctx: CrtContext, cls: CongruenceClass) -> set:
    """Enumerated image ``{map_f(x) : x in cls mod I}``; the oracle for :func:`class_to_cell`."""
    return {pt for x, pt in ctx.points() if x in cls}


def system_to_partition(ctx: CrtContext, sys: CoveringSystem, check: bool = True) -> CellPartition:
    if check:
        require_exact(sys, ctx.cap)
    return CellPartition(ctx.bounds, tuple(class_to_cell(ctx, c) for c in sys.classes))


def is_division_maximal(sys: CoveringSystem, i: int) -> bool:
    Ii = sys.classes[i].modulus
    return not any(M != Ii and divides(Ii, M) for M in sys.moduli)


def is_subset_minimal(partition: CellPartition, cell: Cell) -> bool:
    idx = cell.index_set
    return all(other.index_set == idx
               for other in partition.cells if other.index_set <= idx)


@dataclass(frozen=True)
class Lemma1Entry:
    cell: int
    index_set: frozenset
    b: int
    count: int

    @property
    def ok(self) -> bool:
        return self.count >= self.b


@dataclass(frozen=True)
class Lemma1Report:
    entries: Tuple[Lemma1Entry, ...]

    @property
    def violations(self) -> List[Lemma1Entry]:
        return [e for e in self.entries if not e.ok]


def check_lemma1(partition: CellPartition) -> Lemma1Report:
    """For each subset-minimal cell E, count cells sharing its index set.

    The count must be at least the smallest side length among the fixed
    coordinates of E.
    """
    if len(partition.cells) < 2:
        raise ValueError("needs a partition into at least two cells")
    entries = []
    for k, E in enumerate(partition.cells):
        if not is_subset_minimal(partition, E):
            continue
        idx = E.index_set
        b = min(partition.bounds[i] for i in range(len(partition.bounds)) if i + 1 not in idx)
        count = sum(1 for c in partition.cells if c.index_set == idx)
        entries.append(Lemma1Entry(k, idx, b, count))
    return Lemma1Report(tuple(entries))


# -- repetition bounds -------------------------------------------------------

class _AllEqual:
    """Marker for the Theorem-2 bound when every modulus is the same ideal."""

    def __repr__(self):
        return "ALL_EQUAL"

    def __str__(self):
        return "all-equal"


ALL_EQUAL = _AllEqual()


def repetition_count(sys: CoveringSystem, i: int) -> int:
    Ii = sys.classes[i].modulus
    return sum(1 for M in sys.moduli if M == Ii)


def theorem1_bound(sys: CoveringSystem, i: int) -> int:
    """Smallest norm of a prime dividing ``I_i``."""
    norms = [P.norm for P, e in zip(sys.factorization.primes, sys.exponents[i]) if e]
    return min(norms)


def theorem2_bound(sys: CoveringSystem, i: int):
    """``min G(I_i / (I_i + I_t))`` over moduli ``I_t != I_i``, or :data:`ALL_EQUAL`."""
    Ii = sys.classes[i].modulus
    norms = [P.norm for P in sys.factorization.primes]
    ei = sys.exponents[i]
    best = None
    seen = set()
    for t, M in enumerate(sys.moduli):
        if M == Ii or M in seen:
            continue
        seen.add(M)
        et = sys.exponents[t]
        g = max((n ** (a - min(a, b)) for n, a, b in zip(norms, ei, et)), default=1)
        best = g if best is None else min(best, g)
    return ALL_EQUAL if best is None else best


# -- the derived system ------------------------------------------------------

def s_subset(ctx: CrtContext, sub: IdealLattice) -> List[Element]:
    """Residues mod I whose digits at each prime vanish beyond the valuation of ``sub``.

    This is a complete residue system for O_K/``sub``.
    """
    depths = tuple(valuation(sub, loc.prime) for loc in ctx.local)
    cached = ctx._s_subsets.get(depths)
    if cached is not None:
        return cached
    offsets = ctx.offsets()
    out = []
    for x, point in ctx.points():
        if all(not any(point[off + s:off + loc.r])
               for off, s, loc in zip(offsets, depths, ctx.local)):
            out.append(x)
    ctx._s_subsets[depths] = out
    return out


def derived_system(sys: CoveringSystem, j: int, cap: int = DEFAULT_CAP,
                   ctx: CrtContext = None) -> CoveringSystem:
    """``{a_i mod (I_i + I_j) : class i meets S_{I_j}}`` for a division-maximal ``I_j``."""
    if not is_division_maximal(sys, j):
        raise ValueError(f"modulus of class {j} is not division maximal")
    ctx = ctx or CrtContext(sys.field, sys.modulus, cap, sys.factorization)
    Ij = sys.classes[j].modulus
    S = s_subset(ctx, Ij)
    lookup = _class_lookup(sys)
    members = sorted({i for x in S for i in classes_containing(sys, x, lookup)})
    return CoveringSystem(tuple(
        CongruenceClass(sys.classes[i].rep, ideal_sum(sys.classes[i].modulus, Ij))
        for i in members))


def check_s_subset_shifts(sys: CoveringSystem, j: int, cap: int = DEFAULT_CAP,
                          ctx: CrtContext = None) -> Dict[int, bool]:
    """``check_s_subset_shift`` for every class meeting S_{I_j}, keyed by class index."""
    ctx = ctx or CrtContext(sys.field, sys.modulus, cap, sys.factorization)
    F = sys.field
    Ij = sys.classes[j].modulus
    lookup = _class_lookup(sys)
    meets: Dict[int, set] = {}
    for s in s_subset(ctx, Ij):
        for i in classes_containing(sys, s, lookup):
            meets.setdefault(i, set()).add(reduce_vector(Ij.hnf, s))
    out = {}
    for i, meet in sorted(meets.items()):
        cls = sys.classes[i]
        shifts = quotient_representatives(cls.modulus.hnf, sys.modulus.hnf)
        out[i] = all(reduce_vector(Ij.hnf, elem_add(F, cls.rep, h)) in meet for h in shifts)
    return out


def check_s_subset_shift(sys: CoveringSystem, j: int, i: int, cap: int = DEFAULT_CAP,
                         ctx: CrtContext = None) -> bool:
    """Every residue of class i mod I is (an element of class i in S_{I_j}) + I_j."""
    results = check_s_subset_shifts(sys, j, cap, ctx)
    if i not in results:
        raise ValueError(f"class {i} does not meet S for class {j}")
    return results[i]


# -- reporting ---------------------------------------------------------------

def _factorization_json(fac: Factorization):
    return [{"p": P.residue_char, "f": P.residue_deg, "norm": P.norm,
             "hnf": [list(r) for r in P.ideal.hnf], "exponent": e} for P, e in fac]


def analyze(sys: CoveringSystem, cap: int = DEFAULT_CAP) -> dict:
    """Full report for an exact system as a JSON-ready dict."""
    require_exact(sys, cap)
    ctx = CrtContext(sys.field, sys.modulus, cap, sys.factorization)
    partition = system_to_partition(ctx, sys, check=False)
    lemma1 = check_lemma1(partition) if len(sys) >= 2 else Lemma1Report(())
    classes = []
    violations = 0
    for i, c in enumerate(sys.classes):
        dm = is_division_maximal(sys, i)
        count = repetition_count(sys, i)
        t1 = theorem1_bound(sys, i)
        t2 = theorem2_bound(sys, i)
        t1_ok = (not dm) or count >= t1
        t2_ok = t2 is ALL_EQUAL or count >= t2
        violations += (not t1_ok) + (not t2_ok)
        cell = partition.cells[i]
        classes.append({
            "index": i,
            "rep": list(c.rep),
            "modulus_hnf": [list(r) for r in c.modulus.hnf],
            "norm": c.modulus.norm,
            "factorization": _factorization_json(factor_ideal(c.modulus)),
            "division_maximal": dm,
            "repetition_count": count,
            "theorem1_bound": t1,
            "theorem2_bound": t2 if t2 is not ALL_EQUAL else str(ALL_EQUAL),
            "theorem1_satisfied": t1_ok,
            "theorem2_satisfied": t2_ok,
            "cell": list(cell.entries),
            "index_set": sorted(cell.index_set),
            "subset_minimal": is_subset_minimal(partition, cell),
        })
    lemma1_json = [{"cell": e.cell, "index_set": sorted(e.index_set), "b": e.b,
                    "count": e.count, "ok": e.ok} for e in lemma1.entries]
    violations += len(lemma1.violations)
    return {
        "field": sys.field.name,
        "modulus": {"hnf": [list(r) for r in sys.modulus.hnf], "norm": sys.modulus.norm,
                    "factorization": _factorization_json(sys.factorization)},
        "parallelotope": list(ctx.bounds),
        "bar_parallelotope": list(ctx.bar_bounds),
        "classes": classes,
        "lemma1": lemma1_json,
        "is_partition": partition.is_partition(),
        "violations": violations,
    }
