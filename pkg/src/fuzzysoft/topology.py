"""Finite fuzzy soft topologies: axiom validation, interior and closure."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .algebra import (
    FuzzySoftError,
    FuzzySoftSet,
    SpaceSignature,
    SignatureMismatch,
    complement,
    intersect,
    intersect_all,
    subset_leq,
    union,
    union_all,
)


class TopologyAxiomError(FuzzySoftError):
    def __init__(self, report: ValidationReport):
        first = report.violations[0]
        super().__init__(f"not a fuzzy soft topology: axiom {first.axiom} fails")
        self.report = report


@dataclass(frozen=True)
class Violation:
    """One failed axiom check.

    ``axiom`` is ``"i"`` (Φ_E or f_E missing), ``"ii"`` (a pairwise
    intersection is missing) or ``"iii"`` (a pairwise union is missing).
    ``witnesses`` holds the indices of the members involved and ``computed``
    the set that should have been a member.
    """

    axiom: str
    witnesses: tuple[int, ...]
    computed: FuzzySoftSet


@dataclass(frozen=True)
class ValidationReport:
    members: tuple[FuzzySoftSet, ...]
    violations: tuple[Violation, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.violations

    def failed_axioms(self) -> list[str]:
        return sorted({v.axiom for v in self.violations})


def _require_members(candidate: Iterable[FuzzySoftSet], signature: SpaceSignature) -> tuple[FuzzySoftSet, ...]:
    members = tuple(candidate)
    for m in members:
        dim = signature.mismatch(m.signature)
        if dim is not None:
            raise SignatureMismatch(dim)
        m.require_subset()
    return members


def validate(candidate: Iterable[FuzzySoftSet], signature: SpaceSignature) -> ValidationReport:
    """Check the topology axioms on an explicit finite family.

    Every pair of members (in the given order) is checked for its
    intersection and union; one violation is reported per missing result.
    Closure under binary operations is equivalent to closure under the
    arbitrary ones for a finite family.
    """
    members = _require_members(candidate, signature)
    present = set(members)
    violations: list[Violation] = []
    if signature.phi not in present:
        violations.append(Violation("i", (), signature.phi))
    if signature.ambient not in present:
        violations.append(Violation("i", (), signature.ambient))
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            meet = intersect(members[i], members[j])
            if meet not in present:
                violations.append(Violation("ii", (i, j), meet))
            join = union(members[i], members[j])
            if join not in present:
                violations.append(Violation("iii", (i, j), join))
    return ValidationReport(members, tuple(violations))


def canonical_order(sets: Iterable[FuzzySoftSet]) -> tuple[FuzzySoftSet, ...]:
    """Deduplicate by value and sort by grade tuple (lexicographic, row-major)."""
    return tuple(sorted(set(sets), key=lambda s: s.grades))


class FuzzySoftTopology:
    """An explicit finite family of open fuzzy soft sets.

    Members are deduplicated and kept in canonical order. With
    ``require_valid=False`` an invalid family is kept as given so it can be
    inspected; interior and closure are then computed over the members
    literally.
    """

    def __init__(
        self,
        signature: SpaceSignature,
        opens: Iterable[FuzzySoftSet],
        *,
        require_valid: bool = True,
    ):
        members = _require_members(opens, signature)
        self.signature = signature
        self.opens = canonical_order(members)
        self._open_set = frozenset(self.opens)
        if require_valid:
            report = self.validate()
            if not report.passed:
                raise TopologyAxiomError(report)

    def validate(self) -> ValidationReport:
        return validate(self.opens, self.signature)

    @cached_property
    def is_valid(self) -> bool:
        return self.validate().passed

    def __len__(self) -> int:
        return len(self.opens)

    def __iter__(self):
        return iter(self.opens)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FuzzySoftTopology):
            return NotImplemented
        return self.signature == other.signature and self._open_set == other._open_set

    def __hash__(self) -> int:
        return hash(self._open_set)

    def __repr__(self) -> str:
        return f"FuzzySoftTopology({len(self.opens)} opens over {self.signature!r})"

    def _check(self, g: FuzzySoftSet) -> None:
        if g.signature is not self.signature:
            dim = self.signature.mismatch(g.signature)
            if dim is not None:
                raise SignatureMismatch(dim)

    @cached_property
    def closed_family(self) -> tuple[FuzzySoftSet, ...]:
        return canonical_order(complement(h) for h in self.opens)

    @cached_property
    def _closed_set(self) -> frozenset[FuzzySoftSet]:
        return frozenset(self.closed_family)

    def is_open(self, g: FuzzySoftSet) -> bool:
        self._check(g)
        return g in self._open_set

    def is_closed(self, g: FuzzySoftSet) -> bool:
        self._check(g)
        return g in self._closed_set

    def interior(self, g: FuzzySoftSet) -> FuzzySoftSet:
        """Union of every open set contained in ``g``."""
        self._check(g)
        inside = [h for h in self.opens if subset_leq(h, g)]
        return union_all(inside) if inside else self.signature.phi

    def closure(self, g: FuzzySoftSet) -> FuzzySoftSet:
        """Intersection of every closed set containing ``g``."""
        self._check(g)
        around = [k for k in self.closed_family if subset_leq(g, k)]
        return intersect_all(around) if around else self.signature.ambient

    @cached_property
    def open_closures(self) -> dict[FuzzySoftSet, FuzzySoftSet]:
        return {h: self.closure(h) for h in self.opens}

    @cached_property
    def closed_interiors(self) -> dict[FuzzySoftSet, FuzzySoftSet]:
        return {k: self.interior(k) for k in self.closed_family}


def generate_from_subbasis(family: Sequence[FuzzySoftSet], signature: SpaceSignature) -> FuzzySoftTopology:
    """Smallest topology containing ``family``: add Φ_E and f_E, then close
    under binary intersection and union until nothing new appears."""
    members = set(_require_members(family, signature))
    members.update((signature.phi, signature.ambient))
    frontier = list(members)
    while frontier:
        fresh = []
        current = list(members)
        for a in frontier:
            for b in current:
                for c in (intersect(a, b), union(a, b)):
                    if c not in members:
                        members.add(c)
                        fresh.append(c)
        frontier = fresh
    return FuzzySoftTopology(signature, members, require_valid=False)
