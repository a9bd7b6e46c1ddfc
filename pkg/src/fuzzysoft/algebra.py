"""Exact-arithmetic fuzzy soft sets over a finite universe and parameter set.

A fuzzy soft set assigns a membership grade to every (parameter, object)
pair.  Sets with a smaller carrier are stored zero-extended, so every set
over a signature has the same shape and the lattice operations are total.
Grades are :class:`fractions.Fraction` values in ``[0, 1]``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

Grade = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class FuzzySoftError(Exception):
    """Base class for errors raised by this package."""


class SignatureMismatch(FuzzySoftError):
    def __init__(self, dimension: str):
        super().__init__(f"signature mismatch in {dimension}")
        self.dimension = dimension


class GradeError(FuzzySoftError, ValueError):
    pass


class NotASubsetError(FuzzySoftError, ValueError):
    """A set exceeds the ambient set at some (parameter, object) pair."""

    def __init__(self, parameter: str, obj: str, grade: Fraction, bound: Fraction):
        super().__init__(
            f"grade {format_grade(grade)} at ({parameter}, {obj}) exceeds "
            f"ambient grade {format_grade(bound)}"
        )
        self.parameter = parameter
        self.obj = obj


def parse_grade(value: str | int | Fraction) -> Fraction:
    """Parse ``"0.2"``, ``"3/7"``, ``1`` or a Fraction into an exact grade."""
    if isinstance(value, bool):
        raise GradeError(f"not a grade: {value!r}")
    try:
        grade = Fraction(value.strip() if isinstance(value, str) else value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise GradeError(f"not a grade: {value!r}") from None
    if not ZERO <= grade <= ONE:
        raise GradeError(f"grade {value!r} outside [0, 1]")
    return grade


def format_grade(grade: Fraction) -> str:
    """Exact decimal string when the denominator divides a power of ten, else ``p/q``."""
    den = grade.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{grade.numerator}/{grade.denominator}"
    if grade.denominator == 1:
        return str(grade.numerator)
    places = max(twos, fives)
    scaled = grade.numerator * 10**places // grade.denominator
    whole, frac = divmod(scaled, 10**places)
    return f"{whole}.{str(frac).rjust(places, '0').rstrip('0')}"


class SpaceSignature:
    """Universe ``U``, parameter set ``E`` and the ambient set ``f_E``.

    ``ambient`` is given as grades in row-major (parameter, object) order or
    as a nested mapping ``{parameter: {object: grade}}``.
    """

    def __init__(
        self,
        universe: Sequence[str],
        parameters: Sequence[str],
        ambient: Sequence[Fraction] | Mapping[str, Mapping[str, object]] | None = None,
    ):
        universe = tuple(universe)
        parameters = tuple(parameters)
        for label, names in (("universe", universe), ("parameters", parameters)):
            if not names:
                raise FuzzySoftError(f"{label} must be nonempty")
            if len(set(names)) != len(names):
                raise FuzzySoftError(f"{label} contains duplicate names")
        self.universe = universe
        self.parameters = parameters
        size = len(universe) * len(parameters)
        if ambient is None:
            grades = (ONE,) * size
        elif isinstance(ambient, Mapping):
            grades = _grades_from_mapping(universe, parameters, ambient)
        else:
            grades = tuple(parse_grade(v) for v in ambient)
            if len(grades) != size:
                raise FuzzySoftError(f"ambient needs {size} grades, got {len(grades)}")
        self._ambient_grades = grades

    @property
    def size(self) -> int:
        return len(self._ambient_grades)

    def cells(self) -> Iterator[tuple[str, str]]:
        for e in self.parameters:
            for x in self.universe:
                yield e, x

    @cached_property
    def ambient(self) -> FuzzySoftSet:
        return FuzzySoftSet._raw(self, self._ambient_grades)

    @cached_property
    def phi(self) -> FuzzySoftSet:
        """The null fuzzy soft set Φ_E."""
        return FuzzySoftSet._raw(self, (ZERO,) * self.size)

    def mismatch(self, other: SpaceSignature) -> str | None:
        """Name of the first differing dimension, or None when equal."""
        if self is other:
            return None
        if self.universe != other.universe:
            return "universe"
        if self.parameters != other.parameters:
            return "parameters"
        if self._ambient_grades != other._ambient_grades:
            return "ambient"
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpaceSignature):
            return NotImplemented
        return self.mismatch(other) is None

    def __hash__(self) -> int:
        return hash((self.universe, self.parameters, self._ambient_grades))

    def __repr__(self) -> str:
        return f"SpaceSignature(universe={list(self.universe)}, parameters={list(self.parameters)})"

    def make(self, grades: Mapping[str, Mapping[str, object]] | Sequence[object]) -> FuzzySoftSet:
        """Build a subset of the ambient set; missing entries are zero."""
        if isinstance(grades, Mapping):
            values = _grades_from_mapping(self.universe, self.parameters, grades)
        else:
            values = tuple(parse_grade(v) for v in grades)
            if len(values) != self.size:
                raise FuzzySoftError(f"expected {self.size} grades, got {len(values)}")
        s = FuzzySoftSet._raw(self, values)
        s.require_subset()
        return s


def _grades_from_mapping(universe, parameters, mapping) -> tuple[Fraction, ...]:
    unknown = set(mapping) - set(parameters)
    if unknown:
        raise FuzzySoftError(f"unknown parameter {sorted(unknown)[0]!r}")
    out = []
    for e in parameters:
        row = mapping.get(e) or {}
        bad = set(row) - set(universe)
        if bad:
            raise FuzzySoftError(f"unknown object {sorted(bad)[0]!r} under {e!r}")
        out.extend(parse_grade(row.get(x, 0)) for x in universe)
    return tuple(out)


class FuzzySoftSet:
    """Immutable total map from (parameter, object) pairs to grades."""

    __slots__ = ("signature", "grades", "_hash")

    signature: SpaceSignature
    grades: tuple[Fraction, ...]

    def __init__(self, signature: SpaceSignature, grades: Iterable[object]):
        values = tuple(parse_grade(v) for v in grades)
        if len(values) != signature.size:
            raise FuzzySoftError(f"expected {signature.size} grades, got {len(values)}")
        self.signature = signature
        self.grades = values
        self._hash = None

    @classmethod
    def _raw(cls, signature: SpaceSignature, grades: tuple[Fraction, ...]) -> FuzzySoftSet:
        s = object.__new__(cls)
        s.signature = signature
        s.grades = grades
        s._hash = None
        return s

    def grade(self, parameter: str, obj: str) -> Fraction:
        sig = self.signature
        i = sig.parameters.index(parameter) * len(sig.universe) + sig.universe.index(obj)
        return self.grades[i]

    def row(self, parameter: str) -> tuple[Fraction, ...]:
        n = len(self.signature.universe)
        i = self.signature.parameters.index(parameter) * n
        return self.grades[i : i + n]

    def to_mapping(self) -> dict[str, dict[str, Fraction]]:
        n = len(self.signature.universe)
        return {
            e: dict(zip(self.signature.universe, self.grades[i * n : (i + 1) * n]))
            for i, e in enumerate(self.signature.parameters)
        }

    def support(self) -> tuple[str, ...]:
        """Parameters carrying a nonzero fuzzy set (the carrier A of g_A)."""
        n = len(self.signature.universe)
        return tuple(
            e
            for i, e in enumerate(self.signature.parameters)
            if any(self.grades[i * n : (i + 1) * n])
        )

    def is_subset_of_ambient(self) -> bool:
        return all(map(Fraction.__le__, self.grades, self.signature._ambient_grades))

    def require_subset(self) -> None:
        for (e, x), g, a in zip(self.signature.cells(), self.grades, self.signature._ambient_grades):
            if g > a:
                raise NotASubsetError(e, x, g, a)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FuzzySoftSet):
            return NotImplemented
        return self.grades == other.grades and self.signature.mismatch(other.signature) is None

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.grades)
        return self._hash

    def __le__(self, other: FuzzySoftSet) -> bool:
        return subset_leq(self, other)

    def __or__(self, other: FuzzySoftSet) -> FuzzySoftSet:
        return union(self, other)

    def __and__(self, other: FuzzySoftSet) -> FuzzySoftSet:
        return intersect(self, other)

    def __repr__(self) -> str:
        n = len(self.signature.universe)
        rows = []
        for i, e in enumerate(self.signature.parameters):
            row = self.grades[i * n : (i + 1) * n]
            rows.append(f"{e}:(" + ",".join(format_grade(g) for g in row) + ")")
        return "FuzzySoftSet(" + " ".join(rows) + ")"


def _check(g: FuzzySoftSet, k: FuzzySoftSet) -> None:
    if g.signature is not k.signature:
        dim = g.signature.mismatch(k.signature)
        if dim is not None:
            raise SignatureMismatch(dim)


def subset_leq(g: FuzzySoftSet, k: FuzzySoftSet) -> bool:
    """Pointwise ``g <= k``."""
    _check(g, k)
    return all(map(Fraction.__le__, g.grades, k.grades))


def union(g: FuzzySoftSet, k: FuzzySoftSet) -> FuzzySoftSet:
    _check(g, k)
    return FuzzySoftSet._raw(g.signature, tuple(map(max, g.grades, k.grades)))


def intersect(g: FuzzySoftSet, k: FuzzySoftSet) -> FuzzySoftSet:
    _check(g, k)
    return FuzzySoftSet._raw(g.signature, tuple(map(min, g.grades, k.grades)))


def union_all(sets: Iterable[FuzzySoftSet]) -> FuzzySoftSet:
    sets = list(sets)
    if not sets:
        raise FuzzySoftError("union_all of an empty list")
    for s in sets[1:]:
        _check(sets[0], s)
    if len(sets) == 1:
        return sets[0]
    return FuzzySoftSet._raw(sets[0].signature, tuple(map(max, *(s.grades for s in sets))))


def intersect_all(sets: Iterable[FuzzySoftSet]) -> FuzzySoftSet:
    sets = list(sets)
    if not sets:
        raise FuzzySoftError("intersect_all of an empty list")
    for s in sets[1:]:
        _check(sets[0], s)
    if len(sets) == 1:
        return sets[0]
    return FuzzySoftSet._raw(sets[0].signature, tuple(map(min, *(s.grades for s in sets))))


def complement(g: FuzzySoftSet) -> FuzzySoftSet:
    """Complement relative to the ambient set: ``ambient - g`` cell-wise."""
    g.require_subset()
    return FuzzySoftSet._raw(
        g.signature, tuple(map(Fraction.__sub__, g.signature._ambient_grades, g.grades))
    )


class FuzzySoftPoint:
    """A fuzzy soft set supported on one parameter with nonzero membership."""

    __slots__ = ("parameter", "membership")

    def __init__(self, parameter: str, membership: Sequence[object]):
        values = tuple(parse_grade(v) for v in membership)
        if not any(values):
            raise FuzzySoftError("a fuzzy soft point needs a nonzero membership")
        self.parameter = parameter
        self.membership = values

    def as_set(self, signature: SpaceSignature) -> FuzzySoftSet:
        n = len(signature.universe)
        if len(self.membership) != n:
            raise SignatureMismatch("universe")
        if self.parameter not in signature.parameters:
            raise SignatureMismatch("parameters")
        i = signature.parameters.index(self.parameter)
        grades = [ZERO] * signature.size
        grades[i * n : (i + 1) * n] = self.membership
        return FuzzySoftSet._raw(signature, tuple(grades))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FuzzySoftPoint):
            return NotImplemented
        return (self.parameter, self.membership) == (other.parameter, other.membership)

    def __hash__(self) -> int:
        return hash((self.parameter, self.membership))

    def __repr__(self) -> str:
        body = ",".join(format_grade(g) for g in self.membership)
        return f"FuzzySoftPoint({self.parameter}:({body}))"


def point_in(p: FuzzySoftPoint, h: FuzzySoftSet) -> bool:
    sig = h.signature
    if p.parameter not in sig.parameters:
        raise SignatureMismatch("parameters")
    if len(p.membership) != len(sig.universe):
        raise SignatureMismatch("universe")
    return all(map(Fraction.__le__, p.membership, h.row(p.parameter)))


def decompose_points(g: FuzzySoftSet) -> list[FuzzySoftPoint]:
    """One point per parameter whose slice of ``g`` is nonzero."""
    return [FuzzySoftPoint(e, g.row(e)) for e in g.support()]
