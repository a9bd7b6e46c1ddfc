"""Semiopen and semiclosed fuzzy soft sets, semi-interior and semi-closure.

Every classification is available through two independent routes:

* the *definition* route scans the topology for a witness, an open ``h``
  with ``h <= g <= cl(h)`` (semiopen) or a closed ``k`` with
  ``int(k) <= g <= k`` (semiclosed);
* the *characterization* route evaluates ``g <= cl(int(g))`` or
  ``int(cl(g)) <= g`` directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    FuzzySoftError,
    FuzzySoftSet,
    complement,
    decompose_points,
    intersect,
    intersect_all,
    point_in,
    subset_leq,
    union,
    union_all,
)
from .topology import FuzzySoftTopology


class ContractError(FuzzySoftError):
    """A precondition of a checked theorem does not hold."""


def is_semiopen_def(tau: FuzzySoftTopology, g: FuzzySoftSet) -> tuple[bool, FuzzySoftSet | None]:
    """Scan opens from the largest canonical member down for a witness."""
    tau._check(g)
    for h, cl_h in reversed(tau.open_closures.items()):
        if subset_leq(h, g) and subset_leq(g, cl_h):
            return True, h
    return False, None


def is_semiclosed_def(tau: FuzzySoftTopology, g: FuzzySoftSet) -> tuple[bool, FuzzySoftSet | None]:
    """Scan closed sets from the smallest canonical member up for a witness."""
    tau._check(g)
    for k, int_k in tau.closed_interiors.items():
        if subset_leq(int_k, g) and subset_leq(g, k):
            return True, k
    return False, None


def is_semiopen_char(tau: FuzzySoftTopology, g: FuzzySoftSet) -> bool:
    return subset_leq(g, tau.closure(tau.interior(g)))


def is_semiclosed_char(tau: FuzzySoftTopology, g: FuzzySoftSet) -> bool:
    return subset_leq(tau.interior(tau.closure(g)), g)


def is_semiopen(tau: FuzzySoftTopology, g: FuzzySoftSet) -> bool:
    return is_semiopen_char(tau, g)


def is_semiclosed(tau: FuzzySoftTopology, g: FuzzySoftSet) -> bool:
    return is_semiclosed_char(tau, g)


def fssint(tau: FuzzySoftTopology, g: FuzzySoftSet) -> FuzzySoftSet:
    """Largest semiopen subset: ``g ∧ cl(int(g))``."""
    return intersect(g, tau.closure(tau.interior(g)))


def fsscl(tau: FuzzySoftTopology, g: FuzzySoftSet) -> FuzzySoftSet:
    """Smallest semiclosed superset: ``g ∨ int(cl(g))``."""
    return union(g, tau.interior(tau.closure(g)))


@dataclass(frozen=True)
class ClassificationReport:
    subject: FuzzySoftSet
    semiopen_def: bool
    semiopen_witness: FuzzySoftSet | None
    semiopen_char: bool
    semiclosed_def: bool
    semiclosed_witness: FuzzySoftSet | None
    semiclosed_char: bool
    is_open: bool
    is_closed: bool
    interior: FuzzySoftSet
    closure: FuzzySoftSet
    closure_of_interior: FuzzySoftSet
    interior_of_closure: FuzzySoftSet

    @property
    def routes_agree(self) -> bool:
        return self.semiopen_def == self.semiopen_char and self.semiclosed_def == self.semiclosed_char


def classify(tau: FuzzySoftTopology, g: FuzzySoftSet) -> ClassificationReport:
    so, so_w = is_semiopen_def(tau, g)
    sc, sc_w = is_semiclosed_def(tau, g)
    int_g = tau.interior(g)
    cl_g = tau.closure(g)
    return ClassificationReport(
        subject=g,
        semiopen_def=so,
        semiopen_witness=so_w,
        semiopen_char=is_semiopen_char(tau, g),
        semiclosed_def=sc,
        semiclosed_witness=sc_w,
        semiclosed_char=is_semiclosed_char(tau, g),
        is_open=tau.is_open(g),
        is_closed=tau.is_closed(g),
        interior=int_g,
        closure=cl_g,
        closure_of_interior=tau.closure(int_g),
        interior_of_closure=tau.interior(cl_g),
    )


@dataclass(frozen=True)
class EquivalenceReport:
    semiclosed: bool
    int_cl_below: bool
    cl_int_complement_above: bool
    complement_semiopen: bool

    def as_tuple(self) -> tuple[bool, bool, bool, bool]:
        return (self.semiclosed, self.int_cl_below, self.cl_int_complement_above, self.complement_semiopen)

    @property
    def agree(self) -> bool:
        return len(set(self.as_tuple())) == 1


def equivalence_report(tau: FuzzySoftTopology, g: FuzzySoftSet) -> EquivalenceReport:
    gc = complement(g)
    return EquivalenceReport(
        semiclosed=is_semiclosed_def(tau, g)[0],
        int_cl_below=subset_leq(tau.interior(tau.closure(g)), g),
        cl_int_complement_above=subset_leq(gc, tau.closure(tau.interior(gc))),
        complement_semiopen=is_semiopen_def(tau, gc)[0],
    )


def sandwich_check(tau: FuzzySoftTopology, g: FuzzySoftSet, k: FuzzySoftSet, *, kind: str = "semiopen") -> bool:
    """Semiopen form: ``g`` semiopen and ``g <= k <= cl(g)`` imply ``k`` semiopen.
    Semiclosed form: ``g`` semiclosed and ``int(g) <= k <= g`` imply ``k`` semiclosed.
    """
    if kind == "semiopen":
        if not is_semiopen(tau, g):
            raise ContractError("lower set is not semiopen")
        if not subset_leq(g, k):
            raise ContractError("g <= k fails")
        if not subset_leq(k, tau.closure(g)):
            raise ContractError("k <= cl(g) fails")
        return is_semiopen(tau, k)
    if kind == "semiclosed":
        if not is_semiclosed(tau, g):
            raise ContractError("upper set is not semiclosed")
        if not subset_leq(k, g):
            raise ContractError("k <= m fails")
        if not subset_leq(tau.interior(g), k):
            raise ContractError("int(m) <= k fails")
        return is_semiclosed(tau, k)
    raise ValueError(f"unknown sandwich kind {kind!r}")


def point_characterization_check(tau: FuzzySoftTopology, g: FuzzySoftSet) -> bool:
    """``g`` is semiopen iff each of its points lies in a semiopen subset of ``g``.

    Each point's semiopen neighbour inside ``g`` is taken as the semiopen
    interior of ``g`` (the largest candidate); the right-hand side holds
    exactly when every point fits in it, and then the union of those
    neighbours is checked to be semiopen and equal to ``g``.
    """
    points = decompose_points(g)
    lhs = is_semiopen(tau, g)
    core = fssint(tau, g)
    found = [core for p in points if point_in(p, core)]
    rhs = len(found) == len(points)
    if rhs and points:
        joined = union_all(found)
        if joined != g or not is_semiopen(tau, joined):
            return False
    if lhs:
        # necessity with h = g itself
        if not all(point_in(p, g) for p in points):
            return False
    return lhs == rhs


@dataclass(frozen=True)
class Verdict:
    item: str
    status: str  # "pass", "fail" or "vacuous"
    statement: str
    left: object = None
    right: object = None

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def _eq(item: str, statement: str, left, right) -> Verdict:
    return Verdict(item, "pass" if left == right else "fail", statement, left, right)


def _leq(item: str, statement: str, left: FuzzySoftSet, right: FuzzySoftSet) -> Verdict:
    return Verdict(item, "pass" if subset_leq(left, right) else "fail", statement, left, right)


PROPERTY_ITEMS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii", "xiv")


def property_suite(tau: FuzzySoftTopology, g: FuzzySoftSet, k: FuzzySoftSet) -> list[Verdict]:
    """Evaluate the fourteen properties of semi-closure and semi-interior.

    Inclusions (xi)/(xii) are checked non-strictly. Monotonicity items
    (v)/(vi) are vacuous unless ``g <= k``. Endpoint items (vii)/(viii)
    compare tuples ``(op(Φ_E), op(f_E))`` with ``(Φ_E, f_E)``.
    """
    sig = tau.signature
    phi, top = sig.phi, sig.ambient
    scl_g, scl_k = fsscl(tau, g), fsscl(tau, k)
    sint_g, sint_k = fssint(tau, g), fssint(tau, k)
    g_le_k = subset_leq(g, k)
    out = [
        _eq("i", "g semiclosed <=> g = fsscl(g)", is_semiclosed_def(tau, g)[0], g == scl_g),
        _eq("ii", "g semiopen <=> g = fssint(g)", is_semiopen_def(tau, g)[0], g == sint_g),
        _eq("iii", "complement(fsscl(g)) = fssint(complement(g))", complement(scl_g), fssint(tau, complement(g))),
        _eq("iv", "complement(fssint(g)) = fsscl(complement(g))", complement(sint_g), fsscl(tau, complement(g))),
    ]
    if g_le_k:
        out.append(_leq("v", "g <= k => fssint(g) <= fssint(k)", sint_g, sint_k))
        out.append(_leq("vi", "g <= k => fsscl(g) <= fsscl(k)", scl_g, scl_k))
    else:
        out.append(Verdict("v", "vacuous", "g <= k => fssint(g) <= fssint(k)"))
        out.append(Verdict("vi", "vacuous", "g <= k => fsscl(g) <= fsscl(k)"))
    out += [
        _eq("vii", "fsscl(phi) = phi and fsscl(ambient) = ambient", (fsscl(tau, phi), fsscl(tau, top)), (phi, top)),
        _eq("viii", "fssint(phi) = phi and fssint(ambient) = ambient", (fssint(tau, phi), fssint(tau, top)), (phi, top)),
        _eq("ix", "fsscl(g | k) = fsscl(g) | fsscl(k)", fsscl(tau, union(g, k)), union(scl_g, scl_k)),
        _eq("x", "fssint(g & k) = fssint(g) & fssint(k)", fssint(tau, intersect(g, k)), intersect(sint_g, sint_k)),
        _leq("xi", "fsscl(g & k) <= fsscl(g) & fsscl(k)", fsscl(tau, intersect(g, k)), intersect(scl_g, scl_k)),
        _leq("xii", "fssint(g | k) <= fssint(g) | fssint(k)", fssint(tau, union(g, k)), union(sint_g, sint_k)),
        _eq("xiii", "fsscl(fsscl(g)) = fsscl(g)", fsscl(tau, scl_g), scl_g),
        _eq("xiv", "fssint(fssint(g)) = fssint(g)", fssint(tau, sint_g), sint_g),
    ]
    return out


SUPPLEMENT_ITEMS = ("ix-inclusion", "x-inclusion", "xii-converse")


def property_supplement(tau: FuzzySoftTopology, g: FuzzySoftSet, k: FuzzySoftSet) -> list[Verdict]:
    """The halves of items (ix), (x) and the converse of (xii) that follow
    from monotonicity alone; these hold even where the full items fail."""
    return [
        _leq("ix-inclusion", "fsscl(g) | fsscl(k) <= fsscl(g | k)", union(fsscl(tau, g), fsscl(tau, k)), fsscl(tau, union(g, k))),
        _leq("x-inclusion", "fssint(g & k) <= fssint(g) & fssint(k)", fssint(tau, intersect(g, k)), intersect(fssint(tau, g), fssint(tau, k))),
        _leq("xii-converse", "fssint(g) | fssint(k) <= fssint(g | k)", union(fssint(tau, g), fssint(tau, k)), fssint(tau, union(g, k))),
    ]


@dataclass(frozen=True)
class OperatorImageReport:
    semiopen: bool
    semiclosed: bool
    interior_semiopen: bool | None
    fssint_semiopen: bool | None
    closure_semiclosed: bool | None
    fsscl_semiclosed: bool | None
    open_closures_semiopen: bool
    closed_interiors_semiclosed: bool
    failures: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures


def operator_image_check(tau: FuzzySoftTopology, g: FuzzySoftSet) -> OperatorImageReport:
    """Images of semiopen/semiclosed sets under int, fssint, cl and fsscl.

    Also checks that the closure of every open set is semiopen and the
    interior of every closed set is semiclosed.
    """
    so = is_semiopen(tau, g)
    sc = is_semiclosed(tau, g)
    int_so = is_semiopen(tau, tau.interior(g)) if so else None
    sint_so = is_semiopen(tau, fssint(tau, g)) if so else None
    cl_sc = is_semiclosed(tau, tau.closure(g)) if sc else None
    scl_sc = is_semiclosed(tau, fsscl(tau, g)) if sc else None
    open_ok = all(is_semiopen(tau, c) for c in tau.open_closures.values())
    closed_ok = all(is_semiclosed(tau, i) for i in tau.closed_interiors.values())
    flags = {
        "interior_semiopen": int_so,
        "fssint_semiopen": sint_so,
        "closure_semiclosed": cl_sc,
        "fsscl_semiclosed": scl_sc,
        "open_closures_semiopen": open_ok,
        "closed_interiors_semiclosed": closed_ok,
    }
    return OperatorImageReport(
        semiopen=so,
        semiclosed=sc,
        failures=tuple(name for name, v in flags.items() if v is False),
        **flags,
    )


def union_stability(tau: FuzzySoftTopology, sets: Sequence[FuzzySoftSet]) -> bool:
    """The union of semiopen sets is semiopen (precondition checked)."""
    if not sets or not all(is_semiopen(tau, s) for s in sets):
        raise ContractError("union stability needs a nonempty list of semiopen sets")
    return is_semiopen(tau, union_all(sets))


def intersection_stability(tau: FuzzySoftTopology, sets: Sequence[FuzzySoftSet]) -> bool:
    if not sets or not all(is_semiclosed(tau, s) for s in sets):
        raise ContractError("intersection stability needs a nonempty list of semiclosed sets")
    return is_semiclosed(tau, intersect_all(sets))
