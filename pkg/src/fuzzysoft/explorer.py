"""Random spaces, grid enumeration oracles, counterexample search and fuzzing.

Randomness comes from :class:`SplitMix64`, a fixed and fully specified
64-bit generator, so every output here is a pure function of its seed and
arguments and can be reproduced bit for bit in other languages.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator

from . import semi
from .algebra import FuzzySoftError, FuzzySoftSet, SpaceSignature, intersect, union
from .document import document_for, grades_to_json, set_to_json, to_dict
from .topology import FuzzySoftTopology, generate_from_subbasis

MASK64 = (1 << 64) - 1
DEFAULT_CAP = 10**6


class SplitMix64:
    """SplitMix64 (Steele, Lea and Flood; constants as in Vigna's reference code).

    Test vector: seeded with 1234567 the first outputs are
    6457827717110365317, 3203168211198807973, 9817491932198370423.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection of the biased tail."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def fork(self) -> SplitMix64:
        return SplitMix64(self.next_u64())


class EnumerationCapExceeded(FuzzySoftError):
    def __init__(self, count: int, cap: int):
        super().__init__(
            f"enumeration would produce {count} subsets, above the cap of {cap}; "
            "use a coarser grid or a smaller space"
        )
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class GridSpec:
    denominator: int

    def __post_init__(self):
        if self.denominator < 1:
            raise ValueError("grid denominator must be >= 1")

    def steps(self, grade: Fraction) -> int:
        """Number of grid steps in ``grade``; raises if it is off the grid."""
        scaled = grade * self.denominator
        if scaled.denominator != 1:
            raise FuzzySoftError(f"grade {grade} is not a multiple of 1/{self.denominator}")
        return scaled.numerator

    def on_grid(self, s: FuzzySoftSet) -> bool:
        return all((g * self.denominator).denominator == 1 for g in s.grades)


def object_names(n: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(n)] if n <= 26 else [f"x{i}" for i in range(1, n + 1)]


def parameter_names(n: int) -> list[str]:
    return [f"e{i}" for i in range(1, n + 1)]


def random_subset(rng: SplitMix64, sig: SpaceSignature, grid: GridSpec) -> FuzzySoftSet:
    d = grid.denominator
    return FuzzySoftSet._raw(sig, tuple(Fraction(rng.below(grid.steps(a) + 1), d) for a in sig.ambient.grades))


def random_between(rng: SplitMix64, lower: FuzzySoftSet, upper: FuzzySoftSet, grid: GridSpec) -> FuzzySoftSet:
    d = grid.denominator
    return FuzzySoftSet._raw(
        lower.signature,
        tuple(Fraction(rng.between(grid.steps(lo), grid.steps(hi)), d) for lo, hi in zip(lower.grades, upper.grades)),
    )


def gen_space(
    seed: int,
    n_objects: int,
    n_parameters: int,
    grid: GridSpec | int,
    subbasis_size: int,
) -> tuple[SpaceSignature, FuzzySoftTopology]:
    """Random signature with nonzero grid-valued ambient grades, and the
    topology generated by ``subbasis_size`` random subsets."""
    if n_objects < 1 or n_parameters < 1 or subbasis_size < 0:
        raise ValueError("sizes must be >= 1 (subbasis size >= 0)")
    grid = grid if isinstance(grid, GridSpec) else GridSpec(grid)
    d = grid.denominator
    rng = SplitMix64(seed)
    ambient = [Fraction(rng.between(1, d), d) for _ in range(n_objects * n_parameters)]
    sig = SpaceSignature(object_names(n_objects), parameter_names(n_parameters), ambient)
    family = [random_subset(rng, sig, grid) for _ in range(subbasis_size)]
    return sig, generate_from_subbasis(family, sig)


def subset_count(sig: SpaceSignature, grid: GridSpec, lower: FuzzySoftSet | None = None, upper: FuzzySoftSet | None = None) -> int:
    lo = lower.grades if lower is not None else (Fraction(0),) * sig.size
    hi = upper.grades if upper is not None else sig.ambient.grades
    count = 1
    for a, b in zip(lo, hi):
        count *= max(grid.steps(b) - grid.steps(a) + 1, 0)
    return count


def enumerate_subsets(
    sig: SpaceSignature,
    grid: GridSpec | int,
    *,
    lower: FuzzySoftSet | None = None,
    upper: FuzzySoftSet | None = None,
    cap: int = DEFAULT_CAP,
) -> Iterator[FuzzySoftSet]:
    """Every grid-valued set between ``lower`` (default Φ_E) and ``upper``
    (default f_E), each once, in lexicographic row-major cell order."""
    grid = grid if isinstance(grid, GridSpec) else GridSpec(grid)
    count = subset_count(sig, grid, lower, upper)
    if count > cap:
        raise EnumerationCapExceeded(count, cap)
    return _enumerate(sig, grid, lower, upper)


def _enumerate(sig, grid, lower, upper):
    d = grid.denominator
    lo = lower.grades if lower is not None else (Fraction(0),) * sig.size
    hi = upper.grades if upper is not None else sig.ambient.grades
    axes = [[Fraction(n, d) for n in range(grid.steps(a), grid.steps(b) + 1)] for a, b in zip(lo, hi)]
    for grades in itertools.product(*axes):
        yield FuzzySoftSet._raw(sig, grades)


def semiclosure_oracle(tau: FuzzySoftTopology, g: FuzzySoftSet, grid: GridSpec | int, cap: int = DEFAULT_CAP) -> FuzzySoftSet:
    """Intersection of every enumerated semiclosed superset of ``g``."""
    out = list(tau.signature.ambient.grades)
    for s in enumerate_subsets(tau.signature, grid, lower=g, cap=cap):
        if semi.is_semiclosed_char(tau, s):
            out = list(map(min, out, s.grades))
    return FuzzySoftSet._raw(tau.signature, tuple(out))


def semiinterior_oracle(tau: FuzzySoftTopology, g: FuzzySoftSet, grid: GridSpec | int, cap: int = DEFAULT_CAP) -> FuzzySoftSet:
    """Union of every enumerated semiopen subset of ``g``."""
    out = [Fraction(0)] * tau.signature.size
    for s in enumerate_subsets(tau.signature, grid, upper=g, cap=cap):
        if semi.is_semiopen_char(tau, s):
            out = list(map(max, out, s.grades))
    return FuzzySoftSet._raw(tau.signature, tuple(out))


# -- counterexample search -------------------------------------------------

SEARCH_PROPERTIES = ("semiopen-meet", "semiopen-meet-open", "semiclosed-join", "semiopen-not-open")

# Crisp spaces already refute three of the four claims; meets with an open
# set stay semiopen in crisp spaces, so that search needs a finer grid.
DEFAULT_SEARCH_GRID = {"semiopen-meet": 1, "semiopen-meet-open": 3, "semiclosed-join": 1, "semiopen-not-open": 1}
SEARCH_ENUM_CAP = 256
SEARCH_RANDOM_SETS = 48


def _witness_holds(prop: str, tau: FuzzySoftTopology, g: FuzzySoftSet, k: FuzzySoftSet | None) -> bool:
    so, sc = semi.is_semiopen_char, semi.is_semiclosed_char
    if prop == "semiopen-not-open":
        return so(tau, g) and not tau.is_open(g)
    if prop == "semiopen-meet":
        return so(tau, g) and so(tau, k) and not so(tau, intersect(g, k))
    if prop == "semiopen-meet-open":
        return so(tau, g) and tau.is_open(k) and not so(tau, intersect(g, k))
    if prop == "semiclosed-join":
        return sc(tau, g) and sc(tau, k) and not sc(tau, union(g, k))
    raise ValueError(prop)


def _combined(prop: str, g: FuzzySoftSet, k: FuzzySoftSet | None) -> FuzzySoftSet | None:
    if prop in ("semiopen-meet", "semiopen-meet-open"):
        return intersect(g, k)
    if prop == "semiclosed-join":
        return union(g, k)
    return None


def minimize(prop: str, tau: FuzzySoftTopology, grid: GridSpec, g: FuzzySoftSet, k: FuzzySoftSet | None):
    """Lower grades one grid step at a time, cell by cell, while the witness
    property keeps holding; repeat until no single step is possible."""
    step = Fraction(1, grid.denominator)
    sets = [g, k] if k is not None else [g]
    changed = True
    while changed:
        changed = False
        for which in range(len(sets)):
            for i in range(tau.signature.size):
                cur = sets[which].grades
                if cur[i] == 0:
                    continue
                trial = FuzzySoftSet._raw(tau.signature, cur[:i] + (cur[i] - step,) + cur[i + 1 :])
                cand = list(sets)
                cand[which] = trial
                if _witness_holds(prop, tau, cand[0], cand[1] if len(cand) > 1 else None):
                    sets = cand
                    changed = True
    return sets[0], (sets[1] if len(sets) > 1 else None)


def transcript(tau: FuzzySoftTopology, s: FuzzySoftSet, grid: GridSpec | None = None) -> dict[str, Any]:
    """Both classification routes for ``s``, plus the enumeration oracles when feasible."""
    r = semi.classify(tau, s)
    out: dict[str, Any] = {
        "set": set_to_json(s),
        "open": r.is_open,
        "closed": r.is_closed,
        "interior": set_to_json(r.interior),
        "closure": set_to_json(r.closure),
        "closure_of_interior": set_to_json(r.closure_of_interior),
        "interior_of_closure": set_to_json(r.interior_of_closure),
        "semiopen": {
            "definition": r.semiopen_def,
            "witness": set_to_json(r.semiopen_witness) if r.semiopen_witness is not None else None,
            "characterization": r.semiopen_char,
        },
        "semiclosed": {
            "definition": r.semiclosed_def,
            "witness": set_to_json(r.semiclosed_witness) if r.semiclosed_witness is not None else None,
            "characterization": r.semiclosed_char,
        },
    }
    if grid is not None and grid.on_grid(s):
        try:
            out["oracle"] = {
                "semiopen": semiinterior_oracle(tau, s, grid, cap=SEARCH_ENUM_CAP * 16) == s,
                "semiclosed": semiclosure_oracle(tau, s, grid, cap=SEARCH_ENUM_CAP * 16) == s,
            }
        except EnumerationCapExceeded:
            out["oracle"] = None
    return out


@dataclass
class SearchOutcome:
    status: str  # "found", "exhausted" or "budget-spent"
    property: str
    seed: int
    budget: int
    grid: int
    spaces_tried: int
    witness: dict[str, Any] | None = None
    verified: bool | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "property": self.property,
            "seed": self.seed,
            "budget": self.budget,
            "grid": self.grid,
            "spaces_tried": self.spaces_tried,
            "verified": self.verified,
            "witness": self.witness,
        }


def _candidates(prop, tau, subsets):
    """Yield (g, k) pairs in a deterministic order."""
    if prop == "semiopen-not-open":
        for g in subsets:
            yield g, None
    elif prop == "semiopen-meet-open":
        for g in subsets:
            for k in tau.opens:
                yield g, k
    else:
        for i, g in enumerate(subsets):
            for k in subsets[i + 1 :]:
                yield g, k


def _verify(prop: str, tau: FuzzySoftTopology, g: FuzzySoftSet, k: FuzzySoftSet | None, grid: GridSpec) -> tuple[bool, dict]:
    """Re-check a witness with both routes and, when feasible, the oracles."""
    trans = {"g": transcript(tau, g, grid)}
    if k is not None:
        trans["k"] = transcript(tau, k, grid)
    combined = _combined(prop, g, k)
    if combined is not None:
        trans["result"] = transcript(tau, combined, grid)

    def agree(t):
        ok = t["semiopen"]["definition"] == t["semiopen"]["characterization"]
        ok &= t["semiclosed"]["definition"] == t["semiclosed"]["characterization"]
        if t.get("oracle"):
            ok &= t["oracle"]["semiopen"] == t["semiopen"]["characterization"]
            ok &= t["oracle"]["semiclosed"] == t["semiclosed"]["characterization"]
        return ok

    so = lambda t: t["semiopen"]["definition"]  # noqa: E731
    sc = lambda t: t["semiclosed"]["definition"]  # noqa: E731
    if prop == "semiopen-not-open":
        holds = so(trans["g"]) and not trans["g"]["open"]
    elif prop == "semiopen-meet":
        holds = so(trans["g"]) and so(trans["k"]) and not so(trans["result"])
    elif prop == "semiopen-meet-open":
        holds = so(trans["g"]) and trans["k"]["open"] and not so(trans["result"])
    else:
        holds = sc(trans["g"]) and sc(trans["k"]) and not sc(trans["result"])
    return holds and all(agree(t) for t in trans.values()), trans


def search_counterexample(
    prop: str,
    budget: int,
    seed: int,
    *,
    grid: int | None = None,
    n_objects: int = 3,
    n_parameters: int = 1,
    max_subbasis: int = 3,
) -> SearchOutcome:
    """Sample ``budget`` random spaces and look for a witness refuting ``prop``.

    Spaces whose grid subsets number at most ``SEARCH_ENUM_CAP`` are searched
    exhaustively; larger ones are searched over random subsets. The status
    is ``exhausted`` when no witness turned up and every sampled space was
    enumerated completely.
    """
    if prop not in SEARCH_PROPERTIES:
        raise ValueError(f"unknown property {prop!r}; expected one of {', '.join(SEARCH_PROPERTIES)}")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    d = grid if grid is not None else DEFAULT_SEARCH_GRID[prop]
    spec = GridSpec(d)
    rng = SplitMix64(seed)
    complete = True
    for i in range(budget):
        space_rng = rng.fork()
        sub = space_rng.between(0, max_subbasis) if max_subbasis > 0 else 0
        sig, tau = gen_space(space_rng.next_u64(), n_objects, n_parameters, spec, sub)
        if subset_count(sig, spec) <= SEARCH_ENUM_CAP:
            subsets = list(enumerate_subsets(sig, spec))
        else:
            complete = False
            subsets = sorted({random_subset(space_rng, sig, spec) for _ in range(SEARCH_RANDOM_SETS)}, key=lambda s: s.grades)
        # classification of each candidate, computed once per space
        memo: dict[tuple[str, FuzzySoftSet], bool] = {}

        def so(s):
            if ("o", s) not in memo:
                memo["o", s] = semi.is_semiopen_char(tau, s)
            return memo["o", s]

        def sc(s):
            if ("c", s) not in memo:
                memo["c", s] = semi.is_semiclosed_char(tau, s)
            return memo["c", s]

        for g, k in _candidates(prop, tau, subsets):
            if prop == "semiopen-not-open":
                hit = so(g) and not tau.is_open(g)
            elif prop == "semiopen-meet":
                hit = so(g) and so(k) and not so(intersect(g, k))
            elif prop == "semiopen-meet-open":
                hit = so(g) and not so(intersect(g, k))
            else:
                hit = sc(g) and sc(k) and not sc(union(g, k))
            if not hit:
                continue
            found = (g, k)
            mg, mk = minimize(prop, tau, spec, *found)
            ok, trans = _verify(prop, tau, mg, mk, spec)
            witness = {
                "space_index": i,
                "space": to_dict(document_for(tau)),
                "found": {"g": set_to_json(g), **({"k": set_to_json(k)} if k is not None else {})},
                "minimized": {"g": set_to_json(mg), **({"k": set_to_json(mk)} if mk is not None else {})},
                "transcripts": trans,
            }
            return SearchOutcome("found", prop, seed, budget, d, i + 1, witness, ok)
    return SearchOutcome("exhausted" if complete else "budget-spent", prop, seed, budget, d, budget)


# -- theorem fuzzing -------------------------------------------------------

FUZZ_CHECKS = (
    "route-agreement",
    "equivalence",
    "union-stability",
    "intersection-stability",
    "sandwich-semiopen",
    "sandwich-semiclosed",
    "point-characterization",
    "operator-image",
    *(f"property-{item}" for item in semi.PROPERTY_ITEMS),
    *(f"supplement-{item}" for item in semi.SUPPLEMENT_ITEMS),
)
MAX_RECORDED_FAILURES = 5


@dataclass
class FuzzReport:
    seed: int
    samples: int
    bounds: dict[str, int]
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    failures: list[dict[str, Any]] = field(default_factory=list)

    @property
    def total_failures(self) -> int:
        return sum(c["failed"] for c in self.counts.values())

    @property
    def passed(self) -> bool:
        return self.total_failures == 0

    def failed_checks(self) -> list[str]:
        return [name for name, c in self.counts.items() if c["failed"]]

    def to_dict(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "bounds": self.bounds,
            "passed": self.passed,
            "total_failures": self.total_failures,
            "counts": self.counts,
            "failures": self.failures,
        }


def _set_or_json(v: Any) -> Any:
    if isinstance(v, FuzzySoftSet):
        return grades_to_json(v)
    if isinstance(v, tuple):
        return [_set_or_json(x) for x in v]
    return v


def fuzz_theorems(
    seed: int,
    samples: int,
    *,
    max_objects: int = 3,
    max_parameters: int = 2,
    max_denominator: int = 4,
    max_subbasis: int = 3,
    sets_per_space: int = 10,
    checks: tuple[str, ...] | None = None,
) -> FuzzReport:
    """Check every theorem on random (space, set) samples.

    A new random space is drawn every ``sets_per_space`` samples. Each
    sample draws sets ``g`` and ``k`` and runs the selected checks; failures
    carry the seed, sample index, serialized space and sets.
    """
    selected = tuple(checks) if checks is not None else FUZZ_CHECKS
    unknown = set(selected) - set(FUZZ_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    bounds = {
        "max_objects": max_objects,
        "max_parameters": max_parameters,
        "max_denominator": max_denominator,
        "max_subbasis": max_subbasis,
        "sets_per_space": sets_per_space,
    }
    report = FuzzReport(seed, samples, bounds, {c: {"checked": 0, "failed": 0, "vacuous": 0} for c in selected})
    rng = SplitMix64(seed)
    tau = grid = None
    for index in range(samples):
        if index % sets_per_space == 0:
            space_rng = rng.fork()
            grid = GridSpec(space_rng.between(1, max_denominator))
            _, tau = gen_space(
                space_rng.next_u64(),
                space_rng.between(1, max_objects),
                space_rng.between(1, max_parameters),
                grid,
                space_rng.between(0, max_subbasis),
            )
        srng = rng.fork()
        g = random_subset(srng, tau.signature, grid)
        k = random_subset(srng, tau.signature, grid)
        for name, status, detail in _run_checks(selected, tau, grid, srng, g, k):
            c = report.counts[name]
            c["checked"] += 1
            if status == "vacuous":
                c["vacuous"] += 1
            elif status == "fail":
                c["failed"] += 1
                if c["failed"] <= MAX_RECORDED_FAILURES:
                    report.failures.append(
                        {
                            "check": name,
                            "seed": seed,
                            "sample": index,
                            "space": to_dict(document_for(tau, {"g": g, "k": k})),
                            "detail": detail,
                        }
                    )
    return report


def _run_checks(selected, tau, grid, rng, g, k) -> Iterator[tuple[str, str, Any]]:
    want = set(selected)

    def res(ok: bool) -> str:
        return "pass" if ok else "fail"

    if "route-agreement" in want:
        so_d, so_c = semi.is_semiopen_def(tau, g)[0], semi.is_semiopen_char(tau, g)
        sc_d, sc_c = semi.is_semiclosed_def(tau, g)[0], semi.is_semiclosed_char(tau, g)
        yield "route-agreement", res(so_d == so_c and sc_d == sc_c), {
            "semiopen": [so_d, so_c],
            "semiclosed": [sc_d, sc_c],
        }
    if "equivalence" in want:
        eq = semi.equivalence_report(tau, g)
        yield "equivalence", res(eq.agree), {"statements": list(eq.as_tuple())}
    if "union-stability" in want:
        parts = [semi.fssint(tau, g), semi.fssint(tau, k), semi.fssint(tau, random_subset(rng, tau.signature, grid))]
        yield "union-stability", res(semi.union_stability(tau, parts)), {"sets": [grades_to_json(p) for p in parts]}
    if "intersection-stability" in want:
        parts = [semi.fsscl(tau, g), semi.fsscl(tau, k), semi.fsscl(tau, random_subset(rng, tau.signature, grid))]
        yield "intersection-stability", res(semi.intersection_stability(tau, parts)), {"sets": [grades_to_json(p) for p in parts]}
    if "sandwich-semiopen" in want:
        low = semi.fssint(tau, g)
        mid = random_between(rng, low, tau.closure(low), grid)
        yield "sandwich-semiopen", res(semi.sandwich_check(tau, low, mid)), {
            "g": grades_to_json(low),
            "k": grades_to_json(mid),
        }
    if "sandwich-semiclosed" in want:
        high = semi.fsscl(tau, g)
        mid = random_between(rng, tau.interior(high), high, grid)
        yield "sandwich-semiclosed", res(semi.sandwich_check(tau, high, mid, kind="semiclosed")), {
            "m": grades_to_json(high),
            "k": grades_to_json(mid),
        }
    if "point-characterization" in want:
        for s in (g, semi.fssint(tau, g)):
            yield "point-characterization", res(semi.point_characterization_check(tau, s)), {"g": grades_to_json(s)}
    if "operator-image" in want:
        for s in (g, semi.fssint(tau, g), semi.fsscl(tau, g)):
            r = semi.operator_image_check(tau, s)
            yield "operator-image", res(r.ok), {"g": grades_to_json(s), "failures": list(r.failures)}
    pairs = ((g, k), (g, union(g, k)))
    for prefix, suite in (("property-", semi.property_suite), ("supplement-", semi.property_supplement)):
        if not any(c.startswith(prefix) for c in selected):
            continue
        for pair in pairs:
            for v in suite(tau, *pair):
                name = prefix + v.item
                if name in want:
                    yield name, v.status, {
                        "g": grades_to_json(pair[0]),
                        "k": grades_to_json(pair[1]),
                        "left": _set_or_json(v.left),
                        "right": _set_or_json(v.right),
                    }
