"""JSON space documents: a signature, a topology and named query sets.

Layout::

    {
      "universe": ["h1", "h2"],
      "parameters": ["e1"],
      "ambient": {"e1": {"h1": "0.2", "h2": "1"}},
      "topology": {"T1": "phi", "T2": "ambient", "T3": {"e1": {"h1": "0.1"}}},
      "sets": {"g": {"e1": {"h2": "1/3"}}},
      "claims": {"topology": {"valid": true}, "g": {"semiopen": true}}
    }

Grades are decimal or ``p/q`` strings (JSON numbers are accepted and read
exactly from their text). Missing parameters or objects in a set mean zero.
The strings ``"phi"`` and ``"ambient"`` stand for Φ_E and f_E and are
reserved: they may be used as values but not as set names.  ``claims`` is
optional and records asserted verdicts that reports compare against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .algebra import FuzzySoftError, FuzzySoftSet, SpaceSignature, format_grade
from .topology import FuzzySoftTopology

RESERVED = ("phi", "ambient")
CLAIM_KEYS = ("valid", "open", "closed", "semiopen", "semiclosed")


class DocumentError(FuzzySoftError):
    """Invalid space document. ``code`` is one of ``malformed``,
    ``duplicate-name``, ``grade-out-of-range``, ``subset-violation``,
    ``unknown-name``."""

    def __init__(self, code: str, message: str, path: str = ""):
        where = f" at {path}" if path else ""
        super().__init__(f"[{code}]{where}: {message}")
        self.code = code
        self.path = path


@dataclass
class SpaceDocument:
    signature: SpaceSignature
    topology: dict[str, FuzzySoftSet] = field(default_factory=dict)
    sets: dict[str, FuzzySoftSet] = field(default_factory=dict)
    claims: dict[str, dict[str, bool]] = field(default_factory=dict)

    def space(self, *, require_valid: bool = False) -> FuzzySoftTopology:
        return FuzzySoftTopology(self.signature, self.topology.values(), require_valid=require_valid)

    def lookup(self, name: str) -> FuzzySoftSet:
        if name == "phi":
            return self.signature.phi
        if name == "ambient":
            return self.signature.ambient
        if name in self.sets:
            return self.sets[name]
        if name in self.topology:
            return self.topology[name]
        raise DocumentError("unknown-name", f"no set named {name!r}")

    def name_of(self, s: FuzzySoftSet) -> str | None:
        """First name bound to ``s`` (reserved names, then topology, then sets)."""
        if s == self.signature.phi:
            return "phi"
        if s == self.signature.ambient:
            return "ambient"
        for table in (self.topology, self.sets):
            for name, v in table.items():
                if v == s:
                    return name
        return None


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise DocumentError("duplicate-name", f"duplicate key {k!r}")
        out[k] = v
    return out


def _grade(value: Any, path: str) -> Fraction:
    if not isinstance(value, str):
        raise DocumentError("malformed", f"grade must be a string or number, got {value!r}", path)
    try:
        g = Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise DocumentError("malformed", f"not a grade: {value!r}", path) from None
    if not 0 <= g <= 1:
        raise DocumentError("grade-out-of-range", f"grade {value} outside [0, 1]", path)
    return g


def _names(doc: Mapping, key: str) -> tuple[str, ...]:
    names = doc.get(key)
    if not isinstance(names, list) or not names or not all(isinstance(n, str) for n in names):
        raise DocumentError("malformed", "expected a nonempty list of names", key)
    if len(set(names)) != len(names):
        raise DocumentError("duplicate-name", "names must be unique", key)
    return tuple(names)


def _grade_rows(value: Any, universe, parameters, path: str) -> tuple[Fraction, ...]:
    if not isinstance(value, dict):
        raise DocumentError("malformed", "expected a map parameter -> object -> grade", path)
    for e in value:
        if e not in parameters:
            raise DocumentError("malformed", f"unknown parameter {e!r}", f"{path}.{e}")
    grades = []
    for e in parameters:
        row = value.get(e, {})
        if not isinstance(row, dict):
            raise DocumentError("malformed", "expected a map object -> grade", f"{path}.{e}")
        for x in row:
            if x not in universe:
                raise DocumentError("malformed", f"unknown object {x!r}", f"{path}.{e}.{x}")
        grades.extend(_grade(row[x], f"{path}.{e}.{x}") if x in row else Fraction(0) for x in universe)
    return tuple(grades)


def _set_value(value: Any, sig: SpaceSignature, path: str) -> FuzzySoftSet:
    if isinstance(value, str):
        if value == "phi":
            return sig.phi
        if value == "ambient":
            return sig.ambient
        raise DocumentError("malformed", f"unknown reference {value!r}", path)
    grades = _grade_rows(value, sig.universe, sig.parameters, path)
    for (e, x), g, a in zip(sig.cells(), grades, sig.ambient.grades):
        if g > a:
            raise DocumentError(
                "subset-violation",
                f"grade {format_grade(g)} exceeds ambient grade {format_grade(a)}",
                f"{path}.{e}.{x}",
            )
    return FuzzySoftSet._raw(sig, grades)


def _named_sets(doc: Mapping, key: str, sig: SpaceSignature) -> dict[str, FuzzySoftSet]:
    table = doc.get(key, {})
    if not isinstance(table, dict):
        raise DocumentError("malformed", "expected a map of named sets", key)
    out = {}
    for name, value in table.items():
        if name in RESERVED:
            raise DocumentError("duplicate-name", f"{name!r} is a reserved name", f"{key}.{name}")
        out[name] = _set_value(value, sig, f"{key}.{name}")
    return out


def from_dict(doc: Any) -> SpaceDocument:
    if not isinstance(doc, dict):
        raise DocumentError("malformed", "document must be a JSON object")
    extra = set(doc) - {"universe", "parameters", "ambient", "topology", "sets", "claims"}
    if extra:
        raise DocumentError("malformed", f"unknown field {sorted(extra)[0]!r}")
    universe = _names(doc, "universe")
    parameters = _names(doc, "parameters")
    if "ambient" not in doc:
        raise DocumentError("malformed", "missing ambient set", "ambient")
    ambient = _grade_rows(doc["ambient"], universe, parameters, "ambient")
    sig = SpaceSignature(universe, parameters, ambient)
    topology = _named_sets(doc, "topology", sig)
    sets = _named_sets(doc, "sets", sig)
    clash = set(topology) & set(sets)
    if clash:
        raise DocumentError("duplicate-name", f"{sorted(clash)[0]!r} names both a member and a set", "sets")
    claims = doc.get("claims", {})
    if not isinstance(claims, dict):
        raise DocumentError("malformed", "expected a map of claims", "claims")
    for name, flags in claims.items():
        if not isinstance(flags, dict) or not all(
            k in CLAIM_KEYS and isinstance(v, bool) for k, v in flags.items()
        ):
            raise DocumentError("malformed", f"claims use keys {', '.join(CLAIM_KEYS)} with booleans", f"claims.{name}")
    return SpaceDocument(sig, topology, sets, {k: dict(v) for k, v in claims.items()})


def parse(text: str) -> SpaceDocument:
    try:
        raw = json.loads(text, parse_float=str, parse_int=str, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise DocumentError("malformed", exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return from_dict(raw)


def load(path: str) -> SpaceDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def set_to_json(s: FuzzySoftSet) -> str | dict[str, dict[str, str]]:
    """``"phi"``/``"ambient"`` for the extremes, else the full grade map."""
    sig = s.signature
    if s == sig.phi:
        return "phi"
    if s == sig.ambient:
        return "ambient"
    return grades_to_json(s)


def grades_to_json(s: FuzzySoftSet) -> dict[str, dict[str, str]]:
    return {e: {x: format_grade(g) for x, g in row.items()} for e, row in s.to_mapping().items()}


def to_dict(doc: SpaceDocument) -> dict[str, Any]:
    out: dict[str, Any] = {
        "universe": list(doc.signature.universe),
        "parameters": list(doc.signature.parameters),
        "ambient": grades_to_json(doc.signature.ambient),
        "topology": {name: set_to_json(s) for name, s in doc.topology.items()},
        "sets": {name: set_to_json(s) for name, s in doc.sets.items()},
    }
    if doc.claims:
        out["claims"] = doc.claims
    return out


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def serialize(doc: SpaceDocument) -> str:
    return dumps(to_dict(doc))


def document_for(tau: FuzzySoftTopology, sets: Mapping[str, FuzzySoftSet] | None = None, prefix: str = "T") -> SpaceDocument:
    """Document for a topology with members named ``T1, T2, ...`` in canonical order."""
    members = {f"{prefix}{i}": h for i, h in enumerate(tau.opens, 1)}
    return SpaceDocument(tau.signature, members, dict(sets or {}))
