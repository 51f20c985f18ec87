"""Built-in corpus of rational maps with the values they are known to have."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .coeff import parse_field
from .errors import InvalidDescriptor
from .groebner import IdealHandle
from .polyring import RingContext
from .rees import RationalMapDescriptor


@dataclass
class CorpusEntry:
    name: str
    mapfile: dict
    expected: dict = field(default_factory=dict)

    def descriptor(self, field_override: Optional[str] = None) -> RationalMapDescriptor:
        mf = dict(self.mapfile)
        if field_override:
            mf["field"] = field_override
        return load_map(mf, name=self.name)


def load_map(mapfile: dict, name: str = "") -> RationalMapDescriptor:
    """Build a descriptor from a MapFile document."""
    try:
        fld = parse_field(mapfile.get("field", "Q"))
        variables = list(mapfile["variables"])
        forms_text = list(mapfile["forms"])
    except (KeyError, TypeError) as exc:
        raise InvalidDescriptor(f"malformed map file: missing {exc}") from None
    ring = RingContext(fld, tuple(variables))
    forms = [ring.parse(s) for s in forms_text]
    src = IdealHandle(ring, [ring.parse(s) for s in mapfile.get("source_ideal", [])])
    return RationalMapDescriptor(fld, tuple(variables), forms, src, name=name)


def load_map_file(path: str) -> RationalMapDescriptor:
    with open(path) as fh:
        return load_map(json.load(fh), name=path)


def _mf(variables, forms, source=(), fld="Q"):
    return {"field": fld, "variables": list(variables), "source_ideal": list(source), "forms": list(forms)}


def _gabber(n: int, d: int) -> dict:
    xs = [f"x{i}" for i in range(n + 1)]
    forms = [f"x0^{d}", f"x1*x0^{d - 1}"]
    forms += [f"x{i}*x0^{d - 1} + x{i - 1}^{d}" for i in range(2, n + 1)]
    return _mf(xs, forms)


def _identity(n: int) -> dict:
    xs = [f"x{i}" for i in range(n + 1)]
    return _mf(xs, xs)


TERAI_FORMS = ["a*b*c", "a*b*f", "a*c*e", "a*d*e", "a*d*f", "b*c*d", "b*d*e", "b*e*f", "c*d*f", "c*e*f"]

# de Jonquieres maps (x g, y g, a z + b) with g = c z + e; coefficients drawn once from {-3..3}
CUBIC_DEJONQUIERES = [
    "3*x^3 + 3*x^2*y + 3*x*y^2 + x^2*z - 2*x*y*z",
    "3*x^2*y + 3*x*y^2 + 3*y^3 + x*y*z - 2*y^2*z",
    "3*x*y^2 - 3*x^2*z - x*y*z - 3*y^2*z",
]
QUINTIC_DEJONQUIERES = [
    "2*x^5 - 2*x^4*y + 3*x^3*y^2 - x^2*y^3 - 3*x*y^4 - 3*x^4*z - 3*x^3*y*z + 3*x^2*y^2*z + 3*x*y^3*z",
    "2*x^4*y - 2*x^3*y^2 + 3*x^2*y^3 - x*y^4 - 3*y^5 - 3*x^3*y*z - 3*x^2*y^2*z + 3*x*y^3*z + 3*y^4*z",
    "2*x^5 + x^4*y - 3*x^3*y^2 + x^2*y^3 - 2*x*y^4 + y^5 - x^4*z - x^3*y*z + 3*x^2*y^2*z + 2*x*y^3*z + 3*y^4*z",
]
# quadratic involution, a general linear change, quadratic involution again: type (4; 2^3, 1^3)
QUARTIC_TWO_CUBED = [
    "x^2*y^2 + x^2*y*z - 2*x*y^2*z - 2*x^2*z^2 - 4*x*y*z^2",
    "x^2*y^2 + 3*x^2*y*z - 2*x*y^2*z + 2*x^2*z^2 - 4*x*y*z^2",
    "x^2*y^2 - 4*x*y^2*z - x^2*z^2 + 4*y^2*z^2",
]
GENERIC_CUBICS = [
    "x^3 + 2*x*y*z - y^3 + 3*z^3",
    "x^2*y - 2*y*z^2 + z^3 + x*z^2",
    "y^3 + x^2*z - 3*x*y^2 + 2*x^3",
]


def _build() -> Dict[str, CorpusEntry]:
    entries: List[CorpusEntry] = []
    for n in range(1, 5):
        entries.append(CorpusEntry(f"identity-n{n}", _identity(n),
                                   {"birational": True, "inverse_degree": 1, "relation_type": 1,
                                    "cremona": True, "rees_cm": True}))
    entries.append(CorpusEntry("std-quadratic", _mf("xyz", ["y*z", "x*z", "x*y"]),
                               {"birational": True, "inverse_degree": 2, "relation_type": 1,
                                "rees_cm": True, "saturated": True, "cremona": True,
                                "jacobian_dual_rank": 2}))
    entries.append(CorpusEntry("veronese", _mf("xy", ["x^2", "x*y", "y^2"]),
                               {"birational": True, "relation_type": 2, "rees_cm": True,
                                "reg": 2, "jacobian_dual_rank": 1, "cremona": False}))
    for n in (2, 3):
        for d in (2, 3):
            entries.append(CorpusEntry(f"gabber-n{n}-d{d}", _gabber(n, d),
                                       {"birational": True, "inverse_degree": d ** (n - 1),
                                        "cremona": True}))
    entries.append(CorpusEntry("terai", _mf("abcdef", TERAI_FORMS),
                               {"birational": True, "reg": 3, "reg_square": 7, "depth_square": 0,
                                "analytic_spread": 6, "f_values": [0, 1], "linear_syzygy_rank": 9,
                                "cremona": False}))
    entries.append(CorpusEntry("conic-projection",
                               _mf(["x0", "x1", "x2"], ["x0", "x1"], ["x0*x2 - x1^2"]),
                               {"birational": True, "inverse_degree": 2, "cremona": False}))
    entries.append(CorpusEntry("cubic-dejonquieres", _mf("xyz", CUBIC_DEJONQUIERES),
                               {"birational": True, "saturated": True, "rees_cm": True,
                                "dejonquieres": True, "cremona": True}))
    entries.append(CorpusEntry("quintic-dejonquieres", _mf("xyz", QUINTIC_DEJONQUIERES),
                               {"birational": True, "dejonquieres": True, "condition_a": False,
                                "cremona": True}))
    entries.append(CorpusEntry("quartic-2cubed-1cubed", _mf("xyz", QUARTIC_TWO_CUBED),
                               {"birational": True, "dejonquieres": False, "condition_a": True,
                                "cremona": True}))
    entries.append(CorpusEntry("squares-p1", _mf("xy", ["x^2", "y^2"]),
                               {"birational": False}))
    entries.append(CorpusEntry("cubes-p2", _mf("xyz", ["x^3", "y^3", "z^3"]),
                               {"birational": False}))
    entries.append(CorpusEntry("generic-cubics", _mf("xyz", GENERIC_CUBICS),
                               {"birational": False}))
    return {e.name: e for e in entries}


CORPUS: Dict[str, CorpusEntry] = _build()


def corpus_names() -> List[str]:
    return list(CORPUS)


def get_entry(name: str) -> CorpusEntry:
    key = name[len("corpus:"):] if name.startswith("corpus:") else name
    try:
        return CORPUS[key]
    except KeyError:
        raise KeyError(f"unknown corpus entry {name!r}") from None


def resolve_map(ref: str, field_override: Optional[str] = None) -> RationalMapDescriptor:
    """A ``corpus:<name>`` reference or a path to a MapFile."""
    if ref.startswith("corpus:"):
        return get_entry(ref).descriptor(field_override)
    with open(ref) as fh:
        mf = json.load(fh)
    if field_override:
        mf["field"] = field_override
    return load_map(mf, name=ref)
