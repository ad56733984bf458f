"""Concrete data for the skein triple B_1, B_inf, B_0.

Everything here is a transcription: module structure maps, the skein maps
f_k = f_{k,0} + f_{k,1}, the homotopies phi_k, refinement data, stabilizers,
generator gradings and the table of refined gradings of the coefficients.
Coefficients are written as chord words such as ``"4,6,7,8,5"`` (``"I"`` is
the identity) and projected to ``idem(x) * word * idem(y)``.

``FixtureSet`` bundles one copy of all of this; ``load_fixtures`` reads it
either from the packaged golden JSON or from a user-supplied directory.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .algebra import AlgebraElement, StrandsGenerator, chord_word
from .diagram import ArcDiagram, build_skein_arc_diagram
from .dmod import DMorphism, GradedAssignment, TypeDStructure
from .grading import (
    AbelianLattice,
    GradingElement,
    RefinementData,
    skein_basis,
)

__all__ = [
    "SkeinIndex",
    "occ",
    "word_element",
    "FixtureSet",
    "transcribed_fixtures",
    "load_fixtures",
    "golden_documents",
    "write_golden",
    "canonical_json",
    "bsd",
    "skein_map",
    "skein_map_part",
    "skein_homotopy",
    "skein_homotopy_part",
    "refinement",
    "stabilizer",
    "transcribed_gradings",
    "GOLDEN_DIR",
]


class SkeinIndex(enum.Enum):
    """Index of the skein triple; the cyclic successor runs 1 -> inf -> 0 -> 1."""

    ONE = "1"
    INFTY = "infty"
    ZERO = "0"

    @property
    def succ(self) -> "SkeinIndex":
        order = [SkeinIndex.ONE, SkeinIndex.INFTY, SkeinIndex.ZERO]
        return order[(order.index(self) + 1) % 3]

    @classmethod
    def parse(cls, s: "str | SkeinIndex") -> "SkeinIndex":
        if isinstance(s, SkeinIndex):
            return s
        aliases = {"1": cls.ONE, "inf": cls.INFTY, "infty": cls.INFTY, "∞": cls.INFTY, "0": cls.ZERO}
        try:
            return aliases[str(s)]
        except KeyError:
            raise ValueError(f"unknown skein index {s!r}") from None

    def __str__(self) -> str:
        return self.value


K_ORDER = (SkeinIndex.ONE, SkeinIndex.INFTY, SkeinIndex.ZERO)


def occ(i: int) -> frozenset[int]:
    """Algebra idempotent with arc i unoccupied in the type-D sense: all classes but i."""
    return frozenset({1, 2, 3, 4, 5, 6} - {i})


def word_element(word: str, left: frozenset[int], right: frozenset[int],
                 d: ArcDiagram | None = None) -> AlgebraElement:
    """idem(left) * (chord word) * idem(right); must be a single generator."""
    from .algebra import idempotent, mul

    d = d or build_skein_arc_diagram()
    w = chord_word([] if word == "I" else word.split(","), d)
    out = mul(mul(idempotent(d, left), w), idempotent(d, right))
    if len(out) != 1:
        raise ValueError(f"word {word!r} does not give a single generator between these idempotents")
    return out


# -- the transcription ---------------------------------------------------------------

_GENERATORS = {
    "1": [("x", 3)],
    "infty": [("y1", 5), ("y2", 3), ("y3", 1)],
    "0": [("z1", 5), ("z2", 1)],
}

_DELTA = {
    "1": [("x", "4,6,7,8,5", "x")],
    "infty": [
        ("y1", "5", "y2"),
        ("y1", "7,8,5,12,3", "y2"),
        ("y1", "7,8,5,2", "y3"),
        ("y3", "1,3", "y2"),
    ],
    "0": [
        ("z1", "5,12,3,4,6", "z1"),
        ("z1", "5,2", "z2"),
        ("z1", "5,12,3,4,56,2", "z2"),
        ("z2", "1,3,4,6", "z1"),
        ("z2", "1,3,4,56,2", "z2"),
    ],
}

# f_{k,i}: B_k -> B_{k+1}; entries (part, from, word, to)
_MAPS = {
    "1": [
        ("0", "x", "4,6", "y1"),
        ("0", "x", "12,3", "y2"),
        ("0", "x", "4,56", "y2"),
        ("0", "x", "2", "y3"),
        ("1", "x", "4,6,7,8", "y1"),
        ("1", "x", "I", "y2"),
    ],
    "infty": [
        ("0", "y1", "45,6", "z1"),
        ("0", "y1", "7,8", "z1"),
        ("0", "y2", "4,6", "z1"),
        ("0", "y2", "4,56,2", "z2"),
        ("0", "y3", "I", "z2"),
        ("1", "y1", "I", "z1"),
        ("1", "y2", "12,3,4,6", "z1"),
        ("1", "y2", "2", "z2"),
        ("1", "y2", "12,3,4,56,2", "z2"),
        ("1", "y3", "1,23", "z2"),
    ],
    "0": [
        ("0", "z1", "5", "x"),
        ("0", "z1", "5,12,3,4,56", "x"),
        ("0", "z1", "45,6,7,8,5", "x"),
        ("0", "z2", "1,3,4,56", "x"),
        ("1", "z1", "5,12,3", "x"),
        ("1", "z1", "7,8,5", "x"),
        ("1", "z2", "1,3", "x"),
    ],
}

# phi_{k,ij}: B_k -> B_{k+2}; every part not listed vanishes
_HOMOTOPIES = {
    "1": [],
    "infty": [
        ("00", "y2", "4,56", "x"),
        ("10", "y2", "I", "x"),
        ("11", "y2", "12,3", "x"),
    ],
    "0": [
        ("00", "z1", "45,6", "y1"),
        ("01", "z1", "I", "y1"),
        ("11", "z1", "7,8", "y1"),
        ("10", "z2", "1,23", "y3"),
        ("11", "z2", "I", "y3"),
    ],
}

# r(I_occ(i)) as (Maslov component, chord labels)
_REFINEMENT = {
    1: ("-1/2", ["2", "5", "8"]),
    2: ("-1/2", ["1", "2", "5", "8"]),
    3: ("0", ["5", "8"]),
    4: ("0", ["4", "5", "8"]),
    5: ("-1/2", ["8"]),
    6: ("0", []),
}

# coordinates (lambda, A1, A2, A3)
_STABILIZERS = {"1": [(0, 0, -1, -1)], "infty": [(0, -1, 0, -1)], "0": [(0, -1, -1, 0)]}
_COSETS = {
    "1": {"x": (0, 0, 0, 0)},
    "infty": {"y1": (0, 0, 0, 1), "y2": (0, -1, 0, 0), "y3": (0, 0, 0, 0)},
    "0": {"z1": (0, 0, 0, 0), "z2": (0, 0, 0, 0)},
}
_BASE_GENERATOR = {"1": "x", "infty": "y3", "0": "z1"}
_SKEIN_GRADINGS = {name: 0 for k in _COSETS for name in _COSETS[k]}

# refined gradings of coefficients: word -> (Maslov, chord labels, skein-reduced value)
_GRADING_TABLE = [
    ("I", "0", [], 0),
    ("4,6", "-1/2", ["456"], 0),
    ("4,6,7,8", "-2", ["456", "78"], 0),
    ("4,56", "-1/2", ["456"], 0),
    ("12,3", "-1/2", ["123"], 0),
    ("2", "0", [], 0),
    ("45,6", "-1/2", ["456"], 0),
    ("7,8", "-3/2", ["78"], 0),
    ("12,3,4,6", "-1", ["123", "456"], 0),
    ("4,56,2", "-1/2", ["456"], 0),
    ("12,3,4,56,2", "-1", ["123", "456"], 0),
    ("1,23", "-1/2", ["123"], 0),
    ("45,6,7,8,5", "-3", ["456", "78"], -1),
    ("7,8,5", "-5/2", ["78"], -1),
    ("5", "-1", [], -1),
    ("5,12,3", "-3/2", ["123"], -1),
    ("5,12,3,4,56", "-2", ["123", "456"], -1),
    ("1,3", "-3/2", ["123"], -1),
    ("1,3,4,56", "-2", ["123", "456"], -1),
]

# a periodic domain at x: Euler measure, two point multiplicities, boundary
PERIODIC_DOMAIN_X = {"e": "-2", "n1": "1/2", "n2": "1/2", "boundary": {"456": -1, "78": -1}}

# skein-reduced shifts of f_0, f_1, f_inf
EXPECTED_SHIFTS = {"1": 0, "infty": 0, "0": -1}

# double-coset examples: a fixed left subgroup against each side
LATTICE_EXAMPLES = {
    "6.1": {
        "left": [(0, 1, 0, 1)],
        "cases": [
            {"side": "1", "right": [(0, 0, 1, 1)], "expected": [0, 0]},
            {"side": "infty", "right": [(0, 1, 0, 1)], "expected": [0, 0, 0]},
            {"side": "0", "right": [(0, 1, 1, 0)], "expected": [0, 0]},
            {"side": "skein", "right": [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], "expected": [0]},
        ],
    },
    "6.2": {
        "left": [(12, 1, 1, 0), (18, 1, 0, 1)],
        "cases": [
            {"side": "1", "right": [(0, 0, 1, 1)], "expected": [2, 0]},
            {"side": "infty", "right": [(0, 1, 0, 1)], "expected": [18, 0]},
            {"side": "0", "right": [(0, 1, 1, 0)], "expected": [12, 0]},
            {"side": "skein", "right": [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], "expected": [6]},
        ],
    },
}


def _chord_sum(labels, d: ArcDiagram):
    from .diagram import ChordClass

    out = ChordClass.zero(d.n_elementary)
    for lab in labels:
        out = out + d.chord_class([d.chord(lab)])
    return out


# -- fixture bundle ------------------------------------------------------------------

@dataclass
class FixtureSet:
    """One complete set of model data."""

    modules: dict[SkeinIndex, TypeDStructure]
    map_parts: dict[tuple[SkeinIndex, str], DMorphism]
    homotopy_parts: dict[tuple[SkeinIndex, str], DMorphism]
    refinement: RefinementData
    gradings: dict[SkeinIndex, GradedAssignment]
    base_generators: dict[SkeinIndex, str]
    grading_table: list[dict]
    words: dict = field(default_factory=dict)

    def bsd(self, k) -> TypeDStructure:
        return self.modules[SkeinIndex.parse(k)]

    def skein_map_part(self, k, i: str) -> DMorphism:
        return self.map_parts[(SkeinIndex.parse(k), str(i))]

    def skein_map(self, k) -> DMorphism:
        k = SkeinIndex.parse(k)
        f = self.skein_map_part(k, "0") + self.skein_map_part(k, "1")
        f.name = f"f{k}"
        return f

    def homotopy_part_names(self, k) -> list[str]:
        k = SkeinIndex.parse(k)
        return sorted(p for kk, p in self.homotopy_parts if kk == k)

    def skein_homotopy(self, k) -> DMorphism:
        k = SkeinIndex.parse(k)
        total = DMorphism(self.bsd(k), self.bsd(k.succ.succ), {})
        for p in self.homotopy_part_names(k):
            total = total + self.homotopy_parts[(k, p)]
        total.name = f"phi{k}"
        return total


def _module(k: str, d: ArcDiagram) -> TypeDStructure:
    idem = {g: occ(i) for g, i in _GENERATORS[k]}
    entries = [(x, word_element(w, idem[x], idem[y], d), y) for x, w, y in _DELTA[k]]
    return TypeDStructure(d, [(g, idem[g]) for g, _ in _GENERATORS[k]], entries, name=f"BSD(B{k})")


@cache
def _transcribed() -> FixtureSet:
    d = build_skein_arc_diagram()
    modules = {SkeinIndex.parse(k): _module(k, d) for k in _GENERATORS}
    words: dict = {}

    def morph(src: TypeDStructure, tgt: TypeDStructure, rows, name, tag):
        entries = []
        for x, w, y in rows:
            a = word_element(w, src.idem[x], tgt.idem[y], d)
            entries.append((x, a, y))
            words[(tag, x, next(iter(a)), y)] = w
        return DMorphism(src, tgt, entries, name=name)

    for k, rows in _DELTA.items():
        m = modules[SkeinIndex.parse(k)]
        for x, w, y in rows:
            a = word_element(w, m.idem[x], m.idem[y], d)
            words[(f"bsd{k}", x, next(iter(a)), y)] = w
    map_parts = {}
    for k, rows in _MAPS.items():
        kk = SkeinIndex.parse(k)
        for part in ("0", "1"):
            sel = [(x, w, y) for p, x, w, y in rows if p == part]
            map_parts[(kk, part)] = morph(modules[kk], modules[kk.succ], sel, f"f{k}.{part}", f"f{k}")
    homotopy_parts = {}
    for k, rows in _HOMOTOPIES.items():
        kk = SkeinIndex.parse(k)
        for part in ("00", "01", "10", "11"):
            sel = [(x, w, y) for p, x, w, y in rows if p == part]
            homotopy_parts[(kk, part)] = morph(
                modules[kk], modules[kk.succ.succ], sel, f"phi{k}.{part}", f"phi{k}"
            )
    assignment = {
        occ(i): GradingElement.make(Fraction(m), _chord_sum(labels, d), d)
        for i, (m, labels) in _REFINEMENT.items()
    }
    r = RefinementData(occ(6), assignment)
    basis = skein_basis()
    gradings = {
        SkeinIndex.parse(k): GradedAssignment(AbelianLattice(_STABILIZERS[k]), dict(_COSETS[k]), basis)
        for k in _COSETS
    }
    table = []
    for w, m, labels, sk in _GRADING_TABLE:
        table.append({
            "word": w,
            "refined": GradingElement.make(Fraction(m), _chord_sum(labels, d), d).to_json(),
            "skein": sk,
        })
    return FixtureSet(
        modules=modules,
        map_parts=map_parts,
        homotopy_parts=homotopy_parts,
        refinement=r,
        gradings=gradings,
        base_generators={SkeinIndex.parse(k): v for k, v in _BASE_GENERATOR.items()},
        grading_table=table,
        words=words,
    )


def transcribed_fixtures() -> FixtureSet:
    return _transcribed()


# -- golden JSON -------------------------------------------------------------------------

GOLDEN_DIR = resources.files("bsskein") / "data" / "golden"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _word_annotated(doc: dict, key: str, tag: str, words: Mapping) -> dict:
    for e in doc[key]:
        g = StrandsGenerator.from_json(e["coef"][0])
        w = words.get((tag, e["from"], g, e["to"]))
        if w is not None:
            e["word"] = w
    return doc


def bsd_document(fx: FixtureSet, k) -> dict:
    k = SkeinIndex.parse(k)
    return _word_annotated(fx.bsd(k).to_json(), "delta", f"bsd{k}", fx.words)


def _parts_document(fx: FixtureSet, kind: str, k, parts: Sequence[str] | None = None) -> dict:
    k = SkeinIndex.parse(k)
    if kind == "map":
        name, target, store, all_parts = f"f{k}", fx.bsd(k.succ), fx.map_parts, ("0", "1")
    else:
        name, target, store, all_parts = f"phi{k}", fx.bsd(k.succ.succ), fx.homotopy_parts, ("00", "01", "10", "11")
    table = []
    for part in parts or all_parts:
        if part not in all_parts:
            raise KeyError(f"{name} has no part {part!r}")
        doc = _word_annotated(store[(k, part)].to_json(), "table", name, fx.words)
        for e in doc["table"]:
            e["part"] = part
        table.extend(doc["table"])
    return {"name": name, "source": fx.bsd(k).name, "target": target.name, "table": table}


def map_document(fx: FixtureSet, k, parts: Sequence[str] | None = None) -> dict:
    return _parts_document(fx, "map", k, parts)


def homotopy_document(fx: FixtureSet, k, parts: Sequence[str] | None = None) -> dict:
    return _parts_document(fx, "homotopy", k, parts)


def golden_documents(fx: FixtureSet | None = None, witnesses: bool = True) -> dict[str, object]:
    """File name -> JSON document for every transcribed object."""
    fx = fx or transcribed_fixtures()
    docs: dict[str, object] = {}
    for k in K_ORDER:
        docs[f"bsd_{k}.json"] = bsd_document(fx, k)
        docs[f"map_f{k}.json"] = map_document(fx, k)
        docs[f"homotopy_phi{k}.json"] = homotopy_document(fx, k)
    docs["refinement.json"] = fx.refinement.to_json()
    docs["gradings.json"] = {
        str(k): {
            "base": fx.base_generators[k],
            "stabilizer": [list(v) for v in fx.gradings[k].stabilizer.generators],
            "cosets": {g: list(v) for g, v in fx.gradings[k].cosets.items()},
            "skein": {g: _SKEIN_GRADINGS[g] for g in fx.gradings[k].cosets},
        }
        for k in K_ORDER
    }
    docs["grading_table.json"] = fx.grading_table
    docs["periodic_domain_x.json"] = PERIODIC_DOMAIN_X
    docs["expected_shifts.json"] = EXPECTED_SHIFTS
    docs["lattice_examples.json"] = {
        name: {
            "left": [list(v) for v in ex["left"]],
            "cases": [
                {"side": c["side"], "right": [list(v) for v in c["right"]], "expected": c["expected"]}
                for c in ex["cases"]
            ],
        }
        for name, ex in LATTICE_EXAMPLES.items()
    }
    if witnesses:
        from .homlab import build_equivalence

        fs = {k: fx.skein_map(k) for k in K_ORDER}
        phis = {k: fx.skein_homotopy(k) for k in K_ORDER}
        for k in K_ORDER:
            eq = build_equivalence(k, fs, phis)
            if eq.H is not None:
                eq.H.name = f"H{k}"
                docs[f"cone_homotopy_{k}.json"] = eq.H.to_json()
    return docs


def write_golden(directory: Path | str, fx: FixtureSet | None = None) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name, doc in golden_documents(fx).items():
        p = directory / name
        p.write_text(canonical_json(doc), encoding="utf-8")
        out.append(p)
    return out


def _read(directory, name: str):
    return json.loads((Path(str(directory)) / name).read_text(encoding="utf-8"))


def load_fixtures(directory: Path | str | None = None) -> FixtureSet:
    """Build a fixture set from golden JSON (the packaged copy by default)."""
    d = build_skein_arc_diagram()
    directory = directory if directory is not None else GOLDEN_DIR
    words: dict = {}

    def remember(tag, entries):
        for e in entries:
            if "word" in e:
                words[(tag, e["from"], StrandsGenerator.from_json(e["coef"][0]), e["to"])] = e["word"]

    modules = {}
    for k in K_ORDER:
        doc = _read(directory, f"bsd_{k}.json")
        modules[k] = TypeDStructure.from_json(d, doc)
        remember(f"bsd{k}", doc["delta"])
    map_parts = {}
    homotopy_parts = {}
    for k in K_ORDER:
        doc = _read(directory, f"map_f{k}.json")
        remember(f"f{k}", doc["table"])
        for part in ("0", "1"):
            sub = {"name": f"f{k}.{part}", "table": [e for e in doc["table"] if e["part"] == part]}
            map_parts[(k, part)] = DMorphism.from_json(modules[k], modules[k.succ], sub)
        doc = _read(directory, f"homotopy_phi{k}.json")
        remember(f"phi{k}", doc["table"])
        for part in ("00", "01", "10", "11"):
            sub = {"name": f"phi{k}.{part}", "table": [e for e in doc["table"] if e["part"] == part]}
            homotopy_parts[(k, part)] = DMorphism.from_json(modules[k], modules[k.succ.succ], sub)
    r = RefinementData.from_json(_read(directory, "refinement.json"), d)
    gdoc = _read(directory, "gradings.json")
    basis = skein_basis()
    gradings = {
        k: GradedAssignment(
            AbelianLattice(gdoc[str(k)]["stabilizer"]),
            {g: tuple(v) for g, v in gdoc[str(k)]["cosets"].items()},
            basis,
        )
        for k in K_ORDER
    }
    return FixtureSet(
        modules=modules,
        map_parts=map_parts,
        homotopy_parts=homotopy_parts,
        refinement=r,
        gradings=gradings,
        base_generators={k: gdoc[str(k)]["base"] for k in K_ORDER},
        grading_table=_read(directory, "grading_table.json"),
        words=words,
    )


def read_golden(name: str, directory: Path | str | None = None):
    return _read(directory if directory is not None else GOLDEN_DIR, name)


# -- named accessors on the transcription ---------------------------------------------

def bsd(k) -> TypeDStructure:
    return transcribed_fixtures().bsd(k)


def skein_map(k) -> DMorphism:
    return transcribed_fixtures().skein_map(k)


def skein_map_part(k, i) -> DMorphism:
    return transcribed_fixtures().skein_map_part(k, str(i))


def skein_homotopy(k) -> DMorphism:
    return transcribed_fixtures().skein_homotopy(k)


def skein_homotopy_part(k, ij: str) -> DMorphism:
    return transcribed_fixtures().homotopy_parts[(SkeinIndex.parse(k), ij)]


def refinement() -> RefinementData:
    return transcribed_fixtures().refinement


def stabilizer(k) -> AbelianLattice:
    return transcribed_fixtures().gradings[SkeinIndex.parse(k)].stabilizer


def transcribed_gradings(k) -> GradedAssignment:
    return transcribed_fixtures().gradings[SkeinIndex.parse(k)]

