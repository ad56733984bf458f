"""The verification campaign behind ``skeinctl verify``.

Each check has a stable id, a one-line claim, a status and, on failure, a
short witness.  Checks run sequentially in registration order and the report
lists them sorted by id, so identical inputs give byte-identical reports.
Exceptions raised inside a check are caught and recorded as failures; the
campaign always runs to completion.
"""
from __future__ import annotations

import traceback
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from pathlib import Path
from typing import Callable, Iterable

from . import kernels
from .algebra import (
    AlgebraElement,
    _codec,
    _diff_generator,
    chord_word,
    diff,
    enumerate_basis,
    generator_text,
    idempotents,
    identity_element,
    left_idem,
    mul,
    right_idem,
)
from .diagram import build_skein_arc_diagram
from .dmod import (
    DMorphism,
    graded_check,
    mapping_cone,
    morphism_boundary,
    morphism_idem_violations,
    morphism_shift,
    propagate_gradings,
    structure_check,
    term_shifts,
)
from .grading import (
    AbelianLattice,
    GradingElement,
    domain_grading,
    group_inv,
    group_mul,
    quotient_invariants,
    refine,
    skein_basis,
)
from .homlab import build_equivalence, verify_triangle
from .models import (
    GOLDEN_DIR,
    K_ORDER,
    FixtureSet,
    SkeinIndex,
    load_fixtures,
    read_golden,
)
from .pairing import box_morphism, box_tensor, chain_cone, cone_identification, regular_module

__all__ = ["CheckResult", "Report", "verify_all", "list_checks", "BASIS_SIZE_A5"]

BASIS_SIZE_A5 = 430  # number of generators of A(Z, 5), frozen from the enumeration
LATTICE_EXAMPLE_NAMES = ("6.1", "6.2")


@dataclass
class CheckResult:
    id: str
    claim: str
    status: bool
    witness: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"id": self.id, "claim": self.claim, "status": "pass" if self.status else "fail"}
        if self.witness:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.status for c in self.checks)

    def failed(self) -> list[str]:
        return [c.id for c in self.checks if not c.status]

    def summary(self) -> dict:
        n_pass = sum(c.status for c in self.checks)
        return {"total": len(self.checks), "passed": n_pass, "failed": len(self.checks) - n_pass}

    def to_json(self) -> dict:
        return {
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.id)],
            "summary": self.summary(),
            "result": "pass" if self.passed else "fail",
        }

    def text(self) -> str:
        lines = []
        for c in sorted(self.checks, key=lambda c: c.id):
            lines.append(f"{'PASS' if c.status else 'FAIL'}  {c.id}  {c.claim}")
            if not c.status:
                lines.extend(f"      {w}" for w in c.witness[:4])
        s = self.summary()
        lines.append(f"{s['passed']}/{s['total']} checks passed")
        return "\n".join(lines)


Check = Callable[[], "tuple[bool, list[str]] | bool"]


class _Campaign:
    def __init__(self):
        self.entries: list[tuple[str, str, Check]] = []

    def add(self, cid: str, claim: str, fn: Check) -> None:
        self.entries.append((cid, claim, fn))

    def run(self, only: Iterable[str] | None = None) -> Report:
        prefixes = list(only or [])
        out = []
        for cid, claim, fn in self.entries:
            if prefixes and not any(cid == p or cid.startswith(p + ".") for p in prefixes):
                continue
            try:
                res = fn()
                ok, wit = (res, []) if isinstance(res, bool) else res
            except Exception as exc:  # recorded, never propagated
                ok, wit = False, [f"{type(exc).__name__}: {exc}"] + traceback.format_exc().splitlines()[-3:-1]
            out.append(CheckResult(cid, claim, bool(ok), list(wit)))
        return Report(out)


# -- algebra axioms (independent of fixtures, computed once per process) ----------------------

@cache
def _algebra_data():
    d = build_skein_arc_diagram()
    basis = enumerate_basis(d, 5)
    codec = _codec(d)
    codes = [codec.encode(g) for g in basis]
    table = kernels.mul_index_table(codes, codec.cls, codec.n)
    index = {g: i for i, g in enumerate(basis)}
    dd = [sorted(index[h] for h in _diff_generator(d, g)) for g in basis]
    return d, basis, table, dd


@cache
def _algebra_results() -> dict[str, tuple[bool, list[str]]]:
    d, basis, table, dd = _algebra_data()
    res: dict[str, tuple[bool, list[str]]] = {}
    res["basis_count"] = (len(basis) == BASIS_SIZE_A5, [f"found {len(basis)}"])

    bad = []
    for i in range(len(basis)):
        acc: set = set()
        for u in dd[i]:
            acc ^= set(dd[u])
        if acc:
            bad.append(f"d(d({generator_text(basis[i])})) != 0")
    res["d_squared"] = (not bad, bad[:5])

    lidem = [left_idem(d, g) for g in basis]
    ridem = [right_idem(d, g) for g in basis]
    bad = []
    if (table == kernels.OUTSIDE).any():
        bad.append("a product left the basis")
    for i in range(len(basis)):
        for j in range(len(basis)):
            if ridem[i] != lidem[j]:
                continue
            ab = table[i, j]
            lhs = set(dd[ab]) if ab >= 0 else set()
            rhs: set = set()
            for u in dd[i]:
                if table[u, j] >= 0:
                    rhs ^= {int(table[u, j])}
            for v in dd[j]:
                if table[i, v] >= 0:
                    rhs ^= {int(table[i, v])}
            if lhs != rhs:
                bad.append(f"Leibniz fails for {generator_text(basis[i])}, {generator_text(basis[j])}")
    res["leibniz"] = (not bad, bad[:5])

    viol = kernels.associativity_violations(table, 5)
    res["associativity"] = (not viol, [
        f"({generator_text(basis[i])} {generator_text(basis[j])}) {generator_text(basis[k])} differs"
        for i, j, k in viol
    ])

    bad = []
    ids = idempotents(d, 5)
    for a in ids:
        for b in ids:
            want = a if a == b else AlgebraElement(d)
            if mul(a, b) != want:
                bad.append(f"{a!r} * {b!r} != {want!r}")
    one = identity_element(d, 5)
    for g in basis:
        e = AlgebraElement(d, [g])
        if mul(one, e) != e or mul(e, one) != e:
            bad.append(f"I does not fix {generator_text(g)}")
    res["idempotents"] = (not bad, bad[:5])

    # digit rule on all nonzero products of up to three single chords
    labels = sorted(d.reeb_chords, key=lambda s: (len(s), s))
    limit = {"1": 1, "3": 1, "4": 1, "6": 1, "7": 1, "8": 1, "2": 2, "5": 2}
    bad = []
    singles = {lab: chord_word([lab], d) for lab in labels}
    prods = {(a,): singles[a] for a in labels}
    for length in (2, 3):
        new = {}
        for w, el in prods.items():
            if len(w) != length - 1 or not el:
                continue
            for b in labels:
                p = mul(el, singles[b])
                if p:
                    new[w + (b,)] = p
        prods.update(new)
    for w, el in prods.items():
        if not el:
            continue
        digits = "".join(w)
        for ch, cap in limit.items():
            if digits.count(ch) > cap:
                bad.append(f"nonzero word ({','.join(w)}) repeats digit {ch}")
    res["digit_rule"] = (not bad, bad[:5])

    bad = []
    for long, digit in (("123", "3"), ("456", "6"), ("78", "8")):
        for j in labels:
            if digit in j and mul(singles[long], singles[j]):
                bad.append(f"({long},{j}) != 0")
    res["long_chords"] = (not bad, bad)

    cw = lambda s: chord_word(s.split(","), d)  # noqa: E731
    checks = {
        "(12,3,2) = (2,1,23)": cw("12,3,2") == cw("2,1,23") and bool(cw("12,3,2")),
        "(12,23) = (23,12) = 0": not cw("12,23") and not cw("23,12"),
        "(45,56) = 0": not cw("45,56"),
        "(45,4) = 0": not cw("45,4"),
        "(45,6,5,2) = (5,4,56,2)": cw("45,6,5,2") == cw("5,4,56,2") and bool(cw("45,6,5,2")),
        "d(4,6,7,8,5) = 0 = (4,6,7,8,5)^2": bool(cw("4,6,7,8,5")) and not diff(cw("4,6,7,8,5"))
        and not mul(cw("4,6,7,8,5"), cw("4,6,7,8,5")),
        "d(12,3,4,56,2) = (2,1,3,4,56,2) + (12,3,4,6,5,2)":
            diff(cw("12,3,4,56,2")) == cw("2,1,3,4,56,2") + cw("12,3,4,6,5,2"),
    }
    bad = [k for k, v in checks.items() if not v]
    res["identities"] = (not bad, bad)
    return res


# -- the campaign ---------------------------------------------------------------------------

def _resolve_dir(golden_dir):
    return GOLDEN_DIR if golden_dir is None else Path(golden_dir)


def _build(fx: FixtureSet, golden_dir) -> _Campaign:
    gd = _resolve_dir(golden_dir)
    camp = _Campaign()
    d = build_skein_arc_diagram()
    r = fx.refinement
    ks = list(K_ORDER)

    def alg(name):
        return lambda: _algebra_results()[name]

    camp.add("algebra.basis_count", f"A(Z,5) has {BASIS_SIZE_A5} basis generators", alg("basis_count"))
    camp.add("algebra.d_squared", "d^2 = 0 on every basis generator", alg("d_squared"))
    camp.add("algebra.leibniz", "d(ab) = d(a)b + a d(b) for all basis pairs", alg("leibniz"))
    camp.add("algebra.associativity", "(ab)c = a(bc) for all basis triples", alg("associativity"))
    camp.add("algebra.idempotents", "idempotents are orthogonal and I is a unit", alg("idempotents"))
    camp.add("algebra.digit_rule", "nonzero words use digits 1,3,4,6,7,8 once and 2,5 at most twice",
             alg("digit_rule"))
    camp.add("algebra.long_chords", "(123), (456), (78) followed by an overlapping chord vanish",
             alg("long_chords"))
    camp.add("algebra.identities", "worked product and differential identities", alg("identities"))

    for k in ks:
        camp.add(f"structure.{k}", f"BSD(B{k}) satisfies the type-D structure equation",
                 lambda k=k: _report(structure_check(fx.bsd(k))))

    for k in ks:
        for part in ("0", "1"):
            camp.add(f"maps.cycle.f{k}.{part}", f"f_{k},{part} respects idempotents and is a type-D homomorphism",
                     lambda k=k, part=part: _map_cycle(fx.skein_map_part(k, part)))

    fs = {k: fx.skein_map(k) for k in ks}
    phis = {k: fx.skein_homotopy(k) for k in ks}
    tri_cache: dict = {}

    def tri(cid):
        if "r" not in tri_cache:
            tri_cache["r"] = verify_triangle(fs, phis)
        cert = tri_cache["r"].certificates[cid]
        return cert.status, cert.witness

    for cond, text in (("1", "∂f_k = 0"), ("2", "f_{k+1} f_k + ∂φ_k = 0"), ("3", "f_{k+2} φ_k + φ_{k+1} f_k = Id")):
        for k in ks:
            camp.add(f"triangle.cond{cond}.{k}", f"{text} at k={k}",
                     lambda c=f"cond{cond}.{k}": tri(c))

    eq_cache: dict = {}

    def equiv(k):
        if k not in eq_cache:
            eq_cache[k] = build_equivalence(k, fs, phis)
        return eq_cache[k]

    names = ["cone", "G", "Psi", "PsiG", "GPsi"]
    claims = {
        "cone": "f_{k+1} is a cycle, so Cone(f_{k+1}) is a type-D structure",
        "G": "G(w) = (f_k w, φ_k w) is a cycle",
        "Psi": "Ψ(u, v) = φ_{k+1} u + f_{k+2} v is a cycle",
        "PsiG": "Ψ G = Id exactly",
        "GPsi": "G Ψ + Id_Cone = ∂H for some H",
    }
    for k in ks:
        for i, nm in enumerate(names):
            camp.add(f"equivalence.{k}.{nm}", f"{claims[nm]} (k={k})",
                     lambda k=k, i=i: (equiv(k).certificates[i].status, equiv(k).certificates[i].witness))
        camp.add(f"equivalence.{k}.stored_witness", f"the stored homotopy H solves ∂H = G Ψ + Id_Cone (k={k})",
                 lambda k=k: _stored_h(equiv(k), gd, k))

    camp.add("gradings.refinement", "r is defined on every idempotent, with ∂'r(I) = I - I_0 and r(I_0) = 0",
             lambda: _refinement(r, d))
    camp.add("gradings.conjugation", "(0,[ρ5]+[ρ8])(1,-[ρ456]-[ρ78])(0,-[ρ5]-[ρ8]) = (2,-[ρ456]-[ρ78])",
             lambda: _conjugation(d))
    camp.add("gradings.periodic_domain", "the periodic domain at x refines to -A2-A3, generating P(x)",
             lambda: _periodic(fx, gd, d))
    camp.add("gradings.table.refined", "refined gradings of the 19 tabulated coefficients",
             lambda: _table(fx, "refined"))
    camp.add("gradings.table.skein", "skein-reduced gradings of the 19 tabulated coefficients",
             lambda: _table(fx, "skein"))
    for k in ks:
        camp.add(f"gradings.cosets.{k}", f"generator gradings of BSD(B{k}) propagate from the base generator",
                 lambda k=k: _cosets(fx, k))
        camp.add(f"gradings.stabilizer.{k}", f"δ-loops of BSD(B{k}) span the stabilizer",
                 lambda k=k: _stabilizer(fx, k))
        camp.add(f"graded.{k}", f"δ lowers gradings by λ on BSD(B{k})",
                 lambda k=k: _report(graded_check(fx.bsd(k), fx.gradings[k], r)))

    expected = read_golden("expected_shifts.json", gd)
    shift_cache: dict = {}

    def shift(k):
        if k not in shift_cache:
            shift_cache[k] = morphism_shift(fs[k], fx.gradings[k], fx.gradings[k.succ], r)
        return shift_cache[k]

    for k in ks:
        camp.add(f"shifts.f{k}", f"f_{k} shifts skein gradings by {expected.get(str(k), '?')}",
                 lambda k=k: (shift(k) == expected[str(k)], [f"computed {shift(k)}"]))
        camp.add(f"shifts.parts.f{k}", f"f_{k},0 and f_{k},1 are each homogeneous of the same shift",
                 lambda k=k: _parts_homogeneous(fx, k))
        camp.add(f"shifts.phi{k}", f"φ_{k} is homogeneous of shift s(f_k) + s(f_(k+1)) + 1",
                 lambda k=k: _phi_shift(fx, k, shift))

    for k in ks:
        camp.add(f"pairing.d2.{k}", f"∂² = 0 on A ⊠ BSD(B{k})", lambda k=k: _box(fx, k, "d2"))
        camp.add(f"pairing.chain_map.{k}", f"Id ⊠ f_{k} is a chain map", lambda k=k: _box(fx, k, "chain"))
        camp.add(f"pairing.cone.{k}", f"Cone(Id ⊠ f_{k}) = A ⊠ Cone(f_{k})", lambda k=k: _box(fx, k, "cone"))

    examples = read_golden("lattice_examples.json", gd)
    sides = [str(k) for k in ks] + ["skein"]
    for name in LATTICE_EXAMPLE_NAMES:
        for side in sides:
            camp.add(f"lattice.{name}.{side}", f"double coset quotient of example {name} on side {side}",
                     lambda name=name, side=side: _lattice(examples, name, side, fx))
    return camp


def _report(rep) -> tuple[bool, list[str]]:
    return rep.passed, rep.violations[:5]


def _zero(f: DMorphism) -> tuple[bool, list[str]]:
    return f.is_zero(), f.describe()


def _map_cycle(f: DMorphism) -> tuple[bool, list[str]]:
    bad = morphism_idem_violations(f)
    ok, wit = _zero(morphism_boundary(f))
    return ok and not bad, bad + wit


def _stored_h(eq, gd, k) -> tuple[bool, list[str]]:
    from .dmod import compose, identity_morphism
    doc = read_golden(f"cone_homotopy_{k}.json", gd)
    h = DMorphism.from_json(eq.cone, eq.cone, doc)
    target = compose(eq.G, eq.Psi) + identity_morphism(eq.cone)
    resid = morphism_boundary(h) + target
    return resid.is_zero(), resid.describe()


def _refinement(r, d) -> tuple[bool, list[str]]:
    missing = [sorted(i.terms)[0].occupied for i in idempotents(d, 5)
               if frozenset(sorted(i.terms)[0].occupied) not in r.assignment]
    bad = [f"no value on idempotent {list(m)}" for m in missing]
    bad += [f"defect at {sorted(i)}" for i in r.boundary_defects()]
    return not bad, bad


def _conjugation(d) -> tuple[bool, list[str]]:
    cc = lambda *ls: d.chord_class([d.chord(x) for x in ls])  # noqa: E731
    g = GradingElement.make(0, cc("5", "8"), d)
    b = GradingElement.make(1, -cc("456", "78"), d)
    out = group_mul(group_mul(g, b), group_inv(g))
    want = GradingElement.make(2, -cc("456", "78"), d)
    return out == want, [f"got {out}"]


def _periodic(fx: FixtureSet, gd, d) -> tuple[bool, list[str]]:
    lit = read_golden("periodic_domain_x.json", gd)
    bd = None
    for lab, c in lit["boundary"].items():
        term = d.chord_class([d.chord(lab)]) * int(c)
        bd = term if bd is None else bd + term
    g = domain_grading(Fraction(lit["e"]), Fraction(lit["n1"]), Fraction(lit["n2"]), bd, d)
    x_idem = fx.bsd(SkeinIndex.ONE).idem["x"]
    rx = fx.refinement(x_idem)
    refined = group_mul(group_mul(rx, g), group_inv(rx))
    coords = skein_basis().coordinates(refined)
    lat = AbelianLattice([coords])
    ok = lat == fx.gradings[SkeinIndex.ONE].stabilizer
    return ok, [f"gr(B) = {g}, refined {refined}, coordinates {coords}"]


def _table(fx: FixtureSet, which: str) -> tuple[bool, list[str]]:
    d = build_skein_arc_diagram()
    basis = skein_basis()
    bad = []
    if len(fx.grading_table) != 19:
        bad.append(f"table has {len(fx.grading_table)} rows")
    for row in fx.grading_table:
        w = row["word"]
        el = chord_word([] if w == "I" else w.split(","), d)
        g = refine(el, fx.refinement)
        if which == "refined":
            want = GradingElement.from_json(row["refined"], d)
            if g != want:
                bad.append(f"({w}): computed {g}, table {want}")
        else:
            sk = basis.coordinates(g)[0]
            if sk != row["skein"]:
                bad.append(f"({w}): computed {sk}, table {row['skein']}")
    return not bad, bad


def _cosets(fx: FixtureSet, k) -> tuple[bool, list[str]]:
    m = fx.bsd(k)
    ga = fx.gradings[k]
    coords, _ = propagate_gradings(m, fx.base_generators[k], fx.refinement)
    bad = []
    base_shift = ga.cosets[fx.base_generators[k]]
    for g in m.generators:
        if g not in coords:
            bad.append(f"{g} is not reachable from the base generator")
            continue
        want = ga.cosets[g]
        have = tuple(a + b for a, b in zip(coords[g], base_shift))
        if not ga.same_coset(have, want):
            bad.append(f"{g}: propagated {have}, transcribed {want}")
        if want[0] != 0:
            bad.append(f"{g}: skein-reduced grading {want[0]} != 0")
    return not bad, bad


def _stabilizer(fx: FixtureSet, k) -> tuple[bool, list[str]]:
    _, loops = propagate_gradings(fx.bsd(k), fx.base_generators[k], fx.refinement)
    derived = AbelianLattice(loops or [(0, 0, 0, 0)])
    ok = derived == fx.gradings[k].stabilizer
    return ok, [f"loops {sorted(set(loops))}, transcribed {list(fx.gradings[k].stabilizer.generators)}"]


def _parts_homogeneous(fx: FixtureSet, k) -> tuple[bool, list[str]]:
    vals = {}
    for part in ("0", "1"):
        sh = set(term_shifts(fx.skein_map_part(k, part), fx.gradings[k], fx.gradings[k.succ], fx.refinement).values())
        vals[part] = sh
    allv = vals["0"] | vals["1"]
    return len(vals["0"]) <= 1 and len(vals["1"]) <= 1 and len(allv) == 1, [f"shifts {vals}"]


def _phi_shift(fx: FixtureSet, k, shift) -> tuple[bool, list[str]]:
    phi = fx.skein_homotopy(k)
    s = morphism_shift(phi, fx.gradings[k], fx.gradings[k.succ.succ], fx.refinement)
    if s is None:
        return True, ["φ is zero"]
    want = shift(k) + shift(k.succ) + 1
    return s == want, [f"computed {s}, forced {want}"]


@cache
def _regular():
    return regular_module()


def _box(fx: FixtureSet, k, what: str) -> tuple[bool, list[str]]:
    n = _regular()
    if what == "d2":
        b = box_tensor(n, fx.bsd(k))
        return b.squares_to_zero(), [f"{len(b)} generators"]
    f = fx.skein_map(k)
    src = box_tensor(n, f.source)
    tgt = box_tensor(n, f.target)
    phi = box_morphism(n, f, src, tgt)
    if what == "chain":
        return phi.is_chain_map(), []
    cone = mapping_cone(f, check=False)
    c1 = chain_cone(phi)
    c2 = box_tensor(n, cone)
    ident = cone_identification(n, f, cone)
    bad = []
    if len(ident) != len(c1.generators) or set(ident.values()) != set(c2.generators):
        bad.append("generator sets do not correspond")
    else:
        for g in c1.generators:
            if frozenset(ident[h] for h in c1.boundary[g]) != c2.boundary[ident[g]]:
                bad.append(f"differentials differ at {c1.label(g)}")
    return not bad, bad[:5]


def _lattice(examples, name, side, fx: FixtureSet) -> tuple[bool, list[str]]:
    ex = examples.get(name)
    case = next((c for c in (ex or {}).get("cases", []) if c.get("side") == side), None)
    if case is None:
        return False, [f"example {name} has no case for side {side}"]
    right = AbelianLattice([tuple(v) for v in case["right"]] or [(0, 0, 0, 0)])
    if side == "skein":
        want_right = AbelianLattice([(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    else:
        want_right = fx.gradings[SkeinIndex.parse(side)].stabilizer
    bad = []
    if right != want_right:
        bad.append(f"right subgroup {case['right']} differs from {list(want_right.generators)}")
    rel = AbelianLattice([tuple(v) for v in ex["left"]] + [tuple(v) for v in case["right"]])
    got = quotient_invariants(AbelianLattice.full(4), rel)
    if sorted(got) != sorted(case["expected"]):
        bad.append(f"computed {got}, expected {case['expected']}")
    return not bad, bad


def verify_all(fixtures: FixtureSet | None = None, golden_dir=None, only: Iterable[str] | None = None) -> Report:
    """Run every check (or those whose id starts with a prefix in ``only``)."""
    fx = fixtures if fixtures is not None else load_fixtures(golden_dir)
    return _build(fx, golden_dir).run(only)


def list_checks(golden_dir=None) -> list[str]:
    fx = load_fixtures(golden_dir)
    return sorted(cid for cid, _, _ in _build(fx, golden_dir).entries)
