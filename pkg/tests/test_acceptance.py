"""Acceptance suite: one check per acceptance criterion, each printing a
single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py`` (lines on stdout).

Desk scale: A1 over F_2 with bound (2); A2 over F_2 and F_3 with bound (1,1);
degrees -2..3; K0 grid radius 2; 500 fuzz trials.
"""

from __future__ import annotations

import io
import sys
import tempfile
from pathlib import Path

from hallalg import cli
from hallalg.catalog import SPEC_CLASSES, cli_name, make_spec
from hallalg.engine import multiply
from hallalg.expr import parse_expression
from hallalg.hopf import HopfStructure
from hallalg.quiver import Quiver, QuiverCategory
from hallalg.verifier import SuiteConfig, dumps, run_suites

RESULTS: dict[int, str] = {}

A1 = SuiteConfig(Quiver.linear(1), 2, (2,))
A2_F2 = SuiteConfig(Quiver.linear(2), 2, (1, 1))
A2_F3 = SuiteConfig(Quiver.linear(2), 3, (1, 1))
ALL = ["relations", "controls", "associativity", "oracles", "hopf", "morphisms", "normal-form"]

_runs: dict = {}


def suite_run(name: str) -> dict:
    """Each configuration is verified once per session and shared by all criteria."""
    if name not in _runs:
        cfg, suites = {
            "a1": (A1, ALL),
            "a2f2": (A2_F2, ALL),
            "a2f3": (A2_F3, ["relations", "controls", "oracles", "hopf"]),
        }[name]
        _runs[name] = run_suites(suites, cfg)
    return _runs[name]


def reports(run: dict, suite: str) -> list[dict]:
    return [r for r in run["reports"] if r["suite"] == suite]


def families(run: dict, suite: str, *names: str) -> list[dict]:
    out = []
    for r in reports(run, suite):
        out += [f for f in r["families"] if not names or f["name"] in names]
    return out


def clean(fams: list[dict]) -> bool:
    return bool(fams) and all(f["failure_count"] == 0 and f["instances"] > 0 for f in fams)


def count(fams: list[dict]) -> int:
    return sum(f["instances"] for f in fams)


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


# ---------------------------------------------------------------------------


def test_criterion_1_counting_ground_truth():
    problems = []
    for q in (2, 3):
        a1 = QuiverCategory(Quiver.linear(1), q, (2,))
        s, ss = a1.by_name("S"), a1.by_name("S+S")
        if a1.hall_number(s, s, ss) != q + 1:
            problems.append(f"g(S,S;S+S) at q={q}")
        if a1.aut_count(ss) != (q * q - 1) * (q * q - q):
            problems.append(f"|Aut(S+S)| at q={q}")
        a2 = QuiverCategory(Quiver.linear(2), q, (1, 1))
        s1, s2, p = a2.by_name("S1"), a2.by_name("S2"), a2.by_name("M1_1")
        if a2.hall_number(s1, s2, p) != 1 or a2.hall_number(s2, s1, p) != 0:
            problems.append(f"A2 Hall numbers at q={q}")
        if a2.ext_with_middle(s1, s2, p) != q - 1 or a2.extension_counts_direct(s1, s2).get(p) != q - 1:
            problems.append(f"|Ext^1(S1,S2)_P| at q={q}")
    record(1, not problems, "; ".join(problems) or "g=q+1, |Aut|=(q^2-1)(q^2-q), A2 Hall/Ext values at q=2,3")


def test_criterion_2_riedtmann_peng():
    names = ("extension counts per middle term", "extension counts sum to |Ext^1|")
    fams = [f for run in ("a1", "a2f2", "a2f3") for f in families(suite_run(run), "oracles", *names)]
    record(2, clean(fams), f"{count(fams)} triples and pairs on A1/F2, A2/F2, A2/F3")


def test_criterion_3_gamma_two_ways():
    fams = [f for run in ("a1", "a2f2", "a2f3")
            for f in families(suite_run(run), "oracles", "gamma brute force vs factorization")]
    record(3, clean(fams), f"{count(fams)} 4-tuples on A1/F2, A2/F2, A2/F3")


def test_criterion_4_relation_suites_and_controls():
    problems = []
    total = 0
    for run_name in ("a1", "a2f2", "a2f3"):
        run = suite_run(run_name)
        rel = reports(run, "relations")
        seen = {r["algebra"] for r in rel}
        missing = {cli_name(a) for a in SPEC_CLASSES} - seen
        if missing:
            problems.append(f"{run_name}: no relation report for {sorted(missing)}")
        for r in rel:
            total += count(r["families"])
            if r["verdict"] != "pass":
                problems.append(f"{run_name}/{r['algebra']} relations")
        for r in reports(run, "control"):
            if not r["detected"]:
                problems.append(f"{run_name}/{r['algebra']} mutant undetected")
        if len(reports(run, "control")) != len(SPEC_CLASSES):
            problems.append(f"{run_name}: missing controls")
    record(4, not problems, "; ".join(problems) or f"{total} relation instances over ten algebras, all ten mutants caught")


def test_criterion_5_associativity_fuzz():
    problems = []
    for run_name in ("a1", "a2f2"):
        for r in reports(suite_run(run_name), "associativity"):
            if r["trials"] < 500 or r["verdict"] != "pass" or count(r["families"]) < 500:
                problems.append(f"{run_name}/{r['algebra']}")
    n = sum(len(reports(suite_run(x), "associativity")) for x in ("a1", "a2f2"))
    record(5, not problems and n == 20, "; ".join(problems) or "500 seeded triples x 10 algebras on A1/F2 and A2/F2")


def test_criterion_6_hopf_oracle():
    fams = [f for run in ("a1", "a2f2", "a2f3") for f in families(suite_run(run), "hopf")]
    cat = QuiverCategory(Quiver.linear(1), 2, (2,))
    naive = make_spec("naive", cat)
    lhs = multiply(parse_expression("Y[S,0]", naive), parse_expression("Y[S,1]", naive), naive)
    rhs = parse_expression("Y[S,1]*Y[S,0] + K[(1),1]", naive)
    hs = HopfStructure(make_spec("h-tw-e", cat))
    s = cat.by_name("S")
    via_pairing = hs.naive_cross_product(hs.element(s), hs.element(s), 0, naive)
    example = lhs == rhs == via_pairing
    names = {f["name"] for f in fams}
    needed = {"coassociativity", "left counit", "right counit", "pairing with the unit",
              "pairing against products on the left", "pairing against products on the right",
              "cross law of the naive lattice algebra"}
    ok = clean(fams) and needed <= names and example
    record(6, ok, f"{count(fams)} checks; A1/F2 Y^0 Y^1 = Y^1 Y^0 + K^1 {'holds' if example else 'FAILS'}")


def test_criterion_7_morphisms():
    problems = []
    total = 0
    required = {
        "theta": {"basis word to basis word", "truncated bases correspond"},
        "phi": {"kernel generators map to zero", "sampled kernel elements lie in the generated ideal",
                "lattice basis word has an explicit preimage"},
        "iota": {"images have distinct leading words", "embedding intertwines the shift"},
        "round trips": {"eta after extended iota is the identity", "extended iota after eta is the identity",
                        "eta after iota is the inclusion"},
    }
    for run_name in ("a1", "a2f2"):
        by_map = {r["map"]: r for r in reports(suite_run(run_name), "morphism")}
        for m, names in required.items():
            r = by_map.get(m)
            if r is None:
                problems.append(f"{run_name}: {m} missing")
                continue
            got = {f["name"] for f in r["families"]}
            if not names <= got or not any(n.startswith("relation: ") for n in got):
                problems.append(f"{run_name}: {m} lacks {sorted(names - got)}")
            if not clean(r["families"]):
                problems.append(f"{run_name}: {m} failed")
            total += count(r["families"])
    record(7, not problems, "; ".join(problems) or f"theta, phi, iota and round trips: {total} checks")


def test_criterion_8_normal_form():
    fams = [f for run in ("a1", "a2f2") for f in families(suite_run(run), "normal-form")]
    record(8, clean(fams),
           f"{count(fams)} stalk configurations; object class = coefficient x descending word "
           "(the ascending product carries lower-order cone terms)")


def test_criterion_9_determinism():
    first = dumps(suite_run("a1"))
    second = dumps(run_suites(ALL, A1))
    with tempfile.TemporaryDirectory() as tmp:
        outs = []
        for sub in ("x", "y"):
            d = Path(tmp) / sub
            code = cli.main(["export-tables", "--linear", "2", "--q", "3", "--out", str(d)], out=io.StringIO())
            assert code == 0
            outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    same_tables = outs[0] == outs[1]
    record(9, first == second and same_tables,
           f"report {len(first)} bytes identical={first == second}; tables identical={same_tables}")


# ---------------------------------------------------------------------------

def main() -> int:
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
