"""End-to-end acceptance gates, one PASS/FAIL line per criterion.

Run under pytest, or directly with `python3 tests/test_acceptance.py`.
All comparisons are exact; the only tolerances are the wall-clock limits below.
"""

import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from classtower.artin import artin_pattern, tkt_canonical, tkt_name, Tkt
from classtower.classify import (classify_complex, classify_simple, complex_alpha0,
                                 fixture_ati2, matches, tame_complex_pattern,
                                 three_stage_pattern, two_stage_pattern, wild_complex_patterns,
                                 babu_soluble_length)
from classtower.families import (SIMPLE_VARIANTS, VARIANTS, build, cover_quotient, mainline,
                                 metabelian_family)
from classtower.fixtures import (G16_PATTERNS, H4_PATTERNS, IPAD_Q_EXCITED, IPAD_Q_GROUND,
                                 IPAD_U_EXCITED, IPAD_U_GROUND, SOLUBLE_LENGTH_SPORADIC)
from classtower.ingest import parse_records
from classtower.pc import consistency_check, nilpotency_class
from classtower.pquotient import metabelianization, rank_report
from classtower.sigma import (CapacityError, FieldSignature, find_sigma, schur_status,
                              shafarevich_admissible)

BUILD_LIMIT_S = 5.0
ATI2_LIMIT_S = 60.0
REPORT_LIMIT_S = 30.0
SIGMA_MAX_LO = 10
COVER_MAX_LO = 16  # covers at class 9 have log order 14

COVERS = [(0, 0), (0, -1), (1, 0), (1, -1), (1, 1)]
# cover parameters and the metabelian family with the same counter
COVER_FAMILY = {(0, 0): ("Q", "E6"), (0, -1): ("Q", "E14a"), (1, 0): ("U", "E8"),
                (1, -1): ("U", "E9a"), (1, 1): ("U", "E9b")}
# simple TKT type -> (tree, family variant, cover parameters)
SIMPLE_SOURCES = {"E.6": ("Q", "E6", (0, 0)), "E.14": ("Q", "E14a", (0, -1)),
                  "E.8": ("U", "E8", (1, 0)), "E.9": ("U", "E9a", (1, -1))}


def _line(k, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"


@pytest.fixture
def say(capsys):
    def emit(k, ok, detail):
        with capsys.disabled():
            print("\n" + _line(k, ok, detail))
        assert ok, detail
    return emit


def _simple(tree):
    return [v for v in VARIANTS[tree] if v in SIMPLE_VARIANTS]


def check_family_construction():
    build.cache_clear()
    bad = []
    t0 = time.perf_counter()
    for c in (5, 7, 9, 11):
        for tree in "QU":
            for v in VARIANTS[tree]:
                G = build(metabelian_family(tree, c, v))
                cl = nilpotency_class(G)
                if G.ngens != c + 2 or cl != c or G.ngens - cl != 2 or consistency_check(G):
                    bad.append((tree, v, c))
    dt = time.perf_counter() - t0
    ok = not bad and dt < BUILD_LIMIT_S
    return ok, f"48 families, failures {bad}, {dt:.2f} s (limit {BUILD_LIMIT_S} s)"


def check_tkt_table():
    want = {"Q": {"mainline": "0122", "E6": "1122", "E14a": "3122", "E14b": "3122",
                  "H4a": "2122", "H4b": "2122"},
            "U": {"mainline": "0231", "E8": "1231", "E9a": "2231", "E9b": "2231",
                  "G16a": "4231", "G16b": "4231"}}
    bad = []
    for tree, table in want.items():
        for v, digits in table.items():
            got = artin_pattern(build(metabelian_family(tree, 5, v)), second_order=False).tkt
            if got != tkt_canonical(Tkt.parse(digits)):
                bad.append((tree, v, str(got)))
    return not bad, f"12 variants at c=5 in the expected orbits, mismatches {bad}"


def check_ati():
    want = {("Q", 5): "[32,111,21,21]", ("U", 5): "[32,21,21,21]",
            ("Q", 7): "[43,111,21,21]", ("U", 7): "[43,21,21,21]"}
    bad = []
    for (tree, c), text in want.items():
        for v in _simple(tree):
            got = artin_pattern(build(metabelian_family(tree, c, v)), second_order=False).ati_string()
            if got != text:
                bad.append((tree, v, c, got))
    return not bad, f"first-order invariants for n=0,1, mismatches {bad}"


def check_ati2():
    build.cache_clear()
    bad = []
    t0 = time.perf_counter()
    for n in (0, 1, 2):
        c = 2 * n + 5
        for tree in "QU":
            for v in _simple(tree):
                ap = artin_pattern(build(metabelian_family(tree, c, v)))
                if not matches(ap.ati2, two_stage_pattern(tree, n)):
                    bad.append(("family", tree, v, n))
        for e, ell in COVERS:
            tree = "Q" if e == 0 else "U"
            ap = artin_pattern(build(cover_quotient(e, ell, c)))
            if not matches(ap.ati2, three_stage_pattern(tree, n)):
                bad.append(("cover", e, ell, n))
    dt = time.perf_counter() - t0
    ok = not bad and dt < ATI2_LIMIT_S
    return ok, f"18 families and 15 covers, mismatches {bad}, {dt:.2f} s (limit {ATI2_LIMIT_S} s)"


def check_ranks():
    bad = []
    for n in (0, 1, 2):
        c = 2 * n + 5
        for tree in "QU":
            for v in _simple(tree):
                rr = rank_report(build(metabelian_family(tree, c, v)))
                if (rr.d2, rr.nu) != (3, 0):
                    bad.append(("M", tree, v, c, rr.d2, rr.nu))
        for e, ell in COVERS:
            rr = rank_report(build(cover_quotient(e, ell, c)))
            if not rr.d2 == rr.d1 == 2:
                bad.append(("S", e, ell, c, rr.d1, rr.d2))
    for tree in "QU":
        rr = rank_report(build(mainline(tree, 4)))
        if rr.nu != 2:
            bad.append(("fork", tree, rr.nu))
    return not bad, f"d2(M)=3 with nu(M)=0, d2(S)=d1=2, nu(fork)=2, mismatches {bad}"


def check_sigma_parity():
    bad = []
    for c in (5, 6, 7, 8):
        for tree in "QU":
            for v in VARIANTS[tree]:
                has = find_sigma(build(metabelian_family(tree, c, v)), max_lo=SIGMA_MAX_LO) is not None
                want = c % 2 == 1 or v == "mainline"
                if has != want:
                    bad.append((tree, v, c, has))
    return not bad, f"48 witness searches at c=5..8, mismatches {bad}"


def check_schur():
    bad = []
    real, imag = FieldSignature.quadratic(5), FieldSignature.quadratic(-3)
    for c in (5, 7, 9):
        for e, ell in COVERS:
            st = schur_status(build(cover_quotient(e, ell, c)), max_lo=COVER_MAX_LO)
            adm = [shafarevich_admissible(st["d1"], st["d2"], s).admissible for s in (imag, real)]
            if st["class"] != "Schur" or adm != [True, True]:
                bad.append(("cover", e, ell, c, st["class"], adm))
        for tree in "QU":
            for v in _simple(tree):
                st = schur_status(build(metabelian_family(tree, c, v)), max_lo=COVER_MAX_LO)
                adm = [shafarevich_admissible(st["d1"], st["d2"], s).admissible for s in (imag, real)]
                if st["class"] != "SchurPlusOne" or adm != [False, True]:
                    bad.append(("family", tree, v, c, st["class"], adm))
    return not bad, f"15 covers Schur, 18 simple families Schur+1, Shafarevich verdicts, mismatches {bad}"


def check_bridge():
    bad = []
    for n in (0, 1, 2):
        c = 2 * n + 5
        for (e, ell), (tree, v) in COVER_FAMILY.items():
            a = artin_pattern(metabelianization(build(cover_quotient(e, ell, c))), second_order=False)
            b = artin_pattern(build(metabelian_family(tree, c, v)), second_order=False)
            if (a.tkt, a.ati, a.alpha0) != (b.tkt, b.ati, b.alpha0):
                bad.append((e, ell, c))
    return not bad, f"5 correspondences for n=0,1,2, mismatches {bad}"


def _records():
    out = []
    for n, text in ((0, IPAD_U_GROUND), (0, IPAD_Q_GROUND), (1, IPAD_U_EXCITED), (1, IPAD_Q_EXCITED)):
        out.extend((n, r) for r in parse_records(text) if r.length_claim)
    return out


def _complex_fixture(name, n, claim):
    tree = "Q" if name == "H.4" else "U"
    if n == 0:
        rows = H4_PATTERNS if tree == "Q" else G16_PATTERNS
        token = "TwoOrThree" if claim == "TwoOrThree" else "AtLeast3"
        cols = next(r[2] for r in rows if r[3] == token)
        return fixture_ati2(cols, complex_alpha0(0))
    if claim == "TwoOrThree":
        return tame_complex_pattern(tree, n)
    return wild_complex_patterns(tree, n)[0][1]


def check_fixtures():
    bad = []
    counted = 0
    for n, rec in _records():
        name = tkt_name(rec.tkt)
        c = 2 * n + 5
        if name in SIMPLE_SOURCES:
            tree, v, (e, ell) = SIMPLE_SOURCES[name]
            if rec.length_claim == "Exactly2":
                G = build(metabelian_family(tree, c, v))
            else:
                G = build(cover_quotient(e, ell, c))
            got = classify_simple(rec.tkt, rec.disc, artin_pattern(G).ati2).token
            want = rec.length_claim
        else:
            got = classify_complex(rec.tkt, rec.disc, _complex_fixture(name, n, rec.length_claim)).token
            # an exact length of three is one instance of at least three
            want = "AtLeast3" if rec.length_claim == "Exactly3" else rec.length_claim
        counted += 1
        if got != want:
            bad.append((rec.disc, want, got))
    return not bad, f"{counted} table rows with a length, mismatches {bad}"


def check_babu():
    bad = [(lo, sl) for lo, sl in SOLUBLE_LENGTH_SPORADIC.items()
           if (lo - 2) % 3 or babu_soluble_length((lo - 2) // 3) != sl]
    return not bad and len(SOLUBLE_LENGTH_SPORADIC) == 20, f"20 rows lo=8..65, mismatches {bad}"


def check_properties():
    import test_properties as tp
    names = ["test_collection_is_associative", "test_transfer_is_independent_of_transversal",
             "test_abelian_invariants_match_element_orders", "test_tkt_canonical_under_relabeling",
             "test_tkt_of_group_under_subgroup_reordering"]
    failed = []
    for name in names:
        try:
            getattr(tp, name)()
        except Exception as exc:  # report every property, not only the first failure
            failed.append(f"{name}: {type(exc).__name__}")
    return not failed, f"{len(names)} properties at {tp.CASES} cases each, failures {failed}"


def check_report_performance():
    build.cache_clear()
    t0 = time.perf_counter()
    G = build(metabelian_family("Q", 13, "E6"))
    ap = artin_pattern(G)
    rr = rank_report(G)
    try:
        sigma = find_sigma(G, max_lo=SIGMA_MAX_LO) is not None
    except CapacityError:
        sigma = "skipped (log order above 10)"
    dt = time.perf_counter() - t0
    ok = dt < REPORT_LIMIT_S and G.ngens == 15 and ap.ati2 is not None
    return ok, (f"order 3^{G.ngens}, tkt {ap.tkt}, ati {ap.ati_string()}, d1={rr.d1} d2={rr.d2}, "
                f"sigma {sigma}, {dt:.2f} s (limit {REPORT_LIMIT_S} s)")


CRITERIA = [
    (1, check_family_construction), (2, check_tkt_table), (3, check_ati), (4, check_ati2),
    (5, check_ranks), (6, check_sigma_parity), (7, check_schur), (8, check_bridge),
    (9, check_fixtures), (10, check_babu), (11, check_properties), (12, check_report_performance),
]


@pytest.mark.parametrize("k, check", CRITERIA, ids=[f"criterion_{k}" for k, _ in CRITERIA])
def test_criterion(k, check, say):
    ok, detail = check()
    say(k, ok, detail)


if __name__ == "__main__":
    failures = 0
    for k, check in CRITERIA:
        ok, detail = check()
        failures += not ok
        print(_line(k, ok, detail), flush=True)
    sys.exit(1 if failures else 0)
