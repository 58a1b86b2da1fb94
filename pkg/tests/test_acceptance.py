"""Acceptance checks, one per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import json
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fibrcheck.cli import RunConfig, main, run_analyze
from fibrcheck.data import example_path, load_example
from fibrcheck.groups import (
    GroupHom,
    TargetGroup,
    apply_word,
    div_phi_g,
    enumerate_epimorphisms,
    generated_subgroup_order,
    perm_from_cycles,
    perm_from_one_line,
)
from fibrcheck.obstruct import (
    OBSTRUCTED,
    CriterionInput,
    baseline_check,
    is_monic,
    permutation_criterion,
    regular_criterion,
)
from fibrcheck.polymat import NEG_INF, LaurentPoly, PolyMatrix, det_int_poly, lp_degree, lp_normalize, smith_normal_form
from fibrcheck.twisted import DeltaSet, Representation, build_complex, compute_deltas, delta1, ordinary_alexander
from fibrcheck.words import EMPTY, FreeRingElement, Word, abelianization_phi, fox_derivative, surgery_presentation

from oracles import brute_force_epis, canonical_class, cofactor_det

RESULTS = []
WITNESS_FILE = Path(example_path("pretzel_5_-3_5_witness"))


def _timed(fn):
    t0 = time.monotonic()
    ok, detail = fn()
    return ok, detail, time.monotonic() - t0


# 1 ---------------------------------------------------------------------------


def check_pretzel_baseline():
    t0 = time.monotonic()
    p = load_example("pretzel_5_-3_5")
    alex = ordinary_alexander(p)
    v = baseline_check(alex, p.genus)
    dt = time.monotonic() - t0
    ok = (alex == LaurentPoly([1, -3, 1]) and is_monic(alex) and lp_degree(alex) == 2 * p.genus
          and v.status == "Consistent" and dt < 1.0)
    return ok, f"Delta = {alex}, baseline {v.status}, {dt:.3f}s"


# 2 ---------------------------------------------------------------------------


def _witness_texts():
    doc = json.loads(WITNESS_FILE.read_text())
    p = load_example("pretzel_5_-3_5")
    return p, [doc["images_text"][g] for g in p.generators]


def _relators_ok(p, images):
    g = TargetGroup("S", 5)
    h = GroupHom(g, tuple(images))
    words = list(p.relators) + [p.longitude]
    return sum(apply_word(h, w).is_identity() for w in words), len(words)


def check_witness_validation():
    t0 = time.monotonic()
    p, texts = _witness_texts()
    cycle = [perm_from_cycles(t, 5) for t in texts]
    fallback = [x.inverse() for x in cycle]
    notes = []
    ok = False
    for label, imgs in (("cycle", cycle), ("right-to-left", fallback)):
        good, total = _relators_ok(p, imgs)
        order = generated_subgroup_order(imgs, 5)
        notes.append(f"{label}: {good}/{total} relators, image order {order}")
        if good == total and order == 120:
            ok = True
    oneline = [perm_from_one_line(t, 5) for t in texts]
    good, total = _relators_ok(p, oneline)
    notes.append(f"(one-line reading: {good}/{total}, image order {generated_subgroup_order(oneline, 5)})")
    dt = time.monotonic() - t0
    return ok and dt < 1.0, "; ".join(notes)


# 3 ---------------------------------------------------------------------------


def check_vanishing_witness():
    t0 = time.monotonic()
    p, texts = _witness_texts()
    n = surgery_presentation(p)
    phi = abelianization_phi(n)
    readings = [
        ("cycle", [perm_from_cycles(t, 5) for t in texts]),
        ("right-to-left", [perm_from_cycles(t, 5).inverse() for t in texts]),
        ("one-line", [perm_from_one_line(t, 5) for t in texts]),
    ]
    label, imgs = next((lab, im) for lab, im in readings if _relators_ok(p, im)[0] == len(n.relators))
    g = TargetGroup("S", 5)
    rep = Representation.permutation(g, 7)
    d = compute_deltas(build_complex(n, GroupHom(g, tuple(imgs)), rep, phi))
    v = permutation_criterion(CriterionInput(0, d, rep, g))
    code = main(["analyze", example_path("pretzel_5_-3_5"), "--groups", "S5", "--primes", "7"])
    dt = time.monotonic() - t0
    ok = (d.delta1.is_zero() and d.degrees[0] == d.degrees[2] == 1 and v.status == OBSTRUCTED
          and code == 10 and dt < 300)
    return ok, (f"{label} reading: Delta_1 = {d.delta1}, degrees {d.degrees}, verdict {v.status}; "
                f"CLI groups=S5 primes=7 exit {code}")


# 4 ---------------------------------------------------------------------------


def check_search_completeness():
    t0 = time.monotonic()
    notes = []
    ok = True
    for knot in ("trefoil", "figure_eight"):
        p = load_example(knot)
        homs = enumerate_epimorphisms(p, TargetGroup("S", 3))
        oracle = brute_force_epis(p, "S", 3)
        mine = {canonical_class(h.images, "S", 3) for h in homs}
        ok &= len(homs) == len(oracle) and mine == oracle
        notes.append(f"{knot}: {len(homs)} vs oracle {len(oracle)}")
    dt = time.monotonic() - t0
    return ok and dt < 1.0, ", ".join(notes) + f", {dt:.3f}s"


# 5 ---------------------------------------------------------------------------


def check_fibered_sanity():
    t0 = time.monotonic()
    checked = 0
    ok = True
    for knot in ("trefoil", "figure_eight"):
        n = surgery_presentation(load_example(knot))
        phi = abelianization_phi(n)
        for group in ("S3", "S4"):
            g = TargetGroup.parse(group)
            for h in enumerate_epimorphisms(n, g):
                for p in (5, 7, 11, 13):
                    if g.order % p == 0:
                        continue
                    d0, d1, d2 = compute_deltas(build_complex(n, h, Representation.permutation(g, p), phi)).degrees
                    ok &= d1 != NEG_INF and d1 == g.k * 0 + d0 + d2
                    checked += 1
    dt = time.monotonic() - t0
    return ok and checked > 0 and dt < 60, f"{checked} (hom, prime) pairs, {dt:.2f}s"


# 6 ---------------------------------------------------------------------------


def check_mod_p():
    ok = True
    count = 0
    for knot in ("pretzel_5_-3_5", "trefoil", "figure_eight", "unknot"):
        ext = load_example(knot)
        alex = ordinary_alexander(ext)
        pres = [ext] + ([surgery_presentation(ext)] if ext.longitude is not None else [])
        for p in (3, 5, 7, 11):
            red = lp_normalize(alex.reduce(p))
            if red.is_zero():
                continue
            for pr in pres:
                d = delta1(build_complex(pr, None, Representation.trivial(p), abelianization_phi(pr)))
                ok &= d == red
                count += 1
    return ok, f"{count} comparisons"


# 7 ---------------------------------------------------------------------------


def check_direct_sum():
    ok = True
    count = 0
    runs = [("trefoil", "S3"), ("trefoil", "A4"), ("figure_eight", "A4"),
            ("pretzel_5_-3_5", "A5"), ("pretzel_5_-3_5", "S5")]
    for knot, group in runs:
        n = surgery_presentation(load_example(knot))
        phi = abelianization_phi(n)
        g = TargetGroup.parse(group)
        homs = enumerate_epimorphisms(n, g)
        for p in (5, 7, 11, 13):
            if g.order % p == 0:
                continue
            triv = delta1(build_complex(n, None, Representation.trivial(p), phi))
            for h in homs:
                d = delta1(build_complex(n, h, Representation.permutation(g, p), phi))
                ok &= triv.divides(d)
                count += 1
    return ok and count > 0, f"{count} (hom, prime) pairs"


# 8 ---------------------------------------------------------------------------


def check_div_phi():
    ok = True
    values = []
    trefoil = load_example("trefoil")
    for pres in (trefoil, surgery_presentation(trefoil)):
        phi = abelianization_phi(pres)
        g = TargetGroup("S", 3)
        for h in enumerate_epimorphisms(pres, g):
            div = div_phi_g(pres, h, phi)
            for p in (5, 7):
                d0 = compute_deltas(build_complex(pres, h, Representation.regular(g, p), phi)).degrees[0]
                ok &= div == d0
                values.append((div, d0))
    return ok and values, f"(div, deg Delta_0) = {sorted(set(values))}"


# 9 ---------------------------------------------------------------------------


def _rand_poly(rng, p, max_len=5):
    return LaurentPoly([rng.randrange(p) for _ in range(rng.randint(0, max_len))], rng.randint(-2, 2), p)


def _rand_matrix(rng, p, r, c, max_len=5):
    return PolyMatrix(r, c, [[_rand_poly(rng, p, max_len) for _ in range(c)] for _ in range(r)], p)


def _unimodular(rng, n, p):
    u = PolyMatrix.identity(n, p)
    for _ in range(2 * n):
        if n > 1 and rng.random() < 0.6:
            i, j = rng.sample(range(n), 2)
            f = _rand_poly(rng, p, 3)
            u.entries[i] = [a + f * b for a, b in zip(u.entries[i], u.entries[j])]
        else:
            i = rng.randrange(n)
            unit = LaurentPoly.monomial(rng.randint(-2, 2), rng.randrange(1, p), p)
            u.entries[i] = [a * unit for a in u.entries[i]]
    return u


def check_algebra_properties():
    t0 = time.monotonic()
    rng = random.Random(20240601)
    fails = []
    # Fox fundamental identity
    for _ in range(200):
        w = Word.reduced([(rng.randrange(3), rng.choice([1, -1])) for _ in range(rng.randint(0, 30))])
        lhs = FreeRingElement()
        for i in range(3):
            d = fox_derivative(w, i)
            lhs = lhs + d * Word.reduced([(i, 1)]) - d
        if lhs != FreeRingElement.of_word(w) - FreeRingElement.of_word(EMPTY):
            fails.append("fox")
    # SNF chain and unimodular invariance
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7])
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        m = _rand_matrix(rng, p, r, c, 5 if max(r, c) <= 5 else 3)
        res = smith_normal_form(m)
        if any(not a.divides(b) for a, b in zip(res.divisors, res.divisors[1:])):
            fails.append("chain")
        if max(r, c) <= 5:
            res2 = smith_normal_form(_unimodular(rng, r, p) @ m @ _unimodular(rng, c, p))
            if (res2.rank, res2.divisors) != (res.rank, res.divisors):
                fails.append("unimodular")
    # normalize is constant on unit orbits
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7, 11])
        f = _rand_poly(rng, p)
        g = f * LaurentPoly.monomial(rng.randint(-5, 5), rng.randrange(1, p), p)
        if lp_normalize(g) != lp_normalize(f) or lp_normalize(lp_normalize(f)) != lp_normalize(f):
            fails.append("normalize")
    # determinant against cofactor expansion
    for _ in range(200):
        n = rng.randint(1, 4)
        m = PolyMatrix(n, n, [[LaurentPoly([rng.randint(-4, 4) for _ in range(rng.randint(0, 4))],
                                           rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)])
        if det_int_poly(m) != lp_normalize(cofactor_det(m.entries)):
            fails.append("det")
    dt = time.monotonic() - t0
    return not fails and dt < 60, f"{len(fails)} failures, {dt:.2f}s"


# 10 --------------------------------------------------------------------------

TABLE = [
    ("12_1345", 2, 6, 7, 1, NEG_INF), ("12_1498", 4, 6, 7, 1, 24), ("12_1502", 4, 5, 11, 1, 14),
    ("12_1546", 2, 5, 7, 1, NEG_INF), ("12_1567", 2, 5, 7, 1, NEG_INF), ("12_1752", 2, 6, 17, 1, 10),
    ("12_1670", 2, 6, 17, 1, 10), ("12_1771", 2, 5, 7, 2, 10), ("12_1823", 2, 6, 7, 2, NEG_INF),
    ("12_1938", 2, 5, 11, 1, 4), ("12_2089", 2, 5, 11, 1, 4), ("12_2103", 2, 5, 7, 1, NEG_INF),
]


def _poly_of_degree(d, p):
    if d == NEG_INF:
        return LaurentPoly.zero(p)
    return LaurentPoly([1] + [0] * (d - 1) + [1] if d else [1], 0, p)


def check_table_arithmetic():
    ok = True
    for _, norm, k, p, d0, d1 in TABLE:
        g = TargetGroup("S", k)
        ds = DeltaSet(_poly_of_degree(d0, p), _poly_of_degree(d1, p), _poly_of_degree(d0, p))
        ok &= permutation_criterion(CriterionInput(norm, ds, Representation.permutation(g, p), g)).obstructed
    a4 = TargetGroup("A", 4)
    ds = DeltaSet(_poly_of_degree(3, 3), _poly_of_degree(21, 3), _poly_of_degree(3, 3))
    v = regular_criterion(CriterionInput(2, ds, Representation.regular(a4, 3), a4, 3))
    ok &= v.obstructed and (v.lhs, v.rhs) == (21, 30)
    g = TargetGroup("S", 6)
    ds = DeltaSet(_poly_of_degree(1, 7), _poly_of_degree(24, 7), _poly_of_degree(1, 7))
    v2 = permutation_criterion(CriterionInput(4, ds, Representation.permutation(g, 7), g))
    ok &= v2.obstructed and (v2.lhs, v2.rhs) == (24, 26)
    report, _ = run_analyze(RunConfig(example_path("trefoil"), ["S3"], [5]))
    fields = {"k", "prime", "degrees", "verdict", "delta0", "delta1", "delta2"}
    ok &= bool(report["witnesses"]) and all(fields <= set(w) for w in report["witnesses"])
    ok &= all("rhs" in w["verdict"] for w in report["witnesses"])
    return bool(ok), f"{len(TABLE)} rows + regular A4 row replayed; 21 vs {v.rhs}, 24 vs {v2.rhs}"


CRITERIA = [
    (1, "pretzel baseline", check_pretzel_baseline),
    (2, "reference witness validation", check_witness_validation),
    (3, "vanishing twisted polynomial for the reference witness", check_vanishing_witness),
    (4, "search completeness at small scale", check_search_completeness),
    (5, "fibered sanity", check_fibered_sanity),
    (6, "mod-p reduction", check_mod_p),
    (7, "direct-sum divisibility", check_direct_sum),
    (8, "div phi_G cross-check", check_div_phi),
    (9, "algebra property suites", check_algebra_properties),
    (10, "table arithmetic replay", check_table_arithmetic),
]


def _line(num, title, ok, detail, dt):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {title} ({detail}) [{dt:.2f}s]"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"c{n:02d}" for n, _, _ in CRITERIA])
def test_acceptance(num, title, fn):
    ok, detail, dt = _timed(fn)
    line = _line(num, title, ok, detail, dt)
    RESULTS.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    bad = 0
    for num, title, fn in CRITERIA:
        ok, detail, dt = _timed(fn)
        print(_line(num, title, ok, detail, dt), flush=True)
        bad += not ok
    sys.exit(1 if bad else 0)
