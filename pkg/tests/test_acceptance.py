"""Acceptance criteria, one test per criterion, each printing a single
PASS/FAIL line (run with `pytest -v -rA tests/test_acceptance.py` to see
them all).

Every criterion is implemented exactly as stated and checked against brute
force.  Four of them assert closed forms that the exhaustive computations
refute; those tests fail, and their output carries the counterexamples.
The failures are findings, not bugs: nothing here is loosened to force a
green run.
"""

import time

from deltacodes.field import ExtField, Field
from deltacodes.geometry import (
    all_lines,
    build_delta,
    count_on_delta,
    distinguished_points,
    line_delta_count_closed_form,
    pi_map,
)
from deltacodes.codes import (
    ConicSystem,
    evaluate_system,
    weight_distribution_classes,
    weight_distribution_enumerate,
)
from deltacodes.constructions import (
    POLY_1,
    POLY_X,
    POLY_Y,
    construction1_samples,
    construction2_code,
    full_conic_code,
    lambda_orbit_count,
    line_code,
)
from deltacodes.verify import (
    conic_spectrum,
    parabola_spectrum,
    verify_field,
    verify_geometry,
    verify_lemma,
    verify_reducibility,
    verify_relations,
    verify_hasse,
)

FIELDS: dict[int, Field] = {}


def field(q: int) -> Field:
    if q not in FIELDS:
        FIELDS[q] = Field(q.bit_length() - 1)
    return FIELDS[q]


def criterion(num: int, ok: bool, description: str, detail: str = "") -> None:
    line = f"criterion {num:2d} [{'PASS' if ok else 'FAIL'}] {description}"
    if detail:
        line += f" | {detail}"
    print(line)
    assert ok, line


def test_criterion_01_delta_sizes():
    t0 = time.perf_counter()
    ok = all(len(build_delta(field(q))) == q * (q - 1) // 2 for q in (4, 8, 16, 32, 64))
    criterion(1, ok, "point-set size q(q-1)/2 at q in {4,8,16,32,64}",
              f"{time.perf_counter() - t0:.2f}s")


def test_criterion_02_pi_image():
    t0 = time.perf_counter()
    ok = True
    for q in (4, 8, 16):
        F = field(q)
        image = {pi_map(F, x1, x2) for x1, x2 in distinguished_points(F)}
        ok &= image == set(build_delta(F).points)
    criterion(2, ok, "distinguished points map exactly onto the evaluation set, q in {4,8,16}",
              f"{time.perf_counter() - t0:.2f}s")


def test_criterion_03_line_spectra():
    t0 = time.perf_counter()
    unexpected = []
    flagged = []
    for q in (4, 8, 16, 32):
        F = field(q)
        delta = build_delta(F)
        dbar = build_delta(F, include_origin=True)
        for line in all_lines(F):
            stated = line_delta_count_closed_form(F, line)
            nb = count_on_delta(F, line, dbar)
            if stated == nb:
                continue
            nd = count_on_delta(F, line, delta)
            m = None if line.is_vertical else F.div(line.a, line.b)
            b = None if line.is_vertical else F.div(line.c, line.b)
            if m is not None and b == 0 and m != 0 and stated == nd:
                # the two documented prose inconsistencies: the stated
                # origin-included value for these lines is self-contradictory;
                # the closed form carries the origin-excluded count
                flagged.append((q, line.coeffs(), stated, nd, nb))
                continue
            unexpected.append((q, line.coeffs(), stated, nd, nb))
    detail = (f"{len(flagged)} documented through-origin lines flagged "
              f"(stated=(q-2)/2 matches the origin-excluded count; brute "
              f"origin-included count is q/2)")
    if unexpected:
        detail += (f"; {len(unexpected)} further mismatches on the lines "
                   f"Y = m*X + m^2 (true count q-1), e.g. "
                   f"{unexpected[:3]} as (q, line, stated, |∩Δ|, |∩Δ̄|)")
    criterion(3, not unexpected,
              "line closed forms match brute force except the two documented "
              "inconsistencies, q in {4,8,16,32}", detail)


def test_criterion_04_line_code():
    t0 = time.perf_counter()
    ok = True
    for q in (4, 8, 16, 32):
        rep = line_code(field(q))
        ok &= rep["matches_expected"]
    criterion(4, ok, "line code is [q(q-1)/2, 3, (q-1)(q-2)/2] with the stated weight set",
              f"q in {{4,8,16,32}}, {time.perf_counter() - t0:.2f}s")


def test_criterion_05_parabola_spectrum():
    t0 = time.perf_counter()
    bad = {}
    for q in (4, 8, 16, 32):
        spec = parabola_spectrum(field(q))
        if spec["closed_form_mismatches"]:
            bad[q] = spec["closed_form_mismatches"][:3]
    criterion(5, not bad,
              "parabola-family closed forms match brute force on every class, q in {4,8,16,32}",
              f"{time.perf_counter() - t0:.2f}s" + (f"; mismatches {bad}" if bad else ""))


def test_criterion_06_corollary_window():
    t0 = time.perf_counter()
    violations = {}
    for q in (4, 8, 16):
        spec = conic_spectrum(field(q))
        if spec["window_violations"]:
            violations[q] = {
                "count_histogram": spec["violation_counts"],
                "examples": spec["violation_examples"][:3],
            }
    criterion(
        6, not violations,
        "every non-degenerate class is in the stated window or an enumerated family, "
        "q in {4,8,16}",
        f"{time.perf_counter() - t0:.2f}s"
        + (f"; out-of-window non-exceptional classes {violations}" if violations else ""),
    )


def test_criterion_07_lemma_and_relations():
    t0 = time.perf_counter()
    ok = True
    detail = []
    for q in (4, 8):
        lem = verify_lemma(field(q))
        rel = verify_relations(field(q))
        ok &= lem.passed and rel.passed
        detail += [f"q={q}: lemma {'ok' if lem.passed else 'FAIL'}, "
                   f"relations {'ok' if rel.passed else 'FAIL'}"]
    criterion(7, ok, "intersection lemma and the three count-relation tables, "
                     "all classes at q in {4,8}",
              "; ".join(detail) + f"; {time.perf_counter() - t0:.2f}s")


def test_criterion_08_reducibility():
    t0 = time.perf_counter()
    ok = True
    for q in (4, 8, 16):
        rep = verify_reducibility(field(q))
        check = next(c for c in rep.checks
                     if c.name == "stated component criteria hold iff the conic is degenerate")
        ok &= check.ok
    criterion(8, ok, "degeneracy test equals the component criteria on every applicable "
                     "class, q in {4,8,16}", f"{time.perf_counter() - t0:.2f}s")


def test_criterion_09_hasse_window():
    t0 = time.perf_counter()
    problems = {}
    for q in (4, 8, 16):
        rep = verify_hasse(field(q))
        bad = [c for c in rep.checks if not c.ok and c.name in (
            "stated transfer N(G) = N(H) holds on every applicable class",
            "N(H) lies in the union of the affine windows on every applicable class",
        )]
        if bad:
            problems[q] = [f"{c.name}: {c.actual}/{c.expected} hold; {c.note[:120]}"
                           for c in bad]
    criterion(9, not problems,
              "N(G) = N(H) and N(H) in the affine windows on every applicable class, "
              "q in {4,8,16}",
              f"{time.perf_counter() - t0:.2f}s" + (f"; {problems}" if problems else ""))


def test_criterion_10_full_conic_code():
    t0 = time.perf_counter()
    reports = {q: full_conic_code(field(q)) for q in (8, 16)}
    # the two weight-distribution routes must agree regardless
    F = field(16)
    monomials = [(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0),
                 (0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1)]
    g = evaluate_system(ConicSystem(F, monomials), build_delta(F))
    assert weight_distribution_enumerate(g) == weight_distribution_classes(g)
    ok = all(reports[q]["matches_expected"] for q in (8, 16))
    achieved = {q: (reports[q]["n"], reports[q]["k"], reports[q]["d"]) for q in (8, 16)}
    criterion(10, ok, "full conic code is [28,6,20] at q=8 and [120,6,104] at q=16",
              f"achieved {achieved}; enumeration of 16^6 words done in "
              f"{time.perf_counter() - t0:.2f}s; both counting methods agree")


def test_criterion_11_construction2():
    t0 = time.perf_counter()
    ok = True
    for q in (8, 16, 32):
        rep = construction2_code(field(q))
        ok &= rep["matches_expected"]
    criterion(11, ok, "parabola-system code parameters and five-value weight set, "
                      "q in {8,16,32}", f"{time.perf_counter() - t0:.2f}s")


def test_criterion_12_construction1_q8():
    t0 = time.perf_counter()
    samples = construction1_samples(field(8), 100, seed=0)
    ok = all(rep["n"] == 28 and rep["k"] == 3 and rep["d"] in (21, 22) for rep in samples)
    ok &= any(rep["dual_distance"] == 3 for rep in samples)
    d_hist = {}
    for rep in samples:
        d_hist[rep["d"]] = d_hist.get(rep["d"], 0) + 1
    bound_holds = sum(rep["distance_bound_holds"] for rep in samples)
    lit = sum(rep["weights_in_window_literal"] for rep in samples)
    as_counts = sum(rep["weights_in_window_as_counts"] for rep in samples)
    criterion(
        12, ok,
        "100 sampled nets at q=8: all [28, 3, d] with d in {21, 22}, some dual distance 3",
        f"d histogram {d_hist}; stated distance bound (d >= 21.67) holds for "
        f"{bound_holds}/100 (d=21 contradicts it, as reported); stated weight window "
        f"holds literally for {lit}/100 and in the intersection-count reading for "
        f"{as_counts}/100; {time.perf_counter() - t0:.2f}s",
    )


def test_criterion_13_lambda_orbit():
    t0 = time.perf_counter()
    count = lambda_orbit_count(ExtField(field(4), 3))
    criterion(13, count == 2880, "orbit scan over PG(2, GF(64)) accepts exactly 2880 points",
              f"got {count}; {time.perf_counter() - t0:.2f}s")


def test_criterion_14_net_structure():
    from deltacodes.constructions import build_net, find_lambda_point, make_net_context
    t0 = time.perf_counter()
    ok = True
    for q in (4, 8, 16):
        F = field(q)
        E = ExtField(F, 3)
        ctx = make_net_context(E, find_lambda_point(E, "seeded", 1))
        members = build_net(F, ctx)  # aborts on any degenerate or non-rational member
        ok &= len(members) == q * q + q + 1
        ok &= sum(1 for m in members if m.a12 == 0 and m.a22 == 0) == 1
    criterion(14, ok, "net has q^2+q+1 rational non-degenerate members, exactly one "
                      "axis-tangent, q in {4,8,16}", f"{time.perf_counter() - t0:.2f}s")


def test_criterion_15_property_suites():
    t0 = time.perf_counter()
    ok = True
    for q in (4, 8, 16):
        ok &= verify_field(field(q)).passed
        geo = verify_geometry(field(q), oracle=q <= 8)
        wanted = (
            "conic normalization is idempotent and scale-invariant",
            "verified line closed form matches brute force on every line",
        )
        ok &= all(c.ok for c in geo.checks if c.name in wanted)
    # weight-distribution invariances: scaling a basis polynomial and
    # permuting the evaluation points leave the distribution unchanged
    import random
    from deltacodes.geometry import DeltaSet
    for q in (4, 8, 16):
        F = field(q)
        delta = build_delta(F)
        base = weight_distribution_enumerate(
            evaluate_system(ConicSystem(F, [POLY_Y, POLY_X, POLY_1]), delta))
        for s in F.nonzero_elements():
            scaled = [tuple(F.mul(s, c) for c in POLY_Y), POLY_X, POLY_1]
            ok &= weight_distribution_enumerate(
                evaluate_system(ConicSystem(F, scaled), delta)) == base
        pts = list(delta.points)
        random.Random(q).shuffle(pts)
        shuffled = DeltaSet(field=F, include_origin=False, points=pts)
        ok &= weight_distribution_enumerate(
            evaluate_system(ConicSystem(F, [POLY_Y, POLY_X, POLY_1]), shuffled)) == base
    criterion(15, ok, "field axioms, trace, solvability dichotomy, normalization, and "
                      "weight-distribution invariances, exhaustive at q <= 16",
              f"{time.perf_counter() - t0:.2f}s")
