"""Acceptance gate: one test per stated criterion, one pass/fail line each.

Each test prints "criterion NN <label>: PASS/FAIL" and then asserts, so the
verbose pytest listing carries exactly one verdict line per criterion.
Stated runtime tolerances are asserted where the criterion gives one.
"""

import random
import time

import pytest

from geodex import (
    SearchParams,
    are_isomorphic,
    canonical_form,
    catalog_a,
    catalog_b,
    classify_pair,
    common_out_pairs,
    is_k_geodetic,
    moore_bound,
    outlier_multiplicity,
    outlier_set,
    search,
    search_cayley_a4,
    triangle_census,
    verify,
)
from oracles import (
    all_loopless_digraphs,
    geodetic_oracle,
    iso_oracle,
    random_digraph,
    shuffled,
)

A = catalog_a().digraph
B = catalog_b().digraph
DIREGULAR_222 = SearchParams(d=2, k=2, epsilon=2, diregular=True)


def report(num, label, ok, detail=""):
    line = f"criterion {num:02d} {label}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    assert ok, line


def test_criterion_01_moore_values():
    ok = moore_bound(2, 2) == 7 and A.n == B.n == moore_bound(2, 2) + 2 == 9
    report(1, "moore values", ok)


def test_criterion_02_catalog_verification():
    t0 = time.perf_counter()
    ra = verify(A, DIREGULAR_222)
    rb = verify(B, DIREGULAR_222)
    outliers_two = all(
        len(outlier_set(g, u, 2)) == 2 for g in (A, B) for u in range(9)
    )
    elapsed = time.perf_counter() - t0
    ok = ra.ok and rb.ok and outliers_two and elapsed < 1.0
    report(2, "catalog verification", ok, f"{elapsed:.3f}s")


def test_criterion_03_outlier_multiplicity():
    t0 = time.perf_counter()
    ok = (
        outlier_multiplicity(A, 2) == (2,) * 9
        and outlier_multiplicity(B, 2) == (2,) * 9
    )
    elapsed = time.perf_counter() - t0
    report(3, "outlier multiplicity", ok and elapsed < 1.0, f"{elapsed:.3f}s")


def test_criterion_04_non_isomorphism_and_twin_pairs():
    t0 = time.perf_counter()
    not_iso = not are_isomorphic(A, B)
    a_twins = len(common_out_pairs(A, 2))
    b_twins = len(common_out_pairs(B, 2))
    elapsed = time.perf_counter() - t0
    # stated: A none, B exactly two; B actually has three twin pairs
    ok = not_iso and a_twins == 0 and b_twins == 2 and elapsed < 1.0
    report(
        4,
        "non-isomorphism and twin pairs",
        ok,
        f"iso={not not_iso} a_twins={a_twins} b_twins={b_twins} (stated 2)",
    )


def test_criterion_05_triangle_census():
    t0 = time.perf_counter()
    ok = True
    for g in (A, B):
        per = triangle_census(g).per_vertex
        ok = ok and sum(1 for c in per if c == 2) == 3
    elapsed = time.perf_counter() - t0
    report(5, "triangle census", ok and elapsed < 1.0, f"{elapsed:.3f}s")


def test_criterion_06_bad_pair_dichotomy():
    t0 = time.perf_counter()
    a_bad = [
        (p.u, p.v)
        for p in common_out_pairs(A, 1)
        if classify_pair(A, p.u, p.v, 2).bad
    ]
    b_bad = [
        (p.u, p.v)
        for p in common_out_pairs(B, 1)
        if classify_pair(B, p.u, p.v, 2).bad
    ]
    elapsed = time.perf_counter() - t0
    ok = len(a_bad) >= 1 and not b_bad and elapsed < 1.0
    report(6, "bad pair dichotomy", ok, f"A bad={a_bad} B bad={b_bad}")


def test_criterion_07_classification_reproduction():
    t0 = time.perf_counter()
    out = search(DIREGULAR_222)
    elapsed = time.perf_counter() - t0
    forms = {r.form for r in out.results}
    ok = (
        out.complete
        and len(out.results) == 2
        and forms == {canonical_form(A), canonical_form(B)}
        and elapsed < 60.0
    )
    report(7, "classification reproduction", ok,
           f"results={len(out.results)} nodes={out.nodes_explored} {elapsed:.2f}s")


def test_criterion_08_excess_one_nonexistence():
    t0 = time.perf_counter()
    out = search(SearchParams(d=2, k=2, epsilon=1, diregular=True))
    elapsed = time.perf_counter() - t0
    ok = out.complete and not out.results and elapsed < 10.0
    report(8, "excess-1 nonexistence", ok,
           f"nodes={out.nodes_explored} {elapsed:.2f}s")


def test_criterion_09_moore_sanity_searches():
    t0 = time.perf_counter()
    cycle = search(SearchParams(d=1, k=2, epsilon=0, diregular=True))
    t1 = time.perf_counter() - t0
    t0 = time.perf_counter()
    k3 = search(SearchParams(d=2, k=1, epsilon=0, diregular=True))
    t2 = time.perf_counter() - t0
    ok = (
        cycle.complete
        and [r.digraph.out for r in cycle.results] == [((1,), (2,), (0,))]
        and k3.complete
        and [r.digraph.out for r in k3.results] == [((1, 2), (0, 2), (0, 1))]
        and t1 < 5.0
        and t2 < 5.0
    )
    report(9, "moore sanity searches", ok, f"{t1:.2f}s/{t2:.2f}s")


def test_criterion_10_cayley_witness():
    t0 = time.perf_counter()
    wits = search_cayley_a4(2, 5)
    elapsed = time.perf_counter() - t0
    params = SearchParams(d=2, k=2, epsilon=5)
    ok = (
        len(wits) >= 1
        and all(w.digraph.n == 12 and verify(w.digraph, params).ok for w in wits)
        and elapsed < 5.0
    )
    report(10, "cayley witness", ok, f"witnesses={len(wits)} {elapsed:.2f}s")


def test_criterion_11_k3_nonexistence_long_run():
    budget = 20_000_000
    t0 = time.perf_counter()
    out = search(SearchParams(d=2, k=3, epsilon=2, diregular=True,
                              max_nodes=budget))
    elapsed = time.perf_counter() - t0
    if not out.complete:
        print(f"criterion 11 k=3 nonexistence: NOT-ESTABLISHED  "
              f"[budget {budget} exhausted after {elapsed:.0f}s]")
        pytest.skip("not-established: node budget exhausted before completion")
    ok = not out.results
    report(11, "k=3 nonexistence (long run)", ok,
           f"nodes={out.nodes_explored} {elapsed:.1f}s")


def test_criterion_11_pruning_differential():
    cases = [
        SearchParams(d=2, k=2, epsilon=2, diregular=True),
        SearchParams(d=2, k=2, epsilon=1, diregular=True),
        SearchParams(d=1, k=2, epsilon=0, diregular=True),
        SearchParams(d=2, k=1, epsilon=0, diregular=True),
    ]
    ok = True
    for params in cases:
        full = search(params)
        basic = search(params, pruning="basic")
        same = [r.form for r in full.results] == [r.form for r in basic.results]
        ok = ok and same and full.complete and basic.complete
    report(11, "pruned vs reference differential", ok, f"{len(cases)} cases")


def test_criterion_12_oracle_equivalence():
    t0 = time.perf_counter()
    rng = random.Random(20260816)

    mismatches = 0
    for n in range(1, 5):
        for g in all_loopless_digraphs(n):
            for k in (1, 2, 3):
                if is_k_geodetic(g, k) != geodetic_oracle(g, k):
                    mismatches += 1
    geodetic_samples = 0
    while geodetic_samples < 10_000:
        g = random_digraph(rng, rng.randint(1, 8), loops=rng.random() < 0.2)
        k = rng.randint(1, 3)
        if is_k_geodetic(g, k) != geodetic_oracle(g, k):
            mismatches += 1
        geodetic_samples += 1

    iso_samples = 0
    while iso_samples < 1_000:
        n = rng.randint(1, 7)
        g = random_digraph(rng, n)
        h = shuffled(rng, g) if rng.random() < 0.5 else random_digraph(rng, n)
        if are_isomorphic(g, h) != iso_oracle(g, h):
            mismatches += 1
        iso_samples += 1

    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 60.0
    report(12, "oracle equivalence suite", ok,
           f"{geodetic_samples}+{iso_samples} samples, "
           f"{mismatches} disagreements, {elapsed:.1f}s")
