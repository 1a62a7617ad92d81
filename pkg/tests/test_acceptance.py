"""End-to-end acceptance criteria, one test per criterion.

Each test records a one-line PASS/FAIL verdict (see acceptance_log) that is
printed in the pytest terminal summary.  The corpus checks are slow: the
round-trip criterion alone runs 10^4 samples on each of 236 polygons.
"""
import dataclasses
import time
from fractions import Fraction

import pytest

from tests.acceptance_log import record
from towerloc.harness.generators import (
    corpus,
    fig13_fixture,
    gen_comb,
    gen_leaf_fixture,
    gen_random_simple,
    gen_toth_counterexample,
)
from towerloc.harness.oracle import verify
from towerloc.localization import decode_parity
from towerloc.partition import partition
from towerloc.polygon import dual_graph, simplify, triangulate
from towerloc.partition.dissection import iter_good_diagonals
from towerloc.towers import TowerPair, emit_towers
from towerloc.visibility import kernel, kernel_boundary_segments

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def full_corpus():
    return corpus(random_count=200, seed=0)


@pytest.fixture(scope="module")
def plans(full_corpus):
    out = []
    for p in full_corpus:
        pr = partition(p)
        out.append((p, pr, emit_towers(pr)))
    return out


def test_c1_tower_bound(full_corpus, plans):
    t0 = time.perf_counter()
    over = [(p.name, len(plan.towers), 2 * p.n // 3) for p, _, plan in plans if len(plan.towers) > 2 * p.n // 3]
    ok = not over and len(plans) == 236
    record(1, "tower count <= floor(2n/3)", ok,
           f"{len(plans)} polygons, {len(over)} over budget {over[:3]} ({time.perf_counter() - t0:.1f}s check)")
    assert ok


def test_c2_comb_tightness(plans):
    bad = []
    for p, _, plan in plans:
        if p.name.startswith("comb-") and p.name.endswith("-q0"):
            k = p.n // 3
            if not (len(plan.towers) == 2 * k == 2 * p.n // 3):
                bad.append((p.name, len(plan.towers)))
    record(2, "comb q=0 uses exactly 2k towers", not bad, f"10 combs, mismatches {bad}")
    assert not bad


def test_c3_round_trip(full_corpus):
    t0 = time.perf_counter()
    failing = []
    for p in full_corpus:
        rep = verify(p, samples=10000, seed=0, tol=1e-9)
        assert rep.samples >= 10000
        if not rep.passed:
            failing.append(rep)
    detail = f"{len(full_corpus)} polygons x 10^4 samples, {len(failing)} failing ({time.perf_counter() - t0:.0f}s)"
    for rep in failing:
        f = rep.failures[0]
        detail += f"; {rep.name}: {len(rep.failures)} failure(s), e.g. {f.point} {f.diagnosis}"
    record(3, "localization error <= 1e-9 x diameter", not failing, detail)
    assert not failing, detail


def test_c4_parity_codec():
    bad = []
    for s in range(31):
        for m in (1, 2):
            c = decode_parity(float(Fraction(m, 3 ** (s + 1))))
            if (c.m, c.s) != (m, s):
                bad.append((m, s, c.m, c.s))
    record(4, "parity codec for s <= 30", not bad, f"62 codewords, {len(bad)} wrong")
    assert not bad


def test_c5_small_polygons_have_boundary_kernel():
    t0 = time.perf_counter()
    bad = []
    for seed in range(10000):
        n = 3 + seed % 3
        p = gen_random_simple(n, seed)
        if not kernel_boundary_segments(p):
            bad.append((n, seed))
    record(5, "3-5 gons have a kernel boundary segment", not bad,
           f"10^4 polygons, {len(bad)} without ({time.perf_counter() - t0:.1f}s)")
    assert not bad


def test_c6_partition_soundness(plans):
    problems = []
    certs = 0
    for p, pr, _ in plans:
        if sum(q.area2() for q in pr.pieces) != p.area2():
            problems.append((p.name, "area"))
        for i, q in enumerate(pr.pieces):
            if kernel(q).empty:
                problems.append((p.name, f"piece {i} not star-shaped"))
        for entry in pr.trace:
            if entry.certificate is not None:
                certs += 1
                if not entry.certificate.holds:
                    problems.append((p.name, f"certificate at depth {entry.depth}"))
    pieces = sum(len(pr.pieces) for _, pr, _ in plans)
    record(6, "partition soundness (exact)", not problems,
           f"{pieces} pieces, {certs} certificates, problems {problems[:3]}")
    assert not problems


def test_c7_leaf_fixture():
    rows = []
    ok = True
    for k in (3, 4):
        p = simplify(gen_leaf_fixture(k).to_star())
        leaves = len(dual_graph(triangulate(p)).leaves())
        no_good = next(iter_good_diagonals(p, max_interior=p.n), None) is None
        rows.append(f"k={k} n={p.n} leaves={leaves} no-good-diagonal={no_good}")
        ok &= p.n == 3 * k + 2 and leaves == k + 1 and no_good
    record(7, "leaf fixture has k+1 leaves", ok, "; ".join(rows))
    assert ok


def _negative_subjects():
    return [gen_comb(3), fig13_fixture(), gen_toth_counterexample(3), gen_random_simple(30, 3)]


def test_c8_negative_controls():
    missed = []
    trials = 0
    for p in _negative_subjects():
        plan = emit_towers(partition(p))
        base = plan.towers
        for i, t in enumerate(base):
            for field in ("x", "y"):
                towers = list(base)
                towers[i] = dataclasses.replace(t, **{field: getattr(t, field) + 1e-3})
                trials += 1
                if verify(p, samples=2000, seed=0, towers=towers).passed:
                    missed.append((p.name, i, field))
        for gi, g in enumerate(plan.groups):
            if not isinstance(g, TowerPair):
                continue
            flipped = TowerPair(g.anchor_a, g.anchor_b, 3 - g.m, g.s, g.side, g.piece)
            towers = [t for h in plan.groups for t in (flipped if h is g else h).towers()]
            trials += 1
            if verify(p, samples=2000, seed=0, towers=towers).passed:
                missed.append((p.name, gi, "m"))
    record(8, "negative controls are detected", not missed, f"{trials} tamperings, {len(missed)} undetected {missed[:3]}")
    assert not missed
