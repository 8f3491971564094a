"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed at the end."""

from __future__ import annotations

import random
import time

import pytest

from zcyclic.cli import main
from zcyclic.graphs import cyclic_graph, diameter, dominating_vertices, enhanced_power_graph
from zcyclic.kernel import cyclic_pair
from zcyclic.structure import frobenius_bruteforce_oracle, is_frobenius
from zcyclic.verifier import (
    GroupSource,
    SuiteConfig,
    default_corpus,
    run_suite,
    z_group_sources,
)
from zcyclic.zgen import enumerate_z_params, isomorphism_classes, realize, z_groups_of_order

from conftest import ACCEPTANCE_LINES

PAIR_SAMPLES = 10_000


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture(scope="module")
def z_suite():
    """Every theorem over all Z-groups of order 2..300, single-threaded."""
    return run_suite(z_group_sources(2, 300), SuiteConfig(jobs=1), "Z-groups 2..300")


def totals(report, ids):
    return {t: report.totals[t] for t in ids}


def failures(report, ids):
    return [f for f in report.failures if f["theorem"] in ids or f["theorem"] == "ERROR"]


def test_1_order_60():
    t0 = time.perf_counter()
    groups = z_groups_of_order(60)
    ds = [diameter(cyclic_graph(G)) for G in groups]
    elapsed = time.perf_counter() - t0
    connected = all(d.is_finite for d in ds)
    values = sorted(d.value for d in ds if d.is_finite)
    nonabelian_two = [str(G.source) for G, d in zip(groups, ds) if not G.is_abelian and d.value == 2]
    ok = connected and max(values) == 4 and bool(nonabelian_two) and elapsed < 10
    record(1, "order-60 diameters", ok,
           f"diameters={values}, max=4 at {[str(G.source) for G, d in zip(groups, ds) if d.value == 4]}, "
           f"{elapsed:.2f}s")
    assert connected
    assert max(values) == 4
    assert nonabelian_two
    assert elapsed < 10


def test_2_order_210():
    t0 = time.perf_counter()
    hits = [str(G.source) for G in z_groups_of_order(210) if diameter(cyclic_graph(G)).value == 3]
    elapsed = time.perf_counter() - t0
    ok = bool(hits) and elapsed < 60
    record(2, "order-210 diameter 3", ok, f"groups with diameter 3: {hits}, {elapsed:.2f}s")
    assert hits
    assert elapsed < 60


def test_3_theorems_abc(z_suite):
    ids = ("A", "B", "C")
    bad = failures(z_suite, ids)
    ok = not bad and z_suite.duration < 300 and z_suite.group_count > 300
    record(3, "Theorems A/B/C over Z-groups 2..300", ok,
           f"{z_suite.group_count} groups, totals={totals(z_suite, ids)}, {z_suite.duration:.1f}s")
    assert not bad, bad[:5]
    assert z_suite.duration < 300


def test_4_dominating_vertex_characterizations():
    corpus = default_corpus(200)
    rep = run_suite(corpus, SuiteConfig(theorems=("DOM", "D", "NILP")), "mixed corpus")
    ids = ("DOM", "D", "NILP")
    bad = failures(rep, ids)
    ok = not bad and rep.totals["D"]["applicable"] == rep.group_count
    record(4, "dominating vertices (DOM, D, NILP)", ok,
           f"{rep.group_count} groups, totals={totals(rep, ids)}")
    assert not bad, bad[:5]
    assert rep.totals["D"]["applicable"] == rep.group_count
    assert {"S4", "A4", "A5", "F20", "Q8xC3", "C2xC2", "C2xC4"} <= {g.name for g in rep.groups}


def test_5_commuting_graph(z_suite):
    ids = ("GD", "COMM")
    bad = failures(z_suite, ids)
    centerless = [g for g in z_suite.groups if g.flags["center_order"] == 1 and not g.flags["is_abelian"]]
    ok = (not bad and z_suite.totals["GD"]["applicable"] == len(centerless)
          and z_suite.totals["COMM"]["applicable"] > 0)
    record(5, "Delta = Gamma and Gamma diameter 3 or 4", ok,
           f"{len(centerless)} centerless Z-groups, totals={totals(z_suite, ids)}")
    assert not bad, bad[:5]
    assert z_suite.totals["GD"]["applicable"] == len(centerless)


def test_6_rose_and_basic_facts(z_suite):
    ids = ("ROSE", "BASIC")
    bad = failures(z_suite, ids)
    ok = not bad
    record(6, "Hall derived subgroup, p-nilpotency, solvability", ok,
           f"totals={totals(z_suite, ids)}")
    assert not bad, bad[:5]


def _pairs(n: int, rng: random.Random):
    if (n - 1) ** 2 <= PAIR_SAMPLES:
        return [(x, y) for x in range(1, n) for y in range(1, n)]
    return [(rng.randrange(1, n), rng.randrange(1, n)) for _ in range(PAIR_SAMPLES)]


def test_7_oracle_equivalences():
    small = [s.build() for s in default_corpus(60)]
    small = [G for G in small if G.order <= 60]
    frob_bad = [G.name for G in small
                if is_frobenius(G).is_frobenius != frobenius_bruteforce_oracle(G).is_frobenius]

    iso_bad = []
    for N in range(1, 121):
        groups = [realize(p) for p in enumerate_z_params(N)]
        if len(isomorphism_classes(groups)) != len(groups):
            iso_bad.append(N)

    rng = random.Random(2024)
    pair_bad = []
    checked = 0
    for G in small:
        for x, y in _pairs(G.order, rng):
            checked += 1
            if cyclic_pair(G, x, y) != cyclic_pair(G, x, y, naive=True):
                pair_bad.append((G.name, x, y))
    ok = not (frob_bad or iso_bad or pair_bad)
    record(7, "oracle equivalences", ok,
           f"frobenius on {len(small)} groups (mismatches {frob_bad}), "
           f"Z-param classes N<=120 (mismatches {iso_bad}), "
           f"{checked} cyclic_pair checks (mismatches {len(pair_bad)})")
    assert not frob_bad
    assert not iso_bad
    assert not pair_bad, pair_bad[:5]


def test_8_enhanced_power_graph():
    bad = []
    count = 0
    for src in default_corpus(300):
        G = src.build()
        g = enhanced_power_graph(G)
        count += 1
        if not diameter(g).is_finite or 0 not in dominating_vertices(g):
            bad.append(G.name)
    record(8, "enhanced power graph connected via identity", not bad,
           f"{count} groups, failures {bad}")
    assert not bad


def test_9_negative_control(capsys):
    corpus = [GroupSource("cyclic", 6), GroupSource("zparams", "15:4:2"), GroupSource("named", "S3")]
    rep = run_suite(corpus, SuiteConfig(corrupt_delta=True), "corrupted fixture")
    status = main(["verify", "--max-order", "12", "--corrupt-delta"])
    capsys.readouterr()
    witnessed = all(f["witness"] for f in rep.failures)
    ok = rep.failed >= 1 and witnessed and status != 0
    first = rep.failures[0] if rep.failures else None
    record(9, "negative control", ok,
           f"failed={rep.failed}, exit status={status}, first witness: {first}")
    assert rep.failed >= 1
    assert witnessed
    assert status != 0
