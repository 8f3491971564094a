"""Executable theorem checks and the corpus suite runner.

Every check returns a :class:`TheoremResult`.  A check is *applicable* when
its hypotheses hold for the group; ``passed`` is only meaningful then, and a
failing check carries a witness string naming the offending element, pair
or quantity.
"""

from __future__ import annotations

import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .errors import GroupError, UnknownTheoremId
from .graphs import (
    DiameterResult,
    Graph,
    commuting_graph,
    connected_components,
    cyclic_graph,
    diameter,
    dominating_vertices,
    enhanced_power_graph,
)
from .kernel import FiniteGroup, bits, prime_divisors, primary_decomposition
from . import kernel, structure
from .zgen import ZParams, enumerate_z_params, realize

SCHEMA_VERSION = 1
THEOREM_IDS = ("A", "B", "C", "DOM", "D", "NILP", "GD", "COMM", "ROSE", "BASIC")
CONJUGATION_SAMPLES = 200


@dataclass(frozen=True)
class TheoremResult:
    id: str
    applicable: bool
    passed: bool | None = None
    witness: str | None = None


@dataclass
class SuiteConfig:
    conjugation_samples: int = CONJUGATION_SAMPLES
    exhaustive_conjugation: bool = False
    theorems: Sequence[str] = THEOREM_IDS
    jobs: int = 1
    seed: int = 0
    # negative control: drop one edge of every cyclic graph before checking
    corrupt_delta: bool = False


class GroupContext:
    """Lazily computed structure and graphs of one group, shared by all checks."""

    def __init__(self, G: FiniteGroup, config: SuiteConfig | None = None):
        self.G = G
        self.config = config or SuiteConfig()

    @cached_property
    def is_z_group(self) -> bool:
        return structure.is_z_group(self.G)

    @cached_property
    def frobenius(self) -> structure.FrobeniusResult:
        return structure.is_frobenius(self.G)

    @cached_property
    def is_nilpotent(self) -> bool:
        return structure.is_nilpotent(self.G)

    @cached_property
    def is_solvable(self) -> bool:
        return structure.derived_series_is_solvable(self.G)

    @cached_property
    def center(self) -> int:
        return structure.center_mask(self.G)

    @cached_property
    def derived(self) -> int:
        return structure.commutator_subgroup_mask(self.G)

    @cached_property
    def delta(self) -> Graph:
        g = cyclic_graph(self.G)
        if self.config.corrupt_delta:
            edge = next(g.edges(), None)
            if edge is not None:
                g = g.without_edge(*edge)
        return g

    @cached_property
    def gamma(self) -> Graph | None:
        return None if self.G.is_abelian else commuting_graph(self.G)

    @cached_property
    def enhanced(self) -> Graph:
        return enhanced_power_graph(self.G)

    @cached_property
    def delta_diameter(self) -> DiameterResult:
        return diameter(self.delta)

    @cached_property
    def gamma_diameter(self) -> DiameterResult | None:
        return None if self.gamma is None else diameter(self.gamma)

    @cached_property
    def delta_dominating(self) -> list[int]:
        return dominating_vertices(self.delta)

    @cached_property
    def sylow_cyc_or_gq(self) -> dict[int, bool]:
        return {p: structure.sylow_cyclic_or_generalized_quaternion(self.G, p)
                for p in prime_divisors(self.G.order)}

    def graph_metrics(self, g: Graph | None, diam: DiameterResult | None) -> dict | None:
        if g is None:
            return None
        return {
            "vertices": len(g),
            "edges": g.edge_count,
            "components": len(connected_components(g)),
            "diameter": str(diam if diam is not None else diameter(g)),
            "dominating": len(dominating_vertices(g)),
        }


def _element_rows(g: Graph, n: int) -> list[int]:
    """Adjacency of ``g`` re-indexed by element (bit e set for element e)."""
    vs = g.vertices
    rows = [0] * n
    for i, row in enumerate(g.rows):
        m = 0
        for j in bits(row):
            m |= 1 << vs[j]
        rows[vs[i]] = m
    return rows


# -- the checks -----------------------------------------------------------------

def _check_A(c: GroupContext) -> TheoremResult:
    if not c.is_z_group:
        return TheoremResult("A", False)
    disconnected = c.delta_diameter.tag == "disconnected"
    frob = c.frobenius.is_frobenius
    ok = disconnected == frob
    return TheoremResult("A", True, ok, None if ok else
                         f"Delta {c.delta_diameter}, frobenius={frob}")


def _check_B(c: GroupContext) -> TheoremResult:
    d = c.delta_diameter
    if not (c.is_z_group and d.is_finite):
        return TheoremResult("B", False)
    ok = d.value <= 4
    return TheoremResult("B", True, ok, None if ok else f"diameter {d.value}")


def _check_C(c: GroupContext) -> TheoremResult:
    if not c.is_z_group:
        return TheoremResult("C", False)
    d = c.delta_diameter
    small = d.is_finite and d.value <= 2
    z = c.center.bit_count()
    ok = small == (z > 1)
    return TheoremResult("C", True, ok, None if ok else f"Delta {d}, |Z(G)|={z}")


def unique_central_prime_subgroup(G: FiniteGroup, center: int) -> int | None:
    """A prime p with exactly p - 1 elements of order p, all central; else None."""
    for p in prime_divisors(G.order):
        of_order_p = [x for x in range(G.order) if G.orders[x] == p]
        if len(of_order_p) == p - 1 and all(center >> x & 1 for x in of_order_p):
            return p
    return None


def _check_DOM(c: GroupContext) -> TheoremResult:
    p = unique_central_prime_subgroup(c.G, c.center)
    has_dom = bool(c.delta_dominating)
    ok = has_dom == (p is not None)
    witness = None
    if not ok:
        witness = (f"dominating vertex {c.delta_dominating[0]} but no unique central prime subgroup"
                   if has_dom else f"unique central subgroup of order {p} but no dominating vertex")
    return TheoremResult("DOM", True, ok, witness)


def dominating_by_sylow(c: GroupContext, g: int) -> bool:
    """Per-element characterization through primary parts and Sylow structure."""
    parts = primary_decomposition(c.G, g)
    return all(c.sylow_cyc_or_gq[p] and c.center >> gp & 1 for p, gp in parts.items())


def _check_D(c: GroupContext) -> TheoremResult:
    dom = set(c.delta_dominating)
    for g in range(1, c.G.order):
        predicted = dominating_by_sylow(c, g)
        if predicted != (g in dom):
            return TheoremResult("D", True, False,
                                 f"element {g}: dominating={g in dom}, predicted={predicted}")
    return TheoremResult("D", True, True)


def _check_NILP(c: GroupContext) -> TheoremResult:
    if not c.is_nilpotent:
        return TheoremResult("NILP", False)
    has_dom = bool(c.delta_dominating)
    good = [p for p, v in c.sylow_cyc_or_gq.items() if v]
    ok = has_dom == bool(good)
    return TheoremResult("NILP", True, ok, None if ok else
                         f"dominatable={has_dom}, cyclic/quaternion Sylow primes={good}")


def _check_GD(c: GroupContext) -> TheoremResult:
    if not (c.is_z_group and not c.G.is_abelian and c.center == 1):
        return TheoremResult("GD", False)
    d, g = c.delta, c.gamma
    if d.vertices != g.vertices:
        diff = sorted(set(d.vertices) ^ set(g.vertices))
        return TheoremResult("GD", True, False, f"vertex sets differ at {diff[0]}")
    diff = sorted(d.edge_set() ^ g.edge_set())
    if diff:
        return TheoremResult("GD", True, False, f"edge {diff[0]} in only one graph")
    return TheoremResult("GD", True, True)


def _check_COMM(c: GroupContext) -> TheoremResult:
    if not (c.is_z_group and c.center == 1 and c.G.order > 1 and not c.frobenius.is_frobenius):
        return TheoremResult("COMM", False)
    d = c.gamma_diameter
    ok = d is not None and d.is_finite and d.value in (3, 4)
    return TheoremResult("COMM", True, ok, None if ok else f"Gamma {d}")


def _check_ROSE(c: GroupContext) -> TheoremResult:
    if not c.is_z_group:
        return TheoremResult("ROSE", False)
    G = c.G
    D = c.derived
    k = D.bit_count()
    if not structure.is_cyclic_mask(G, D):
        return TheoremResult("ROSE", True, False, f"derived subgroup of order {k} not cyclic")
    if math.gcd(k, G.order // k) != 1:
        return TheoremResult("ROSE", True, False, f"|G'|={k} and index {G.order // k} not coprime")
    Q = structure.quotient_group(G, kernel.ElemSet.from_mask(D, G.order, True))
    if max(Q.orders) != Q.order:
        return TheoremResult("ROSE", True, False, f"G/G' of order {Q.order} not cyclic")
    return TheoremResult("ROSE", True, True)


def _conjugation_triples(c: GroupContext) -> Iterable[tuple[int, int, int]]:
    n = c.G.order
    if c.config.exhaustive_conjugation:
        return ((x, y, g) for x in range(1, n) for y in range(1, n) for g in range(n))
    rng = random.Random(f"{c.config.seed}:{c.G.name}:{n}")
    return [(rng.randrange(1, n), rng.randrange(1, n), rng.randrange(n))
            for _ in range(c.config.conjugation_samples)]


def _basic_failures(c: GroupContext) -> Iterable[str]:
    G, n = c.G, c.G.order
    drows = _element_rows(c.delta, n)
    orders = G.orders
    coprime = {o: sum(1 << y for y in range(n) if math.gcd(o, orders[y]) == 1)
               for o in set(orders)}
    for x in range(1, n):
        need = G.commute_masks[x] & coprime[orders[x]] & ~1 & ~(1 << x)
        missing = need & ~drows[x]
        if missing:
            y = next(bits(missing))
            yield f"commuting coprime pair ({x}, {y}) not adjacent"
            return
    for x, y, g in _conjugation_triples(c):
        if x == y:
            continue
        xg, yg = G.conjugate(x, g), G.conjugate(y, g)
        if bool(drows[x] >> y & 1) != bool(drows[xg] >> yg & 1):
            yield f"adjacency of ({x}, {y}) not preserved by conjugation with {g}"
            return
    if c.gamma is not None:
        grows = _element_rows(c.gamma, n)
        noncentral = ~c.center
        for x in c.gamma.vertices:
            extra = drows[x] & noncentral & ~grows[x]
            if extra:
                yield f"Delta edge ({x}, {next(bits(extra))}) missing from Gamma"
                return
    e = c.enhanced
    if not diameter(e).is_finite or 0 not in dominating_vertices(e):
        yield "enhanced power graph not connected through the identity"
    if c.is_z_group:
        if not c.is_solvable:
            yield "Z-group not solvable"
        p = prime_divisors(n)[0] if n > 1 else None
        if p is not None and not structure.is_p_nilpotent(G, p):
            yield f"Z-group not {p}-nilpotent"


def _check_BASIC(c: GroupContext) -> TheoremResult:
    failure = next(iter(_basic_failures(c)), None)
    return TheoremResult("BASIC", True, failure is None, failure)


_CHECKS: dict[str, Callable[[GroupContext], TheoremResult]] = {
    "A": _check_A, "B": _check_B, "C": _check_C, "DOM": _check_DOM, "D": _check_D,
    "NILP": _check_NILP, "GD": _check_GD, "COMM": _check_COMM, "ROSE": _check_ROSE,
    "BASIC": _check_BASIC,
}


def check_theorem(G: FiniteGroup | GroupContext, id: str) -> TheoremResult:
    check = _CHECKS.get(id)
    if check is None:
        raise UnknownTheoremId(f"unknown theorem id {id!r}; known: {', '.join(THEOREM_IDS)}")
    ctx = G if isinstance(G, GroupContext) else GroupContext(G)
    return check(ctx)


# -- reports --------------------------------------------------------------------

@dataclass
class GroupReport:
    name: str
    order: int
    source: str
    flags: dict
    graphs: dict
    theorems: list[TheoremResult]
    error: str | None = None

    @property
    def failures(self) -> list[TheoremResult]:
        return [t for t in self.theorems if t.applicable and not t.passed]

    def to_record(self) -> dict:
        rec = {"schema_version": SCHEMA_VERSION, "record": "group"}
        rec.update(asdict(self))
        return rec


def analyze(G: FiniteGroup, config: SuiteConfig | None = None) -> GroupReport:
    if G.order < 2:
        raise kernel.InvalidParameter("analyze needs a group of order at least 2")
    c = GroupContext(G, config)
    frob = c.frobenius
    flags = {
        "is_z_group": c.is_z_group,
        "is_frobenius": frob.is_frobenius,
        "frobenius_kernel_order": len(frob.kernel) if frob.kernel is not None else None,
        "is_nilpotent": c.is_nilpotent,
        "is_solvable": c.is_solvable,
        "is_abelian": G.is_abelian,
        "center_order": c.center.bit_count(),
        "derived_order": c.derived.bit_count(),
    }
    graphs = {
        "cyclic": c.graph_metrics(c.delta, c.delta_diameter),
        "commuting": c.graph_metrics(c.gamma, c.gamma_diameter),
        "enhanced_power": c.graph_metrics(c.enhanced, None),
    }
    results = [check_theorem(c, t) for t in c.config.theorems]
    return GroupReport(G.name, G.order, G.source, flags, graphs, results)


# -- corpus -------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSource:
    """Recipe for a group; cheap to pickle, so suites can build groups in workers."""

    kind: str  # zparams | cyclic | dihedral | dicyclic | product | permutations | named | file
    arg: object
    name: str | None = None

    def build(self) -> FiniteGroup:
        k, a = self.kind, self.arg
        if k == "zparams":
            G = realize(ZParams.parse(a) if isinstance(a, str) else a)
        elif k in ("cyclic", "dihedral", "dicyclic"):
            G = getattr(kernel, k)(a)
        elif k == "product":
            G = kernel.direct_product(*(s.build() for s in a))
        elif k == "named":
            G = {"S4": lambda: kernel.symmetric(4), "A4": lambda: kernel.alternating(4),
                 "A5": lambda: kernel.alternating(5), "F20": kernel.frobenius_20,
                 "S3": lambda: kernel.symmetric(3)}[a]()
        elif k == "permutations":
            from .cli import parse_permutations
            G = parse_permutations(a, self.name or "G")
        elif k == "file":
            from .cli import parse_group_file
            G = parse_group_file(a)
        else:
            raise GroupError(f"unknown group source kind {k!r}")
        if self.name:
            G.name = self.name
        return G


def z_group_sources(lo: int, hi: int) -> list[GroupSource]:
    return [GroupSource("zparams", str(p)) for N in range(lo, hi + 1) for p in enumerate_z_params(N)]


def constructor_sources() -> list[GroupSource]:
    c = lambda n: GroupSource("cyclic", n)
    out = [GroupSource("dihedral", n) for n in range(3, 13)]
    out += [GroupSource("dicyclic", n) for n in range(2, 9)]
    out += [c(n) for n in range(2, 65)]
    out += [
        GroupSource("product", (c(2), c(2)), "C2xC2"),
        GroupSource("product", (c(2), c(4)), "C2xC4"),
        GroupSource("product", (GroupSource("dicyclic", 2), c(3)), "Q8xC3"),
    ]
    out += [GroupSource("named", s) for s in ("S4", "A4", "A5", "F20")]
    return out


def default_corpus(max_order: int = 300, min_order: int = 2) -> list[GroupSource]:
    return z_group_sources(min_order, max_order) + constructor_sources()


@dataclass
class SuiteReport:
    description: str
    group_count: int
    totals: dict[str, dict[str, int]]
    failures: list[dict]
    duration: float
    groups: list[GroupReport] = field(default_factory=list)

    @property
    def failed(self) -> int:
        return sum(t["failed"] for t in self.totals.values()) + sum(
            1 for f in self.failures if f["theorem"] == "ERROR")

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary_record(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "record": "summary",
            "description": self.description,
            "group_count": self.group_count,
            "totals": self.totals,
            "failed": self.failed,
            "failures": self.failures,
            "duration_seconds": round(self.duration, 3),
        }

    def to_jsonl(self, include_duration: bool = True) -> str:
        lines = [json.dumps(g.to_record(), sort_keys=True) for g in self.groups]
        summary = self.summary_record()
        if not include_duration:
            summary.pop("duration_seconds")
        lines.append(json.dumps(summary, sort_keys=True))
        return "\n".join(lines) + "\n"


def _run_one(item: FiniteGroup | GroupSource, config: SuiteConfig) -> GroupReport:
    G = None
    try:
        G = item if isinstance(item, FiniteGroup) else item.build()
        return analyze(G, config)
    except Exception as exc:  # recorded as a failure of this group, never fatal to the suite
        if G is not None:
            name, order, source = G.name, G.order, G.source
        else:
            name, order, source = item.name or f"{item.kind}:{item.arg}", 0, item.kind
        return GroupReport(name, order, source, {}, {}, [], error=f"{type(exc).__name__}: {exc}")


def run_suite(
    corpus: Sequence[FiniteGroup | GroupSource],
    config: SuiteConfig | None = None,
    description: str = "custom corpus",
) -> SuiteReport:
    config = config or SuiteConfig()
    if not corpus:
        raise GroupError("empty corpus")
    start = time.perf_counter()
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(_run_one, corpus, [config] * len(corpus), chunksize=4))
    else:
        reports = [_run_one(item, config) for item in corpus]
    reports.sort(key=lambda r: (r.order, r.name))
    totals = {t: {"applicable": 0, "passed": 0, "failed": 0} for t in config.theorems}
    failures = []
    for r in reports:
        if r.error is not None:
            failures.append({"group": r.name, "order": r.order, "theorem": "ERROR", "witness": r.error})
        for t in r.theorems:
            if not t.applicable:
                continue
            tot = totals[t.id]
            tot["applicable"] += 1
            if t.passed:
                tot["passed"] += 1
            else:
                tot["failed"] += 1
                failures.append({"group": r.name, "order": r.order, "theorem": t.id, "witness": t.witness})
    return SuiteReport(description, len(reports), totals, failures,
                       time.perf_counter() - start, reports)
