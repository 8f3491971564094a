"""Subgroup-level predicates: center, derived series, Sylow, normal subgroups, Frobenius."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import LatticeCapExceeded, NotNormal, OrderCapExceeded, PrimeDoesNotDivide
from .kernel import (
    ElemSet,
    FiniteGroup,
    bits,
    closure_mask,
    factorize,
    p_part,
    prime_divisors,
)

LATTICE_CAP = 10_000
FROBENIUS_ORACLE_MAX_ORDER = 60


@dataclass(frozen=True)
class FrobeniusResult:
    is_frobenius: bool
    kernel: ElemSet | None = None
    complement_order: int | None = None


def _subgroup(G: FiniteGroup, mask: int) -> ElemSet:
    return ElemSet.from_mask(mask, G.order, is_subgroup=True)


def _require_prime(G: FiniteGroup, p: int) -> None:
    if p not in prime_divisors(G.order):
        raise PrimeDoesNotDivide(f"{p} is not a prime divisor of {G.order}")


def center_mask(G: FiniteGroup) -> int:
    full = (1 << G.order) - 1
    return sum(1 << x for x, m in enumerate(G.commute_masks) if m == full)


def center(G: FiniteGroup) -> ElemSet:
    return _subgroup(G, center_mask(G))


def centralizer(G: FiniteGroup, x: int) -> ElemSet:
    return _subgroup(G, G.commute_masks[x])


def normalizer_mask(G: FiniteGroup, H: int) -> int:
    """Bitmask of the normalizer of the subgroup with bitmask ``H``."""
    elems = list(bits(H))
    out = 0
    for g in range(G.order):
        if all(H >> G.conjugate(h, g) & 1 for h in elems):
            out |= 1 << g
    return out


def is_normal_mask(G: FiniteGroup, H: int) -> bool:
    elems = [h for h in bits(H) if h]
    mul, inv = G.mul, G.inverses
    for g in range(G.order):
        row = mul[inv[g]]
        for h in elems:
            if not H >> mul[row[h]][g] & 1:
                return False
    return True


def commutator_subgroup_mask(G: FiniteGroup, H: int | None = None) -> int:
    """Bitmask of [H, H]; ``H`` defaults to the whole group."""
    t = G.table
    inv = np.asarray(G.inverses)
    h = np.arange(G.order) if H is None else np.fromiter(bits(H), dtype=np.int64)
    xy = t[np.ix_(h, h)]
    xinv_yinv = t[np.ix_(inv[h], inv[h])]
    comms = np.unique(t[xinv_yinv, xy])
    return closure_mask(G, comms.tolist())


def derived_subgroup(G: FiniteGroup) -> ElemSet:
    return _subgroup(G, commutator_subgroup_mask(G))


def derived_series_is_solvable(G: FiniteGroup) -> bool:
    H = (1 << G.order) - 1
    while H != 1:
        D = commutator_subgroup_mask(G, H)
        if D == H:
            return False
        H = D
    return True


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    seen = 0
    classes = []
    for x in range(G.order):
        if seen >> x & 1:
            continue
        cls = {G.conjugate(x, g) for g in range(G.order)}
        for c in cls:
            seen |= 1 << c
        classes.append(tuple(sorted(cls)))
    return classes


def normal_subgroup_masks(G: FiniteGroup, cap: int = LATTICE_CAP) -> list[int]:
    """Bitmasks of all normal subgroups, sorted by size then by least elements."""
    found: set[int] = {1}
    base = []
    for cls in conjugacy_classes(G):
        m = closure_mask(G, cls)
        if m not in found:
            found.add(m)
            base.append(m)
    # joins of normal subgroups are their products; close the set under joins
    queue = list(base)
    while queue:
        a = queue.pop()
        for b in base:
            if a & b == b or a & b == a:
                continue
            j = closure_mask(G, bits(b), start=a)
            if j not in found:
                if len(found) >= cap:
                    raise LatticeCapExceeded(f"more than {cap} normal subgroups")
                found.add(j)
                queue.append(j)
    return sorted(found, key=lambda m: (m.bit_count(), list(bits(m))))


def normal_subgroups(G: FiniteGroup, cap: int = LATTICE_CAP) -> list[ElemSet]:
    return [_subgroup(G, m) for m in normal_subgroup_masks(G, cap)]


def quotient_group(G: FiniteGroup, N: ElemSet) -> FiniteGroup:
    """Cayley table of G/N; coset 0 is N itself."""
    if not N.is_subgroup and closure_mask(G, N) != N.mask:
        raise NotNormal("N is not a subgroup")
    if not is_normal_mask(G, N.mask):
        raise NotNormal("N is not normal")
    label = [-1] * G.order
    reps = []
    for x in range(G.order):
        if label[x] < 0:
            k = len(reps)
            reps.append(x)
            for nn in N:
                label[G.mul[x][nn]] = k
    table = [[label[G.mul[a][b]] for b in reps] for a in reps]
    return FiniteGroup(np.array(table), f"{G.name}/N{len(N)}", source=G.source)


def sylow_subgroup_mask(G: FiniteGroup, p: int) -> int:
    _require_prime(G, p)
    target = p_part(G.order, p)
    orders = G.orders
    p_elems = [x for x in range(G.order) if p_part(orders[x], p) == orders[x]]
    start = max(p_elems, key=lambda x: orders[x])
    P = G.cyclic_mask(start)
    while P.bit_count() < target:
        # a p-subgroup that is not Sylow is properly contained in its normalizer
        # by a p-element; joining it keeps the result a p-group
        N = normalizer_mask(G, P)
        y = next(x for x in p_elems if N >> x & 1 and not P >> x & 1)
        P = closure_mask(G, [y], start=P)
    return P


def sylow_subgroup(G: FiniteGroup, p: int) -> ElemSet:
    return _subgroup(G, sylow_subgroup_mask(G, p))


def is_z_group(G: FiniteGroup) -> bool:
    present = set(G.orders)
    return all(p**e in present for p, e in factorize(G.order)) if G.order > 1 else True


def is_cyclic_mask(G: FiniteGroup, H: int) -> bool:
    size = H.bit_count()
    return any(G.orders[h] == size for h in bits(H))


def sylow_cyclic_or_generalized_quaternion(G: FiniteGroup, p: int) -> bool:
    P = sylow_subgroup_mask(G, p)
    solutions = sum(1 for x in bits(P) if G.power(x, p) == 0)
    return solutions == p


def is_nilpotent(G: FiniteGroup) -> bool:
    if G.order == 1:
        return True
    return all(is_normal_mask(G, sylow_subgroup_mask(G, p)) for p in prime_divisors(G.order))


def is_p_nilpotent(G: FiniteGroup, p: int) -> bool:
    _require_prime(G, p)
    want = G.order // p_part(G.order, p)
    return any(m.bit_count() == want for m in normal_subgroup_masks(G))


def is_frobenius(G: FiniteGroup) -> FrobeniusResult:
    full = (1 << G.order) - 1
    cent = G.commute_masks
    for N in normal_subgroup_masks(G):
        if N == 1 or N == full:
            continue
        outside = ~N
        if all(cent[x] & outside == 0 for x in bits(N & ~1)):
            k = N.bit_count()
            return FrobeniusResult(True, _subgroup(G, N), G.order // k)
    return FrobeniusResult(False)


def all_subgroup_masks(G: FiniteGroup, cap: int = LATTICE_CAP) -> list[int]:
    """Every subgroup, built as joins of cyclic subgroups."""
    cyclics = sorted({G.cyclic_mask(x) for x in range(G.order)})
    found = set(cyclics)
    queue = list(cyclics)
    while queue:
        a = queue.pop()
        for c in cyclics:
            if c & a == c:
                continue
            j = closure_mask(G, bits(c), start=a)
            if j not in found:
                if len(found) >= cap:
                    raise LatticeCapExceeded(f"more than {cap} subgroups")
                found.add(j)
                queue.append(j)
    return sorted(found, key=lambda m: (m.bit_count(), list(bits(m))))


def frobenius_bruteforce_oracle(
    G: FiniteGroup, max_order: int = FROBENIUS_ORACLE_MAX_ORDER
) -> FrobeniusResult:
    """Search every proper nontrivial subgroup H for H & H^g = 1 whenever g is outside H."""
    if G.order > max_order:
        raise OrderCapExceeded(f"oracle limited to order {max_order}, got {G.order}")
    full = (1 << G.order) - 1
    for H in all_subgroup_masks(G):
        if H == 1 or H == full:
            continue
        elems = list(bits(H))
        conjugates = []
        ok = True
        for g in range(G.order):
            if H >> g & 1:
                continue
            Hg = reduce(lambda m, h: m | 1 << G.conjugate(h, g), elems, 0)
            if Hg & H != 1:
                ok = False
                break
            conjugates.append(Hg)
        if ok:
            covered = reduce(lambda a, b: a | b, conjugates, H)
            kernel = (full & ~covered) | 1
            return FrobeniusResult(True, _subgroup(G, kernel), H.bit_count())
    return FrobeniusResult(False)
