"""Z-groups of a given order as coprime metacyclic products C_m x|_r C_n.

A Z-group with derived subgroup of order m is C_m x| C_n where the
generator of C_n acts on C_m by x -> x^r.  Requiring gcd(r - 1, m) = 1 pins
C_m to the derived subgroup, and replacing the C_n generator by its j-th
power (gcd(j, n) = 1) turns r into r^j, so isomorphism classes are orbits
of r under that action.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import InvalidParams, OrderCapExceeded, ParseError
from .kernel import FiniteGroup, closure_mask

Z_ORDER_CAP = 2000
ISO_ORACLE_MAX_ORDER = 255


@dataclass(frozen=True, order=True)
class ZParams:
    m: int
    n: int
    r: int

    def __str__(self) -> str:
        return f"{self.m}:{self.n}:{self.r}"

    @classmethod
    def parse(cls, text: str) -> ZParams:
        parts = text.strip().split(":")
        if len(parts) != 3:
            raise ParseError(f"expected m:n:r, got {text.strip()!r}")
        try:
            m, n, r = (int(p) for p in parts)
        except ValueError:
            raise ParseError(f"expected integers in m:n:r, got {text.strip()!r}") from None
        return cls(m, n, r)

    @property
    def order(self) -> int:
        return self.m * self.n

    def violations(self, canonical: bool = True) -> list[str]:
        m, n, r = self.m, self.n, self.r
        if m < 1 or n < 1:
            return ["m and n must be positive"]
        out = []
        if math.gcd(m, n) != 1:
            out.append(f"gcd(m, n) = {math.gcd(m, n)} != 1")
        if m == 1:
            if r != 1:
                out.append("m = 1 requires r = 1")
            return out
        if not 0 <= r < m:
            out.append(f"r must be a residue in 0..{m - 1}")
        if pow(r, n, m) != 1:
            out.append(f"r^n = {pow(r, n, m)} != 1 (mod m)")
        if canonical and math.gcd(r - 1, m) != 1:
            out.append(f"gcd(r - 1, m) = {math.gcd(r - 1, m)} != 1")
        return out


def _orbit_min(r: int, m: int, n: int) -> int:
    return min(pow(r, j, m) for j in range(1, n + 1) if math.gcd(j, n) == 1)


def coprime_splits(N: int) -> list[tuple[int, int]]:
    return [(m, N // m) for m in range(1, N + 1) if N % m == 0 and math.gcd(m, N // m) == 1]


def enumerate_z_params(N: int) -> list[ZParams]:
    """One canonical parameter triple per isomorphism class of Z-groups of order N."""
    if N < 1:
        raise InvalidParams("order must be positive")
    out = []
    for m, n in coprime_splits(N):
        if m == 1:
            out.append(ZParams(1, n, 1))
            continue
        reps = set()
        for r in range(2, m):
            if pow(r, n, m) == 1 and math.gcd(r - 1, m) == 1:
                reps.add(_orbit_min(r, m, n))
        out.extend(ZParams(m, n, r) for r in reps)
    return sorted(out, key=lambda z: (z.m, z.r))


def _product_table(m: int, n: int, r: int) -> np.ndarray:
    powers = np.array([pow(r, j, m) for j in range(n)], dtype=np.int64)
    idx = np.arange(m * n)
    i, j = idx // n, idx % n
    ri = (i[:, None] + powers[j][:, None] * i[None, :]) % m
    rj = (j[:, None] + j[None, :]) % n
    return ri * n + rj


def realize(params: ZParams, *, canonical: bool = True) -> FiniteGroup:
    """Cayley table of C_m x|_r C_n; pair (i, j) is stored at index i*n + j.

    ``canonical=False`` accepts any r with r^n = 1 (mod m), which is used to
    cross-check that the canonical list misses no class.
    """
    bad = params.violations(canonical)
    if bad:
        raise InvalidParams(f"{params}: " + "; ".join(bad))
    name = f"Z[{params}]"
    return FiniteGroup(_product_table(params.m, params.n, params.r), name,
                       source=f"zparams:{params}")


def z_groups_of_order(N: int, cap: int = Z_ORDER_CAP) -> list[FiniteGroup]:
    if N > cap:
        raise OrderCapExceeded(f"order {N} exceeds cap {cap}")
    return [realize(p) for p in enumerate_z_params(N)]


# -- isomorphism ---------------------------------------------------------------

def generating_set(G: FiniteGroup) -> list[int]:
    """Greedy generating set: repeatedly add an element of largest order outside the span."""
    by_order = sorted(range(1, G.order), key=lambda x: (-G.orders[x], x))
    full = (1 << G.order) - 1
    gens: list[int] = []
    H = 1
    while H != full:
        g = next(x for x in by_order if not H >> x & 1)
        gens.append(g)
        H = closure_mask(G, [g], start=H)
    return gens


def invariants(G: FiniteGroup) -> tuple:
    """Cheap isomorphism invariants: order statistics and centralizer sizes by element order."""
    cent = Counter((G.orders[x], G.commute_masks[x].bit_count()) for x in range(G.order))
    return (G.order, tuple(sorted(cent.items())))


def _extend(G: FiniteGroup, H: FiniteGroup, gens: list[int], images: tuple[int, ...]) -> list[int] | None:
    """Extend a generator assignment along words; None on any inconsistency."""
    phi = [-1] * G.order
    phi[0] = 0
    queue = [0]
    gm, hm = G.mul, H.mul
    used = 0
    for g in queue:
        pg = phi[g]
        for s, t in zip(gens, images):
            x = gm[g][s]
            y = hm[pg][t]
            if phi[x] < 0:
                if used >> y & 1:
                    return None
                phi[x] = y
                used |= 1 << y
                queue.append(x)
            elif phi[x] != y:
                return None
    if len(queue) != G.order:
        return None
    return phi


def _is_homomorphism(G: FiniteGroup, H: FiniteGroup, phi: list[int]) -> bool:
    p = np.asarray(phi)
    return bool(np.array_equal(p[G.table], H.table[np.ix_(p, p)]))


def find_isomorphism(G: FiniteGroup, H: FiniteGroup, *, use_invariants: bool = True) -> list[int] | None:
    """An isomorphism G -> H as an index map, or None.

    Generators of G are sent to every tuple of H-elements with matching order
    and centralizer size; each assignment is extended along words and then
    checked against the full tables.
    """
    if G.order != H.order:
        return None
    if use_invariants and invariants(G) != invariants(H):
        return None
    gens = generating_set(G)
    candidates = []
    for s in gens:
        key = (G.orders[s], G.commute_masks[s].bit_count())
        candidates.append([y for y in range(H.order)
                           if (H.orders[y], H.commute_masks[y].bit_count()) == key])
    for images in product(*candidates):
        phi = _extend(G, H, gens, images)
        if phi is not None and _is_homomorphism(G, H, phi):
            return phi
    return None


def isomorphism_oracle(G: FiniteGroup, H: FiniteGroup, max_order: int = ISO_ORACLE_MAX_ORDER) -> bool:
    if max(G.order, H.order) > max_order:
        raise OrderCapExceeded(f"isomorphism oracle limited to order {max_order}")
    return find_isomorphism(G, H) is not None


def isomorphism_classes(groups: list[FiniteGroup]) -> list[list[FiniteGroup]]:
    """Partition ``groups`` into isomorphism classes (input order preserved)."""
    classes: list[list[FiniteGroup]] = []
    keys: list[tuple] = []
    for G in groups:
        key = invariants(G)
        for k, cls in zip(keys, classes):
            if k == key and isomorphism_oracle(cls[0], G):
                cls.append(G)
                break
        else:
            classes.append([G])
            keys.append(key)
    return classes


def all_metacyclic_candidates(N: int) -> list[ZParams]:
    """Every (m, n, r) with gcd(m, n) = 1 and r^n = 1 (mod m), canonical or not."""
    out = []
    for m, n in coprime_splits(N):
        if m == 1:
            out.append(ZParams(1, n, 1))
            continue
        out.extend(ZParams(m, n, r) for r in range(1, m) if pow(r, n, m) == 1)
    return out

