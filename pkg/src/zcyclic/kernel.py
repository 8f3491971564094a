"""Finite groups as multiplication tables.

Elements are the integers ``0..n-1`` and the identity is always ``0``.  Every
other module works on :class:`FiniteGroup` instances and on subsets of their
elements, which are represented either as :class:`ElemSet` or, in hot loops,
as Python ints used as bitmasks (bit ``i`` set means element ``i`` is in the
set).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    ClosureCapExceeded,
    IdentityElement,
    InvalidParameter,
    NoIdentity,
    NotAssociative,
    NotLatinSquare,
)

ASSOC_FULL_CHECK_BOUND = 512
ASSOC_SPOT_CHECKS = 100_000
CLOSURE_CAP = 20_000


# -- arithmetic -------------------------------------------------------------

def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` as sorted ``(p, e)`` pairs."""
    if n < 1:
        raise InvalidParameter(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factorize(n))


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _rows_to_masks(matrix: np.ndarray) -> list[int]:
    packed = np.packbits(matrix, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


# -- element subsets ----------------------------------------------------------

@dataclass(frozen=True)
class ElemSet:
    """A sorted set of element indices of a group of order ``parent_order``."""

    elements: tuple[int, ...]
    parent_order: int
    is_subgroup: bool = False

    @classmethod
    def from_mask(cls, mask: int, parent_order: int, is_subgroup: bool = False) -> ElemSet:
        return cls(tuple(bits(mask)), parent_order, is_subgroup)

    @cached_property
    def mask(self) -> int:
        return mask_of(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 0 <= x < self.parent_order and bool(self.mask >> x & 1)

    def issubset(self, other: ElemSet) -> bool:
        return self.mask & ~other.mask == 0


# -- groups -----------------------------------------------------------------

class FiniteGroup:
    """Immutable group given by its Cayley table.

    ``table[x][y]`` is the index of ``x*y``.  Inverses and element orders are
    computed once at construction; ``mul`` is a list-of-lists copy of the
    table for fast scalar lookups.
    """

    def __init__(self, table: np.ndarray, name: str = "G", source: str = "constructor"):
        table = np.ascontiguousarray(table, dtype=np.int64)
        table.setflags(write=False)
        self.table = table
        self.order = int(table.shape[0])
        self.name = name
        self.source = source
        self.mul: list[list[int]] = table.tolist()
        zero_cols = table == 0
        self.inverses: list[int] = np.argmax(zero_cols, axis=1).tolist()
        self.orders: list[int] = self._compute_orders()
        self._powers: dict[int, tuple[int, ...]] = {}

    identity = 0

    def _compute_orders(self) -> list[int]:
        mul = self.mul
        orders = [1] * self.order
        for x in range(1, self.order):
            y, k = x, 1
            while y != 0:
                y = mul[y][x]
                k += 1
            orders[x] = k
        return orders

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def powers(self, x: int) -> tuple[int, ...]:
        """``(x^0, x^1, ..., x^(o(x)-1))``."""
        ps = self._powers.get(x)
        if ps is None:
            row = self.mul
            out = [0]
            y = x
            while y != 0:
                out.append(y)
                y = row[y][x]
            ps = self._powers[x] = tuple(out)
        return ps

    def power(self, x: int, k: int) -> int:
        ps = self.powers(x)
        return ps[k % len(ps)]

    def cyclic_mask(self, x: int) -> int:
        """Bitmask of the cyclic subgroup generated by ``x``."""
        return self._cyclic_masks[x]

    @cached_property
    def _cyclic_masks(self) -> list[int]:
        out = [0] * self.order
        for x in range(self.order):
            if out[x]:
                continue
            ps = self.powers(x)
            m = mask_of(ps)
            # every generator of <x> yields the same subgroup
            for k in range(1, len(ps)):
                if math.gcd(k, len(ps)) == 1:
                    out[ps[k]] = m
            out[x] = m
        out[0] = 1
        return out

    @cached_property
    def commute_masks(self) -> list[int]:
        """``commute_masks[x]`` is the bitmask of the centralizer of ``x``."""
        return _rows_to_masks(self.table == self.table.T)

    def commute(self, x: int, y: int) -> bool:
        return self.mul[x][y] == self.mul[y][x]

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def conjugate(self, x: int, g: int) -> int:
        """``g^-1 x g``."""
        return self.mul[self.mul[self.inverses[g]][x]][g]


def _check_latin(t: np.ndarray) -> None:
    n = t.shape[0]
    want = np.arange(n)
    for axis, what in ((1, "row"), (0, "column")):
        s = np.sort(t, axis=axis)
        bad = np.nonzero(~np.all(s == (want if axis == 1 else want[:, None]), axis=axis))[0]
        if bad.size:
            raise NotLatinSquare(f"{what} {int(bad[0])} is not a permutation of 0..{n - 1}")


def _check_associative(t: np.ndarray, bound: int, seed: int = 0) -> None:
    n = t.shape[0]
    if n <= bound:
        for x in range(n):
            lhs = t[t[x]]            # lhs[y, z] = (x*y)*z
            rhs = t[x][t]            # rhs[y, z] = x*(y*z)
            diff = np.argwhere(lhs != rhs)
            if diff.size:
                y, z = diff[0]
                raise NotAssociative((x, int(y), int(z)))
        return
    rng = np.random.default_rng(seed)
    xs, ys, zs = rng.integers(0, n, size=(3, ASSOC_SPOT_CHECKS))
    bad = np.nonzero(t[t[xs, ys], zs] != t[xs, t[ys, zs]])[0]
    if bad.size:
        i = bad[0]
        raise NotAssociative((int(xs[i]), int(ys[i]), int(zs[i])))


def from_cayley_table(
    table: Sequence[Sequence[int]] | np.ndarray,
    name: str = "G",
    *,
    assoc_bound: int = ASSOC_FULL_CHECK_BOUND,
    source: str = "file",
) -> FiniteGroup:
    """Validate a Cayley table and renumber its identity to index 0."""
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
        raise NotLatinSquare(f"table must be square and nonempty, got shape {t.shape}")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise NotLatinSquare(f"entries must lie in 0..{n - 1}")
    _check_latin(t)
    ar = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)]
    if not ids:
        raise NoIdentity("no two-sided identity element")
    e = ids[0]
    if e != 0:
        perm = np.arange(n)
        perm[0], perm[e] = e, 0  # swap labels 0 and e; perm is an involution
        t = perm[t[np.ix_(perm, perm)]]
    _check_associative(t, assoc_bound)
    return FiniteGroup(t, name, source=source)


# -- permutations -------------------------------------------------------------

def perm_from_cycles(cycles: Sequence[Sequence[int]], degree: int) -> tuple[int, ...]:
    img = list(range(degree))
    seen: set[int] = set()
    for cyc in cycles:
        for i, a in enumerate(cyc):
            if a in seen or not 0 <= a < degree:
                raise InvalidParameter(f"bad cycle {tuple(cyc)} on {degree} points")
            seen.add(a)
            img[a] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


def from_permutation_generators(
    gens: Sequence[Sequence[int]],
    name: str = "G",
    *,
    cap: int = CLOSURE_CAP,
    source: str = "permutations",
) -> FiniteGroup:
    """Enumerate the permutation group generated by ``gens`` breadth-first.

    Each generator is given in image form (``g[i]`` is the image of ``i``).
    Products compose left to right: ``(x*y)(i) = y(x(i))``.
    """
    if not gens:
        return FiniteGroup(np.zeros((1, 1), dtype=np.int64), name, source=source)
    degree = len(gens[0])
    gl = [tuple(g) for g in gens]
    for g in gl:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise InvalidParameter(f"{g} is not a permutation of 0..{degree - 1}")
    ident = tuple(range(degree))
    index = {ident: 0}
    elems = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gl:
            y = tuple(g[i] for i in x)
            if y not in index:
                if len(elems) >= cap:
                    raise ClosureCapExceeded(f"closure exceeds {cap} elements")
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    arr = np.array(elems, dtype=np.int64)
    n = len(elems)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        prod = arr[:, arr[i]]            # prod[j] = elems[j] applied after elems[i]
        table[i] = [index[tuple(r)] for r in prod.tolist()]
    return FiniteGroup(table, name, source=source)


# -- element arithmetic -------------------------------------------------------

def element_order(G: FiniteGroup, x: int) -> int:
    return G.orders[x]


def closure_mask(G: FiniteGroup, gens: Iterable[int], start: int = 1) -> int:
    """Bitmask of the subgroup generated by ``gens`` together with subgroup ``start``.

    ``start`` must itself be a subgroup mask (the default is the trivial one).
    """
    mul = G.mul
    h = start
    elems = list(bits(start))
    # new elements must also be multiplied by generators of ``start``
    used: list[int] = _generators(G, start) if start != 1 else []
    for s in gens:
        if h >> s & 1:
            continue
        used.append(s)
        queue = deque(elems)
        while queue:
            e = queue.popleft()
            for g in used:
                f = mul[e][g]
                if not h >> f & 1:
                    h |= 1 << f
                    elems.append(f)
                    queue.append(f)
    return h


def _generators(G: FiniteGroup, H: int) -> list[int]:
    """A small generating set of the subgroup with bitmask ``H``."""
    gens: list[int] = []
    span = 1
    for x in bits(H):
        if not span >> x & 1:
            gens.append(x)
            span = closure_mask(G, [x], start=span)
    return gens


def closure(G: FiniteGroup, S: Iterable[int]) -> ElemSet:
    return ElemSet.from_mask(closure_mask(G, S), G.order, is_subgroup=True)


def cyclic_pair(G: FiniteGroup, x: int, y: int, *, naive: bool = False) -> bool:
    """Whether the subgroup generated by ``x`` and ``y`` is cyclic.

    The default path rejects noncommuting pairs, then uses that an abelian
    group generated by ``x`` and ``y`` has exponent lcm(o(x), o(y)) and order
    o(x)o(y)/|<x> & <y>|, so it is cyclic exactly when the intersection has
    gcd(o(x), o(y)) elements.  ``naive=True`` builds the closure and looks
    for an element of full order instead.
    """
    if naive:
        h = closure_mask(G, (x, y))
        size = h.bit_count()
        return any(G.orders[e] == size for e in bits(h))
    if G.mul[x][y] != G.mul[y][x]:
        return False
    common = (G.cyclic_mask(x) & G.cyclic_mask(y)).bit_count()
    return common == math.gcd(G.orders[x], G.orders[y])


def primary_decomposition(G: FiniteGroup, g: int) -> dict[int, int]:
    """Split ``g`` into commuting prime-power parts, one per prime dividing o(g)."""
    o = G.orders[g]
    if o == 1:
        raise IdentityElement("the identity has no primary parts")
    parts = {}
    for p, e in factorize(o):
        q = p**e
        m = o // q
        # k = 1 mod q, k = 0 mod m
        k = m * pow(m, -1, q) if q > 1 else 0
        parts[p] = G.power(g, k)
    return parts


# -- standard constructors ---------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter("cyclic(n) needs n >= 1")
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; element ``i + n*j`` is r^i s^j."""
    if n < 1:
        raise InvalidParameter("dihedral(n) needs n >= 1")
    idx = np.arange(2 * n)
    i, j = idx % n, idx // n
    sign = np.where(j == 1, -1, 1)
    ri = (i[:, None] + sign[:, None] * i[None, :]) % n
    rj = (j[:, None] + j[None, :]) % 2
    return FiniteGroup(ri + n * rj, f"D{2 * n}")


def dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n: a^(2n) = 1, b^2 = a^n, b a b^-1 = a^-1.

    Element ``i + 2n*j`` is a^i b^j.  dicyclic(2^k) is generalized quaternion.
    """
    if n < 2:
        raise InvalidParameter("dicyclic(n) needs n >= 2")
    m = 2 * n
    idx = np.arange(2 * m)
    i, j = idx % m, idx // m
    sign = np.where(j == 1, -1, 1)
    ri = i[:, None] + sign[:, None] * i[None, :] + n * (j[:, None] & j[None, :])
    rj = (j[:, None] + j[None, :]) % 2
    name = f"Q{4 * n}" if n & (n - 1) == 0 else f"Dic{n}"
    return FiniteGroup(ri % m + m * rj, name)


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Element ``g*|H| + h`` is the pair (g, h)."""
    k = H.order
    t = G.table[:, None, :, None] * k + H.table[None, :, None, :]
    t = t.reshape(G.order * k, G.order * k)
    return FiniteGroup(t, name or f"{G.name}x{H.name}")


def symmetric(d: int) -> FiniteGroup:
    if d < 1:
        raise InvalidParameter("symmetric(d) needs d >= 1")
    gens = [tuple(range(d))]
    if d > 1:
        gens = [perm_from_cycles([(0, 1)], d), perm_from_cycles([tuple(range(d))], d)]
    return from_permutation_generators(gens, f"S{d}")


def alternating(d: int) -> FiniteGroup:
    if d < 3:
        return from_permutation_generators([tuple(range(max(d, 1)))], f"A{d}")
    gens = [perm_from_cycles([(0, 1, i)], d) for i in range(2, d)]
    return from_permutation_generators(gens, f"A{d}")


def frobenius_20() -> FiniteGroup:
    gens = [perm_from_cycles([(0, 1, 2, 3, 4)], 5), perm_from_cycles([(1, 2, 4, 3)], 5)]
    return from_permutation_generators(gens, "F20")

