"""Finite groups as dense Cayley tables with 0-based indices.

Conventions used everywhere in this package:
  * elements of a group of order n are the integers 0..n-1,
  * the identity sits at index 0,
  * permutations are tuples p with p[x] the image of x,
  * compose(p, q) applies q first, so compose(p, q)[x] = p[q[x]].
"""

from __future__ import annotations

from itertools import permutations
from math import gcd
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import (
    InputError,
    NoIdentityAtZero,
    NoInverse,
    NotAssociative,
    NotClosed,
    OrderBoundExceeded,
)

Perm = tuple  # tuple[int, ...]

DEFAULT_ORDER_BOUND = 16


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """compose(p, q)[x] = p[q[x]]  (q acts first)."""
    return tuple(p[x] for x in q)


def invert_perm(p: Sequence[int]) -> Perm:
    r = [0] * len(p)
    for x, y in enumerate(p):
        r[y] = x
    return tuple(r)


def is_perm(p: Sequence[int], n: int) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


def perm_order(p: Sequence[int]) -> int:
    n = len(p)
    order = 1
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        order = order * length // gcd(order, length)
    return order


class FiniteGroup:
    """Immutable group given by its full multiplication table."""

    __slots__ = ("n", "table", "inv", "_np", "_abelian", "_orders", "_hash")

    def __init__(self, table: Sequence[Sequence[int]]):
        tab = tuple(tuple(int(x) for x in row) for row in table)
        n = len(tab)
        self.n = n
        self.table = tab
        inv = [-1] * n
        for a in range(n):
            row = tab[a]
            for b in range(n):
                if row[b] == 0 and tab[b][a] == 0:
                    inv[a] = b
                    break
        self.inv = tuple(inv)
        self._np = None
        self._abelian = None
        self._orders = None
        self._hash = hash(tab)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.n})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, g: int, z: int) -> int:
        """g z g^-1."""
        return self.table[self.table[g][z]][self.inv[g]]

    @property
    def np_table(self) -> np.ndarray:
        if self._np is None:
            arr = np.array(self.table, dtype=np.int64)
            arr.flags.writeable = False
            self._np = arr
        return self._np

    @property
    def is_abelian(self) -> bool:
        if self._abelian is None:
            t = self.np_table
            self._abelian = bool(np.array_equal(t, t.T))
        return self._abelian

    def element_order(self, a: int) -> int:
        if self._orders is None:
            orders = []
            for x in range(self.n):
                k, y = 1, x
                while y != 0:
                    y = self.table[y][x]
                    k += 1
                orders.append(k)
            self._orders = tuple(orders)
        return self._orders[a]

    def order_profile(self) -> tuple:
        """Sorted multiset of element orders; an isomorphism invariant."""
        return tuple(sorted(self.element_order(a) for a in range(self.n)))

    def subgroup_closure(self, gens: Iterable[int]) -> tuple:
        elems = {0}
        frontier = [0] + [g for g in gens]
        elems.update(frontier)
        changed = True
        while changed:
            changed = False
            for a in list(elems):
                for b in list(elems):
                    c = self.table[a][b]
                    if c not in elems:
                        elems.add(c)
                        changed = True
        return tuple(sorted(elems))

    def is_subgroup(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        if 0 not in s:
            return False
        return all(self.table[a][b] in s for a in s for b in s)

    def centre(self) -> tuple:
        t = self.table
        return tuple(
            a for a in range(self.n) if all(t[a][b] == t[b][a] for b in range(self.n))
        )

    def relabel(self, perm: Sequence[int]) -> "FiniteGroup":
        """Group with element x renamed to perm[x]."""
        n = self.n
        new = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                new[perm[a]][perm[b]] = perm[self.table[a][b]]
        return FiniteGroup(new)

    def generating_sequence(self) -> tuple:
        gens: list = []
        closure = {0}
        while len(closure) < self.n:
            g = min(x for x in range(self.n) if x not in closure)
            gens.append(g)
            closure = set(self.subgroup_closure(gens))
        return tuple(gens)


def validate_group(table: Sequence[Sequence[int]]) -> FiniteGroup:
    """Check the full group axioms on a table, identity pinned at index 0."""
    n = len(table)
    if n == 0:
        raise NotClosed("empty table")
    for a, row in enumerate(table):
        if len(row) != n:
            raise NotClosed(f"row {a} has length {len(row)}, expected {n}", row=a)
        for b, cell in enumerate(row):
            if not isinstance(cell, (int, np.integer)) or not 0 <= cell < n:
                raise NotClosed(f"entry ({a},{b}) = {cell!r} out of range", a=a, b=b)
    for a in range(n):
        if table[0][a] != a or table[a][0] != a:
            raise NoIdentityAtZero(f"index 0 is not a two-sided identity at {a}", a=a)
    for a in range(n):
        if not any(table[a][b] == 0 and table[b][a] == 0 for b in range(n)):
            raise NoInverse(f"element {a} has no two-sided inverse", a=a)
    t = np.array(table, dtype=np.int64)
    left = t[t, :]          # left[a,b,c]  = t[t[a,b], c]
    right = t[:, t]         # right[a,b,c] = t[a, t[b,c]]
    if not np.array_equal(left, right):
        a, b, c = (int(x) for x in np.argwhere(left != right)[0])
        raise NotAssociative(
            f"({a}*{b})*{c} = {left[a, b, c]} != {right[a, b, c]} = {a}*({b}*{c})",
            a=a, b=b, c=c,
        )
    return FiniteGroup(table)


class PermGroup:
    """A set of permutations of 0..degree-1, expected to form a group."""

    __slots__ = ("degree", "elements", "_sorted")

    def __init__(self, degree: int, elements: Iterable[Sequence[int]]):
        elems = frozenset(tuple(p) for p in elements)
        if not elems:
            elems = frozenset({identity_perm(degree)})
        self.degree = degree
        self.elements = elems
        self._sorted = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list:
        if self._sorted is None:
            self._sorted = sorted(self.elements)
        return self._sorted

    def __contains__(self, p: Sequence[int]) -> bool:
        return tuple(p) in self.elements

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.sorted_elements())

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def is_group(self) -> bool:
        if identity_perm(self.degree) not in self.elements:
            return False
        for p in self.elements:
            if invert_perm(p) not in self.elements:
                return False
            for q in self.elements:
                if compose(p, q) not in self.elements:
                    return False
        return True

    @classmethod
    def generate(cls, degree: int, gens: Iterable[Sequence[int]]) -> "PermGroup":
        elems = {identity_perm(degree)}
        frontier = [tuple(g) for g in gens]
        elems.update(frontier)
        while frontier:
            nxt = []
            for p in frontier:
                for q in list(elems):
                    for r in (compose(p, q), compose(q, p)):
                        if r not in elems:
                            elems.add(r)
                            nxt.append(r)
                inv = invert_perm(p)
                if inv not in elems:
                    elems.add(inv)
                    nxt.append(inv)
            frontier = nxt
        return cls(degree, elems)


def _close_partial_hom(
    src: FiniteGroup,
    mapping: dict,
    dst_mul: Callable,
) -> Optional[dict]:
    """Saturate a partial map under products; None on inconsistency."""
    m = dict(mapping)
    changed = True
    while changed:
        changed = False
        known = list(m.items())
        for a, fa in known:
            for b, fb in known:
                c = src.table[a][b]
                v = dst_mul(fa, fb)
                got = m.get(c)
                if got is None:
                    m[c] = v
                    changed = True
                elif got != v:
                    return None
    return m


def _homomorphisms(
    src: FiniteGroup,
    candidates: Callable,
    dst_mul: Callable,
    dst_id,
    *,
    bijective: bool = False,
    first_only: bool = False,
) -> list:
    """All maps src -> target extending to homomorphisms on the generators.

    `candidates(gen)` yields admissible images for a generator.  Returns a
    list of dicts {src element: image}, total on src by construction.
    """
    gens = src.generating_sequence()
    out: list = []

    def assign(i: int, mapping: dict) -> bool:
        if i == len(gens):
            if len(mapping) != src.n:
                return False
            if bijective and len(set(mapping.values())) != src.n:
                return False
            out.append(dict(mapping))
            return first_only
        for img in candidates(gens[i]):
            trial = dict(mapping)
            trial[gens[i]] = img
            closed = _close_partial_hom(src, trial, dst_mul)
            if closed is None:
                continue
            if bijective and len(set(closed.values())) != len(closed):
                continue
            if assign(i + 1, closed):
                return True
        return False

    assign(0, {0: dst_id})
    return out


def automorphism_group(G: FiniteGroup, max_order: int = DEFAULT_ORDER_BOUND) -> PermGroup:
    """Aut(G) by exhaustive backtracking over generator images."""
    if G.n > max_order:
        raise OrderBoundExceeded("automorphism_group", G.n, max_order)

    def candidates(g: int):
        k = G.element_order(g)
        return [x for x in range(G.n) if G.element_order(x) == k]

    maps = _homomorphisms(G, candidates, G.mul, 0, bijective=True)
    perms = {tuple(m[x] for x in range(G.n)) for m in maps}
    return PermGroup(G.n, perms)


def find_isomorphism(G1: FiniteGroup, G2: FiniteGroup) -> Optional[Perm]:
    """A relabeling perm p with p(a *1 b) = p(a) *2 p(b), or None."""
    if G1.n != G2.n or G1.order_profile() != G2.order_profile():
        return None

    def candidates(g: int):
        k = G1.element_order(g)
        return [x for x in range(G2.n) if G2.element_order(x) == k]

    maps = _homomorphisms(G1, candidates, G2.mul, 0, bijective=True, first_only=True)
    if not maps:
        return None
    m = maps[0]
    return tuple(m[x] for x in range(G1.n))


def is_isomorphic(G1: FiniteGroup, G2: FiniteGroup) -> bool:
    return find_isomorphism(G1, G2) is not None


def homs_to_perm_group(src: FiniteGroup, target: PermGroup) -> list:
    """All homomorphisms src -> target, each as a tuple of perms."""
    elems = target.sorted_elements()

    def candidates(g: int):
        k = src.element_order(g)
        return [p for p in elems if k % perm_order(p) == 0]

    maps = _homomorphisms(src, candidates, compose, identity_perm(target.degree))
    result = [tuple(m[h] for h in range(src.n)) for m in maps]
    return sorted(set(result))


def inner_automorphism(G: FiniteGroup, g: int) -> Perm:
    """z |-> g z g^-1."""
    return tuple(G.conj(g, z) for z in range(G.n))


def inner_group(G: FiniteGroup) -> PermGroup:
    return PermGroup(G.n, {inner_automorphism(G, g) for g in range(G.n)})


def centre(G: FiniteGroup) -> tuple:
    return G.centre()


def normal_closure(ambient: PermGroup, seed: Iterable[Sequence[int]]) -> PermGroup:
    """Smallest subgroup of `ambient` containing `seed` and closed under
    conjugation by all of `ambient`."""
    seed = [tuple(p) for p in seed]
    for p in seed:
        if p not in ambient:
            raise InputError("normal_closure: seed permutation not in ambient group")
    elems = {identity_perm(ambient.degree)}
    elems.update(seed)
    frontier = list(elems)
    amb = ambient.sorted_elements()
    while frontier:
        nxt = []
        for p in frontier:
            new = [invert_perm(p)]
            new.extend(compose(p, q) for q in list(elems))
            new.extend(compose(q, p) for q in list(elems))
            for a in amb:
                new.append(compose(compose(a, p), invert_perm(a)))
            for r in new:
                if r not in elems:
                    elems.add(r)
                    nxt.append(r)
        frontier = nxt
    return PermGroup(ambient.degree, elems)


def equal_mod(sub: PermGroup, p: Sequence[int], q: Sequence[int]) -> bool:
    """True iff p and q represent the same class modulo `sub`."""
    return compose(tuple(p), invert_perm(q)) in sub


# --- standard constructions ------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)])


def direct_product_group(G1: FiniteGroup, G2: FiniteGroup) -> FiniteGroup:
    n1, n2 = G1.n, G2.n
    n = n1 * n2
    table = [[0] * n for _ in range(n)]
    for a1 in range(n1):
        for a2 in range(n2):
            for b1 in range(n1):
                for b2 in range(n2):
                    table[a1 * n2 + a2][b1 * n2 + b2] = (
                        G1.table[a1][b1] * n2 + G2.table[a2][b2]
                    )
    return FiniteGroup(table)


def klein_group() -> FiniteGroup:
    return direct_product_group(cyclic_group(2), cyclic_group(2))


def dihedral_group(k: int) -> FiniteGroup:
    """Order 2k, elements a^i b^j indexed as 2*i + j, with b a b = a^-1."""
    if k < 1:
        raise InputError("dihedral_group needs k >= 1")
    n = 2 * k
    table = [[0] * n for _ in range(n)]
    for i in range(k):
        for j in range(2):
            for m in range(k):
                for l in range(2):
                    # (a^i b^j)(a^m b^l) = a^(i + (-1)^j m) b^(j xor l)
                    e = (i + (m if j == 0 else -m)) % k
                    table[2 * i + j][2 * m + l] = 2 * e + (j ^ l)
    return FiniteGroup(table)


def dicyclic_group(k: int) -> FiniteGroup:
    """Order 4k; k = 2 gives the quaternion group Q8.

    Elements a^i x^j with a of order 2k, x^2 = a^k, x a x^-1 = a^-1,
    indexed as 2*i + j.
    """
    if k < 1:
        raise InputError("dicyclic_group needs k >= 1")
    m = 2 * k
    n = 4 * k

    def mul(i, j, s, t):
        if j == 0:
            e, f = (i + s) % m, t
        elif t == 0:
            e, f = (i - s) % m, 1
        else:
            e, f = (i - s + k) % m, 0
        return 2 * e + f

    table = [[mul(a // 2, a % 2, b // 2, b % 2) for b in range(n)] for a in range(n)]
    return FiniteGroup(table)


def group_from_elements(elements: list, mul: Callable) -> FiniteGroup:
    """Index an abstract element list (identity first) into a Cayley table."""
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = [[index[mul(elements[a], elements[b])] for b in range(n)] for a in range(n)]
    return FiniteGroup(table)


def alternating4_group() -> FiniteGroup:
    elems = sorted(
        (p for p in permutations(range(4)) if _perm_sign(p) == 1),
        key=lambda p: (p != (0, 1, 2, 3), p),
    )
    return group_from_elements(list(elems), compose)


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    n = len(p)
    for i in range(n):
        for j in range(i + 1, n):
            if p[i] > p[j]:
                sign = -sign
    return sign


def standard_groups_of_order(n: int) -> list:
    """All isomorphism classes of groups of order n, for n <= 7."""
    if n < 1 or n > 7:
        raise OrderBoundExceeded("standard_groups_of_order", n, 7)
    groups = [cyclic_group(n)]
    if n == 4:
        groups.append(klein_group())
    elif n == 6:
        groups.append(dihedral_group(3))
    return groups


def all_group_tables(n: int) -> list:
    """Every Cayley table on 0..n-1 with identity 0, as table tuples (n <= 7)."""
    tables = set()
    for G in standard_groups_of_order(n):
        for rest in permutations(range(1, n)):
            perm = (0,) + rest
            tables.add(G.relabel(perm).table)
    return sorted(tables)


_ABELIAN_FACTOR_CACHE: dict = {}


def _abelian_candidates(n: int) -> list:
    """All abelian groups of order n as (name, FiniteGroup), n <= 16."""
    if n in _ABELIAN_FACTOR_CACHE:
        return _ABELIAN_FACTOR_CACHE[n]

    def chains(m: int, max_d: int) -> list:
        if m == 1:
            return [[]]
        out = []
        for d in range(2, min(m, max_d) + 1):
            if m % d == 0:
                for tail in chains(m // d, d):
                    out.append([d] + tail)
        return out

    result = []
    for chain in chains(n, n):
        # invariant factors d_k | ... | d_1, stored largest first
        ok = all(chain[i] % chain[i + 1] == 0 for i in range(len(chain) - 1))
        if not ok:
            continue
        G = cyclic_group(chain[0])
        for d in chain[1:]:
            G = direct_product_group(G, cyclic_group(d))
        name = " x ".join(f"Z{d}" for d in sorted(chain))
        result.append((name, G))
    _ABELIAN_FACTOR_CACHE[n] = result
    return result


def describe_group(G: FiniteGroup) -> str:
    """Readable isomorphism-type name for small groups."""
    n = G.n
    if n == 1:
        return "trivial"
    if G.is_abelian:
        if n <= 16:
            for name, H in _abelian_candidates(n):
                if is_isomorphic(G, H):
                    return name
        return f"abelian of order {n}"
    if n <= 16:
        candidates = []
        if n % 2 == 0:
            k = n // 2
            candidates.append(("S3" if k == 3 else f"D{k}", dihedral_group(k)))
        if n % 4 == 0:
            k = n // 4
            candidates.append(("Q8" if k == 2 else f"Dic{k}", dicyclic_group(k)))
        if n == 12:
            candidates.append(("A4", alternating4_group()))
        for name, H in candidates:
            if is_isomorphic(G, H):
                return name
    return f"nonabelian of order {n}"
