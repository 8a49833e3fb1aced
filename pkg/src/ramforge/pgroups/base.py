"""Core finite p-group machinery: normal-form groups, products, subgroups,
quotients, Cayley-table groups, and lazy materialization to index tables.

Every group exposes a deterministic element order; all searches and
constructions derive their results from that order, never from timing, so
repeated runs give identical answers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..errors import (
    InternalCheckError,
    MaterializationLimitError,
    ParameterError,
    ParseError,
)
from ..laurent import require_odd_prime

DEFAULT_LIMIT = 10000


class PGroup:
    """A finite p-group over hashable normal-form elements."""

    p: int

    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def _element_list(self) -> list:
        raise NotImplementedError

    def descriptor(self) -> str:
        raise NotImplementedError

    # -- cached element order / index tables --------------------------------

    def elements(self) -> tuple:
        cached = getattr(self, "_elements", None)
        if cached is None:
            cached = tuple(self._element_list())
            self._elements = cached
        return cached

    @property
    def order(self) -> int:
        return len(self.elements())

    def index_map(self) -> dict:
        cached = getattr(self, "_index_map", None)
        if cached is None:
            cached = {g: i for i, g in enumerate(self.elements())}
            self._index_map = cached
        return cached

    def __repr__(self):
        return f"<{type(self).__name__} {self.descriptor()} order={self.order}>"


@dataclass
class GroupTables:
    """Materialized index tables: everything analysis needs, as plain ints."""

    group: PGroup
    n: int
    e: int
    mul: list[list[int]]
    inv: list[int]

    def conj(self, g: int, h: int) -> int:
        """h^-1 g h"""
        return self.mul[self.mul[self.inv[h]][g]][h]

    def commutator(self, g: int, h: int) -> int:
        """g^-1 h^-1 g h"""
        return self.mul[self.mul[self.inv[g]][self.inv[h]]][self.mul[g][h]]

    def power(self, g: int, k: int) -> int:
        out = self.e
        acc = g
        while k:
            if k & 1:
                out = self.mul[out][acc]
            acc = self.mul[acc][acc]
            k >>= 1
        return out


def tables(G: PGroup, limit: int = DEFAULT_LIMIT) -> GroupTables:
    """Materialize multiplication/inverse index tables (cached on the group)."""
    n = G.order
    if n > limit:
        raise MaterializationLimitError(
            f"group of order {n} exceeds materialization limit {limit}"
        )
    cached = getattr(G, "_tables", None)
    if cached is not None:
        return cached
    elems = G.elements()
    idx = G.index_map()
    mul = [[idx[G.mul(a, b)] for b in elems] for a in elems]
    inv = [idx[G.inv(a)] for a in elems]
    e = idx[G.identity()]
    for a in range(n):
        if mul[a][inv[a]] != e or mul[inv[a]][a] != e or mul[a][e] != a:
            raise InternalCheckError(f"group tables inconsistent at element {a}")
    t = GroupTables(G, n, e, mul, inv)
    G._tables = t
    return t


def _vec_add(a: tuple, b: tuple, p: int) -> tuple:
    return tuple((x + y) % p for x, y in zip(a, b))


def _vec_neg(a: tuple, p: int) -> tuple:
    return tuple((-x) % p for x in a)


def _dot(a: tuple, b: tuple) -> int:
    return sum(x * y for x, y in zip(a, b))


class HGroup(PGroup):
    """H(n, d): generators x_i, y_i of order p and central z of order p^d,
    with [x_i, y_i] = z^(p^(d-1)) the only nontrivial commutation.

    Elements are normal forms (a, b, c) for x^a y^b z^c; the collection
    convention y^b x^a' = x^a' y^b z^(-p^(d-1) a'.b) fixes the product law.
    H(0, d) is the cyclic group of order p^d.
    """

    def __init__(self, p: int, n: int, d: int):
        require_odd_prime(p)
        if n < 0 or d < 1:
            raise ParameterError(f"H(n, d) needs n >= 0 and d >= 1, got n={n} d={d}")
        self.p = p
        self.n = n
        self.d = d
        self.zmod = p**d
        self.shift = p ** (d - 1)

    def identity(self):
        return ((0,) * self.n, (0,) * self.n, 0)

    def mul(self, g, h):
        (a1, b1, c1), (a2, b2, c2) = g, h
        c = (c1 + c2 - self.shift * _dot(a2, b1)) % self.zmod
        return (_vec_add(a1, a2, self.p), _vec_add(b1, b2, self.p), c)

    def inv(self, g):
        a, b, c = g
        ci = (-c - self.shift * _dot(a, b)) % self.zmod
        return (_vec_neg(a, self.p), _vec_neg(b, self.p), ci)

    def _element_list(self):
        vecs = list(product(range(self.p), repeat=self.n))
        return [(a, b, c) for a in vecs for b in vecs for c in range(self.zmod)]

    def descriptor(self) -> str:
        return f"kind=H p={self.p} n={self.n} d={self.d}"

    def gen_x(self, i: int):
        a = tuple(1 if j == i else 0 for j in range(self.n))
        return (a, (0,) * self.n, 0)

    def gen_y(self, i: int):
        b = tuple(1 if j == i else 0 for j in range(self.n))
        return ((0,) * self.n, b, 0)

    def gen_z(self):
        return ((0,) * self.n, (0,) * self.n, 1)


class AGroup(PGroup):
    """A(n, d): like H(n, d) but x_1 has order p^(d+1) with x_1^p = z.

    Elements are normal forms (a1, rest, b) for x_1^a1 x_2^a2 ... y^b with
    a1 mod p^(d+1); the commutator [x_i, y_i] = z^(p^(d-1)) = x_1^(p^d)
    feeds corrections into the a1 coordinate.
    """

    def __init__(self, p: int, n: int, d: int):
        require_odd_prime(p)
        if n < 1 or d < 1:
            raise ParameterError(f"A(n, d) needs n >= 1 and d >= 1, got n={n} d={d}")
        self.p = p
        self.n = n
        self.d = d
        self.x1mod = p ** (d + 1)
        self.shift = p**d

    def identity(self):
        return (0, (0,) * (self.n - 1), (0,) * self.n)

    def _avec(self, g):
        a1, rest, _ = g
        return (a1 % self.p,) + rest

    def mul(self, g, h):
        (a1, r1, b1), (a2, r2, b2) = g, h
        a1n = (a1 + a2 - self.shift * _dot(self._avec(h), b1)) % self.x1mod
        return (a1n, _vec_add(r1, r2, self.p), _vec_add(b1, b2, self.p))

    def inv(self, g):
        a1, rest, b = g
        a1i = (-a1 - self.shift * _dot(self._avec(g), b)) % self.x1mod
        return (a1i, _vec_neg(rest, self.p), _vec_neg(b, self.p))

    def _element_list(self):
        rests = list(product(range(self.p), repeat=self.n - 1))
        bvecs = list(product(range(self.p), repeat=self.n))
        return [(a1, r, b) for a1 in range(self.x1mod) for r in rests for b in bvecs]

    def descriptor(self) -> str:
        return f"kind=A p={self.p} n={self.n} d={self.d}"

    def gen_x(self, i: int):
        if i == 0:
            return (1, (0,) * (self.n - 1), (0,) * self.n)
        rest = tuple(1 if j == i - 1 else 0 for j in range(self.n - 1))
        return (0, rest, (0,) * self.n)

    def gen_y(self, i: int):
        b = tuple(1 if j == i else 0 for j in range(self.n))
        return (0, (0,) * (self.n - 1), b)

    def gen_z(self):
        return (self.p, (0,) * (self.n - 1), (0,) * self.n)


class CyclicPGroup(PGroup):
    """Cyclic group of order p^k, written additively on 0..p^k-1."""

    def __init__(self, p: int, k: int):
        require_odd_prime(p)
        if k < 1:
            raise ParameterError(f"cyclic p-group needs k >= 1, got {k}")
        self.p = p
        self.k = k
        self.mod = p**k

    def identity(self):
        return 0

    def mul(self, a, b):
        return (a + b) % self.mod

    def inv(self, a):
        return (-a) % self.mod

    def _element_list(self):
        return list(range(self.mod))

    def descriptor(self) -> str:
        return f"kind=C p={self.p} k={self.k}"

    def gen(self):
        return 1


class DirectProductGroup(PGroup):
    """Direct product with elements as pairs."""

    def __init__(self, g1: PGroup, g2: PGroup):
        if g1.p != g2.p:
            raise ParameterError(f"prime mismatch: {g1.p} vs {g2.p}")
        self.p = g1.p
        self.g1 = g1
        self.g2 = g2

    def identity(self):
        return (self.g1.identity(), self.g2.identity())

    def mul(self, a, b):
        return (self.g1.mul(a[0], b[0]), self.g2.mul(a[1], b[1]))

    def inv(self, a):
        return (self.g1.inv(a[0]), self.g2.inv(a[1]))

    def _element_list(self):
        return [(a, b) for a in self.g1.elements() for b in self.g2.elements()]

    def descriptor(self) -> str:
        return f"{self.g1.descriptor()} x {self.g2.descriptor()}"


class SubgroupGroup(PGroup):
    """The subgroup generated by ``gens`` inside ``parent``."""

    def __init__(self, parent: PGroup, gens, limit: int = DEFAULT_LIMIT):
        self.p = parent.p
        self.parent = parent
        idx = parent.index_map()
        closure = _closure_elements(parent, list(gens), limit)
        self._sorted = sorted(closure, key=lambda g: idx[g])

    def identity(self):
        return self.parent.identity()

    def mul(self, a, b):
        return self.parent.mul(a, b)

    def inv(self, a):
        return self.parent.inv(a)

    def _element_list(self):
        return list(self._sorted)

    def descriptor(self) -> str:
        return f"subgroup(order={len(self._sorted)}) of {self.parent.descriptor()}"


def _closure_elements(G: PGroup, gens: list, limit: int) -> set:
    e = G.identity()
    seen = {e}
    frontier = [e]
    gens = [g for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in seen:
                    if len(seen) >= limit:
                        raise MaterializationLimitError(
                            f"subgroup closure exceeded limit {limit}"
                        )
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


class QuotientGroup(PGroup):
    """G/N for a normal subgroup N, with cosets as frozensets of elements.

    Cosets are ordered by the parent index of their first member, so the
    element order is deterministic.
    """

    def __init__(self, parent: PGroup, normal_elements):
        self.p = parent.p
        self.parent = parent
        nset = set(normal_elements)
        if parent.identity() not in nset:
            raise ParameterError("normal subgroup must contain the identity")
        idx = parent.index_map()
        elems = parent.elements()
        if not nset <= set(elems):
            raise ParameterError("normal subgroup has elements outside the group")
        if len(elems) % len(nset):
            raise ParameterError("subgroup size does not divide the group order")
        coset_of: dict = {}
        cosets: list[frozenset] = []
        for g in elems:  # ascending parent index
            if g in coset_of:
                continue
            coset = frozenset(parent.mul(g, h) for h in nset)
            if len(coset) != len(nset):
                raise ParameterError("coset size mismatch: not a subgroup")
            cid = len(cosets)
            cosets.append(coset)
            for x in coset:
                if x in coset_of:
                    raise ParameterError("cosets overlap: not a subgroup")
                coset_of[x] = cid
        # normality: g^-1 N g = N for all g
        for g in elems:
            gi = parent.inv(g)
            for h in nset:
                if parent.mul(parent.mul(gi, h), g) not in nset:
                    raise ParameterError("subgroup is not normal")
        self._cosets = cosets
        self._coset_of = coset_of
        self._rep = [min(c, key=lambda x: idx[x]) for c in cosets]

    def identity(self):
        return self._cosets[self._coset_of[self.parent.identity()]]

    def mul(self, a, b):
        ra = self._rep[self._coset_of[next(iter(a))]]
        rb = self._rep[self._coset_of[next(iter(b))]]
        return self._cosets[self._coset_of[self.parent.mul(ra, rb)]]

    def inv(self, a):
        ra = self._rep[self._coset_of[next(iter(a))]]
        return self._cosets[self._coset_of[self.parent.inv(ra)]]

    def _element_list(self):
        return list(self._cosets)

    def descriptor(self) -> str:
        return (
            f"quotient(order={len(self._cosets)}) of {self.parent.descriptor()}"
        )


class TableGroup(PGroup):
    """A group given by an explicit Cayley table of 0-based indices.

    Used for foreign groups fed to the CLI; the constructor checks the
    group axioms exhaustively (closure, identity, inverses, associativity),
    so an invalid table is rejected rather than silently accepted.
    """

    def __init__(self, p: int, table: list[list[int]]):
        require_odd_prime(p)
        n = len(table)
        if n < 1 or any(len(row) != n for row in table):
            raise ParameterError("Cayley table must be square")
        m = n
        while m % p == 0:
            m //= p
        if m != 1:
            raise ParameterError(f"order {n} is not a power of p = {p}")
        for row in table:
            for x in row:
                if not 0 <= x < n:
                    raise ParameterError(f"table entry {x} out of range")
        ident = None
        for e in range(n):
            if all(table[e][x] == x and table[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise ParameterError("table has no identity element")
        inverse = [None] * n
        for a in range(n):
            for b in range(n):
                if table[a][b] == ident and table[b][a] == ident:
                    inverse[a] = b
                    break
            if inverse[a] is None:
                raise ParameterError(f"element {a} has no inverse")
        for a in range(n):
            ta = table[a]
            for b in range(n):
                tab = table[ta[b]]
                tb = table[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise ParameterError(
                            f"table is not associative at ({a}, {b}, {c})"
                        )
        self.p = p
        self._table = table
        self._inv_list = inverse
        self._ident = ident

    def identity(self):
        return self._ident

    def mul(self, a, b):
        return self._table[a][b]

    def inv(self, a):
        return self._inv_list[a]

    def _element_list(self):
        return list(range(len(self._table)))

    def descriptor(self) -> str:
        return f"table(order={len(self._table)}, p={self.p})"


def make_group(kind: str, p: int, n: int, d: int) -> PGroup:
    """Construct H(n, d) or A(n, d) from parameters."""
    if kind == "H":
        return HGroup(p, n, d)
    if kind == "A":
        return AGroup(p, n, d)
    raise ParameterError(f"unknown group kind {kind!r}")


def parse_group_descriptor(text: str) -> PGroup:
    """Parse ``kind=H p=3 n=1 d=1`` optionally joined by `` x `` into products."""
    parts = text.split(" x ")
    groups = []
    for part in parts:
        kv = {}
        for tok in part.split():
            k, sep, v = tok.partition("=")
            if not sep:
                raise ParseError(f"malformed group descriptor: {part!r}")
            kv[k] = v
        try:
            kind = kv.pop("kind")
            if kind in ("H", "A"):
                groups.append(make_group(kind, int(kv.pop("p")), int(kv.pop("n")), int(kv.pop("d"))))
            elif kind == "C":
                groups.append(CyclicPGroup(int(kv.pop("p")), int(kv.pop("k"))))
            else:
                raise ParseError(f"unknown group kind {kind!r}")
            if kv:
                raise ParseError(f"unexpected fields {sorted(kv)} in descriptor {part!r}")
        except (KeyError, ValueError) as exc:
            raise ParseError(f"malformed group descriptor: {part!r}") from exc
    G = groups[0]
    for h in groups[1:]:
        G = DirectProductGroup(G, h)
    return G
