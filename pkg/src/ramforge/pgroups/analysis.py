"""Structure analysis for small p-groups: centers, commutators, Frattini
subgroups, minimal-nonabelian recognition and classification, central
products, and the prime-to-p automorphism triviality check.

Everything here is exhaustive over materialized index tables, which keeps
the checks independent of the normal-form constructions they are applied
to: a constructed group is never trusted to have the properties its
construction was aiming for.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ..errors import InternalCheckError, MaterializationLimitError, ParameterError
from .base import (
    DEFAULT_LIMIT,
    CyclicPGroup,
    DirectProductGroup,
    GroupTables,
    HGroup,
    PGroup,
    QuotientGroup,
    SubgroupGroup,
    tables,
)


def element_order_idx(t: GroupTables, g: int) -> int:
    k = 1
    x = g
    while x != t.e:
        x = t.mul[x][g]
        k += 1
    return k


def is_abelian(G: PGroup, limit: int = DEFAULT_LIMIT) -> bool:
    t = tables(G, limit)
    return all(
        t.mul[a][b] == t.mul[b][a] for a in range(t.n) for b in range(a + 1, t.n)
    )


def center_idx(t: GroupTables) -> list[int]:
    out = []
    for a in range(t.n):
        row = t.mul[a]
        if all(row[b] == t.mul[b][a] for b in range(t.n)):
            out.append(a)
    return out


def closure_idx(t: GroupTables, gens) -> list[int]:
    seen = {t.e}
    frontier = [t.e]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = t.mul[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def commutator_subgroup_idx(t: GroupTables) -> list[int]:
    gens = {t.commutator(a, b) for a in range(t.n) for b in range(t.n)}
    gens.discard(t.e)
    return closure_idx(t, gens)


def frattini_idx(t: GroupTables) -> list[int]:
    """Phi(G) = G^p [G, G] for a p-group."""
    p = t.group.p
    gens = {t.power(a, p) for a in range(t.n)}
    gens |= {t.commutator(a, b) for a in range(t.n) for b in range(t.n)}
    gens.discard(t.e)
    return closure_idx(t, gens)


def exponent_idx(t: GroupTables) -> int:
    return max(element_order_idx(t, g) for g in range(t.n))


def _log_p(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise ParameterError(f"{n} is not a power of {p}")
    return k


@dataclass(frozen=True)
class GroupBasics:
    order: int
    center: tuple
    commutator_subgroup: tuple
    frattini: tuple
    rank: int
    exponent: int


def group_basics(G: PGroup, limit: int = DEFAULT_LIMIT) -> GroupBasics:
    t = tables(G, limit)
    elems = G.elements()
    z = center_idx(t)
    der = commutator_subgroup_idx(t)
    fr = frattini_idx(t)
    rank = _log_p(t.n // len(fr), G.p)
    return GroupBasics(
        order=t.n,
        center=tuple(elems[i] for i in z),
        commutator_subgroup=tuple(elems[i] for i in der),
        frattini=tuple(elems[i] for i in fr),
        rank=rank,
        exponent=exponent_idx(t),
    )


def _is_cyclic_idx(t: GroupTables, subset: list[int]) -> bool:
    size = len(subset)
    return any(element_order_idx(t, g) == size for g in subset)


@dataclass(frozen=True)
class AbcdResult:
    """The four structural conditions for a minimal nonabelian p-group."""

    class_two: bool  # (i)
    center_cyclic: bool  # (ii)
    commutator_is_socle: bool  # (iii)
    nondegenerate_form: bool  # (iv)
    n: int | None = None
    d: int | None = None

    @property
    def all_true(self) -> bool:
        return (
            self.class_two
            and self.center_cyclic
            and self.commutator_is_socle
            and self.nondegenerate_form
        )


def check_abcd(G: PGroup, limit: int = DEFAULT_LIMIT) -> AbcdResult:
    t = tables(G, limit)
    p = G.p
    z = center_idx(t)
    zset = set(z)
    der = commutator_subgroup_idx(t)
    derset = set(der)

    class_two = len(der) > 1 and derset <= zset

    d = None
    center_cyclic = False
    if _is_cyclic_idx(t, z):
        try:
            d = _log_p(len(z), p)
            center_cyclic = d >= 1
        except ParameterError:
            center_cyclic = False

    socle = {g for g in z if t.power(g, p) == t.e}
    commutator_is_socle = len(der) == p and derset <= zset and derset == socle

    # (iv): G/Z elementary abelian of even rank 2n and the commutator pairing
    # nondegenerate; the pairing is an F_p-form only when [G, G] has order p
    # and the class is 2 (which makes it well defined and bilinear).
    nondegenerate_form = False
    n = None
    if class_two and len(der) == p:
        quotient_size = t.n // len(z)
        try:
            r = _log_p(quotient_size, p)
        except ParameterError:
            r = -1
        elementary = all(t.power(g, p) in zset for g in range(t.n))
        radical_trivial = all(
            g in zset
            or any(t.commutator(g, h) != t.e for h in range(t.n))
            for g in range(t.n)
        )
        if r >= 2 and r % 2 == 0 and elementary and radical_trivial:
            nondegenerate_form = True
            n = r // 2
    return AbcdResult(
        class_two=class_two,
        center_cyclic=center_cyclic,
        commutator_is_socle=commutator_is_socle,
        nondegenerate_form=nondegenerate_form,
        n=n,
        d=d if center_cyclic else None,
    )


def _central_order_p_subgroups(t: GroupTables) -> list[list[int]]:
    p = t.group.p
    z = center_idx(t)
    seen = set()
    out = []
    for g in z:
        if g == t.e or element_order_idx(t, g) != p:
            continue
        sub = frozenset(closure_idx(t, [g]))
        if sub not in seen:
            seen.add(sub)
            out.append(sorted(sub))
    return out


def is_minimal_nonabelian(G: PGroup, limit: int = DEFAULT_LIMIT) -> bool:
    """Nonabelian with every proper quotient abelian.

    Computed two independent ways and cross-checked: (1) directly, via
    quotients by central order-p subgroups (every nontrivial normal
    subgroup of a p-group contains one); (2) via the four structural
    conditions.  Disagreement is a fatal internal error.
    """
    t = tables(G, limit)
    elems = G.elements()
    method1 = not is_abelian(G, limit)
    if method1:
        for sub in _central_order_p_subgroups(t):
            Q = QuotientGroup(G, [elems[i] for i in sub])
            if not is_abelian(Q, limit):
                method1 = False
                break
    method2 = check_abcd(G, limit).all_true
    if method1 != method2:
        raise InternalCheckError(
            f"minimality checks disagree on {G.descriptor()}: "
            f"quotient method {method1}, structural method {method2}"
        )
    return method1


@dataclass(frozen=True)
class ClassifyResult:
    kind: str  # "H" | "A"
    n: int
    d: int


def classify_minimal(G: PGroup, limit: int = DEFAULT_LIMIT) -> ClassifyResult:
    """Classify a minimal nonabelian p-group as H(n, d) or A(n, d).

    The discriminator: the group is of H type exactly when every p-th power
    lands in the p-th powers of the center.
    """
    if not is_minimal_nonabelian(G, limit):
        raise ParameterError(f"{G.descriptor()} is not minimal nonabelian")
    t = tables(G, limit)
    p = G.p
    z = center_idx(t)
    d = _log_p(len(z), p)
    n2 = _log_p(t.n, p) - d
    if n2 % 2:
        raise InternalCheckError("order / center size inconsistent with 2n + d")
    zp = {t.power(g, p) for g in z}
    kind = "H" if all(t.power(g, p) in zp for g in range(t.n)) else "A"
    return ClassifyResult(kind=kind, n=n2 // 2, d=d)


def canonical_central_pairing(n1: PGroup, n2: PGroup, limit: int = DEFAULT_LIMIT):
    """The standard gluing datum (w1, w2^-1) with w_i generating the unique
    order-p subgroup of the (cyclic) center of each factor."""
    picks = []
    for G in (n1, n2):
        t = tables(G, limit)
        z = center_idx(t)
        if not _is_cyclic_idx(t, z):
            raise ParameterError(
                f"{G.descriptor()} has non-cyclic center; supply the gluing datum explicitly"
            )
        socle = sorted(
            g for g in z if g != t.e and element_order_idx(t, g) == G.p
        )
        picks.append(G.elements()[socle[0]])
    return picks[0], n2.inv(picks[1])


def central_product(
    n1: PGroup,
    n2: PGroup,
    pairing: tuple | None = None,
    limit: int = DEFAULT_LIMIT,
) -> PGroup:
    """(N1 x N2) / B with B generated by a central order-p pair (g1, g2).

    Both components must be nontrivial so that B meets neither factor and
    each embeds in the quotient.
    """
    if n1.p != n2.p:
        raise ParameterError(f"prime mismatch: {n1.p} vs {n2.p}")
    p = n1.p
    if pairing is None:
        pairing = canonical_central_pairing(n1, n2, limit)
    g1, g2 = pairing
    prod = DirectProductGroup(n1, n2)
    if prod.order > limit:
        raise MaterializationLimitError(
            f"direct product of order {prod.order} exceeds limit {limit}"
        )
    t1 = tables(n1, limit)
    t2 = tables(n2, limit)
    i1 = n1.index_map()
    i2 = n2.index_map()
    if i1[g1] not in center_idx(t1) or i2[g2] not in center_idx(t2):
        raise ParameterError("gluing datum must be central in each factor")
    if g1 == n1.identity() or g2 == n2.identity():
        raise ParameterError("gluing datum must meet both factors nontrivially")
    if element_order_idx(t1, i1[g1]) != p or element_order_idx(t2, i2[g2]) != p:
        raise ParameterError("gluing datum must have order p in each factor")
    b = []
    x = prod.identity()
    for _ in range(p):
        b.append(x)
        x = prod.mul(x, (g1, g2))
    return QuotientGroup(prod, b)


def build_A1d_via_Gd(p: int, d: int, limit: int = DEFAULT_LIMIT) -> PGroup:
    """Realize A(1, d) as a quotient of a subgroup of H(1,1) x C_(p^(d+1)).

    The subgroup is generated by (x1, w), (y1, 0), (z, 0); the quotient
    identifies w^(p^d) with z.  The order is checked along the way.
    """
    if d < 1:
        raise ParameterError(f"d >= 1 required, got {d}")
    h = HGroup(p, 1, 1)
    c = CyclicPGroup(p, d + 1)
    prod = DirectProductGroup(h, c)
    if prod.order > limit:
        raise MaterializationLimitError(
            f"ambient product of order {prod.order} exceeds limit {limit}"
        )
    gens = [
        (h.gen_x(0), c.gen()),
        (h.gen_y(0), c.identity()),
        (h.gen_z(), c.identity()),
    ]
    gd = SubgroupGroup(prod, gens, limit)
    if gd.order != p ** (d + 3):
        raise InternalCheckError(
            f"ambient subgroup has order {gd.order}, expected p^{d + 3}"
        )
    glue = (h.inv(h.gen_z()), (p ** d) % c.mod)
    b = []
    x = prod.identity()
    for _ in range(p):
        b.append(x)
        x = prod.mul(x, glue)
    q = QuotientGroup(gd, b)
    if q.order != p ** (2 + d):
        raise InternalCheckError(f"quotient has order {q.order}, expected p^{2 + d}")
    return q


def conjugacy_classes_idx(t: GroupTables) -> list[frozenset[int]]:
    seen = set()
    out = []
    for g in range(t.n):
        if g in seen:
            continue
        cls = frozenset(t.conj(g, h) for h in range(t.n))
        seen |= cls
        out.append(cls)
    return out


def _normal_subgroups_avoiding(t: GroupTables, forbidden: frozenset[int]) -> list[frozenset[int]]:
    """All normal subgroups N with forbidden ⊄ N, found by closing unions
    of conjugacy classes upward from the trivial subgroup."""
    classes = [c for c in conjugacy_classes_idx(t) if c != frozenset({t.e})]
    start = frozenset({t.e})
    seen = {start}
    queue = [start]
    out = [start]
    while queue:
        cur = queue.pop()
        for cls in classes:
            if cls <= cur:
                continue
            closed = frozenset(closure_idx(t, set(cur) | set(cls)))
            if closed in seen:
                continue
            seen.add(closed)
            if forbidden <= closed:
                continue  # quotient would be abelian; also prunes everything above
            queue.append(closed)
            out.append(closed)
    return out


def minimal_nonabelian_quotient(
    G: PGroup, limit: int = DEFAULT_LIMIT
) -> tuple[tuple, PGroup, ClassifyResult]:
    """A largest normal subgroup N with G/N minimal nonabelian.

    Candidates are scanned largest-first with ties broken by element
    indices, so the witness is deterministic.
    """
    if is_abelian(G, limit):
        raise ParameterError(f"{G.descriptor()} is abelian; no nonabelian quotient")
    t = tables(G, limit)
    der = frozenset(commutator_subgroup_idx(t))
    candidates = _normal_subgroups_avoiding(t, der)
    candidates.sort(key=lambda s: (-len(s), tuple(sorted(s))))
    elems = G.elements()
    for cand in candidates:
        N = tuple(elems[i] for i in sorted(cand))
        Q = QuotientGroup(G, N)
        try:
            minimal = is_minimal_nonabelian(Q, limit)
        except MaterializationLimitError:
            continue
        if minimal:
            return N, Q, classify_minimal(Q, limit)
    raise InternalCheckError(
        f"no minimal nonabelian quotient found for {G.descriptor()}"
    )


@dataclass(frozen=True)
class BurnsideResult:
    nontrivial_on_group: bool
    nontrivial_on_frattini_quotient: bool


def automorphism_from_generator_images(G: PGroup, images: dict, limit: int = DEFAULT_LIMIT) -> dict:
    """Extend generator images to a full map by following products.

    The given keys must generate G; inconsistencies surface either here or
    in the exhaustive homomorphism check done by the caller.
    """
    tables(G, limit)
    phi = {G.identity(): G.identity()}
    phi.update(images)
    frontier = list(phi)
    gens = list(images)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                img = G.mul(phi[x], phi[g])
                if y in phi:
                    if phi[y] != img:
                        raise ParameterError("generator images are inconsistent")
                else:
                    phi[y] = img
                    nxt.append(y)
        frontier = nxt
    if len(phi) != G.order:
        raise ParameterError("images do not cover the group: keys must generate")
    return phi


def burnside_action_check(
    P: PGroup, alpha: dict, m: int, limit: int = DEFAULT_LIMIT
) -> BurnsideResult:
    """Check triviality of a prime-to-p automorphism on P and on P/Phi(P).

    The two answers must agree (an automorphism of order prime to p acting
    trivially mod Frattini is trivial); disagreement is a fatal error.
    """
    if m < 1 or gcd(m, P.p) != 1:
        raise ParameterError(f"m = {m} must be positive and prime to p = {P.p}")
    t = tables(P, limit)
    elems = P.elements()
    idx = P.index_map()
    if set(alpha) != set(elems) or set(alpha.values()) != set(elems):
        raise ParameterError("alpha is not a bijection on the group")
    perm = [idx[alpha[g]] for g in elems]
    for a in range(t.n):
        pa = perm[a]
        for b in range(t.n):
            if perm[t.mul[a][b]] != t.mul[pa][perm[b]]:
                raise ParameterError("alpha is not a homomorphism")
    # order of the permutation must divide m
    order = 1
    seen = [False] * t.n
    for s in range(t.n):
        if seen[s]:
            continue
        length = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        order = order * length // gcd(order, length)
    if m % order:
        raise ParameterError(f"alpha has order {order}, which does not divide m = {m}")
    nontrivial_group = any(perm[g] != g for g in range(t.n))
    fr = frattini_idx(t)
    Q = QuotientGroup(P, tuple(elems[i] for i in fr))
    coset_of = Q._coset_of
    nontrivial_quotient = any(
        coset_of[alpha[g]] != coset_of[g] for g in elems
    )
    if nontrivial_group != nontrivial_quotient:
        raise InternalCheckError(
            "triviality on the group and on its Frattini quotient disagree "
            f"for an order-{order} automorphism of {P.descriptor()}"
        )
    return BurnsideResult(nontrivial_group, nontrivial_quotient)
