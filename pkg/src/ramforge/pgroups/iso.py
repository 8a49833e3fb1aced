"""Brute-force isomorphism testing for desk-scale p-groups.

Cheap invariants (order profile, center / commutator / Frattini sizes,
abelian type) reject most non-isomorphic pairs outright; otherwise a
backtracking search maps a Burnside-minimal generating sequence of one
group into the other, growing a partial isomorphism whose consistency is
checked by subgroup closure at every step.  Sound and complete for
materialized groups.
"""

from __future__ import annotations

from collections import Counter

from .analysis import (
    center_idx,
    closure_idx,
    commutator_subgroup_idx,
    element_order_idx,
    exponent_idx,
    frattini_idx,
    is_abelian,
)
from .base import DEFAULT_LIMIT, GroupTables, PGroup, tables


def _signatures(t: GroupTables) -> list[tuple[int, int]]:
    """(element order, centralizer size) per element; isomorphism-invariant."""
    sig = []
    for g in range(t.n):
        row = t.mul[g]
        cent = sum(1 for h in range(t.n) if row[h] == t.mul[h][g])
        sig.append((element_order_idx(t, g), cent))
    return sig


def _invariants(G: PGroup, limit: int):
    t = tables(G, limit)
    profile = Counter(element_order_idx(t, g) for g in range(t.n))
    return (
        t.n,
        tuple(sorted(profile.items())),
        len(center_idx(t)),
        len(commutator_subgroup_idx(t)),
        len(frattini_idx(t)),
        exponent_idx(t),
        is_abelian(G, limit),
    )


def _minimal_generating_sequence(t: GroupTables) -> list[int]:
    span = set(frattini_idx(t))
    gens: list[int] = []
    for g in range(t.n):
        if g not in span:
            gens.append(g)
            span = set(closure_idx(t, set(span) | {g}))
            if len(span) == t.n:
                break
    return gens


def _extend_partial(tg: GroupTables, th: GroupTables, phi: dict[int, int], g: int, h: int):
    """Extend a partial isomorphism by g -> h, closing under products.

    Returns the extended map on the generated subgroup, or None if any
    product is inconsistent or injectivity fails.
    """
    if g in phi:
        return phi if phi[g] == h else None
    phi2 = dict(phi)
    used = set(phi2.values())
    if h in used:
        return None
    phi2[g] = h
    used.add(h)
    frontier = [g]
    while frontier:
        x = frontier.pop()
        fx = phi2[x]
        for y in list(phi2):
            fy = phi2[y]
            for prod, img in (
                (tg.mul[x][y], th.mul[fx][fy]),
                (tg.mul[y][x], th.mul[fy][fx]),
            ):
                known = phi2.get(prod)
                if known is not None:
                    if known != img:
                        return None
                elif img in used:
                    return None
                else:
                    phi2[prod] = img
                    used.add(img)
                    frontier.append(prod)
    return phi2


def is_isomorphic(G: PGroup, H: PGroup, limit: int = DEFAULT_LIMIT) -> bool:
    if G.p != H.p:
        return False
    inv_g = _invariants(G, limit)
    inv_h = _invariants(H, limit)
    if inv_g != inv_h:
        return False
    if inv_g[-1]:
        # abelian p-groups with equal order profiles are isomorphic
        return True
    tg = tables(G, limit)
    th = tables(H, limit)
    sig_g = _signatures(tg)
    sig_h = _signatures(th)
    if sorted(sig_g) != sorted(sig_h):
        return False
    gens = _minimal_generating_sequence(tg)
    by_sig: dict[tuple[int, int], list[int]] = {}
    for h, s in enumerate(sig_h):
        by_sig.setdefault(s, []).append(h)

    def search(phi: dict[int, int], k: int) -> bool:
        if k == len(gens):
            return len(phi) == tg.n
        g = gens[k]
        for h in by_sig.get(sig_g[g], ()):
            phi2 = _extend_partial(tg, th, phi, g, h)
            if phi2 is not None and search(phi2, k + 1):
                return True
        return False

    return search({tg.e: th.e}, 0)
