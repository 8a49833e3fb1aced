#!/usr/bin/env python3
"""The two families of minimal nonabelian p-groups and their surgery.

H(n, d) has all generators of order p except a central z of order p^d;
A(n, d) instead has x_1 of order p^(d+1) with x_1^p = z.  Every
nonabelian p-group (p > 2) has a quotient in one of the families, and
each family grows by central products with the Heisenberg group.
"""

from ramforge.pgroups import (
    CyclicPGroup,
    DirectProductGroup,
    build_A1d_via_Gd,
    central_product,
    check_abcd,
    classify_minimal,
    group_basics,
    is_isomorphic,
    is_minimal_nonabelian,
    make_group,
    minimal_nonabelian_quotient,
)

H11 = make_group("H", 3, 1, 1)
A11 = make_group("A", 3, 1, 1)

print("H(1,1):", group_basics(H11))
print("A(1,1) exponent:", group_basics(A11).exponent, "(metacyclic: has an order-9 element)")
print()
print("structural conditions for H(2,1):", check_abcd(make_group("H", 3, 2, 1)))
print("minimal nonabelian?", is_minimal_nonabelian(H11))
print("classification round trip:", classify_minimal(make_group("A", 3, 1, 2)))

print()
print("adding a central factor destroys minimality:")
G = DirectProductGroup(H11, CyclicPGroup(3, 1))
print("  H(1,1) x C_3 minimal?", is_minimal_nonabelian(G))
kernel, quotient, cls = minimal_nonabelian_quotient(G)
print("  largest good kernel has order", len(kernel), "with quotient", cls)

print()
print("central products climb the families:")
cp = central_product(H11, H11)
print("  (H(1,1) x H(1,1))/B ~ H(2,1):", is_isomorphic(cp, make_group("H", 3, 2, 1)))
cp2 = central_product(A11, H11)
print("  (A(1,1) x H(1,1))/B ~ A(2,1):", is_isomorphic(cp2, make_group("A", 3, 2, 1)))

print()
print("A(1, d) from a fiber product inside H(1,1) x C_(p^(d+1)):")
for d in (1, 2):
    q = build_A1d_via_Gd(3, d)
    print(f"  d={d}: order {q.order},",
          "isomorphic to A(1,%d): %s" % (d, is_isomorphic(q, make_group("A", 3, 1, d))))
