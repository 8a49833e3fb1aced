#!/usr/bin/env python3
"""Exact Laurent series over F_p and the Artin-Schreier operator.

Everything is computed in K = F_3((pi)) at finite precision: a series
knows its coefficients below `prec` and nothing above, and arithmetic
tracks exactly what remains certain.
"""

from ramforge.laurent import monomial, parse_series, series_make, wp
from ramforge.astower import as_reduce_K

print("== building series ==")
s = series_make(3, -1, [1], 20)  # pi^-1
print("pi^-1          :", s)
t = parse_series("p=3 prec=20 : -1:1 0:2 3:1")
print("from text      :", t, "valuation", t.valuation())

print()
print("== arithmetic ==")
a = series_make(3, 0, [1, 1], 20)
b = series_make(3, 0, [1, 2], 20)
print("(1+pi)(1-pi)   :", a * b)
print("(1-pi)^-1      :", b.inverse())
print("cancellation   :", s + (-s), "(zero up to precision, never exact zero)")

print()
print("== the additive operator x -> x^p - x ==")
print("wp(pi^-1)      :", wp(s))
print("wp(2)          :", wp(monomial(3, 2, 0, 20)), "(constants die: c^p = c)")
print("additive       :", wp(a + b) == wp(a) + wp(b))

print()
print("== reduction mod wp(K) certifies ramification breaks ==")
# v = -3 is divisible by p, so pi^-3 alone cannot be read as a break;
# subtracting wp(pi^-1) exposes the true invariant.
delta = monomial(3, 1, -3, 20)
res = as_reduce_K(delta)
print("datum          :", delta)
print("reduced        :", res.reduced)
print("witness        :", res.witness)
print("outcome        :", res.outcome)
print("identity check :", (delta - wp(res.witness) - res.reduced).is_zero())
