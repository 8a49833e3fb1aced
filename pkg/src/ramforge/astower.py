"""Arithmetic in a single Artin-Schreier extension F = K(y), y^p - y = beta.

The datum beta must satisfy v_K(beta) = -b < 0 with p not dividing b, which
makes F/K totally ramified of degree p with ramification break b.  Elements
of F are stored as polynomials c_0 + c_1 y + ... + c_{p-1} y^{p-1} with
Laurent series components; since gcd(b, p) = 1 the valuations
p*v_K(c_i) - i*b of the monomials are pairwise distinct mod p, so the
valuation of a nonzero element is always attained by a unique component.

The reduction functions replace a datum by a representative of the same
class modulo the Artin-Schreier operator with maximal valuation, which
certifies the ramification break of the degree-p extension it generates.
Each returns the accumulated witness w with reduced = delta - wp(w), so the
claim can be re-checked by direct arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import (
    InsufficientPrecisionError,
    InternalCheckError,
    ParameterError,
    ParseError,
)
from .laurent import INF, LaurentSeries, parse_series, require_odd_prime, zero


@dataclass(frozen=True)
class BreakOutcome:
    """Result kind of a reduction: a wild break, or a nonnegative residual.

    A nonnegative residual means the class contains an element of
    valuation >= 0 (extension unramified or split; not distinguished).
    """

    kind: str  # "wild" | "nonnegative"
    break_value: int | None = None

    def __post_init__(self):
        if self.kind == "wild":
            if self.break_value is None or self.break_value <= 0:
                raise ParameterError("wild outcome requires a positive break")
        elif self.kind != "nonnegative":
            raise ParameterError(f"unknown outcome kind {self.kind!r}")

    @property
    def is_wild(self) -> bool:
        return self.kind == "wild"


class ASExtension:
    """Handle for F = K(y) with y^p = y + beta, v_K(beta) = -b, p ∤ b."""

    __slots__ = ("p", "beta", "b", "_beta_powers")

    def __init__(self, p: int, beta: LaurentSeries):
        require_odd_prime(p)
        if beta.p != p:
            raise ParameterError(f"modulus mismatch: {p} vs {beta.p}")
        v = beta.valuation()
        if v is INF or v >= 0:
            raise ParameterError(
                "v(beta) must be negative; reduce the datum with as_reduce_K first"
            )
        if v % p == 0:
            raise ParameterError(
                f"v(beta) = {v} is divisible by p = {p}; "
                "reduce the datum with as_reduce_K first"
            )
        self.p = p
        self.beta = beta
        self.b = -v
        self._beta_powers = None

    def beta_power(self, k: int) -> LaurentSeries:
        """beta^k for 0 <= k <= p-1, cached."""
        if self._beta_powers is None:
            window = self.beta.prec - self.beta.val
            powers = [LaurentSeries(self.p, [(0, 1)], window)]
            for _ in range(self.p - 1):
                powers.append(powers[-1] * self.beta)
            self._beta_powers = tuple(powers)
        return self._beta_powers[k]

    def element(self, comps: dict[int, LaurentSeries]) -> "ASElement":
        """Build an element from a sparse degree -> component mapping."""
        for i in comps:
            if not 0 <= i < self.p:
                raise ParameterError(f"y-degree must lie in [0, {self.p}), got {i}")
        precs = [c.prec for c in comps.values()]
        fill = max(precs) if precs else self.beta.prec
        full = []
        for i in range(self.p):
            c = comps.get(i)
            if c is None:
                c = zero(self.p, fill)
            full.append(c)
        return ASElement(self, tuple(full))

    def from_base(self, s: LaurentSeries) -> "ASElement":
        return self.element({0: s})

    def y(self, prec: int | None = None) -> "ASElement":
        pr = self.beta.prec if prec is None else prec
        return self.element({1: LaurentSeries(self.p, [(0, 1)], pr)})

    def monomial_element(self, coeff: int, exp: int, degree: int, prec: int) -> "ASElement":
        if not 0 <= degree < self.p:
            raise ParameterError(f"y-degree must lie in [0, {self.p}), got {degree}")
        return self.element({degree: LaurentSeries(self.p, [(exp, coeff)], prec)})

    def zero_element(self, prec: int) -> "ASElement":
        return ASElement(self, tuple(zero(self.p, prec) for _ in range(self.p)))

    def __repr__(self):
        return f"ASExtension(p={self.p}, b={self.b})"


class ASElement:
    """An element sum(c_i * y^i, i < p) of F = K(y)."""

    __slots__ = ("ext", "comps")

    def __init__(self, ext: ASExtension, comps: tuple[LaurentSeries, ...]):
        if len(comps) != ext.p:
            raise ParameterError(f"need {ext.p} components, got {len(comps)}")
        for c in comps:
            if c.p != ext.p:
                raise ParameterError("component modulus mismatch")
        self.ext = ext
        self.comps = comps

    def _check_same_ext(self, other: "ASElement") -> None:
        if not isinstance(other, ASElement):
            raise TypeError(f"expected ASElement, got {type(other).__name__}")
        if other.ext.p != self.ext.p or other.ext.beta != self.ext.beta:
            raise ParameterError("elements live in different extensions")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        self._check_same_ext(other)
        return ASElement(
            self.ext, tuple(a + b for a, b in zip(self.comps, other.comps))
        )

    def __sub__(self, other):
        self._check_same_ext(other)
        return ASElement(
            self.ext, tuple(a - b for a, b in zip(self.comps, other.comps))
        )

    def __neg__(self):
        return ASElement(self.ext, tuple(-a for a in self.comps))

    def __mul__(self, other):
        if isinstance(other, int):
            return ASElement(self.ext, tuple(c * other for c in self.comps))
        self._check_same_ext(other)
        p = self.ext.p
        beta = self.ext.beta
        conv: list[LaurentSeries | None] = [None] * (2 * p - 1)
        for i, a in enumerate(self.comps):
            if a.is_zero():
                continue
            for j, b in enumerate(other.comps):
                if b.is_zero():
                    continue
                prod = a * b
                k = i + j
                conv[k] = prod if conv[k] is None else conv[k] + prod
        # fold y^k = y^(k-p) * (y + beta) for k >= p
        for k in range(2 * p - 2, p - 1, -1):
            c = conv[k]
            if c is None:
                continue
            conv[k] = None
            lo = k - p
            conv[lo + 1] = c if conv[lo + 1] is None else conv[lo + 1] + c
            cb = c * beta
            conv[lo] = cb if conv[lo] is None else conv[lo] + cb
        present = [c.prec for c in conv[:p] if c is not None]
        fill = max(present) if present else beta.prec
        comps = tuple(zero(p, fill) if c is None else c for c in conv[:p])
        return ASElement(self.ext, comps)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ParameterError("negative powers are not supported in F")
        out = self.ext.element({0: LaurentSeries(self.ext.p, [(0, 1)], self._max_prec())})
        for _ in range(k):
            out = out * self
        return out

    def _max_prec(self) -> int:
        return max(c.prec for c in self.comps)

    def pth_power(self) -> "ASElement":
        """Frobenius power via (sum c_i y^i)^p = sum c_i^p (y + beta)^i."""
        p = self.ext.p
        acc: dict[int, LaurentSeries] = {}
        for i, c in enumerate(self.comps):
            if c.is_zero():
                continue
            cf = c.frobenius()
            for k in range(i + 1):
                term = cf * self.ext.beta_power(i - k) * comb(i, k)
                acc[k] = acc[k] + term if k in acc else term
        return self.ext.element(acc)

    def wp(self) -> "ASElement":
        """Artin-Schreier operator on F: u -> u^p - u."""
        return self.pth_power() - self

    # -- valuation ----------------------------------------------------------

    def _valuation_parts(self) -> tuple[int | None, int]:
        """(exact min over nonzero components, floor from precision windows)."""
        b = self.ext.b
        p = self.ext.p
        exact = None
        floor = None
        for i, c in enumerate(self.comps):
            u = p * c.prec - i * b
            floor = u if floor is None else min(floor, u)
            if not c.is_zero():
                v = p * c.val - i * b
                exact = v if exact is None else min(exact, v)
        return exact, floor

    def valuation(self):
        """Certified valuation in Z, or INF for zero-up-to-precision."""
        exact, floor = self._valuation_parts()
        if exact is None:
            return INF
        if exact > floor:
            raise InsufficientPrecisionError(
                f"valuation {exact} not certified: components unknown below {floor}"
            )
        return exact

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def leading_term(self) -> tuple[int, int, int]:
        """(y-degree, pi-exponent, coefficient) of the valuation-minimal term."""
        b = self.ext.b
        p = self.ext.p
        best = None
        for i, c in enumerate(self.comps):
            if c.is_zero():
                continue
            v = p * c.val - i * b
            if best is None or v < best[0]:
                best = (v, i, c.val, c.leading_coefficient())
        if best is None:
            raise ValueError("zero to precision has no leading term")
        return best[1], best[2], best[3]

    # -- comparison / io ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ASElement):
            return NotImplemented
        return (
            self.ext.p == other.ext.p
            and self.ext.beta == other.ext.beta
            and all(a == b for a, b in zip(self.comps, other.comps))
        )

    __hash__ = None

    def to_text(self) -> str:
        return " | ".join(f"y^{i}: {c.to_text()}" for i, c in enumerate(self.comps))

    def __repr__(self):
        return f"ASElement({self.to_text()!r})"


def parse_element(ext: ASExtension, text: str) -> ASElement:
    parts = text.split(" | ")
    comps = {}
    try:
        for part in parts:
            head, _, body = part.partition(": ")
            if not head.startswith("y^"):
                raise ParseError(f"malformed element text: {text!r}")
            comps[int(head[2:])] = parse_series(body)
    except ValueError as exc:
        raise ParseError(f"malformed element text: {text!r}") from exc
    return ext.element(comps)


@dataclass(frozen=True)
class KReduction:
    reduced: LaurentSeries
    outcome: BreakOutcome
    witness: LaurentSeries


@dataclass(frozen=True)
class FReduction:
    reduced: ASElement
    outcome: BreakOutcome
    witness: ASElement


def as_reduce_K(delta: LaurentSeries) -> KReduction:
    """Reduce delta mod wp(K) and certify the break it defines over K.

    While the residual has negative valuation divisible by p, the leading
    term c*pi^v is killed by subtracting wp(c*pi^(v/p)); in F_p the p-th
    root of c is c itself.  The final valuation is either >= 0 (nonnegative
    residual) or negative and prime to p, in which case its negative is the
    ramification break.
    """
    p = delta.p
    witness = zero(p, delta.prec)
    reduced = delta
    guard = 0
    while True:
        if reduced.is_zero():
            if reduced.prec >= 0:
                outcome = BreakOutcome("nonnegative")
                break
            raise InsufficientPrecisionError(
                f"residual is zero to precision {reduced.prec} < 0"
            )
        v = reduced.val
        if v >= 0:
            outcome = BreakOutcome("nonnegative")
            break
        if v % p != 0:
            outcome = BreakOutcome("wild", -v)
            break
        c = reduced.leading_coefficient()
        step = LaurentSeries(p, [(v // p, c)], max(reduced.prec, v // p + 1))
        reduced = reduced - step.wp()
        witness = witness + step
        guard += 1
        if guard > abs(v) + 8:
            raise InternalCheckError("K-reduction failed to make progress")
    return KReduction(reduced, outcome, witness)


def as_reduce_F(delta: ASElement) -> FReduction:
    """Reduce delta mod wp(F) and certify the break it defines over F.

    A residual with v_F divisible by p necessarily has its leading term in
    the degree-0 component, say c*pi^j with v_F = p*j.  The unique witness
    monomial w = c'*pi^j'*y^i' with wp(w) matching that term has
    i' = -j/b mod p, j' = (j + i'*b)/p, and c' = c / lead(beta)^i'; each
    subtraction strictly increases v_F.
    """
    ext = delta.ext
    p, b = ext.p, ext.b
    beta_lead = ext.beta.leading_coefficient()
    b_inv = pow(b % p, -1, p)
    witness = ext.zero_element(delta._max_prec())
    reduced = delta
    guard = 0
    start = None
    while True:
        exact, floor = reduced._valuation_parts()
        if exact is None:
            if floor >= 0:
                outcome = BreakOutcome("nonnegative")
                break
            raise InsufficientPrecisionError(
                f"residual is zero to precision floor {floor} < 0"
            )
        if exact >= 0:
            if floor >= 0:
                outcome = BreakOutcome("nonnegative")
                break
            raise InsufficientPrecisionError(
                f"residual valuation {exact} >= 0 but components unknown below {floor}"
            )
        if exact > floor:
            raise InsufficientPrecisionError(
                f"leading term at {exact} not certified: unknown below {floor}"
            )
        if exact % p != 0:
            outcome = BreakOutcome("wild", -exact)
            break
        if start is None:
            start = exact
        i0, j, c = reduced.leading_term()
        if i0 != 0:
            raise InternalCheckError(
                f"p-divisible valuation attained at y-degree {i0} != 0"
            )
        i_new = (-j * b_inv) % p
        if (j + i_new * b) % p:
            raise InternalCheckError("witness exponent is not divisible by p")
        j_new = (j + i_new * b) // p
        c_new = (c * pow(beta_lead, -i_new, p)) % p
        prec = max(j_new + 1, reduced._max_prec())
        step = ext.monomial_element(c_new, j_new, i_new, prec)
        reduced = reduced - step.wp()
        witness = witness + step
        guard += 1
        if guard > abs(start) + 8:
            raise InternalCheckError("F-reduction failed to make progress")
    return FReduction(reduced, outcome, witness)
