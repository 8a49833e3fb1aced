"""Exact truncated Laurent series arithmetic over a prime field.

Elements of K = F_p((pi)), p an odd prime, are stored as a window of known
coefficients: everything at exponents >= ``prec`` is unknown, and a series
whose known window is entirely zero is a "zero up to precision", never an
exact zero.  Arithmetic propagates precision by the usual rules (min for
addition, min over cross terms for multiplication), so results are always
sound: a coefficient is stored only if it is exactly determined.

All values are immutable and operations are pure functions, so series can
be shared freely between threads.

Textual form (used by the CLI and by certificates):

    p=3 prec=20 : -1:1 0:2 3:1

meaning pi^-1 + 2 + pi^3, exponent:coefficient pairs in ascending order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InsufficientPrecisionError, ParameterError, ParseError

INF = float("inf")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_odd_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ParameterError(f"p must be prime, got {p!r}")
    if p == 2:
        raise ParameterError("p > 2 required")


@dataclass(frozen=True)
class Fp:
    """A residue in the prime field F_p, p an odd prime."""

    p: int
    value: int

    def __post_init__(self):
        require_odd_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ParameterError(f"modulus mismatch: {self.p} vs {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Fp(self.p, self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Fp(self.p, self.value - v)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Fp(self.p, self.value * v)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(self.p, -self.value)

    def __pow__(self, k: int):
        return Fp(self.p, pow(self.value, k, self.p))

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return Fp(self.p, pow(self.value, -1, self.p))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value))

    def __str__(self):
        return str(self.value)


def _coeff_int(c, p: int) -> int:
    if isinstance(c, Fp):
        if c.p != p:
            raise ParameterError(f"modulus mismatch: {p} vs {c.p}")
        return c.value
    return int(c) % p


class LaurentSeries:
    """A Laurent series over F_p known on the exponent window [val, prec).

    The constructor accepts (exponent, coefficient) pairs, reduces
    coefficients mod p, and drops anything at or above ``prec``; use
    :func:`series_make` for the strict checked entry point.
    """

    __slots__ = ("p", "val", "coeffs", "prec")

    def __init__(self, p: int, pairs: Iterable[tuple[int, int]], prec: int):
        require_odd_prime(p)
        prec = int(prec)
        data: dict[int, int] = {}
        for e, c in pairs:
            e = int(e)
            if e >= prec:
                continue
            c = (data.get(e, 0) + _coeff_int(c, p)) % p
            if c:
                data[e] = c
            else:
                data.pop(e, None)
        self.p = p
        self.prec = prec
        if data:
            lo = min(data)
            hi = max(data)
            self.val = lo
            self.coeffs = tuple(data.get(e, 0) for e in range(lo, hi + 1))
        else:
            self.val = None
            self.coeffs = ()

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        """True if the series is zero as far as its precision can tell."""
        return not self.coeffs

    def valuation(self):
        """Exact valuation, or INF for a zero-up-to-precision series."""
        return INF if self.val is None else self.val

    def leading_coefficient(self) -> int:
        if self.is_zero():
            raise ValueError("zero to precision has no leading coefficient")
        return self.coeffs[0]

    def coefficient(self, e: int) -> int:
        """The coefficient of pi^e; exponents at or above prec are unknown."""
        if e >= self.prec:
            raise InsufficientPrecisionError(
                f"coefficient at exponent {e} is beyond precision {self.prec}"
            )
        if self.val is None or not (self.val <= e < self.val + len(self.coeffs)):
            return 0
        return self.coeffs[e - self.val]

    def pairs(self) -> tuple[tuple[int, int], ...]:
        if self.val is None:
            return ()
        return tuple(
            (self.val + i, c) for i, c in enumerate(self.coeffs) if c
        )

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other: "LaurentSeries") -> None:
        if not isinstance(other, LaurentSeries):
            raise TypeError(f"expected LaurentSeries, got {type(other).__name__}")
        if other.p != self.p:
            raise ParameterError(f"modulus mismatch: {self.p} vs {other.p}")

    def __add__(self, other):
        if isinstance(other, int) or isinstance(other, Fp):
            other = LaurentSeries(self.p, [(0, _coeff_int(other, self.p))], self.prec)
        self._check_compatible(other)
        prec = min(self.prec, other.prec)
        return LaurentSeries(self.p, list(self.pairs()) + list(other.pairs()), prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.p, [(e, self.p - c) for e, c in self.pairs()], self.prec)

    def __sub__(self, other):
        if isinstance(other, int) or isinstance(other, Fp):
            other = LaurentSeries(self.p, [(0, _coeff_int(other, self.p))], self.prec)
        self._check_compatible(other)
        return self + (-other)

    def _val_floor(self) -> int:
        # Lower bound for the valuation: exact for nonzero, prec for zero.
        return self.prec if self.val is None else self.val

    def __mul__(self, other):
        if isinstance(other, (int, Fp)):
            c = _coeff_int(other, self.p)
            return LaurentSeries(self.p, [(e, cc * c) for e, cc in self.pairs()], self.prec)
        self._check_compatible(other)
        prec = min(self._val_floor() + other.prec, other._val_floor() + self.prec)
        acc: dict[int, int] = {}
        for e1, c1 in self.pairs():
            for e2, c2 in other.pairs():
                e = e1 + e2
                if e < prec:
                    acc[e] = (acc.get(e, 0) + c1 * c2) % self.p
        return LaurentSeries(self.p, acc.items(), prec)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = LaurentSeries(self.p, [(0, 1)], self.prec - self._val_floor())
        base = self
        for _ in range(k):
            out = out * base
        return out

    def inverse(self) -> "LaurentSeries":
        """Multiplicative inverse, to the same relative precision."""
        if self.is_zero():
            raise ParameterError("cannot invert a series that is zero to precision")
        n = self.prec - self.val
        lead_inv = pow(self.coeffs[0], -1, self.p)
        # Long division against the unit part u with u[0] = leading coeff.
        u = [self.coefficient(self.val + i) for i in range(n)]
        inv = [0] * n
        inv[0] = lead_inv
        for k in range(1, n):
            s = sum(u[j] * inv[k - j] for j in range(1, k + 1)) % self.p
            inv[k] = (-lead_inv * s) % self.p
        prec = self.prec - 2 * self.val
        return LaurentSeries(self.p, [(-self.val + i, c) for i, c in enumerate(inv)], prec)

    def frobenius(self) -> "LaurentSeries":
        """The p-power map: exponents multiply by p, coefficients are fixed."""
        return LaurentSeries(
            self.p, [(self.p * e, c) for e, c in self.pairs()], self.p * self.prec
        )

    def wp(self) -> "LaurentSeries":
        """Artin-Schreier image x^p - x (additive in characteristic p)."""
        return self.frobenius() - self

    def shift(self, k: int) -> "LaurentSeries":
        """Exact multiplication by pi^k."""
        return LaurentSeries(self.p, [(e + k, c) for e, c in self.pairs()], self.prec + k)

    def with_precision(self, prec: int) -> "LaurentSeries":
        if prec > self.prec:
            raise InsufficientPrecisionError(
                f"cannot raise precision from {self.prec} to {prec}"
            )
        return LaurentSeries(self.p, self.pairs(), prec)

    # -- comparison / io ----------------------------------------------------

    def __eq__(self, other):
        """Equality of the known coefficients on the common window."""
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.p != other.p:
            return False
        w = min(self.prec, other.prec)
        a = {e: c for e, c in self.pairs() if e < w}
        b = {e: c for e, c in other.pairs() if e < w}
        return a == b

    __hash__ = None

    def to_text(self) -> str:
        body = " ".join(f"{e}:{c}" for e, c in self.pairs())
        head = f"p={self.p} prec={self.prec} :"
        return f"{head} {body}" if body else head

    def __repr__(self):
        return f"LaurentSeries({self.to_text()!r})"

    def __str__(self):
        return self.to_text()


def series_make(p: int, val: int, coeffs: Sequence, prec: int) -> LaurentSeries:
    """Build a series from coefficients anchored at exponent ``val``.

    The first coefficient must be nonzero (or the sequence empty, which
    yields the zero-up-to-precision element).
    """
    require_odd_prime(p)
    if prec <= val and coeffs:
        raise ParameterError(f"prec must exceed val, got val={val} prec={prec}")
    reduced = [_coeff_int(c, p) for c in coeffs]
    if reduced and reduced[0] == 0:
        raise ParameterError("leading coefficient reduces to 0 mod p")
    s = LaurentSeries(p, [(val + i, c) for i, c in enumerate(reduced)], prec)
    return s


def monomial(p: int, coeff, exp: int, prec: int) -> LaurentSeries:
    return series_make(p, exp, [coeff], prec)


def zero(p: int, prec: int) -> LaurentSeries:
    return LaurentSeries(p, [], prec)


def one(p: int, prec: int) -> LaurentSeries:
    return monomial(p, 1, 0, prec)


def wp(a: LaurentSeries) -> LaurentSeries:
    """Artin-Schreier operator on K: a -> a^p - a."""
    return a.wp()


def parse_series(text: str) -> LaurentSeries:
    """Parse the textual series form, e.g. ``p=3 prec=20 : -1:1 0:2``."""
    head, sep, body = text.partition(" : ")
    if not sep:
        head, sep, body = text.partition(" :")
        if not sep or body.strip():
            raise ParseError(f"malformed series text: {text!r}")
        body = ""
    fields = head.split()
    if len(fields) != 2 or not fields[0].startswith("p=") or not fields[1].startswith("prec="):
        raise ParseError(f"malformed series header: {head!r}")
    try:
        p = int(fields[0][2:])
        prec = int(fields[1][5:])
        pairs = []
        for tok in body.split():
            e, _, c = tok.partition(":")
            pairs.append((int(e), int(c)))
    except ValueError as exc:
        raise ParseError(f"malformed series text: {text!r}") from exc
    require_odd_prime(p)
    return LaurentSeries(p, pairs, prec)
