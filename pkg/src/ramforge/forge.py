"""Machine-checked certificates for extensions with nonintegral upper breaks.

A certificate is a line-oriented text: a parameter block, numbered steps
(each naming a rule with its inputs and outputs), a block of named
assumptions (statements taken on faith, never computed), and the
predicted / field-verified upper break multisets with the nonintegral
witness.  A verifier rebuilds the whole derivation from the parameter
block, re-executing every non-assumption step, and demands bit-exact
agreement with the text; the first diverging line is reported.

The central construction is the degree-p^3 tower over K = F_p((pi)):
from a break b prime to p and an integer a > b with a != 0, -b mod p it
produces a group-of-order-p^3 extension whose upper breaks are
{b, a, a + b/p}, with the interior break of the top step certified by an
actual Artin-Schreier reduction in F = K(y) rather than by formula.
Larger targets are reached by composing towers and peeling breaks; the
group-theoretic legs of those arguments are either machine-checked on
materialized groups or recorded as named assumptions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .astower import ASExtension, as_reduce_F, as_reduce_K
from .errors import (
    InternalCheckError,
    ParameterError,
    ParseError,
    VerificationMismatchError,
)
from .laurent import LaurentSeries, monomial, parse_series, require_odd_prime
from .pgroups import (
    CyclicPGroup,
    DirectProductGroup,
    PGroup,
    build_A1d_via_Gd,
    burnside_action_check,
    central_product,
    is_abelian,
    is_isomorphic,
    make_group,
    minimal_nonabelian_quotient,
    parse_group_descriptor,
)
from .ramcalc import (
    BreakMultiset,
    compose_disjoint,
    fact1_resolve,
    lower_to_upper,
    upper_to_lower,
)

DEFAULT_PRECISION = 400

# Group sanity checks inside certificates run only up to this order; above
# it they are recorded as assumptions so certificates stay deterministic
# regardless of the configured materialization limit.
CERT_GROUP_LIMIT = 729

HEADER = "RAMFORGE CERTIFICATE v1"

KINDS = ("p3-tower", "nonint-H", "nonint-A", "nonint-A1d", "pchat", "chat")

RULES = frozenset(
    {
        "cp-break-base",
        "cp-break-aux",
        "wild-reduce-ext",
        "central-cp2-cases",
        "compose-convert",
        "merge-lowers",
        "lower-to-upper",
        "base-realizable",
        "pick-parameters",
        "shared-subfield-break",
        "pick-a-above",
        "union-disjoint",
        "union-shared",
        "peel-top-breaks",
        "distinct-side-group",
        "quotient-group-form",
        "conclude-witness",
        "coprime-check",
        "action-check",
        "wild-part-nonabelian",
        "minimal-quotient",
        "burnside-agreement",
        "conclude-universal",
        "persist-witness",
    }
)

ASSUMPTION_STATEMENTS = {
    "heisenberg-closure": (
        "adjoining a root of X^p - X - (alpha*y + r*alpha*beta) to the field "
        "generated by roots of X^p - X - alpha and X^p - X - beta yields a "
        "Galois extension of the base whose group is the nonabelian group of "
        "order p^3 and exponent p"
    ),
    "disjoint-compositum": (
        "a compositum of totally ramified Galois p-extensions whose upper "
        "break sets are disjoint is totally ramified with Galois group the "
        "direct product and upper break multiset the union"
    ),
    "central-cp2": (
        "the degree-p^2 step used for the two-break case split is Galois "
        "with group C_p x C_p central in the full group"
    ),
    "top-multiplicity-one": (
        "the larger of the two breaks entering the case split occurs with "
        "multiplicity one in the full upper multiset"
    ),
    "commutator-smallest": (
        "the commutator subgroup of the order-p^3 group is its smallest "
        "nontrivial ramification subgroup, so every lower break of the "
        "degree-p^2 quotient persists as a lower break of the full extension"
    ),
    "base-extension-exists": (
        "a totally ramified extension with the stated base group and the "
        "claimed upper breaks exists; embedding problems for p-groups over "
        "the base field admit totally ramified solutions"
    ),
    "smallest-ramification-peel": (
        "for each factor the unique order-p subgroup of the center of its "
        "Galois group is the smallest nontrivial ramification subgroup, so "
        "dropping the top upper break gives the breaks of its fixed field"
    ),
    "shared-base-field": (
        "the auxiliary order-p^3 extension can be chosen so that its unique "
        "degree-p subfield over the base coincides with the degree-p "
        "subfield of the cyclic factor, both having break b"
    ),
    "group-distinctness-assumed": (
        "the compositum side field is not the target-group field because "
        "their Galois groups are not isomorphic (not machine-checked at "
        "this order)"
    ),
    "central-product-assumed": (
        "the claimed central-product decomposition of the target group "
        "(not machine-checked at this order)"
    ),
    "embedding-lift": (
        "the extension realizing the minimal nonabelian quotient embeds in "
        "a totally ramified extension with the full wild group, and upper "
        "breaks of the quotient persist in the larger extension"
    ),
    "tame-base-change": (
        "adjoining a primitive m-th root of unity and composing with a "
        "totally ramified degree-m tame extension preserves the wild upper "
        "breaks, hence also the nonintegral witness"
    ),
    "abelian-wild-part-nonintegral": (
        "a totally ramified extension whose Galois group is a nonabelian "
        "semidirect product of an abelian normal p-group by a prime-to-p "
        "cyclic group has a nonintegral upper ramification break"
    ),
}


@dataclass(frozen=True)
class Step:
    index: int
    rule: str
    inputs: tuple[tuple[str, str], ...] = ()
    outputs: tuple[tuple[str, str], ...] = ()

    def render(self) -> str:
        parts = [f"step {self.index}: RULE {self.rule}"]
        parts += [f"in {k} = {v}" for k, v in self.inputs]
        parts += [f"out {k} = {v}" for k, v in self.outputs]
        return " | ".join(parts)


@dataclass
class Certificate:
    kind: str
    params: tuple[tuple[str, str], ...]
    steps: tuple[Step, ...]
    assumptions: tuple[str, ...]
    predicted: BreakMultiset | None
    verified: BreakMultiset | None
    witness: Fraction | None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown certificate kind {self.kind!r}")
        if self.witness is not None:
            if self.witness.denominator <= 1:
                raise InternalCheckError(
                    f"witness {self.witness} is an integer; certificate is vacuous"
                )
            if self.predicted is None or self.witness not in self.predicted.breaks:
                raise InternalCheckError("witness must be a predicted break")

    def render(self) -> str:
        lines = [HEADER, f"kind: {self.kind}"]
        lines += [f"param {k} = {v}" for k, v in self.params]
        lines += [s.render() for s in self.steps]
        lines.append("ASSUMPTIONS:")
        lines += [
            f"assume {name}: {ASSUMPTION_STATEMENTS[name]}" for name in self.assumptions
        ]
        lines.append(f"PREDICTED: {self.predicted.to_text() if self.predicted else 'none'}")
        lines.append(f"VERIFIED: {self.verified.to_text() if self.verified else 'none'}")
        lines.append(f"WITNESS: {self.witness if self.witness is not None else 'none'}")
        return "\n".join(lines) + "\n"


class _Assumptions:
    """Collects assumption names in first-use order."""

    def __init__(self):
        self.names: list[str] = []

    def use(self, name: str) -> None:
        if name not in ASSUMPTION_STATEMENTS:
            raise InternalCheckError(f"unregistered assumption {name!r}")
        if name not in self.names:
            self.names.append(name)

    def tuple(self) -> tuple[str, ...]:
        return tuple(self.names)


@dataclass(frozen=True)
class P3Parameters:
    """Validated data for the order-p^3 tower over F_p((pi)).

    b is the base break, a the auxiliary break; t and s split a = b*t + p*s
    with 1 <= t <= p-2 (s may be negative), and r = (t+1)^-1 in F_p.
    """

    p: int
    b: int
    a: int
    t: int
    s: int
    r: int

    @classmethod
    def derive(cls, p: int, b: int, a: int) -> "P3Parameters":
        require_odd_prime(p)
        if b < 1:
            raise ParameterError(f"b must be positive, got {b}")
        if b % p == 0:
            raise ParameterError(f"p | b: b = {b} is divisible by p = {p}")
        if a <= b:
            raise ParameterError(f"a must exceed b, got a = {a} <= b = {b}")
        if a % p == 0:
            raise ParameterError(f"a ≡ 0 (mod p): a = {a}, p = {p}")
        if (a + b) % p == 0:
            raise ParameterError(f"a ≡ -b (mod p): a = {a}, b = {b}, p = {p}")
        t = (a * pow(b, -1, p)) % p
        s = (a - b * t) // p
        if not 1 <= t <= p - 2:
            raise InternalCheckError(f"t = {t} escaped [1, p-2]")
        r = pow(t + 1, -1, p)
        return cls(p=p, b=b, a=a, t=t, s=s, r=r)


def pick_parameters(p: int, v) -> tuple[int, int]:
    """Lexicographically minimal (b, a) with a > b > v, p ∤ b, a != 0, -b mod p."""
    require_odd_prime(p)
    v = Fraction(v)
    if v < 0:
        raise ParameterError(f"lower bound must be >= 0, got {v}")
    b = int(v) + 1
    while b <= v or b % p == 0:
        b += 1
    a = b + 1
    while a % p == 0 or (a + b) % p == 0:
        a += 1
    return b, a


def _pick_a_above(p: int, b: int, v) -> int:
    """Minimal integer a > v with a != 0, -b (mod p)."""
    v = Fraction(v)
    a = int(v) + 1
    while a <= v or a % p == 0 or (a + b) % p == 0:
        a += 1
    return a


def _upper(p: int, breaks) -> BreakMultiset:
    return BreakMultiset("upper", 1, p, tuple(sorted(Fraction(x) for x in breaks)))


def _p3_steps(
    params: P3Parameters,
    precision: int,
    beta_unit: LaurentSeries | None,
    start: int,
    assumptions: _Assumptions,
) -> tuple[list[Step], BreakMultiset, BreakMultiset, Fraction]:
    """The seven tower steps; returns (steps, predicted, verified, witness)."""
    p, b, a, t, s, r = (
        params.p,
        params.b,
        params.a,
        params.t,
        params.s,
        params.r,
    )
    window = max(precision, 4 * p * a)
    beta = monomial(p, 1, -b, -b + window)
    if beta_unit is not None:
        if beta_unit.p != p:
            raise ParameterError("beta unit has wrong modulus")
        if beta_unit.valuation() != 0:
            raise ParameterError("beta unit must have valuation 0")
        beta = beta * beta_unit
    steps: list[Step] = []

    red1 = as_reduce_K(beta)
    if not (red1.outcome.is_wild and red1.outcome.break_value == b):
        raise InternalCheckError(
            f"base datum reduced to {red1.outcome}, expected wild break {b}"
        )
    steps.append(
        Step(start, "cp-break-base", (("beta", beta.to_text()),), (("break", str(b)),))
    )

    alpha = monomial(p, 1, -p * s, -p * s + window) * beta**t
    red2 = as_reduce_K(alpha)
    if not (red2.outcome.is_wild and red2.outcome.break_value == a):
        raise InternalCheckError(
            f"auxiliary datum reduced to {red2.outcome}, expected wild break {a}"
        )
    assumptions.use("disjoint-compositum")
    u_m = compose_disjoint(_upper(p, [b]), _upper(p, [a]))
    steps.append(
        Step(
            start + 1,
            "cp-break-aux",
            (("alpha", alpha.to_text()),),
            (("break", str(a)), ("upper", u_m.to_text())),
        )
    )

    assumptions.use("heisenberg-closure")
    ext = ASExtension(p, beta)
    delta = ext.element({0: alpha * beta * r, 1: alpha})
    red3 = as_reduce_F(delta)
    closed_form = 2 * b + p * (a - b)
    if not (red3.outcome.is_wild and red3.outcome.break_value == closed_form):
        raise InternalCheckError(
            f"top-step reduction gave {red3.outcome}, closed form says {closed_form}"
        )
    residual_val = red3.reduced.valuation()
    if residual_val != -(p * a - p * b + 2 * b):
        raise InternalCheckError(
            f"residual valuation {residual_val} != -(p*a - p*b + 2*b)"
        )
    check = delta - red3.witness.wp() - red3.reduced
    if not check.is_zero():
        raise InternalCheckError("reduction witness identity failed")
    steps.append(
        Step(
            start + 2,
            "wild-reduce-ext",
            (("t", str(t)), ("s", str(s)), ("r", str(r))),
            (
                ("machine_break", str(red3.outcome.break_value)),
                ("closed_form", str(closed_form)),
                ("residual_valuation", str(residual_val)),
            ),
        )
    )

    assumptions.use("central-cp2")
    assumptions.use("top-multiplicity-one")
    f1 = fact1_resolve(_upper(p, []), b, a)
    mid_break = b + p * (a - b)
    if f1.l0_relative_break != mid_break:
        raise InternalCheckError(
            f"case split gave {f1.l0_relative_break}, expected {mid_break}"
        )
    steps.append(
        Step(
            start + 3,
            "central-cp2-cases",
            (("upper", _upper(p, []).to_text()), ("u", str(b)), ("v", str(a))),
            (
                ("lower_u", str(f1.lower_u)),
                ("lower_v", str(f1.lower_v)),
                ("carrier_break", str(f1.l0_relative_break)),
            ),
        )
    )

    lf_upper = compose_disjoint(
        _upper(p, [mid_break]), _upper(p, [closed_form])
    )
    lf_lower = upper_to_lower(lf_upper)
    steps.append(
        Step(
            start + 4,
            "compose-convert",
            (("upper", lf_upper.to_text()),),
            (("lower", lf_lower.to_text()),),
        )
    )

    assumptions.use("commutator-smallest")
    mk_lower = upper_to_lower(u_m)
    top = max(lf_lower.breaks)
    merged = BreakMultiset(
        "lower", 1, p, tuple(sorted(mk_lower.breaks + (top,)))
    )
    steps.append(
        Step(
            start + 5,
            "merge-lowers",
            (("sub_lower", mk_lower.to_text()), ("top", str(top))),
            (("lower", merged.to_text()),),
        )
    )

    predicted = lower_to_upper(merged)
    witness = Fraction(a * p + b, p)
    expect = _upper(p, [b, a, witness])
    if predicted.breaks != expect.breaks:
        raise InternalCheckError(
            f"predicted multiset {predicted.to_text()} != {expect.to_text()}"
        )
    steps.append(
        Step(
            start + 6,
            "lower-to-upper",
            (("lower", merged.to_text()),),
            (("upper", predicted.to_text()), ("witness", str(witness))),
        )
    )
    verified = _upper(p, [b, a])
    return steps, predicted, verified, witness


def build_p3_tower(
    params: P3Parameters,
    precision: int = DEFAULT_PRECISION,
    beta_unit: LaurentSeries | None = None,
) -> Certificate:
    """Build and machine-check the order-p^3 tower certificate."""
    assumptions = _Assumptions()
    steps, predicted, verified, witness = _p3_steps(
        params, precision, beta_unit, 1, assumptions
    )
    cert_params = [
        ("p", str(params.p)),
        ("b", str(params.b)),
        ("a", str(params.a)),
        ("precision", str(precision)),
    ]
    if beta_unit is not None:
        cert_params.append(("beta_unit", beta_unit.to_text()))
    return Certificate(
        kind="p3-tower",
        params=tuple(cert_params),
        steps=tuple(steps),
        assumptions=assumptions.tuple(),
        predicted=predicted,
        verified=verified,
        witness=witness,
    )


def _claimed_cyclic_chain(p: int, length: int) -> BreakMultiset:
    """Canonical claimed upper breaks of a cyclic p-power extension:
    u_1 = 1 and u_{i+1} = p*u_i + 1 (integral, prime to p, realizable)."""
    us = [Fraction(1)]
    for _ in range(length - 1):
        us.append(us[-1] * p + 1)
    return _upper(p, us)


def _synth_base(kind: str, p: int, n: int, d: int, precision: int) -> BreakMultiset:
    if kind == "A1d":
        return _claimed_cyclic_chain(p, d + 1)
    if kind == "H":
        if n - 1 == 0:
            return _claimed_cyclic_chain(p, d)
        return derive_nonint("H", p, n - 1, d, precision=precision).predicted
    if kind == "A":
        return derive_nonint("A", p, n - 1, d, precision=precision).predicted
    raise ParameterError(f"unknown kind {kind!r}")


def _group_check_steps(
    kind: str,
    p: int,
    n: int,
    d: int,
    start: int,
    assumptions: _Assumptions,
) -> list[Step]:
    """Distinctness of the compositum side field and the central-product
    (or fiber-product) form of the target group; machine-checked when the
    ambient orders stay small, recorded as assumptions otherwise."""
    steps: list[Step] = []
    if kind == "A1d":
        side = DirectProductGroup(CyclicPGroup(p, d + 1), CyclicPGroup(p, 1))
        target = make_group("A", p, 1, d)
        side_desc = side.descriptor()
        if side.order <= CERT_GROUP_LIMIT:
            if is_isomorphic(side, target, CERT_GROUP_LIMIT):
                raise InternalCheckError("side field group matches the target group")
            out = "false"
        else:
            assumptions.use("group-distinctness-assumed")
            out = "assumed-false"
        steps.append(
            Step(
                start,
                "distinct-side-group",
                (("lhs", side_desc), ("rhs", target.descriptor())),
                (("isomorphic", out),),
            )
        )
        if p ** (d + 4) <= CERT_GROUP_LIMIT:
            q = build_A1d_via_Gd(p, d, CERT_GROUP_LIMIT)
            if not is_isomorphic(q, target, CERT_GROUP_LIMIT):
                raise InternalCheckError("fiber-product quotient is not A(1, d)")
            out = "true"
        else:
            assumptions.use("central-product-assumed")
            out = "assumed-true"
        steps.append(
            Step(
                start + 1,
                "quotient-group-form",
                (
                    ("construction", f"fiber-product p={p} d={d}"),
                    ("target", target.descriptor()),
                ),
                (("isomorphic", out),),
            )
        )
        return steps

    base_group = make_group(kind, p, n - 1, d) if (kind == "A" or n - 1 > 0) else make_group("H", p, 0, d)
    target = make_group(kind, p, n, d)
    side = DirectProductGroup(
        DirectProductGroup(base_group, CyclicPGroup(p, 1)), CyclicPGroup(p, 1)
    )
    if side.order <= CERT_GROUP_LIMIT:
        if is_isomorphic(side, target, CERT_GROUP_LIMIT):
            raise InternalCheckError("side field group matches the target group")
        out = "false"
    else:
        assumptions.use("group-distinctness-assumed")
        out = "assumed-false"
    steps.append(
        Step(
            start,
            "distinct-side-group",
            (("lhs", side.descriptor()), ("rhs", target.descriptor())),
            (("isomorphic", out),),
        )
    )
    h11 = make_group("H", p, 1, 1)
    if base_group.order * h11.order <= CERT_GROUP_LIMIT:
        q = central_product(base_group, h11, limit=CERT_GROUP_LIMIT)
        if not is_isomorphic(q, target, CERT_GROUP_LIMIT):
            raise InternalCheckError("central product does not realize the target group")
        out = "true"
    else:
        assumptions.use("central-product-assumed")
        out = "assumed-true"
    steps.append(
        Step(
            start + 1,
            "quotient-group-form",
            (
                ("left", base_group.descriptor()),
                ("right", h11.descriptor()),
                ("target", target.descriptor()),
            ),
            (("isomorphic", out),),
        )
    )
    return steps


def _nonint_steps(
    kind: str,
    p: int,
    n: int,
    d: int,
    base: BreakMultiset,
    precision: int,
    start: int,
    assumptions: _Assumptions,
) -> tuple[list[Step], BreakMultiset, BreakMultiset, Fraction]:
    """Composite construction for H(n, d), A(n, d) (n >= 2), or A(1, d)."""
    steps: list[Step] = []
    assumptions.use("base-extension-exists")
    base_lower = upper_to_lower(base)  # realizability gate
    v = max(base.breaks)
    steps.append(
        Step(
            start,
            "base-realizable",
            (("base", base.to_text()),),
            (("lower", base_lower.to_text()), ("top", str(v))),
        )
    )
    idx = start + 1

    if kind == "A1d":
        if len(base.breaks) != d + 1:
            raise ParameterError(
                f"cyclic base chain must have {d + 1} breaks, got {len(base.breaks)}"
            )
        if list(base.breaks) != sorted(set(base.breaks)):
            raise ParameterError("cyclic base chain must be strictly increasing")
        b = int(base.breaks[0])
        if Fraction(b) != base.breaks[0] or b % p == 0:
            raise ParameterError(
                f"first break of the cyclic chain must be an integer prime to p, got {base.breaks[0]}"
            )
        steps.append(
            Step(
                idx,
                "shared-subfield-break",
                (("base", base.to_text()),),
                (("b", str(b)),),
            )
        )
        assumptions.use("shared-base-field")
        idx += 1
        a = _pick_a_above(p, b, v)
        steps.append(
            Step(
                idx,
                "pick-a-above",
                (("floor", str(v)), ("b", str(b))),
                (("a", str(a)),),
            )
        )
        idx += 1
    else:
        b, a = pick_parameters(p, v)
        steps.append(
            Step(
                idx,
                "pick-parameters",
                (("floor", str(v)),),
                (("b", str(b)), ("a", str(a))),
            )
        )
        idx += 1

    params = P3Parameters.derive(p, b, a)
    p3_steps, p3_predicted, p3_verified, witness = _p3_steps(
        params, precision, None, idx, assumptions
    )
    steps += p3_steps
    idx += len(p3_steps)

    peeled = list(base.breaks)
    peeled.remove(v)  # one occurrence: the factor loses exactly its top break
    if kind == "A1d":
        joined = _upper(p, list(base.breaks) + [a, witness])
        steps.append(
            Step(
                idx,
                "union-shared",
                (
                    ("left", base.to_text()),
                    ("right", p3_predicted.to_text()),
                    ("shared", str(b)),
                ),
                (("upper", joined.to_text()),),
            )
        )
        mid = _upper(p, peeled + [a])
    else:
        joined = compose_disjoint(base, p3_predicted)
        steps.append(
            Step(
                idx,
                "union-disjoint",
                (("left", base.to_text()), ("right", p3_predicted.to_text())),
                (("upper", joined.to_text()),),
            )
        )
        mid = _upper(p, peeled + [b, a])
    idx += 1

    assumptions.use("smallest-ramification-peel")
    steps.append(
        Step(
            idx,
            "peel-top-breaks",
            (
                ("left_top", str(v)),
                ("right_top", str(witness)),
            ),
            (("mid", mid.to_text()),),
        )
    )
    idx += 1

    f1 = fact1_resolve(mid, v, witness)
    steps.append(
        Step(
            idx,
            "central-cp2-cases",
            (("upper", mid.to_text()), ("u", str(v)), ("v", str(witness))),
            (
                ("lower_u", str(f1.lower_u)),
                ("lower_v", str(f1.lower_v)),
                ("carrier_break", str(f1.l0_relative_break)),
            ),
        )
    )
    idx += 1

    steps += _group_check_steps(kind, p, n, d, idx, assumptions)
    idx += 2

    predicted = f1.other_breaks
    if witness != max(predicted.breaks):
        raise InternalCheckError("witness is not the largest predicted break")
    steps.append(
        Step(
            idx,
            "conclude-witness",
            (("mid", mid.to_text()), ("extra", str(witness))),
            (
                ("upper", predicted.to_text()),
                ("witness", str(witness)),
                ("integral", "false"),
            ),
        )
    )
    return steps, predicted, p3_verified, witness


def derive_nonint(
    kind: str,
    p: int,
    n: int,
    d: int,
    base_breaks: BreakMultiset | None = None,
    precision: int = DEFAULT_PRECISION,
) -> Certificate:
    """Certificate for a group-of-type H(n, d) or A(n, d) extension whose
    largest upper break is a + b/p (not an integer).

    ``kind`` is "H", "A", or "A1d"; A with n = 1 is routed to the A1d
    construction, and H(1, 1) degenerates to a plain tower certificate.
    """
    require_odd_prime(p)
    if kind not in ("H", "A", "A1d"):
        raise ParameterError(f"kind must be H, A, or A1d, got {kind!r}")
    if kind == "A1d":
        n = 1
    if kind == "A" and n == 1:
        kind = "A1d"
    if n < 1 or d < 1:
        raise ParameterError(f"need n >= 1 and d >= 1, got n={n} d={d}")

    if kind == "H" and n == 1 and d == 1:
        v0 = max(base_breaks.breaks) if base_breaks and base_breaks.breaks else 0
        b, a = pick_parameters(p, v0)
        return build_p3_tower(P3Parameters.derive(p, b, a), precision)

    base = base_breaks if base_breaks is not None else _synth_base(kind, p, n, d, precision)
    if base.numbering != "upper" or base.m != 1 or base.p != p:
        raise ParameterError("base breaks must be upper-numbered with m = 1 and matching p")
    assumptions = _Assumptions()
    steps, predicted, verified, witness = _nonint_steps(
        kind, p, n, d, base, precision, 1, assumptions
    )
    return Certificate(
        kind=f"nonint-{kind}",
        params=(
            ("p", str(p)),
            ("n", str(n)),
            ("d", str(d)),
            ("base", base.to_text()),
            ("precision", str(precision)),
        ),
        steps=tuple(steps),
        assumptions=assumptions.tuple(),
        predicted=predicted,
        verified=verified,
        witness=witness,
    )


def _action_to_perm(P: PGroup, action) -> list[int] | None:
    """None for the trivial action, else the permutation of element indices."""
    if action is None or action == "trivial":
        return None
    idx = P.index_map()
    elems = P.elements()
    if isinstance(action, dict):
        if set(action) != set(elems):
            raise ParameterError("action map must be defined on every element")
        return [idx[action[g]] for g in elems]
    perm = [int(x) for x in action]
    if sorted(perm) != list(range(P.order)):
        raise ParameterError("action permutation is not a bijection on indices")
    return perm


def derive_chat(
    group_descriptor: str,
    m: int,
    action=None,
    precision: int = DEFAULT_PRECISION,
) -> Certificate:
    """Certificate for G = P x| C_m: either the prime-to-p action is
    nontrivial (every totally ramified realization has a nonintegral
    break), or G = P x C_m with P nonabelian and a quotient construction
    supplies the witness.

    ``action`` is None/"trivial", a full element map, or a permutation of
    element indices giving the image of a generator of C_m on P.
    """
    P = parse_group_descriptor(group_descriptor)
    p = P.p
    if m < 1:
        raise ParameterError(f"m must be positive, got {m}")
    if gcd(m, p) != 1:
        raise ParameterError(f"m = {m} must be prime to p = {p}")
    perm = _action_to_perm(P, action)
    action_text = "trivial" if perm is None else "perm " + ",".join(map(str, perm))
    assumptions = _Assumptions()
    steps = [
        Step(
            1,
            "coprime-check",
            (("m", str(m)), ("p", str(p))),
            (("gcd", "1"),),
        )
    ]
    elems = P.elements()
    if perm is None:
        alpha = {g: g for g in elems}
        nontrivial = False
        order = 1
    else:
        alpha = {g: elems[perm[i]] for i, g in enumerate(elems)}
        nontrivial = any(perm[i] != i for i in range(len(perm)))
        order = None  # established by the burnside check below
    burn = burnside_action_check(P, alpha, m)
    if order is None:
        order = _perm_order(perm)
    steps.append(
        Step(
            2,
            "action-check",
            (("action", action_text),),
            (
                ("automorphism", "true"),
                ("order", str(order)),
                ("nontrivial", "true" if nontrivial else "false"),
            ),
        )
    )

    if nontrivial:
        steps.append(
            Step(
                3,
                "burnside-agreement",
                (("group", group_descriptor),),
                (
                    ("nontrivial_on_group", str(burn.nontrivial_on_group).lower()),
                    (
                        "nontrivial_on_frattini_quotient",
                        str(burn.nontrivial_on_frattini_quotient).lower(),
                    ),
                ),
            )
        )
        assumptions.use("abelian-wild-part-nonintegral")
        steps.append(
            Step(
                4,
                "conclude-universal",
                (("group", group_descriptor), ("m", str(m))),
                (
                    (
                        "conclusion",
                        "every totally ramified realization has a nonintegral upper break",
                    ),
                ),
            )
        )
        return Certificate(
            kind="chat",
            params=(
                ("group", group_descriptor),
                ("m", str(m)),
                ("action", action_text),
                ("precision", str(precision)),
            ),
            steps=tuple(steps),
            assumptions=assumptions.tuple(),
            predicted=None,
            verified=None,
            witness=None,
        )

    if is_abelian(P):
        raise ParameterError(
            "trivial action with abelian wild part gives an abelian group; "
            "all upper breaks are integral"
        )
    steps.append(
        Step(
            3,
            "wild-part-nonabelian",
            (("group", group_descriptor),),
            (("nonabelian", "true"),),
        )
    )
    kernel, quotient, cls = minimal_nonabelian_quotient(P)
    idx = P.index_map()
    kernel_text = ",".join(str(idx[g]) for g in kernel)
    steps.append(
        Step(
            4,
            "minimal-quotient",
            (("group", group_descriptor),),
            (
                ("kernel_order", str(len(kernel))),
                ("kernel", kernel_text),
                ("quotient", f"kind={cls.kind} p={p} n={cls.n} d={cls.d}"),
            ),
        )
    )
    if cls.kind == "H" and cls.n == 1 and cls.d == 1:
        b, a = pick_parameters(p, 0)
        params = P3Parameters.derive(p, b, a)
        sub_steps, predicted, verified, witness = _p3_steps(
            params, precision, None, 5, assumptions
        )
    else:
        kind = "A1d" if (cls.kind == "A" and cls.n == 1) else cls.kind
        base = _synth_base(kind, p, cls.n, cls.d, precision)
        sub_steps, predicted, verified, witness = _nonint_steps(
            kind, p, cls.n, cls.d, base, precision, 5, assumptions
        )
    steps += sub_steps
    assumptions.use("embedding-lift")
    if m > 1:
        assumptions.use("tame-base-change")
    steps.append(
        Step(
            5 + len(sub_steps),
            "persist-witness",
            (("witness", str(witness)), ("m", str(m))),
            (("witness", str(witness)),),
        )
    )
    return Certificate(
        kind="pchat" if m == 1 else "chat",
        params=(
            ("group", group_descriptor),
            ("m", str(m)),
            ("action", action_text),
            ("precision", str(precision)),
        ),
        steps=tuple(steps),
        assumptions=assumptions.tuple(),
        predicted=predicted,
        verified=verified,
        witness=witness,
    )


def _perm_order(perm: list[int]) -> int:
    order = 1
    seen = [False] * len(perm)
    for s in range(len(perm)):
        if seen[s]:
            continue
        length = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        order = order * length // gcd(order, length)
    return order


# -- parsing and verification -----------------------------------------------


@dataclass
class ParsedCertificate:
    kind: str
    params: dict[str, str]
    text: str


def parse_certificate(text: str) -> ParsedCertificate:
    lines = text.splitlines()
    if not lines or lines[0] != HEADER:
        raise ParseError(f"missing header {HEADER!r}")
    if len(lines) < 2 or not lines[1].startswith("kind: "):
        raise ParseError("missing kind line")
    kind = lines[1][len("kind: ") :]
    if kind not in KINDS:
        raise ParseError(f"unknown certificate kind {kind!r}")
    params: dict[str, str] = {}
    saw_assumptions = False
    for ln in lines[2:]:
        if ln.startswith("param "):
            body = ln[len("param ") :]
            key, sep, value = body.partition(" = ")
            if not sep:
                raise ParseError(f"malformed param line {ln!r}")
            params[key] = value
        elif ln.startswith("step "):
            head = ln.split(" | ")[0]
            if ": RULE " not in head:
                raise ParseError(f"malformed step line {ln!r}")
            rule = head.split(": RULE ")[1]
            if rule not in RULES:
                raise ParseError(f"unknown rule {rule!r}")
        elif ln == "ASSUMPTIONS:":
            saw_assumptions = True
        elif ln.startswith("assume "):
            name = ln[len("assume ") :].partition(":")[0]
            if name not in ASSUMPTION_STATEMENTS:
                raise ParseError(f"unknown assumption {name!r}")
        elif ln.startswith(("PREDICTED: ", "VERIFIED: ", "WITNESS: ")):
            pass
        else:
            raise ParseError(f"unrecognized certificate line {ln!r}")
    if not saw_assumptions:
        raise ParseError("missing ASSUMPTIONS block")
    return ParsedCertificate(kind=kind, params=params, text=text)


def _rebuild(parsed: ParsedCertificate) -> Certificate:
    kind = parsed.kind
    params = parsed.params
    try:
        precision = int(params.get("precision", DEFAULT_PRECISION))
        if kind == "p3-tower":
            p3 = P3Parameters.derive(int(params["p"]), int(params["b"]), int(params["a"]))
            unit = parse_series(params["beta_unit"]) if "beta_unit" in params else None
            return build_p3_tower(p3, precision, unit)
        if kind in ("nonint-H", "nonint-A", "nonint-A1d"):
            from .ramcalc import parse_multiset

            base = parse_multiset(params["base"])
            return derive_nonint(
                kind.removeprefix("nonint-"),
                int(params["p"]),
                int(params["n"]),
                int(params["d"]),
                base_breaks=base,
                precision=precision,
            )
        if kind in ("pchat", "chat"):
            action = params["action"]
            if action.startswith("perm "):
                action = [int(x) for x in action[len("perm ") :].split(",")]
            return derive_chat(params["group"], int(params["m"]), action, precision)
    except KeyError as exc:
        raise ParseError(f"certificate is missing parameter {exc}") from exc
    raise ParseError(f"unknown certificate kind {kind!r}")


def verify_certificate(text: str) -> None:
    """Re-execute every non-assumption step from the parameter block and
    demand bit-exact agreement with the given text."""
    parsed = parse_certificate(text)
    rebuilt = _rebuild(parsed).render()
    given = text.splitlines()
    fresh = rebuilt.splitlines()
    for i in range(max(len(given), len(fresh))):
        g = given[i] if i < len(given) else "<missing>"
        f = fresh[i] if i < len(fresh) else "<missing>"
        if g != f:
            probe = g if g.startswith("step ") else f
            if probe.startswith("step "):
                label = probe.split(":", 1)[0]
            else:
                label = f"line {i + 1}"
            raise VerificationMismatchError(label, expected=f, found=g)
