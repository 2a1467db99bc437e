"""Closed-form annihilating operators for two parametrized exponent layouts.

Layout A in three variables: x^(2u) + y^(2v) + z^(2w) + lam * x^u y^v z^w.
Layout B in three variables: x^(2p) z^u + y^(2q) z^v + z^(u+v) + lam * x^p y^q.

Both sit in the case split with d = 2 and h = 1, so the operator is a cubic
product of monic linear factors plus -4 * lam^(+-2) times a quadratic one.
The factor roots are explicit rational expressions in the parameters; the
cross check recomputes every derived quantity from the exponent matrices and
compares.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import ABElement, linear_factor_product
from .connection import MonomialMu, nabla_formula, sigma_tau
from .errors import InputError
from .exact import LaurentPoly, Rat
from .exponents import Case, DependencyData, ExponentData, dependency, det_identity_check, validate_hypotheses

C_COEFF = Fraction(-4)


@dataclass(frozen=True)
class FamilyResult:
    """Operator data for one family instance.

    full_operator = top_part + c_coeff * lam^lambda_exponent * low_part, with
    both parts stored as ordered root lists of their monic linear factors.
    The low part's roots reduced mod 1 are the monodromy candidate exponents.
    """

    kind: str
    params: tuple[int, ...]
    exponents: ExponentData
    roots_top: tuple[Rat, ...]
    roots_low: tuple[Rat, ...]
    c_coeff: Rat
    lambda_exponent: int
    top_part: ABElement
    low_part: ABElement
    full_operator: ABElement
    nabla_one: ABElement

    def label(self) -> str:
        return f"{self.kind}({', '.join(str(x) for x in self.params)})"

    def factored_display(self) -> str:
        return factored_display(self)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "params": list(self.params),
            "exponents": self.exponents.to_json(),
            "roots_top": [str(x) for x in self.roots_top],
            "roots_low": [str(x) for x in self.roots_low],
            "c_coeff": str(self.c_coeff),
            "lambda_exponent": self.lambda_exponent,
            "operator": str(self.full_operator),
            "operator_factored": self.factored_display(),
            "nabla_one": str(self.nabla_one),
            "monodromy_candidates": [str(x) for x in monodromy_candidates(self)],
        }


def _build_result(
    kind: str,
    params: Sequence[int],
    exponents: ExponentData,
    roots_top: Sequence[Rat],
    roots_low: Sequence[Rat],
    lambda_exponent: int,
    nabla_one: ABElement,
) -> FamilyResult:
    top = linear_factor_product(roots_top)
    low = linear_factor_product(roots_low)
    full = top + low.scale(LaurentPoly.lam_power(lambda_exponent, C_COEFF))
    return FamilyResult(
        kind=kind,
        params=tuple(params),
        exponents=exponents,
        roots_top=tuple(roots_top),
        roots_low=tuple(roots_low),
        c_coeff=C_COEFF,
        lambda_exponent=lambda_exponent,
        top_part=top,
        low_part=low,
        full_operator=full,
        nabla_one=nabla_one,
    )


def family_a(u: int, v: int, w: int) -> FamilyResult:
    """Operator for x^(2u) + y^(2v) + z^(2w) + lam * x^u y^v z^w."""
    for name, value in (("u", u), ("v", v), ("w", w)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise InputError(f"{name} must be a positive integer, got {value!r}")
    exponents = ExponentData(
        n=2,
        alphas=((2 * u, 0, 0), (0, 2 * v, 0), (0, 0, 2 * w), (u, v, w)),
    )
    s = Fraction(u * v + v * w + w * u, 2 * u * v * w)
    roots_top = (
        2 + Fraction(u + v, 2 * u * v),
        1 + Fraction(u + w, 2 * u * w),
        Fraction(v + w, 2 * v * w),
    )
    roots_low = (Fraction(3, 2) + s, s)
    a, b = ABElement.gen_a(), ABElement.gen_b()
    nabla_one = (a - b.scale(s)).scale(2)
    return _build_result("A", (u, v, w), exponents, roots_top, roots_low, -2, nabla_one)


def family_b(p: int, q: int, u: int, v: int) -> FamilyResult:
    """Operator for x^(2p) z^u + y^(2q) z^v + z^(u+v) + lam * x^p y^q."""
    for name, value in (("p", p), ("q", q)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise InputError(f"{name} must be a positive integer, got {value!r}")
    for name, value in (("u", u), ("v", v)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise InputError(f"{name} must be a nonnegative integer, got {value!r}")
    if u + v < 1:
        raise InputError("u + v must be at least 1")
    exponents = ExponentData(
        n=2,
        alphas=((2 * p, 0, u), (0, 2 * q, v), (0, 0, u + v), (p, q, 0)),
    )
    t = Fraction(p * u + q * v + 2 * p * q, 2 * p * q * (u + v))
    roots_top = (2 + Fraction(p + q, 2 * p * q), Fraction(1, 2) + t, t)
    roots_low = (
        1 + Fraction(p * u + q * v + 2 * p * q + p * (u + v), 2 * p * q * (u + v)),
        Fraction(p * u + q * v + 2 * p * q + q * (u + v), 2 * p * q * (u + v)),
    )
    a, b = ABElement.gen_a(), ABElement.gen_b()
    nabla_one = -((a - b.scale(t)).scale(2))
    return _build_result("B", (p, q, u, v), exponents, roots_top, roots_low, 2, nabla_one)


def monodromy_candidates(result: FamilyResult) -> list[Rat]:
    """Low-part roots reduced mod 1 into [0, 1), multiplicities kept, in root order."""
    return [x - (x.numerator // x.denominator) for x in result.roots_low]


def match_family(data: ExponentData) -> FamilyResult | None:
    """Recognize an exponent layout as a family instance; None when it is neither."""
    if data.n != 2:
        return None
    a1, a2, a3, a4 = data.alphas
    u, v, w = a4
    if w >= 1 and u >= 1 and v >= 1:
        if a1 == (2 * u, 0, 0) and a2 == (0, 2 * v, 0) and a3 == (0, 0, 2 * w):
            return family_a(u, v, w)
    p, q, z = a4
    if z == 0 and p >= 1 and q >= 1:
        uu, vv = a1[2], a2[2]
        if (
            a1 == (2 * p, 0, uu)
            and a2 == (0, 2 * q, vv)
            and a3 == (0, 0, uu + vv)
            and uu + vv >= 1
        ):
            return family_b(p, q, uu, vv)
    return None


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    expected: str
    got: str


@dataclass(frozen=True)
class CrossValidationReport:
    label: str
    checks: tuple[CheckOutcome, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "expected": c.expected, "got": c.got}
                for c in self.checks
            ],
        }


def cross_validate(result: FamilyResult) -> CrossValidationReport:
    """Recompute every derived quantity from the exponents and compare.

    The closed forms fix r = 2, d = 2, h = 1 for both layouts, case II with
    sigma = -2 for A and case I with sigma = 2 for B; the connection formula
    applied to mu = 1 must reproduce the stored operator.
    """
    checks: list[CheckOutcome] = []

    def record(name: str, expected, got) -> None:
        checks.append(CheckOutcome(name, expected == got, str(expected), str(got)))

    data = result.exponents
    report = validate_hypotheses(data)
    record("hypotheses", True, report.passed)
    dep: DependencyData = dependency(data)
    expected_case = Case.CASE_II if result.kind == "A" else Case.CASE_I
    expected_p = (1, 1, 1) if result.kind == "A" else (1, 1, -1)
    record("r", 2, dep.r)
    record("p", expected_p, dep.p)
    record("d", 2, dep.d)
    record("h", 1, dep.h)
    record("case", expected_case.value, dep.case.value)
    record("sigma", Fraction(-2) if result.kind == "A" else Fraction(2), dep.sigma)
    record("lambda_exponent", result.lambda_exponent, dep.lambda_exponent)
    det_report = det_identity_check(data, dep)
    record("determinant_identity", True, det_report.passed)
    st = sigma_tau(data, MonomialMu.unit(data.n))
    record("sigma_from_inverse", dep.sigma, st.sigma)
    record("nabla_one", result.nabla_one, nabla_formula(st))
    reconstructed = result.top_part + result.low_part.scale(
        LaurentPoly.lam_power(result.lambda_exponent, result.c_coeff)
    )
    record("operator_reconstruction", result.full_operator, reconstructed)
    return CrossValidationReport(label=result.label(), checks=tuple(checks))


def _factor_text(root: Rat) -> str:
    if root == 0:
        return "(a - 0*b)"
    sign = " - " if root > 0 else " + "
    mag = abs(root)
    body = "b" if mag == 1 else f"{mag}*b"
    return f"(a{sign}{body})"


def factored_display(result: FamilyResult) -> str:
    """Operator as a product-of-factors string.

    When the top and low parts share their leftmost factor it is pulled out
    in front of a bracketed mixed block; otherwise the two blocks are shown
    side by side.
    """
    c = result.c_coeff
    lam = (
        "lam"
        if result.lambda_exponent == 1
        else f"lam^{result.lambda_exponent}"
    )
    c_text = f"{'-' if c < 0 else '+'} {abs(c)}*{lam}"
    top, low = result.roots_top, result.roots_low
    if top and low and top[0] == low[0]:
        head = _factor_text(top[0])
        rest_top = "*".join(_factor_text(x) for x in top[1:])
        rest_low = "*".join(_factor_text(x) for x in low[1:])
        tail = f"*{rest_low}" if rest_low else ""
        return f"{head}*[{rest_top} {c_text}{tail}]"
    top_text = "*".join(_factor_text(x) for x in top)
    low_text = "*".join(_factor_text(x) for x in low)
    return f"{top_text} {c_text}*{low_text}"
