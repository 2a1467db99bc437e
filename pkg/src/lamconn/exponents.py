"""Exponent matrices of an (n+2)-monomial polynomial and their rank data.

The input polynomial in n+1 variables is sum(x^alpha_j, j = 1..n+1) plus
lam * x^alpha_(n+2).  Two hypotheses make the analysis work:

  i)  the bordered matrix (row of ones over all n+2 exponent columns) has
      full rank n+2, which rules out quasi-homogeneity;
  ii) the first n+1 exponent vectors form a basis of Q^(n+1).

Under ii) the last exponent has a unique rational expansion in the basis,
cleared to the minimal integer relation r * alpha_(n+2) = sum p_j * alpha_j.
The sign pattern of the p_j splits the analysis into two cases and fixes the
rational sigma together with the lam power carried by the lower operator
block downstream.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import HypothesisError, InputError
from .exact import Rat, RatMatrix, det, rank, solve


@dataclass(frozen=True)
class ExponentData:
    """Validated exponent columns: n+2 vectors with n+1 nonnegative entries each."""

    n: int
    alphas: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"n must be an integer >= 1, got {self.n!r}")
        alphas = tuple(tuple(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if len(alphas) != self.n + 2:
            raise InputError(f"expected {self.n + 2} exponent vectors, got {len(alphas)}")
        for a in alphas:
            if len(a) != self.n + 1:
                raise InputError(f"exponent vector {a} must have {self.n + 1} entries")
            for entry in a:
                if not isinstance(entry, int) or isinstance(entry, bool) or entry < 0:
                    raise InputError(f"exponent entries must be nonnegative integers, got {entry!r}")
        if len(set(alphas)) != len(alphas):
            raise InputError("exponent vectors must be pairwise distinct")

    def matrix_m_prime(self) -> RatMatrix:
        """The (n+1) x (n+1) matrix whose columns are the first n+1 exponents."""
        return RatMatrix.from_columns(self.alphas[: self.n + 1])

    def matrix_m_tilde(self) -> RatMatrix:
        """All n+2 exponent columns bordered by a first row of ones."""
        cols = [(1,) + a for a in self.alphas]
        return RatMatrix.from_columns(cols)

    @classmethod
    def from_json(cls, obj) -> "ExponentData":
        if not isinstance(obj, dict):
            raise InputError("exponent input must be a JSON object")
        missing = {"n", "alphas"} - set(obj)
        if missing:
            raise InputError(f"missing keys: {sorted(missing)}")
        n = obj["n"]
        alphas = obj["alphas"]
        if not isinstance(alphas, list) or not all(isinstance(a, list) for a in alphas):
            raise InputError("alphas must be a list of lists")
        return cls(n=n, alphas=tuple(tuple(a) for a in alphas))

    def to_json(self) -> dict:
        return {"n": self.n, "alphas": [list(a) for a in self.alphas]}


@dataclass(frozen=True)
class HypothesisReport:
    rank_m_tilde: int
    rank_m_prime: int
    bordered_rank_ok: bool
    basis_ok: bool
    passed: bool
    note: str | None = None

    def failure_messages(self, n: int) -> list[str]:
        out = []
        if not self.bordered_rank_ok:
            out.append(f"hypothesis i) fails: rank {self.rank_m_tilde} < {n + 2}")
        if not self.basis_ok:
            out.append(f"hypothesis ii) fails: rank {self.rank_m_prime} < {n + 1}")
        return out

    def to_json(self) -> dict:
        out = {
            "rank_m_tilde": self.rank_m_tilde,
            "rank_m_prime": self.rank_m_prime,
            "hypothesis_i": self.bordered_rank_ok,
            "hypothesis_ii": self.basis_ok,
            "passed": self.passed,
        }
        if self.note:
            out["note"] = self.note
        return out


def validate_hypotheses(data: ExponentData) -> HypothesisReport:
    """Rank checks for both hypotheses; never raises on a well-formed input."""
    rk_tilde = rank(data.matrix_m_tilde())
    rk_prime = rank(data.matrix_m_prime())
    ok_i = rk_tilde == data.n + 2
    ok_ii = rk_prime == data.n + 1
    note = None
    if ok_i and not ok_ii:
        note = (
            "the first n+1 exponents do not span; a different monomial ordering "
            "or a reparametrization of lam may repair this, which this tool does not attempt"
        )
    return HypothesisReport(
        rank_m_tilde=rk_tilde,
        rank_m_prime=rk_prime,
        bordered_rank_ok=ok_i,
        basis_ok=ok_ii,
        passed=ok_i and ok_ii,
        note=note,
    )


class Case(enum.Enum):
    CASE_I = "I"
    CASE_II = "II"


@dataclass(frozen=True)
class DependencyData:
    """Minimal integer relation and the derived case data.

    r * alpha_(n+2) = sum p_j * alpha_j with r >= 1 minimal; d and h come
    from the positive / nonpositive split of the p_j; sigma = r/(r - sum p)
    and the operator's lam power is +r in case I, -r in case II.
    """

    r: int
    p: tuple[int, ...]
    sum_p: int
    d: int
    h: int
    case: Case
    sigma: Rat
    lambda_exponent: int

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "p": list(self.p),
            "sum_p": self.sum_p,
            "d": self.d,
            "h": self.h,
            "case": self.case.value,
            "sigma": str(self.sigma),
            "lambda_exponent": self.lambda_exponent,
        }


def dependency_solution(data: ExponentData) -> tuple[int, tuple[int, ...]]:
    """Clear denominators of the basis expansion of the last exponent.

    Needs only hypothesis ii).  r is the lcm of the denominators of the
    rational solution, so no smaller positive multiplier yields an integer
    relation.
    """
    report = validate_hypotheses(data)
    if not report.basis_ok:
        raise HypothesisError("; ".join(report.failure_messages(data.n)))
    q = solve(data.matrix_m_prime(), [Fraction(x) for x in data.alphas[-1]])
    r = math.lcm(*(x.denominator for x in q))
    p = tuple(int(x * r) for x in q)
    return r, p


def dependency(data: ExponentData) -> DependencyData:
    """Full case analysis; requires both hypotheses."""
    report = validate_hypotheses(data)
    if not report.passed:
        raise HypothesisError("; ".join(report.failure_messages(data.n)))
    r, p = dependency_solution(data)
    if all(x == 0 for x in p):
        raise InputError("the parameter monomial has exponent zero; no usable relation")
    sum_p = sum(p)
    side_nonpos = r - sum(x for x in p if x <= 0)
    side_pos = sum(x for x in p if x > 0)
    # Equality would force det of the bordered matrix to vanish, which
    # hypothesis i) has already excluded.
    assert side_nonpos != side_pos
    d = min(side_nonpos, side_pos)
    h = max(side_nonpos, side_pos) - d
    case = Case.CASE_I if side_nonpos > side_pos else Case.CASE_II
    sigma = Fraction(r, r - sum_p)
    return DependencyData(
        r=r,
        p=p,
        sum_p=sum_p,
        d=d,
        h=h,
        case=case,
        sigma=sigma,
        lambda_exponent=r if case is Case.CASE_I else -r,
    )


@dataclass(frozen=True)
class DetIdentityReport:
    """Both sides of det(M~) = (-1)^(n+1) * (1 - sum_p/r) * det(M') plus the
    determinant route to sigma."""

    det_m_prime: Rat
    det_m_tilde: Rat
    predicted_det_m_tilde: Rat
    identity_holds: bool
    sigma_from_determinants: Rat | None
    sigma_matches: bool | None
    passed: bool

    def to_json(self) -> dict:
        return {
            "det_m_prime": str(self.det_m_prime),
            "det_m_tilde": str(self.det_m_tilde),
            "predicted_det_m_tilde": str(self.predicted_det_m_tilde),
            "identity_holds": self.identity_holds,
            "sigma_from_determinants": None
            if self.sigma_from_determinants is None
            else str(self.sigma_from_determinants),
            "sigma_matches": self.sigma_matches,
            "passed": self.passed,
        }


def det_identity_check(data: ExponentData, dep: DependencyData | None = None) -> DetIdentityReport:
    """Check the determinant identity exactly.

    When dep is omitted the relation is solved from scratch, which only needs
    hypothesis ii); a quasi-homogeneous input then degenerates to 0 = 0 and
    the sigma comparison is skipped.
    """
    if dep is not None:
        r, p = dep.r, dep.p
    else:
        r, p = dependency_solution(data)
    sum_p = sum(p)
    d_prime = det(data.matrix_m_prime())
    d_tilde = det(data.matrix_m_tilde())
    sign = Fraction(-1) ** (data.n + 1)
    predicted = sign * (1 - Fraction(sum_p, r)) * d_prime
    identity_holds = d_tilde == predicted
    if d_tilde == 0:
        sigma_det: Rat | None = None
        sigma_matches: bool | None = None
    else:
        sigma_det = sign * d_prime / d_tilde
        sigma_matches = dep.sigma == sigma_det if dep is not None else Fraction(r, r - sum_p) == sigma_det
    return DetIdentityReport(
        det_m_prime=d_prime,
        det_m_tilde=d_tilde,
        predicted_det_m_tilde=predicted,
        identity_holds=identity_holds,
        sigma_from_determinants=sigma_det,
        sigma_matches=sigma_matches,
        passed=identity_holds and sigma_matches is not False,
    )
