"""Order-by-order propagation of log coefficients along the parameter.

A solution of lam*d/dlam d/ds phi = alpha*s*d(phi)/ds + beta*phi is expanded
as sum over exponents rho_i, log depths k and orders m of

    c[i,k,m](lam) * s^(m + rho_i) * (Log s)^k / k!

Matching powers of s gives, for each i independently,

    (m + rho_i + 1) * D[i,k,m+1] + D[i,k+1,m+1]
        = (alpha*(m + rho_i) + beta) * c[i,k,m] + alpha * c[i,k+1,m]

where D is lam*d/dlam of c.  In the variable L = Log(lam/lam0) that Euler
derivative is plain d/dL, so each step solves for D descending in k (depth
N+1 is zero), integrates in L, and adds the free integration constant
supplied by the seed.  Degrees in L grow by at most one per order, hence
deg c[i,k,m] <= m.

Exponents are required pairwise non-congruent mod 1: congruent exponents
would couple their ladders and the per-i propagation would no longer be
well defined, so such input is rejected outright.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import InputError
from .exact import Rat, parse_rat

SeedKey = tuple[int, int, int]


class LogPoly:
    """Polynomial in L = Log(lam/lam0) with Fraction coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, Rat | int] | None = None):
        clean: dict[int, Rat] = {}
        if coeffs:
            for e, c in coeffs.items():
                if not isinstance(e, int) or e < 0:
                    raise InputError(f"log degree must be a nonnegative integer, got {e!r}")
                c = Fraction(c)
                if c != 0:
                    clean[e] = c
        self._coeffs = clean

    @classmethod
    def const(cls, c: Rat | int) -> "LogPoly":
        return cls({0: Fraction(c)})

    @classmethod
    def zero(cls) -> "LogPoly":
        return cls()

    @property
    def coeffs(self) -> dict[int, Rat]:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def degree(self) -> int:
        """Degree in L; the zero polynomial has degree -1 by convention."""
        return max(self._coeffs, default=-1)

    def constant_term(self) -> Rat:
        """The value at L = 0."""
        return self._coeffs.get(0, Fraction(0))

    def __add__(self, other: "LogPoly") -> "LogPoly":
        if not isinstance(other, LogPoly):
            return NotImplemented
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LogPoly(out)

    def __sub__(self, other: "LogPoly") -> "LogPoly":
        return self + (-other)

    def __neg__(self) -> "LogPoly":
        return LogPoly({e: -c for e, c in self._coeffs.items()})

    def scale(self, c: Rat | int) -> "LogPoly":
        c = Fraction(c)
        return LogPoly({e: v * c for e, v in self._coeffs.items()})

    def deriv(self) -> "LogPoly":
        """d/dL, which is lam*d/dlam on coefficient functions of lam."""
        return LogPoly({e - 1: e * c for e, c in self._coeffs.items() if e > 0})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LogPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == LogPoly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        chunks: list[str] = []
        for e in sorted(self._coeffs):
            c = self._coeffs[e]
            if e == 0:
                body = str(abs(c))
            else:
                var = "L" if e == 1 else f"L^{e}"
                body = var if abs(c) == 1 else f"{abs(c)}*{var}"
            if not chunks:
                chunks.append(body if c > 0 else "-" + body)
            else:
                chunks.append((" + " if c > 0 else " - ") + body)
        return "".join(chunks)

    def __repr__(self) -> str:
        return f"LogPoly({self})"

    def to_json(self) -> dict[str, str]:
        return {str(e): str(c) for e, c in sorted(self._coeffs.items())}


def integrate_log(d: LogPoly) -> LogPoly:
    """Antiderivative in L with zero constant term: L^e -> L^(e+1)/(e+1)."""
    return LogPoly({e + 1: c / (e + 1) for e, c in d.coeffs.items()})


@dataclass(frozen=True)
class ExpansionSpec:
    """Exponents, log depth, order cutoff and normalized PDE coefficients."""

    rhos: tuple[Rat, ...]
    log_depth: int
    order: int
    alpha: Rat
    beta: Rat

    def __post_init__(self):
        rhos = tuple(Fraction(x) for x in self.rhos)
        object.__setattr__(self, "rhos", rhos)
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if not rhos:
            raise InputError("at least one exponent rho is required")
        for name, value in (("log depth", self.log_depth), ("order", self.order)):
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise InputError(f"{name} must be a nonnegative integer, got {value!r}")
        for x in rhos:
            if x <= -1:
                raise InputError(f"every exponent must exceed -1, got {x}")
        for i in range(len(rhos)):
            for j in range(i + 1, len(rhos)):
                if (rhos[i] - rhos[j]).denominator == 1:
                    raise InputError(
                        f"exponents {rhos[i]} and {rhos[j]} are congruent mod 1; "
                        "their ladders would overlap"
                    )

    @classmethod
    def from_json(cls, obj) -> "ExpansionSpec":
        if not isinstance(obj, dict):
            raise InputError("expansion input must be a JSON object")
        missing = {"rhos", "N", "M", "alpha", "beta"} - set(obj)
        if missing:
            raise InputError(f"missing keys: {sorted(missing)}")
        if not isinstance(obj["rhos"], list):
            raise InputError("rhos must be a list")
        if not isinstance(obj["N"], int) or not isinstance(obj["M"], int):
            raise InputError("N and M must be integers")
        return cls(
            rhos=tuple(_json_rat(x) for x in obj["rhos"]),
            log_depth=obj["N"],
            order=obj["M"],
            alpha=_json_rat(obj["alpha"]),
            beta=_json_rat(obj["beta"]),
        )

    def to_json(self) -> dict:
        return {
            "rhos": [str(x) for x in self.rhos],
            "N": self.log_depth,
            "M": self.order,
            "alpha": str(self.alpha),
            "beta": str(self.beta),
        }


def _json_rat(value) -> Rat:
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise InputError(f"not a rational: {value!r}")


def parse_seed_key(text: str) -> SeedKey:
    parts = text.split(",")
    if len(parts) != 3:
        raise InputError(f"seed key must be 'i,k,m', got {text!r}")
    try:
        i, k, m = (int(x) for x in parts)
    except ValueError:
        raise InputError(f"seed key must contain integers, got {text!r}") from None
    return i, k, m


@dataclass(frozen=True)
class ExpansionTable:
    """Coefficients c[i,k,m] as polynomials in L, keyed by (i, k, m)."""

    spec: ExpansionSpec
    entries: dict[SeedKey, LogPoly] = field(default_factory=dict)

    def get(self, i: int, k: int, m: int) -> LogPoly:
        return self.entries.get((i, k, m), LogPoly.zero())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExpansionTable):
            return NotImplemented
        keys = set(self.entries) | set(other.entries)
        return self.spec == other.spec and all(
            self.entries.get(key, LogPoly.zero()) == other.entries.get(key, LogPoly.zero())
            for key in keys
        )

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "table": {
                f"{i},{k},{m}": poly.to_json()
                for (i, k, m), poly in sorted(self.entries.items())
            },
        }

    def to_csv(self) -> str:
        """One row per (i, k, m); columns are the coefficients of L^0, L^1, ..."""
        width = max((poly.degree() for poly in self.entries.values()), default=-1) + 1
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["i", "k", "m"] + [f"L^{e}" for e in range(width)])
        for (i, k, m), poly in sorted(self.entries.items()):
            coeffs = poly.coeffs
            writer.writerow([i, k, m] + [str(coeffs.get(e, Fraction(0))) for e in range(width)])
        return buf.getvalue()


def _check_seed(spec: ExpansionSpec, seed: Mapping[SeedKey, Rat | int]) -> dict[SeedKey, Rat]:
    clean: dict[SeedKey, Rat] = {}
    for key, value in seed.items():
        try:
            i, k, m = key
        except (TypeError, ValueError):
            raise InputError(f"seed key must be an (i, k, m) triple, got {key!r}") from None
        if not (0 <= i < len(spec.rhos)):
            raise InputError(f"seed index i={i} out of range")
        if not (0 <= k <= spec.log_depth):
            raise InputError(f"seed log depth k={k} out of range")
        if not (0 <= m <= spec.order):
            raise InputError(f"seed order m={m} out of range")
        value = Fraction(value)
        if value != 0:
            clean[key] = value
    return clean


def propagate(spec: ExpansionSpec, seed: Mapping[SeedKey, Rat | int]) -> ExpansionTable:
    """Fill the whole table from the seed constants.

    Missing seed entries default to zero.  Each order is produced by solving
    the matched-power relation for the Euler derivatives top depth first,
    integrating in L and adding the seed constant of the next order.
    """
    clean_seed = _check_seed(spec, seed)
    entries: dict[SeedKey, LogPoly] = {}
    n_depth = spec.log_depth
    for i, rho in enumerate(spec.rhos):
        current: list[LogPoly] = [
            LogPoly.const(clean_seed.get((i, k, 0), Fraction(0))) for k in range(n_depth + 1)
        ]
        for k, poly in enumerate(current):
            entries[(i, k, 0)] = poly
        for m in range(spec.order):
            factor = spec.alpha * (m + rho) + spec.beta
            nxt: list[LogPoly] = [LogPoly.zero()] * (n_depth + 1)
            d_above = LogPoly.zero()
            for k in range(n_depth, -1, -1):
                above = current[k + 1] if k < n_depth else LogPoly.zero()
                rhs = current[k].scale(factor) + above.scale(spec.alpha) - d_above
                d_here = rhs.scale(1 / (m + rho + 1))
                nxt[k] = LogPoly.const(clean_seed.get((i, k, m + 1), Fraction(0))) + integrate_log(d_here)
                d_above = d_here
            current = nxt
            for k, poly in enumerate(current):
                entries[(i, k, m + 1)] = poly
    return ExpansionTable(spec=spec, entries=entries)


@dataclass(frozen=True)
class ResidualReport:
    """Exact residuals of the matched-power relation; empty means the table checks out."""

    residuals: dict[SeedKey, LogPoly]

    @property
    def passed(self) -> bool:
        return not self.residuals

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "residuals": {
                f"{i},{k},{m}": poly.to_json()
                for (i, k, m), poly in sorted(self.residuals.items())
            },
        }


def verify_table(spec: ExpansionSpec, table: ExpansionTable) -> ResidualReport:
    """Substitute the table into the relation linking order m to m+1.

    The residual keyed (i, k, m) collects every term of that relation moved
    to one side; an order cutoff of zero verifies vacuously.
    """
    residuals: dict[SeedKey, LogPoly] = {}
    for i, rho in enumerate(spec.rhos):
        for m in range(spec.order):
            factor = spec.alpha * (m + rho) + spec.beta
            for k in range(spec.log_depth + 1):
                above_next = (
                    table.get(i, k + 1, m + 1) if k < spec.log_depth else LogPoly.zero()
                )
                above_cur = table.get(i, k + 1, m) if k < spec.log_depth else LogPoly.zero()
                res = (
                    table.get(i, k, m + 1).deriv().scale(m + rho + 1)
                    + above_next.deriv()
                    - table.get(i, k, m).scale(factor)
                    - above_cur.scale(spec.alpha)
                )
                if not res.is_zero():
                    residuals[(i, k, m)] = res
    return ResidualReport(residuals=residuals)
