"""Exact scalar arithmetic: rationals, Laurent polynomials in lam, rational matrices.

Every quantity in this package is an exact rational; floats are never
introduced.  Rationals are stdlib ``fractions.Fraction`` values, which already
guarantee a positive denominator, full reduction and a unique zero.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, InputError, SingularMatrixError

Rat = Fraction

_RAT_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def rat(numerator: int | Rat, denominator: int = 1) -> Rat:
    return Fraction(numerator, denominator)


def parse_rat(text: str) -> Rat:
    """Parse "p" or "p/q" with q > 0.  Anything else (floats included) is rejected."""
    m = _RAT_RE.match(text.strip())
    if m is None:
        raise InputError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise InputError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rat(x: Rat) -> str:
    return str(x)


class LaurentPoly:
    """Polynomial in lam and lam^-1 with Fraction coefficients.

    Stored sparsely as exponent -> coefficient with zero coefficients pruned,
    so equality of the term maps is equality of the polynomials.  Instances
    are treated as immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Rat | int] | None = None):
        clean: dict[int, Rat] = {}
        if terms:
            for e, c in terms.items():
                if not isinstance(e, int):
                    raise InputError(f"exponent must be an integer, got {e!r}")
                c = Fraction(c)
                if c != 0:
                    clean[e] = c
        self._terms = clean

    @classmethod
    def const(cls, c: Rat | int) -> "LaurentPoly":
        return cls({0: Fraction(c)})

    @classmethod
    def lam_power(cls, e: int, c: Rat | int = 1) -> "LaurentPoly":
        return cls({e: Fraction(c)})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @property
    def terms(self) -> dict[int, Rat]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_const(self) -> bool:
        return set(self._terms) <= {0}

    def const_value(self) -> Rat:
        if not self.is_const():
            raise InputError(f"not a constant: {self}")
        return self._terms.get(0, Fraction(0))

    def coefficient(self, e: int) -> Rat:
        return self._terms.get(e, Fraction(0))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __mul__(self, other: "LaurentPoly | Rat | int") -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            out: dict[int, Rat] = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    e = e1 + e2
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
            return LaurentPoly(out)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c: Rat | int) -> "LaurentPoly":
        c = Fraction(c)
        return LaurentPoly({e: v * c for e, v in self._terms.items()})

    def theta(self) -> "LaurentPoly":
        """Apply the Euler operator lam * d/dlam, i.e. lam^t -> t * lam^t."""
        return LaurentPoly({e: e * c for e, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for e in sorted(self._terms):
            c = self._terms[e]
            body = _lam_term(abs(c), e)
            if not chunks:
                chunks.append(body if c > 0 else "-" + body)
            else:
                chunks.append((" + " if c > 0 else " - ") + body)
        return "".join(chunks)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse the serialized form, e.g. "-4*lam^-2 + 1" or "lam"."""
        out = cls.zero()
        for sign, term in split_terms(text, "Laurent polynomial"):
            coeff, lam_exp = parse_lam_term(term)
            out = out + LaurentPoly.lam_power(lam_exp, sign * coeff)
        return out

    def to_json(self) -> str:
        return str(self)


def _lam_term(c: Rat, e: int) -> str:
    if e == 0:
        return str(c)
    lam = "lam" if e == 1 else f"lam^{e}"
    return lam if c == 1 else f"{c}*{lam}"


def split_terms(text: str, what: str) -> list[tuple[int, str]]:
    """Split on top-level + and - into (sign, chunk) pairs."""
    text = text.strip()
    if not text:
        raise InputError(f"empty {what}")
    if text == "0":
        return []
    pieces: list[tuple[int, str]] = []
    depth = 0
    sign = 1
    current: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise InputError(f"unbalanced parentheses in {what}: {text!r}")
        if depth == 0 and ch in "+-" and current and current[-1] not in "*^/+-eE([":
            pieces.append((sign, "".join(current).strip()))
            sign = 1 if ch == "+" else -1
            current = []
        elif depth == 0 and ch in "+-" and not "".join(current).strip():
            # leading sign of the chunk
            sign = sign if ch == "+" else -sign
        else:
            current.append(ch)
        i += 1
    if depth != 0:
        raise InputError(f"unbalanced parentheses in {what}: {text!r}")
    last = "".join(current).strip()
    if not last:
        raise InputError(f"dangling operator in {what}: {text!r}")
    pieces.append((sign, last))
    return pieces


def parse_lam_term(term: str) -> tuple[Rat, int]:
    """Parse a product of rational and lam-power factors into (coefficient, exponent)."""
    coeff = Fraction(1)
    lam_exp = 0
    for factor in split_factors(term):
        if factor.startswith("("):
            raise InputError(f"nested parentheses not allowed here: {term!r}")
        m = re.match(r"^lam(?:\^(-?\d+))?$", factor)
        if m is not None:
            lam_exp += int(m.group(1)) if m.group(1) is not None else 1
        else:
            coeff *= parse_rat(factor)
    return coeff, lam_exp


def split_factors(term: str) -> list[str]:
    factors: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in term:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "*" and depth == 0:
            factors.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    factors.append("".join(current).strip())
    if any(not f for f in factors):
        raise InputError(f"empty factor in {term!r}")
    return factors


class RatMatrix:
    """Dense matrix of Fractions with exact elimination-based operations."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[Rat | int]]):
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise DimensionError("matrix must have at least one row and column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise DimensionError("ragged rows in matrix")
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[Rat | int]]) -> "RatMatrix":
        height = len(cols[0])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(height)])

    def entry(self, i: int, j: int) -> Rat:
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Rat, ...]:
        return self._rows[i]

    def rows(self) -> tuple[tuple[Rat, ...], ...]:
        return self._rows

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise DimensionError("inner dimensions differ")
        return RatMatrix(
            [
                [
                    sum((self._rows[i][k] * other._rows[k][j] for k in range(self.ncols)), Fraction(0))
                    for j in range(other.ncols)
                ]
                for i in range(self.nrows)
            ]
        )

    def apply(self, vec: Sequence[Rat | int]) -> list[Rat]:
        if len(vec) != self.ncols:
            raise DimensionError("vector length does not match column count")
        v = [Fraction(x) for x in vec]
        return [sum((row[k] * v[k] for k in range(self.ncols)), Fraction(0)) for row in self._rows]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._rows)
        return f"RatMatrix[{body}]"


def det(m: RatMatrix) -> Rat:
    """Determinant by fraction-exact Gaussian elimination."""
    if not m.is_square():
        raise DimensionError("determinant needs a square matrix")
    n = m.nrows
    rows = [list(r) for r in m.rows()]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            sign = -sign
        pval = rows[col][col]
        result *= pval
        for r in range(col + 1, n):
            factor = rows[r][col] / pval
            if factor == 0:
                continue
            rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return sign * result


def rank(m: RatMatrix) -> int:
    rows = [list(r) for r in m.rows()]
    rk = 0
    for col in range(m.ncols):
        pivot = next((r for r in range(rk, m.nrows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rk], rows[pivot] = rows[pivot], rows[rk]
        pval = rows[rk][col]
        for r in range(rk + 1, m.nrows):
            factor = rows[r][col] / pval
            if factor != 0:
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rk])]
        rk += 1
        if rk == m.nrows:
            break
    return rk


def invert(m: RatMatrix) -> RatMatrix:
    """Inverse by Gauss-Jordan elimination; raises SingularMatrixError when det = 0."""
    if not m.is_square():
        raise DimensionError("inverse needs a square matrix")
    n = m.nrows
    rows = [list(r) + [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i, r in enumerate(m.rows())]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError()
        rows[col], rows[pivot] = rows[pivot], rows[col]
        pval = rows[col][col]
        rows[col] = [x / pval for x in rows[col]]
        for r in range(n):
            if r == col:
                continue
            factor = rows[r][col]
            if factor != 0:
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return RatMatrix([row[n:] for row in rows])


def solve(m: RatMatrix, rhs: Sequence[Rat | int]) -> list[Rat]:
    """Solve m * x = rhs for square invertible m."""
    if not m.is_square():
        raise DimensionError("solve needs a square matrix")
    if len(rhs) != m.nrows:
        raise DimensionError("right-hand side length does not match")
    n = m.nrows
    rows = [list(r) + [Fraction(v)] for r, v in zip(m.rows(), rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError()
        rows[col], rows[pivot] = rows[pivot], rows[col]
        pval = rows[col][col]
        rows[col] = [x / pval for x in rows[col]]
        for r in range(n):
            if r == col:
                continue
            factor = rows[r][col]
            if factor != 0:
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]
