"""Built-in verification battery.

Each criterion is a self-contained check with its own frozen expectations or
seeded random corpus.  The CLI selftest command runs them all and the test
suite asserts them one by one; every comparison here is exact, no tolerances.
"""

from __future__ import annotations

import contextlib
import io
import json
import os
import random
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable

from .algebra import ABElement, HomogeneousPart, linear_factor_product, shift_identity_check
from .asymptotics import ExpansionSpec, LogPoly, propagate, verify_table
from .errors import InputError
from .connection import MonomialMu, nabla_formula, push_nabla, sigma_tau
from .exact import LaurentPoly, det
from .exponents import Case, ExponentData, dependency, validate_hypotheses
from .families import family_a, family_b, cross_validate, monodromy_candidates

QUASI_HOMOGENEOUS_CUBE = {
    "n": 2,
    "alphas": [[3, 0, 0], [0, 3, 0], [0, 0, 3], [1, 1, 1]],
}


@dataclass(frozen=True)
class CriterionResult:
    cid: int
    description: str
    passed: bool
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.cid:2d} ({self.description}): {self.detail}"


def random_exponent_data(rng: random.Random, max_n: int = 3, bound: int = 9) -> ExponentData:
    """A random exponent layout passing both hypotheses, last column nonzero."""
    while True:
        n = rng.randint(1, max_n)
        alphas = tuple(
            tuple(rng.randint(0, bound) for _ in range(n + 1)) for _ in range(n + 2)
        )
        if len(set(alphas)) != n + 2 or not any(alphas[-1]):
            continue
        data = ExponentData(n=n, alphas=alphas)
        if validate_hypotheses(data).passed:
            return data


def random_rat(rng: random.Random, num_bound: int = 9, den_bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, den_bound))


def random_homogeneous(rng: random.Random, max_degree: int = 4) -> HomogeneousPart:
    degree = rng.randint(0, max_degree)
    terms = {}
    for i in range(degree + 1):
        if rng.random() < 0.75:
            terms[(i, degree - i)] = random_rat(rng)
    return HomogeneousPart(degree, ABElement(terms))


def random_expansion_spec(rng: random.Random) -> ExpansionSpec:
    while True:
        count = rng.randint(1, 2)
        rhos = []
        for _ in range(count):
            value = Fraction(rng.randint(-3, 12), rng.randint(1, 6))
            if value > -1:
                rhos.append(value)
        if len(rhos) != count:
            continue
        try:
            return ExpansionSpec(
                rhos=tuple(rhos),
                log_depth=rng.randint(0, 3),
                order=rng.randint(0, 8),
                alpha=random_rat(rng, 5, 5),
                beta=random_rat(rng, 5, 5),
            )
        except InputError:
            # congruent exponents drawn; try again
            continue


def random_seed_map(rng: random.Random, spec: ExpansionSpec) -> dict:
    seed = {}
    for _ in range(rng.randint(1, 6)):
        key = (
            rng.randrange(len(spec.rhos)),
            rng.randint(0, spec.log_depth),
            rng.randint(0, spec.order),
        )
        seed[key] = random_rat(rng, 6, 6)
    return seed


def _check_golden_a() -> tuple[bool, str]:
    result = family_a(2, 2, 1)
    lam_m2 = LaurentPoly.lam_power(-2, Fraction(-4))
    inner = linear_factor_product([Fraction(7, 4), Fraction(3, 4)]) + linear_factor_product(
        [Fraction(1)]
    ).scale(lam_m2)
    expected_operator = linear_factor_product([Fraction(5, 2)]) * inner
    expected_nabla = ABElement.parse("2*a - 2*b")
    ok_op = result.full_operator == expected_operator
    ok_nabla = result.nabla_one == expected_nabla
    st = sigma_tau(result.exponents, MonomialMu.unit(2))
    ok_route = nabla_formula(st) == expected_nabla
    detail = f"operator match {ok_op}, nabla match {ok_nabla}, matrix route {ok_route}"
    return ok_op and ok_nabla and ok_route, detail


def _check_golden_b() -> tuple[bool, str]:
    result = family_b(2, 2, 1, 1)
    lam_p2 = LaurentPoly.lam_power(2, Fraction(-4))
    expected_operator = linear_factor_product(
        [Fraction(5, 2), Fraction(5, 4), Fraction(3, 4)]
    ) + linear_factor_product([Fraction(2), Fraction(1)]).scale(lam_p2)
    expected_nabla = ABElement.parse("-2*a + 3/2*b")
    ok_op = result.full_operator == expected_operator
    ok_nabla = result.nabla_one == expected_nabla
    st = sigma_tau(result.exponents, MonomialMu.unit(2))
    ok_route = nabla_formula(st) == expected_nabla
    detail = f"operator match {ok_op}, nabla match {ok_nabla}, matrix route {ok_route}"
    return ok_op and ok_nabla and ok_route, detail


def _check_case_data() -> tuple[bool, str]:
    dep_a = dependency(family_a(2, 2, 1).exponents)
    dep_b = dependency(family_b(2, 2, 1, 1).exponents)
    ok_a = (
        dep_a.case is Case.CASE_II
        and dep_a.sigma == -2
        and (dep_a.r, dep_a.p, dep_a.d, dep_a.h) == (2, (1, 1, 1), 2, 1)
        and dep_a.lambda_exponent == -2
    )
    ok_b = (
        dep_b.case is Case.CASE_I
        and dep_b.sigma == 2
        and (dep_b.r, dep_b.p, dep_b.d, dep_b.h) == (2, (1, 1, -1), 2, 1)
        and dep_b.lambda_exponent == 2
    )
    return ok_a and ok_b, f"first layout {dep_a.to_json()}, second layout {dep_b.to_json()}"


def _sigma_corpus(count: int = 200, seed: int = 20260822):
    rng = random.Random(seed)
    return [random_exponent_data(rng) for _ in range(count)]


def _check_sigma_routes() -> tuple[bool, str]:
    corpus = _sigma_corpus()
    for data in corpus:
        dep = dependency(data)
        st = sigma_tau(data, MonomialMu.unit(data.n))
        det_route = Fraction(-1) ** (data.n + 1) * det(data.matrix_m_prime()) / det(
            data.matrix_m_tilde()
        )
        relation_route = Fraction(dep.r, dep.r - dep.sum_p)
        if not (st.sigma == det_route == relation_route == dep.sigma):
            return False, f"disagreement on {data.to_json()}"
    return True, f"three sigma routes agree on {len(corpus)} random layouts"


def _check_det_identity() -> tuple[bool, str]:
    corpus = _sigma_corpus()
    for data in corpus:
        dep = dependency(data)
        lhs = det(data.matrix_m_tilde())
        rhs = Fraction(-1) ** (data.n + 1) * (1 - Fraction(dep.sum_p, dep.r)) * det(
            data.matrix_m_prime()
        )
        if lhs != rhs:
            return False, f"identity fails on {data.to_json()}"
    return True, f"determinant identity exact on {len(corpus)} random layouts"


def _check_shift_identity() -> tuple[bool, str]:
    rng = random.Random(31418)
    count = 200
    for _ in range(count):
        q = random_homogeneous(rng)
        mu = random_rat(rng)
        left, right = shift_identity_check(q, mu)
        if left != right:
            return False, f"shift identity fails for degree {q.degree}, mu = {mu}"
    return True, f"shift identity exact on {count} random homogeneous elements"


def _family_instances(limit: int):
    for u, v, w in product(range(1, limit + 1), repeat=3):
        yield family_a(u, v, w)
    for p, q, u, v in product(range(1, limit + 1), repeat=4):
        yield family_b(p, q, u, v)


def _check_uniform_shift() -> tuple[bool, str]:
    count = 0
    for result in _family_instances(4):
        data = result.exponents
        dep = dependency(data)
        st = sigma_tau(data, MonomialMu.unit(data.n))
        shift = st.tau - st.mu.k * st.sigma - (dep.d + dep.h) * st.sigma
        op = -(
            ABElement.gen_a().scale(st.sigma) + ABElement.gen_b().scale(shift)
        )
        if push_nabla(result.full_operator, st) != op * result.full_operator:
            return False, f"uniform shift fails for {result.label()}"
        count += 1
    return True, f"lam*nabla maps the operator to a single left factor on {count} instances"


def _check_family_grids() -> tuple[bool, str]:
    count = 0
    for u, v, w in product(range(1, 5), repeat=3):
        report = cross_validate(family_a(u, v, w))
        if not report.passed:
            return False, f"cross validation fails for {report.label}: {report.to_json()}"
        count += 1
    for p, q, u, v in product(range(1, 4), repeat=4):
        report = cross_validate(family_b(p, q, u, v))
        if not report.passed:
            return False, f"cross validation fails for {report.label}: {report.to_json()}"
        count += 1
    return True, f"closed forms match matrix data on {count} instances"


def _check_asymptotics() -> tuple[bool, str]:
    golden_spec = ExpansionSpec(
        rhos=(Fraction(1, 2),), log_depth=0, order=2, alpha=Fraction(1), beta=Fraction(0)
    )
    table = propagate(golden_spec, {(0, 0, 0): Fraction(1)})
    if table.get(0, 0, 1) != LogPoly({1: Fraction(1, 3)}):
        return False, f"c[0,0,1] = {table.get(0, 0, 1)}, expected L/3"
    if table.get(0, 0, 2) != LogPoly({2: Fraction(1, 10)}):
        return False, f"c[0,0,2] = {table.get(0, 0, 2)}, expected L^2/10"

    rng = random.Random(27182)
    checked = 0
    for _ in range(100):
        spec = random_expansion_spec(rng)
        seed = random_seed_map(rng, spec)
        table = propagate(spec, seed)
        for (i, k, m), poly in table.entries.items():
            if poly.degree() > m:
                return False, f"degree bound violated at {(i, k, m)}: {poly}"
            expected_at_zero = Fraction(seed.get((i, k, m), 0))
            if poly.constant_term() != expected_at_zero:
                return False, f"seed not reproduced at L = 0 for {(i, k, m)}"
        if not verify_table(spec, table).passed:
            return False, f"nonzero residual for spec {spec.to_json()}"
        other = random_seed_map(rng, spec)
        combined = dict(seed)
        for key, value in other.items():
            combined[key] = combined.get(key, Fraction(0)) + value
        lhs = propagate(spec, combined)
        rhs_a, rhs_b = propagate(spec, seed), propagate(spec, other)
        keys = set(lhs.entries) | set(rhs_a.entries) | set(rhs_b.entries)
        for key in keys:
            if lhs.entries.get(key, LogPoly.zero()) != rhs_a.entries.get(
                key, LogPoly.zero()
            ) + rhs_b.entries.get(key, LogPoly.zero()):
                return False, f"propagation is not additive in the seed at {key}"
        checked += 1
    return True, f"golden values, degree bound, residuals and additivity on {checked} random specs"


def _check_hypothesis_gate() -> tuple[bool, str]:
    from . import cli

    data = ExponentData.from_json(QUASI_HOMOGENEOUS_CUBE)
    report = validate_hypotheses(data)
    ok_report = report.rank_m_tilde == 3 and not report.passed and report.basis_ok
    fd, path = tempfile.mkstemp(suffix=".json")
    try:
        with os.fdopen(fd, "w") as handle:
            json.dump(QUASI_HOMOGENEOUS_CUBE, handle)
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = cli.main(["check", path])
        message_ok = "hypothesis i) fails: rank 3 < 4" in (out.getvalue() + err.getvalue())
        return (
            ok_report and code == 2 and message_ok,
            f"rank {report.rank_m_tilde}, exit code {code}, message shown {message_ok}",
        )
    finally:
        os.unlink(path)


def _check_monodromy_candidates() -> tuple[bool, str]:
    cand_a = monodromy_candidates(family_a(2, 2, 1))
    cand_b = monodromy_candidates(family_b(2, 2, 1, 1))
    ok = cand_a == [Fraction(1, 2), Fraction(0)] and cand_b == [Fraction(0), Fraction(0)]
    return ok, f"first layout {[str(x) for x in cand_a]}, second layout {[str(x) for x in cand_b]}"


CRITERIA: tuple[tuple[int, str, Callable[[], tuple[bool, str]]], ...] = (
    (1, "golden operator and connection, first layout (2,2,1)", _check_golden_a),
    (2, "golden operator and connection, second layout (2,2,1,1)", _check_golden_b),
    (3, "case split, sigma and relation data for both layouts", _check_case_data),
    (4, "sigma agrees along matrix, determinant and relation routes", _check_sigma_routes),
    (5, "bordered determinant identity on the random corpus", _check_det_identity),
    (6, "conjugation shift identity on random homogeneous elements", _check_shift_identity),
    (7, "uniform left factor under lam*nabla across both parameter grids", _check_uniform_shift),
    (8, "closed forms cross validated against matrix data on full grids", _check_family_grids),
    (9, "log coefficient propagation: golden values and invariants", _check_asymptotics),
    (10, "quasi-homogeneous input rejected with rank report and exit code 2", _check_hypothesis_gate),
    (11, "monodromy candidate exponents for both golden instances", _check_monodromy_candidates),
)


def run_criterion(cid: int) -> CriterionResult:
    for num, description, fn in CRITERIA:
        if num == cid:
            passed, detail = fn()
            return CriterionResult(cid=num, description=description, passed=passed, detail=detail)
    raise KeyError(f"no criterion {cid}")


def run_all() -> list[CriterionResult]:
    results = []
    for num, description, fn in CRITERIA:
        passed, detail = fn()
        results.append(CriterionResult(cid=num, description=description, passed=passed, detail=detail))
    return results
