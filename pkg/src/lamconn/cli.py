"""Command line front end.

Subcommands: check, analyze, family-a, family-b, propagate, selftest.
Exit codes: 0 on success, 1 on unreadable or malformed input, 2 when a
well-formed input fails validation (rank hypotheses, failed self checks).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import selftest as selftest_mod
from .asymptotics import ExpansionSpec, parse_seed_key, propagate
from .connection import (
    PDE_NORMALIZED,
    PDE_RAW,
    MonomialMu,
    nabla_formula,
    pde_coefficients,
    sigma_tau,
)
from .errors import HypothesisError, InputError
from .exact import parse_rat
from .exponents import ExponentData, dependency, validate_hypotheses
from .families import cross_validate, family_a, family_b, match_family, monodromy_candidates


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _emit(obj: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(obj, indent=2))
    else:
        print("\n".join(lines))


def _cmd_check(args) -> int:
    data = ExponentData.from_json(_load_json(args.file))
    report = validate_hypotheses(data)
    lines = [
        f"rank of bordered matrix: {report.rank_m_tilde} (need {data.n + 2})",
        f"rank of basis matrix:    {report.rank_m_prime} (need {data.n + 1})",
        f"hypotheses: {'pass' if report.passed else 'fail'}",
    ]
    if report.note:
        lines.append(f"note: {report.note}")
    _emit(report.to_json(), args.json, lines)
    if not report.passed:
        for message in report.failure_messages(data.n):
            print(message, file=sys.stderr)
        return 2
    return 0


def _relation_text(data: ExponentData, dep) -> str:
    terms = " + ".join(f"{p}*alpha_{j + 1}" for j, p in enumerate(dep.p))
    return f"{dep.r}*alpha_{data.n + 2} = {terms}"


def _cmd_analyze(args) -> int:
    raw = _load_json(args.file)
    data = ExponentData.from_json(raw)
    report = validate_hypotheses(data)
    if not report.passed:
        for message in report.failure_messages(data.n):
            print(message, file=sys.stderr)
        if args.json:
            print(json.dumps({"hypotheses": report.to_json()}, indent=2))
        return 2
    if "mu" in raw:
        if not isinstance(raw["mu"], list):
            raise InputError("mu must be a list of exponents")
        mu = MonomialMu(beta=tuple(raw["mu"]))
    else:
        mu = MonomialMu.unit(data.n)
    dep = dependency(data)
    st = sigma_tau(data, mu)
    nabla = nabla_formula(st)
    pde = pde_coefficients(st)
    family = match_family(data)

    payload = {
        "hypotheses": report.to_json(),
        "dependency": dep.to_json(),
        "connection": {**pde.to_json(), "mu": mu.to_json(), "nabla": str(nabla)},
    }
    lines = [
        f"hypotheses: pass (bordered rank {report.rank_m_tilde}, basis rank {report.rank_m_prime})",
        f"relation: {_relation_text(data, dep)}",
        f"case {dep.case.value}: d = {dep.d}, h = {dep.h}, sigma = {dep.sigma}, "
        f"lam exponent = {dep.lambda_exponent:+d}",
        f"mu exponents {list(mu.beta)}, degree k = {mu.k}",
        f"sigma = {st.sigma}, tau = {st.tau}",
        f"lam*nabla([mu]) = ({nabla})[mu]",
        f"nabla([mu]) = lam^-1 * ({nabla})[mu]",
        f"pde: {PDE_RAW}",
        f"normalized: {PDE_NORMALIZED} with alpha = {pde.alpha}, beta = {pde.beta}",
    ]
    if family is not None:
        validation = cross_validate(family)
        payload["family"] = family.to_json()
        payload["family"]["cross_validation"] = validation.to_json()
        candidates = ", ".join(str(x) for x in monodromy_candidates(family))
        lines += [
            f"recognized family {family.label()}",
            f"operator = {family.full_operator}",
            f"factored: {family.factored_display()}",
            f"monodromy candidates: {candidates}",
            f"cross validation: {'pass' if validation.passed else 'FAIL'}",
        ]
        if not validation.passed:
            _emit(payload, args.json, lines)
            print("family cross validation failed", file=sys.stderr)
            return 2
    _emit(payload, args.json, lines)
    return 0


def _family_command(result, as_json: bool) -> int:
    validation = cross_validate(result)
    payload = result.to_json()
    payload["cross_validation"] = validation.to_json()
    candidates = ", ".join(str(x) for x in monodromy_candidates(result))
    lines = [
        f"family {result.label()}",
        f"exponents: {result.exponents.to_json()['alphas']}",
        f"operator = {result.full_operator}",
        f"factored: {result.factored_display()}",
        f"top roots: {[str(x) for x in result.roots_top]}",
        f"low roots: {[str(x) for x in result.roots_low]}",
        f"c = {result.c_coeff}, lam exponent = {result.lambda_exponent:+d}",
        f"lam*nabla([1]) = ({result.nabla_one})[1]",
        f"monodromy candidates: {candidates}",
        f"cross validation: {'pass' if validation.passed else 'FAIL'}",
    ]
    _emit(payload, as_json, lines)
    if not validation.passed:
        print("family cross validation failed", file=sys.stderr)
        return 2
    return 0


def _cmd_family_a(args) -> int:
    return _family_command(family_a(args.u, args.v, args.w), args.json)


def _cmd_family_b(args) -> int:
    return _family_command(family_b(args.p, args.q, args.u, args.v), args.json)


def _cmd_propagate(args) -> int:
    raw = _load_json(args.file)
    spec = ExpansionSpec.from_json(raw)
    seed_obj = raw.get("seed", {})
    if not isinstance(seed_obj, dict):
        raise InputError("seed must be an object keyed by 'i,k,m'")
    seed = {}
    for key_text, value in seed_obj.items():
        if not isinstance(value, (str, int)):
            raise InputError(f"seed value for {key_text!r} must be a rational string or integer")
        seed[parse_seed_key(key_text)] = parse_rat(str(value))
    table = propagate(spec, seed)
    lines = [
        f"exponents: {[str(x) for x in spec.rhos]}, log depth {spec.log_depth}, "
        f"order {spec.order}, alpha = {spec.alpha}, beta = {spec.beta}"
    ]
    for (i, k, m), poly in sorted(table.entries.items()):
        lines.append(f"c[{i},{k},{m}] = {poly}")
    _emit(table.to_json(), args.json, lines)
    if args.csv:
        try:
            with open(args.csv, "w", encoding="utf-8", newline="") as handle:
                handle.write(table.to_csv())
        except OSError as exc:
            raise InputError(f"cannot write {args.csv}: {exc.strerror or exc}") from None
        print(f"wrote {args.csv}", file=sys.stderr)
    return 0


def _cmd_selftest(args) -> int:
    results = selftest_mod.run_all()
    if args.json:
        print(
            json.dumps(
                {
                    "passed": all(r.passed for r in results),
                    "criteria": [
                        {
                            "id": r.cid,
                            "description": r.description,
                            "passed": r.passed,
                            "detail": r.detail,
                        }
                        for r in results
                    ],
                },
                indent=2,
            )
        )
    else:
        for result in results:
            print(result.line())
    return 0 if all(r.passed for r in results) else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lamconn",
        description=(
            "Exact connection data, annihilating operators and log expansions "
            "for polynomials with n+2 monomials in n+1 variables and one "
            "lam-weighted monomial."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="validate the rank hypotheses of an exponent file")
    p_check.add_argument("file", help="JSON file with n and alphas")
    p_check.add_argument("--json", action="store_true", help="machine readable output")
    p_check.set_defaults(fn=_cmd_check)

    p_analyze = sub.add_parser("analyze", help="full report for an exponent file")
    p_analyze.add_argument("file", help="JSON file with n, alphas and optional mu")
    p_analyze.add_argument("--json", action="store_true", help="machine readable output")
    p_analyze.set_defaults(fn=_cmd_analyze)

    p_fa = sub.add_parser("family-a", help="closed form for x^2u + y^2v + z^2w + lam*x^u*y^v*z^w")
    p_fa.add_argument("--u", type=int, required=True)
    p_fa.add_argument("--v", type=int, required=True)
    p_fa.add_argument("--w", type=int, required=True)
    p_fa.add_argument("--json", action="store_true", help="machine readable output")
    p_fa.set_defaults(fn=_cmd_family_a)

    p_fb = sub.add_parser(
        "family-b", help="closed form for x^2p*z^u + y^2q*z^v + z^(u+v) + lam*x^p*y^q"
    )
    p_fb.add_argument("--p", type=int, required=True)
    p_fb.add_argument("--q", type=int, required=True)
    p_fb.add_argument("--u", type=int, required=True)
    p_fb.add_argument("--v", type=int, required=True)
    p_fb.add_argument("--json", action="store_true", help="machine readable output")
    p_fb.set_defaults(fn=_cmd_family_b)

    p_prop = sub.add_parser("propagate", help="propagate log expansion coefficients")
    p_prop.add_argument("file", help="JSON file with rhos, N, M, alpha, beta, seed")
    p_prop.add_argument("--json", action="store_true", help="machine readable output")
    p_prop.add_argument("--csv", metavar="PATH", help="also write the table as CSV")
    p_prop.set_defaults(fn=_cmd_propagate)

    p_self = sub.add_parser("selftest", help="run the built-in verification battery")
    p_self.add_argument("--json", action="store_true", help="machine readable output")
    p_self.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except HypothesisError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
