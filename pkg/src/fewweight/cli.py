"""Command-line front end.

Exit codes: 0 success, 2 validation error, 3 cap exceeded, 4 verification
mismatch, 5 internal assertion (e.g. a non-integral predicted weight).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import analysis
from .catalog import REFERENCE_CODES
from .code import build_code, validate_spec
from .config import Caps
from .cyclotomy import (
    TOL,
    closed_form_branch,
    gauss_periods_closed_form,
    gauss_periods_direct,
    period_bound_check,
)
from .errors import FewWeightError, SpecError
from .finite_field import build_field, prime_power
from .report import (
    BoundModel,
    ClosedPeriod,
    DirectPeriod,
    Distributions,
    ExampleRow,
    PeriodsModel,
    ReportDocument,
    code_model,
    comparison_model,
    distribution_model,
    field_model,
    optimality_model,
    render,
    spec_model,
    sss_model,
)

COMMANDS = ("construct", "analyze", "predict", "compare", "verify-paper", "periods")


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    s: int | None = None
    m: int | None = None
    m1: int | None = None
    h: int | None = None
    n: int | None = None
    output_format: str = "json"
    output_path: str | None = None
    caps: Caps = field(default_factory=Caps.from_env)
    period_source: str = "auto"
    workers: int = 1
    timing: bool = False
    q: int | None = None
    N: int | None = None
    perturb_period: tuple[int, Fraction] | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise SpecError("command", f"unknown command {self.command!r}")

    def spec(self):
        missing = [k for k in ("p", "s", "m", "m1", "h", "n") if getattr(self, k) is None]
        if missing:
            raise SpecError("missing_parameter", f"missing spec flags: {', '.join('--' + k for k in missing)}")
        return validate_spec(self.p, self.s, self.m, self.m1, self.h, self.n, self.caps.field)


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.marks: dict[str, float] = {}
        self._t = time.perf_counter()

    def lap(self, name: str) -> None:
        now = time.perf_counter()
        self.marks[name] = round(now - self._t, 6)
        self._t = now

    def result(self) -> dict[str, float] | None:
        return self.marks if self.enabled else None


def _bound_model(spec, code, wd) -> BoundModel:
    a0 = analysis.a_zero_min_weight(code)
    if not analysis.bound_applies(spec):
        return BoundModel(applicable=False, lower_bound=None, measured_d=wd.min_distance, holds=None, a_zero_min_weight=a0, holds_for_a_zero_words=None)
    lb = analysis.minimum_distance_lower_bound(spec)
    return BoundModel(
        applicable=True,
        lower_bound=lb,
        measured_d=wd.min_distance,
        holds=lb <= wd.min_distance,
        a_zero_min_weight=a0,
        holds_for_a_zero_words=None if a0 is None else lb <= a0,
    )


def cmd_construct(config: RunConfig) -> ReportDocument:
    spec = config.spec()
    code = build_code(spec, config.caps.field)
    return ReportDocument(command="construct", spec=spec_model(spec), field=field_model(code.ctx), code=code_model(code))


def _predicted(config: RunConfig, spec):
    periods = None
    if config.perturb_period is not None:
        etas, _ = analysis.gauss_periods_for_spec(spec, config.period_source, config.caps.field)
        i, delta = config.perturb_period
        etas[i % spec.h] += delta
        periods = etas
    try:
        return analysis.predicted_distribution(spec, config.period_source, periods, config.caps.field)
    except FewWeightError:
        if periods is None:
            raise
        # a corrupted period may not even give integral weights; report that as a mismatch
        return None


def cmd_predict(config: RunConfig) -> ReportDocument:
    clock = _Clock(config.timing)
    spec = config.spec()
    code = build_code(spec, config.caps.field)
    pred = analysis.predicted_distribution(spec, config.period_source, field_cap=config.caps.field)
    wd = pred.to_weight_distribution()
    clock.lap("predict")
    return ReportDocument(
        command="predict",
        spec=spec_model(spec),
        field=field_model(code.ctx),
        code=code_model(code),
        distributions=Distributions(predicted=distribution_model(wd, pred.gauss_source, pred)),
        enumerator=wd.enumerator(),
        timing=clock.result(),
    )


def cmd_analyze(config: RunConfig) -> ReportDocument:
    clock = _Clock(config.timing)
    spec = config.spec()
    code = build_code(spec, config.caps.field)
    wd = analysis.weight_distribution_bruteforce(code, config.caps.enumeration, config.workers)
    clock.lap("enumerate")
    opt = analysis.griesmer_report(code.length, wd.dimension, wd.min_distance, spec.q) if wd.min_distance else None
    sss = analysis.sss_classification(code, wd, config.caps.pairs)
    clock.lap("analyze")
    return ReportDocument(
        command="analyze",
        spec=spec_model(spec),
        field=field_model(code.ctx),
        code=code_model(code),
        distributions=Distributions(enumerated=distribution_model(wd, "enumeration")),
        enumerator=wd.enumerator(),
        optimality=optimality_model(opt) if opt else None,
        sss=sss_model(sss, analysis.stated_minimality_condition(spec)),
        bound=_bound_model(spec, code, wd),
        timing=clock.result(),
    )


def cmd_compare(config: RunConfig) -> ReportDocument:
    clock = _Clock(config.timing)
    spec = config.spec()
    code = build_code(spec, config.caps.field)
    pred = _predicted(config, spec)
    clock.lap("predict")
    wd = analysis.weight_distribution_bruteforce(code, config.caps.enumeration, config.workers)
    clock.lap("enumerate")
    enumerated = distribution_model(wd, "enumeration")
    if pred is None:
        return ReportDocument(
            command="compare",
            spec=spec_model(spec),
            field=field_model(code.ctx),
            code=code_model(code),
            distributions=Distributions(enumerated=enumerated),
            enumerator=wd.enumerator(),
            comparison=comparison_model(analysis.WeightDistribution({0: 1}, wd.length, wd.q), wd),
            passed=False,
            timing=clock.result(),
        )
    pwd = pred.to_weight_distribution()
    cmp = comparison_model(pwd, wd)
    return ReportDocument(
        command="compare",
        spec=spec_model(spec),
        field=field_model(code.ctx),
        code=code_model(code),
        distributions=Distributions(predicted=distribution_model(pwd, pred.gauss_source, pred), enumerated=enumerated),
        enumerator=wd.enumerator(),
        comparison=cmp,
        passed=cmp.match,
        timing=clock.result(),
    )


def cmd_verify_paper(config: RunConfig) -> ReportDocument:
    clock = _Clock(config.timing)
    rows = []
    for i, ref in enumerate(REFERENCE_CODES, start=1):
        spec = validate_spec(*ref.spec, field_cap=config.caps.field)
        code = build_code(spec, config.caps.field)
        wd = analysis.weight_distribution_bruteforce(code, config.caps.enumeration, config.workers)
        pwd = analysis.predicted_distribution(spec, config.period_source).to_weight_distribution()
        expected = analysis.parse_enumerator(ref.enumerator)
        measured = list(wd.parameters())
        match = wd.counts == expected and pwd.counts == expected and measured == list(ref.parameters)
        opt = analysis.griesmer_report(*wd.parameters(), spec.q)
        sss = analysis.sss_classification(code, wd, config.caps.pairs)
        rows.append(
            ExampleRow(
                index=i,
                spec=spec_model(spec),
                expected_parameters=list(ref.parameters),
                expected_enumerator=ref.enumerator,
                measured_parameters=measured,
                enumerator=wd.enumerator(),
                predicted_enumerator=pwd.enumerator(),
                match=match,
                griesmer=optimality_model(opt),
                sss_regime=sss.regime,
                dual_distance_class=sss.dual_distance_class,
                claim=ref.optimal_claim,
                annotation=ref.annotation,
            )
        )
    clock.lap("verify")
    return ReportDocument(command="verify-paper", examples=rows, passed=all(r.match for r in rows), timing=clock.result())


def cmd_periods(config: RunConfig) -> ReportDocument:
    if config.q is None or config.N is None:
        raise SpecError("missing_parameter", "periods needs --q and --N")
    try:
        p, k = prime_power(config.q)
    except ValueError as exc:
        raise SpecError("q_prime_power", str(exc)) from None
    q, N = config.q, config.N
    if N < 1 or (q - 1) % N:
        raise SpecError("N_divides", f"N = {N} does not divide q - 1 = {q - 1}")
    ctx = build_field(p, k, config.caps.field)
    direct = gauss_periods_direct(ctx, N)
    closed = gauss_periods_closed_form(q, N)
    branch = closed_form_branch(q, N)
    direct_rows = []
    for i, eta in enumerate(direct):
        z = eta.to_complex()
        direct_rows.append(
            DirectPeriod(
                index=i,
                coefficients=list(eta.coeffs),
                real=round(z.real, 9) + 0.0,
                imag=round(z.imag, 9) + 0.0,
                rational=eta.rational_value() if eta.is_rational() else None,
            )
        )
    closed_rows = None
    agreement = None
    if closed is not None:
        closed_rows = []
        for i, c in enumerate(closed):
            z = c.to_complex()
            closed_rows.append(ClosedPeriod(index=i, expression=str(c), real=round(z.real, 9) + 0.0, imag=round(z.imag, 9) + 0.0))
        agreement = all(abs(a.to_complex() - b.to_complex()) <= TOL for a, b in zip(direct, closed))
    bound_ok = period_bound_check(direct, N, q)
    pm = PeriodsModel(
        q=q,
        N=N,
        direct=direct_rows,
        branch=branch.kind if branch else None,
        j=branch.j if branch else None,
        gamma=branch.gamma if branch else None,
        distinguished_index=branch.distinguished_index(N) if branch else None,
        closed_form=closed_rows,
        agreement=agreement,
        bound_check=bound_ok,
    )
    return ReportDocument(command="periods", field=field_model(ctx), periods=pm, passed=bound_ok and agreement is not False)


HANDLERS = {
    "construct": cmd_construct,
    "analyze": cmd_analyze,
    "predict": cmd_predict,
    "compare": cmd_compare,
    "verify-paper": cmd_verify_paper,
    "periods": cmd_periods,
}


def run(config: RunConfig) -> ReportDocument:
    return HANDLERS[config.command](config)


def _perturbation(text: str) -> tuple[int, Fraction]:
    idx, _, delta = text.partition(":")
    return int(idx), Fraction(delta or "1")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--field-cap", type=int, default=None)
    common.add_argument("--enum-cap", type=int, default=None)
    common.add_argument("--pair-cap", type=int, default=None)
    common.add_argument("--period-source", choices=("auto", "closed-form", "direct"), default="auto")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")

    spec_flags = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    for name in ("p", "s", "m", "m1", "h", "n"):
        spec_flags.add_argument(f"--{name}", type=int, required=True)

    parser = argparse.ArgumentParser(prog="fewweight", description="Few-weight trace codes: construction and verification.", allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("construct", parents=[common, spec_flags], allow_abbrev=False, help="describe the code for a parameter tuple")
    sub.add_parser("analyze", parents=[common, spec_flags], allow_abbrev=False, help="enumerate and analyse the code")
    sub.add_parser("predict", parents=[common, spec_flags], allow_abbrev=False, help="predicted weight distribution")
    cmp_p = sub.add_parser("compare", parents=[common, spec_flags], allow_abbrev=False, help="prediction vs enumeration")
    cmp_p.add_argument("--perturb-period", type=_perturbation, default=None, help=argparse.SUPPRESS)
    sub.add_parser("verify-paper", parents=[common], allow_abbrev=False, help="check the built-in reference codes")
    per = sub.add_parser("periods", parents=[common], allow_abbrev=False, help="Gauss periods of order N over GF(q)")
    per.add_argument("--q", type=int, required=True)
    per.add_argument("--N", type=int, required=True)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    env = Caps.from_env()
    caps = Caps(
        field=args.field_cap if args.field_cap is not None else env.field,
        enumeration=args.enum_cap if args.enum_cap is not None else env.enumeration,
        pairs=args.pair_cap if args.pair_cap is not None else env.pairs,
    )
    return RunConfig(
        command=args.command,
        **{k: getattr(args, k, None) for k in ("p", "s", "m", "m1", "h", "n")},
        output_format=args.format,
        output_path=args.out,
        caps=caps,
        period_source=args.period_source,
        workers=args.workers,
        timing=args.timing,
        q=getattr(args, "q", None),
        N=getattr(args, "N", None),
        perturb_period=getattr(args, "perturb_period", None),
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    try:
        doc = run(config)
    except FewWeightError as exc:
        err = {"error": exc.code, "message": str(exc)}
        if isinstance(exc, SpecError):
            err["condition"] = exc.condition
        print(json.dumps(err), file=sys.stderr)
        return exc.exit_code
    text = render(doc, config.output_format)
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if doc.passed else 4


if __name__ == "__main__":
    sys.exit(main())
