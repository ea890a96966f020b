"""Report documents emitted by the command-line tool.

JSON is the canonical format. Documents are pydantic models, so they parse
back losslessly with :func:`parse_report` and the JSON schema in
``docs/report_schema.json`` is generated from them.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Optional

from pydantic import BaseModel, ConfigDict

from . import analysis
from .code import COORDINATE_ORDER, Code, CodeSpec
from .finite_field import FieldCtx

SCHEMA_VERSION = "1.0"

ELEMENT_ENCODING = (
    "field elements are integers sum_i c_i p^i where c_i is the coefficient of "
    "x^i modulo the field modulus; GF(q) symbols use the same encoding"
)


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class SpecModel(_Model):
    p: int
    s: int
    m: int
    m1: int
    h: int
    n: int
    q: int


class FieldModel(_Model):
    p: int
    degree: int
    size: int
    modulus: list[int]
    modulus_text: str
    primitive_element: int


class CodeModel(_Model):
    length: int
    dimension_expected: int
    alphabet_size: int
    defining_set_logs: list[int]
    subfield_degree: int
    coordinate_order: str
    element_encoding: str


class WeightRow(_Model):
    weight: int
    frequency: int


class ProvenanceRowModel(_Model):
    weight: int
    frequency: int
    provenance: str


class DistributionModel(_Model):
    source: str
    rows: list[WeightRow]
    length: int
    dimension: int
    min_distance: int
    kernel_size: int
    enumerator: str
    family: Optional[str] = None
    provenance: Optional[list[ProvenanceRowModel]] = None
    periods: Optional[list[str]] = None


class Distributions(_Model):
    predicted: Optional[DistributionModel] = None
    enumerated: Optional[DistributionModel] = None


class DiffRow(_Model):
    weight: int
    predicted: int
    enumerated: int


class ComparisonModel(_Model):
    match: bool
    diff: list[DiffRow]


class OptimalityModel(_Model):
    length: int
    dimension: int
    d: int
    q: int
    griesmer_length: int
    meets_bound: bool
    defect: int
    unimprovable: bool
    note: str


class SSSModel(_Model):
    w_min: int
    w_max: int
    minimal_by_ratio: bool
    ratio_margin: str
    minimal_by_oracle: Optional[bool]
    dual_distance_class: str
    regime: str
    reason: str
    stated_condition: Optional[bool] = None


class BoundModel(_Model):
    applicable: bool
    lower_bound: Optional[int]
    measured_d: int
    holds: Optional[bool]
    a_zero_min_weight: Optional[int]
    holds_for_a_zero_words: Optional[bool]


class DirectPeriod(_Model):
    index: int
    coefficients: list[int]
    real: float
    imag: float
    rational: Optional[int]


class ClosedPeriod(_Model):
    index: int
    expression: str
    real: float
    imag: float


class PeriodsModel(_Model):
    q: int
    N: int
    direct: list[DirectPeriod]
    branch: Optional[str]
    j: Optional[int]
    gamma: Optional[int]
    distinguished_index: Optional[int]
    closed_form: Optional[list[ClosedPeriod]]
    agreement: Optional[bool]
    bound_check: bool


class ExampleRow(_Model):
    index: int
    spec: SpecModel
    expected_parameters: list[int]
    expected_enumerator: str
    measured_parameters: list[int]
    enumerator: str
    predicted_enumerator: str
    match: bool
    griesmer: OptimalityModel
    sss_regime: str
    dual_distance_class: str
    claim: Optional[str]
    annotation: Optional[str]


class ReportDocument(_Model):
    schema_version: str = SCHEMA_VERSION
    command: str
    spec: Optional[SpecModel] = None
    field: Optional[FieldModel] = None
    code: Optional[CodeModel] = None
    distributions: Optional[Distributions] = None
    enumerator: Optional[str] = None
    comparison: Optional[ComparisonModel] = None
    optimality: Optional[OptimalityModel] = None
    sss: Optional[SSSModel] = None
    bound: Optional[BoundModel] = None
    periods: Optional[PeriodsModel] = None
    examples: Optional[list[ExampleRow]] = None
    passed: bool = True
    timing: Optional[dict[str, float]] = None

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2) + "\n"


def parse_report(text: str) -> ReportDocument:
    return ReportDocument.model_validate_json(text)


def report_json_schema() -> str:
    return json.dumps(ReportDocument.model_json_schema(), indent=2, sort_keys=True) + "\n"


# --------------------------------------------------------------------------
# builders from library objects


def spec_model(spec: CodeSpec) -> SpecModel:
    return SpecModel(**spec.as_dict(), q=spec.q)


def field_model(ctx: FieldCtx) -> FieldModel:
    return FieldModel(
        p=ctx.p,
        degree=ctx.d,
        size=ctx.size,
        modulus=list(ctx.modulus),
        modulus_text=ctx.modulus_str(),
        primitive_element=ctx.primitive_element.value,
    )


def code_model(code: Code) -> CodeModel:
    return CodeModel(
        length=code.length,
        dimension_expected=code.dimension_expected,
        alphabet_size=code.q,
        defining_set_logs=code.D.logs.tolist(),
        subfield_degree=code.spec.s * code.spec.m1,
        coordinate_order=COORDINATE_ORDER,
        element_encoding=ELEMENT_ENCODING,
    )


def _fraction_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def distribution_model(wd: analysis.WeightDistribution, source: str, predicted=None) -> DistributionModel:
    extra = {}
    if predicted is not None:
        extra = dict(
            family=predicted.family,
            provenance=[ProvenanceRowModel(weight=r.weight, frequency=r.frequency, provenance=r.provenance) for r in predicted.rows],
            periods=[_fraction_text(e) for e in predicted.periods],
        )
    return DistributionModel(
        source=source,
        rows=[WeightRow(weight=w, frequency=c) for w, c in sorted(wd.counts.items())],
        length=wd.length,
        dimension=wd.dimension,
        min_distance=wd.min_distance,
        kernel_size=wd.kernel_size,
        enumerator=wd.enumerator(),
        **extra,
    )


def comparison_model(pred: analysis.WeightDistribution, enum: analysis.WeightDistribution) -> ComparisonModel:
    weights = sorted(set(pred.counts) | set(enum.counts))
    diff = [
        DiffRow(weight=w, predicted=pred.counts.get(w, 0), enumerated=enum.counts.get(w, 0))
        for w in weights
        if pred.counts.get(w, 0) != enum.counts.get(w, 0)
    ]
    match = not diff and pred.kernel_size == enum.kernel_size
    return ComparisonModel(match=match, diff=diff)


def optimality_model(r: analysis.OptimalityReport) -> OptimalityModel:
    return OptimalityModel(
        length=r.length,
        dimension=r.dimension,
        d=r.d,
        q=r.q,
        griesmer_length=r.griesmer_length,
        meets_bound=r.meets_bound,
        defect=r.defect,
        unimprovable=r.unimprovable,
        note=r.almost_optimal_note,
    )


def sss_model(r: analysis.SSSReport, stated: bool | None = None) -> SSSModel:
    return SSSModel(
        w_min=r.w_min,
        w_max=r.w_max,
        minimal_by_ratio=r.minimal_by_ratio,
        ratio_margin=_fraction_text(r.ratio_margin),
        minimal_by_oracle=r.minimal_by_oracle,
        dual_distance_class=r.dual_distance_class,
        regime=r.regime,
        reason=r.reason,
        stated_condition=stated,
    )


# --------------------------------------------------------------------------
# csv / text rendering


def _distribution_rows(doc: ReportDocument) -> list[list]:
    rows = []
    if doc.distributions:
        for name in ("predicted", "enumerated"):
            dist = getattr(doc.distributions, name)
            if dist is not None:
                rows += [[name, r.weight, r.frequency] for r in dist.rows]
    return rows


def render_csv(doc: ReportDocument) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if doc.examples is not None:
        w.writerow(["index", "p", "s", "m", "m1", "h", "n", "length", "dimension", "d", "enumerator", "match", "griesmer_defect", "sss_regime"])
        for ex in doc.examples:
            s = ex.spec
            w.writerow([ex.index, s.p, s.s, s.m, s.m1, s.h, s.n, *ex.measured_parameters, ex.enumerator, ex.match, ex.griesmer.defect, ex.sss_regime])
    elif doc.periods is not None:
        w.writerow(["index", "direct_real", "direct_imag", "closed_form"])
        closed = {c.index: c.expression for c in doc.periods.closed_form or []}
        for d in doc.periods.direct:
            w.writerow([d.index, repr(d.real), repr(d.imag), closed.get(d.index, "")])
    elif doc.distributions is not None:
        w.writerow(["source", "weight", "frequency"])
        w.writerows(_distribution_rows(doc))
    else:
        w.writerow(["key", "value"])
        if doc.spec:
            for k, v in doc.spec.model_dump().items():
                w.writerow([k, v])
        if doc.field:
            w.writerow(["modulus", doc.field.modulus_text])
        if doc.code:
            w.writerow(["length", doc.code.length])
            w.writerow(["dimension_expected", doc.code.dimension_expected])
            w.writerow(["coordinate_order", doc.code.coordinate_order])
    return buf.getvalue()


def render_text(doc: ReportDocument) -> str:
    lines = [f"command: {doc.command}"]
    if doc.spec:
        s = doc.spec
        lines.append(f"spec: p={s.p} s={s.s} (q={s.q}) m={s.m} m1={s.m1} h={s.h} n={s.n}")
    if doc.field:
        lines.append(f"field: GF({doc.field.p}^{doc.field.degree}) modulo {doc.field.modulus_text}")
    if doc.code:
        lines.append(f"length {doc.code.length}, expected dimension {doc.code.dimension_expected}")
        lines.append(f"coordinate order: {doc.code.coordinate_order}")
    if doc.distributions:
        for name in ("predicted", "enumerated"):
            dist = getattr(doc.distributions, name)
            if dist is not None:
                lines.append(f"{name} ({dist.source}): [{dist.length},{dist.dimension},{dist.min_distance}]  {dist.enumerator}")
    if doc.comparison:
        lines.append(f"match: {doc.comparison.match}")
        for r in doc.comparison.diff:
            lines.append(f"  weight {r.weight}: predicted {r.predicted}, enumerated {r.enumerated}")
    if doc.optimality:
        o = doc.optimality
        lines.append(f"Griesmer: sum = {o.griesmer_length}, length = {o.length}; {o.note}")
    if doc.bound:
        b = doc.bound
        if b.applicable:
            lines.append(f"distance lower bound {b.lower_bound} vs d = {b.measured_d}: holds={b.holds}; a=0 words min {b.a_zero_min_weight}: holds={b.holds_for_a_zero_words}")
        else:
            lines.append("distance lower bound: not applicable")
    if doc.sss:
        s = doc.sss
        lines.append(f"minimal: ratio={s.minimal_by_ratio} (margin {s.ratio_margin}), oracle={s.minimal_by_oracle}; dual distance {s.dual_distance_class}; regime {s.regime} ({s.reason})")
    if doc.periods:
        pm = doc.periods
        lines.append(f"Gauss periods of order {pm.N} over GF({pm.q}); closed form: {pm.branch or 'not covered'}")
        closed = {c.index: c.expression for c in pm.closed_form or []}
        for d in pm.direct:
            val = d.rational if d.rational is not None else complex(d.real, d.imag)
            lines.append(f"  eta_{d.index} = {val}" + (f"   closed form {closed[d.index]}" if d.index in closed else ""))
        lines.append(f"agreement: {pm.agreement}; magnitude bound holds: {pm.bound_check}")
    if doc.examples is not None:
        for ex in doc.examples:
            s = ex.spec
            lines.append(
                f"[{'ok' if ex.match else 'FAIL'}] (q,m,m1,h,n)=({s.q},{s.m},{s.m1},{s.h},{s.n}) "
                f"{ex.measured_parameters} {ex.enumerator}; Griesmer defect {ex.griesmer.defect}; SSS {ex.sss_regime}"
                + (f"; note: {ex.annotation}" if ex.annotation else "")
            )
    lines.append(f"passed: {doc.passed}")
    return "\n".join(lines) + "\n"


def render(doc: ReportDocument, fmt: str) -> str:
    if fmt == "json":
        return doc.to_json()
    if fmt == "csv":
        return render_csv(doc)
    if fmt == "text":
        return render_text(doc)
    raise ValueError(f"unknown format {fmt!r}")
