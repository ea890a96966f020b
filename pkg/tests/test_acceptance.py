"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed at the end of the pytest
run. Run alone with ``pytest tests/test_acceptance.py`` or ``pytest -m acceptance``.
"""

import re
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from fewweight.analysis import (
    dual_distance_class,
    griesmer_report,
    minimal_codewords_bruteforce,
    minimality_report,
    predicted_distribution,
    weight_distribution_bruteforce,
)
from fewweight.code import build_code, validate_spec
from fewweight.cyclotomy import (
    gauss_periods_closed_form,
    gauss_periods_direct,
    period_bound_check,
)
from fewweight.finite_field import build_field

pytestmark = pytest.mark.acceptance

EXPECTED = [
    ((3, 2, 1, 1, 4), (24, 3, 16), "1 + 18z^16 + 8z^18"),
    ((3, 2, 1, 1, 8), (48, 3, 32), "1 + 18z^32 + 8z^36"),
    ((3, 2, 2, 1, 4), (72, 4, 48), "1 + 72z^48 + 8z^54"),
    ((3, 2, 1, 2, 4), (24, 3, 12), "1 + 4z^12 + 18z^16 + 4z^24"),
    ((3, 2, 2, 2, 4), (72, 4, 36), "1 + 4z^36 + 72z^48 + 4z^72"),
    ((3, 4, 2, 4, 10), (180, 6, 108), "1 + 60z^108 + 648z^120 + 20z^162"),
    ((3, 4, 2, 5, 8), (144, 6, 54), "1 + 16z^54 + 648z^96 + 64z^108"),
]


def spec_of(qtuple):
    q, m, m1, h, n = qtuple
    return validate_spec(3, 1, m, m1, h, n)


def divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0]


def test_criterion_1_example_regression(criterion):
    start = time.perf_counter()
    bad, good = [], 0
    for qt, params, enum in EXPECTED:
        spec = spec_of(qt)
        brute = weight_distribution_bruteforce(build_code(spec))
        pred = predicted_distribution(spec).to_weight_distribution()
        for name, wd in (("enumerated", brute), ("predicted", pred)):
            if wd.enumerator() != enum or wd.parameters() != params:
                bad.append(f"{qt} {name}: {wd.parameters()} {wd.enumerator()}")
        good += brute.counts == pred.counts and brute.enumerator() == enum
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 5.0
    criterion("1 example regression", ok, f"{good}/7 exact on both routes in {elapsed:.2f}s (limit 5s)" + (f"; {bad}" if bad else ""))
    assert not bad
    assert elapsed < 5.0


def test_criterion_2_griesmer(criterion):
    r1 = griesmer_report(24, 3, 16, 3)
    r3 = griesmer_report(72, 4, 48, 3)
    r2 = griesmer_report(48, 3, 32, 3)
    checks = {
        "[24,3,16] meets": r1.meets_bound and r1.griesmer_length == 24,
        "[72,4,48] meets": r3.meets_bound and r3.griesmer_length == 72,
        "[48,3,32] defect 1": r2.defect == 1 and r2.griesmer_length == 47,
    }
    ok = all(checks.values())
    criterion("2 Griesmer verdicts", ok, ", ".join(f"{k}: {v}" for k, v in checks.items()))
    assert ok


def test_criterion_3_sweep(criterion):
    start = time.perf_counter()
    points, mismatches = 0, []
    for m in (2, 4):
        count = (3**m - 1) // 2
        for m1 in divisors(m):
            for h in divisors(count):
                base = count // h
                for n in (base, 2 * base):
                    spec = validate_spec(3, 1, m, m1, h, n)
                    enum = weight_distribution_bruteforce(build_code(spec))
                    pred = predicted_distribution(spec).to_weight_distribution()
                    points += 1
                    if enum.counts != pred.counts or enum.kernel_size != pred.kernel_size:
                        mismatches.append(str(spec))
    elapsed = time.perf_counter() - start
    ok = not mismatches and points >= 20 and elapsed < 120
    criterion("3 prediction = enumeration sweep", ok, f"{points - len(mismatches)}/{points} points match in {elapsed:.1f}s (limit 120s)")
    assert not mismatches
    assert points >= 20
    assert elapsed < 120


def test_criterion_4_gauss_periods(criterion):
    start = time.perf_counter()
    closed_checked, bound_checked, failures = 0, 0, []
    for d in (2, 3, 4):
        F = build_field(3, d)
        q = F.size
        for N in divisors(q - 1):
            direct = gauss_periods_direct(F, N)
            bound_checked += 1
            if not period_bound_check(direct, N, q):
                failures.append(f"bound q={q} N={N}")
            closed = gauss_periods_closed_form(q, N)
            if closed is None:
                continue
            closed_checked += 1
            dz = np.array([e.to_complex() for e in direct])
            cz = np.array([e.to_complex() for e in closed])
            if np.abs(dz - cz).max() > 1e-9:
                failures.append(f"complex q={q} N={N}")
            if all(e.is_rational() for e in closed):
                if sorted(e.rational_value() for e in direct) != sorted(e.as_fraction() for e in closed):
                    failures.append(f"multiset q={q} N={N}")
    elapsed = time.perf_counter() - start
    ok = not failures and closed_checked > 0
    criterion(
        "4 Gauss period cross-validation",
        ok,
        f"{closed_checked} closed-form (q,N) pairs agree, bound holds on {bound_checked - sum('bound' in f for f in failures)}/{bound_checked} in {elapsed:.2f}s"
        + (f"; {failures}" if failures else ""),
    )
    assert not failures


def test_criterion_5_minimality_oracle(criterion):
    certified, confirmed, refuted = [], [], []
    for i, (qt, _, _) in enumerate(EXPECTED, start=1):
        code = build_code(spec_of(qt))
        wd = weight_distribution_bruteforce(code)
        if minimality_report(wd).minimal_by_ratio:
            certified.append(i)
            (confirmed if minimal_codewords_bruteforce(code) else refuted).append(i)
    ok = not refuted and 1 in confirmed
    criterion("5 minimality oracle soundness", ok, f"ratio-certified {certified}, oracle confirmed {confirmed}, refuted {refuted}")
    assert not refuted
    assert 1 in confirmed


def test_criterion_6_dual_distance(criterion):
    classes = [dual_distance_class(build_code(spec_of(qt))) for qt, _, _ in EXPECTED]
    ok = all(c == "=2" for c in classes)
    criterion("6 dual distance", ok, f"classes {classes}")
    assert ok


def test_criterion_7_property_suites(criterion):
    tests = Path(__file__).parent
    from test_properties import RANDOM, SMALL_FIELDS

    start = time.perf_counter()
    r = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", "-m", "properties", str(tests / "test_properties.py")],
        capture_output=True,
        text=True,
        cwd=tests.parent,
    )
    elapsed = time.perf_counter() - start
    summary = r.stdout.strip().splitlines()[-1] if r.stdout.strip() else r.stderr[-500:]
    passed = re.search(r"(\d+) passed", summary)
    all_small = all(p**d <= 81 for p, d in SMALL_FIELDS) and len(SMALL_FIELDS) == 32
    ok = r.returncode == 0 and passed is not None and RANDOM.max_examples >= 1000 and all_small
    criterion(
        "7 property suites standalone",
        ok,
        f"standalone run: {summary} ({elapsed:.0f}s); {len(SMALL_FIELDS)} fields exhaustive, {RANDOM.max_examples} random cases per property above 81",
    )
    assert r.returncode == 0, r.stdout[-3000:]
    assert ok
