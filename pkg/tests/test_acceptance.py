"""Acceptance gate: the nine criteria, one test and one printed line each.

Each criterion runs through the command-line entry point exactly as a user
would invoke it, with stated runtime budgets enforced where the criterion
carries one. Run with -v (or -s) to see one pass/fail line per criterion.
"""

import contextlib
import io
import json
import subprocess
import sys
import time
from pathlib import Path

import pytest

from dertensor.cli import run

ROOT = Path(__file__).resolve().parent.parent


def timed_json(argv):
    buf = io.StringIO()
    t0 = time.perf_counter()
    with contextlib.redirect_stdout(buf):
        code = run(argv)
    elapsed = time.perf_counter() - t0
    return code, json.loads(buf.getvalue()), elapsed


def report(n, label, ok, elapsed=None):
    clock = f" ({elapsed:.2f}s)" if elapsed is not None else ""
    print(f"criterion {n} [{label}]: {'PASS' if ok else 'FAIL'}{clock}")
    assert ok, f"criterion {n} ({label}) failed"


def passed(data, name):
    for a in data["assertions"]:
        if a["name"] == name:
            return a["pass"]
    return None


@pytest.fixture(scope="module")
def full_sweep():
    """One shared run of the eight-pair block-decomposition sweep."""
    code, data, elapsed = timed_json(["verify-thm1", "--budget", "25", "--json"])
    assert code == 0
    return data, elapsed


def test_criterion_1_counterexample_reproduction():
    code, data, elapsed = timed_json(["counterexample-bm", "--json"])
    w = {a["name"]: a.get("witness") for a in data["assertions"]}
    ok = (
        code == 0
        and data["verdict"] == "pass"
        and w["value-z5"] == "D(1 (x) z^5) = 4*(1 (x) z^5)"
        and w["value-z3"] == "D(1 (x) z^3) = 0"
        and w["value-z2"] == "D(1 (x) z^2) = 0"
        and passed(data, "leibniz-fails-on-z2-z3")
        and passed(data, "defect-value")
        and elapsed < 1.0
    )
    report(1, "counterexample reproduction", ok, elapsed)


def test_criterion_2_inverse_formula_reproduction():
    code, data, elapsed = timed_json(["phi-eval", "--json"])
    w = {a["name"]: a.get("witness") for a in data["assertions"]}
    sweep = [a for a in data["assertions"] if a["name"].startswith("normal-form: ")]
    ok = (
        code == 0
        and data["verdict"] == "pass"
        and w["values: value-z2"] == "phi(d)(1 (x) z^2) = 2*(1 (x) z^2)"
        and w["values: value-z5"] == "phi(d)(1 (x) z^5) = 5*(1 (x) z^5)"
        and len(sweep) == 15  # m in {2,3,4} x n in {-2..2}
        and all(a["pass"] for a in sweep)
        and elapsed < 5.0
    )
    report(2, "inverse formula reproduction", ok, elapsed)


def test_criterion_3_block_dimension_identity(full_sweep):
    data, elapsed = full_sweep
    pairs = [
        f"{a} x {s}"
        for a in ("sl2", "sl2-graded-variant")
        for s in ("dual-numbers", "group-algebra(2)", "group-algebra(3)",
                  "group-algebra(4)")
    ]
    ok = data["verdict"] == "pass" and elapsed < 60.0
    for p in pairs:
        for check in ("dimension-identity", "direct-sum", "spans-all-derivations"):
            ok = ok and passed(data, f"{p}: {check}")
    report(3, "block dimension identity on 8 pairs", ok, elapsed)


def test_criterion_4_restriction_bijectivity():
    code, data, elapsed = timed_json(
        ["verify-thm2", "--setup", "sl2-twisted-flagship", "--json"])
    dims = data["dimensions"]
    ok = (
        code == 0
        and data["verdict"] == "pass"
        and passed(data, "injective")
        and passed(data, "surjective")
        and passed(data, "phi-after-pi-is-identity")
        and passed(data, "pi-after-phi-is-identity")
        and dims["fixed-algebra-derivations"] == 6
        and dims["graded-formula-total"] == 6
        and passed(data, "graded-dimension-formula")
        and elapsed < 30.0
    )
    report(4, "restriction map bijectivity on the flagship", ok, elapsed)


def test_criterion_5_split_sampling(full_sweep):
    data, _ = full_sweep
    rounds = [a for a in data["assertions"] if a["name"].endswith("split-roundtrip-25")]
    ok = len(rounds) == 8 and all(a["pass"] for a in rounds)
    report(5, "25 pseudorandom splits per tensor algebra", ok)


def test_criterion_6_centroid_map_sweep():
    code, data, elapsed = timed_json(["verify-lemma21", "--json"])
    products = [a for a in data["assertions"] if a["name"].endswith("dimension-product")]
    ok = (
        code == 0
        and data["verdict"] == "pass"
        and len(products) == 8
        and all(a["pass"] for a in products)
        and passed(data, "rejects-imperfect-left-factor")
    )
    report(6, "centroid map sweep and refusal", ok, elapsed)


def test_criterion_7_surjectivity_identities():
    code, data, elapsed = timed_json(
        ["lemma-identities", "--setup", "sl2-twisted-flagship", "--json"])
    names = ["formula-1", "formula-2", "formula-3", "formula-4",
             "exchange-I", "exchange-II", "exchange-III", "wrap-case-exercised"]
    ok = code == 0 and data["verdict"] == "pass"
    for name in names:
        ok = ok and passed(data, name)
    report(7, "surjectivity identities with wrap case", ok, elapsed)


def test_criterion_8_charp_branch():
    code, data, elapsed = timed_json(
        ["phi-eval", "--setup", "quotient-laurent(1,4)", "--field", "prime(5,4)",
         "--json"])
    ok = (
        code == 0
        and data["verdict"] == "pass"
        and passed(data, "char0-charp-branches-agree")
        and passed(data, "stretch-independent-n123")
        and passed(data, "restricts-to-input")
    )
    report(8, "prime-field branch agreement", ok, elapsed)


def test_criterion_9_infrastructure_suites():
    files = ["tests/test_scalars.py", "tests/test_exactla.py", "tests/test_gradings.py"]
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *files],
        cwd=ROOT, capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    ok = proc.returncode == 0 and elapsed < 30.0
    if not ok:
        print(proc.stdout[-2000:])
    report(9, "infrastructure randomized suites", ok, elapsed)
