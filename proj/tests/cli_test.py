#!/usr/bin/env python3
"""End-to-end checks of the cmc command line tool."""

import json
import math
import subprocess
import sys
import tempfile
import os

CMC = sys.argv[1] if len(sys.argv) > 1 else "cmc"
FAILURES = []


def run(*args, expect=0):
    proc = subprocess.run([CMC, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        raise AssertionError(
            f"cmc {' '.join(args)}: exit {proc.returncode}, expected {expect}\n"
            f"stdout: {proc.stdout}\nstderr: {proc.stderr}"
        )
    return proc


def check(name, fn):
    try:
        fn()
        print(f"ok {name}")
    except Exception as exc:  # noqa: BLE001
        FAILURES.append(name)
        print(f"FAIL {name}: {exc}")


def test_integrate_files():
    with tempfile.TemporaryDirectory() as tmp:
        csv = os.path.join(tmp, "curve.csv")
        events = os.path.join(tmp, "events.json")
        run("integrate", "--n", "2", "--m", "2", "--h", "0",
            "--start", "y-axis:3", "--length", "40",
            "--out", csv, "--events", events)
        lines = open(csv).read().splitlines()
        assert lines[0] == "s,x,y,sigma", lines[0]
        assert len(lines) > 100
        side = json.load(open(events))
        assert side["termination"] == "budget_exhausted"
        assert side["params"] == {"n": 2, "m": 2, "h": 0.0}
        kinds = {e["kind"] for e in side["events"]}
        assert "y_min" in kinds and "y_max" in kinds

        # round-trip through classify --curve
        out = run("classify", "--n", "2", "--m", "2", "--h", "0",
                  "--curve", csv, "--events", events)
        cls = json.loads(out.stdout)
        assert cls["topology"] == "slice_product", cls["topology"]
        assert cls["embedded"] is True


def test_classify_from_start():
    out = run("classify", "--n", "2", "--m", "2", "--h", "0",
              "--start", "x-axis-south:1", "--length", "40")
    cls = json.loads(out.stdout)
    assert cls["topology"] == "tube_product", cls["topology"]
    assert cls["case_tag"] == 3

    out = run("classify", "--n", "2", "--m", "2", "--h", "0",
              "--start", "interior:1,2,1.5707963267948966", "--length", "80")
    cls = json.loads(out.stdout)
    assert cls["topology"] == "immersed_cylinder", cls["topology"]
    assert "self_intersection" in cls


def test_shoot():
    out = run("shoot", "--n", "2", "--m", "2", "--h", "1.8",
              "--bracket", "1.0,2.0", "--tol", "1e-4")
    rep = json.loads(out.stdout)
    assert abs(rep["A_star"] - 1.592) < 0.01, rep["A_star"]
    assert rep["classification"]["topology"] == "hypersphere"

    # automatic bracket discovery
    out = run("shoot", "--n", "2", "--m", "2", "--h", "3", "--tol", "1e-4")
    rep = json.loads(out.stdout)
    assert abs(rep["A_star"] - 0.98) < 0.01, rep["A_star"]


def test_sweep():
    out = run("sweep", "--n", "2", "--m", "2", "--h", "1.8",
              "--A", "1.0,1.2,1.4,1.55", "--length", "60")
    rep = json.loads(out.stdout)
    tops = [r["topology"] for r in rep["results"]]
    assert tops == ["slice_product"] * 4, tops


def test_stability():
    out = run("stability", "criteria", "--n", "2", "--m", "2", "--h", "2")
    rep = json.loads(out.stdout)
    assert abs(rep["threshold_h"] - math.sqrt(2)) < 1e-12
    assert rep["cylinder"] == "unstable"
    assert rep["slice"] == "unstable"

    out = run("stability", "certificate", "--n", "2", "--m", "2", "--h", "0",
              "--start", "y-axis:3", "--length", "60")
    rep = json.loads(out.stdout)
    assert rep["Q"] < 0.0
    assert abs(rep["mass"]) <= 1e-8 * rep["weighted_length"]


def test_linearized():
    out = run("linearized", "--n", "2", "--m", "2", "--h", "0", "--x-max", "20")
    rep = json.loads(out.stdout)
    assert len(rep["zeros"]) >= 5
    assert abs(rep["zeros"][0] - 2.4048) < 1e-3


def test_exit_codes():
    # usage errors exit 2
    run("integrate", "--start", "bogus:1", expect=2)
    run("nonexistent-subcommand", expect=2)
    run("classify", "--n", "2", "--m", "2", "--h", "0", expect=2)
    # numerical failures exit 3 with a JSON diagnostic on stderr
    proc = run("stability", "certificate", "--n", "2", "--m", "2", "--h", "0",
               "--start", "y-axis:3", "--length", "5", expect=3)
    diag = json.loads(proc.stderr)
    assert diag["error"] == "numerical_failure"


def test_determinism():
    a = run("integrate", "--n", "2", "--m", "2", "--h", "1.8",
            "--start", "y-axis:1.2", "--length", "30", "--out", "-").stdout
    b = run("integrate", "--n", "2", "--m", "2", "--h", "1.8",
            "--start", "y-axis:1.2", "--length", "30", "--out", "-").stdout
    assert a == b
    assert a.startswith("s,x,y,sigma\n")


def main():
    check("integrate writes curve and sidecar", test_integrate_files)
    check("classify from start", test_classify_from_start)
    check("shoot finds the sphere height", test_shoot)
    check("sweep classifies the family", test_sweep)
    check("stability reports", test_stability)
    check("linearized zeros", test_linearized)
    check("exit codes", test_exit_codes)
    check("deterministic output", test_determinism)
    if FAILURES:
        print(f"{len(FAILURES)} CLI test(s) failed")
        return 1
    print("all CLI tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
