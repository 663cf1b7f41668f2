#!/usr/bin/env python3
"""End-to-end checks of the prodmod command line tool."""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = Path(sys.argv[1])
failures = []


def run(*args):
    return subprocess.run([str(BIN), *map(str, args)], capture_output=True, text=True)


def check(ok, what):
    print(("ok   " if ok else "FAIL ") + what)
    if not ok:
        failures.append(what)


def write(d, name, text):
    p = d / name
    p.write_text(text)
    return p


with tempfile.TemporaryDirectory() as tmp:
    d = Path(tmp)
    refl = write(d, "refl.txt", "premise: []p\nconclusion: p\n")
    taut = write(d, "taut.txt", "conclusion: [](p -> p)\n")
    kax = write(d, "k.txt", "conclusion: [](p -> q) -> ([]p -> []q)\n")
    kval = write(d, "kval.txt", "logic: valued\nconclusion: [](p -> q) -> ([]p -> []q)\n")
    prop = write(d, "prop.txt", "conclusion: p & q -> p\n")
    bad = write(d, "bad.txt", "conclusion: p ->\n")
    model = write(d, "m.txt", "worlds: r w\nrel: r w = 1\nval: w p = 1/2\n")
    vmodel = write(d, "v.txt", "worlds: r w\ncrisp: false\nrel: r w = 1/2\nval: w p = 1/3\n")

    # decide
    r = run("decide", taut)
    check(r.returncode == 0 and json.loads(r.stdout)["verdict"] == "entailed", "decide entailed exits 0")
    r = run("decide", refl)
    report = d / "refl.json"
    report.write_text(r.stdout)
    j = json.loads(r.stdout)
    check(r.returncode == 1 and j["verdict"] == "not_entailed" and "certificate" in j, "decide not entailed exits 1")
    check(run("decide", kval).returncode == 1, "valued K axiom is not entailed")
    r = run("decide", bad)
    check(r.returncode == 3 and "line 1" in r.stderr, "malformed formula exits 3 with the line")
    check(run("decide", d / "missing.txt").returncode == 3, "missing file exits 3")
    r = run("decide", "--omega-limit", "2", taut)
    check(r.returncode == 2 and json.loads(r.stdout)["verdict"] == "unknown", "omega limit gives unknown, exit 2")
    r = run("decide", "--trace", taut)
    check(len(json.loads(r.stdout).get("trace", [])) == 3, "trace lists three omegas for {[](p -> p)}")

    # eval
    r = run("eval", "--model", model, "--world", "r", "--formula", "[]p")
    check(r.returncode == 0 and r.stdout.strip() == "1/2", "eval box on a crisp model")
    r = run("eval", "--model", model, "--world", "w", "--formula", "<>p")
    check(r.stdout.strip() in ("0", "0/1"), "eval diamond without successors")
    r = run("eval", "--model", vmodel, "--world", "r", "--formula", "<>p")
    check(r.stdout.strip() == "1/6", "eval diamond on a valued model")
    check(run("eval", "--model", model, "--world", "x", "--formula", "p").returncode == 3, "unknown world exits 3")

    # export-smt
    out = d / "smt_prop"
    r = run("export-smt", prop, "--out", out)
    check(r.returncode == 0 and len(list(out.glob("*.smt2"))) == 1, "modal depth 0 gives one script")
    out = d / "smt_box"
    run("export-smt", taut, "--out", out)
    scripts = sorted(out.glob("*.smt2"))
    manifest = (out / "manifest.txt").read_text().splitlines()
    check(len(scripts) == 3 and len(manifest) == 3, "{[](p -> p)} gives three scripts and a manifest")

    # falsify
    r = run("falsify", refl)
    check(r.returncode == 1 and "falsified at world" in r.stdout, "falsifier found for []p |- p")
    r = run("falsify", "--classical", "--max-worlds", "2", kax)
    check(r.returncode == 2 and "no falsifier found" in r.stdout, "K axiom has no classical falsifier")
    check(run("falsify", "--budget", "0", refl).returncode == 2, "zero budget finds nothing")

    # recheck
    r = run("recheck", report)
    check(r.returncode == 0 and "recomputed ok" in r.stdout, "recheck accepts an honest report")
    tampered = json.loads(report.read_text())
    for entry in tampered["certificate"]["valuation"]:
        entry["value"] = "log:0/1"
    bad_report = write(d, "bad.json", json.dumps(tampered))
    r = run("recheck", bad_report)
    check(r.returncode == 3 and "does not witness" in r.stderr, "recheck rejects a tampered certificate")

    # Cross-check the exported scripts with z3: a problem is entailed exactly
    # when every script is unsatisfiable.
    z3 = shutil.which("z3")
    if z3 is None:
        print("skip z3 cross-check (z3 not found)")
    else:
        cases = {
            "conclusion: [](p -> p)\n": True,
            "premise: []p\nconclusion: p\n": False,
            "conclusion: [](p -> q) -> ([]p -> []q)\n": True,
            "logic: valued\nconclusion: [](p -> q) -> ([]p -> []q)\n": False,
            "premise: []p\npremise: []q\nconclusion: [](p /\\ q)\n": True,
            "premise: <>1\npremise: ~[]p\npremise: [] ~~p\nconclusion: 0\n": False,
            "logic: valued\nconclusion: <>p -> ~[]~p\n": None,
            "conclusion: <>(p \\/ q) -> (<>p \\/ <>q)\n": None,
        }
        for i, (text, expected) in enumerate(cases.items()):
            problem = write(d, f"z{i}.txt", text)
            verdict = json.loads(run("decide", problem).stdout)["verdict"]
            out = d / f"z{i}"
            run("export-smt", problem, "--out", out)
            results = [subprocess.run([z3, str(s)], capture_output=True, text=True).stdout.strip()
                       for s in sorted(out.glob("*.smt2"))]
            clean = all(r in ("sat", "unsat") for r in results)
            z3_entailed = all(r == "unsat" for r in results)
            ok = clean and z3_entailed == (verdict == "entailed")
            if expected is not None:
                ok = ok and expected == (verdict == "entailed")
            check(ok, f"z3 agrees on {text.strip().splitlines()[-1]!r} ({verdict})")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
