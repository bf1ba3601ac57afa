#!/usr/bin/env python3
"""End-to-end checks of the bolza_verify executable."""
import csv
import io
import json
import subprocess
import sys

EXE = sys.argv[1]
failures = []


def run(*args):
    p = subprocess.run([EXE, *args], capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def expect(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


rc, out, _ = run("integrals", "--theta", "0.7853981633974483")
doc = json.loads(out)
expect(rc == 0, "integrals exit 0")
expect(abs(doc["results"]["A"] - doc["results"]["B"]) < 1e-10, "A = B at pi/4")
expect(list(doc)[:3] == ["tool", "version", "subcommand"], "envelope key order")

rc, out, _ = run("find-theta")
t1 = json.loads(out)["results"]["theta1"]
expect(rc == 0 and 0.64 <= t1 <= 0.66, "find-theta theta1 in [0.64, 0.66]")

_, a, _ = run("find-theta", "--timestamp", "T")
_, b, _ = run("find-theta", "--timestamp", "T")
expect(a == b, "repeated runs are byte identical")

rc, out, _ = run("nullspace", "--theta", repr(t1))
expect(rc == 0 and json.loads(out)["results"]["nullity"] == 1, "nullity 1 at theta1")

rc, out, _ = run("periods", "--theta", "0.3")
rows = list(csv.DictReader(io.StringIO(out)))
expect(rc == 0 and len(rows) == 16, "periods table has 16 rows")
expect("\r" not in out, "CSV uses LF line endings")

rc, out, _ = run("verify-omega", "--samples", "8", "--eigen-samples", "10")
expect(rc == 0 and json.loads(out)["pass"], "verify-omega at theta1 passes")

rc, _, _ = run("verify-omega", "--theta", "0.5")
expect(rc == 1, "verify-omega off the critical angle exits 1")

rc, _, err = run("bogus")
expect(rc == 2, "unknown subcommand exits 2")
rc, _, err = run("integrals", "--theta", "2")
expect(rc == 2 and "usage error" in err, "theta out of range exits 2")
rc, _, err = run("integrals", "--theta", "0.5", "-o", "/nonexistent-dir/x.json")
expect(rc == 1 and "No such file" in err, "unwritable output exits 1 with message")

rc, out, _ = run("index-table", "--thetas", "0.3,0.7853981633974483,1.2",
                 "--h", "0.05", "--expect", "3,1,3")
rows = list(csv.DictReader(io.StringIO(out)))
expect(rc == 0 and [int(r["Ind"]) for r in rows] == [3, 1, 3], "index profile 3, 1, 3")
expect(all(int(r["Nul"]) >= 3 for r in rows), "Nul >= 3")

rc, out, _ = run("sweep", "--from", "0.6", "--to", "0.72", "--steps", "4",
                 "--sectors", "2", "--h", "0.05", "--k", "2")
rows = list(csv.DictReader(io.StringIO(out)))
expect(rc == 0 and list(rows[0])[:4] == ["theta", "sector", "branch_index", "eigenvalue"],
       "sweep CSV columns")
expect(len(rows) == 8, "sweep CSV rows = steps x k")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
