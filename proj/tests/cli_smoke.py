# Copyright 2026 The qramwb Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the qramwb command line: exit codes and output shapes."""

import csv
import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]


def run(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True)


def expect(cond, what):
    if not cond:
        print("FAIL:", what)
        sys.exit(1)


def main():
    with tempfile.TemporaryDirectory() as tmp:
        circ = os.path.join(tmp, "bb.json")
        r = run("build", "--kind", "bucket_brigade", "--n", "16", "--table", "random",
                "--seed", "4", "--circuit", circ)
        expect(r.returncode == 0, "build exit 0")
        report = json.loads(r.stdout)
        expect(report["report"]["width"] > 0, "build report width")

        r = run("verify", "--kind", "bucket_brigade", "--n", "16", "--table", "random",
                "--seed", "4", "--circuit", circ)
        expect(r.returncode == 0 and json.loads(r.stdout)["passed"], "verify saved circuit")

        # Drop the first gate: the check must now fail with exit 1.
        data = json.load(open(circ))
        data["layers"][0] = data["layers"][0][1:]
        bad = os.path.join(tmp, "bad.json")
        json.dump(data, open(bad, "w"))
        r = run("verify", "--kind", "bucket_brigade", "--n", "16", "--table", "random",
                "--seed", "4", "--circuit", bad)
        expect(r.returncode == 1, "mutated circuit exits 1")
        expect(not json.loads(r.stdout)["passed"], "mutated circuit reports failure")

        data = json.load(open(circ))
        data["layers"][0].append(data["layers"][0][0])
        json.dump(data, open(bad, "w"))
        r = run("verify", "--kind", "bucket_brigade", "--n", "16", "--table", "random",
                "--seed", "4", "--circuit", bad)
        expect(r.returncode == 2, "overlapping layer exits 2")

        r = run("verify", "--kind", "unary", "--n", "512", "--table", "random", "--seed", "1")
        expect(r.returncode == 2, "exhaustive over the cap exits 2")
        r = run("verify", "--kind", "unary", "--n", "512", "--table", "random", "--seed", "1",
                "--mode", "sampled", "--samples", "8")
        expect(r.returncode == 0, "sampled mode above the cap")
        expect(run("build", "--kind", "unary", "--n", "8").returncode == 2, "missing --table")
        expect(run("build", "--kind", "tree", "--n", "8", "--table", "random", "--seed", "1")
               .returncode == 2, "unknown kind")

        out = os.path.join(tmp, "noise.csv")
        r = run("noise", "--kind", "unary", "--sweep-n", "8:32", "--p", "1e-3",
                "--trials", "2000", "--seed", "11", "--out", out)
        expect(r.returncode == 0, "noise sweep exit 0")
        rows = list(csv.reader(open(out)))
        expect(rows[0] == ["builder", "N", "p", "trials", "seed", "infidelity", "ci_lo", "ci_hi"],
               "noise CSV header")
        expect([row[1] for row in rows[1:]] == ["8", "16", "32"], "noise CSV rows")
        for row in rows[1:]:
            lo, mid, hi = float(row[6]), float(row[5]), float(row[7])
            expect(lo <= mid <= hi, "CI brackets the estimate")

        r = run("cost", "regime", "--n", "1048576", "--d", "8", "--k", "32", "--format", "md")
        expect(r.returncode == 0, "regime exit 0")
        expect("| Medium | No | Yes | Õ((Nd)^{1/2}) | None |" in r.stdout, "regime medium row")
    print("cli smoke ok")


if __name__ == "__main__":
    main()
