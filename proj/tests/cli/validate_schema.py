#!/usr/bin/env python3
# Copyright 2026 The hypertail Authors
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
"""Runs every subcommand with --format json and validates the output."""

import json
import subprocess
import sys

import jsonschema

INVOCATIONS = [
    ["pmf", "--population", "10", "--positives", "7", "--samples", "5",
     "--observed", "3"],
    ["tail", "--population", "10", "--positives", "7", "--samples", "5",
     "--threshold", "2", "--side", "upper"],
    ["deviation", "--population", "10", "--positives", "7", "--samples", "5",
     "--deviation", "1.5", "--method", "log"],
    ["bound", "--population", "10", "--positives", "5", "--samples", "4",
     "--fraction", "0.25", "--family", "kl"],
    ["bound", "--population", "100", "--samples", "80", "--deviation", "8",
     "--two-sided"],
    ["ci", "--population", "17793691", "--samples", "100000", "--observed",
     "5720", "--delta", "0.05", "--compare"],
    ["confidence", "--population", "50", "--samples", "5", "--observed", "0",
     "--halfwidth", "3"],
    ["samplesize", "--population", "17793691", "--delta", "0.05",
     "--halfwidth-percent", "0.25"],
    ["simulate", "--population", "10", "--positives", "7", "--samples", "5",
     "--trials", "1000", "--delta", "0.05,0.1", "--fraction", "0.2"],
]


def main():
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as f:
        validator = jsonschema.Draft202012Validator(json.load(f))
    failures = 0
    for args in INVOCATIONS:
        proc = subprocess.run([binary, *args, "--format", "json"],
                              capture_output=True, text=True, check=False)
        errors = []
        if proc.returncode != 0:
            errors.append(f"exit {proc.returncode}: {proc.stderr.strip()}")
        else:
            record = json.loads(proc.stdout)
            errors.extend(e.message for e in validator.iter_errors(record))
            if record.get("command") != args[0]:
                errors.append("command field does not match subcommand")
        status = "ok" if not errors else "FAILED"
        print(f"{status}: {' '.join(args)}")
        for message in errors:
            print(f"  {message}")
        failures += bool(errors)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
