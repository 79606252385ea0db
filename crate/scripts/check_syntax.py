#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Print the 0-based line numbers of JSONL records whose "code" does not compile.
# Usage: check_syntax.py CORPUS.jsonl
import json
import sys
import warnings

warnings.simplefilter("ignore")
with open(sys.argv[1]) as f:
    for i, line in enumerate(f):
        if not line.strip():
            continue
        try:
            compile(json.loads(line)["code"], "<record>", "exec")
        except (SyntaxError, ValueError):
            print(i)
