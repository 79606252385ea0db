#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Run the first top-level function of each JSONL record on its "inputs" and
# print one JSON line per record: {"id", "results"}.
# Usage: semantic_harness.py CORPUS.jsonl
import ast
import contextlib
import copy
import io
import json
import sys
import types


def observe(fn, args):
    out = io.StringIO()
    try:
        with contextlib.redirect_stdout(out):
            value = fn(*copy.deepcopy(args))
            if isinstance(value, types.GeneratorType):
                value = list(value)
        result = ["ok", repr(value)]
    except Exception as e:  # noqa: BLE001
        result = ["raise", type(e).__name__, str(e)]
    return result + [out.getvalue()]


def run(record):
    tree = ast.parse(record["code"])
    name = next(n.name for n in tree.body if isinstance(n, (ast.FunctionDef, ast.AsyncFunctionDef)))
    ns = {"__name__": "suite"}
    exec(compile(tree, "<suite>", "exec"), ns)
    fn = ns[name]
    return [observe(fn, args) for args in record["inputs"]]


def main():
    with open(sys.argv[1]) as f:
        for line in f:
            if not line.strip():
                continue
            record = json.loads(line)
            try:
                results = run(record)
            except Exception as e:  # noqa: BLE001
                results = [["load-error", type(e).__name__, str(e)]]
            print(json.dumps({"id": record["id"], "results": results}, sort_keys=True))


if __name__ == "__main__":
    main()
