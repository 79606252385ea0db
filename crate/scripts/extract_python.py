#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Sample documented functions from a Python source tree as corpus JSONL.
# Usage: extract_python.py SRC_DIR N SEED OUT.jsonl
import ast
import json
import os
import random
import sys


def segment(lines, node):
    if node.decorator_list:
        return None
    start = node.lineno - 1
    col = node.col_offset
    prefix = lines[start][:col]
    out = []
    for line in lines[start:node.end_lineno]:
        out.append(line[col:] if line.startswith(prefix) else line)
    return "\n".join(out).rstrip("\n")


def candidates(root):
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames[:] = sorted(d for d in dirnames if d not in ("test", "tests", "idlelib", "lib2to3", "site-packages", "dist-packages"))
        for name in sorted(filenames):
            if not name.endswith(".py"):
                continue
            path = os.path.join(dirpath, name)
            try:
                with open(path, encoding="utf-8") as f:
                    text = f.read()
                tree = ast.parse(text)
            except (SyntaxError, UnicodeDecodeError, ValueError):
                continue
            lines = text.split("\n")
            for node in ast.walk(tree):
                if not isinstance(node, (ast.FunctionDef, ast.AsyncFunctionDef)):
                    continue
                doc = ast.get_docstring(node)
                if not doc:
                    continue
                code = segment(lines, node)
                if code is None or len(code) > 3000:
                    continue
                summary = doc.strip().split("\n\n")[0].replace("\n", " ")
                yield os.path.relpath(path, root), node.name, code, summary


def main():
    root, n, seed, out = sys.argv[1], int(sys.argv[2]), int(sys.argv[3]), sys.argv[4]
    pool = list(candidates(root))
    picked = sorted(random.Random(seed).sample(range(len(pool)), n))
    with open(out, "w") as f:
        for i in picked:
            path, name, code, summary = pool[i]
            f.write(json.dumps({"repo": "cpython", "path": path, "func_name": name,
                                "code": code, "docstring": summary, "language": "python"}) + "\n")


if __name__ == "__main__":
    main()
