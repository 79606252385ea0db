#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Write two-annotator fixtures with fixed agreement counts and final tallies.
# Usage: gen_human_fixture.py OUT_DIR
import json
import os
import random
import sys

# name: (agreed m1/m2/tie, tie-vs-prediction resolved to m1/m2, discussion m1/m2/tie)
SETS = {
    "set1": ((15, 110, 24), (4, 26), (2, 7, 12)),
    "set2": ((10, 125, 29), (3, 17), (2, 6, 8)),
}


def position(verdict, key):
    if verdict == "tie":
        return "TIE"
    model = "model_1" if verdict == "prediction_1" else "model_2"
    return "A" if key["a"] == model else "B"


def write(path, rows):
    with open(path, "w") as f:
        for r in rows:
            f.write(json.dumps(r) + "\n")


def build(name, spec, rng, out):
    agreed, tie_pred, discussed = spec
    pairs = []
    for verdict, n in zip(["prediction_1", "prediction_2", "tie"], agreed):
        pairs += [(verdict, verdict, None)] * n
    for verdict, n in zip(["prediction_1", "prediction_2"], tie_pred):
        for i in range(n):
            pairs.append(("tie", verdict, None) if i % 2 else (verdict, "tie", None))
    for verdict, n in zip(["prediction_1", "prediction_2", "tie"], discussed):
        for i in range(n):
            a, b = ("prediction_1", "prediction_2") if i % 2 else ("prediction_2", "prediction_1")
            pairs.append((a, b, verdict))
    rng.shuffle(pairs)
    keys, first, second, discussion = [], [], [], []
    for i, (x, y, d) in enumerate(pairs):
        task = "%s-%03d" % (name, i)
        key = {"task_id": task, "a": "model_1", "b": "model_2"} if rng.random() < 0.5 else {"task_id": task, "a": "model_2", "b": "model_1"}
        keys.append(key)
        first.append({"task_id": task, "annotator_id": "ann1", "label": position(x, key)})
        second.append({"task_id": task, "annotator_id": "ann2", "label": position(y, key)})
        if d:
            discussion.append({"task_id": task, "annotator_id": "consensus", "label": position(d, key)})
    d = os.path.join(out, name)
    os.makedirs(d, exist_ok=True)
    write(os.path.join(d, "key.jsonl"), keys)
    write(os.path.join(d, "first.jsonl"), first)
    write(os.path.join(d, "second.jsonl"), second)
    write(os.path.join(d, "discussion.jsonl"), discussion)


def main():
    rng = random.Random(5)
    for name, spec in SETS.items():
        build(name, spec, rng, sys.argv[1])


if __name__ == "__main__":
    main()
