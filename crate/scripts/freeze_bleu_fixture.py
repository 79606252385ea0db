#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Build the BLEU differential fixture and record the reference script's scores.
# Usage: freeze_bleu_fixture.py OUT_DIR
import os
import random
import subprocess
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
import bleu_reference as ref  # noqa: E402

WORDS = (
    "return returns the a an value list of all user users id ids for given "
    "key keys file path open opens close read write data string name names "
    "into from with to by if not none is get set create update delete check "
    "whether object instance config parse parses json http request response "
    "index number count items element node tree child parent default"
).split()
ODD = [
    "get_user_id", "HTTP/2", "3.14", "e.g.", "naïve", "café", "x-y", "&amp;",
    "(optional)", "don't", "user's", "foo.bar()", "<b>", "10%", "a,b", "UTF-8",
    "__init__", "Σ", "über", "2nd", "x²", "@param", "#1", "[0]", "{key}",
]


def phrase(rng, n):
    out = []
    for _ in range(n):
        w = rng.choice(ODD) if rng.random() < 0.15 else rng.choice(WORDS)
        if rng.random() < 0.1:
            w = w.capitalize()
        out.append(w)
    s = " ".join(out)
    return s + rng.choice(["", "", ".", " .", "!", ":"])


def perturb(rng, s):
    words = s.split()
    mode = rng.randrange(8)
    if mode == 0:
        return s
    if mode == 1:
        return s.upper()
    if mode == 2:
        return phrase(rng, rng.randint(1, 12))
    if mode == 3 and len(words) > 1:
        del words[rng.randrange(len(words))]
    elif mode == 4:
        words.insert(rng.randrange(len(words) + 1), rng.choice(WORDS))
    elif mode == 5:
        words[rng.randrange(len(words))] = rng.choice(WORDS + ODD)
    elif mode == 6:
        rng.shuffle(words)
    else:
        words = words[: rng.randint(1, len(words))]
    return " ".join(words)


def sentence_score(pred, gold):
    gold_map = {"0": [ref.splitPuncts(gold.strip().lower())]}
    pred_map = {"0": [ref.splitPuncts(pred.strip().lower())]}
    return ref.bleuFromMaps(gold_map, pred_map)[0]


def main():
    out = sys.argv[1]
    os.makedirs(out, exist_ok=True)
    rng = random.Random(20240601)
    pairs = []
    for i in range(240):
        gold = phrase(rng, rng.randint(1, 20))
        pred = perturb(rng, gold)
        if not ref.splitPuncts(pred.lower()).split():
            pred = "value"
        pairs.append((i, pred, gold))
    with open(os.path.join(out, "references.txt"), "w") as f:
        for i, _, g in pairs:
            f.write("%d\t%s\n" % (i, g))
    with open(os.path.join(out, "predictions.txt"), "w") as f:
        for i, p, _ in pairs:
            f.write("%d\t%s\n" % (i, p))
    with open(os.path.join(out, "sentence_scores.tsv"), "w") as f:
        for i, p, g in pairs:
            f.write("%d\t%.12f\n" % (i, sentence_score(p, g)))
    with open(os.path.join(out, "predictions.txt")) as preds:
        run = subprocess.run(
            [sys.executable, os.path.join(os.path.dirname(__file__), "bleu_reference.py"),
             os.path.join(out, "references.txt")],
            stdin=preds, capture_output=True, text=True, check=True)
    with open(os.path.join(out, "corpus_score.txt"), "w") as f:
        f.write(run.stdout.strip() + "\n")


if __name__ == "__main__":
    main()
