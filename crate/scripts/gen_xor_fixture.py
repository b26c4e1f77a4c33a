#!/usr/bin/env python3
"""Writes the 2-feature XOR fixture (200 training points, 10 holdout points)."""
import os
import random

def point(rng):
    while True:
        a = round(rng.uniform(-1, 1), 3)
        b = round(rng.uniform(-1, 1), 3)
        if a != 0 and b != 0:
            return a, b

def write(path, rows):
    with open(path, "w") as fh:
        fh.write("feature0,feature1,label\n")
        for a, b in rows:
            fh.write("%r,%r,%d\n" % (a, b, 1 if a * b > 0 else 0))

rng = random.Random(2024)
out = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tests", "fixtures")
write(os.path.join(out, "xor_train.csv"), [point(rng) for _ in range(200)])
write(os.path.join(out, "xor_holdout.csv"), [point(rng) for _ in range(10)])
