#!/usr/bin/env python3
"""Independent reference implementation used to freeze test fixtures.

Shares no code with the Rust crates. It re-implements the tokenizer and
feature definitions, the second-order logistic boosting algorithm, and the
interventional Shapley values. Shapley values are computed by enumerating
coalitions of the features *used by each tree* and summing over trees. That
is a different route from both the Rust exact enumeration over all features
and the Rust tree-path recursion.

Subcommands:
  colmeans <corpus.jsonl>         column means of the 17 features
  features <text>                 feature vector of one text
  xor <fixture.csv>               train on the XOR fixture, report results
  pipeline <dir> <model>...       train/eval/explain on <dir>/<model>/{train,test}.jsonl
"""

import itertools
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
LEXICON_DIR = os.path.join(HERE, "..", "..", "crates", "core", "lexicons")

FEATURES = ["num_verbs", "num_modifiers", "av_sent_len", "av_word_len",
            "num_modal_verbs", "lexical_diversity", "num_chars",
            "num_punctuation", "num_sentences", "num_adjectives", "num_adverbs",
            "num_nouns", "num_function_words", "I", "Analytic", "Sixltr",
            "insight"]


# ---------------------------------------------------------------- lexicons

def _lines(name):
    with open(os.path.join(LEXICON_DIR, name), encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if line and not line.startswith("#"):
                yield line


def load_lexicons():
    lex = {
        "modal": set(_lines("modal_verbs.txt")),
        "function": set(_lines("function_words.txt")),
        "analytic": set(_lines("analytic.txt")),
        "insight": set(_lines("insight.txt")),
        "pos": {},
        "suffix": [],
    }
    for line in _lines("pos_lexicon.tsv"):
        word, tags = line.split("\t")
        lex["pos"][word.strip()] = set(t.strip() for t in tags.split(","))
    for line in _lines("suffix_rules.tsv"):
        suffix, tag = line.split("\t")
        lex["suffix"].append((suffix.strip(), tag.strip()))
    return lex


def tag_word(word, lex):
    lower = word.lower()
    if lower in lex["pos"]:
        tags = set(lex["pos"][lower])
    else:
        tags = set()
        for suffix, tag in lex["suffix"]:
            if lower.endswith(suffix) and len(lower) >= len(suffix) + 2:
                tags.add(tag)
                break
    if lower in lex["modal"]:
        tags |= {"modal", "verb"}
    if lower in lex["function"]:
        tags.add("function")
    if word in ("I", "i"):
        tags.add("pronoun-I")
    if lower in lex["analytic"]:
        tags.add("analytic")
    if lower in lex["insight"]:
        tags.add("insight")
    return tags


# --------------------------------------------------------------- tokenizer

PUNCT = set("!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~") | set("…–—‘’“”«»¡¿")
JOINERS = set("'-’")


def tokenize(text):
    """Returns a list of sentences; each a list of (kind, surface)."""
    sentences = []
    current = []
    pending = []  # word-less fragment before any sentence

    def close():
        nonlocal current, pending
        if not current:
            return
        if any(k == "w" for k, _ in current):
            sentences.append(pending + current)
            pending = []
        elif sentences:
            sentences[-1].extend(current)
        else:
            pending = pending + current
        current = []

    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isalnum():
            j = i + 1
            while j < n and (text[j].isalnum() or
                             (text[j] in JOINERS and j + 1 < n and text[j + 1].isalnum())):
                j += 1
            current.append(("w", text[i:j]))
            i = j
            continue
        if c in PUNCT:
            current.append(("p", c))
            if c in ".!?" and (i + 1 == n or text[i + 1].isspace()):
                close()
        i += 1
    close()
    if pending:
        sentences.append(pending)
    return sentences


def features(text, lex):
    sents = tokenize(text)
    words = [s for sent in sents for k, s in sent if k == "w"]
    punct = [s for sent in sents for k, s in sent if k == "p"]
    if not words:
        raise ValueError("no words")
    tags = [tag_word(w, lex) for w in words]
    count = lambda t: sum(1 for ts in tags if t in ts)
    adjectives, adverbs = count("adjective"), count("adverb")
    nw = len(words)
    out = {
        "num_verbs": count("verb"),
        "num_modifiers": adjectives + adverbs,
        "av_sent_len": nw / len(sents),
        "av_word_len": sum(len(w) for w in words) / nw,
        "num_modal_verbs": count("modal"),
        "lexical_diversity": len(set(w.lower() for w in words)) / nw,
        "num_chars": len(text),
        "num_punctuation": len(punct),
        "num_sentences": len(sents),
        "num_adjectives": adjectives,
        "num_adverbs": adverbs,
        "num_nouns": count("noun"),
        "num_function_words": count("function"),
        "I": count("pronoun-I"),
        "Analytic": count("analytic"),
        "Sixltr": sum(1 for w in words if len(w) > 6),
        "insight": count("insight"),
    }
    return [float(out[f]) for f in FEATURES]


def load_jsonl(path):
    with open(path, encoding="utf-8") as fh:
        rows = [json.loads(l) for l in fh if l.strip()]
    return [r["text"] for r in rows], [int(r["label"]) for r in rows]


# ---------------------------------------------------------------- boosting

def sigmoid(m):
    return 1.0 / (1.0 + math.exp(-m))


class Leaf:
    def __init__(self, weight):
        self.weight = weight


class Split:
    def __init__(self, feature, threshold, left, right):
        self.feature, self.threshold, self.left, self.right = feature, threshold, left, right


def leaf_value(node, x):
    while isinstance(node, Split):
        node = node.left if x[node.feature] < node.threshold else node.right
    return node.weight


def fit(X, y, rounds=100, depth=3, lr=0.3, lam=1.0, gamma=0.0, mcw=1.0):
    n, p = len(X), len(X[0])
    pos = sum(y)
    base = min(10.0, max(-10.0, math.log(pos / (n - pos))))
    margins = [base] * n
    trees = []

    def grow(rows, d, g, h):
        G = 0.0
        H = 0.0
        for i in rows:
            G += g[i]
            H += h[i]
        best = None
        if d < depth:
            parent = G * G / (H + lam)
            for f in range(p):
                order = sorted(rows, key=lambda i: X[i][f])
                gl = hl = 0.0
                for k in range(len(order) - 1):
                    i = order[k]
                    gl += g[i]
                    hl += h[i]
                    lo, hi = X[i][f], X[order[k + 1]][f]
                    if lo == hi:
                        continue
                    gr, hr = G - gl, H - hl
                    if hl < mcw or hr < mcw:
                        continue
                    gain = 0.5 * (gl * gl / (hl + lam) + gr * gr / (hr + lam) - parent) - gamma
                    if gain > (best[0] if best else 0.0):
                        mid = lo + (hi - lo) / 2.0
                        best = (gain, f, mid if mid > lo else hi)
        if best is None:
            return Leaf(-G / (H + lam) * lr)
        _, f, t = best
        left = [i for i in rows if X[i][f] < t]
        right = [i for i in rows if not X[i][f] < t]
        return Split(f, t, grow(left, d + 1, g, h), grow(right, d + 1, g, h))

    for _ in range(rounds):
        g = [sigmoid(margins[i]) - y[i] for i in range(n)]
        h = []
        for i in range(n):
            q = sigmoid(margins[i])
            h.append(q * (1.0 - q))
        tree = grow(list(range(n)), 0, g, h)
        for i in range(n):
            margins[i] += leaf_value(tree, X[i])
        trees.append(tree)
    return base, trees


def margin(model, x):
    base, trees = model
    m = base
    for t in trees:
        m += leaf_value(t, x)
    return m


# ---------------------------------------------------------------- shapley

def tree_features(node, acc):
    if isinstance(node, Split):
        acc.add(node.feature)
        tree_features(node.left, acc)
        tree_features(node.right, acc)
    return acc


def leaf_vec(node, cols):
    """Vectorized leaf lookup; cols[f] is an array over background rows."""
    if isinstance(node, Leaf):
        return np.full(len(cols[0]), node.weight)
    go_left = cols[node.feature] < node.threshold
    return np.where(go_left, leaf_vec(node.left, cols), leaf_vec(node.right, cols))


def shapley(model, x, B):
    """Interventional Shapley values, enumerating coalitions of each tree's
    own features (other players are dummies for that tree)."""
    base_score, trees = model
    p = len(x)
    phi = [0.0] * p
    Bcols = [B[:, j] for j in range(p)]
    for t in trees:
        feats = sorted(tree_features(t, set()))
        k = len(feats)
        if k == 0:
            continue
        value = {}
        for mask in range(1 << k):
            cols = list(Bcols)
            for bit, f in enumerate(feats):
                if mask >> bit & 1:
                    cols[f] = np.full(len(B), x[f])
            value[mask] = float(np.mean(leaf_vec(t, cols)))
        for bit, f in enumerate(feats):
            total = Fraction(0)
            acc = 0.0
            for mask in range(1 << k):
                if mask >> bit & 1:
                    continue
                s = bin(mask).count("1")
                w = Fraction(math.factorial(s) * math.factorial(k - s - 1), math.factorial(k))
                acc += float(w) * (value[mask | (1 << bit)] - value[mask])
            phi[f] += acc
    base = float(np.mean([margin(model, b) for b in B]))
    return phi, base, margin(model, x)


# ---------------------------------------------------------------- commands

def cmd_colmeans(path):
    lex = load_lexicons()
    texts, _ = load_jsonl(path)
    rows = [features(t, lex) for t in texts]
    means = [sum(r[j] for r in rows) / len(rows) for j in range(len(FEATURES))]
    print(json.dumps({"rows": len(rows), "names": FEATURES, "means": means}, indent=2))


def cmd_features(text):
    print(json.dumps(dict(zip(FEATURES, features(text, load_lexicons())))))


def read_csv(path):
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        X, y = [], []
        for line in fh:
            if line.strip():
                vals = line.strip().split(",")
                X.append([float(v) for v in vals[:-1]])
                y.append(int(vals[-1]))
    return header[:-1], X, y


def cmd_xor(path, holdout_path):
    names, X, y = read_csv(path)
    model = fit(X, y, rounds=50, depth=2, lr=0.3, lam=1.0)
    acc = sum((margin(model, x) >= 0) == bool(t) for x, t in zip(X, y)) / len(y)
    _, H, _ = read_csv(holdout_path)
    signs = [1 if margin(model, h) >= 0 else -1 for h in H]
    B = np.array(X)
    sums = [0.0] * len(names)
    worst = 0.0
    for x in X[:40]:
        phi, base, fx = shapley(model, x, B)
        worst = max(worst, abs(sum(phi) + base - fx))
        for j, v in enumerate(phi):
            sums[j] += abs(v)
    order = sorted(range(len(names)), key=lambda j: (-sums[j], j))
    print(json.dumps({
        "train_accuracy": acc,
        "holdout_margin_signs": signs,
        "mean_abs_phi_first40": [s / 40 for s in sums],
        "ranking": [names[j] for j in order],
        "max_efficiency_gap": worst,
    }, indent=2))


def cmd_pipeline(root, models):
    lex = load_lexicons()
    out = {}
    for name in models:
        d = os.path.join(root, name)
        tr_texts, tr_y = load_jsonl(os.path.join(d, "train.jsonl"))
        te_texts, te_y = load_jsonl(os.path.join(d, "test.jsonl"))
        Xtr = [features(t, lex) for t in tr_texts]
        Xte = [features(t, lex) for t in te_texts]
        model = fit(Xtr, tr_y)
        correct = sum((margin(model, x) >= 0) == bool(t) for x, t in zip(Xte, te_y))
        B = np.array(Xtr)
        sums = [0.0] * len(FEATURES)
        for x in Xte:
            phi, _, _ = shapley(model, x, B)
            for j, v in enumerate(phi):
                sums[j] += abs(v)
        means = [s / len(Xte) for s in sums]
        order = sorted(range(len(FEATURES)), key=lambda j: (-means[j], j))
        out[name] = {
            "accuracy": correct / len(te_y),
            "top3": [FEATURES[j] for j in order[:3]],
            "ranking": [[FEATURES[j], means[j]] for j in order],
        }
        print(name, out[name]["accuracy"], out[name]["top3"], file=sys.stderr)
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    cmd, args = sys.argv[1], sys.argv[2:]
    if cmd == "colmeans":
        cmd_colmeans(args[0])
    elif cmd == "features":
        cmd_features(args[0])
    elif cmd == "xor":
        cmd_xor(args[0], args[1])
    elif cmd == "pipeline":
        cmd_pipeline(args[0], args[1:])
    else:
        sys.exit(__doc__)
