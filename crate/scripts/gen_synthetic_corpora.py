#!/usr/bin/env python3
"""Generate the bundled synthetic stand-in corpora under data/.

Each corpus is UTF-8 JSONL with the keys `text` and `label` (0 deceptive,
1 truthful). Documents are template-generated; class-conditional style
parameters overlap so that no single feature separates the classes.

Run from the repository root:  python3 scripts/gen_synthetic_corpora.py
Output is a pure function of the fixed seeds below.
"""

import json
import os
import random

GENRES = {
    "dis": {
        "seed": 1101,
        "count": 220,
        "nouns": ["government", "election", "vaccine", "officials", "president",
                  "media", "scientists", "city", "country", "voters", "police",
                  "hospital", "virus", "border", "senator", "army", "leaders",
                  "schools", "economy", "banks"],
        "verbs": ["announced", "hid", "destroyed", "stole", "banned", "ignored",
                  "confirmed", "approved", "released", "changed", "planned",
                  "blocked", "said", "found", "told"],
        "places": ["in the capital", "across the country", "at the border",
                   "in the state", "on television", "online"],
    },
    "en": {
        "seed": 2202,
        "count": 200,
        "nouns": ["contract", "meeting", "trading", "deal", "schedule", "energy",
                  "budget", "desk", "partners", "invoice", "accounts", "pipeline",
                  "traders", "office", "forecast", "revenue", "margin", "assets",
                  "position", "committee"],
        "verbs": ["sent", "moved", "signed", "booked", "approved", "reviewed",
                  "changed", "closed", "released", "planned", "called", "told",
                  "said", "found", "shifted"],
        "places": ["in Houston", "at the office", "on the desk", "in the plan",
                   "before the close", "in the books"],
    },
    "fb": {
        "seed": 3303,
        "count": 200,
        "nouns": ["money", "account", "transfer", "prize", "bank", "card",
                  "friend", "family", "package", "customs", "lottery", "fee",
                  "payment", "gift", "phone", "picture", "message", "dear",
                  "love", "heart"],
        "verbs": ["sent", "won", "need", "claim", "send", "pay", "call", "help",
                  "told", "said", "found", "moved", "released", "changed",
                  "blocked"],
        "places": ["in Lagos", "at the bank", "on Facebook", "online",
                   "at the airport", "in the inbox"],
    },
    "pos": {
        "seed": 4404,
        "count": 200,
        "nouns": ["hotel", "room", "staff", "bed", "service", "location", "view",
                  "breakfast", "lobby", "pool", "bathroom", "suite", "restaurant",
                  "manager", "stay", "price", "weekend", "trip", "desk", "spa"],
        "verbs": ["loved", "enjoyed", "recommend", "booked", "stayed", "found",
                  "said", "told", "changed", "moved", "helped", "cleaned",
                  "offered", "upgraded", "served"],
        "places": ["in Chicago", "downtown", "near the lake", "at the front desk",
                   "on the top floor", "during the trip"],
    },
    "neg": {
        "seed": 5505,
        "count": 200,
        "nouns": ["hotel", "room", "staff", "bed", "service", "location", "noise",
                  "carpet", "lobby", "pool", "bathroom", "smell", "restaurant",
                  "manager", "stay", "price", "weekend", "trip", "desk", "towels"],
        "verbs": ["hated", "complained", "booked", "stayed", "found", "said",
                  "told", "changed", "moved", "ignored", "charged", "refused",
                  "cleaned", "offered", "waited"],
        "places": ["in Chicago", "downtown", "near the lake", "at the front desk",
                   "on the top floor", "during the trip"],
    },
}

ADJECTIVES = ["big", "great", "terrible", "amazing", "huge", "bad", "good",
              "new", "real", "secret", "strange", "dangerous", "wonderful",
              "horrible", "perfect", "shocking", "beautiful", "nice", "dirty",
              "serious"]
LONG_ADJECTIVES = ["substantial", "considerable", "particular", "significant",
                   "comprehensive", "appropriate", "additional", "extensive",
                   "independent", "reasonable"]
ADVERBS = ["really", "totally", "completely", "suddenly", "quickly", "truly",
           "absolutely", "simply", "clearly", "secretly", "very"]
MODALS = ["can", "could", "may", "might", "must", "should", "will", "would"]
ANALYTIC_OPENERS = ["However,", "Therefore,", "According to the report,",
                    "Because of this,", "Consequently,", "Furthermore,",
                    "Thus,", "Despite the evidence,", "Moreover,",
                    "According to the data,"]
INSIGHT_CLAUSES = ["I think", "I know", "we realize", "I believe", "I understand",
                   "they know", "we learned", "I noticed", "I decided",
                   "I wonder if"]
LONG_NOUNS = ["information", "documentation", "management", "organization",
              "administration", "requirements", "development", "investigation",
              "statements", "negotiations"]
SUBJECTS_OTHER = ["they", "we", "people", "someone", "everyone", "he", "she"]
EMPHASIS = ["!", "!!", "!!!", "?!", "..."]


def class_params(label, rng):
    """Per-document style parameters; classes overlap on every knob."""
    if label == 0:  # deceptive
        return {
            "sentences": rng.randint(3, 8),
            "p_i": rng.uniform(0.0, 0.35),
            "p_analytic": rng.uniform(0.0, 0.3),
            "p_insight": rng.uniform(0.0, 0.2),
            "p_emphasis": rng.uniform(0.15, 0.6),
            "p_modifier": rng.uniform(0.35, 0.85),
            "p_modal": rng.uniform(0.0, 0.3),
            "p_long": rng.uniform(0.0, 0.3),
            "p_place": rng.uniform(0.1, 0.5),
            "p_comma": rng.uniform(0.1, 0.5),
            "repeat": rng.uniform(0.2, 0.6),
        }
    return {
        "sentences": rng.randint(2, 6),
        "p_i": rng.uniform(0.15, 0.6),
        "p_analytic": rng.uniform(0.15, 0.55),
        "p_insight": rng.uniform(0.05, 0.35),
        "p_emphasis": rng.uniform(0.0, 0.25),
        "p_modifier": rng.uniform(0.1, 0.55),
        "p_modal": rng.uniform(0.1, 0.45),
        "p_long": rng.uniform(0.15, 0.55),
        "p_place": rng.uniform(0.3, 0.8),
        "p_comma": rng.uniform(0.0, 0.3),
        "repeat": rng.uniform(0.0, 0.3),
    }


def make_sentence(genre, params, rng, memory):
    words = []
    if rng.random() < params["p_analytic"]:
        words.append(rng.choice(ANALYTIC_OPENERS))
    if rng.random() < params["p_insight"]:
        words.append(rng.choice(INSIGHT_CLAUSES))
        words.append("that")
    if rng.random() < params["p_i"]:
        subject = "I"
    elif rng.random() < 0.5:
        subject = rng.choice(SUBJECTS_OTHER)
    else:
        subject = "the " + rng.choice(genre["nouns"])
    if words:
        words.append(subject)
    else:
        words.append(subject[0].upper() + subject[1:])
    if rng.random() < params["p_modal"]:
        words.append(rng.choice(MODALS))
        words.append("have")
    if rng.random() < params["p_modifier"]:
        words.append(rng.choice(ADVERBS))
    words.append(rng.choice(genre["verbs"]))
    words.append("the")
    if rng.random() < params["p_modifier"]:
        words.append(rng.choice(ADJECTIVES))
    if rng.random() < params["p_long"]:
        words.append(rng.choice(LONG_ADJECTIVES))
    if memory and rng.random() < params["repeat"]:
        words.append(rng.choice(memory))
    elif rng.random() < params["p_long"]:
        words.append(rng.choice(LONG_NOUNS))
    else:
        noun = rng.choice(genre["nouns"])
        memory.append(noun)
        words.append(noun)
    if rng.random() < params["p_comma"]:
        words[-1] = words[-1] + ","
        words.append(rng.choice(["and", "but", "so"]))
        words.append(rng.choice(SUBJECTS_OTHER))
        words.append(rng.choice(genre["verbs"]))
        words.append("it")
    if rng.random() < params["p_place"]:
        words.append(rng.choice(genre["places"]))
    terminal = rng.choice(EMPHASIS) if rng.random() < params["p_emphasis"] else "."
    return " ".join(words) + terminal


def make_document(genre, label, rng):
    params = class_params(label, rng)
    memory = []
    sentences = [make_sentence(genre, params, rng, memory)
                 for _ in range(params["sentences"])]
    return " ".join(sentences)


def main():
    out_dir = os.path.join(os.path.dirname(__file__), "..", "data")
    os.makedirs(out_dir, exist_ok=True)
    for name, genre in GENRES.items():
        rng = random.Random(genre["seed"])
        lines = []
        for _ in range(genre["count"]):
            label = 0 if rng.random() < 0.5 else 1
            text = make_document(genre, label, rng)
            lines.append(json.dumps({"text": text, "label": label},
                                    ensure_ascii=True, separators=(",", ":")))
        path = os.path.join(out_dir, "syn_%s.jsonl" % name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        print("%s: %d documents" % (path, len(lines)))


if __name__ == "__main__":
    main()
