#!/usr/bin/env python3
"""Writes the synthetic multi-aspect fixture used by the end-to-end tests.

Each record is a question about a fictional place with three or four
sub-aspects. Per aspect the corpus holds one detailed document (carrying the
sub-answer facts) and one thin document; each place also gets two short
name-drop snippets, and twenty topic-free notes round the corpus out to
200 documents. Output is deterministic for a given seed.
"""

import argparse
import json
import random
from pathlib import Path

ASPECTS = {
    "founding history": ["ancient", "founders", "dynasty", "empire", "treaty",
                         "century", "ruins", "kings", "settlers", "revolt",
                         "chronicle", "walls"],
    "trade economy": ["merchants", "export", "harbor", "market", "currency",
                      "tax", "industry", "mining", "textiles", "banks",
                      "tariffs", "wealth"],
    "festival culture": ["music", "dance", "poets", "painters", "costume",
                         "theater", "songs", "legends", "rituals", "carnival",
                         "crafts", "masks"],
    "terrain geography": ["mountains", "river", "valley", "plateau", "coast",
                          "island", "glacier", "desert", "forest", "lake",
                          "canyon", "peaks"],
    "food cuisine": ["bread", "spices", "stew", "cheese", "wine", "noodles",
                     "dumplings", "honey", "pastry", "soup", "grill",
                     "pepper"],
    "weather climate": ["rainfall", "monsoon", "winters", "drought",
                        "humidity", "storms", "snow", "breeze", "frost",
                        "heatwave", "fog", "seasons"],
    "school education": ["university", "scholars", "library", "students",
                         "academy", "teachers", "lectures", "literacy",
                         "curriculum", "campus", "research", "degrees"],
    "road transport": ["railway", "bridges", "ferries", "highway", "tram",
                       "airport", "canals", "buses", "tunnels", "station",
                       "cargo", "bicycles"],
}

SYLLABLES = ["zor", "vath", "quel", "mir", "dan", "tes", "kro", "lun", "bex",
             "ova", "rith", "sal", "yen", "gho", "pim", "tarn", "ulo", "wex"]

FILLER = ["travelers", "often", "mention", "visitors", "guides", "describe",
          "locals", "say", "maps", "show", "postcards", "feature", "stories",
          "recall", "photos", "capture", "names", "appear"]


def word(rng, used):
    while True:
        w = "".join(rng.choice(SYLLABLES) for _ in range(3))
        if w not in used:
            used.add(w)
            return w


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", type=Path, required=True)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    used = set()

    docs, records = [], []
    aspect_names = sorted(ASPECTS)
    for r in range(20):
        place = word(rng, used).capitalize()
        chosen = rng.sample(aspect_names, 3 if r % 2 == 0 else 4)
        sub_answers = []
        for a, aspect in enumerate(chosen):
            head, tail = aspect.split()
            vocab = rng.sample(ASPECTS[aspect], 9)
            fact1, fact2 = word(rng, used), word(rng, used)
            s1 = (f"The {tail} of {place} is known for {vocab[0]} {vocab[1]} "
                  f"and {vocab[2]} near {fact1}.")
            s2 = (f"Records describe {vocab[3]} {vocab[4]} with {fact2} "
                  f"{vocab[5]}.")
            sub_answers.append(f"{s1} {s2}")
            docs.append({
                "doc_id": f"r{r:02d}-a{a}-core",
                "title": "",
                "text": f"{s1} {s2} The {head} {tail} is a favorite subject.",
            })
            docs.append({
                "doc_id": f"r{r:02d}-a{a}-thin",
                "title": "",
                "text": (f"In {place} the {tail} also involves "
                         f"{vocab[6]} {vocab[7]} and {vocab[8]} for "
                         f"{' '.join(rng.sample(FILLER, 6))}."),
            })
        for d in range(2):
            docs.append({
                "doc_id": f"r{r:02d}-snip{d}",
                "title": "",
                "text": f"{place} {' '.join(rng.sample(FILLER, 10))}.",
            })
        records.append({
            "id": f"q{r:02d}",
            "question": f"Tell me about {place}.",
            "answer": " ".join(sub_answers),
            "sub_aspects": chosen,
            "sub_answers": sub_answers,
            "answer_is_joined": True,
        })
    n = 0
    while len(docs) < 200:
        aspect = aspect_names[n % len(aspect_names)]
        head, tail = aspect.split()
        vocab = rng.sample(ASPECTS[aspect], 5)
        docs.append({
            "doc_id": f"note{n:02d}",
            "title": "",
            "text": (f"General {head} {tail} notes cover {' '.join(vocab)} "
                     f"in many places."),
        })
        n += 1
    assert len(docs) == 200

    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "corpus.jsonl", "w") as f:
        for d in docs:
            f.write(json.dumps(d) + "\n")
    with open(args.out / "dataset.jsonl", "w") as f:
        for rec in records:
            f.write(json.dumps(rec) + "\n")


if __name__ == "__main__":
    main()
