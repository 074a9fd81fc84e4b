#!/usr/bin/env python3
# Copyright 2026 The Schema Forge Authors.
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

"""Writes the checked-in test fixtures under tests/fixtures.

Usage: tools/make_fixtures.py [--out tests/fixtures]

The output is deterministic; rerunning it must leave git status clean.
"""

import argparse
import json
import os
import shutil


def fnv1a64(text):
    h = 0xCBF29CE484222325
    for b in text.encode("utf-8"):
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return "%016x" % h


def dump(path, value):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(value, indent=2, ensure_ascii=False) + "\n")


class Event:
    def __init__(self, sentence, lemma, args=()):
        # sentence marks the trigger with brackets: "Police [disperse] the crowd ."
        self.sentence = sentence
        self.lemma = lemma
        self.args = list(args)  # (role, head, ner or None)


class DocBuilder:
    def __init__(self, doc_id, genre):
        self.doc_id = doc_id
        self.genre = genre
        self.tokens = []
        self.text = ""
        self.events = []
        self.temporal = []
        self.hier = []
        self.clusters = []

    def _append_words(self, words):
        start_index = len(self.tokens)
        for w in words:
            if self.text:
                self.text += " "
            start = len(self.text)
            self.text += w
            self.tokens.append({"text": w, "start": start, "end": len(self.text)})
        return start_index

    def add_text(self, sentence):
        self._append_words(sentence.split())

    def add_event(self, event):
        words = event.sentence.split()
        trigger = []
        clean = []
        inside = False
        for i, w in enumerate(words):
            if w.startswith("["):
                inside = True
                w = w[1:]
            if inside:
                trigger.append(i)
            if w.endswith("]"):
                inside = False
                w = w[:-1]
            clean.append(w)
        base = self._append_words(clean)
        mention_id = "%s-e%d" % (self.doc_id, len(self.events) + 1)
        self.events.append({
            "id": mention_id,
            "documentId": self.doc_id,
            "trigger": {"start": base + trigger[0], "end": base + trigger[-1] + 1},
            "triggerLemma": event.lemma,
            "arguments": [
                {"role": r, "headText": h, "nerType": n} for (r, h, n) in event.args
            ],
        })
        return mention_id

    def before_chain(self, ids):
        for i in range(len(ids)):
            for j in range(i + 1, len(ids)):
                self.temporal_pred(ids[i], ids[j], "BEFORE")

    def temporal_pred(self, a, b, label, confidence=1.0):
        self.temporal.append({"documentId": self.doc_id, "sourceMentionId": a,
                              "targetMentionId": b, "label": label,
                              "confidence": confidence})

    def hier_pred(self, a, b, label, confidence=1.0):
        self.hier.append({"documentId": self.doc_id, "sourceMentionId": a,
                          "targetMentionId": b, "label": label,
                          "confidence": confidence})

    def bundle(self):
        return {
            "document": {"id": self.doc_id, "genre": self.genre, "text": self.text,
                         "tokens": self.tokens},
            "events": self.events,
            "corefClusters": self.clusters,
            "temporalPreds": self.temporal,
            "hierPreds": self.hier,
        }


# --- Sports games: one timeline whose second event is a subevent of the first.

def sports_games(out):
    for n in range(1, 4):
        d = DocBuilder("sports-%d" % n, "news")
        ids = [
            d.add_event(Event("Players [warm up] on the field .", "warm up",
                              [("ARG0", "players", "PER")])),
            d.add_event(Event("They [stretch] their legs .", "stretch",
                              [("ARG0", "they", "PER")])),
            d.add_event(Event("The teams [play] the match .", "play",
                              [("ARG0", "teams", "ORG")])),
            d.add_event(Event("Everyone [cools down] afterwards .", "cool down",
                              [("ARG0", "everyone", "PER")])),
        ]
        d.before_chain(ids)
        d.hier_pred(ids[0], ids[1], "PARENT-CHILD")
        dump(os.path.join(out, "sports_games", d.doc_id + ".json"), d.bundle())


# --- Civil unrest: four timelines that differ in the order of two events
# and in their ending.

CU_BEGIN = Event("The unrest [began] downtown .", "begin", [("ARG1", "unrest", None)])
CU_CALL = Event("Protesters [called] for demands .", "call",
                [("ARG0", "protesters", "PER"), ("ARG1", "demands", None)])
CU_CLASH = Event("Protesters [clashed] with officers .", "clash",
                 [("ARG0", "protesters", "PER"), ("ARG1", "officers", "PER")])
CU_URGE = Event("The government [urged] restraint .", "urge",
                [("ARG0", "government", "ORG"), ("ARG1", "restraint", None)])
CU_DISPERSE = Event("Police [dispersed] the crowd .", "disperse",
                    [("ARG0", "police", "ORG"), ("ARG1", "crowd", None)])
CU_CONDEMN = Event("Leaders [condemned] the violence .", "condemn",
                   [("ARG1", "violence", None)])


def civil_unrest(out):
    timelines = [
        [CU_BEGIN, CU_CALL, CU_CLASH, CU_DISPERSE, CU_CONDEMN],
        [CU_BEGIN, CU_CLASH, CU_CALL, CU_DISPERSE, CU_CONDEMN],
        [CU_BEGIN, CU_CALL, CU_CLASH, CU_URGE],
        [CU_BEGIN, CU_CLASH, CU_CALL, CU_URGE],
    ]
    for n, timeline in enumerate(timelines, start=1):
        d = DocBuilder("unrest-%d" % n, "news")
        ids = [d.add_event(e) for e in timeline]
        d.before_chain(ids)
        dump(os.path.join(out, "civil_unrest", d.doc_id + ".json"), d.bundle())


# --- Pandemic outbreak: frequency and threshold behaviour.

def pandemic(out):
    subjects = ["residents", "residents", "people", "people", "public"]
    for n, subject in enumerate(subjects, start=1):
        d = DocBuilder("pandemic-%d" % n, "news")
        spread = d.add_event(Event("The virus [spread] quickly .", "spread",
                                   [("ARG0", "virus", None)]))
        ids = [spread]
        if n <= 3:
            infect = d.add_event(Event("It [infected] thousands .", "infect",
                                       [("ARG1", "thousands", "PER")]))
            # Subevent relation predicted in two documents only.
            if n <= 2:
                d.hier_pred(spread, infect, "PARENT-CHILD")
            ids.append(infect)
        take = d.add_event(Event("The %s [take precautions] now ." % subject, "take precautions",
                                 [("ARG0", subject, "PER")]))
        ids.append(take)
        # The same event mentioned twice in one document counts once.
        if n == 1:
            again = d.add_event(Event("Residents [take precautions] daily .", "take precautions",
                                      [("ARG0", "residents", "PER")]))
            d.clusters.append({"documentId": d.doc_id, "memberMentionIds": [take, again],
                               "kind": "event"})
        if n == 4:
            d.add_event(Event("Officials [quarantined] a ship .", "quarantine",
                              [("ARG0", "officials", "PER")]))
        d.before_chain(ids)
        dump(os.path.join(out, "pandemic", d.doc_id + ".json"), d.bundle())


# --- Relevance statistics: exactly 100 tokens, 12 ontology events, 5
# arguments with an ontology role.

def stats(out):
    d = DocBuilder("stats-1", "news")
    relevant = ["attack", "bomb", "kill", "injure", "arrest", "explode"]
    for i in range(12):
        lemma = relevant[i % len(relevant)]
        args = [("ARG0", "militants", "ORG")]
        if i < 5:
            args.append(("ARGM-LOC", "city", "LOC"))
        d.add_event(Event("Reports said militants [%s] here ." % lemma, lemma, args))  # 6 tokens
    for lemma in ["say", "report", "announce"]:
        d.add_event(Event("Officials [%s] it ." % lemma, lemma, [("ARG0", "officials", "PER")]))  # 4
    # 12 * 6 + 3 * 4 = 84 tokens so far.
    d.add_text(" ".join(["filler"] * 16))
    assert len(d.tokens) == 100, len(d.tokens)
    dump(os.path.join(out, "stats", "bundles", d.doc_id + ".json"), d.bundle())
    with open(os.path.join(out, "stats", "ontology.txt"), "w") as f:
        f.write("# Relevant event triggers and argument roles\n")
        for lemma in relevant:
            f.write("trigger: %s\n" % lemma)
        f.write("role: ARGM-LOC\n")


# --- Mock provider outputs for an end-to-end run on "civil unrest".

MOCK_TOPIC = "civil unrest"
MOCK_HEADLINE = "\"Protesters Clash With Officers as Unrest Spreads.\""
MOCK_BODY = (
    "Unrest began downtown on Monday. Protesters called for political demands and later "
    "clashed with officers near the square. Police dispersed the crowd by evening, and "
    "community leaders condemned the violence.\n"
)
MOCK_HOWTO = (
    "Civil unrest usually begins with a grievance. Organizers call for demands, crowds "
    "gather, and protesters may clash with police. Authorities urge restraint.\n"
)
MOCK_STEPS = (
    " Begin the unrest with a public grievance.\n"
    "2. Call for demands from the government.\n"
    "3. Clash with officers during the march.\n"
    "4. Disperse the crowd.\n"
)


def mock_generation(out):
    directory = os.path.join(out, "mock_generation")
    if os.path.isdir(directory):
        shutil.rmtree(directory)
    os.makedirs(directory)
    headline = "Protesters Clash With Officers as Unrest Spreads"
    outputs = {
        "Write a news headline about %s." % MOCK_TOPIC: MOCK_HEADLINE,
        "Write a news story titled \"%s\"." % headline: MOCK_BODY,
        "Describe how to %s." % MOCK_TOPIC: MOCK_HOWTO,
        "What are the steps involved in %s? 1." % MOCK_TOPIC: MOCK_STEPS,
    }
    for prompt, text in outputs.items():
        with open(os.path.join(directory, fnv1a64(prompt) + ".txt"), "w") as f:
            f.write(text)


# --- Gold schema, synonyms and ontology for evaluation.

def evaluation(out):
    dump(os.path.join(out, "eval", "civil_unrest_gold.json"), {
        "topic": "civil unrest",
        "events": ["begin", "call", "clash", "disperse", "condemn"],
        "relations": [
            {"source": "begin", "target": "condemn", "family": "temporal"},
            {"source": "call", "target": "clash", "family": "logical"},
            {"source": "begin", "target": "riot", "family": "temporal"},
        ],
        "finalEvent": "condemn",
    })
    dump(os.path.join(out, "eval", "civil_unrest_partial_gold.json"), {
        "topic": "civil unrest",
        "events": ["begin", "denounce", "loot"],
        "relations": [],
        "finalEvent": "denounce",
    })
    dump(os.path.join(out, "eval", "synonyms.json"), {
        "buy": ["acquire", "purchase"],
        "denounce": ["condemn"],
        "catch": ["apprehend"],
    })


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    parser.add_argument("--out", default=os.path.join(root, "tests", "fixtures"))
    args = parser.parse_args()
    for generator in (sports_games, civil_unrest, pandemic, stats, mock_generation, evaluation):
        generator(args.out)


if __name__ == "__main__":
    main()
