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

"""Validates extraction bundles against the bundle JSON Schema.

Usage: tools/check_bundles.py --schema schemas/extraction_bundle.schema.json DIR_OR_FILE...

Every *.json file holding a top-level "document" key is checked. Also
confirms that a few broken bundles are rejected, so the schema cannot
silently accept everything.
"""

import argparse
import copy
import json
import pathlib
import sys

import jsonschema


def bundle_files(paths):
    for p in map(pathlib.Path, paths):
        candidates = [p] if p.is_file() else sorted(p.rglob("*.json"))
        for c in candidates:
            with open(c, encoding="utf-8") as f:
                data = json.load(f)
            if isinstance(data, dict) and "document" in data:
                yield c, data


def broken_variants(bundle):
    bad_genre = copy.deepcopy(bundle)
    bad_genre["document"]["genre"] = "blog"
    yield "unknown genre", bad_genre
    missing = copy.deepcopy(bundle)
    del missing["events"]
    yield "missing events", missing
    bad_label = copy.deepcopy(bundle)
    bad_label["temporalPreds"] = [{"documentId": "x", "sourceMentionId": "a",
                                   "targetMentionId": "b", "label": "DURING"}]
    yield "unknown temporal label", bad_label


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--schema", required=True)
    parser.add_argument("paths", nargs="+")
    args = parser.parse_args()
    with open(args.schema, encoding="utf-8") as f:
        schema = json.load(f)
    validator_cls = jsonschema.validators.validator_for(schema)
    validator_cls.check_schema(schema)
    validator = validator_cls(schema)

    failures = 0
    checked = 0
    sample = None
    for path, bundle in bundle_files(args.paths):
        checked += 1
        sample = sample or bundle
        errors = sorted(validator.iter_errors(bundle), key=lambda e: list(e.path))
        for e in errors:
            failures += 1
            print("%s: %s at %s" % (path, e.message, "/".join(map(str, e.path))))
    if checked == 0:
        print("no bundles found")
        return 1
    for name, variant in broken_variants(sample):
        if validator.is_valid(variant):
            failures += 1
            print("schema accepted a bundle with %s" % name)
    print("checked %d bundles, %d problems" % (checked, failures))
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
