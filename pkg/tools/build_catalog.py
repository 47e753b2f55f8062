"""Refresh the signature lines of the shape catalog.

Every class of the worked example, of the seed quartics in
``tools/catalog_seeds.txt`` and of a seeded random population is named by the
structural rules and moved to its representative; its signature in that frame
is recorded under the label.  A signature reached by two labels aborts the
build.  All non-signature lines of the catalog are kept verbatim.

    python3 tools/build_catalog.py --population 300 --seed 1000
"""

from __future__ import annotations

import argparse
import random
import sys
from collections import defaultdict
from pathlib import Path

from tropbt.catalog import canonicalize
from tropbt.classes import enumerate_classes
from tropbt.newton import dual_curve
from tropbt.quartic import parse_spec
from tropbt.sampling import sample_generic

ROOT = Path(__file__).resolve().parent.parent
CATALOG = ROOT / "src" / "tropbt" / "data" / "catalog.txt"
SEEDS = ROOT / "tools" / "catalog_seeds.txt"
WORKED = ROOT / "src" / "tropbt" / "data" / "worked_example.q"


def seed_specs():
    yield parse_spec(WORKED.read_text())
    block = []
    for line in SEEDS.read_text().splitlines() + ["---"]:
        if line.startswith("---"):
            if block:
                yield parse_spec("\n".join(block))
            block = []
        elif not line.startswith("#"):
            block.append(line)


def rewrite(found: dict) -> str:
    out = [line for line in CATALOG.read_text(encoding="utf-8").splitlines()
           if not line.strip().startswith("signature:")]
    text, blocks = [], []
    for line in out:
        if line.strip().startswith("[") and line.strip().endswith("]"):
            blocks.append([line])
        elif blocks:
            blocks[-1].append(line)
        else:
            text.append(line)
    for b in blocks:
        label = b[0].strip()[1:-1]
        while b and not b[-1].strip():
            b.pop()
        b.extend(f"signature: {s}" for s in sorted(found.get(label, ())))
        text.extend(b)
        text.append("")
    return "\n".join(text).rstrip() + "\n"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--population", type=int, default=300)
    ap.add_argument("--seed", type=int, default=1000)
    args = ap.parse_args(argv)
    found = defaultdict(set)
    owner = {}

    def record(classes):
        for cls in classes:
            c = canonicalize(cls, strict=False)
            if owner.setdefault(c.signature, c.label) != c.label:
                sys.exit(f"signature reached by {owner[c.signature]!r} and {c.label!r}")
            found[c.label].add(c.signature)

    for spec in seed_specs():
        record(enumerate_classes(dual_curve(spec)))
    for n in range(args.population):
        record(sample_generic(random.Random(args.seed + n)).classes)
        if (n + 1) % 25 == 0:
            print(f"{n + 1} quartics, {sum(map(len, found.values()))} signatures", flush=True)
    CATALOG.write_text(rewrite(found), encoding="utf-8")
    for label in sorted(found):
        print(f"{label:4s} {len(found[label])}")


if __name__ == "__main__":
    main()
