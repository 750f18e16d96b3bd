"""Run the coherence certificate over a random corpus and summarize it."""

from __future__ import annotations

import argparse
import collections
import json
import time

from graypaste.corpus import random_corpus
from graypaste.relations import check_comparability
from graypaste.rewriting import RewriteSystem


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-faces", type=int, default=7)
    ap.add_argument("--json", action="store_true", help="print one certificate per line")
    args = ap.parse_args()

    t0 = time.perf_counter()
    by_faces = collections.Counter()
    modes = collections.Counter()
    closures = collections.Counter()
    failed = []
    for k, scheme in enumerate(random_corpus(args.n, args.seed, args.max_faces)):
        by_faces[len(scheme.faces)] += 1
        cert = RewriteSystem.from_scheme(scheme).check_contractibility(seed=args.seed)
        cert["comparability"] = check_comparability(scheme).ok
        modes[cert["mode"]] += 1
        closures.update(cert["branchings_closed"])
        if not (cert["certified"] and cert["comparability"]):
            failed.append(k)
        if args.json:
            print(json.dumps({"index": k, **cert}, sort_keys=True, ensure_ascii=False))
    print(f"schemes: {args.n}  faces: {dict(sorted(by_faces.items()))}")
    print(f"modes: {dict(modes)}  forks closed: {dict(closures)}")
    print(f"failed: {failed or 'none'}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
