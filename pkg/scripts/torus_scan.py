#!/usr/bin/env python3
"""Census of finiteness verdicts for random torus data vs the dense scan.

Samples integer-matrix data on low-dimensional tori, runs the pool-based
finiteness check, and cross-examines every verdict against brute-force
codimension checking over all subspaces with small-entry bases.  Reports the
verdict distribution and any disagreement (a missed violator would be a bug
worth triaging).
"""

import argparse
import random
import time
from collections import Counter

from blgroups.datum import Exponent
from blgroups.lie import (
    CompactLieDatum,
    LinearizedMap,
    Verdict,
    brute_force_torus_violator,
    codimension_defect,
    finiteness,
)


def random_datum(rng, max_dim, entry_bound):
    t = rng.randint(1, max_dim)
    J = rng.randint(1, 3)
    maps = tuple(
        LinearizedMap(
            (),
            [
                [rng.randint(-entry_bound, entry_bound) for _ in range(t)]
                for _ in range(rng.randint(1, max_dim))
            ],
        )
        for _ in range(J)
    )
    return CompactLieDatum((), t, maps)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=60)
    ap.add_argument("--max-dim", type=int, default=3)
    ap.add_argument("--entry-bound", type=int, default=2)
    ap.add_argument("--scan-box", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    verdicts = Counter()
    disagreements = []
    t0 = time.time()
    for i in range(args.count):
        d = random_datum(rng, args.max_dim, args.entry_bound)
        p = [Exponent.of(rng.choice(["1", "3/2", "2", "3", "inf"]))
             for _ in range(d.J)]
        rep = finiteness(d, p)
        verdicts[rep.verdict.value] += 1
        brute = brute_force_torus_violator(d, p, box=args.scan_box)
        if rep.verdict is Verdict.INFINITE:
            assert codimension_defect(d, p, rep.violator) > 0
        elif brute is not None:
            disagreements.append((i, d, [str(x) for x in p], brute))
    print(f"{args.count} data in {time.time() - t0:.1f}s: {dict(verdicts)}")
    if disagreements:
        print(f"MISSED VIOLATORS: {len(disagreements)}")
        for i, d, p, brute in disagreements:
            print(f"  datum {i}: p={p} torus_dim={d.torus_dim} "
                  f"violator basis={brute.torus_basis}")
    else:
        print("no violator missed by the pool")


if __name__ == "__main__":
    main()
