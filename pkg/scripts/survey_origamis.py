"""Classify random square-tiled surfaces and tabulate the outcome.

    python scripts/survey_origamis.py --count 20 --max-squares 6
"""

import argparse
import random
from collections import Counter

from tsurf import catalog
from tsurf.covering import classify
from tsurf.errors import NotTransitive


def random_origami(rng, n):
    while True:
        h, v = list(range(n)), list(range(n))
        rng.shuffle(h)
        rng.shuffle(v)
        try:
            return h, v, catalog.square_tiled(h, v)
        except NotTransitive:
            continue


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--max-squares", type=int, default=6)
    ap.add_argument("--bound", default="3")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    tally = Counter()
    print(f"{'n':>3} {'stratum':<10} {'dirs':>4} {'rank':>4} {'index':>5} {'degree':>6}  h / v")
    for _ in range(args.count):
        n = rng.randint(1, args.max_squares)
        h, v, net = random_origami(rng, n)
        rep = classify(net, int(args.bound), 200)
        d = rep.to_dict()
        deg = rep.covering.degree if rep.covering else "-"
        idx = d["homology_generated_by_periodic_orbits"]["index"]
        tally[rep.verdicts["torus_branched_covering"]] += 1
        print(
            f"{n:>3} {d['surface']['stratum']:<10} {len(rep.decompositions):>4} {rep.homology_rank:>4} "
            f"{idx if idx is not None else 'inf':>5} {deg:>6}  {[x + 1 for x in h]} / {[x + 1 for x in v]}"
        )
    print("covering verdicts:", dict(tally))


if __name__ == "__main__":
    main()
