"""Build random covers and compare invariants against Riemann-Hurwitz and Chevalley-Weil.

For each cover the rational trivial isotypic part of H_1 must have dimension
2h (the homology of the quotient), and every block component must have a
dimension divisible by the block's minimal left ideal.
"""

import argparse
import random
from collections import Counter

from eqmcg.cover import cover_homology, random_cover_spec
from eqmcg.groups import named_group
from eqmcg.wedderburn import central_idempotents, isotypical_projection


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--groups", nargs="+", default=["Z2", "Z3", "Z4", "Z2xZ2", "S3", "Q8"])
    parser.add_argument("--count", type=int, default=20)
    parser.add_argument("--max-genus", type=int, default=2)
    parser.add_argument("--max-branch", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    for name in args.groups:
        g = named_group(name)
        blocks = central_idempotents(g)
        tally = Counter()
        genera = Counter()
        for _ in range(args.count):
            spec = random_cover_spec(g, rng, args.max_genus, args.max_branch)
            H = cover_homology(spec)
            module = H.gmodule()
            dims = [isotypical_projection(b, module).dim for b in blocks]
            trivial = next(d for b, d in zip(blocks, dims) if b.is_trivial_character)
            ok = trivial == 2 * spec.genus and sum(dims) == H.rank
            ok &= all(d % b.min_ideal_dim == 0 for b, d in zip(blocks, dims))
            tally["ok" if ok else "mismatch"] += 1
            genera[H.genus] += 1
        spread = ", ".join(f"genus {k}: {v}" for k, v in sorted(genera.items()))
        print(f"{name:6} ok={tally['ok']} mismatch={tally['mismatch']}  [{spread}]")


if __name__ == "__main__":
    main()
