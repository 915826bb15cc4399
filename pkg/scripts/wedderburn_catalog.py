"""Print the Wedderburn blocks of QG for every catalog group of order at most 12."""

import argparse
import time

from eqmcg.groups import named_group
from eqmcg.wedderburn import central_idempotents

GROUPS = ["1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2^3", "D4",
          "Q8", "Z9", "Z3xZ3", "Z10", "D5", "Z11", "Z12", "Z2xZ6", "D6", "A4", "Dic3"]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("groups", nargs="*", default=GROUPS)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    print(f"{'group':8} {'dim':>4} {'min':>4} {'deg':>4} {'ind':>4} {'img':>4}  label")
    for name in args.groups:
        start = time.perf_counter()
        blocks = central_idempotents(named_group(name), seed=args.seed)
        for b in blocks:
            print(f"{name:8} {b.dim_Q:4d} {b.min_ideal_dim:4d} {b.center_degree:4d} "
                  f"{b.indicator_sign:4d} {b.g_image_order:4d}  {b.exceptional_label}")
        print(f"{'':8} ({len(blocks)} blocks, {time.perf_counter() - start:.2f}s)")


if __name__ == "__main__":
    main()
