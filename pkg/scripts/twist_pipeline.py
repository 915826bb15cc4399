"""Run the twist and diagnostics pipeline on the input covers and summarize verdicts."""

import argparse
import json
from pathlib import Path

from eqmcg.cover import CoverSpec, cover_homology, standard_test_cover
from eqmcg.diagnostics import diagnose
from eqmcg.twists import d_beta_agreement

ROOT = Path(__file__).resolve().parent.parent


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("specs", nargs="*", type=Path,
                        default=sorted((ROOT / "inputs").glob("*.json")))
    parser.add_argument("--max-word-len", type=int, default=6)
    args = parser.parse_args()

    print("D_beta agreement on standard test covers")
    for name in ("Z2", "Z3", "S3"):
        H = cover_homology(standard_test_cover(name))
        table = d_beta_agreement(H, "x1", "y1")
        agree = sum(row["agree"] for row in table.values())
        print(f"  {name:4} genus {H.genus}: {agree}/{len(table)} values of h agree")

    print("diagnostics on input specs")
    for path in args.specs:
        data = json.loads(path.read_text())
        if "alpha" not in data:
            print(f"  {path.name}: no alpha/beta words, skipped")
            continue
        report = diagnose(CoverSpec.from_json(data), data["alpha"], data["betas"],
                          args.max_word_len)
        lat = report.lattice
        print(f"  {path.name}: {report.status}  span={report.span['span_dim']}/"
              f"{report.span['rank']} fixed={report.fixed_dim} "
              f"orbit rank={lat['lattice']['rank']} orthogonality={lat['orthogonality']}")


if __name__ == "__main__":
    main()
