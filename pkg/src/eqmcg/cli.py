"""Command-line entry point.

Exit status is 0 when every requested verification passes, 2 when a bounded
computation was inconclusive, and 1 on failures or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from sympy import isprime

from .cover import CoverError, CoverSpec, cover_homology, lift_class
from .diagnostics import DEFAULT_MAX_WORD_LEN, FAIL, INCONCLUSIVE, PASS, diagnose
from .groups import FiniteGroup, GroupError, load_group, named_group, plus_cone_basis
from .hermitian import gamma_generators, hyperbolic_module
from .twists import TwistError, d_beta_agreement, gamma_ab_generators, pair_from_words
from .wedderburn import central_idempotents

EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}


@dataclass
class RunConfig:
    subcommand: str
    group: str | None = None
    spec: str | None = None
    alpha: str | None = None
    betas: list = field(default_factory=list)
    through: str | None = None
    max_word_len: int = DEFAULT_MAX_WORD_LEN
    primes: tuple = (2, 3, 5)
    json: bool = False

    def __post_init__(self):
        if self.max_word_len <= 0:
            raise ValueError("--max-word-len must be positive")
        bad = [p for p in self.primes if not isprime(p)]
        if bad:
            raise ValueError(f"--primes contains non-primes: {bad}")


def _group(arg: str) -> FiniteGroup:
    if Path(arg).suffix == ".json" or Path(arg).exists():
        return load_group(arg)
    return named_group(arg)


def _spec_data(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _group_info(cfg: RunConfig) -> tuple[str, dict]:
    g = _group(cfg.group)
    lab = g.labels
    return PASS, {
        "name": g.name, "order": g.order, "labels": list(lab),
        "abelian": g.is_abelian(),
        "generators": [lab[x] for x in g.generators],
        "element_orders": dict(zip(lab, g.element_orders)),
        "conjugacy_classes": [[lab[x] for x in c] for c in g.conjugacy_classes],
        "plus_index": plus_cone_basis(g).index,
    }


def _decompose(cfg: RunConfig) -> tuple[str, dict]:
    g = _group(cfg.group)
    blocks = central_idempotents(g)
    total = sum(b.dim_Q for b in blocks)
    status = PASS if total == g.order else FAIL
    return status, {"group": g.name, "order": g.order, "blocks": [b.to_json() for b in blocks]}


def _gamma(cfg: RunConfig) -> tuple[str, dict]:
    g = _group(cfg.group)
    m = hyperbolic_module(g)
    gens = gamma_generators(g)
    out = []
    for x in gens:
        d = x.to_json()
        d["integer_form"] = [[int(v) for v in row] for row in x.to_integer()]
        d["preserves_form"] = x.preserves_form(m)
        out.append(d)
    status = PASS if all(d["preserves_form"] for d in out) else FAIL
    return status, {"group": g.name, "generators": out}


def _cover_build(cfg: RunConfig) -> tuple[str, dict]:
    spec = CoverSpec.from_json(_spec_data(cfg.spec))
    H = cover_homology(spec)
    report = H.to_json()
    report["riemann_hurwitz_chi"] = spec.euler_characteristic
    return PASS, report


def _twists(cfg: RunConfig) -> tuple[str, dict]:
    data = _spec_data(cfg.spec)
    spec = CoverSpec.from_json(data)
    alpha = cfg.alpha or data.get("alpha", "x1")
    betas = cfg.betas or data.get("betas", [])
    through = cfg.through or data.get("through") or ("y" + alpha[1:] if alpha[0] == "x" else "x1")
    H = cover_homology(spec)
    a = lift_class(H, alpha)
    report = {"alpha": alpha, "a": [int(x) for x in a],
              "d_beta_agreement": d_beta_agreement(H, alpha, through)}
    ok = all(v["agree"] and v["certified"] for v in report["d_beta_agreement"].values())
    if betas:
        pair = pair_from_words(H, alpha, betas[0])
        gens = gamma_ab_generators(H, pair)
        report["pair"] = pair.to_json()
        report["generators"] = [m.to_json() for m in gens]
        ok = ok and pair.certified and all(m.ok for m in gens)
    return (PASS if ok else FAIL), report


def _diagnose(cfg: RunConfig) -> tuple[str, dict]:
    data = _spec_data(cfg.spec)
    spec = CoverSpec.from_json(data)
    alpha = cfg.alpha or data.get("alpha")
    betas = cfg.betas or data.get("betas", [])
    if not alpha or not betas:
        raise ValueError("diagnose needs an alpha word and at least one beta word")
    report = diagnose(spec, alpha, betas, cfg.max_word_len, cfg.primes)
    return report.status, report.to_json()


HANDLERS = {
    "group info": _group_info,
    "decompose": _decompose,
    "gamma": _gamma,
    "cover build": _cover_build,
    "twists": _twists,
    "diagnose": _diagnose,
}


def run(cfg: RunConfig) -> tuple[int, dict]:
    status, report = HANDLERS[cfg.subcommand](cfg)
    report = {"subcommand": cfg.subcommand, "status": status, **report}
    return EXIT[status], report


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--max-word-len", type=int, default=DEFAULT_MAX_WORD_LEN)
    common.add_argument("--primes", default="2,3,5", help="comma-separated primes for mod-l checks")

    p = argparse.ArgumentParser(prog="eqmcg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    grp = sub.add_parser("group", help="group utilities")
    grp_sub = grp.add_subparsers(dest="action", required=True)
    info = grp_sub.add_parser("info", parents=[common], help="order, classes, element orders")
    info.add_argument("group", help="catalog name (Z4, S3, Q8, ...) or path to group JSON")

    dec = sub.add_parser("decompose", parents=[common], help="Wedderburn blocks of QG")
    dec.add_argument("group")
    gam = sub.add_parser("gamma", parents=[common], help="generators of Gamma(G) on H2(ZG)")
    gam.add_argument("group")

    cov = sub.add_parser("cover", help="cover utilities")
    cov_sub = cov.add_subparsers(dest="action", required=True)
    build = cov_sub.add_parser("build", parents=[common], help="H_1 of a cover with G-action")
    build.add_argument("--spec", required=True)

    for name, helptext in (("twists", "twist matrices and the D_beta agreement"),
                           ("diagnose", "full finite-level diagnostics")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--spec", required=True)
        s.add_argument("--alpha", help="word of a trivializing curve, e.g. x2")
        s.add_argument("--beta", action="append", default=[], help="dual curve word (repeatable)")
        if name == "twists":
            s.add_argument("--through", help="letter dual to alpha used to build beta words")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    command = args.command if not getattr(args, "action", None) else \
        f"{args.command} {args.action}"
    primes = tuple(int(x) for x in args.primes.split(",") if x.strip())
    return RunConfig(subcommand=command, group=getattr(args, "group", None),
                     spec=getattr(args, "spec", None), alpha=getattr(args, "alpha", None),
                     betas=list(getattr(args, "beta", []) or []),
                     through=getattr(args, "through", None), max_word_len=args.max_word_len,
                     primes=primes, json=args.json)


def _human(report: dict) -> str:
    lines = [f"{report['subcommand']}: {report['status']}"]
    for key, value in report.items():
        if key in ("subcommand", "status"):
            continue
        if isinstance(value, (int, str)):
            lines.append(f"  {key}: {value}")
        elif key == "blocks":
            for b in value:
                lines.append(f"  block dim={b['dim']} min_ideal={b['min_ideal_dim']} "
                             f"center={b['center_degree']} indicator={b['indicator']} "
                             f"image={b['g_image_order']} label={b['label']}")
        elif isinstance(value, dict) and "verdict" in value:
            lines.append(f"  {key}: {value['verdict']}")
        elif isinstance(value, list):
            lines.append(f"  {key}: {len(value)} entries")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        code, report = run(cfg)
    except (GroupError, CoverError, TwistError, ValueError, OSError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1
    if cfg.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(_human(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
