"""Command-line front end: ``build``, ``group``, ``analyze``, ``simulate``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .codes import CssCode, ProductMeta, QtMeta, build_from_descriptor, code_summary
from .cycles import (
    check_2tnc,
    combined_incidence,
    count_4cycles,
    girth,
    hgp_cycle_count,
    qt_cycle_census,
)
from .decode import DecoderConfig
from .gf2 import write_alist
from .grouping import make_groupings, quotient_tanner_graph, save_groupings
from .montecarlo import alpha_label, append_rows, grouping_label, read_done_keys, row_key, run_monte_carlo
from .trellis import trellis_stats


def _load_code(ref, base: Path = Path(".")) -> CssCode:
    if isinstance(ref, dict):
        return build_from_descriptor(ref)
    path = Path(ref)
    if not path.is_absolute():
        path = base / path
    return build_from_descriptor(path)


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(type(o))


def _clean(obj):
    if isinstance(obj, float) and math.isinf(obj):
        return "infinite"
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _dump(obj, out: str | None) -> None:
    text = json.dumps(_clean(obj), indent=2, default=_json_default)
    if out:
        Path(out).write_text(text + "\n")
    print(text)


# build ---------------------------------------------------------------------------


def cmd_build(args) -> int:
    code = _load_code(args.config)
    summary = code_summary(code)
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
        write_alist(code.H0, out / "H0.alist")
        write_alist(code.H1, out / "H1.alist")
        (out / "meta.json").write_text(json.dumps(summary, indent=2, default=_json_default) + "\n")
    print(f"[[{code.n}, {code.k}]]  row weight avg {summary['row_weight_avg']} "
          f"range {summary['row_weight_min']}-{summary['row_weight_max']}")
    if args.verbose:
        print(json.dumps(summary, indent=2, default=_json_default))
    return 0


# group ---------------------------------------------------------------------------


def cmd_group(args) -> int:
    code = _load_code(args.config)
    groupings = make_groupings(code, args.strategy, args.seed)
    if args.out:
        save_groupings(groupings, args.out, strategy=args.strategy, seed=args.seed)
    report = {}
    for g in groupings:
        dims = g.block_dims()
        report[f"side{g.side}"] = {
            "blocks": g.n_blocks,
            "r": g.r,
            "avg_n_c": float(np.mean([d[0] for d in dims])) if dims else 0.0,
            "avg_k_c": float(np.mean([d[1] for d in dims])) if dims else 0.0,
        }
    _dump({"strategy": args.strategy, "seed": args.seed, **report}, None)
    return 0


# analyze -------------------------------------------------------------------------


def analyze_code(code: CssCode, strategies: list[str], seed: int = 0, with_girth: bool = True) -> dict:
    report: dict = {"code": code_summary(code)}
    meta = code.meta
    if isinstance(meta, QtMeta):
        cx = meta.complex
        tnc = check_2tnc(cx.group, cx.A, cx.B)
        report["2tnc"] = {"holds": tnc.ok, "witness": list(tnc.witness) if tnc.witness else None}
        report["qt_census"] = {
            "full": qt_cycle_census(code, "full").to_json(),
            "ungrouped": qt_cycle_census(code, "ungrouped").to_json(),
        }
        default = ["trivial", "partial:A", "partial:B", "full"]
    else:
        default = ["trivial"]
    if isinstance(meta, ProductMeta) and meta.kind == "hgp":
        report["hgp"] = {"formula": list(hgp_cycle_count(meta.A, meta.B)),
                         "counted": [count_4cycles(code.H0), count_4cycles(code.H1)]}
    levels = []
    for strat in default + [s for s in strategies if s not in default]:
        groupings = make_groupings(code, strat, seed)
        level = {"grouping": strat}
        for g, H in zip(groupings, (code.H0, code.H1)):
            qg = quotient_tanner_graph(H, g)
            entry = {"blocks": g.n_blocks, "r": g.r, "four_cycles": count_4cycles(qg)}
            if with_girth:
                entry["girth"] = girth(qg)
            entry["trellis"] = trellis_stats(g.local_pcms)
            level[f"side{g.side}"] = entry
        level["joint_four_cycles"] = count_4cycles(combined_incidence(code, groupings))
        levels.append(level)
    report["levels"] = levels
    return report


def cmd_analyze(args) -> int:
    code = _load_code(args.config)
    strategies = args.grouping or []
    _dump(analyze_code(code, strategies, args.seed, not args.no_girth), args.out)
    return 0


# simulate ------------------------------------------------------------------------


def _epsilons(spec) -> list[float]:
    if isinstance(spec, dict) and "logspace" in spec:
        lo, hi, num = spec["logspace"]
        return [float(f"{x:.12g}") for x in np.logspace(math.log10(lo), math.log10(hi), int(num))]
    return [float(x) for x in spec]


def cmd_simulate(args) -> int:
    cfg_path = Path(args.config)
    cfg = json.loads(cfg_path.read_text())
    base = cfg_path.parent
    code = _load_code(cfg["code"], base)
    code_id = cfg.get("code_id", code.name or cfg_path.stem)
    seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))
    workers = args.workers if args.workers is not None else int(cfg.get("workers", 1))
    out = args.out or cfg.get("out")
    if not out:
        raise SystemExit("no output path: pass --out or set 'out' in the config")
    out = Path(out)
    if not out.is_absolute() and not args.out:
        out = base / out
    eps_list = _epsilons(cfg["epsilons"])
    trials = int(cfg.get("max_trials", cfg.get("trials", 1000)))
    target = cfg.get("failure_target")
    grouping_default = cfg.get("grouping", "full")
    grouping_seed = int(cfg.get("grouping_seed", seed))
    decoders = cfg.get("decoders", [{"decoder": "hybrid"}])
    done = read_done_keys(out)
    for dspec in decoders:
        dspec = dict(dspec)
        dspec.setdefault("grouping", grouping_default)
        dcfg = DecoderConfig.from_dict(dspec)
        todo = [
            (i, e) for i, e in enumerate(eps_list)
            if row_key(code_id, dcfg.decoder, grouping_label(dcfg), alpha_label(dcfg), int(dcfg.t_max), dcfg.osd, e, seed) not in done
        ]
        if not todo:
            continue
        groupings = make_groupings(code, dcfg.grouping, grouping_seed) if dcfg.decoder in ("gmbp4", "hybrid") else None
        for i, e in todo:
            rows = run_monte_carlo(code, dcfg, [e], trials, seed, workers, target, groupings, code_id, [i])
            append_rows(out, rows)
            r = rows[0]
            print(f"{code_id} {dcfg.decoder} eps={e:g} trials={r.trials} failures={r.failures} ler={r.ler:.4g}",
                  file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gencheck", description="Generalized-check BP toolkit for quantum LDPC codes.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a code and write H0/H1 as alist plus metadata")
    b.add_argument("--config", required=True, help="code descriptor JSON")
    b.add_argument("--out", help="output directory")
    b.add_argument("--verbose", action="store_true")
    b.set_defaults(func=cmd_build)

    g = sub.add_parser("group", help="create a grouping file")
    g.add_argument("--config", required=True, help="code descriptor JSON")
    g.add_argument("--strategy", default="full",
                   help="trivial | full | partial:A | partial:B | greedy:<r> | local-greedy:<r> | file:<path>")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="grouping JSON to write")
    g.set_defaults(func=cmd_group)

    a = sub.add_parser("analyze", help="cycle census, girth, 2-TNC and trellis statistics")
    a.add_argument("--config", required=True, help="code descriptor JSON")
    a.add_argument("--grouping", action="append", help="extra grouping strategy (repeatable)")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--no-girth", action="store_true", help="skip girth computation")
    a.add_argument("--out", help="write the JSON report here as well")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("simulate", help="Monte Carlo logical error rates to CSV")
    s.add_argument("--config", required=True, help="experiment JSON")
    s.add_argument("--seed", type=int)
    s.add_argument("--workers", type=int)
    s.add_argument("--out", help="CSV path (overrides the config)")
    s.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
