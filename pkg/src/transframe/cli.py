"""``transframe`` command line.

Verdict-bearing output goes to stdout as JSON, a one-line human summary
to stderr.  Exit codes: 0 pass/valid, 1 fail/invalid, 2 input error,
3 frame not rooted, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import families, io, reduction, semantics, trees
from .errors import BudgetExceeded, NotRooted, SkeletonNotTree, TransframeError
from .formula import mk_B, mk_Wid, mk_Wid_bullet, mk_Wid_plus, parse, to_text
from .frame import irr_antichain_max, rank_of_frame, weak_width_at, width
from .jankov import canonical_spec, frame_formula

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_NOT_ROOTED, EXIT_BUDGET = 0, 1, 2, 3, 4


def _emit(result: dict, summary: str) -> None:
    print(json.dumps(result, indent=2, sort_keys=True))
    if summary:
        print(summary, file=sys.stderr)


def _frame(args, path):
    return io.load_frame(path, close=getattr(args, "close", False))


def _valuation_json(v: dict | None):
    if v is None:
        return None
    return {k: sorted(map(str, pts)) for k, pts in v.items()}


# -- subcommands -----------------------------------------------------------

def cmd_analyze(args) -> tuple[int, dict, str]:
    F = _frame(args, args.frame)
    roots = list(F.roots)
    if args.width:
        if not roots:
            raise NotRooted("width is only reported for rooted frames")
        w = width(F)
        return EXIT_PASS, {"width": w}, f"width {w}"
    sk = F.skeleton
    try:
        trees._tree_check(F, F.full_mask)
        tree = {"holds": True, "message": None}
    except SkeletonNotTree as e:
        tree = {"holds": False, "message": str(e)}
    sizes = sorted(len(c) for c in sk.clusters if not c.degenerate)
    result = {
        "points": len(F),
        "rank": rank_of_frame(F),
        "roots": [str(r) for r in roots],
        "width": width(F) if roots else None,
        "weak_width": {str(r): weak_width_at(F, r) for r in roots},
        "irr_antichain_max": irr_antichain_max(F),
        "clusters": {
            "count": len(sk),
            "degenerate": sum(1 for c in sk.clusters if c.degenerate),
            "nondegenerate": len(sizes),
            "nondegenerate_sizes": sizes,
        },
        "skeleton_tree": tree,
    }
    summary = f"rank {result['rank']}, {len(roots)} root(s), width {result['width']}"
    return EXIT_PASS, result, summary


def _formula_from_args(args):
    families_given = [(name, getattr(args, name)) for name in ("B", "wid", "widplus", "widbullet")
                      if getattr(args, name) is not None]
    if args.formula is not None and families_given:
        raise ValueError("give either a formula or one family flag, not both")
    if len(families_given) > 1:
        raise ValueError("give at most one family flag")
    if families_given:
        name, n = families_given[0]
        return {"B": mk_B, "wid": mk_Wid, "widplus": mk_Wid_plus, "widbullet": mk_Wid_bullet}[name](n)
    if args.formula is None:
        raise ValueError("no formula given")
    return parse(args.formula)


def cmd_check(args) -> tuple[int, dict, str]:
    F = _frame(args, args.frame)
    phi = _formula_from_args(args)
    if args.point is not None:
        if args.point not in F:
            raise ValueError(f"unknown point {args.point!r}")
        res = semantics.point_valid(F, args.point, phi, args.budget, args.strategy)
    else:
        res = semantics.frame_valid(F, phi, args.budget, args.strategy)
    result = {
        "formula": to_text(phi),
        "point": args.point,
        "valid": res.valid,
        "strategy": res.strategy,
        "checked": res.checked,
        "countermodel": None if res.valid else {
            "point": str(res.point), "valuation": _valuation_json(res.valuation)},
    }
    where = f" at {args.point}" if args.point is not None else ""
    return (EXIT_PASS if res.valid else EXIT_FAIL), result, ("valid" if res.valid else "invalid") + where


def cmd_frame_formula(args) -> tuple[int, dict, str]:
    F = _frame(args, args.frame)
    spec = canonical_spec(F)
    phi = frame_formula(spec)
    result = {"ordering": [str(x) for x in spec.ordering], "formula": to_text(phi)}
    return EXIT_PASS, result, f"frame formula over {len(F)} variables"


def cmd_reduce(args) -> tuple[int, dict, str]:
    G = _frame(args, args.source)
    F = _frame(args, args.target)
    m = reduction.find_reduction(G, F, args.budget)
    if m is None:
        return EXIT_FAIL, {"reducible": False, "map": None}, "no reduction"
    return EXIT_PASS, {"reducible": True, **m.to_json()}, "reduction found"


def _load_manifest(args):
    path = Path(args.manifest)
    data = json.loads(path.read_text())
    if not isinstance(data, dict) or not isinstance(data.get("frames"), list):
        raise ValueError("manifest must be an object with a 'frames' list")
    return [_frame(args, path.parent / f) for f in data["frames"]]


def cmd_audit(args) -> tuple[int, dict, str]:
    frames = _load_manifest(args)
    audit = reduction.audit_sequence(frames, args.mode, args.budget, args.jobs)
    code = {"pass": EXIT_PASS, "fail": EXIT_FAIL, "unknown": EXIT_BUDGET}[audit.verdict]
    return code, audit.to_json(), f"audit ({args.mode}): {audit.verdict}"


def _tree_arg(args, text: str):
    p = Path(text)
    if p.suffix == ".json" and p.exists():
        data = json.loads(p.read_text())
        if "points" in data:
            F = io.frame_from_json(data, args.close)
            return trees.srt(F) if args.srt else trees.rt(F)
        return trees.tree_from_json(data)
    if p.exists():
        return trees.parse_tree(p.read_text().strip())
    return trees.parse_tree(text)


def cmd_embed(args) -> tuple[int, dict, str]:
    a = _tree_arg(args, args.a)
    b = _tree_arg(args, args.b)
    ab = trees.tree_embed(a, b)
    result = {"a": a.encoding, "b": b.encoding, "a_embeds_in_b": ab,
              "b_embeds_in_a": trees.tree_embed(b, a)}
    return (EXIT_PASS if ab else EXIT_FAIL), result, f"{a} {'⊑' if ab else '⋢'} {b}"


def cmd_gen_h(args) -> tuple[int, dict, str]:
    H = families.make_H(args.n)
    if args.output:
        io.save_frame(H, args.output)
        return EXIT_PASS, {"n": args.n, "points": len(H), "output": str(args.output)}, f"wrote H_{args.n}"
    return EXIT_PASS, io.frame_to_json(H), f"H_{args.n}: {len(H)} points"


def cmd_gen_corpus(args) -> tuple[int, dict, str]:
    spec = families.CorpusSpec.from_json(args.spec)
    manifest = families.write_corpus(spec, args.output)
    data = json.loads(manifest.read_text())
    return EXIT_PASS, {"manifest": str(manifest), "frames": len(data["frames"]),
                       "attempts": data["attempts"]}, f"wrote {len(data['frames'])} frames"


def cmd_dot(args) -> tuple[int, dict | None, str]:
    F = _frame(args, args.frame)
    text = io.to_dot(F, Path(args.frame).stem)
    if args.output:
        Path(args.output).write_text(text)
        return EXIT_PASS, {"output": str(args.output)}, "wrote DOT"
    sys.stdout.write(text)
    return EXIT_PASS, None, ""


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="transframe", description="Analyze finite transitive Kripke frames.")
    sub = ap.add_subparsers(dest="command", required=True)

    def frame_cmd(name, help_, func):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--close", action="store_true", help="transitively close edges on load")
        sp.set_defaults(func=func)
        return sp

    sp = frame_cmd("analyze", "rank, width, weak width, clusters", cmd_analyze)
    sp.add_argument("frame")
    sp.add_argument("--width", action="store_true", help="report width only (rooted frames)")

    sp = frame_cmd("check", "validity of a formula", cmd_check)
    sp.add_argument("frame")
    sp.add_argument("formula", nargs="?")
    sp.add_argument("--B", type=int, metavar="N")
    sp.add_argument("--wid", type=int, metavar="N")
    sp.add_argument("--widplus", type=int, metavar="N")
    sp.add_argument("--widbullet", type=int, metavar="N")
    sp.add_argument("--point")
    sp.add_argument("--strategy", choices=["enumerate", "search"], default="enumerate")
    sp.add_argument("--budget", type=int)

    sp = frame_cmd("frame-formula", "frame formula of a rooted frame", cmd_frame_formula)
    sp.add_argument("frame")

    sp = frame_cmd("reduce", "search a reduction of SOURCE onto TARGET", cmd_reduce)
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--budget", type=int)

    sp = frame_cmd("audit", "irreducibility audit of a frame sequence", cmd_audit)
    sp.add_argument("manifest")
    sp.add_argument("--mode", choices=["backward", "full"], default="backward")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--budget", type=int)

    sp = frame_cmd("embed", "compare two trees (or frames via rt/srt) under tree embedding", cmd_embed)
    sp.add_argument("a")
    sp.add_argument("b")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--rt", action="store_true", default=True)
    g.add_argument("--srt", action="store_true")

    sp = sub.add_parser("gen-h", help="write the frame H_n")
    sp.add_argument("n", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen_h)

    sp = sub.add_parser("gen-corpus", help="sample a constrained corpus")
    sp.add_argument("spec")
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_gen_corpus)

    sp = frame_cmd("dot", "Graphviz export", cmd_dot)
    sp.add_argument("frame")
    sp.add_argument("-o", "--output")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code, result, summary = args.func(args)
    except NotRooted as e:
        code, result, summary = EXIT_NOT_ROOTED, {"error": "not_rooted", "message": str(e)}, str(e)
    except BudgetExceeded as e:
        code = EXIT_BUDGET
        result = {"error": "budget", "required": e.required, "budget": e.budget, "message": str(e)}
        summary = str(e)
    except (TransframeError, ValueError, OSError, KeyError) as e:
        code, result, summary = EXIT_INPUT, {"error": "input", "message": str(e)}, f"error: {e}"
    if result is not None:
        result = {"command": args.command, **result,
                  "timing": {"seconds": round(time.perf_counter() - start, 6)}}
        _emit(result, summary)
    return code


if __name__ == "__main__":
    sys.exit(main())
