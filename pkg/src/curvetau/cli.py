"""``curvetau`` command line."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from curvetau import __version__
from curvetau.curve import set_precision_cap, validate
from curvetau.document import CurveDocument, dump_report
from curvetau.errors import CurveTauError
from curvetau.macaulay import DEFAULT_DEGREE_CAP
from curvetau.report import Timer, dimca, invariants


def _settings(doc: CurveDocument):
    set_precision_cap(doc.settings.get("precision_cap"))
    return doc.settings.get("degree_cap", DEFAULT_DEGREE_CAP), doc.settings.get("bound_multiplier", 1)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _run_section(timer: Timer, degree_cap: int, multiplier: int) -> dict:
    return {"timings": timer.laps, "settings": {"degree_cap": degree_cap, "bound_multiplier": multiplier},
            "version": __version__}


def cmd_validate(args) -> int:
    doc = CurveDocument.load(args.file)
    _settings(doc)
    rep = validate(doc.curve)
    print(json.dumps(rep.to_json(), sort_keys=True))
    return 0


def cmd_invariants(args) -> int:
    doc = CurveDocument.load(args.file)
    cap, mult = _settings(doc)
    timer = Timer()
    canon = invariants(doc.curve, cap, mult, timer)
    _emit(dump_report(canon, _run_section(timer, cap, mult), doc.to_json()), args.json)
    return 0


def _parse_split(text: str, r: int):
    try:
        J = sorted({int(v) - 1 for v in text.split(",") if v.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}") from None
    if not J or len(J) >= r or J[0] < 0 or J[-1] >= r:
        raise argparse.ArgumentTypeError(f"partition {text!r} is not a proper subset of 1..{r}")
    return tuple(J)


def cmd_dimca(args) -> int:
    doc = CurveDocument.load(args.file)
    cap, mult = _settings(doc)
    r = doc.curve.r
    if r < 2:
        print("dimca: the curve needs at least two branches", file=sys.stderr)
        return 3
    splits = None if args.all_partitions else [_parse_split(args.partition, r)]
    timer = Timer()
    canon = dimca(doc.curve, splits, cap, mult, timer)
    _emit(dump_report(canon, _run_section(timer, cap, mult), doc.to_json()), args.json)
    return 0


def cmd_corpus(args) -> int:
    files = sorted(Path(args.dir).glob("*.json"))
    if not files:
        print(f"no curve documents in {args.dir}", file=sys.stderr)
        return 2
    worst = 0
    for path in files:
        try:
            doc = CurveDocument.load(path)
            cap, mult = _settings(doc)
            timer = Timer()
            inv = invariants(doc.curve, cap, mult, timer)
            line = f"{path.stem}: r={inv['r']} tau={inv['tau']['formula']} mu={inv['milnor']['oracle']}"
            if doc.curve.r >= 2:
                d = dimca(doc.curve, None, cap, mult, timer)
                line += " slacks=" + ",".join(str(p["slack"]) for p in d["partitions"])
            line += f" ({sum(timer.laps.values()):.2f}s)"
            print(line)
        except CurveTauError as exc:
            print(f"{path.stem}: {type(exc).__name__}: {exc}")
            worst = max(worst, exc.exit_code)
    return worst


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="curvetau", description="Value sets, Tjurina and Milnor numbers of plane curves.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a curve document")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    inv = sub.add_parser("invariants", help="semigroup, Jacobian value set, τ and μ")
    inv.add_argument("file")
    inv.add_argument("--json", metavar="OUT", help="write the report here instead of stdout")
    inv.set_defaults(func=cmd_invariants)

    d = sub.add_parser("dimca", help="τ(C) - τ(C_J) - τ(C_K) against 2 I(C_J, C_K) - 1")
    d.add_argument("file")
    g = d.add_mutually_exclusive_group(required=True)
    g.add_argument("--partition", metavar="J", help="comma-separated 1-based branch indices, e.g. 1,2")
    g.add_argument("--all-partitions", action="store_true")
    d.add_argument("--json", metavar="OUT")
    d.set_defaults(func=cmd_dimca)

    c = sub.add_parser("corpus", help="run invariants and all splits on every *.json in a directory")
    c.add_argument("dir")
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        print(f"curvetau: {exc}", file=sys.stderr)
        return 2
    except CurveTauError as exc:
        print(f"curvetau: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"curvetau: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
