"""``kk`` command line: one verb per library operation.

Exit codes: 0 success, 1 usage or domain error, 2 theorem violation found.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import certify, oracle
from .classify import decompose, match_structures
from .errors import KempermanError
from .groups import Group, Subgroup, build_group
from .sets import closure_coset, deficiency_pair, deficiency_set, format_set, parse_set, stabilizer, sumset
from .structures import SEARCH_ORDER
from .trio import make_trio, parse_trio, saturate, trio_deficiency
from .verify import verify_certificate


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _arg(text: str) -> str:
    """Resolve ``@path`` indirection."""
    if text.startswith("@"):
        return Path(text[1:]).read_text(encoding="utf-8").strip()
    return text


def _universe(G: Group, args) -> Optional[Subgroup]:
    if not getattr(args, "universe", None):
        return None
    U = parse_set(_arg(args.universe), G)
    return Subgroup.checked(G, U.mask)


def _emit(args, human: str, record) -> None:
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(human)


def _tag_record(tag) -> dict:
    rec = {"kind": tag.kind.value, "H": list(tag.H), "perm": list(tag.similarity.perm),
           "shift": list(tag.similarity.shift)}
    if tag.R is not None:
        rec["R"] = tag.R
    return rec


def _trio_record(t) -> dict:
    A, B, C = (list(X) for X in t.members)
    return {"A": A, "B": B, "C": C, "deficiency": trio_deficiency(t)}


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise KempermanError(f"cannot write {path}: {e}") from None


# -- verbs ---------------------------------------------------------------------------


def cmd_sumset(args) -> int:
    G = build_group(args.group)
    S = sumset(parse_set(_arg(args.A), G), parse_set(_arg(args.B), G))
    _emit(args, format_set(S), {"sumset": list(S)})
    return 0


def cmd_stab(args) -> int:
    G = build_group(args.group)
    H = stabilizer(parse_set(_arg(args.A), G))
    _emit(args, format_set(H), {"stabilizer": list(H)})
    return 0


def cmd_closure(args) -> int:
    G = build_group(args.group)
    H, x = closure_coset(parse_set(_arg(args.A), G))
    _emit(args, f"{x} + {format_set(H)}", {"H": list(H), "offset": x})
    return 0


def cmd_deficiency(args) -> int:
    G = build_group(args.group)
    A = parse_set(_arg(args.A), G)
    if args.B is not None:
        d = deficiency_pair(A, parse_set(_arg(args.B), G))
        _emit(args, str(d), {"deficiency": d})
    else:
        d, H = deficiency_set(A)
        _emit(args, f"{d} (H={format_set(H)})", {"deficiency": d, "H": list(H)})
    return 0


def _trio_out(args, t) -> None:
    d = trio_deficiency(t)
    _emit(args, f"{t}  deficiency={d}", _trio_record(t))


def cmd_trio(args) -> int:
    G = build_group(args.group)
    U = _universe(G, args)
    _trio_out(args, make_trio(parse_set(_arg(args.A), G, U), parse_set(_arg(args.B), G, U), U))
    return 0


def cmd_saturate(args) -> int:
    G = build_group(args.group)
    _trio_out(args, saturate(parse_trio(_arg(args.trio), G, _universe(G, args))))
    return 0


def cmd_classify(args) -> int:
    G = build_group(args.group)
    t = parse_trio(_arg(args.trio), G, _universe(G, args))
    tags = match_structures(t, first=not args.all)
    if args.json:
        for tag in tags:
            print(json.dumps(_tag_record(tag), sort_keys=True))
    elif not tags:
        print("no structure")
    for tag in tags if not args.json else ():
        r = "" if tag.R is None else f" R={tag.R}"
        print(f"{tag.kind.value} H={format_set(tag.H)}{r} perm={tag.similarity.perm} shift={tag.similarity.shift}")
    return 0


def cmd_decompose(args) -> int:
    G = build_group(args.group)
    cert = decompose(parse_trio(_arg(args.trio), G, _universe(G, args)))
    text = certify.render(cert, seed=args.seed)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    bad = 0
    for item in args.paths:
        p = Path(item)
        if p.is_dir():
            summary = certify.batch_verify(p, workers=args.workers)
            for line in summary.lines():
                print(line)
            bad += len(summary.failed) + len(summary.unreadable)
            continue
        try:
            verdict = verify_certificate(certify.parse(p.read_text(encoding="utf-8")))
        except OSError as e:
            raise KempermanError(f"cannot read {p}: {e}") from None
        print(f"{p.name}: {verdict}")
        bad += not verdict.ok
    return 1 if bad else 0


def cmd_enumerate(args) -> int:
    G = build_group(args.group)
    for t in oracle.enumerate_maximal_critical_trios(G, dedup=args.dedup, bound=args.max_order):
        _emit(args, str(t), _trio_record(t))
    return 0


def cmd_check(args) -> int:
    options = {"seed": args.seed, "workers": args.workers}
    if args.trials is not None:
        options["trials"] = args.trials
    if args.dedup:
        options["dedup"] = True
    if args.max_order is not None:
        options["bound"] = args.max_order
    rep = oracle.check_theorem(args.group, args.theorem, **options)
    text = rep.render()
    if args.report:
        _write(args.report, text)
    if args.json:
        sys.stdout.write(text)
    else:
        print(f"{rep.theorem} {rep.group}: instances: {rep.instances}, violations: {len(rep.violations)}")
    if rep.violations:
        path = args.report or f"kk-{rep.theorem}-{rep.group}.jsonl"
        if not args.report:
            _write(path, text)
        print(f"theorem violation report: {path}", file=sys.stderr)
        return 2
    return 0


def cmd_atlas(args) -> int:
    rows = oracle.build_atlas(args.max_order if args.max_order is not None else 8)
    out = Path(args.out) if args.out else None
    if out is not None:
        try:
            (out / "certificates").mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise KempermanError(f"cannot create {out}: {e}") from None
    lines = []
    for row in rows:
        lines.append(json.dumps(row.record(), sort_keys=True))
        if out is not None:
            for kind, cert in sorted(row.certificates.items()):
                _write(str(out / "certificates" / f"{row.group}-{kind}.json"), certify.render(cert))
    if out is not None:
        _write(str(out / "atlas.jsonl"), "".join(line + "\n" for line in lines))
    if args.json:
        print("\n".join(lines))
    else:
        kinds = [k.value for k in SEARCH_ORDER]
        print("group".ljust(12) + "orbits".rjust(8) + "".join(k.rjust(14) for k in kinds))
        for row in rows:
            print(row.group.ljust(12) + str(row.total).rjust(8) + "".join(str(row.first_step[k]).rjust(14) for k in kinds))
    return 0


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-g", "--group", default="Z1", help="group spec such as Z8 or Z2xZ4")
    common.add_argument("--json", action="store_true", help="machine-readable records")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--max-order", type=int, default=None, help="exhaustive order bound override")
    common.add_argument("--universe", help="ambient subgroup for trio verbs")

    parser = _Parser(prog="kk", description="Critical trios in finite abelian groups.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = verb("sumset", cmd_sumset, "A + B")
    p.add_argument("A")
    p.add_argument("B")
    verb("stab", cmd_stab, "stabilizer of A").add_argument("A")
    verb("closure", cmd_closure, "smallest coset containing A").add_argument("A")
    p = verb("deficiency", cmd_deficiency, "deficiency of a pair, or of a single set")
    p.add_argument("A")
    p.add_argument("B", nargs="?")
    p = verb("trio", cmd_trio, "complete (A, B) to a trio")
    p.add_argument("A")
    p.add_argument("B")
    verb("saturate", cmd_saturate, "maximal supertrio").add_argument("trio")
    p = verb("classify", cmd_classify, "beat/chord tags of a trio")
    p.add_argument("trio")
    p.add_argument("--all", action="store_true", help="every tag, not just the first kind found")
    p = verb("decompose", cmd_decompose, "certificate document for a maximal critical trio")
    p.add_argument("trio")
    p.add_argument("--out")
    verb("verify", cmd_verify, "verify certificate files or directories").add_argument("paths", nargs="+")
    p = verb("enumerate", cmd_enumerate, "nontrivial maximal critical trios")
    p.add_argument("--dedup", action="store_true", help="one representative per similarity orbit")
    p = verb("check", cmd_check, "check a theorem on a group")
    p.add_argument("theorem", choices=oracle.THEOREMS)
    p.add_argument("--trials", type=int)
    p.add_argument("--dedup", action="store_true")
    p.add_argument("--report", help="write the line-delimited report here")
    p = verb("atlas", cmd_atlas, "structure counts for all groups up to --max-order")
    p.add_argument("--out", help="directory for atlas.jsonl and representative certificates")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (KempermanError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
