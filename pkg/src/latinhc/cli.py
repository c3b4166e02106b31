"""Command line: ``latinhc {construct,check,solve,search,sample,verify,show}``.

Exit codes: 0 feasible/valid, 1 infeasible/invalid, 2 unknown (budget),
64 usage error, 65 data error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Any, NoReturn, Sequence

from . import __version__, io
from .construct import (
    cyclic_development,
    cyclic_hypercube,
    lift,
    nonlayerable_array,
    pebody_array,
    prefix,
)
from .core import (
    ConstraintArray,
    Hypercuboid,
    Layer,
    SetArray,
    SolveOutcome,
    Status,
    validate_hypercuboid,
    validate_layer,
    validate_set_array,
)
from .errors import ForcedConflict, LatinError

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 64, 65
STATUS_EXIT = {Status.FEASIBLE: EXIT_OK, Status.INFEASIBLE: EXIT_NO, Status.UNKNOWN: EXIT_UNKNOWN}

SAMPLING_NOTE = (
    "Latin squares come from a Jacobson-Matthews walk; hypercuboids of "
    "dimension >= 3 are grown layer by layer (or cut from a composed "
    "hypercube at depth n-1 and n) and are NOT uniformly distributed; set "
    "arrays are always realisable."
)


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-nodes", type=int, default=None, help="stop after this many search nodes")
    p.add_argument("--budget-secs", type=float, default=None, help="stop after this many seconds")
    p.add_argument("--deterministic", action="store_true", default=True, help="single-threaded canonical order (default)")
    p.add_argument("--parallel", type=int, default=None, metavar="N", help="use N worker processes")


def _out_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", default=None, help="output file (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latinhc", description="Latin hypercuboids and arrays of sets.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="build an explicit object")
    p.add_argument("kind", choices=["cyclic", "pebody", "nonlayerable", "lift", "develop", "prefix"])
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--input", "-i", help="input file for lift, develop and prefix")
    _out_arg(p)

    p = sub.add_parser("check", help="validate a file")
    p.add_argument("kind", choices=["hypercuboid", "array", "layer", "delta"])
    p.add_argument("file")

    p = sub.add_parser("solve", help="run a decision procedure")
    p.add_argument("kind", choices=["layer", "decompose", "extend", "complete", "avoid", "rectangle"])
    p.add_argument("file")
    p.add_argument("--forced", action="append", default=[], metavar="(i,j,...)=s", help="pin a cell (1-based) to a symbol")
    _budget_args(p)
    _out_arg(p)

    p = sub.add_parser("search", help="look for noncompletable / nonextendible hypercuboids")
    p.add_argument("kind", choices=["noncompletable", "nonextendible", "threshold"])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--kmax", type=int)
    p.add_argument("--kind", dest="measure", choices=["NC", "NE"], default="NC")
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000, help="random mode: hypercuboids to try")
    p.add_argument("--no-shortcuts", action="store_true", help="search even where a known result settles the answer")
    _budget_args(p)
    _out_arg(p)

    p = sub.add_parser("sample", help="seeded random objects", description=SAMPLING_NOTE)
    p.add_argument("kind", choices=["square", "cuboid", "array"])
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    _budget_args(p)
    p.add_argument("-o", "--output", default=None, help="file (count 1) or directory (count > 1)")

    p = sub.add_parser("verify", help="slow independent oracles (needs --slow)")
    p.add_argument("kind", choices=["enumerate", "classes", "layer"])
    p.add_argument("file", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--slow", action="store_true", help="acknowledge that oracles are slow")

    p = sub.add_parser("show", help="print a file as text grids")
    p.add_argument("file")
    return parser


# --------------------------------------------------------------------------
# helpers


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.command} {args.kind} requires {' '.join(missing)}")


def _load(path: str, *types: type) -> tuple[Any, dict]:
    obj, meta = io.load(path)
    if types and not isinstance(obj, types):
        names = " or ".join(io.kind_of_type(t) for t in types)
        raise DataError(f"{path}: expected {names}, got {io.kind_of(obj)}")
    return obj, meta


def _emit(obj: Any, output: str | None, meta: dict[str, Any]) -> None:
    text = io.dumps(obj, meta)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _budget(args: argparse.Namespace):
    from .solve import Budget

    if args.budget_nodes is None and args.budget_secs is None:
        return None
    return Budget(args.budget_nodes, args.budget_secs)


def _stats_line(stats: dict[str, Any]) -> str:
    return "stats " + json.dumps(stats, sort_keys=True)


_FORCED = re.compile(r"^\(?\s*(\d+(?:\s*,\s*\d+)*)\s*\)?\s*=\s*(\d+)$")


def parse_forced(items: Sequence[str]) -> dict[tuple[int, ...], int]:
    """``"(1,1)=5"`` -> ``{(0, 0): 5}``."""
    out: dict[tuple[int, ...], int] = {}
    for item in items:
        m = _FORCED.match(item.strip())
        if not m:
            raise UsageError(f"cannot parse --forced {item!r}; expected (i,j,...)=s")
        coord = tuple(int(x) - 1 for x in m.group(1).split(","))
        if any(c < 0 for c in coord):
            raise UsageError(f"coordinates are 1-based in --forced {item!r}")
        if coord in out:
            raise UsageError(f"cell {m.group(1)} forced twice")
        out[coord] = int(m.group(2))
    return out


def _pair(pair) -> str:
    return " ".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in pair)


# --------------------------------------------------------------------------
# commands


def cmd_construct(args: argparse.Namespace) -> int:
    meta: dict[str, Any] = {"generator": f"construct {args.kind}", "version": __version__}
    if args.kind == "cyclic":
        _need(args, "d", "n")
        obj = cyclic_hypercube(args.d, args.n)
        meta.update(d=args.d, n=args.n)
    elif args.kind == "pebody":
        _need(args, "a", "b", "c")
        obj = pebody_array(args.a, args.b, args.c)
        meta.update(a=args.a, b=args.b, c=args.c)
    elif args.kind == "nonlayerable":
        _need(args, "n")
        obj = nonlayerable_array(args.n)
    elif args.kind == "lift":
        _need(args, "input", "d")
        H, _ = _load(args.input, Hypercuboid)
        obj = lift(H, args.d)
    elif args.kind == "develop":
        _need(args, "input")
        L, _ = _load(args.input, Layer)
        if not validate_layer(L):
            raise DataError(f"{args.input}: not a valid layer")
        obj = cyclic_development(L)
    else:
        _need(args, "input", "k")
        H, _ = _load(args.input, Hypercuboid)
        obj = prefix(H, args.k)
    _emit(obj, args.output, meta)
    _say(f"constructed {io.describe(obj)}")
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    if args.kind == "hypercuboid":
        obj, _ = _load(args.file, Hypercuboid)
        report = validate_hypercuboid(obj)
    elif args.kind == "layer":
        obj, _ = _load(args.file, Layer)
        report = validate_layer(obj)
    elif args.kind == "array":
        obj, _ = _load(args.file, SetArray, ConstraintArray)
        if isinstance(obj, ConstraintArray):
            print(f"valid {io.describe(obj)}")
            return EXIT_OK
        report = validate_set_array(obj)
    else:
        from .solve import delta_regularity

        obj, _ = _load(args.file, Hypercuboid)
        report = validate_hypercuboid(obj)
        if report:
            rep = delta_regularity(obj)
            where = _pair(rep.pair) if rep.pair else "-"
            print(f"delta {rep.delta}")
            print(f"argmax {where} overlap {rep.overlap}")
            return EXIT_OK
    if report:
        print(f"valid {io.describe(obj)}")
        return EXIT_OK
    print(f"invalid {io.describe(obj)}: {report.violation}")
    return EXIT_NO


def _finish(out: SolveOutcome, witness: Any, args: argparse.Namespace, meta: dict[str, Any]) -> int:
    stats = {k: v for k, v in out.stats.items()}
    _say(_stats_line(stats))
    _say(out.status.value)
    if out.feasible:
        meta.update(status=out.status.value, nodes=out.nodes)
        _emit(witness, args.output, meta)
    return STATUS_EXIT[out.status]


def cmd_solve(args: argparse.Namespace) -> int:
    from . import solve as S
    from .construct import from_layers, stack_unchecked

    budget = _budget(args)
    meta: dict[str, Any] = {"generator": f"solve {args.kind}", "version": __version__, "source": Path(args.file).name}
    if args.forced and args.kind != "layer":
        raise UsageError("--forced only applies to 'solve layer'")
    if args.kind == "layer":
        C, _ = _load(args.file, SetArray, ConstraintArray)
        try:
            out = S.find_layer(C, parse_forced(args.forced), budget)
        except ForcedConflict as exc:
            _say(f"forced conflict: {exc}")
            return EXIT_NO
        return _finish(out, out.witness, args, meta)
    if args.kind == "decompose":
        A, _ = _load(args.file, SetArray)
        if not validate_set_array(A):
            raise DataError(f"{args.file}: not a valid set array")
        out = S.decompose(A, budget)
        # k layers of an (n^d,k)-array stack into a (d+1)-dimensional hypercuboid
        witness = from_layers(out.witness) if out.feasible and out.witness else None
        if out.feasible and not out.witness:
            witness = Hypercuboid.empty(A.d + 1, A.n)
        return _finish(out, witness, args, meta)
    if args.kind in ("extend", "complete"):
        H, _ = _load(args.file, Hypercuboid)
        if not validate_hypercuboid(H):
            raise DataError(f"{args.file}: not a valid hypercuboid")
        if args.kind == "extend":
            out = S.is_extendible(H, budget)
            witness = stack_unchecked(H, [out.witness]) if out.feasible else None
        else:
            out = S.is_completable(H, budget)
            witness = stack_unchecked(H, out.witness) if out.feasible else None
        return _finish(out, witness, args, meta)
    if args.kind == "avoid":
        M, _ = _load(args.file, ConstraintArray)
        out = S.avoidable(M, budget)
        return _finish(out, out.witness, args, meta)
    R, _ = _load(args.file, Hypercuboid)
    square = S.complete_rectangle(R)
    return _finish(SolveOutcome(Status.FEASIBLE, square, {"nodes": 0}), square, args, meta)


def cmd_search(args: argparse.Namespace) -> int:
    from . import solve as S

    budget = _budget(args)
    workers = args.parallel or 1
    meta: dict[str, Any] = {"generator": f"search {args.kind}", "version": __version__, "d": args.d, "n": args.n}
    if args.kind == "threshold":
        _need(args, "kmax")
        res = S.compute_threshold(args.measure, args.d, args.n, args.kmax, budget, shortcuts=not args.no_shortcuts, workers=workers)
        for row in res.per_depth:
            _say(_stats_line(row))
        if res.status is Status.FEASIBLE:
            print(f"{args.measure}({args.d},{args.n}) = {res.k}")
            meta.update(kind=args.measure, k=res.k, per_depth=[_stable(r) for r in res.per_depth])
            _emit(res.witness, args.output, meta)
            return EXIT_OK
        if res.status is Status.INFEASIBLE:
            print(f"AllGood({args.kmax})")
            return EXIT_NO
        print(f"Unknown; decided up to k={res.decided}")
        return EXIT_UNKNOWN
    _need(args, "k")
    kind = "NC" if args.kind == "noncompletable" else "NE"
    out = S.search(
        kind, args.d, args.n, args.k, args.mode, args.seed, budget,
        shortcuts=not args.no_shortcuts, max_samples=args.samples, workers=workers,
    )
    meta.update(kind=kind, k=args.k, mode=args.mode, seed=args.seed)
    meta.update(_stable(out.stats))
    return _finish(out, out.witness, args, meta)


def _stable(stats: dict[str, Any]) -> dict[str, Any]:
    """Drop wall-clock fields so witness files are reproducible."""
    return {k: v for k, v in stats.items() if k != "elapsed"}


def cmd_sample(args: argparse.Namespace) -> int:
    from .sample import derive_seed, random_hypercuboid, random_latin_square, random_realisable_array

    budget = _budget(args)
    if args.count < 1:
        raise UsageError("--count must be positive")
    if args.kind != "square":
        _need(args, "k")
    outdir = None
    if args.count > 1 and args.output:
        outdir = Path(args.output)
        outdir.mkdir(parents=True, exist_ok=True)
    worst = EXIT_OK
    for i in range(args.count):
        seed = args.seed if args.count == 1 else derive_seed(args.seed, i)
        meta = {"generator": f"sample {args.kind}", "version": __version__, "seed": seed}
        if args.kind == "square":
            obj = random_latin_square(args.n, seed)
            meta["method"] = "jacobson-matthews"
            out = SolveOutcome(Status.FEASIBLE, obj)
        elif args.kind == "cuboid":
            out = random_hypercuboid(args.d, args.n, args.k, seed, budget)
            meta["method"] = "layer growth or composed hypercube (not uniform)"
        else:
            out = random_realisable_array(args.d, args.n, args.k, seed, budget)
            meta["method"] = "unused array of a sampled hypercuboid (realisable only)"
        if not out.feasible:
            _say(f"sample {i}: {out.status.value}")
            worst = max(worst, STATUS_EXIT[out.status])
            continue
        text = io.dumps(out.witness, meta)
        if outdir is not None:
            (outdir / f"{args.kind}_{i:04d}.json").write_text(text, encoding="utf-8")
        elif args.output:
            Path(args.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    return worst


def cmd_verify(args: argparse.Namespace) -> int:
    from . import verify as V

    if not args.slow:
        raise UsageError("oracles are slow; pass --slow to run them")
    if args.kind == "enumerate":
        _need(args, "n")
        print(sum(1 for _ in V.enumerate_latin_squares(args.n)))
        return EXIT_OK
    if args.kind == "classes":
        _need(args, "n")
        reps = V.isotopy_classes(args.n)
        print(len(reps))
        for r in reps:
            print(" ".join(map(str, r.cells)))
        return EXIT_OK
    if not args.file:
        raise UsageError("verify layer needs a file")
    C, _ = _load(args.file, SetArray, ConstraintArray)
    out = V.naive_find_layer(C)
    _say(_stats_line(out.stats))
    print(out.status.value)
    return STATUS_EXIT[out.status]


def cmd_show(args: argparse.Namespace) -> int:
    obj, meta = io.load(args.file)
    print(io.describe(obj))
    sys.stdout.write(io.render(obj))
    return EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "check": cmd_check,
    "solve": cmd_solve,
    "search": cmd_search,
    "sample": cmd_sample,
    "verify": cmd_verify,
    "show": cmd_show,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        _say(f"latinhc: usage error: {exc}")
        return EXIT_USAGE
    except (DataError, LatinError) as exc:
        _say(f"latinhc: {type(exc).__name__}: {exc}")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
