"""Command-line front-end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import counting
from ._backend import available_backends, get_kernels
from .dynamics import AutomataNetwork, transition_graph
from .enumeration import ModeStream
from .errors import BlockParError, InvalidModeError, RefusalError
from .modes import parse_mode
from .networks import NAMED

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3

LINE_CAP_ENV = "BLOCKPAR_LINE_CAP"
DEFAULT_LINE_CAP = 1_000_000

ENUM_CLASSES = ("bp", "bp0", "bpstar")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def line_cap() -> int:
    raw = os.environ.get(LINE_CAP_ENV)
    if raw is None:
        return DEFAULT_LINE_CAP
    try:
        return int(raw)
    except ValueError:
        raise BlockParError(f"{LINE_CAP_ENV} must be an integer, got {raw!r}") from None


# -- count ------------------------------------------------------------------


def cmd_count(args, out) -> int:
    if args.table:
        for n in range(1, args.n + 1):
            out.write(f"{n}\t{counting.count_by_class(n, args.cls)}\n")
    else:
        out.write(f"{counting.count_by_class(args.n, args.cls)}\n")
    return EXIT_OK


# -- enum -------------------------------------------------------------------


def _render(mu, fmt: str) -> str:
    if fmt == "jsonl":
        return json.dumps(mu.to_json(), separators=(",", ":"))
    return str(mu)


def _shard_text(job) -> str:
    n, cls, index, fmt, limit, backend = job
    stream = ModeStream(n, cls, partition=index, limit=limit, backend=backend)
    return "".join(_render(mu, fmt) + "\n" for mu in stream)


def cmd_enum(args, out) -> int:
    shares = counting.per_partition_counts(args.n, args.cls)
    if args.partition is not None:
        if args.partition >= len(shares):
            raise BlockParError(
                f"partition index {args.partition} out of range 0..{len(shares) - 1}"
            )
        shares = [shares[args.partition]]
    projected = sum(c for _, c in shares)
    if args.limit is not None:
        projected = min(projected, args.limit)
    cap = line_cap()
    if projected > cap and not args.force:
        raise RefusalError(
            f"enumeration would print {projected} lines, over the cap of {cap} "
            f"(set {LINE_CAP_ENV} or pass --force)"
        )
    if args.jobs > 1 and args.partition is None:
        # one job per partition; results merged in partition order
        jobs = [
            (args.n, args.cls, k, args.format, args.limit, args.backend)
            for k in range(len(shares))
        ]
        remaining = args.limit
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for text in pool.map(_shard_text, jobs):
                if remaining is not None:
                    lines = text.splitlines(keepends=True)[:remaining]
                    remaining -= len(lines)
                    text = "".join(lines)
                out.write(text)
                if remaining == 0:
                    break
        return EXIT_OK
    stream = ModeStream(
        args.n, args.cls, partition=args.partition, limit=args.limit, backend=args.backend
    )
    for mu in stream:
        out.write(_render(mu, args.format) + "\n")
    return EXIT_OK


# -- dynamics -----------------------------------------------------------------


def _load_network(source: str, n_hint: int | None) -> AutomataNetwork:
    path = Path(source)
    if path.exists():
        try:
            return AutomataNetwork.load(path)
        except json.JSONDecodeError as exc:
            raise InvalidModeError(
                f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from None
        except ValueError as exc:
            raise InvalidModeError(f"{source}: {exc}") from None
    if source in NAMED:
        if source == "example":
            return NAMED[source]()
        return NAMED[source](n_hint or 3)
    raise InvalidModeError(
        f"no network file {source!r}; built-in names are {', '.join(sorted(NAMED))}"
    )


def cmd_dynamics(args, out) -> int:
    mode = parse_mode(args.mode)
    f = _load_network(args.network, mode.n)
    g = transition_graph(f, mode, backend=args.backend)
    if args.format == "dot":
        out.write(g.to_dot())
        return EXIT_OK
    if args.format == "json":
        out.write(json.dumps(g.to_dict()) + "\n")
        return EXIT_OK
    lim = g.limit
    fixed = [(c[0], a) for c, a in zip(lim.cycles, lim.attractors) if len(c) == 1]
    loops = [(c, a) for c, a in zip(lim.cycles, lim.attractors) if len(c) > 1]
    shown = str(mode) if str(mode) == str(g.mode) else f"{mode} = {g.mode}"
    out.write(f"mode: {shown}\n")
    out.write(f"configurations: {f.size}\n")
    out.write(f"limit set size: {len(lim.limit_set)}\n")
    out.write(f"fixed points: {len(fixed)}\n")
    for idx, att in fixed:
        out.write(f"  {f.label(idx)}{'  attractor' if att else ''}\n")
    out.write(f"limit cycles: {len(loops)}\n")
    for cyc, att in loops:
        path = " -> ".join(f.label(i) for i in cyc)
        out.write(f"  length {len(cyc)}: {path}{'  attractor' if att else ''}\n")
    return EXIT_OK


def cmd_network(args, out) -> int:
    f = NAMED[args.name]() if args.name == "example" else NAMED[args.name](args.n)
    out.write(json.dumps(f.to_json()) + "\n")
    return EXIT_OK


# -- verify / bench -----------------------------------------------------------


def cmd_verify(args, out) -> int:
    from .verification import VERIFY_MAX_N, run_checks

    if args.n_max > VERIFY_MAX_N:
        raise RefusalError(f"--n-max above {VERIFY_MAX_N} is refused")
    failed = total = 0
    for check in run_checks(args.n_max, seed=args.seed):
        total += 1
        failed += not check.ok
        out.write(str(check) + "\n")
        out.flush()
    out.write(f"{total - failed}/{total} checks passed\n")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def bench_rows(n_max: int, backends, materialise: bool = False):
    """``(n, sizes, {backend: (t_bp, t_bp0, t_bpstar)})`` for ``n = 1..n_max``."""
    for n in range(1, n_max + 1):
        sizes = [counting.count_by_class(n, c) for c in ENUM_CLASSES]
        times = {}
        for b in backends:
            row = []
            for cls in ENUM_CLASSES:
                t0 = time.perf_counter()
                stream = ModeStream(n, cls, backend=b)
                got = sum(1 for _ in stream) if materialise else stream.count()
                row.append(time.perf_counter() - t0)
                if got != sizes[ENUM_CLASSES.index(cls)]:
                    raise BlockParError(f"{b} enumerated {got} {cls} modes at n={n}")
            times[b] = tuple(row)
        yield n, sizes, times


def cmd_bench(args, out) -> int:
    backends = args.backend or [get_kernels().BACKEND]
    for b in backends:
        if b not in available_backends():
            raise BlockParError(f"backend {b!r} is not available")
    head = f"{'n':>3} {'|BP|':>12} {'|BP0|':>12} {'|BP*|':>12}"
    for b in backends:
        head += f" {'t_BP ' + b:>14} {'t_BP0 ' + b:>14} {'t_BP* ' + b:>14}"
    out.write(head + "\n")
    for n, sizes, times in bench_rows(args.n_max, backends, args.objects):
        line = f"{n:>3} {sizes[0]:>12} {sizes[1]:>12} {sizes[2]:>12}"
        for b in backends:
            line += "".join(f" {t:>13.3f}s" for t in times[b])
        out.write(line + "\n")
        out.flush()
    return EXIT_OK


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="blockpar", description="Count, enumerate and simulate block-parallel update modes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    backends = ("cython", "python")

    c = sub.add_parser("count", help="exact size of a mode family")
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--class", dest="cls", required=True, choices=sorted(counting.CLASSES))
    c.add_argument("--table", action="store_true", help="print sizes for 1..n")
    c.set_defaults(func=cmd_count)

    e = sub.add_parser("enum", help="list the modes of a family, one per line")
    e.add_argument("--n", type=_positive, required=True)
    e.add_argument("--class", dest="cls", required=True, choices=ENUM_CLASSES)
    e.add_argument("--format", choices=("text", "jsonl"), default="text")
    e.add_argument("--limit", type=_nonnegative)
    e.add_argument("--partition", type=_nonnegative, help="0-based index of one partition shard")
    e.add_argument("--jobs", type=_positive, default=1)
    e.add_argument("--force", action="store_true", help=f"ignore the {LINE_CAP_ENV} output cap")
    e.add_argument("--backend", choices=backends)
    e.set_defaults(func=cmd_enum)

    d = sub.add_parser("dynamics", help="limit behaviour of a network under a mode")
    d.add_argument("network", help=f"network JSON file or built-in name ({', '.join(sorted(NAMED))})")
    d.add_argument("mode", help="'{(0),(2,1)}' or '({1},{0,2})'")
    d.add_argument("--format", choices=("text", "json", "dot"), default="text")
    d.add_argument("--backend", choices=backends)
    d.set_defaults(func=cmd_dynamics)

    w = sub.add_parser("network", help="write a built-in network as JSON")
    w.add_argument("name", choices=sorted(NAMED))
    w.add_argument("--n", type=_positive, default=3)
    w.set_defaults(func=cmd_network)

    v = sub.add_parser("verify", help="cross-check formulas, enumerators, oracles and dynamics")
    v.add_argument("--n-max", type=_positive, required=True)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="sizes and enumeration times per n")
    b.add_argument("--n-max", type=_positive, default=9)
    b.add_argument("--backend", action="append", choices=backends,
                   help="repeat to compare backends (default: the active one)")
    b.add_argument("--objects", action="store_true", help="time building mode objects, not just counting")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        return args.func(args, out)
    except RefusalError as exc:
        print(f"blockpar: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (InvalidModeError, BlockParError, ValueError, IndexError) as exc:
        print(f"blockpar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
