"""Command-line front end: composable subcommands over graph streams.

Every subcommand reads graphs from stdin or --input (graph6 or edge-list,
autodetected per line), writes to stdout or --output, and is deterministic:
identical argv plus identical stdin produce byte-identical stdout. Campaign
wall time only appears in the JSON file written via --output, never on
stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from multiprocessing import Pool

from .cycles import has_cycle_of_length
from .families import FAMILIES, FamilySpec
from .graphs import (
    GraphFormatError,
    decode_graph6,
    dense_core_vertices,
    encode_graph6,
    format_edge_list,
    induced_subgraph,
    parse_graphs,
    parse_stream_tolerant,
    strip_to_2connected,
)
from .spectral import DEFAULT_TOL, deletion_bounds_all, hong_bound_check, spectral_radius
from .verify import CampaignConfig, VerificationReport, verify_campaign


class _CliExit(Exception):
    def __init__(self, status: int, message: str | None = None):
        self.status = status
        self.message = message


class _Parser(argparse.ArgumentParser):
    def exit(self, status=0, message=None):
        raise _CliExit(status, message)

    def error(self, message):
        raise _CliExit(2, f"{self.prog}: error: {message}\n{self.format_usage()}")


def _default_jobs() -> int:
    env = os.environ.get("SPECTRAL_CYCLE_JOBS")
    if env is not None:
        jobs = int(env)
    else:
        jobs = os.cpu_count() or 1
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    return jobs


def _build_parser() -> _Parser:
    io_flags = _Parser(add_help=False)
    io_flags.add_argument("--input", "-i", metavar="FILE", default=None)
    io_flags.add_argument("--output", "-o", metavar="FILE", default=None)
    io_flags.add_argument("--jobs", type=int, default=None, metavar="N")

    top = _Parser(prog="spectral-cycles", description=__doc__)
    sub = top.add_subparsers(dest="cmd", required=True, metavar="SUBCOMMAND")

    p = sub.add_parser("rho", parents=[io_flags], help="spectral radius per graph")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = sub.add_parser("gen", parents=[io_flags], help="emit a named family graph")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--params", required=True, metavar="a[,b]")
    p.add_argument("--format", choices=("g6", "edges"), default="g6")

    p = sub.add_parser("cycles", parents=[io_flags], help="fixed-length cycle search")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**8)

    p = sub.add_parser("bounds", parents=[io_flags], help="spectral bound checks")
    p.add_argument("--which", choices=("hong", "deletion"), required=True)
    p.add_argument("--tol", type=float, default=1e-7)

    sub.add_parser("strip", parents=[io_flags], help="iteratively delete cut vertices")

    p = sub.add_parser("core", parents=[io_flags], help="peel to the dense core")
    p.add_argument("--threshold", type=int, required=True)

    p = sub.add_parser("check", parents=[io_flags], help="run a verifier campaign")
    p.add_argument("--config", metavar="FILE", default=None)
    p.add_argument("--target", default=None)
    p.add_argument("--n-range", default=None, metavar="A..B")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--source", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--sample-count", type=int, default=None)
    p.add_argument("--eps-cmp", type=float, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--flip-budget", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--mode", choices=("report", "assert"), default=None)
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("report", parents=[io_flags], help="summarize a JSON report")
    p.add_argument("--strict", action="store_true")

    return top


def _read_input(ns, stdin) -> str:
    if ns.input is None:
        return stdin.read()
    with open(ns.input, "r", encoding="ascii") as fh:
        return fh.read()


def _graphs_as_g6(ns, stdin) -> list[str]:
    return [encode_graph6(g) for g in parse_graphs(_read_input(ns, stdin))]


def _line_rho(args) -> str:
    g6, tol = args
    r = spectral_radius(decode_graph6(g6), tol=tol)
    return f"{g6} {r.rho:.12g} {r.residual:.3e} {r.iterations}"


def _line_cycles(args) -> str:
    g6, length, budget = args
    found = has_cycle_of_length(decode_graph6(g6), length, budget)
    witness = (
        ",".join(str(v) for v in found.witness.vertices) if found.witness else "-"
    )
    return f"{g6} {found.verdict} {witness}"


def _line_bounds(args) -> str:
    g6, which, tol = args
    g = decode_graph6(g6)
    if which == "hong":
        v = hong_bound_check(g, tol=tol)
        name = v.exception or "-"
        return f"{g6} {v.kind} exception={name} rho={v.rho:.12g} bound={v.bound:.12g}"
    bounds = deletion_bounds_all(g, tol=tol)
    worst = max(range(len(bounds)), key=lambda i: bounds[i].lhs - bounds[i].rhs)
    b = bounds[worst]
    word = "holds" if all(x.holds for x in bounds) else "violation"
    return f"{g6} {word} worst_v={worst} lhs={b.lhs:.12g} rhs={b.rhs:.12g}"


def _line_strip(args) -> str:
    (g6,) = args
    trace = strip_to_2connected(decode_graph6(g6))
    removed = ",".join(str(v) for v in trace.removed) or "-"
    kept = ",".join(str(v) for v in trace.core_vertices) or "-"
    return f"{g6} removed={removed} core={encode_graph6(trace.core)} core_vertices={kept}"


def _line_core(args) -> str:
    g6, threshold = args
    g = decode_graph6(g6)
    vertices = dense_core_vertices(g, threshold)
    core, _ = induced_subgraph(g, vertices)
    kept = ",".join(str(v) for v in vertices) or "-"
    return f"{g6} core={encode_graph6(core)} vertices={kept}"


def _map_lines(fn, payloads, jobs: int) -> list[str]:
    if jobs <= 1 or len(payloads) <= 1:
        return [fn(p) for p in payloads]
    with Pool(processes=jobs) as pool:
        return list(pool.imap(fn, payloads, chunksize=max(1, len(payloads) // (jobs * 4))))


def _parse_n_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    return int(text), int(text)


def _campaign_config(ns) -> CampaignConfig:
    base: dict = {}
    if ns.config is not None:
        with open(ns.config, "r", encoding="ascii") as fh:
            base = json.load(fh)
        if "n_range" in base:
            base["n_range"] = tuple(base["n_range"])
    overrides = {
        "target": ns.target,
        "n_range": _parse_n_range(ns.n_range) if ns.n_range else None,
        "k": ns.k,
        "source": ns.source,
        "seed": ns.seed,
        "sample_count": ns.sample_count,
        "eps_cmp": ns.eps_cmp,
        "budget": ns.budget,
        "flip_budget": ns.flip_budget,
        "epsilon": ns.epsilon,
        "mode": ns.mode,
    }
    base.update({k: v for k, v in overrides.items() if v is not None})
    if "target" not in base:
        raise ValueError("check needs --target or a --config file naming one")
    if "n_range" not in base:
        raise ValueError("check needs --n-range or a --config file naming one")
    return CampaignConfig(**base)


def _cmd_check(ns, stdin, stdout, stderr) -> int:
    cfg = _campaign_config(ns)
    jobs = ns.jobs if ns.jobs is not None else _default_jobs()
    graphs = None
    decode_errors = None
    if cfg.source == "stdin_graph6":
        graphs, decode_errors = parse_stream_tolerant(_read_input(ns, stdin))
    report = verify_campaign(cfg, graphs, decode_errors, jobs=jobs)
    stdout.write(json.dumps(report.to_dict(include_wall_time=False), indent=2) + "\n")
    if ns.output is not None:
        with open(ns.output, "w", encoding="ascii") as fh:
            json.dump(report.to_dict(include_wall_time=True), fh, indent=2)
            fh.write("\n")
    summary = (
        f"{cfg.target}: scanned={report.scanned} hits={report.condition_hits} "
        f"violations={len(report.violations)} unknown={report.unknown}"
    )
    print(summary, file=stderr)
    if report.violations and (cfg.resolved_mode == "assert" or ns.strict):
        return 1
    return 0


def _cmd_report(ns, stdin, stdout, stderr) -> int:
    data = json.loads(_read_input(ns, stdin))
    rep = VerificationReport.from_dict(data)
    rep.check_identities()
    lines = [
        f"target: {rep.target}",
        f"mode: {rep.config.get('mode', 'report')}",
        f"scanned: {rep.scanned}",
        f"  condition misses: {rep.condition_misses}",
        f"  condition hits: {rep.condition_hits}",
        f"  boundary: {rep.boundary}",
        f"outcomes: confirmed={rep.confirmed} extremal={rep.extremal_matches} "
        f"violations={len(rep.violations)} unknown={rep.unknown}",
    ]
    for key in sorted(rep.notes):
        lines.append(f"note {key}: {rep.notes[key]}")
    for err in rep.decode_errors:
        lines.append(f"decode error: {err}")
    for viol in rep.violations:
        lines.append(
            f"violation n={viol['n']} graph6={viol['graph6']} rho={viol['rho']:.9g} "
            f"threshold={viol['threshold']:.9g}: {viol['detail']}"
        )
    lines.append("identities: ok")
    stdout.write("\n".join(lines) + "\n")
    if rep.violations and ns.strict:
        return 1
    return 0


def _cmd_gen(ns, stdout) -> int:
    params = tuple(int(p) for p in ns.params.split(","))
    g = FamilySpec(ns.family, params).build()
    text = encode_graph6(g) if ns.format == "g6" else format_edge_list(g)
    out = text + "\n"
    if ns.output is not None:
        with open(ns.output, "w", encoding="ascii") as fh:
            fh.write(out)
    else:
        stdout.write(out)
    return 0


_LINE_COMMANDS = {
    "rho": (_line_rho, lambda ns: (ns.tol,)),
    "cycles": (_line_cycles, lambda ns: (ns.length, ns.budget)),
    "bounds": (_line_bounds, lambda ns: (ns.which, ns.tol)),
    "strip": (_line_strip, lambda ns: ()),
    "core": (_line_core, lambda ns: (ns.threshold,)),
}


def run(argv, stdin=None, stdout=None, stderr=None) -> int:
    """Parse argv and execute; returns the process exit code."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.cmd == "gen":
            return _cmd_gen(ns, stdout)
        if ns.cmd == "check":
            return _cmd_check(ns, stdin, stdout, stderr)
        if ns.cmd == "report":
            return _cmd_report(ns, stdin, stdout, stderr)
        fn, extras = _LINE_COMMANDS[ns.cmd]
        jobs = ns.jobs if ns.jobs is not None else _default_jobs()
        payloads = [(g6, *extras(ns)) for g6 in _graphs_as_g6(ns, stdin)]
        lines = _map_lines(fn, payloads, jobs)
        text = "".join(line + "\n" for line in lines)
        if ns.output is not None:
            with open(ns.output, "w", encoding="ascii") as fh:
                fh.write(text)
        else:
            stdout.write(text)
        return 0
    except _CliExit as exc:
        if exc.message:
            stderr.write(exc.message.rstrip("\n") + "\n")
        return exc.status
    except GraphFormatError as exc:
        print(f"input error: {exc}", file=stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
