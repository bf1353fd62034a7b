"""Command-line front end: construct families, check containment, run
solves, emit density tables, and run the named verification suites.

Exit codes: 0 = decided, 2 = unknown (a solve hit its time limit),
1 = usage error or a failed verification check.  All tables use exact
fraction strings; nothing in the output depends on the clock, so a rerun
of any fully decided command is byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass

from turanlab import families as fam
from turanlab.extremal import (
    density_series,
    ex_exact,
    ex_hom_exact,
    result_to_json_obj,
    series_to_csv,
)
from turanlab.hypercore import automorphism_count, from_khg, to_json_obj, to_khg
from turanlab.morphisms import UNKNOWN, count_embeddings, find_embedding, find_homomorphism
from turanlab.scenarios import SUITES

DEFAULT_TIME_LIMIT = 60.0

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNKNOWN = 2


@dataclass
class RunConfig:
    command: str
    specs: tuple[str, ...] = ()
    host: str | None = None
    n: int | None = None
    n_min: int | None = None
    n_max: int | None = None
    t: int | None = None
    method: str = "family"
    pin: str | None = None
    suite: str | None = None
    time_limit: float = DEFAULT_TIME_LIMIT
    threads: int = 1
    seed: int = 0
    fmt: str = "text"
    float_col: bool = False
    out: str | None = None


def _resolve_time_limit(flag_value) -> float:
    if flag_value is not None:
        return float(flag_value)
    env = os.environ.get("TURANLAB_TIME_LIMIT")
    if env is not None and env.strip():
        return float(env)
    return DEFAULT_TIME_LIMIT


def _load_graph(arg: str):
    """A positional graph argument is either a .khg file or a family spec."""
    if os.path.exists(arg):
        with open(arg) as fh:
            return from_khg(fh.read())
    return fam.build_graph(fam.parse_family_spec(arg))


def _parse_pin(text: str | None) -> dict[int, int] | None:
    if text is None:
        return None
    pin = {}
    for chunk in text.split(","):
        p, _, h = chunk.partition(":")
        pin[int(p)] = int(h)
    return pin


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_construct(cfg: RunConfig) -> int:
    spec = fam.parse_family_spec(cfg.specs[0])
    lg = fam.build_labeled(spec)
    stem = cfg.out or re.sub(r"[^A-Za-z0-9]+", "_", spec.to_string()).strip("_")
    if stem.endswith(".khg"):
        stem = stem[:-4]
    with open(stem + ".khg", "w") as fh:
        fh.write(to_khg(lg.graph))
    payload = {
        "labels": lg.labels,
        "starting_sets": {
            "-".join(str(i) for i in key) if isinstance(key, tuple) else str(key): list(row)
            for key, row in lg.starting_sets.items()
        },
    }
    with open(stem + ".labels.json", "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"{spec.to_string()}: {lg.graph.n} vertices, {lg.graph.m} edges -> {stem}.khg")
    print(f"label map -> {stem}.labels.json")
    return EXIT_OK


def cmd_show(cfg: RunConfig) -> int:
    g = _load_graph(cfg.host)
    if cfg.fmt == "json":
        _emit(json.dumps(to_json_obj(g), indent=2, sort_keys=True) + "\n", cfg.out)
        return EXIT_OK
    lines = [f"khg v1: k={g.k} n={g.n} m={g.m}"]
    lines += [" ".join(str(v) for v in e) for e in g.edges]
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


def cmd_free(cfg: RunConfig) -> int:
    host = _load_graph(cfg.host)
    unknown = False
    for s in cfg.specs:
        hit = find_embedding(_load_graph(s), host, time_limit=cfg.time_limit)
        if hit is UNKNOWN:
            verdict, unknown = "unknown", True
        else:
            verdict = "free" if hit is None else "contains"
        print(f"{s}: {verdict}")
    return EXIT_UNKNOWN if unknown else EXIT_OK


def cmd_hom(cfg: RunConfig) -> int:
    F = _load_graph(cfg.specs[0])
    H = _load_graph(cfg.host)
    res = find_homomorphism(F, H, pin=_parse_pin(cfg.pin), time_limit=cfg.time_limit)
    if res is UNKNOWN:
        print("unknown")
        return EXIT_UNKNOWN
    if res is None:
        print("absent")
        return EXIT_OK
    print(json.dumps(res.to_json_obj(), sort_keys=True))
    return EXIT_OK


def cmd_count(cfg: RunConfig) -> int:
    H = _load_graph(cfg.host)
    F = _load_graph(cfg.specs[0])
    labeled = count_embeddings(H, F, time_limit=cfg.time_limit)
    if labeled is UNKNOWN:
        print("unknown")
        return EXIT_UNKNOWN
    aut = automorphism_count(F)
    print(f"labeled={labeled} aut={aut} copies={labeled // aut}")
    return EXIT_OK


def cmd_ex(cfg: RunConfig) -> int:
    graphs = [_load_graph(s) for s in cfg.specs]
    res = ex_exact(cfg.n, graphs, time_limit=cfg.time_limit)
    _emit(json.dumps(result_to_json_obj(res), indent=2, sort_keys=True) + "\n", cfg.out)
    return EXIT_OK if res.proven_optimal else EXIT_UNKNOWN


def cmd_exhom(cfg: RunConfig) -> int:
    F = _load_graph(cfg.specs[0])
    res = ex_hom_exact(cfg.t, F, method=cfg.method, time_limit=cfg.time_limit)
    _emit(json.dumps(result_to_json_obj(res), indent=2, sort_keys=True) + "\n", cfg.out)
    return EXIT_OK if res.proven_optimal else EXIT_UNKNOWN


def cmd_series(cfg: RunConfig) -> int:
    graphs = [_load_graph(s) for s in cfg.specs]
    pts = density_series(graphs, cfg.n_min, cfg.n_max, time_limit=cfg.time_limit)
    _emit(series_to_csv(pts, float_col=cfg.float_col), cfg.out)
    return EXIT_OK if all(p.proven for p in pts) else EXIT_UNKNOWN


def cmd_verify(cfg: RunConfig) -> int:
    checks = SUITES[cfg.suite]()
    for c in checks:
        print(c.line())
    failed = sum(1 for c in checks if c.passed is False)
    unknown = sum(1 for c in checks if c.passed is None)
    passed = len(checks) - failed - unknown
    print(f"{cfg.suite}: {passed} passed, {failed} failed, {unknown} unknown")
    return EXIT_OK if failed == 0 else EXIT_USAGE


_DISPATCH = {
    "construct": cmd_construct,
    "show": cmd_show,
    "free": cmd_free,
    "hom": cmd_hom,
    "count": cmd_count,
    "ex": cmd_ex,
    "exhom": cmd_exhom,
    "series": cmd_series,
    "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    # usage problems must exit 1, not argparse's default 2 (2 means unknown)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p, time_limit=True):
    if time_limit:
        p.add_argument("--time-limit", type=float, default=None, metavar="SEC",
                       help="per-solve limit; default TURANLAB_TIME_LIMIT or 60")
    p.add_argument("--threads", type=int, default=1,
                   help="reserved; the engines run single-process")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for any randomized step of the command")
    p.add_argument("-o", "--output", default=None, help="write output to a file")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="turanlab", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="build a family and write .khg + label map")
    p.add_argument("spec", help='family spec, e.g. "GL(k=3,s=4,l=2)"')
    _add_common(p, time_limit=False)

    p = sub.add_parser("show", help="print a graph (file or spec)")
    p.add_argument("graph")
    p.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    _add_common(p, time_limit=False)

    p = sub.add_parser("free", help="is the host free of each pattern?")
    p.add_argument("host")
    p.add_argument("spec", nargs="+")
    _add_common(p)

    p = sub.add_parser("hom", help="find a homomorphism pattern -> host")
    p.add_argument("pattern")
    p.add_argument("host")
    p.add_argument("--pin", default=None, metavar="P:H,...",
                   help="pattern-vertex:host-vertex pairs fixed in advance")
    _add_common(p)

    p = sub.add_parser("count", help="count labeled embeddings of pattern in host")
    p.add_argument("host")
    p.add_argument("pattern")
    _add_common(p)

    p = sub.add_parser("ex", help="exact Turan number for a forbidden family")
    p.add_argument("spec", nargs="+")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("exhom", help="hom-extremal number ex_hom(t, F)")
    p.add_argument("spec")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--method", choices=("family", "direct"), default="family")
    _add_common(p)

    p = sub.add_parser("series", help="density series over a range of n (CSV)")
    p.add_argument("spec", nargs="+")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--float", dest="float_col", action="store_true",
                   help="append a decimal column next to the exact density")
    _add_common(p)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    _add_common(p)

    return top


def _to_config(ns: argparse.Namespace) -> RunConfig:
    specs = ()
    if hasattr(ns, "spec"):
        specs = tuple(ns.spec) if isinstance(ns.spec, list) else (ns.spec,)
    elif hasattr(ns, "pattern"):
        specs = (ns.pattern,)
    host = getattr(ns, "host", None) or getattr(ns, "graph", None)
    return RunConfig(
        command=ns.command,
        specs=specs,
        host=host,
        n=getattr(ns, "n", None),
        n_min=getattr(ns, "n_min", None),
        n_max=getattr(ns, "n_max", None),
        t=getattr(ns, "t", None),
        method=getattr(ns, "method", "family"),
        pin=getattr(ns, "pin", None),
        suite=getattr(ns, "suite", None),
        time_limit=_resolve_time_limit(getattr(ns, "time_limit", None)),
        threads=getattr(ns, "threads", 1),
        seed=getattr(ns, "seed", 0),
        fmt=getattr(ns, "fmt", "text"),
        float_col=getattr(ns, "float_col", False),
        out=getattr(ns, "output", None),
    )


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _to_config(ns)
    except ValueError as exc:
        print(f"turanlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _DISPATCH[cfg.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"turanlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
