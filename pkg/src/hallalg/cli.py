"""Command-line entry point ``hallalg``.

Subcommands: enumerate, counts, mul, morphism, verify, export-tables.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .cache import ENV_VAR, CountCache
from .catalog import ALGEBRA_IDS, make_spec, resolve_id
from .engine import KindError, multiply, normalize
from .expr import ParseError, element_to_json, parse_expression, render
from .morphisms import eta_map, iota_map, phi_map, shift_T, theta_map
from .quiver import BackendInconsistency, CapacityError, Quiver, QuiverCategory, is_prime
from .verifier import SUITES, SuiteConfig, dumps, run_suites

log = logging.getLogger("hallalg")

MAPS = {
    "theta": ("mh-ctw", "naive", theta_map),
    "phi": ("mh-rtw", "lattice", phi_map),
    "iota": ("dh-tw", "mh-ctw", iota_map),
    "eta": ("mh-ctw", "dh-ce-tw", eta_map),
    "T": ("dh-tw", "dh-tw", None),
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    quiver: Quiver
    q: int
    bound: tuple
    lo: int
    hi: int
    algebra: str | None
    cache_dir: str | None
    fmt: str
    seed: int

    def category(self) -> QuiverCategory:
        cache = CountCache(Path(self.cache_dir) / "counts.json") if self.cache_dir else None
        return QuiverCategory(self.quiver, self.q, self.bound, cache=cache)


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


def build_config(args) -> RunConfig:
    if args.quiver:
        try:
            quiver = Quiver.load(args.quiver)
        except FileNotFoundError:
            raise ConfigError(f"quiver file {args.quiver!r} does not exist") from None
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise ConfigError(f"quiver file {args.quiver!r} is malformed: {exc}") from None
        except ValueError as exc:
            raise ConfigError(f"quiver file {args.quiver!r}: {exc}") from None
    else:
        quiver = Quiver.linear(args.linear)
    if not is_prime(args.q):
        raise ConfigError(f"--q must be a prime, got {args.q}")
    if args.bound:
        bound = _int_list(args.bound)
    else:
        bound = (2,) if quiver.n == 1 else (1,) * quiver.n
    if len(bound) != quiver.n:
        raise ConfigError(f"--bound has {len(bound)} entries but the quiver has {quiver.n} vertices")
    if any(b < 0 for b in bound):
        raise ConfigError("--bound entries must be nonnegative")
    lo, hi = _int_list(args.degrees)
    if lo > hi:
        raise ConfigError(f"--degrees {lo},{hi} is an empty window")
    algebra = getattr(args, "algebra", None)
    if isinstance(algebra, str) and algebra not in ALGEBRA_IDS:
        raise ConfigError(f"unknown algebra {algebra!r}; choose from {', '.join(sorted(ALGEBRA_IDS))}")
    cache_dir = args.cache_dir or os.environ.get(ENV_VAR) or None
    return RunConfig(quiver, args.q, bound, lo, hi, algebra, cache_dir, args.format, args.seed)


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

HALL_COLUMNS = ("A", "B", "C", "g", "ext_middle", "hom_dim")


def hall_rows(cat: QuiverCategory, bound) -> list[dict]:
    """One row per conserving triple (A, B, C) with C within the bound."""
    classes = cat.enumerate(bound)
    rows = []
    for c in classes:
        for a in classes:
            for b in classes:
                if tuple(x + y for x, y in zip(a.dim, b.dim)) != c.dim:
                    continue
                rows.append({"A": a.name, "B": b.name, "C": c.name, "g": cat.hall_number(a, b, c),
                             "ext_middle": cat.ext_with_middle(a, b, c), "hom_dim": cat.hom_dim(a, b)})
    rows.sort(key=lambda r: (r["C"], r["A"], r["B"]))
    return rows


def gamma_rows(cat: QuiverCategory, bound) -> list[dict]:
    classes = cat.enumerate(bound)
    rows = []
    for a in classes:
        for b in classes:
            for m, n, _ in cat.gamma_terms(a, b):
                rows.append({"A": a.name, "B": b.name, "M": m.name, "N": n.name,
                             "gamma": str(cat.gamma(a, b, m, n))})
    rows.sort(key=lambda r: (r["A"], r["B"], r["M"], r["N"]))
    return rows


def euler_rows(cat: QuiverCategory, bound) -> list[dict]:
    classes = [c for c in cat.enumerate(bound) if not c.is_zero]
    rows = []
    for a in classes:
        for b in classes:
            rows.append({"A": a.name, "B": b.name, "hom_dim": cat.hom_dim(a, b),
                         "ext1_dim": cat.ext1_dim(a, b), "euler_exponent": cat.euler_exponent(a, b)})
    rows.sort(key=lambda r: (r["A"], r["B"]))
    return rows


def class_rows(cat: QuiverCategory, bound) -> list[dict]:
    return [{"name": c.name, "dim": list(c.dim), "aut": cat.aut_count(c),
             "indecomposable": len(c.decomposition) == 1} for c in cat.enumerate(bound)]


def _csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _text_table(rows: list[dict], columns) -> str:
    columns = list(columns)
    cells = [[str(r[c]) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)) for row in cells]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def _emit(rows, columns, fmt) -> str:
    if fmt == "json":
        return json.dumps(rows, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _csv(rows, columns)
    return _text_table(rows, columns)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_enumerate(cfg: RunConfig, args, out) -> int:
    cat = cfg.category()
    rows = class_rows(cat, cfg.bound)
    for r in rows:
        r["dim"] = ",".join(str(x) for x in r["dim"]) if cfg.fmt != "json" else r["dim"]
    out.write(_emit(rows, ("name", "dim", "aut", "indecomposable"), cfg.fmt))
    _flush(cat)
    return 0


def cmd_counts(cfg: RunConfig, args, out) -> int:
    cat = cfg.category()
    tables = {"hall": (hall_rows(cat, cfg.bound), HALL_COLUMNS),
              "gamma": (gamma_rows(cat, cfg.bound), ("A", "B", "M", "N", "gamma")),
              "euler": (euler_rows(cat, cfg.bound), ("A", "B", "hom_dim", "ext1_dim", "euler_exponent"))}
    wanted = [args.table] if args.table != "all" else list(tables)
    if cfg.fmt == "json":
        out.write(json.dumps({k: tables[k][0] for k in wanted}, sort_keys=True, indent=2) + "\n")
    else:
        for i, k in enumerate(wanted):
            if len(wanted) > 1:
                out.write(("" if i == 0 else "\n") + f"# {k}\n")
            out.write(_emit(*tables[k], cfg.fmt))
    _flush(cat)
    return 0


def _element_out(x, cfg: RunConfig, out) -> None:
    if cfg.fmt == "json":
        out.write(json.dumps(element_to_json(x), sort_keys=True) + "\n")
    else:
        out.write(render(x) + "\n")


def cmd_mul(cfg: RunConfig, args, out) -> int:
    cat = cfg.category()
    spec = make_spec(cfg.algebra, cat)
    x = parse_expression(args.left, spec)
    y = parse_expression(args.right, spec)
    _element_out(multiply(x, y, spec), cfg, out)
    _flush(cat)
    return 0


def cmd_morphism(cfg: RunConfig, args, out) -> int:
    cat = cfg.category()
    src_id, tgt_id, factory = MAPS[args.map]
    src = make_spec(src_id, cat)
    x = parse_expression(args.expr, src)
    if factory is None:
        y = normalize(shift_T(x, src, args.shift), src)
    else:
        y = factory(src, make_spec(tgt_id, cat))(normalize(x, src))
    _element_out(y, cfg, out)
    _flush(cat)
    return 0


def cmd_verify(cfg: RunConfig, args, out) -> int:
    suites = []
    for s in args.suite or ["all"]:
        suites += [x for x in s.split(",") if x]
    scfg = SuiteConfig(cfg.quiver, cfg.q, cfg.bound, cfg.lo, cfg.hi, args.radius, args.trials, cfg.seed)
    cache = CountCache(Path(cfg.cache_dir) / "counts.json") if cfg.cache_dir else None
    algebras = [resolve_id(a) for a in args.algebra] if args.algebra else None
    report = run_suites(suites, scfg, algebras, cache)
    text = dumps(report) + "\n"
    if args.report:
        Path(args.report).write_text(text)
    if cfg.fmt == "json":
        out.write(text)
    else:
        for r in report["reports"]:
            label = r.get("algebra") or r.get("map") or ""
            if r["suite"] == "control":
                what = f"mutant caught by {r['counterexample']['family']!r}" if r["detected"] else "mutant NOT caught"
            else:
                what = f"{sum(f['instances'] for f in r['families'])} instances"
            out.write(f"{r['suite']:<14}{label:<12}{r['verdict']:<6}{what}\n")
            for f in r.get("families", []):
                if f["failure_count"]:
                    out.write(f"    {f['name']}: {f['failure_count']} failure(s)\n")
                    out.write(f"      e.g. {json.dumps(f['failures'][0], sort_keys=True)}\n")
        out.write(f"verdict: {report['verdict']}\n")
    if cache is not None:
        cache.flush()
    return 0 if report["verdict"] == "pass" else 1


def cmd_export(cfg: RunConfig, args, out) -> int:
    cat = cfg.category()
    dest = Path(args.out)
    dest.mkdir(parents=True, exist_ok=True)
    tables = {"classes": (class_rows(cat, cfg.bound), ("name", "dim", "aut", "indecomposable")),
              "hall": (hall_rows(cat, cfg.bound), HALL_COLUMNS),
              "gamma": (gamma_rows(cat, cfg.bound), ("A", "B", "M", "N", "gamma")),
              "euler": (euler_rows(cat, cfg.bound), ("A", "B", "hom_dim", "ext1_dim", "euler_exponent"))}
    meta = {"quiver": cfg.quiver.to_json(), "q": cfg.q, "bound": list(cfg.bound), "tables": sorted(tables)}
    for name, (rows, cols) in tables.items():
        (dest / f"{name}.json").write_text(_emit(rows, cols, "json"))
        if name == "classes":
            rows = [dict(r, dim=",".join(map(str, r["dim"]))) for r in rows]
        (dest / f"{name}.csv").write_text(_emit(rows, cols, "csv"))
        out.write(f"wrote {dest / name}.csv and .json\n")
    (dest / "meta.json").write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n")
    _flush(cat)
    return 0


def _flush(cat: QuiverCategory) -> None:
    if cat.cache is not None:
        cat.cache.flush()


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--quiver", help="quiver JSON file {vertices: [...], arrows: [[s, t], ...]}")
    src.add_argument("--linear", type=int, default=1, metavar="N",
                     help="use the equioriented A_N quiver (default: A_1)")
    common.add_argument("--q", type=int, default=2, help="size of the prime field (default 2)")
    common.add_argument("--bound", help="dimension bound per vertex, e.g. 1,1")
    common.add_argument("--degrees", default="-2,3", help="degree window lo,hi (default -2,3)")
    common.add_argument("--cache-dir", help=f"persistent count cache (overrides ${ENV_VAR})")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true", help="log timings to stderr")

    p = argparse.ArgumentParser(prog="hallalg", description="Hall algebras of quiver representations over F_q.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("enumerate", parents=[common], help="list isomorphism classes with automorphism counts")

    c = sub.add_parser("counts", parents=[common], help="print Hall, gamma and Euler tables")
    c.add_argument("--table", choices=("hall", "gamma", "euler", "all"), default="all")

    m = sub.add_parser("mul", parents=[common], help="multiply two expressions")
    m.add_argument("--algebra", required=True, help=", ".join(sorted(ALGEBRA_IDS)))
    m.add_argument("left")
    m.add_argument("right")

    mo = sub.add_parser("morphism", parents=[common], help="apply theta, phi, iota, eta or T")
    mo.add_argument("--map", required=True, choices=sorted(MAPS))
    mo.add_argument("--shift", type=int, default=1, help="shift amount for T")
    mo.add_argument("expr")

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)} or all (repeatable)")
    v.add_argument("--algebra", action="append", help="restrict per-algebra suites (repeatable)")
    v.add_argument("--trials", type=int, default=500)
    v.add_argument("--radius", type=int, default=2, help="K0 grid radius")
    v.add_argument("--report", help="write the JSON report here")

    e = sub.add_parser("export-tables", parents=[common], help="write structure-constant tables")
    e.add_argument("--out", required=True, help="output directory")
    return p


COMMANDS = {"enumerate": cmd_enumerate, "counts": cmd_counts, "mul": cmd_mul, "morphism": cmd_morphism,
            "verify": cmd_verify, "export-tables": cmd_export}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = build_config(args)
        if args.command == "verify":
            if args.trials < 1:
                raise ConfigError("--trials must be at least 1")
            for a in args.algebra or []:
                if a not in ALGEBRA_IDS:
                    raise ConfigError(f"unknown algebra {a!r}; choose from {', '.join(sorted(ALGEBRA_IDS))}")
        return COMMANDS[args.command](cfg, args, out)
    except ConfigError as exc:
        print(f"hallalg: configuration error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"hallalg: parse error: {exc}", file=sys.stderr)
        return 1
    except KindError as exc:
        print(f"hallalg: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"hallalg: capacity exceeded: {exc}", file=sys.stderr)
        return 1
    except BackendInconsistency as exc:
        print(f"hallalg: backend inconsistency: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"hallalg: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
