"""Command-line entry point: ``python -m jacobi <command> ...``."""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import diagram as dg
from . import ek
from . import horizontal as hz
from . import lie
from . import maps as M
from . import suites
from . import tangle as T
from .spaces import NAMED, FormalSum, space


@dataclass
class Config:
    cap: int = 3
    dcap: int = 2
    hcap: int = 4
    guard_diagrams: int = dg.CONFIG.guard
    guard_rows: int = dg.CONFIG.rows_guard
    out: str | None = None

    def __post_init__(self):
        for k in ("cap", "dcap", "hcap"):
            if getattr(self, k) < 0:
                raise ValueError(f"--{k} must be non-negative")
        if self.guard_diagrams <= 0 or self.guard_rows <= 0:
            raise ValueError("guards must be positive")

    def apply(self):
        dg.CONFIG.guard = self.guard_diagrams
        dg.CONFIG.rows_guard = self.guard_rows


def coords_table(q, v: FormalSum) -> list:
    """Rows 'degree, index, coefficient, diagram' in basis order."""
    red = q.reduce(v)
    rows = []
    for m in range(q.cap + 1):
        for k, i in enumerate(q.basis(m)):
            c = red.get(i)
            if c:
                rows.append(f"{m}\t{k}\t{c}\t{dg.one_line(dg.lookup(i))}")
    return rows or ["0"]


def parse_skeleton(text: str) -> tuple:
    return tuple(t for t in text.replace(",", " ").split() if t)


# ---------------------------------------------------------------- commands

def cmd_dims(args, cfg: Config) -> tuple:
    rs = NAMED[args.space]
    skel = parse_skeleton(args.skeleton)
    q = space(skel, cfg.cap, rs)
    out = ["degree\tdim\tcolumns\trelations"]
    for m in range(cfg.cap + 1):
        lv = q.level(m)
        out.append(f"{m}\t{q.dim(m)}\t{len(lv.cols)}\t{lv.nrel}")
    return out, True


def _load_sum(path: str, cap) -> FormalSum:
    recs = dg.parse_text(Path(path).read_text())
    if not recs:
        raise dg.ParseError(f"{path}: no diagram records")
    skel = recs[0][0].skel
    top = max(d.degree for d, _ in recs)
    v = FormalSum(skel, {}, max(top, cap))
    for d, c in recs:
        if d.skel != skel:
            raise dg.ParseError(f"{path}: records live on different skeletons")
        v.add(d, c)
    return v


def _input_sum(args, cap) -> FormalSum:
    if args.element:
        return M.named(args.element, cap)
    if not args.file:
        raise ValueError("give a diagram file or --element")
    return _load_sum(args.file, cap)


def cmd_reduce(args, cfg: Config) -> tuple:
    v = _input_sum(args, args.cap)
    q = space(v.skel, v.cap, NAMED[args.space])
    return ["degree\tindex\tcoefficient\tdiagram"] + coords_table(q, v), True


def cmd_eval_lie(args, cfg: Config) -> tuple:
    v = _input_sum(args, args.cap)
    g = lie.builtin(args.lie or ("dsl2" if v.is_directed() else "sl2"))
    out = []
    if isinstance(g, lie.ManinTriple):
        t = lie.tar_eval(v, g) if v.is_directed() else lie.tg_eval(v, g.g)
        out.append(f"value\t{t}")
        if g.projection is not None:
            t = g.project(t)
            out.append(f"projected\t{t}")
    else:
        if v.is_directed():
            raise ValueError("directed diagrams need a Manin triple (--lie dsl2 or a bialgebra file)")
        t = lie.tg_eval(v, g)
        out.append(f"value\t{t}")
    if args.trace:
        target = t.g
        if args.trace not in target.reps:
            raise KeyError(f"no representation {args.trace!r}; known: {', '.join(sorted(target.reps))}")
        series = lie.trace_on_rep(t, [target.reps[args.trace]] * len(t.skel))
        out.append("trace\t" + " ".join(str(x) for x in series))
    return out, True


def cmd_assoc(args, cfg: Config) -> tuple:
    if args.action == "solve":
        a = hz.solve_associator(cfg.hcap)
        out = [hz.format_table(a.phi).rstrip("\n")]
    else:
        if not args.file:
            raise ValueError("assoc check needs a coefficient table file")
        phi = hz.parse_table(Path(args.file).read_text(), 3, cfg.hcap)
        a = hz.Associator(phi, cfg.hcap)
        out = []
    checks = hz.verify_associator(a)
    out += [f"# {k}\t{'PASS' if checks[k] else 'FAIL'}" for k in sorted(checks)]
    return out, all(checks.values())


def _structure(name: str, cap: int):
    if name == "akz":
        return T.a_kz(cap)
    if name == "aarkz":
        return T.a_kz(cap, directed=True)
    if name == "aek":
        return ek.build_aek(ek.compute_J(cap))
    raise KeyError(f"unknown algebra {name!r}")


def _tangle(spec: str):
    p = Path(spec)
    if p.exists():
        return T.parse_word(p.read_text(), p.stem)
    return T.builtin(spec)


def cmd_zk(args, cfg: Config) -> tuple:
    cap = cfg.dcap if args.algebra in ("aarkz", "aek") else cfg.cap
    H = _structure(args.algebra, cap)
    t = _tangle(args.tangle or "unknot_cn")
    m = T.canonical_order(T.z_eval(t, H))
    out = [f"tangle\t{t.name}", f"algebra\t{H.name}", f"cap\t{cap}",
           f"domain\t{' '.join(m.dom) or '-'}", f"target\t{' '.join(m.cod) or '-'}",
           f"skeleton\t{' '.join(m.deco.skel) or '-'}",
           "ends\t" + " ".join("O" if e is None else f"{e[0][0]}{e[0][1]}>{e[1][0]}{e[1][1]}"
                                for e in m.ends)]
    out.append("degree\tindex\tcoefficient\tdiagram")
    out += coords_table(H.space(m.deco.skel), m.deco)
    return out, True


def cmd_ek(args, cfg: Config) -> tuple:
    cap = cfg.dcap
    res = suites.ek_result(cap)
    H = res.H
    a2 = H.space(("I", "I"))
    out = [f"# EK twist, directed cap {cap}", "## J", "degree\tindex\tcoefficient\tdiagram"]
    out += coords_table(a2, res.J.J)
    out += ["## R_EK", "degree\tindex\tcoefficient\tdiagram"]
    out += coords_table(a2, H.R)
    out.append("## checks")
    ok = True
    for k in sorted(res.checks):
        v = res.checks[k]
        good = v == 0 if k.endswith("_terms") else bool(v)
        ok &= good
        out.append(f"{k}\t{v}\t{'PASS' if good else 'FAIL'}")
    out.append("## conjecture report")
    rep = ek.conjecture_suite(res, lie_cap=args.lie_cap)
    for k in sorted(rep):
        out.append(f"{k}\t{_fmt(rep[k])}")
    return out, ok


def _fmt(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v[k])}" for k in sorted(v, key=str)) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _run_one(name: str, cfg: suites.SuiteConfig, guards: tuple) -> list:
    dg.CONFIG.guard, dg.CONFIG.rows_guard = guards
    r = suites.run_suite(name, cfg)
    lines = [r.summary()]
    for label, ok, detail in r.checks:
        lines.append(f"  {'PASS' if ok else 'FAIL'}\t{label}" + (f"\t{_fmt(detail)}" if detail != "" else ""))
    for k in sorted(r.notes):
        lines.append(f"  note\t{k}\t" + _fmt(r.notes[k]).replace("\n", " | "))
    return [r.passed, lines]


def threads() -> int:
    try:
        return max(1, int(os.environ.get("JACOBI_THREADS", "1")))
    except ValueError:
        return 1


def cmd_verify(args, cfg: Config) -> tuple:
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    known = set(suites.SUITES) | set(suites.ALIASES)
    for n in names:
        if n not in known:
            raise KeyError(f"unknown suite {n!r}; known: all, {', '.join(sorted(known))}")
    scfg = suites.SuiteConfig(cap=cfg.cap, dcap=cfg.dcap, hcap=cfg.hcap)
    guards = (dg.CONFIG.guard, dg.CONFIG.rows_guard)
    n = min(threads(), len(names))
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(_run_one, names, [scfg] * len(names), [guards] * len(names)))
    else:
        results = [_run_one(x, scfg, guards) for x in names]
    out = []
    for _, lines in results:
        out += lines
    passed = sum(1 for ok, _ in results if ok)
    out.append(f"TOTAL {passed}/{len(results)} suites passed")
    return out, passed == len(results)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=3, help="undirected degree cap")
    common.add_argument("--dcap", type=int, default=2, help="directed degree cap")
    common.add_argument("--hcap", type=int, default=4, help="horizontal degree cap")
    common.add_argument("--out", help="also write the output to DIR/<command>.txt")
    common.add_argument("--guard-diagrams", type=int, default=dg.CONFIG.guard,
                        help="maximum diagrams per (skeleton, degree)")
    common.add_argument("--guard-rows", type=int, default=dg.CONFIG.rows_guard,
                        help="maximum relation rows per (skeleton, degree)")

    p = argparse.ArgumentParser(prog="jacobi", description="Exact Jacobi-diagram computations.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dims", parents=[common], help="dimensions of a quotient space")
    s.add_argument("--space", default="A", choices=sorted(NAMED))
    s.add_argument("--skeleton", default="O", help="components, e.g. 'I I' or 'O' or '*'")
    s.set_defaults(func=cmd_dims)

    for name, func, helptext in (("reduce", cmd_reduce, "coordinates in a quotient basis"),
                                 ("eval-lie", cmd_eval_lie, "evaluate into U(g) tensors")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file", nargs="?", help="diagram records file")
        s.add_argument("--element", help="a named element instead of a file: " + ", ".join(M.NAMED))
        if name == "reduce":
            s.add_argument("--space", default="A", choices=sorted(NAMED))
        else:
            s.add_argument("--lie", help="sl2, dsl2 or a Lie algebra file")
            s.add_argument("--trace", help="representation name for a trace series, e.g. fund")
        s.set_defaults(func=func)

    s = sub.add_parser("assoc", parents=[common], help="rational Drinfeld associator")
    s.add_argument("action", choices=["solve", "check"])
    s.add_argument("file", nargs="?", help="coefficient table for 'check'")
    s.set_defaults(func=cmd_assoc)

    s = sub.add_parser("zk", parents=[common], help="invariant of a parenthesized tangle")
    s.add_argument("--tangle", help="tangle file or built-in name (default unknot_cn)")
    s.add_argument("--algebra", default="akz", choices=["akz", "aarkz", "aek"])
    s.set_defaults(func=cmd_zk)

    s = sub.add_parser("ek", parents=[common], help="Etingof-Kazhdan twist report")
    s.add_argument("--lie-cap", type=int, default=4, help="ħ order for the sl2 unknot series")
    s.set_defaults(func=cmd_ek)

    s = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    s.add_argument("suite", help="suite name or 'all': " + ", ".join(suites.SUITES))
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    saved = (dg.CONFIG.guard, dg.CONFIG.rows_guard)
    try:
        cfg = Config(args.cap, args.dcap, args.hcap, args.guard_diagrams, args.guard_rows, args.out)
        cfg.apply()
        out, ok = args.func(args, cfg)
    except (dg.ParseError, T.TangleError, lie.LieAlgebraError, dg.GuardExceeded,
            KeyError, ValueError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return 2
    finally:
        dg.CONFIG.guard, dg.CONFIG.rows_guard = saved
    text = "\n".join(out) + "\n"
    sys.stdout.write(text)
    if cfg.out:
        d = Path(cfg.out)
        d.mkdir(parents=True, exist_ok=True)
        (d / f"{args.command}.txt").write_text(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
