"""Command-line interface with stable key=value output.

Machine-readable results go to stdout, one ``key=value`` per line, with no
timestamps, so identical inputs give byte-identical output; diagnostics go to
stderr.  Exit codes: 0 success (or VALID certificate), 1 a verification or
certificate check failed, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .action import ActionError, certify, parse_action, verify_action, emit_action
from .classify import IsoType, classify, group_order, iso, lcm_finite_orders
from .euler import euler_characteristic, manifold_invariants, parse_symbolic_volume, serre_sum
from .gram import GramError, gram_matrix, signature
from .qfield import Q23
from .roots import root_system, verify_closure
from .search import SearchConfig, search_torsion_free
from .symbol import CoxeterSymbol, SymbolError, parse_symbol
from .torsion import inventory


class CliError(Exception):
    pass


def _load_symbol(path: str) -> CoxeterSymbol:
    try:
        return parse_symbol(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _parse_iso(text: str) -> IsoType:
    m = re.fullmatch(r"I2\((\d+)\)", text)
    if m:
        return iso("I", 2, int(m.group(1)))
    m = re.fullmatch(r"([A-H])(\d+)", text)
    if m:
        return iso(m.group(1), int(m.group(2)))
    raise CliError(f"cannot parse type {text!r}; expected e.g. A4, E8, H3, I2(7)")


def _parse_c_options(entries) -> dict:
    out = {}
    for entry in entries or []:
        parts = entry.split(":")
        if len(parts) != 3:
            raise CliError(f"--c expects '<gen>:<gen>:<value>', got {entry!r}")
        a, b, value = parts
        try:
            val = Fraction(value)
        except ValueError:
            raise CliError(f"bad weight {value!r} in --c") from None
        out[(a, b)] = val
    return out


def _cmd_classify(args) -> int:
    sym = _load_symbol(args.symbol)
    cls = classify(sym, infinite_edge_affine=args.affine_inf)
    print(f"type={cls.name}")
    if cls.is_finite:
        print(f"order={cls.order()}")
    else:
        print("order=infinite")
    return 0


def _fmt_exact(x: Q23) -> str:
    return str(x)


def _cmd_gram(args) -> int:
    sym = _load_symbol(args.symbol)
    g = gram_matrix(sym, _parse_c_options(args.c))
    n = g.side
    for i in range(n):
        if g.exact is not None:
            row = " ".join(_fmt_exact(g.exact[i][j]) for j in range(n))
        else:
            row = " ".join(f"{g.values[i, j]:.17g}" for j in range(n))
        print(f"matrix.{i}={row}")
    sig = signature(g, args.tol)
    print(f"negatives={sig.negatives}")
    print(f"positives={sig.positives}")
    print(f"zeros={sig.zeros}")
    return 0


def _cmd_euler(args) -> int:
    sym = _load_symbol(args.symbol)
    chi = euler_characteristic(sym)
    print(f"chi={chi}")
    print(f"lcm={lcm_finite_orders(sym)}")
    print(f"serre={serre_sum(sym)}")
    if args.index is not None:
        if args.dim is None:
            raise CliError("--index needs --dim")
        vol = None
        if args.simplex_volume:
            vol = parse_symbolic_volume(*args.simplex_volume)
        chi_m, volume = manifold_invariants(chi, args.index, args.dim, vol)
        print(f"chiM={chi_m}")
        print(f"volume={volume}")
    return 0


def _cmd_torsion(args) -> int:
    sym = _load_symbol(args.symbol)
    inv = inventory(sym)
    for entry in inv.entries:
        print(f"order={entry.order} subset={','.join(entry.subset)} word={' '.join(entry.word)}")
    return 0


def _cmd_roots(args) -> int:
    t = _parse_iso(args.type)
    rs = root_system(t)
    print(f"type={t.name}")
    print(f"order={group_order(t)}")
    print(f"count={len(rs.roots)}")
    for i in range(rs.rank):
        coords = " ".join(str(c) for c in rs.simple_vector(i))
        print(f"simple.{i}={coords}")
    print(f"closure={'ok' if verify_closure(rs) else 'failed'}")
    return 0


def _cmd_verify(args) -> int:
    sym = _load_symbol(args.symbol)
    try:
        act = parse_action(Path(args.action).read_text(encoding="utf-8"), sym)
    except OSError as exc:
        raise CliError(f"cannot read {args.action}: {exc}") from exc
    violations = verify_action(act)
    if violations:
        print("verify=fail")
        for v in violations:
            print(f"violation={v}")
        return 1
    print("verify=ok")
    print(f"degree={act.degree}")
    return 0


def _cmd_certify(args) -> int:
    sym = _load_symbol(args.symbol)
    try:
        act = parse_action(Path(args.action).read_text(encoding="utf-8"), sym)
    except OSError as exc:
        raise CliError(f"cannot read {args.action}: {exc}") from exc
    vol = parse_symbolic_volume(*args.simplex_volume) if args.simplex_volume else None
    cert = certify(sym, act, dim=args.dim, simplex_volume=vol, c=_parse_c_options(args.c))
    for line in cert.lines():
        print(line)
    return 0 if cert.valid else 1


def _cmd_search(args) -> int:
    sym = _load_symbol(args.symbol)
    cfg = SearchConfig(
        degree=args.degree,
        node_budget=args.budget_nodes,
        time_budget=args.budget_seconds,
        require_orientable=args.orientable,
        max_solutions=args.max_solutions,
    )
    result = search_torsion_free(sym, cfg)
    print(f"solutions={len(result.actions)}")
    print(f"exhausted={'true' if result.exhausted else 'false'}")
    print(f"nodes={result.nodes}")
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for i, act in enumerate(result.actions):
            path = outdir / f"solution{i}.act"
            path.write_text(emit_action(act), encoding="utf-8")
            print(f"written={path}")
    else:
        for act in result.actions:
            sys.stdout.write(emit_action(act))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypcox",
        description="Coxeter symbols, torsion inventories, and hyperbolic manifold certificates.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a symbol and report its order")
    p.add_argument("symbol")
    p.add_argument("--affine-inf", action="store_true",
                   help="treat a single infinity edge as the affine A~1")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("gram", help="print the Gram matrix and its signature")
    p.add_argument("symbol")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--c", action="append", metavar="A:B:VALUE",
                   help="weight for an infinity edge (default -1); repeatable")
    p.set_defaults(func=_cmd_gram)

    p = sub.add_parser("euler", help="Euler characteristic, lcm of finite orders, Serre sum")
    p.add_argument("symbol")
    p.add_argument("--index", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--simplex-volume", nargs=2, metavar=("COEFF", "CONST"),
                   help="fundamental-domain volume for odd dimensions, e.g. 7/1536 zeta3")
    p.set_defaults(func=_cmd_euler)

    p = sub.add_parser("torsion", help="list prime-order torsion words of a symbol")
    p.add_argument("symbol")
    p.set_defaults(func=_cmd_torsion)

    p = sub.add_parser("roots", help="print a root system and verify its closure")
    p.add_argument("type", help="e.g. A4, D5, E8, F4, G2, H3, I2(7)")
    p.set_defaults(func=_cmd_roots)

    p = sub.add_parser("verify", help="check an action against the symbol's relators")
    p.add_argument("symbol")
    p.add_argument("action")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("certify", help="run all manifold checks on an action")
    p.add_argument("symbol")
    p.add_argument("action")
    p.add_argument("--dim", type=int)
    p.add_argument("--simplex-volume", nargs=2, metavar=("COEFF", "CONST"))
    p.add_argument("--c", action="append", metavar="A:B:VALUE")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("search", help="search for transitive torsion-free actions")
    p.add_argument("symbol")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--orientable", action="store_true")
    p.add_argument("--budget-nodes", type=int, default=10**7)
    p.add_argument("--budget-seconds", type=float, default=600.0)
    p.add_argument("--max-solutions", type=int)
    p.add_argument("--out", help="directory for solution .act files")
    p.set_defaults(func=_cmd_search)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CliError, SymbolError, ActionError, GramError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
