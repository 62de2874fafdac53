"""Command-line front end.

Every subcommand is a thin wrapper; inputs and outputs are the JSON formats
of :mod:`monobargain.serialize`.  Exit codes: 0 ok, 1 verify found a
profitable deviation, 2 size bound, 3 malformed input, 4 contract violation
(e.g. a non-tight input), 5 internal error.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import serialize as ser
from .errors import BargainError, ParseError
from .hypergraph import (check_dual, check_self_dual, dualize, gen_fano, gen_symmetric, gen_wheel,
                         seymour_join, sperner_reduce)
from .jordan import PlanarMap, corner_map, jordan_correspondence, jordan_tightness
from .monotone import Correspondence, build_correspondence
from .multiplayer import build3, certify_no_ne, certify_not_tight
from .solver import (UtilityProfile, brute_force_equilibria, certify_bargaining_equilibrium,
                     count_game_forms, enumerate_game_forms, solve_bargaining)

DEFAULT_SEED = 20240601


def _read_json(path):
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc
    return ser.loads(text)


def _cell_text(cell) -> str:
    parts = []
    for o in cell:
        if isinstance(o, tuple):
            sep = "" if all(v < 10 for v in o) else ","
            parts.append(sep.join(map(str, o)))
        else:
            parts.append(str(o))
    return " ".join(parts)


def _label(s) -> str:
    if isinstance(s, tuple):
        return "".join(s) if all(isinstance(v, str) for v in s) else str(s)
    return str(s)


def render_table(G: Correspondence) -> str:
    header = [""] + [_label(c) for c in G.cols]
    body = [[_label(r)] + [_cell_text(cell) for cell in row] for r, row in zip(G.rows, G.cells)]
    widths = [max(len(line[k]) for line in [header] + body) for k in range(len(header))]
    lines = []
    for k, line in enumerate([header] + body):
        lines.append(" | ".join(text.ljust(w) for text, w in zip(line, widths)).rstrip())
        if k == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines)


def _emit(args, data, table: str | None = None):
    if args.format == "table" and table is not None:
        print(table)
    else:
        print(ser.dumps(data))


def random_utility(m: int, n: int, seed: int, low: int = 0, high: int = 9) -> UtilityProfile:
    rng = random.Random(seed)
    uA = [[rng.randint(low, high) for _ in range(n)] for _ in range(m)]
    uB = [[rng.randint(low, high) for _ in range(n)] for _ in range(m)]
    return UtilityProfile.from_grid(uA, uB)


def cmd_corr(args):
    G = build_correspondence(args.m, args.n)
    _emit(args, ser.correspondence_to_json(G), render_table(G))
    return 0


def _load_utility(args):
    if args.random:
        if args.m is None or args.n is None:
            raise ParseError("--random needs --m and --n")
        return random_utility(args.m, args.n, args.seed), args.m, args.n
    u, m, n = ser.utility_from_json(_read_json(args.utility))
    if m is None:
        raise ParseError("bargaining utilities must be given as m x n grids")
    return u, m, n


def cmd_solve(args):
    u, m, n = _load_utility(args)
    e = solve_bargaining(m, n, u)
    data = ser.equilibrium_to_json(e)
    table = "\n".join([f"x* = {e.x_star}", f"y* = {e.y_star}",
                       f"o* = {_cell_text([e.o_star])}", f"iterations = {e.iterations}"])
    _emit(args, data, table)
    return 0


def cmd_verify(args):
    u, m, n = _load_utility(args)
    x, y = ser.equilibrium_from_json(_read_json(args.equilibrium), m, n)
    ok = certify_bargaining_equilibrium(m, n, u, x, y)
    _emit(args, {"x": list(x.values), "y": list(y.values), "equilibrium": ok},
          f"{x} {y}: {'NE in every game form' if ok else 'not an equilibrium'}")
    return 0 if ok else 1


def cmd_tight(args):
    data = _read_json(args.input)
    if args.self:
        verdict = check_self_dual(ser.hypergraph_from_json(data))
    else:
        verdict = check_dual(*ser.pair_from_json(data))
    table = "dual" if verdict.dual else f"not dual ({verdict.violates}): witness {sorted(verdict.witness)}"
    _emit(args, verdict.to_dict(), table)
    return 0


def cmd_dualize(args):
    H = dualize(ser.hypergraph_from_json(_read_json(args.input)))
    print(ser.dumps(ser.hypergraph_to_json(H.sorted())))
    return 0


def cmd_sperner(args):
    H = sperner_reduce(ser.hypergraph_from_json(_read_json(args.input)))
    print(ser.dumps(ser.hypergraph_to_json(H.sorted())))
    return 0


def cmd_gen(args):
    if args.family == "fano":
        data = ser.hypergraph_to_json(gen_fano())
    elif args.family == "wheel":
        data = ser.hypergraph_to_json(gen_wheel(args.k))
    elif args.family == "symmetric":
        data = ser.pair_to_json(*gen_symmetric(args.k, args.l))
    elif args.family == "seymour":
        C, D = ser.pair_from_json(_read_json(args.input))
        data = ser.hypergraph_to_json(seymour_join(C, D))
    else:
        if args.m is None or args.n is None:
            raise ParseError("gen utility needs --m and --n")
        data = ser.utility_to_json(random_utility(args.m, args.n, args.seed), args.m, args.n)
    print(ser.dumps(data))
    return 0


def cmd_jordan(args):
    pmap = PlanarMap.from_dict(_read_json(args.map)) if args.map else corner_map()
    G = jordan_correspondence(pmap)
    verdict = jordan_tightness(pmap)
    data = ser.correspondence_to_json(G)
    data["tight"] = verdict.to_dict()
    _emit(args, data, render_table(G) + "\n" + ("tight" if verdict.dual else "not tight"))
    return 0


def cmd_demo3(args):
    G3 = build3(2, 2, 2)
    verdict = certify_not_tight(G3)
    report = certify_no_ne(G3)
    data = {"tight": verdict.to_dict(), "no_ne": report}
    lines = [
        "H_A and H_BC: " + ("dual" if verdict.dual else "not dual"),
        "witness transversal: " + " ".join(sorted(verdict.witness or ())),
        f"game forms: {report['total_forms']}",
        f"{report['ne_found']} equilibria",
        "every profile tagged: " + ("yes" if report["all_tagged"] else "no"),
    ]
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_oracle_ne(args):
    u, m, n = _load_utility(args)
    G = build_correspondence(m, n)
    forms = []
    if args.form == "all":
        games = enumerate_game_forms(G)
    else:
        pick = 0 if args.form == "first" else -1
        cells = [[(cell[pick],) for cell in row] for row in G.cells]
        games = [Correspondence(G.rows, G.cols, cells, G.outcomes, m, n)]
    for g in games:
        eqs = brute_force_equilibria(g, u)
        forms.append([{"x": list(g.rows[r].values), "y": list(g.cols[c].values),
                       "outcome": list(g.cells[r][c][0])} for r, c in eqs])
    data = {"total_forms": count_game_forms(G) if args.form == "all" else 1,
            "equilibria": forms}
    table = "\n".join(f"form {k}: {len(eqs)} equilibria" for k, eqs in enumerate(forms))
    _emit(args, data, table)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monobargain", description="Monotone bargaining and tight game forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, fmt="table"):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("table", "json"), default=fmt)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        return p

    def utility_args(p):
        p.add_argument("--utility", help="utility JSON file (default: stdin)")
        p.add_argument("--random", action="store_true", help="draw a seeded random utility instead")
        p.add_argument("--m", type=int)
        p.add_argument("--n", type=int)

    p = add("corr", cmd_corr, "tabulate G_{m,n}")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("solve", cmd_solve, "simple NE of G_{m,n}", fmt="json")
    utility_args(p)

    p = add("verify", cmd_verify, "check an equilibrium against a utility", fmt="json")
    utility_args(p)
    p.add_argument("--equilibrium", help="equilibrium JSON file (default: stdin)")

    p = add("tight", cmd_tight, "duality test of a pair {C, D}", fmt="json")
    p.add_argument("--self", action="store_true", help="input is one hypergraph tested against itself")
    p.add_argument("--input")

    p = add("dualize", cmd_dualize, "minimal transversals", fmt="json")
    p.add_argument("--input")

    p = add("sperner", cmd_sperner, "drop non-minimal edges", fmt="json")
    p.add_argument("--input")

    p = add("gen", cmd_gen, "generate a family", fmt="json")
    p.add_argument("family", choices=("fano", "wheel", "symmetric", "seymour", "utility"))
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--input", help="pair JSON for seymour (default: stdin)")

    p = add("jordan", cmd_jordan, "Jordan correspondence of a map")
    p.add_argument("--map", help="map JSON file (default: the bundled four-corner map)")

    add("demo3", cmd_demo3, "three-player counterexample")

    p = add("oracle-ne", cmd_oracle_ne, "brute-force NE of game forms of G_{m,n}", fmt="json")
    utility_args(p)
    p.add_argument("--form", choices=("all", "first", "last"), default="all")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BargainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
