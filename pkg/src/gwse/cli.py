"""Command line front end.

Exit codes: 0 success, 1 negative verdict (no profile found, verification
failed), 2 bad input, 3 the oracle refused an instance that is too large.
"""
from __future__ import annotations

import argparse
import json
import sys

from .assumptions import _check_owned
from .engine import coalition_game, extract_strategy, o_compute_ge, with_environment
from .game import GameError, load_game
from .oracle import DEFAULT_MAX_EDGES, OracleRefusal, verify_gwse
from .solver import TwoPlayerView, solve_zielonka
from .templates import (AssumptionProfile, SpecProfile, template_from_dict,
                        template_to_dict)

OK, NEGATIVE, BAD_INPUT, REFUSED = 0, 1, 2, 3


class InputError(Exception):
    pass


def _split(text):
    return [x.strip() for x in text.split(",") if x.strip()]


def _players(text):
    try:
        return [int(x) for x in _split(text)]
    except ValueError:
        raise InputError(f"--coalition expects comma separated player numbers, got {text!r}")


def load_input(cfg):
    try:
        game = load_game(cfg.input)
    except OSError as exc:
        raise InputError(f"cannot read {cfg.input}: {exc.strerror}")
    except GameError as exc:
        raise InputError(f"{cfg.input}: {exc}")
    try:
        if getattr(cfg, "env", None):
            game = with_environment(game, _split(cfg.env))
        if getattr(cfg, "coalition", None):
            game = coalition_game(game, _players(cfg.coalition))
    except ValueError as exc:
        raise InputError(str(exc))
    return game


def load_profile(path, game):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(doc, dict) or not isinstance(doc.get("templates"), list):
        raise InputError(f"{path}: profile must be an object with a 'templates' list")
    if doc.get("players", game.k) != game.k:
        raise InputError(f"{path}: profile is for {doc['players']} players, game has {game.k}")
    try:
        templates = AssumptionProfile([template_from_dict(t) for t in doc["templates"]])
        for i, t in templates.items():
            if i not in game.players:
                raise ValueError(f"template for unknown player {i}")
            _check_owned(game.graph, t.unsafe | t.colive, {i}, f"player {i}")
    except ValueError as exc:
        raise InputError(f"{path}: {exc}")
    return SpecProfile(game, templates)


def profile_document(game, profile, strategies=True):
    g = game.graph
    doc = {
        "players": game.k,
        "templates": [template_to_dict(profile.own(i), g) for i in game.players],
        "ltl": {str(i): profile.ltl(i) for i in game.players},
    }
    if strategies:
        doc["strategies"] = [extract_strategy(game, profile, i).to_dict() for i in game.players]
    return doc


# -- commands -------------------------------------------------------------------

def run_synth(cfg):
    game = load_input(cfg)
    profile, _ = o_compute_ge(game)
    if profile is None:
        return NEGATIVE, {"result": "false"}
    return OK, profile_document(game, profile)


def run_trace(cfg):
    game = load_input(cfg)
    profile, trace = o_compute_ge(game)
    g = game.graph
    iterations = []
    for it in trace:
        iterations.append({
            "iteration": it.number,
            "templates": [template_to_dict(it.before[i], g) for i in game.players],
            "winning": {str(i): it.winning[i] for i in game.players},
            "regions": {str(i): g.order(it.regions[i]) for i in game.players},
            "refined": None if it.after is None else
                       [template_to_dict(it.after[i], g) for i in game.players],
            "outcome": it.outcome,
        })
    doc = {"iterations": iterations, "result": "gwse" if profile is not None else "false"}
    return (OK if profile is not None else NEGATIVE), doc


def run_solve(cfg):
    """Zero-sum winning regions of each player for its own objective."""
    game = load_input(cfg)
    g = game.graph
    out = {}
    for i in game.players:
        view = TwoPlayerView.for_player(g, i)
        res = solve_zielonka(view, game.specs[i])
        out[str(i)] = {
            "winning": g.order(res.win_protagonist),
            "initial_won": g.initial in res.win_protagonist,
            "strategy": {v: res.strategy_protagonist[v] for v in g.order(res.strategy_protagonist)
                         if g.owner[v] == i},
        }
    return OK, {"players": out}


def run_verify(cfg):
    game = load_input(cfg)
    if not cfg.profile:
        raise InputError("verify needs --profile")
    profile = load_profile(cfg.profile, game)
    try:
        report = verify_gwse(game, profile, memory_bound=cfg.bound, max_edges=cfg.max_edges)
    except OracleRefusal as exc:
        return REFUSED, {"result": "refused", "edges": exc.size, "bound": exc.bound}
    return (OK if report.ok else NEGATIVE), report.to_dict()


def export_dot(game, profile=None):
    g = game.graph
    unsafe, colive = set(), set()
    if profile is not None:
        for i in game.players:
            unsafe |= profile.own(i).unsafe
            colive |= profile.own(i).colive
    shapes = ["box", "circle", "diamond", "hexagon", "triangle"]
    lines = ["digraph game {", "  rankdir=LR;", '  __init [shape=point, label=""];']
    for v in g.vertices:
        shape = shapes[(g.owner[v] - 1) % len(shapes)]
        prio = ",".join(str(game.specs[i][v]) for i in game.players)
        lines.append(f'  "{v}" [shape={shape}, label="{v}\\n{prio}"];')
    lines.append(f'  __init -> "{g.initial}";')
    for u, v in g.edges:
        style = ""
        if (u, v) in unsafe:
            style = " [style=dashed, color=red]"
        elif (u, v) in colive:
            style = " [style=dotted, color=orange]"
        lines.append(f'  "{u}" -> "{v}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def run_export_dot(cfg):
    game = load_input(cfg)
    profile = load_profile(cfg.profile, game) if cfg.profile else None
    return OK, export_dot(game, profile)


# -- rendering ------------------------------------------------------------------

def render_text(command, doc):
    if isinstance(doc, str):
        return doc
    if command == "synth" and "templates" in doc:
        out = []
        for t in doc["templates"]:
            i = t["player"]
            out.append(f"player {i}: {doc['ltl'][str(i)]}")
        return "\n".join(out) + "\n"
    if command == "trace":
        out = []
        for it in doc["iterations"]:
            won = " ".join(f"P{i}={'won' if w else 'lost'}" for i, w in it["winning"].items())
            out.append(f"iteration {it['iteration']}: {won} -> {it['outcome']}")
            for t in it["refined"] or []:
                out.append(f"  player {t['player']}: unsafe {_pairs(t['unsafe'])} "
                           f"colive {_pairs(t['colive'])}")
        out.append(f"result: {doc['result']}")
        return "\n".join(out) + "\n"
    if command == "verify" and "general" in doc:
        out = [f"general: {doc['general']}",
               "realizable: " + " ".join(f"P{i}={r}" for i, r in doc["realizable"].items()),
               f"secure (memory bound {doc['memory_bound']}): {doc['secure']}",
               f"result: {'pass' if doc['ok'] else 'fail'}"]
        return "\n".join(out) + "\n"
    return json.dumps(doc, indent=2) + "\n"


def _pairs(edges):
    return "{" + ", ".join(f"{u}->{v}" for u, v in edges) + "}"


COMMANDS = {
    "synth": run_synth,
    "verify": run_verify,
    "solve": run_solve,
    "trace": run_trace,
    "export-dot": run_export_dot,
}


def _bound(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("bound must be at least 1")
    return n


def build_parser():
    parser = argparse.ArgumentParser(prog="gwse", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("-i", "--input", required=True, help="game JSON document")
        p.add_argument("-o", "--output", help="write the result here instead of stdout")
        p.add_argument("--coalition", help="comma separated players keeping their objective")
        p.add_argument("--env", help="comma separated vertices owned by an environment player")
        p.add_argument("--format", choices=["json", "text"], default="json")
        if name in ("verify", "export-dot"):
            p.add_argument("--profile", help="profile JSON as written by synth")
        if name == "verify":
            p.add_argument("--bound", type=_bound, default=2, help="strategy memory bound")
            p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES,
                           help="largest game the oracle accepts")
    return parser


def main(argv=None):
    cfg = build_parser().parse_args(argv)
    try:
        code, doc = COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    if isinstance(doc, str):
        text = doc
    elif cfg.format == "text":
        text = render_text(cfg.command, doc)
    else:
        text = json.dumps(doc, indent=2) + "\n"
    if cfg.output:
        try:
            with open(cfg.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {cfg.output}: {exc.strerror}", file=sys.stderr)
            return BAD_INPUT
    else:
        sys.stdout.write(text)
    if code == REFUSED:
        print(f"oracle refused: {doc['edges']} edges exceed the bound of {doc['bound']}",
              file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
