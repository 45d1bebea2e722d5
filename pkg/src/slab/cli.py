"""Command-line interface.

Exit codes: 0 success or passing check, 1 failing check, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .builtins import UnknownWordError, builtin_words, resolve_word
from .campaign import CHECKS, CampaignConfig, ConfigError, cap_horizon, parse_config, run_campaign
from .codings import (DegenerateTrajectoryError, LineParams, RotationParams, billiard_word,
                      cutting_sequence, flow_word, render_trajectory_svg, rotation_word)
from .flow import flow_matrix, tijdeman_audit
from .graphs import (NotAFactorError, dendricity_check, extension_graph, is_semi_connected,
                     is_strongly_connected, is_tree, rauzy_graph)
from .linalg import kernel_basis
from .quadratic import cf_expand, convergents, qr
from .sturmian import (DirectiveSpec, NotSturmianError, UndeterminedTypeError, exact_frequencies,
                       renormalize, run_length_extract)
from .words import FiniteWord, complexity, factor_table, is_saturated, morse_hedlund_detect


class UsageError(Exception):
    pass


def _word(spec: str):
    try:
        return resolve_word(spec)
    except UnknownWordError as exc:
        raise UsageError(str(exc)) from exc


def _out(text: str, path: str | None) -> None:
    if path and path != "-":
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _pair(text: str):
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 2:
        raise UsageError(f"expected two comma-separated numbers, got {text!r}")
    return qr(parts[0]), qr(parts[1])


# -- subcommands ------------------------------------------------------------------

def cmd_generate(a) -> int:
    w = _word(a.word)
    n = a.n if w.length is None else min(a.n, w.length)
    u = w.prefix(n)
    _out(io.format_word_file(u) if a.file else f"{u}\n", a.output)
    return 0


def cmd_complexity(a) -> int:
    w = _word(a.word)
    h = cap_horizon(a.horizon, w)
    if a.factors is not None:
        t = factor_table(w, a.factors, h)
        t.saturated = is_saturated(w, a.factors, h)
        _out(io.dumps(t.to_json()), a.json)
        return 0
    prof = complexity(w, a.n_max, h)
    sat = is_saturated(w, a.n_max, h)
    if a.json:
        _out(io.dumps({"word": w.description, "horizon": h, "profile": prof, "saturated": sat}), a.json)
    else:
        print(" ".join(map(str, prof)))
        if not sat:
            print(f"caveat: unsaturated at horizon {h}", file=sys.stderr)
    if a.morse_hedlund:
        print(morse_hedlund_detect(w, a.n_max, h))
    return 0


def cmd_cf(a) -> int:
    x = qr(a.x)
    cf = cf_expand(x, a.max_terms)
    if a.json:
        _out(io.dumps(cf.to_json()), a.json)
    else:
        print(f"{cf} {cf.status}")
    if a.convergents:
        print(" ".join(str(c) for c in convergents(cf, a.convergents)))
    return 0


def cmd_renormalize(a) -> int:
    w = _word(a.word)
    h = cap_horizon(a.horizon, w)
    if a.run_lengths:
        r = run_length_extract(w, a.run_lengths, h)
        print(",".join(map(str, r.values)))
        if r.truncated:
            print(f"caveat: {r.caveat}", file=sys.stderr)
            return 1
        return 0
    for _ in range(a.times):
        w = renormalize(w, h)
    print(w.prefix(a.n))
    return 0


def cmd_rauzy(a) -> int:
    w = _word(a.word)
    g = rauzy_graph(w, a.n, cap_horizon(a.horizon, w))
    if a.dot:
        _out(g.to_dot(), a.dot)
    print(f"vertices={len(g.vertices)} edges={len(g.edges)} "
          f"semi_connected={is_semi_connected(g)} strongly_connected={is_strongly_connected(g)}"
          + ("" if g.saturated else " caveat=unsaturated"))
    return 0


def cmd_ext_graph(a) -> int:
    w = _word(a.word)
    u = FiniteWord(w.alphabet.parse(a.u), w.alphabet) if a.u not in ("", "ε", "eps") else FiniteWord((), w.alphabet)
    e = extension_graph(w, u, cap_horizon(a.horizon, w))
    if a.dot:
        _out(e.to_dot(), a.dot)
    print(f"u={u.label()} left={len(e.left)} right={len(e.right)} edges={len(e.edges)} {is_tree(e)}")
    return 0


def cmd_flow_matrix(a) -> int:
    w = _word(a.word)
    M = flow_matrix(w, a.n, cap_horizon(a.horizon, w))
    _out(M.to_csv(), a.csv)
    if M.caveat:
        print(f"caveat: {M.caveat}", file=sys.stderr)
    return 0


def cmd_kernel(a) -> int:
    w = _word(a.word)
    M = flow_matrix(w, a.n, cap_horizon(a.horizon, w))
    _out(io.dumps(kernel_basis(M, a.side).to_json()), a.json)
    return 0


def cmd_dendric(a) -> int:
    w = _word(a.word)
    r = dendricity_check(w, a.max_n, cap_horizon(a.horizon, w))
    if a.json:
        _out(io.dumps(r.to_json()), a.json)
    print(r.verdict + (f" {r.failure}" if r.failure else "") + (f" caveat={r.caveat}" if r.caveat else ""))
    return 0 if r.dendric else 1


def cmd_tijdeman_audit(a) -> int:
    w = _word(a.word)
    d = a.d or w.alphabet.d
    freqs = exact_frequencies(DirectiveSpec.parse(a.exact_freq)) if a.exact_freq else None
    claimed = (a.claimed_small_delta, a.claimed_delta) if a.claimed_delta is not None else None
    audit = tijdeman_audit(w, d, a.n_max, cap_horizon(a.horizon, w), freqs, claimed)
    if a.json:
        _out(io.dumps(audit.to_json()), a.json)
    print(audit.conclusion())
    return 0 if audit.passed else 1


def cmd_code(a) -> int:
    if a.kind == "rotation":
        if a.y is None or a.alpha is None:
            raise UsageError("code rotation needs --y and --alpha")
        print(rotation_word(RotationParams(qr(a.y), qr(a.alpha)), a.n))
        return 0
    if a.x is None or a.theta is None:
        raise UsageError(f"code {a.kind} needs --x and --theta")
    p = LineParams(_pair(a.x), _pair(a.theta))
    if a.svg:
        Path(a.svg).write_text(render_trajectory_svg(p, a.bounces if a.bounces is not None else min(a.n, 64)))
    route = {"billiard": billiard_word, "cutting": cutting_sequence, "flow": flow_word}[a.kind]
    print(route(p, a.n))
    return 0


def cmd_campaign(a) -> int:
    if a.config:
        cfg = parse_config(Path(a.config).read_text())
    else:
        if not a.word:
            raise UsageError("campaign needs a config file or --word")
        cfg = CampaignConfig(a.word)
    if a.word:
        cfg.word = a.word
    if a.check:
        cfg.checks = list(a.check)
    for key in ("n_max", "horizon", "output", "csv", "dot"):
        val = getattr(a, key)
        if val is not None:
            setattr(cfg, key, val)
    try:
        code, report = run_campaign(cfg, timing=not a.no_timing)
    except (ConfigError, UnknownWordError) as exc:
        raise UsageError(str(exc)) from exc
    if not cfg.output:
        sys.stdout.write(io.dumps(report))
    for c in report["checks"]:
        mark = "PASS" if c["passed"] else "FAIL"
        print(f"{mark} {c['name']}" + (f" ({c['caveat']})" if c["caveat"] else ""), file=sys.stderr)
    return code


def cmd_builtins(a) -> int:
    for name, b in sorted(builtin_words().items()):
        print(f"{name}\t{b.quoted_prefix or ''}")
    return 0


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slab", description="Low-complexity infinite words with exact arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)

    def word_cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("word", help="word spec, e.g. fibonacci, directive:2,1,..., periodic:2(010), file:w.txt")
        s.add_argument("--horizon", type=int, default=20000)
        s.set_defaults(fn=fn)
        return s

    s = word_cmd("generate", cmd_generate, "print a prefix")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--file", action="store_true", help="emit the word-file format")
    s.add_argument("-o", "--output")

    s = word_cmd("complexity", cmd_complexity, "complexity profile p(0..n_max)")
    s.add_argument("--n-max", type=int, default=10)
    s.add_argument("--factors", type=int, help="export the factor table of this length as JSON")
    s.add_argument("--morse-hedlund", action="store_true")
    s.add_argument("--json", nargs="?", const="-", help="write JSON (to stdout with no path)")

    s = sub.add_parser("cf", help="continued fraction expansion")
    s.add_argument("x", help="number a+b*sqrt(D)")
    s.add_argument("--max-terms", type=int, default=1000)
    s.add_argument("--convergents", type=int)
    s.add_argument("--json", nargs="?", const="-", help="write JSON (to stdout with no path)")
    s.set_defaults(fn=cmd_cf)

    s = word_cmd("renormalize", cmd_renormalize, "apply R and print a prefix, or extract run-lengths")
    s.add_argument("-n", type=int, default=30)
    s.add_argument("--times", type=int, default=1)
    s.add_argument("--run-lengths", type=int)

    s = word_cmd("rauzy", cmd_rauzy, "Rauzy graph")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--dot")

    s = word_cmd("ext-graph", cmd_ext_graph, "extension graph of a factor")
    s.add_argument("-u", default="", help="the factor (empty for the empty word)")
    s.add_argument("--dot")

    s = word_cmd("flow-matrix", cmd_flow_matrix, "flow matrix as CSV")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--csv")

    s = word_cmd("kernel", cmd_kernel, "exact kernel basis of the flow matrix")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--side", choices=["right", "left"], default="right")
    s.add_argument("--json", nargs="?", const="-", help="write JSON (to stdout with no path)")

    s = word_cmd("dendric", cmd_dendric, "dendricity up to a length")
    s.add_argument("--max-n", type=int, default=8)
    s.add_argument("--json", nargs="?", const="-", help="write JSON (to stdout with no path)")

    s = word_cmd("tijdeman-audit", cmd_tijdeman_audit, "audit the complexity lower bound")
    s.add_argument("-d", type=int)
    s.add_argument("--n-max", type=int, default=10)
    s.add_argument("--exact-freq", help="directive spec whose exact letter frequencies to use")
    s.add_argument("--claimed-delta", type=int)
    s.add_argument("--claimed-small-delta", type=int)
    s.add_argument("--json", nargs="?", const="-", help="write JSON (to stdout with no path)")

    s = sub.add_parser("code", help="rotation and trajectory codings")
    s.add_argument("kind", choices=["rotation", "billiard", "cutting", "flow"])
    s.add_argument("--y")
    s.add_argument("--alpha")
    s.add_argument("--x")
    s.add_argument("--theta")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--svg")
    s.add_argument("--bounces", type=int)
    s.set_defaults(fn=cmd_code)

    s = sub.add_parser("campaign", help="run a verification campaign")
    s.add_argument("config", nargs="?")
    s.add_argument("--word")
    s.add_argument("--check", action="append", choices=sorted(CHECKS))
    s.add_argument("--n-max", type=int)
    s.add_argument("--horizon", type=int)
    s.add_argument("--output")
    s.add_argument("--csv")
    s.add_argument("--dot")
    s.add_argument("--no-timing", action="store_true")
    s.set_defaults(fn=cmd_campaign)

    s = sub.add_parser("builtins", help="list the builtin words")
    s.set_defaults(fn=cmd_builtins)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return a.fn(a)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotAFactorError, DegenerateTrajectoryError, UndeterminedTypeError, NotSturmianError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
