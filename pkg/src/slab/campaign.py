"""Verification campaigns: a word, a list of named checks, one JSON report."""
from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import io
from .builtins import UnknownWordError, lookup, resolve_word
from .flow import flow_matrix, frequency_vector, kirchhoff_residual, tijdeman_audit
from .graphs import dendricity_check, is_semi_connected, rauzy_graph, second_derivative_identity_check
from .linalg import kernel_basis
from .words import WordStream, complexity, is_saturated, morse_hedlund_detect, recurrent_up_to

__all__ = ["CampaignConfig", "ConfigError", "CheckResult", "CHECKS", "parse_config", "run_campaign",
           "cap_horizon", "FLOW_MATRIX_GOLDEN"]

FLOW_MATRIX_GOLDEN = ",00,01,10,20\n0,0,1,-1,-1\n1,0,-1,1,0\n2,0,0,0,1\n"


class ConfigError(ValueError):
    pass


def cap_horizon(horizon: int, w: WordStream | None = None) -> int:
    """Apply ``SLAB_HORIZON_CAP`` and, for finite words, their length."""
    cap = os.environ.get("SLAB_HORIZON_CAP")
    if cap:
        horizon = min(horizon, int(cap))
    if w is not None and w.length is not None:
        horizon = min(horizon, w.length)
    return horizon


@dataclass
class CampaignConfig:
    word: str
    checks: list[str] = field(default_factory=list)
    n_max: int = 8
    horizon: int = 20000
    prefixes: list[int] = field(default_factory=list)
    output: str | None = None
    csv: str | None = None
    dot: str | None = None
    svg: str | None = None
    claimed_delta: int | None = None

    def validate(self) -> None:
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown:
            raise ConfigError(f"unknown checks: {', '.join(unknown)}")
        if not self.checks:
            raise ConfigError("no checks requested")
        if self.horizon < self.n_max + 2:
            raise ConfigError("horizon must be at least n_max + 2")

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "checks": list(self.checks),
            "n_max": self.n_max,
            "horizon": self.horizon,
            "prefixes": list(self.prefixes),
        }


_INT_KEYS = {"n_max", "horizon", "claimed_delta"}
_STR_KEYS = {"word", "output", "csv", "dot", "svg"}


def parse_config(text: str) -> CampaignConfig:
    """Flat ``key=value`` lines; ``check=`` may repeat; ``#`` starts a comment."""
    values: dict = {"checks": []}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip().replace("-", "_"), value.strip()
        if not sep:
            raise ConfigError(f"line {lineno}: expected key=value")
        if key == "check":
            values["checks"].append(value)
        elif key == "prefixes":
            values["prefixes"] = [int(x) for x in value.split(",") if x.strip()]
        elif key in _INT_KEYS:
            values[key] = int(value)
        elif key in _STR_KEYS:
            values[key] = value
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    if "word" not in values:
        raise ConfigError("config needs a word= line")
    return CampaignConfig(**values)


@dataclass
class CheckResult:
    name: str
    passed: bool
    caveat: str | None = None
    details: dict = field(default_factory=dict)
    seconds: float | None = None

    def to_json(self, timing: bool = True) -> dict:
        out = {"name": self.name, "passed": self.passed, "caveat": self.caveat, "details": self.details}
        if timing:
            out["seconds"] = round(self.seconds or 0.0, 6)
        return out


@dataclass
class _Context:
    cfg: CampaignConfig
    w: WordStream
    horizon: int
    exact_freqs: tuple | None

    @property
    def caveat(self) -> str | None:
        return None if is_saturated(self.w, self.cfg.n_max + 2, self.horizon) else "unsaturated"


def _check_complexity(ctx: _Context) -> CheckResult:
    prof = complexity(ctx.w, ctx.cfg.n_max, ctx.horizon)
    ok = prof[0] == 1 and all(a <= b for a, b in zip(prof, prof[1:]))
    return CheckResult("complexity", ok, ctx.caveat, {"profile": prof})


def _check_sturmian(ctx: _Context) -> CheckResult:
    prof = complexity(ctx.w, ctx.cfg.n_max, ctx.horizon)
    return CheckResult("sturmian", prof == list(range(1, ctx.cfg.n_max + 2)), ctx.caveat, {"profile": prof})


def _check_morse_hedlund(ctx: _Context) -> CheckResult:
    v = morse_hedlund_detect(ctx.w, ctx.cfg.n_max, ctx.horizon)
    return CheckResult("morse-hedlund", True, v.caveat, {"verdict": str(v), "n0": v.n0})


def _check_dendric(ctx: _Context) -> CheckResult:
    r = dendricity_check(ctx.w, ctx.cfg.n_max, ctx.horizon)
    return CheckResult("dendric", r.dendric, r.caveat, r.to_json())


def _check_second_derivative(ctx: _Context) -> CheckResult:
    rows = [second_derivative_identity_check(ctx.w, n, ctx.horizon) for n in range(ctx.cfg.n_max + 1)]
    return CheckResult("second-derivative", all(r.holds for r in rows), ctx.caveat,
                       {"rows": [{"n": r.n, "lhs": r.lhs, "rhs": r.rhs} for r in rows]})


def _check_kernel(ctx: _Context) -> CheckResult:
    prof = complexity(ctx.w, ctx.cfg.n_max + 1, ctx.horizon)
    rows, ok = [], True
    for n in range(ctx.cfg.n_max + 1):
        M = flow_matrix(ctx.w, n, ctx.horizon)
        left = kernel_basis(M, "left")
        right = kernel_basis(M, "right")
        left_ok = left.dimension == 1 and len(set(left.basis[0])) == 1
        right_ok = right.dimension == prof[n + 1] - prof[n] + 1
        ok &= left_ok and right_ok
        rows.append({"n": n, "left_dim": left.dimension, "right_dim": right.dimension,
                     "expected_right_dim": prof[n + 1] - prof[n] + 1})
    return CheckResult("kernel", ok, ctx.caveat, {"rows": rows})


def _check_kirchhoff(ctx: _Context) -> CheckResult:
    N = ctx.cfg.prefixes[-1] if ctx.cfg.prefixes else ctx.horizon
    N = cap_horizon(N, ctx.w)
    rows, ok = [], True
    for n in range(1, ctx.cfg.n_max + 1):
        M = flow_matrix(ctx.w, n, max(N, ctx.horizon))
        (f,) = frequency_vector(ctx.w, n + 1, [N])
        res = kirchhoff_residual(M, f)
        tol = 10 * M.rows * (n + 1) / N
        ok &= res <= tol
        rows.append({"n": n, "residual": str(res), "tolerance": f"{tol:.6g}"})
    return CheckResult("kirchhoff", ok, ctx.caveat, {"prefix_len": N, "rows": rows})


def _check_tijdeman(ctx: _Context) -> CheckResult:
    d = ctx.w.alphabet.d
    claimed = (None, ctx.cfg.claimed_delta) if ctx.cfg.claimed_delta is not None else None
    audit = tijdeman_audit(ctx.w, d, ctx.cfg.n_max, ctx.horizon, ctx.exact_freqs, claimed)
    return CheckResult("tijdeman", audit.passed, audit.caveat, audit.to_json())


def _check_flow_matrix(ctx: _Context, n: int = 1) -> CheckResult:
    M = flow_matrix(ctx.w, n, ctx.horizon)
    csv = M.to_csv()
    if ctx.cfg.csv:
        Path(ctx.cfg.csv).write_text(csv)
    ok = all(s == 0 for s in M.column_sums()) and all(x in (-1, 0, 1) for r in M.entries for x in r)
    return CheckResult("flow-matrix", ok, M.caveat, {"n": n, "csv": csv})


def _check_flow_matrix_example(ctx: _Context) -> CheckResult:
    r = _check_flow_matrix(ctx, 1)
    return CheckResult("flow-matrix-example", r.details["csv"] == FLOW_MATRIX_GOLDEN, r.caveat, r.details)


def _check_semi_connected(ctx: _Context) -> CheckResult:
    rows = []
    for n in range(ctx.cfg.n_max + 1):
        g = rauzy_graph(ctx.w, n, ctx.horizon)
        rows.append({"n": n, "semi_connected": is_semi_connected(g)})
        if ctx.cfg.dot and n == ctx.cfg.n_max:
            Path(ctx.cfg.dot).write_text(g.to_dot())
    return CheckResult("semi-connected", all(r["semi_connected"] for r in rows), ctx.caveat, {"rows": rows})


def _check_recurrence(ctx: _Context) -> CheckResult:
    ok = recurrent_up_to(ctx.w, ctx.cfg.n_max, ctx.horizon)
    return CheckResult("recurrence", ok, ctx.caveat, {"recurrent_up_to": ctx.cfg.n_max if ok else None})


CHECKS: dict[str, Callable[[_Context], CheckResult]] = {
    "complexity": _check_complexity,
    "sturmian": _check_sturmian,
    "morse-hedlund": _check_morse_hedlund,
    "dendric": _check_dendric,
    "second-derivative": _check_second_derivative,
    "kernel": _check_kernel,
    "kirchhoff": _check_kirchhoff,
    "tijdeman": _check_tijdeman,
    "flow-matrix": _check_flow_matrix,
    "flow-matrix-example": _check_flow_matrix_example,
    "semi-connected": _check_semi_connected,
    "recurrence": _check_recurrence,
}


def _exact_freqs_for(spec: str):
    name = spec.partition(":")[2] if spec.startswith("builtin:") else spec
    try:
        entry = lookup(name)
    except UnknownWordError:
        return None
    return entry.exact_freqs() if entry.exact_freqs else None


def run_campaign(cfg: CampaignConfig, timing: bool = True) -> tuple[int, dict]:
    """Run the checks in order; exit code 0 iff every check without a caveat passed.

    Raises :class:`ConfigError` or :class:`UnknownWordError` for usage problems.
    """
    cfg.validate()
    w = resolve_word(cfg.word)
    horizon = cap_horizon(cfg.horizon, w)
    ctx = _Context(cfg, w, horizon, _exact_freqs_for(cfg.word))
    results = []
    for name in cfg.checks:
        t0 = time.perf_counter()
        try:
            r = CHECKS[name](ctx)
        except (ValueError, RuntimeError) as exc:
            r = CheckResult(name, False, None, {"error": str(exc)})
        r.seconds = time.perf_counter() - t0
        results.append(r)
    code = 0 if all(r.passed for r in results if r.caveat is None) else 1
    report = {
        "config": cfg.to_json(),
        "word": w.description,
        "horizon": horizon,
        "checks": [r.to_json(timing) for r in results],
        "passed": code == 0,
    }
    if cfg.output:
        Path(cfg.output).write_text(io.dumps(report))
    return code, report
