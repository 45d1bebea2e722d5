"""Flow matrices of Rauzy graphs, factor frequencies and complexity bounds.

The flow matrix at length ``n`` has rows ``L_n(w)`` and columns
``L_{n+1}(w)``, both in lexicographic order.  Column ``v`` carries ``+1`` on
the row of its length-``n`` prefix and ``-1`` on the row of its suffix, so a
vector of factor frequencies is a flow satisfying Kirchhoff's junction rule.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import networkx as nx

from .graphs import ExtensionGraph, RauzyGraph
from .linalg import RationalMatrix, rank, solve
from .quadratic import QuadraticReal, UnsupportedFieldError, qr
from .sturmian import DirectiveSpec, exact_frequencies, standard_sturmian
from .words import FiniteWord, WordStream, complexity, factor_sets, is_saturated

__all__ = [
    "extension_matrices",
    "flow_matrix",
    "graph_flow_matrix",
    "FrequencyVector",
    "frequency_vector",
    "exact_frequency_vector",
    "kirchhoff_residual",
    "rational_span_dimension",
    "AlphabetMismatchError",
    "TijdemanAudit",
    "tijdeman_audit",
    "pseudo_frequencies",
    "SplitVertex",
    "NotADisconnectionError",
    "split_partition",
    "vertex_split_flow_matrix",
]


def _tables(w: WordStream, n: int, horizon: int):
    if horizon < n + 1:
        raise ValueError("invalid arguments: need horizon >= n + 1")
    fs = factor_sets(w, [n, n + 1], horizon)
    a = w.alphabet
    rows = tuple(sorted(FiniteWord(tuple(u), a) for u in fs[n]))
    cols = tuple(sorted(FiniteWord(tuple(v), a) for v in fs[n + 1]))
    caveat = None if is_saturated(w, n + 1, horizon) else "unsaturated"
    return rows, cols, caveat


def extension_matrices(w: WordStream, n: int, horizon: int) -> tuple[RationalMatrix, RationalMatrix]:
    """``R[u, v] = 1`` iff ``v`` starts with ``u``; ``L[u, v] = 1`` iff ``v`` ends with ``u``."""
    rows, cols, caveat = _tables(w, n, horizon)
    R = tuple(tuple(int(v[:-1] == u) for v in cols) for u in rows)
    L = tuple(tuple(int(v[1:] == u) for v in cols) for u in rows)
    return RationalMatrix(R, rows, cols, caveat), RationalMatrix(L, rows, cols, caveat)


def flow_matrix(w: WordStream, n: int, horizon: int) -> RationalMatrix:
    R, L = extension_matrices(w, n, horizon)
    return R - L


def graph_flow_matrix(g: RauzyGraph) -> RationalMatrix:
    """Flow matrix read off a Rauzy graph; a self-loop gives a zero column."""
    rows = tuple(sorted(g.vertices))
    cols = tuple(sorted(g.edges))
    pos = {u: i for i, u in enumerate(rows)}
    m = [[0] * len(cols) for _ in rows]
    for j, v in enumerate(cols):
        m[pos[v[:-1]]][j] += 1
        m[pos[v[1:]]][j] -= 1
    return RationalMatrix(m, rows, cols, None if g.saturated else "unsaturated")


@dataclass(frozen=True)
class FrequencyVector:
    """Factor frequencies: empirical (``prefix_len`` set) or exact (``prefix_len`` is None)."""

    values: dict[FiniteWord, Fraction | QuadraticReal]
    prefix_len: int | None = None

    @property
    def exact(self) -> bool:
        return self.prefix_len is None

    @property
    def index(self) -> tuple[FiniteWord, ...]:
        return tuple(sorted(self.values))

    def __getitem__(self, u: FiniteWord):
        return self.values[u]

    def as_list(self, index: Sequence[FiniteWord]) -> list:
        return [self.values.get(u, Fraction(0)) for u in index]

    def to_json(self) -> dict:
        return {
            "prefix_len": self.prefix_len,
            "values": {u.label(): str(self.values[u]) for u in self.index},
        }


def frequency_vector(w: WordStream, n: int, prefixes: Sequence[int]) -> list[FrequencyVector]:
    """Empirical frequencies ``|pref_N(w)|_v / N`` of the length-``n`` factors, one vector per ``N``."""
    if any(b <= a for a, b in zip(prefixes, prefixes[1:])):
        raise ValueError("invalid arguments: prefixes must be increasing")
    out = []
    for N in prefixes:
        if N < max(n, 1):
            raise ValueError("invalid arguments: prefix shorter than the factors")
        data = w.prefix_bytes(N)
        counts: dict[bytes, int] = {}
        for i in range(N - n + 1):
            k = data[i:i + n]
            counts[k] = counts.get(k, 0) + 1
        out.append(FrequencyVector(
            {FiniteWord(tuple(k), w.alphabet): Fraction(c, N) for k, c in counts.items()}, N))
    return out


def exact_frequency_vector(spec: DirectiveSpec, n: int, horizon: int = 1 << 14) -> FrequencyVector:
    """Exact frequencies of the length-``n`` factors of a standard Sturmian word.

    Starts from the exact letter frequencies and climbs one length at a time
    with the two conservation laws ``f_u = sum_b f_ub = sum_a f_au``.  For a
    Sturmian word these determine every frequency: only one factor is right
    special and one of its two extensions ends in a non-left-special factor.
    """
    f1, f2 = exact_frequencies(spec)
    w = standard_sturmian(spec)
    a = w.alphabet
    freqs: dict[bytes, QuadraticReal] = {b"": QuadraticReal(1)}
    if n >= 1:
        freqs = {b"\x01": f1, b"\x02": f2}
    fs = factor_sets(w, range(2, n + 1), horizon) if n >= 2 else {}
    for m in range(2, n + 1):
        cols = sorted(fs[m])
        pos = {v: j for j, v in enumerate(cols)}
        eqs, rhs = [], []
        for u, fu in freqs.items():
            row_r = [0] * len(cols)
            row_l = [0] * len(cols)
            for v in cols:
                if v[:-1] == u:
                    row_r[pos[v]] = 1
                if v[1:] == u:
                    row_l[pos[v]] = 1
            eqs += [row_r, row_l]
            rhs += [fu, fu]
        sol = solve(eqs, rhs)
        freqs = dict(zip(cols, sol))
    return FrequencyVector({FiniteWord(tuple(k), a): qr(v) for k, v in freqs.items()})


def kirchhoff_residual(M: RationalMatrix, f: FrequencyVector):
    """``max_u |(M f)_u|``: exactly 0 for true frequencies, ``O(n / N)`` for empirical ones."""
    if set(f.values) - set(M.col_index):
        raise ValueError("invalid arguments: frequency vector has factors outside the matrix columns")
    res = M.matvec(f.as_list(M.col_index))
    return max((abs(x) for x in res), default=Fraction(0))


def rational_span_dimension(values: Sequence) -> int:
    """Dimension of the Q-span of numbers of one field ``Q(sqrt D)``.

    Writing each value as ``a + b sqrt(D)`` turns the question into the rank
    of the ``k x 2`` matrix of coordinates.
    """
    vals = [qr(v) for v in values]
    fields = {v.D for v in vals if v.D}
    if len(fields) > 1:
        raise UnsupportedFieldError(f"values live in different fields: {sorted(fields)}")
    return rank([[v.a, v.b] for v in vals])


class AlphabetMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class TijdemanAudit:
    d: int
    n_max: int
    profile: tuple[int, ...]
    Delta: int | None
    Delta_source: str | None
    bound_checks: tuple[tuple[int, int, int, bool], ...]
    Delta_upper_bound: int
    saturated: bool
    claimed_delta: int | None = None

    @property
    def passed(self) -> bool:
        return all(ok for *_, ok in self.bound_checks)

    @property
    def tight(self) -> tuple[int, ...]:
        """Lengths where ``p(n)`` equals the bound."""
        return tuple(n for n, p, b, _ in self.bound_checks if p == b)

    @property
    def caveat(self) -> str | None:
        return None if self.saturated else "unsaturated"

    def conclusion(self) -> str:
        if self.Delta is None:
            return f"Delta <= {self.Delta_upper_bound}"
        if self.passed:
            return f"bound with Delta={self.Delta} holds for n <= {self.n_max}"
        first = next(n for n, *_, ok in self.bound_checks if not ok)
        return (f"bound with Delta={self.Delta} fails at n={first}; "
                f"hence Delta <= {self.Delta_upper_bound}")

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n_max": self.n_max,
            "profile": list(self.profile),
            "Delta": self.Delta,
            "Delta_source": self.Delta_source,
            "claimed_delta": self.claimed_delta,
            "Delta_upper_bound": self.Delta_upper_bound,
            "bound_checks": [{"n": n, "p": p, "bound": b, "ok": ok} for n, p, b, ok in self.bound_checks],
            "tight": list(self.tight),
            "passed": self.passed,
            "caveat": self.caveat,
            "conclusion": self.conclusion(),
        }


def tijdeman_audit(w: WordStream, d: int, n_max: int, horizon: int,
                   exact_freqs: Sequence | None = None,
                   claimed: tuple[int | None, int | None] | None = None) -> TijdemanAudit:
    """Check ``p(n) >= (Delta - 1)(n - 1) + d`` for ``1 <= n <= n_max``.

    ``Delta`` is computed exactly from ``exact_freqs`` when given, otherwise
    taken from ``claimed = (delta, Delta)``.  Independently of any claim, the
    profile forces ``Delta <= min_m (p(m+1) - p(m) + 1)``.
    """
    profile = complexity(w, n_max, horizon)
    if n_max >= 1 and profile[1] != d:
        raise AlphabetMismatchError(f"p(1) = {profile[1]} but d = {d}")
    saturated = is_saturated(w, n_max, horizon)
    claimed_delta = None
    if exact_freqs is not None:
        Delta, source = rational_span_dimension(exact_freqs), "exact"
    elif claimed is not None:
        claimed_delta, Delta = claimed
        source = "claimed" if Delta is not None else None
    else:
        Delta, source = None, None
    checks = []
    if Delta is not None:
        for n in range(1, n_max + 1):
            bound = (Delta - 1) * (n - 1) + d
            checks.append((n, profile[n], bound, profile[n] >= bound))
    upper = min([profile[m + 1] - profile[m] + 1 for m in range(n_max)] + [d])
    return TijdemanAudit(d, n_max, tuple(profile), Delta, source, tuple(checks), upper,
                         saturated, claimed_delta)


def pseudo_frequencies(w: WordStream, checkpoints: Sequence[int]) -> list[tuple[int, tuple[Fraction, ...]]]:
    """Letter-frequency vectors of ``prefix(N)`` for each checkpoint ``N``."""
    out = []
    for N in checkpoints:
        data = w.prefix_bytes(N)
        out.append((N, tuple(Fraction(data.count(a), N) for a in range(1, w.alphabet.d + 1))))
    return out


# -- vertex splitting ---------------------------------------------------------

@dataclass(frozen=True, order=True)
class SplitVertex:
    """Copy ``1`` or ``2`` of a split vertex ``word``."""

    word: FiniteWord
    copy: int

    def label(self) -> str:
        return f"{self.word.label()}_{self.copy}"

    def __str__(self):
        return self.label()


class NotADisconnectionError(ValueError):
    pass


def split_partition(ext: ExtensionGraph) -> tuple[frozenset, frozenset, frozenset, frozenset]:
    """``(L1, R1, L2, R2)`` from the connected components of a disconnected extension graph."""
    comps = list(nx.connected_components(ext.to_networkx()))
    if len(comps) < 2:
        raise NotADisconnectionError(f"extension graph of {ext.u.label()} is connected")
    first = comps[0]
    L1 = frozenset(a for s, a in first if s == "L")
    R1 = frozenset(b for s, b in first if s == "R")
    return L1, R1, ext.left - L1, ext.right - R1


def vertex_split_flow_matrix(g: RauzyGraph, ext: ExtensionGraph,
                             partition: tuple | None = None) -> RationalMatrix:
    """Flow matrix of ``g`` after splitting the vertex ``u = ext.u`` in two.

    An edge ``a u`` now arrives at ``u_1`` when ``a`` is in ``L1`` (else
    ``u_2``); an edge ``u b`` leaves ``u_1`` when ``b`` is in ``R1``.  The
    partition must not separate any ``(a, b)`` with ``aub`` a factor.
    """
    u = ext.u
    if len(u) != g.n or u not in g.vertices:
        raise ValueError(f"invalid arguments: {u.label()} is not a vertex of the Rauzy graph")
    if partition is None:
        partition = split_partition(ext)
    L1, R1, L2, R2 = (frozenset(p) for p in partition)
    if L1 & L2 or R1 & R2 or (L1 | L2) != ext.left or (R1 | R2) != ext.right:
        raise NotADisconnectionError("parts must partition the left and right extensions")
    if sum(bool(p) for p in (L1, R1, L2, R2)) < 3:
        raise NotADisconnectionError("at least three of the four parts must be non-empty")
    for a, b in ext.edges:
        if (a in L1) != (b in R1):
            raise NotADisconnectionError(f"factor with extension ({a}, {b}) crosses the partition")

    u1, u2 = SplitVertex(u, 1), SplitVertex(u, 2)
    rows = []
    for v in sorted(g.vertices):
        rows += [u1, u2] if v == u else [v]
    cols = tuple(sorted(g.edges))
    pos = {r: i for i, r in enumerate(rows)}

    def tail(e):
        s = e[:-1]
        return (u1 if e[-1] in R1 else u2) if s == u else s

    def head(e):
        t = e[1:]
        return (u1 if e[0] in L1 else u2) if t == u else t

    m = [[0] * len(cols) for _ in rows]
    for j, e in enumerate(cols):
        m[pos[tail(e)]][j] += 1
        m[pos[head(e)]][j] -= 1
    return RationalMatrix(m, tuple(rows), cols, None if g.saturated else "unsaturated")
