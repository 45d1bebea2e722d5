"""Rauzy graphs, extension graphs, dendricity and quasi-Sturmian words."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from .sturmian import Substitution, apply_substitution
from .words import Alphabet, FiniteWord, WordStream, factor_sets, is_saturated

__all__ = [
    "RauzyGraph",
    "ExtensionGraph",
    "DendricityReport",
    "NotAFactorError",
    "DegenerateGraphError",
    "rauzy_graph",
    "is_semi_connected",
    "is_strongly_connected",
    "extension_graph",
    "extension_graphs",
    "is_tree",
    "dendricity_check",
    "second_derivative_identity_check",
    "SecondDerivative",
    "quasi_sturmian_substitution",
    "quasi_sturmian_build",
]


class NotAFactorError(ValueError):
    pass


class DegenerateGraphError(ValueError):
    pass


@dataclass(frozen=True)
class RauzyGraph:
    n: int
    vertices: frozenset[FiniteWord]
    edges: frozenset[FiniteWord]
    saturated: bool = True

    def __post_init__(self):
        for e in self.edges:
            if e[:-1] not in self.vertices or e[1:] not in self.vertices:
                raise ValueError(f"edge {e} has an endpoint outside the vertex set")

    @staticmethod
    def source(e: FiniteWord) -> FiniteWord:
        return e[:-1]

    @staticmethod
    def target(e: FiniteWord) -> FiniteWord:
        return e[1:]

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(e[:-1], e[1:], label=e)
        # for n >= 1 an edge word is determined by its endpoints; at n = 0 every
        # letter is a loop on the empty word and the loops collapse into one
        assert self.n == 0 or g.number_of_edges() == len(self.edges)
        return g

    def to_dot(self) -> str:
        lines = [f"digraph rauzy_{self.n} {{"]
        for v in sorted(self.vertices):
            lines.append(f'  "{v.label()}";')
        for e in sorted(self.edges):
            lines.append(f'  "{e[:-1].label()}" -> "{e[1:].label()}" [label="{e}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def rauzy_graph(w: WordStream, n: int, horizon: int) -> RauzyGraph:
    if horizon < n + 1:
        raise ValueError("invalid arguments: need horizon >= n + 1")
    fs = factor_sets(w, [n, n + 1], horizon)
    a = w.alphabet
    return RauzyGraph(
        n,
        frozenset(FiniteWord(tuple(u), a) for u in fs[n]),
        frozenset(FiniteWord(tuple(v), a) for v in fs[n + 1]),
        is_saturated(w, n + 1, horizon),
    )


def is_strongly_connected(g: RauzyGraph) -> bool:
    return nx.is_strongly_connected(g.to_networkx())


def is_semi_connected(g: RauzyGraph) -> bool:
    """For every pair of vertices a path exists in at least one direction.

    Equivalent to the condensation (DAG of strongly connected components)
    having a Hamiltonian path, i.e. its topological order being total.
    """
    c = nx.condensation(g.to_networkx())
    order = list(nx.topological_sort(c))
    return all(c.has_edge(s, t) for s, t in zip(order, order[1:]))


@dataclass(frozen=True)
class ExtensionGraph:
    u: FiniteWord
    left: frozenset[int]
    right: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(("L", a) for a in self.left)
        g.add_nodes_from(("R", b) for b in self.right)
        g.add_edges_from((("L", a), ("R", b)) for a, b in self.edges)
        return g

    @property
    def bilateral_multiplicity(self) -> int:
        """``|B(u)| - |L(u)| - |R(u)| + 1``."""
        return len(self.edges) - len(self.left) - len(self.right) + 1

    def to_dot(self) -> str:
        sym = self.u.alphabet.decode
        lines = [f'graph "ext_{self.u.label()}" {{', "  rankdir=LR;"]
        for a in sorted(self.left):
            lines.append(f'  "L{sym(a)}" [label="{sym(a)}"];')
        for b in sorted(self.right):
            lines.append(f'  "R{sym(b)}" [label="{sym(b)}"];')
        for a, b in sorted(self.edges):
            lines.append(f'  "L{sym(a)}" -- "R{sym(b)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        sym = self.u.alphabet.decode
        return {
            "u": self.u.label(),
            "left": [sym(a) for a in sorted(self.left)],
            "right": [sym(b) for b in sorted(self.right)],
            "edges": [[sym(a), sym(b)] for a, b in sorted(self.edges)],
        }


def _extension_from_sets(u: bytes, ext1: set[bytes], ext2: set[bytes], alphabet: Alphabet) -> ExtensionGraph:
    k = len(u)
    left = frozenset(v[0] for v in ext1 if v[1:] == u)
    right = frozenset(v[-1] for v in ext1 if v[:-1] == u)
    edges = frozenset((v[0], v[-1]) for v in ext2 if v[1:k + 1] == u)
    return ExtensionGraph(FiniteWord(tuple(u), alphabet), left, right, edges)


def extension_graph(w: WordStream, u: FiniteWord, horizon: int) -> ExtensionGraph:
    k = len(u)
    fs = factor_sets(w, [k, k + 1, k + 2], horizon)
    key = bytes(u.letters)
    if key not in fs[k]:
        raise NotAFactorError(f"{u.label()} is not a factor of {w.description} within {horizon} letters")
    return _extension_from_sets(key, fs[k + 1], fs[k + 2], w.alphabet)


def extension_graphs(w: WordStream, n: int, horizon: int) -> dict[FiniteWord, ExtensionGraph]:
    """Extension graphs of every length-``n`` factor seen in ``prefix(horizon)``."""
    fs = factor_sets(w, [n, n + 1, n + 2], horizon)
    # group the longer factors by their central part once instead of rescanning per u
    by_mid1: dict[bytes, set[bytes]] = {}
    for v in fs[n + 1]:
        by_mid1.setdefault(v[1:], set()).add(v)
        by_mid1.setdefault(v[:-1], set()).add(v)
    by_mid2: dict[bytes, set[bytes]] = {}
    for v in fs[n + 2]:
        by_mid2.setdefault(v[1:-1], set()).add(v)
    return {
        FiniteWord(tuple(u), w.alphabet): _extension_from_sets(
            u, by_mid1.get(u, set()), by_mid2.get(u, set()), w.alphabet)
        for u in fs[n]
    }


def is_tree(e: ExtensionGraph) -> str:
    """``"tree"``, ``"disconnected"`` or ``"cyclic"``.

    Disconnection is reported first: a disconnected graph may also contain a cycle.
    """
    nv = len(e.left) + len(e.right)
    if nv == 0:
        raise DegenerateGraphError(f"extension graph of {e.u.label()} has no vertices")
    if not nx.is_connected(e.to_networkx()):
        return "disconnected"
    return "tree" if len(e.edges) == nv - 1 else "cyclic"


@dataclass(frozen=True)
class DendricityReport:
    max_n: int
    dendric: bool
    witness: ExtensionGraph | None = None
    failure: str | None = None
    saturated: bool = True

    @property
    def verdict(self) -> str:
        if self.dendric:
            return f"dendric-up-to-{self.max_n}"
        return f"fails-at({self.witness.u.label()})"

    @property
    def caveat(self) -> str | None:
        return None if self.saturated else "unsaturated"

    def to_json(self) -> dict:
        out = {"max_n": self.max_n, "verdict": self.verdict, "caveat": self.caveat}
        if self.witness is not None:
            out["witness"] = {"kind": self.failure, "graph": self.witness.to_json()}
        return out


def dendricity_check(w: WordStream, max_n: int, horizon: int) -> DendricityReport:
    """Check that every factor of length ``0..max_n`` (``ε`` included) has a tree extension graph."""
    saturated = is_saturated(w, max_n + 2, horizon)
    for n in range(max_n + 1):
        graphs = extension_graphs(w, n, horizon)
        for u in sorted(graphs):
            kind = is_tree(graphs[u])
            if kind != "tree":
                return DendricityReport(max_n, False, graphs[u], kind, saturated)
    return DendricityReport(max_n, True, saturated=saturated)


@dataclass(frozen=True)
class SecondDerivative:
    n: int
    lhs: int
    rhs: int
    saturated: bool

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def __bool__(self):
        return self.holds


def second_derivative_identity_check(w: WordStream, n: int, horizon: int) -> SecondDerivative:
    """Compare ``p(n+2) - 2p(n+1) + p(n)`` with the sum of bilateral multiplicities over ``L_n``.

    Each length-``n+2`` factor is counted once in the ``|B(u)|`` terms and each
    length-``n+1`` factor once on each side, so the identity is exact for any
    factorial set of words, prefix languages included.  Saturation only matters
    when reading it as a statement about the infinite word.
    """
    fs = factor_sets(w, [n, n + 1, n + 2], horizon)
    graphs = extension_graphs(w, n, horizon)
    p0, p1, p2 = len(fs[n]), len(fs[n + 1]), len(fs[n + 2])
    lhs = (p2 - p1) - (p1 - p0)
    rhs = sum(e.bilateral_multiplicity for e in graphs.values())
    return SecondDerivative(n, lhs, rhs, is_saturated(w, n + 2, horizon))


def quasi_sturmian_substitution(partition: tuple[Sequence[int], Sequence[int], Sequence[int]]) -> Substitution:
    """``a -> c_1..c_NC a_1..a_NA`` and ``b -> c_1..c_NC b_1..b_NB``."""
    A, B, C = (tuple(p) for p in partition)
    letters = A + B + C
    if not C:
        raise ValueError("invalid arguments: C must be non-empty")
    if not (A or B):
        raise ValueError("invalid arguments: A and B cannot both be empty")
    if sorted(letters) != list(range(1, len(letters) + 1)):
        raise ValueError("invalid arguments: A, B, C must partition the letters 1..d")
    return Substitution({1: C + A, 2: C + B})


def quasi_sturmian_build(w0: WordStream, m: int,
                         partition: tuple[Sequence[int], Sequence[int], Sequence[int]]) -> WordStream:
    """``S^m sigma(w0)`` for a binary Sturmian ``w0`` (letters ``a = 1``, ``b = 2``)."""
    if w0.alphabet.d != 2:
        raise ValueError("invalid arguments: w0 must be binary")
    if m < 0:
        raise ValueError("invalid arguments: m must be >= 0")
    s = quasi_sturmian_substitution(partition)
    d = sum(len(p) for p in partition)
    w = apply_substitution(s, w0, Alphabet.standard(d))
    if m:
        w = w.shift(m)
    w.description = f"quasi-sturmian[{s.images[1]}|{s.images[2]}, m={m}]({w0.description})"
    return w
