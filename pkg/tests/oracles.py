"""Brute-force reference implementations used as test oracles.

They work on plain strings and sets, are slow and obviously correct, and share
no code with the library.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt


def factors(s: str, n: int) -> set[str]:
    return {s[i:i + n] for i in range(len(s) - n + 1)}


def complexity(s: str, n_max: int) -> list[int]:
    return [len(factors(s, n)) for n in range(n_max + 1)]


def right_special(s: str, n: int) -> set[str]:
    fs = factors(s, n + 1)
    return {u for u in factors(s, n) if sum(u + c in fs for c in set(s)) >= 2}


def left_special(s: str, n: int) -> set[str]:
    fs = factors(s, n + 1)
    return {u for u in factors(s, n) if sum(c + u in fs for c in set(s)) >= 2}


def fibonacci(n: int) -> str:
    a, b = "1", "12"
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def cf_of_fraction(x: Fraction) -> list[int]:
    out = []
    while True:
        q = x.numerator // x.denominator
        out.append(q)
        x -= q
        if x == 0:
            return out
        x = 1 / x


def cf_of_sqrt(n: int, terms: int) -> list[int]:
    """Partial quotients of sqrt(n) by the classical integer recurrence."""
    a0 = isqrt(n)
    m, d, a = 0, 1, a0
    out = [a0]
    while len(out) < terms:
        m = d * a - m
        d = (n - m * m) // d
        a = (a0 + m) // d
        out.append(a)
    return out


def reachable(adj: dict, start) -> set:
    seen, todo = {start}, [start]
    while todo:
        v = todo.pop()
        for w in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def semi_connected(vertices, edges) -> bool:
    """Every ordered pair is joined by a path in at least one direction."""
    adj: dict = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
    reach = {v: reachable(adj, v) for v in vertices}
    return all(v in reach[u] or u in reach[v] for u in vertices for v in vertices)


def nullity(rows: list[list[Fraction]], ncols: int) -> int:
    """Number of columns minus rank, by plain Gaussian elimination over Fraction."""
    m = [list(map(Fraction, r)) for r in rows]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return ncols - r
