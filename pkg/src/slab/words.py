"""Finite words, lazy infinite words, factor tables and complexity.

Letters are the integers ``1..d`` internally.  An :class:`Alphabet` keeps the
printable symbols so that words such as ``2(010)^w`` from the literature can
be written with their original digits while every algorithm sees ``1..d``.
"""
from __future__ import annotations

import itertools
import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Alphabet",
    "FiniteWord",
    "WordStream",
    "FactorTable",
    "MorseHedlundVerdict",
    "prefix",
    "factor_table",
    "factor_sets",
    "complexity",
    "is_saturated",
    "stabilize_horizon",
    "special_factors",
    "morse_hedlund_detect",
    "letter_counts",
    "recurrent_up_to",
    "default_schedule",
]


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of printable letter symbols; letter ``k`` is ``symbols[k-1]``."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("an alphabet needs at least one letter")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"repeated symbols in alphabet {self.symbols!r}")
        if any(not s or any(c.isspace() for c in s) for s in self.symbols):
            raise ValueError("symbols must be non-empty and contain no whitespace")

    @classmethod
    def standard(cls, d: int) -> "Alphabet":
        if d < 1:
            raise ValueError("alphabet size must be >= 1")
        return cls(tuple(str(k) for k in range(1, d + 1)))

    @classmethod
    def from_text(cls, text: str) -> "Alphabet":
        """``"012"`` or ``"1 2 3 ... 12"`` (whitespace separated when needed)."""
        parts = text.split()
        if len(parts) == 1:
            parts = list(parts[0])
        return cls(tuple(parts))

    @property
    def d(self) -> int:
        return len(self.symbols)

    @property
    def compact(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)

    def encode(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol) + 1
        except ValueError:
            raise ValueError(f"symbol {symbol!r} not in alphabet {self}") from None

    def decode(self, letter: int) -> str:
        if not 1 <= letter <= self.d:
            raise ValueError(f"letter {letter} outside 1..{self.d}")
        return self.symbols[letter - 1]

    def format(self, letters: Iterable[int]) -> str:
        sep = "" if self.compact else " "
        return sep.join(self.decode(a) for a in letters)

    def parse(self, text: str) -> tuple[int, ...]:
        tokens = list(text.strip()) if self.compact else text.split()
        tokens = [t for t in tokens if not t.isspace()]
        return tuple(self.encode(t) for t in tokens)

    def __str__(self):
        return ("" if self.compact else " ").join(self.symbols)


@dataclass(frozen=True, order=True)
class FiniteWord:
    """A finite word; ordering is lexicographic on the letter tuple."""

    letters: tuple[int, ...]
    alphabet: Alphabet = field(compare=False, default=None)

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        object.__setattr__(self, "letters", letters)
        if self.alphabet is None:
            object.__setattr__(self, "alphabet", Alphabet.standard(max(letters, default=1)))
        d = self.alphabet.d
        for a in letters:
            if not 1 <= a <= d:
                raise ValueError(f"letter {a} outside alphabet 1..{d}")

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet | None = None) -> "FiniteWord":
        if alphabet is None:
            alphabet = Alphabet.standard(9)
        return cls(alphabet.parse(text), alphabet)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return FiniteWord(self.letters[item], self.alphabet)
        return self.letters[item]

    def __add__(self, other: "FiniteWord") -> "FiniteWord":
        return FiniteWord(self.letters + tuple(other), self.alphabet)

    def __eq__(self, other):
        if isinstance(other, FiniteWord):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self):
        return hash(self.letters)

    def __str__(self):
        return self.alphabet.format(self.letters)

    def __repr__(self):
        return f"FiniteWord({str(self) or 'ε'!r})"

    def reversed(self) -> "FiniteWord":
        return FiniteWord(self.letters[::-1], self.alphabet)

    def startswith(self, u: "FiniteWord") -> bool:
        return self.letters[: len(u)] == u.letters

    def endswith(self, u: "FiniteWord") -> bool:
        return len(u) == 0 or self.letters[-len(u):] == u.letters

    def label(self) -> str:
        """Printable form with ``ε`` for the empty word."""
        return str(self) or "ε"


class WordStream:
    """Deterministic lazily-evaluated infinite (or finite, for file data) word.

    ``source`` is a zero-argument callable returning a fresh iterator over the
    letters.  Letters already produced are cached, so ``prefix(n)`` is always
    a prefix of ``prefix(m)`` for ``n <= m``.  ``length`` is ``None`` for
    infinite words.
    """

    def __init__(
        self,
        source: Callable[[], Iterator[int]],
        alphabet: Alphabet,
        description: str = "",
        length: int | None = None,
    ):
        self._source = source
        self.alphabet = alphabet
        self.description = description
        self.length = length
        self._buffer = bytearray()
        self._iterator: Iterator[int] | None = None
        self._lock = threading.Lock()

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_function(cls, letter_at: Callable[[int], int], alphabet: Alphabet,
                      description: str = "") -> "WordStream":
        return cls(lambda: map(letter_at, itertools.count()), alphabet, description)

    @classmethod
    def periodic(cls, preperiod: Sequence[int], period: Sequence[int],
                 alphabet: Alphabet | None = None, description: str = "") -> "WordStream":
        """The eventually periodic word ``preperiod · period^ω``."""
        if not period:
            raise ValueError("period must be non-empty")
        pre, per = tuple(preperiod), tuple(period)
        if alphabet is None:
            alphabet = Alphabet.standard(max(pre + per))
        if not description:
            p = alphabet.format(pre)
            description = f"{p}({alphabet.format(per)})^w"
        return cls(lambda: itertools.chain(pre, itertools.cycle(per)), alphabet, description)

    @classmethod
    def from_word(cls, word: FiniteWord | Sequence[int], alphabet: Alphabet | None = None,
                  description: str = "finite") -> "WordStream":
        letters = tuple(word)
        if alphabet is None:
            alphabet = word.alphabet if isinstance(word, FiniteWord) else Alphabet.standard(max(letters))
        return cls(lambda: iter(letters), alphabet, description, length=len(letters))

    @classmethod
    def parse_periodic(cls, text: str, alphabet: Alphabet | None = None) -> "WordStream":
        """Parse ``"2(010)"``-style notation: preperiod then parenthesised period."""
        head, _, rest = text.partition("(")
        body = rest.split(")")[0]
        if alphabet is None:
            # smallest standard alphabet covering the digits that occur
            alphabet = Alphabet.standard(max(int(c) for c in head + body))
        return cls.periodic(alphabet.parse(head), alphabet.parse(body), alphabet)

    # -- access -------------------------------------------------------------
    def _fill(self, n: int) -> None:
        if len(self._buffer) >= n:
            return
        with self._lock:
            if self._iterator is None:
                self._iterator = iter(self._source())
            need = n - len(self._buffer)
            chunk = bytes(itertools.islice(self._iterator, need))
            self._buffer.extend(chunk)
            if len(chunk) < need and self.length is None:
                raise RuntimeError(f"stream {self.description!r} ended after {len(self._buffer)} letters")

    def prefix_bytes(self, n: int) -> bytes:
        if n < 0:
            raise ValueError("prefix length must be >= 0")
        if self.length is not None and n > self.length:
            raise ValueError(f"requested {n} letters but word {self.description!r} has {self.length}")
        self._fill(n)
        return bytes(self._buffer[:n])

    def prefix(self, n: int) -> FiniteWord:
        return FiniteWord(tuple(self.prefix_bytes(n)), self.alphabet)

    def __getitem__(self, k: int) -> int:
        self._fill(k + 1)
        return self._buffer[k]

    def __iter__(self) -> Iterator[int]:
        # fixed-size read-ahead keeps chains of derived streams from over-producing
        k = 0
        while self.length is None or k < self.length:
            stop = k + 64 if self.length is None else min(k + 64, self.length)
            self._fill(stop)
            chunk = bytes(self._buffer[k:stop])
            yield from chunk
            k = stop

    def shift(self, m: int = 1) -> "WordStream":
        """``S^m(w)``: erase the first ``m`` letters."""
        length = None if self.length is None else max(0, self.length - m)
        return WordStream(lambda: itertools.islice(iter(self), m, None), self.alphabet,
                          f"S^{m}({self.description})", length)

    def __repr__(self):
        return f"WordStream({self.description!r}, d={self.alphabet.d})"


@dataclass
class FactorTable:
    word: WordStream
    n: int
    horizon: int
    factors: frozenset[FiniteWord]
    counts: dict[FiniteWord, int]
    saturated: bool | None = None

    def sorted_factors(self) -> list[FiniteWord]:
        return sorted(self.factors)

    def to_json(self) -> dict:
        fs = self.sorted_factors()
        return {
            "n": self.n,
            "horizon": self.horizon,
            "saturated": self.saturated,
            "factors": [str(u) for u in fs],
            "counts": {str(u): self.counts[u] for u in fs},
        }


def prefix(w: WordStream, n: int) -> FiniteWord:
    return w.prefix(n)


def _check_horizon(horizon: int, n: int) -> None:
    if n < 0 or horizon < n:
        raise ValueError(f"invalid arguments: need horizon >= n >= 0, got horizon={horizon}, n={n}")


def _raw_counts(data: bytes, n: int) -> Counter:
    return Counter(data[i:i + n] for i in range(len(data) - n + 1))


def factor_table(w: WordStream, n: int, horizon: int) -> FactorTable:
    """All length-``n`` blocks of ``prefix(horizon)`` with overlapping occurrence counts."""
    _check_horizon(horizon, n)
    counts = _raw_counts(w.prefix_bytes(horizon), n)
    words = {FiniteWord(tuple(k), w.alphabet): c for k, c in counts.items()}
    return FactorTable(w, n, horizon, frozenset(words), words)


def factor_sets(w: WordStream, lengths: Iterable[int], horizon: int) -> dict[int, set[bytes]]:
    """Raw factor sets (as ``bytes``) of ``prefix(horizon)`` for several lengths."""
    data = w.prefix_bytes(horizon)
    out = {}
    for n in lengths:
        _check_horizon(horizon, n)
        out[n] = {data[i:i + n] for i in range(len(data) - n + 1)}
    return out


def _complexity_profile(data: bytes, n_max: int) -> list[int]:
    # Refine factor classes one letter at a time: class(i, n+1) = (class(i, n), data[i+n]).
    arr = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    h = len(arr)
    profile = [1]
    ids = np.zeros(h, dtype=np.int64)
    for n in range(1, n_max + 1):
        valid = h - n + 1
        if valid <= 0:
            profile.append(0)
            continue
        keys = ids[:valid] * 256 + arr[n - 1:n - 1 + valid]
        uniq, ids = np.unique(keys, return_inverse=True)
        profile.append(len(uniq))
    return profile


def complexity(w: WordStream, n_max: int, horizon: int) -> list[int]:
    """``[p(0), ..., p(n_max)]`` counted on ``prefix(horizon)``.

    Each entry is a lower bound for the true complexity and is exact once the
    horizon saturates (see :func:`is_saturated`).
    """
    _check_horizon(horizon, n_max)
    return _complexity_profile(w.prefix_bytes(horizon), n_max)


def is_saturated(w: WordStream, n_max: int, horizon: int) -> bool:
    """True when ``prefix(horizon // 2)`` already shows every factor of length <= ``n_max``."""
    half = horizon // 2
    if half < n_max:
        return False
    data = w.prefix_bytes(horizon)
    return _complexity_profile(data[:half], n_max) == _complexity_profile(data, n_max)


def default_schedule(horizon: int) -> list[int]:
    return [max(1, horizon // 2), horizon]


def stabilize_horizon(w: WordStream, n: int, schedule: Sequence[int]) -> tuple[FactorTable, bool]:
    """Grow the horizon along ``schedule`` until the length-``n`` factor set stops changing."""
    if not schedule:
        raise ValueError("invalid arguments: empty schedule")
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("invalid arguments: schedule must be strictly increasing")
    tables = []
    for h in schedule:
        table = factor_table(w, n, h)
        if tables and tables[-1].factors == table.factors:
            prev = tables[-1]
            prev.saturated = True
            return prev, True
        tables.append(table)
    tables[-1].saturated = False
    return tables[-1], False


def special_factors(w: WordStream, n: int, horizon: int) -> tuple[set[FiniteWord], set[FiniteWord]]:
    """Right- and left-special factors of length ``n``."""
    if horizon < n + 2:
        raise ValueError("invalid arguments: need horizon >= n + 2")
    ext = factor_sets(w, [n + 1], horizon)[n + 1]
    right: dict[bytes, set[int]] = {}
    left: dict[bytes, set[int]] = {}
    for v in ext:
        right.setdefault(v[:-1], set()).add(v[-1])
        left.setdefault(v[1:], set()).add(v[0])
    a = w.alphabet
    rs = {FiniteWord(tuple(u), a) for u, s in right.items() if len(s) >= 2}
    ls = {FiniteWord(tuple(u), a) for u, s in left.items() if len(s) >= 2}
    return rs, ls


@dataclass(frozen=True)
class MorseHedlundVerdict:
    eventually_periodic: bool
    n0: int | None
    profile: tuple[int, ...]
    saturated: bool

    @property
    def caveat(self) -> str | None:
        return None if self.saturated else "unsaturated"

    def __str__(self):
        if self.eventually_periodic:
            s = f"eventually-periodic(n0={self.n0})"
        else:
            s = "no-evidence"
        return s if self.saturated else s + " [unsaturated]"


def morse_hedlund_detect(w: WordStream, n_max: int, horizon: int) -> MorseHedlundVerdict:
    """Look for a length ``n0 <= n_max`` with ``p(n0 + 1) == p(n0)``.

    A locally constant complexity forces eventual periodicity, so a positive
    verdict on saturated tables is a certificate.
    """
    if horizon < n_max + 1:
        raise ValueError("invalid arguments: need horizon >= n_max + 1")
    profile = complexity(w, n_max + 1, horizon)
    saturated = is_saturated(w, n_max + 1, horizon)
    for n0 in range(n_max + 1):
        if profile[n0 + 1] == profile[n0]:
            return MorseHedlundVerdict(True, n0, tuple(profile), saturated)
    return MorseHedlundVerdict(False, None, tuple(profile), saturated)


def letter_counts(u: FiniteWord | Sequence[int], alphabet: Alphabet | None = None) -> dict[int, int]:
    """Occurrences of every letter of the alphabet in ``u`` (zeros included)."""
    if alphabet is None:
        alphabet = u.alphabet if isinstance(u, FiniteWord) else Alphabet.standard(max(u, default=1))
    counts = Counter(u)
    return {a: counts.get(a, 0) for a in range(1, alphabet.d + 1)}


def recurrent_up_to(w: WordStream, n: int, horizon: int) -> bool:
    """Every factor of length ``n`` seen in ``prefix(horizon)`` occurs again later.

    Checks that the factors of the first half reappear in the second half;
    this certifies "recurrence up to n" only, never full recurrence.
    """
    data = w.prefix_bytes(horizon)
    half = horizon // 2
    first = {data[i:i + n] for i in range(half - n + 1)}
    second = {data[i:i + n] for i in range(half, horizon - n + 1)}
    return first <= second
