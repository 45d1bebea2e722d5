"""Standard Sturmian words, the renormalization operator and run-lengths."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Sequence

from .quadratic import QuadraticReal, periodic_cf_value
from .words import Alphabet, FiniteWord, WordStream

__all__ = [
    "Substitution",
    "SIGMA1",
    "SIGMA2",
    "DirectiveSpec",
    "UndeterminedTypeError",
    "NotSturmianError",
    "RunLengths",
    "apply_substitution",
    "standard_sturmian",
    "fibonacci",
    "fibonacci_by_concatenation",
    "word_type",
    "renormalize",
    "run_length_extract",
    "exact_frequencies",
]

BINARY = Alphabet.standard(2)


class UndeterminedTypeError(ValueError):
    """Neither 11 nor 22 was seen within the scanned horizon."""


class NotSturmianError(ValueError):
    """Both 11 and 22 occur, so the word cannot be Sturmian."""


@dataclass(frozen=True)
class Substitution:
    """A non-erasing morphism given by the image of each letter."""

    images: Mapping[int, tuple[int, ...]]

    def __post_init__(self):
        imgs = {int(a): tuple(v) for a, v in self.images.items()}
        for a, v in imgs.items():
            if not v:
                raise ValueError(f"image of letter {a} is empty")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def parse(cls, text: str) -> "Substitution":
        """``"1->31, 2->32"``."""
        imgs = {}
        for part in text.split(","):
            a, _, v = part.strip().partition("->")
            imgs[int(a)] = tuple(int(c) for c in v.strip())
        return cls(imgs)

    def image(self, a: int) -> tuple[int, ...]:
        try:
            return self.images[a]
        except KeyError:
            raise ValueError(f"invalid arguments: letter {a} outside the domain of the substitution") from None

    def __call__(self, u):
        return apply_substitution(self, u)

    def __hash__(self):
        return hash(tuple(sorted(self.images.items())))


SIGMA1 = Substitution({1: (1,), 2: (1, 2)})
SIGMA2 = Substitution({1: (2, 1), 2: (2,)})


def apply_substitution(s: Substitution, u, alphabet: Alphabet | None = None):
    """Image of a finite word (eagerly) or of a stream (lazily)."""
    if isinstance(u, WordStream):
        if alphabet is None:
            alphabet = Alphabet.standard(max(max(v) for v in s.images.values()))

        def letters():
            for a in u:
                yield from s.image(a)

        return WordStream(letters, alphabet, f"sigma({u.description})")
    letters = tuple(itertools.chain.from_iterable(s.image(a) for a in u))
    if alphabet is None:
        alphabet = Alphabet.standard(max(max(v) for v in s.images.values()))
    return FiniteWord(letters, alphabet)


@dataclass(frozen=True)
class DirectiveSpec:
    """Run-lengths ``(b_0, b_1, ...)`` of a directive sequence over {sigma1, sigma2}.

    The sequence is ``prefix`` followed by ``period`` repeated forever; when
    ``period`` is empty an optional ``rule(k)`` supplies the remaining terms.
    A spec with neither is finite.
    """

    prefix: tuple[int, ...]
    period: tuple[int, ...] = ()
    rule: Callable[[int], int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(b) for b in self.prefix))
        object.__setattr__(self, "period", tuple(int(b) for b in self.period))
        terms = list(self.prefix) + list(self.period)
        if not terms and self.rule is None:
            raise ValueError("invalid arguments: empty directive spec")
        if terms and terms[0] < 0:
            raise ValueError("invalid arguments: b_0 must be >= 0")
        if any(b < 1 for b in terms[1:]) or (not self.prefix and self.period and self.period[0] < 1):
            raise ValueError("invalid arguments: b_k must be >= 1 for k >= 1")

    @classmethod
    def constant(cls, b: int = 1) -> "DirectiveSpec":
        return cls((), (b,))

    @classmethod
    def parse(cls, text: str) -> "DirectiveSpec":
        """``"2,3,1"``, ``"1,2,..."`` or ``"pre:[2] period:[1,3]"``."""
        text = text.strip()
        m = re.match(r"^pre:\[([^\]]*)\]\s*period:\[([^\]]*)\]$", text)
        if m:
            pre = tuple(int(x) for x in m.group(1).split(",") if x.strip())
            per = tuple(int(x) for x in m.group(2).split(",") if x.strip())
            return cls(pre, per)
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if parts and parts[-1] == "...":
            # "1,1,..." repeats the last listed value
            nums = tuple(int(p) for p in parts[:-1])
            return cls(nums[:-1], nums[-1:])
        return cls(tuple(int(p) for p in parts))

    @property
    def infinite(self) -> bool:
        return bool(self.period) or self.rule is not None

    @property
    def eventually_periodic(self) -> bool:
        return bool(self.period)

    def __getitem__(self, k: int) -> int:
        if k < len(self.prefix):
            return self.prefix[k]
        j = k - len(self.prefix)
        if self.period:
            return self.period[j % len(self.period)]
        if self.rule is not None:
            b = int(self.rule(k))
            if b < 1:
                raise ValueError(f"invalid arguments: rule gave b_{k} = {b}")
            return b
        raise IndexError(f"run-length b_{k} not available in a finite spec")

    def terms(self, k: int) -> list[int]:
        return [self[i] for i in range(k)]

    def substitutions(self) -> Iterator[int]:
        """Indices 1/2 of the directive sequence ``sigma1^b0 sigma2^b1 ...``."""
        k = 0
        while True:
            try:
                b = self[k]
            except IndexError:
                return
            yield from itertools.repeat(1 if k % 2 == 0 else 2, b)
            k += 1

    def __str__(self):
        if self.period:
            return f"pre:[{','.join(map(str, self.prefix))}] period:[{','.join(map(str, self.period))}]"
        tail = ",..." if self.rule is not None else ""
        return ",".join(map(str, self.prefix)) + tail


def _standard_prefixes(spec: DirectiveSpec) -> Iterator[bytes]:
    # u_{n+1}, v_{n+1} from u_n, v_n; p_{n+1} (u_n or v_n) is a common prefix of the limit.
    u, v = b"\x01", b"\x02"
    for s in spec.substitutions():
        if s == 1:
            p = u
            v = u + v
        else:
            p = v
            u = v + u
        yield p


def standard_sturmian(spec: DirectiveSpec, prefix_len: int | None = None) -> WordStream:
    """Standard Sturmian word of a directive spec, as a lazy stream.

    ``prefix_len`` optionally pre-materialises that many letters (and so
    surfaces a too-short finite spec immediately).
    """

    def letters():
        emitted = 0
        for p in _standard_prefixes(spec):
            if len(p) > emitted:
                yield from p[emitted:]
                emitted = len(p)

    w = WordStream(letters, BINARY, f"standard-sturmian[{spec}]")
    if prefix_len is not None:
        if prefix_len < 1:
            raise ValueError("invalid arguments: prefix_len must be >= 1")
        w.prefix_bytes(prefix_len)
    return w


def fibonacci() -> WordStream:
    w = standard_sturmian(DirectiveSpec.constant(1))
    w.description = "fibonacci"
    return w


def fibonacci_by_concatenation() -> WordStream:
    """Limit of ``v0 = 2, v1 = 1, v_{n+2} = v_{n+1} v_n``."""

    def letters():
        a, b = b"\x02", b"\x01"
        emitted = 0
        while True:
            a, b = b, b + a
            if len(b) > emitted:
                yield from b[emitted:]
                emitted = len(b)

    return WordStream(letters, BINARY, "fibonacci-concatenation")


def word_type(w: WordStream, horizon: int = 1 << 16, start: int = 64) -> int:
    """Type 1 if ``11`` occurs, type 2 if ``22`` occurs, scanning doubling prefixes."""
    if w.alphabet.d != 2:
        raise ValueError("invalid arguments: word type is defined for binary words")
    h = min(start, horizon)
    while True:
        if w.length is not None:
            h = min(h, w.length)
        data = w.prefix_bytes(h)
        has11 = b"\x01\x01" in data
        has22 = b"\x02\x02" in data
        if has11 and has22:
            raise NotSturmianError(f"{w.description}: both 11 and 22 occur")
        if has11:
            return 1
        if has22:
            return 2
        if h >= horizon or (w.length is not None and h >= w.length):
            raise UndeterminedTypeError(f"{w.description}: neither 11 nor 22 within {h} letters")
        h = min(2 * h, horizon)


def _erase_before(stream: WordStream, i: int) -> Iterator[int]:
    # one letter of lookahead: drop an i that is immediately followed by j
    it = iter(stream)
    try:
        cur = next(it)
    except StopIteration:
        return
    for nxt in it:
        if not (cur == i and nxt != i):
            yield cur
        cur = nxt
    yield cur


def renormalize(w: WordStream, horizon: int = 1 << 16, kind: int | None = None) -> WordStream:
    """``R(w)``: erase the type letter that immediately precedes each occurrence of the other letter."""
    i = word_type(w, horizon) if kind is None else kind
    return WordStream(lambda: _erase_before(w, i), BINARY, f"R{i}({w.description})")


@dataclass(frozen=True)
class RunLengths:
    values: tuple[int, ...]
    types: tuple[int, ...]
    truncated: bool = False
    caveat: str | None = None

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if isinstance(other, (list, tuple)):
            return list(self.values) == list(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.values)


def run_length_extract(w: WordStream, terms: int, horizon: int = 1 << 14) -> RunLengths:
    """Run-lengths of the successive renormalization types of ``w``.

    ``b_0`` counts the leading type-1 steps (possibly zero).  Stops early with a
    caveat when a type cannot be decided inside ``horizon`` letters.
    """
    types: list[int] = []
    runs: list[int] = []
    current = w
    caveat = None

    def runs_of(ts: list[int]) -> list[int]:
        out = [] if ts and ts[0] == 1 else [0]
        for _, grp in itertools.groupby(ts):
            out.append(len(list(grp)))
        return out

    while True:
        runs = runs_of(types)
        # the last run is complete only once a different type follows it
        if len(runs) - 1 >= terms:
            break
        try:
            t = word_type(current, horizon)
        except (UndeterminedTypeError, NotSturmianError) as exc:
            caveat = str(exc)
            break
        types.append(t)
        current = renormalize(current, horizon, kind=t)
    complete = runs[:-1] if types else []
    if caveat is None:
        return RunLengths(tuple(complete[:terms]), tuple(types))
    return RunLengths(tuple(complete[:terms]), tuple(types), truncated=True, caveat=caveat)


def exact_frequencies(spec: DirectiveSpec) -> tuple[QuadraticReal, QuadraticReal]:
    """Exact letter frequencies ``(f1, f2)`` of the standard Sturmian word of ``spec``.

    Requires eventually periodic run-lengths, whose continued fraction value
    ``x = f1/f2`` is a quadratic irrational.
    """
    if not spec.eventually_periodic:
        raise ValueError("unsupported: exact frequencies need eventually periodic run-lengths")
    x = periodic_cf_value(spec.prefix, spec.period)
    f2 = 1 / (1 + x)
    f1 = x / (1 + x)
    assert f1 + f2 == 1
    return f1, f2


def empirical_ratio(w: WordStream, n: int) -> Fraction:
    """``|pref_n|_1 / |pref_n|_2``."""
    data = w.prefix_bytes(n)
    return Fraction(data.count(1), data.count(2))
