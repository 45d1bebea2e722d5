"""Registry of named example words and the word-spec mini-language.

A word spec is one of::

    fibonacci                       registry name (also ``builtin:fibonacci``)
    directive:1,1,...               standard Sturmian word of a directive spec
    directive:pre:[2] period:[1]
    periodic:2(010)                 eventually periodic word, symbols as written
    rotation:y=<qr>;alpha=<qr>      rotation coding
    line:x=<qr>,<qr>;theta=<qr>,<qr>  cutting sequence of a line
    file:path/to/word.txt           word file
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .codings import LineParams, RotationParams, cutting_sequence, rotation_stream
from .graphs import quasi_sturmian_build
from .quadratic import QuadraticReal, qr
from .sturmian import (DirectiveSpec, Substitution, apply_substitution, exact_frequencies,
                       fibonacci, renormalize, standard_sturmian)
from .words import Alphabet, WordStream

__all__ = [
    "BuiltinWord",
    "UnknownWordError",
    "builtin_words",
    "lookup",
    "resolve_word",
    "exercise_word",
    "exercise_checkpoints",
    "fixed_point",
]


class UnknownWordError(LookupError):
    pass


@dataclass(frozen=True)
class BuiltinWord:
    name: str
    make: Callable[[], WordStream]
    quoted_prefix: str | None = None
    exact_freqs: Callable[[], tuple] | None = None
    note: str = ""


def _periodic(pre: str, period: str, symbols: str | None = None) -> Callable[[], WordStream]:
    def make():
        alphabet = Alphabet.from_text(symbols or "".join(sorted(set(pre + period))))
        return WordStream.periodic(alphabet.parse(pre), alphabet.parse(period), alphabet)
    return make


def _periodic_freqs(period: str, symbols: str) -> Callable[[], tuple]:
    return lambda: tuple(QuadraticReal(Fraction(period.count(s), len(period))) for s in symbols)


def exercise_letters() -> Iterator[int]:
    """Binary word over {0, 1} (letters 1 and 2) balancing and then flooding with ones.

    ``u_0 = 1``; at an even step append 0s until both symbols are equally
    frequent; at an odd step ``n`` append ``n * |u_n|`` ones.
    """
    zeros = ones = 0
    yield 2
    ones = 1
    for n in itertools.count(1):
        if (n - 1) % 2 == 0:
            k = ones - zeros
            zeros += k
            yield from itertools.repeat(1, k)
        else:
            k = (n - 1) * (zeros + ones)
            ones += k
            yield from itertools.repeat(2, k)


def exercise_checkpoints(stages: int) -> list[int]:
    """``|u_0|, |u_1|, ..., |u_stages|`` for the exercise construction."""
    lengths = [1]
    zeros, ones = 0, 1
    for n in range(stages):
        if n % 2 == 0:
            zeros = ones
        else:
            ones += n * (zeros + ones)
        lengths.append(zeros + ones)
    return lengths


def exercise_word(ternary: bool = False) -> WordStream:
    if not ternary:
        return WordStream(exercise_letters, Alphabet.from_text("01"), "tijdeman-exercise-binary")

    def letters():
        fib = iter(fibonacci())
        for a in exercise_letters():
            # every 1 is replaced by the next Fibonacci letter (symbols 1, 2)
            yield 1 if a == 1 else next(fib) + 1

    return WordStream(letters, Alphabet.from_text("012"), "tijdeman-exercise-ternary")


def fixed_point(s: Substitution, start: int, alphabet: Alphabet, description: str = "") -> WordStream:
    """Fixed point of a substitution prolongable on ``start``."""
    img = s.image(start)
    if len(img) < 2 or img[0] != start:
        raise ValueError("invalid arguments: substitution is not prolongable on the start letter")

    def letters():
        word = [start]
        emitted = 0
        while True:
            word = [b for a in word for b in s.image(a)]
            yield from word[emitted:]
            emitted = len(word)

    return WordStream(letters, alphabet, description or f"fixed-point[{start}]")


def _fib_freqs():
    return exact_frequencies(DirectiveSpec.constant(1))


def _quasi_freqs():
    f1, f2 = _fib_freqs()
    half = Fraction(1, 2)
    return (f1 * half, f2 * half, QuadraticReal(half))


def _split_example():
    w = apply_substitution(Substitution({1: (1,), 2: (2, 3)}), fibonacci(), Alphabet.standard(3))
    w.description = "split-example-ternary"
    return w


def _r_fibonacci():
    w = renormalize(fibonacci())
    w.description = "R(fibonacci)"
    return w


def _quasi():
    w = quasi_sturmian_build(fibonacci(), 0, ([1], [2], [3]))
    w.description = "quasi-sturmian-31-32"
    return w


def _tribonacci():
    return fixed_point(Substitution({1: (1, 2), 2: (1, 3), 3: (1,)}), 1, Alphabet.standard(3), "tribonacci")


_REGISTRY = {
    b.name: b for b in [
        BuiltinWord("constant", _periodic("", "1"), "11111", lambda: (QuadraticReal(1),)),
        BuiltinWord("period-12", _periodic("", "12"), "1212", _periodic_freqs("12", "12")),
        BuiltinWord("period-123", _periodic("", "123"), "123123", _periodic_freqs("123", "123")),
        BuiltinWord("period-1233", _periodic("", "1233"), "123312", _periodic_freqs("1233", "123")),
        BuiltinWord("period-1122", _periodic("", "1122"), "11221122", _periodic_freqs("1122", "12")),
        BuiltinWord("eventually-010", _periodic("2", "010", "012"), "2010010", None),
        BuiltinWord("2-then-ones", _periodic("2", "1"), "21111", None),
        BuiltinWord("fibonacci", fibonacci, "1211212112112", _fib_freqs),
        BuiltinWord("R(fibonacci)", _r_fibonacci, "212212122122121221212212", None),
        BuiltinWord("quasi-sturmian-31-32", _quasi, "3132313132313231313231", _quasi_freqs),
        BuiltinWord("tijdeman-exercise-binary", exercise_word, "101100111111111111111111", None),
        BuiltinWord("tijdeman-exercise-ternary", lambda: exercise_word(True),
                    "102100121211211212112121000000000000000000", None),
        BuiltinWord("tribonacci", _tribonacci, "1213121121312", None,
                    "ternary dendric fixed point of 1->12, 2->13, 3->1"),
        BuiltinWord("split-example-ternary", _split_example, "1231123123", None,
                    "Fibonacci under 1->1, 2->23; its extension graph of the empty word is disconnected"),
    ]
}

_ALIASES = {
    "1^w": "constant",
    "ones": "constant",
    "(12)^w": "period-12",
    "(123)^w": "period-123",
    "(1233)^w": "period-1233",
    "(1122)^w": "period-1122",
    "2(010)^w": "eventually-010",
    "paper-2(010)": "eventually-010",
    "2111": "2-then-ones",
    "quasi-sturmian": "quasi-sturmian-31-32",
}


def builtin_words() -> dict[str, BuiltinWord]:
    return dict(_REGISTRY)


def lookup(name: str) -> BuiltinWord:
    key = _ALIASES.get(name, name)
    try:
        return _REGISTRY[key]
    except KeyError:
        raise UnknownWordError(f"not-found: no builtin word named {name!r}") from None


def _kv(body: str) -> dict[str, str]:
    out = {}
    for part in body.split(";"):
        if part.strip():
            k, sep, v = part.partition("=")
            if not sep:
                raise UnknownWordError(f"malformed parameter {part!r}")
            out[k.strip()] = v.strip()
    return out


def _pair(text: str) -> tuple[QuadraticReal, QuadraticReal]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 2:
        raise UnknownWordError(f"expected a pair of numbers, got {text!r}")
    return qr(parts[0]), qr(parts[1])


def _line_stream(p: LineParams) -> WordStream:
    def letters():
        # cutting sequences are computed in growing batches
        n = 256
        emitted = 0
        while True:
            word = cutting_sequence(p, n)
            yield from word.letters[emitted:]
            emitted = n
            n *= 2

    return WordStream(letters, Alphabet.standard(2), f"line[x={p.x[0]},{p.x[1]}; theta={p.theta[0]},{p.theta[1]}]")


def resolve_word(spec: str) -> WordStream:
    """Build a stream from a word spec; raises :class:`UnknownWordError` on anything unresolvable."""
    from .io import read_word_file  # local import: io depends on this module's types only

    kind, sep, body = spec.partition(":")
    if not sep:
        return lookup(spec).make()
    try:
        if kind == "builtin":
            return lookup(body).make()
        if kind == "directive":
            return standard_sturmian(DirectiveSpec.parse(body))
        if kind == "periodic":
            head, _, rest = body.partition("(")
            period = rest.rstrip(")").rstrip("^w").rstrip(")")
            return _periodic(head, period)()
        if kind == "rotation":
            kv = _kv(body)
            return rotation_stream(RotationParams(qr(kv["y"]), qr(kv["alpha"])))
        if kind == "line":
            kv = _kv(body)
            return _line_stream(LineParams(_pair(kv["x"]), _pair(kv["theta"])))
        if kind == "file":
            return read_word_file(body)
    except UnknownWordError:
        raise
    except (ValueError, KeyError, OSError) as exc:
        raise UnknownWordError(f"cannot resolve word spec {spec!r}: {exc}") from exc
    if spec in _ALIASES or spec in _REGISTRY:
        return lookup(spec).make()
    raise UnknownWordError(f"unknown word spec kind {kind!r}")
