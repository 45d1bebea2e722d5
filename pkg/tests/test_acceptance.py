"""Acceptance criteria, each at its stated tolerance and time limit.

Every test records one PASS/FAIL line; ``conftest.py`` prints them in the
terminal summary, and running this file directly prints them as it goes.
"""
from __future__ import annotations

import random
import time
from contextlib import contextmanager
from fractions import Fraction

from slab.builtins import exercise_checkpoints, exercise_word, lookup
from slab.codings import LineParams, RotationParams, billiard_word, cutting_sequence, flow_word, rotation_word
from slab.flow import (exact_frequency_vector, flow_matrix, frequency_vector, kirchhoff_residual,
                       rational_span_dimension, tijdeman_audit)
from slab.graphs import dendricity_check, second_derivative_identity_check
from slab.linalg import kernel_basis
from slab.quadratic import cf_expand, qr
from slab.sturmian import (DirectiveSpec, exact_frequencies, fibonacci, fibonacci_by_concatenation,
                           run_length_extract, standard_sturmian)
from slab.words import complexity, is_saturated, morse_hedlund_detect

RESULTS: dict[int, str] = {}

PHI = qr("1/2+1/2*sqrt(5)")
ALPHA = qr("3/2-1/2*sqrt(5)")  # 1/phi^2


@contextmanager
def criterion(k: int, title: str, limit: float):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        within = dt < limit
        status = "PASS" if ok and within else "FAIL"
        note = "" if within else f" over the {limit:g} s limit"
        RESULTS[k] = f"criterion {k:2d} {status}  {title}  ({dt:.2f} s){note}"
        print(RESULTS[k])
    assert within, f"criterion {k} took {dt:.2f} s, limit {limit} s"


def test_01_flow_matrix_golden():
    with criterion(1, "flow matrix of 2(010)^w at n=1", 1.0):
        w = lookup("eventually-010").make()
        M = flow_matrix(w, 1, 200)
        assert [u.label() for u in M.row_index] == ["0", "1", "2"]
        assert [v.label() for v in M.col_index] == ["00", "01", "10", "20"]
        assert M.to_int_rows() == [[0, 1, -1, -1], [0, -1, 1, 0], [0, 0, 0, 1]]


def test_02_fibonacci_prefix():
    with criterion(2, "Fibonacci prefix and concatenation recurrence", 1.0):
        f = standard_sturmian(DirectiveSpec.constant(1), prefix_len=13)
        assert str(f.prefix(13)) == "1211212112112"
        assert f.prefix_bytes(10**4) == fibonacci_by_concatenation().prefix_bytes(10**4)


def test_03_sturmian_complexity():
    with criterion(3, "Fibonacci complexity n+1 for n <= 50 at horizon 1e5", 5.0):
        f = fibonacci()
        assert is_saturated(f, 50, 10**5)
        assert complexity(f, 50, 10**5) == list(range(1, 52))


def test_04_continued_fractions():
    with criterion(4, "CF of 17/6, phi and sqrt(2)", 1.0):
        a = cf_expand(Fraction(17, 6))
        assert a.status == "terminated" and a.partial_quotients == (2, 1, 5)
        b = cf_expand(PHI)
        assert b.status == "periodic" and b.preperiod == () and b.period == (1,)
        c = cf_expand(qr("sqrt(2)"))
        assert c.status == "periodic" and c.preperiod == (1,) and c.period == (2,)


def test_05_renormalization_round_trip():
    with criterion(5, "run-length round trip for 20 random specs", 10.0):
        rng = random.Random(20240605)
        for _ in range(20):
            b = [rng.randint(1, 4) for _ in range(6)]
            w = standard_sturmian(DirectiveSpec(tuple(b), (1,)))
            assert run_length_extract(w, 6) == b


def test_06_coding_equivalence():
    with criterion(6, "rotation, billiard, cutting and flow codings of Fibonacci", 30.0):
        fib = fibonacci()
        assert rotation_word(RotationParams(ALPHA, ALPHA), 10**4).letters == tuple(fib.prefix_bytes(10**4))
        p = LineParams((0, 0), (1 / PHI, ALPHA))
        target = tuple(fib.prefix_bytes(1000))
        assert billiard_word(p, 1000).letters == target
        assert cutting_sequence(p, 1000).letters == target
        assert flow_word(p, 1000).letters == target


CORPUS = ["fibonacci", "period-12", "eventually-010", "quasi-sturmian-31-32", "period-123",
          "period-1233", "R(fibonacci)", "tribonacci"]


def test_07_kernel_identities():
    with criterion(7, "left kernel span(1), right kernel p(n+1)-p(n)+1, n <= 8", 30.0):
        for name in CORPUS:
            w = lookup(name).make()
            prof = complexity(w, 9, 5000)
            for n in range(9):
                M = flow_matrix(w, n, 5000)
                left = kernel_basis(M, "left")
                assert left.dimension == 1 and set(left.basis[0]) == {1}, (name, n)
                assert kernel_basis(M).dimension == prof[n + 1] - prof[n] + 1, (name, n)


def test_08_kirchhoff():
    with criterion(8, "Kirchhoff residual exact 0 and empirical within tolerance", 10.0):
        spec = DirectiveSpec.constant(1)
        f = fibonacci()
        N = 10**4
        for n in range(0, 7):
            M = flow_matrix(f, n, N)
            assert kirchhoff_residual(M, exact_frequency_vector(spec, n + 1)) == 0
            (emp,) = frequency_vector(f, n + 1, [N])
            assert kirchhoff_residual(M, emp) <= Fraction(10 * M.rows * (n + 1), N)


def test_09_tijdeman_bounds():
    with criterion(9, "Tijdeman bounds for Fibonacci, 31/32 and (123)^w", 10.0):
        fib = tijdeman_audit(fibonacci(), 2, 20, 10**4, exact_frequencies(DirectiveSpec.constant(1)))
        assert rational_span_dimension(exact_frequencies(DirectiveSpec.constant(1))) == 2
        assert fib.Delta == 2 and fib.passed and fib.tight == tuple(range(1, 21))

        q = lookup("quasi-sturmian-31-32").make()
        audit = tijdeman_audit(q, 3, 12, 20000, claimed=(None, 3))
        assert all(audit.profile[n] == n + 2 < 2 * n + 1 for n in range(2, 13))
        assert not audit.passed and audit.Delta_upper_bound == 2
        assert "Delta <= 2" in audit.conclusion()

        p = tijdeman_audit(lookup("period-123").make(), 3, 10, 1000,
                           lookup("period-123").exact_freqs())
        assert p.Delta == 1 and p.passed and all(c[2] == 3 for c in p.bound_checks)


def test_10_dendricity():
    with criterion(10, "dendricity verdicts and the second-derivative identity", 30.0):
        assert dendricity_check(fibonacci(), 15, 20000).dendric
        r = dendricity_check(lookup("period-1122").make(), 2, 200)
        assert not r.dendric and r.witness.u.label() == "ε" and r.failure == "cyclic"
        assert not dendricity_check(lookup("2-then-ones").make(), 1, 200).dendric
        for name in CORPUS + ["period-1122", "2-then-ones"]:
            w = lookup(name).make()
            for n in range(9):
                assert second_derivative_identity_check(w, n, 5000).holds, (name, n)


def test_11_morse_hedlund():
    with criterion(11, "Morse-Hedlund detector on 2(010)^w and Fibonacci", 5.0):
        v = morse_hedlund_detect(lookup("eventually-010").make(), 5, 200)
        assert v.eventually_periodic and v.saturated
        assert v.profile[2] == v.profile[3] == 4
        assert not morse_hedlund_detect(fibonacci(), 20, 10**5).eventually_periodic


def test_12_exercise_word():
    with criterion(12, "pseudo-frequencies of the exercise word and the ternary bound", 30.0):
        w = exercise_word()
        lengths = exercise_checkpoints(10)
        assert lengths[:5] == [1, 2, 4, 6, 24]
        data = w.prefix_bytes(lengths[-1])
        shares = []
        for k, N in enumerate(lengths[1:], start=1):
            ones = Fraction(data[:N].count(2), N)
            if k % 2 == 1:  # right after a balancing step
                assert ones == Fraction(1, 2), (k, N)
            else:
                shares.append(ones)
        assert shares == sorted(shares) and len(set(shares)) == len(shares)

        # with d = 3 and Delta = 3 the bound (Delta-1)(n-1)+d is exactly 2n+1
        t = exercise_word(ternary=True)
        audit = tijdeman_audit(t, 3, 15, 10**5, claimed=(2, 3))
        assert audit.passed
        assert [b for _, _, b, _ in audit.bound_checks] == [2 * n + 1 for n in range(1, 16)]
        assert all(audit.profile[n] >= n + 2 for n in range(1, 16))
        assert any(audit.profile[n] > n + 2 for n in range(2, 16))


if __name__ == "__main__":
    import sys

    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
