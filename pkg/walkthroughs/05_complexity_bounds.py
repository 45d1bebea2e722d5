"""
How small can complexity be?
============================

Lower bounds on p(n) in terms of the dimension Delta of the rational
span of the letter frequencies, and a word whose frequencies do not exist.
"""

from fractions import Fraction

from slab.builtins import exercise_checkpoints, exercise_word, lookup
from slab.flow import pseudo_frequencies, tijdeman_audit
from slab.sturmian import DirectiveSpec, exact_frequencies, fibonacci
from slab.words import complexity

fib = tijdeman_audit(fibonacci(), 2, 12, 10**4, exact_frequencies(DirectiveSpec.constant(1)))
print("fibonacci:", fib.conclusion(), " tight at", fib.tight)

q = lookup("quasi-sturmian-31-32")
audit = tijdeman_audit(q.make(), 3, 10, 20000, claimed=(None, 3))
print("31/32 with Delta=3:", audit.conclusion())
audit = tijdeman_audit(q.make(), 3, 10, 20000, q.exact_freqs())
print("31/32 with exact frequencies:", audit.conclusion())

# Balancing then flooding: the letter frequencies oscillate forever.
w = exercise_word()
print(w.prefix(24))
for N, (f0, f1) in pseudo_frequencies(w, exercise_checkpoints(8)[1:]):
    print(f"  N={N:<6} share of 1s = {f1}  ({float(f1):.4f})")

# Replacing the 1s by Fibonacci letters gives a ternary word.  Its
# complexity stays above 2n + 1 at every length we can see.
t = exercise_word(ternary=True)
prof = complexity(t, 15, 10**5)
print("ternary profile:", prof)
print("p(n) >= 2n+1 for n <= 15:", all(prof[n] >= 2 * n + 1 for n in range(1, 16)))
