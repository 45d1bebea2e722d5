"""
Standard Sturmian words and renormalization
===========================================

Build a few standard Sturmian words, look at their complexity, undo
them with the renormalization operator and read the directive sequence
back off as continued fraction data.
"""

from fractions import Fraction

from slab.quadratic import cf_expand, convergents, qr
from slab.sturmian import (DirectiveSpec, empirical_ratio, exact_frequencies, fibonacci, renormalize,
                           run_length_extract, standard_sturmian, word_type)
from slab.words import complexity, is_saturated

# The Fibonacci word is the standard Sturmian word whose run-lengths are all 1.
fib = fibonacci()
print("fibonacci   ", fib.prefix(40))

# Its complexity is n + 1, as for every Sturmian word.  The table is only
# trusted when doubling the horizon would not change it.
print("p(n), n<=12 ", complexity(fib, 12, 10**4), "saturated:", is_saturated(fib, 12, 10**4))

# A different directive spec: b = (2, 1, 3, 1, 3, ...)
spec = DirectiveSpec((2,), (1, 3))
w = standard_sturmian(spec)
print("spec", spec, "  ", w.prefix(40))

# Renormalizing erases one letter in front of each occurrence of the other.
# The type tells which letter gets erased.
r = w
for step in range(4):
    print(f"R^{step}: type {word_type(r)}  {r.prefix(30)}")
    r = renormalize(r)

# Counting the runs of equal types recovers the directive spec.
print("run lengths ", list(run_length_extract(w, 6)))

# The ratio of letter frequencies is the continued fraction with those
# partial quotients, so it is a quadratic irrational here.
f1, f2 = exact_frequencies(spec)
x = f1 / f2
print("f1/f2 =", x, "  cf:", cf_expand(x))
print("empirical ratio on 10^4 letters:", float(empirical_ratio(w, 10**4)), "vs", float(x))

# Convergents of the golden ratio are ratios of Fibonacci numbers.
phi = qr("1/2+1/2*sqrt(5)")
print("convergents of phi:", [str(c) for c in convergents(cf_expand(phi), 10)])
print("17/6 =", cf_expand(Fraction(17, 6)), "  sqrt(2) =", cf_expand(qr("sqrt(2)")))
