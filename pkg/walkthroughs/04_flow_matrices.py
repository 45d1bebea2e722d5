"""
Flow matrices and Kirchhoff's rule
==================================

Factor frequencies are a flow on the Rauzy graph.  The flow matrix
M = R - L has exact kernels that we can compare with the complexity.
"""

import numpy as np

from slab.builtins import lookup
from slab.flow import (exact_frequency_vector, flow_matrix, frequency_vector, kirchhoff_residual,
                       vertex_split_flow_matrix)
from slab.graphs import extension_graph, rauzy_graph
from slab.linalg import kernel_basis
from slab.sturmian import DirectiveSpec, fibonacci
from slab.words import Alphabet, FiniteWord, complexity

M = flow_matrix(lookup("2(010)^w").make(), 1, 200)
print(M.to_csv())

# left kernel: the constant vectors.  right kernel: dimension p(n+1) - p(n) + 1
for name in ["fibonacci", "tribonacci", "quasi-sturmian-31-32"]:
    w = lookup(name).make()
    prof = complexity(w, 7, 5000)
    dims = [(kernel_basis(flow_matrix(w, n, 5000), "left").dimension,
             kernel_basis(flow_matrix(w, n, 5000)).dimension, prof[n + 1] - prof[n] + 1) for n in range(6)]
    print(f"{name:<22} (left, right, expected) = {dims}")

# Exact frequencies satisfy M f = 0 exactly; empirical ones only up to O(n/N).
fib = fibonacci()
spec = DirectiveSpec.constant(1)
for n in range(1, 5):
    M = flow_matrix(fib, n, 10**4)
    exact = kirchhoff_residual(M, exact_frequency_vector(spec, n + 1))
    emp = [float(kirchhoff_residual(M, f)) for f in frequency_vector(fib, n + 1, [10**2, 10**3, 10**4])]
    print(f"n={n}: exact residual {exact}, empirical {np.round(emp, 6)}")

# Split a vertex whose extension graph is disconnected.  No factor aub
# crosses the two components, so the frequencies still satisfy the new
# conservation laws: they stay in a right kernel one dimension smaller.
w = lookup("period-1122").make()
u = FiniteWord.parse("1", Alphabet.standard(2))
g, ext = rauzy_graph(w, 1, 200), extension_graph(w, u, 200)
S = vertex_split_flow_matrix(g, ext)
print(S.to_csv())
print("kernel dims before/after split:", kernel_basis(flow_matrix(w, 1, 200)).dimension,
      kernel_basis(S).dimension)
(f,) = frequency_vector(w, 2, [400])
print("residual of the empirical frequencies on the split matrix (O(1/N)):", max(abs(x) for x in S.matvec(f.as_list(S.col_index))))
