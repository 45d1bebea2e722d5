"""
Rauzy graphs, extension graphs, dendric words
=============================================
"""

from slab.builtins import lookup
from slab.graphs import (dendricity_check, extension_graphs, is_semi_connected, is_strongly_connected,
                         is_tree, rauzy_graph, second_derivative_identity_check)
from slab.words import complexity

# The Rauzy graph of order n has the length-n factors as vertices and the
# length-(n+1) factors as edges.
w = lookup("2(010)^w").make()
g = rauzy_graph(w, 1, 200)
print(g.to_dot())
print("semi-connected:", is_semi_connected(g), " strongly connected:", is_strongly_connected(g))

# For each word of the corpus: dendricity, then the second-difference identity
#   p(n+2) - 2 p(n+1) + p(n) = sum over u of (|B(u)| - |L(u)| - |R(u)| + 1)
for name in ["fibonacci", "tribonacci", "quasi-sturmian-31-32", "period-1122", "2-then-ones"]:
    w = lookup(name).make()
    r = dendricity_check(w, 8, 20000)
    sd = [second_derivative_identity_check(w, n, 20000) for n in range(6)]
    print(f"{name:<22} p = {complexity(w, 8, 20000)}  {r.verdict:<18} {r.failure or '':<12}"
          f" identity holds: {all(s.holds for s in sd)}")

# What goes wrong for the quasi-Sturmian word: some extension graph is not a tree.
w = lookup("quasi-sturmian-31-32").make()
for n in range(3):
    for u, e in sorted(extension_graphs(w, n, 20000).items()):
        kind = is_tree(e)
        if kind != "tree":
            print(f"  u={u.label():<4} {kind:<12} edges {sorted(e.edges)}")
