"""
One word, four constructions
============================

The Fibonacci word codes a circle rotation, a billiard in the square,
the cutting sequence of a line and a linear flow on the torus.  All
four are computed in exact arithmetic over Q(sqrt 5).
"""

from pathlib import Path

from slab.codings import (LineParams, RotationParams, billiard_word, cutting_sequence, flow_word,
                          render_trajectory_svg, rotation_cylinders, rotation_word)
from slab.quadratic import qr
from slab.sturmian import fibonacci

alpha = qr("3/2-1/2*sqrt(5)")          # 1/phi^2
phi = qr("1/2+1/2*sqrt(5)")

target = fibonacci().prefix(60)
print("fibonacci ", target)
print("rotation  ", rotation_word(RotationParams(alpha, alpha), 60))

# A line of direction (1/phi, 1/phi^2) from the origin.
line = LineParams((0, 0), (1 / phi, alpha))
for route in (cutting_sequence, billiard_word, flow_word):
    u = route(line, 60)
    print(f"{route.__name__:<17}", u, "same" if u == target else "DIFFERENT")

# The coding is constant between consecutive points -j*alpha, so every
# cylinder has an exact measure.  These are the factor frequencies.
for u, mu in sorted(rotation_cylinders(alpha, 4).items()):
    print(f"  [{u}]  measure {mu}  ~ {float(mu):.5f}")

out = Path("billiard.svg")
out.write_text(render_trajectory_svg(line, 25))
print("wrote", out)
