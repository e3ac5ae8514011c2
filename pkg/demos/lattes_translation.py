"""Lattes maps twisted by a 2-torsion translation.

On E: y^2 = x^3 - 2x the point (sqrt 2, 0) has order 2.  The x-coordinate of
P -> 3P + Q is a degree-9 map over Q(sqrt 2), while its second iterate is the
x-coordinate of P -> 9P + 4Q = 9P, which is defined over Q.
"""

from iterfield import Curve, NumberField, iterate, lattes_translated, classify_B

K = NumberField([-2, 0, 1])
E = Curve(-2, 0, field=K)
f = lattes_translated(E, 3, K.gen)

print("degree      ", f.degree)
print("f over Q:   ", f.is_rational())
print("f^2 over Q: ", iterate(f, 2).is_rational())
print("B member:   ", classify_B(f).member)
