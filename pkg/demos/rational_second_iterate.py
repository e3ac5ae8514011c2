"""A quadratic map over Q(sqrt 3) whose second iterate is defined over Q.

Walks through the iterates, the classification, and the rational periodic
points, which is where the map's irrationality shows up.
"""

from iterfield import counterexample_map, iterate, report

f = counterexample_map()
print("f       =", f)
print("field   =", f.field)

for n in range(1, 5):
    g = iterate(f, n)
    print(f"f^{n} over Q: {g.is_rational()}   degree {g.degree}")

print()
print("f^2     =", iterate(f, 2))

r = report(f, n=2, max_n=4)
print()
print("A_2 member:", r.An.member)
print("B member:  ", r.B.member, "-", r.B.obstruction)

per = r.periodic
print()
print("rational fixed points:   ", [str(P) for P in per.rational_fixed])
print("rational 2-cycles:       ", [(str(P), str(Q)) for P, Q in per.rational_two_cycles])
# the 2-cycle through x = 1 leaves Q, so f cannot be conjugate to a map over Q
print("2-cycles leaving Q:      ", [(str(P), str(Q)) for P, Q in per.irrational_partner])
