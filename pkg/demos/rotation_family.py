"""Rotation maps: tan((k theta + phi)/2) written in terms of tan(theta/2).

For phi = pi / S_n(k), with S_n(k) = 1 + k + ... + k^(n-1), the n-th iterate
rotates by a multiple of pi and is therefore defined over Q even though the
map itself is not.
"""

from iterfield import iterate, rotation_with_rational_iterate, sn

for k, n in [(2, 2), (2, 3), (3, 2)]:
    f = rotation_with_rational_iterate(n, k)
    over_q = [iterate(f, m).is_rational() for m in range(1, n + 1)]
    print(f"k={k} n={n}  angle pi/{sn(k, n)}  field degree {f.field.degree}")
    print("   iterates over Q for m = 1..n:", over_q)
