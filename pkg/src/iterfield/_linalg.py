"""Dense linear algebra over Q with ``Fraction`` entries.

Matrices are lists of rows; vectors are lists. Nothing here is fast, but the
dimensions involved (ambient field degrees, at most a few dozen) keep it cheap.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rref(rows):
    """Reduced row echelon form. Returns ``(nonzero_rows, pivot_columns)``."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                fac = m[i][col]
                m[i] = [a - fac * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    return len(rref(rows)[0])


def nullspace(rows, ncols=None):
    """Basis of ``{x : rows @ x = 0}``."""
    if not rows:
        n = ncols or 0
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve(A, b):
    """One solution of ``A x = b`` or ``None`` when inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return x


def det(M):
    m = [list(map(Fraction, r)) for r in M]
    n = len(m)
    result = ONE
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            result = -result
        p = m[col][col]
        result *= p
        for i in range(col + 1, n):
            if m[i][col] != 0:
                fac = m[i][col] / p
                m[i] = [a - fac * b for a, b in zip(m[i], m[col])]
    return result


class DependencyTracker:
    """Feeds vectors one at a time and reports the first linear dependency.

    ``add(v)`` returns ``None`` while ``v`` is independent of everything added
    so far; otherwise it returns coefficients ``c`` with ``v = sum(c[i]*v_i)``
    over the previously added vectors.
    """

    def __init__(self, dim):
        self.dim = dim
        self.rows = []  # (pivot, reduced vector, combination of inputs)
        self.count = 0

    def add(self, v):
        v = [Fraction(x) for x in v]
        combo = [ZERO] * self.count + [ONE]
        for pivot, row, rc in self.rows:
            f = v[pivot]
            if f != 0:
                v = [a - f * b for a, b in zip(v, row)]
                for i, c in enumerate(rc):
                    combo[i] -= f * c
        pivot = next((i for i, x in enumerate(v) if x != 0), None)
        if pivot is None:
            # 0 = combo . inputs with combo[-1] == 1
            self.count += 1
            return [-c for c in combo[:-1]]
        inv = 1 / v[pivot]
        v = [x * inv for x in v]
        combo = [c * inv for c in combo]
        self.rows.append((pivot, v, combo))
        self.count += 1
        return None

    @property
    def rank(self):
        return len(self.rows)
