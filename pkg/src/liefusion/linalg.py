"""Small exact linear algebra over Fraction and int.

Everything here works on tuples of Fractions (vectors) and tuples of row
tuples (matrices).  Sizes are the rank of a simple Lie algebra, so none of
this needs to be clever about performance.
"""

from fractions import Fraction
from math import lcm


def vec_add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def vec_neg(x):
    return tuple(-a for a in x)


def vec_scale(c, x):
    return tuple(c * a for a in x)


def vec_zero(n):
    return (Fraction(0),) * n


def vec_is_zero(x):
    return all(a == 0 for a in x)


def vec_fractions(x):
    return tuple(Fraction(a) for a in x)


def vec_is_integral(x):
    return all(Fraction(a).denominator == 1 for a in x)


def mat_vec(m, x):
    return tuple(sum(row[j] * x[j] for j in range(len(x))) for row in m)


def mat_mul(a, b):
    n, k, p = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(p))
        for i in range(n)
    )


def mat_transpose(m):
    return tuple(zip(*m))


def identity_matrix(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_fractions(m):
    return tuple(tuple(Fraction(v) for v in row) for row in m)


def mat_inverse(m):
    """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
    n = len(m)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def mat_det(m):
    n = len(m)
    a = [[Fraction(v) for v in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return det


def solve(m, b):
    """Solve m x = b exactly (square, nonsingular m)."""
    return mat_vec(mat_inverse(m), b)


def common_denominator(vecs):
    """Least common denominator of every entry of every vector."""
    den = 1
    for v in vecs:
        for a in v:
            den = lcm(den, Fraction(a).denominator)
    return den


def smith_normal_form(a):
    """Smith normal form with transforms.

    Returns (u, d, v) with u a v == d, u and v unimodular over the integers
    and d diagonal with nonnegative entries satisfying d[i] | d[i+1].
    """
    a = [[int(x) for x in row] for row in a]
    m, n = len(a), len(a[0])
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_sub(i, j, q):
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(i, j, q):
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot != (t, t):
                swap_rows(t, pivot[0])
                swap_cols(t, pivot[1])
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    row_sub(i, t, a[i][t] // a[t][t])
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    col_sub(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the block for a true Smith form
            fixed = True
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        row_sub(t, i, -1)
                        fixed = False
                        break
                if not fixed:
                    break
            if fixed:
                break
        if t < m and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    d = tuple(tuple(a[i][j] if i == j else 0 for j in range(n)) for i in range(m))
    return (tuple(tuple(r) for r in u), d, tuple(tuple(r) for r in v))
