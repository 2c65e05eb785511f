"""Dense exact linear algebra over the rationals.

Matrices are lists of rows, rows are lists of ``Fraction``.  Pivoting always
takes the first nonzero entry so results are reproducible.
"""

from fractions import Fraction


class SingularMatrix(ValueError):
    pass


def as_fraction_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(nrows, ncols):
    return [[Fraction(0)] * ncols for _ in range(nrows)]


def transpose(rows, ncols=None):
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*rows)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * ncols
        for k in range(inner):
            r = row[k]
            if r:
                bk = b[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] += r * bk[j]
        out.append(acc)
    return out


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def vecmat(v, a):
    ncols = len(a[0]) if a else 0
    out = [Fraction(0)] * ncols
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return out


def rref(rows, ncols=None):
    """Reduced row echelon form.  Returns ``(nonzero_rows, pivot_columns)``."""
    m = as_fraction_rows(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols=None):
    return len(rref(rows, ncols)[1])


def kernel(rows, ncols):
    """Basis of ``{v : rows * v = 0}``, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution of ``a x = b`` (free variables zero) or ``None``."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [Fraction(rhs)] for row, rhs in zip(a, b)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def inverse(m):
    n = len(m)
    if n == 0:
        return []
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in red]


def det(m):
    n = len(m)
    a = as_fraction_rows(m)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        result *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


class EchelonSpan:
    """Incrementally maintained span of vectors, kept in reduced form."""

    def __init__(self, ncols):
        self.ncols = ncols
        self._rows = {}  # pivot column -> row with 1 at pivot

    def __len__(self):
        return len(self._rows)

    def reduce(self, v):
        v = [Fraction(x) for x in v]
        for c, row in self._rows.items():
            if v[c]:
                f = v[c]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def contains(self, v):
        return not any(self.reduce(v))

    def add(self, v):
        """Add ``v``; return True if it enlarged the span."""
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = 1 / v[piv]
        v = [x * inv for x in v]
        for c, row in list(self._rows.items()):
            if row[piv]:
                f = row[piv]
                self._rows[c] = [x - f * y for x, y in zip(row, v)]
        self._rows[piv] = v
        return True

    def basis(self):
        return [self._rows[c] for c in sorted(self._rows)]
