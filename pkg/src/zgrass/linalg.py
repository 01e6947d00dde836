"""Small dense exact linear algebra over Fraction and over coefficient rings.

Matrices are plain lists of lists.  Nothing here is asymptotically clever;
sizes stay small (a few dozen rows at most) and exactness is the point.
"""

from fractions import Fraction

from .errors import ZgrassError


def det_field(rows):
    """Determinant by fraction-free-ish Gaussian elimination over Fraction."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    a = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / p
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def det_ring(rows):
    """Division-free determinant over any commutative ring.

    Laplace expansion along successive columns, memoized on the set of rows
    still in play -- O(2^n * n) ring operations, fine for n <= ~18.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    memo = {}

    def go(idx):
        if not idx:
            return Fraction(1)
        if idx in memo:
            return memo[idx]
        col = n - len(idx)
        total = Fraction(0)
        for pos, r in enumerate(idx):
            a = rows[r][col]
            if not a:
                continue
            sub = go(idx[:pos] + idx[pos + 1 :])
            if not sub:
                continue
            term = a * sub
            total = total + term if pos % 2 == 0 else total - term
        memo[idx] = total
        return total

    return go(tuple(range(n)))


def _inv_unit(x):
    if isinstance(x, Fraction):
        return Fraction(1) / x
    return x.inverse_unit()


def det_unit(rows):
    """Gaussian determinant for rings where every pivot found is a unit.

    Intended for triangular-plus-nilpotent matrices over a weight-truncated
    parameter ring, where det_ring is too slow.  Raises ZgrassError when no
    unit pivot exists in some column; callers fall back to det_ring.
    """
    n = len(rows)
    a = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            x = a[r][col]
            if not x:
                continue
            if isinstance(x, Fraction) or (
                hasattr(x, "constant_term") and x.constant_term()
            ):
                piv = r
                break
        if piv is None:
            if any(a[r][col] for r in range(col, n)):
                raise ZgrassError("no unit pivot in column")
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        pinv = _inv_unit(p)
        det = det * p
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * pinv
                for c in range(col, n):
                    a[r][c] = a[r][c] - f * a[col][c]
    return det


def rref(rows, ncols=None):
    """Reduced row echelon form over Fraction.  Returns (matrix, pivot_cols)."""
    a = [list(map(Fraction, r)) for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(a)) if a[r][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        p = a[row][col]
        a[row] = [x / p for x in a[row]]
        for r in range(len(a)):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == len(a):
            break
    return a, pivots


def nullspace(rows, ncols):
    """Basis of the right kernel of the matrix, one vector per free column.

    Each basis vector carries a 1 in its free column; deterministic order.
    """
    if not rows:
        return [
            [Fraction(1 if j == i else 0) for j in range(ncols)]
            for i in range(ncols)
        ]
    a, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][fc]
        basis.append(v)
    return basis


def rank(rows, ncols=None):
    _, pivots = rref(rows, ncols)
    return len(pivots)
