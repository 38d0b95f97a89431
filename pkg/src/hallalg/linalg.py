"""Small dense linear algebra over the prime field F_p.

Matrices are tuples of row tuples so they can be hashed and used as
dictionary keys.  Sizes at desk scale are tiny (a handful of rows), so
plain Python beats array libraries on overhead here.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

Matrix = tuple  # tuple[tuple[int, ...], ...]


def zeros(r: int, c: int) -> Matrix:
    return tuple((0,) * c for _ in range(r))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul_shaped(a: Matrix, b: Matrix, r: int, k: int, c: int, p: int) -> Matrix:
    """``a`` (r x k) times ``b`` (k x c), robust to zero dimensions."""
    if r == 0:
        return ()
    if c == 0 or k == 0:
        return zeros(r, c)
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a)


def sub(a: Matrix, b: Matrix, p: int) -> Matrix:
    return tuple(tuple((x - y) % p for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def rref(rows, ncols: int, p: int):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(x) for x in m[:r]], pivots


def rank(a: Matrix, p: int) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a, len(a[0]), p)[1])


def nullspace(rows, ncols: int, p: int) -> list[tuple[int, ...]]:
    """Basis of {x : rows @ x = 0} as a list of vectors."""
    red, pivots = rref(rows, ncols, p) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for row, pc in zip(red, pivots):
            vec[pc] = (-row[f]) % p
        basis.append(tuple(vec))
    return basis


def inverse(a: Matrix, p: int) -> Matrix:
    n = len(a)
    if n == 0:
        return ()
    aug = [list(row) + list(e) for row, e in zip(a, identity(n))]
    red, pivots = rref(aug, 2 * n, p)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def is_invertible(a: Matrix, p: int) -> bool:
    n = len(a)
    return n == 0 or rank(a, p) == n


def transpose(a: Matrix, ncols: int) -> Matrix:
    if not a:
        return tuple(() for _ in range(ncols))
    return tuple(zip(*a))


@lru_cache(maxsize=None)
def all_matrices(r: int, c: int, p: int) -> tuple[Matrix, ...]:
    """Every r x c matrix over F_p, in lexicographic order."""
    if r == 0:
        return ((),)
    if c == 0:
        return (tuple(() for _ in range(r)),)
    out = []
    for flat in itertools.product(range(p), repeat=r * c):
        out.append(tuple(tuple(flat[i * c:(i + 1) * c]) for i in range(r)))
    return tuple(out)


@lru_cache(maxsize=None)
def general_linear(n: int, p: int) -> tuple[tuple[Matrix, Matrix], ...]:
    """Pairs (g, g^-1) for every g in GL_n(F_p)."""
    out = []
    for m in all_matrices(n, n, p):
        if is_invertible(m, p):
            out.append((m, inverse(m, p)))
    return tuple(out)


def gl_order(n: int, p: int) -> int:
    out = 1
    for i in range(n):
        out *= p ** n - p ** i
    return out


@lru_cache(maxsize=None)
def subspaces(n: int, k: int, p: int) -> tuple[Matrix, ...]:
    """All k-dimensional subspaces of F_p^n, each as its k x n RREF basis."""
    if k == 0:
        return ((),)
    out = []
    for pivots in itertools.combinations(range(n), k):
        # free entries: row i, columns c > pivots[i] that are not pivots
        slots = [(i, c) for i in range(k) for c in range(pivots[i] + 1, n) if c not in pivots]
        for vals in itertools.product(range(p), repeat=len(slots)):
            m = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                m[i][pc] = 1
            for (i, c), x in zip(slots, vals):
                m[i][c] = x
            out.append(tuple(tuple(r) for r in m))
    return tuple(out)


def complete_basis(rows: Matrix, n: int, p: int) -> list[tuple[int, ...]]:
    """Extend the independent ``rows`` to a basis of F_p^n with unit vectors."""
    basis = list(rows)
    r = len(basis)
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        if rank(tuple(basis) + (e,), p) > r:
            basis.append(e)
            r += 1
        if r == n:
            break
    return basis
