"""Exact linear algebra over prime fields (numpy) and over small finite fields.

Two layers live here:

* ``fp_*`` functions act on ``numpy`` integer arrays whose entries are
  residues mod a prime ``p``.  These carry the heavy lifting: every
  semilinear problem in the package is eventually written as an
  F_p-linear system in coordinates.
* ``mat_*`` functions act on lists of lists of field elements (anything
  with ``+ - * inverse() is_zero()``) and are meant for the small matrices
  that define Frobenius modules.
"""

from __future__ import annotations

import numpy as np

# --------------------------------------------------------------------------
# F_p arrays
# --------------------------------------------------------------------------


def fp_array(rows, p: int) -> np.ndarray:
    return np.asarray(rows, dtype=np.int64) % p


def fp_rref(a: np.ndarray, p: int):
    """Reduced row echelon form of ``a`` over F_p.

    Returns ``(r, pivots)`` where ``pivots`` lists the pivot columns.
    """
    r = np.array(a, dtype=np.int64) % p
    rows, cols = r.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = pow(int(r[row, col]), -1, p)
        if inv != 1:
            r[row] = (r[row] * inv) % p
        col_vals = r[:, col].copy()
        col_vals[row] = 0
        hit = np.nonzero(col_vals)[0]
        if hit.size:
            r[hit] = (r[hit] - np.outer(col_vals[hit], r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def fp_rank(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(fp_rref(a, p)[1])


def fp_nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel of ``a``, as the columns of the result."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = fp_rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = (-r[i, f]) % p
    return basis


def fp_solve(a: np.ndarray, b: np.ndarray, p: int):
    """One solution ``x`` of ``a @ x = b`` over F_p, or ``None``.

    ``b`` may be a vector or a matrix (solved column by column).
    """
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    rows, cols = a.shape
    aug = np.concatenate([a, b], axis=1)
    r, pivots = fp_rref(aug, p)
    if any(pc >= cols for pc in pivots):
        return None
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols:]
    return x[:, 0] if vec else x


def fp_inv(a: np.ndarray, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64) % p
    n = a.shape[0]
    r, pivots = fp_rref(np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1), p)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular over F_%d" % p)
    return r[:, n:]


def fp_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def fp_in_span(basis: np.ndarray, v: np.ndarray, p: int) -> bool:
    """Is the vector ``v`` in the column span of ``basis``?"""
    if basis.shape[1] == 0:
        return not np.any(np.asarray(v) % p)
    return fp_rank(np.concatenate([basis, np.asarray(v)[:, None]], axis=1), p) == fp_rank(basis, p)


def fp_matrix_order(a: np.ndarray, p: int, bound: int | None = None) -> int:
    """Multiplicative order of an invertible matrix over F_p."""
    a = np.asarray(a, dtype=np.int64) % p
    n = a.shape[0]
    if n == 0:
        return 1
    ident = np.eye(n, dtype=np.int64)
    if bound is None:
        bound = p ** n
    cur = a.copy()
    for k in range(1, bound + 1):
        if np.array_equal(cur, ident):
            return k
        cur = (cur @ a) % p
    raise ValueError("matrix is not invertible or order exceeds %d" % bound)


def fp_enumerate_span(basis: np.ndarray, p: int):
    """All F_p-combinations of the columns of ``basis`` (as rows)."""
    dim = basis.shape[1]
    if dim == 0:
        return np.zeros((1, basis.shape[0]), dtype=np.int64)
    grids = np.stack(np.meshgrid(*[np.arange(p)] * dim, indexing="ij"), axis=-1).reshape(-1, dim)
    return (grids @ basis.T) % p


# --------------------------------------------------------------------------
# matrices of field elements
# --------------------------------------------------------------------------


def mat_identity(field, n):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def mat_zero(field, rows, cols):
    return [[field.zero] * cols for _ in range(rows)]


def mat_mul(a, b, field):
    if not a or not b:
        cols = len(b[0]) if b else 0
        return [[field.zero] * cols for _ in range(len(a))]
    n, m, k = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = field.zero
            for t in range(m):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a, v, field):
    return [sum((a[i][j] * v[j] for j in range(len(v))), field.zero) for i in range(len(a))]


def mat_map(a, fn):
    return [[fn(x) for x in row] for row in a]


def mat_transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_rref(a, field):
    """Row-reduce a matrix of field elements; returns ``(rows, pivots)``."""
    r = [list(row) for row in a]
    rows = len(r)
    cols = len(r[0]) if rows else 0
    pivots = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        piv = next((i for i in range(row, rows) if not r[i][col].is_zero()), None)
        if piv is None:
            continue
        r[row], r[piv] = r[piv], r[row]
        inv = r[row][col].inverse()
        r[row] = [x * inv for x in r[row]]
        for i in range(rows):
            if i != row and not r[i][col].is_zero():
                c = r[i][col]
                r[i] = [x - c * y for x, y in zip(r[i], r[row])]
        pivots.append(col)
        row += 1
    return r, pivots


def mat_rank(a, field) -> int:
    if not a:
        return 0
    return len(mat_rref(a, field)[1])


def mat_inverse(a, field):
    n = len(a)
    ident = mat_identity(field, n)
    r, pivots = mat_rref([list(row) + ident[i] for i, row in enumerate(a)], field)
    if [c for c in pivots if c < n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in r]


def mat_is_invertible(a, field) -> bool:
    return mat_rank(a, field) == len(a)


def mat_nullspace(a, field, cols=None):
    """Kernel basis of ``a`` as a list of column vectors."""
    if not a:
        cols = cols or 0
        return [[field.one if i == j else field.zero for i in range(cols)] for j in range(cols)]
    cols = len(a[0])
    r, pivots = mat_rref(a, field)
    pset = set(pivots)
    basis = []
    for f in range(cols):
        if f in pset:
            continue
        v = [field.zero] * cols
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][f]
        basis.append(v)
    return basis


def mat_column_basis(cols, field):
    """Greedy maximal independent subset of a list of column vectors."""
    chosen = []
    for c in cols:
        trial = chosen + [c]
        if mat_rank(mat_transpose(trial), field) == len(trial):
            chosen = trial
    return chosen


def mat_solve(a, b, field):
    """Solve ``a @ x = b`` for a matrix ``b``; returns ``x`` or ``None``."""
    rows = len(a)
    if rows == 0:
        return None
    n = len(a[0])
    k = len(b[0])
    r, pivots = mat_rref([list(a[i]) + list(b[i]) for i in range(rows)], field)
    if any(pc >= n for pc in pivots):
        return None
    x = mat_zero(field, n, k)
    for i, pc in enumerate(pivots):
        x[pc] = r[i][n:]
    return x
