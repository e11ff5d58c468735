"""
Finite Coxeter groups through the reflection representation, with exact
arithmetic in Z[sqrt2, sqrt3].

Braid relations with labels in {2, 3, 4, 6} only need 2cos(pi/m) in
{0, 1, sqrt2, sqrt3}, so matrix entries live in the ring spanned by
{1, sqrt2, sqrt3, sqrt6} over the integers.  Numbers are 4-tuples of ints;
no floats anywhere, so "the orbit closed" is a theorem about the group, not
about rounding.  The representation is faithful, hence the breadth-first
closure terminates exactly when the Coxeter group is finite.
"""

from __future__ import annotations

from .errors import ValidationError
from .germs import FiniteGroup

Quad = tuple[int, int, int, int]

QZERO: Quad = (0, 0, 0, 0)
QONE: Quad = (1, 0, 0, 0)

# 2cos(pi/m) for the supported labels
TWO_COS: dict[int, Quad] = {
    2: (0, 0, 0, 0),
    3: (1, 0, 0, 0),
    4: (0, 1, 0, 0),
    6: (0, 0, 1, 0),
}


def qadd(x: Quad, y: Quad) -> Quad:
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3])


def qneg(x: Quad) -> Quad:
    return (-x[0], -x[1], -x[2], -x[3])


def qmul(x: Quad, y: Quad) -> Quad:
    p, q, r, s = x
    a, b, c, d = y
    return (
        p * a + 2 * q * b + 3 * r * c + 6 * s * d,
        p * b + q * a + 3 * (r * d + s * c),
        p * c + r * a + 2 * (q * d + s * b),
        p * d + s * a + q * c + r * b,
    )


Matrix = tuple[tuple[Quad, ...], ...]


def check_coxeter_matrix(m) -> tuple[tuple[int | None, ...], ...]:
    """
    Normalize and validate: square, symmetric, 1 on the diagonal, labels in
    {2, 3, 4, 6} or infinity off it.  Infinity may be written None or 0.
    """
    rows = tuple(tuple(row) for row in m)
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise ValidationError("Coxeter matrix must be square and nonempty")
    norm: list[tuple[int | None, ...]] = []
    for i, row in enumerate(rows):
        out = []
        for j, e in enumerate(row):
            if e == 0:
                e = None
            if i == j:
                if e != 1:
                    raise ValidationError("Coxeter matrix diagonal must be 1")
            elif e is not None and e not in TWO_COS:
                raise ValidationError(
                    f"unsupported Coxeter label {e!r}; use 2, 3, 4, 6 or infinity"
                )
            out.append(e)
        norm.append(tuple(out))
    for i in range(n):
        for j in range(n):
            if norm[i][j] != norm[j][i]:
                raise ValidationError("Coxeter matrix must be symmetric")
    return tuple(norm)


def reflection_matrices(matrix) -> list[Matrix]:
    """
    Generator matrices of the reflection representation: sigma_i fixes every
    basis vector except that it maps alpha_j to alpha_j - A[i][j] alpha_i,
    where A[i][i] = 2 and A[i][j] = -2cos(pi/m_ij).
    """
    norm = check_coxeter_matrix(matrix)
    n = len(norm)
    for i in range(n):
        for j in range(n):
            if i != j and norm[i][j] is None:
                raise ValidationError("infinite label: no reflection matrices built")
    # entry (k, j) is the coefficient of alpha_k in sigma_i(alpha_j):
    # delta_kj - A[i][j] delta_ki, i.e. the identity except in row i,
    # where (i, i) = -1 and (i, j) = 2cos(pi/m_ij).
    mats: list[Matrix] = []
    for i in range(n):
        rows = []
        for k in range(n):
            if k != i:
                rows.append(
                    tuple(QONE if k == j else QZERO for j in range(n))
                )
                continue
            rows.append(
                tuple(
                    (-1, 0, 0, 0) if j == i else TWO_COS[norm[i][j]]
                    for j in range(n)
                )
            )
        mats.append(tuple(rows))
    return mats


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = QZERO
            for k in range(n):
                acc = qadd(acc, qmul(a[i][k], b[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def identity_matrix(n: int) -> Matrix:
    return tuple(
        tuple(QONE if i == j else QZERO for j in range(n)) for i in range(n)
    )


def enumerate_coxeter(matrix, bound: int, letters: str = "abcdefgh"):
    """
    Breadth-first closure of the reflection representation.  Returns
    (FiniteGroup, lengths, names) in shortlex discovery order, or None when
    the group does not close within the bound (infinite or just too big).

    BFS depth is the Coxeter length, and first discovery along generators
    taken in alphabetical order yields the shortlex minimal word.
    """
    gens = reflection_matrices(matrix)
    n = len(gens)
    ident = identity_matrix(n)
    index: dict[Matrix, int] = {ident: 0}
    elements: list[Matrix] = [ident]
    lengths: list[int] = [0]
    names: list[str] = ["1"]
    frontier = [ident]
    while frontier:
        nxt: list[Matrix] = []
        for mat in frontier:
            base = names[index[mat]]
            depth = lengths[index[mat]]
            for i, g in enumerate(gens):
                prod = mat_mul(mat, g)
                if prod in index:
                    continue
                index[prod] = len(elements)
                elements.append(prod)
                lengths.append(depth + 1)
                names.append((base if base != "1" else "") + letters[i])
                nxt.append(prod)
                if len(elements) > bound:
                    return None
        frontier = nxt
    size = len(elements)
    mult = [
        [index[mat_mul(elements[i], elements[j])] for j in range(size)]
        for i in range(size)
    ]
    group = FiniteGroup(
        tuple(tuple(row) for row in mult), tuple(names), identity=0
    )
    return group, tuple(lengths), tuple(names)


__all__ = [
    "Quad",
    "QZERO",
    "QONE",
    "TWO_COS",
    "qadd",
    "qneg",
    "qmul",
    "check_coxeter_matrix",
    "reflection_matrices",
    "mat_mul",
    "identity_matrix",
    "enumerate_coxeter",
]
