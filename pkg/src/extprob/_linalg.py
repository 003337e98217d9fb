"""Small exact linear-algebra routines over the rationals.

Vectors are tuples of Fractions; matrices are lists of row tuples.  Only the
handful of operations the equivalence machinery needs: span membership with
coefficients, and null-space bases.
"""

from __future__ import annotations

from fractions import Fraction


def solve_combination(rows, target):
    """Coefficients c with sum(c[i] * rows[i]) == target, or None.

    ``rows`` may be linearly dependent; any exact solution is returned.
    """
    if not rows:
        return [] if all(x == 0 for x in target) else None
    n = len(rows[0])
    m = len(rows)
    # Augmented system A^T c = target, A^T is n x m.
    aug = [[rows[j][i] for j in range(m)] + [target[i]] for i in range(n)]
    piv_of_col: dict[int, int] = {}
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, n) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        factor = aug[r][col]
        aug[r] = [x / factor for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_of_col[col] = r
        r += 1
        if r == n:
            break
    for i in range(n):
        if all(aug[i][j] == 0 for j in range(m)) and aug[i][m] != 0:
            return None
    coeffs = [Fraction(0)] * m
    for col, row in piv_of_col.items():
        coeffs[col] = aug[row][m]
    return coeffs


def in_span(rows, target) -> bool:
    return solve_combination(rows, target) is not None


def nullspace_basis(rows, n):
    """Basis of {z in Q^n : row . z == 0 for every row}."""
    mat = [list(row) for row in rows if any(x != 0 for x in row)]
    if not mat:
        return [
            tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))
            for i in range(n)
        ]
    r = 0
    piv_cols = []
    for col in range(n):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        factor = mat[r][col]
        mat[r] = [x / factor for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        piv_cols.append(col)
        r += 1
        if r == len(mat):
            break
    free_cols = [c for c in range(n) if c not in piv_cols]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for row_idx, pc in enumerate(piv_cols):
            vec[pc] = -mat[row_idx][fc]
        basis.append(tuple(vec))
    return basis
