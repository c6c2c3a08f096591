"""
Algèbre linéaire exacte sur un corps (Fraction ou CycloNumber).

Forme échelonnée réduite, noyau et intersection de sous-espaces: c'est la
forme canonique des cercles fixes et le test d'intersection des arêtes du
lieu singulier.
"""

from typing import List, Sequence, Tuple

Matrix = List[List[object]]


def _is_zero(x) -> bool:
    return x == 0


def rref(rows: Sequence[Sequence[object]]) -> Tuple[Matrix, List[int]]:
    """
    Forme échelonnée réduite par lignes.

    Returns:
        (matrice réduite sans lignes nulles, colonnes pivots)
    """
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    n_cols = len(mat[0])
    pivots: List[int] = []
    row = 0
    for col in range(n_cols):
        pivot_row = None
        for i in range(row, len(mat)):
            if not _is_zero(mat[i][col]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[row], mat[pivot_row] = mat[pivot_row], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [x * inv for x in mat[row]]
        for i in range(len(mat)):
            if i != row and not _is_zero(mat[i][col]):
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    return mat[:row], pivots


def rank(rows: Sequence[Sequence[object]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[object]], zero, one) -> Matrix:
    """
    Base canonique (échelonnée réduite) du noyau de la matrice.

    Args:
        rows: Matrice m×n
        zero, one: Éléments neutres du corps des coefficients
    """
    reduced, pivots = rref(rows)
    n_cols = len(rows[0])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [zero] * n_cols
        vec[f] = one
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        basis.append(vec)
    if not basis:
        return []
    return rref(basis)[0]


def intersect_subspaces(a: Matrix, b: Matrix, zero, one) -> Matrix:
    """
    Intersection de deux sous-espaces donnés par des bases (lignes).

    Les combinaisons Σ x_i a_i = Σ y_j b_j forment le noyau de [aᵀ | −bᵀ];
    le résultat est la base canonique de l'intersection.
    """
    if not a or not b:
        return []
    dim = len(a[0])
    columns = [list(v) for v in a] + [[-x for x in v] for v in b]
    system = [[columns[c][i] for c in range(len(columns))] for i in range(dim)]
    kernel = nullspace(system, zero, one)
    vectors = []
    for coeffs in kernel:
        vec = [zero] * dim
        for x, v in zip(coeffs[: len(a)], a):
            if not _is_zero(x):
                vec = [s + x * t for s, t in zip(vec, v)]
        vectors.append(vec)
    if not vectors:
        return []
    return rref(vectors)[0]


def coordinates_in_basis(vector: Sequence[object], pivots: List[int]):
    """Coordonnées d'un vecteur d'un sous-espace donné sous forme réduite."""
    return [vector[p] for p in pivots]
