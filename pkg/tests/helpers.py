"""Independent oracles for cross-checking the fast implementations.

Everything here is deliberately naive: cofactor expansion instead of the
division-free recurrence, full matrix scans instead of the per-column
decomposition.  Slow and obviously correct is the point.
"""

from itertools import product

from piregular import SquareMatrix, enumerate_elements, sample_element


def cofactor_det(mat: SquareMatrix):
    """Laplace expansion along the first row."""
    return _cofactor(mat.ring, [list(row) for row in mat.entries])


def _cofactor(ring, rows):
    size = len(rows)
    if size == 1:
        return rows[0][0]
    total = ring.zero()
    for j in range(size):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = rows[0][j] * _cofactor(ring, minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def all_matrices(spec, dim):
    """Every dim-by-dim matrix over a finite ring, row-major enumeration
    order (the tie-break order witness searches promise to honor)."""
    elements = list(enumerate_elements(spec))
    for flat in product(elements, repeat=dim * dim):
        yield SquareMatrix.from_rows(
            spec, [flat[i * dim:(i + 1) * dim] for i in range(dim)])


def naive_right_witness(mat: SquareMatrix, n: int):
    """First X in full-scan order with A^n = A^(n+1) X, or None."""
    lhs = mat ** n
    rhs = mat ** (n + 1)
    for candidate in all_matrices(mat.ring, mat.dim):
        if rhs * candidate == lhs:
            return candidate
    return None


def naive_left_witness(mat: SquareMatrix, n: int):
    lhs = mat ** n
    rhs = mat ** (n + 1)
    for candidate in all_matrices(mat.ring, mat.dim):
        if candidate * rhs == lhs:
            return candidate
    return None


def permutation_standard_identity(mats):
    """Textbook alternating sum over itertools.permutations with the sign
    computed by counting inversions."""
    from itertools import permutations

    ring = mats[0].ring
    dim = mats[0].dim
    total = SquareMatrix.zeros(ring, dim)
    for perm in permutations(range(len(mats))):
        inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
                         if perm[i] > perm[j])
        prod = mats[perm[0]]
        for index in perm[1:]:
            prod = prod * mats[index]
        total = total + prod if inversions % 2 == 0 else total - prod
    return total


def random_matrix(spec, dim, rng, bound=None):
    return SquareMatrix.from_rows(
        spec, [[sample_element(spec, rng, bound) for _ in range(dim)]
               for _ in range(dim)])
