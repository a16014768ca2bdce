"""Reproducible instance generators for the conversion pipeline.

Every generator returns :class:`RightWitnessInstance`, whose constructor
re-checks A^n = A^(n+1) X, so a bad construction fails here and not three
layers deeper.
"""

from __future__ import annotations

import random
from typing import List

from .errors import InternalViolation
from .matrices import SquareMatrix
from .rings import Integers, RingSpec
from .witnesses import RightWitnessInstance
from . import lab


def _unimodular_pair(dim: int, rng: random.Random, steps: int):
    """A unimodular integer matrix together with its exact inverse, built
    from shear operations so the inverse is tracked instead of computed."""
    mat = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    inv = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    if dim == 1:
        return mat, inv
    for _ in range(steps):
        i = rng.randrange(dim)
        j = rng.randrange(dim)
        if i == j:
            continue
        c = rng.choice((-2, -1, 1, 2))
        for col in range(dim):
            mat[j][col] += c * mat[i][col]
        for row in range(dim):
            inv[row][i] -= c * inv[row][j]
    check = [[sum(mat[i][k] * inv[k][j] for k in range(dim)) for j in range(dim)]
             for i in range(dim)]
    if check != [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]:
        raise InternalViolation("tracked inverse drifted from the product")
    return mat, inv


def integer_instance(nil_dim: int, unit_dim: int, seed: int) -> RightWitnessInstance:
    """Conjugated block instance over the integers.

    The core is D = N (+) U with N strictly upper triangular of size
    nil_dim and U unimodular of size unit_dim; then A = P D P^-1 and
    X = P (0 (+) U^-1) P^-1 for a random unimodular P.  Since N^n = 0 at
    n = nil_dim, D^n = 0 (+) U^n = D^(n+1) (0 (+) U^-1), and conjugation
    carries the witness along.
    """
    if nil_dim < 0 or unit_dim < 0 or nil_dim + unit_dim < 1:
        raise ValueError("block sizes must be nonnegative with positive total")
    rng = random.Random(seed)
    dim = nil_dim + unit_dim
    core = [[0] * dim for _ in range(dim)]
    for i in range(nil_dim):
        for j in range(i + 1, nil_dim):
            core[i][j] = rng.randrange(-3, 4)
    unit, unit_inv = _unimodular_pair(unit_dim, rng, steps=2 * unit_dim) \
        if unit_dim else ([], [])
    for i in range(unit_dim):
        for j in range(unit_dim):
            core[nil_dim + i][nil_dim + j] = unit[i][j]
    core_x = [[0] * dim for _ in range(dim)]
    for i in range(unit_dim):
        for j in range(unit_dim):
            core_x[nil_dim + i][nil_dim + j] = unit_inv[i][j]
    basis, basis_inv = _unimodular_pair(dim, rng, steps=3 * dim)

    spec = Integers()
    p = SquareMatrix.from_rows(spec, basis)
    p_inv = SquareMatrix.from_rows(spec, basis_inv)
    a = p * SquareMatrix.from_rows(spec, core) * p_inv
    x = p * SquareMatrix.from_rows(spec, core_x) * p_inv
    return RightWitnessInstance(a, max(nil_dim, 1), x)


def sampled_finite_instance(spec: RingSpec, dim: int, seed: int) -> RightWitnessInstance:
    """Random matrix over a finite ring paired with its first witness at
    the least exponent admitting one.  The power-sequence index always
    admits a right witness over a finite ring, so this terminates."""
    rng = random.Random(seed)
    mat = SquareMatrix.from_rows(spec, [
        [spec.sample_payload(rng, None) for _ in range(dim)] for _ in range(dim)])
    index, _cycle = lab.power_sequence_index(mat)
    for n in range(1, index + 1):
        x = lab.right_witness_search(mat, n)
        if x is not None:
            return RightWitnessInstance(mat, n, x)
    raise InternalViolation("no witness up to the power-sequence index")


def edge_instances(spec: RingSpec, dim: int = 2) -> List[RightWitnessInstance]:
    """Degenerate but legal inputs: zero, identity, an idempotent, and a
    nilpotent Jordan block witnessed by the zero matrix."""
    zero = SquareMatrix.zeros(spec, dim)
    ident = SquareMatrix.identity(spec, dim)
    out = [
        RightWitnessInstance(zero, 1, zero),
        RightWitnessInstance(ident, 1, ident),
    ]
    idem_rows = [[1 if i == j == 0 else 0 for j in range(dim)] for i in range(dim)]
    idem = SquareMatrix.from_rows(spec, idem_rows)
    out.append(RightWitnessInstance(idem, 1, idem))
    if dim >= 2:
        jordan_rows = [[1 if j == i + 1 else 0 for j in range(dim)]
                       for i in range(dim)]
        jordan = SquareMatrix.from_rows(spec, jordan_rows)
        out.append(RightWitnessInstance(jordan, dim, zero))
    return out
