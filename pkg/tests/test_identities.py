import random
import time

import pytest

from piregular import (
    DegreeTooLarge,
    Integers,
    IntegersMod,
    SpecMismatch,
    SquareMatrix,
    check_identity_on_samples,
    matrix_units,
    search_nonvanishing,
    standard_identity,
)

from helpers import permutation_standard_identity, random_matrix

Z = Integers()
Z4 = IntegersMod(4)
Z6 = IntegersMod(6)


def units(spec, dim):
    return matrix_units(spec, dim)


def test_s2_is_the_commutator():
    rng = random.Random(1)
    for _ in range(20):
        a = random_matrix(Z, 2, rng, 9)
        b = random_matrix(Z, 2, rng, 9)
        assert standard_identity([a, b]) == a * b - b * a


def test_s2_vanishes_on_scalars():
    rng = random.Random(2)
    for _ in range(20):
        a = random_matrix(Z, 1, rng, 9)
        b = random_matrix(Z, 1, rng, 9)
        assert standard_identity([a, b]).is_zero


def test_s3_on_matrix_units_is_nonzero():
    e11, e12, e21, _ = units(Z, 2)
    value = standard_identity([e11, e12, e21])
    expected = SquareMatrix.from_rows(Z, [[2, 0], [0, 1]])  # 2 E11 + E22
    assert value == expected


def test_s4_on_matrix_units_vanishes():
    assert standard_identity(units(Z, 2)).is_zero


def test_matches_permutation_oracle():
    rng = random.Random(3)
    for degree in (2, 3, 4):
        for _ in range(10):
            mats = [random_matrix(Z6, 2, rng) for _ in range(degree)]
            assert standard_identity(mats) == permutation_standard_identity(mats)


def test_antisymmetry():
    rng = random.Random(4)
    for _ in range(15):
        mats = [random_matrix(Z, 2, rng, 5) for _ in range(4)]
        swapped = [mats[1], mats[0], mats[2], mats[3]]
        assert standard_identity(swapped) == -standard_identity(mats)


def test_repeated_argument_gives_zero():
    rng = random.Random(5)
    for _ in range(15):
        a = random_matrix(Z, 2, rng, 5)
        b = random_matrix(Z, 2, rng, 5)
        assert standard_identity([a, a, b]).is_zero
        assert standard_identity([a, b, a]).is_zero


def test_multilinearity():
    rng = random.Random(6)
    for _ in range(10):
        a, u, v, c = (random_matrix(Z, 2, rng, 5) for _ in range(4))
        left = standard_identity([a, u + v, c])
        assert left == standard_identity([a, u, c]) + standard_identity([a, v, c])


def test_amitsur_levitzki_sampled():
    rng = random.Random(7)
    for spec, bound in [(Z, 9), (Z6, None)]:
        for _ in range(40):
            mats = [random_matrix(spec, 2, rng, bound) for _ in range(4)]
            assert standard_identity(mats).is_zero
    for _ in range(5):
        mats = [random_matrix(Z4, 3, rng) for _ in range(6)]
        assert standard_identity(mats).is_zero


def test_degree_and_spec_guards():
    rng = random.Random(8)
    nine = [random_matrix(Z, 2, rng, 2) for _ in range(9)]
    with pytest.raises(DegreeTooLarge):
        standard_identity(nine)
    with pytest.raises(SpecMismatch):
        standard_identity([random_matrix(Z, 2, rng, 2), random_matrix(Z6, 2, rng)])
    with pytest.raises(DegreeTooLarge):
        standard_identity([])


def test_search_finds_s3_witness_quickly():
    started = time.perf_counter()
    found = search_nonvanishing(Z, 2, 3)
    elapsed = time.perf_counter() - started
    assert found is not None
    assert not standard_identity(found).is_zero
    e11, e12, e21, _ = units(Z, 2)
    assert found == (e11, e12, e21)
    assert elapsed < 1.0


def test_search_confirms_vanishing_degrees():
    assert search_nonvanishing(Z, 1, 2) is None
    assert search_nonvanishing(Z, 2, 4) is None


def test_sampled_report_is_deterministic_and_honest():
    ok = check_identity_on_samples(Z6, 2, 4, samples=60, seed=5)
    assert ok.all_vanish and ok.witness is None
    again = check_identity_on_samples(Z6, 2, 4, samples=60, seed=5)
    assert ok.hash() == again.hash()

    sharp = check_identity_on_samples(Z, 2, 3, samples=60, seed=5, bound=9)
    assert not sharp.all_vanish
    assert sharp.witness is not None
    assert not standard_identity(sharp.witness).is_zero
    assert sharp.hash() != ok.hash()


def test_report_json_shape():
    report = check_identity_on_samples(Z6, 2, 4, samples=5, seed=1)
    payload = report.to_json_payload()
    assert payload["kind"] == "identity-report"
    assert payload["witness"] is None
    assert payload["ring"] == "zmod:6"
