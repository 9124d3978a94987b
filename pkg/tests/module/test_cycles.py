import math

import pytest

from gl2cq.module.cycles import CyclePartition, canonical_cycle_partitions, from_permutations, partitions_of


@pytest.mark.parametrize("size", [0, 1, 2, 3])
def test_partition_count(size):
    partitions = list(canonical_cycle_partitions(size))

    assert (ret := len(partitions)) == math.factorial(size) ** 2, ret
    assert (ret := len(set(partitions))) == len(partitions), ret
    assert all(p.size == size for p in partitions)


def test_from_permutations():
    partition = from_permutations((1, 0, 2), (2, 0, 1))

    assert (ret := partition.cycles) == (((0, 1), (2, 2), (1, 0)),), ret
    assert (ret := partition.gamma) == (3,), ret
    assert (ret := str(partition)) == "(z0 w1 z2 w2 z1 w0)", ret


def test_identity_permutations_give_fixed_points():
    partition = from_permutations((0, 1), (0, 1))

    assert (ret := partition.cycles) == (((0, 0),), ((1, 1),)), ret
    assert (ret := partition.gamma) == (1, 1), ret


def test_gamma_distribution():
    gammas = [p.gamma for p in canonical_cycle_partitions(3)]

    # 3! choices of w-pairing for each cycle type of rho.
    assert (ret := gammas.count((1, 1, 1))) == 6, ret
    assert (ret := gammas.count((2, 1))) == 18, ret
    assert (ret := gammas.count((3,))) == 12, ret


@pytest.mark.parametrize(
    "cycles", [
        (((0, 0),), ((0, 1),)),
        (((1, 0), (0, 1)),),
        (((1, 1),), ((0, 0),)),
        (((0, 0), (1, 0)),),
    ])
def test_invalid_partitions(cycles):
    with pytest.raises(ValueError):
        CyclePartition(cycles)


@pytest.mark.parametrize(
    "size,expected", [
        (0, [()]),
        (3, [(3,), (2, 1), (1, 1, 1)]),
        (4, [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]),
    ])
def test_partitions_of(size, expected):
    assert (ret := partitions_of(size)) == expected, ret
