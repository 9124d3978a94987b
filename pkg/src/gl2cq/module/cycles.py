"""
Canonical cycle partitions pairing N "z" factors with N "w" factors.

A partition is a set of cycles z_i1 w_j1 z_i2 w_j2 ... where the z-indices
and the w-indices of all cycles each run over 0..N-1 exactly once. In
canonical form every cycle starts at its smallest z-index and cycles are
ordered by that starting index, so each equivalence class under cyclic
rotation and reordering of cycles appears exactly once.
"""

from __future__ import annotations

import itertools
import typing

from dataclasses import dataclass


Cycle = tuple[tuple[int, int], ...]
"""Consecutive (z-index, w-index) pairs around one cycle."""


@dataclass(frozen=True)
class CyclePartition:
    cycles: tuple[Cycle, ...]

    def __post_init__(self):
        z_indices = sorted(z for cycle in self.cycles for z, _ in cycle)
        w_indices = sorted(w for cycle in self.cycles for _, w in cycle)
        if z_indices != list(range(len(z_indices))) or w_indices != z_indices:
            raise ValueError(f"Cycles {self.cycles} do not partition the z and w indices.")
        for cycle in self.cycles:
            if not cycle or cycle[0][0] != min(z for z, _ in cycle):
                raise ValueError(f"Cycle {cycle} does not start at its minimal z-index.")
        starts = [cycle[0][0] for cycle in self.cycles]
        if starts != sorted(starts):
            raise ValueError("Cycles must be ordered by their starting z-index.")

    @property
    def size(self) -> int:
        return sum(len(cycle) for cycle in self.cycles)

    @property
    def gamma(self) -> tuple[int, ...]:
        """Cycle lengths (counted in z-w pairs), in decreasing order."""
        return tuple(sorted((len(cycle) for cycle in self.cycles), reverse=True))

    def __str__(self):
        return " ".join("(" + " ".join(f"z{z} w{w}" for z, w in cycle) + ")" for cycle in self.cycles)


def from_permutations(phi: typing.Sequence[int], rho: typing.Sequence[int]) -> CyclePartition:
    """
    Build the canonical partition whose cycles follow ``rho`` on the z-indices,
    pairing each z_i with w_phi(i).
    """
    visited = [False] * len(rho)
    cycles = []
    for start in range(len(rho)):
        if visited[start]:
            continue
        cycle = []
        current = start
        while not visited[current]:
            visited[current] = True
            cycle.append((current, phi[current]))
            current = rho[current]
        cycles.append(tuple(cycle))
    return CyclePartition(tuple(cycles))


def canonical_cycle_partitions(size: int) -> typing.Iterator[CyclePartition]:
    """Every canonical partition of ``size`` z-w pairs; there are (size!)^2 of them."""
    if size < 0:
        raise ValueError("The partition size must be nonnegative.")
    for phi in itertools.permutations(range(size)):
        for rho in itertools.permutations(range(size)):
            yield from_permutations(phi, rho)


def partitions_of(size: int) -> list[tuple[int, ...]]:
    """Integer partitions of ``size`` in decreasing parts, largest first."""
    def _parts(remaining: int, largest: int):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in _parts(remaining - part, part):
                yield (part,) + rest

    return list(_parts(size, size))
