"""Brute-force ground truth: full independence families and matroid equality."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matroid import Matroid, MatroidError, check_cap


class GroundSetMismatch(MatroidError):
    pass


@dataclass(frozen=True, eq=False)
class IndependenceFamily:
    """Every independent set of a matroid, as a table over subset bitmasks."""

    groundset: tuple
    table: np.ndarray

    def members(self) -> list[frozenset]:
        """Independent sets in canonical order (by size, then labels)."""
        out = []
        for mask in np.flatnonzero(self.table):
            mask = int(mask)
            out.append(frozenset(e for i, e in enumerate(self.groundset) if mask >> i & 1))
        return sorted(out, key=lambda s: (len(s), sorted(s)))

    def __contains__(self, X) -> bool:
        mask = 0
        for e in X:
            mask |= 1 << self.groundset.index(e)
        return bool(self.table[mask])

    def __len__(self):
        return int(self.table.sum())

    def __eq__(self, other):
        if not isinstance(other, IndependenceFamily):
            return NotImplemented
        return self.groundset == other.groundset and np.array_equal(self.table, other.table)

    @classmethod
    def from_sets(cls, groundset, sets) -> "IndependenceFamily":
        ground = tuple(sorted(groundset))
        index = {e: i for i, e in enumerate(ground)}
        table = np.zeros(1 << len(ground), dtype=bool)
        for X in sets:
            mask = 0
            for e in X:
                mask |= 1 << index[e]
            table[mask] = True
        return cls(ground, table)


def enumerate_family(M: Matroid, cap: int | None = None) -> IndependenceFamily:
    """Query every subset of the ground set."""
    check_cap(len(M.groundset), cap)
    return IndependenceFamily(M.groundset, M.independence_table(cap).copy())


def matroids_equal(M1: Matroid, M2: Matroid, cap: int | None = None) -> bool:
    """Pointwise equality of independence over all subsets."""
    if M1.groundset != M2.groundset:
        raise GroundSetMismatch(f"{M1.groundset} vs {M2.groundset}")
    return bool(np.array_equal(M1.independence_table(cap), M2.independence_table(cap)))
