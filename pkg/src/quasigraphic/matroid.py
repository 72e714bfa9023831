"""Matroids as independence oracles.

A :class:`Matroid` is a sorted ground set plus an independence test on
bitmasks (bit ``i`` is ``groundset[i]``).  Everything else, rank,
closure, circuits, connectivity, is derived here.  Small ground sets get
a cached independence table and a rank table built from it; operations
that must look at every subset refuse ground sets above the enumeration
cap.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

import numpy as np

from .graph import MultiGraph

#: Largest ground set for which full subset enumeration is allowed.
ENUMERATION_CAP = 20
# Below this size rank queries go through a cached rank table.
_TABLE_LIMIT = 14


class MatroidError(ValueError):
    pass


class UnknownElementError(MatroidError, KeyError):
    pass


class EnumerationCapError(MatroidError):
    pass


def popcount_table(n: int) -> np.ndarray:
    out = np.zeros(1 << n, dtype=np.int16)
    for i in range(n):
        out[1 << i : 1 << (i + 1)] = out[: 1 << i] + 1
    return out


def superset_max(values: np.ndarray, n: int) -> np.ndarray:
    """``out[X] = max(values[Y] for Y subset of X)``, in ``O(n 2**n)``."""
    out = values.copy()
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return out


def check_cap(n: int, cap: int | None = None) -> None:
    limit = ENUMERATION_CAP if cap is None else cap
    if n > limit:
        raise EnumerationCapError(f"ground set of {n} elements exceeds the enumeration cap {limit}")


class Matroid:
    """Base class.  Subclasses implement :meth:`_indep` on bitmasks."""

    def __init__(self, groundset: Iterable[str]):
        labels = tuple(sorted(set(groundset)))
        self.groundset = labels
        self._index = {e: i for i, e in enumerate(labels)}
        self.full_mask = (1 << len(labels)) - 1
        self._table = None
        self._rank_table = None

    def _indep(self, mask: int) -> bool:
        raise NotImplementedError

    def __len__(self):
        return len(self.groundset)

    def mask(self, X: Iterable[str]) -> int:
        out = 0
        for e in X:
            try:
                out |= 1 << self._index[e]
            except KeyError:
                raise UnknownElementError(f"unknown element {e!r}") from None
        return out

    def labels(self, mask: int) -> frozenset[str]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.groundset[i])
            mask >>= 1
            i += 1
        return frozenset(out)

    def is_independent(self, X: Iterable[str]) -> bool:
        mask = self.mask(X)
        if self._table is not None:
            return bool(self._table[mask])
        return self._indep(mask)

    # -- tables ---------------------------------------------------------
    def _compute_table(self) -> np.ndarray:
        n = len(self.groundset)
        return np.fromiter((self._indep(m) for m in range(1 << n)), dtype=bool, count=1 << n)

    def independence_table(self, cap: int | None = None) -> np.ndarray:
        """Boolean array over all ``2**n`` subsets (cached)."""
        if self._table is None:
            check_cap(len(self.groundset), cap)
            self._table = self._compute_table()
        return self._table

    def rank_table(self, cap: int | None = None) -> np.ndarray:
        if self._rank_table is None:
            n = len(self.groundset)
            indep = self.independence_table(cap)
            sizes = popcount_table(n)
            self._rank_table = superset_max(np.where(indep, sizes, 0).astype(np.int16), n)
        return self._rank_table

    def _rank_mask(self, mask: int) -> int:
        if self._rank_table is not None or len(self.groundset) <= _TABLE_LIMIT:
            return int(self.rank_table()[mask])
        # greedy: grow an independent subset one element at a time
        basis = 0
        i = 0
        m = mask
        while m:
            if m & 1 and self._indep(basis | (1 << i)):
                basis |= 1 << i
            m >>= 1
            i += 1
        return bin(basis).count("1")

    def _closure_mask(self, mask: int) -> int:
        r = self._rank_mask(mask)
        out = mask
        for i in range(len(self.groundset)):
            bit = 1 << i
            if not mask & bit and self._rank_mask(mask | bit) == r:
                out |= bit
        return out

    @property
    def rank_of_matroid(self) -> int:
        return self._rank_mask(self.full_mask)

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(self.groundset)})"


class ExplicitMatroid(Matroid):
    """Matroid given by its list of bases."""

    def __init__(self, groundset: Iterable[str], bases: Iterable[Iterable[str]]):
        super().__init__(groundset)
        masks = sorted({self.mask(B) for B in bases})
        if not masks:
            raise MatroidError("a matroid has at least one basis")
        sizes = {bin(b).count("1") for b in masks}
        if len(sizes) != 1:
            raise MatroidError("bases must be equicardinal")
        self._bases = masks

    @property
    def bases(self) -> list[frozenset[str]]:
        return [self.labels(b) for b in self._bases]

    def _indep(self, mask: int) -> bool:
        return any(mask & b == mask for b in self._bases)


class UniformMatroid(Matroid):
    def __init__(self, r: int, groundset: Iterable[str] | int):
        if isinstance(groundset, int):
            groundset = [f"e{i}" for i in range(groundset)]
        super().__init__(groundset)
        if not 0 <= r <= len(self.groundset):
            raise MatroidError(f"U_{{{r},{len(self.groundset)}}} is not a matroid")
        self.r = r

    def _indep(self, mask: int) -> bool:
        return bin(mask).count("1") <= self.r


class GraphicMatroid(Matroid):
    """Cycle matroid ``M(G)``: independent sets are edge sets of forests."""

    def __init__(self, graph: MultiGraph):
        super().__init__(graph.edge_labels)
        self.graph = graph
        vidx = {v: i for i, v in enumerate(graph.vertices)}
        self._ends = [(vidx[graph.edges[e][0]], vidx[graph.edges[e][1]]) for e in self.groundset]
        self._nv = len(graph.vertices)

    def _indep(self, mask: int) -> bool:
        parent = list(range(self._nv))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        i = 0
        while mask:
            if mask & 1:
                a, b = self._ends[i]
                ra, rb = find(a), find(b)
                if ra == rb:
                    return False
                parent[ra] = rb
            mask >>= 1
            i += 1
        return True

    def _compute_table(self) -> np.ndarray:
        if len(self.groundset) <= 20:
            return self.graph.tables().nullity == 0
        return super()._compute_table()


class MinorMatroid(Matroid):
    """``M \\ D / C`` through ``r_{M/C}(X) = r(X | C) - r(C)``."""

    def __init__(self, base: Matroid, delete: Iterable[str] = (), contract: Iterable[str] = ()):
        D, C = frozenset(delete), frozenset(contract)
        if D & C:
            raise MatroidError(f"deleted and contracted sets overlap in {sorted(D & C)}")
        base.mask(D | C)  # raises on unknown labels
        super().__init__(set(base.groundset) - D - C)
        self.base = base
        self.deleted = D
        self.contracted = C
        self._cmask = base.mask(C)
        self._crank = base._rank_mask(self._cmask)
        self._lift = [1 << base._index[e] for e in self.groundset]

    def _to_base(self, mask: int) -> int:
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out |= self._lift[i]
            mask >>= 1
            i += 1
        return out

    def _indep(self, mask: int) -> bool:
        k = bin(mask).count("1")
        return self.base._rank_mask(self._to_base(mask) | self._cmask) - self._crank == k

    def _compute_table(self) -> np.ndarray:
        if len(self.base.groundset) > _TABLE_LIMIT:
            return super()._compute_table()
        n = len(self.groundset)
        rt = self.base.rank_table()
        lifted = np.zeros(1 << n, dtype=np.int64)
        for i, bit in enumerate(self._lift):
            lifted[1 << i : 1 << (i + 1)] = lifted[: 1 << i] | bit
        return (rt[lifted | self._cmask] - self._crank) == popcount_table(n)


class ColoopExtension(Matroid):
    """``M`` with one extra element added as a coloop."""

    def __init__(self, base: Matroid, label: str):
        if label in base._index:
            raise MatroidError(f"label {label!r} already in the ground set")
        super().__init__(base.groundset + (label,))
        self.base = base
        self.coloop = label
        self._to = [1 << base._index[e] if e != label else 0 for e in self.groundset]

    def _indep(self, mask: int) -> bool:
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out |= self._to[i]
            mask >>= 1
            i += 1
        return self.base._indep(out)


# -- operations ------------------------------------------------------------

def rank(M: Matroid, X: Iterable[str]) -> int:
    return M._rank_mask(M.mask(X))


def closure(M: Matroid, X: Iterable[str]) -> frozenset[str]:
    return M.labels(M._closure_mask(M.mask(X)))


def _minimal_dependent(indep: np.ndarray, n: int) -> np.ndarray:
    idx = np.arange(1 << n)
    minimal = ~indep
    for i in range(n):
        bit = 1 << i
        has = (idx & bit) != 0
        minimal &= ~has | indep[idx ^ bit]
    return minimal


def circuit_masks(M: Matroid, cap: int | None = None) -> list[int]:
    n = len(M.groundset)
    check_cap(n, cap)
    minimal = _minimal_dependent(M.independence_table(cap), n)
    return [int(x) for x in np.flatnonzero(minimal)]


def _sort_sets(sets) -> list[frozenset[str]]:
    return sorted(sets, key=lambda s: (len(s), sorted(s)))


def circuits(M: Matroid, cap: int | None = None) -> list[frozenset[str]]:
    """All circuits, smallest first."""
    return _sort_sets(M.labels(c) for c in circuit_masks(M, cap))


def dual_independence_table(M: Matroid, cap: int | None = None) -> np.ndarray:
    n = len(M.groundset)
    rt = M.rank_table(cap)
    idx = np.arange(1 << n)
    return rt[M.full_mask ^ idx] == rt[M.full_mask]


def cocircuit_masks(M: Matroid, cap: int | None = None) -> list[int]:
    n = len(M.groundset)
    check_cap(n, cap)
    minimal = _minimal_dependent(dual_independence_table(M, cap), n)
    return [int(x) for x in np.flatnonzero(minimal)]


def cocircuits(M: Matroid, cap: int | None = None) -> list[frozenset[str]]:
    """Circuits of the dual, via ``r*(X) = |X| - r(E) + r(E - X)``."""
    return _sort_sets(M.labels(c) for c in cocircuit_masks(M, cap))


def connectivity(M: Matroid, X: Iterable[str]) -> int:
    """``lambda_M(X) = r(X) + r(E - X) - r(M)``."""
    mask = M.mask(X)
    return M._rank_mask(mask) + M._rank_mask(M.full_mask ^ mask) - M._rank_mask(M.full_mask)


lambda_ = connectivity


def is_connected_matroid(M: Matroid, cap: int | None = None) -> bool:
    return not _has_separation(M, 1, cap)


def _has_separation(M: Matroid, k: int, cap: int | None) -> bool:
    """Is there a partition ``(X, E-X)`` with both sides >= k and lambda < k?"""
    n = len(M.groundset)
    if n < 2 * k:
        return False
    check_cap(n, cap)
    rt = M.rank_table(cap)
    idx = np.arange(1 << n)
    comp = M.full_mask ^ idx
    lam = rt + rt[comp] - rt[M.full_mask]
    sizes = popcount_table(n)
    bad = (sizes >= k) & (sizes <= n - k) & (lam < k)
    return bool(bad.any())


def is_3_connected(M: Matroid, cap: int | None = None) -> bool:
    """Tutte 3-connectivity: no 1- or 2-separation."""
    return not (_has_separation(M, 1, cap) or _has_separation(M, 2, cap))


def minor(M: Matroid, delete: Iterable[str] = (), contract: Iterable[str] = ()) -> MinorMatroid:
    return MinorMatroid(M, delete, contract)


def restrict(M: Matroid, X: Iterable[str]) -> MinorMatroid:
    """``M | X``."""
    X = frozenset(X)
    return MinorMatroid(M, set(M.groundset) - X, ())


def add_coloop(M: Matroid, label: str) -> ColoopExtension:
    return ColoopExtension(M, label)


def is_loop(M: Matroid, e: str) -> bool:
    return not M.is_independent([e])


def is_coloop(M: Matroid, e: str) -> bool:
    mask = M.mask([e])
    return M._rank_mask(M.full_mask ^ mask) < M._rank_mask(M.full_mask)


def is_hyperplane(M: Matroid, X: Iterable[str]) -> bool:
    mask = M.mask(X)
    r = M._rank_mask(mask)
    return r == M._rank_mask(M.full_mask) - 1 and M._closure_mask(mask) == mask


def check_axioms(F, cap: int | None = None) -> bool:
    """Do the sets of ``F`` form the independent sets of a matroid?

    ``F`` is an :class:`~quasigraphic.oracle.IndependenceFamily` or a
    matroid oracle (which is enumerated first).  The test is: the empty set
    is in, the family is closed under subsets, and for ``I`` in the family
    and ``e`` outside, ``I + e`` holds at most one minimal non-member.
    """
    return axiom_failure(F, cap) is None


def axiom_failure(F, cap: int | None = None) -> str | None:
    """Return a description of the first failed axiom, or ``None``."""
    if isinstance(F, Matroid):
        n = len(F.groundset)
        check_cap(n, cap)
        table = F._compute_table()
    else:
        table = np.asarray(F.table, dtype=bool)
        n = len(F.groundset)
    if not table[0]:
        return "(a) empty set is not independent"
    idx = np.arange(1 << n)
    for i in range(n):
        bit = 1 << i
        bad = table & ((idx & bit) != 0) & ~table[idx ^ bit]
        if bad.any():
            X = int(np.flatnonzero(bad)[0])
            return f"(b) not closed under subsets at mask {X:#x}"
    # With (a) and (b) in place, two minimal non-members inside some I + e
    # both contain e, and their union minus e sits inside I.  So (c) fails
    # exactly when two circuits C1 != C2 share an e with (C1 | C2) - e
    # still independent.
    circs = [int(c) for c in np.flatnonzero(_minimal_dependent(table, n))]
    for c1, c2 in combinations(circs, 2):
        common = c1 & c2
        union = c1 | c2
        while common:
            bit = common & -common
            if table[union ^ bit]:
                return f"(c) two minimal dependent sets {c1:#x}, {c2:#x} in an independent set plus one element"
            common ^= bit
    return None


def vamos_matroid() -> ExplicitMatroid:
    """The Vamos matroid on ``a1 a2 b1 b2 c1 c2 d1 d2``.

    Rank 4; its non-spanning circuits are the five unions of two of the
    pairs ``{a}, {b}, {c}, {d}`` other than ``{c1, c2, d1, d2}``, and every
    other 4-set is a basis.
    """
    pairs = {k: (f"{k}1", f"{k}2") for k in "abcd"}
    ground = [x for p in pairs.values() for x in p]
    hyper = [frozenset(pairs[x] + pairs[y]) for x, y in combinations("abcd", 2) if {x, y} != {"c", "d"}]
    bases = [B for B in map(frozenset, combinations(ground, 4)) if B not in hyper]
    return ExplicitMatroid(ground, bases)
