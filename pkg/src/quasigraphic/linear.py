"""Dense matrices over GF(p), their column matroids, and the frame/lift split.

Only the primes 2, 3, 5 and 7 are supported; inverses come from a lookup
table.  Columns are labelled by matroid elements, rows by arbitrary
labels (vertex labels for the matrices built by
:func:`frame_or_lift_decomposition`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import MultiGraph
from .matroid import Matroid, MatroidError, closure, is_hyperplane

PRIMES = (2, 3, 5, 7)
_INVERSE = {p: [0] + [pow(a, p - 2, p) for a in range(1, p)] for p in PRIMES}


class FieldError(ValueError):
    pass


class DecompositionError(MatroidError):
    pass


def _check_prime(p: int) -> None:
    if p not in PRIMES:
        raise FieldError(f"p={p} is not one of the supported primes {PRIMES}")


class PrimeFieldMatrix:
    """A matrix over GF(p) with labelled rows and columns."""

    __slots__ = ("p", "rows", "cols", "data")

    def __init__(self, p: int, data, cols: Sequence[str], rows: Sequence[str] | None = None):
        _check_prime(p)
        arr = np.array(data, dtype=np.int64).reshape(-1, len(cols)) % p
        if rows is None:
            rows = [f"r{i}" for i in range(arr.shape[0])]
        if len(rows) != arr.shape[0]:
            raise ValueError("row labels do not match the data")
        if len(set(cols)) != len(cols):
            raise ValueError("column labels must be distinct")
        self.p = p
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        self.data = arr
        self.data.setflags(write=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def column(self, label: str) -> np.ndarray:
        return self.data[:, self.cols.index(label)]

    def select_columns(self, labels: Iterable[str]) -> "PrimeFieldMatrix":
        labels = list(labels)
        idx = [self.cols.index(c) for c in labels]
        return PrimeFieldMatrix(self.p, self.data[:, idx], labels, self.rows)

    def append_row(self, values, label: str | None = None) -> "PrimeFieldMatrix":
        label = label or f"r{len(self.rows)}"
        return PrimeFieldMatrix(self.p, np.vstack([self.data, np.asarray(values)[None, :]]), self.cols, self.rows + (label,))

    def __eq__(self, other):
        if not isinstance(other, PrimeFieldMatrix):
            return NotImplemented
        return (self.p, self.rows, self.cols) == (other.p, other.rows, other.cols) and np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"PrimeFieldMatrix(p={self.p}, rows={list(self.rows)}, cols={list(self.cols)},\n{self.data})"


def _rref(data: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = data.copy() % p
    inv = _INVERSE[p]
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * inv[int(A[r, c])]) % p
        for i in range(nrows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def reduce(A: PrimeFieldMatrix) -> PrimeFieldMatrix:
    """Reduced row echelon form with zero rows dropped (row space kept)."""
    R, _ = _rref(A.data, A.p)
    return PrimeFieldMatrix(A.p, R, A.cols)


def matrix_rank(A: PrimeFieldMatrix) -> int:
    return len(_rref(A.data, A.p)[1])


def in_rowspace(A: PrimeFieldMatrix, v) -> bool:
    v = np.asarray(v, dtype=np.int64) % A.p
    return matrix_rank(A.append_row(v)) == matrix_rank(A)


def rowspace_vector_with_support(A: PrimeFieldMatrix, S: Iterable[str]) -> np.ndarray | None:
    """A nonzero row-space vector vanishing outside ``S``, or ``None``.

    Columns outside ``S`` are eliminated first, so rows of the echelon form
    whose pivot lies in ``S`` span exactly the row-space vectors supported
    in ``S``.  The first such row is returned, scaled to a leading 1, in the
    column order of ``A``.
    """
    S = set(S)
    unknown = S - set(A.cols)
    if unknown:
        raise KeyError(f"unknown columns {sorted(unknown)}")
    outside = sorted(c for c in A.cols if c not in S)
    inside = sorted(S)
    order = [A.cols.index(c) for c in outside + inside]
    R, pivots = _rref(A.data[:, order], A.p)
    for row, piv in zip(R, pivots):
        if piv >= len(outside):
            out = np.zeros(len(A.cols), dtype=np.int64)
            out[order] = row
            return out
    return None


def _column_tuples(A: PrimeFieldMatrix, labels: Sequence[str]) -> list[list[int]]:
    return [[int(x) for x in A.column(c)] for c in labels]


def _insert(basis: list[tuple[int, list[int]]], v: list[int], p: int) -> tuple[int, list[int]] | None:
    """Reduce ``v`` against an echelon basis; return the new basis row or None."""
    v = list(v)
    for piv, b in basis:
        a = v[piv]
        if a:
            v = [(x - a * y) % p for x, y in zip(v, b)]
    for i, x in enumerate(v):
        if x:
            s = _INVERSE[p][x]
            return i, [(y * s) % p for y in v]
    return None


class LinearMatroid(Matroid):
    """Column matroid ``M(A)`` of a :class:`PrimeFieldMatrix`."""

    def __init__(self, matrix: PrimeFieldMatrix):
        super().__init__(matrix.cols)
        self.matrix = matrix
        self.p = matrix.p
        self._columns = _column_tuples(matrix, self.groundset)

    def _indep(self, mask: int) -> bool:
        basis: list = []
        i = 0
        while mask:
            if mask & 1:
                new = _insert(basis, self._columns[i], self.p)
                if new is None:
                    return False
                basis.append(new)
            mask >>= 1
            i += 1
        return True

    def _compute_table(self) -> np.ndarray:
        # Walk the independent sets only, extending an echelon basis.
        n = len(self.groundset)
        table = np.zeros(1 << n, dtype=bool)
        stack = [(0, 0, [])]
        while stack:
            start, mask, basis = stack.pop()
            table[mask] = True
            for j in range(start, n):
                new = _insert(basis, self._columns[j], self.p)
                if new is not None:
                    stack.append((j + 1, mask | (1 << j), basis + [new]))
        return table


def incidence_matrix(G: MultiGraph, p: int, gains: dict[str, int] | None = None) -> PrimeFieldMatrix:
    """Vertex-edge matrix of a gain graph over GF(p).

    A non-loop edge ``uw`` (``u < w``) gets ``1`` in row ``u`` and
    ``-gain`` in row ``w`` (gain 1 by default, giving the signed incidence
    matrix whose column matroid is ``M(G)``).  A loop-edge at ``v`` gets a
    single ``1`` in row ``v``.
    """
    gains = gains or {}
    rows = list(G.vertices)
    data = np.zeros((len(rows), len(G.edge_labels)), dtype=np.int64)
    for j, e in enumerate(G.edge_labels):
        u, w = G.edges[e]
        data[rows.index(u), j] = 1
        if u != w:
            data[rows.index(w), j] = (-gains.get(e, 1)) % p
    return PrimeFieldMatrix(p, data, G.edge_labels, rows)


@dataclass(frozen=True)
class Decomposition:
    tag: str  # "FRAME" or "LIFT"
    witness: PrimeFieldMatrix  # one row per vertex
    rank_a: int
    rank_b: int


def frame_or_lift_decomposition(A: PrimeFieldMatrix, G: MultiGraph, M: Matroid | None = None) -> Decomposition:
    """Split a represented matroid with a strong framework ``G``.

    For each vertex ``v`` the complement of ``cl(E(G - v))`` is a cocircuit;
    a row-space vector of ``A`` with exactly that support becomes row ``v``
    of the witness ``B``.  Equal ranks mean ``M(A) = M(B)`` is a frame
    matroid; otherwise ``rank B = rank A - 1`` and ``M(B) = M(G)``.
    """
    if set(A.cols) != set(G.edge_labels):
        raise DecompositionError("matrix columns and graph edges differ")
    if M is None:
        M = LinearMatroid(A)
    E = frozenset(A.cols)
    rows = []
    for v in G.vertices:
        rest = E - frozenset(G.incident(v))
        hyper = closure(M, rest)
        cocircuit = E - hyper
        if not cocircuit or not is_hyperplane(M, hyper):
            raise DecompositionError(f"E - cl(E(G-{v})) is not a cocircuit; is the framework strong?")
        w = rowspace_vector_with_support(A, cocircuit)
        if w is None:
            raise DecompositionError(f"no row-space vector supported on the cocircuit at {v}")
        support = frozenset(c for c, x in zip(A.cols, w) if x)
        if support != cocircuit:
            raise DecompositionError(f"row-space vector at {v} has support {sorted(support)}, not the cocircuit")
        rows.append(w)
    B = PrimeFieldMatrix(A.p, np.array(rows).reshape(len(rows), len(A.cols)), A.cols, G.vertices)
    ra, rb = matrix_rank(A), matrix_rank(B)
    if rb == ra:
        tag = "FRAME"
    elif rb == ra - 1:
        tag = "LIFT"
    else:
        raise DecompositionError(f"rank(B)={rb} is neither rank(A)={ra} nor rank(A)-1")
    return Decomposition(tag, B, ra, rb)
