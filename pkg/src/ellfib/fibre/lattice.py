"""Intersection matrices of curve configurations, kernel multiplicities, fundamental cycles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class IntersectionMatrix:
    """Symmetric integer matrix: self-intersections on the diagonal, pairwise
    intersection numbers (>= 0) off it."""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if n == 0:
            raise MatrixError("empty matrix")
        for i, r in enumerate(rows):
            if len(r) != n:
                raise MatrixError("matrix is not square")
            for j in range(n):
                if r[j] != rows[j][i]:
                    raise MatrixError("matrix is not symmetric")
                if i != j and r[j] < 0:
                    raise MatrixError("negative off-diagonal entry")
        if not self.connected():
            raise MatrixError("the dual graph is not connected")

    @property
    def n(self) -> int:
        return len(self.rows)

    def connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j, x in enumerate(self.rows[i]):
                if x and j not in seen and j != i:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(self.rows)

    def apply(self, z: Sequence[int]) -> Tuple[int, ...]:
        """M z, i.e. the intersection numbers z . A_i."""
        return tuple(sum(a * b for a, b in zip(r, z)) for r in self.rows)

    def pairing(self, z: Sequence[int], y: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.apply(z), y))

    def is_negative_definite(self) -> bool:
        """Sylvester's criterion on -M, in exact arithmetic."""
        neg = [[Fraction(-x) for x in r] for r in self.rows]
        return all(_det([row[:k] for row in neg[:k]]) > 0 for k in range(1, self.n + 1))


def _det(m: List[List[Fraction]]) -> Fraction:
    m = [list(r) for r in m]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return det


def null_space(rows: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    """Basis of the rational kernel by reduced row echelon form."""
    m = [[Fraction(x) for x in r] for r in rows]
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def multiplicities_from_matrix(m: IntersectionMatrix) -> Tuple[int, ...]:
    """The primitive positive integer kernel vector of an affine (semi-definite) matrix."""
    basis = null_space(m.rows)
    if len(basis) != 1:
        raise MatrixError(f"kernel has dimension {len(basis)}, expected 1")
    v = basis[0]
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    if all(x < 0 for x in ints):
        ints = [-x for x in ints]
    if not all(x > 0 for x in ints):
        raise MatrixError("kernel has no positive vector")
    return tuple(ints)


def laufer_fundamental_cycle(m: IntersectionMatrix, start: int = 0, max_steps: int = 10**6):
    """Minimal effective Z with Z . A_i <= 0 for all i; returns (Z, -Z.Z).

    Starts from A_start and keeps adding a curve A_i with A_i . Z > 0 (the
    lowest such index) until none is left.
    """
    if not m.is_negative_definite():
        raise MatrixError("matrix is not negative definite")
    z = [0] * m.n
    z[start] = 1
    for _ in range(max_steps):
        mz = m.apply(z)
        i = next((i for i, x in enumerate(mz) if x > 0), None)
        if i is None:
            return tuple(z), -m.pairing(z, z)
        z[i] += 1
    raise RuntimeError("Laufer's algorithm did not terminate")  # pragma: no cover


def laufer_steps(m: IntersectionMatrix, start: int = 0) -> List[Tuple[int, ...]]:
    """The whole computation sequence Z_1, Z_2, ..., Z_l."""
    if not m.is_negative_definite():
        raise MatrixError("matrix is not negative definite")
    z = [0] * m.n
    z[start] = 1
    seq = [tuple(z)]
    while True:
        mz = m.apply(z)
        i = next((i for i, x in enumerate(mz) if x > 0), None)
        if i is None:
            return seq
        z[i] += 1
        seq.append(tuple(z))


def _from_edges(n: int, edges, diag: int = -2, weights=None) -> IntersectionMatrix:
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = diag
    for k, (i, j) in enumerate(edges):
        w = 1 if weights is None else weights[k]
        rows[i][j] += w
        rows[j][i] += w
    return IntersectionMatrix(tuple(tuple(r) for r in rows))


def affine_edges(kind: str, n: int):
    """Vertex count and edge list of the affine Dynkin diagram of the given type."""
    kind = kind.upper()
    if kind == "A":
        if n < 1:
            raise ValueError("affine A_n needs n >= 1")
        if n == 1:
            return 2, [(0, 1), (0, 1)]
        return n + 1, [(i, (i + 1) % (n + 1)) for i in range(n + 1)]
    if kind == "D":
        if n < 4:
            raise ValueError("affine D_n needs n >= 4")
        # tips 0, 1 on the first chain vertex, 2, 3 on the last
        chain = list(range(4, n + 1))
        edges = [(0, chain[0]), (1, chain[0]), (2, chain[-1]), (3, chain[-1])]
        edges += [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
        return n + 1, edges
    if kind == "E" and n == 6:
        # tips 0-2, middles 3-5, centre 6
        return 7, [(0, 3), (1, 4), (2, 5), (3, 6), (4, 6), (5, 6)]
    if kind == "E" and n == 7:
        # chain 0..6 with the branch vertex 7 on the centre 3
        return 8, [(i, i + 1) for i in range(6)] + [(3, 7)]
    if kind == "E" and n == 8:
        # chain 0..7 with the branch vertex 8 on 5
        return 9, [(i, i + 1) for i in range(7)] + [(5, 8)]
    raise ValueError(f"no affine diagram {kind}_{n}")


def affine_matrix(kind: str, n: int) -> IntersectionMatrix:
    size, edges = affine_edges(kind, n)
    return _from_edges(size, edges)


def dynkin_matrix(kind: str, n: int) -> IntersectionMatrix:
    """Negative Cartan matrix of the finite (Du Val) diagram A_n, D_n, E_6-8."""
    kind = kind.upper()
    if kind == "A" and n >= 1:
        return _from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "D" and n >= 4:
        return _from_edges(n, [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, n - 1)])
    if kind == "E" and n in (6, 7, 8):
        return _from_edges(n, [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)])
    raise ValueError(f"no Dynkin diagram {kind}_{n}")
