"""Dense exact linear algebra over Q.

Matrices are small here (at most 36 x 84 for the nine-dimensional algebra),
so everything is plain Gaussian elimination on lists of Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exact import rat, rat_from_str, rat_to_str

Vector = tuple  # tuple of Fraction


@dataclass(frozen=True)
class QMat:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows*cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"QMat {self.rows}x{self.cols} needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "QMat":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(rat(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMat":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "QMat":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "QMat":
        cols = len(columns)
        return cls.from_rows([[columns[j][i] for j in range(cols)] for i in range(rows)], cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def tolist(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "QMat":
        return QMat.from_rows([self.column(j) for j in range(self.cols)], self.rows)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def __matmul__(self, other):
        if isinstance(other, QMat):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
            out = []
            ocols = [other.column(j) for j in range(other.cols)]
            for i in range(self.rows):
                r = self.row(i)
                nz = [(k, a) for k, a in enumerate(r) if a]
                for c in ocols:
                    out.append(sum((a * c[k] for k, a in nz), Fraction(0)))
            return QMat(self.rows, other.cols, tuple(out))
        return matvec(self, other)

    def to_json(self) -> list:
        return [[rat_to_str(x) for x in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, data) -> "QMat":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("matrix JSON must be an array of arrays")
        return cls.from_rows([[rat_from_str(x) for x in r] for r in data])


def matvec(m: QMat, v: Sequence) -> Vector:
    if len(v) != m.cols:
        raise ValueError(f"vector of length {len(v)} does not match {m.cols} columns")
    v = [rat(x) for x in v]
    nz = [(k, a) for k, a in enumerate(v) if a]
    return tuple(sum((m.entries[i * m.cols + k] * a for k, a in nz), Fraction(0))
                 for i in range(m.rows))


def _rref_rows(rows: list, ncols: int):
    """In-place reduced row echelon form of a list of Fraction lists."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if rows[i][c] != 0:
                break
        else:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: QMat):
    """Return ``(R, pivots)``: the reduced row echelon form and pivot columns."""
    rows, pivots = _rref_rows([list(m.row(i)) for i in range(m.rows)], m.cols)
    return QMat(m.rows, m.cols, tuple(x for r in rows for x in r)), pivots


def rank(m: QMat) -> int:
    return len(rref(m)[1])


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim, stored by its reduced echelon basis.

    Two Subspace values are equal iff they are the same subspace.
    """
    ambient_dim: int
    basis: tuple  # tuple of Vector, in reduced echelon form
    pivots: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append([rat(x) for x in v])
        rows, pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in rows[:len(pivots)]), tuple(pivots))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(QMat.identity(n).tolist(), n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return in_span(v, self)[0]

    def as_matrix(self) -> QMat:
        return QMat.from_rows(self.basis, self.ambient_dim)

    def to_json(self) -> list:
        return [[rat_to_str(x) for x in b] for b in self.basis]


def kernel_basis(m: QMat) -> Subspace:
    """Basis of the null space {v : m v = 0}, in reduced echelon form."""
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    vecs = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r[i, f]
        vecs.append(v)
    return Subspace.span(vecs, m.cols)


def column_space(m: QMat) -> Subspace:
    return Subspace.span([m.column(j) for j in range(m.cols)], m.rows)


def in_span(v: Sequence, s: Subspace):
    """Return ``(True, coeffs)`` if v is a combination of s.basis, else ``(False, None)``.

    Coefficients are unique because the basis is independent; with an echelon
    basis they are read off at the pivot positions.
    """
    if len(v) != s.ambient_dim:
        raise ValueError(f"vector of length {len(v)} vs ambient dimension {s.ambient_dim}")
    v = [rat(x) for x in v]
    coeffs = tuple(v[pc] for pc in s.pivots)
    residual = list(v)
    for c, b in zip(coeffs, s.basis):
        if c:
            residual = [x - c * y for x, y in zip(residual, b)]
    if any(residual):
        return False, None
    return True, coeffs


def intersect_with_coordinate_subspace(s: Subspace, coords: Iterable[int]) -> Subspace:
    """Vectors of s that vanish outside ``coords``."""
    coords = set(coords)
    if any(not 0 <= c < s.ambient_dim for c in coords):
        raise ValueError("coordinate index out of range")
    outside = [c for c in range(s.ambient_dim) if c not in coords]
    if s.dim == 0:
        return s
    # combinations x of the basis with (sum x_i b_i)[c] = 0 for every c outside
    constraint = QMat.from_rows([[b[c] for b in s.basis] for c in outside], s.dim)
    ker = kernel_basis(constraint)
    vecs = []
    for x in ker.basis:
        vecs.append([sum((xi * b[k] for xi, b in zip(x, s.basis) if xi), Fraction(0))
                     for k in range(s.ambient_dim)])
    return Subspace.span(vecs, s.ambient_dim)


def solve(m: QMat, b: Sequence) -> Optional[Vector]:
    """Solve m x = b; the solution with all free variables zero, or None."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side of length {len(b)} vs {m.rows} rows")
    aug = [list(m.row(i)) + [rat(b[i])] for i in range(m.rows)]
    rows, pivots = _rref_rows(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][m.cols]
    return tuple(x)
