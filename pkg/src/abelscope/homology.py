"""Chevalley-Eilenberg complex in low degrees and Abels' finite-presentability test.

Conventions used throughout:

* wedge monomials are increasing index tuples, ordered lexicographically;
* d2(x1 ^ x2) = -[x1, x2];
* d3(x1 ^ x2 ^ x3) = x3 ^ [x1, x2] + x2 ^ [x3, x1] + x1 ^ [x2, x3].

Both differentials preserve weight, so kernels and images split into weight
blocks and H_2 can be computed one weight at a time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .liealg import LieAlgebra, abelianization_weights, add_weights, check_weight_additivity
from .linalg import (QMat, Subspace, column_space, intersect_with_coordinate_subspace,
                     kernel_basis, rank, solve)


class NotInImageError(ValueError):
    """Raised when a degree-2 chain is not a d3-boundary."""


@lru_cache(maxsize=None)
def wedge_basis(n: int, degree: int) -> tuple:
    return tuple(itertools.combinations(range(n), degree))


@lru_cache(maxsize=None)
def wedge_position(n: int, degree: int) -> dict:
    return {t: pos for pos, t in enumerate(wedge_basis(n, degree))}


def wedge_label(L: LieAlgebra, monomial: Sequence[int]) -> str:
    return "^".join(L.labels[i] for i in monomial)


def _add_wedge2(acc: dict, i: int, j: int, c: Fraction):
    if i == j or not c:
        return
    if i > j:
        i, j, c = j, i, -c
    acc[(i, j)] = acc.get((i, j), 0) + c


def _wedge_with(acc: dict, a: int, expansion: dict, sign: int = 1):
    """acc += sign * x_a ^ (sum c_k x_k)."""
    for k, c in expansion.items():
        _add_wedge2(acc, a, k, sign * c)


def d2_column(L: LieAlgebra, i: int, j: int) -> dict:
    return {k: -c for k, c in L.bracket_basis(i, j).items()}


def d3_column(L: LieAlgebra, i: int, j: int, k: int) -> dict:
    acc = {}
    # x_k ^ [x_i, x_j] + x_j ^ [x_k, x_i] + x_i ^ [x_j, x_k]
    _wedge_with(acc, k, L.bracket_basis(i, j))
    _wedge_with(acc, j, L.bracket_basis(k, i))
    _wedge_with(acc, i, L.bracket_basis(j, k))
    return {t: c for t, c in acc.items() if c}


def d2_matrix(L: LieAlgebra) -> QMat:
    n = L.dim
    cols = wedge_basis(n, 2)
    entries = [[Fraction(0)] * len(cols) for _ in range(n)]
    for pos, (i, j) in enumerate(cols):
        for k, c in d2_column(L, i, j).items():
            entries[k][pos] = c
    return QMat.from_rows(entries, len(cols))


def d3_matrix(L: LieAlgebra) -> QMat:
    n = L.dim
    rows_index = wedge_position(n, 2)
    cols = wedge_basis(n, 3)
    entries = [[Fraction(0)] * len(cols) for _ in range(len(rows_index))]
    for pos, (i, j, k) in enumerate(cols):
        for t, c in d3_column(L, i, j, k).items():
            entries[rows_index[t]][pos] = c
    return QMat.from_rows(entries, len(cols))


def complex_defect(L: LieAlgebra) -> Optional[tuple]:
    """First degree-3 monomial whose d2(d3(.)) is nonzero, or None."""
    d2, d3 = d2_matrix(L), d3_matrix(L)
    comp = d2 @ d3
    for pos, t in enumerate(wedge_basis(L.dim, 3)):
        if any(comp.column(pos)):
            return t
    return None


def check_complex(L: LieAlgebra) -> bool:
    """True iff d2 . d3 = 0 exactly (equivalent to the Jacobi identity)."""
    return (d2_matrix(L) @ d3_matrix(L)).is_zero()


def monomial_weight(L: LieAlgebra, monomial: Sequence[int]) -> tuple:
    return add_weights(*(L.weights[i] for i in monomial)) if monomial else (0,) * L.rank


def weight_positions(L: LieAlgebra, degree: int, w) -> list:
    """Positions (in the lexicographic wedge basis) of monomials of total weight w."""
    if degree not in (1, 2, 3):
        raise ValueError("degree must be 1, 2 or 3")
    w = tuple(w)
    return [pos for pos, t in enumerate(wedge_basis(L.dim, degree))
            if monomial_weight(L, t) == w]


def realized_weights(L: LieAlgebra, degree: int) -> list:
    return sorted({monomial_weight(L, t) for t in wedge_basis(L.dim, degree)})


def kernel_weight_basis(L: LieAlgebra, w) -> Subspace:
    """Weight-w part of Ker(d2), as a subspace of the full degree-2 space."""
    pos = weight_positions(L, 2, w)
    d2 = d2_matrix(L)
    block = QMat.from_rows([[d2[r, c] for c in pos] for r in range(d2.rows)], len(pos))
    ker = kernel_basis(block)
    total = d2.cols
    vecs = []
    for v in ker.basis:
        full = [Fraction(0)] * total
        for c, x in zip(pos, v):
            full[c] = x
        vecs.append(full)
    return Subspace.span(vecs, total)


def image_weight_block(L: LieAlgebra, w) -> Subspace:
    """Weight-w part of Im(d3)."""
    return intersect_with_coordinate_subspace(column_space(d3_matrix(L)), weight_positions(L, 2, w))


def h2_weight_dim(L: LieAlgebra, w) -> int:
    return kernel_weight_basis(L, w).dim - image_weight_block(L, w).dim


def h2_dim(L: LieAlgebra) -> int:
    return kernel_basis(d2_matrix(L)).dim - rank(d3_matrix(L))


def segment_contains_origin(a, b) -> bool:
    """Whether 0 lies on the closed segment [a, b] in the plane (exact)."""
    (a1, a2), (b1, b2) = a, b
    if tuple(a) == tuple(b):
        return a1 == 0 and a2 == 0
    return a1 * b2 - a2 * b1 == 0 and a1 * b1 + a2 * b2 <= 0


@dataclass
class AbelsVerdict:
    condition1: bool
    condition2: bool
    h2_weight0_dim: int
    offending_pair: Optional[tuple] = None
    abelianization: dict = field(default_factory=dict)

    @property
    def finitely_presented(self) -> bool:
        return self.condition1 and self.condition2

    def to_json(self) -> dict:
        c1 = {"pass": self.condition1}
        if self.offending_pair is not None:
            c1["offending_pair"] = [list(w) for w in self.offending_pair]
        return {
            "condition1": c1,
            "condition2": {"pass": self.condition2, "h2_weight0_dim": self.h2_weight0_dim},
            "finitely_presented": self.finitely_presented,
        }


def condition1_witness(weights) -> Optional[tuple]:
    """First unordered pair (repetition allowed) of weights whose segment meets 0."""
    ws = sorted(weights)
    for a, b in itertools.combinations_with_replacement(ws, 2):
        if segment_contains_origin(a, b):
            return (a, b)
    return None


def abels_check(L: LieAlgebra) -> AbelsVerdict:
    if L.rank != 2:
        raise ValueError("the segment condition is implemented for rank-2 weights")
    bad = check_weight_additivity(L)
    if bad is not None:
        raise ValueError(f"bracket of x_{bad[0]}, x_{bad[1]} has a term on x_{bad[2]} of the wrong weight")
    ab = abelianization_weights(L)
    witness = condition1_witness(ab.elements())
    h2_0 = h2_weight_dim(L, (0, 0))
    return AbelsVerdict(condition1=witness is None, condition2=h2_0 == 0, h2_weight0_dim=h2_0,
                        offending_pair=witness, abelianization=dict(ab))


def express_in_image(L: LieAlgebra, v: Sequence) -> tuple:
    """Solve d3 c = v; returns the solution with free variables zero.

    Raises NotInImageError if v is not a boundary.
    """
    d3 = d3_matrix(L)
    if len(v) != d3.rows:
        raise ValueError(f"expected a degree-2 chain of length {d3.rows}")
    c = solve(d3, v)
    if c is None:
        raise NotInImageError("chain is not in the image of d3")
    return c


def wedge_vector(L: LieAlgebra, terms: dict, degree: int = 2) -> tuple:
    """Build a chain from {(label, label[, label]): coeff}; labels may be unsorted."""
    pos = wedge_position(L.dim, degree)
    out = [Fraction(0)] * len(pos)
    for labels, c in terms.items():
        idx = [L.index(s) for s in labels]
        order = sorted(range(degree), key=lambda t: idx[t])
        # sign of the sorting permutation
        sign = 1
        for a, b in itertools.combinations(range(degree), 2):
            if order[a] > order[b]:
                sign = -sign
        key = tuple(sorted(idx))
        if len(set(key)) < degree:
            continue
        out[pos[key]] += sign * Fraction(c)
    return tuple(out)


def describe_chain(L: LieAlgebra, v: Sequence, degree: int = 2) -> dict:
    basis = wedge_basis(L.dim, degree)
    return {wedge_label(L, basis[pos]): c for pos, c in enumerate(v) if c}


__all__ = [
    "AbelsVerdict", "NotInImageError", "abels_check", "check_complex", "complex_defect",
    "condition1_witness", "d2_matrix", "d3_matrix", "describe_chain", "express_in_image",
    "h2_dim", "h2_weight_dim", "image_weight_block", "kernel_weight_basis",
    "realized_weights", "segment_contains_origin", "wedge_basis", "wedge_vector",
    "weight_positions",
]
