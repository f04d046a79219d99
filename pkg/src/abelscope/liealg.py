"""Finite-dimensional Lie algebras given by structure constants, with a
torus weight attached to each basis vector.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .exact import rat, rat_from_str, rat_to_str
from .linalg import Subspace, intersect_with_coordinate_subspace


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Basis x_0..x_{dim-1}; ``brackets[(i, j)]`` (i < j) is the sparse
    expansion {k: c} of [x_i, x_j].  Missing pairs bracket to zero.
    """
    dim: int
    labels: tuple
    rank: int
    weights: tuple
    brackets: Mapping

    def __post_init__(self):
        if len(self.labels) != self.dim or len(self.weights) != self.dim:
            raise AlgebraError("labels and weights need one entry per basis element")
        for w in self.weights:
            if len(w) != self.rank or not all(isinstance(c, int) for c in w):
                raise AlgebraError(f"weight {w!r} is not an integer vector of length {self.rank}")
        clean = {}
        for (i, j), expansion in self.brackets.items():
            if not (0 <= i < j < self.dim):
                raise AlgebraError(f"bracket key {(i, j)} must satisfy 0 <= i < j < dim")
            terms = {}
            for k, c in expansion.items():
                if not 0 <= k < self.dim:
                    raise AlgebraError(f"bracket [{i},{j}] has term on x_{k} outside the basis")
                c = rat(c)
                if c:
                    terms[k] = c
            if terms:
                clean[(i, j)] = terms
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "weights", tuple(tuple(w) for w in self.weights))
        object.__setattr__(self, "brackets", clean)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (self.dim, self.labels, self.rank, self.weights, self.brackets) == \
            (other.dim, other.labels, other.rank, other.weights, other.brackets)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def basis_vector(self, i) -> tuple:
        if isinstance(i, str):
            i = self.index(i)
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def weight(self, i):
        if isinstance(i, str):
            i = self.index(i)
        return self.weights[i]

    def bracket_basis(self, i: int, j: int) -> dict:
        """[x_i, x_j] as a sparse dict, with antisymmetry applied."""
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    # JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "rank": self.rank,
            "labels": list(self.labels),
            "weights": [list(w) for w in self.weights],
            "brackets": [[i, j, [[rat_to_str(c), k] for k, c in sorted(terms.items())]]
                         for (i, j), terms in sorted(self.brackets.items())],
        }

    @classmethod
    def from_json(cls, data) -> "LieAlgebra":
        try:
            dim = data["dim"]
            rank = data["rank"]
            labels = data.get("labels") or [f"x{i}" for i in range(dim)]
            weights = data["weights"]
            raw = data.get("brackets", [])
        except (KeyError, TypeError, AttributeError) as e:
            raise AlgebraError(f"algebra JSON missing field: {e}") from None
        if not isinstance(dim, int) or not isinstance(rank, int) or dim < 0 or rank < 0:
            raise AlgebraError("dim and rank must be nonnegative integers")
        brackets = {}
        for entry in raw:
            try:
                i, j, terms = entry
                expansion = {}
                for c, k in terms:
                    if not isinstance(k, int) or k in expansion:
                        raise AlgebraError(f"bad or repeated basis index {k!r} in bracket {i},{j}")
                    expansion[k] = rat_from_str(c)
            except (TypeError, ValueError) as e:
                if isinstance(e, AlgebraError):
                    raise
                raise AlgebraError(f"malformed bracket entry {entry!r}: {e}") from None
            if not (isinstance(i, int) and isinstance(j, int)) or not i < j:
                raise AlgebraError(f"bracket key ({i!r}, {j!r}) requires integers i < j")
            if (i, j) in brackets:
                raise AlgebraError(f"duplicate bracket entry for ({i}, {j})")
            brackets[(i, j)] = expansion
        if not isinstance(weights, list) or not all(isinstance(w, list) for w in weights):
            raise AlgebraError("weights must be an array of integer arrays")
        return cls(dim, tuple(labels), rank, tuple(tuple(w) for w in weights), brackets)


def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> tuple:
    """Bilinear extension of the structure constants."""
    if len(x) != L.dim or len(y) != L.dim:
        raise ValueError(f"vectors must have length {L.dim}")
    out = [Fraction(0)] * L.dim
    xs = [(i, rat(a)) for i, a in enumerate(x) if a]
    ys = [(j, rat(b)) for j, b in enumerate(y) if b]
    for i, a in xs:
        for j, b in ys:
            for k, c in L.bracket_basis(i, j).items():
                out[k] += a * b * c
    return tuple(out)


def check_jacobi(L: LieAlgebra) -> Optional[tuple]:
    """Return None if the Jacobi identity holds, else the first failing (i, j, k)."""
    for i, j, k in itertools.combinations(range(L.dim), 3):
        xi, xj, xk = (L.basis_vector(t) for t in (i, j, k))
        total = [a + b + c for a, b, c in zip(bracket(L, bracket(L, xi, xj), xk),
                                             bracket(L, bracket(L, xj, xk), xi),
                                             bracket(L, bracket(L, xk, xi), xj))]
        if any(total):
            return (i, j, k)
    return None


def check_weight_additivity(L: LieAlgebra) -> Optional[tuple]:
    """Return None if every bracket is weight-homogeneous, else an offending (i, j, k)."""
    for (i, j), terms in sorted(L.brackets.items()):
        target = add_weights(L.weights[i], L.weights[j])
        for k in sorted(terms):
            if L.weights[k] != target:
                return (i, j, k)
    return None


def add_weights(*ws):
    return tuple(sum(c) for c in zip(*ws))


def derived_subalgebra(L: LieAlgebra) -> Subspace:
    vecs = []
    for (i, j), terms in L.brackets.items():
        v = [Fraction(0)] * L.dim
        for k, c in terms.items():
            v[k] = c
        vecs.append(v)
    return Subspace.span(vecs, L.dim)


def basis_weight_positions(L: LieAlgebra, w) -> list:
    w = tuple(w)
    return [i for i in range(L.dim) if L.weights[i] == w]


def abelianization_weights(L: LieAlgebra) -> Counter:
    """Weights of L/[L, L] with multiplicities, as a Counter of tuples.

    Relies on weight additivity: [L, L] is then spanned by weight vectors and
    splits into its intersections with the weight blocks of L.
    """
    if check_weight_additivity(L) is not None:
        raise AlgebraError("brackets are not weight-homogeneous")
    derived = derived_subalgebra(L)
    out = Counter()
    for w in sorted(set(L.weights)):
        pos = basis_weight_positions(L, w)
        mult = len(pos) - intersect_with_coordinate_subspace(derived, pos).dim
        if mult:
            out[w] = mult
    return out


def _unit_weight(i: int, j: int, torus=(2, 3)) -> tuple:
    # conjugating E_ij by the diagonal matrix with p at slot c scales it by
    # p^(delta_c(i) - delta_c(j)); the weight is minus that exponent
    return tuple(int(j == c) - int(i == c) for c in torus)


def matrix_unit_algebra(pairs: Sequence, torus=(2, 3), scale: Optional[Sequence] = None) -> LieAlgebra:
    """Span of the matrix units E_ij, (i, j) in ``pairs`` (i < j), under the
    commutator.  The pair set must be closed under composition.

    ``scale`` optionally rescales basis vector a to scale[a] * E_{pairs[a]}.
    """
    pairs = [tuple(p) for p in pairs]
    where = {p: a for a, p in enumerate(pairs)}
    scale = [Fraction(1)] * len(pairs) if scale is None else [rat(s) for s in scale]
    brackets = {}
    for a, b in itertools.combinations(range(len(pairs)), 2):
        (i, j), (k, l) = pairs[a], pairs[b]
        terms = {}
        # [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
        if j == k:
            terms[(i, l)] = terms.get((i, l), 0) + 1
        if l == i:
            terms[(k, j)] = terms.get((k, j), 0) - 1
        expansion = {}
        for q, c in terms.items():
            if q not in where:
                raise AlgebraError(f"pair set not closed: E_{q} arises from {pairs[a]}, {pairs[b]}")
            t = where[q]
            expansion[t] = scale[a] * scale[b] * c / scale[t]
        if expansion:
            brackets[(a, b)] = expansion
    labels = tuple(f"e{i}{j}" for i, j in pairs)
    weights = tuple(_unit_weight(i, j, torus) for i, j in pairs)
    return LieAlgebra(len(pairs), labels, len(torus), weights, brackets)


GAMMA_PAIRS = ((0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (2, 4), (3, 4), (0, 4), (1, 4))
ABELS4_PAIRS = ((1, 2), (2, 3), (3, 4), (1, 3), (2, 4), (1, 4))


def build_paper_algebra() -> LieAlgebra:
    """The nine-dimensional nilpotent algebra spanned by e_ij, (i, j) in GAMMA_PAIRS,
    with weights read off the torus slots 2 and 3."""
    return matrix_unit_algebra(GAMMA_PAIRS)


def build_abels4_algebra() -> LieAlgebra:
    """Strictly upper triangular 4x4 matrices on indices 1..4 (Abels' group)."""
    return matrix_unit_algebra(ABELS4_PAIRS)


def abelian_algebra(weights: Sequence, labels: Optional[Sequence] = None) -> LieAlgebra:
    weights = tuple(tuple(w) for w in weights)
    rank = len(weights[0]) if weights else 2
    labels = tuple(labels) if labels else tuple(f"x{i}" for i in range(len(weights)))
    return LieAlgebra(len(weights), labels, rank, weights, {})


def jacobi_violating_algebra() -> LieAlgebra:
    """[x0,x1] = x2, [x0,x2] = x0, [x1,x2] = 0: antisymmetric but not Lie."""
    return LieAlgebra(3, ("x0", "x1", "x2"), 2, ((0, 0),) * 3,
                      {(0, 1): {2: 1}, (0, 2): {0: 1}})


def _close_pairs(pairs: set) -> set:
    pairs = set(pairs)
    while True:
        new = {(i, l) for (i, j) in pairs for (k, l) in pairs if j == k} - pairs
        if not new:
            return pairs
        pairs |= new


def random_nilpotent_algebra(rng: random.Random, max_size: int = 6) -> LieAlgebra:
    """A random composition-closed set of strictly upper triangular matrix units,
    with random nonzero rescaling of the basis (so structure constants are not all +-1)."""
    n = rng.randint(3, max_size)
    all_pairs = list(itertools.combinations(range(n), 2))
    pairs = _close_pairs(rng.sample(all_pairs, rng.randint(1, len(all_pairs))))
    pairs = sorted(pairs)
    torus = tuple(sorted(rng.sample(range(n), 2)))
    scale = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 5), rng.randint(1, 4)) for _ in pairs]
    return matrix_unit_algebra(pairs, torus=torus, scale=scale)
