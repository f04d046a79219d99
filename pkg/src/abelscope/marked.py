"""Marked groups, canonical Cayley balls and agreement radii.

A marking is an ordered tuple of generators in a concrete group.  The word
problem is solved by evaluation: two words name the same vertex iff they
evaluate to elements with the same canonical key.

Ball numbering is canonical: breadth-first from the identity, expanding each
vertex by generators 0..k-1 and then their inverses 0..k-1.  Labeled
basepointed graphs with deterministic edge labels have at most one
isomorphism, so two balls are isomorphic iff their canonical forms coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Hashable, Optional, Sequence

from .gamma import Gamma


class GroupOracle:
    """A group given by identity, mul, inv and a canonical key for equality."""

    name = "group"

    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def key(self, a) -> Hashable:
        return a

    def eq(self, a, b) -> bool:
        return self.key(a) == self.key(b)


class IntegerGroup(GroupOracle):
    name = "Z"

    def identity(self):
        return 0

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a


class CyclicGroup(GroupOracle):
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("modulus must be positive")
        self.n = n
        self.name = f"Z/{n}"

    def identity(self):
        return 0

    def mul(self, a, b):
        return (a + b) % self.n

    def inv(self, a):
        return -a % self.n

    def key(self, a):
        return a % self.n


class GammaGroup(GroupOracle):
    def __init__(self, G: Gamma):
        self.G = G
        self.name = f"Gamma(p={G.p})"

    def identity(self):
        return self.G.identity

    def mul(self, a, b):
        return self.G.mul(a, b)

    def inv(self, a):
        return self.G.inv(a)


class GammaModMZ(GammaGroup):
    """Gamma / M_Z; elements are kept as canonical coset representatives."""

    def __init__(self, G: Gamma):
        super().__init__(G)
        self.name = f"Gamma/M_Z(p={G.p})"

    def mul(self, a, b):
        return self.G.canonical_mod_MZ(self.G.mul(a, b))

    def inv(self, a):
        return self.G.canonical_mod_MZ(self.G.inv(a))

    def key(self, a):
        return self.G.canonical_mod_MZ(a)


@dataclass(frozen=True)
class Marking:
    oracle: GroupOracle
    generators: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if not self.generators:
            raise ValueError("a marking needs at least one generator")

    @property
    def arity(self) -> int:
        return len(self.generators)

    def evaluate(self, word: Sequence) -> Any:
        """Evaluate a word of (generator index, +1 | -1) letters."""
        o = self.oracle
        out = o.identity()
        for i, e in word:
            g = self.generators[i]
            out = o.mul(out, g if e > 0 else o.inv(g))
        return out


@dataclass(frozen=True)
class BallGraph:
    radius: int
    generator_count: int
    vertex_count: int
    edges: tuple  # sorted (src, generator index, dst), positive generators only
    depths: tuple

    def to_json(self) -> dict:
        return {"radius": self.radius, "vertices": self.vertex_count,
                "edges": [list(e) for e in self.edges], "depths": list(self.depths)}


class CayleyBFS:
    """Incremental canonical BFS; ``ball(r)`` is a prefix of any larger ball."""

    def __init__(self, marking: Marking):
        self.marking = marking
        o = marking.oracle
        k = marking.arity
        self._steps = list(marking.generators) + [o.inv(g) for g in marking.generators]
        # letter t < k is generator t, letter t >= k is the inverse of generator t - k
        self._letters = [(t, 1) for t in range(k)] + [(t, -1) for t in range(k)]
        e = o.identity()
        self.elements = [e]
        self.index = {o.key(e): 0}
        self.depths = [0]
        self.words = [()]
        self.neighbors = []  # neighbors[v][t] = index of v * step t
        self.expanded_depth = -1

    def _expand_vertex(self, v: int):
        o = self.marking.oracle
        row = []
        x = self.elements[v]
        for t, s in enumerate(self._steps):
            y = o.mul(x, s)
            key = o.key(y)
            w = self.index.get(key)
            if w is None:
                w = len(self.elements)
                self.index[key] = w
                self.elements.append(y)
                self.depths.append(self.depths[v] + 1)
                self.words.append(self.words[v] + (self._letters[t],))
            row.append(w)
        self.neighbors.append(row)

    def expand_to(self, r: int):
        """Compute all neighbors of every vertex of depth <= r."""
        v = len(self.neighbors)
        while v < len(self.elements) and self.depths[v] <= r:
            self._expand_vertex(v)
            v += 1
        self.expanded_depth = max(self.expanded_depth, r)

    def vertex_count(self, r: int) -> int:
        self.expand_to(r - 1)
        n = 0
        while n < len(self.elements) and self.depths[n] <= r:
            n += 1
        return n

    def ball(self, r: int) -> BallGraph:
        if r < 0:
            raise ValueError("radius must be nonnegative")
        self.expand_to(r)
        n = self.vertex_count(r)
        k = self.marking.arity
        edges = sorted((v, i, self.neighbors[v][i])
                       for v in range(n) for i in range(k) if self.neighbors[v][i] < n)
        return BallGraph(r, k, n, tuple(edges), tuple(self.depths[:n]))


def ball(m: Marking, r: int) -> BallGraph:
    return CayleyBFS(m).ball(r)


def balls_equal(b1: BallGraph, b2: BallGraph) -> bool:
    if b1.radius != b2.radius or b1.generator_count != b2.generator_count:
        raise ValueError("balls must share radius and generator count")
    return (b1.vertex_count, b1.edges, b1.depths) == (b2.vertex_count, b2.edges, b2.depths)


def _check_arity(m1: Marking, m2: Marking):
    if m1.arity != m2.arity:
        raise ValueError(f"markings have {m1.arity} and {m2.arity} generators")


def _inner_tables_agree(s1: CayleyBFS, s2: CayleyBFS, r: int) -> bool:
    """Compare neighbor rows of all vertices of depth < r.

    Those rows only point into the radius-r ball, so a mismatch here already
    separates the radius-r balls without expanding the outer sphere.
    """
    s1.expand_to(r - 1)
    s2.expand_to(r - 1)
    n1, n2 = s1.vertex_count(r - 1), s2.vertex_count(r - 1)
    return n1 == n2 and s1.neighbors[:n1] == s2.neighbors[:n2]


def _balls_agree(s1: CayleyBFS, s2: CayleyBFS, r: int) -> bool:
    if r > 0 and not _inner_tables_agree(s1, s2, r):
        return False
    return balls_equal(s1.ball(r), s2.ball(r))


def agreement_radius(m1: Marking, m2: Marking, rmax: int) -> int:
    """Largest r <= rmax whose radius-r balls coincide (rmax if all do)."""
    _check_arity(m1, m2)
    s1, s2 = CayleyBFS(m1), CayleyBFS(m2)
    for r in range(rmax + 1):
        if not _balls_agree(s1, s2, r):
            return r - 1
    return rmax


@dataclass(frozen=True)
class Divergence:
    """A word that is trivial in exactly one of two markings.

    ``trivial_in`` is 1 or 2; ``radius`` is the first radius whose balls differ.
    """
    word: tuple
    trivial_in: int
    radius: int


def _invert_word(word):
    return tuple((i, -e) for i, e in reversed(word))


def divergence_witness(m1: Marking, m2: Marking, rmax: int) -> Optional[Divergence]:
    """Walk both canonical BFS orders in lockstep; return a relation of one
    marking that fails in the other, found at the first radius <= rmax where
    the balls differ.  None if the balls agree up to rmax.
    """
    _check_arity(m1, m2)
    s1, s2 = CayleyBFS(m1), CayleyBFS(m2)
    for r in range(rmax + 1):
        if _balls_agree(s1, s2, r):
            continue
        # both BFS trees agree vertex by vertex until the first differing step
        for v in range(min(len(s1.neighbors), len(s2.neighbors))):
            for t in range(2 * m1.arity):
                a, b = s1.neighbors[v][t], s2.neighbors[v][t]
                if a == b:
                    continue
                step = (s1._letters[t],)
                w1 = s1.words[v] + step
                # one side landed on an older vertex: that closes a relation
                if a < b:
                    return Divergence(w1 + _invert_word(s1.words[a]), 1, r)
                return Divergence(w1 + _invert_word(s2.words[b]), 2, r)
        raise AssertionError("balls differ but BFS tables agree")  # pragma: no cover
    return None


# presets -----------------------------------------------------------------

def preset_marking(name: str, p: int = 2, modulus: Optional[int] = None) -> Marking:
    """``z``, ``z-mod`` (with modulus), ``gamma``, ``gamma-mod-mz``."""
    if name == "z":
        return Marking(IntegerGroup(), (1,))
    if name == "z-mod":
        if modulus is None:
            raise ValueError("z-mod needs a modulus")
        return Marking(CyclicGroup(modulus), (1,))
    if name in ("gamma", "gamma-mod-mz"):
        G = Gamma(p)
        gens = G.default_generators()
        if name == "gamma":
            return Marking(GammaGroup(G), gens)
        return Marking(GammaModMZ(G), [G.canonical_mod_MZ(g) for g in gens])
    raise ValueError(f"unknown preset {name!r}")


def word_to_str(word, names: Optional[Sequence[str]] = None) -> str:
    names = names or [f"g{i}" for i in range(max((i for i, _ in word), default=-1) + 1)]
    return " ".join(names[i] + ("" if e > 0 else "^-1") for i, e in word) or "1"
