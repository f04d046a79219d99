"""The 5x5 matrix group Gamma over Z[1/p] and its quotient by M_Z.

An element is stored by its block data::

    [ A  X  Y ]      A in SL2(Z)                       (rows/cols 0,1)
    [ 0  B  Z ]      B = [[p^n2, u23], [0, p^n3]]       (rows/cols 2,3)
    [ 0  0  1 ]      X = [[u02, u03], [u12, u13]], Y = (u04, u14), Z = (u24, u34)

Multiplication and inversion use the block formulas; ``GammaElt.matrix`` gives
the literal 5x5 matrix for cross-checking.

Entries are held as gmpy2 ``mpq`` internally (equal and hash-equal to the
corresponding ``Fraction``); ``entry`` and ``matrix`` hand out Fractions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from gmpy2 import mpq

from .exact import INFINITY, check_prime, in_scaled_lattice, is_p_local, rat, rat_from_str, rat_to_str, vp

U_KEYS = ("02", "03", "04", "12", "13", "14", "23", "24", "34")
_UPOS = {k: n for n, k in enumerate(U_KEYS)}

# number of elementary steps from i to j through the torus slots 2, 3
U_DEGREE = {"02": 1, "12": 1, "23": 1, "34": 1, "03": 2, "13": 2, "24": 2, "04": 3, "14": 3}

# literal reading of the filtration as printed: u34 is absent and u24 is listed
# at depths m and 2m (both must hold)
_LITERAL_DEPTHS = (("02", 1), ("12", 1), ("23", 1), ("24", 1),
                   ("03", 2), ("13", 2), ("24", 2), ("04", 3), ("14", 3))

_ZERO = mpq(0)
_ONE = mpq(1)


def _q(x) -> mpq:
    if type(x) is mpq:
        return x
    x = rat(x)
    return mpq(x.numerator, x.denominator)


@dataclass(frozen=True)
class GammaElt:
    sl2: tuple = (1, 0, 0, 1)
    n2: int = 0
    n3: int = 0
    u: tuple = (_ZERO,) * 9

    def __post_init__(self):
        if not all(type(x) is mpq for x in self.u):
            object.__setattr__(self, "u", tuple(_q(x) for x in self.u))
        if not all(type(x) is int for x in self.sl2):
            object.__setattr__(self, "sl2", tuple(int(x) for x in self.sl2))

    def entry(self, key: str) -> Fraction:
        return rat(self.u[_UPOS[key]])

    def replace_u(self, **entries) -> "GammaElt":
        u = list(self.u)
        for k, v in entries.items():
            u[_UPOS[k.lstrip("u")]] = _q(v)
        return GammaElt(self.sl2, self.n2, self.n3, tuple(u))

    def matrix(self, p: int) -> list:
        """The literal 5x5 matrix as a list of Fraction rows."""
        a, b, c, d = self.sl2
        m = [[Fraction(0)] * 5 for _ in range(5)]
        m[0][0], m[0][1], m[1][0], m[1][1] = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
        m[2][2] = Fraction(p) ** self.n2
        m[3][3] = Fraction(p) ** self.n3
        m[4][4] = Fraction(1)
        for k, x in zip(U_KEYS, self.u):
            m[int(k[0])][int(k[1])] = rat(x)
        return m

    @classmethod
    def from_matrix(cls, m, p: int) -> "GammaElt":
        """Inverse of ``matrix``; raises ValueError if m is not in Gamma."""
        m = [[rat(x) for x in row] for row in m]
        if len(m) != 5 or any(len(r) != 5 for r in m):
            raise ValueError("expected a 5x5 matrix")
        for i in range(5):
            for j in range(5):
                if i > j and m[i][j] != 0 and not (i, j) == (1, 0):
                    raise ValueError(f"entry ({i},{j}) must vanish")
        a, b, c, d = m[0][0], m[0][1], m[1][0], m[1][1]
        if any(x.denominator != 1 for x in (a, b, c, d)) or a * d - b * c != 1:
            raise ValueError("top-left block is not in SL2(Z)")
        n = []
        for x in (m[2][2], m[3][3]):
            k = vp(x, p) if x else None
            if k is None or abs(x) != Fraction(p) ** k or x < 0:
                raise ValueError(f"diagonal entry {x} is not a power of {p}")
            n.append(k)
        if m[4][4] != 1:
            raise ValueError("bottom-right entry must be 1")
        u = tuple(m[int(k[0])][int(k[1])] for k in U_KEYS)
        return cls((int(a), int(b), int(c), int(d)), n[0], n[1], u)

    def to_json(self) -> dict:
        return {"sl2": list(self.sl2), "n2": self.n2, "n3": self.n3,
                "u": {k: rat_to_str(x) for k, x in zip(U_KEYS, self.u)}}

    @classmethod
    def from_json(cls, data) -> "GammaElt":
        try:
            sl2 = tuple(int(x) for x in data.get("sl2", (1, 0, 0, 1)))
            raw = data.get("u", {})
            unknown = set(raw) - set(U_KEYS)
            if unknown or len(sl2) != 4:
                raise ValueError(f"unknown entries {sorted(unknown)}" if unknown else "sl2 needs 4 entries")
            u = tuple(rat_from_str(raw.get(k, "0")) for k in U_KEYS)
            return cls(sl2, int(data.get("n2", 0)), int(data.get("n3", 0)), u)
        except (AttributeError, TypeError) as e:
            raise ValueError(f"malformed group element: {e}") from None


IDENTITY = GammaElt()

CosetRep = GammaElt  # a GammaElt with u04, u14 in [0, 1)


def _dot(a, b, c, d):
    """a*b + c*d, skipping zero products (entries are mostly zero)."""
    if a and b:
        if c and d:
            return a * b + c * d
        return a * b
    if c and d:
        return c * d
    return _ZERO


def _mm(x, y):
    """2x2 times 2x2, both as 4-tuples (row major)."""
    return (_dot(x[0], y[0], x[1], y[2]), _dot(x[0], y[1], x[1], y[3]),
            _dot(x[2], y[0], x[3], y[2]), _dot(x[2], y[1], x[3], y[3]))


def _mm_int(x, y):
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def _mv(x, v):
    return (_dot(x[0], v[0], x[1], v[1]), _dot(x[2], v[0], x[3], v[1]))


def _add(*ts):
    return tuple(sum(c, _ZERO) if any(c) else _ZERO for c in zip(*ts))


def _neg(t):
    return tuple(-c if c else _ZERO for c in t)


class Gamma:
    """Group operations on Gamma for a fixed prime p."""

    def __init__(self, p: int):
        self.p = check_prime(p)
        self._powers = {}

    def __repr__(self):
        return f"Gamma(p={self.p})"

    def _pow(self, n: int) -> mpq:
        if n == 0:
            return _ONE
        out = self._powers.get(n)
        if out is None:
            out = self._powers[n] = mpq(self.p) ** n
        return out

    def _blocks(self, g: GammaElt):
        u = g.u
        B = (self._pow(g.n2), u[6], _ZERO, self._pow(g.n3))
        X = (u[0], u[1], u[3], u[4])
        Y = (u[2], u[5])
        Z = (u[7], u[8])
        return g.sl2, B, X, Y, Z

    def _assemble(self, A, n2, n3, B, X, Y, Z) -> GammaElt:
        return GammaElt(A, n2, n3,
                        (X[0], X[1], Y[0], X[2], X[3], Y[1], B[1], Z[0], Z[1]))

    # group structure -----------------------------------------------------

    identity = IDENTITY

    def mul(self, g: GammaElt, h: GammaElt) -> GammaElt:
        A1, B1, X1, Y1, Z1 = self._blocks(g)
        A2, B2, X2, Y2, Z2 = self._blocks(h)
        A = _mm_int(A1, A2)
        B = _mm(B1, B2)
        X = _add(_mm(A1, X2), _mm(X1, B2))
        Y = _add(_mv(A1, Y2), _mv(X1, Z2), Y1)
        Z = _add(_mv(B1, Z2), Z1)
        return self._assemble(A, g.n2 + h.n2, g.n3 + h.n3, B, X, Y, Z)

    def inv(self, g: GammaElt) -> GammaElt:
        A, B, X, Y, Z = self._blocks(g)
        a, b, c, d = A
        Ai = (d, -b, -c, a)
        Bi = (self._pow(-g.n2), -B[1] * self._pow(-g.n2 - g.n3), _ZERO, self._pow(-g.n3))
        Xi = _neg(_mm(_mm(Ai, X), Bi))
        Zi = _neg(_mv(Bi, Z))
        Yi = _neg(_mv(Ai, _add(Y, _mv(X, Zi))))
        return self._assemble(Ai, -g.n2, -g.n3, Bi, Xi, Yi, Zi)

    def power(self, g: GammaElt, n: int) -> GammaElt:
        if n < 0:
            g, n = self.inv(g), -n
        out = IDENTITY
        while n:
            if n & 1:
                out = self.mul(out, g)
            g = self.mul(g, g)
            n >>= 1
        return out

    def conjugate(self, g: GammaElt, h: GammaElt) -> GammaElt:
        """h g h^-1."""
        return self.mul(self.mul(h, g), self.inv(h))

    def commutator(self, g: GammaElt, h: GammaElt) -> GammaElt:
        """g h g^-1 h^-1."""
        return self.mul(self.mul(g, h), self.mul(self.inv(g), self.inv(h)))

    def evaluate(self, word, generators) -> GammaElt:
        """Evaluate a word given as a sequence of (generator index, +1/-1)."""
        out = IDENTITY
        for i, e in word:
            out = self.mul(out, generators[i] if e > 0 else self.inv(generators[i]))
        return out

    def is_valid(self, g: GammaElt) -> bool:
        a, b, c, d = g.sl2
        return (all(isinstance(x, int) for x in g.sl2) and a * d - b * c == 1
                and isinstance(g.n2, int) and isinstance(g.n3, int) and len(g.u) == 9
                and all(type(x) is mpq and is_p_local(x, self.p) for x in g.u))

    def check(self, g: GammaElt) -> GammaElt:
        if not self.is_valid(g):
            raise ValueError(f"not an element of Gamma for p={self.p}: {g}")
        return g

    # named elements ------------------------------------------------------

    def x(self, key: str, q=1) -> GammaElt:
        """Elementary unipotent element with a single off-diagonal entry u_key = q."""
        return IDENTITY.replace_u(**{key: q})

    def t(self, n2: int = 0, n3: int = 0) -> GammaElt:
        return GammaElt(n2=n2, n3=n3)

    def m_elt(self, m1, m2) -> GammaElt:
        return IDENTITY.replace_u(**{"04": m1, "14": m2})

    S = GammaElt(sl2=(0, -1, 1, 0))
    T = GammaElt(sl2=(1, 1, 0, 1))

    def default_generators(self) -> list:
        """S, T, t2, t3, x02(1), x23(1), x34(1)."""
        return [self.S, self.T, self.t(1, 0), self.t(0, 1),
                self.x("02"), self.x("23"), self.x("34")]

    DEFAULT_GENERATOR_NAMES = ("S", "T", "t2", "t3", "x02", "x23", "x34")

    # subgroups -----------------------------------------------------------

    @staticmethod
    def is_in_upsilon(g: GammaElt) -> bool:
        return g.n2 == 0 and g.n3 == 0

    @staticmethod
    def is_in_lambda(g: GammaElt) -> bool:
        return tuple(g.sl2) == (1, 0, 0, 1)

    @staticmethod
    def is_in_M(g: GammaElt) -> bool:
        return (Gamma.is_in_lambda(g) and Gamma.is_in_upsilon(g)
                and all(x == 0 for k, x in zip(U_KEYS, g.u) if k not in ("04", "14")))

    @staticmethod
    def is_in_MZ(g: GammaElt) -> bool:
        return Gamma.is_in_M(g) and g.entry("04").denominator == 1 and g.entry("14").denominator == 1

    def is_in_upsilon_m(self, g: GammaElt, m: int) -> bool:
        """Membership in the m-th filtration subgroup: an entry u_ij of degree
        deg(i,j) must lie in p^(-deg*m) Z."""
        if not self.is_in_upsilon(g):
            raise ValueError("filtration membership is defined on Upsilon (n2 = n3 = 0) only")
        if m < 0:
            raise ValueError("m must be nonnegative")
        return all(in_scaled_lattice(x, self.p, -U_DEGREE[k] * m) for k, x in zip(U_KEYS, g.u))

    def is_in_upsilon_m_literal(self, g: GammaElt, m: int) -> bool:
        """The filtration condition read verbatim as printed (not a subgroup)."""
        if not self.is_in_upsilon(g):
            raise ValueError("filtration membership is defined on Upsilon (n2 = n3 = 0) only")
        return all(in_scaled_lattice(g.entry(k), self.p, -d * m) for k, d in _LITERAL_DEPTHS)

    def is_in_xi_m(self, g: GammaElt, m: int) -> bool:
        return self.is_in_lambda(g) and self.is_in_upsilon(g) and self.is_in_upsilon_m(g, m)

    def literal_filtration_counterexample(self, m: int = 1):
        """(a, b, a*b) with a, b in the literal set but a*b outside it.

        a = x23(p^-m), b = x34(p^-m); the product has u24 = p^(-2m).
        """
        if m < 1:
            raise ValueError("the literal condition only differs from the graded one for m >= 1")
        q = mpq(1, self.p ** m)
        a, b = self.x("23", q), self.x("34", q)
        return a, b, self.mul(a, b)

    @staticmethod
    def proj_z2(g: GammaElt) -> tuple:
        return (g.n2, g.n3)

    # quotient by M_Z -----------------------------------------------------

    @staticmethod
    def canonical_mod_MZ(g: GammaElt) -> CosetRep:
        """Representative of g M_Z with u04, u14 reduced into [0, 1).

        Right multiplication by (m1, m2) in M_Z shifts (u04, u14) by A (m1, m2),
        and A Z^2 = Z^2 for A in SL2(Z), so this is a complete invariant.
        """
        u = g.u
        y0, y1 = u[2], u[5]
        r0, r1 = y0 - (y0.numerator // y0.denominator), y1 - (y1.numerator // y1.denominator)
        if r0 == y0 and r1 == y1:
            return g
        return GammaElt(g.sl2, g.n2, g.n3, u[:2] + (r0,) + u[3:5] + (r1,) + u[6:])

    def order_in_M_mod_MZ(self, g: GammaElt) -> int:
        if not self.is_in_M(g):
            raise ValueError("element is not in M")
        c = self.canonical_mod_MZ(g)
        vals = [vp(c.entry(k), self.p) for k in ("04", "14")]
        low = min(vals)
        if low is INFINITY:
            return 1
        return self.p ** max(0, -low)

    def discriminating_set(self) -> list:
        """The p^2 - 1 elements of order p in M / M_Z, as coset representatives."""
        p = self.p
        return [self.m_elt(mpq(a, p), mpq(b, p))
                for a in range(p) for b in range(p) if (a, b) != (0, 0)]

    def order_p_witness(self, g: GammaElt) -> CosetRep:
        """For g in M \\ M_Z: the power g^(p^(k-1)) mod M_Z, which has order p."""
        if not self.is_in_M(g) or self.is_in_MZ(g):
            raise ValueError("witness is defined for elements of M outside M_Z")
        order = self.order_in_M_mod_MZ(g)
        return self.canonical_mod_MZ(self.power(g, order // self.p))

    # sampling ------------------------------------------------------------

    def random_plocal(self, rng: random.Random, depth: int, num_bound: int) -> mpq:
        """Numerator uniform in [-num_bound, num_bound] over p^k, k uniform in [0, depth]."""
        return mpq(rng.randint(-num_bound, num_bound), self.p ** rng.randint(0, depth))

    def random_sl2(self, rng: random.Random, length: int = 6) -> tuple:
        S, T = self.S.sl2, self.T.sl2
        Si, Ti = (0, 1, -1, 0), (1, -1, 0, 1)
        A = (1, 0, 0, 1)
        for _ in range(rng.randint(0, length)):
            A = _mm_int(A, rng.choice((S, T, Si, Ti)))
        return A

    def random_element(self, rng, n_bound: int = 2, depth: int = 2, num_bound: int = 5,
                       sl2_length: int = 6) -> GammaElt:
        """Random element; ``rng`` is a random.Random or an integer seed."""
        if not isinstance(rng, random.Random):
            rng = random.Random(rng)
        A = self.random_sl2(rng, sl2_length)
        n2, n3 = rng.randint(-n_bound, n_bound), rng.randint(-n_bound, n_bound)
        u = tuple(self.random_plocal(rng, depth, num_bound) for _ in U_KEYS)
        return GammaElt(A, n2, n3, u)

    def random_upsilon_m(self, rng: random.Random, m: int, num_bound: int = 5,
                         lam: bool = False) -> GammaElt:
        """Random member of the m-th filtration subgroup (of its Lambda part if ``lam``)."""
        A = (1, 0, 0, 1) if lam else self.random_sl2(rng)
        u = tuple(mpq(rng.randint(-num_bound, num_bound),
                           self.p ** rng.randint(0, U_DEGREE[k] * m)) for k in U_KEYS)
        return GammaElt(A, 0, 0, u)

    def random_M(self, rng: random.Random, depth: int = 3, num_bound: int = 20,
                 integral: bool = False) -> GammaElt:
        if integral:
            return self.m_elt(rng.randint(-num_bound, num_bound), rng.randint(-num_bound, num_bound))
        return self.m_elt(self.random_plocal(rng, depth, num_bound),
                          self.random_plocal(rng, depth, num_bound))

    def random_M_not_MZ(self, rng: random.Random, depth: int = 4, num_bound: int = 50) -> GammaElt:
        while True:
            g = self.random_M(rng, depth, num_bound)
            if not self.is_in_MZ(g):
                return g
