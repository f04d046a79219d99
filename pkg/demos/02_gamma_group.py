"""The group Gamma over Z[1/p], its normal subgroups M and M_Z, and the finite set X.

Run: python demos/02_gamma_group.py [p]
"""
import random
import sys
from fractions import Fraction

from abelscope.gamma import IDENTITY, Gamma

p = int(sys.argv[1]) if len(sys.argv) > 1 else 3
G = Gamma(p)
rng = random.Random(7)

g = G.random_element(rng)
h = G.random_element(rng)
print("g =", g.to_json())
print("g h g^-1 h^-1 lies in the kernel of the projection to Z^2:",
      G.proj_z2(G.commutator(g, h)) == (0, 0))

# the torus t2 scales x23 by p, so conjugation moves entries up and down the filtration
t2 = G.t(1, 0)
print("\nt2 x23(1) t2^-1 =", G.conjugate(G.x("23", 1), t2).entry("23"))

# an element of M that is not in M_Z, and its order modulo M_Z
m = G.m_elt(1, Fraction(1, p ** 2))
print("\nm =", m.entry("04"), m.entry("14"), " in M_Z?", G.is_in_MZ(m))
print("order of m modulo M_Z:", G.order_in_M_mod_MZ(m))

w = G.order_p_witness(m)
X = G.discriminating_set()
print("power of m of order p:", w.entry("04"), w.entry("14"), " in X:", w in X)
print(f"|X| = {len(X)} = p^2 - 1")

# modulo M_Z the whole set X is nontrivial, while M_Z itself collapses
print("\ncanonical form of an element of M_Z is trivial:",
      G.canonical_mod_MZ(G.m_elt(5, -3)) == IDENTITY)
