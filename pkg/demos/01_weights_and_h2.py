"""Weights, the abelianization, and H2 in weight zero for the nine-dimensional algebra.

Run: python demos/01_weights_and_h2.py
"""
from abelscope.homology import abels_check, d3_matrix, describe_chain, express_in_image, wedge_vector
from abelscope.liealg import abelianization_weights, build_paper_algebra
from abelscope.linalg import matvec

L = build_paper_algebra()
print("basis and weights:")
for label in L.labels:
    print(f"  {label}  {L.weight(L.index(label))}")

# the generators of the algebra are what survives in the abelianization
print("\nabelianization weights:", dict(abelianization_weights(L)))

verdict = abels_check(L)
print("\ncondition 1 (no segment through 0):", verdict.condition1)
print("condition 2 (H2 vanishes in weight 0):", verdict.condition2,
      f"(dim = {verdict.h2_weight0_dim})")

# every weight-0 cycle is a boundary; here is one explicitly
v = wedge_vector(L, {("e04", "e14"): 1}, 2)
c = express_in_image(L, v)


def show(chain):
    return " + ".join(f"({q}) {m}" for m, q in describe_chain(L, chain, 3).items())


print("\ne04^e14 = d3(", show(c), ")")
assert matvec(d3_matrix(L), c) == v

c2 = wedge_vector(L, {("e12", "e24", "e04"): 1}, 3)
print("also   = d3(", show(c2), "):", matvec(d3_matrix(L), c2) == v)
print("\nfinitely presented by the criterion:", verdict.finitely_presented)
