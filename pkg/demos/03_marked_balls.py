"""Cayley balls of marked groups and where two markings stop agreeing.

Run: python demos/03_marked_balls.py
"""
from abelscope.gamma import Gamma
from abelscope.marked import agreement_radius, ball, divergence_witness, preset_marking, word_to_str

z = preset_marking("z")
for n in (3, 5, 8, 13):
    zn = preset_marking("z-mod", modulus=n)
    print(f"Z and Z/{n} agree up to radius {agreement_radius(z, zn, 8)}")

b = ball(preset_marking("gamma"), 2)
print(f"\nradius-2 ball of Gamma (p=2, seven generators): {b.vertex_count} vertices, "
      f"{len(b.edges)} edges")

# Gamma and Gamma/M_Z differ by a central subgroup, so balls only diverge once
# a word long enough to land in M_Z fits inside them
g, q = preset_marking("gamma"), preset_marking("gamma-mod-mz")
d = divergence_witness(g, q, 6)
print(f"\nballs of Gamma and Gamma/M_Z first differ at radius {d.radius}")
print("witness word:", word_to_str(d.word, Gamma.DEFAULT_GENERATOR_NAMES))
x = g.evaluate(d.word)
print("its value in Gamma:", x.entry("04"), x.entry("14"), " in M_Z:", Gamma(2).is_in_MZ(x))
