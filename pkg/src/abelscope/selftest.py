"""Randomized invariant checks for Gamma and Gamma/M_Z.

Every trial draws from its own generator seeded by (seed, p, trial index), so
results do not depend on trial order.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .gamma import Gamma, GammaElt, IDENTITY

FILTRATION_LEVELS = (0, 1, 2)
NILPOTENCY_DEPTH = 4


def matmul5(a, b):
    """Literal product of two 5x5 Fraction matrices (independent of the block formulas)."""
    return [[sum((a[i][k] * b[k][j] for k in range(5) if a[i][k] and b[k][j]), Fraction(0))
             for j in range(5)] for i in range(5)]


def trial_rng(seed: int, p: int, trial: int) -> random.Random:
    return random.Random(f"{seed}:{p}:{trial}")


@dataclass
class SelftestReport:
    p: int
    trials: int
    seed: int
    checks: Counter = field(default_factory=Counter)
    violations: Counter = field(default_factory=Counter)
    first_counterexample: Optional[dict] = None
    literal_counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, name: str, ok: bool, **witness):
        self.checks[name] += 1
        if not ok:
            self.violations[name] += 1
            if self.first_counterexample is None:
                self.first_counterexample = {
                    "check": name,
                    **{k: (v.to_json() if isinstance(v, GammaElt) else v) for k, v in witness.items()},
                }

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "checks": dict(sorted(self.checks.items())),
            "violations": dict(sorted(self.violations.items())),
            "passed": self.passed,
            "first_counterexample": self.first_counterexample,
            "literal_filtration_counterexamples": self.literal_counterexamples,
        }


def _random_upsilon(G: Gamma, rng) -> GammaElt:
    g = G.random_element(rng)
    return GammaElt(g.sl2, 0, 0, g.u)


def _random_lambda(G: Gamma, rng) -> GammaElt:
    g = G.random_element(rng)
    return GammaElt((1, 0, 0, 1), g.n2, g.n3, g.u)


def _one_trial(G: Gamma, rng: random.Random, rep: SelftestReport):
    a, b, c = (G.random_element(rng) for _ in range(3))
    ab = G.mul(a, b)

    rep.record("associativity", G.mul(ab, c) == G.mul(a, G.mul(b, c)), a=a, b=b, c=c)
    rep.record("identity", G.mul(a, IDENTITY) == a == G.mul(IDENTITY, a), a=a)
    ai = G.inv(a)
    rep.record("inverse", G.mul(a, ai) == IDENTITY == G.mul(ai, a), a=a)
    rep.record("inverse_of_product", G.inv(ab) == G.mul(G.inv(b), ai), a=a, b=b)
    rep.record("closure", G.is_valid(ab) and G.is_valid(ai), a=a, b=b)
    rep.record("matrix_product", ab.matrix(G.p) == matmul5(a.matrix(G.p), b.matrix(G.p)), a=a, b=b)

    h = G.random_element(rng)
    for name, sample, pred in (
        ("normal_M", G.random_M(rng), G.is_in_M),
        ("normal_MZ", G.random_M(rng, integral=True), G.is_in_MZ),
        ("normal_upsilon", _random_upsilon(G, rng), G.is_in_upsilon),
        ("normal_lambda", _random_lambda(G, rng), G.is_in_lambda),
    ):
        rep.record(name, pred(G.conjugate(sample, h)), g=sample, h=h)

    for m in FILTRATION_LEVELS:
        x, y = G.random_upsilon_m(rng, m), G.random_upsilon_m(rng, m)
        ok = (G.is_in_upsilon_m(x, m) and G.is_in_upsilon_m(G.mul(x, y), m)
              and G.is_in_upsilon_m(G.inv(x), m))
        rep.record(f"filtration_closure_m{m}", ok, m=m, a=x, b=y)
        rep.record(f"filtration_increasing_m{m}", G.is_in_upsilon_m(x, m + 1), m=m, a=x)

    x, y = G.random_upsilon_m(rng, 1, lam=True), G.random_upsilon_m(rng, 1, lam=True)
    com = G.commutator(x, y)
    for _ in range(NILPOTENCY_DEPTH - 1):
        com = G.commutator(com, x)
    rep.record("xi_nilpotent", com == IDENTITY and G.is_in_xi_m(G.mul(x, y), 1), a=x, b=y)

    pa, pb, pab = G.proj_z2(a), G.proj_z2(b), G.proj_z2(ab)
    rep.record("proj_homomorphism", pab == (pa[0] + pb[0], pa[1] + pb[1]), a=a, b=b)
    rep.record("proj_kernel", (pa == (0, 0)) == G.is_in_upsilon(a)
               and G.proj_z2(_random_upsilon(G, rng)) == (0, 0), a=a)

    mz = G.random_M(rng, integral=True)
    ca = G.canonical_mod_MZ(a)
    ok = (G.canonical_mod_MZ(G.mul(a, mz)) == ca == G.canonical_mod_MZ(G.mul(mz, a))
          and G.canonical_mod_MZ(ca) == ca)
    rep.record("coset_canonical_form", ok, a=a, m=mz)


def group_selftest(p: int, trials: int = 1000, seed: int = 0) -> SelftestReport:
    G = Gamma(p)
    rep = SelftestReport(p=p, trials=trials, seed=seed)
    for t in range(trials):
        _one_trial(G, trial_rng(seed, p, t), rep)
    for m in (1, 2):
        a, b, ab = G.literal_filtration_counterexample(m)
        rep.literal_counterexamples.append({
            "m": m,
            "a": a.to_json(),
            "b": b.to_json(),
            "product": ab.to_json(),
            "literal_members": [G.is_in_upsilon_m_literal(a, m), G.is_in_upsilon_m_literal(b, m)],
            "literal_product_member": G.is_in_upsilon_m_literal(ab, m),
            "graded_members": [G.is_in_upsilon_m(a, m), G.is_in_upsilon_m(b, m),
                               G.is_in_upsilon_m(ab, m)],
        })
    return rep


@dataclass
class DiscriminationReport:
    p: int
    set_size: int
    all_order_p: bool
    samples: int
    witnesses_in_set: int

    @property
    def passed(self) -> bool:
        return (self.set_size == self.p ** 2 - 1 and self.all_order_p
                and self.witnesses_in_set == self.samples)

    def to_json(self) -> dict:
        return {"p": self.p, "set_size": self.set_size, "all_order_p": self.all_order_p,
                "samples": self.samples, "witnesses_in_set": self.witnesses_in_set,
                "passed": self.passed}


def order_by_iteration(G: Gamma, g: GammaElt, limit: int = 10 ** 6) -> int:
    """Order of g M_Z found by repeated multiplication."""
    x, n = g, 1
    while not G.is_in_MZ(x):
        x = G.mul(x, g)
        n += 1
        if n > limit:
            raise RuntimeError("order exceeds iteration limit")
    return n


def discrimination_suite(p: int, samples: int = 200, seed: int = 0) -> DiscriminationReport:
    G = Gamma(p)
    X = G.discriminating_set()
    keys = set(X)
    all_p = all(G.order_in_M_mod_MZ(x) == p and order_by_iteration(G, x) == p for x in X)
    rng = random.Random(f"discrimination:{seed}:{p}")
    hits = 0
    for _ in range(samples):
        g = G.random_M_not_MZ(rng)
        if G.order_p_witness(g) in keys:
            hits += 1
    return DiscriminationReport(p, len(X), all_p, samples, hits)
