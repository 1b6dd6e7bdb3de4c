"""Verification sweeps shared by the CLI and the test-suite."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import action, algebra
from . import diagrams as dg
from .diagrams import GPartition
from .groups import FiniteGroup
from .morphisms import Morphism
from .relations import RELATIONS, relation_suite
from .words import evaluate, parse_word

DEFAULT_SEED = 20240611


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, **({"detail": self.detail} if self.detail else {})}


@dataclass
class Report:
    suite: str
    group: str
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"suite": self.suite, "group": self.group, "passed": self.passed,
                "total": len(self.checks), "failed": sum(not c.passed for c in self.checks),
                "checks": [c.to_json() for c in self.checks]}

    def summary(self) -> str:
        bad = [c for c in self.checks if not c.passed]
        head = f"{self.suite} [{self.group}]: {len(self.checks) - len(bad)}/{len(self.checks)} passed"
        return "\n".join([head] + [f"  FAIL {c.name}" for c in bad])


# ------------------------------------------------------------ random data

def random_diagram(k: int, l: int, group: FiniteGroup, rng: random.Random) -> GPartition:
    """Random class of type ``k -> l`` (growth string built left to right)."""
    n = k + l
    blocks = []
    top = -1
    for _ in range(n):
        b = rng.randint(0, top + 1)
        top = max(top, b)
        blocks.append(b)
    labels = [rng.randrange(group.order) for _ in range(n)]
    return dg.canonicalize(k, l, blocks, labels, group)


def generator_diagrams(group: FiniteGroup) -> list[GPartition]:
    gens = [dg.empty(group), dg.identity(1, group), dg.merge(group), dg.split(group),
            dg.crossing(group), dg.pin_bottom(group), dg.pin_top(group)]
    gens += [dg.token(g, group) for g in group.elements if g]
    return gens


# ----------------------------------------------------------------- suites

def relations_report(group: FiniteGroup) -> Report:
    checks = [Check(f"{r.family}: {r.name}", r.passed,
                    {"instances": r.instances, **({"counterexample": r.counterexample} if r.counterexample else {})})
              for r in relation_suite(group)]
    return Report("relations", group.name, checks)


def _functor_pair(q: GPartition, p: GPartition, n: int) -> bool:
    lhs = action.phi_morphism(Morphism.diagram(q) @ Morphism.diagram(p), n)
    return lhs == action.phi_diagram(q, n) @ action.phi_diagram(p, n)


def _tensor_pair(a: GPartition, b: GPartition, n: int) -> bool:
    return action.phi_diagram(dg.tensor(a, b), n) == action.phi_diagram(a, n).kron(action.phi_diagram(b, n))


def functor_report(group: FiniteGroup, max_kl: int = 2, max_n: int = 2, samples: int = 200,
                   seed: int = DEFAULT_SEED) -> Report:
    rng = random.Random(seed)
    checks = []
    gens = generator_diagrams(group)
    for n in range(1, max_n + 1):
        bad = [(str(q), str(p)) for q in gens for p in gens if q.k == p.l and not _functor_pair(q, p, n)]
        checks.append(Check(f"compose generators n={n}", not bad, {"failures": bad[:3]} if bad else {}))
        bad = [(str(a), str(b)) for a in gens for b in gens if not _tensor_pair(a, b, n)]
        checks.append(Check(f"tensor generators n={n}", not bad, {"failures": bad[:3]} if bad else {}))
    bad_c, bad_t = [], []
    for _ in range(samples):
        n = rng.randint(1, max_n)
        k, l, m = (rng.randint(0, max_kl) for _ in range(3))
        p, q = random_diagram(k, l, group, rng), random_diagram(l, m, group, rng)
        if not _functor_pair(q, p, n):
            bad_c.append((str(q), str(p), n))
        a, b = random_diagram(k, l, group, rng), random_diagram(m, k, group, rng)
        if not _tensor_pair(a, b, n):
            bad_t.append((str(a), str(b), n))
    checks.append(Check(f"compose random x{samples}", not bad_c, {"failures": bad_c[:3]} if bad_c else {}))
    checks.append(Check(f"tensor random x{samples}", not bad_t, {"failures": bad_t[:3]} if bad_t else {}))
    for n in range(1, max_n + 1):
        bad = []
        for kl in range(max_kl * 2 + 1):
            for k in range(kl + 1):
                for p in dg.enumerate_diagrams(k, kl - k, group):
                    if action.phi_diagram(p, n) != action.phi_via_generators(p, n):
                        bad.append(str(p))
        checks.append(Check(f"matrix coefficients vs generators n={n}", not bad, {"failures": bad[:3]} if bad else {}))
    for n in range(1, max_n + 1):
        checks.append(relation_transport(group, n))
    return Report("functor", group.name, checks)


def relation_transport(group: FiniteGroup, n: int) -> Check:
    """Both sides of every relation have equal images (loop value ``n|G|``)."""
    bad = []
    for rel in RELATIONS:
        for g, h, lt, rt in rel.instances(group):
            lhs = action.phi_morphism(evaluate(parse_word(lt), group), n)
            rhs = action.phi_morphism(evaluate(parse_word(rt), group).scale(rel.scalar(group, g, h)), n)
            if lhs != rhs:
                bad.append(f"{rel.family}: {rel.name} (g={g}, h={h})")
    return Check(f"relation images n={n}", not bad, {"failures": bad[:3]} if bad else {})


def kangaroo_report(group: FiniteGroup, k: Optional[int] = None, l: Optional[int] = None,
                    n: Optional[int] = None, max_kl: int = 2, max_n: int = 4) -> Report:
    ks = [k] if k is not None else range(max_kl + 1)
    ls = [l] if l is not None else range(max_kl + 1)
    ns = [n] if n is not None else range(0, max_n + 1)
    checks = []
    for kk in ks:
        for ll in ls:
            for nn in ns:
                rep = action.hom_rank(kk, ll, nn, group)
                checks.append(Check(f"Hom({kk},{ll}) n={nn}: rank {rep.rank}/{rep.dim}", rep.ok, rep.to_json()))
    return Report("kangaroo", group.name, checks)


GRAM_GENERIC = (Fraction(5), Fraction(7, 2))


def gram_report(group: FiniteGroup, k: int = 1) -> Report:
    det = algebra.gram_determinant(k, group)
    dim = algebra.algebra_dim(k, group)
    checks = [Check(f"Gram determinant k={k} nonzero", not det.is_zero(), {"determinant": str(det)})]
    for n in range(2 * k):
        d0 = n * group.order
        r = algebra.gram_rank(k, group, d0)
        checks.append(Check(f"rank deficient at d={d0}", r < dim, {"rank": r, "dim": dim}))
    for d0 in GRAM_GENERIC:
        r = algebra.gram_rank(k, group, d0)
        checks.append(Check(f"full rank at d={d0}", r == dim, {"rank": r, "dim": dim}))
    return Report("gram", group.name, checks)


def centralizer_checks(group: FiniteGroup, k: int, ns=(1, 2, 3)) -> Report:
    checks = []
    for n in ns:
        rep = algebra.centralizer_report(k, n, group)
        checks.append(Check(f"P_{k} -> End n={n}", rep.ok, rep.to_json()))
    return Report("centralizer", group.name, checks)
