"""Seeded randomized identity suites.

Every suite draws small random inputs from a ``random.Random(seed)`` and
checks an exact identity; a case fails when the two sides differ.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .chains import (Chain, boundary_b, connes_B_full, cyclic_T, tor_d, xi, xi_prime)
from .koszul import KoszulVector, f_map, index_sets, koszul_differential, slq2_system
from .qsl2 import QSL2, Automorphism, right_action_closed, right_action_hopf


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: int
    seed: int
    first_failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_dict(self):
        return {"name": self.name, "cases": self.cases, "failures": self.failures,
                "seed": self.seed, "first_failure": self.first_failure,
                "verdict": "pass" if self.ok else "fail"}


class _Draw:
    """Random small monomials, elements, chains and automorphisms."""

    def __init__(self, A: QSL2, rng: random.Random, I: int = 2, L: int = 2):
        self.A, self.F, self.rng, self.I, self.L = A, A.F, rng, I, L

    def mono(self, L=None):
        L = self.L if L is None else L
        lev = self.rng.randint(0, L)
        j = self.rng.randint(0, lev)
        return (self.rng.randint(-self.I, self.I), j, lev - j)

    def coeff(self):
        c = self.rng.choice([1, -1, 2, -3, Fraction(1, 2)])
        return self.F(c) * self.F.qpow(self.rng.randint(-2, 2))

    def element(self, terms=2, L=None):
        acc = {}
        for _ in range(self.rng.randint(1, terms)):
            m = self.mono(L)
            acc[m] = acc.get(m, self.F.zero) + self.coeff()
        return self.A.element(acc)

    def chain(self, n, terms=1, L=1):
        out = Chain(self.A, n)
        for _ in range(terms):
            t = tuple(self.mono(L) for _ in range(n + 1))
            out = out + Chain(self.A, n, {t: self.coeff()})
        return out

    def scalar(self):
        if self.rng.random() < 0.2:
            return self.F(self.rng.choice([2, 3, Fraction(3, 2), Fraction(-1, 2)]))
        return self.F.qpow(self.rng.randint(-4, 4))

    def sigma(self):
        return Automorphism("sigma", self.scalar(), self.scalar())


def _delta3_left(A, x):
    """(Delta (x) id) Delta as {(u, v, w): c}."""
    acc = {}
    for (u, w), c in A.coproduct(x).terms.items():
        for (u1, u2), e in A._delta_mono(u).items():
            k = (u1, u2, w)
            acc[k] = acc.get(k, A.F.zero) + c * e
    return {k: v for k, v in acc.items() if v}


def _delta3_right(A, x):
    acc = {}
    for (u, w), c in A.coproduct(x).terms.items():
        for (w1, w2), e in A._delta_mono(w).items():
            k = (u, w1, w2)
            acc[k] = acc.get(k, A.F.zero) + c * e
    return {k: v for k, v in acc.items() if v}


# each case function returns None on success or a short failure description


def case_field_axioms(d: _Draw):
    F = d.F
    x, y, z = d.coeff() + d.scalar(), d.coeff(), d.scalar() - d.coeff()
    if (x + y) + z != x + (y + z) or x + y != y + x:
        return f"addition on {x}, {y}, {z}"
    if (x * y) * z != x * (y * z) or x * y != y * x:
        return f"multiplication on {x}, {y}, {z}"
    if x * (y + z) != x * y + x * z:
        return f"distributivity on {x}, {y}, {z}"
    if x - x != F.zero or x + F.zero != x or x * F.one != x:
        return f"neutral elements on {x}"
    if x and x * (F.one / x) != F.one:
        return f"inverse of {x}"
    return None


def case_associativity(d: _Draw):
    x, y, z = d.element(), d.element(), d.element()
    if (x * y) * z != x * (y * z):
        return f"({x})({y})({z})"
    return None


def case_hopf(d: _Draw):
    A, F = d.A, d.F
    x, y = d.element(), d.element()
    dx = A.coproduct(x)
    if A.coproduct(x * y) != dx * A.coproduct(y):
        return f"Delta not multiplicative on {x}, {y}"
    if _delta3_left(A, x) != _delta3_right(A, x):
        return f"coassociativity on {x}"
    eps = lambda m: A.counit(A.element({m: F.one}))  # noqa: E731
    if dx.contract_left(eps) != x or dx.contract_right(eps) != x:
        return f"counit on {x}"
    target = A.scalar(A.counit(x))
    left = A.zero()
    right = A.zero()
    for (u, v), c in dx.terms.items():
        eu, ev = A.element({u: c}), A.element({v: F.one})
        left = left + A.antipode(eu) * ev
        right = right + eu * A.antipode(ev)
    if left != target or right != target:
        return f"antipode on {x}"
    if A.antipode(x * y) != A.antipode(y) * A.antipode(x):
        return f"S not anti-multiplicative on {x}, {y}"
    return None


def case_bb(d: _Draw):
    n = d.rng.randint(1, 3)
    sig = d.sigma()
    ch = d.chain(n, terms=2)
    bb = boundary_b(boundary_b(ch, sig), sig)
    return None if not bb.terms else f"b b != 0 on {ch}"


def case_neuegl(d: _Draw):
    """b B + B b = id - T on n-chains, n = 1, 2, 3."""
    n = d.rng.randint(1, 3)
    sig = d.sigma()
    ch = d.chain(n, terms=1)
    lhs = boundary_b(connes_B_full(ch, sig), sig) + connes_B_full(boundary_b(ch, sig), sig)
    rhs = ch - cyclic_T(ch, sig)
    return None if not (lhs - rhs).terms else f"bB + Bb != id - T on {ch}"


def case_xi(d: _Draw):
    n = d.rng.randint(1, 3)
    sig = d.sigma()
    small = _Draw(d.A, d.rng, I=1, L=1)
    ch = small.chain(n, terms=1)
    if (xi(xi_prime(ch, sig), sig) - ch).terms:
        return f"xi xi' != id on {ch}"
    if (xi(tor_d(ch, sig), sig) - boundary_b(xi(ch, sig), sig)).terms:
        return f"xi d != b xi on {ch}"
    return None


_SYSTEMS = {}


def _system(A):
    s = _SYSTEMS.get(id(A))
    if s is None:
        s = _SYSTEMS[id(A)] = slq2_system(A)
    return s


def _random_koszul(d: _Draw, n: int):
    comps = {I: d.element(terms=2) for I in index_sets(3, n) if d.rng.random() < 0.7}
    return KoszulVector(d.A, 3, n, comps)


def case_kk(d: _Draw):
    n = d.rng.randint(2, 3)
    sysm = _system(d.A)
    v = _random_koszul(d, n)
    kk = koszul_differential(koszul_differential(v, sysm), sysm)
    return None if not kk else f"k k != 0 on {v}"


def case_ff(d: _Draw):
    n = d.rng.randint(2, 3)
    sysm = _system(d.A)
    lam, mu = d.scalar(), d.scalar()
    v = _random_koszul(d, n)
    ff = f_map(f_map(v, sysm, lam, mu), sysm, lam, mu)
    return None if not ff else f"f f != 0 on {v} at ({lam}, {mu})"


def case_right_action(d: _Draw):
    A = d.A
    lam, mu = d.scalar(), d.scalar()
    x = d.element(terms=2, L=3)
    g = d.rng.choice("abc")
    lhs = right_action_closed(A, x, g, lam, mu)
    rhs = right_action_hopf(A, x, A.gen(g), Automorphism("sigma", lam, mu))
    return None if lhs == rhs else f"closed != Hopf form for {x} <| {g}"


SUITES = {
    "field": case_field_axioms,
    "associativity": case_associativity,
    "hopf": case_hopf,
    "bb": case_bb,
    "neuegl": case_neuegl,
    "xi": case_xi,
    "kk": case_kk,
    "ff": case_ff,
    "right_action": case_right_action,
}

# suite groups used by ``verify``
GROUPS = {
    "algebra": ["field", "associativity"],
    "hopf": ["hopf", "right_action"],
    "chains": ["bb", "neuegl", "xi"],
    "koszul": ["kk", "ff"],
}


def run_suite(name: str, F, cases: int = 1000, seed: int = 0) -> SuiteResult:
    fn = SUITES[name]
    A = QSL2(F)
    d = _Draw(A, random.Random(f"{name}:{seed}"))
    fails = 0
    first = None
    for _ in range(cases):
        msg = fn(d)
        if msg is not None:
            fails += 1
            if first is None:
                first = msg
    return SuiteResult(name, cases, fails, seed, first)


def run_all(F, cases: int = 1000, seed: int = 0, names=None) -> list:
    return [run_suite(n, F, cases, seed) for n in (names or SUITES)]


__all__ = ["GROUPS", "SUITES", "SuiteResult", "run_all", "run_suite"]
