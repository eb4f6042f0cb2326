"""Koszul-type resolution of the trivial module and the complexes it yields.

A d-dimensional Koszul system is a matrix ``x[i][j]`` (rows i = 1..d,
columns j = 1..d) of algebra elements satisfying the braid relation
``x_{i,j} x_{i-1,k} = x_{i,k} x_{i-1,j}`` for j, k in each row pair. The
free left modules ``F_n = A^{C(d,n)}`` have basis ``e_I`` for increasing
index tuples I of length n, and

    k_n(y e_I) = (-1)^n sum_m (-1)^m y x_{n, i_m} e_{I minus i_m}.

For A(SL_q(2)) the rows are ``(q^{-(n-1)} a - 1, b, c)``. Tensoring with the
twisted module A_sigma (right action ``<|``) replaces right
multiplication by ``<|`` and gives the complex ``f_n`` whose homology is
the twisted Hochschild homology.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .chains import Chain
from .qsl2 import ONE, QSL2, Automorphism, Element, _add_into, right_action_closed, right_action_hopf


def index_sets(d: int, n: int):
    return list(itertools.combinations(range(1, d + 1), n))


@dataclass
class KoszulSystem:
    """A matrix of algebra elements x[(i, j)] with 1 <= i, j <= d."""

    alg: QSL2
    d: int
    x: dict

    def braid_defects(self):
        """Pairs (i, j, k) where the braid relation fails."""
        bad = []
        for i in range(2, self.d + 1):
            for j in range(1, self.d + 1):
                for k in range(1, self.d + 1):
                    lhs = self.x[(i, j)] * self.x[(i - 1, k)]
                    rhs = self.x[(i, k)] * self.x[(i - 1, j)]
                    if lhs != rhs:
                        bad.append((i, j, k))
        return bad

    def is_koszul(self) -> bool:
        return not self.braid_defects()

    def entry_terms(self, n: int, i: int):
        """Decompose x_{n,i} as {generator name or '1': scalar}."""
        names = {(1, 0, 0): "a", (0, 1, 0): "b", (0, 0, 1): "c", ONE: "1"}
        out = {}
        for m, c in self.x[(n, i)].terms.items():
            if m not in names:
                return None
            out[names[m]] = c
        return out


def slq2_system(alg: QSL2) -> KoszulSystem:
    F = alg.F
    a, b, c = alg.gen("a"), alg.gen("b"), alg.gen("c")
    x = {}
    for n in (1, 2, 3):
        x[(n, 1)] = a * F.qpow(-(n - 1)) - alg.one()
        x[(n, 2)] = b
        x[(n, 3)] = c
    return KoszulSystem(alg, 3, x)


def epsilon(F, i: int, j: int, k: int, lam, mu):
    """epsilon_{i,j,k} = q^{i+j+k+2} lam mu^{-1}."""
    return F.qpow(i + j + k + 2) * lam / mu


def wedge_expand(indices, system: KoszulSystem) -> Chain:
    """sum over permutations s of (-1)^s x_{n,i_s(n)} (x) ... (x) x_{1,i_s(1)}.

    The result is an n-fold tensor, stored as a Chain of degree n - 1.
    """
    A = system.alg
    F = A.F
    n = len(indices)
    total = None
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for u in range(n) for v in range(u + 1, n) if perm[u] > perm[v])
        # slot r (0-based) carries row n - r and index i_{s(n - r)}
        elems = [system.x[(n - r, indices[perm[n - 1 - r]])] for r in range(n)]
        ch = Chain.from_tensor(A, elems, F.one if inv % 2 == 0 else -F.one)
        total = ch if total is None else total + ch
    return total


class KoszulVector:
    """An element of F_n: {index tuple I: coefficient element}."""

    __slots__ = ("alg", "d", "n", "comps")

    def __init__(self, alg: QSL2, d: int, n: int, comps=None):
        self.alg = alg
        self.d = d
        self.n = n
        self.comps = {tuple(I): e for I, e in (comps or {}).items() if e}

    @classmethod
    def from_list(cls, alg, d, n, elems):
        return cls(alg, d, n, dict(zip(index_sets(d, n), elems)))

    def component(self, I) -> Element:
        return self.comps.get(tuple(I), self.alg.zero())

    def as_list(self):
        return [self.component(I) for I in index_sets(self.d, self.n)]

    def __add__(self, other):
        out = dict(self.comps)
        for I, e in other.comps.items():
            out[I] = out[I] + e if I in out else e
        return KoszulVector(self.alg, self.d, self.n, out)

    def __neg__(self):
        return KoszulVector(self.alg, self.d, self.n, {I: -e for I, e in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return KoszulVector(self.alg, self.d, self.n, {I: e * s for I, e in self.comps.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, KoszulVector) and self.n == other.n
                and self.comps == other.comps)

    def __bool__(self):
        return bool(self.comps)

    def __str__(self):
        parts = []
        for I in index_sets(self.d, self.n):
            parts.append(str(self.component(I)))
        return "(" + ", ".join(parts) + ")"

    def __repr__(self):
        return f"KoszulVector(n={self.n}, {self})"


def _faces(I):
    for m, i in enumerate(I, start=1):
        yield m, i, I[:m - 1] + I[m:]


def koszul_differential(v: KoszulVector, system: KoszulSystem) -> KoszulVector:
    """k_n: F_n -> F_{n-1}, right multiplication by the system entries."""
    n = v.n
    out = {}
    for I, y in v.comps.items():
        for m, i, J in _faces(I):
            term = y * system.x[(n, i)]
            if (n + m) % 2:
                term = -term
            out[J] = out[J] + term if J in out else term
    return KoszulVector(v.alg, v.d, n - 1, out)


class ActionCache:
    """Memoized closed-form ``e_m <| g`` for one sigma_{lam, mu}."""

    def __init__(self, alg: QSL2, lam, mu):
        self.alg = alg
        self.lam = lam
        self.mu = mu
        self._cache = {}

    def act(self, m, g: str) -> dict:
        key = (m, g)
        hit = self._cache.get(key)
        if hit is None:
            hit = right_action_closed(self.alg, self.alg.element({m: self.alg.F.one}), g,
                                      self.lam, self.mu).terms
            self._cache[key] = hit
        return hit

    def act_entry(self, m, entry: dict) -> dict:
        """e_m <| (sum of scalar * generator or unit)."""
        acc = {}
        for g, c in entry.items():
            if g == "1":
                _add_into(acc, {m: c})
            else:
                _add_into(acc, self.act(m, g), c)
        return acc


def f_map(v: KoszulVector, system: KoszulSystem, lam, mu, cache: ActionCache | None = None,
          hopf_form: bool = False) -> KoszulVector:
    """f_n = id (x) k_n on A_sigma (x)_A F_n, with sigma = sigma_{lam, mu}."""
    A = v.alg
    n = v.n
    cache = cache or ActionCache(A, lam, mu)
    sig = Automorphism("sigma", lam, mu)
    out = {}
    for I, y in v.comps.items():
        for m_pos, i, J in _faces(I):
            terms = system.entry_terms(n, i)
            if hopf_form or terms is None:
                img = right_action_hopf(A, y, system.x[(n, i)], sig).terms
            else:
                img = {}
                for mono, c in y.terms.items():
                    _add_into(img, cache.act_entry(mono, terms), c)
            sgn = -1 if (n + m_pos) % 2 else 1
            cur = out.setdefault(J, {})
            _add_into(cur, img, sgn)
    return KoszulVector(A, v.d, n - 1, {J: A.element(t) for J, t in out.items()})


def f_on_basis(n: int, I, m, system: KoszulSystem, cache: ActionCache) -> dict:
    """Coordinates {(J, monomial): scalar} of f_n(e_m e_I)."""
    out = {}
    for m_pos, i, J in _faces(tuple(I)):
        img = cache.act_entry(m, system.entry_terms(n, i))
        sgn = -1 if (n + m_pos) % 2 else 1
        for mono, c in img.items():
            _add_into(out, {(J, mono): c * sgn})
    return out


def k_on_basis(n: int, I, m, system: KoszulSystem) -> dict:
    """Coordinates of k_n(e_m e_I) (right multiplication)."""
    A = system.alg
    out = {}
    for m_pos, i, J in _faces(tuple(I)):
        sgn = -1 if (n + m_pos) % 2 else 1
        for g_m, c in system.x[(n, i)].terms.items():
            for mono, e in A.mul_mono(m, g_m).items():
                _add_into(out, {(J, mono): c * e * sgn})
    return out


# ---------------------------------------------------------------------------
# comparison with the Tor complex


def comparison_map(v: KoszulVector, system: KoszulSystem) -> Chain:
    """phi_n: F_n (tensored with A_sigma) -> A (x) A^{(x) n} for n <= 3."""
    A = v.alg
    F = A.F
    n = v.n
    x = system.x
    total = Chain(A, n)
    if n == 0:
        return Chain.from_tensor(A, [v.component(())])
    if n == 1:
        for (i,), y in v.comps.items():
            total = total + Chain.from_tensor(A, [y, x[(1, i)]])
        return total
    if n == 2:
        b, c = A.gen("b"), A.gen("c")
        a1, a2 = x[(1, 1)], x[(2, 1)]
        rules = {
            (1, 2): [(1, b, a1), (-1, a2, b)],
            (1, 3): [(1, c, a1), (-1, a2, c)],
            (2, 3): [(1, c, b), (-1, b, c)],
        }
        for I, y in v.comps.items():
            for s, u, w in rules[I]:
                total = total + Chain.from_tensor(A, [y, u, w], F.from_rational(s))
        return total
    if n == 3:
        vv = _phi3_tail(A, system)
        y = v.component((1, 2, 3))
        for t, s in vv:
            total = total + Chain.from_tensor(A, [y] + list(t), F.from_rational(s))
        return total
    raise ValueError("comparison map implemented for n <= 3")


def _phi3_tail(A: QSL2, system: KoszulSystem):
    b, c = A.gen("b"), A.gen("c")
    a1, a2, a3 = system.x[(1, 1)], system.x[(2, 1)], system.x[(3, 1)]
    return [
        ((a3, b, c), -1),
        ((a3, c, b), 1),
        ((c, a2, b), -1),
        ((c, b, a1), 1),
        ((b, c, a1), -1),
        ((b, a2, c), 1),
    ]


# ---------------------------------------------------------------------------
# exactness of the resolution on a window


@dataclass
class ResolutionReport:
    degree: int
    w: int
    kernel_dim: int
    covered: int

    @property
    def exact(self) -> bool:
        return self.kernel_dim == self.covered


def _gshift(system: KoszulSystem, I) -> int:
    """w-degree carried by e_I under right multiplication."""
    w = 0
    for i in I:
        m = next(iter(system.x[(1, i)].terms))
        w += m[1] - m[2]
    return w


def resolution_slice_basis(system: KoszulSystem, n: int, w: int, I_max: int, L: int):
    """Basis (I, monomial) of F_n in total w-degree w, |i| <= I_max, level <= L."""
    out = []
    for I in index_sets(system.d, n):
        ww = w - _gshift(system, I)
        for i in range(-I_max, I_max + 1):
            lev = abs(ww)
            while lev <= L:
                out.append((I, (i, (lev + ww) // 2, (lev - ww) // 2)))
                lev += 2
    return out


def verify_resolution(alg: QSL2, I_max: int = 2, L: int = 4, margin: int = 2, w_range=None):
    """Check exactness of the SL_q(2) resolution on window slices.

    For each w-slice and degree n in {1, 2, 3} every kernel vector of k_n
    on the window must be hit by k_{n+1} from the enlarged window
    (|i| <= I_max + 1, level <= L + margin). Degree 0 checks that the
    kernel of the counit is the image of k_1.
    """
    from . import exactla

    F = alg.F
    system = slq2_system(alg)
    reports = []
    ws = range(-L, L + 1) if w_range is None else w_range
    for w in ws:
        for n in (0, 1, 2, 3):
            dom = resolution_slice_basis(system, n, w, I_max, L)
            if n == 0:
                # kernel of the counit: monomials with j + k > 0 and a^i - 1
                units = [m for (_, m) in dom if not (m[1] or m[2])]
                kvecs = [{((), m): F.one} for (_, m) in dom if m[1] or m[2]]
                kvecs += [{((), u): F.one, ((), units[0]): -F.one} for u in units[1:]]
            else:
                cols = [k_on_basis(n, I, m, system) for (I, m) in dom]
                kvecs = [exactla.combine(F, [{(dom[j]): F.one} for j in range(len(dom))], rel)
                         for rel in exactla.kernel_basis(F, cols)]
            if n == 3:
                reports.append(ResolutionReport(n, w, len(kvecs), 0))
                continue
            big = resolution_slice_basis(system, n + 1, w, I_max + 1, L + margin)
            img = [k_on_basis(n + 1, I, m, system) for (I, m) in big]
            covered = 0
            for v in kvecs:
                ok, _ = exactla.solve_membership(F, img, v)
                covered += ok
            reports.append(ResolutionReport(n, w, len(kvecs), covered))
    return reports


# ---------------------------------------------------------------------------
# a chain map from the Tor complex back to the Koszul complex

_W_SHIFT = {1: 0, 2: 1, 3: -1}


def _counit_mono(m) -> int:
    return 1 if (m[1] == 0 and m[2] == 0) else 0


class KoszulLift:
    """Chain map Psi from the Tor complex to the twisted Koszul complex.

    On the free side P_n(a_1, ..., a_n) in F_n is chosen with P_0() = 1 and

        k_n P_n(a) = a_1 P_{n-1}(a_2, ..., a_n)
                     + sum_{i<n} (-1)^i P_{n-1}(..., a_i a_{i+1}, ...)
                     + (-1)^n eps(a_n) P_{n-1}(a_1, ..., a_{n-1}),

    which makes Psi_n(m, a) = sum_I (m <| P_n(a)_I) e_I a chain map. P_1
    peels the PBW word; higher P_n are exact preimages under k_n. Any such
    choice induces the same map on homology.
    """

    def __init__(self, system: KoszulSystem, sig: Automorphism):
        self.system = system
        self.alg = system.alg
        self.sig = sig
        F = self.alg.F
        self._p = {(): {((), ONE): F.one}}

    # free part ---------------------------------------------------------

    def _peel(self, m) -> dict:
        F = self.alg.F
        out = {}
        i, j, k = m
        while True:
            if k:
                _add_into(out, {((3,), (i, j, k - 1)): F.one})
                return out
            if j:
                _add_into(out, {((2,), (i, j - 1, 0)): F.one})
                return out
            if i == 0:
                return out
            if i > 0:
                # a^i - 1 = a^{i-1} (a - 1) + (a^{i-1} - 1)
                _add_into(out, {((1,), (i - 1, 0, 0)): F.one})
                i -= 1
            else:
                # d^m - 1 = -d^m (a - 1) + q^{-1} d^{m-1} b c + (d^{m-1} - 1)
                _add_into(out, {((1,), (i, 0, 0)): -F.one, ((3,), (i + 1, 1, 0)): F.qpow(-1)})
                i += 1

    def _rhs(self, t: tuple) -> dict:
        A = self.alg
        n = len(t)
        out = {}
        for (I, g), c in self.p(t[1:]).items():
            for mono, e in A.mul_mono(t[0], g).items():
                _add_into(out, {(I, mono): c * e})
        for i in range(n - 1):
            s = -1 if (i + 1) % 2 else 1
            for mono, e in A.mul_mono(t[i], t[i + 1]).items():
                _add_into(out, self.p(t[:i] + (mono,) + t[i + 2:]), e * s)
        if _counit_mono(t[-1]):
            _add_into(out, self.p(t[:-1]), 1 if n % 2 == 0 else -1)
        return out

    def _candidates(self, n: int, rhs: dict, widen: int):
        W = None
        imin = imax = 0
        lmax = 0
        for (J, mono) in rhs:
            W = mono[1] - mono[2] + sum(_W_SHIFT[i] for i in J)
            imin = min(imin, mono[0])
            imax = max(imax, mono[0])
            lmax = max(lmax, mono[1] + mono[2])
        out = []
        for I in index_sets(self.system.d, n):
            ww = W - sum(_W_SHIFT[i] for i in I)
            for i in range(imin - 1 - widen, imax + 1 + widen):
                lev = abs(ww)
                while lev <= lmax + widen:
                    out.append((I, (i, (lev + ww) // 2, (lev - ww) // 2)))
                    lev += 2
        return out

    def p(self, t: tuple) -> dict:
        """P_n(t) for a tuple of monomials, as {(I, monomial): scalar}."""
        hit = self._p.get(t)
        if hit is not None:
            return hit
        if len(t) == 1:
            val = self._peel(t[0])
        else:
            val = self._solve(len(t), self._rhs(t))
        self._p[t] = val
        return val

    def _solve(self, n: int, rhs: dict) -> dict:
        from . import exactla

        if not rhs:
            return {}
        F = self.alg.F
        for widen in range(4):
            cands = self._candidates(n, rhs, widen)
            cols = [k_on_basis(n, I, m, self.system) for (I, m) in cands]
            ok, coeffs = exactla.solve_membership(F, cols, rhs)
            if ok:
                return {cands[j]: c for j, c in coeffs.items()}
        raise ArithmeticError("no preimage under k_%d found" % n)

    # twisted part ------------------------------------------------------

    def lift(self, ch: Chain) -> dict:
        """Psi_n of a Tor chain, as Koszul coordinates {(I, monomial): scalar}."""
        from .chains import right_action_mono

        A = self.alg
        out = {}
        for t, c in ch.terms.items():
            for (I, g), e in self.p(t[1:]).items():
                for mono, v in right_action_mono(A, t[0], g, self.sig).items():
                    _add_into(out, {(I, mono): c * e * v})
        return out
