"""Twisted Hochschild chains, cyclic operators and cochains.

An n-chain is a combination of (n+1)-tuples of PBW monomials. All
operators take the twisting automorphism ``sig`` explicitly:

* ``boundary_b``: the twisted Hochschild boundary whose last face is
  ``(sig(a_n) a_0, a_1, ..., a_{n-1})``.
* ``cyclic_t``: ``(a_0, ..., a_n) -> (sig(a_n), a_0, ..., a_{n-1})``.
* ``connes_B``: the normalized Connes operator
  ``sum_i (-1)^(n i) (1, sig(a_i), ..., sig(a_n), a_0, ..., a_{i-1})``.
* ``connes_B_full``: the unnormalized ``(1 + (-1)^n t) s N``.
* ``xi`` / ``xi_prime``: the isomorphisms between the Tor complex
  ``A (x) A^{(x) n}`` with differential ``tor_d`` and the Hochschild complex.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import exactla
from .qsl2 import ONE, QSL2, Automorphism, Element, _add_into, level, monomial_str


class Chain:
    """A finite combination of (n+1)-tuples of monomials."""

    __slots__ = ("alg", "n", "terms")

    def __init__(self, alg: QSL2, n: int, terms=None):
        self.alg = alg
        self.n = n
        self.terms = {t: c for t, c in (terms or {}).items() if c}
        for t in self.terms:
            if len(t) != n + 1:
                raise ValueError(f"tuple {t} has wrong length for a {n}-chain")

    @classmethod
    def from_tensor(cls, alg: QSL2, elems, coeff=None) -> "Chain":
        """Expand ``coeff * (x_0 (x) ... (x) x_n)`` multilinearly."""
        elems = [e if isinstance(e, Element) else alg.scalar(e) for e in elems]
        acc = {}
        for combo in itertools.product(*[list(e.terms.items()) for e in elems]):
            c = alg.F.one if coeff is None else coeff
            for _, s in combo:
                c = c * s
            _add_into(acc, {tuple(m for m, _ in combo): c})
        return cls(alg, len(elems) - 1, acc)

    @classmethod
    def basis(cls, alg: QSL2, monos, coeff=None) -> "Chain":
        return cls(alg, len(monos) - 1, {tuple(monos): alg.F.one if coeff is None else coeff})

    def __add__(self, other: "Chain") -> "Chain":
        if other.n != self.n:
            raise ValueError("adding chains of different degree")
        acc = dict(self.terms)
        _add_into(acc, other.terms)
        return Chain(self.alg, self.n, acc)

    def __neg__(self):
        return Chain(self.alg, self.n, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        s = self.alg.F.from_rational(s) if isinstance(s, int) else s
        return Chain(self.alg, self.n, {t: c * s for t, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Chain) and self.n == other.n and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def bidegrees(self):
        out = set()
        for t in self.terms:
            p = sum(m[0] for m in t)
            w = sum(m[1] - m[2] for m in t)
            out.add((p, w))
        return sorted(out)

    def max_level(self) -> int:
        return max((sum(level(m) for m in t) for t in self.terms), default=-1)

    def __str__(self):
        return chain_str(self)

    def __repr__(self):
        return f"Chain({self})"


def chain_str(ch: Chain) -> str:
    if not ch.terms:
        return "0"
    F = ch.alg.F
    out = []
    for t in sorted(ch.terms):
        c = F.fmt(ch.terms[t])
        body = "(" + ", ".join(monomial_str(m) for m in t) + ")"
        if c == "1":
            out.append(body)
        elif c == "-1":
            out.append("-" + body)
        elif "+" in c or "-" in c[1:]:
            out.append(f"({c})*{body}")
        else:
            out.append(f"{c}*{body}")
    s = out[0]
    for p in out[1:]:
        s += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
    return s


def parse_chain(alg: QSL2, text: str, env=None) -> Chain:
    """Parse ``coeff*(x0, x1, ...) + ...`` where the x_i are algebra texts.

    A bare algebra element is read as a 0-chain.
    """
    text = text.strip()
    pieces = _split_top(text)
    total = None
    for sign, piece in pieces:
        piece = piece.strip()
        coeff_txt, tup = _split_coeff_tuple(piece)
        if tup is None:
            ch = Chain.from_tensor(alg, [alg.parse(piece, env)])
        else:
            entries = [alg.parse(e, env) for e in _split_commas(tup)]
            coeff = alg.F.one
            if coeff_txt:
                coeff = alg.parse(coeff_txt, env).scalar_value()
                if coeff is None:
                    raise ValueError(f"chain coefficient {coeff_txt!r} is not a scalar")
            ch = Chain.from_tensor(alg, entries, coeff)
        if sign < 0:
            ch = -ch
        total = ch if total is None else total + ch
    return total


def _split_top(text: str):
    """Split at top-level + and - that precede a tuple term."""
    out, depth, start, sign = [], 0, 0, 1
    i = 0
    if text.startswith("-"):
        sign, start, i = -1, 1, 1
    elif text.startswith("+"):
        start, i = 1, 1
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and _tuple_follows(text, i + 1) and _tuple_ends(text, i):
            out.append((sign, text[start:i]))
            sign = 1 if ch == "+" else -1
            start = i + 1
        i += 1
    out.append((sign, text[start:]))
    return out


def _tuple_ends(text: str, i: int) -> bool:
    j = i - 1
    while j >= 0 and text[j].isspace():
        j -= 1
    return j >= 0 and text[j] == ")"


def _tuple_follows(text: str, i: int) -> bool:
    return "(" in text[i:] and "," in text[i:]


def _split_coeff_tuple(piece: str):
    if not piece.endswith(")"):
        return piece, None
    depth = 0
    for i in range(len(piece) - 1, -1, -1):
        if piece[i] == ")":
            depth += 1
        elif piece[i] == "(":
            depth -= 1
            if depth == 0:
                inner = piece[i + 1:-1]
                if not _has_top_comma(inner):
                    return piece, None
                coeff = piece[:i].rstrip().rstrip("*").strip()
                return coeff, inner
    return piece, None


def _has_top_comma(s: str) -> bool:
    depth = 0
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return True
    return False


def _split_commas(s: str):
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


# ---------------------------------------------------------------------------
# operators


def _emit(acc: dict, prefix: tuple, mid: dict, suffix: tuple, scale):
    for m, c in mid.items():
        _add_into(acc, {prefix + (m,) + suffix: c * scale})


def boundary_b(ch: Chain, sig: Automorphism) -> Chain:
    A = ch.alg
    n = ch.n
    if n == 0:
        return Chain(A, -1)
    acc = {}
    for t, c in ch.terms.items():
        for i in range(n):
            s = c if i % 2 == 0 else -c
            _emit(acc, t[:i], A.mul_mono(t[i], t[i + 1]), t[i + 2:], s)
        ev, mn = sig.on_mono(t[n])
        s = c * ev if n % 2 == 0 else -(c * ev)
        _emit(acc, (), A.mul_mono(mn, t[0]), t[1:n], s)
    return Chain(A, n - 1, acc)


def cyclic_t(ch: Chain, sig: Automorphism) -> Chain:
    acc = {}
    n = ch.n
    for t, c in ch.terms.items():
        ev, mn = sig.on_mono(t[n])
        _add_into(acc, {(mn,) + t[:n]: c * ev})
    return Chain(ch.alg, n, acc)


def cyclic_T(ch: Chain, sig: Automorphism) -> Chain:
    """T = t^(n+1): apply sig to every slot."""
    acc = {}
    for t, c in ch.terms.items():
        s = c
        out = []
        for m in t:
            ev, mn = sig.on_mono(m)
            s = s * ev
            out.append(mn)
        _add_into(acc, {tuple(out): s})
    return Chain(ch.alg, ch.n, acc)


def connes_B(ch: Chain, sig: Automorphism, normalize: bool = True) -> Chain:
    """Normalized Connes operator C_n -> C_{n+1}."""
    n = ch.n
    acc = {}
    for t, c in ch.terms.items():
        for i in range(n + 1):
            s = c if (n * i) % 2 == 0 else -c
            out = [ONE]
            for m in t[i:]:
                ev, mn = sig.on_mono(m)
                s = s * ev
                out.append(mn)
            out.extend(t[:i])
            _add_into(acc, {tuple(out): s})
    res = Chain(ch.alg, n + 1, acc)
    return normalize_chain(res) if normalize else res


def extra_degeneracy(ch: Chain) -> Chain:
    return Chain(ch.alg, ch.n + 1, {(ONE,) + t: c for t, c in ch.terms.items()})


def connes_B_full(ch: Chain, sig: Automorphism) -> Chain:
    """Unnormalized B = (1 + (-1)^n t_{n+1}) s N with N = sum_j (-1)^(nj) t^j."""
    n = ch.n
    Nc = None
    cur = ch
    for j in range(n + 1):
        term = cur if (n * j) % 2 == 0 else -cur
        Nc = term if Nc is None else Nc + term
        cur = cyclic_t(cur, sig)
    sN = extra_degeneracy(Nc)
    tsN = cyclic_t(sN, sig)
    return sN + tsN if n % 2 == 0 else sN - tsN


def normalize_chain(ch: Chain) -> Chain:
    """Drop tuples with the unit in any slot after the first."""
    return Chain(ch.alg, ch.n, {t: c for t, c in ch.terms.items() if ONE not in t[1:]})


# ---------------------------------------------------------------------------
# the Tor complex and the comparison isomorphisms


def right_action_mono(A: QSL2, m0, y, sig: Automorphism) -> dict:
    """Monomial-level m0 <| y = sum sig(S(y_2)) m0 y_1 (cached on A)."""
    cache = A.__dict__.setdefault("_ract_cache", {})
    key = (m0, y, sig)
    hit = cache.get(key)
    if hit is not None:
        return hit
    acc = {}
    for (u, v), c in A._delta_mono(y).items():
        left = sig(A._antipode_mono(v))
        for lm, lc in left.terms.items():
            for pm, pc in A.mul_mono(lm, m0).items():
                _add_into(acc, A.mul_mono(pm, u), c * lc * pc)
    cache[key] = acc
    return acc


def tor_d(ch: Chain, sig: Automorphism) -> Chain:
    """Differential of the Tor complex A (x) A^{(x) n}."""
    A = ch.alg
    n = ch.n
    if n == 0:
        return Chain(A, -1)
    acc = {}
    for t, c in ch.terms.items():
        _emit(acc, (), right_action_mono(A, t[0], t[1], sig), t[2:], c)
        for i in range(1, n):
            s = c if i % 2 == 0 else -c
            _emit(acc, t[:i], A.mul_mono(t[i], t[i + 1]), t[i + 2:], s)
        last = t[n]
        if last[1] == 0 and last[2] == 0:
            s = c if n % 2 == 0 else -c
            _add_into(acc, {t[:n]: s})
    return Chain(A, n - 1, acc)


def _xi_generic(ch: Chain, sig: Automorphism, with_antipode: bool) -> Chain:
    A = ch.alg
    F = A.F
    acc = {}
    for t, c in ch.terms.items():
        if ch.n == 0:
            _add_into(acc, {t: c})
            continue
        deltas = [list(A._delta_mono(m).items()) for m in t[1:]]
        for combo in itertools.product(*deltas):
            s = c
            lefts = []
            right = {ONE: F.one}
            for (u, v), e in combo:
                s = s * e
                lefts.append(u)
                nr = {}
                for m, x in right.items():
                    _add_into(nr, A.mul_mono(m, v), x)
                right = nr
            y = A.element(right)
            if with_antipode:
                y = A.antipode(y)
            y = sig(y)
            first = y * A.element({t[0]: F.one})
            for m, x in first.terms.items():
                _add_into(acc, {(m,) + tuple(lefts): s * x})
    return Chain(A, ch.n, acc)


def xi(ch: Chain, sig: Automorphism) -> Chain:
    """Tor complex -> Hochschild complex."""
    return _xi_generic(ch, sig, True)


def xi_prime(ch: Chain, sig: Automorphism) -> Chain:
    """Inverse of xi."""
    return _xi_generic(ch, sig, False)


# ---------------------------------------------------------------------------
# cochains


class Functional:
    """A linear functional on the algebra given by its values on monomials."""

    def __init__(self, alg: QSL2, rule, name: str = "h"):
        self.alg = alg
        self.rule = rule
        self.name = name
        self._cache = {}

    def on_mono(self, m):
        v = self._cache.get(m)
        if v is None:
            v = self.rule(m)
            if v is None:
                v = self.alg.F.zero
            self._cache[m] = v
        return v

    def __call__(self, x: Element):
        total = self.alg.F.zero
        for m, c in x.terms.items():
            v = self.on_mono(m)
            if v:
                total = total + c * v
        return total


class Cochain:
    """Base class: an n-cochain evaluated on monomial tuples."""

    degree: int = 0
    name: str = "phi"

    def evaluate(self, t: tuple):
        raise NotImplementedError


class FunctionalCochain(Cochain):
    """The 0-cochain given by a functional."""

    def __init__(self, h: Functional, name=None):
        self.h = h
        self.degree = 0
        self.name = name or h.name

    def evaluate(self, t):
        return self.h.on_mono(t[0])


class DerivationTower(Cochain):
    """phi(x_0, ..., x_n) = h(x_0 D_1(x_1) ... D_n(x_n))."""

    def __init__(self, h: Functional, derivations, name="phi"):
        self.h = h
        self.derivations = list(derivations)
        self.degree = len(self.derivations)
        self.name = name
        self._cache = {}

    def evaluate(self, t):
        hit = self._cache.get(t)
        if hit is not None:
            return hit
        A = self.h.alg
        cur = A.element({t[0]: A.F.one})
        for D, m in zip(self.derivations, t[1:]):
            dm = D.on_mono(m)
            if not dm:
                self._cache[t] = A.F.zero
                return A.F.zero
            cur = cur * dm
        v = self.h(cur)
        self._cache[t] = v
        return v


class ProductCochain(Cochain):
    """phi(x_0, ..., x_n) = h(x_0 x_1 ... x_n)."""

    def __init__(self, h: Functional, degree: int, name="S^n h"):
        self.h = h
        self.degree = degree
        self.name = name

    def evaluate(self, t):
        A = self.h.alg
        cur = A.element({t[0]: A.F.one})
        for m in t[1:]:
            cur = cur * A.element({m: A.F.one})
        return self.h(cur)


class GeneratorTable(Cochain):
    """A 1-cochain given on pairs (monomial, generator).

    Values on (x, m) for a general monomial m are recovered by peeling
    generators off the right of m with
    phi(x, u g) = phi(x u, g) + phi(sig(g) x, u) and phi(x, 1) = 0.
    """

    _GEN = {"a": (1, 0, 0), "b": (0, 1, 0), "c": (0, 0, 1), "d": (-1, 0, 0)}

    def __init__(self, alg: QSL2, table: dict, sig: Automorphism, name="phi"):
        self.alg = alg
        self.table = {(tuple(k[0]), k[1]): v for k, v in table.items()}
        self.sig = sig
        self.degree = 1
        self.name = name
        self._cache = {}

    def _on_gen(self, x: dict, g: str):
        total = self.alg.F.zero
        for m, c in x.items():
            v = self.table.get((m, g))
            if v:
                total = total + c * v
        return total

    def value(self, x: dict, m):
        """phi(x, e_m) for x given as a monomial dict."""
        A = self.alg
        if m == ONE:
            return A.F.zero
        i, j, k = m
        if k:
            prev, g = (i, j, k - 1), "c"
        elif j:
            prev, g = (i, j - 1, 0), "b"
        elif i > 0:
            prev, g = (i - 1, 0, 0), "a"
        else:
            prev, g = (i + 1, 0, 0), "d"
        xu = {}
        for mm, c in x.items():
            _add_into(xu, A.mul_mono(mm, prev), c)
        first = self._on_gen(xu, g)
        ev, gm = self.sig.on_mono(self._GEN[g])
        gx = {}
        for mm, c in x.items():
            _add_into(gx, A.mul_mono(gm, mm), c * ev)
        return first + self.value(gx, prev)

    def evaluate(self, t):
        hit = self._cache.get(t)
        if hit is None:
            hit = self.value({t[0]: self.alg.F.one}, t[1])
            self._cache[t] = hit
        return hit


class LinearCombinationCochain(Cochain):
    def __init__(self, parts, name="phi"):
        self.parts = list(parts)  # [(coeff, cochain)]
        self.degree = self.parts[0][1].degree
        self.name = name

    def evaluate(self, t):
        total = None
        for c, phi in self.parts:
            v = c * phi.evaluate(t)
            total = v if total is None else total + v
        return total


def pair(phi: Cochain, ch: Chain):
    """<phi, ch>."""
    if ch.n != phi.degree:
        raise ValueError(f"cannot pair a {phi.degree}-cochain with a {ch.n}-chain")
    F = ch.alg.F
    total = F.zero
    for t, c in ch.terms.items():
        v = phi.evaluate(t)
        if v:
            total = total + c * v
    return total


# ---------------------------------------------------------------------------
# windows, cocycle checks and boundary certificates


def window_tuples(monos, arity: int, total_bidegree=None, max_total_level=None,
                  exclude_unit_after_first: bool = False):
    """Tuples of given monomials, optionally restricted by total bidegree and level."""
    monos = list(monos)
    if total_bidegree is None and max_total_level is None:
        for t in itertools.product(monos, repeat=arity):
            if exclude_unit_after_first and ONE in t[1:]:
                continue
            yield t
        return
    maxi = max((abs(m[0]) for m in monos), default=0)
    maxw = max((abs(m[1] - m[2]) for m in monos), default=0)

    def rec(prefix, p, w, lev):
        k = len(prefix)
        if k == arity:
            if total_bidegree is None or (p, w) == tuple(total_bidegree):
                yield tuple(prefix)
            return
        rest = arity - k - 1
        for m in monos:
            if exclude_unit_after_first and k >= 1 and m == ONE:
                continue
            nl = lev + level(m)
            if max_total_level is not None and nl > max_total_level:
                continue
            np_, nw = p + m[0], w + m[1] - m[2]
            if total_bidegree is not None:
                tp, tw = total_bidegree
                if abs(tp - np_) > rest * maxi or abs(tw - nw) > rest * maxw:
                    continue
            prefix.append(m)
            yield from rec(prefix, np_, nw, nl)
            prefix.pop()

    yield from rec([], 0, 0, 0)


@dataclass
class CocycleReport:
    name: str
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_cocycle(phi: Cochain, sig: Automorphism, alg: QSL2, monos, bidegrees=None,
                   max_total_level=None, sample: int | None = None, seed: int = 0,
                   cyclic: bool = False) -> CocycleReport:
    """Check <phi, b(ch)> = 0 on window chains of degree phi.degree + 1.

    With ``cyclic=True`` also check <phi, t(ch)> = (-1)^n <phi, ch> on
    degree-n window chains. ``bidegrees`` restricts to chains of those
    total bidegrees (other bidegrees are zero by grading when phi is
    homogeneous). ``sample`` draws that many tuples at random instead of
    enumerating.
    """
    n = phi.degree
    tuples = _collect_tuples(monos, n + 2, bidegrees, max_total_level, sample, seed)
    failures = []
    for t in tuples:
        v = pair(phi, boundary_b(Chain.basis(alg, t), sig))
        if v:
            failures.append((t, v))
    checked = len(tuples)
    if cyclic:
        tuples = _collect_tuples(monos, n + 1, bidegrees, max_total_level, sample, seed + 1)
        for t in tuples:
            ch = Chain.basis(alg, t)
            lhs = pair(phi, cyclic_t(ch, sig))
            rhs = pair(phi, ch)
            if n % 2:
                rhs = -rhs
            if lhs != rhs:
                failures.append((("cyclic",) + t, lhs - rhs))
        checked += len(tuples)
    return CocycleReport(phi.name, checked, failures)


def _collect_tuples(monos, arity, bidegrees, max_total_level, sample, seed):
    if bidegrees is None:
        pool = window_tuples(monos, arity, None, max_total_level)
    else:
        pool = itertools.chain.from_iterable(
            window_tuples(monos, arity, bd, max_total_level) for bd in bidegrees)
    if sample is None:
        return list(pool)
    pool = list(pool)
    rng = random.Random(seed)
    if len(pool) <= sample:
        return pool
    return rng.sample(pool, sample)


@dataclass
class BoundaryCertificate:
    is_boundary: bool
    preimage: Chain | None
    candidates: int

    def verify(self, z: Chain, sig: Automorphism, normalized: bool = False) -> bool:
        if not self.is_boundary:
            return False
        bz = boundary_b(self.preimage, sig)
        if normalized:
            bz = normalize_chain(bz)
            z = normalize_chain(z)
        return (bz - z).terms == {}


def is_boundary(z: Chain, sig: Automorphism, monos, level_margin: int = 0,
                normalized: bool = False) -> BoundaryCertificate:
    """Search for c with b(c) = z among tuples built from ``monos``.

    Candidates have the bidegrees of z and total bc-level at most
    ``z.max_level() + level_margin``. With ``normalized=True`` the search
    happens in the normalized complex.
    """
    A = z.alg
    F = A.F
    if normalized:
        z = normalize_chain(z)
    if not z.terms:
        return BoundaryCertificate(True, Chain(A, z.n + 1), 0)
    cands = []
    for bd in z.bidegrees():
        cands.extend(window_tuples(monos, z.n + 2, bd, z.max_level() + level_margin,
                                   exclude_unit_after_first=normalized))
    cols = []
    for t in cands:
        bt = boundary_b(Chain.basis(A, t), sig)
        if normalized:
            bt = normalize_chain(bt)
        cols.append(bt.terms)
    ok, coeffs = exactla.solve_membership(F, cols, z.terms)
    if not ok:
        return BoundaryCertificate(False, None, len(cands))
    pre = Chain(A, z.n + 1, {cands[j]: c for j, c in coeffs.items()})
    return BoundaryCertificate(True, pre, len(cands))
