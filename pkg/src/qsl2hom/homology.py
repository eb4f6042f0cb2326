"""Windowed twisted Hochschild homology through the Koszul complex.

Everything is organised by the Z^2-bidegree delta = (p, w). The maps f_n
preserve it, and inside one bidegree the monomials are indexed by their
bc-level, which f_n never lowers. For a level cap L and margin m we report
the filtered piece

    dim Z_n^{<=L} - dim( f_{n+1}(F_{n+1}^{<=L+m}) cap F_n^{<=L} ),

which is a subspace of the true homology in that bidegree as soon as the
margin catches all boundaries. Totals over |p| <= I are compared for caps
L and L - 2; finite answers must agree, infinite families must grow.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from . import exactla
from .koszul import ActionCache, f_on_basis, index_sets, slq2_system
from .qsl2 import QSL2, Automorphism, level, monomials_in_bidegree
from .scalars import make_field, parse_scalar_expr

GEN_DEGREE = {1: (0, 0), 2: (1, 1), 3: (-1, -1)}
INF = "inf"


@dataclass(frozen=True)
class RunConfig:
    """Parameters shared by the CLI, scripts and tests."""

    q: str = "generic"
    lam: str = "1"
    mu: str = "1"
    I: int = 5
    L: int = 10
    margin: int = 2
    seed: int = 0

    def as_dict(self):
        return {"q": self.q, "lambda": self.lam, "mu": self.mu, "I": self.I, "L": self.L,
                "margin": self.margin, "seed": self.seed}


class Setting:
    """Field, algebra and twisting data for one (q, lambda, mu)."""

    def __init__(self, q="generic", lam="1", mu="1"):
        self.q_text = str(q)
        self.F = make_field(self.q_text)
        self.A = QSL2(self.F)
        self.lam_text, self.mu_text = str(lam), str(mu)
        self.lam = parse_scalar_expr(self.F, lam) if isinstance(lam, str) else self.F.from_rational(lam)
        self.mu = parse_scalar_expr(self.F, mu) if isinstance(mu, str) else self.F.from_rational(mu)
        if not self.lam or not self.mu:
            raise ValueError("lambda and mu must be nonzero")
        self.sigma = Automorphism("sigma", self.lam, self.mu)
        self.system = slq2_system(self.A)
        self.cache = ActionCache(self.A, self.lam, self.mu)
        self._bidegree_cache = {}

    @classmethod
    def from_config(cls, cfg: RunConfig):
        return cls(cfg.q, cfg.lam, cfg.mu)

    @cached_property
    def case(self) -> "CaseInfo":
        return classify(self.F, self.lam, self.mu)

    def qexp(self, x):
        return self.F.qexp_of(x)


# ---------------------------------------------------------------------------
# classification into the five parameter cases


@dataclass(frozen=True)
class CaseInfo:
    case: int
    N: int | None = None
    M: int | None = None
    note: str = ""

    def label(self) -> str:
        parts = [f"case {self.case}"]
        if self.N is not None:
            parts.append(f"N={self.N}")
        if self.M is not None:
            parts.append(f"M={self.M}")
        return ", ".join(parts)


def classify(F, lam, mu) -> CaseInfo:
    """Sort (lambda, mu) into the five cases of the theory.

    1. mu = 1 and lambda not in q^{-(N+2)}; or mu != 1 and lambda = 1.
    2. mu = 1 and lambda = q^{-(N+2)}.
    3. mu = q^{M+1} and lambda = q^{-(N+1)}.
    4. mu = q^{-(M+1)} and lambda = q^{-(N+1)}.
    5. everything else.
    """
    el = F.qexp_of(lam)
    em = F.qexp_of(mu)
    if em == 0:
        if el is not None and el <= -2:
            return CaseInfo(2, N=-el - 2)
        return CaseInfo(1, note="mu = 1")
    if el == 0:
        return CaseInfo(1, note="lambda = 1")
    if el is not None and el <= -1 and em is not None:
        if em > 0:
            return CaseInfo(3, N=-el - 1, M=em - 1)
        return CaseInfo(4, N=-el - 1, M=-em - 1)
    return CaseInfo(5)


def expected_dims(info: CaseInfo) -> dict:
    """Dimensions of HH_0..HH_3 predicted by the case analysis ('inf' if infinite)."""
    if info.case == 1:
        return {0: INF, 1: INF, 2: 0, 3: 0}
    if info.case == 2:
        return {0: INF, 1: INF, 2: info.N + 1, 3: info.N + 1}
    if info.case in (3, 4):
        return {0: 2, 1: 4, 2: 2, 3: 0}
    return {0: 0, 1: 0, 2: 0, 3: 0}


def theorem_table_dims(info: CaseInfo) -> dict:
    """The summary table as printed, which has HH_0 = 0 for lambda = 1, mu != 1."""
    dims = expected_dims(info)
    if info.case == 1 and info.note == "lambda = 1":
        dims = dict(dims)
        dims[0] = 0
    return dims


# ---------------------------------------------------------------------------
# Koszul complex in one bidegree


def koszul_basis(n: int, p: int, w: int, max_level: int):
    """Basis (I, monomial) of F_n in bidegree (p, w) up to the level cap."""
    out = []
    for I in index_sets(3, n):
        gp = sum(GEN_DEGREE[i][0] for i in I)
        gw = sum(GEN_DEGREE[i][1] for i in I)
        for m in monomials_in_bidegree(p - gp, w - gw, max_level):
            out.append((I, m))
    out.sort(key=lambda t: (level(t[1]), t[0]))
    return out


def _coord_level(key) -> int:
    return level(key[1])


@dataclass
class BidegreeHomology:
    n: int
    bidegree: tuple
    L: int
    dim: int
    cycle_dim: int
    boundary_dim: int
    cycles: list = dc_field(default_factory=list)
    boundaries: list = dc_field(default_factory=list)


class BidegreeComplex:
    """The four f-matrices of one bidegree, built once up to a level bound."""

    def __init__(self, st: Setting, p: int, w: int, max_level: int):
        self.st = st
        self.p, self.w = p, w
        self.max_level = max_level
        self.bases = {n: koszul_basis(n, p, w, max_level) for n in range(4)}
        self.cols = {}
        for n in range(1, 4):
            self.cols[n] = [f_on_basis(n, I, m, st.system, st.cache) for (I, m) in self.bases[n]]

    def _restrict(self, n: int, cap: int):
        idx = [j for j, (I, m) in enumerate(self.bases[n]) if level(m) <= cap]
        return idx

    def homology(self, n: int, L: int, margin: int, want_vectors: bool = False) -> BidegreeHomology:
        F = self.st.F
        if L + margin > self.max_level:
            raise ValueError("level bound of the bidegree complex is too small")
        dom = self._restrict(n, L)
        if n == 0:
            cycle_dim = len(dom)
            cycles = [{self.bases[0][j]: F.one} for j in dom] if want_vectors else []
        else:
            cols = [self.cols[n][j] for j in dom]
            rels = exactla.kernel_basis(F, cols)
            cycle_dim = len(rels)
            cycles = []
            if want_vectors:
                for rel in rels:
                    cycles.append({self.bases[n][dom[j]]: c for j, c in rel.items()})
        if n == 3:
            bcols = []
        else:
            bidx = self._restrict(n + 1, L + margin)
            bcols = [self.cols[n + 1][j] for j in bidx]
        keep = lambda key: _coord_level(key) <= L  # noqa: E731
        if want_vectors:
            bvecs = exactla.intersection_basis_with_coordinates(F, bcols, keep)
            bdim = exactla.rank(F, bvecs)
        else:
            bvecs = []
            bdim = exactla.dim_intersection_with_coordinates(F, bcols, keep)
        return BidegreeHomology(n, (self.p, self.w), L, cycle_dim - bdim, cycle_dim, bdim, cycles, bvecs)

    def representatives(self, n: int, L: int, margin: int):
        """Cycle vectors whose classes form a basis of the filtered piece."""
        h = self.homology(n, L, margin, want_vectors=True)
        cands = sorted(h.cycles, key=lambda v: (max(_coord_level(k) for k in v), len(v)))
        order = lambda key: (-_coord_level(key), key)  # noqa: E731
        chosen = exactla.complement_choice(self.st.F, h.boundaries, cands, order=order)
        return [cands[j] for j in chosen]


def bidegree_complex(st: Setting, p: int, w: int, max_level: int) -> BidegreeComplex:
    key = (p, w)
    hit = st._bidegree_cache.get(key)
    if hit is None or hit.max_level < max_level:
        hit = BidegreeComplex(st, p, w, max_level)
        st._bidegree_cache[key] = hit
    return hit


def window_bidegrees(I: int, L: int):
    out = []
    for p in range(-I, I + 1):
        for w in range(-(L + 1), L + 2):
            out.append((p, w))
    return out


def _bidegree_dims_task(args):
    """Worker entry: rebuild the setting from its text form, compute one bidegree."""
    q, lam, mu, p, w, L, margin, degrees = args
    st = _worker_setting(q, lam, mu)
    cx = bidegree_complex(st, p, w, L + margin)
    return [(n, p, w, cx.homology(n, L, margin).dim) for n in degrees]


_WORKER_SETTINGS = {}


def _worker_setting(q, lam, mu):
    key = (q, lam, mu)
    if key not in _WORKER_SETTINGS:
        _WORKER_SETTINGS[key] = Setting(q, lam, mu)
    return _WORKER_SETTINGS[key]


def koszul_bidegree_dims(st: Setting, I: int, L: int, margin: int, degrees=(0, 1, 2, 3),
                         workers: int = 1):
    """{(n, p, w): dim} for all bidegrees of the window with a nonzero piece.

    With ``workers > 1`` the bidegrees are computed in a process pool; the
    result is merged in bidegree order, so it does not depend on the schedule.
    """
    bids = window_bidegrees(I, L)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        tasks = [(st.q_text, st.lam_text, st.mu_text, p, w, L, margin, tuple(degrees)) for (p, w) in bids]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = [r for chunk in pool.map(_bidegree_dims_task, tasks, chunksize=8) for r in chunk]
    else:
        rows = []
        for (p, w) in bids:
            cx = bidegree_complex(st, p, w, L + margin)
            rows.extend((n, p, w, cx.homology(n, L, margin).dim) for n in degrees)
    return {(n, p, w): d for (n, p, w, d) in sorted(rows) if d}


def koszul_window_dims(st: Setting, I: int, L: int, margin: int, degrees=(0, 1, 2, 3),
                       workers: int = 1) -> dict:
    dims = koszul_bidegree_dims(st, I, L, margin, degrees, workers)
    tot = {n: 0 for n in degrees}
    for (n, _, _), d in dims.items():
        tot[n] += d
    return tot


@dataclass
class DimReport:
    n: int
    windowed: dict  # cap L -> dim
    expected: object
    stable: bool
    grows: bool  # strictly increasing in the cap L
    verdict: str
    by_I: dict = dc_field(default_factory=dict)  # bound I' -> dim at cap L
    grows_in_I: bool = False

    def to_dict(self):
        return {"n": self.n, "windowed": {str(k): v for k, v in sorted(self.windowed.items())},
                "by_I": {str(k): v for k, v in sorted(self.by_I.items())},
                "expected": self.expected, "stable": self.stable, "grows": self.grows,
                "grows_in_I": self.grows_in_I, "verdict": self.verdict}


def hh_dims(st: Setting, I: int, L: int, margin: int, degrees=(0, 1, 2, 3), workers: int = 1) -> list:
    """Windowed HH_n dims for caps L-4, L-2, L with verdicts against the theory.

    An infinite row passes if it grows with the cap L or with the bound I
    (families such as a^r live along the a-degree, not the bc-level).
    """
    caps = [c for c in (L - 4, L - 2, L) if c >= 0]
    per_bid = {c: koszul_bidegree_dims(st, I, c, margin, degrees, workers) for c in caps}
    bounds = [b for b in (I - 2, I - 1, I) if b >= 0]
    exp = expected_dims(st.case)
    reports = []
    for n in degrees:
        win = {c: sum(d for (k, _, _), d in per_bid[c].items() if k == n) for c in caps}
        by_i = {b: sum(d for (k, p, _), d in per_bid[L].items() if k == n and abs(p) <= b) for b in bounds}
        stable = len(caps) >= 2 and win[caps[-1]] == win[caps[-2]]
        grows = len(caps) == 3 and win[caps[0]] < win[caps[1]] < win[caps[2]]
        grows_i = len(bounds) == 3 and by_i[bounds[0]] < by_i[bounds[1]] < by_i[bounds[2]]
        e = exp[n]
        if e == INF:
            verdict = "pass" if (grows or grows_i) else "fail"
        else:
            verdict = "pass" if (stable and win[L] == e) else "fail"
        reports.append(DimReport(n, win, e, stable, grows, verdict, by_i, grows_i))
    return reports


# ---------------------------------------------------------------------------
# HH_0 straight from the Hochschild boundary


def hh0_boundary_generators(st: Setting, m, g: str):
    """e_m g - sigma(g) e_m for a generator g."""
    A = st.A
    e = A.element({m: st.F.one})
    gen = A.gen(g)
    return e * gen - st.sigma(gen) * e


def hh0_bidegree(st: Setting, p: int, w: int, L: int, margin: int):
    """(dim, representative monomials) of A / im b in one bidegree, level <= L."""
    F = st.F
    gdeg = {"a": (1, 0), "b": (0, 1), "c": (0, -1), "d": (-1, 0)}
    cols = []
    for g, (dp, dw) in gdeg.items():
        for m in monomials_in_bidegree(p - dp, w - dw, L + margin):
            v = hh0_boundary_generators(st, m, g).terms
            if v:
                cols.append(v)
    keep = lambda m: level(m) <= L  # noqa: E731
    bvecs = exactla.intersection_basis_with_coordinates(F, cols, keep)
    monos = monomials_in_bidegree(p, w, L)
    cands = [{m: F.one} for m in monos]
    order = lambda m: (-level(m), m)  # noqa: E731
    chosen = exactla.complement_choice(F, bvecs, cands, order=order)
    return len(chosen), [monos[j] for j in chosen]


def hh0_window(st: Setting, I: int, L: int, margin: int):
    dims = {}
    reps = []
    for (p, w) in window_bidegrees(I, L):
        if abs(w) > L:
            continue
        d, r = hh0_bidegree(st, p, w, L, margin)
        if d:
            dims[(p, w)] = d
            reps.extend(r)
    return dims, reps


# ---------------------------------------------------------------------------
# moving classes between the Koszul and the Hochschild side


def _vec_level(vec: dict) -> int:
    return max((_coord_level(k) for k in vec), default=0)


def koszul_lift(st: Setting):
    """The Tor -> Koszul chain map of ``st`` (cached on the setting)."""
    from .koszul import KoszulLift

    hit = getattr(st, "_lift", None)
    if hit is None:
        hit = KoszulLift(st.system, st.sigma)
        st._lift = hit
    return hit


def koszul_to_hochschild(st: Setting, vec: dict, n: int):
    """xi(phi_n(vec)) for a Koszul vector {(I, monomial): scalar}."""
    from .chains import xi
    from .koszul import KoszulVector, comparison_map

    A = st.A
    comps = {}
    for (I, m), c in vec.items():
        comps[I] = comps.get(I, A.zero()) + A.element({m: c})
    return xi(comparison_map(KoszulVector(A, 3, n, comps), st.system), st.sigma)


def hochschild_to_koszul(st: Setting, ch) -> dict:
    """Psi(xi'(ch)): a Hochschild cycle as a Koszul cycle with the same class."""
    from .chains import xi_prime

    return koszul_lift(st).lift(xi_prime(ch, st.sigma))


@dataclass
class ClassCoordinates:
    """Coordinates of a Koszul cycle against chosen representatives."""

    coords: dict  # rep index -> scalar
    cap: int
    solved: bool

    @property
    def is_zero(self) -> bool:
        return self.solved and not self.coords


def class_coordinates(st: Setting, n: int, p: int, w: int, vec: dict, reps: list, cap: int,
                      margin: int) -> ClassCoordinates:
    """Write vec = sum c_r rep_r + boundary, boundaries from level <= cap + margin."""
    F = st.F
    cx = bidegree_complex(st, p, w, cap + margin)
    cols = list(reps)
    if n < 3:
        cols += [cx.cols[n + 1][j] for j in cx._restrict(n + 1, cap + margin)]
    if not vec:
        return ClassCoordinates({}, cap, True)
    ok, coeffs = exactla.solve_membership(F, cols, vec)
    if not ok:
        return ClassCoordinates({}, cap, False)
    return ClassCoordinates({j: c for j, c in coeffs.items() if j < len(reps)}, cap, True)


def vector_bidegree(vec: dict):
    """Common Z^2-bidegree of a Koszul vector (None if empty)."""
    from .qsl2 import bidegree as mono_bidegree

    out = None
    for (I, m) in vec:
        p, w = mono_bidegree(m)
        d = (p + sum(GEN_DEGREE[i][0] for i in I), w + sum(GEN_DEGREE[i][1] for i in I))
        if out is None:
            out = d
        elif out != d:
            raise ValueError("vector is not homogeneous")
    return out


def is_koszul_boundary(st: Setting, vec: dict, n: int, margin: int = 2) -> bool:
    """Exact test whether a homogeneous Koszul n-cycle is a boundary."""
    if not vec:
        return True
    p, w = vector_bidegree(vec)
    cap = _vec_level(vec)
    return class_coordinates(st, n, p, w, vec, [], cap, margin).solved


@dataclass
class KoszulWitness:
    """Nontriviality of a Hochschild cycle, certified on the Koszul side."""

    name: str
    degree: int
    lift_terms: int
    lift_level: int
    nontrivial: bool

    def to_dict(self):
        return {"name": self.name, "degree": self.degree, "lift_terms": self.lift_terms,
                "lift_level": self.lift_level, "nontrivial": self.nontrivial}


def koszul_witness(st: Setting, name: str, ch, margin: int = 2) -> KoszulWitness:
    vec = hochschild_to_koszul(st, ch)
    return KoszulWitness(name, ch.n, len(vec), _vec_level(vec),
                         not is_koszul_boundary(st, vec, ch.n, margin))


def hochschild_rank(st: Setting, chains, margin: int = 2) -> int:
    """Rank of the classes of homogeneous-by-bidegree Hochschild cycles."""
    F = st.F
    if not chains:
        return 0
    n = chains[0].n
    vecs = [hochschild_to_koszul(st, ch) for ch in chains]
    groups = {}
    for v in vecs:
        if v:
            groups.setdefault(vector_bidegree(v), []).append(v)
    total = 0
    for (p, w), vs in groups.items():
        cap = max(_vec_level(v) for v in vs)
        cx = bidegree_complex(st, p, w, cap + margin)
        bcols = [cx.cols[n + 1][j] for j in cx._restrict(n + 1, cap + margin)] if n < 3 else []
        total += exactla.rank(F, bcols + vs) - exactla.rank(F, bcols)
    return total


# ---------------------------------------------------------------------------
# twisted cyclic homology through the SBI spectral sequence


def t_invariant(st: Setting, p: int, w: int) -> bool:
    """Whether T = sigma on every slot acts trivially in bidegree (p, w)."""
    from .qsl2 import _ipow

    return _ipow(st.lam, p) * _ipow(st.mu, w) == st.F.one


def connes_image(st: Setting, vec: dict, n: int) -> dict:
    """Koszul vector of B_n applied to the Hochschild image of a Koszul n-cycle."""
    from .chains import connes_B_full

    z = koszul_to_hochschild(st, vec, n)
    return hochschild_to_koszul(st, connes_B_full(z, st.sigma))


@dataclass
class HCBidegree:
    """Page-one data in one T-invariant bidegree: H_n and the maps B_n."""

    bidegree: tuple
    cap: int
    hh: dict  # n -> dim H_n
    ranks: dict  # n -> rank of B_n : H_n -> H_{n+1}
    stable: bool
    reps: dict = dc_field(default_factory=dict)
    b_coords: dict = dc_field(default_factory=dict)  # n -> list of ClassCoordinates

    def e2(self, n: int) -> int:
        """ker B_n / im B_{n-1} (B_3 = 0)."""
        return self.hh.get(n, 0) - self.ranks.get(n, 0) - self.ranks.get(n - 1, 0)

    def hc(self, n: int) -> int:
        """HC_n assembled from the page-two terms, assuming d^2 = 0."""
        tot = self.hh.get(n, 0) - self.ranks.get(n - 1, 0)
        k = 1
        while n - 2 * k >= 0:
            tot += self.e2(n - 2 * k)
            k += 1
        return tot

    def conditional(self, n: int) -> bool:
        """HC_n could change through a d^2 from ker B_0 to H_3 / im B_2."""
        src = self.e2(0) > 0
        tgt = self.hh.get(3, 0) - self.ranks.get(2, 0) > 0
        return src and tgt and n >= 3


def hc_bidegree(st: Setting, p: int, w: int, L: int, margin: int = 2) -> HCBidegree:
    """Representatives, B-images and their classes in bidegree (p, w)."""
    cap = L
    for _ in range(4):
        cx = bidegree_complex(st, p, w, cap + margin)
        reps = {n: cx.representatives(n, cap, margin) for n in range(4)}
        images = {n: [connes_image(st, r, n) for r in reps[n]] for n in range(3)}
        top = max([_vec_level(v) for vs in images.values() for v in vs] + [0])
        if top <= cap:
            break
        cap = top
    else:
        raise ArithmeticError(f"B-images keep leaving the window in bidegree {(p, w)}")
    coords = {}
    ranks = {}
    for n in range(3):
        cc = [class_coordinates(st, n + 1, p, w, v, reps[n + 1], cap, margin) for v in images[n]]
        if not all(c.solved for c in cc):
            raise ArithmeticError(f"B-image outside the cycle span in bidegree {(p, w)}")
        coords[n] = cc
        ranks[n] = exactla.rank(st.F, [c.coords for c in cc]) if cc else 0
    hh = {n: len(reps[n]) for n in range(4)}
    stable = True
    if cap >= 2:
        lower = {n: cx.homology(n, cap - 2, margin).dim for n in range(4)}
        stable = lower == hh
    return HCBidegree((p, w), cap, hh, ranks, stable, reps, coords)


@dataclass
class HCReport:
    """Twisted cyclic homology summed over the report region of a window."""

    config: dict
    bidegrees: list
    hc: dict  # n -> dim
    conditional: dict  # n -> bool
    hh: dict
    ranks: dict
    unstable: list
    checks: list = dc_field(default_factory=list)  # (name, expected, computed, verdict)

    def to_dict(self):
        return {"config": self.config,
                "bidegrees": [{"bidegree": list(b.bidegree), "cap": b.cap, "hh": b.hh,
                               "ranks": b.ranks, "stable": b.stable} for b in self.bidegrees],
                "hc": self.hc, "conditional": self.conditional, "hh": self.hh, "ranks": self.ranks,
                "unstable": [list(u) for u in self.unstable],
                "checks": [{"name": n, "expected": e, "computed": c, "verdict": v}
                           for n, e, c, v in self.checks]}


def hc_window(st: Setting, I: int, L: int, margin: int = 2, w_slack: int = 2,
              max_degree: int = 5) -> HCReport:
    """HC_0..HC_max_degree over T-invariant bidegrees with |p| <= I, |w| <= L - w_slack."""
    dims = koszul_bidegree_dims(st, I, L, margin)
    active = sorted({(p, w) for (_, p, w) in dims if abs(w) <= L - w_slack and t_invariant(st, p, w)})
    blocks = [hc_bidegree(st, p, w, L, margin) for (p, w) in active]
    hc = {n: sum(b.hc(n) for b in blocks) for n in range(max_degree + 1)}
    cond = {n: any(b.conditional(n) for b in blocks) for n in range(max_degree + 1)}
    hh = {n: sum(b.hh[n] for b in blocks) for n in range(4)}
    ranks = {n: sum(b.ranks[n] for b in blocks) for n in range(3)}
    unstable = [b.bidegree for b in blocks if not b.stable]
    cfg = {"lambda": st.lam_text, "mu": st.mu_text, "I": I, "L": L, "margin": margin,
           "case": st.case.label()}
    return HCReport(cfg, blocks, hc, cond, hh, ranks, unstable)


# ---------------------------------------------------------------------------
# named checks


@dataclass
class Check:
    """One verdict line: what was expected, what was computed."""

    name: str
    expected: object
    computed: object
    ok: bool
    certificate: dict | None = None
    note: str = ""

    @property
    def verdict(self) -> str:
        return "pass" if self.ok else "fail"

    def to_dict(self):
        out = {"name": self.name, "expected": self.expected, "computed": self.computed,
               "verdict": self.verdict}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.note:
            out["note"] = self.note
        return out


def _fmt(st: Setting, x):
    return st.F.fmt(x) if x is not None else None


def _chain_of(st: Setting, elems, coeff=None):
    from .chains import Chain

    return Chain.from_tensor(st.A, list(elems), coeff)


def homologous(st: Setting, lhs, rhs, margin: int = 2) -> bool:
    """[lhs] = [rhs] in twisted Hochschild homology, decided on the Koszul side."""
    diff = lhs - rhs
    if not diff.terms:
        return True
    return is_koszul_boundary(st, hochschild_to_koszul(st, diff), diff.n, margin)


def boundary_certificate(st: Setting, z, level_margin: int = 1, I: int | None = None):
    """Chain-level preimage search for z on monomials near its support."""
    from .chains import is_boundary
    from .qsl2 import window_monomials

    span_i = max(abs(m[0]) for t in z.terms for m in t) + 1
    lev = max(sum(m[1:]) for t in z.terms for m in t) + level_margin
    monos = window_monomials(I if I is not None else span_i, lev)
    return is_boundary(z, st.sigma, monos, level_margin)


def b0_lemma_commuting(st: Setting, x, y, s: int, t: int, margin: int = 2) -> Check:
    """B_0[x^s y^t] = t[(x^s y^{t-1}, y)] + s[(x^{s-1} y^t, x)] for commuting sigma-fixed x, y."""
    from .chains import Chain, connes_B

    A, F = st.A, st.F
    lhs = connes_B(Chain.from_tensor(A, [x ** s * y ** t]), st.sigma)
    rhs = Chain(A, 1)
    if t:
        rhs = rhs + _chain_of(st, [x ** s * y ** (t - 1), y], F(t))
    if s:
        rhs = rhs + _chain_of(st, [x ** (s - 1) * y ** t, x], F(s))
    ok = homologous(st, lhs, rhs, margin)
    return Check(f"B_0 lemma x^{s} y^{t}", "homologous", "homologous" if ok else "not homologous", ok)


def b0_lemma_case34(st: Setting, margin: int = 2) -> list:
    """The two B_0 formulas on the HH_0 generators of cases 3 and 4."""
    from .catalog import case34_monomials
    from .chains import Chain, connes_B

    info = st.case
    A, F = st.A, st.F
    M, N = info.M, info.N
    mons = case34_monomials(info.case, M, N)
    el = lambda m: A.element({m: F.one})  # noqa: E731
    a, b, c, d = (A.gen(g) for g in "abcd")
    out = []
    if info.case == 3:
        y_lhs = connes_B(Chain.from_tensor(A, [el(mons["y"])]), st.sigma)
        y_rhs = (_chain_of(st, [el((-(M + 1), 0, N)), c], F(N + 1))
                 + _chain_of(st, [el((-M, 0, N + 1)), d], F(M + 1) * F.qpow(-(N + 1))))
        x_lhs = connes_B(Chain.from_tensor(A, [el(mons["x"])]), st.sigma)
        x_rhs = (_chain_of(st, [el((M + 1, N, 0)), b], F(N + 1))
                 + _chain_of(st, [el((M, N + 1, 0)), a], F(M + 1) * F.qpow(N + 1)))
        x_printed = (_chain_of(st, [el((M + 1, N, 0)), b], F(N + 1))
                     + _chain_of(st, [el((M, N + 1, 0)), b], F(M + 1) * F.qpow(N + 1)))
        ok = homologous(st, y_lhs, y_rhs, margin)
        out.append(Check("B_0[d^{M+1}c^{N+1}]", "(N+1)[(d^{M+1}c^N,c)] + (M+1)q^{-(N+1)}[(d^Mc^{N+1},d)]",
                         "homologous" if ok else "not homologous", ok))
        ok = homologous(st, x_lhs, x_rhs, margin)
        out.append(Check("B_0[a^{M+1}b^{N+1}]", "(N+1)[(a^{M+1}b^N,b)] + (M+1)q^{N+1}[(a^Mb^{N+1},a)]",
                         "homologous" if ok else "not homologous", ok,
                         note="last slot a; the printed last slot b is not homogeneous with the left side"))
        bad = x_printed.bidegrees() != x_lhs.bidegrees()
        out.append(Check("printed a-part has a mismatched bidegree", True, bad, bad))
    return out


def case1_instance_checks(st: Setting, rep: HCReport, margin: int = 2) -> list:
    """ker B_0 = span[1] and HH_1 / im B_0 = span[omega_1] (lambda = 1 or mu = 1)."""
    from .catalog import omega_1
    from .chains import Chain, connes_B

    A, F = st.A, st.F
    out = []
    ker_dim = rep.hh[0] - rep.ranks[0]
    B1 = connes_B(Chain.from_tensor(A, [A.one()]), st.sigma, normalize=False)
    zero_on_one = homologous(st, B1, Chain(A, 1), margin)
    cert = boundary_certificate(st, B1, 1)
    out.append(Check("ker B_0 = span[1]", {"dim": 1, "contains [1]": True},
                     {"dim": ker_dim, "contains [1]": zero_on_one}, ker_dim == 1 and zero_on_one,
                     certificate={"B_0(1) boundary preimage": str(cert.preimage) if cert.is_boundary else None,
                                  "reverified": cert.verify(B1, st.sigma) if cert.is_boundary else False}))
    coker = rep.hh[1] - rep.ranks[0]
    w1 = hochschild_to_koszul(st, omega_1(A, st.mu))
    blk = next((b for b in rep.bidegrees if b.bidegree == (0, 0)), None)
    independent = False
    if blk is not None and w1:
        images = [combine_reps(st, blk.reps[1], c.coords) for c in blk.b_coords[0]]
        cap = max([blk.cap, _vec_level(w1)])
        cx = bidegree_complex(st, 0, 0, cap + margin)
        bcols = [cx.cols[2][j] for j in cx._restrict(2, cap + margin)]
        base = exactla.rank(F, bcols + images)
        independent = exactla.rank(F, bcols + images + [w1]) > base
    out.append(Check("HH_1 / im B_0 = span[omega_1]", {"dim": 1, "omega_1 not in im B_0": True},
                     {"dim": coker, "omega_1 not in im B_0": independent}, coker == 1 and independent))
    return out


def combine_reps(st: Setting, reps: list, coords: dict) -> dict:
    return exactla.combine(st.F, reps, coords)


def hc_instance(st: Setting, I: int, L: int, margin: int = 2) -> HCReport:
    """HC report with verdicts against the case propositions."""
    from .catalog import case34_monomials
    from .qsl2 import monomial_str

    rep = hc_window(st, I, L, margin)
    info = st.case
    checks = []
    if info.case in (3, 4):
        checks.append(Check("HC_0", 2, rep.hc[0], rep.hc[0] == 2))
        mons = case34_monomials(info.case, info.M, info.N)
        _, reps0 = hh0_window(st, I, L, margin)
        want = sorted(monomial_str(m) for m in mons.values())
        got = sorted(monomial_str(m) for m in reps0)
        checks.append(Check("HC_0 representatives", want, got, want == got))
        checks.append(Check("HC_1", 2, rep.hc[1], rep.hc[1] == 2))
        for n in range(2, 6):
            checks.append(Check(f"HC_{n} (window)", 0, rep.hc[n], rep.hc[n] == 0))
        checks.extend(b0_lemma_case34(st, margin))
    elif info.case == 2:
        want = info.N + 1 if info.N % 2 == 0 else info.N + 2
        checks.append(Check("HC_1", want, rep.hc[1], rep.hc[1] == want))
        ker0 = rep.hh[0] - rep.ranks[0]
        want0 = 1 if info.N % 2 else 0
        checks.append(Check("dim ker B_0", want0, ker0, ker0 == want0))
        if info.N % 2:
            checks.append(Check("HC_2 (N odd)", info.N + 2, rep.hc[2], rep.hc[2] == info.N + 2))
        for n in range(3, 6):
            rep.conditional[n] = True
    elif info.case == 1:
        checks.extend(case1_instance_checks(st, rep, margin))
    rep.checks = [c.to_dict() for c in checks]
    rep._check_objs = checks
    return rep


# ---------------------------------------------------------------------------
# the conjecture probe (case 2, N even)


@dataclass
class ProbeReport:
    N: int
    evidence: list  # Check objects; ok means consistent with the conjecture
    label: str = "probe: evidence only, not a proof"

    def to_dict(self):
        rows = []
        for c in self.evidence:
            d = c.to_dict()
            d["verdict"] = "consistent" if c.ok else "inconsistent"
            rows.append(d)
        return {"N": self.N, "label": self.label, "evidence": rows}


def _parallel(F, u: dict, v: dict) -> bool:
    keys = set(u) | set(v)
    if not u or not v or set(u) != set(v):
        return False
    k0 = next(iter(keys))
    r = u[k0] / v[k0]
    return all(u[k] == r * v[k] for k in keys)


def conjecture_probe(N: int, q: str = "generic", I: int = 2, L: int = 8, margin: int = 2) -> ProbeReport:
    """Evidence on B_1(omega_1(N, N/2)) and on injectivity of B_2 (case 2, N even)."""
    from .catalog import omega_1_Ni, omega_2_Ni
    from .chains import connes_B_full

    if N < 0 or N % 2:
        raise ValueError("the probe is stated for even N >= 0")
    st = Setting(q, f"q^{-(N + 2)}", "1")
    A, F = st.A, st.F
    i = N // 2
    ev = []
    w1 = omega_1_Ni(A, N, i)
    Bw1 = connes_B_full(w1, st.sigma)
    BB = connes_B_full(Bw1, st.sigma)
    ev.append(Check("B o B = 0 on omega_1(N,N/2), chain level", True, not BB.terms, not BB.terms))
    v1 = hochschild_to_koszul(st, Bw1)
    v2 = hochschild_to_koszul(st, omega_2_Ni(A, N, i))
    nonzero = not is_koszul_boundary(st, v1, 2, margin)
    ev.append(Check("[B_1(omega_1(N,N/2))] != 0", True, nonzero, nonzero))
    p, w = vector_bidegree(v1)
    blk = hc_bidegree(st, p, w, L, margin)
    c1 = class_coordinates(st, 2, p, w, v1, blk.reps[2], blk.cap, margin)
    c2 = class_coordinates(st, 2, p, w, v2, blk.reps[2], blk.cap, margin)
    prop = c1.solved and c2.solved and _parallel(F, c1.coords, c2.coords)
    coords = lambda c: {str(k): F.fmt(x) for k, x in sorted(c.coords.items())}  # noqa: E731
    ev.append(Check("[B_1(omega_1(N,N/2))] proportional to [omega_2(N,N/2)]", True, prop, prop,
                    certificate={"bidegree": [p, w], "HH_2 basis size": len(blk.reps[2]),
                                 "B_1(omega_1) coordinates": coords(c1),
                                 "omega_2 coordinates": coords(c2)},
                    note="basis index 0 is the first-line class, higher indices the extra last-line classes"))
    rep = hc_window(st, I, L, margin)
    inj = all(b.ranks[2] == b.hh[2] - b.ranks[1] for b in rep.bidegrees)
    ev.append(Check("B_2 injective on HH_2 / im B_1 (window)", True, inj, inj,
                    certificate={"hh2": rep.hh[2], "rank B_1": rep.ranks[1], "rank B_2": rep.ranks[2]}))
    # the named generators omega_2(N, j): their B_2 images, as Koszul classes
    killed = []
    for j in range(N + 1):
        b2 = hochschild_to_koszul(st, connes_B_full(omega_2_Ni(A, N, j), st.sigma))
        if not b2 or is_koszul_boundary(st, b2, 3, margin):
            killed.append(j)
    ev.append(Check("B_2[omega_2(N,i)] != 0 for all i", [], killed, not killed,
                    note="lists the i with B_2[omega_2(N,i)] = 0"))
    return ProbeReport(N, ev)


# ---------------------------------------------------------------------------
# Haar state and S^2 h


def haar_checks(F, I: int = 3, L: int = 8, pair_level: int | None = None) -> list:
    """h(bc), invariance and the modular property on a window."""
    from .qsl2 import QSL2, sigma_mod, window_monomials

    A = QSL2(F)
    out = []
    b, c = A.gen("b"), A.gen("c")
    want = -F.qpow(-1) * (F.one - F.qpow(-2)) / (F.one - F.qpow(-4))
    got = A.haar(b * c)
    out.append(Check("h(bc)", F.fmt(want), F.fmt(got), got == want))
    monos = window_monomials(I, L)
    bad_l = bad_r = 0
    for m in monos:
        x = A.element({m: F.one})
        hx = A.haar(x)
        delta = A.coproduct(x)
        target = A.scalar(hx)
        if (delta.contract_left(A.haar_mono) - target).terms:
            bad_l += 1
        if (delta.contract_right(A.haar_mono) - target).terms:
            bad_r += 1
    out.append(Check("(h (x) id) Delta = h 1", 0, bad_l, bad_l == 0, note=f"{len(monos)} monomials"))
    out.append(Check("(id (x) h) Delta = h 1", 0, bad_r, bad_r == 0, note=f"{len(monos)} monomials"))
    # modular property on pairs whose product can be nonzero under h
    sm = sigma_mod(F)
    lev = L if pair_level is None else pair_level
    bad = checked = 0
    for u in monos:
        for v in monos:
            if u[0] + v[0] or (u[1] - u[2]) + (v[1] - v[2]) or sum(u[1:]) + sum(v[1:]) > lev:
                continue
            x, y = A.element({u: F.one}), A.element({v: F.one})
            checked += 1
            if A.haar(x * y) != A.haar(y * sm(x)):
                bad += 1
    out.append(Check("h(xy) = h(y sigma_mod(x))", 0, bad, bad == 0, note=f"{checked} pairs"))
    return out


def s2h_check(F, I: int = 1, L: int = 2, sample: int | None = 400, seed: int = 0) -> list:
    """S^2 h(a_0, ..., a_4) = h(a_0 ... a_4) is a twisted cyclic 4-cocycle at (q^2, 1)."""
    from .catalog import haar_functional, h_one
    from .chains import Chain, ProductCochain, pair, verify_cocycle
    from .qsl2 import QSL2, Automorphism, window_monomials

    A = QSL2(F)
    sig = Automorphism("sigma", F.qpow(2), F.one)
    h = haar_functional(A)
    S2h = ProductCochain(h, 4, "S^2 h")
    out = []
    one = A.one()
    v = pair(S2h, Chain.from_tensor(A, [one] * 5))
    out.append(Check("<S^2 h, (1,1,1,1,1)>", "1", F.fmt(v), v == F.one))
    b, c = A.gen("b"), A.gen("c")
    v = pair(S2h, Chain.from_tensor(A, [b, c, one, one, one]))
    out.append(Check("<S^2 h, (b,c,1,1,1)>", F.fmt(A.haar(b * c)), F.fmt(v), v == A.haar(b * c)))
    monos = window_monomials(I, L)
    rep = verify_cocycle(S2h, sig, A, monos, bidegrees=[(0, 0)], max_total_level=L, sample=sample,
                         seed=seed, cyclic=True)
    out.append(Check("S^2 h Hochschild + cyclic cocycle", 0, len(rep.failures), rep.ok,
                     note=f"{rep.checked} tuples"))
    h1 = h_one(A, F.qpow(2))
    wide = window_monomials(3, 8)
    diff = [m for m in wide if A.haar_mono(m) != h1.on_mono(m)]
    out.append(Check("h = h_[1] at lambda = q^2", 0, len(diff), not diff, note=f"{len(wide)} monomials"))
    return out


# ---------------------------------------------------------------------------
# pairing values


def case34_b1_pairings(M: int, N: int, q: str = "generic") -> list:
    """<phi_2, B_1(a^M b^{N+1}, a)> and <phi_2', B_1(d^M c^{N+1}, d)> in case 3."""
    from .catalog import case34_two_cocycles
    from .chains import connes_B, pair

    st = Setting(q, f"q^{-(N + 1)}", f"q^{M + 1}")
    A, F = st.A, st.F
    phi2, phi2p = case34_two_cocycles(st, 3, M, N)
    el = lambda m: A.element({m: F.one})  # noqa: E731
    out = []
    z = connes_B(_chain_of(st, [el((M, N + 1, 0)), A.gen("a")]), st.sigma)
    want = -F(N + 1) * F.qpow(-(N + 1))
    got = pair(phi2, z)
    out.append(Check(f"<phi_2, B_1(a^{M}b^{N + 1}, a)> (M={M}, N={N})", F.fmt(want), F.fmt(got), got == want))
    z = connes_B(_chain_of(st, [el((-M, 0, N + 1)), A.gen("d")]), st.sigma)
    want = -F.qpow(N + 1) * F(N + 1)
    got = pair(phi2p, z)
    out.append(Check(f"<phi_2', B_1(d^{M}c^{N + 1}, d)> (M={M}, N={N})", F.fmt(want), F.fmt(got), got == want))
    return out


def omega2_pairing_table(N: int, q: str = "generic") -> list:
    """<phi_{2,n}, omega_2(N, i)> for all i and |n| <= N + 2 on the printed eight-term chain.

    The closed value is reproduced where n = 2i - N and the pairing vanishes
    elsewhere. The printed chain (x on the right) is not a cycle for N > 0;
    on the corrected cycle every phi_{2,n} pairs to zero.
    """
    from .catalog import h_n_trace, omega2_pairing_value, omega_2_printed, phi_2n
    from .chains import pair

    st = Setting(q, f"q^{-(N + 2)}", "1")
    A, F = st.A, st.F
    b, c = A.gen("b"), A.gen("c")
    out = []
    for i in range(N + 1):
        z = omega_2_printed(A, N, i)
        x = A.element({(0, i, N - i): F.one})
        for n in range(-N - 2, N + 3):
            got = pair(phi_2n(A, st.lam, n), z)
            if n == 2 * i - N:
                want = omega2_pairing_value(F, N, i, h_n_trace(A, n)(b * c * x))
            else:
                want = F.zero
            out.append(Check(f"<phi_2,{n}, omega_2({N},{i})> printed chain", F.fmt(want), F.fmt(got),
                             got == want))
    return out


# ---------------------------------------------------------------------------
# catalog verification


@dataclass
class CatalogReport:
    setting: str
    checks: list
    witnesses: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks) and all(w.nontrivial for w in self.witnesses)

    def to_dict(self):
        return {"setting": self.setting, "checks": [c.to_dict() for c in self.checks],
                "witnesses": [w.to_dict() for w in self.witnesses], "ok": self.ok}


def verify_catalog(st: Setting, r_max: int = 2, s_max: int | None = None, sample: int = 150,
                   seed: int = 0, I: int = 2, L: int = 3, margin: int = 2) -> CatalogReport:
    """Cycles, delta-pairings, cocycle checks on duals and Koszul witnesses."""
    from .catalog import generator_catalog
    from .chains import boundary_b, pair, verify_cocycle
    from .qsl2 import window_monomials

    F = st.F
    entries = generator_catalog(st, r_max, s_max)
    checks, witnesses = [], []
    monos = window_monomials(I, L)
    for e in entries:
        bz = boundary_b(e.cycle, st.sigma)
        checks.append(Check(f"b({e.name}) = 0", 0, len(bz.terms), not bz.terms))
        if e.dual is None:
            witnesses.append(koszul_witness(st, e.name, e.cycle, margin))
            continue
        v = e.pairing()
        if e.expected is not None:
            checks.append(Check(f"<{e.dual.name}, {e.name}>", F.fmt(e.expected), F.fmt(v), v == e.expected))
        else:
            checks.append(Check(f"<{e.dual.name}, {e.name}> != 0", "nonzero", F.fmt(v), bool(v)))
        for phi in [e.dual] + list(e.extra_duals):
            rep = verify_cocycle(phi, st.sigma, st.A, monos, max_total_level=L, sample=sample, seed=seed)
            checks.append(Check(f"{phi.name} is a cocycle", 0, len(rep.failures), rep.ok,
                                note=f"{rep.checked} tuples"))
        for phi in e.extra_duals:
            v = pair(phi, e.cycle)
            checks.append(Check(f"<{phi.name}, {e.name}> != 0", "nonzero", F.fmt(v), bool(v)))
    # off-diagonal pairings vanish
    bad = []
    for e in entries:
        if e.dual is None:
            continue
        for o in entries:
            if o is e or o.degree != e.degree:
                continue
            if pair(e.dual, o.cycle):
                bad.append(f"{e.dual.name} on {o.name}")
    checks.append(Check("off-diagonal pairings vanish", [], bad, not bad))
    return CatalogReport(f"{st.case.label()} (lambda={st.lam_text}, mu={st.mu_text})", checks, witnesses)
