"""Exact sparse linear algebra over Q(q) or Q.

Vectors are dicts ``{coordinate: scalar}`` with arbitrary hashable
coordinates. A matrix is a list of column vectors. Elimination is
fraction-free: every vector is first scaled to have entries in the
polynomial ring (Q[q], or Z in specialized mode), it is then combined with
pivot vectors by cross multiplication, and the content gcd is divided out
after each step to keep degrees bounded. Pivots are taken at the
coordinate that comes first in a caller-supplied order, and sparse vectors
are processed first.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field


def _to_ring(F, vec: dict) -> dict:
    """Scale a field vector so all entries lie in the polynomial ring."""
    if not vec:
        return {}
    dens = [F.numer_denom(v)[1] for v in vec.values()]
    L = dens[0]
    for d in dens[1:]:
        if d != L:
            L = F.ring_lcm(L, d)
    out = {}
    for k, v in vec.items():
        n, d = F.numer_denom(v)
        out[k] = n * F.ring_exact_div(L, d) if d != L else n
    return out


def _normalize_joint(F, vec: dict, combo: dict | None):
    if combo is None:
        return F.ring_normalize(vec), None
    g = None
    for x in list(vec.values()) + list(combo.values()):
        g = x if g is None else F.ring_gcd(g, x)
    if g is None or F.ring_zero(g):
        return vec, combo
    vec = {k: F.ring_exact_div(x, g) for k, x in vec.items()}
    combo = {k: F.ring_exact_div(x, g) for k, x in combo.items()}
    return vec, combo


class Echelon:
    """Incremental fraction-free echelon basis of a span of vectors.

    ``order`` maps a coordinate to a sort key; the pivot of a vector is its
    coordinate with the smallest key. With ``track=True`` each stored vector
    remembers which input combination produced it.
    """

    def __init__(self, F, order=None, track: bool = False):
        self.F = F
        self.order = order or (lambda k: k)
        self.track = track
        self.pivots = {}  # coordinate -> (vec, combo)
        self.relations = []  # combos of inputs that reduced to zero

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict, combo: dict | None = None):
        """Reduce a ring vector against the stored pivots."""
        F = self.F
        order = self.order
        while vec:
            hits = [k for k in vec if k in self.pivots]
            if not hits:
                break
            k = min(hits, key=order)
            pv, pc = self.pivots[k]
            a, b = pv[k], vec[k]
            g = F.ring_gcd(a, b)
            a, b = F.ring_exact_div(a, g), F.ring_exact_div(b, g)
            new = {}
            for key, x in vec.items():
                new[key] = x * a
            for key, x in pv.items():
                y = new.get(key)
                y = -x * b if y is None else y - x * b
                if F.ring_zero(y):
                    new.pop(key, None)
                else:
                    new[key] = y
            new.pop(k, None)
            if combo is not None:
                nc = {key: x * a for key, x in combo.items()}
                for key, x in pc.items():
                    y = nc.get(key)
                    y = -x * b if y is None else y - x * b
                    if F.ring_zero(y):
                        nc.pop(key, None)
                    else:
                        nc[key] = y
                combo = nc
            if new:
                vec, combo = _normalize_joint(F, new, combo)
            else:
                vec = new
        return vec, combo

    def add(self, vec_field: dict, label=None) -> bool:
        """Insert a field vector; return True if it enlarged the span."""
        F = self.F
        vec = _to_ring(F, {k: v for k, v in vec_field.items() if v})
        combo = None
        if self.track:
            combo = {label: _scale_of(F, vec_field, vec)}
        vec, combo = self.reduce(vec, combo)
        if not vec:
            if self.track:
                self.relations.append(combo)
            return False
        k = min(vec, key=self.order)
        self.pivots[k] = (vec, combo)
        return True

    def contains(self, vec_field: dict) -> bool:
        vec = _to_ring(self.F, {k: v for k, v in vec_field.items() if v})
        vec, _ = self.reduce(vec)
        return not vec


def _scale_of(F, vec_field: dict, vec_ring: dict):
    """The ring scalar s with vec_ring = s * vec_field (as ring element)."""
    if not vec_field:
        return F.ring_one()
    k = next(iter(vec_ring))
    ratio = F.from_ring(vec_ring[k]) / vec_field[k]
    return F.numer_denom(ratio)[0]


def rank(F, columns, order=None) -> int:
    """Exact rank of the matrix whose columns are the given vectors."""
    ech = Echelon(F, order)
    for col in sorted(columns, key=len):
        ech.add(col)
    return ech.rank


def kernel_basis(F, columns) -> list:
    """Basis of {x : sum_j x_j columns[j] = 0} as dicts {j: scalar}."""
    ech = Echelon(F, track=True)
    idx = sorted(range(len(columns)), key=lambda j: len(columns[j]))
    for j in idx:
        if not columns[j]:
            ech.relations.append({j: F.ring_one()})
            continue
        ech.add(columns[j], label=j)
    out = []
    for rel in ech.relations:
        out.append({j: F.from_ring(x) for j, x in rel.items() if not F.ring_zero(x)})
    return out


def solve_membership(F, columns, target: dict):
    """Decide whether ``target`` lies in the span of ``columns``.

    Returns ``(True, coeffs)`` with ``sum coeffs[j] * columns[j] == target``,
    or ``(False, None)``.
    """
    if not any(target.values()):
        return True, {}
    ech = Echelon(F, track=True)
    for j in sorted(range(len(columns)), key=lambda j: len(columns[j])):
        if columns[j]:
            ech.add(columns[j], label=j)
    ech.add(target, label="target")
    rel = ech.relations[-1] if ech.relations else None
    if rel is None or "target" not in rel or F.ring_zero(rel["target"]):
        return False, None
    s = F.from_ring(rel["target"])
    coeffs = {}
    for j, x in rel.items():
        if j == "target":
            continue
        v = -F.from_ring(x) / s
        if v:
            coeffs[j] = v
    return True, coeffs


def combine(F, columns, coeffs: dict) -> dict:
    out = {}
    for j, c in coeffs.items():
        for k, v in columns[j].items():
            y = out.get(k)
            y = v * c if y is None else y + v * c
            if y:
                out[k] = y
            else:
                out.pop(k, None)
    return out


def project(vec: dict, keep) -> dict:
    return {k: v for k, v in vec.items() if keep(k)}


def dim_intersection_with_coordinates(F, columns, keep) -> int:
    """dim(span(columns) and the coordinate subspace {x : x_k = 0 unless keep(k)})."""
    full = rank(F, columns)
    outside = rank(F, [project(c, lambda k: not keep(k)) for c in columns])
    return full - outside


def intersection_basis_with_coordinates(F, columns, keep) -> list:
    """Vectors spanning span(columns) intersected with a coordinate subspace."""
    outside = [project(c, lambda k: not keep(k)) for c in columns]
    out = []
    for rel in kernel_basis(F, outside):
        v = combine(F, columns, rel)
        if v:
            out.append(v)
    return out


def complement_choice(F, subspace, candidates, order=None) -> list:
    """Indices of candidates that extend a basis of ``subspace`` greedily."""
    ech = Echelon(F, order)
    for v in subspace:
        ech.add(v)
    chosen = []
    for idx, v in enumerate(candidates):
        if ech.add(v):
            chosen.append(idx)
    return chosen


@dataclass
class SparseMatrix:
    """A thin column-oriented wrapper around the functions above."""

    F: object
    columns: list = dc_field(default_factory=list)

    def rank(self) -> int:
        return rank(self.F, self.columns)

    def kernel_basis(self) -> list:
        return kernel_basis(self.F, self.columns)

    def solve(self, target: dict):
        return solve_membership(self.F, self.columns, target)

    def apply(self, x: dict) -> dict:
        return combine(self.F, self.columns, x)


@dataclass
class BasisWindow:
    """Monomials e_{ijk} with |i| <= I and j + k <= L, optionally of one bidegree."""

    I: int
    L: int
    bidegree: tuple | None = None

    @property
    def monomials(self) -> list:
        out = []
        for i in range(-self.I, self.I + 1):
            for lev in range(self.L + 1):
                for j in range(lev + 1):
                    m = (i, j, lev - j)
                    if self.bidegree is None or (i, j - (lev - j)) == tuple(self.bidegree):
                        out.append(m)
        return sorted(out)

    def index(self) -> dict:
        return {m: n for n, m in enumerate(self.monomials)}


def matrix_of(F, fn, domain, codomain=None, overflow: str = "truncate"):
    """Columns fn(x) for x in domain, as a SparseMatrix plus a truncation flag.

    ``fn`` maps a domain key to a coordinate dict. With a codomain key set,
    coordinates outside it are dropped (``overflow="truncate"``) or raise
    (``overflow="error"``).
    """
    cod = None if codomain is None else set(codomain)
    cols = []
    truncated = False
    for x in domain:
        col = fn(x)
        if cod is not None:
            extra = [k for k in col if k not in cod]
            if extra:
                if overflow == "error":
                    raise ValueError(f"image of {x} leaves the codomain window at {extra[0]}")
                truncated = True
                col = {k: v for k, v in col.items() if k in cod}
        cols.append(col)
    return SparseMatrix(F, cols), truncated
