"""Exact scalars: the function field Q(q) or a specialization q = r in Q.

Two field contexts share one interface:

* ``GenericField`` works in Q(q). Elements are ``RatFunc`` values, a
  reduced numerator/denominator pair of ``flint.fmpq_poly`` with monic
  denominator, so equality is structural.
* ``SpecializedField(r)`` works in Q with q replaced by a rational
  ``r`` not in {0, 1, -1}. Elements are ``fractions.Fraction``.

Downstream code never inspects the representation. It asks the field for
``q``, ``qpow(n)``, ``one``, ``zero`` and uses ordinary arithmetic.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from flint import fmpq, fmpq_poly

_X = fmpq_poly([0, 1])
_ONE_POLY = fmpq_poly([1])
_ZERO_POLY = fmpq_poly([])


def _to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    x = Fraction(x)
    return fmpq(x.numerator, x.denominator)


def _fraction(c: fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


class RatFunc:
    """An element of Q(q) kept in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, fmpq_poly):
            num = fmpq_poly([_to_fmpq(num)]) if num != 0 else fmpq_poly([])
        if den is None:
            self.num, self.den = num, _ONE_POLY
            return
        if not isinstance(den, fmpq_poly):
            den = fmpq_poly([_to_fmpq(den)])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                num, den = _ZERO_POLY, _ONE_POLY
            else:
                g = num.gcd(den)
                if g.degree() > 0:
                    num, den = num // g, den // g
                lc = den.leading_coefficient()
                if lc != 1:
                    num, den = num / lc, den / lc
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def _reduce(cls, num, den):
        if num.is_zero():
            return cls._raw(_ZERO_POLY, _ONE_POLY)
        if den == _ONE_POLY:
            return cls._raw(num, den)
        g = num.gcd(den)
        if g.degree() > 0:
            num, den = num // g, den // g
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return cls._raw(num, den)

    # arithmetic ------------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, fmpq)):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        if self.den == other.den:
            if self.den == _ONE_POLY:
                return RatFunc._raw(self.num + other.num, _ONE_POLY)
            return RatFunc._reduce(self.num + other.num, self.den)
        return RatFunc._reduce(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        if self.den == other.den:
            if self.den == _ONE_POLY:
                return RatFunc._raw(self.num - other.num, _ONE_POLY)
            return RatFunc._reduce(self.num - other.num, self.den)
        return RatFunc._reduce(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        sn, on = self.num, other.num
        if sn.is_zero() or on.is_zero():
            return RatFunc._raw(_ZERO_POLY, _ONE_POLY)
        sd, od = self.den, other.den
        if sd == _ONE_POLY and od == _ONE_POLY:
            return RatFunc._raw(sn * on, _ONE_POLY)
        # cross-cancel so the result is reduced without a big gcd
        if od != _ONE_POLY:
            g1 = sn.gcd(od)
            if g1.degree() > 0:
                sn, od = sn // g1, od // g1
        if sd != _ONE_POLY:
            g2 = on.gcd(sd)
            if g2.degree() > 0:
                on, sd = on // g2, sd // g2
        return RatFunc._raw(sn * on, sd * od)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc._reduce(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(1) / (self ** (-n))
        return RatFunc._raw(self.num ** n, self.den ** n)

    # comparisons -----------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(str(c) for c in self.num.coeffs()), tuple(str(c) for c in self.den.coeffs())))

    def __bool__(self):
        return not self.num.is_zero()

    # inspection ------------------------------------------------------------
    def evaluate(self, r) -> Fraction:
        r = _to_fmpq(r)
        d = self.den(r)
        if d == 0:
            raise ZeroDivisionError(f"denominator of {self} vanishes at q={r}")
        return _fraction(self.num(r) / d)

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return Fraction(0) if self.num.is_zero() else _fraction(self.num.coeffs()[0])

    def monomial_data(self):
        """Return (c, e) with self == c*q^e, or None."""
        nz_n = [(k, c) for k, c in enumerate(self.num.coeffs()) if c != 0]
        nz_d = [(k, c) for k, c in enumerate(self.den.coeffs()) if c != 0]
        if len(nz_n) != 1 or len(nz_d) != 1:
            return None
        (en, cn), (ed, cd) = nz_n[0], nz_d[0]
        return _fraction(cn / cd), en - ed

    def _integral_pair(self):
        """Numerator and denominator scaled to coprime integer polynomials."""
        from math import gcd

        coeffs = [_fraction(c) for c in self.num.coeffs()] + [_fraction(c) for c in self.den.coeffs()]
        coeffs = [c for c in coeffs if c]
        m = 1
        for c in coeffs:
            m = m * c.denominator // gcd(m, c.denominator)
        g = 0
        for c in coeffs:
            g = gcd(g, int(c * m))
        k = Fraction(m, g)
        return self.num * _to_fmpq(k), self.den * _to_fmpq(k)

    def __str__(self):
        if self.den == _ONE_POLY:
            return _poly_str(self.num)
        num, den = self._integral_pair()
        n = _poly_str(num)
        d = _poly_str(den)
        if _needs_parens(n):
            n = f"({n})"
        if _needs_parens(d) or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"


def _needs_parens(s: str) -> bool:
    return "+" in s or "-" in s[1:] or "/" in s


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_str(p: fmpq_poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    coeffs = p.coeffs()
    for k in range(len(coeffs) - 1, -1, -1):
        c = _fraction(coeffs[k])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = _coeff_str(a)
        else:
            qk = "q" if k == 1 else f"q^{k}"
            body = qk if a == 1 else f"{_coeff_str(a)}*{qk}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


def format_fraction(x: Fraction) -> str:
    return _coeff_str(Fraction(x))


# ---------------------------------------------------------------------------
# small expression parser shared with the algebra text format


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*\*)|(.))")


def tokenize(text: str, split: str = ""):
    """Tokenize; identifiers made only of letters in ``split`` are split up."""
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        num, ident, caret, dstar, other = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            if split and len(ident) > 1 and all(ch in split for ch in ident):
                out.extend(("id", ch) for ch in ident)
            else:
                out.append(("id", ident))
        elif caret is not None or dstar is not None:
            out.append(("op", "^"))
        elif other is not None and not other.isspace():
            out.append(("op", other))
    return out


def eval_int_expr(text: str, env: dict) -> int:
    """Evaluate a small integer expression like ``N+1`` or ``2*M-1``."""
    toks = tokenize(text)
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else (None, None)

    def take():
        t = peek()
        pos[0] += 1
        return t

    def atom():
        kind, val = take()
        if kind == "num":
            return val
        if kind == "id":
            if val not in env:
                raise ParseError(f"unknown integer variable {val!r}")
            return int(env[val])
        if val == "(":
            v = expr()
            if take()[1] != ")":
                raise ParseError("missing ')'")
            return v
        if val == "-":
            return -atom()
        raise ParseError(f"bad integer expression {text!r}")

    def term():
        v = atom()
        while peek()[1] == "*":
            take()
            v *= atom()
        return v

    def expr():
        v = term()
        while peek()[1] in ("+", "-"):
            op = take()[1]
            v = v + term() if op == "+" else v - term()
        return v

    v = expr()
    if pos[0] != len(toks):
        raise ParseError(f"trailing input in {text!r}")
    return v


class ExprParser:
    """Recursive-descent parser for sums of products of powers.

    Subclasses extend ``atom_identifier`` to add more atoms (algebra
    generators). Products are evaluated left to right, so they may be
    noncommutative. Exponents can be integers, ``-n``, identifiers bound in
    ``env`` or ``{expr}`` groups.
    """

    letters = "q"

    def __init__(self, field, env=None):
        self.field = field
        self.env = dict(env or {})

    def parse(self, text: str):
        self.text = text
        self.toks = tokenize(text, self.letters)
        self.pos = 0
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.pos != len(self.toks):
            raise ParseError(f"unexpected token {self.toks[self.pos][1]!r} in {text!r}")
        return v

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.pos += 1
        return t

    def expect(self, val):
        t = self.take()
        if t[1] != val:
            raise ParseError(f"expected {val!r} in {self.text!r}")

    def expr(self):
        neg = False
        if self.peek()[1] in ("+", "-"):
            neg = self.take()[1] == "-"
        v = self.product()
        if neg:
            v = -v
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.product()
            v = v + rhs if op == "+" else v - rhs
        return v

    def _starts_factor(self, tok):
        kind, val = tok
        return kind in ("num", "id") or val == "("

    def product(self):
        v = self.power()
        while True:
            tok = self.peek()
            if tok[1] == "*":
                self.take()
                v = v * self.power()
            elif tok[1] == "/":
                self.take()
                d = self.power()
                v = self.divide(v, d)
            elif self._starts_factor(tok):
                v = v * self.power()
            else:
                return v

    def divide(self, v, d):
        return v / d

    def exponent(self) -> int:
        kind, val = self.take()
        if val == "-":
            return -self.exponent()
        if kind == "num":
            return val
        if kind == "id":
            if val not in self.env:
                raise ParseError(f"unbound exponent {val!r}")
            return int(self.env[val])
        if val in ("{", "("):
            close = "}" if val == "{" else ")"
            start = self.pos
            depth = 1
            while depth:
                k, v = self.take()
                if k is None:
                    raise ParseError("unbalanced exponent group")
                if v == val:
                    depth += 1
                elif v == close:
                    depth -= 1
            inner = self.toks[start:self.pos - 1]
            return eval_int_expr(" ".join(str(t[1]) for t in inner), self.env)
        raise ParseError(f"bad exponent in {self.text!r}")

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            n = self.exponent()
            base = self.raise_power(base, n)
        return base

    def raise_power(self, base, n):
        return base ** n

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            # allow decimal-free rationals like 3/2 through the product rule
            return self.field.from_rational(val)
        if kind == "id":
            return self.atom_identifier(val)
        if val == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")

    def atom_identifier(self, name):
        if name == "q":
            return self.field.q
        if name in self.env:
            return self.field.from_rational(int(self.env[name]))
        raise ParseError(f"unknown symbol {name!r}")


# ---------------------------------------------------------------------------
# field contexts


class _FieldBase:
    mode = "abstract"

    def from_rational(self, x):
        raise NotImplementedError

    @property
    def one(self):
        return self.from_rational(1)

    @property
    def zero(self):
        return self.from_rational(0)

    def __call__(self, x):
        if isinstance(x, str):
            return self.parse(x)
        return self.from_rational(x)

    def parse(self, text: str, env=None):
        """Parse a scalar expression such as ``-3/2*q^-2`` or ``(q^2-1)/(q-1)``."""
        return ExprParser(self, env).parse(text)

    def qexp_of(self, x, bound: int = 80):
        """Return n with x == q^n for |n| <= bound, or None."""
        for n in range(-bound, bound + 1):
            if x == self.qpow(n):
                return n
        return None


class GenericField(_FieldBase):
    """The rational function field Q(q)."""

    mode = "generic"

    def __init__(self):
        self.q = RatFunc(_X)
        self._qpow = {}

    def from_rational(self, x):
        if isinstance(x, RatFunc):
            return x
        return RatFunc(x)

    def qpow(self, n: int) -> RatFunc:
        v = self._qpow.get(n)
        if v is None:
            if n >= 0:
                v = RatFunc(_X ** n, _ONE_POLY, _reduced=True)
            else:
                v = RatFunc(_ONE_POLY, _X ** (-n), _reduced=True)
            self._qpow[n] = v
        return v

    def fmt(self, x) -> str:
        return str(self.from_rational(x))

    def specialize(self, x, r) -> Fraction:
        return self.from_rational(x).evaluate(r)

    # ring layer used by fraction-free elimination --------------------------
    def numer_denom(self, x):
        return x.num, x.den

    def ring_zero(self, p) -> bool:
        return p.is_zero()

    def ring_gcd(self, a, b):
        return a.gcd(b)

    def ring_exact_div(self, a, b):
        return a // b

    def ring_lcm(self, a, b):
        return (a * b) // a.gcd(b)

    def from_ring(self, p) -> RatFunc:
        return RatFunc(p)

    def ring_one(self):
        return _ONE_POLY

    def ring_normalize(self, row: dict) -> dict:
        g = None
        for v in row.values():
            g = v if g is None else g.gcd(v)
            if g.degree() == 0:
                break
        if g is not None and g.degree() > 0:
            row = {k: v // g for k, v in row.items()}
        return row

    def __repr__(self):
        return "GenericField()"

    def __eq__(self, other):
        return isinstance(other, GenericField)

    def __hash__(self):
        return hash("generic")


class SpecializedField(_FieldBase):
    """Q with q specialized to a rational r outside {0, 1, -1}."""

    mode = "specialized"

    def __init__(self, r):
        r = Fraction(r)
        if r in (0, 1, -1):
            raise ValueError(f"q = {r} is not allowed (need q not in {{0, 1, -1}})")
        self.r = r
        self.q = r
        self._qpow = {}

    def from_rational(self, x):
        if isinstance(x, RatFunc):
            return x.evaluate(self.r)
        return Fraction(x)

    def qpow(self, n: int) -> Fraction:
        v = self._qpow.get(n)
        if v is None:
            v = self.r ** n
            self._qpow[n] = v
        return v

    def fmt(self, x) -> str:
        return format_fraction(x)

    def specialize(self, x, r) -> Fraction:
        return Fraction(x)

    def numer_denom(self, x):
        return x.numerator, x.denominator

    def ring_zero(self, p) -> bool:
        return p == 0

    def ring_gcd(self, a, b):
        from math import gcd

        return gcd(a, b)

    def ring_exact_div(self, a, b):
        return a // b

    def ring_lcm(self, a, b):
        from math import gcd

        return a * b // gcd(a, b)

    def from_ring(self, p) -> Fraction:
        return Fraction(p)

    def ring_one(self):
        return 1

    def ring_normalize(self, row: dict) -> dict:
        from math import gcd

        g = 0
        for v in row.values():
            g = gcd(g, v)
            if g == 1:
                break
        if g not in (0, 1):
            row = {k: v // g for k, v in row.items()}
        return row

    def __repr__(self):
        return f"SpecializedField({format_fraction(self.r)})"

    def __eq__(self, other):
        return isinstance(other, SpecializedField) and other.r == self.r

    def __hash__(self):
        return hash(("specialized", self.r))


@lru_cache(maxsize=None)
def make_field(spec: str = "generic"):
    """Build a field from a CLI-style string: ``generic`` or a rational ``p/r``."""
    spec = str(spec).strip()
    if spec == "generic":
        return GenericField()
    try:
        r = Fraction(spec)
    except ValueError as exc:
        raise ValueError(f"bad --q value {spec!r}; use 'generic' or a rational p/r") from exc
    return SpecializedField(r)


_SCALAR_EXPR = re.compile(r"^\s*(-)?\s*(?:(\d+)(?:/(\d+))?\s*\*?\s*)?q(?:\^\s*(\(?-?\d+\)?|\{-?\d+\}))?\s*$")


def parse_scalar_expr(field, text: str):
    """Parse the parameter grammar ``[-][p[/r]*]q^[-]e`` or a bare rational.

    Anything else that the general expression parser accepts is also
    allowed, so ``(q^2-1)/(q-1)`` works.
    """
    text = str(text).strip()
    m = _SCALAR_EXPR.match(text)
    if m:
        neg, p, r, e = m.groups()
        c = Fraction(int(p), int(r) if r else 1) if p else Fraction(1)
        if neg:
            c = -c
        n = int(e.strip("(){}")) if e else 1
        return field.from_rational(c) * field.qpow(n)
    try:
        return field.from_rational(Fraction(text))
    except ValueError:
        pass
    return field.parse(text)


def q_monomial_of(field, x):
    """Return (c, e) with x == c*q^e in generic mode, else None."""
    if isinstance(x, RatFunc):
        return x.monomial_data()
    return None
