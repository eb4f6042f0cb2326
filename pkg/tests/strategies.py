"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

monos = st.builds(lambda i, j, k: (i, j, k), st.integers(-2, 2), st.integers(0, 2), st.integers(0, 2))
small_coeffs = st.sampled_from([1, -1, 2, -3, Fraction(1, 2)])
qexps = st.integers(-4, 4)


def elements(A, max_terms=3, mono=monos):
    def build(pairs):
        acc = {}
        for m, c, e in pairs:
            acc[m] = acc.get(m, A.F.zero) + A.F(c) * A.F.qpow(e)
        return A.element(acc)

    return st.lists(st.tuples(mono, small_coeffs, st.integers(-2, 2)), min_size=1,
                    max_size=max_terms).map(build)


def scalars(F):
    return st.one_of(qexps.map(F.qpow), st.sampled_from([2, 3, Fraction(3, 2)]).map(F))


def tuples_of(n, mono=monos):
    return st.tuples(*([mono] * (n + 1)))
