import random
from fractions import Fraction

import pytest

from homcoh import linalg
from homcoh.linalg import RatMatrix
from homcoh.poly import Polynomial, VariableContext


def random_rational(rng, bound=20):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_polynomial(rng, ctx, max_degree=3, n_terms=4):
    terms = {}
    for _ in range(n_terms):
        exp = tuple(rng.randint(0, max_degree) for _ in range(ctx.nvars))
        terms[exp] = random_rational(rng)
    return Polynomial(ctx, terms)


def random_homogeneous(rng, ctx, poly_degree):
    """Random homogeneous polynomial of the given polynomial degree."""
    exps = []

    def rec(prefix, remaining):
        if len(prefix) == ctx.nvars - 1:
            exps.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e)

    rec([], poly_degree)
    terms = {e: random_rational(rng) for e in exps if rng.random() < 0.8}
    if not terms:
        terms = {exps[0]: Fraction(1)}
    return Polynomial(ctx, terms)


def quotient_dims_by_linear_algebra(gens, ctx, cutoff):
    """Per-degree quotient dimensions without any Groebner machinery.

    In each degree d, the quotient dimension is the number of monomials of
    degree d minus the rank of the span of all products m*g with g a
    generator and m a monomial of complementary degree.
    """

    def monomials_of_degree(degree):
        out = []

        def rec(prefix, remaining):
            i = len(prefix)
            if i == ctx.nvars - 1:
                if remaining % ctx.degrees[i] == 0:
                    out.append(tuple(prefix + [remaining // ctx.degrees[i]]))
                return
            e = 0
            while e * ctx.degrees[i] <= remaining:
                rec(prefix + [e], remaining - e * ctx.degrees[i])
                e += 1

        rec([], degree)
        return out

    dims = []
    for d in range(cutoff + 1):
        monos = monomials_of_degree(d)
        index = {m: i for i, m in enumerate(monos)}
        columns = []
        for g in gens:
            gd = g.cohom_degree()
            if gd > d:
                continue
            for m in monomials_of_degree(d - gd):
                col = {}
                for exp, c in g.terms.items():
                    key = tuple(a + b for a, b in zip(exp, m))
                    col[index[key]] = c
                columns.append(col)
        entries = {}
        for j, col in enumerate(columns):
            for i, c in col.items():
                entries[(i, j)] = c
        dims.append(len(monos) - linalg.rank(RatMatrix(len(monos), len(columns), entries)))
    return dims


@pytest.fixture
def rng():
    return random.Random(20240817)
