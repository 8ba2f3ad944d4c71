"""Buchberger's algorithm, normal forms, ideal membership, quotient series.

Coefficients are exact rationals throughout.  The default order is grevlex;
all quantities consumed elsewhere in the package (membership verdicts,
quotient dimensions) are independent of the order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .poly import Polynomial, VariableContext


@dataclass(frozen=True)
class MonomialOrder:
    """Graded or lexicographic monomial order with a variable priority."""

    kind: str = "grevlex"  # grevlex | grlex | lex
    priority: tuple = ()  # permutation of variable indices, first = highest

    def __post_init__(self):
        if self.kind not in ("grevlex", "grlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def _permuted(self, exp):
        if not self.priority:
            return exp
        return tuple(exp[i] for i in self.priority)

    def key(self, exp):
        e = self._permuted(exp)
        if self.kind == "lex":
            return e
        if self.kind == "grlex":
            return (sum(e), e)
        return (sum(e), tuple(-x for x in reversed(e)))


GREVLEX = MonomialOrder("grevlex")


def leading_term(f: Polynomial, order: MonomialOrder):
    """(exponent, coefficient) of the leading monomial of a nonzero f."""
    exp = max(f.terms, key=order.key)
    return exp, f.terms[exp]


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _monomial_mul(f: Polynomial, exp, coeff):
    return Polynomial(
        f.ctx,
        {
            tuple(a + b for a, b in zip(e, exp)): c * coeff
            for e, c in f.terms.items()
        },
    )


def s_polynomial(f, g, order):
    ef, cf = leading_term(f, order)
    eg, cg = leading_term(g, order)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    uf = tuple(a - b for a, b in zip(lcm, ef))
    ug = tuple(a - b for a, b in zip(lcm, eg))
    return _monomial_mul(f, uf, Fraction(1, 1) / cf) - _monomial_mul(
        g, ug, Fraction(1, 1) / cg
    )


def normal_form(f: Polynomial, basis, order: MonomialOrder = GREVLEX, chooser=None):
    """Remainder of full multivariate division of f by the given basis.

    `chooser(candidates)` may pick among the reducers whose leading term
    divides the current one; the default takes the first.  For a Groebner
    basis the result does not depend on this choice.
    """
    if hasattr(basis, "generators"):
        basis = basis.generators
    basis = [g for g in basis if g]
    leads = [leading_term(g, order) for g in basis]
    remainder = Polynomial.zero(f.ctx)
    work = f
    while work.terms:
        exp = max(work.terms, key=order.key)
        coeff = work.terms[exp]
        candidates = [i for i, (le, _) in enumerate(leads) if _divides(le, exp)]
        if candidates:
            i = candidates[0] if chooser is None else chooser(candidates)
            le, lc = leads[i]
            shift = tuple(a - b for a, b in zip(exp, le))
            work = work - _monomial_mul(basis[i], shift, coeff / lc)
        else:
            t = Polynomial(f.ctx, {exp: coeff})
            remainder = remainder + t
            work = work - t
    return remainder


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, auto-reduced generators."""

    order: MonomialOrder
    generators: tuple

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def _interreduce(basis, order):
    basis = [g for g in basis if g]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            rest = basis[:i] + basis[i + 1 :]
            r = normal_form(basis[i], rest, order)
            if r.terms != basis[i].terms:
                changed = True
                if r:
                    basis[i] = r
                else:
                    basis.pop(i)
                    break
    monic = []
    for g in basis:
        _, lc = leading_term(g, order)
        monic.append(g.scale(Fraction(1, 1) / lc))
    monic.sort(key=lambda g: order.key(leading_term(g, order)[0]))
    return monic


def buchberger(gens, order: MonomialOrder = GREVLEX, degree_cutoff=None):
    """Reduced Groebner basis of the ideal generated by gens.

    With `degree_cutoff` set, S-pairs whose lcm has cohomological degree
    above the cutoff are skipped; for homogeneous input the leading terms
    are then still correct in all degrees up to the cutoff.
    """
    basis = [g for g in gens if g]
    if not basis:
        return GroebnerBasis(order, ())
    ctx = basis[0].ctx
    for g in basis:
        if g.ctx != ctx:
            raise ValueError("generators live in different variable contexts")
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    while pairs:
        i, j = min(
            pairs,
            key=lambda p: order.key(
                tuple(
                    max(a, b)
                    for a, b in zip(
                        leading_term(basis[p[0]], order)[0],
                        leading_term(basis[p[1]], order)[0],
                    )
                )
            ),
        )
        pairs.discard((i, j))
        ei, _ = leading_term(basis[i], order)
        ej, _ = leading_term(basis[j], order)
        lcm = tuple(max(a, b) for a, b in zip(ei, ej))
        # Buchberger's coprimality criterion
        if lcm == tuple(a + b for a, b in zip(ei, ej)):
            continue
        if degree_cutoff is not None:
            lcm_degree = sum(e * d for e, d in zip(lcm, ctx.degrees))
            if lcm_degree > degree_cutoff:
                continue
        r = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if r:
            basis.append(r)
            k = len(basis) - 1
            pairs.update((i2, k) for i2 in range(k))
    return GroebnerBasis(order, tuple(_interreduce(basis, order)))


def ideal_member(f: Polynomial, gens, order: MonomialOrder = GREVLEX) -> bool:
    """True iff f lies in the ideal generated by gens."""
    if not f:
        return True
    gb = buchberger(list(gens), order)
    return not normal_form(f, gb, order)


def _standard_monomials(leads, weights, cutoff):
    """Exponent tuples of weighted degree <= cutoff outside the staircase."""
    n = len(weights)
    found = []

    def rec(prefix, degree):
        i = len(prefix)
        if i == n:
            exp = tuple(prefix)
            if not any(_divides(le, exp) for le in leads):
                found.append(exp)
            return
        e = 0
        while degree + e * weights[i] <= cutoff:
            rec(prefix + [e], degree + e * weights[i])
            e += 1

    rec([], 0)
    return found


def quotient_poincare(gens, ctx: VariableContext, cutoff: int):
    """Dimensions by cohomological degree of the graded quotient ring.

    Counts standard monomials outside the leading-term staircase of a
    (degree-truncated) Groebner basis; entries indexed 0..cutoff.
    """
    gens = [g for g in gens if g]
    for g in gens:
        if g.ctx != ctx:
            raise ValueError("generator outside the given context")
        if not g.is_homogeneous():
            raise ValueError(f"non-homogeneous generator: {g}")
    gb = buchberger(gens, GREVLEX, degree_cutoff=cutoff)
    leads = [leading_term(g, GREVLEX)[0] for g in gb]
    dims = [0] * (cutoff + 1)
    for exp in _standard_monomials(leads, ctx.degrees, cutoff):
        dims[sum(e * d for e, d in zip(exp, ctx.degrees))] += 1
    return dims
