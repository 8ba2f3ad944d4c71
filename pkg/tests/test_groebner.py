from fractions import Fraction

import pytest

from conftest import quotient_dims_by_linear_algebra, random_homogeneous
from homcoh.groebner import (
    GREVLEX,
    MonomialOrder,
    buchberger,
    ideal_member,
    leading_term,
    normal_form,
    quotient_poincare,
)
from homcoh.poly import (
    LinearSubstitution,
    VariableContext,
    parse_polynomial,
    substitute_linear,
    weyl_invariant_generators,
)

XY = VariableContext.standard(("x", "y"))


def P(text, ctx=XY):
    return parse_polynomial(text, ctx)


def restricted_d4():
    """g4, g8, g12: the D4 invariants restricted to x1 = 0, x4 = x2 + x3."""
    gens = weyl_invariant_generators("D", 4)
    src = gens[0][0].ctx
    tgt = VariableContext.standard(("x2", "x3"))
    sub = LinearSubstitution(
        src, tgt, tuple(parse_polynomial(s, tgt) for s in ("0", "x2", "x3", "x2+x3"))
    )
    return tgt, [substitute_linear(f, sub) for f, _ in gens]


# ---- buchberger --------------------------------------------------------


def test_monomial_ideal_already_a_basis():
    gb = buchberger([P("x^2"), P("y^2")])
    assert {str(g) for g in gb} == {"x^2", "y^2"}


def test_zero_ideal():
    assert len(buchberger([])) == 0
    assert len(buchberger([P("0")])) == 0


def test_basis_is_monic_and_reduced():
    gb = buchberger([P("2*x^2 + 2*y"), P("3*y^2 - 3*x")])
    leads = [leading_term(g, GREVLEX)[0] for g in gb]
    for i, g in enumerate(gb):
        assert leading_term(g, GREVLEX)[1] == 1
        for j, le in enumerate(leads):
            if i == j:
                continue
            for exp in g.terms:
                assert not all(a <= b for a, b in zip(le, exp))


def test_s_pair_reductions_vanish_on_basis():
    from homcoh.groebner import s_polynomial

    gb = buchberger([P("x^3 - 2*x*y"), P("x^2*y - 2*y^2 + x")])
    gens = list(gb)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            s = s_polynomial(gens[i], gens[j], GREVLEX)
            assert not normal_form(s, gb)


# ---- normal form and membership ---------------------------------------


def test_normal_form_of_zero():
    gb = buchberger([P("x^2")])
    assert not normal_form(P("0"), gb)


def test_normal_form_below_staircase():
    gb = buchberger([P("x^2")])
    assert normal_form(P("x"), gb) == P("x")


def test_member_trivial_cases():
    assert ideal_member(P("0"), [P("x^2")])
    assert not ideal_member(P("x"), [P("x^2")])
    assert ideal_member(P("x^2*y"), [P("x^2")])


def test_restricted_d4_identities():
    """The exact algebra of the restricted invariants.

    The degree-8 restriction is the square of half the degree-4 one, so the
    ideal they generate is principal; the degree-12 restriction is *not* a
    member (its normal form is a nonzero pure power).
    """
    tgt, (g4, g8, g12, g8_tilde) = restricted_d4()
    assert g8_tilde.is_zero()
    q1 = g4.scale(Fraction(1, 2))
    assert g8 == q1 * q1
    assert ideal_member(g8, [g4])
    gb = buchberger([g4, g8])
    assert len(gb) == 1
    nf = normal_form(g12, gb)
    assert nf
    assert not ideal_member(g12, [g4, g8])


def test_membership_invariant_under_rescaling():
    tgt, (g4, g8, g12, _) = restricted_d4()
    for scale in (Fraction(3), Fraction(-1, 7)):
        assert ideal_member(g8.scale(scale), [g4.scale(Fraction(5, 2)), g8])
        assert not ideal_member(g12.scale(scale), [g4, g8.scale(scale)])


def test_membership_independent_of_order():
    tgt, (g4, g8, g12, _) = restricted_d4()
    for kind in ("grevlex", "grlex", "lex"):
        for priority in ((0, 1), (1, 0)):
            order = MonomialOrder(kind, priority)
            assert ideal_member(g8, [g4, g8], order)
            assert not ideal_member(g12, [g4, g8], order)


def test_confluence_under_randomized_reduction(rng):
    gb = buchberger([P("x^2 + y"), P("x*y - 1"), P("y^3 + x")])
    for _ in range(30):
        f = random_homogeneous(rng, XY, rng.randint(1, 5))
        reference = normal_form(f, gb)
        shuffled = normal_form(f, gb, chooser=rng.choice)
        assert shuffled == reference


# ---- quotient Poincare series -----------------------------------------


def test_quotient_single_relation():
    ctx = VariableContext.standard(("u",))
    dims = quotient_poincare([parse_polynomial("u^2", ctx)], ctx, 6)
    assert dims == [1, 0, 1, 0, 0, 0, 0]


def test_quotient_free_ring():
    ctx = VariableContext.standard(("u",))
    assert quotient_poincare([], ctx, 6) == [1, 0, 1, 0, 1, 0, 1]


def test_quotient_complete_intersection_4_8():
    gens = [P("x^2 + y^2"), P("x^4 + x*y^3")]
    dims = quotient_poincare(gens, XY, 8)
    # (1 - t^4)(1 - t^8) / (1 - t^2)^2
    assert dims == [1, 0, 2, 0, 2, 0, 2, 0, 1]
    assert dims == quotient_dims_by_linear_algebra(gens, XY, 8)


def test_quotient_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        quotient_poincare([P("x^2 + y")], XY, 4)


def _expected_ci_series(gen_degrees, var_degrees, cutoff):
    coeffs = [0] * (cutoff + 1)
    coeffs[0] = 1
    for e in var_degrees:  # multiply by 1/(1 - t^e)
        for k in range(e, cutoff + 1):
            coeffs[k] += coeffs[k - e]
    for d in gen_degrees:  # multiply by (1 - t^d)
        for k in range(cutoff, d - 1, -1):
            coeffs[k] -= coeffs[k - d]
    return coeffs


def test_quotient_matches_linear_algebra_on_random_sequences(rng):
    """Staircase counts agree with rank counts on random regular sequences."""
    checked = 0
    while checked < 20:
        d1, d2 = rng.choice([(1, 2), (2, 2), (2, 3), (1, 3), (3, 3)])
        gens = [random_homogeneous(rng, XY, d1), random_homogeneous(rng, XY, d2)]
        cutoff = 2 * (d1 + d2)
        dims = quotient_poincare(gens, XY, cutoff)
        assert dims == quotient_dims_by_linear_algebra(gens, XY, cutoff)
        if dims == _expected_ci_series((2 * d1, 2 * d2), (2, 2), cutoff):
            checked += 1
