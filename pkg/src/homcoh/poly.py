"""Multivariate polynomials over the rationals with a cohomological grading.

A VariableContext fixes the variables and their (even) cohomological degrees;
the usual convention is that a coordinate on a maximal torus sits in degree 2,
so a polynomial of polynomial degree k is cohomologically homogeneous of
degree 2k.  Linear substitutions implement restriction maps between tori, and
`weyl_invariant_generators` returns the classical generating invariants of the
Weyl groups of the simple families.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product


@dataclass(frozen=True)
class VariableContext:
    """Ordered variables with even positive cohomological degrees."""

    names: tuple
    degrees: tuple

    def __post_init__(self):
        if len(self.names) != len(set(self.names)):
            raise ValueError("variable names must be unique")
        if len(self.names) != len(self.degrees):
            raise ValueError("one degree per variable")
        for d in self.degrees:
            if d <= 0 or d % 2 != 0:
                raise ValueError("variable degrees must be even and positive")

    @classmethod
    def standard(cls, names, degree=2):
        return cls(tuple(names), tuple(degree for _ in names))

    @property
    def nvars(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)


class Polynomial:
    """Exact polynomial: map from exponent tuples to nonzero rationals."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        cleaned = {}
        for exp, c in (terms or {}).items():
            if len(exp) != ctx.nvars:
                raise ValueError("exponent length does not match context")
            c = Fraction(c)
            if c != 0:
                cleaned[tuple(exp)] = c
        self.terms = cleaned

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def constant(cls, ctx, c):
        return cls(ctx, {(0,) * ctx.nvars: Fraction(c)})

    @classmethod
    def variable(cls, ctx, name):
        i = ctx.index(name)
        exp = tuple(1 if j == i else 0 for j in range(ctx.nvars))
        return cls(ctx, {exp: Fraction(1)})

    # ---- structure ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def monomial_degree(self, exp):
        return sum(e * d for e, d in zip(exp, self.ctx.degrees))

    def cohom_degree(self):
        """Cohomological degree of a homogeneous polynomial (0 if zero)."""
        degs = {self.monomial_degree(e) for e in self.terms}
        if not degs:
            return 0
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def is_homogeneous(self):
        return len({self.monomial_degree(e) for e in self.terms}) <= 1

    # ---- arithmetic ---------------------------------------------------

    def _check_ctx(self, other):
        if self.ctx != other.ctx:
            raise ValueError("polynomials live in different variable contexts")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ctx, other)
        self._check_ctx(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + c
        return Polynomial(self.ctx, terms)

    def __neg__(self):
        return Polynomial(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ctx, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_ctx(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.ctx, terms)

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        return Polynomial(self.ctx, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, values):
        """Evaluate at rational values (one per variable)."""
        total = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for e, x in zip(exp, values):
                v *= Fraction(x) ** e
            total += v
        return total

    # ---- printing -----------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[exp]
            factors = []
            for name, e in zip(self.ctx.names, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            coeff = str(c) if (abs(c) != 1 or not factors) else ("-" if c == -1 else "")
            body = "*".join(factors)
            if coeff and body:
                parts.append(f"{coeff}*{body}" if coeff not in ("", "-") else f"{coeff}{body}")
            else:
                parts.append(coeff or body)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


@dataclass(frozen=True)
class LinearSubstitution:
    """Map sending each source variable to a polynomial in the target ring."""

    source: VariableContext
    target: VariableContext
    images: tuple  # one Polynomial in `target` per source variable

    def __post_init__(self):
        if len(self.images) != self.source.nvars:
            raise ValueError("one image per source variable")
        for img in self.images:
            if img.ctx != self.target:
                raise ValueError("image not in target context")

    @classmethod
    def identity(cls, ctx):
        return cls(ctx, ctx, tuple(Polynomial.variable(ctx, n) for n in ctx.names))


def substitute_linear(f: Polynomial, s: LinearSubstitution) -> Polynomial:
    """Apply the substitution to f; a ring homomorphism into the target."""
    if f.ctx != s.source:
        raise ValueError("polynomial does not live in the substitution source")
    result = Polynomial.zero(s.target)
    for exp, c in f.terms.items():
        term = Polynomial.constant(s.target, c)
        for img, e in zip(s.images, exp):
            if e:
                term = term * img**e
        result = result + term
    return result


# ---- parser ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+/\d+|\d+|[A-Za-z_][A-Za-z_0-9']*|\^|\*|\+|-|\(|\))")


def _tokenize(text):
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse polynomial at position {pos}: {text[pos:pos+10]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, ctx):
        self.tokens = tokens
        self.pos = 0
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse_sum(self):
        if self.peek() == "-":
            self.take()
            result = -self.parse_product()
        else:
            result = self.parse_product()
        while self.peek() in ("+", "-"):
            op = self.take()
            term = self.parse_product()
            result = result + term if op == "+" else result - term
        return result

    def parse_product(self):
        result = self.parse_power()
        while True:
            nxt = self.peek()
            if nxt == "*":
                self.take()
                result = result * self.parse_power()
            elif nxt is not None and nxt not in ("+", "-", ")", "^"):
                # implicit product, e.g. "2x" or "x y"
                result = result * self.parse_power()
            else:
                return result

    def parse_power(self):
        base = self.parse_atom()
        if self.peek() == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok is None or not exp_tok.isdigit():
                raise ValueError("exponent must be a natural number")
            return base ** int(exp_tok)
        return base

    def parse_atom(self):
        tok = self.take()
        if tok is None:
            raise ValueError("unexpected end of polynomial")
        if tok == "(":
            inner = self.parse_sum()
            if self.take() != ")":
                raise ValueError("unbalanced parenthesis")
            return inner
        if re.fullmatch(r"\d+/\d+|\d+", tok):
            return Polynomial.constant(self.ctx, Fraction(tok))
        if tok in self.ctx.names:
            return Polynomial.variable(self.ctx, tok)
        raise ValueError(f"unknown variable {tok!r}")


def parse_polynomial(text: str, ctx: VariableContext) -> Polynomial:
    """Parse ASCII polynomial text like `2*x2^2 + 2*x2*x3 + 2*x3^2`."""
    tokens = _tokenize(text)
    if not tokens:
        return Polynomial.zero(ctx)
    parser = _Parser(tokens, ctx)
    result = parser.parse_sum()
    if parser.peek() is not None:
        raise ValueError(f"trailing input in polynomial: {parser.peek()!r}")
    return result


# ---- Weyl invariant generators -----------------------------------------


def _elementary_symmetric(polys, k):
    """e_k of the given polynomials, computed via the generating product."""
    ctx = polys[0].ctx
    # coefficients of prod (1 + t*p_i) up to t^k
    coeffs = [Polynomial.constant(ctx, 1)] + [Polynomial.zero(ctx)] * k
    for p in polys:
        for j in range(min(k, len(coeffs) - 1), 0, -1):
            coeffs[j] = coeffs[j] + coeffs[j - 1] * p
    return coeffs[k]


def weyl_invariant_generators(family: str, rank: int):
    """Generating invariants of the Weyl group, with cohomological degrees.

    Families: A (rank >= 1, in rank+1 trace-zero coordinates), B and C
    (rank >= 1), D (rank >= 2), G2.  Returns a list of (polynomial, degree)
    pairs; all variables sit in cohomological degree 2.
    """
    family = family.upper()
    if family == "G2":
        if rank not in (0, 2):
            raise ValueError("G2 has rank 2")
        ctx = VariableContext.standard(("x1", "x2", "x3"))
        xs = [Polynomial.variable(ctx, n) for n in ctx.names]
        e2 = _elementary_symmetric(xs, 2)
        e3 = _elementary_symmetric(xs, 3)
        return [(e2, 4), (e3 * e3, 12)]
    if rank < 1:
        raise ValueError("rank must be at least 1")
    if family == "A":
        ctx = VariableContext.standard(tuple(f"x{i+1}" for i in range(rank + 1)))
        xs = [Polynomial.variable(ctx, n) for n in ctx.names]
        return [(_elementary_symmetric(xs, k), 2 * k) for k in range(2, rank + 2)]
    if family in ("B", "C"):
        ctx = VariableContext.standard(tuple(f"x{i+1}" for i in range(rank)))
        sq = [Polynomial.variable(ctx, n) ** 2 for n in ctx.names]
        return [(_elementary_symmetric(sq, k), 4 * k) for k in range(1, rank + 1)]
    if family == "D":
        if rank < 2:
            raise ValueError("family D needs rank >= 2")
        ctx = VariableContext.standard(tuple(f"x{i+1}" for i in range(rank)))
        xs = [Polynomial.variable(ctx, n) for n in ctx.names]
        sq = [x**2 for x in xs]
        gens = [(_elementary_symmetric(sq, k), 4 * k) for k in range(1, rank)]
        pfaffian = xs[0]
        for x in xs[1:]:
            pfaffian = pfaffian * x
        gens.append((pfaffian, 2 * rank))
        return gens
    raise ValueError(f"unsupported family {family!r}")


def signed_permutation_group(n, even_signs_only=False):
    """All signed permutations of n coordinates, as substitution images.

    Yields lists of (sign, index) meaning x_i maps to sign * x_{index}.
    """
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            if even_signs_only and signs.count(-1) % 2 != 0:
                continue
            yield list(zip(signs, perm))


def apply_signed_permutation(f: Polynomial, action) -> Polynomial:
    ctx = f.ctx
    images = []
    for sign, idx in action:
        images.append(Polynomial.variable(ctx, ctx.names[idx]).scale(sign))
    sub = LinearSubstitution(ctx, ctx, tuple(images))
    return substitute_linear(f, sub)
