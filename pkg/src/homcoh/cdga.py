"""Free graded-commutative differential algebras and their cohomology.

The algebras handled here are of Cartan type: a polynomial part on even
generators (all closed) tensored with an exterior part on odd generators,
where each odd generator maps to a polynomial in the even generators.  The
cohomology dimensions per degree are computed by exact linear algebra on the
graded pieces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .linalg import RatMatrix
from .poly import Polynomial, VariableContext, parse_polynomial


@dataclass(frozen=True)
class GeneratorSpec:
    """Algebra generator: even degree = polynomial, odd degree = exterior."""

    name: str
    degree: int

    def __post_init__(self):
        if self.degree <= 0:
            raise ValueError("generator degree must be positive")

    @property
    def parity(self):
        return self.degree % 2


class FreeCDGA:
    """Free CDGA with closed even generators and prescribed transgressions.

    Elements of each graded piece are spanned by monomials
    (even exponent vector, odd subset); the differential extends the
    generator data by the graded Leibniz rule.
    """

    def __init__(self, even_gens, odd_gens, transgressions):
        self.even_gens = tuple(even_gens)
        self.odd_gens = tuple(odd_gens)
        names = [g.name for g in self.even_gens] + [g.name for g in self.odd_gens]
        if len(names) != len(set(names)):
            raise ValueError("generator names must be unique")
        for g in self.even_gens:
            if g.parity != 0:
                raise ValueError(f"even generator {g.name} has odd degree")
        for g in self.odd_gens:
            if g.parity != 1:
                raise ValueError(f"odd generator {g.name} has even degree")
        self.even_ctx = VariableContext(
            tuple(g.name for g in self.even_gens),
            tuple(g.degree for g in self.even_gens),
        )
        if len(transgressions) != len(self.odd_gens):
            raise ValueError("one transgression per odd generator")
        self.transgressions = []
        for gen, df in zip(self.odd_gens, transgressions):
            if df.ctx != self.even_ctx:
                raise ValueError(f"transgression of {gen.name} lives in the wrong ring")
            if df and df.cohom_degree() != gen.degree + 1:
                raise ValueError(
                    f"d({gen.name}) must be homogeneous of degree {gen.degree + 1}, "
                    f"got degree {df.cohom_degree()}"
                )
            self.transgressions.append(df)
        self.transgressions = tuple(self.transgressions)
        self._check_d_squared()

    def _check_d_squared(self):
        # d of a transgression is zero because even generators are closed;
        # verified explicitly by differentiating each generator twice.
        for gen in self.odd_gens:
            ddx = self.differential(self.generator_element(gen.name))
            ddx = self.differential(ddx)
            if ddx:
                raise ValueError(f"differential does not square to zero on {gen.name}")

    # ---- elements -----------------------------------------------------
    # An element is a dict {(even_exponents, odd_mask): Fraction}; bit i of
    # the mask selects odd generator i.

    def generator_element(self, name):
        if name in self.even_ctx.names:
            i = self.even_ctx.index(name)
            exp = tuple(1 if j == i else 0 for j in range(self.even_ctx.nvars))
            return {(exp, 0): Fraction(1)}
        for i, g in enumerate(self.odd_gens):
            if g.name == name:
                return {((0,) * self.even_ctx.nvars, 1 << i): Fraction(1)}
        raise KeyError(name)

    def basis_degree(self, exp, mask):
        d = sum(e * g.degree for e, g in zip(exp, self.even_gens))
        for i, g in enumerate(self.odd_gens):
            if mask >> i & 1:
                d += g.degree
        return d

    def element_degree(self, elt):
        degs = {self.basis_degree(exp, mask) for exp, mask in elt}
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop() if degs else 0

    def multiply(self, a, b):
        out = {}
        for (e1, m1), c1 in a.items():
            for (e2, m2), c2 in b.items():
                if m1 & m2:
                    continue  # odd generators square to zero
                sign = 1
                # count transpositions moving the odd factors of b past those of a
                for i in range(len(self.odd_gens)):
                    if m2 >> i & 1:
                        higher = m1 >> (i + 1)
                        sign *= -1 if bin(higher).count("1") % 2 else 1
                key = (tuple(x + y for x, y in zip(e1, e2)), m1 | m2)
                out[key] = out.get(key, Fraction(0)) + sign * c1 * c2
        return {k: v for k, v in out.items() if v}

    def differential(self, elt):
        """Graded Leibniz extension of the generator differentials."""
        out = {}
        for (exp, mask), coeff in elt.items():
            sign = 1
            for i, gen in enumerate(self.odd_gens):
                if not (mask >> i & 1):
                    continue
                df = self.transgressions[i]
                rest_mask = mask & ~(1 << i)
                for mono, c in df.terms.items():
                    key = (tuple(a + b for a, b in zip(exp, mono)), rest_mask)
                    out[key] = out.get(key, Fraction(0)) + sign * coeff * c
                sign = -sign
        return {k: v for k, v in out.items() if v}

    # ---- graded pieces ------------------------------------------------

    def graded_basis(self, degree):
        """Deterministically ordered monomial basis of the given degree."""
        monomials = []
        n_even = self.even_ctx.nvars
        for mask in range(1 << len(self.odd_gens)):
            odd_deg = sum(
                g.degree for i, g in enumerate(self.odd_gens) if mask >> i & 1
            )
            if odd_deg > degree:
                continue
            for exp in self._even_exponents(degree - odd_deg, n_even):
                monomials.append((exp, mask))
        return monomials

    def _even_exponents(self, degree, nvars):
        degrees = self.even_ctx.degrees
        out = []

        def rec(prefix, remaining):
            i = len(prefix)
            if i == nvars:
                if remaining == 0:
                    out.append(tuple(prefix))
                return
            if i == nvars - 1:
                if remaining % degrees[i] == 0:
                    out.append(tuple(prefix + [remaining // degrees[i]]))
                return
            e = 0
            while e * degrees[i] <= remaining:
                rec(prefix + [e], remaining - e * degrees[i])
                e += 1

        rec([], degree)
        return out

    def differential_matrix(self, degree):
        """Matrix of d from the degree piece to the degree+1 piece."""
        src = self.graded_basis(degree)
        dst = self.graded_basis(degree + 1)
        index = {m: i for i, m in enumerate(dst)}
        entries = {}
        for col, mono in enumerate(src):
            image = self.differential({mono: Fraction(1)})
            for m, c in image.items():
                entries[(index[m], col)] = c
        return RatMatrix(len(dst), len(src), entries)

    # ---- cohomology ---------------------------------------------------

    def cohomology_dims(self, cutoff):
        """dim H^k for k = 0..cutoff, by kernel/image ranks per degree."""
        ranks = [linalg.rank(self.differential_matrix(k)) for k in range(cutoff + 1)]
        dims = []
        for k in range(cutoff + 1):
            cochains = len(self.graded_basis(k))
            prev_rank = ranks[k - 1] if k > 0 else 0
            dims.append(cochains - ranks[k] - prev_rank)
        return dims

    def poincare_polynomial(self, cutoff):
        """Coefficient list of the Poincare polynomial up to the cutoff."""
        return self.cohomology_dims(cutoff)


def build_cartan_algebra(bh_gens, odd_gens, transgressions) -> FreeCDGA:
    """Cartan-type algebra: closed even generators, d(y_j) = transgression j.

    `bh_gens` and `odd_gens` are GeneratorSpec lists; transgressions are
    polynomials in the even generators, positionally matching `odd_gens`
    (a zero polynomial gives a closed odd generator).
    """
    return FreeCDGA(bh_gens, odd_gens, transgressions)


def poincare_string(coeffs):
    """Render a coefficient list as a polynomial in t."""
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            term = f"t^{k}" if k > 1 else "t"
            parts.append(term if c == 1 else f"{c}*{term}")
    return " + ".join(parts) if parts else "0"


# ---- serialization -----------------------------------------------------


def cdga_to_text(algebra: FreeCDGA) -> str:
    lines = ["[generators]"]
    for g in algebra.even_gens + algebra.odd_gens:
        lines.append(f"{g.name} = {g.degree}")
    lines.append("")
    lines.append("[differential]")
    for g, df in zip(algebra.odd_gens, algebra.transgressions):
        lines.append(f"{g.name} = {df}")
    return "\n".join(lines) + "\n"


def cdga_from_text(text: str) -> FreeCDGA:
    """Parse the structured text form produced by `cdga_to_text`."""
    section = None
    gens = []
    diffs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            section = line.strip("[]").strip()
            if section not in ("generators", "differential"):
                raise ValueError(f"line {lineno}: unknown section [{section}]")
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'name = value'")
        name, value = (part.strip() for part in line.split("=", 1))
        if section == "generators":
            gens.append(GeneratorSpec(name, int(value)))
        elif section == "differential":
            diffs[name] = value
        else:
            raise ValueError(f"line {lineno}: content outside any section")
    even = [g for g in gens if g.parity == 0]
    odd = [g for g in gens if g.parity == 1]
    ctx = VariableContext(tuple(g.name for g in even), tuple(g.degree for g in even))
    transgressions = []
    for g in odd:
        text_val = diffs.pop(g.name, "0")
        transgressions.append(parse_polynomial(text_val, ctx))
    if diffs:
        raise ValueError(f"differential given for unknown generators: {sorted(diffs)}")
    return FreeCDGA(even, odd, transgressions)
