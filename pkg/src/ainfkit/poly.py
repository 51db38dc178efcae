"""Univariate polynomials over exact rationals, plus exact linear algebra.

One polynomial class serves two roles: t-polynomials for isotopy families
(needing d/dt and definite integrals with a symbolic lower endpoint) and
q-polynomials for Novikov-field linear algebra (needing exact division,
fraction-free rank, and Smith normal form over the PID Q[q]).
"""

from __future__ import annotations

from fractions import Fraction

from ainfkit.scalars import frac, frac_str


class Poly:
    """Polynomial with Fraction coefficients, stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def const(c) -> "Poly":
        return Poly([frac(c)])

    @staticmethod
    def monomial(coeff, power: int) -> "Poly":
        return Poly([Fraction(0)] * power + [frac(coeff)])

    ZERO: "Poly"
    ONE: "Poly"
    T: "Poly"

    # -- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lead(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monomial(self) -> bool:
        return bool(self.coeffs) and all(c == 0 for c in self.coeffs[:-1])

    def __call__(self, x):
        x = frac(x) if not isinstance(x, Poly) else x
        acc = Poly.ZERO if isinstance(x, Poly) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + (Poly.const(c) if isinstance(x, Poly) else c)
        return acc

    # -- ring ops ----------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([c + (b[i] if i < len(b) else 0) for i, c in enumerate(a)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = frac(other)
            return Poly([c * a for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dn, lead = other.degree(), other.lead()
        quo = [Fraction(0)] * max(len(rem) - dn, 0)
        for i in range(len(rem) - 1, dn - 1, -1):
            if rem[i] == 0:
                continue
            q = rem[i] / lead
            quo[i - dn] = q
            for j, c in enumerate(other.coeffs):
                rem[i - dn + j] -= q * c
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("exact_div with nonzero remainder")
        return q

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        return "Poly(" + " + ".join(
            f"{c}" if i == 0 else (f"{c}*t^{i}" if c != 1 else f"t^{i}")
            for i, c in enumerate(self.coeffs) if c != 0
        ) + ")"

    # -- calculus ----------------------------------------------------------
    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "Poly":
        return Poly([Fraction(0)] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def integral_from_to_one(self) -> "Poly":
        """Definite integral over [tau, 1] as a polynomial in tau.

        Returns F(1) - F(tau) where F is the antiderivative.
        """
        F = self.antiderivative()
        return Poly.const(F(Fraction(1))) - F

    # -- serialization -----------------------------------------------------
    def to_json(self):
        return [frac_str(c) for c in self.coeffs]

    @staticmethod
    def from_json(data) -> "Poly":
        return Poly([frac(c) for c in data])


Poly.ZERO = Poly()
Poly.ONE = Poly([1])
Poly.T = Poly([0, 1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd in Q[q]."""
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a * (1 / a.lead())


def matrix_rank_fraction_field(rows) -> int:
    """Rank of a matrix of Poly entries over the fraction field Q(q).

    Fraction-free Bareiss elimination: exact, no rational-function blowup.
    """
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = Poly.ONE
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]).exact_div(prev)
            m[i][c] = Poly.ZERO
        prev = m[r][c]
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def rational_matrix_rank(rows) -> int:
    """Rank of a matrix of Fractions by exact Gaussian elimination."""
    m = [[frac(x) for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank, r = 0, 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def smith_normal_form(rows):
    """Invariant factors of a Poly matrix over the Euclidean domain Q[q].

    Returns the nonzero diagonal entries, made monic, sorted by degree;
    divisibility d_1 | d_2 | ... holds by construction.
    """
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return []
    nrows, ncols = len(m), len(m[0])
    factors = []
    top = 0
    while top < min(nrows, ncols):
        # Find a nonzero entry of minimal degree in the remaining block.
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if not m[i][j].is_zero():
                    if best is None or m[i][j].degree() < m[best[0]][best[1]].degree():
                        best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[top], row[bj] = row[bj], row[top]
        # Reduce the pivot row and column until the pivot divides everything
        # it meets; each pass strictly drops some degree, so this terminates.
        while True:
            piv = m[top][top]
            dirty = False
            for i in range(top + 1, nrows):
                if not m[i][top].is_zero():
                    q = m[i][top] // piv
                    for j in range(top, ncols):
                        m[i][j] = m[i][j] - q * m[top][j]
                    if not m[i][top].is_zero():
                        m[top], m[i] = m[i], m[top]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(top + 1, ncols):
                if not m[top][j].is_zero():
                    q = m[top][j] // piv
                    for i in range(top, nrows):
                        m[i][j] = m[i][j] - q * m[i][top]
                    if not m[top][j].is_zero():
                        for row in m:
                            row[top], row[j] = row[j], row[top]
                        dirty = True
                        break
            if dirty:
                continue
            # Pivot clears its row and column; enforce divisibility into the
            # remaining block by folding any non-multiple onto the pivot row.
            offender = None
            for i in range(top + 1, nrows):
                for j in range(top + 1, ncols):
                    if not (m[i][j] % piv).is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(top, ncols):
                m[top][j] = m[top][j] + m[offender][j]
        piv = m[top][top]
        factors.append(piv * (1 / piv.lead()))
        top += 1
    return factors
