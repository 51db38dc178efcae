"""Exact scalars, truncated Novikov-ring elements and energy monoids.

Scalars are `fractions.Fraction` throughout.  A Novikov element is a finite
sum  sum_i  a_i * T^{lambda_i}  with nonnegative rational energies lambda_i.
Truncation at E keeps only energies strictly below E (the quotient by the
energy filtration at level E), while *operation families* indexed by the
energy monoid keep beta with E(beta) <= E; both conventions live side by
side and the assembly map therefore sends boundary-energy operations to
zero after truncation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional


def frac(x) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to an exact rational")


def frac_str(x: Fraction) -> str:
    """Serialize a Fraction as 'p/q' (or 'p' when q == 1)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


class NovikovElement:
    """Immutable truncated formal sum of T-powers with rational coefficients.

    terms: tuple of (energy, coefficient) pairs, energies strictly increasing,
    no zero coefficients.  truncation: None (untruncated) or a positive
    rational E; every stored energy is then < E.
    """

    __slots__ = ("terms", "truncation")

    def __init__(self, terms: Iterable = (), truncation: Optional[Fraction] = None):
        if truncation is not None:
            truncation = frac(truncation)
            if truncation <= 0:
                raise ValueError("truncation energy must be positive")
        merged = {}
        for energy, coeff in terms:
            energy, coeff = frac(energy), frac(coeff)
            if energy < 0:
                raise ValueError("negative energy in Novikov element")
            merged[energy] = merged.get(energy, Fraction(0)) + coeff
        clean = tuple(
            (e, c) for e, c in sorted(merged.items())
            if c != 0 and (truncation is None or e < truncation)
        )
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "truncation", truncation)

    def __setattr__(self, *a):
        raise AttributeError("NovikovElement is immutable")

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero(truncation=None) -> "NovikovElement":
        return NovikovElement((), truncation)

    @staticmethod
    def scalar(c, truncation=None) -> "NovikovElement":
        return NovikovElement([(Fraction(0), frac(c))], truncation)

    @staticmethod
    def monomial(coeff, energy, truncation=None) -> "NovikovElement":
        return NovikovElement([(frac(energy), frac(coeff))], truncation)

    # -- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self) -> Optional[Fraction]:
        """Smallest energy present, or None for the zero element."""
        return self.terms[0][0] if self.terms else None

    def coefficient(self, energy) -> Fraction:
        energy = frac(energy)
        for e, c in self.terms:
            if e == energy:
                return c
        return Fraction(0)

    def retruncate(self, truncation) -> "NovikovElement":
        return NovikovElement(self.terms, truncation)

    # -- arithmetic --------------------------------------------------------
    def _check_mode(self, other: "NovikovElement"):
        if self.truncation != other.truncation:
            raise ValueError(
                f"mismatched truncation modes: {self.truncation} vs {other.truncation}"
            )

    def __add__(self, other: "NovikovElement") -> "NovikovElement":
        self._check_mode(other)
        return NovikovElement(self.terms + other.terms, self.truncation)

    def __neg__(self) -> "NovikovElement":
        return NovikovElement([(e, -c) for e, c in self.terms], self.truncation)

    def __sub__(self, other: "NovikovElement") -> "NovikovElement":
        return self + (-other)

    def __mul__(self, other) -> "NovikovElement":
        if isinstance(other, NovikovElement):
            self._check_mode(other)
            prods = [
                (e1 + e2, c1 * c2)
                for e1, c1 in self.terms
                for e2, c2 in other.terms
            ]
            return NovikovElement(prods, self.truncation)
        c = frac(other)
        return NovikovElement([(e, c * a) for e, a in self.terms], self.truncation)

    __rmul__ = __mul__

    def shift(self, energy) -> "NovikovElement":
        """Multiply by T^energy."""
        energy = frac(energy)
        return NovikovElement([(e + energy, c) for e, c in self.terms], self.truncation)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NovikovElement)
            and self.terms == other.terms
            and self.truncation == other.truncation
        )

    def __hash__(self):
        return hash((self.terms, self.truncation))

    def __repr__(self):
        if not self.terms:
            return "Nov(0)"
        body = " + ".join(f"{c}*T^{e}" for e, c in self.terms)
        mode = "" if self.truncation is None else f" mod T^{self.truncation}"
        return f"Nov({body}{mode})"

    # -- serialization -----------------------------------------------------
    def to_json(self):
        return [[frac_str(e), frac_str(c)] for e, c in self.terms]

    @staticmethod
    def from_json(data, truncation=None) -> "NovikovElement":
        return NovikovElement([(frac(e), frac(c)) for e, c in data], truncation)


def nov_arith(x: NovikovElement, y: NovikovElement, op: str) -> NovikovElement:
    """Dispatch form of Novikov arithmetic; op is 'add' or 'mul'."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def nov_add(x, y):
    return x + y


def nov_mul(x, y):
    return x * y


class EnergyMonoid:
    """Finitely generated discrete submonoid of R_{>=0} x 2Z.

    Elements are pairs beta = (E, mu) with E a nonnegative rational and mu an
    even integer.  Discreteness requires that no generator has E = 0 with
    mu != 0 (otherwise enumeration below a cutoff would be infinite).
    """

    __slots__ = ("generators",)

    def __init__(self, generators: Iterable = ()):
        gens = []
        for g in generators:
            e, mu = frac(g[0]), int(g[1])
            if e < 0:
                raise ValueError("generator with negative energy")
            if mu % 2 != 0:
                raise ValueError("generator with odd Maslov component")
            if e == 0 and mu != 0:
                raise ValueError("generator with E=0, mu!=0 breaks discreteness")
            if (e, mu) != (0, 0):
                gens.append((e, mu))
        object.__setattr__(self, "generators", tuple(sorted(set(gens))))

    def __setattr__(self, *a):
        raise AttributeError("EnergyMonoid is immutable")

    def __eq__(self, other):
        return isinstance(other, EnergyMonoid) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"EnergyMonoid({list(self.generators)})"

    def enumerate(self, cutoff) -> list:
        """All distinct generator sums with total energy <= cutoff, sorted."""
        cutoff = frac(cutoff)
        if cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        seen = {(Fraction(0), 0)}
        frontier = [(Fraction(0), 0)]
        while frontier:
            nxt = []
            for e, mu in frontier:
                for ge, gmu in self.generators:
                    cand = (e + ge, mu + gmu)
                    if cand[0] <= cutoff and cand not in seen:
                        seen.add(cand)
                        nxt.append(cand)
            frontier = nxt
        return sorted(seen)

    def __contains__(self, beta) -> bool:
        e, mu = frac(beta[0]), int(beta[1])
        return (e, mu) in self.enumerate(e) if e >= 0 else False

    def to_json(self):
        return [[frac_str(e), mu] for e, mu in self.generators]

    @staticmethod
    def from_json(data) -> "EnergyMonoid":
        return EnergyMonoid([(frac(e), int(mu)) for e, mu in data])


def monoid_enumerate(G: EnergyMonoid, cutoff):
    return G.enumerate(cutoff)


def monoid_sum(G1: EnergyMonoid, G2: EnergyMonoid) -> EnergyMonoid:
    """Monoid generated by both generator sets (the sum submonoid)."""
    return EnergyMonoid(G1.generators + G2.generators)


BETA_ZERO = (Fraction(0), 0)


def beta_key(beta):
    """Deterministic sort key for monoid elements."""
    return (beta[0], beta[1])
