"""Exact de Rham calculus on tori with character-basis coefficients.

A form on T^n is a finite sum of terms  c * e_f dx_I  where f is an integer
frequency vector (the character e^{2 pi i <f,x>}), I a strictly increasing
index set, and c a Gaussian rational.  The exterior derivative is rescaled
to drop the 2 pi i factor: d(e_f) = sum_j f_j e_f dx_j.  Every identity
tested here is homogeneous in the number of d's per term, so the rescaling
is harmless and keeps all coefficients in Q(i).

Two fiber-integration conventions are provided.  `fiber_integrate` is the
local-coordinate rule: reorder fiber differentials to the front in ascending
order (Koszul sign), keep only terms carrying every fiber differential with
zero fiber frequency, and strip them.  `fiber_pushforward` multiplies by the
orientation sign of moving the fiber coordinates to the front of the full
coordinate list; that normalization is exactly the operator characterized by
the adjunction  int_M alpha ^ pi^* beta = int_N pi_* alpha ^ beta  with the
standard (ascending-coordinate) orientation on every torus, and it is the
one under which all the global identities of the suite hold verbatim.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ainfkit.scalars import frac, frac_str
from ainfkit.signs import reorder_sign


class QI:
    """Gaussian rational a + b*i with exact components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", frac(re))
        object.__setattr__(self, "im", frac(im))

    def __setattr__(self, *a):
        raise AttributeError("QI is immutable")

    @staticmethod
    def coerce(x) -> "QI":
        if isinstance(x, QI):
            return x
        return QI(frac(x))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __add__(self, other):
        other = QI.coerce(other)
        return QI(self.re + other.re, self.im + other.im)

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-QI.coerce(other))

    def __mul__(self, other):
        other = QI.coerce(other)
        return QI(self.re * other.re - self.im * other.im,
                  self.re * other.im + self.im * other.re)

    __radd__ = __add__
    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QI):
            try:
                other = QI.coerce(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"QI({self.re}, {self.im})" if self.im else f"QI({self.re})"

    def to_json(self):
        return [frac_str(self.re), frac_str(self.im)]

    @staticmethod
    def from_json(data) -> "QI":
        return QI(frac(data[0]), frac(data[1]))


QI_ZERO = QI(0)
QI_ONE = QI(1)


def _merge_wedge(I, J):
    """Merge two sorted index tuples; returns (sign, merged) or None on clash."""
    if set(I) & set(J):
        return None
    merged = tuple(sorted(I + J))
    # Koszul sign of the merge: one (-1) per pair (i in I, j in J) with j < i.
    inversions = sum(1 for a in I for b in J if b < a)
    return (-1 if inversions % 2 else 1), merged


class TorusForm:
    """Differential form on T^n; terms may have mixed degrees."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms=None):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        clean = {}
        for key, coeff in (terms or {}).items():
            freq, idx = tuple(int(f) for f in key[0]), tuple(int(i) for i in key[1])
            if len(freq) != dim:
                raise ValueError("frequency vector length mismatch")
            if list(idx) != sorted(set(idx)) or any(not (1 <= i <= dim) for i in idx):
                raise ValueError(f"bad index set {idx} on T^{dim}")
            coeff = QI.coerce(coeff)
            if coeff.is_zero():
                continue
            k = (freq, idx)
            acc = clean.get(k)
            clean[k] = coeff if acc is None else acc + coeff
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", {k: c for k, c in clean.items() if not c.is_zero()})

    def __setattr__(self, *a):
        raise AttributeError("TorusForm is immutable")

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero(dim: int) -> "TorusForm":
        return TorusForm(dim)

    @staticmethod
    def term(dim: int, freq, idx, coeff=QI_ONE) -> "TorusForm":
        return TorusForm(dim, {(tuple(freq), tuple(idx)): QI.coerce(coeff)})

    @staticmethod
    def one(dim: int) -> "TorusForm":
        return TorusForm.term(dim, (0,) * dim, ())

    @staticmethod
    def dx(dim: int, i: int) -> "TorusForm":
        return TorusForm.term(dim, (0,) * dim, (i,))

    # -- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self):
        degs = {len(idx) for _, idx in self.terms}
        return len(degs) <= 1

    def degree(self) -> int:
        """Degree of a homogeneous form (0 for the zero form)."""
        degs = {len(idx) for _, idx in self.terms}
        if len(degs) > 1:
            raise ValueError("form is not homogeneous")
        return degs.pop() if degs else 0

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def __eq__(self, other):
        return (isinstance(other, TorusForm) and self.dim == other.dim
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"TorusForm(T^{self.dim}, 0)"
        bits = []
        for (freq, idx), c in self.sorted_terms():
            dxs = "".join(f"dx{i}" for i in idx) or "1"
            bits.append(f"({c.re}{'+' if c.im >= 0 else ''}{c.im}i)e{list(freq)}{dxs}")
        return f"TorusForm(T^{self.dim}, " + " + ".join(bits) + ")"

    # -- linear structure ---------------------------------------------------
    def _check_dim(self, other):
        if self.dim != other.dim:
            raise ValueError("forms on tori of different dimensions")

    def __add__(self, other: "TorusForm") -> "TorusForm":
        self._check_dim(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, QI_ZERO) + c
        return TorusForm(self.dim, out)

    def __neg__(self):
        return TorusForm(self.dim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TorusForm":
        c = QI.coerce(c)
        return TorusForm(self.dim, {k: c * v for k, v in self.terms.items()})

    # -- serialization -----------------------------------------------------
    def to_json(self):
        return {
            "dim": self.dim,
            "terms": [[list(freq), list(idx), c.to_json()]
                      for (freq, idx), c in self.sorted_terms()],
        }

    @staticmethod
    def from_json(data) -> "TorusForm":
        return TorusForm(data["dim"], {
            (tuple(freq), tuple(idx)): QI.from_json(c)
            for freq, idx, c in data["terms"]
        })


def form_wedge(alpha: TorusForm, beta: TorusForm) -> TorusForm:
    alpha._check_dim(beta)
    out = {}
    for (f1, I), c1 in alpha.terms.items():
        for (f2, J), c2 in beta.terms.items():
            merged = _merge_wedge(I, J)
            if merged is None:
                continue
            sign, idx = merged
            freq = tuple(a + b for a, b in zip(f1, f2))
            k = (freq, idx)
            out[k] = out.get(k, QI_ZERO) + c1 * c2 * sign
    return TorusForm(alpha.dim, out)


def form_d(alpha: TorusForm) -> TorusForm:
    """Rescaled exterior derivative: d(c e_f dx_I) = sum_j c f_j e_f dx_j^dx_I."""
    out = {}
    for (freq, I), c in alpha.terms.items():
        for j, fj in enumerate(freq, start=1):
            if fj == 0 or j in I:
                continue
            # Sign to insert dx_j at the front of dx_I and resort.
            before = sum(1 for i in I if i < j)
            sign = -1 if before % 2 else 1
            idx = tuple(sorted(I + (j,)))
            k = (freq, idx)
            out[k] = out.get(k, QI_ZERO) + c * (fj * sign)
    return TorusForm(alpha.dim, out)


class TorusMap:
    """Linear map between tori, x -> A x with A an integer matrix.

    Coordinate projections additionally remember their ordered (strictly
    ascending) list of kept source coordinates, which is what fiber
    integration requires.
    """

    __slots__ = ("source_dim", "target_dim", "rows", "proj_coords")

    def __init__(self, source_dim: int, target_dim: int, rows, proj_coords=None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if len(rows) != target_dim or any(len(r) != source_dim for r in rows):
            raise ValueError("matrix shape mismatch")
        if proj_coords is not None:
            proj_coords = tuple(int(c) for c in proj_coords)
            if list(proj_coords) != sorted(set(proj_coords)) or any(
                not (1 <= c <= source_dim) for c in proj_coords
            ):
                raise ValueError("projection coordinates must be ascending source coords")
        object.__setattr__(self, "source_dim", source_dim)
        object.__setattr__(self, "target_dim", target_dim)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "proj_coords", proj_coords)

    def __setattr__(self, *a):
        raise AttributeError("TorusMap is immutable")

    @staticmethod
    def linear(source_dim: int, rows) -> "TorusMap":
        return TorusMap(source_dim, len(rows), rows)

    @staticmethod
    def projection(source_dim: int, coords) -> "TorusMap":
        coords = tuple(coords)
        rows = [tuple(1 if j == c else 0 for j in range(1, source_dim + 1))
                for c in coords]
        return TorusMap(source_dim, len(coords), rows, proj_coords=coords)

    @staticmethod
    def identity(dim: int) -> "TorusMap":
        return TorusMap.projection(dim, range(1, dim + 1))

    def is_projection(self) -> bool:
        return self.proj_coords is not None

    def fiber_coords(self):
        if not self.is_projection():
            raise ValueError("fiber coordinates only defined for projections")
        kept = set(self.proj_coords)
        return tuple(c for c in range(1, self.source_dim + 1) if c not in kept)

    def compose(self, other: "TorusMap") -> "TorusMap":
        """self after other (source of self = target of other)."""
        if self.source_dim != other.target_dim:
            raise ValueError("composition dimension mismatch")
        rows = [
            tuple(sum(self.rows[i][k] * other.rows[k][j] for k in range(self.source_dim))
                  for j in range(other.source_dim))
            for i in range(self.target_dim)
        ]
        pc = None
        if self.is_projection() and other.is_projection():
            pc = tuple(other.proj_coords[c - 1] for c in self.proj_coords)
        return TorusMap(other.source_dim, self.target_dim, rows, proj_coords=pc)

    def __eq__(self, other):
        return (isinstance(other, TorusMap) and self.source_dim == other.source_dim
                and self.target_dim == other.target_dim and self.rows == other.rows)

    def __repr__(self):
        if self.is_projection():
            return f"TorusMap(T^{self.source_dim} -> T^{self.target_dim}, proj {self.proj_coords})"
        return f"TorusMap(T^{self.source_dim} -> T^{self.target_dim}, {self.rows})"


def pullback(phi: TorusMap, alpha: TorusForm) -> TorusForm:
    """phi^* alpha; alpha lives on the target of phi."""
    if alpha.dim != phi.target_dim:
        raise ValueError("form does not live on the target of the map")
    n = phi.source_dim
    out = TorusForm.zero(n)
    for (freq, I), c in alpha.terms.items():
        # Characters pull back through the transpose matrix.
        new_freq = tuple(
            sum(freq[i] * phi.rows[i][j] for i in range(phi.target_dim))
            for j in range(n)
        )
        piece = TorusForm.term(n, new_freq, (), c)
        for i in I:
            row = phi.rows[i - 1]
            dxi = TorusForm(n, {
                ((0,) * n, (j,)): QI(row[j - 1])
                for j in range(1, n + 1) if row[j - 1] != 0
            })
            piece = form_wedge(piece, dxi)
            if piece.is_zero():
                break
        out = out + piece
    return out


def fiber_integrate(pi: TorusMap, alpha: TorusForm) -> TorusForm:
    """Local-coordinate fiber integration along a coordinate projection.

    Each term is reordered so its fiber differentials come first in
    ascending order (Koszul sign); terms missing a fiber differential or
    carrying a nonzero fiber frequency integrate to zero; the fiber factors
    are then stripped and the remaining differentials relabeled to target
    coordinates.
    """
    if not pi.is_projection():
        raise ValueError("fiber integration requires a coordinate projection")
    if alpha.dim != pi.source_dim:
        raise ValueError("form does not live on the source of the projection")
    fiber = pi.fiber_coords()
    fiber_set = set(fiber)
    target_pos = {c: t for t, c in enumerate(pi.proj_coords, start=1)}
    out = {}
    for (freq, I), c in alpha.terms.items():
        if any(freq[f - 1] != 0 for f in fiber):
            continue
        if not fiber_set <= set(I):
            continue
        fiber_part = [i for i in I if i in fiber_set]
        base_part = [i for i in I if i not in fiber_set]
        reordered = fiber_part + base_part
        # Sign of rearranging dx_I into fiber-first order; every dx is odd.
        sign = reorder_sign([1] * len(I), [list(I).index(x) for x in reordered])
        new_freq = tuple(freq[c0 - 1] for c0 in pi.proj_coords)
        new_idx = tuple(target_pos[i] for i in base_part)
        k = (new_freq, new_idx)
        out[k] = out.get(k, QI_ZERO) + c * sign
    return TorusForm(pi.target_dim, out)


def projection_orientation_sign(pi: TorusMap) -> int:
    """Sign of the permutation carrying (1..m) to (fiber coords, base coords).

    This is the discrepancy between the local fiber-first rule and the
    pushforward characterized by the adjunction with standard orientations.
    """
    fiber = list(pi.fiber_coords())
    base = list(pi.proj_coords)
    order = fiber + base
    inversions = sum(
        1 for a in range(len(order)) for b in range(a + 1, len(order))
        if order[a] > order[b]
    )
    return -1 if inversions % 2 else 1


def fiber_pushforward(pi: TorusMap, alpha: TorusForm) -> TorusForm:
    """Adjunction-normalized pushforward: int_M a^pi*b = int_N pi_*a^b."""
    res = fiber_integrate(pi, alpha)
    return res if projection_orientation_sign(pi) == 1 else -res


def total_integral(alpha: TorusForm) -> QI:
    """Integral over the torus: coefficient of the zero-frequency top term."""
    return alpha.terms.get(((0,) * alpha.dim, tuple(range(1, alpha.dim + 1))), QI_ZERO)


def cross_product(alpha: TorusForm, beta: TorusForm) -> TorusForm:
    """alpha x beta = p1^* alpha ^ p2^* beta on the product torus."""
    n1, n2 = alpha.dim, beta.dim
    p1 = TorusMap.projection(n1 + n2, range(1, n1 + 1))
    p2 = TorusMap.projection(n1 + n2, range(n1 + 1, n1 + n2 + 1))
    return form_wedge(pullback(p1, alpha), pullback(p2, beta))


def fiber_product_assemble(pi: TorusMap, g: TorusMap):
    """Fiber product of pi: M -> N (projection) with g: N1 -> N.

    Returns (P, p1, p2) with P = T^{k + dim N1}, p1(t, y) = (t, g(y)) into M
    and p2(t, y) = y onto N1; the square pi p1 = g p2 commutes.
    """
    if not pi.is_projection():
        raise ValueError("first map must be a coordinate projection")
    if pi.target_dim != g.target_dim:
        raise ValueError("maps must share a target")
    fiber = pi.fiber_coords()
    k, n1 = len(fiber), g.source_dim
    pdim = k + n1
    rows = []
    fiber_slot = {c: t for t, c in enumerate(fiber, start=1)}
    base_slot = {c: t for t, c in enumerate(pi.proj_coords, start=1)}
    for c in range(1, pi.source_dim + 1):
        if c in fiber_slot:
            rows.append(tuple(1 if j == fiber_slot[c] else 0 for j in range(1, pdim + 1)))
        else:
            grow = g.rows[base_slot[c] - 1]
            rows.append((0,) * k + tuple(grow))
    p1 = TorusMap(pdim, pi.source_dim, rows)
    p2 = TorusMap.projection(pdim, range(k + 1, pdim + 1))
    return pdim, p1, p2


def fiber_product_orientation(pi: TorusMap) -> int:
    """Sign relating the standard orientation of the (t, y) coordinate model
    of M x_N N1 to its fiber-product orientation.

    The coordinate model lists the fiber coordinates of pi first, while the
    fiber-product orientation is inherited from M, where those coordinates
    sit interleaved; the discrepancy is the sign of the shuffle moving them
    to the front.  Pushforwards along p2 taken in the fiber-product
    orientation equal this sign times the standard-orientation pushforward.
    """
    return projection_orientation_sign(pi)


def correspondence(f: TorusMap, g: TorusMap, xi: TorusForm) -> TorusForm:
    """Corr(f, X, g)(xi) = g_*(f^* xi) for f: X -> M, g: X -> N."""
    if f.source_dim != g.source_dim:
        raise ValueError("correspondence legs must share their source")
    return fiber_pushforward(g, pullback(f, xi))


# ---------------------------------------------------------------------------
# Randomized identity suite
# ---------------------------------------------------------------------------

def _random_coeff(rng) -> QI:
    return QI(Fraction(rng.randint(-3, 3), rng.choice([1, 2])),
              Fraction(rng.randint(-2, 2), rng.choice([1, 2])))


def random_form(rng, dim: int, degree=None, max_terms=3) -> TorusForm:
    """Random form with frequencies in [-2, 2]; homogeneous if degree given."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        freq = tuple(rng.randint(-2, 2) for _ in range(dim))
        deg = degree if degree is not None else rng.randint(0, dim)
        idx = tuple(sorted(rng.sample(range(1, dim + 1), deg))) if deg else ()
        terms[(freq, idx)] = _random_coeff(rng)
    return TorusForm(dim, terms)


def _random_projection(rng, source_dim: int, target_dim: int) -> TorusMap:
    coords = sorted(rng.sample(range(1, source_dim + 1), target_dim))
    return TorusMap.projection(source_dim, coords)


def _random_linear(rng, source_dim: int, target_dim: int) -> TorusMap:
    rows = [[rng.randint(-2, 2) for _ in range(source_dim)] for _ in range(target_dim)]
    return TorusMap(source_dim, target_dim, rows)


def _run_group(name, trials, instance):
    failures = []
    for trial in range(trials):
        residual_zero, detail = instance(trial)
        if not residual_zero:
            failures.append({"trial": trial, "detail": detail})
    return {"group": name, "trials": trials, "failures": failures,
            "status": "PASS" if not failures else "FAIL"}


def appendix_suite(seed: int, trials: int) -> dict:
    """Randomized exact verification of the fiber-integration identities.

    Eight groups: pushforward functoriality, the two projection formulas,
    base change, the product-pushforward sign, composite-through-smaller
    vanishing, closed-manifold Stokes, correspondence composition, and the
    defining adjunction.  Every residual must be exactly zero.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)

    def g_functoriality(trial):
        m = rng.randint(2, 3)
        p = rng.randint(1, m - 1)
        q = rng.randint(0, p)
        f = _random_projection(rng, m, p)
        inner = _random_projection(rng, p, q)
        g = inner
        alpha = random_form(rng, m)
        lhs = fiber_pushforward(g.compose(f), alpha)
        rhs = fiber_pushforward(g, fiber_pushforward(f, alpha))
        return lhs == rhs, "(g f)_* vs g_* f_*"

    def g_projection_formula(trial):
        m = rng.randint(2, 3)
        n = rng.randint(1, m - 1)
        pi = _random_projection(rng, m, n)
        k = m - n
        alpha = random_form(rng, m)
        gamma = random_form(rng, n, degree=rng.randint(0, n))
        lhs1 = fiber_pushforward(pi, form_wedge(alpha, pullback(pi, gamma)))
        rhs1 = form_wedge(fiber_pushforward(pi, alpha), gamma)
        sign = -1 if (gamma.degree() * k) % 2 else 1
        lhs2 = fiber_pushforward(pi, form_wedge(pullback(pi, gamma), alpha))
        rhs2 = form_wedge(gamma, fiber_pushforward(pi, alpha))
        rhs2 = rhs2 if sign == 1 else -rhs2
        return lhs1 == rhs1 and lhs2 == rhs2, "projection formula"

    def g_base_change(trial):
        m = rng.randint(2, 3)
        n = rng.randint(1, m - 1)
        pi = _random_projection(rng, m, n)
        n1 = rng.randint(1, 2)
        g = _random_linear(rng, n1, n)
        _, p1, p2 = fiber_product_assemble(pi, g)
        alpha = random_form(rng, m)
        lhs = pullback(g, fiber_pushforward(pi, alpha))
        # The pushforward along p2 lives in the fiber-product orientation.
        rhs = fiber_pushforward(p2, pullback(p1, alpha))
        if fiber_product_orientation(pi) == -1:
            rhs = -rhs
        return lhs == rhs, "base change"

    def g_product_sign(trial):
        n1, k1 = rng.randint(0, 1), rng.randint(1, 2)
        n2, k2 = rng.randint(0, 1), rng.randint(1, 2)
        m1, m2 = n1 + k1, n2 + k2
        pi1 = TorusMap.projection(m1, range(k1 + 1, m1 + 1))
        pi2 = TorusMap.projection(m2, range(k2 + 1, m2 + 1))
        rho1 = random_form(rng, m1, degree=rng.randint(0, m1))
        rho2 = random_form(rng, m2, degree=rng.randint(0, m2))
        fibers = tuple(range(1, k1 + 1)) + tuple(range(m1 + 1, m1 + k2 + 1))
        kept = tuple(c for c in range(1, m1 + m2 + 1) if c not in fibers)
        prod = TorusMap.projection(m1 + m2, kept)
        lhs = fiber_pushforward(prod, cross_product(rho1, rho2))
        sign = -1 if (k2 * (n1 + k1 + rho1.degree())) % 2 else 1
        rhs = cross_product(fiber_pushforward(pi1, rho1), fiber_pushforward(pi2, rho2))
        rhs = rhs if sign == 1 else -rhs
        return lhs == rhs, "product pushforward sign"

    def g_vanishing(trial):
        n = rng.randint(0, 1)
        k = rng.randint(1, 3 - n)
        l = rng.randint(0, k - 1)
        m = n + k
        f = _random_projection(rng, m, n + l)
        base = sorted(rng.sample(range(1, n + l + 1), n)) if n else []
        g = TorusMap.projection(n + l, base)
        pi = g.compose(f)
        alpha = random_form(rng, n + l)
        res = fiber_pushforward(pi, pullback(f, alpha))
        return res.is_zero(), "composite-through-smaller vanishing"

    def g_stokes(trial):
        m = rng.randint(2, 3)
        n = rng.randint(0, m - 1)
        pi = _random_projection(rng, m, n)
        k = m - n
        alpha = random_form(rng, m)
        lhs = form_d(fiber_pushforward(pi, alpha))
        corr = fiber_pushforward(pi, form_d(alpha))
        corr = corr if (k + 1) % 2 == 0 else -corr
        return (lhs + corr).is_zero(), "closed Stokes"

    def g_correspondence(trial):
        nM = 1
        k1 = 1
        x1 = nM + k1
        pi1 = _random_projection(rng, x1, nM)
        x2 = 2
        pi2 = _random_projection(rng, x2, nM)
        nN = rng.randint(0, 1)
        g = _random_projection(rng, x2, nN)
        dL, dM1, dM2 = 1, 1, 1
        f = _random_linear(rng, x1, dL)
        phi1 = _random_linear(rng, x2, dM1)
        phi2 = _random_linear(rng, x2, dM2)
        xi1 = random_form(rng, dM1, degree=rng.randint(0, dM1))
        xi2 = random_form(rng, dL)
        xi3 = random_form(rng, dM2)
        _, p1, p2 = fiber_product_assemble(pi1, pi2)
        # Push-pull through the fiber product in its fiber-product orientation.
        lhs = fiber_pushforward(
            g.compose(p2),
            form_wedge(
                form_wedge(pullback(phi1.compose(p2), xi1),
                           pullback(f.compose(p1), xi2)),
                pullback(phi2.compose(p2), xi3),
            ),
        )
        inner = correspondence(f, pi1, xi2)
        rhs = fiber_pushforward(
            g,
            form_wedge(
                form_wedge(pullback(phi1, xi1), pullback(pi2, inner)),
                pullback(phi2, xi3),
            ),
        )
        if (k1 * xi1.degree()) % 2:
            rhs = -rhs
        if fiber_product_orientation(pi1) == -1:
            lhs = -lhs
        return lhs == rhs, "correspondence composition"

    def g_adjunction(trial):
        m = rng.randint(2, 3)
        n = rng.randint(0, m - 1)
        pi = _random_projection(rng, m, n)
        alpha = random_form(rng, m)
        beta = random_form(rng, n)
        lhs = total_integral(form_wedge(alpha, pullback(pi, beta)))
        rhs = total_integral(form_wedge(fiber_pushforward(pi, alpha), beta))
        return lhs == rhs, "defining adjunction"

    groups = [
        ("pushforward-functoriality", g_functoriality),
        ("projection-formula", g_projection_formula),
        ("base-change", g_base_change),
        ("product-pushforward-sign", g_product_sign),
        ("composite-vanishing", g_vanishing),
        ("closed-stokes", g_stokes),
        ("correspondence-composition", g_correspondence),
        ("defining-adjunction", g_adjunction),
    ]
    report = {
        "suite": "torus-identities",
        "seed": seed,
        "trials": trials,
        "groups": [_run_group(name, trials, fn) for name, fn in groups],
    }
    report["status"] = "PASS" if all(g["status"] == "PASS" for g in report["groups"]) else "FAIL"
    return report
