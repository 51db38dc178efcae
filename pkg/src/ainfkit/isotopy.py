"""Polynomial families of operations interpolating between truncated algebras.

A pseudoisotopy consists of operation families m^t_{k,beta} (degree
2 - k - mu) and correction families c^t_{k,beta} (degree 1 - k - mu) with
polynomial t-dependence, subject to:

  * m^t_{k,0} is t-independent and c^t_{k,0} = 0;
  * c^t never takes the unit as an input;
  * m^t satisfies the quadratic relations for every t (as polynomial
    identities in t);
  * the differential equation, for every (k, beta) and input tuple:

      0 = (-1)^{n+1} d/dt m^t_{k,beta}(xi)
          - sum m^t_{k-j+1,beta1}(xi_1, ..., c^t_{j,beta2}(...), ..., xi_k)
          + sum (-1)^{||xi_1||+...+||xi_{i-1}||}
                c^t_{k-j+1,beta1}(xi_1, ..., m^t_{j,beta2}(...), ..., xi_k)

    where n is the dimension parameter of the underlying object and the
    first sum carries no Koszul sign.

Given such a family modulo T^{E0} together with a target algebra modulo
T^{E1} whose operations at the new energy level are known at t = 1, the
extension formula transports them to t = 0:

    m^tau_{k,beta} = m^1_{k,beta}
        + (-1)^n     int_tau^1 [sum m^t(..., c^t(...), ...)] dt
        + (-1)^{n+1} int_tau^1 [sum +- c^t(..., m^t(...), ...)] dt

with c^tau_{k,beta} = 0 at the new level.  Terms that would involve the
unknown new-level families vanish: they pair with c^t_{j,0} = 0 or with the
new-level c, which is declared zero.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from ainfkit.ainf import AInfAlgebra, beta_json, beta_norm
from ainfkit.poly import Poly
from ainfkit.scalars import BETA_ZERO, EnergyMonoid, frac, frac_str
from ainfkit.signs import koszul_prefix_sign, sign_pow


def _clean_family(name, basis_degrees, monoid, cutoff, tables, degree_drop,
                  unit=None, forbid_beta_zero=False, t_independent_beta_zero=False):
    clean = {}
    for (k, beta), table in (tables or {}).items():
        k = int(k)
        beta = beta_norm(beta)
        if k < 0:
            raise ValueError("negative arity")
        if beta not in monoid:
            raise ValueError(f"{name}: beta {beta} outside the energy monoid")
        if beta[0] > cutoff:
            raise ValueError(f"{name}: beta {beta} above cutoff {cutoff}")
        if forbid_beta_zero and beta == BETA_ZERO:
            raise ValueError(f"{name} must vanish at beta = 0")
        clean_table = {}
        for inputs, combo in table.items():
            inputs = tuple(inputs)
            if len(inputs) != k:
                raise ValueError(f"{name}: arity mismatch in {inputs}")
            for nm in inputs:
                if nm not in basis_degrees:
                    raise ValueError(f"{name}: unknown basis name {nm!r}")
            if unit is not None and unit in inputs:
                raise ValueError(f"{name} may not take the unit as input")
            target = sum(basis_degrees[nm] for nm in inputs) \
                + degree_drop - k - beta[1]
            clean_combo = {}
            for out, poly in combo.items():
                if not isinstance(poly, Poly):
                    poly = Poly.const(poly)
                if poly.is_zero():
                    continue
                if out not in basis_degrees:
                    raise ValueError(f"{name}: unknown output name {out!r}")
                if basis_degrees[out] != target:
                    raise ValueError(
                        f"{name}: degree violation at ({k}, {beta}){inputs} -> {out}"
                    )
                if t_independent_beta_zero and beta == BETA_ZERO \
                        and poly.degree() > 0:
                    raise ValueError(f"{name} must be t-independent at beta = 0")
                clean_combo[out] = poly
            if clean_combo:
                clean_table[inputs] = clean_combo
        if clean_table:
            if (k, beta) == (0, BETA_ZERO):
                raise ValueError(f"{name}_0 at beta = 0 must vanish")
            clean[(k, beta)] = clean_table
    return clean


class Pseudoisotopy:
    """Polynomial operation/correction families modulo a cutoff energy."""

    __slots__ = ("n", "basis", "monoid", "cutoff", "unit", "mT", "cT",
                 "_degrees", "_names", "_splits_cache", "window")

    def __init__(self, n, basis, monoid, cutoff, unit, mT, cT, window=None):
        n = int(n)
        cutoff = frac(cutoff)
        if cutoff <= 0:
            raise ValueError("cutoff must be positive")
        basis = tuple((str(nm), int(d)) for nm, d in basis)
        names = tuple(nm for nm, _ in basis)
        degrees = dict(basis)
        if unit is not None and degrees.get(unit) != 0:
            raise ValueError("unit must exist and have degree 0")
        mT = _clean_family("m^t", degrees, monoid, cutoff, mT, 2,
                           t_independent_beta_zero=True)
        cT = _clean_family("c^t", degrees, monoid, cutoff, cT, 1,
                           unit=unit, forbid_beta_zero=True)
        if window is None:
            window = names
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "monoid", monoid)
        object.__setattr__(self, "cutoff", cutoff)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "mT", mT)
        object.__setattr__(self, "cT", cT)
        object.__setattr__(self, "_degrees", degrees)
        object.__setattr__(self, "_names", names)
        object.__setattr__(self, "_splits_cache", {})
        object.__setattr__(self, "window", tuple(window))

    def __setattr__(self, *a):
        raise AttributeError("Pseudoisotopy is immutable")

    @property
    def names(self):
        return self._names

    def degree(self, name) -> int:
        return self._degrees[name]

    def max_arity(self) -> int:
        return max((k for k, _ in list(self.mT) + list(self.cT)), default=0)

    def beta_splits(self, beta):
        beta = beta_norm(beta)
        cached = self._splits_cache.get(beta)
        if cached is not None:
            return cached
        members = set(self.monoid.enumerate(beta[0]))
        splits = [(b1, (beta[0] - b1[0], beta[1] - b1[1]))
                  for b1 in sorted(members)
                  if (beta[0] - b1[0], beta[1] - b1[1]) in members]
        self._splits_cache[beta] = splits
        return splits

    def endpoint(self, t) -> AInfAlgebra:
        """Evaluate m^t at a rational parameter value; modulo-mode algebra."""
        t = frac(t)
        ops = {}
        for (k, beta), table in self.mT.items():
            for inputs, combo in table.items():
                for out, poly in combo.items():
                    val = poly(t)
                    if val != 0:
                        ops.setdefault((k, beta), {}).setdefault(
                            inputs, {})[out] = val
        return AInfAlgebra(self.basis, self.monoid, "modulo", self.cutoff,
                           self.unit, ops, self.window)

    # -- serialization -------------------------------------------------------
    def to_json(self):
        def fam(tables):
            out = []
            for (k, beta) in sorted(tables, key=lambda kb: (kb[0], kb[1])):
                for inputs in sorted(tables[(k, beta)]):
                    for o in sorted(tables[(k, beta)][inputs]):
                        out.append({
                            "k": k, "beta": beta_json(beta),
                            "inputs": list(inputs), "output": o,
                            "poly": tables[(k, beta)][inputs][o].to_json(),
                        })
            return out

        return {
            "n": self.n,
            "space": {"basis": [[nm, d] for nm, d in self.basis]},
            "monoid": self.monoid.to_json(),
            "cutoff": frac_str(self.cutoff),
            "unit": self.unit,
            "mt": fam(self.mT),
            "ct": fam(self.cT),
        }

    @staticmethod
    def from_json(doc) -> "Pseudoisotopy":
        def fam(entries):
            tables = {}
            for e in entries:
                key = (int(e["k"]), beta_norm((frac(e["beta"][0]), e["beta"][1])))
                tables.setdefault(key, {}).setdefault(
                    tuple(e["inputs"]), {})[e["output"]] = Poly.from_json(e["poly"])
            return tables

        return Pseudoisotopy(
            n=doc["n"],
            basis=doc["space"]["basis"],
            monoid=EnergyMonoid.from_json(doc["monoid"]),
            cutoff=frac(doc["cutoff"]),
            unit=doc.get("unit"),
            mT=fam(doc.get("mt", [])),
            cT=fam(doc.get("ct", [])),
            window=tuple(doc["window"]) if "window" in doc else None,
        )


# -- polynomial-coefficient evaluation --------------------------------------------

def poly_elem(name) -> dict:
    return {name: Poly.ONE}


def eval_poly_op(tables, k, beta, inputs) -> dict:
    """Multilinear evaluation of a polynomial family on poly-coefficient
    elements (dicts name -> Poly).  Returns a dict name -> Poly."""
    table = tables.get((int(k), beta_norm(beta)))
    out = {}
    if not table:
        return out
    for combo in product(*[list(inp.items()) for inp in inputs]):
        names = tuple(nm for nm, _ in combo)
        hit = table.get(names)
        if not hit:
            continue
        factor = Poly.ONE
        for _, p in combo:
            factor = factor * p
        if factor.is_zero():
            continue
        for o, poly in hit.items():
            term = factor * poly
            out[o] = out[o] + term if o in out else term
    return {o: p for o, p in out.items() if not p.is_zero()}


def _add_into(acc, contrib, scale=1):
    for o, p in contrib.items():
        term = p * scale
        acc[o] = acc[o] + term if o in acc else term


def _poly_defect(P: Pseudoisotopy, tables, beta, names) -> dict:
    """Quadratic-relation sum of a polynomial family, as out -> Poly."""
    names = tuple(names)
    nlen = len(names)
    degs = [P.degree(nm) for nm in names]
    acc = {}
    for b_inner, b_outer in P.beta_splits(beta):
        for j in range(nlen + 1):
            inner_table = tables.get((j, b_inner))
            if not inner_table:
                continue
            outer_table = tables.get((nlen - j + 1, b_outer))
            if not outer_table:
                continue
            for i in range(1, nlen - j + 2):
                inner = inner_table.get(names[i - 1:i - 1 + j])
                if not inner:
                    continue
                sign = koszul_prefix_sign(degs, i)
                prefix, suffix = names[:i - 1], names[i - 1 + j:]
                for mid, p_in in inner.items():
                    outer = outer_table.get(prefix + (mid,) + suffix)
                    if not outer:
                        continue
                    for out, p_out in outer.items():
                        term = p_in * p_out * sign
                        acc[out] = acc[out] + term if out in acc else term
    return {o: p for o, p in acc.items() if not p.is_zero()}


def isotopy_sums(P: Pseudoisotopy, k, beta, names):
    """The two mixed sums of the differential equation on a basis tuple.

    S1 = sum m^t_{k-j+1,beta1}(xi_1, ..., c^t_{j,beta2}(...), ...)  (no sign)
    S2 = sum (-1)^{prefix} c^t_{k-j+1,beta1}(xi_1, ..., m^t_{j,beta2}(...), ...)

    Both are dicts out -> Poly.  Lookups at levels absent from the stored
    families contribute zero, which is exactly the convention under which
    the extension formula is well defined.
    """
    names = tuple(names)
    degs = [P.degree(nm) for nm in names]
    s1, s2 = {}, {}
    for b_outer, b_inner in P.beta_splits(beta):
        for j in range(k + 1):
            for (acc, outer_tables, inner_tables, signed) in (
                (s1, P.mT, P.cT, False),
                (s2, P.cT, P.mT, True),
            ):
                inner_table = inner_tables.get((j, b_inner))
                outer_table = outer_tables.get((k - j + 1, b_outer))
                if not inner_table or not outer_table:
                    continue
                for i in range(1, k - j + 2):
                    inner = inner_table.get(names[i - 1:i - 1 + j])
                    if not inner:
                        continue
                    sign = koszul_prefix_sign(degs, i) if signed else 1
                    prefix, suffix = names[:i - 1], names[i - 1 + j:]
                    for mid, p_in in inner.items():
                        outer = outer_table.get(prefix + (mid,) + suffix)
                        if not outer:
                            continue
                        for out, p_out in outer.items():
                            term = p_in * p_out * sign
                            acc[out] = acc[out] + term if out in acc else term
    return (
        {o: p for o, p in s1.items() if not p.is_zero()},
        {o: p for o, p in s2.items() if not p.is_zero()},
    )


def check_pseudoisotopy(P: Pseudoisotopy, m0: AInfAlgebra = None,
                        m1: AInfAlgebra = None, _parity_factor=None) -> dict:
    """All pseudoisotopy axioms as exact polynomial identities in t."""
    violations = []
    pf = sign_pow(P.n + 1) if _parity_factor is None else _parity_factor
    betas = P.monoid.enumerate(P.cutoff)
    max_m = max((k for k, _ in P.mT), default=0)
    max_c = max((k for k, _ in P.cT), default=0)

    # Quadratic relations of m^t, polynomially in t.
    n_bound = max(2 * max_m - 1, 0)
    for beta in betas:
        for nlen in range(n_bound + 1):
            feasible = any(
                (j, b1) in P.mT and (nlen - j + 1, b2) in P.mT
                for b1, b2 in P.beta_splits(beta)
                for j in range(nlen + 1)
            )
            if not feasible:
                continue
            for names in product(P.names, repeat=nlen):
                defect = _poly_defect(P, P.mT, beta, names)
                if defect:
                    violations.append({
                        "clause": "ainf-family", "beta": beta_json(beta),
                        "n": nlen, "inputs": list(names),
                        "defect": {o: p.to_json() for o, p in sorted(defect.items())},
                    })
                    break

    # The differential equation.
    k_bound = max(max_m, max_m + max_c - 1, 0)
    for beta in betas:
        for k in range(k_bound + 1):
            for names in product(P.names, repeat=k):
                acc = {}
                table = P.mT.get((k, beta), {}).get(tuple(names), {})
                for out, poly in table.items():
                    _add_into(acc, {out: poly.derivative()}, pf)
                s1, s2 = isotopy_sums(P, k, beta, names)
                _add_into(acc, s1, -1)
                _add_into(acc, s2, 1)
                acc = {o: p for o, p in acc.items() if not p.is_zero()}
                if acc:
                    violations.append({
                        "clause": "differential-equation",
                        "beta": beta_json(beta), "k": k, "inputs": list(names),
                        "defect": {o: p.to_json() for o, p in sorted(acc.items())},
                    })

    # Endpoint comparisons.
    for label, target, t in (("endpoint-0", m0, 0), ("endpoint-1", m1, 1)):
        if target is None:
            continue
        got = P.endpoint(t)
        if got.ops != target.ops:
            violations.append({"clause": label,
                               "detail": "evaluated family differs from the "
                                         "given algebra"})
    return {
        "check": "pseudoisotopy",
        "status": "PASS" if not violations else "FAIL",
        "violations": violations,
    }


# -- extension across one energy level ---------------------------------------------

def extend_one_level(m0: AInfAlgebra, m1: AInfAlgebra, P: Pseudoisotopy):
    """Transport new-level operations of m1 back to t = 0 along P.

    Returns (m_ext, P_ext): the extended algebra modulo T^{E1} and the
    extended pseudoisotopy whose t = 0 endpoint is m_ext and whose t = 1
    endpoint is m1.
    """
    if m0.mode != "modulo" or m1.mode != "modulo":
        raise ValueError("extension needs truncated algebras")
    if not (m0.monoid == m1.monoid == P.monoid):
        raise ValueError("all three inputs must share the energy monoid")
    if m0.basis != m1.basis or m0.basis != P.basis:
        raise ValueError("all three inputs must share the basis")
    e0, e1 = m0.cutoff, m1.cutoff
    if P.cutoff != e0:
        raise ValueError("the pseudoisotopy must live at the lower cutoff")
    if not e0 < e1:
        raise ValueError("the target cutoff must exceed the starting one")
    new_betas = [b for b in m1.monoid.enumerate(e1) if b[0] > e0]
    if any(b[0] != e1 for b in new_betas):
        raise ValueError(
            "more than one new energy level between the cutoffs; "
            "extend level by level (see extend_to)")
    if P.endpoint(0).ops != m0.ops:
        raise ValueError("P at t = 0 does not match m0")
    m1_low = {key: tbl for key, tbl in m1.ops.items() if key[1][0] <= e0}
    if P.endpoint(1).ops != m1_low:
        raise ValueError("P at t = 1 does not match m1 below the cutoff")

    sign_n = sign_pow(P.n)
    max_m = max((k for k, _ in P.mT), default=0)
    max_c = max((k for k, _ in P.cT), default=0)
    k_candidates = [k for (k, b) in m1.ops if b in new_betas]
    k_bound = max([max_m + max_c - 1, 0] + k_candidates)

    new_tau_tables = {}
    for beta in new_betas:
        for k in range(k_bound + 1):
            for names in product(m1.names, repeat=k):
                acc = {}
                for out, cf in m1.op_on_names(k, beta, names).items():
                    _add_into(acc, {out: Poly.const(cf)})
                s1, s2 = isotopy_sums(P, k, beta, names)
                for out, poly in s1.items():
                    _add_into(acc, {out: poly.integral_from_to_one()}, sign_n)
                for out, poly in s2.items():
                    _add_into(acc, {out: poly.integral_from_to_one()}, -sign_n)
                acc = {o: p for o, p in acc.items() if not p.is_zero()}
                if acc:
                    new_tau_tables.setdefault((k, beta), {})[tuple(names)] = acc

    ext_ops = {key: {ins: dict(cmb) for ins, cmb in tbl.items()}
               for key, tbl in m0.ops.items()}
    for key, tbl in new_tau_tables.items():
        for inputs, combo in tbl.items():
            for out, poly in combo.items():
                val = poly(Fraction(0))
                if val != 0:
                    ext_ops.setdefault(key, {}).setdefault(inputs, {})[out] = val
    m_ext = AInfAlgebra(m0.basis, m0.monoid, "modulo", e1, m0.unit,
                        ext_ops, m0.window)

    ext_mt = {key: {ins: dict(cmb) for ins, cmb in tbl.items()}
              for key, tbl in P.mT.items()}
    for key, tbl in new_tau_tables.items():
        for inputs, combo in tbl.items():
            ext_mt.setdefault(key, {})[inputs] = dict(combo)
    p_ext = Pseudoisotopy(P.n, P.basis, P.monoid, e1, P.unit, ext_mt,
                          {key: {ins: dict(cmb) for ins, cmb in tbl.items()}
                           for key, tbl in P.cT.items()},
                          P.window)
    return m_ext, p_ext


def extend_to(m0: AInfAlgebra, chain):
    """Fold extend_one_level along a list of (target algebra, isotopy) steps."""
    current = m0
    isotopies = []
    for m_next, p in chain:
        current, p_ext = extend_one_level(current, m_next, p)
        isotopies.append(p_ext)
    return current, isotopies


# -- commuting pairs of isotopies -----------------------------------------------------

def _iota_poly(emb, name) -> dict:
    return {tgt: Poly.const(c) for tgt, c in emb.iota[name].items()}


def _apply_iota_poly(emb, elem: dict) -> dict:
    out = {}
    for nm, p in elem.items():
        for tgt, c in emb.iota[nm].items():
            term = p * c
            out[tgt] = out[tgt] + term if tgt in out else term
    return {o: p for o, p in out.items() if not p.is_zero()}


def check_commuting_isotopy(PC: Pseudoisotopy, PA: Pseudoisotopy,
                            PB: Pseudoisotopy, embA, embB) -> dict:
    """Product-compatibility of an isotopy with two factor isotopies.

    Writing G_A, G_B for the factor monoids inside the product monoid:

      * at beta outside G_A and G_B, both families of PC vanish on embedded
        and K-inserted tuples;
      * at beta in G_A (nonzero), tuples with a strict second-factor input
        kill both families, and symmetrically;
      * at beta in G_A, on first-factor tuples:
          m^t_C(iota a_1, ..)                      = iota(m^t_A(a_1, ..))
          c^t_C(iota a_1, ..)                      = (-1)^{n_B} iota(c^t_A(a_1, ..))
          m^t_C(.., K(a (x) b), ..) = (-1)^{|b|(||a_{i+1}||+..)} K(m^t_A(.., a, ..) (x) b)
          c^t_C(.., K(a (x) b), ..) = (-1)^{n_B + |b|(||a_{i+1}||+..)} K(c^t_A(.., a, ..) (x) b)
        and symmetrically for G_B with the second-factor insertion signs
        (-1)^{|a|(1 + ||b_1|| + .. + ||b_i||)} and the extra (-1)^{n_A}.
    """
    from ainfkit.kunneth import kunneth_K
    from ainfkit.scalars import monoid_sum
    from ainfkit.signs import shifted

    if PC.n != PA.n + PB.n:
        raise ValueError("dimension parameters must satisfy n_C = n_A + n_B")
    if monoid_sum(PA.monoid, PB.monoid) != PC.monoid:
        raise ValueError("product monoid must be the sum of the factor monoids")
    if embA.source.basis != PA.basis or embB.source.basis != PB.basis:
        raise ValueError("embedding sources must match the factor isotopies")
    if embA.target.basis != PC.basis:
        raise ValueError("embedding target must match the product isotopy")
    n1, n2 = PA.n, PB.n
    a_names, b_names = PA.names, PB.names
    a_unit, b_unit = embA.source.unit, embB.source.unit
    K0 = kunneth_K(embA, embB)

    def k_pair(na, nb) -> dict:
        from ainfkit.ainf import AlgElement
        val = K0(AlgElement.basis(na, embA.source.truncation),
                 AlgElement.basis(nb, embB.source.truncation))
        return {o: Poly.const(nov.coefficient(0))
                for o, nov in val.coeffs.items()}

    violations = []

    def record(clause, beta, detail):
        violations.append({"clause": clause, "beta": beta_json(beta), **detail})

    betas = PC.monoid.enumerate(PC.cutoff)
    k_max = PC.max_arity()
    # The shared unit is listed once, on the first-factor side, so tuples of
    # units (or units mixed with one factor) classify as single-factor tuples.
    tags = [("A", nm) for nm in a_names] + \
        [("B", nm) for nm in b_names if nm != b_unit]

    def tag_elem(t):
        return _iota_poly(embA if t[0] == "A" else embB, t[1])

    def tag_deg(t):
        return (PA if t[0] == "A" else PB).degree(t[1])

    def fam_pairs():
        return (("m", PC.mT, PA.mT, PB.mT, 0, 0),
                ("c", PC.cT, PA.cT, PB.cT, n2, n1))

    def side_of(tup, k):
        """Which factor a tuple belongs to; units act as wildcards and are
        attributed to the first factor when nothing strict is present."""
        has_a = any(t[0] == "A" and t[1] != a_unit for t in tup)
        has_b = any(t[0] == "B" for t in tup)
        if has_a and has_b:
            return "mixed"
        if has_b:
            return "B"
        return "A"

    def factor_names(tup, side):
        if side == "A":
            return [t[1] for t in tup]
        return [t[1] if t[0] == "B" else b_unit for t in tup]

    for beta in betas:
        in_ga = beta in PA.monoid
        in_gb = beta in PB.monoid
        # -- plain embedded tuples --------------------------------------------
        for k in range(0, k_max + 1):
            for tup in product(tags, repeat=k):
                side = side_of(tup, k)
                elems = [tag_elem(t) for t in tup]
                for fam, c_tab, a_tab, b_tab, extra_a, extra_b in fam_pairs():
                    lhs = eval_poly_op(c_tab, k, beta, elems)
                    if side == "mixed":
                        # Mixed tuples vanish; the one exception is the
                        # graded anticommutator of the t-independent (2, 0)
                        # product, which the endpoint commuting check owns.
                        if fam == "m" and (k, beta) == (2, BETA_ZERO):
                            continue
                        if lhs:
                            record(f"{fam}-mixed-tuple", beta,
                                   {"k": k, "inputs": [list(t) for t in tup]})
                        continue
                    # The empty tuple is a tuple of both factors at once:
                    # the expected curvature is the sum of both reductions.
                    expected = {}
                    if (side == "A" or k == 0) and in_ga:
                        inner = eval_poly_op(
                            a_tab, k, beta,
                            [poly_elem(nm) for nm in factor_names(tup, "A")])
                        for o, p in _apply_iota_poly(embA, inner).items():
                            term = p * sign_pow(extra_a) if fam == "c" else p
                            expected[o] = expected.get(o, Poly.ZERO) + term
                    if (side == "B" or k == 0) and in_gb:
                        inner = eval_poly_op(
                            b_tab, k, beta,
                            [poly_elem(nm) for nm in factor_names(tup, "B")])
                        for o, p in _apply_iota_poly(embB, inner).items():
                            term = p * sign_pow(extra_b) if fam == "c" else p
                            expected[o] = expected.get(o, Poly.ZERO) + term
                    expected = {o: p for o, p in expected.items()
                                if not p.is_zero()}
                    # A tuple drawn from the wrong factor for this beta (or a
                    # beta outside both factor monoids) must evaluate to zero.
                    if lhs != expected:
                        record(f"{fam}-restriction", beta, {
                            "k": k, "inputs": [list(t) for t in tup],
                            "lhs": {o: p.to_json() for o, p in sorted(lhs.items())},
                            "rhs": {o: p.to_json()
                                    for o, p in sorted(expected.items())},
                        })
        # -- K-inserted tuples --------------------------------------------------
        a_window = list(embA.source.window)
        b_window = list(embB.source.window)
        wtags = [("A", nm) for nm in a_window] + \
            [("B", nm) for nm in b_window if nm != b_unit]
        for k in range(0, k_max):
            for plain in product(wtags, repeat=k):
                side = side_of(plain, k)
                # For the empty tuple both one-factor reductions apply and
                # the expected value is their sum; otherwise exactly one does.
                apply_a = in_ga and (side == "A" or k == 0)
                apply_b = in_gb and (side == "B" or k == 0)
                plain_elems = [tag_elem(t) for t in plain]
                plain_degs = [tag_deg(t) for t in plain]
                a_plain = factor_names(plain, "A") if side != "B" else None
                b_plain = factor_names(plain, "B") if side != "A" or k == 0 \
                    else None
                for i in range(k + 1):
                    for na in a_window:
                        for nb in b_window:
                            da = embA.source.degree(na)
                            db = embB.source.degree(nb)
                            mid = k_pair(na, nb)
                            args = plain_elems[:i] + [mid] + plain_elems[i:]
                            for fam, c_tab, a_tab, b_tab, extra_a, extra_b \
                                    in fam_pairs():
                                lhs = eval_poly_op(c_tab, k + 1, beta, args)
                                expected = {}
                                if apply_a:
                                    inner_args = [poly_elem(nm)
                                                  for nm in a_plain[:i]] + \
                                        [poly_elem(na)] + \
                                        [poly_elem(nm) for nm in a_plain[i:]]
                                    inner = eval_poly_op(
                                        a_tab, k + 1, beta, inner_args)
                                    s = sign_pow(
                                        db * sum(shifted(d)
                                                 for d in plain_degs[i:])
                                        + (extra_a if fam == "c" else 0))
                                    for nm2, p in inner.items():
                                        for o, q in k_pair(nm2, nb).items():
                                            term = p * q * s
                                            expected[o] = expected.get(
                                                o, Poly.ZERO) + term
                                if apply_b:
                                    inner_args = [poly_elem(nm)
                                                  for nm in b_plain[:i]] + \
                                        [poly_elem(nb)] + \
                                        [poly_elem(nm) for nm in b_plain[i:]]
                                    inner = eval_poly_op(
                                        b_tab, k + 1, beta, inner_args)
                                    s = sign_pow(
                                        da * (1 + sum(shifted(d)
                                                      for d in plain_degs[:i]))
                                        + (extra_b if fam == "c" else 0))
                                    for nm2, p in inner.items():
                                        for o, q in k_pair(na, nm2).items():
                                            term = p * q * s
                                            expected[o] = expected.get(
                                                o, Poly.ZERO) + term
                                expected = {o: p for o, p in expected.items()
                                            if not p.is_zero()}
                                if lhs != expected:
                                    record(f"{fam}-k-insertion", beta, {
                                        "k": k, "slot": i, "pair": [na, nb],
                                        "plain": [list(t) for t in plain],
                                        "lhs": {o: p.to_json()
                                                for o, p in sorted(lhs.items())},
                                        "rhs": {o: p.to_json()
                                                for o, p in
                                                sorted(expected.items())},
                                    })
        if len(violations) > 40:
            break

    return {
        "check": "commuting-isotopy",
        "status": "PASS" if not violations else "FAIL",
        "violations": violations,
    }


# -- mutation harness ---------------------------------------------------------------

def isotopy_constant_ids(P: Pseudoisotopy):
    ids = []
    for prefix, tables in (("im", P.mT), ("ic", P.cT)):
        for (k, beta) in sorted(tables, key=lambda kb: (kb[0], kb[1])):
            for inputs in sorted(tables[(k, beta)]):
                for out in sorted(tables[(k, beta)][inputs]):
                    ids.append(f"{prefix}{k}:{frac_str(beta[0])}/{beta[1]}:"
                               f"{','.join(inputs)}->{out}")
    return ids


def flip_isotopy_constant(P: Pseudoisotopy, cid: str) -> Pseudoisotopy:
    """Negate one polynomial family member, returning a new isotopy."""
    kpart, betapart, rest = cid.split(":", 2)
    if kpart.startswith("im"):
        which, k = "m", int(kpart[2:])
    elif kpart.startswith("ic"):
        which, k = "c", int(kpart[2:])
    else:
        raise ValueError(f"malformed isotopy constant id {cid!r}")
    e_str, mu_str = betapart.rsplit("/", 1)
    beta = (frac(e_str), int(mu_str))
    ins_str, out = rest.split("->")
    inputs = tuple(s for s in ins_str.split(",") if s)
    tables = P.mT if which == "m" else P.cT
    key = (k, beta_norm(beta))
    if key not in tables or inputs not in tables[key] \
            or out not in tables[key][inputs]:
        raise KeyError(f"no stored isotopy constant {cid!r}")
    new = {kb: {ins: dict(cmb) for ins, cmb in tbl.items()}
           for kb, tbl in tables.items()}
    new[key][inputs][out] = -new[key][inputs][out]
    if which == "m":
        return Pseudoisotopy(P.n, P.basis, P.monoid, P.cutoff, P.unit,
                             new, P.cT, P.window)
    return Pseudoisotopy(P.n, P.basis, P.monoid, P.cutoff, P.unit,
                         P.mT, new, P.window)
