"""Concrete algebras used as fixtures: torus form models, tensor products,
gapped two-factor families, and isotopy/extension families.

The torus model uses trigonometric-polynomial forms on an n-torus, with the
differential normalized so that d(e_f omega_I) = sum_j f_j e_f dx_j ^ omega_I
(the 2*pi factor is absorbed into the basis).  Operations follow the de Rham
conventions of the rest of the package:

    m_{1,0} = (-1)^{n+1} d,      m_{2,0}(a, b) = (-1)^{|a|} a ^ b,

and the factor embeddings into a product torus carry the twists

    iota_1(xi) = (-1)^{|xi| n_2} p_1^*(xi),
    iota_2(xi) = (-1)^{|xi| n_1} p_2^*(xi),

under which the comparison map evaluates on basis forms to
K(xi_1 (x) xi_2) = (-1)^{|xi_1| n_2 + |xi_2| n_1} xi_1 x xi_2.

A frequency window of width w declares where the truncated multiplication
table is exact: products are stored whenever the result stays within twice
the window and at least one factor lies inside it, which makes every
checked relation instance close exactly.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from ainfkit.ainf import AInfAlgebra, AlgElement
from ainfkit.isotopy import Pseudoisotopy
from ainfkit.kunneth import SubalgebraEmbedding
from ainfkit.poly import Poly
from ainfkit.scalars import EnergyMonoid, NovikovElement, frac, monoid_sum
from ainfkit.signs import sign_pow


# -- torus form models ----------------------------------------------------------

def _form_name(freq, idx) -> str:
    return "f" + "_".join(str(f) for f in freq) + ";d" + "".join(
        str(i) for i in idx)


def _wedge_sign(idx1, idx2):
    """Merge two strictly increasing index tuples; None if they intersect."""
    if set(idx1) & set(idx2):
        return None, None
    inversions = sum(1 for i in idx1 for j in idx2 if i > j)
    return sign_pow(inversions), tuple(sorted(idx1 + idx2))


def _sup(freq) -> int:
    return max((abs(f) for f in freq), default=0)


def derham_model(n: int, w: int) -> AInfAlgebra:
    """Trigonometric-polynomial forms on the n-torus, frequency window w.

    Basis: all (freq, idx) with sup-norm of freq at most 2w.  The window of
    the algebra is the sub-basis with sup-norm at most w.  m_{1,0} is
    (-1)^{n+1} d on the whole basis; m_{2,0} is stored on pairs whose product
    stays in the basis and where at least one factor is inside the window.
    """
    freqs = sorted(product(range(-2 * w, 2 * w + 1), repeat=n))
    idx_sets = []
    for r in range(n + 1):
        from itertools import combinations
        idx_sets += [tuple(c) for c in combinations(range(1, n + 1), r)]
    basis = []
    elements = []
    for f in freqs:
        for idx in idx_sets:
            basis.append((_form_name(f, idx), len(idx)))
            elements.append((f, idx))
    window = [_form_name(f, idx) for f, idx in elements if _sup(f) <= w]
    unit = _form_name((0,) * n, ())
    s_d = sign_pow(n + 1)
    ops = {}

    def put(k, beta, inputs, out, coeff):
        if coeff == 0:
            return
        combo = ops.setdefault((k, beta), {}).setdefault(inputs, {})
        combo[out] = combo.get(out, Fraction(0)) + Fraction(coeff)

    beta0 = (Fraction(0), 0)
    for f, idx in elements:
        name = _form_name(f, idx)
        for j in range(1, n + 1):
            if f[j - 1] == 0 or j in idx:
                continue
            ws, merged = _wedge_sign((j,), idx)
            put(1, beta0, (name,), _form_name(f, merged), s_d * ws * f[j - 1])
    for f1, idx1 in elements:
        for f2, idx2 in elements:
            total = tuple(a + b for a, b in zip(f1, f2))
            if _sup(total) > 2 * w or min(_sup(f1), _sup(f2)) > w:
                continue
            ws, merged = _wedge_sign(idx1, idx2)
            if ws is None:
                continue
            put(2, beta0, (_form_name(f1, idx1), _form_name(f2, idx2)),
                _form_name(total, merged), sign_pow(len(idx1)) * ws)
    return AInfAlgebra(basis, EnergyMonoid([]), "gapped", None, unit, ops,
                       window)


def derham_factor_embeddings(n1: int, n2: int, w: int, target=None,
                             factor_w=None):
    """Embed the two factor models into the product model with sign twists."""
    if factor_w is None:
        factor_w = w
    a_model = derham_model(n1, factor_w)
    b_model = derham_model(n2, factor_w)
    c_model = target if target is not None else derham_model(n1 + n2, w)

    iota_a = {}
    for f in sorted(product(range(-2 * factor_w, 2 * factor_w + 1), repeat=n1)):
        from itertools import combinations
        for r in range(n1 + 1):
            for idx in combinations(range(1, n1 + 1), r):
                src = _form_name(f, tuple(idx))
                tgt = _form_name(tuple(f) + (0,) * n2, tuple(idx))
                iota_a[src] = {tgt: Fraction(sign_pow(len(idx) * n2))}
    iota_b = {}
    for f in sorted(product(range(-2 * factor_w, 2 * factor_w + 1), repeat=n2)):
        from itertools import combinations
        for r in range(n2 + 1):
            for idx in combinations(range(1, n2 + 1), r):
                src = _form_name(f, tuple(idx))
                tgt = _form_name((0,) * n1 + tuple(f),
                                 tuple(i + n1 for i in idx))
                iota_b[src] = {tgt: Fraction(sign_pow(len(idx) * n1))}
    emb_a = SubalgebraEmbedding(a_model, c_model, iota_a)
    emb_b = SubalgebraEmbedding(b_model, c_model, iota_b)
    return emb_a, emb_b


# -- abstract tensor products ----------------------------------------------------

def _unit_products(names_degrees, unit):
    """The (2, 0) unit multiplication table."""
    table = {}
    for nm, d in names_degrees:
        table[(unit, nm)] = {nm: Fraction(1)}
        if nm != unit:
            table[(nm, unit)] = {nm: Fraction(sign_pow(d))}
    return table


def _wedge_of(alg: AInfAlgebra, a: str, b: str):
    """a ^ b recovered from m_{2,0}(a, b) = (-1)^{|a|} a ^ b."""
    beta0 = (Fraction(0), 0)
    s = sign_pow(alg.degree(a))
    return {out: s * c for out, c in alg.op_on_names(2, beta0, (a, b)).items()}


def tensor_dga(a_alg: AInfAlgebra, b_alg: AInfAlgebra, monoid, mode, cutoff,
               curvature=None):
    """Tensor product of two differential graded algebras, as a product model.

    Basis a|b; differential d(a|b) = da|b + (-1)^{|a|} a|db; product stored as
    m_{2,0}(u, v) = (-1)^{|u|} u ^ v with the graded tensor wedge.  Nonzero-
    energy operations are supplied through `curvature`: a dict mapping beta
    to {product-name: coefficient} for the arity-0 operation at beta.
    """
    beta0 = (Fraction(0), 0)

    def pname(a, b):
        return f"{a}|{b}"

    basis = [(pname(a, b), a_alg.degree(a) + b_alg.degree(b))
             for a, _ in a_alg.basis for b, _ in b_alg.basis]
    unit = pname(a_alg.unit, b_alg.unit)
    ops = {}

    def put(k, beta, inputs, out, coeff):
        coeff = Fraction(coeff)
        if coeff == 0:
            return
        combo = ops.setdefault((k, beta), {}).setdefault(inputs, {})
        combo[out] = combo.get(out, Fraction(0)) + coeff

    for a, da in a_alg.basis:
        for b, db in b_alg.basis:
            nm = pname(a, b)
            for out, c in a_alg.op_on_names(1, beta0, (a,)).items():
                put(1, beta0, (nm,), pname(out, b), c)
            for out, c in b_alg.op_on_names(1, beta0, (b,)).items():
                put(1, beta0, (nm,), pname(a, out), sign_pow(da) * c)
    for a1, da1 in a_alg.basis:
        for b1, db1 in b_alg.basis:
            for a2, da2 in a_alg.basis:
                wa = _wedge_of(a_alg, a1, a2)
                if not wa:
                    continue
                for b2, db2 in b_alg.basis:
                    wb = _wedge_of(b_alg, b1, b2)
                    if not wb:
                        continue
                    s = sign_pow(da1 + db1 + db1 * da2)
                    for oa, ca in wa.items():
                        for ob, cb in wb.items():
                            put(2, beta0, (pname(a1, b1), pname(a2, b2)),
                                pname(oa, ob), s * ca * cb)
    for beta, combo in (curvature or {}).items():
        for out, c in combo.items():
            put(0, (frac(beta[0]), int(beta[1])), (), out, c)
    return AInfAlgebra(basis, monoid, mode, cutoff, unit, ops)


def _tensor_embeddings(a_alg, b_alg, c_alg):
    iota_a = {a: {f"{a}|{b_alg.unit}": Fraction(1)} for a, _ in a_alg.basis}
    iota_b = {b: {f"{a_alg.unit}|{b}": Fraction(1)} for b, _ in b_alg.basis}
    return (SubalgebraEmbedding(a_alg, c_alg, iota_a),
            SubalgebraEmbedding(b_alg, c_alg, iota_b))


# -- gapped two-factor fixture ----------------------------------------------------

def _curved_line(prefix, energy, lam, rho):
    """e, x (deg 1), z (deg 2) with dx = z, curvature lam*z*T^energy and
    potential rho*e*T^energy at Maslov 2."""
    e, x, z = f"e{prefix}", f"x{prefix}", f"z{prefix}"
    basis = [(e, 0), (x, 1), (z, 2)]
    energy = frac(energy)
    monoid = EnergyMonoid([(energy, 0), (energy, 2)])
    ops = {(2, (Fraction(0), 0)): _unit_products(basis, e)}
    ops[(1, (Fraction(0), 0))] = {(x,): {z: Fraction(1)}}
    ops[(0, (energy, 0))] = {(): {z: frac(lam)}}
    ops[(0, (energy, 2))] = {(): {e: frac(rho)}}
    return AInfAlgebra(basis, monoid, "gapped", None, e, ops)


def two_factor_gapped(lam_a=3, rho_a=5, lam_b=2, rho_b=7):
    """Two curved factors (energies 1 and 1/2), their tensor product, the
    factor embeddings and the exact factor bounding cochains."""
    a_alg = _curved_line("A", 1, lam_a, rho_a)
    b_alg = _curved_line("B", Fraction(1, 2), lam_b, rho_b)
    monoid = monoid_sum(a_alg.monoid, b_alg.monoid)
    curvature = {
        (Fraction(1), 0): {"zA|eB": frac(lam_a)},
        (Fraction(1), 2): {"eA|eB": frac(rho_a)},
        (Fraction(1, 2), 0): {"eA|zB": frac(lam_b)},
        (Fraction(1, 2), 2): {"eA|eB": frac(rho_b)},
    }
    c_alg = tensor_dga(a_alg, b_alg, monoid, "gapped", None, curvature)
    emb_a, emb_b = _tensor_embeddings(a_alg, b_alg, c_alg)
    b1 = AlgElement({"xA": NovikovElement.monomial(-frac(lam_a), 1)})
    b2 = AlgElement({"xB": NovikovElement.monomial(-frac(lam_b), Fraction(1, 2))})
    return {"A": a_alg, "B": b_alg, "C": c_alg,
            "embA": emb_a, "embB": emb_b, "b1": b1, "b2": b2}


def barcode_fixture():
    """One finite bar of length 1 next to one infinite bar."""
    basis = [("e", 0), ("x", 0), ("y", 1)]
    monoid = EnergyMonoid([(1, 0)])
    ops = {(2, (Fraction(0), 0)): _unit_products(basis, "e")}
    ops[(1, (Fraction(1), 0))] = {("x",): {"y": Fraction(1)}}
    alg = AInfAlgebra(basis, monoid, "gapped", None, "e", ops)
    return alg, AlgElement({})


# -- isotopy and extension fixtures ---------------------------------------------

def _curved_line_ops(lam, zeta, rho, energy=1):
    energy = frac(energy)
    ops = {(2, (Fraction(0), 0)): _unit_products(
        [("e", 0), ("x", 1), ("z", 2)], "e")}
    ops[(1, (Fraction(0), 0))] = {("x",): {"z": Fraction(1)}}
    ops[(0, (energy, 0))] = {(): {"z": frac(lam)}}
    if zeta:
        ops[(2, (energy, 0))] = {("x", "x"): {"z": frac(zeta)}}
    if rho:
        ops[(0, (energy, 2))] = {(): {"e": frac(rho)}}
    return ops


def extension_fixture(n=0, lam=3, sig=2, zeta=5, rho=7, kappa=11, nu=13,
                      omega=17, kappa_p=19):
    """A one-level extension problem with a genuinely t-dependent isotopy.

    Returns m0 (modulo T), the isotopy P between m0 and the endpoint at t=1,
    and m1 (modulo T^2) carrying new level-2 operations.  The correction
    family is c_{0,(1,0)} = (-1)^{n+1} sig * x, compatible with the moving
    curvature (lam + sig*t) * z.
    """
    basis = [("e", 0), ("x", 1), ("z", 2)]
    monoid = EnergyMonoid([(1, 0), (1, 2)])
    m0 = AInfAlgebra(basis, monoid, "modulo", 1, "e",
                     _curved_line_ops(lam, zeta, rho))

    mt = {}
    for key, tbl in m0.ops.items():
        mt[key] = {ins: {o: Poly.const(c) for o, c in cmb.items()}
                   for ins, cmb in tbl.items()}
    mt[(0, (Fraction(1), 0))] = {(): {"z": Poly([frac(lam), frac(sig)])}}
    ct = {(0, (Fraction(1), 0)): {(): {"x": Poly.const(
        sign_pow(n + 1) * frac(sig))}}}
    p_iso = Pseudoisotopy(n, basis, monoid, 1, "e", mt, ct)

    m1_ops = _curved_line_ops(frac(lam) + frac(sig), zeta, rho)
    m1_ops[(0, (Fraction(2), 0))] = {(): {"z": frac(kappa)}}
    m1_ops[(1, (Fraction(2), 0))] = {("x",): {"z": frac(nu)}}
    m1_ops[(2, (Fraction(2), 0))] = {("x", "x"): {"z": frac(omega)}}
    m1_ops[(0, (Fraction(2), 2))] = {(): {"e": frac(kappa_p)}}
    m1 = AInfAlgebra(basis, monoid, "modulo", 2, "e", m1_ops)
    return {"m0": m0, "P": p_iso, "m1": m1,
            "params": {"n": n, "lam": frac(lam), "sig": frac(sig),
                       "zeta": frac(zeta), "rho": frac(rho),
                       "kappa": frac(kappa), "nu": frac(nu),
                       "omega": frac(omega), "kappa_p": frac(kappa_p)}}


def chain_fixture(theta=23, **kw):
    """A three-level extension chain: a moving first step, then a constant
    isotopy carrying one further curvature term at energy 3."""
    fix = extension_fixture(**kw)
    m0, p1, m1 = fix["m0"], fix["P"], fix["m1"]
    from ainfkit.isotopy import extend_one_level

    m_ext1, _ = extend_one_level(m0, m1, p1)
    mt2 = {key: {ins: {o: Poly.const(c) for o, c in cmb.items()}
                 for ins, cmb in tbl.items()}
           for key, tbl in m_ext1.ops.items()}
    p2 = Pseudoisotopy(fix["params"]["n"], m0.basis, m0.monoid, 2, "e",
                       mt2, {})
    m2_ops = {key: {ins: dict(cmb) for ins, cmb in tbl.items()}
              for key, tbl in m_ext1.ops.items()}
    m2_ops[(0, (Fraction(3), 0))] = {(): {"z": frac(theta)}}
    m2 = AInfAlgebra(m0.basis, m0.monoid, "modulo", 3, "e", m2_ops)
    return {"m0": m0, "chain": [(m1, p1), (m2, p2)], "theta": frac(theta)}


def commuting_isotopy_fixture(lam_a=3, sig_a=2, lam_b=5, rho_b=7):
    """Factor isotopies on two curved lines and the induced product isotopy.

    The first factor (dimension parameter 1) moves its curvature; the second
    (also 1) is constant.  The product family carries the correction
    c^t_{0,(1,0)} = (-1)^{n_2} iota_A(c^{t,A}_{0,(1,0)}).  The higher-cutoff
    algebras add one pure-second-factor curvature term at energy 3/2.
    """
    n1 = n2 = 1
    e0, e1 = Fraction(1), Fraction(3, 2)
    beta0 = (Fraction(0), 0)

    def line(prefix, gens):
        e, x, z = f"e{prefix}", f"x{prefix}", f"z{prefix}"
        basis = [(e, 0), (x, 1), (z, 2)]
        ops = {(2, beta0): _unit_products(basis, e),
               (1, beta0): {(x,): {z: Fraction(1)}}}
        return basis, EnergyMonoid(gens), ops

    basis_a, mon_a, ops_a = line("A", [(1, 0)])
    ops_a[(0, (Fraction(1), 0))] = {(): {"zA": frac(lam_a)}}
    m0a = AInfAlgebra(basis_a, mon_a, "modulo", e0, "eA", ops_a)
    mta = {key: {ins: {o: Poly.const(c) for o, c in cmb.items()}
                 for ins, cmb in tbl.items()} for key, tbl in m0a.ops.items()}
    mta[(0, (Fraction(1), 0))] = {(): {"zA": Poly([frac(lam_a), frac(sig_a)])}}
    cta = {(0, (Fraction(1), 0)): {(): {"xA": Poly.const(
        sign_pow(n1 + 1) * frac(sig_a))}}}
    pa = Pseudoisotopy(n1, basis_a, mon_a, e0, "eA", mta, cta)

    basis_b, mon_b, ops_b = line("B", [(Fraction(1, 2), 2),
                                       (Fraction(3, 2), 2)])
    ops_b[(0, (Fraction(1, 2), 2))] = {(): {"eB": frac(lam_b)}}
    m0b = AInfAlgebra(basis_b, mon_b, "modulo", e0, "eB", ops_b)
    mtb = {key: {ins: {o: Poly.const(c) for o, c in cmb.items()}
                 for ins, cmb in tbl.items()} for key, tbl in m0b.ops.items()}
    pb = Pseudoisotopy(n2, basis_b, mon_b, e0, "eB", mtb, {})

    mon_c = monoid_sum(mon_a, mon_b)
    a_end0 = pa.endpoint(0)
    curvature = {
        (Fraction(1), 0): {"zA|eB": frac(lam_a)},
        (Fraction(1, 2), 2): {"eA|eB": frac(lam_b)},
    }
    m0c = tensor_dga(a_end0, m0b, mon_c, "modulo", e0, curvature)
    mtc = {key: {ins: {o: Poly.const(c) for o, c in cmb.items()}
                 for ins, cmb in tbl.items()} for key, tbl in m0c.ops.items()}
    mtc[(0, (Fraction(1), 0))] = {(): {"zA|eB": Poly([frac(lam_a),
                                                      frac(sig_a)])}}
    ctc = {(0, (Fraction(1), 0)): {(): {"xA|eB": Poly.const(
        sign_pow(n2) * sign_pow(n1 + 1) * frac(sig_a))}}}
    pc = Pseudoisotopy(n1 + n2, m0c.basis, mon_c, e0, "eA|eB", mtc, ctc)

    emb_a, emb_b = _tensor_embeddings(a_end0, m0b, m0c)

    def recut(alg, extra_ops, cutoff):
        ops = {key: {ins: dict(cmb) for ins, cmb in tbl.items()}
               for key, tbl in alg.ops.items()}
        for key, tbl in extra_ops.items():
            ops[key] = tbl
        return AInfAlgebra(alg.basis, alg.monoid, "modulo", cutoff, alg.unit,
                           ops, alg.window)

    m1a = recut(pa.endpoint(1), {}, e1)
    m1b = recut(pb.endpoint(1),
                {(0, (Fraction(3, 2), 2)): {(): {"eB": frac(rho_b)}}}, e1)
    m1c = recut(pc.endpoint(1),
                {(0, (Fraction(3, 2), 2)): {(): {"eA|eB": frac(rho_b)}}}, e1)
    return {"PA": pa, "PB": pb, "PC": pc, "embA": emb_a, "embB": emb_b,
            "m0A": m0a, "m0B": m0b, "m0C": m0c,
            "m1A": m1a, "m1B": m1b, "m1C": m1c, "E1": e1,
            "n1": n1, "n2": n2}
