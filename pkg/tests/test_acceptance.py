"""End-to-end acceptance checks, one test per shipped guarantee.

Every equality here is exact: no tolerances, no floating point anywhere.
"""

import itertools
import json
import time
from fractions import Fraction

from ainfkit.ainf import (
    ainf_defect,
    check_ainf,
    check_unit,
    constant_ids,
    flip_constant,
    mc_defect,
    parse_constant_id,
)
from ainfkit.cli import main as cli_main
from ainfkit.floer import barcode, check_hf_kunneth, hf_dimension
from ainfkit.isotopy import check_commuting_isotopy, check_pseudoisotopy, \
    extend_one_level
from ainfkit.kunneth import SubalgebraEmbedding, box_product, \
    check_commuting, check_kunneth_hypothesis, check_subalgebra
from ainfkit.models import (
    barcode_fixture,
    commuting_isotopy_fixture,
    derham_factor_embeddings,
    derham_model,
    extension_fixture,
    two_factor_gapped,
)
from ainfkit.scalars import BETA_ZERO
from ainfkit.signs import gamma_ledger_check
from ainfkit.torus import appendix_suite


# -- criterion 1: quadratic relations on the T^2 de Rham model -------------------

def _find_witness(alg, prod_index, funcs, cid):
    """A relation instance whose defect becomes nonzero when cid is flipped."""
    _, _, inputs, _ = parse_constant_id(cid)
    candidates = [tuple(inputs)]
    for g in funcs:
        for pos in range(len(inputs) + 1):
            candidates.append(inputs[:pos] + (g,) + inputs[pos:])
    for i, x in enumerate(inputs):
        for pair in prod_index.get(x, ()):
            candidates.append(inputs[:i] + pair + inputs[i + 1:])
    for tup in candidates:
        if not ainf_defect(alg, BETA_ZERO, tup).is_zero():
            return tup
    return None


def test_criterion_1_ainf_relations_and_full_mutation_sensitivity():
    start = time.monotonic()
    alg = derham_model(2, 1)
    assert check_ainf(alg)["status"] == "PASS"

    ids = constant_ids(alg)
    unit = alg.unit
    funcs = [nm for nm in alg.names
             if alg.degree(nm) == 0 and nm != unit]
    prod_index = {}
    for ins, combo in alg.ops[(2, BETA_ZERO)].items():
        if unit in ins:
            continue
        for out in combo:
            prod_index.setdefault(out, []).append(ins)

    undetected = []
    for cid in ids:
        mutant = flip_constant(alg, cid)
        if _find_witness(mutant, prod_index, funcs, cid) is None:
            undetected.append(cid)
    assert undetected == [], f"no witness for {len(undetected)} flips"
    assert time.monotonic() - start < 30


def test_criterion_1_cli_mutation_exit_codes(fixture_path):
    spec = fixture_path("derham_t2.json")
    assert cli_main(["check-ainf", spec]) == 0
    samples = [
        "m1:0/0:f1_1;d->f1_1;d1",
        "m2:0/0:f1_0;d,f0_1;d->f1_1;d",
        "m2:0/0:f0_0;d,f0_0;d1->f0_0;d1",
        "m2:0/0:f1_0;d1,f0_1;d2->f1_1;d12",
    ]
    for cid in samples:
        assert cli_main(["check-ainf", spec, "--mutate", f"flip:{cid}"]) == 1


# -- criterion 2: unit axioms -----------------------------------------------------

def test_criterion_2_unit_axioms_and_twist_sensitivity():
    bundled = [derham_model(1, 1), derham_model(2, 1)]
    two = two_factor_gapped()
    bundled += [two["A"], two["B"], two["C"]]
    ext = extension_fixture()
    bundled += [ext["m0"], ext["m1"]]
    for alg in bundled:
        assert check_unit(alg)["status"] == "PASS"
    # removing the (-1)^{|a|} twist on any odd-degree element must fail
    t1 = derham_model(1, 1)
    odd = [nm for nm in t1.names if t1.degree(nm) % 2 == 1]
    assert odd
    for nm in odd:
        broken = flip_constant(t1, f"m2:0/0:{nm},{t1.unit}->{nm}")
        report = check_unit(broken)
        assert report["status"] == "FAIL"
        assert any(v["clause"] == "right-unit" and v["element"] == nm
                   for v in report["violations"])


# -- criterion 3: commuting circle factors inside the torus ----------------------

def test_criterion_3_commuting_subalgebras_and_kunneth_count():
    emb_a, emb_b = derham_factor_embeddings(1, 1, 1)
    assert check_subalgebra(emb_a)["status"] == "PASS"
    assert check_subalgebra(emb_b)["status"] == "PASS"
    assert check_commuting(emb_a, emb_b)["status"] == "PASS"

    target = derham_model(2, 1)
    min_a, min_b = derham_factor_embeddings(1, 1, 1, target=target,
                                            factor_w=0)
    report = check_kunneth_hypothesis(min_a, min_b)
    assert report["status"] == "PASS"
    assert report["K_rank"] == 4 and report["injective"]
    assert report["chain_map"]
    assert report["dim_H_source"] == 4
    assert report["dim_H_target"] == 4  # 2 * 2, the classical count
    assert report["cohomology_bijective"]


# -- criterion 4: box product against an independent MC expansion ----------------

def _brute_force_mc(alg, b_terms):
    """Order-by-order Maurer-Cartan expansion from the raw tables.

    b_terms: list of (name, energy, coeff).  Returns {name: {energy: coeff}}
    for sum_k m_k(b, ..., b), computed without any library evaluators.
    """
    total = {}
    for (k, beta), table in alg.ops.items():
        for combo in itertools.product(b_terms, repeat=k):
            names = tuple(nm for nm, _, _ in combo)
            outputs = table.get(names)
            if not outputs:
                continue
            energy = beta[0] + sum(e for _, e, _ in combo)
            scalar = Fraction(1)
            for _, _, c in combo:
                scalar *= c
            for out, cf in outputs.items():
                slot = total.setdefault(out, {})
                slot[energy] = slot.get(energy, Fraction(0)) + scalar * cf
    return {nm: {e: c for e, c in slot.items() if c != 0}
            for nm, slot in total.items()
            if any(c != 0 for c in slot.values())}


def test_criterion_4_box_product_exact_with_oracle():
    two = two_factor_gapped()
    assert not two["b1"].is_zero()  # genuinely nontrivial first factor
    report = box_product(two["embA"], two["embB"], two["b1"], two["b2"])
    assert report["status"] == "PASS"
    assert report["potential_additive"]
    _, rem = mc_defect(two["C"], report["element"])
    assert rem.is_zero()

    bc = report["element"]
    b_terms = [(nm, e, c) for nm, nov in bc.coeffs.items()
               for e, c in nov.terms]
    oracle = _brute_force_mc(two["C"], b_terms)
    # the expansion collapses onto the unit: remainder exactly zero
    assert set(oracle) == {two["C"].unit}
    expected_p = {e: c for e, c in report["P_C"].terms}
    assert oracle[two["C"].unit] == expected_p


# -- criterion 5: cohomology dimension multiplicativity --------------------------

def test_criterion_5_hf_kunneth_and_barcode_consistency():
    two = two_factor_gapped()
    report = check_hf_kunneth(two["embA"], two["embB"], two["b1"], two["b2"])
    assert report["status"] == "PASS"
    assert report["dim_C"] == report["dim_A"] * report["dim_B"]

    cases = [(two["A"], two["b1"]), (two["B"], two["b2"]),
             (two["C"], two["embA"].apply(two["b1"]) +
              two["embB"].apply(two["b2"])),
             barcode_fixture()]
    for alg, b in cases:
        rep = barcode(alg, b)
        assert rep["status"] == "PASS"
        assert rep["free_rank"] == hf_dimension(alg, b)


# -- criterion 6: extension along a pseudoisotopy --------------------------------

def test_criterion_6_extension_transport():
    fix = extension_fixture()
    pr = fix["params"]
    m_ext, p_ext = extend_one_level(fix["m0"], fix["m1"], fix["P"])
    assert m_ext.cutoff == 2
    assert check_ainf(m_ext)["status"] == "PASS"
    # hand-computed transport: the one-input level-2 constant acquires
    # -2 * sig * zeta from the correction insertions
    assert m_ext.ops[(1, (Fraction(2), 0))][("x",)] == \
        {"z": pr["nu"] - 2 * pr["sig"] * pr["zeta"]}
    # the extended family satisfies the differential equation exactly and
    # interpolates the two endpoints
    assert check_pseudoisotopy(p_ext, m0=m_ext, m1=fix["m1"])["status"] == \
        "PASS"
    # trivial isotopy: new-level constants come through verbatim
    triv = extension_fixture(sig=0)
    m_triv, _ = extend_one_level(triv["m0"], triv["m1"], triv["P"])
    for key, tbl in triv["m1"].ops.items():
        if key[1][0] == 2:
            assert m_triv.ops[key] == tbl


# -- criterion 7: commuting isotopies ---------------------------------------------

def test_criterion_7_commuting_isotopy_and_preservation(fixture_path):
    fix = commuting_isotopy_fixture()
    assert check_commuting_isotopy(fix["PC"], fix["PA"], fix["PB"],
                                   fix["embA"], fix["embB"])["status"] == \
        "PASS"
    m_ext_a, _ = extend_one_level(fix["m0A"], fix["m1A"], fix["PA"])
    m_ext_b, _ = extend_one_level(fix["m0B"], fix["m1B"], fix["PB"])
    m_ext_c, _ = extend_one_level(fix["m0C"], fix["m1C"], fix["PC"])
    emb_a = SubalgebraEmbedding(m_ext_a, m_ext_c, fix["embA"].iota)
    emb_b = SubalgebraEmbedding(m_ext_b, m_ext_c, fix["embB"].iota)
    assert check_subalgebra(emb_a)["status"] == "PASS"
    assert check_subalgebra(emb_b)["status"] == "PASS"
    assert check_commuting(emb_a, emb_b)["status"] == "PASS"
    # dropping the dimension-parity factor on the product correction (the
    # second factor has odd dimension here) must be detected
    assert cli_main(["check-commuting-isotopy",
                     fixture_path("commuting_isotopy.json"),
                     "--mutate", "flip:ic0:1/0:->xA|eB"]) == 1


# -- criterion 8: randomized exact identity suite on tori ------------------------

def test_criterion_8_torus_suite_200_trials():
    start = time.monotonic()
    report = appendix_suite(7, 200)
    elapsed = time.monotonic() - start
    assert report["status"] == "PASS"
    assert len(report["groups"]) == 8
    for group in report["groups"]:
        assert group["status"] == "PASS"
        assert group["trials"] == 200
    assert elapsed < 60


# -- criterion 9: sign-ledger identity --------------------------------------------

def test_criterion_9_gamma_ledger_exhaustive():
    for k in range(5):
        for degs in itertools.product(range(4), repeat=k):
            for a, b in itertools.product(range(4), repeat=2):
                for n1, n2 in itertools.product(range(4), repeat=2):
                    for i in range(k + 1):
                        _, holds = gamma_ledger_check(
                            list(degs), a, b, n1, n2, k, i)
                        assert holds


# -- criterion 10: byte-identical reports -----------------------------------------

def test_criterion_10_report_determinism(fixture_path, tmp_path):
    commands = [
        ["check-ainf", fixture_path("derham_t1.json")],
        ["check-commuting", fixture_path("kunneth_derham.json")],
        ["box-product", fixture_path("gapped_product.json")],
        ["barcode", fixture_path("barcode_simple.json")],
        ["extend", fixture_path("isotopy_extend.json")],
        ["check-commuting-isotopy", fixture_path("commuting_isotopy.json")],
        ["torus-suite", "--seed", "11", "--trials", "20"],
    ]
    for ci, argv in enumerate(commands):
        payloads = []
        for run in range(3):
            dest = tmp_path / f"c{ci}_r{run}.json"
            code = cli_main(argv + ["--report", str(dest)])
            assert code == 0
            payloads.append(dest.read_bytes())
        assert payloads[0] == payloads[1] == payloads[2]
        json.loads(payloads[0])  # well-formed machine-readable output
