from fractions import Fraction

import pytest

from ainfkit.ainf import AlgElement, flip_constant, mc_defect
from ainfkit.kunneth import (
    SubalgebraEmbedding,
    box_product,
    check_commuting,
    check_kunneth_hypothesis,
    check_subalgebra,
    kunneth_K,
)
from ainfkit.models import (
    derham_factor_embeddings,
    derham_model,
    two_factor_gapped,
)
from ainfkit.scalars import NovikovElement


def test_embedding_validation():
    two = two_factor_gapped()
    emb = two["embA"]
    # degree-0, unit-to-unit, injective: accepted
    assert emb.source.unit == "eA"
    # non-injective map rejected
    with pytest.raises(ValueError):
        SubalgebraEmbedding(emb.source, emb.target,
                            {nm: {"eA|eB": Fraction(1)} for nm in
                             emb.source.names})


def test_derham_pair_subalgebra_and_commuting():
    emb_a, emb_b = derham_factor_embeddings(1, 1, 1)
    assert check_subalgebra(emb_a)["status"] == "PASS"
    assert check_subalgebra(emb_b)["status"] == "PASS"
    assert check_commuting(emb_a, emb_b)["status"] == "PASS"


def test_commuting_detects_broken_iota_twist():
    emb_a, emb_b = derham_factor_embeddings(1, 1, 1)
    # drop the (-1)^{|xi| n_1} twist on the second factor's odd generator:
    # negate its image coefficient
    iota_b = {nm: dict(combo) for nm, combo in emb_b.iota.items()}
    odd = next(nm for nm in emb_b.source.names
               if emb_b.source.degree(nm) == 1)
    iota_b[odd] = {tgt: -c for tgt, c in iota_b[odd].items()}
    broken = SubalgebraEmbedding(emb_b.source, emb_b.target, iota_b)
    reports = [check_subalgebra(broken)["status"],
               check_commuting(emb_a, broken)["status"]]
    assert "FAIL" in reports


def test_kunneth_hypothesis_minimal_torus_pair():
    target = derham_model(2, 1)
    emb_a, emb_b = derham_factor_embeddings(1, 1, 1, target=target,
                                            factor_w=0)
    report = check_kunneth_hypothesis(emb_a, emb_b)
    assert report["status"] == "PASS"
    assert report["K_rank"] == 4
    assert report["injective"]
    assert report["chain_map"]
    assert report["dim_H_source"] == 4
    assert report["dim_H_target"] == 4
    assert report["cohomology_bijective"]
    # classical count: 1, 2, 1 across degrees 0, 1, 2
    assert report["dims_by_degree_target"] == {"0": 1, "1": 2, "2": 1}


def test_kunneth_K_values():
    target = derham_model(2, 1)
    emb_a, emb_b = derham_factor_embeddings(1, 1, 1, target=target,
                                            factor_w=0)
    K = kunneth_K(emb_a, emb_b)
    a = AlgElement.basis(emb_a.source.names[0])
    b = AlgElement.basis(emb_b.source.names[0])
    img = K(a, b)
    assert not img.is_zero()
    # bilinearity over Novikov scalars
    s = NovikovElement.scalar(Fraction(3, 2))
    assert K(a.scale(s), b) == img.scale(s)


def test_gapped_fixture_pair():
    two = two_factor_gapped()
    assert check_subalgebra(two["embA"])["status"] == "PASS"
    assert check_subalgebra(two["embB"])["status"] == "PASS"
    assert check_commuting(two["embA"], two["embB"])["status"] == "PASS"


def test_commuting_mutation_sensitivity():
    two = two_factor_gapped()
    # break the product algebra's mixed (2,0) structure
    mutant = flip_constant(two["C"], "m2:0/0:xA|eB,eA|xB->xA|xB")
    emb_a = SubalgebraEmbedding(two["embA"].source, mutant, two["embA"].iota)
    emb_b = SubalgebraEmbedding(two["embB"].source, mutant, two["embB"].iota)
    assert check_commuting(emb_a, emb_b)["status"] == "FAIL"


def test_box_product_exactness():
    two = two_factor_gapped()
    report = box_product(two["embA"], two["embB"], two["b1"], two["b2"])
    assert report["status"] == "PASS"
    assert report["potential_additive"]
    assert report["element"] == \
        two["embA"].apply(two["b1"]) + two["embB"].apply(two["b2"])
    # the combined cochain solves weak MC on the product directly
    _, rem = mc_defect(two["C"], report["element"])
    assert rem.is_zero()


def test_box_product_wrong_candidate_fails():
    two = two_factor_gapped()
    bad = two["b1"].scale(NovikovElement.scalar(2))
    report = box_product(two["embA"], two["embB"], bad, two["b2"])
    assert report["status"] == "FAIL"
