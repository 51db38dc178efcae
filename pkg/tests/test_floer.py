from fractions import Fraction

import pytest

from ainfkit.ainf import AlgElement
from ainfkit.floer import (
    algebra_cohomology,
    barcode,
    check_hf_kunneth,
    deformed_differential_matrix,
    hf_dimension,
    scalar_cohomology,
)
from ainfkit.models import barcode_fixture, derham_model, two_factor_gapped
from ainfkit.poly import matrix_rank_fraction_field


def test_scalar_cohomology_validation():
    with pytest.raises(ValueError):
        scalar_cohomology([[Fraction(1)]], [0])  # d^2 != 0
    with pytest.raises(ValueError):
        scalar_cohomology([[Fraction(0), Fraction(1)],
                           [Fraction(0), Fraction(0)]], [0, 0])  # not deg +1


def test_scalar_cohomology_two_term_complex():
    # d(x) = y kills both classes; e survives
    mat = [[Fraction(0)] * 3 for _ in range(3)]
    mat[2][1] = Fraction(1)
    out = scalar_cohomology(mat, [0, 0, 1])
    assert out["dims"] == {"0": 1, "1": 0}
    assert out["total"] == 1


def test_torus_cohomology_counts():
    t1 = algebra_cohomology(derham_model(1, 1))
    assert t1["dims"] == {"0": 1, "1": 1}
    t2 = algebra_cohomology(derham_model(2, 1))
    assert t2["dims"] == {"0": 1, "1": 2, "2": 1}


def test_deformed_matrix_squares_to_zero():
    two = two_factor_gapped()
    mat, n_den = deformed_differential_matrix(two["A"], two["b1"])
    assert n_den == 1
    square_rank = matrix_rank_fraction_field(
        [[sum((mat[i][k] * mat[k][j] for k in range(len(mat))),
              mat[0][0] - mat[0][0]) for j in range(len(mat))]
         for i in range(len(mat))])
    assert square_rank == 0


def test_deformed_matrix_refuses_truncated_input():
    from ainfkit.ainf import assemble
    two = two_factor_gapped()
    trunc = assemble(two["A"], 2)
    b1 = AlgElement({nm: nov.retruncate(2)
                     for nm, nov in two["b1"].coeffs.items()}, 2)
    with pytest.raises(ValueError):
        deformed_differential_matrix(trunc, b1)


def test_hf_dimensions_multiplicative():
    two = two_factor_gapped()
    assert hf_dimension(two["A"], two["b1"]) == 1
    assert hf_dimension(two["B"], two["b2"]) == 1
    report = check_hf_kunneth(two["embA"], two["embB"], two["b1"], two["b2"])
    assert report["status"] == "PASS"
    assert report["dim_C"] == report["dim_A"] * report["dim_B"] == 1


def test_barcode_fixture_bars():
    alg, b = barcode_fixture()
    report = barcode(alg, b)
    assert report["status"] == "PASS"
    assert report["bars"] == ["1"]
    assert report["free_rank"] == 1
    assert report["free_rank"] == hf_dimension(alg, b)


def test_barcode_fractional_energy():
    two = two_factor_gapped()
    report = barcode(two["B"], two["b2"])
    assert report["N"] == 2
    assert report["free_rank"] == hf_dimension(two["B"], two["b2"])
