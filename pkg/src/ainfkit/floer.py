"""Cohomology of deformed differentials, over exact scalars.

For a gapped algebra with energies in (1/N) * Z_{>=0} and a bounding cochain
b, the deformed differential m^b_1 has matrix entries in Q[q] with q = T^{1/N}.
Its rank over the fraction field Q(q) gives the cohomology dimension, and a
Smith normal form over the PID Q[q] gives the torsion-module barcode: each
invariant factor q^e contributes a bar of length e/N.
"""

from __future__ import annotations

from fractions import Fraction

from ainfkit.ainf import (
    AInfAlgebra,
    AlgElement,
    eval_op,
    mc_defect,
    validate_bounding_candidate,
)
from ainfkit.kunneth import SubalgebraEmbedding, _diff_matrix, _graded_dims, box_product
from ainfkit.poly import Poly, matrix_rank_fraction_field, smith_normal_form
from ainfkit.poly import rational_matrix_rank
from ainfkit.scalars import frac_str


def scalar_cohomology(matrix, grading) -> dict:
    """Cohomology of a degree +1 differential on a finite graded Q-space.

    matrix: square, columns are images of basis vectors, Fraction entries;
    grading: list of integer degrees, one per basis vector.  Returns the
    per-degree dimensions and a representative basis of each degree's
    cohomology (kernel vectors reduced against the incoming image).
    """
    n = len(grading)
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError("matrix shape does not match the grading")
    m2 = [[sum(matrix[i][k] * matrix[k][j] for k in range(n)) for j in range(n)]
          for i in range(n)]
    if any(x != 0 for row in m2 for x in row):
        raise ValueError("differential does not square to zero")
    for i in range(n):
        for j in range(n):
            if matrix[i][j] != 0 and grading[i] != grading[j] + 1:
                raise ValueError("differential does not have degree +1")
    names = list(range(n))
    degs = {i: grading[i] for i in names}
    dims = _graded_dims(names, degs, matrix)

    # Representatives: per degree, kernel vectors of the outgoing block that
    # are independent modulo the incoming image.
    by_deg = {}
    for i in names:
        by_deg.setdefault(grading[i], []).append(i)
    reps = {}
    from ainfkit.kunneth import _kernel_basis

    for d, idxs in sorted(by_deg.items()):
        tgt = by_deg.get(d + 1, [])
        block = [[matrix[i][j] for j in idxs] for i in tgt]
        kernel = _kernel_basis(block) if tgt else [
            [Fraction(1) if t == s else Fraction(0) for s in range(len(idxs))]
            for t in range(len(idxs))
        ]
        src = by_deg.get(d - 1, [])
        image_cols = [[matrix[i][j] for j in src] for i in idxs]
        chosen = []
        base_cols = [[image_cols[i][j] for i in range(len(idxs))]
                     for j in range(len(src))]
        for vec in kernel:
            trial = base_cols + [c for c in chosen] + [vec]
            rows = [[col[i] for col in trial] for i in range(len(idxs))]
            if rational_matrix_rank(rows) > rational_matrix_rank(
                    [[col[i] for col in base_cols + chosen]
                     for i in range(len(idxs))]):
                chosen.append(vec)
        reps[d] = [
            {str(idxs[i]): frac_str(v[i]) for i in range(len(idxs)) if v[i] != 0}
            for v in chosen
        ]
    total = sum(dims.values())
    return {
        "dims": {str(d): v for d, v in sorted(dims.items())},
        "total": total,
        "representatives": {str(d): reps[d] for d in sorted(reps) if reps[d]},
    }


def algebra_cohomology(alg: AInfAlgebra) -> dict:
    """Cohomology of the undeformed beta = 0 differential of an algebra."""
    return scalar_cohomology(_diff_matrix(alg), [alg.degree(nm) for nm in alg.names])


def _energy_denominator(alg: AInfAlgebra, b: AlgElement) -> int:
    from math import lcm

    dens = [1]
    dens += [beta[0].denominator for _, beta in alg.ops]
    for nov in b.coeffs.values():
        dens += [e.denominator for e, _ in nov.terms]
    return lcm(*dens)


def deformed_differential_matrix(alg: AInfAlgebra, b: AlgElement):
    """(matrix of m^b_1 over Q[q], N) with q = T^{1/N}.

    Requires a gapped algebra with a genuine bounding cochain (zero
    curvature remainder); asserts (m^b_1)^2 = 0 before returning.
    """
    if alg.mode != "gapped":
        raise ValueError("exact cohomology needs a gapped algebra; "
                         "truncated data only determines it up to the cutoff")
    validate_bounding_candidate(alg, b)
    _, rem = mc_defect(alg, b)
    if not rem.is_zero():
        raise ValueError("b does not satisfy the weak Maurer-Cartan equation")
    n_den = _energy_denominator(alg, b)
    names = alg.names
    idx = {nm: i for i, nm in enumerate(names)}
    size = len(names)
    mat = [[Poly.ZERO] * size for _ in range(size)]
    max_a = alg.max_arity()
    from ainfkit.ainf import _insertion_patterns

    for nm in names:
        x = AlgElement.basis(nm)
        total = AlgElement.zero()
        for big_k in range(1, max_a + 1):
            for pattern in _insertion_patterns(1, big_k - 1):
                args = [b] * pattern[0] + [x] + [b] * pattern[1]
                for (kk, beta) in alg.ops:
                    if kk != big_k:
                        continue
                    val = eval_op(alg, big_k, beta, tuple(args))
                    if not val.is_zero():
                        from ainfkit.scalars import NovikovElement
                        total = total + val.scale(
                            NovikovElement.monomial(1, beta[0]))
        for out, nov in total.coeffs.items():
            coeffs = {}
            for e, cf in nov.terms:
                power = e * n_den
                if power.denominator != 1:
                    raise ValueError("energy outside (1/N)Z lattice")
                coeffs[int(power)] = cf
            poly = Poly([coeffs.get(p, Fraction(0))
                         for p in range(max(coeffs) + 1)]) if coeffs else Poly.ZERO
            mat[idx[out]][idx[nm]] = poly
    square = [[sum((mat[i][k] * mat[k][j] for k in range(size)), Poly.ZERO)
               for j in range(size)] for i in range(size)]
    if any(not x.is_zero() for row in square for x in row):
        raise AssertionError("deformed differential does not square to zero")
    return mat, n_den


def hf_dimension(alg: AInfAlgebra, b: AlgElement) -> int:
    """dim over the Novikov field of the m^b_1 cohomology."""
    mat, _ = deformed_differential_matrix(alg, b)
    rank = matrix_rank_fraction_field(mat)
    return len(alg.names) - 2 * rank


def barcode(alg: AInfAlgebra, b: AlgElement) -> dict:
    """Bar lengths of the torsion part of the m^b_1 cohomology over Q[q].

    Monomial invariant factors q^e give finite bars of length e/N; any
    non-monomial factor is reported verbatim rather than converted.
    """
    mat, n_den = deformed_differential_matrix(alg, b)
    factors = smith_normal_form(mat)
    bars = []
    nonmonomial = []
    for f in factors:
        if f.is_monomial():
            bars.append(Fraction(f.degree(), n_den))
        else:
            nonmonomial.append(f.to_json())
    bars = [x for x in bars if x != 0]
    rank = len(factors)
    free_rank = len(alg.names) - 2 * rank
    return {
        "check": "barcode",
        "N": n_den,
        "bars": [frac_str(x) for x in sorted(bars)],
        "free_rank": free_rank,
        "nonmonomial_factors": nonmonomial,
        "status": "PASS" if not nonmonomial else "FAIL",
    }


def check_hf_kunneth(embA: SubalgebraEmbedding, embB: SubalgebraEmbedding,
                     b1: AlgElement, b2: AlgElement) -> dict:
    """Floer cohomology dimension is multiplicative under the box product."""
    box = box_product(embA, embB, b1, b2)
    dim_a = hf_dimension(embA.source, b1)
    dim_b = hf_dimension(embB.source, b2)
    dim_c = hf_dimension(embA.target, box["element"])
    ok = box["status"] == "PASS" and dim_c == dim_a * dim_b
    return {
        "check": "hf-kunneth",
        "status": "PASS" if ok else "FAIL",
        "box_status": box["status"],
        "dim_A": dim_a,
        "dim_B": dim_b,
        "dim_C": dim_c,
        "multiplicative": dim_c == dim_a * dim_b,
    }
