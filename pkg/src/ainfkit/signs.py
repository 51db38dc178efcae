"""Degree bookkeeping and Koszul sign calculus.

Degrees are plain integers; all signs depend only on parities.  The shifted
degree of a is |a| - 1, and it is the shifted degree that feeds every
insertion sign in the quadratic relations.
"""

from __future__ import annotations


def shifted(degree: int) -> int:
    """Shifted degree ||a|| = |a| - 1."""
    return degree - 1


def sign_pow(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def koszul_prefix_sign(degrees, i: int) -> int:
    """(-1) to the sum of shifted degrees strictly before position i.

    Positions are 1-based: i = 1 means an empty prefix.  This is the sign
    (-1)^* with * = sum_{l=1}^{i-1} ||a_l|| appearing in the quadratic
    relation when an inner operation is inserted at slot i.
    """
    if not (1 <= i <= len(degrees) + 1):
        raise IndexError(f"insertion index {i} out of range for {len(degrees)} entries")
    return sign_pow(sum(shifted(d) for d in degrees[: i - 1]))


def reorder_sign(degrees, perm) -> int:
    """Koszul sign of reordering graded symbols by a permutation.

    perm[j] is the source position whose entry lands in target slot j, i.e.
    the reordered list is [entries[perm[0]], entries[perm[1]], ...].  The
    sign is accumulated by adjacent transpositions, each contributing
    (-1)^{|x||y|} for the pair it swaps.
    """
    n = len(degrees)
    perm = list(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of 0..{n - 1}")
    # Bubble the permutation to the identity, tracking graded swap signs.
    work = perm[:]
    exp = 0
    for j in range(n):
        pos = work.index(j)
        while pos > j:
            a, b = work[pos - 1], work[pos]
            exp += degrees[a] * degrees[b]
            work[pos - 1], work[pos] = b, a
            pos -= 1
    return sign_pow(exp)


def gamma_ledger(degs_b, deg_a: int, deg_b: int, n1: int, n2: int, k: int, i: int):
    """The five intermediate parities of the mixed-insertion sign computation.

    degs_b: degrees |b_1|..|b_k| of the second-factor inputs; deg_a, deg_b the
    degrees of the inserted pair; n1, n2 the two dimension parities; i the
    insertion slot (0 <= i <= k).  Returns (g1..g5) as parities in {0,1}.
    """
    if not (0 <= i <= k):
        raise ValueError("insertion slot i must satisfy 0 <= i <= k")
    if len(degs_b) != k:
        raise ValueError("degree list length must equal k")
    a, b = deg_a, deg_b
    bl = degs_b  # 0-indexed; b_l in formulas is bl[l-1]
    sum_all = sum(bl)
    sum_le_i = sum(bl[:i])

    g1 = (
        sum((k + 1 - l) * bl[l - 1] for l in range(1, i + 1))
        + (k - i) * (a + b)
        + sum((k - l) * bl[l - 1] for l in range(i + 1, k + 1))
        + k * (k - 1) // 2
        + n2 * a
        + n1 * (b + sum_all)
    )
    g2 = g1 + a * sum_le_i
    g3 = g2 + (k + 1) * (a + n1)
    g4 = g3 + (
        sum((k + 1 - l) * bl[l - 1] for l in range(1, i + 1))
        + (k - i) * b
        + sum((k - l) * bl[l - 1] for l in range(i + 1, k + 1))
        + k * (k - 1) // 2
    )
    g5 = g4 + n2 * a + n1 * (b + sum_all + k + 1)
    return tuple(g % 2 for g in (g1, g2, g3, g4, g5))


def gamma_ledger_check(degs_b, deg_a: int, deg_b: int, n1: int, n2: int, k: int, i: int):
    """Compute gamma1..gamma5 mod 2 and test the closed-form identity.

    holds is True iff gamma5 == |a| * (1 + sum_{l<=i} ||b_l||) mod 2.
    """
    gammas = gamma_ledger(degs_b, deg_a, deg_b, n1, n2, k, i)
    target = (deg_a * (1 + sum(shifted(d) for d in degs_b[:i]))) % 2
    return gammas, gammas[4] == target
