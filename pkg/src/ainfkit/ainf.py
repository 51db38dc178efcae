"""Filtered A-infinity algebras with exact structure constants.

An algebra stores sparse operations m_{k,beta} on a finite graded basis,
indexed by arity k and an element beta = (E, mu) of an energy monoid.  Two
modes exist: "gapped" (finitely many beta, exact Novikov coefficients, no
truncation) and "modulo" (all data truncated at a cutoff energy E).

The quadratic relations are checked as exact identities: for every beta,
every n and every input tuple the double sum

    sum_{beta1+beta2=beta} sum_{0<=j<=n} sum_{1<=i<=n-j+1}
        (-1)^{||a_1||+...+||a_{i-1}||}
        m_{n-j+1,beta2}(a_1, ..., m_{j,beta1}(a_i, ..., a_{i+j-1}), ..., a_n)

must vanish.  Relation instances with n >= 2*maxArity are skipped: every
term then contains an operation of arity larger than maxArity, hence
vanishes identically (structural fact, not a checked approximation).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from ainfkit.scalars import (
    BETA_ZERO,
    EnergyMonoid,
    NovikovElement,
    frac,
    frac_str,
)
from ainfkit.signs import koszul_prefix_sign, sign_pow


def beta_norm(beta):
    return (frac(beta[0]), int(beta[1]))


def beta_json(beta):
    return [frac_str(beta[0]), beta[1]]


def beta_from_json(data):
    return (frac(data[0]), int(data[1]))


class AlgElement:
    """Linear combination of basis names with Novikov coefficients."""

    __slots__ = ("coeffs", "truncation")

    def __init__(self, coeffs=None, truncation=None):
        clean = {}
        for name, val in (coeffs or {}).items():
            if not isinstance(val, NovikovElement):
                val = NovikovElement.scalar(frac(val), truncation)
            if val.truncation != truncation:
                val = val.retruncate(truncation)
            if not val.is_zero():
                clean[name] = val
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "truncation", truncation)

    def __setattr__(self, *a):
        raise AttributeError("AlgElement is immutable")

    @staticmethod
    def zero(truncation=None) -> "AlgElement":
        return AlgElement({}, truncation)

    @staticmethod
    def basis(name, truncation=None) -> "AlgElement":
        return AlgElement({name: NovikovElement.scalar(1, truncation)}, truncation)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "AlgElement") -> "AlgElement":
        if self.truncation != other.truncation:
            raise ValueError("mismatched truncations in AlgElement addition")
        out = dict(self.coeffs)
        for name, val in other.coeffs.items():
            out[name] = out[name] + val if name in out else val
        return AlgElement(out, self.truncation)

    def __neg__(self) -> "AlgElement":
        return AlgElement({n: -v for n, v in self.coeffs.items()}, self.truncation)

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        return self + (-other)

    def scale(self, factor) -> "AlgElement":
        """Multiply by a Fraction or a NovikovElement."""
        if isinstance(factor, NovikovElement):
            if factor.truncation != self.truncation:
                factor = factor.retruncate(self.truncation)
            return AlgElement(
                {n: v * factor for n, v in self.coeffs.items()}, self.truncation
            )
        return AlgElement(
            {n: v * frac(factor) for n, v in self.coeffs.items()}, self.truncation
        )

    def coefficient(self, name) -> NovikovElement:
        return self.coeffs.get(name, NovikovElement.zero(self.truncation))

    def __eq__(self, other):
        return (
            isinstance(other, AlgElement)
            and self.truncation == other.truncation
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.truncation, tuple(sorted(
            (n, v) for n, v in self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "AlgElement(0)"
        return "AlgElement(" + " + ".join(
            f"({v!r})*{n}" for n, v in sorted(self.coeffs.items())) + ")"

    def to_json(self):
        return {n: v.to_json() for n, v in sorted(self.coeffs.items())}

    @staticmethod
    def from_json(data, truncation=None) -> "AlgElement":
        return AlgElement(
            {n: NovikovElement.from_json(v, truncation) for n, v in data.items()},
            truncation,
        )


class AInfAlgebra:
    """Finite-basis filtered A-infinity algebra with sparse exact operations.

    ops: dict {(k, beta): {input-name-tuple: {output-name: Fraction}}}.
    window: the subset of basis names over which relation instances with
    n >= 2 inputs are enumerated by check_ainf (defaults to the full basis).
    A truncated multiplication table generally cannot close on its whole
    basis, so the window declares where the table is exact; the relation
    with a single input is always scanned over the full basis.
    """

    __slots__ = ("basis", "monoid", "mode", "cutoff", "unit", "ops", "window",
                 "_degrees", "_names", "_splits_cache")

    def __init__(self, basis, monoid, mode="gapped", cutoff=None, unit=None,
                 ops=None, window=None):
        if mode not in ("gapped", "modulo"):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == "modulo":
            cutoff = frac(cutoff)
            if cutoff <= 0:
                raise ValueError("modulo mode needs a positive cutoff")
        elif cutoff is not None:
            raise ValueError("gapped mode takes no cutoff")
        basis = tuple((str(n), int(d)) for n, d in basis)
        names = [n for n, _ in basis]
        if len(set(names)) != len(names):
            raise ValueError("duplicate basis names")
        degrees = dict(basis)
        if unit is not None:
            if unit not in degrees:
                raise ValueError(f"unit {unit!r} not in basis")
            if degrees[unit] != 0:
                raise ValueError("unit must have degree 0")
        if window is None:
            window = tuple(names)
        else:
            window = tuple(window)
            for n in window:
                if n not in degrees:
                    raise ValueError(f"window name {n!r} not in basis")
        clean_ops = {}
        for (k, beta), table in (ops or {}).items():
            k = int(k)
            beta = beta_norm(beta)
            if k < 0:
                raise ValueError("negative arity")
            if beta not in monoid:
                raise ValueError(f"beta {beta} outside the energy monoid")
            if mode == "modulo" and beta[0] > cutoff:
                raise ValueError(f"stored beta {beta} above cutoff {cutoff}")
            clean_table = {}
            for inputs, combo in table.items():
                inputs = tuple(inputs)
                if len(inputs) != k:
                    raise ValueError(f"arity mismatch in inputs {inputs}")
                for nm in inputs:
                    if nm not in degrees:
                        raise ValueError(f"unknown basis name {nm!r}")
                target = sum(degrees[nm] for nm in inputs) + 2 - k - beta[1]
                clean_combo = {}
                for out, coeff in combo.items():
                    coeff = frac(coeff)
                    if coeff == 0:
                        continue
                    if out not in degrees:
                        raise ValueError(f"unknown output name {out!r}")
                    if degrees[out] != target:
                        raise ValueError(
                            f"degree violation at m_{k},{beta}{inputs} -> {out}: "
                            f"expected degree {target}, got {degrees[out]}"
                        )
                    clean_combo[out] = coeff
                if clean_combo:
                    clean_table[inputs] = clean_combo
            if clean_table:
                if (k, beta) == (0, BETA_ZERO):
                    raise ValueError("m_{0,0} must vanish")
                clean_ops[(k, beta)] = clean_table
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "monoid", monoid)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "cutoff", cutoff)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "ops", clean_ops)
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "_degrees", degrees)
        object.__setattr__(self, "_names", tuple(names))
        object.__setattr__(self, "_splits_cache", {})

    def __setattr__(self, *a):
        raise AttributeError("AInfAlgebra is immutable")

    # -- queries -------------------------------------------------------------
    @property
    def names(self):
        return self._names

    def degree(self, name) -> int:
        return self._degrees[name]

    @property
    def truncation(self):
        return self.cutoff if self.mode == "modulo" else None

    def max_arity(self) -> int:
        return max((k for k, _ in self.ops), default=0)

    def stored_betas(self):
        return sorted({beta for _, beta in self.ops})

    def op_table(self, k, beta):
        return self.ops.get((int(k), beta_norm(beta)), {})

    def op_on_names(self, k, beta, names):
        return self.op_table(k, beta).get(tuple(names), {})

    def beta_range(self):
        """All beta at which relations are checked, sorted.

        In modulo mode: the whole monoid up to the cutoff.  In gapped mode:
        the monoid up to twice the largest stored energy — any beta beyond
        that admits no split with both factors stored, so its relation
        instance is identically zero.
        """
        if self.mode == "modulo":
            return self.monoid.enumerate(self.cutoff)
        max_e = max((beta[0] for beta in self.stored_betas()), default=Fraction(0))
        return self.monoid.enumerate(2 * max_e)

    def beta_splits(self, beta):
        beta = beta_norm(beta)
        cached = self._splits_cache.get(beta)
        if cached is not None:
            return cached
        members = set(self.monoid.enumerate(beta[0]))
        if beta not in members:
            raise ValueError(f"beta {beta} outside the energy monoid")
        splits = []
        for b1 in sorted(members):
            b2 = (beta[0] - b1[0], beta[1] - b1[1])
            if b2 in members:
                splits.append((b1, b2))
        self._splits_cache[beta] = splits
        return splits

    def with_ops(self, ops) -> "AInfAlgebra":
        return AInfAlgebra(self.basis, self.monoid, self.mode, self.cutoff,
                           self.unit, ops, self.window)

    # -- serialization ---------------------------------------------------------
    def to_json(self):
        ops = []
        for (k, beta) in sorted(self.ops, key=lambda kb: (kb[0], kb[1])):
            for inputs in sorted(self.ops[(k, beta)]):
                for out in sorted(self.ops[(k, beta)][inputs]):
                    ops.append({
                        "k": k,
                        "beta": beta_json(beta),
                        "inputs": list(inputs),
                        "output": out,
                        "coeff": frac_str(self.ops[(k, beta)][inputs][out]),
                    })
        doc = {
            "space": {"basis": [[n, d] for n, d in self.basis]},
            "monoid": self.monoid.to_json(),
            "mode": self.mode,
            "ops": ops,
        }
        if self.cutoff is not None:
            doc["cutoff"] = frac_str(self.cutoff)
        if self.unit is not None:
            doc["unit"] = self.unit
        if self.window != self._names:
            doc["window"] = list(self.window)
        return doc

    @staticmethod
    def from_json(doc) -> "AInfAlgebra":
        ops = {}
        for entry in doc.get("ops", []):
            key = (int(entry["k"]), beta_from_json(entry["beta"]))
            table = ops.setdefault(key, {})
            combo = table.setdefault(tuple(entry["inputs"]), {})
            out = entry["output"]
            combo[out] = combo.get(out, Fraction(0)) + frac(entry["coeff"])
        return AInfAlgebra(
            basis=doc["space"]["basis"],
            monoid=EnergyMonoid.from_json(doc["monoid"]),
            mode=doc.get("mode", "gapped"),
            cutoff=frac(doc["cutoff"]) if "cutoff" in doc else None,
            unit=doc.get("unit"),
            ops=ops,
            window=tuple(doc["window"]) if "window" in doc else None,
        )


# -- evaluation ----------------------------------------------------------------

def eval_op(alg: AInfAlgebra, k: int, beta, inputs) -> AlgElement:
    """Multilinear extension of m_{k,beta} to Novikov-coefficient elements."""
    k = int(k)
    beta = beta_norm(beta)
    inputs = tuple(inputs)
    if len(inputs) != k:
        raise ValueError(f"expected {k} inputs, got {len(inputs)}")
    if beta not in alg.monoid:
        raise ValueError(f"beta {beta} outside the energy monoid")
    if alg.mode == "modulo" and beta[0] > alg.cutoff:
        raise ValueError(f"beta {beta} above cutoff {alg.cutoff}")
    trunc = alg.truncation
    table = alg.op_table(k, beta)
    if not table:
        return AlgElement.zero(trunc)
    acc = {}
    for combo in product(*[list(inp.coeffs.items()) for inp in inputs]):
        names = tuple(nm for nm, _ in combo)
        hit = table.get(names)
        if not hit:
            continue
        scalar = NovikovElement.scalar(1, trunc)
        for _, nov in combo:
            scalar = scalar * nov
        if scalar.is_zero():
            continue
        for out, coeff in hit.items():
            term = scalar * coeff
            acc[out] = acc[out] + term if out in acc else term
    return AlgElement(acc, trunc)


def eval_op_names(alg: AInfAlgebra, k: int, beta, names):
    """Structure constants of m_{k,beta} on a basis tuple, as Fractions."""
    return dict(alg.op_on_names(k, beta, names))


def ainf_defect(alg: AInfAlgebra, beta, names) -> AlgElement:
    """The full quadratic-relation sum at (beta, input tuple), as an element.

    Zero iff the relation holds on this instance.
    """
    beta = beta_norm(beta)
    names = tuple(names)
    n = len(names)
    degs = [alg.degree(nm) for nm in names]
    acc = {}
    for b_inner, b_outer in alg.beta_splits(beta):
        for j in range(n + 1):
            inner_table = alg.ops.get((j, b_inner))
            if not inner_table:
                continue
            outer_table = alg.ops.get((n - j + 1, b_outer))
            if not outer_table:
                continue
            for i in range(1, n - j + 2):
                inner = inner_table.get(names[i - 1:i - 1 + j])
                if not inner:
                    continue
                sign = koszul_prefix_sign(degs, i)
                prefix = names[:i - 1]
                suffix = names[i - 1 + j:]
                for mid, c_in in inner.items():
                    outer = outer_table.get(prefix + (mid,) + suffix)
                    if not outer:
                        continue
                    for out, c_out in outer.items():
                        acc[out] = acc.get(out, Fraction(0)) + sign * c_in * c_out
    trunc = alg.truncation
    return AlgElement(
        {o: NovikovElement.scalar(c, trunc) for o, c in acc.items() if c != 0},
        trunc,
    )


def _relation_tuples(alg: AInfAlgebra, n: int):
    if n == 0:
        return [()]
    if n == 1:
        return [(nm,) for nm in alg.names]
    return product(alg.window, repeat=n)


def check_ainf(alg: AInfAlgebra, max_counterexamples=None) -> dict:
    """Scan all relation instances; report the first counterexample per (beta, n)."""
    max_a = alg.max_arity()
    n_bound = max(2 * max_a - 1, 0)
    counterexamples = []
    betas = alg.beta_range()
    for beta in betas:
        splits = alg.beta_splits(beta)
        for n in range(n_bound + 1):
            # Skip (beta, n) when no (inner arity j, outer arity n-j+1) pair
            # has stored tables for any split: the sum is structurally zero.
            feasible = any(
                (j, b1) in alg.ops and (n - j + 1, b2) in alg.ops
                for b1, b2 in splits
                for j in range(n + 1)
            )
            if not feasible:
                continue
            for names in _relation_tuples(alg, n):
                defect = ainf_defect(alg, beta, names)
                if not defect.is_zero():
                    counterexamples.append({
                        "beta": beta_json(beta),
                        "n": n,
                        "inputs": list(names),
                        "defect": defect.to_json(),
                    })
                    break
            if max_counterexamples is not None and \
                    len(counterexamples) >= max_counterexamples:
                break
        if max_counterexamples is not None and \
                len(counterexamples) >= max_counterexamples:
            break
    return {
        "check": "ainf",
        "status": "PASS" if not counterexamples else "FAIL",
        "max_arity": max_a,
        "relation_arity_bound": n_bound,
        "betas_checked": [beta_json(b) for b in betas],
        "counterexamples": counterexamples,
    }


def check_unit(alg: AInfAlgebra) -> dict:
    """Verify the unit identities and the vanishing of other unit insertions."""
    if alg.unit is None:
        raise ValueError("algebra has no unit set")
    e = alg.unit
    violations = []
    for name in alg.names:
        left = eval_op_names(alg, 2, BETA_ZERO, (e, name))
        if left != {name: Fraction(1)}:
            violations.append({
                "clause": "left-unit", "element": name,
                "got": {o: frac_str(c) for o, c in sorted(left.items())},
            })
        right = eval_op_names(alg, 2, BETA_ZERO, (name, e))
        expected = {name: Fraction(sign_pow(alg.degree(name)))}
        if right != expected:
            violations.append({
                "clause": "right-unit", "element": name,
                "got": {o: frac_str(c) for o, c in sorted(right.items())},
            })
    for (k, beta) in sorted(alg.ops, key=lambda kb: (kb[0], kb[1])):
        if (k, beta) == (2, BETA_ZERO):
            continue
        for inputs in sorted(alg.ops[(k, beta)]):
            if e in inputs:
                violations.append({
                    "clause": "vanishing", "k": k, "beta": beta_json(beta),
                    "inputs": list(inputs),
                })
    return {
        "check": "unit",
        "status": "PASS" if not violations else "FAIL",
        "violations": violations,
    }


# -- deformation by bounding cochains -------------------------------------------

def validate_bounding_candidate(alg: AInfAlgebra, b: AlgElement):
    """Odd homogeneous degree and strictly positive energy valuation."""
    if b.truncation != alg.truncation:
        raise ValueError("bounding-cochain truncation differs from the algebra's")
    degs = {alg.degree(nm) for nm in b.coeffs}
    if len(degs) > 1:
        raise ValueError("bounding cochain must be homogeneous")
    if degs and next(iter(degs)) % 2 == 0:
        raise ValueError("bounding cochain must have odd degree")
    for nm, nov in b.coeffs.items():
        if nov.valuation() is not None and nov.valuation() <= 0:
            raise ValueError(
                f"coefficient of {nm} has a zero-energy component; "
                "insertion sums would not terminate"
            )


def eval_assembled(alg: AInfAlgebra, k: int, inputs) -> AlgElement:
    """m_k = sum_beta m_{k,beta} T^{E(beta)} applied to elements."""
    total = AlgElement.zero(alg.truncation)
    for (kk, beta) in alg.ops:
        if kk != k:
            continue
        val = eval_op(alg, k, beta, inputs)
        if not val.is_zero():
            total = total + val.scale(
                NovikovElement.monomial(1, beta[0], alg.truncation))
    return total


def _insertion_patterns(k: int, extra: int):
    """All (i_0, ..., i_k) with nonnegative entries summing to extra."""
    if k == 0:
        yield (extra,)
        return
    for first in range(extra + 1):
        for rest in _insertion_patterns(k - 1, extra - first):
            yield (first,) + rest


def deformed_eval(alg: AInfAlgebra, b: AlgElement, k: int, inputs) -> AlgElement:
    """m^b_k(a_1..a_k): all b-insertions, no extra Koszul signs (||b|| even)."""
    max_a = alg.max_arity()
    total = AlgElement.zero(alg.truncation)
    for big_k in range(k, max_a + 1):
        extra = big_k - k
        for pattern in _insertion_patterns(k, extra):
            args = []
            for slot, count in enumerate(pattern):
                args.extend([b] * count)
                if slot < k:
                    args.append(inputs[slot])
            total = total + eval_assembled(alg, big_k, tuple(args))
    return total


def deform(alg: AInfAlgebra, b: AlgElement) -> AInfAlgebra:
    """The b-deformed algebra m^b, presented with exact per-energy constants.

    Requires modulo mode (assemble gapped algebras first).  Each deformed
    operation splits by total energy; the Maslov index of each contribution
    is recovered from the degree rule, and is even because ||b|| is even.
    """
    if alg.mode != "modulo":
        raise ValueError("deform needs a truncated algebra; use assemble() first")
    validate_bounding_candidate(alg, b)
    max_a = alg.max_arity()
    new_ops = {}
    generators = set()
    for k in range(max_a + 1):
        for names in product(alg.names, repeat=k):
            basis_inputs = tuple(AlgElement.basis(nm, alg.truncation)
                                 for nm in names)
            val = deformed_eval(alg, b, k, basis_inputs)
            in_deg = sum(alg.degree(nm) for nm in names)
            for out, nov in val.coeffs.items():
                mu = in_deg + 2 - k - alg.degree(out)
                for energy, coeff in nov.terms:
                    beta = (energy, mu)
                    if beta != BETA_ZERO:
                        generators.add(beta)
                    table = new_ops.setdefault((k, beta), {})
                    combo = table.setdefault(names, {})
                    combo[out] = combo.get(out, Fraction(0)) + coeff
    monoid = EnergyMonoid(sorted(generators))
    return AInfAlgebra(alg.basis, monoid, "modulo", alg.cutoff, alg.unit,
                       new_ops, alg.window)


def mc_defect(alg: AInfAlgebra, b: AlgElement):
    """(P, remainder) with sum_k m_k(b,..,b) = P * e + remainder."""
    if alg.unit is None:
        raise ValueError("mc_defect needs a unit")
    validate_bounding_candidate(alg, b)
    total = AlgElement.zero(alg.truncation)
    for k in range(alg.max_arity() + 1):
        total = total + eval_assembled(alg, k, (b,) * k)
    p = total.coefficient(alg.unit)
    rest = AlgElement(
        {nm: v for nm, v in total.coeffs.items() if nm != alg.unit},
        alg.truncation,
    )
    return p, rest


def assemble(alg: AInfAlgebra, cutoff) -> AInfAlgebra:
    """Truncate a gapped algebra at a cutoff energy (modulo mode).

    Operations at boundary energy E(beta) = cutoff are kept as families but
    contribute zero to assembled Novikov elements after truncation.
    """
    cutoff = frac(cutoff)
    if alg.mode != "gapped":
        raise ValueError("assemble starts from a gapped algebra")
    ops = {key: tbl for key, tbl in alg.ops.items() if key[1][0] <= cutoff}
    return AInfAlgebra(alg.basis, alg.monoid, "modulo", cutoff, alg.unit,
                       ops, alg.window)


# -- mutation harness ------------------------------------------------------------

def constant_id(k, beta, inputs, out) -> str:
    beta = beta_norm(beta)
    return f"m{k}:{frac_str(beta[0])}/{beta[1]}:{','.join(inputs)}->{out}"


def constant_ids(alg: AInfAlgebra):
    """Deterministic list of every stored structure constant's identifier."""
    ids = []
    for (k, beta) in sorted(alg.ops, key=lambda kb: (kb[0], kb[1])):
        for inputs in sorted(alg.ops[(k, beta)]):
            for out in sorted(alg.ops[(k, beta)][inputs]):
                ids.append(constant_id(k, beta, inputs, out))
    return ids


def parse_constant_id(cid: str):
    head, ins, out = cid.rsplit(":", 2)[0], None, None
    kpart, betapart, rest = cid.split(":", 2)
    if not kpart.startswith("m"):
        raise ValueError(f"malformed constant id {cid!r}")
    k = int(kpart[1:])
    e_str, mu_str = betapart.rsplit("/", 1)
    beta = (frac(e_str), int(mu_str))
    ins_str, out = rest.split("->")
    inputs = tuple(s for s in ins_str.split(",") if s)
    del head, ins
    return k, beta, inputs, out


def flip_constant(alg: AInfAlgebra, cid: str) -> AInfAlgebra:
    """Return a copy of the algebra with one structure constant negated."""
    k, beta, inputs, out = parse_constant_id(cid)
    key = (k, beta_norm(beta))
    if key not in alg.ops or inputs not in alg.ops[key] \
            or out not in alg.ops[key][inputs]:
        raise KeyError(f"no stored constant {cid!r}")
    new_ops = {kb: {ins: dict(combo) for ins, combo in tbl.items()}
               for kb, tbl in alg.ops.items()}
    new_ops[key][inputs][out] = -new_ops[key][inputs][out]
    return alg.with_ops(new_ops)
