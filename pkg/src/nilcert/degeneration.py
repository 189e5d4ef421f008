"""Verification of degenerations from parametric bases.

A witness for "source degenerates to target" is a t-parametrized basis
E_i(t) = sum_j a_ij(t) e_j of the source algebra.  Verification is exact:

1. the family must be generically invertible (det as a field element != 0;
   the finitely many exceptional t values are reported, never silently used),
2. the structure constants of the source in the E-basis are computed over the
   exact function-field tower,
3. every constant must have a branch-independent limit at t -> 0, and the
   limit table must equal the target's table entry for entry, with no
   tolerance.

A successful verdict additionally cross-checks the strict increase of the
derivation dimension for proper claims.  A floating-point spot evaluation of
the exact constants at small t is available as an advisory sanity check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import catalog
from .algebra import GAUSSIAN_FIELD, TOWER_FIELD, StructureTable
from .derivations import derivation_dimension
from .linalg import det, invert_matrix, vec_matmul
from .scalars import (BranchAmbiguous, GaussianRational, LimitDiverges, Poly,
                      TowerElement)

VERIFIED = "VERIFIED"
SINGULAR_FAMILY = "SINGULAR_FAMILY"
LIMIT_DIVERGES = "LIMIT_DIVERGES"
LIMIT_MISMATCH = "LIMIT_MISMATCH"
BRANCH_AMBIGUOUS = "BRANCH_AMBIGUOUS"


class SingularFamilyError(ValueError):
    """The parametric basis is singular as a family (det = 0 identically)."""


class LimitFailure(Exception):
    """Entrywise limit failed; carries the 1-based (i, j, k) and the reason."""

    def __init__(self, index, reason, detail):
        super().__init__(f"c{index}: {reason} ({detail})")
        self.index = index
        self.reason = reason
        self.detail = detail


class ParametricMatrix:
    """Rows are the parametric basis vectors, entries exact tower elements."""

    __slots__ = ("rows", "radicand")

    def __init__(self, rows):
        self.rows = tuple(tuple(TowerElement.coerce(c) for c in row) for row in rows)
        radicand = None
        for row in self.rows:
            for c in row:
                if c.radicand is not None:
                    if radicand is not None and radicand != c.radicand:
                        raise ValueError("parametric matrix mixes two radicands")
                    radicand = c.radicand
        self.radicand = radicand

    @property
    def dim(self) -> int:
        return len(self.rows)

    def det(self) -> TowerElement:
        zero, one = TOWER_FIELD.zero, TOWER_FIELD.one
        return det([list(r) for r in self.rows], zero, one)

    def eval_complex(self, at: complex):
        return [[c.eval_complex(at) for c in row] for row in self.rows]

    def exceptional_values(self):
        """Rational t values where the family breaks down (poles, det zeros).

        Roots are extracted by the rational root theorem when the relevant
        polynomial has rational coefficients; other factors are reported as
        polynomial strings since exact root-finding over Q(i) is out of scope.
        """
        candidates = set()
        unresolved = []
        polys = []
        for row in self.rows:
            for c in row:
                polys.append(c.base.den)
                if c.radicand is not None:
                    polys.append(c.rad.den)
                    polys.append(c.radicand.den)
        d = self.det()
        for part in (d.base, d.rad):
            if not part.is_zero:
                polys.append(part.num)
        for p in polys:
            if p.degree <= 0:
                continue
            roots, fully_solved = _rational_roots(p)
            candidates.update(r for r in roots if r != 0)
            if not fully_solved:
                unresolved.append(repr(p))
        return sorted(candidates), sorted(set(unresolved))


def _rational_roots(p: Poly):
    """Nonzero rational roots via the rational root theorem.

    Returns (roots, fully_solved); fully_solved is False when non-rational
    coefficients or a residual factor of positive degree remain.
    """
    if any(c.im for c in p.coeffs):
        return [], False
    coeffs = list(p.coeffs)
    order = p.order
    coeffs = coeffs[order:]
    scale = 1
    for c in coeffs:
        scale = scale * c.re.denominator // _gcd(scale, c.re.denominator)
    ints = [int(c.re * scale) for c in coeffs]
    if len(ints) == 1:
        return [], True
    roots = []
    residual_degree = len(ints) - 1
    lead, const = ints[-1], ints[0]
    for num in _divisors(abs(const)):
        for den in _divisors(abs(lead)):
            for sign in (1, -1):
                cand = Fraction(sign * num, den)
                if sum(c * cand ** k for k, c in enumerate(ints)) == 0:
                    if cand not in roots:
                        roots.append(cand)
    # a root of multiplicity > 1 or an irrational factor may remain; report
    # fully_solved only when the found roots account for the whole degree
    total = 0
    for r in roots:
        m = 0
        work = ints
        while True:
            quo, rem = _poly_int_divmod(work, r)
            if rem != 0:
                break
            work = quo
            m += 1
        total += m
    return roots, total == residual_degree


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    if n == 0:
        return [1]
    out = [d for d in range(1, abs(n) + 1) if n % d == 0]
    return out


def _poly_int_divmod(ints, root):
    """Synthetic division of an integer-coefficient poly by (x - root)."""
    quo = [Fraction(0)] * (len(ints) - 1)
    carry = Fraction(0)
    for k in range(len(ints) - 1, 0, -1):
        carry = Fraction(ints[k]) + carry
        quo[k - 1] = carry
        carry = carry * root
    rem = Fraction(ints[0]) + carry
    return quo, rem


@dataclass(frozen=True)
class DegenerationWitness:
    source: str
    target: str
    matrix: ParametricMatrix
    witness_id: str = ""


@dataclass
class Verdict:
    status: str
    source: str
    target: str
    details: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED


def generic_invertibility(matrix: ParametricMatrix) -> bool:
    """det != 0 as a field element: a basis for all but finitely many t."""
    return not matrix.det().is_zero


def transformed_constants(source: StructureTable,
                          matrix: ParametricMatrix) -> StructureTable:
    """Structure constants of the source in the parametric basis.

    This is an exact change of basis over the function-field tower; raises
    SingularFamilyError when the family is identically singular.
    """
    lifted = source if source.field is TOWER_FIELD else source.lift_to_tower()
    if not generic_invertibility(matrix):
        raise SingularFamilyError("parametric basis has identically zero determinant")
    zero, one = TOWER_FIELD.zero, TOWER_FIELD.one
    rows = [list(r) for r in matrix.rows]
    inverse = invert_matrix(rows, zero, one)
    entries = {}
    n = source.dim
    for i in range(n):
        for j in range(i, n):
            prod = lifted.multiply(rows[i], rows[j])
            coords = vec_matmul(prod, inverse, zero)
            for k, c in enumerate(coords):
                if not c.is_zero:
                    entries[(i, j, k)] = c
                    if i != j:
                        entries[(j, i, k)] = c
    return StructureTable(n, entries, TOWER_FIELD)


def limit_table(param: StructureTable) -> StructureTable:
    """Entrywise limit at t -> 0; raises LimitFailure with the offending index."""
    entries = {}
    for (i, j, k), c in sorted(param.entries.items()):
        c = TowerElement.coerce(c)
        try:
            value = c.limit_at_zero()
        except LimitDiverges as exc:
            raise LimitFailure((i + 1, j + 1, k + 1), LIMIT_DIVERGES, str(exc)) from exc
        except BranchAmbiguous as exc:
            raise LimitFailure((i + 1, j + 1, k + 1), BRANCH_AMBIGUOUS, str(exc)) from exc
        if not value.is_zero:
            entries[(i, j, k)] = value
    return StructureTable(param.dim, entries, GAUSSIAN_FIELD)


def verify(witness: DegenerationWitness) -> Verdict:
    """Full exact verification of one parametric-basis witness."""
    source = catalog.get(witness.source)
    target = catalog.get(witness.target)
    details = {}

    exceptional, unresolved = witness.matrix.exceptional_values()
    details["exceptional_t"] = [str(x) for x in exceptional]
    if unresolved:
        details["unresolved_factors"] = unresolved

    if not generic_invertibility(witness.matrix):
        return Verdict(SINGULAR_FAMILY, witness.source, witness.target, details)

    param = transformed_constants(source.table, witness.matrix)
    try:
        limit = limit_table(param)
    except LimitFailure as failure:
        details["failed_at"] = failure.index
        details["reason"] = failure.detail
        return Verdict(failure.reason, witness.source, witness.target, details)

    if limit != target.table:
        diff = _table_diff(limit, target.table)
        details["mismatched_entries"] = diff
        return Verdict(LIMIT_MISMATCH, witness.source, witness.target, details)

    der_source = derivation_dimension(source.table)
    der_target = derivation_dimension(target.table)
    details["dim_der"] = {"source": der_source, "target": der_target}
    proper = witness.source != witness.target
    details["der_check"] = "ok" if (der_source < der_target if proper
                                    else der_source == der_target) else "violated"
    return Verdict(VERIFIED, witness.source, witness.target, details)


def _table_diff(got: StructureTable, want: StructureTable):
    diff = []
    keys = sorted(set(got.entries) | set(want.entries))
    for (i, j, k) in keys:
        g = got.entry(i, j, k)
        w = want.entry(i, j, k)
        if g != w:
            diff.append({"index": [i + 1, j + 1, k + 1],
                         "got": repr(g), "want": repr(w)})
    return diff


# -- advisory numeric cross-check -------------------------------------------------


ILL_CONDITIONED = "ILL_CONDITIONED"


@dataclass
class NumericSample:
    t: float
    status: str            # "ok" or ILL_CONDITIONED
    max_deviation: float
    condition_estimate: float


def numeric_crosscheck(witness: DegenerationWitness, t_samples,
                       condition_bound: float = 1e12):
    """Evaluate the exact transformed constants at small complex t.

    Reports the max absolute deviation from the target constants per sample,
    choosing the principal branch for the radical.  Samples whose E-matrix
    condition estimate exceeds the bound are flagged ILL_CONDITIONED and the
    deviation is advisory only.
    """
    source = catalog.get(witness.source)
    target = catalog.get(witness.target)
    param = transformed_constants(source.table, witness.matrix)
    samples = []
    for t in t_samples:
        t = complex(t)
        cond = _condition_estimate(witness.matrix.eval_complex(t))
        deviation = 0.0
        for i in range(param.dim):
            for j in range(param.dim):
                for k in range(param.dim):
                    c = param.entry(i, j, k)
                    value = c.eval_complex(t) if isinstance(c, TowerElement) else 0j
                    wanted = target.table.entry(i, j, k)
                    wanted_c = wanted.eval_complex() if isinstance(
                        wanted, GaussianRational) else 0j
                    deviation = max(deviation, abs(value - wanted_c))
        status = ILL_CONDITIONED if cond > condition_bound else "ok"
        samples.append(NumericSample(abs(t), status, deviation, cond))
    return samples


def _condition_estimate(matrix) -> float:
    """Frobenius condition number of a small complex matrix (inf if singular)."""
    n = len(matrix)
    aug = [list(row) + [1.0 + 0j if i == j else 0j for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        piv, piv_abs = None, 0.0
        for r in range(col, n):
            if abs(aug[r][col]) > piv_abs:
                piv, piv_abs = r, abs(aug[r][col])
        if piv is None or piv_abs == 0.0:
            return float("inf")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    norm = sum(abs(matrix[i][j]) ** 2 for i in range(n) for j in range(n)) ** 0.5
    inv_norm = sum(abs(aug[i][n + j]) ** 2 for i in range(n) for j in range(n)) ** 0.5
    return norm * inv_norm
