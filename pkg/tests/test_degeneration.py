"""Witness verification: invertibility, transformed constants, limits,
verdicts, semicontinuity along verified edges, and the numeric cross-check."""

import pytest

from nilcert import catalog, files
from nilcert.algebra import GAUSSIAN_FIELD, StructureTable, TOWER_FIELD
from nilcert.degeneration import (DegenerationWitness, ParametricMatrix,
                                  SingularFamilyError, generic_invertibility,
                                  limit_table, numeric_crosscheck,
                                  transformed_constants, verify)
from nilcert.linalg import invert_matrix
from nilcert.parser import parse_expression
from nilcert.sampling import derive_rng, random_invertible
from nilcert.scalars import TowerElement


def matrix_of(lines):
    return ParametricMatrix([parse_expression(line) for line in lines])


def identity_matrix():
    return matrix_of(["e_1", "e_2", "e_3", "e_4", "e_5"])


A23_TO_A24 = ["t e_1 + e_2", "2t e_3", "2t e_2", "e_4", "e_5"]


# -- generic invertibility ---------------------------------------------------------


def test_identity_is_invertible():
    assert generic_invertibility(identity_matrix())


def test_table_witness_matrix_is_invertible():
    assert generic_invertibility(matrix_of(A23_TO_A24))


def test_repeated_rows_are_singular():
    m = matrix_of(["e_1", "e_1", "e_3", "e_4", "e_5"])
    assert not generic_invertibility(m)
    with pytest.raises(SingularFamilyError):
        transformed_constants(catalog.get("A_23").table, m)


# -- transformed constants -----------------------------------------------------------


def test_identity_basis_returns_own_table():
    table = catalog.get("A_23").table
    moved = transformed_constants(table, identity_matrix())
    assert moved == table.lift_to_tower()


def test_a23_constants_by_hand():
    # E_1 = t e_1 + e_2, E_2 = 2t e_3, E_3 = 2t e_2: E_1^2 = E_2 and
    # E_1 E_3 = t E_2, so c(1,1,2) = 1 and c(1,3,2) = t
    moved = transformed_constants(catalog.get("A_23").table, matrix_of(A23_TO_A24))
    assert moved.entry(0, 0, 1) == TowerElement.one()
    assert moved.entry(0, 2, 1) == TowerElement.t()


def test_radical_witness_constant_is_exact():
    # E_4 = sqrt((-1 - t^3)/t) e_2 + t e_3 squares to (-1/t) e_5 = E_5 exactly
    m = matrix_of(["e_1", "e_3", "e_4",
                   "sqrt((-1 - t^3)/t) e_2 + t e_3", "-(1/t) e_5"])
    moved = transformed_constants(catalog.get("A_02").table, m)
    assert moved.entry(3, 3, 4) == TowerElement.one()


# -- limit tables ----------------------------------------------------------------------


def test_limit_of_a23_constants():
    moved = transformed_constants(catalog.get("A_23").table, matrix_of(A23_TO_A24))
    limit = limit_table(moved)
    assert limit == catalog.get("A_24").table


def test_limit_failure_carries_index():
    bad = StructureTable(
        5, {(0, 0, 1): TowerElement.one() / TowerElement.t()}, TOWER_FIELD)
    from nilcert.degeneration import LimitFailure
    with pytest.raises(LimitFailure) as err:
        limit_table(bad)
    assert err.value.index == (1, 1, 2)


def test_constant_table_is_its_own_limit():
    table = catalog.get("A_12").table
    assert limit_table(table.lift_to_tower()) == table


# -- verdicts ------------------------------------------------------------------------------


def test_shipped_witness_verifies():
    verdict = verify(files.load_shipped_witness("a23_to_a24"))
    assert verdict.verified
    assert verdict.details["dim_der"] == {"source": 14, "target": 17}


def test_trivial_self_witness():
    verdict = verify(DegenerationWitness("A_24", "A_24", identity_matrix()))
    assert verdict.verified


def test_wrong_direction_is_a_mismatch():
    verdict = verify(DegenerationWitness("A_24", "A_23", identity_matrix()))
    assert verdict.status == "LIMIT_MISMATCH"
    assert verdict.details["mismatched_entries"]


def test_diverging_family_reported():
    m = matrix_of(["(1/t) e_1", "e_2", "e_3", "e_4", "e_5"])
    verdict = verify(DegenerationWitness("A_24", "A_24", m))
    assert verdict.status == "LIMIT_DIVERGES"
    assert verdict.details["failed_at"] == (1, 1, 2)


def test_branch_ambiguous_family_reported():
    # E_1 = sqrt(t) e_1 makes c(1,1,2) = sqrt(t)^2 / ... wait: for A_24,
    # E_1^2 = t e_2 = t E_2: fine. Use E_2 = sqrt(t) e_2 instead:
    # E_1^2 = e_2 = (1/sqrt(t)) E_2, order -1/2: branch ambiguous.
    m = matrix_of(["e_1", "sqrt(t) e_2", "e_3", "e_4", "e_5"])
    verdict = verify(DegenerationWitness("A_24", "A_24", m))
    assert verdict.status == "BRANCH_AMBIGUOUS"


def test_exceptional_values_recorded():
    verdict = verify(files.load_shipped_witness("a01_to_a03"))
    assert verdict.verified
    assert "2/3" in verdict.details["exceptional_t"]


def test_witness_conjugated_on_the_source_side_still_verifies():
    rng = derive_rng(23, "witness-conjugation")
    for wid in ("a23_to_a24", "a09_to_a11", "a13_to_a21"):
        witness = files.load_shipped_witness(wid)
        source = catalog.get(witness.source).table
        conjugation = random_invertible(rng, 5)
        inverse = invert_matrix(conjugation, GAUSSIAN_FIELD.zero,
                                GAUSSIAN_FIELD.one)
        moved_source = source.change_basis(conjugation)
        lifted_inverse = [[TowerElement.coerce(c) for c in row]
                          for row in inverse]
        new_rows = []
        for row in witness.matrix.rows:
            new_rows.append([
                sum((row[j] * lifted_inverse[j][k] for j in range(5)),
                    TowerElement.zero())
                for k in range(5)])
        moved = transformed_constants(moved_source, ParametricMatrix(new_rows))
        assert limit_table(moved) == catalog.get(witness.target).table, wid


def test_semicontinuity_along_every_shipped_witness():
    for wid, witness in files.load_all_witnesses():
        fp_s = catalog.fingerprint(catalog.get(witness.source).table)
        fp_t = catalog.fingerprint(catalog.get(witness.target).table)
        assert fp_s.dim_der < fp_t.dim_der, wid
        assert all(a >= b for a, b in zip(fp_s.power_dims, fp_t.power_dims)), wid
        assert fp_s.ann_dim <= fp_t.ann_dim, wid


def test_limit_tables_stay_in_the_variety():
    for wid in ("a01_to_a02", "a02_to_a06", "a11_to_a17"):
        witness = files.load_shipped_witness(wid)
        moved = transformed_constants(catalog.get(witness.source).table,
                                      witness.matrix)
        limit = limit_table(moved)
        report = limit.check_identities()
        assert report.commutative and report.associative, wid


# -- numeric cross-check --------------------------------------------------------------------


def test_numeric_deviation_is_small_near_zero():
    witness = DegenerationWitness("A_23", "A_24", matrix_of(A23_TO_A24))
    sample = numeric_crosscheck(witness, [1e-3])[0]
    assert sample.status == "ok"
    assert sample.max_deviation <= 1e-2


def test_numeric_deviation_is_large_far_from_zero():
    witness = DegenerationWitness("A_23", "A_24", matrix_of(A23_TO_A24))
    sample = numeric_crosscheck(witness, [1.0])[0]
    assert sample.max_deviation > 0.5


def test_numeric_identity_self_witness_is_exact():
    witness = DegenerationWitness("A_24", "A_24", identity_matrix())
    sample = numeric_crosscheck(witness, [1e-3])[0]
    assert sample.max_deviation == 0.0


def test_ill_conditioned_family_is_flagged():
    witness = files.load_shipped_witness("a01_to_a02")  # entries down to t^-7
    sample = numeric_crosscheck(witness, [1e-4])[0]
    assert sample.status == "ILL_CONDITIONED"
