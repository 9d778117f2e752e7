from fractions import Fraction

import pytest

from dessin_forge.classification import (
    KNOWN_DISCREPANCIES,
    _verdict,
    abelian_baseline,
    admissible_params,
    corollary_row,
    decomposition_report,
    group_signature,
    isomorphic_groups,
    noniso_table,
    published_genus,
    theorem_sweep,
    verify_family,
)
from dessin_forge.groups import build_group
from dessin_forge.report import MATCH, MISMATCH, PAPER_DISCREPANCY
from dessin_forge.specs import AbelianSquare, Family, Quaternion


def F(*args):
    return Family(*args)


def test_admissible_params_small():
    assert admissible_params(8) == [F("iii", 2, 2)]
    assert admissible_params(7) == []


def test_admissible_params_2187():
    params = set(admissible_params(2187))
    for expected in [
        F("i", 3, 1, 1), F("i", 3, 2, 1), F("i", 3, 2, 2), F("i", 5, 1, 1), F("i", 7, 1, 1),
        F("ii", 2, 2, 1), F("ii", 2, 3, 1), F("ii", 2, 3, 2), F("ii", 2, 4, 1),
        F("iii", 2, 2), F("iii", 2, 3), F("iii", 2, 4),
    ]:
        assert expected in params
    assert all(build_group(p).order <= 2187 for p in params)
    assert F("iii", 2, 5) not in params  # order 4096


@pytest.mark.parametrize(
    "params, order, aut, genus",
    [
        (F("i", 5, 1, 1), 125, 12000, 26),
        (F("i", 3, 1, 1), 27, 432, 1),
        (F("ii", 2, 3, 1), 128, 6144, 41),
        (F("ii", 2, 2, 1), 32, 384, 5),
    ],
    ids=str,
)
def test_corollary_rows_families_i_ii(params, order, aut, genus):
    row = corollary_row(params)
    assert (row.order_computed, row.aut_computed, row.genus_computed) == (order, aut, genus)
    n = params.p**params.a
    assert row.type_computed == (n, n, n)
    assert set(row.verdicts.values()) == {MATCH}


@pytest.mark.parametrize("a", [2, 3, 4])
def test_corollary_family_iii(a):
    row = corollary_row(F("iii", 2, a))
    assert row.order_computed == 2 ** (3 * a - 3)
    assert row.aut_computed == 3 * 2 ** (6 * a - 9)
    assert row.genus_computed == 2 ** (2 * a - 4) * (2**a - 3) + 1
    assert row.order_paper == 2 ** (3 * a - 4)
    assert row.verdicts == {
        "order": PAPER_DISCREPANCY,
        "aut": MATCH,
        "type": MATCH,
        "genus": PAPER_DISCREPANCY,
    }


@pytest.mark.parametrize("p", [3, 5, 7])
def test_heisenberg_aut_order_against_gl2(p):
    # Aut of the extraspecial group of order p^3 and exponent p: p^2 |GL(2, p)|
    gl2 = (p * p - 1) * (p * p - p)
    assert corollary_row(F("i", p, 1, 1)).aut_computed == p * p * gl2


def test_family_iii_a2_reproduces_quaternion_genus():
    row = corollary_row(F("iii", 2, 2))
    assert row.order_paper == 4 and row.order_computed == 8
    assert row.genus_computed == 2
    assert published_genus(F("iii", 2, 2)) == Fraction(3, 2)


def test_verdict_allowlist_is_narrow():
    assert _verdict("corollary", "order", "iii", 4, 8) == PAPER_DISCREPANCY
    assert _verdict("corollary", "order", "ii", 4, 8) == MISMATCH
    assert _verdict("corollary", "aut", "iii", 1, 2) == MISMATCH
    assert _verdict("corollary", "order", "i", 8, 8) == MATCH
    assert all(len(k) == 3 for k in KNOWN_DISCREPANCIES)


@pytest.mark.parametrize("params", [F("i", 3, 1, 1), F("ii", 2, 2, 1), F("iii", 2, 3)], ids=str)
def test_verify_family(params):
    report = verify_family(params)
    assert report.ok
    expected_mult = 2 if params.family == "iii" else 1
    assert report.find("multiplicity").computed_value == expected_mult
    assert report.find("dessin classes").computed_value == 1


def test_signature_row_ii():
    derived, abel = group_signature(build_group(F("ii", 2, 3, 1)))
    assert derived == [2] and abel == [8, 8]


def test_noniso_table_reports_row_ii_discrepancy():
    params = admissible_params(512)
    report = noniso_table(params)
    assert report.ok
    row = report.find("derived subgroup invariants", subject=str(F("ii", 2, 3, 1)))
    assert row.verdict == PAPER_DISCREPANCY
    assert row.paper_value == [4] and row.computed_value == [2]
    abel = report.find("abelianisation invariants", subject=str(F("ii", 2, 3, 1)))
    assert abel.verdict == PAPER_DISCREPANCY and abel.computed_value == [8, 8]
    pair_rows = [e for e in report.entries if e.claim.startswith("non-isomorphic")]
    assert pair_rows and all(e.computed_value is True for e in pair_rows)


def test_isomorphic_groups_search(q8):
    assert isomorphic_groups(build_group(F("iii", 2, 2)), q8)
    assert not isomorphic_groups(build_group(F("ii", 2, 2, 1)), build_group(AbelianSquare(2, 2)))


@pytest.mark.parametrize("p, a", [(2, 1), (3, 1), (2, 2)])
def test_abelian_baseline(p, a):
    report = abelian_baseline(p, a)
    assert report.ok
    assert report.find("dessin classes").computed_value == 1


def test_abelian_baseline_v4_values():
    report = abelian_baseline(2, 1)
    assert report.find("type").computed_value == (2, 2, 2)
    assert report.find("genus").computed_value == 0
    assert report.find("cyclic classes = psi").computed_value == 3


def test_theorem_sweep_512():
    report = theorem_sweep(512)
    assert report.ok
    assert {e.subject for e in report.discrepancies} == {str(F("iii", 2, a)) for a in (2, 3, 4)}
    unique = [e for e in report.entries if e.claim == "dessin classes"]
    assert len(unique) == len(admissible_params(512))
    assert all(e.computed_value == 1 for e in unique)


def test_theorem_sweep_workers_deterministic():
    params = admissible_params(128)
    one = theorem_sweep(128, params=params).to_json_lines()
    two = theorem_sweep(128, workers=2, params=params).to_json_lines()
    assert one == two


def test_decomposition_report():
    report = decomposition_report(Quaternion(), F("i", 3, 1, 1))
    assert report.ok
    assert report.find("classes multiply over coprime factors").computed_value == 1
