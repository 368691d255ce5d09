import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circfam.boolmat import BoolMatrix, CirculantSpec, bool_product, is_cyclic_variant
from circfam.errors import CertificateError, DimensionError, UniformityError
from circfam.families import (
    FamilyPair,
    SetFamily,
    Subset,
    family_from_matrix_rows,
    intersection_matrix,
    is_q_almost_cross_intersecting,
    pair_from_document,
    pair_to_document,
    read_certificate,
    write_certificate,
)

from oracles import intersection_oracle


def _pair(rows, cols, k, t):
    return FamilyPair(
        SetFamily.from_element_lists(rows, k, t),
        SetFamily.from_element_lists(cols, k, t),
    )


def test_identity_pair():
    pair = _pair([[1, 2], [3, 4]], [[1, 2], [3, 4]], 4, 2)
    assert intersection_matrix(pair) == BoolMatrix.identity(2)


def test_disjoint_supports_give_all_zero():
    pair = _pair([[1, 2], [1, 3], [2, 3]], [[4, 5], [4, 6], [5, 6]], 6, 2)
    assert intersection_matrix(pair) == BoolMatrix.all_zero(3, 3)


def test_all_two_subsets_of_four_realize_the_crown():
    # rows ordered so member i+3 is the complement of member i; columns are the
    # rows cyclically shifted by one position
    rows = [[1, 2], [1, 3], [1, 4], [3, 4], [2, 4], [2, 3]]
    cols = rows[1:] + rows[:1]
    pair = _pair(rows, cols, 4, 2)
    m = intersection_matrix(pair)
    assert m == intersection_oracle(rows, cols)
    ok, shift = is_cyclic_variant(m, CirculantSpec(5, 1))
    assert ok and shift == 1
    assert is_q_almost_cross_intersecting(pair, 1)


def test_family_from_matrix_rows():
    fam = family_from_matrix_rows(BoolMatrix.from_bits([[1, 1, 0, 0], [0, 0, 1, 1]]), 2)
    assert fam.element_lists() == [[1, 2], [3, 4]]
    fam = family_from_matrix_rows(BoolMatrix.identity(3), 1)
    assert fam.element_lists() == [[1], [2], [3]]


def test_family_from_matrix_rows_names_offending_row():
    bad = BoolMatrix.from_bits([[1, 1, 0], [1, 0, 0]])
    with pytest.raises(UniformityError, match="row 1"):
        family_from_matrix_rows(bad, 2)


def test_family_from_small_p_factor():
    from circfam.constructions import construct_small_p

    report = construct_small_p(2, 3, 2, 5)
    x = report.trace["factor_x"]
    fam = family_from_matrix_rows(x, 2)
    assert len(fam) == 5 and fam.k == 5 and fam.t == 2


def test_q_almost_cross_intersecting():
    pair = _pair([[1, 2], [3, 4]], [[1, 2], [3, 4]], 4, 2)
    assert is_q_almost_cross_intersecting(pair, 1)
    assert not is_q_almost_cross_intersecting(pair, 0)
    with pytest.raises(DimensionError):
        is_q_almost_cross_intersecting(
            FamilyPair(
                SetFamily.from_element_lists([[1, 2]], 4, 2),
                SetFamily.from_element_lists([[1, 2], [3, 4]], 4, 2),
            ),
            1,
        )


def test_mismatched_ground_sets_rejected():
    rows = SetFamily.from_element_lists([[1, 2]], 4, 2)
    cols = SetFamily.from_element_lists([[1, 2]], 5, 2)
    with pytest.raises(DimensionError):
        FamilyPair(rows, cols)


def test_round_trip_family_matrix():
    fam = SetFamily.from_element_lists([[1, 3], [2, 4], [3, 4]], 4, 2)
    assert family_from_matrix_rows(fam.as_row_matrix(), 2) == fam


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_intersection_matrix_equals_characteristic_product(data):
    k = data.draw(st.integers(2, 6), label="k")
    t = data.draw(st.integers(1, k - 1), label="t")
    size = data.draw(st.integers(1, 6), label="size")
    universe = list(range(1, k + 1))
    members = st.lists(
        st.sets(st.sampled_from(universe), min_size=t, max_size=t),
        min_size=size,
        max_size=size,
    )
    rows = [sorted(s) for s in data.draw(members, label="rows")]
    cols = [sorted(s) for s in data.draw(members, label="cols")]
    pair = _pair(rows, cols, k, t)
    x = pair.rows.as_row_matrix()
    y = pair.cols.as_row_matrix().transpose()
    assert intersection_matrix(pair) == bool_product(x, y)
    assert intersection_matrix(pair) == intersection_oracle(rows, cols)


def test_cyclic_variant_implies_q_almost():
    from circfam.constructions import construct_mid_p

    report = construct_mid_p(2, 4, 2)
    m = intersection_matrix(report.pair)
    ok, _ = is_cyclic_variant(m, report.spec)
    assert ok
    assert is_q_almost_cross_intersecting(report.pair, report.spec.q)


def test_same_members_ignores_order():
    a = SetFamily.from_element_lists([[1, 2], [3, 4]], 4, 2)
    b = SetFamily.from_element_lists([[3, 4], [1, 2]], 4, 2)
    assert a != b and a.same_members(b)
    c = SetFamily.from_element_lists([[1, 3], [2, 4]], 4, 2)
    assert not a.same_members(c)


def test_subset_validation():
    with pytest.raises(Exception):
        Subset.from_elements([0], 4)
    with pytest.raises(Exception):
        Subset.from_elements([5], 4)
    s = Subset.from_elements([2, 4], 4)
    assert s.elements() == (2, 4) and s.size == 2


def test_certificate_round_trip(tmp_path):
    pair = _pair([[1, 2], [3, 4]], [[1, 2], [3, 4]], 4, 2)
    spec = CirculantSpec(1, 1)
    path = tmp_path / "cert.json"
    write_certificate(str(path), pair, spec, 0)
    got_pair, got_spec, got_shift = read_certificate(str(path))
    assert got_pair == pair and got_spec == spec and got_shift == 0
    doc = pair_to_document(pair, spec, 0)
    assert list(doc) == ["k", "t", "p", "q", "shift", "rows", "cols"]
    assert pair_from_document(doc)[0] == pair


def test_certificate_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{ not json")
    with pytest.raises(CertificateError, match="line"):
        read_certificate(str(path))
    with pytest.raises(CertificateError, match="missing key"):
        pair_from_document({"k": 4})
    doc = {
        "k": 4, "t": 2, "p": 1, "q": 1, "shift": 0,
        "rows": [[1, 2], [3]], "cols": [[1, 2], [3, 4]],
    }
    with pytest.raises(CertificateError):
        pair_from_document(doc)


def test_certificate_file_is_valid_json(tmp_path):
    pair = _pair([[1, 2]], [[1, 2]], 4, 2)
    path = tmp_path / "c.json"
    write_certificate(str(path), pair, CirculantSpec(1, 0), 0)
    doc = json.loads(path.read_text())
    assert doc["rows"] == [[1, 2]]
