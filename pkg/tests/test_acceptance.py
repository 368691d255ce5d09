"""Acceptance suite: one test per criterion, exact tolerances, printed verdicts.

Run with:  pytest tests/test_acceptance.py -v -s
"""

import pytest

from circfam.analysis import (
    IsolationSet,
    all_one_submatrix_check,
    audit_pair_decomposition,
    check_q_cap,
    is_isolation_set,
    max_isolation_lower_bound,
)
from circfam.boolmat import BoolMatrix, CirculantSpec, circulant, rotate_rows
from circfam.constructions import (
    circulant_factor_identity,
    construct_blowup,
    construct_mid_p,
    construct_recursive_q2,
    construct_small_p,
    marker_positions,
)
from circfam.families import intersection_matrix
from circfam.search import SearchProblem, decide_embedding, sweep

FIGURE_MATRIX = [
    "10000111",
    "11000011",
    "11100001",
    "11110000",
    "01111000",
    "00111100",
    "00011110",
    "00001111",
]


def _report(number: int, description: str) -> None:
    print(f"ACCEPTANCE {number:2d} PASS: {description}")


def test_criterion_01_reference_matrix_reproduction():
    assert circulant(CirculantSpec(4, 4)).to_text() == "\n".join(FIGURE_MATRIX)
    _report(1, "circulant(4,4) equals the reference 8x8 matrix entry for entry")


def test_criterion_02_factor_identity_exhaustive():
    cases = 0
    for z in range(1, 13):
        for i in range(1, z + 1):
            for j in range(1, z - i + 2):
                _, _, prod = circulant_factor_identity(i, j, z)
                assert prod == circulant(CirculantSpec(i + j - 1, z - i - j + 1)), (i, j, z)
                cases += 1
    assert cases == 364
    _report(2, f"factor product equals the band matrix in all {cases} cases with z <= 12")


def test_criterion_03_small_p_sweep():
    cells = 0
    for t in range(2, 7):
        for p in range(1, 2 * t):
            for q in range(1, 7):
                k = q + 2 * t - 1
                report = construct_small_p(t, p, q, k)
                m = intersection_matrix(report.pair)
                assert m == circulant(CirculantSpec(p, q))
                assert report.k_used == q + 2 * t - 1
                if p == 1:
                    assert m == BoolMatrix.identity(q + 1)
                cells += 1
    assert cells == 210
    _report(3, f"small-p construction verified on all {cells} cells, k_used = q+2t-1")


def test_criterion_04_isolation_extremes():
    for t in (2, 3, 4):
        k = 4 * t - 3
        p, q = 2 * t - 1, k - 2 * t + 1
        report = construct_small_p(t, p, q, k)
        m = intersection_matrix(report.pair)
        diag = IsolationSet(tuple((i, i) for i in range(k)))
        assert is_isolation_set(m, diag)
        if t in (2, 3):
            res = max_isolation_lower_bound(m)
            assert res.exhausted and res.size == k
    _report(4, "diagonal isolation sets verified for t=2,3,4; maximum is exactly k for t=2,3")


def test_criterion_05_mid_p_sweep():
    cells = 0
    for t in range(2, 6):
        for p in range(2 * t, t * t + 1):
            for q in range(1, 5):
                report = construct_mid_p(t, p, q)
                m = intersection_matrix(report.pair)
                assert m == rotate_rows(circulant(CirculantSpec(p, q)), p + q - 1)
                assert report.k_used == p + q
                cells += 1
    fig = construct_mid_p(3, 6, 2)
    assert fig.trace["l1"] == 2 and fig.trace["l2"] == 0
    assert fig.trace["x1"] == (0, 0, 0, 0, 1, 0, 1, 1)
    assert fig.trace["x1"][2:5] == (0, 0, 1)  # the length-t marker block
    _report(5, f"mid-p construction verified on all {cells} cells incl. the t=3,p=6,q=2 layout")


def test_criterion_06_blowup_sweep():
    from math import comb

    for t, q in ((2, 1), (2, 2), (3, 1), (3, 3), (4, 2), (4, 4), (6, 3)):
        report = construct_blowup(t, q)
        expected_p = q * (comb(2 * t // q, t // q) - 1)
        assert report.spec.p == expected_p
        assert report.k_used <= 3 * t - t // q
        m = intersection_matrix(report.pair)
        assert m == rotate_rows(
            circulant(CirculantSpec(expected_p, q)), expected_p + q - 1
        )
    _report(6, "blowup construction verified on all seven (t, q) cells with the stated p and k")


def test_criterion_07_recursive_q2():
    for t in (3, 4, 5, 6):
        p = 2**t + 2 ** (t - 2) - 2
        n = p + 2
        report = construct_recursive_q2(t)
        assert report.spec == CirculantSpec(p, 2)
        m = intersection_matrix(report.pair)
        assert m == rotate_rows(circulant(CirculantSpec(p, 2)), n - 1)
        h = n // 2
        pos = marker_positions(report)
        assert pos["a_cols"] == tuple(range(1, h + 1))
        assert pos["a_rows"] == tuple(range(h + 1, n))
        assert pos["b_cols"] == tuple(range(h + 1, n + 1))
        assert pos["b_rows"] == tuple(range(1, h))
    _report(7, "doubling construction verified for t=3..6 (orders 10, 20, 40, 80) incl. markers")


@pytest.fixture(scope="module")
def characterization_witnesses():
    """Witnesses and refutations for t=2, p=5 (shared with criterion 9)."""
    results = {}
    results[(5, 1)] = decide_embedding(SearchProblem(k=5, t=2, p=5, q=1))
    results[(6, 3)] = decide_embedding(SearchProblem(k=6, t=2, p=5, q=3))
    for q in (2, 4):
        for k in range(4, 9):
            results[(k, q)] = decide_embedding(SearchProblem(k=k, t=2, p=5, q=q))
    return results


def test_criterion_08_t2_p5_characterization(characterization_witnesses):
    results = characterization_witnesses
    assert results[(5, 1)].status == "witness"
    assert results[(6, 3)].status == "witness"
    for q in (2, 4):
        for k in range(4, 9):
            out = results[(k, q)]
            assert out.status == "nonexistent" and out.exhausted, (k, q)
    _report(8, "t=2, p=5: witnesses at (q=1,k=5) and (q=3,k=6); q=2,4 refuted for all k <= 8")


def test_criterion_09_q_cap_invariant(characterization_witnesses):
    # construction witnesses with q >= p-1 obey q <= k - 2t + 1 (tight by design)
    checked = 0
    for t in range(2, 7):
        for p in range(1, 2 * t):
            for q in range(1, 7):
                if q < p - 1:
                    continue
                k = q + 2 * t - 1
                report = construct_small_p(t, p, q, k)
                assert check_q_cap(report.pair, report.spec, witness_k=k)
                checked += 1
    # search witnesses from criterion 8 in the proven range (none have q >= p-1,
    # so the cap is vacuous there; verify the guards agree)
    for (k, q), out in characterization_witnesses.items():
        if out.status == "witness":
            assert q < 5 - 1  # p = 5: outside the proven q range
    # no witness exists beyond the cap: t=2, k=6 admits nothing with q > 3 for p <= 3
    for record in sweep(2, [1, 2, 3], [4, 5, 6], [6]):
        assert record.status == "nonexistent", (record.p, record.q)
    _report(9, f"q-cap holds on {checked} construction certificates; no witness beyond q=3 at k=6")


def test_criterion_10_decomposition_audits():
    audited = 0
    for t in range(2, 7):
        for p in range(1, 2 * t):
            for q in range(1, 7):
                if q < p - 1:
                    continue
                report = construct_small_p(t, p, q, q + 2 * t - 1)
                audit = audit_pair_decomposition(report.pair, report.spec, report.shift)
                assert audit.ok, (t, p, q, audit.violations)
                audited += 1
    for t in range(2, 6):
        for p in range(2 * t, t * t + 1):
            for q in range(1, 5):
                if q < p - 1:
                    continue
                report = construct_mid_p(t, p, q)
                audit = audit_pair_decomposition(report.pair, report.spec, report.shift)
                assert audit.ok, (t, p, q, audit.violations)
                audited += 1
    assert audited
    _report(10, f"zero violations across {audited} audited factor pairs with q >= p-1")


def test_criterion_11_all_one_bound():
    cases = 0
    for n in range(2, 15):
        for p in range(1, n):
            assert all_one_submatrix_check(CirculantSpec(p, n - p)), (p, n - p)
            cases += 1
    assert cases == sum(n - 1 for n in range(2, 15))
    _report(11, f"all-one submatrix bound i+j <= p+1 holds for all {cases} specs with order <= 14")
