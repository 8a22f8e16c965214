import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtrunc.analysis import (
    ScanResult,
    corn_value,
    is_unimodal,
    scan_cor_ineq,
    scan_corn,
    scan_unimodal,
)
from qtrunc.errors import InvalidParameters, RangeTooSmall
from qtrunc.identities import Budget, build_sides, get
from qtrunc.partitions import gf_coefficients, truncated_theta_series
from qtrunc.series import mul_one_minus


def as_table(series, offset=0):
    """``{(m, n): c}`` from a series over ``(q, z)``."""
    out = {}
    for (n, m), c in series.items():
        out[(m, n - offset)] = c
    return out


# -- cross-checks against the catalog ------------------------------------------------

@pytest.mark.parametrize("family, tag", [("JkI", "TJS1"), ("JkII", "TJS2")])
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_tables_agree_with_both_sides_of_the_catalog_entry(family, tag, k):
    n_max, window = 25, 20
    ctxs, sides = build_sides(get(tag), {"k": k + 1}, Budget(n_max, (-window, window)))
    table = gf_coefficients(family, n_max, k=k, m_max=window)
    expected = {mn: c for mn, c in table.counts.items()}
    for side, series in sides.items():
        got = as_table(series, ctxs[side].offset)
        assert got == expected, side


@pytest.mark.parametrize("family", ["JkI", "JkII"])
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_multiplying_by_one_minus_factors(family, k):
    n_max = 25
    f = truncated_theta_series(family, k, n_max, m_max=n_max)
    t = f.table
    negatives = {}
    for name, mono in (("qz", t.mono(q=1, z=1)), ("q/z", t.mono(q=1, z=-1))):
        g = mul_one_minus(f, mono)
        bad = sorted((m, n, c) for (n, m), c in g.items() if c < 0 and abs(m) <= n_max - 2 and n >= 1)
        if bad:
            negatives[name] = bad
    if family == "JkII" and k == 0:
        # the k = 0 member keeps an isolated z q^0 term without a (1 - qz) factor
        assert negatives == {"qz": [(2, 1, -1)]}
    else:
        assert negatives == {}


# -- inequality scans --------------------------------------------------------------

def test_family_one_nonnegative_small():
    r = scan_cor_ineq("I", "nonneg", 2, 12, 12)
    assert r.ok and r.count == 3 * 12 * 25


def test_family_two_shift_minus_has_one_exception_at_k0():
    r = scan_cor_ineq("II", "shift_minus", 3, 20, 20)
    assert r.violations == [(0, 2, 1, -1)]
    assert scan_cor_ineq("II", "shift_minus", 3, 20, 20, k_min=1).ok


def test_cor_ineq_rejects_bad_arguments():
    with pytest.raises(InvalidParameters):
        scan_cor_ineq("III", "nonneg", 1, 5, 5)
    with pytest.raises(InvalidParameters):
        scan_cor_ineq("I", "sideways", 1, 5, 5)
    with pytest.raises(InvalidParameters):
        scan_cor_ineq("I", "nonneg", 1, -1, 5)


def test_corn_jg_k0_is_two_term_difference():
    r = scan_corn("JG", 0, 10, 10)
    assert r.ok
    t = gf_coefficients("JG", 10)
    for n in range(1, 11):
        for m in range(-n, n + 1):
            two_term = t.get(m, n) - (t.get(m - 1, n - 1) if abs(m - 1) <= n - 1 else 0)
            assert corn_value(t, "JG", 0, m, n) == two_term


@pytest.mark.parametrize("stat", ["JE", "JT", "JG"])
def test_corn_holds_for_positive_n(stat):
    assert scan_corn(stat, 3, 20, 20, n_min=1).ok


def test_corn_exceptions_sit_at_n_zero():
    expected = {
        "JE": [(1, 0, 0, -1), (3, 0, 0, -1)],
        "JT": [(1, 0, 0, -1), (2, 1, 0, -1), (3, 0, 0, -1)],
        "JG": [(1, 0, 0, -1), (3, 0, 0, -1)],
    }
    for stat, viol in expected.items():
        assert scan_corn(stat, 3, 12, 12).violations == viol


def test_corn_range_too_small():
    small = gf_coefficients("JE", 10, m_max=3)
    with pytest.raises(RangeTooSmall):
        scan_corn("JE", 2, 10, 3, table=small)
    with pytest.raises(RangeTooSmall):
        scan_corn("JE", 1, 12, 2, table=gf_coefficients("JE", 10))
    assert scan_corn("JE", 1, 10, 4, table=gf_coefficients("JE", 10), n_min=1).ok


# -- unimodality -------------------------------------------------------------------

def test_unimodal_examples():
    assert is_unimodal([5])
    assert is_unimodal([])
    assert is_unimodal([1, 2, 2, 3, 1, 1])
    assert not is_unimodal([1, 0, 1])
    assert not is_unimodal([0, 2, 1, 2, 0])


def test_unimodal_scanner_reports_injected_sequence():
    rows = lambda k: {1: [1, 0, 1], 2: [1, 2, 1]}
    r = scan_unimodal(0, 2, rows=rows)
    assert r.violations == [(0, None, 1, [1, 0, 1])]


def test_unimodal_small_range_is_clean():
    r = scan_unimodal(2, 15)
    assert r.ok and r.count == 3 * 15


@given(st.lists(st.integers(-3, 3), max_size=12))
def test_unimodal_reversal_invariant(seq):
    assert is_unimodal(seq) == is_unimodal(seq[::-1])


@given(st.lists(st.integers(0, 5), max_size=8), st.lists(st.integers(0, 5), max_size=8))
def test_sorted_halves_are_unimodal(a, b):
    assert is_unimodal(sorted(a) + sorted(b, reverse=True))


def test_scan_result_json():
    r = ScanResult("x", {"k": [0, 1]}, [(1, 2, 3, -4)], 10, 1.5)
    d = json.loads(r.to_json())
    assert d == {"scan": "x", "ranges": {"k": [0, 1]}, "violations": [{"k": 1, "m": 2, "n": 3, "value": -4}],
                 "count": 10, "ms": 1.5}
    assert "ms" not in r.to_dict(timing=False)
