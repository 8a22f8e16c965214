import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtrunc.partitions import (
    PartitionStatTable,
    alternating_p_sum,
    count_JE,
    count_JG,
    count_JT,
    count_Mk,
    count_p,
    count_pbar,
    count_three_colored,
    enumerate_table,
    gf_coefficients,
    je_row,
    jg_row,
    jt_row,
    partitions,
)
from qtrunc.qobjects import INF, inverse_pochhammer
from qtrunc.series import qtable


def test_count_p_examples():
    assert count_p(0) == 1
    assert count_p(5) == 7
    assert count_p(10) == 42
    assert sorted(partitions(4)) == sorted([((4, 1),), ((3, 1), (1, 1)), ((2, 2),), ((2, 1), (1, 2)), ((1, 4),)])


def test_count_mk_examples():
    assert count_Mk(1, 4) == 2
    assert count_Mk(1, 0) == 0
    assert count_Mk(2, 1) == 0
    with pytest.raises(ValueError):
        count_Mk(0, 3)


def test_colored_examples():
    assert count_JE(1, 1) == 1
    assert count_JT(0, 1) == 1 and count_JT(1, 1) == 1 and count_JT(-1, 1) == 1
    assert count_JG(0, 0) == 1
    assert all(count_JG(m, 0) == 0 for m in (-2, -1, 1, 2))
    assert count_pbar(1) == 2 and count_pbar(4) == 14


@pytest.mark.parametrize("stat, n_max", [("P", 25), ("PBAR", 20), ("JE", 18), ("JT", 18), ("JG", 18)])
def test_oracle_equivalence(stat, n_max):
    assert gf_coefficients(stat, n_max).counts == enumerate_table(stat, n_max).counts


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_mk_generating_function(k):
    assert gf_coefficients("MK", 25, k=k).counts == enumerate_table("MK", 25, k=k).counts


def test_column_sums():
    t = qtable(18)
    cube = inverse_pochhammer(t.mono(q=1), INF, t)
    cube = inverse_pochhammer(t.mono(q=1), INF, t, into=inverse_pochhammer(t.mono(q=1), INF, t, into=cube))
    for n in range(19):
        assert sum(jt_row(n).values()) == count_three_colored(n) == cube.coeff((n,))
        assert sum(je_row(n).values()) == count_p(n)
        assert sum(jg_row(n).values()) == count_pbar(n)


def test_support_within_n():
    for n in range(15):
        for row in (je_row(n), jt_row(n), jg_row(n)):
            assert all(abs(m) <= n for m in row)
            assert all(c > 0 for c in row.values())


def test_jt_and_jg_symmetric():
    for n in range(15):
        assert jt_row(n) == {-m: c for m, c in jt_row(n).items()}
        assert jg_row(n) == {-m: c for m, c in jg_row(n).items()}


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_truncated_three_color_symmetric(k):
    table = gf_coefficients("JkT", 20, k=k)
    for (m, n), c in table.counts.items():
        assert table.get(-m, n) == c


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_truncated_families_differ_by_constant(k):
    a = gf_coefficients("JkT", 12, k=k)
    b = gf_coefficients("JkI", 12, k=k)
    for n in range(13):
        for m in range(-12, 13):
            shift = (1 if k % 2 == 0 else -1) if (m, n) == (0, 0) else 0
            assert a.get(m, n) == b.get(m, n) + shift


def test_amie_for_positive_n():
    for k in range(1, 6):
        for n in range(1, 41):
            assert alternating_p_sum(k, n) == count_Mk(k, n)


def test_amie_at_zero_is_off_by_the_constant():
    for k in range(1, 6):
        assert count_Mk(k, 0) == 0
        assert alternating_p_sum(k, 0) == (-1) ** (k - 1)


def test_csv_format_and_round_trip():
    table = gf_coefficients("P", 10)
    text = table.to_csv()
    lines = text.splitlines()
    assert lines[0] == "stat,m,n,count"
    assert lines[-1] == "P,,10,42"
    back = PartitionStatTable.from_csv(text, "P", 10)
    assert back.counts == table.counts

    jt = gf_coefficients("JT", 6)
    rows = jt.to_csv().splitlines()[1:]
    keys = [(int(r.split(",")[2]), int(r.split(",")[1])) for r in rows]
    assert keys == sorted(keys)
    assert PartitionStatTable.from_csv(jt.to_csv(), "JT", 6, m_max=6).counts == jt.counts

    mk = gf_coefficients("MK", 4, k=1).to_csv().splitlines()
    assert "MK,1,4,2" in mk


def test_array_and_bounds():
    table = gf_coefficients("JT", 8)
    a, off = table.array(3)
    assert a.dtype == np.int64
    assert a[4, 1 + off] == count_JT(1, 4)
    with pytest.raises(IndexError):
        table.array(9)
    with pytest.raises(IndexError):
        table.get(0, 9)


def test_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("QTRUNC_CACHE_DIR", str(tmp_path))
    first = gf_coefficients("JG", 10, cache=True)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    again = gf_coefficients("JG", 10, cache=True)
    assert again.counts == first.counts


def test_unknown_stat():
    with pytest.raises(ValueError):
        gf_coefficients("XX", 5)
    with pytest.raises(ValueError):
        gf_coefficients("MK", 5)


@given(st.integers(0, 14), st.integers(-14, 14))
def test_colored_counts_nonnegative_and_bounded(n, m):
    for f in (count_JE, count_JT, count_JG):
        v = f(m, n)
        assert v >= 0
        if abs(m) > n:
            assert v == 0
    assert count_JE(m, n) <= count_p(n)
