from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtrunc.errors import (
    ExponentOutOfWindow,
    IllFormedMap,
    NonTerminating,
    NotInvertible,
    TableMismatch,
    UnknownVariable,
)
from qtrunc.qobjects import INF, pochhammer
from qtrunc.series import (
    Mono,
    VarTable,
    add,
    constant,
    extract_coeff,
    from_text,
    grading,
    invert,
    laurent,
    make_series,
    mul,
    poly,
    qtable,
    substitute,
    to_text,
    weight,
    zero,
)


def S(table, *terms):
    """Build from ``(coeff, {var: exp})`` pairs."""
    return make_series(table, [(table.scale(**e), c) for c, e in terms])


# -- oracle examples -------------------------------------------------------------

def test_add_examples():
    t = qtable(6)
    assert S(t, (1, {}), (-1, {"q": 1})) + S(t, (1, {"q": 1})) == constant(t, 1)
    f = S(t, (2, {"q": 3}))
    assert f + zero(t) == f
    poch = pochhammer(t.mono(q=1), 2, t)
    assert poch + S(t, (1, {"q": 1}), (1, {"q": 2}), (-1, {"q": 3})) == constant(t, 1)


def test_mul_telescoping_truncates():
    n = 7
    t = qtable(n)
    geo = S(t, *[(1, {"q": i}) for i in range(n + 1)])
    assert mul(S(t, (1, {}), (-1, {"q": 1})), geo) == constant(t, 1)


def test_mul_laurent_window():
    t = VarTable((laurent("z", -1, 1),))
    f = S(t, (1, {}), (1, {"z": 1}))
    g = S(t, (1, {}), (1, {"z": -1}))
    assert mul(f, g) == S(t, (1, {"z": -1}), (2, {}), (1, {"z": 1}))


def test_triple_product_product_vs_sum():
    t = qtable(15, laurent("z", -6, 6, small=True))
    q, z = t.mono(q=1), t.mono(z=1)
    prod = pochhammer(z, INF, t, into=pochhammer(q / z, INF, t, into=pochhammer(q, INF, t)))
    terms = []
    for n in range(-6, 7):
        m = t.mono(1 if n % 2 == 0 else -1, q=n * (n - 1) // 2, z=n)
        terms.append(m.series(truncate=True))
    from qtrunc.series import sum_series

    assert prod == sum_series(t, terms)


def test_table_mismatch():
    with pytest.raises(TableMismatch):
        add(constant(qtable(3), 1), constant(qtable(4), 1))
    with pytest.raises(TableMismatch):
        mul(constant(qtable(3), 1), constant(qtable(4), 1))


def test_make_series_rejects_out_of_window():
    t = qtable(3)
    with pytest.raises(ExponentOutOfWindow):
        make_series(t, [((4,), 1)])
    # products drop overflow silently
    assert mul(S(t, (1, {"q": 2})), S(t, (1, {"q": 2}))) == zero(t)


def test_invert_examples():
    t = qtable(3)
    assert invert(S(t, (1, {}), (-1, {"q": 1}))) == S(t, *[(1, {"q": i}) for i in range(4)])
    tz = VarTable((poly("z", 4),))
    inv = invert(S(tz, (1, {}), (-1, {"z": 1})))
    assert inv == S(tz, *[(1, {"z": i}) for i in range(5)])
    tl = qtable(4, laurent("z", -5, 5))
    inv = invert(S(tl, (1, {}), (-1, {"q": 1, "z": -1})))
    assert inv == S(tl, *[(1, {"q": i, "z": -i}) for i in range(5)])


def test_invert_errors():
    t = qtable(3, laurent("z", -2, 2))
    with pytest.raises(NotInvertible):
        invert(S(t, (2, {}), (1, {"q": 1})))
    with pytest.raises(NonTerminating):
        invert(S(t, (1, {}), (-1, {"z": 1})))
    with pytest.raises(NotInvertible):
        invert(zero(t))


def test_substitute_examples():
    src = qtable(10, laurent("z", -3, 3))
    dst = qtable(10)
    f = S(src, (1, {"z": 1}))
    assert substitute(f, {"q": dst.mono(q=3), "z": dst.mono(q=1)}, dst) == S(dst, (1, {"q": 1}))
    g = S(src, (2, {"q": 1, "z": -1}), (-1, {"q": 4}))
    assert substitute(g, {}, src) == g


def test_substitute_rejects_negative_q_image():
    src = qtable(5, laurent("z", -3, 3))
    dst = qtable(5)
    with pytest.raises(IllFormedMap):
        substitute(S(src, (1, {"z": -1})), {"q": dst.mono(q=1), "z": dst.mono(q=1)}, dst)


def test_pnt_from_jtp_substitution():
    src = qtable(45, laurent("z", -6, 6, small=True))
    q, z = src.mono(q=1), src.mono(z=1)
    jtp = pochhammer(z, INF, src, into=pochhammer(q / z, INF, src, into=pochhammer(q, INF, src)))
    dst = qtable(15)
    image = substitute(jtp, {"q": dst.mono(q=3), "z": dst.mono(q=1)}, dst)
    assert image == pochhammer(dst.mono(q=1), INF, dst)


def test_extract_coeff_examples():
    t = qtable(4, laurent("z", -2, 2))
    f = S(t, (1, {}), (1, {"q": 1, "z": 1}), (1, {"q": 2, "z": -1}))
    assert extract_coeff(f, "z", 1) == S(t.without("z"), (1, {"q": 1}))
    pnt = pochhammer(qtable(12).mono(q=1), INF, qtable(12))
    assert extract_coeff(pnt, "q", 5).terms == {(): 1}
    with pytest.raises(ExponentOutOfWindow):
        extract_coeff(f, "z", 3)
    with pytest.raises(UnknownVariable):
        extract_coeff(f, "w", 0)


def test_fractional_exponents():
    t = qtable(3, denom=2)
    f = S(t, (1, {"q": Fraction(1, 2)}))
    assert mul(f, f) == S(t, (1, {"q": 1}))
    with pytest.raises(ExponentOutOfWindow):
        t.scale(q=Fraction(1, 3))


# -- properties ------------------------------------------------------------------

# grading + polynomial variables: window truncation is an ideal, so the ring
# laws hold exactly
POLY_TABLE = VarTable((grading(5), poly("a", 3)))
LAURENT_TABLE = VarTable((grading(4), laurent("z", -3, 3)))
SMALL_TABLE = VarTable((grading(4), laurent("z", -3, 3, small=True), poly("a", 2)))


def sparse(table, max_terms=6, coeffs=st.integers(-5, 5)):
    exps = st.tuples(*[st.integers(l, h) for l, h in zip(table.lo, table.hi)])
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(
        lambda d: make_series(table, d.items())
    )


def invertible(table):
    def build(args):
        c0, rest = args
        terms = {e: c for e, c in rest.items() if table.weight(e) > 0}
        terms[table.zero_exp] = c0
        return make_series(table, terms.items())

    exps = st.tuples(*[st.integers(l, h) for l, h in zip(table.lo, table.hi)])
    return st.tuples(st.sampled_from([1, -1]), st.dictionaries(exps, st.integers(-4, 4), max_size=5)).map(build)


@given(sparse(LAURENT_TABLE), sparse(LAURENT_TABLE), sparse(LAURENT_TABLE))
def test_add_commutative_associative(f, g, h):
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f - f == zero(f.table)


@given(sparse(LAURENT_TABLE), sparse(LAURENT_TABLE), sparse(LAURENT_TABLE))
def test_mul_commutative_distributive(f, g, h):
    assert mul(f, g) == mul(g, f)
    assert mul(f, g + h) == mul(f, g) + mul(f, h)


@given(sparse(POLY_TABLE), sparse(POLY_TABLE), sparse(POLY_TABLE))
def test_mul_associative(f, g, h):
    assert mul(mul(f, g), h) == mul(f, mul(g, h))
    assert mul(f, constant(POLY_TABLE, 1)) == f


# generous z-window relative to operand support: no intermediate truncation in z
WIDE = VarTable((grading(6), laurent("z", -9, 9)))
NARROW_Z = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(-3, 3)), st.integers(-3, 3), max_size=4
).map(lambda d: make_series(WIDE, d.items()))


@given(NARROW_Z, NARROW_Z, NARROW_Z)
def test_mul_associative_laurent_with_room(f, g, h):
    assert mul(mul(f, g), h) == mul(f, mul(g, h))


@given(invertible(POLY_TABLE))
def test_invert_round_trip_poly(f):
    assert mul(f, invert(f)) == constant(POLY_TABLE, 1)


CONE = VarTable((grading(4), laurent("z", -4, 4)))


def cone_invertible(args):
    c0, rest = args
    terms = {(a, b): c for (a, b), c in rest.items() if abs(b) <= a}
    terms[(0, 0)] = c0
    return make_series(CONE, terms.items())


@given(st.tuples(st.sampled_from([1, -1]),
                 st.dictionaries(st.tuples(st.integers(1, 4), st.integers(-4, 4)), st.integers(-4, 4), max_size=5)
                 ).map(cone_invertible))
def test_invert_round_trip_laurent_cone(f):
    # terms inside the cone |z| <= q stay inside the z-window below the q-cap,
    # so nothing is truncated on one side only
    assert mul(f, invert(f)) == constant(CONE, 1)


@given(invertible(LAURENT_TABLE))
def test_invert_terminates_by_grading(f):
    g = invert(f)
    assert g.terms.get(LAURENT_TABLE.zero_exp) == f.terms[LAURENT_TABLE.zero_exp]


SRC = VarTable((grading(8), poly("x", 4)))
DST = VarTable((grading(8), poly("x", 4)))
MAPS = st.tuples(st.integers(1, 3), st.integers(0, 2), st.integers(1, 2), st.sampled_from([1, -1]))


@given(sparse(SRC, 5), sparse(SRC, 5), MAPS)
def test_substitute_homomorphism(f, g, spec):
    a, b, c, s = spec
    mapping = {"q": DST.mono(q=a), "x": DST.mono(s, q=b, x=c)}
    lhs = substitute(mul(f, g), mapping, DST)
    rhs = mul(substitute(f, mapping, DST), substitute(g, mapping, DST))
    assert lhs == rhs
    assert substitute(f + g, mapping, DST) == substitute(f, mapping, DST) + substitute(g, mapping, DST)


MONO_EXPS = st.tuples(st.integers(0, 5), st.integers(0, 3))


@given(MONO_EXPS, MONO_EXPS)
def test_weight_additive(e1, e2):
    m1, m2 = Mono(POLY_TABLE, 1, e1), Mono(POLY_TABLE, 1, e2)
    assert (m1 * m2).weight == m1.weight + m2.weight
    assert weight(POLY_TABLE, (m1 * m2).exps) == weight(POLY_TABLE, e1) + weight(POLY_TABLE, e2)


@given(st.tuples(st.integers(0, 4), st.integers(-3, 3)), st.tuples(st.integers(0, 4), st.integers(-3, 3)))
def test_weight_laurent_grading_only(e1, e2):
    # a Laurent variable without the small flag does not contribute
    m1, m2 = Mono(LAURENT_TABLE, 1, e1), Mono(LAURENT_TABLE, 1, e2)
    assert (m1 * m2).weight == m1.weight + m2.weight == e1[0] + e2[0]


@given(sparse(SMALL_TABLE, 8))
def test_text_round_trip(f):
    text = to_text(f)
    assert from_text(text, SMALL_TABLE) == f
    assert to_text(from_text(text, SMALL_TABLE)) == text
