import dataclasses
import json
from fractions import Fraction

import pytest

from qtrunc.errors import InvalidBinding
from qtrunc.identities import CATALOG, Budget, FormalVar, MonoSpec, build_sides, get, sweep, verify, verify_many
from qtrunc.identities.qgauss import eqm1_rhs_as_displayed
from qtrunc.identities.theta import am_rhs_as_displayed, wy1_rhs_as_displayed
from qtrunc.qobjects import INF, pochhammer
from qtrunc.series import constant, laurent, make_series, mul, qtable, substitute, sum_series

TAGS = [
    "PNT", "AM_TRUNC", "JTP", "GZ_GAUSS_A", "GZ_GAUSS_B", "WY1", "WY2", "TJS1", "TJS2",
    "QGAUSS", "NTQBIN", "QEXP1", "QEXP2", "PHI01", "MTH2", "COR11_1", "COR11_2", "COR11_3",
    "COR11_4", "VWP5PHI5", "RF", "EQ002", "EQUMM1", "GAUSS_SQUARE", "GAUSS_HALF", "EQUMM2",
    "MTH3", "COR12_1", "COR12_2", "CORMM1", "CORMM2", "EQ1000", "EQMMM21", "SW_TRANSFORM",
    "PARTIAL_THETA", "EQM0", "EQM1", "WATSON",
]
SMALL = Budget(14, (-7, 7), 4)


def q(e=1, c=1):
    return MonoSpec.q(e, c)


def test_catalog_tags():
    assert list(CATALOG) == TAGS
    for tag in TAGS:
        assert get(tag).tag == tag
        assert sweep(tag)
    with pytest.raises(InvalidBinding):
        get("NOPE")


@pytest.mark.parametrize("tag", TAGS)
def test_first_sweep_binding_small_budget(tag):
    report = verify(get(tag), sweep(tag)[0], SMALL)
    assert report.equal, report.first_diff


@pytest.mark.parametrize("tag", TAGS)
def test_corrupted_side_is_detected(tag):
    entry = get(tag)

    def broken(ctx):
        return entry.rhs(ctx) + ctx.lift(7 * ctx.den, constant(ctx.table, 1))

    report = verify(dataclasses.replace(entry, rhs=broken), sweep(tag)[0], SMALL)
    assert not report.equal
    assert report.first_diff["monomial"] == {"q": "7"}
    assert report.first_diff["lhs"] - report.first_diff["rhs"] == -1


@pytest.mark.parametrize("tag", TAGS)
def test_cutoffs_drop_nothing_visible(tag):
    """The first summand past every recorded cutoff (and the next one) has no
    terms in the comparison region."""
    entry = get(tag)
    ctxs, _ = build_sides(entry, sweep(tag)[0], SMALL)
    for ctx in ctxs.values():
        for cut in ctx.cutoffs:
            for n in (cut.stop, cut.stop + 1):
                tail = cut.summand(n)
                assert not tail.restrict(ctx.compare), (cut.label, n)


@pytest.mark.parametrize("tag", ["JTP", "TJS2", "TJS1", "WY2", "GZ_GAUSS_A"])
def test_larger_pad_gives_same_comparison(tag):
    entry = get(tag)
    binding = sweep(tag)[0]
    wide = dataclasses.replace(entry, pad=lambda b: 12)
    _, a = build_sides(entry, binding, SMALL)
    _, b = build_sides(wide, binding, SMALL)
    for side in a:
        ta, tb = a[side].table, b[side].table
        da = {ta.true_exps(e): c for e, c in a[side].items()}
        db = {tb.true_exps(e): c for e, c in b[side].items()}
        assert da == db


def test_offset_lifting_for_negative_orders():
    report = verify(get("EQUMM1"), dict(alpha=Fraction(2), beta=Fraction(0)), Budget(20))
    assert report.equal
    assert report.offset > 0
    report = verify(get("CORMM2"), dict(k=2, alpha=Fraction(3, 2), beta=Fraction(1, 2)), Budget(20))
    assert report.equal and report.offset > 0


def test_binding_errors():
    with pytest.raises(InvalidBinding):
        verify(get("MTH2"), {"k": 2}, SMALL)
    with pytest.raises(InvalidBinding):
        verify(get("PNT"), {"k": 2}, SMALL)
    with pytest.raises(InvalidBinding):
        verify(get("AM_TRUNC"), {"k": 0}, SMALL)
    with pytest.raises(InvalidBinding):
        verify(get("EQUMM2"), {"alpha": Fraction(-1, 2)}, SMALL)
    with pytest.raises(InvalidBinding):
        verify(get("NTQBIN"), {"a": q(-1)}, SMALL)


def test_report_is_deterministic_json():
    a = verify(get("MTH2"), dict(k=2, a=q(), b=q(2, -1)), Budget(35)).to_dict(timing=False)
    b = verify(get("MTH2"), dict(k=2, a=q(), b=q(2, -1)), Budget(35)).to_dict(timing=False)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["equal"] and a["bindings"] == {"k": 2, "a": "q", "b": "-q^2"}
    assert "meta" in verify(get("PNT"), {}, SMALL).to_dict()


def test_verify_many_parallel_matches_serial():
    jobs = [(t, sweep(t)[0], SMALL) for t in ("PNT", "JTP", "AM_TRUNC", "EQUMM2")]
    serial = [r.to_dict(False) for r in verify_many(jobs, 1)]
    parallel = [r.to_dict(False) for r in verify_many(jobs, 2)]
    assert serial == parallel


def test_formal_parameters():
    report = verify(get("NTQBIN"), {"a": FormalVar("a")}, Budget(16, (-8, 8), 6))
    assert report.equal
    assert report.windows["a"] == [0, 6]


# -- readings of the displays that are not identities ------------------------------

@pytest.mark.parametrize("k, first", [(1, 6), (2, 13), (3, 23)])
def test_am_display_with_qq_k_fails(k, first):
    entry = dataclasses.replace(get("AM_TRUNC"), rhs=am_rhs_as_displayed)
    report = verify(entry, {"k": k}, Budget(30))
    assert not report.equal
    assert report.first_diff["monomial"] == {"q": str(first)}
    assert verify(get("AM_TRUNC"), {"k": k}, Budget(30)).equal


def test_wy1_display_diverges():
    entry = get("WY1")
    ctxs, _ = build_sides(entry, {"m": 0}, SMALL)
    ctx = ctxs["RHS"]
    constants = [wy1_rhs_as_displayed(ctx, n).coeff(ctx.table.zero_exp) for n in (2, 4, 6)]
    # each extra i = n term adds to the constant term
    assert constants[0] < constants[1] < constants[2]


def test_eqm1_display_with_extra_z_fails():
    entry = get("EQM1")
    binding = sweep("EQM1")[0]
    assert verify(entry, binding, SMALL).equal
    report = verify(dataclasses.replace(entry, rhs=eqm1_rhs_as_displayed), binding, SMALL)
    assert not report.equal


# -- structural relations -------------------------------------------------------

def test_jtp_reduces_to_pnt():
    src = qtable(90, laurent("z", -8, 8, small=True))
    qq, z = src.mono(q=1), src.mono(z=1)
    jtp = pochhammer(z, INF, src, into=pochhammer(qq / z, INF, src, into=pochhammer(qq, INF, src)))
    dst = qtable(30)
    image = substitute(jtp, {"q": dst.mono(q=3), "z": dst.mono(q=1)}, dst)
    terms = []
    for n in range(-5, 6):
        terms.append(dst.mono(1 if n % 2 == 0 else -1, q=n * (3 * n + 1) // 2).series(truncate=True))
    assert image == sum_series(dst, terms)


@pytest.mark.parametrize("a, b", [(-3, 2), (-2, 3), (0, 1), (-4, 4), (1, 6)])
def test_recentring_of_finite_theta_sums(a, b):
    """``(-z)^-c q^-binom(c,2) sum_{a..b} (-1)^n q^binom(n,2) z^n`` equals the
    sum over ``a-c..b-c`` with ``z -> z q^c``, ``c = ceil((a+b)/2)``."""
    c = -((-(a + b)) // 2)
    t = qtable(60, laurent("z", -12, 12))

    def b2(n):
        return n * (n - 1) // 2

    # multiply both sides by q^binom(c,2) so every exponent is non-negative
    lhs = sum_series(t, [t.mono((-1) ** (n % 2) * (-1) ** (c % 2), q=b2(n), z=n - c).series() for n in range(a, b + 1)])
    rhs = sum_series(t, [t.mono((-1) ** (n % 2), q=b2(n) + c * n + b2(c), z=n).series() for n in range(a - c, b - c + 1)])
    assert lhs == rhs
    assert (a - c) + (b - c) in (-1, 0)


def test_eqm_at_t_power_of_q():
    for binding in sweep("EQM0")[-3:]:
        assert isinstance(binding["t"], MonoSpec)
        assert verify(get("EQM0"), binding, SMALL).equal
        assert verify(get("EQM1"), binding, SMALL).equal
