"""Averaged truncations of the q-Gauss and very-well-poised 5phi5 sums,
their limiting cases, and the two transformations behind them."""
from __future__ import annotations

from itertools import product

from ..qobjects import INF
from ..series import constant, mul, mul_mono, sum_series
from .classical import AB_PAIRS, A, B, MONO_SWEEP, T, Z
from .core import INT, FormalVar, Identity, Param, binom2, sign

K = Param("k", INT)
KS = (1, 2, 3)


def _k_ab_sweep():
    return tuple(dict(k=k, a=a, b=b) for k in KS for a, b in AB_PAIRS)


def _k_x_sweep(name):
    return tuple(dict(k=k, **{name: x}) for k, x in product(KS, MONO_SWEEP))


def _k_sweep():
    return tuple(dict(k=k) for k in KS)


def _poch_run(ctx, m, n):
    """``(m;q)_n`` by a running product."""
    q = ctx.q
    return ctx.running(("poch", m), n, lambda i: [m * q(i - 1)], lambda i: ())


def _inv_q(ctx, n):
    q = ctx.q
    return ctx.running("1/(q)", n, lambda i: (), lambda i: [q(i)])


def _plus_run(ctx, b, n):
    """``prod_{0<=i<n} (b + q^(i+1))`` which equals ``(-q/b;q)_n b^n``."""
    q = ctx.q
    return ctx.chain(
        ("plus", b), n, lambda: constant(ctx.table, 1), lambda f, i: mul_mono(f, b) + mul_mono(f, q(i))
    )


def _minus_run(ctx, b, n):
    """``prod_{0<=i<n} (q^(i+1) - b)`` which equals ``(q/b;q)_n (-b)^n``."""
    q = ctx.q
    return ctx.chain(
        ("minus", b), n, lambda: constant(ctx.table, 1), lambda f, i: mul_mono(f, q(i)) - mul_mono(f, b)
    )


def _truncation_tail(ctx, k, inner, zpow, label="s"):
    """``sum_{s>=0} inner(s) z^(s+k) / (q)_(s+k) [s+k-1, k-1]``."""
    z = ctx.var("z")

    def term(s):
        f = mul(inner(s), ctx.qbin(s + k - 1, k - 1))
        f = mul(f, _inv_q(ctx, s + k))
        return mul_mono(f, z ** (s + k) * zpow(s))

    return ctx.series_sum(label, 0, term, lambda s: {"weight": s + k})


# -- q-Gauss -------------------------------------------------------------------

def _mth2_lhs(ctx):
    k = ctx["k"]
    a, b, z, q = ctx.var("a"), ctx.var("b"), ctx.var("z"), ctx.q
    abz = a * b * z

    def term(n):
        return ctx.running(
            "lhs", n,
            lambda i: [-a * q(i - 1), -b * q(i - 1)],
            lambda i: [-abz * q(i - 1), q(i)],
            lambda i: -z,
        )

    f = sum_series(ctx.table, [term(n) for n in range(k)])
    f = ctx.poch(-abz, INF, into=f)
    f = ctx.poch(-z, INF, into=f)
    f = ctx.ipoch(a * z, INF, into=f)
    return ctx.ipoch(b * z, INF, into=f)


def _mth2_rhs(ctx):
    k = ctx["k"]
    a, b = ctx.var("a"), ctx.var("b")

    def inner(s):
        parts = []
        for h in range(s + 1):
            l = s - h
            f = mul(_poch_run(ctx, -b, l + k), _plus_run(ctx, b, h))
            f = mul(f, ctx.qbin(s, l))
            parts.append(mul_mono(f, a**l))
        return sum_series(ctx.table, parts)

    tail = _truncation_tail(ctx, k, inner, lambda s: ctx.table.mono())
    tail = ctx.poch(-a, k, into=tail)
    return ctx.one() - tail * sign(k)


MTH2 = Identity(
    "MTH2",
    "averaged truncation of the q-Gauss summation",
    (K, A, B),
    _mth2_lhs,
    _mth2_rhs,
    variables=(("z", "poly"),),
    sweep=_k_ab_sweep(),
)


def _c11_1_lhs(ctx):
    k = ctx["k"]
    b, z, q = ctx.var("b"), ctx.var("z"), ctx.q

    def term(n):
        return ctx.running("lhs", n, lambda i: [-b * q(i - 1)], lambda i: [q(i)], lambda i: -z)

    f = sum_series(ctx.table, [term(n) for n in range(k)])
    f = ctx.poch(-z, INF, into=f)
    return ctx.ipoch(b * z, INF, into=f)


def _c11_1_rhs(ctx):
    k = ctx["k"]
    b = ctx.var("b")
    tail = _truncation_tail(ctx, k, lambda h: _plus_run(ctx, b, h), lambda h: ctx.table.mono())
    tail = ctx.poch(-b, k, into=tail)
    return ctx.one() - tail * sign(k)


COR11_1 = Identity(
    "COR11_1",
    "averaged truncation of the non-terminating q-binomial theorem",
    (K, B),
    _c11_1_lhs,
    _c11_1_rhs,
    variables=(("z", "poly"),),
    sweep=_k_x_sweep("b"),
)


def _c11_2_lhs(ctx):
    k = ctx["k"]
    z, q = ctx.var("z"), ctx.q

    def term(n):
        return ctx.running("lhs", n, lambda i: (), lambda i: [q(i)], lambda i: -z)

    f = sum_series(ctx.table, [term(n) for n in range(k)])
    return ctx.poch(-z, INF, into=f)


def _c11_2_rhs(ctx):
    k = ctx["k"]
    one = constant(ctx.table, 1)
    tail = _truncation_tail(ctx, k, lambda h: one, lambda h: ctx.q(h * (h + 1) // 2))
    return ctx.one() - tail * sign(k)


COR11_2 = Identity(
    "COR11_2",
    "averaged truncation of the first q-exponential sum, product (-z)_inf",
    (K,),
    _c11_2_lhs,
    _c11_2_rhs,
    variables=(("z", "poly"),),
    sweep=_k_sweep(),
)


def _c11_3_lhs(ctx):
    k = ctx["k"]
    z, q = ctx.var("z"), ctx.q

    def term(n):
        return ctx.running("lhs", n, lambda i: (), lambda i: [q(i)], lambda i: -z * q(i - 1))

    f = sum_series(ctx.table, [term(n) for n in range(k)])
    return ctx.ipoch(z, INF, into=f)


def _c11_3_rhs(ctx):
    k = ctx["k"]
    one = constant(ctx.table, 1)
    tail = _truncation_tail(ctx, k, lambda h: one, lambda h: ctx.q(binom2(k)))
    return ctx.one() - tail * sign(k)


COR11_3 = Identity(
    "COR11_3",
    "averaged truncation of the second q-exponential sum",
    (K,),
    _c11_3_lhs,
    _c11_3_rhs,
    variables=(("z", "poly"),),
    sweep=_k_sweep(),
)


def _c11_4_lhs(ctx):
    k = ctx["k"]
    z, q = ctx.var("z"), ctx.q

    def term(n):
        # ratio of consecutive terms: -z q^(2(i-1)) / ((1 + z q^(i-1)) (1 - q^i))
        return ctx.running(
            "lhs", n, lambda i: (), lambda i: [-z * q(i - 1), q(i)], lambda i: -z * q(2 * (i - 1))
        )

    f = sum_series(ctx.table, [term(n) for n in range(k)])
    return ctx.poch(-z, INF, into=f)


def _c11_4_rhs(ctx):
    k = ctx["k"]
    z = ctx.var("z")

    def term(l):
        f = mul(ctx.qbin(l - 1, k - 1), _inv_q(ctx, l))
        return mul_mono(f, ctx.q(binom2(k) + binom2(l)) * z**l)

    tail = ctx.series_sum("l", k, term, lambda l: {"weight": l})
    return ctx.one() - tail * sign(k)


COR11_4 = Identity(
    "COR11_4",
    "averaged truncation of the 0phi1 expansion of 1/(z)_inf",
    (K,),
    _c11_4_lhs,
    _c11_4_rhs,
    variables=(("z", "poly"),),
    sweep=_k_sweep(),
)


# -- very-well-poised 5phi5 ----------------------------------------------------

def _mth3_lhs(ctx):
    k = ctx["k"]
    a, b, z, q = ctx.var("a"), ctx.var("b"), ctx.var("z"), ctx.q
    abz = a * b * z

    def base(n):
        # (-a, az)_n / (-abz, -qz, q)_n q^binom(n,2) z^n
        return ctx.running(
            "lhs", n,
            lambda i: [-a * q(i - 1), a * z * q(i - 1)],
            lambda i: [-abz * q(i - 1), -z * q(i), q(i)],
            lambda i: z * q(i - 1),
        )

    parts = []
    for n in range(k):
        f = mul(base(n), _plus_run(ctx, b, n)) * sign(n)  # (-q/b)_n (-b)^n
        parts.append(ctx.mul1(f, a * z * q(2 * n)))
    f = sum_series(ctx.table, parts)
    f = ctx.poch(-abz, INF, into=f)
    f = ctx.poch(-z * q(), INF, into=f)
    f = ctx.ipoch(a * z, INF, into=f)
    f = ctx.ipoch(b * z, INF, into=f)
    return ctx.one() - f


def _mth3_rhs(ctx):
    k = ctx["k"]
    a, b = ctx.var("a"), ctx.var("b")
    aqk = a * ctx.q(k)

    def inner(s):
        parts = []
        for h in range(s + 1):
            l = s - h
            f = mul(_poch_run(ctx, -b, h), _plus_run(ctx, b, l + k))
            f = mul(f, ctx.qbin(s, l))
            parts.append(mul_mono(f, aqk**h))
        return sum_series(ctx.table, parts)

    tail = _truncation_tail(ctx, k, inner, lambda s: ctx.q(binom2(k)))
    tail = ctx.poch(-a, k, into=tail)
    return tail * sign(k)


MTH3 = Identity(
    "MTH3",
    "averaged truncation of the very-well-poised 5phi5 summation",
    (K, A, B),
    _mth3_lhs,
    _mth3_rhs,
    variables=(("z", "poly"),),
    sweep=_k_ab_sweep(),
)


def _c12_1_lhs(ctx):
    k = ctx["k"]
    b, z, q = ctx.var("b"), ctx.var("z"), ctx.q

    def base(n):
        return ctx.running("lhs", n, lambda i: (), lambda i: [-z * q(i), q(i)], lambda i: z * q(i - 1))

    parts = [mul(base(n), _plus_run(ctx, b, n)) * sign(n) for n in range(k)]
    f = sum_series(ctx.table, parts)
    f = ctx.poch(-z * q(), INF, into=f)
    return ctx.ipoch(b * z, INF, into=f)


def _c12_1_rhs(ctx):
    k = ctx["k"]
    b, z = ctx.var("b"), ctx.var("z")

    def term(l):
        f = mul(mul(_plus_run(ctx, b, l), ctx.qbin(l - 1, k - 1)), _inv_q(ctx, l))
        return mul_mono(f, ctx.q(binom2(k)) * z**l)

    tail = ctx.series_sum("l", k, term, lambda l: {"weight": l})
    return ctx.one() - tail * sign(k)


COR12_1 = Identity(
    "COR12_1",
    "first averaged truncation of the Rogers-Fine identity",
    (K, B),
    _c12_1_lhs,
    _c12_1_rhs,
    variables=(("z", "poly"),),
    sweep=_k_x_sweep("b"),
)


def _c12_2_lhs(ctx):
    k = ctx["k"]
    a, z, q = ctx.var("a"), ctx.var("z"), ctx.q

    def base(n):
        # (-a, az)_n / (-qz, q)_n q^(n^2) (-z)^n
        return ctx.running(
            "lhs", n,
            lambda i: [-a * q(i - 1), a * z * q(i - 1)],
            lambda i: [-z * q(i), q(i)],
            lambda i: -z * q(2 * i - 1),
        )

    parts = [ctx.mul1(base(n), a * z * q(2 * n)) for n in range(k)]
    f = sum_series(ctx.table, parts)
    f = ctx.poch(-z * q(), INF, into=f)
    return ctx.ipoch(a * z, INF, into=f)


def _c12_2_rhs(ctx):
    k = ctx["k"]
    a = ctx.var("a")
    tail = _truncation_tail(
        ctx, k, lambda h: _plus_run(ctx, a, h), lambda h: ctx.q(k * k + k * h)
    )
    tail = ctx.poch(-a, k, into=tail)
    return ctx.one() - tail * sign(k)


COR12_2 = Identity(
    "COR12_2",
    "second averaged truncation of the Rogers-Fine identity",
    (K, A),
    _c12_2_lhs,
    _c12_2_rhs,
    variables=(("z", "poly"),),
    sweep=_k_x_sweep("a"),
)


# -- the two transformations used in the proofs -------------------------------

def _eqm_lhs(ctx):
    a, b, z, t, q = ctx.var("a"), ctx.var("b"), ctx.var("z"), ctx.var("t"), ctx.q

    def term(n):
        return ctx.running(
            "lhs", n,
            lambda i: [a * z * q(i - 1), b * z * q(i - 1)],
            lambda i: [a * b * t * z * q(i - 1), z * q(i)],
            lambda i: t,
        )

    s = ctx.series_sum("n", 0, term, lambda n: {"weight": n})
    return ctx.mul1(s, t)


def _eqm0_rhs(ctx):
    a, b, z, t, q = ctx.var("a"), ctx.var("b"), ctx.var("z"), ctx.var("t"), ctx.q

    def term(n):
        f = ctx.running(
            "rhs", n,
            lambda i: [a * t * q(i - 1), a * z * q(i - 1)],
            lambda i: [a * b * t * z * q(i - 1), z * q(i), t * q(i)],
            lambda i: t * z * q(i - 1),
        )
        f = mul(f, _minus_run(ctx, b, n))
        return ctx.mul1(f, a * t * z * q(2 * n))

    return ctx.series_sum("n", 0, term, lambda n: {"weight": n})


def _eqm1_rhs(ctx):
    a, b, z, t, q = ctx.var("a"), ctx.var("b"), ctx.var("z"), ctx.var("t"), ctx.q

    def term(n):
        return ctx.running(
            "rhs", n,
            lambda i: [a * t * q(i - 1), b * t * q(i - 1)],
            lambda i: [a * b * t * z * q(i - 1), t * q(i)],
            lambda i: z,
        )

    s = ctx.series_sum("n", 0, term, lambda n: {"weight": n})
    return ctx.mul1(s, z)


def eqm1_rhs_as_displayed(ctx):
    """Right side with the extra factor ``z`` inside the sum taken literally."""
    return mul_mono(_eqm1_rhs(ctx), ctx.var("z"))


EQM_SWEEP = tuple(
    dict(a=a, b=b, z=FormalVar("z"), t=FormalVar("t")) for a, b in AB_PAIRS
) + tuple(dict(a=a, b=MONO_SWEEP[0], z=FormalVar("z"), t=MONO_SWEEP[2]) for a in MONO_SWEEP[:3])

EQM0 = Identity(
    "EQM0",
    "transformation of a 2phi1-type sum into a very-well-poised sum",
    (A, B, Z, T),
    _eqm_lhs,
    _eqm0_rhs,
    sweep=EQM_SWEEP,
)

EQM1 = Identity(
    "EQM1",
    "symmetric transformation exchanging the roles of z and t",
    (A, B, Z, T),
    _eqm_lhs,
    _eqm1_rhs,
    sweep=EQM_SWEEP,
    note="the displayed right side carries an extra factor z; the symmetric form is used",
)
