"""Averaged truncations of the pentagonal, Gauss and triple-product series."""
from __future__ import annotations

from fractions import Fraction

from ..qobjects import INF
from ..series import constant, mul, mul_mono, sum_series
from .core import INT, NAT, Identity, Param, binom2, sign

K = Param("k", INT)
M = Param("m", NAT)
K_SWEEP = tuple(dict(k=k) for k in (1, 2, 3))
M_SWEEP = tuple(dict(m=m) for m in (0, 1, 2, 3))


def _one_over_theta(ctx, z, first=None):
    """``1 / (first, q/z, q; q)_inf`` with ``first`` defaulting to ``z``."""
    q = ctx.q()
    first = z if first is None else first
    key = ("theta", first, z)

    def build():
        f = ctx.ipoch(first, INF, into=constant(ctx.table, 1))
        f = ctx.ipoch(q / z, INF, into=f)
        return ctx.ipoch(q, INF, into=f)

    return ctx.memo(key, build)


# -- pentagonal number theorem, truncated ------------------------------------

def _am_lhs(ctx):
    k, q = ctx["k"], ctx.q

    parts = []
    for n in range(k):
        e = n * (3 * n + 1) // 2
        parts.append(ctx.S(q(e, sign(n))) - ctx.S(q(e + 2 * n + 1, sign(n))))
    return ctx.ipoch(q(), INF, into=sum_series(ctx.table, parts))


def _am_rhs(ctx):
    k, q = ctx["k"], ctx.q
    b = binom2(k)

    def term(n):
        # the denominator is (q;q)_n; the display's (q;q)_k fails from q^6 at k = 1
        return ctx.ipoch(q(), n, into=mul_mono(ctx.qbin(n - 1, k - 1), q(b + (k + 1) * n)))

    s = ctx.series_sum("n", k, term, lambda n: {"q": b + (k + 1) * n})
    return ctx.one() + s * sign(k - 1)


def am_rhs_as_displayed(ctx):
    """Right side with the denominator ``(q;q)_k`` taken literally; kept to
    document that this reading is not an identity."""
    k, q = ctx["k"], ctx.q
    b = binom2(k)

    def term(n):
        return mul_mono(ctx.qbin(n - 1, k - 1), q(b + (k + 1) * n))

    s = ctx.series_sum("n", k, term, lambda n: {"q": b + (k + 1) * n})
    s = ctx.ipoch(q(), k, into=s)
    return ctx.one() + s * sign(k - 1)


AM_TRUNC = Identity(
    "AM_TRUNC",
    "averaged truncation of the pentagonal number theorem",
    (K,),
    _am_lhs,
    _am_rhs,
    sweep=K_SWEEP,
)


# -- Gauss identities, truncated ---------------------------------------------

def _gza_lhs(ctx):
    k, q = ctx["k"], ctx.q
    parts = [ctx.one()] + [ctx.S(q(j * j, 2 * sign(j))) for j in range(1, k + 1)]
    f = sum_series(ctx.table, parts)
    f = ctx.poch(q(1, -1), INF, into=f)
    return ctx.ipoch(q(), INF, into=f)


def _gza_rhs(ctx):
    k, q = ctx["k"], ctx.q
    minus_one = ctx.table.mono(-1)

    def term(n):
        f = mul_mono(ctx.qbin(n - 1, k), q((k + 1) * n))
        f = ctx.poch(minus_one, n - k, into=f)
        return ctx.ipoch(q(), n, into=f)

    s = ctx.series_sum("n", k + 1, term, lambda n: {"q": (k + 1) * n})
    s = ctx.poch(q(1, -1), k, into=s)
    return ctx.one() + s * sign(k)


GZ_GAUSS_A = Identity(
    "GZ_GAUSS_A",
    "averaged truncation of the Gauss identity for squares",
    (K,),
    _gza_lhs,
    _gza_rhs,
    sweep=K_SWEEP,
)


def _gzb_lhs(ctx):
    k, q = ctx["k"], ctx.q
    parts = []
    for j in range(k):
        e = j * (2 * j + 1)
        parts.append(ctx.S(q(e, sign(j))) - ctx.S(q(e + 2 * j + 1, sign(j))))
    f = sum_series(ctx.table, parts)
    f = ctx.poch(q(1, -1), INF, base=2, into=f)
    return ctx.ipoch(q(2), INF, base=2, into=f)


def _gzb_rhs(ctx):
    k, q = ctx["k"], ctx.q

    def term(n):
        f = mul_mono(ctx.qbin(n - 1, k - 1, base=2), q(2 * (k + 1) * n - k))
        f = ctx.poch(q(1, -1), n - k, base=2, into=f)
        return ctx.ipoch(q(2), n, base=2, into=f)

    s = ctx.series_sum("n", k, term, lambda n: {"q": 2 * (k + 1) * n - k})
    s = ctx.poch(q(1, -1), k, base=2, into=s)
    return ctx.one() - s * sign(k)


GZ_GAUSS_B = Identity(
    "GZ_GAUSS_B",
    "averaged truncation of the Gauss identity for triangular numbers",
    (K,),
    _gzb_lhs,
    _gzb_rhs,
    sweep=K_SWEEP,
)


# -- triple product, truncated ------------------------------------------------

def _tjs1_partial(ctx, k):
    """``sum_{0<=n<k} (-1)^n q^(n(n+1)/2) z^-n (1 - z^(2n+1))``."""
    z, q = ctx.var("z"), ctx.q
    parts = []
    for n in range(k):
        m = q(n * (n + 1) // 2, sign(n)) * z**-n
        parts.append(ctx.S(m) - ctx.S(m * z ** (2 * n + 1)))
    return sum_series(ctx.table, parts)


def _tjs1_lhs(ctx):
    k = ctx["k"]
    z = ctx.var("z")
    f = mul(_tjs1_partial(ctx, k), _one_over_theta(ctx, z))
    return (f - ctx.one()) * sign(k - 1)


def _inv_qz_pair(ctx, z, n):
    """``1 / (q/z, qz; q)_n`` by a running product."""
    q = ctx.q

    def step(f, i):
        return ctx.div1(ctx.div1(f, q(i) / z), q(i) * z)

    return ctx.chain("qz_pair", n, lambda: constant(ctx.table, 1), step)


def _tjs1_rhs(ctx):
    k = ctx["k"]
    z, q = ctx.var("z"), ctx.q
    b = binom2(k)
    one_plus_z = ctx.S(z**-k) + ctx.S(z ** (1 - k))

    def first(n):
        f = mul_mono(ctx.qbin(2 * n - 1, n - k), q(n + b))
        return mul(mul(f, _inv_qz_pair(ctx, z, n)), one_plus_z)

    def inv_qz(n):
        return ctx.chain(
            "qz", n, lambda: constant(ctx.table, 1), lambda f, i: ctx.div1(f, q(i) * z)
        )

    def inv_q(n):
        return ctx.chain(
            "q", n, lambda: constant(ctx.table, 1), lambda f, i: ctx.div1(f, q(i))
        )

    def second(n):
        return mul_mono(mul(inv_q(n - k), inv_qz(n)), q(n + b) * z ** (2 - k))

    bound = lambda n: {"weight": n + b}
    s1 = ctx.series_sum("first", k, first, bound)
    s2 = ctx.series_sum("second", k, second, bound)
    s2 = ctx.ipoch(q() / z, INF, into=s2)
    geometric = sum_series(ctx.table, [ctx.S(z**i) for i in range(2 * k - 1)])
    return s1 + mul(s2, geometric)


TJS1 = Identity(
    "TJS1",
    "first averaged truncation of the triple product (lower sum -k..k-1)",
    (K,),
    _tjs1_lhs,
    _tjs1_rhs,
    variables=(("z", "small_laurent"),),
    sweep=K_SWEEP,
)


def _tjs2_lhs(ctx):
    k = ctx["k"]
    z, q = ctx.var("z"), ctx.q
    parts = [ctx.S(q(binom2(n), sign(n)) * z**n) for n in range(1 - k, k)]
    f = mul(sum_series(ctx.table, parts), _one_over_theta(ctx, z, first=q() * z))
    return (f - ctx.one() + ctx.S(z)) * sign(k - 1)


def _tjs2_rhs(ctx):
    k = ctx["k"]
    z, q = ctx.var("z"), ctx.q
    b = binom2(k)

    def run(name, m, n):
        return ctx.chain(name, n, lambda: constant(ctx.table, 1), lambda f, i: ctx.div1(f, q(i) * m))

    one = ctx.table.mono()

    def first(n):
        f = mul(run("q", one, n - k), run("q/z", z**-1, n))
        return mul_mono(f, q(n + b) * z**-k)

    def second(n):
        f = mul(run("q", one, n - k), run("qz", z, n - 1))
        return mul_mono(f, q(n - k + b) * z**k)

    s1 = ctx.series_sum("first", k, first, lambda n: {"q": n + b})
    s2 = ctx.series_sum("second", k, second, lambda n: {"q": n - k + b})
    s1 = ctx.ipoch(q() * z, INF, into=s1)
    s2 = ctx.ipoch(q() / z, INF, into=s2)
    return s1 + s2


TJS2 = Identity(
    "TJS2",
    "second averaged truncation of the triple product (sum 1-k..k-1)",
    (K,),
    _tjs2_lhs,
    _tjs2_rhs,
    variables=(("z", "laurent"),),
    pad=lambda b: b["k"] + 2,
    sweep=K_SWEEP,
)


# -- earlier truncations with a four-fold inner sum ----------------------------

def _four_fold(ctx, n, a_exp, b_exp, c_exp):
    """``sum_{i+j+h+k=n} q^(E) z^(h-k) / ((q)_i (q)_j (q)_h (q)_k)`` for an
    exponent ``E = a_exp*i + b_exp*j + h*k + c_exp(h, k)``.

    Computed as a convolution of the ``(i, j)`` part (q only) with the
    ``(h, k)`` part.
    """
    z, q = ctx.var("z"), ctx.q

    def inv_q(m):
        return ctx.chain("q", m, lambda: constant(ctx.table, 1), lambda f, i: ctx.div1(f, q(i)))

    def ij(s):
        def build():
            parts = [mul_mono(mul(inv_q(i), inv_q(s - i)), q(a_exp * i + b_exp * (s - i)))
                     for i in range(s + 1)]
            return sum_series(ctx.table, parts)
        return ctx.memo(("ij", a_exp, b_exp, s), build)

    def hk(s):
        def build():
            parts = []
            for h in range(s + 1):
                kk = s - h
                m = q(h * kk + c_exp(h, kk)) * z ** (h - kk)
                if m.exps[0] > ctx.table.hi[0]:
                    continue
                parts.append(mul_mono(mul(inv_q(h), inv_q(kk)), m))
            return sum_series(ctx.table, parts)
        return ctx.memo(("hk", s, tuple(c_exp(h, s - h) for h in range(s + 1))), build)

    return sum_series(ctx.table, [mul(ij(s), hk(n - s)) for s in range(n + 1)])


def _wy1_lhs(ctx):
    m = ctx["m"]
    return mul(_tjs1_partial(ctx, m + 1), _one_over_theta(ctx, ctx.var("z")))


def _wy1_rhs(ctx):
    m = ctx["m"]
    b = binom2(m + 1)

    def term(n):
        # q^((m+1)j + hk + n); the display omits the "+ n" (see wy1_rhs_as_displayed)
        inner = _four_fold(ctx, n, 1, m + 2, lambda h, k: h + k)
        return mul_mono(mul(inner, ctx.qbin(n - 1, m)), ctx.q(b))

    s = ctx.series_sum("n", m + 1, term, lambda n: {"weight": n + b})
    return ctx.one() + s * sign(m)


def wy1_rhs_as_displayed(ctx, n_max: int):
    """Right side with the exponent ``(m+1)j + hk`` taken literally, summed
    for ``n <= n_max``.  The ``i = n`` terms contribute ``1/(q)_n`` each, so
    the constant term grows with ``n_max``: the literal reading diverges."""
    m = ctx["m"]
    b = binom2(m + 1)

    def term(n):
        inner = _four_fold(ctx, n, 0, m + 1, lambda h, k: 0)
        return mul_mono(mul(inner, ctx.qbin(n - 1, m)), ctx.q(b))

    s = sum_series(ctx.table, [term(n) for n in range(m + 1, n_max + 1)])
    return ctx.one() + s * sign(m)


WY1 = Identity(
    "WY1",
    "earlier averaged truncation of the triple product, four-fold sum form",
    (M,),
    _wy1_lhs,
    _wy1_rhs,
    variables=(("z", "small_laurent"),),
    sweep=M_SWEEP,
    note="exponent completed with + n; the literal display diverges",
)


def _wy2_lhs(ctx):
    m = ctx["m"]
    z, q = ctx.var("z"), ctx.q
    parts = [ctx.S(q(binom2(n), sign(n)) * z**n) for n in range(-m, m + 1)]
    return mul(sum_series(ctx.table, parts), _one_over_theta(ctx, z))


def _wy2_rhs(ctx):
    m = ctx["m"]
    b = binom2(m + 1)

    def term(n):
        # q^(mj + h(k-1) + n) with n = i + j + h + k
        inner = _four_fold(ctx, n, 1, m + 1, lambda h, k: k)
        return mul_mono(mul(inner, ctx.qbin(n - 1, m)), ctx.q(b))

    s = ctx.series_sum("n", m + 1, term, lambda n: {"weight": n + b})
    return ctx.one() + s * sign(m)


WY2 = Identity(
    "WY2",
    "companion truncation of the triple product, four-fold sum form",
    (M,),
    _wy2_lhs,
    _wy2_rhs,
    variables=(("z", "small_laurent"),),
    sweep=M_SWEEP,
)
