"""Classical product-sum identities used as building blocks and controls."""
from __future__ import annotations

from fractions import Fraction

from ..errors import InvalidBinding
from ..qobjects import INF
from ..series import constant, mul_mono
from .core import PARAM, Identity, MonoSpec, FormalVar, Param, binom2, sign

A, B, T, T1, T2, Z = (Param(n, PARAM) for n in ("a", "b", "t", "t1", "t2", "z"))
C, D, E = (Param(n, PARAM) for n in ("c", "d", "e"))

MONO_SWEEP = tuple(MonoSpec.q(e, s) for s, e in ((1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3)))
# ten (a, b) pairs in which every sweep value occurs in both slots
AB_PAIRS = tuple(
    (MONO_SWEEP[i], MONO_SWEEP[(i + d) % len(MONO_SWEEP)]) for d in (0, 2) for i in range(len(MONO_SWEEP))
)
AB_SWEEP = tuple(dict(a=a, b=b) for a, b in AB_PAIRS)


def _bilateral(ctx, label, term, bound):
    """``sum_{n in Z} term(n)`` as two one-sided sums."""
    pos = ctx.series_sum(label + "+", 0, term, lambda n: bound(n))
    neg = ctx.series_sum(label + "-", 1, lambda n: term(-n), lambda n: bound(-n))
    return pos + neg


# -- Euler pentagonal number theorem ---------------------------------------

def _pnt_lhs(ctx):
    return ctx.poch(ctx.q(), INF)


def _pnt_rhs(ctx):
    q = ctx.q

    def term(n):
        e = n * (3 * n + 1) // 2
        return ctx.S(q(e, sign(n))) - ctx.S(q(e + 2 * n + 1, sign(n)))

    return ctx.series_sum("n", 0, term, lambda n: {"q": Fraction(n * (3 * n + 1), 2)})


PNT = Identity("PNT", "Euler pentagonal number theorem", (), _pnt_lhs, _pnt_rhs)


# -- Jacobi triple product ---------------------------------------------------

def _jtp_lhs(ctx):
    z = ctx.var("z")
    return ctx.poch(z, INF, into=ctx.poch(ctx.q() / z, INF, into=ctx.poch(ctx.q(), INF)))


def _jtp_rhs(ctx):
    z = ctx.var("z")

    def term(n):
        return ctx.S(ctx.q(binom2(n), sign(n)) * z**n)

    return _bilateral(ctx, "n", term, lambda n: {"q": Fraction(n * (n - 1), 2)})


JTP = Identity(
    "JTP",
    "Jacobi triple product",
    (),
    _jtp_lhs,
    _jtp_rhs,
    variables=(("z", "laurent"),),
    pad=2,
)


# -- q-Gauss family ----------------------------------------------------------

def _qgauss_lhs(ctx):
    a, b, z = ctx.var("a"), ctx.var("b"), ctx.var("z")
    f = ctx.poch(a * z, INF)
    f = ctx.poch(b * z, INF, into=f)
    f = ctx.ipoch(a * b * z, INF, into=f)
    return ctx.ipoch(z, INF, into=f)


def _qgauss_rhs(ctx):
    a, b, z = ctx.var("a"), ctx.var("b"), ctx.var("z")
    q = ctx.q()
    abz = a * b * z

    def term(n):
        f = ctx.S(z**n)
        f = ctx.poch(a, n, into=f)
        f = ctx.poch(b, n, into=f)
        f = ctx.ipoch(abz, n, into=f)
        return ctx.ipoch(q, n, into=f)

    return ctx.series_sum("n", 0, term, lambda n: {"z": n})


def _no_zero_factor(*names):
    def check(binding):
        for n in names:
            v = binding.get(n)
            if isinstance(v, MonoSpec) and not v.exps:
                raise InvalidBinding(f"{n} must carry a positive power of q")
    return check


QGAUSS = Identity(
    "QGAUSS",
    "q-Gauss summation in product form",
    (A, B),
    _qgauss_lhs,
    _qgauss_rhs,
    variables=(("z", "poly"),),
    sweep=AB_SWEEP,
)


def _ntqbin_lhs(ctx):
    a, z = ctx.var("a"), ctx.var("z")
    return ctx.ipoch(z, INF, into=ctx.poch(a * z, INF))


def _ntqbin_rhs(ctx):
    a, z = ctx.var("a"), ctx.var("z")
    q = ctx.q()

    def term(n):
        return ctx.ipoch(q, n, into=ctx.poch(a, n, into=ctx.S(z**n)))

    return ctx.series_sum("n", 0, term, lambda n: {"z": n})


NTQBIN = Identity(
    "NTQBIN", "non-terminating q-binomial theorem", (A,), _ntqbin_lhs, _ntqbin_rhs,
    variables=(("z", "poly"),),
)


def _qexp1_lhs(ctx):
    return ctx.ipoch(ctx.var("z"), INF)


def _qexp1_rhs(ctx):
    z, q = ctx.var("z"), ctx.q()
    return ctx.series_sum("n", 0, lambda n: ctx.ipoch(q, n, into=ctx.S(z**n)), lambda n: {"z": n})


QEXP1 = Identity(
    "QEXP1", "first q-exponential sum", (), _qexp1_lhs, _qexp1_rhs, variables=(("z", "poly"),)
)


def _qexp2_lhs(ctx):
    return ctx.poch(ctx.var("z"), INF)


def _qexp2_rhs(ctx):
    z, q = ctx.var("z"), ctx.q()

    def term(n):
        return ctx.ipoch(q, n, into=ctx.S(ctx.q(binom2(n), sign(n)) * z**n))

    return ctx.series_sum("n", 0, term, lambda n: {"z": n})


QEXP2 = Identity(
    "QEXP2", "second q-exponential sum", (), _qexp2_lhs, _qexp2_rhs, variables=(("z", "poly"),)
)


def _phi01_rhs(ctx):
    z, q = ctx.var("z"), ctx.q()

    def term(n):
        f = ctx.S(ctx.q(n * (n - 1)) * z**n)
        return ctx.ipoch(q, n, into=ctx.ipoch(z, n, into=f))

    return ctx.series_sum("n", 0, term, lambda n: {"z": n})


PHI01 = Identity(
    "PHI01",
    "reciprocal of (z;q)_inf as a sum with quadratic exponents",
    (),
    _qexp1_lhs,
    _phi01_rhs,
    variables=(("z", "poly"),),
)


# -- Gauss squares -----------------------------------------------------------

def _gsq_lhs(ctx):
    return ctx.ipoch(ctx.q(1, -1), INF, into=ctx.poch(ctx.q(), INF))


def _gsq_mid(ctx):
    def term(n):
        return ctx.S(ctx.q(n * n, sign(n))) - ctx.S(ctx.q(n * n + 2 * n + 1, sign(n)))

    return ctx.series_sum("n", 0, term, lambda n: {"q": n * n})


def _gsq_rhs(ctx):
    return _bilateral(ctx, "n", lambda n: ctx.S(ctx.q(n * n, sign(n))), lambda n: {"q": n * n})


GAUSS_SQUARE = Identity(
    "GAUSS_SQUARE",
    "Gauss identity for the signed theta series of squares",
    (),
    _gsq_lhs,
    _gsq_rhs,
    mid=_gsq_mid,
)


def _ghalf_lhs(ctx):
    return ctx.ipoch(ctx.q(Fraction(1, 2), -1), INF, into=ctx.poch(ctx.q(), INF))


def _ghalf_mid(ctx):
    def term(n):
        if n == 0:
            return constant(ctx.table, 1)
        e = Fraction(n * n) - Fraction(n, 2)
        return ctx.S(ctx.q(e, sign(n))) + ctx.S(ctx.q(e + n, sign(n)))

    return ctx.series_sum("n", 0, term, lambda n: {"q": Fraction(n * n) - Fraction(n, 2)})


def _ghalf_rhs(ctx):
    def e(n):
        return Fraction(n) * (n + Fraction(1, 2))

    return _bilateral(ctx, "n", lambda n: ctx.S(ctx.q(e(n), sign(n))), lambda n: {"q": e(n)})


GAUSS_HALF = Identity(
    "GAUSS_HALF",
    "Gauss identity with half-integer exponents",
    (),
    _ghalf_lhs,
    _ghalf_rhs,
    mid=_ghalf_mid,
    q_denom=2,
)


# -- very-well-poised sums ---------------------------------------------------

def _vwp_lhs(ctx):
    a, b, z, q = ctx.var("a"), ctx.var("b"), ctx.var("z"), ctx.q()
    f = ctx.poch(a * z, INF)
    f = ctx.poch(b * z, INF, into=f)
    f = ctx.ipoch(a * b * z, INF, into=f)
    return ctx.ipoch(q * z, INF, into=f)


def _q_minus_b(ctx, b, n, into):
    """``(q/b;q)_n (-b)^n = prod_{i<n} (q^(i+1) - b)``."""
    f = into
    for i in range(n):
        f = mul_mono(f, ctx.q(i + 1)) - mul_mono(f, b)
    return f


def _vwp_rhs(ctx):
    a, b, z, q = ctx.var("a"), ctx.var("b"), ctx.var("z"), ctx.q()

    def term(n):
        f = ctx.S(ctx.q(binom2(n)) * z**n)
        f = f - mul_mono(f, a * z * ctx.q(2 * n))
        f = ctx.poch(a, n, into=f)
        f = ctx.poch(a * z, n, into=f)
        f = _q_minus_b(ctx, b, n, f)
        f = ctx.ipoch(a * b * z, n, into=f)
        f = ctx.ipoch(q * z, n, into=f)
        return ctx.ipoch(q, n, into=f)

    return ctx.series_sum("n", 0, term, lambda n: {"z": n})


VWP5PHI5 = Identity(
    "VWP5PHI5",
    "very-well-poised 5phi5 summation (limiting form)",
    (A, B),
    _vwp_lhs,
    _vwp_rhs,
    variables=(("z", "poly"),),
    sweep=AB_SWEEP,
)


def _rf_lhs(ctx):
    a, z, q = ctx.var("a"), ctx.var("z"), ctx.q()
    return ctx.ipoch(q * z, INF, into=ctx.poch(a * z, INF))


def _rf_rhs(ctx):
    a, z, q = ctx.var("a"), ctx.var("z"), ctx.q()

    def term(n):
        f = ctx.S(ctx.q(n * n) * z**n)
        f = f - mul_mono(f, a * z * ctx.q(2 * n))
        f = ctx.poch(a, n, into=f)
        f = ctx.poch(a * z, n, into=f)
        f = ctx.ipoch(q * z, n, into=f)
        return ctx.ipoch(q, n, into=f)

    return ctx.series_sum("n", 0, term, lambda n: {"z": n})


RF = Identity(
    "RF",
    "Rogers-Fine type expansion of (az)_inf/(qz)_inf",
    (A,),
    _rf_lhs,
    _rf_rhs,
    variables=(("z", "poly"),),
)


def _eq002_lhs(ctx):
    a, q = ctx.var("a"), ctx.q()
    return ctx.ipoch(a, INF, into=ctx.poch(q, INF))


def _eq002_rhs(ctx):
    a, z, q = ctx.var("a"), ctx.var("z"), ctx.q()

    def term(n):
        f = ctx.S(ctx.q(n * n) * z**n)
        f = f - mul_mono(f, a * z * ctx.q(2 * n))
        f = ctx.poch(ctx.q(n + 1) * z, INF, into=f)
        f = ctx.poch(ctx.q(n + 1), INF, into=f)
        f = ctx.ipoch(a * ctx.q(n), INF, into=f)
        return ctx.ipoch(a * z * ctx.q(n), INF, into=f)

    return ctx.series_sum("n", 0, term, lambda n: {"z": n, "q": n * n})


EQ002 = Identity(
    "EQ002",
    "expansion of (q)_inf/(a)_inf with a free auxiliary variable",
    (A,),
    _eq002_lhs,
    _eq002_rhs,
    variables=(("z", "poly"),),
    check=_no_zero_factor("a"),
)


# -- Watson transformation ---------------------------------------------------

def _watson_args(ctx):
    a, b, c, d, e = (ctx.var(n) for n in "abcde")
    q = ctx.q()
    return a, b, c, d, e, q


def _watson_lhs(ctx):
    a, b, c, d, e, q = _watson_args(ctx)
    x = a * q / (d * e)

    def term(n):
        f = ctx.S(x**n)
        for m in (a * q / (b * c), d, e):
            f = ctx.poch(m, n, into=f)
        for m in (q, a * q / b, a * q / c):
            f = ctx.ipoch(m, n, into=f)
        return f

    order = Fraction(x.q_order(), ctx.den)
    return ctx.series_sum("n", 0, term, lambda n: {"q": n * order})


def _watson_rhs(ctx):
    a, b, c, d, e, q = _watson_args(ctx)
    y = -(a * a * q * q) / (b * c * d * e)

    def term(n):
        f = ctx.S(ctx.q(binom2(n)) * y**n)
        f = f - mul_mono(f, a * ctx.q(2 * n))
        for m in (a, b, c, d, e):
            f = ctx.poch(m, n, into=f)
        for m in (q, a * q / b, a * q / c, a * q / d, a * q / e):
            f = ctx.ipoch(m, n, into=f)
        return f

    order = Fraction(y.q_order(), ctx.den)
    s = ctx.series_sum("n", 0, term, lambda n: {"q": binom2(n) + n * order})
    s = ctx.poch(a * q / d, INF, into=s)
    s = ctx.poch(a * q / e, INF, into=s)
    s = ctx.ipoch(a, INF, into=s)
    return ctx.ipoch(a * q / (d * e), INF, into=s)


def _watson_check(binding):
    orders, coeffs = {}, {}
    for n in "abcde":
        v = binding[n]
        if not isinstance(v, MonoSpec):
            raise InvalidBinding("WATSON takes monomial bindings only")
        orders[n] = dict(v.exps).get("q", Fraction(0))
        coeffs[n] = v.coeff
        if abs(v.coeff) != 1:
            raise InvalidBinding("WATSON bindings must be unit monomials")
    o = orders

    def need(value, positive, what):
        if value < 0 or (positive and value == 0):
            raise InvalidBinding(f"WATSON: {what} has q-order {value}")

    need(o["a"], True, "a")
    need(o["a"] + 1 - o["d"] - o["e"], True, "aq/de")
    need(o["a"] + 1 - o["b"] - o["c"], False, "aq/bc")
    need(2 * o["a"] + 2 - o["b"] - o["c"] - o["d"] - o["e"], False, "a^2q^2/bcde")
    for n in "bcde":
        need(o["a"] + 1 - o[n], True, f"aq/{n}")


WATSON_SWEEP = (
    dict(a=MonoSpec.q(2), b=MonoSpec.q(1, -1), c=MonoSpec.q(1), d=MonoSpec.q(1, -1), e=MonoSpec.q(1, -1)),
    dict(a=MonoSpec.q(3), b=MonoSpec.q(1), c=MonoSpec.q(2), d=MonoSpec.q(1), e=MonoSpec.q(2, -1)),
    dict(a=MonoSpec.q(2, -1), b=MonoSpec.q(2, -1), c=MonoSpec.q(1), d=MonoSpec.q(1), e=MonoSpec.q(1)),
)

WATSON = Identity(
    "WATSON",
    "Watson transformation of a terminating-free 8phi7 limit",
    (A, B, C, D, E),
    _watson_lhs,
    _watson_rhs,
    check=_watson_check,
    sweep=WATSON_SWEEP,
)


# -- partial theta functions -------------------------------------------------

def _sw_lhs(ctx):
    t1, t2 = ctx.var("t1"), ctx.var("t2")

    def term(n):
        m = ctx.q(binom2(n), sign(n))
        return ctx.S(m * t1**n) - ctx.S(m * t2**n)

    return ctx.series_sum("n", 1, term, lambda n: {"weight": binom2(n) + n})


def _sw_rhs(ctx):
    t1, t2, q = ctx.var("t1"), ctx.var("t2"), ctx.q()
    tt = t1 * t2

    def term(n):
        f = ctx.poch(tt, 2 * n, into=ctx.S(ctx.q(n)))
        for m in (q, q * t1, q * t2, tt):
            f = ctx.ipoch(m, n, into=f)
        return f

    s = ctx.series_sum("n", 0, term, lambda n: {"q": n})
    for m in (q, q * t1, q * t2):
        s = ctx.poch(m, INF, into=s)
    return mul_mono(s, t2) - mul_mono(s, t1)


SW_TRANSFORM = Identity(
    "SW_TRANSFORM",
    "difference of two partial theta functions as a single sum",
    (T1, T2),
    _sw_lhs,
    _sw_rhs,
    sweep=(
        dict(t1=FormalVar("t1"), t2=FormalVar("t2")),
        dict(t1=MonoSpec.q(1), t2=FormalVar("t2")),
        dict(t1=MonoSpec.q(2, -1), t2=MonoSpec.q(1)),
    ),
)


def _pt_lhs(ctx):
    t = ctx.var("t")
    return ctx.series_sum(
        "n", 1, lambda n: ctx.S(ctx.q(binom2(n), sign(n)) * t**n), lambda n: {"weight": binom2(n) + n}
    )


def _pt_rhs(ctx):
    t, q = ctx.var("t"), ctx.q()

    def term(n):
        return ctx.ipoch(q * t, n, into=ctx.ipoch(q, n, into=ctx.S(ctx.q(n))))

    s = ctx.series_sum("n", 0, term, lambda n: {"q": n})
    s = ctx.poch(q, INF, into=s)
    s = ctx.poch(q * t, INF, into=s)
    return -mul_mono(s, t)


PARTIAL_THETA = Identity(
    "PARTIAL_THETA",
    "partial theta function as a single sum",
    (T,),
    _pt_lhs,
    _pt_rhs,
    sweep=(dict(t=FormalVar("t")), dict(t=MonoSpec.q(1)), dict(t=MonoSpec.q(2, -1))),
)
