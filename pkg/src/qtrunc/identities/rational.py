"""Identities with rational parameters alpha, beta.

Summands here may carry negative q-orders (``(-q^(n+beta-alpha);q)_c`` for
small ``n``), so each additive term goes through :meth:`Context.lift`.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from ..errors import InvalidBinding
from ..qobjects import INF
from ..series import mul, mul_mono, sum_series
from .core import INT, RATIONAL, Identity, Param, binom2, neg_part, sign

K = Param("k", INT)
AL = Param("alpha", RATIONAL)
BE = Param("beta", RATIONAL)
RATIONALS = tuple(Fraction(x, 2) for x in range(5))  # 0, 1/2, 1, 3/2, 2
KS = (1, 2, 3)


def _nonnegative(*names):
    def check(binding):
        for n in names:
            if binding[n] < 0:
                raise InvalidBinding(f"{n} = {binding[n]} < 0 puts a factor of order <= 0 in a denominator")
    return check


def spoch_floor(x0, index, step=1) -> Fraction:
    """Lower bound for the q-shift returned by ``Context.spoch`` on
    ``(+-q^x0; q^step)_index``: only numerator factors of negative order
    lower it."""
    x0 = Fraction(x0)
    if index is INF or Fraction(index).denominator != 1:
        return neg_part(x0, INF, step)
    if index < 0:
        return Fraction(0)
    return neg_part(x0, int(index), step)


# -- summands ------------------------------------------------------------------

def _umm1_term(ctx, n, base=1):
    """Lifted summand of the alpha-beta expansion of (q)_inf/(-q^(1+alpha))_inf
    (``base = 1``) or of its q -> q^2 companion (``base = 2``)."""
    al, be = ctx["alpha"], ctx["beta"]
    q = ctx.q
    if base == 1:
        x0, idx = n + be - al, 2 * al + 1 - be
        power = n * n + (be - 1 - al) * n
        top, step_start = 2 * n + be, n + 1
    else:
        x0, idx = 2 * n + 1 + 2 * (be - al), 2 * al - be
        power = n * (2 * n - 1) + 2 * (be - al) * n
        top, step_start = 4 * n + 2 * be, 2 * n + 2
    shift, f = ctx.spoch(-1, x0, idx, base=base)
    if n == 0:
        # (q^b;q^b)_(beta-1) (1 - q^(b beta)) = (q^b;q^b)_beta, valid also at beta = 0
        g = ctx.poch(q(base), be, base=base)
    else:
        g = ctx.mul1(ctx.poch(q(step_start), be - 1, base=base), q(top))
    f = mul(f, g) * sign(n)
    total = shift + power * ctx.den
    return ctx.lift(int(total), f)


def _umm1_bound(ctx, base=1):
    al, be = ctx["alpha"], ctx["beta"]
    if base == 1:
        floor = spoch_floor(be - al, 2 * al + 1 - be)
        return lambda n: {"q": n * n + (be - 1 - al) * n + floor}
    floor = spoch_floor(1 + 2 * (be - al), 2 * al - be, 2)
    return lambda n: {"q": n * (2 * n - 1) + 2 * (be - al) * n + floor}


def _umm2_term(ctx, n):
    al, q = ctx["alpha"], ctx.q
    f = ctx.mul1(ctx.poch(q(n + 1), al), q(2 * n + 1 + al))
    return mul_mono(f, q(Fraction(n * (3 * n + 1), 2) + al * n, sign(n)))


# -- EQUMM1, EQUMM2 -------------------------------------------------------------

def _equmm1_lhs(ctx):
    al, q = ctx["alpha"], ctx.q
    f = ctx.ipoch(q(1 + al, -1), INF, into=ctx.poch(q(), INF))
    return ctx.lift(0, f)


def _equmm1_rhs(ctx):
    return ctx.series_sum("n", 0, lambda n: _umm1_term(ctx, n), _umm1_bound(ctx))


AB_SWEEP = tuple(dict(alpha=a, beta=b) for a, b in product(RATIONALS, RATIONALS))

EQUMM1 = Identity(
    "EQUMM1",
    "expansion of (q)_inf/(-q^(1+alpha))_inf with a second parameter beta",
    (AL, BE),
    _equmm1_lhs,
    _equmm1_rhs,
    check=_nonnegative("alpha", "beta"),
    sweep=AB_SWEEP,
)


def _equmm2_lhs(ctx):
    return ctx.poch(ctx.q(), INF)


def _equmm2_rhs(ctx):
    al = ctx["alpha"]
    return ctx.series_sum(
        "n", 0, lambda n: _umm2_term(ctx, n), lambda n: {"q": Fraction(n * (3 * n + 1), 2) + al * n}
    )


EQUMM2 = Identity(
    "EQUMM2",
    "expansion of (q)_inf with a free parameter alpha",
    (AL,),
    _equmm2_lhs,
    _equmm2_rhs,
    check=_nonnegative("alpha"),
    sweep=tuple(dict(alpha=a) for a in RATIONALS),
)


# -- truncations -----------------------------------------------------------------

def _cormm1_lhs(ctx):
    k = ctx["k"]
    f = sum_series(ctx.table, [_umm2_term(ctx, n) for n in range(k)])
    return ctx.ipoch(ctx.q(), INF, into=f)


def _cormm1_rhs(ctx):
    k, al, q = ctx["k"], ctx["alpha"], ctx.q

    def term(h):
        f = ctx.ipoch(q(), h, into=ctx.qbin(h - 1, k - 1))
        return mul_mono(f, q((k + 1 + al) * h + binom2(k)))

    tail = ctx.series_sum("h", k, term, lambda h: {"q": (k + 1 + al) * h + binom2(k)})
    return ctx.one() - tail * sign(k)


CORMM1 = Identity(
    "CORMM1",
    "averaged truncation of the alpha-expansion of (q)_inf",
    (K, AL),
    _cormm1_lhs,
    _cormm1_rhs,
    check=_nonnegative("alpha"),
    sweep=tuple(dict(k=k, alpha=a) for k, a in product(KS, RATIONALS)),
)


def _mm2_tail(ctx, base=1):
    """``sum_{h>=k} (-q^x;q^b)_(h-k) q^(E(h)) / (q^b;q^b)_h [h-1, k-1]_(q^b)``,
    each term lifted."""
    k, al, be, q = ctx["k"], ctx["alpha"], ctx["beta"], ctx.q
    if base == 1:
        x, expo = -al, lambda h: (k + be) * h - k * (1 + al)
    else:
        x, expo = 1 - 2 * al, lambda h: 2 * (k + be) * h - k * (1 + 2 * al)
    floor = neg_part(x, INF, base)

    def term(h):
        shift, f = ctx.spoch(-1, x, h - k, base=base)
        f = mul(f, ctx.qbin(h - 1, k - 1, base=base))
        f = ctx.ipoch(q(base), h, base=base, into=f)
        return ctx.lift(int(shift + expo(h) * ctx.den), f)

    return ctx.series_sum("h", k, term, lambda h: {"q": expo(h) + floor})


def _cormm2_lhs(ctx):
    k, al, q = ctx["k"], ctx["alpha"], ctx.q
    f = sum_series(ctx.table, [_umm1_term(ctx, n) for n in range(k)])
    f = ctx.poch(q(1 + al, -1), INF, into=f)
    return ctx.ipoch(q(), INF, into=f)


def _cormm2_rhs(ctx):
    k, al, q = ctx["k"], ctx["alpha"], ctx.q
    tail = ctx.poch(q(1 + al, -1), k, into=_mm2_tail(ctx))
    return ctx.one() - tail * sign(k)


KAB_SWEEP = tuple(dict(k=k, alpha=a, beta=b) for k, a, b in product(KS, RATIONALS, RATIONALS))

CORMM2 = Identity(
    "CORMM2",
    "averaged truncation of the alpha-beta expansion",
    (K, AL, BE),
    _cormm2_lhs,
    _cormm2_rhs,
    check=_nonnegative("alpha", "beta"),
    sweep=KAB_SWEEP,
)


def _eq1000_lhs(ctx):
    k, q = ctx["k"], ctx.q
    f = sum_series(ctx.table, [_umm1_term(ctx, n) for n in range(k)])
    f = ctx.poch(q(1, -1), INF, into=f)
    return ctx.ipoch(q(), INF, into=f)


def _eq1000_rhs(ctx):
    k, al, q = ctx["k"], ctx["alpha"], ctx.q
    head = ctx.lift(0, ctx.poch(q(1, -1), al))
    tail = ctx.poch(q(1, -1), k + al, into=_mm2_tail(ctx))
    return head - tail * sign(k)


EQ1000 = Identity(
    "EQ1000",
    "alpha-beta truncation multiplied by (-q;q)_alpha",
    (K, AL, BE),
    _eq1000_lhs,
    _eq1000_rhs,
    check=_nonnegative("alpha", "beta"),
    sweep=KAB_SWEEP,
)


def _eqmmm21_lhs(ctx):
    k, q = ctx["k"], ctx.q
    f = sum_series(ctx.table, [_umm1_term(ctx, n, base=2) for n in range(k)])
    f = ctx.poch(q(1, -1), INF, base=2, into=f)
    return ctx.ipoch(q(2), INF, base=2, into=f)


def _eqmmm21_rhs(ctx):
    k, al, q = ctx["k"], ctx["alpha"], ctx.q
    head = ctx.lift(0, ctx.poch(q(1, -1), al, base=2))
    tail = ctx.poch(q(1, -1), k + al, base=2, into=_mm2_tail(ctx, base=2))
    return head - tail * sign(k)


EQMMM21 = Identity(
    "EQMMM21",
    "alpha-beta truncation after alpha -> alpha - 1/2 and q -> q^2",
    (K, AL, BE),
    _eqmmm21_lhs,
    _eqmmm21_rhs,
    check=_nonnegative("alpha", "beta"),
    sweep=KAB_SWEEP,
)
