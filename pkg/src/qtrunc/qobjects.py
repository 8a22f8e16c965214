"""q-shifted factorials, q-binomial coefficients and theta products as
truncated series.

The base of every factorial is a power ``q^base`` of the grading variable
(``base`` in true units, default 1).  Indices are a non-negative integer,
:data:`INF`, or any rational ``c``, the latter meaning
``(a;q)_c = (a;q)_inf / (a q^c;q)_inf``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import ExponentOutOfWindow, NonTerminating, NotInvertible
from .series import (
    Mono,
    TruncatedSeries,
    VarTable,
    constant,
    div_one_minus,
    make_series,
    mul_one_minus,
)

INF = math.inf


def _q_mono(table: VarTable, scaled: int) -> Mono:
    exps = [0] * len(table)
    exps[table.qi] = scaled
    return Mono(table, 1, tuple(exps))


def _base_scaled(table: VarTable, base) -> int:
    v = Fraction(base) * table.vars[table.qi].denom
    if v.denominator != 1 or v <= 0:
        raise ValueError(f"base q^{base} is not a positive multiple of the q-denominator")
    return int(v)


def _is_integer(c) -> bool:
    return c is not INF and Fraction(c).denominator == 1


def pochhammer(arg: Mono, index, table: VarTable | None = None, base=1, into=None) -> TruncatedSeries:
    """``(arg; q^base)_index`` as a series (optionally multiplied into ``into``).

    Finite index: the finite product.  ``INF``: factors are multiplied until
    ``arg q^(j*base)`` leaves the q-window.  Rational ``c``: the quotient
    ``(arg)_inf / (arg q^c)_inf``; every inverted factor needs positive
    weight.
    """
    table = table or arg.table
    f = into if into is not None else constant(table, 1)
    if arg.coeff == 0:
        return f
    step = _base_scaled(table, base)
    qi = table.qi
    qcap = table.hi[qi]

    if index is not INF and _is_integer(index) and index >= 0:
        m = arg
        for _ in range(int(index)):
            if m.exps[qi] > qcap:
                break
            if not m.in_window():
                raise ExponentOutOfWindow(f"factor 1 - {m!r} is outside the table windows")
            f = mul_one_minus(f, m)
            m = m * _q_mono(table, step)
        return f

    if index is INF:
        return _infinite(f, arg, step, table, invert=False)

    c = Fraction(index)
    shift = c * step
    if shift.denominator != 1:
        raise ValueError(f"index {c} needs a finer q-denominator than {table.vars[qi].denom}")
    shifted = arg * _q_mono(table, int(shift))
    if c.denominator == 1:
        # negative integer: (a)_{-n} = 1 / (a q^{-n})_n
        n = -int(c)
        m = shifted
        for _ in range(n):
            if m.exps[qi] > qcap:
                break
            f = _divide_factor(f, m)
            m = m * _q_mono(table, step)
        return f
    f = _infinite(f, arg, step, table, invert=False)
    return _infinite(f, shifted, step, table, invert=True)


def _divide_factor(f: TruncatedSeries, m: Mono) -> TruncatedSeries:
    if m.exps == m.table.zero_exp:
        if m.coeff == 1:
            raise NotInvertible("factor (1 - 1) in a denominator")
        # 1/(1 - c) with c = -1: constant 1/2 is not integral
        if 1 - m.coeff not in (1, -1):
            raise NotInvertible(f"constant factor 1 - ({m.coeff}) in a denominator")
        return f * (1 - m.coeff)
    if not m.in_window():
        raise ExponentOutOfWindow(f"denominator factor 1 - {m!r} is outside the table windows")
    return div_one_minus(f, m)


def _infinite(f, arg: Mono, step: int, table: VarTable, invert: bool):
    qi = table.qi
    qcap = table.hi[qi]
    m = arg
    qstep = _q_mono(table, step)
    while m.exps[qi] <= qcap:
        if not m.in_window():
            # Laurent windows are allowed to clip a factor; only q bounds stop
            if m.exps[qi] < 0 or any(
                m.exps[i] < table.lo[i] for i, v in enumerate(table.vars) if v.kind != "laurent"
            ):
                raise ExponentOutOfWindow(f"factor 1 - {m!r} has negative order")
            m = m * qstep
            continue
        f = _divide_factor(f, m) if invert else mul_one_minus(f, m)
        m = m * qstep
    return f


def multi_pochhammer(args, index, table: VarTable, base=1, invert: bool = False) -> TruncatedSeries:
    """``(a_1, ..., a_m; q^base)_index``, or its reciprocal when ``invert``."""
    f = constant(table, 1)
    for a in args:
        if invert:
            f = inverse_pochhammer(a, index, table, base, into=f)
        else:
            f = pochhammer(a, index, table, base, into=f)
    return f


def inverse_pochhammer(arg: Mono, index, table: VarTable | None = None, base=1, into=None) -> TruncatedSeries:
    """``1 / (arg; q^base)_index`` by division factor by factor."""
    table = table or arg.table
    f = into if into is not None else constant(table, 1)
    if arg.coeff == 0:
        return f
    step = _base_scaled(table, base)
    qi = table.qi
    qcap = table.hi[qi]
    if index is INF:
        return _infinite(f, arg, step, table, invert=True)
    c = Fraction(index)
    if c.denominator == 1 and c >= 0:
        m = arg
        for _ in range(int(c)):
            if m.exps[qi] > qcap:
                break
            f = _divide_factor(f, m)
            m = m * _q_mono(table, step)
        return f
    shift = c * step
    if shift.denominator != 1:
        raise ValueError(f"index {c} needs a finer q-denominator")
    shifted = arg * _q_mono(table, int(shift))
    if c.denominator == 1:
        return pochhammer(shifted, -int(c), table, base, into=f)
    f = _infinite(f, arg, step, table, invert=True)
    return _infinite(f, shifted, step, table, invert=False)


# -- shifted factorials with arguments of negative q-order ---------------

def shifted_pochhammer(sign: int, q_exp, index, table: VarTable, base=1, inverse: bool = False):
    """``(sign * q^q_exp; q^base)_index`` (or its reciprocal) when ``q_exp``
    may be negative.

    Returns ``(shift, series)`` with the value equal to ``q^shift * series``
    (``shift`` scaled).  A factor ``1 - s q^e`` with ``e < 0`` equals
    ``-s q^e (1 - s q^-e)``; a factor with ``e = 0`` is the constant ``1 - s``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    qi = table.qi
    qcap = table.hi[qi]
    e0 = Fraction(q_exp) * table.vars[qi].denom
    if e0.denominator != 1:
        raise ValueError(f"q^{q_exp} needs a finer q-denominator")
    e0 = int(e0)
    step = _base_scaled(table, base)

    # runs of factor exponents: (start, count or None for "until past the cap")
    if index is INF:
        numer, denom = [(e0, None)], []
    else:
        c = Fraction(index)
        shift_c = c * step
        if shift_c.denominator != 1:
            raise ValueError(f"index {index} needs a finer q-denominator")
        if c.denominator == 1 and c >= 0:
            numer, denom = [(e0, int(c))], []
        elif c.denominator == 1:
            numer, denom = [], [(e0 + int(shift_c), -int(c))]
        else:
            numer, denom = [(e0, None)], [(e0 + int(shift_c), None)]
    if inverse:
        numer, denom = denom, numer

    def run(start, count):
        e, j = start, 0
        while (count is None and e <= qcap) or (count is not None and j < count):
            yield e
            e += step
            j += 1

    shift, coeff = 0, 1
    f = constant(table, 1)
    for start, count in numer:
        for e in run(start, count):
            if e == 0:
                coeff *= 1 - sign
            elif e < 0:
                shift += e
                coeff *= -sign
                if -e <= qcap:
                    f = mul_one_minus(f, Mono(table, sign, _q_only(table, -e)))
            elif e <= qcap:
                f = mul_one_minus(f, Mono(table, sign, _q_only(table, e)))
    for start, count in denom:
        for e in run(start, count):
            if e == 0:
                raise NotInvertible(f"constant factor {1 - sign} in a denominator")
            if e < 0:
                shift -= e
                coeff *= -sign
                if -e <= qcap:
                    f = div_one_minus(f, Mono(table, sign, _q_only(table, -e)))
            elif e <= qcap:
                f = div_one_minus(f, Mono(table, sign, _q_only(table, e)))
    if coeff == 0:
        return 0, constant(table, 0)
    return shift, f * coeff


def _q_only(table: VarTable, e: int) -> tuple[int, ...]:
    exps = [0] * len(table)
    exps[table.qi] = e
    return tuple(exps)


# -- q-binomial coefficients ---------------------------------------------

@lru_cache(maxsize=None)
def gaussian_coeffs(n: int, k: int) -> tuple[int, ...]:
    """Coefficient list of the Gaussian polynomial, by
    ``[n,k] = [n-1,k-1] + q^k [n-1,k]``."""
    if k < 0 or k > n or n < 0:
        return ()
    if k == 0 or k == n:
        return (1,)
    a = gaussian_coeffs(n - 1, k - 1)
    b = gaussian_coeffs(n - 1, k)
    out = [0] * (k * (n - k) + 1)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + k] += c
    return tuple(out)


@lru_cache(maxsize=None)
def gaussian_coeffs_alt(n: int, k: int) -> tuple[int, ...]:
    """Same polynomial by the other recurrence
    ``[n,k] = q^(n-k) [n-1,k-1] + [n-1,k]``."""
    if k < 0 or k > n or n < 0:
        return ()
    if k == 0 or k == n:
        return (1,)
    a = gaussian_coeffs_alt(n - 1, k - 1)
    b = gaussian_coeffs_alt(n - 1, k)
    out = [0] * (k * (n - k) + 1)
    for i, c in enumerate(a):
        out[i + n - k] += c
    for i, c in enumerate(b):
        out[i] += c
    return tuple(out)


def q_binomial(n: int, k: int, table: VarTable, base=1) -> TruncatedSeries:
    """Gaussian polynomial in ``q^base``, truncated at the q-cap; 0 outside
    ``0 <= k <= n``."""
    coeffs = gaussian_coeffs(n, k)
    step = _base_scaled(table, base)
    qcap = table.hi[table.qi]
    return make_series(
        table,
        ((_q_only(table, i * step), c) for i, c in enumerate(coeffs) if i * step <= qcap),
    )


def theta_product(z: Mono, table: VarTable) -> TruncatedSeries:
    """``(z, q/z, q; q)_inf``."""
    q = _q_mono(table, table.vars[table.qi].denom)
    return multi_pochhammer([z, q / z, q], INF, table)


def require_positive(m: Mono, what: str = "argument"):
    if m.weight <= 0:
        raise NonTerminating(f"{what} {m!r} has non-positive weight")
