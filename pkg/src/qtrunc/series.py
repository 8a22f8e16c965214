"""Sparse exact arithmetic on truncated multivariate formal Laurent series.

A series lives over a :class:`VarTable`.  Exponents are stored as *scaled*
integers: a variable with ``denom = D`` stores the exponent ``p/D`` as ``p``.
Every variable has a window ``[min_exp, max_exp]`` (true units); the grading
variable ``q`` always starts at 0.

Products silently drop monomials that leave a window (truncation), while
:func:`make_series` treats an out-of-window term as a caller error.

The *weight* of a monomial is its scaled ``q``-exponent plus the positive
parts of the exponents of small-flagged variables.  Inversion and division by
``1 - m`` terminate exactly when the non-constant monomials have positive
weight.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    ExponentOutOfWindow,
    IllFormedMap,
    NonTerminating,
    NotInvertible,
    TableMismatch,
    UnknownVariable,
)

GRADING = "grading"
LAURENT = "laurent"
POLY = "poly"
_KINDS = (GRADING, LAURENT, POLY)


def _scaled(value, denom: int, what: str) -> int:
    v = Fraction(value) * denom
    if v.denominator != 1:
        raise ExponentOutOfWindow(f"{what}: {value} is not a multiple of 1/{denom}")
    return int(v)


@dataclass(frozen=True)
class Var:
    """One declared variable.  ``min_exp``/``max_exp`` are in true units."""

    name: str
    kind: str
    max_exp: int | Fraction
    min_exp: int | Fraction = 0
    small: bool = False
    denom: int = 1

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown variable kind {self.kind!r}")
        if self.denom < 1:
            raise ValueError("denom must be a positive integer")
        if self.max_exp < 0:
            raise ValueError(f"{self.name}: max_exp must be >= 0")
        if self.kind == LAURENT:
            if self.min_exp > 0:
                raise ValueError(f"{self.name}: laurent min_exp must be <= 0")
        elif self.min_exp != 0:
            raise ValueError(f"{self.name}: min_exp must be 0 for kind {self.kind}")
        if self.kind == GRADING and not self.small:
            object.__setattr__(self, "small", True)
        _scaled(self.max_exp, self.denom, self.name)
        _scaled(self.min_exp, self.denom, self.name)

    @property
    def lo(self) -> int:
        return int(Fraction(self.min_exp) * self.denom)

    @property
    def hi(self) -> int:
        return int(Fraction(self.max_exp) * self.denom)


def grading(max_exp, denom: int = 1, name: str = "q") -> Var:
    return Var(name, GRADING, max_exp, 0, True, denom)


def laurent(name: str, lo, hi, small: bool = False, denom: int = 1) -> Var:
    return Var(name, LAURENT, hi, lo, small, denom)


def poly(name: str, hi, small: bool = True, denom: int = 1) -> Var:
    return Var(name, POLY, hi, 0, small, denom)


@dataclass(frozen=True)
class VarTable:
    vars: tuple[Var, ...]

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        names = [v.name for v in self.vars]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        # Tables produced by extracting the q-coefficient carry no grading
        # variable; anything else must have exactly one.
        if sum(v.kind == GRADING for v in self.vars) > 1:
            raise ValueError("a table has at most one grading variable")

    @classmethod
    def of(cls, *vars: Var) -> "VarTable":
        return cls(tuple(vars))

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.vars)

    @cached_property
    def lo(self) -> tuple[int, ...]:
        return tuple(v.lo for v in self.vars)

    @cached_property
    def hi(self) -> tuple[int, ...]:
        return tuple(v.hi for v in self.vars)

    @cached_property
    def qi(self) -> int | None:
        for i, v in enumerate(self.vars):
            if v.kind == GRADING:
                return i
        return None

    @cached_property
    def _small_idx(self) -> tuple[int, ...]:
        return tuple(
            i for i, v in enumerate(self.vars) if v.small and v.kind != GRADING
        )

    @cached_property
    def zero_exp(self) -> tuple[int, ...]:
        return (0,) * len(self.vars)

    def __len__(self):
        return len(self.vars)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(name) from None

    def var(self, name: str) -> Var:
        return self.vars[self.index(name)]

    def in_window(self, exps: tuple[int, ...]) -> bool:
        return all(l <= e <= h for e, l, h in zip(exps, self.lo, self.hi))

    def weight(self, exps: tuple[int, ...]) -> int:
        w = exps[self.qi] if self.qi is not None else 0
        for i in self._small_idx:
            if exps[i] > 0:
                w += exps[i]
        return w

    def max_weight(self) -> int:
        """Largest weight of any in-window monomial."""
        return self.weight(self.hi)

    def scale(self, **true_exps) -> tuple[int, ...]:
        out = [0] * len(self.vars)
        for name, value in true_exps.items():
            i = self.index(name)
            out[i] = _scaled(value, self.vars[i].denom, name)
        return tuple(out)

    def true_exps(self, exps: tuple[int, ...]) -> tuple[Fraction, ...]:
        return tuple(Fraction(e, v.denom) for e, v in zip(exps, self.vars))

    def glex_key(self, exps: tuple[int, ...]):
        """Graded-lex key: the grading variable first, then table order."""
        qi = self.qi
        if qi is None:
            return tuple(exps)
        return (exps[qi],) + tuple(e for i, e in enumerate(exps) if i != qi)

    def replace(self, name: str, **changes) -> "VarTable":
        i = self.index(name)
        old = self.vars[i]
        fields = dict(
            name=old.name,
            kind=old.kind,
            max_exp=old.max_exp,
            min_exp=old.min_exp,
            small=old.small,
            denom=old.denom,
        )
        fields.update(changes)
        return VarTable(self.vars[:i] + (Var(**fields),) + self.vars[i + 1 :])

    def without(self, name: str) -> "VarTable":
        i = self.index(name)
        return VarTable(self.vars[:i] + self.vars[i + 1 :])

    def mono(self, coeff: int = 1, **true_exps) -> "Mono":
        return Mono(self, coeff, self.scale(**true_exps))


def qtable(q_cap, *others: Var, denom: int = 1) -> VarTable:
    """Table with grading variable ``q`` (cap ``q_cap``) followed by ``others``."""
    return VarTable((grading(q_cap, denom),) + tuple(others))


class Mono:
    """A signed monomial ``coeff * prod v^e`` over a table.

    Monomials are an algebra of their own: they may lie outside the table
    windows (``q/b`` with ``b = q^3`` is ``q^-2``); only conversion to a
    series checks the windows.
    """

    __slots__ = ("table", "coeff", "exps")

    def __init__(self, table: VarTable, coeff: int, exps: tuple[int, ...]):
        self.table = table
        self.coeff = coeff
        self.exps = tuple(exps)

    def __mul__(self, other):
        if isinstance(other, int):
            return Mono(self.table, self.coeff * other, self.exps)
        if other.table != self.table:
            raise TableMismatch("monomials over different tables")
        return Mono(
            self.table,
            self.coeff * other.coeff,
            tuple(a + b for a, b in zip(self.exps, other.exps)),
        )

    __rmul__ = __mul__

    def __neg__(self):
        return Mono(self.table, -self.coeff, self.exps)

    def __pow__(self, n: int):
        if n < 0:
            if self.coeff not in (1, -1):
                raise ValueError("only unit monomials have negative powers")
            return Mono(self.table, self.coeff**-n, tuple(n * e for e in self.exps))
        return Mono(self.table, self.coeff**n, tuple(n * e for e in self.exps))

    def __truediv__(self, other: "Mono"):
        return self * other**-1

    def __eq__(self, other):
        return (
            isinstance(other, Mono)
            and self.table == other.table
            and self.coeff == other.coeff
            and self.exps == other.exps
        )

    def __hash__(self):
        return hash((self.coeff, self.exps))

    def __repr__(self):
        return f"Mono({self.coeff}, {_fmt_exps(self.table, self.exps)})"

    @property
    def weight(self) -> int:
        return self.table.weight(self.exps)

    def q_order(self) -> int:
        return self.exps[self.table.qi]

    def in_window(self) -> bool:
        return self.table.in_window(self.exps)

    def series(self, truncate: bool = False) -> "TruncatedSeries":
        """The one-term series; out-of-window is an error unless ``truncate``."""
        if not self.in_window():
            if truncate:
                return TruncatedSeries(self.table, {})
            raise ExponentOutOfWindow(f"{self!r} lies outside the table windows")
        return TruncatedSeries(self.table, {self.exps: self.coeff} if self.coeff else {})


class TruncatedSeries:
    """Immutable sparse series: exponent tuple -> nonzero ``int``."""

    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable, terms: dict):
        # callers inside this module guarantee canonical, in-window terms
        self.table = table
        self.terms = terms

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, int):
            other = constant(self.table, other)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.table, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = constant(self.table, other)
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return TruncatedSeries(self.table, {})
            return TruncatedSeries(self.table, {e: c * other for e, c in self.terms.items()})
        if isinstance(other, Mono):
            return mul_mono(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def __repr__(self):
        if not self.terms:
            return "TruncatedSeries(0)"
        body = " + ".join(
            f"{c}*{_fmt_exps(self.table, e)}"
            for e, c in sorted(self.terms.items(), key=lambda t: self.table.glex_key(t[0]))[:12]
        )
        more = " + ..." if len(self.terms) > 12 else ""
        return f"TruncatedSeries({body}{more})"

    def coeff(self, exps: tuple[int, ...]) -> int:
        return self.terms.get(tuple(exps), 0)

    def coefficient(self, **true_exps) -> int:
        return self.terms.get(self.table.scale(**true_exps), 0)

    def items(self):
        return self.terms.items()

    def min_weight(self) -> int | None:
        if not self.terms:
            return None
        return min(self.table.weight(e) for e in self.terms)

    def restrict(self, keep) -> "TruncatedSeries":
        return TruncatedSeries(self.table, {e: c for e, c in self.terms.items() if keep(e)})

    def retable(self, table: VarTable) -> "TruncatedSeries":
        """Same terms over a compatible table (same variables, other windows);
        terms outside the new windows are dropped."""
        if table.names != self.table.names or [v.denom for v in table.vars] != [
            v.denom for v in self.table.vars
        ]:
            raise TableMismatch("retable needs the same variables and denominators")
        return TruncatedSeries(
            table, {e: c for e, c in self.terms.items() if table.in_window(e)}
        )

    def to_text(self) -> str:
        return to_text(self)


def _fmt_exps(table: VarTable, exps) -> str:
    parts = []
    for v, e in zip(table.vars, exps):
        if e:
            parts.append(f"{v.name}^{Fraction(e, v.denom)}")
    return "*".join(parts) or "1"


def _check_same(f: TruncatedSeries, g: TruncatedSeries):
    if f.table != g.table:
        raise TableMismatch("series are over different variable tables")


def make_series(table: VarTable, terms: Iterable[tuple[tuple[int, ...], int]]) -> TruncatedSeries:
    """Canonical series from ``(scaled exponent vector, coefficient)`` pairs.

    Duplicates are summed and zero coefficients dropped.
    """
    out: dict = {}
    n = len(table)
    for exps, c in terms:
        exps = tuple(exps)
        if len(exps) != n:
            raise ExponentOutOfWindow(f"exponent vector {exps} has wrong length for {table.names}")
        if not table.in_window(exps):
            raise ExponentOutOfWindow(f"{_fmt_exps(table, exps)} outside window")
        out[exps] = out.get(exps, 0) + int(c)
    return TruncatedSeries(table, {e: c for e, c in out.items() if c})


def zero(table: VarTable) -> TruncatedSeries:
    return TruncatedSeries(table, {})


def constant(table: VarTable, c: int = 1) -> TruncatedSeries:
    return TruncatedSeries(table, {table.zero_exp: c} if c else {})


def one(table: VarTable) -> TruncatedSeries:
    return constant(table, 1)


def weight(table: VarTable, exps: tuple[int, ...]) -> int:
    return table.weight(exps)


def add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _check_same(f, g)
    if len(f.terms) < len(g.terms):
        f, g = g, f
    out = dict(f.terms)
    for e, c in g.terms.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return TruncatedSeries(f.table, out)


def sum_series(table: VarTable, items: Iterable[TruncatedSeries]) -> TruncatedSeries:
    out: dict = {}
    for f in items:
        if f.table != table:
            raise TableMismatch("series are over different variable tables")
        for e, c in f.terms.items():
            out[e] = out.get(e, 0) + c
    return TruncatedSeries(table, {e: c for e, c in out.items() if c})


def mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Convolution product; monomials leaving any window are discarded."""
    _check_same(f, g)
    table = f.table
    if not f.terms or not g.terms:
        return TruncatedSeries(table, {})
    if len(f.terms) > len(g.terms):
        f, g = g, f
    qi = table.qi
    lo, hi = table.lo, table.hi
    n = len(lo)
    out: dict = {}
    get = out.get
    if qi is not None:
        qcap = hi[qi]
        gitems = sorted(g.terms.items(), key=lambda t: t[0][qi])
    else:
        gitems = list(g.terms.items())

    if n == 1:
        h0, l0 = hi[0], lo[0]
        for (a,), c in f.terms.items():
            for (b,), d in gitems:
                s = a + b
                if s > h0:
                    if qi is not None:
                        break
                    continue
                if s < l0:
                    continue
                k = (s,)
                out[k] = get(k, 0) + c * d
    elif n == 2 and qi == 0:
        l1, h1 = lo[1], hi[1]
        for (a0, a1), c in f.terms.items():
            lim = qcap - a0
            for (b0, b1), d in gitems:
                if b0 > lim:
                    break
                s1 = a1 + b1
                if s1 < l1 or s1 > h1:
                    continue
                k = (a0 + b0, s1)
                out[k] = get(k, 0) + c * d
    else:
        rng = range(n)
        for e1, c in f.terms.items():
            lim = qcap - e1[qi] if qi is not None else None
            for e2, d in gitems:
                if lim is not None and e2[qi] > lim:
                    break
                k = tuple([e1[i] + e2[i] for i in rng])
                ok = True
                for i in rng:
                    if k[i] < lo[i] or k[i] > hi[i]:
                        ok = False
                        break
                if ok:
                    out[k] = get(k, 0) + c * d
    return TruncatedSeries(table, {e: c for e, c in out.items() if c})


def _shift_terms(table: VarTable, terms: dict, coeff: int, shift: tuple[int, ...]) -> dict:
    lo, hi = table.lo, table.hi
    out = {}
    for e, c in terms.items():
        k = tuple([a + b for a, b in zip(e, shift)])
        for x, l, h in zip(k, lo, hi):
            if x < l or x > h:
                break
        else:
            out[k] = c * coeff
    return out


def mul_mono(f: TruncatedSeries, m: Mono) -> TruncatedSeries:
    """``f * m`` for a monomial ``m`` (which may itself be out of window)."""
    if m.table != f.table:
        raise TableMismatch("monomial over a different table")
    if m.coeff == 0:
        return TruncatedSeries(f.table, {})
    return TruncatedSeries(f.table, _shift_terms(f.table, f.terms, m.coeff, m.exps))


def mul_one_minus(f: TruncatedSeries, m: Mono) -> TruncatedSeries:
    """``f * (1 - m)``."""
    return add(f, -mul_mono(f, m))


def _require_positive_weight(m: Mono):
    if not m.table.in_window(m.exps):
        raise NonTerminating(f"{m!r} lies outside the windows; cannot expand 1/(1 - m)")
    if m.weight <= 0:
        raise NonTerminating(f"{m!r} has weight {m.weight} <= 0; 1/(1 - m) does not terminate")


def div_one_minus(f: TruncatedSeries, m: Mono) -> TruncatedSeries:
    """``f / (1 - m)`` by geometric expansion, ``m`` of positive weight."""
    if m.table != f.table:
        raise TableMismatch("monomial over a different table")
    _require_positive_weight(m)
    table = f.table
    acc = dict(f.terms)
    term = f.terms
    while term:
        term = _shift_terms(table, term, m.coeff, m.exps)
        for e, c in term.items():
            acc[e] = acc.get(e, 0) + c
    return TruncatedSeries(table, {e: c for e, c in acc.items() if c})


def invert(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse under truncation.

    ``f`` must have constant term ``+-1`` and every other monomial of
    positive weight.
    """
    table = f.table
    c0 = f.terms.get(table.zero_exp, 0)
    if c0 not in (1, -1):
        raise NotInvertible(f"constant term is {c0}, not +-1")
    rest = {e: c for e, c in f.terms.items() if e != table.zero_exp}
    for e in rest:
        if table.weight(e) <= 0:
            raise NonTerminating(
                f"monomial {_fmt_exps(table, e)} has non-positive weight; inversion does not terminate"
            )
    if not rest:
        return constant(table, c0)
    if len(rest) == 1:
        (e, c), = rest.items()
        # c0 + c*m = c0 * (1 - (-c*c0) m)
        return div_one_minus(constant(table, c0), Mono(table, -c * c0, e))
    # f = c0 (1 + u); 1/f = c0 * sum (-u)^j
    neg_u = TruncatedSeries(table, {e: -c * c0 for e, c in rest.items()})
    acc = constant(table, 1)
    power = acc
    limit = 4 * max(table.max_weight(), 1) + 8
    for _ in range(limit):
        power = mul(power, neg_u)
        if not power:
            return acc * c0
        acc = add(acc, power)
    raise NonTerminating("geometric expansion did not vanish under the caps")


def substitute(
    f: TruncatedSeries, mapping: Mapping[str, Mono], out_table: VarTable
) -> TruncatedSeries:
    """Homomorphic image of ``f`` under ``var -> monomial``.

    Variables of ``f`` absent from ``mapping`` must exist (same name) in
    ``out_table``.  Images leaving the output windows are truncated; an image
    with negative order in a grading or polynomial variable is an error.
    """
    src = f.table
    images = []
    for v in src.vars:
        if v.name in mapping:
            m = mapping[v.name]
            if not isinstance(m, Mono) or m.table != out_table:
                raise IllFormedMap(f"image of {v.name} must be a monomial over the output table")
        else:
            if v.name not in out_table.names:
                raise IllFormedMap(f"no image for variable {v.name}")
            m = out_table.mono(**{v.name: 1})
        images.append((v.denom, m))

    lo_guard = [
        0 if w.kind in (GRADING, POLY) else None for w in out_table.vars
    ]
    out: dict = {}
    for exps, c in f.terms.items():
        coeff = c
        target = [0] * len(out_table)
        for e, (den, m) in zip(exps, images):
            if e == 0:
                continue
            power = Fraction(e, den)
            if power.denominator != 1 and m.coeff != 1:
                raise IllFormedMap("fractional power of a non-unit coefficient")
            if power.denominator == 1:
                p = int(power)
                if p < 0 and m.coeff not in (1, -1):
                    raise IllFormedMap("negative power of a non-unit coefficient")
                coeff *= m.coeff ** abs(p) if p >= 0 else m.coeff**-p
            for j, me in enumerate(m.exps):
                if me:
                    val = Fraction(me) * power
                    if val.denominator != 1:
                        raise IllFormedMap(
                            f"image exponent {val} of {out_table.names[j]} is not a multiple of its 1/denom"
                        )
                    target[j] += int(val)
        t = tuple(target)
        for j, g in enumerate(lo_guard):
            if g is not None and t[j] < g:
                raise IllFormedMap(
                    f"image {_fmt_exps(out_table, t)} has negative order in {out_table.names[j]}"
                )
        if out_table.in_window(t):
            out[t] = out.get(t, 0) + coeff
    return TruncatedSeries(out_table, {e: c for e, c in out.items() if c})


def extract_coeff(f: TruncatedSeries, var: str, exp: int) -> TruncatedSeries:
    """Coefficient of ``var^(exp/denom)`` as a series in the other variables."""
    table = f.table
    i = table.index(var)
    v = table.vars[i]
    if not v.lo <= exp <= v.hi:
        raise ExponentOutOfWindow(f"{var}^{Fraction(exp, v.denom)} is outside its window")
    rest = table.without(var)
    out = {}
    for e, c in f.terms.items():
        if e[i] == exp:
            out[e[:i] + e[i + 1 :]] = c
    return TruncatedSeries(rest, out)


# -- canonical text form -------------------------------------------------

def to_text(f: TruncatedSeries) -> str:
    """One term per line, ``coeff * q^a z^b ...`` with every variable listed
    and exponents as exact rationals; rows sorted by exponent vector."""
    names = f.table.names
    dens = [v.denom for v in f.table.vars]
    lines = []
    for e in sorted(f.terms):
        mono = " ".join(f"{n}^{Fraction(x, d)}" for n, x, d in zip(names, e, dens))
        lines.append(f"{f.terms[e]} * {mono}" if mono else f"{f.terms[e]}")
    return "\n".join(lines) + ("\n" if lines else "")


_TERM = re.compile(r"^\s*(-?\d+)\s*(?:\*\s*(.*))?$")
_FACTOR = re.compile(r"([A-Za-z_]\w*)\^(-?\d+(?:/\d+)?)")


def from_text(text: str, table: VarTable) -> TruncatedSeries:
    terms = []
    for line in text.splitlines():
        if not line.strip():
            continue
        m = _TERM.match(line)
        if not m:
            raise ValueError(f"cannot parse term {line!r}")
        exps = {}
        for name, val in _FACTOR.findall(m.group(2) or ""):
            exps[name] = Fraction(val)
        terms.append((table.scale(**exps), int(m.group(1))))
    return make_series(table, terms)
