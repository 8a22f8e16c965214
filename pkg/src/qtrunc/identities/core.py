"""Identity entries, parameter bindings and the verification driver.

An :class:`Identity` pairs builders for its two sides (occasionally three,
for chained displays).  Builders receive a :class:`Context` that owns the
working variable table and offers the q-object helpers.

Two details keep truncated comparisons sound:

* Working windows are wider than the requested comparison windows.  A
  small-flagged Laurent variable ``z`` gets the upper bound
  ``q_cap + z_hi`` so that every monomial with ``q <= q_cap`` and
  ``z <= z_hi`` is exact; other Laurent variables get a margin ``pad``.
* Sides whose summands carry negative q-orders (rational parameters) are
  built multiplied by ``q^L``; a summand that needs more room raises
  :class:`OffsetTooSmall` and the driver rebuilds with a larger ``L``.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from ..errors import InvalidBinding, NonTerminating, OffsetTooSmall
from ..qobjects import (
    INF,
    inverse_pochhammer,
    pochhammer,
    q_binomial,
    shifted_pochhammer,
)
from ..series import (
    LAURENT,
    Mono,
    TruncatedSeries,
    VarTable,
    constant,
    div_one_minus,
    grading,
    laurent,
    mul_mono,
    poly,
    sum_series,
    zero,
)

INT, NAT, RATIONAL, PARAM = "int", "nat", "rational", "param"


@dataclass(frozen=True)
class MonoSpec:
    """A table-independent signed monomial, e.g. ``-q^(3/2)``."""

    coeff: int
    exps: tuple[tuple[str, Fraction], ...] = ()

    @classmethod
    def q(cls, e=1, coeff: int = 1) -> "MonoSpec":
        return cls(coeff, (("q", Fraction(e)),))

    def __str__(self):
        body = "*".join(f"{n}^{e}" if e != 1 else n for n, e in self.exps if e)
        if not body:
            return str(self.coeff)
        if self.coeff == 1:
            return body
        if self.coeff == -1:
            return "-" + body
        return f"{self.coeff}*{body}"

    def denominators(self):
        return [Fraction(e).denominator for _, e in self.exps]


@dataclass(frozen=True)
class FormalVar:
    """Bind a parameter to a formal (small, polynomial) variable."""

    name: str
    hi: int | None = None

    def __str__(self):
        return f"formal({self.name})"


@dataclass(frozen=True)
class Param:
    name: str
    kind: str  # INT (>= 1), NAT (>= 0), RATIONAL, PARAM (monomial or formal)


@dataclass(frozen=True)
class Budget:
    q_cap: int = 40
    z_window: tuple[int, int] = (-20, 20)
    param_degree: int = 10

    def __post_init__(self):
        if self.q_cap < 1:
            raise ValueError("q_cap must be >= 1")
        lo, hi = self.z_window
        if lo > 0 or hi < 0:
            raise ValueError("z window must contain 0")


@dataclass(frozen=True)
class Identity:
    tag: str
    title: str
    params: tuple[Param, ...]
    lhs: Callable
    rhs: Callable
    mid: Callable | None = None
    # always-formal variables: name -> "laurent" | "small_laurent" | "poly"
    variables: tuple[tuple[str, str], ...] = ()
    q_denom: int = 1
    pad: Callable | int = 4
    check: Callable | None = None
    sweep: tuple = ()
    note: str = ""

    @property
    def free(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params)

    def sides(self) -> tuple[str, ...]:
        return ("LHS", "MID", "RHS") if self.mid else ("LHS", "RHS")


@dataclass
class Cutoff:
    label: str
    stop: int
    summand: Callable[[int], TruncatedSeries]
    bound: Callable[[int], dict]


class Context:
    """Working state for building one side of one identity."""

    def __init__(self, entry: Identity, binding: Mapping, budget: Budget, offset: int = 0):
        self.entry = entry
        self.binding = dict(binding)
        self.budget = budget
        self.offset = offset
        self.table, self.compare = _working_table(entry, self.binding, budget, offset)
        self.den = self.table.vars[0].denom
        self.N = budget.q_cap  # true units, before lifting
        self.cutoffs: list[Cutoff] = []
        self._memo: dict = {}

    # -- parameters ----------------------------------------------------------
    def __getitem__(self, name):
        return self.binding[name]

    def q(self, e=1, coeff: int = 1) -> Mono:
        s = Fraction(e) * self.den
        if s.denominator != 1:
            raise ValueError(f"q^{e} needs a finer q-denominator than {self.den}")
        exps = [0] * len(self.table)
        exps[0] = int(s)
        return Mono(self.table, coeff, tuple(exps))

    def var(self, name: str) -> Mono:
        """Monomial for a formal variable or a parameter binding."""
        if name in self.table.names and name not in self.binding:
            return self.table.mono(**{name: 1})
        value = self.binding[name]
        if isinstance(value, FormalVar):
            return self.table.mono(**{value.name: 1})
        if isinstance(value, MonoSpec):
            return self.table.mono(value.coeff, **dict(value.exps))
        raise InvalidBinding(f"{name} is bound to {value!r}, not a monomial")

    # -- series helpers ------------------------------------------------------
    def one(self) -> TruncatedSeries:
        return self.lift(0, constant(self.table, 1))

    def zero(self) -> TruncatedSeries:
        return zero(self.table)

    def S(self, m: Mono) -> TruncatedSeries:
        return m.series(truncate=True)

    def lift(self, shift: int, f: TruncatedSeries) -> TruncatedSeries:
        """``q^(offset + shift) * f`` (``shift`` scaled); one lift per
        additive term."""
        total = self.offset + shift
        if total < 0:
            raise OffsetTooSmall(-shift)
        if total == 0:
            return f
        return mul_mono(f, self.q(Fraction(total, self.den)))

    def memo(self, key, build):
        try:
            return self._memo[key]
        except KeyError:
            value = self._memo[key] = build()
            return value

    def chain(self, key, n: int, init, step, n0: int = 0):
        """Memoised recurrence ``v(n0) = init()``, ``v(i) = step(v(i-1), i)``."""
        cache = self._memo.setdefault(("chain", key), {})
        if n in cache:
            return cache[n]
        known = [i for i in cache if i < n]
        if known:
            m = max(known)
            val = cache[m]
        else:
            m, val = n0, init()
            cache[m] = val
        for i in range(m + 1, n + 1):
            val = step(val, i)
            cache[i] = val
        return val

    def div1(self, f: TruncatedSeries, m: Mono) -> TruncatedSeries:
        """``f / (1 - m)``; the identity when ``m`` lies beyond the cap of a
        non-Laurent variable (then every ``m^j f`` truncates to zero)."""
        if self._beyond_cap(m):
            return f
        return div_one_minus(f, m)

    def mul1(self, f: TruncatedSeries, m: Mono) -> TruncatedSeries:
        """``f * (1 - m)``."""
        if self._beyond_cap(m):
            return f
        return f - mul_mono(f, m)

    def _beyond_cap(self, m: Mono) -> bool:
        t = self.table
        return any(
            e > h and v.kind != LAURENT for e, h, v in zip(m.exps, t.hi, t.vars)
        )

    def running(self, key, n: int, numer, denom, mono=None, init=None):
        """Memoised term ``T_n`` of a hypergeometric-type sum:
        ``T_0 = init`` (default 1) and ``T_i = T_(i-1) * mono(i) *
        prod(1 - m, m in numer(i)) / prod(1 - m, m in denom(i))``."""

        def step(f, i):
            for m in numer(i):
                f = self.mul1(f, m)
            for m in denom(i):
                f = self.div1(f, m)
            if mono is not None:
                f = mul_mono(f, mono(i))
            return f

        start = (lambda: constant(self.table, 1)) if init is None else init
        return self.chain(key, n, start, step)

    def poch(self, m: Mono, index, base=1, into=None) -> TruncatedSeries:
        if into is not None:
            return pochhammer(m, index, self.table, base, into=into)
        return self.memo(("poch", m, index, base), lambda: pochhammer(m, index, self.table, base))

    def ipoch(self, m: Mono, index, base=1, into=None) -> TruncatedSeries:
        if into is not None:
            return inverse_pochhammer(m, index, self.table, base, into=into)
        return self.memo(
            ("ipoch", m, index, base), lambda: inverse_pochhammer(m, index, self.table, base)
        )

    def qbin(self, n: int, k: int, base=1) -> TruncatedSeries:
        return self.memo(("qbin", n, k, base), lambda: q_binomial(n, k, self.table, base))

    def spoch(self, sign: int, q_exp, index, base=1, inverse: bool = False):
        """``(sign q^q_exp; q^base)_index`` allowing negative ``q_exp``:
        returns ``(scaled shift, series)``."""
        key = ("spoch", sign, Fraction(q_exp), index, Fraction(base), inverse)
        return self.memo(
            key, lambda: shifted_pochhammer(sign, q_exp, index, self.table, base, inverse)
        )

    def prod_plus(self, b: Mono, n: int, start: int = 1, into=None) -> TruncatedSeries:
        """``prod_{0<=i<n} (b + q^(start+i))``, i.e. ``b^n (-q^start/b; q)_n``."""
        def build(f):
            for i in range(n):
                f = mul_mono(f, b) + mul_mono(f, self.q(start + i))
            return f
        if into is not None:
            return build(into)
        return self.memo(("prod_plus", b, n, start), lambda: build(constant(self.table, 1)))

    def series_sum(self, label: str, start: int, summand, bound, stop: int | None = None):
        """``sum_{n >= start} summand(n)`` truncated by a declared bound.

        ``bound(n)`` returns lower bounds (true units) on the exponents of
        every monomial of ``summand(n)``: keys are variable names or
        ``"weight"``.  Each component must be convex in ``n``; summation ends
        at the first ``n`` where some component exceeds its cap and is
        non-decreasing.
        """
        caps = self.bound_caps()
        parts = []
        n = start
        while stop is None or n <= stop:
            b = bound(n)
            done = False
            for key, val in b.items():
                if val > caps[key]:
                    nxt = bound(n + 1)[key]
                    if nxt >= val:
                        done = True
                        break
            if done:
                break
            parts.append(summand(n))
            n += 1
            if n - start > 100000:
                raise NonTerminating(f"sum {label} did not reach its cutoff")
        self.cutoffs.append(Cutoff(label, n, summand, bound))
        return sum_series(self.table, parts)

    def bound_caps(self) -> dict:
        t = self.table
        caps = {v.name: Fraction(v.max_exp) for v in t.vars}
        caps["q"] = Fraction(self.N)
        small_laurent = [v for v in t.vars if v.kind == LAURENT and v.small]
        if small_laurent:
            caps["weight"] = min(Fraction(v.max_exp) for v in small_laurent)
        else:
            caps["weight"] = Fraction(self.N) + sum(
                Fraction(v.max_exp) for v in t.vars[1:] if v.small
            )
        return caps

    def true_weight(self, exps) -> Fraction:
        """Weight in true units (lifted q-offset removed)."""
        t = self.table
        w = Fraction(exps[0] - self.offset, self.den)
        for v, e in zip(t.vars[1:], exps[1:]):
            if v.small and e > 0:
                w += Fraction(e, v.denom)
        return w


def _pad(entry: Identity, binding) -> int:
    if callable(entry.pad):
        return entry.pad(binding)
    return entry.pad


def q_denominator(entry: Identity, binding) -> int:
    den = entry.q_denom
    for value in binding.values():
        if isinstance(value, Fraction):
            den = math.lcm(den, value.denominator)
        elif isinstance(value, MonoSpec):
            for d in value.denominators():
                den = math.lcm(den, d)
    return den


def _working_table(entry: Identity, binding, budget: Budget, offset: int):
    """Working table plus the predicate selecting the comparison region."""
    den = q_denominator(entry, binding)
    N = budget.q_cap
    qcap = Fraction(N) + Fraction(offset, den)
    vars_ = [grading(qcap, den)]
    region = []  # (index, lo, hi) in scaled units
    zlo, zhi = budget.z_window
    small_laurent = []
    for name, kind in entry.variables:
        if name in binding:
            continue
        i = len(vars_)
        if kind == "small_laurent":
            # exact where q + max(z, 0) <= N + zhi (all terms have q >= -z)
            vars_.append(laurent(name, -N, N + zhi, small=True))
            small_laurent.append(i)
            region.append((i, zlo, zhi))
        elif kind == "laurent":
            pad = _pad(entry, binding)
            vars_.append(laurent(name, -(N + pad), N + pad, small=False))
            region.append((i, zlo, zhi))
        elif kind == "poly":
            vars_.append(poly(name, zhi, small=True))
            region.append((i, 0, zhi))
        else:
            raise ValueError(f"unknown variable kind {kind}")
    for p in entry.params:
        value = binding.get(p.name)
        if isinstance(value, FormalVar):
            hi = value.hi if value.hi is not None else budget.param_degree
            if value.name in [v.name for v in vars_]:
                raise InvalidBinding(f"formal variable name {value.name} is already in use")
            region.append((len(vars_), 0, hi))
            vars_.append(poly(value.name, hi, small=True))
    table = VarTable(tuple(vars_))
    qmax = N * den + offset

    def keep(exps):
        if exps[0] > qmax:
            return False
        for i, lo, hi in region:
            if not lo <= exps[i] <= hi:
                return False
        return True

    return table, keep


def validate_binding(entry: Identity, binding: Mapping):
    free = set(entry.free)
    given = set(binding)
    missing = free - given
    extra = given - free
    if missing:
        raise InvalidBinding(f"{entry.tag}: missing bindings for {sorted(missing)}")
    if extra:
        raise InvalidBinding(f"{entry.tag}: unknown parameters {sorted(extra)}")
    for p in entry.params:
        value = binding[p.name]
        if p.kind == INT:
            if not isinstance(value, int) or value < 1:
                raise InvalidBinding(f"{p.name} must be a positive integer, got {value!r}")
        elif p.kind == NAT:
            if not isinstance(value, int) or value < 0:
                raise InvalidBinding(f"{p.name} must be a non-negative integer, got {value!r}")
        elif p.kind == RATIONAL:
            if not isinstance(value, (int, Fraction)) or isinstance(value, bool):
                raise InvalidBinding(f"{p.name} must be rational, got {value!r}")
        elif p.kind == PARAM:
            if not isinstance(value, (MonoSpec, FormalVar)):
                raise InvalidBinding(f"{p.name} must be a monomial or formal variable")
            if isinstance(value, MonoSpec):
                for name, e in value.exps:
                    if name != "q":
                        raise InvalidBinding(f"{p.name}: monomial bindings are powers of q only")
                    if e < 0:
                        raise InvalidBinding(f"{p.name}: negative q-order {e} not supported")
                if value.coeff == 0:
                    raise InvalidBinding(f"{p.name} is bound to 0")
    if entry.check:
        entry.check(binding)


def normalize_binding(entry: Identity, binding: Mapping) -> dict:
    out = {}
    for name, value in binding.items():
        kind = next((p.kind for p in entry.params if p.name == name), None)
        if kind == RATIONAL and isinstance(value, int) and not isinstance(value, bool):
            value = Fraction(value)
        out[name] = value
    return out


@dataclass
class VerificationReport:
    identity: str
    bindings: dict
    q_cap: int
    windows: dict
    equal: bool
    first_diff: dict | None
    elapsed: float
    term_counts: dict
    offset: int = 0

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "identity": self.identity,
            "bindings": {k: _fmt_value(v) for k, v in self.bindings.items()},
            "q_cap": self.q_cap,
            "windows": self.windows,
            "equal": self.equal,
            "first_diff": self.first_diff,
            "term_counts": self.term_counts,
        }
        if timing:
            d["meta"] = {"elapsed_ms": round(self.elapsed * 1000, 3)}
        return d


def _fmt_value(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (MonoSpec, FormalVar)):
        return str(v)
    return v


def build_sides(entry: Identity, binding: Mapping, budget: Budget = Budget(), sides=None):
    """Build the requested sides with a common q-offset.

    Returns ``(contexts, series)`` dictionaries keyed by side name; series
    are already restricted to the comparison region.
    """
    binding = normalize_binding(entry, binding)
    validate_binding(entry, binding)
    sides = sides or entry.sides()
    offset = 0
    for _ in range(50):
        try:
            ctxs, out = {}, {}
            for side in sides:
                ctx = Context(entry, binding, budget, offset)
                builder = {"LHS": entry.lhs, "RHS": entry.rhs, "MID": entry.mid}[side]
                if builder is None:
                    raise InvalidBinding(f"{entry.tag} has no {side}")
                ctxs[side] = ctx
                out[side] = builder(ctx).restrict(ctx.compare)
            return ctxs, out
        except OffsetTooSmall as exc:
            offset = max(offset + 1, exc.needed)
    raise NonTerminating(f"{entry.tag}: could not settle the q-offset")


def build_side(entry: Identity, side: str, binding: Mapping, budget: Budget = Budget()):
    _, out = build_sides(entry, binding, budget, sides=("LHS", "RHS") if side != "MID" else None)
    return out[side]


def first_difference(f: TruncatedSeries, g: TruncatedSeries, offset: int = 0):
    diff = f - g
    if not diff:
        return None
    table = f.table
    e = min(diff.terms, key=table.glex_key)
    true = list(table.true_exps(e))
    true[0] -= Fraction(offset, table.vars[0].denom)
    return {
        "monomial": {n: str(x) for n, x in zip(table.names, true) if x},
        "lhs": f.coeff(e),
        "rhs": g.coeff(e),
    }


def verify(entry: Identity, binding: Mapping, budget: Budget = Budget()) -> VerificationReport:
    t0 = time.perf_counter()
    ctxs, out = build_sides(entry, binding, budget)
    names = list(out)
    diff = None
    offset = next(iter(ctxs.values())).offset
    for a, b in zip(names, names[1:]):
        diff = first_difference(out[a], out[b], offset)
        if diff:
            diff["sides"] = [a, b]
            break
    ctx = next(iter(ctxs.values()))
    windows = {"q": [0, budget.q_cap]}
    for name, kind in entry.variables:
        if name in ctx.table.names:
            windows[name] = list(budget.z_window) if kind != "poly" else [0, budget.z_window[1]]
    for p in entry.params:
        v = ctx.binding.get(p.name)
        if isinstance(v, FormalVar):
            windows[v.name] = [0, v.hi if v.hi is not None else budget.param_degree]
    return VerificationReport(
        identity=entry.tag,
        bindings=dict(ctx.binding),
        q_cap=budget.q_cap,
        windows=windows,
        equal=diff is None,
        first_diff=diff,
        elapsed=time.perf_counter() - t0,
        term_counts={k: len(v) for k, v in out.items()},
        offset=offset,
    )


def sign(n: int) -> int:
    return -1 if n % 2 else 1


def binom2(n) -> int:
    return n * (n - 1) // 2


def neg_part(x0, count=INF, step=1) -> Fraction:
    """Sum of the negative members of ``x0, x0+step, ...`` (``count`` of them)."""
    total = Fraction(0)
    x = Fraction(x0)
    j = 0
    while x < 0 and (count is INF or j < count):
        total += x
        x += step
        j += 1
    return total
