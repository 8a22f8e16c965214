"""Non-negativity scan for averaged truncations of the triple product under
``q -> q^R``, ``z -> q^S``."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..errors import InvalidParameters
from ..qobjects import INF, inverse_pochhammer
from ..series import Mono, TruncatedSeries, qtable, sum_series


@dataclass
class ConjectureReport:
    k: int
    R: int
    S: int
    q_cap: int
    violations: list[tuple[int, int]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def holds(self) -> bool:
        return not self.violations


def _check(k: int, R: int, S: int, q_cap: int):
    if k < 1 or R < 1 or S < 1:
        raise InvalidParameters("k, R and S must be positive integers")
    if not 2 * S < R:
        raise InvalidParameters(f"need 1 <= S < R/2, got R={R}, S={S}")
    if q_cap < 1:
        raise InvalidParameters("q_cap must be >= 1")


def am_truncation(k: int, R: int, S: int, q_cap: int) -> TruncatedSeries:
    """``(-1)^(k-1) / (q^S, q^(R-S), q^R; q^R)_inf * sum_{0<=n<k} (-1)^n
    q^(binom(n+1,2) R - n S) (1 - q^((2n+1) S))`` to ``q^q_cap``."""
    _check(k, R, S, q_cap)
    table = qtable(q_cap)

    def q(e, c=1):
        return Mono(table, c, (e,))

    parts = []
    for n in range(k):
        e = n * (n + 1) // 2 * R - n * S
        s = 1 if n % 2 == 0 else -1
        parts.append(q(e, s).series(truncate=True))
        parts.append(q(e + (2 * n + 1) * S, -s).series(truncate=True))
    f = sum_series(table, parts)
    for start in (S, R - S, R):
        f = inverse_pochhammer(q(start), INF, table, base=R, into=f)
    return f * (1 if k % 2 == 1 else -1)


def verify_conjecture_nonneg(k: int, R: int, S: int, q_cap: int = 40) -> ConjectureReport:
    """Scan the coefficients of ``q^m``, ``1 <= m <= q_cap``, for negative
    values."""
    t0 = time.perf_counter()
    f = am_truncation(k, R, S, q_cap)
    bad = sorted((e[0], c) for e, c in f.items() if e[0] >= 1 and c < 0)
    return ConjectureReport(k, R, S, q_cap, bad, time.perf_counter() - t0)
