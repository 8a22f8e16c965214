"""Inequality scanners over partition-statistic tables and the unimodality
scanner for the truncated three-colour statistic."""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameters, RangeTooSmall
from .partitions import PartitionStatTable, gf_coefficients

FAMILIES = {"I": "JkI", "II": "JkII"}
WHICH = ("nonneg", "shift_minus", "shift_plus")

# stat -> (l-range as a function of k, shift of n)
CORN = {
    "JE": (lambda k: range(-k, k + 2), lambda l: l * (3 * l - 1) // 2),
    "JT": (lambda k: range(-k, k + 1), lambda l: l * (l - 1) // 2),
    "JG": (lambda k: range(-k, k + 2), lambda l: l * l),
}


@dataclass
class ScanResult:
    scan: str
    ranges: dict
    violations: list = field(default_factory=list)  # (k, m, n, value)
    count: int = 0
    ms: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "scan": self.scan,
            "ranges": self.ranges,
            "violations": [{"k": k, "m": m, "n": n, "value": v} for k, m, n, v in self.violations],
            "count": self.count,
        }
        if timing:
            d["ms"] = round(self.ms, 3)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=1, sort_keys=True) + "\n"


def _check_bounds(**bounds):
    for name, v in bounds.items():
        if v < 0:
            raise InvalidParameters(f"{name} must be >= 0, got {v}")


def _map_k(fn, args, workers):
    if workers <= 1 or len(args) <= 1:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args))


# -- positivity and shift inequalities for the J^I and J^II families ------------------

def j_array(family: str, k: int, n_max: int, m_reach: int) -> np.ndarray:
    """``A[n, m + m_reach]`` for ``J_k^family(m, n)``, ``|m| <= m_reach``."""
    table = gf_coefficients(FAMILIES[family], n_max, k=k, m_max=m_reach)
    return table.array(m_reach)[0]


def _cor_ineq_k(args):
    family, which, k, n_min, n_max, m_max = args
    a = j_array(family, k, n_max, m_max + 1)
    off = m_max + 1
    ms = np.arange(-m_max, m_max + 1)
    found, count = [], 0
    for n in range(max(n_min, 1), n_max + 1):
        row = a[n, ms + off]
        if which == "nonneg":
            vals = row
        elif which == "shift_minus":
            vals = row - a[n - 1, ms - 1 + off]
        else:
            vals = row - a[n - 1, ms + 1 + off]
        count += len(ms)
        for i in np.nonzero(vals < 0)[0]:
            found.append((k, int(ms[i]), n, int(vals[i])))
    return found, count


def scan_cor_ineq(family: str, which: str, k_max: int, n_max: int, m_max: int,
                  k_min: int = 0, n_min: int = 1, workers: int = 1) -> ScanResult:
    """Check ``J >= 0``, ``J(m,n) >= J(m-1,n-1)`` or ``J(m,n) >= J(m+1,n-1)``
    for ``k_min <= k <= k_max``, ``n_min <= n <= n_max`` (``n >= 1``),
    ``|m| <= m_max``."""
    if family not in FAMILIES:
        raise InvalidParameters(f"family must be I or II, got {family!r}")
    if which not in WHICH:
        raise InvalidParameters(f"which must be one of {WHICH}, got {which!r}")
    _check_bounds(k_min=k_min, k_max=k_max, n_max=n_max, m_max=m_max)
    t0 = time.perf_counter()
    jobs = [(family, which, k, n_min, n_max, m_max) for k in range(k_min, k_max + 1)]
    res = ScanResult(
        f"cor_ineq:{family}:{which}",
        {"k": [k_min, k_max], "n": [max(n_min, 1), n_max], "m": [-m_max, m_max]},
    )
    for found, count in _map_k(_cor_ineq_k, jobs, workers):
        res.violations += found
        res.count += count
    res.ms = 1000 * (time.perf_counter() - t0)
    return res


# -- alternating sums of shifted partition counts -------------------------------------

def corn_value(table: PartitionStatTable, stat: str, k: int, m: int, n: int) -> int:
    """``(-1)^k sum_l (-1)^l stat(m - l, n - shift(l))`` over the stat's
    l-range."""
    lrange, shift = CORN[stat]
    total = 0
    for l in lrange(k):
        v = table.get(m - l, n - shift(l))
        total += v if l % 2 == 0 else -v
    return total if k % 2 == 0 else -total


def scan_corn(stat: str, k_max: int, n_max: int, m_max: int, table: PartitionStatTable | None = None,
              k_min: int = 0, n_min: int = 0) -> ScanResult:
    """Record every ``(k, m, n)`` where the alternating sum is negative.

    Without ``table`` the statistic is expanded to the needed range.  A
    supplied table must reach ``n_max`` and ``|m| <= m_max + k_max + 1``
    (or cover the whole support ``|m| <= n``)."""
    if stat not in CORN:
        raise InvalidParameters(f"stat must be one of {tuple(CORN)}, got {stat!r}")
    _check_bounds(k_min=k_min, k_max=k_max, n_max=n_max, m_max=m_max, n_min=n_min)
    reach = m_max + k_max + 1
    if table is None:
        table = gf_coefficients(stat, n_max, m_max=min(reach, n_max))
    if table.stat != stat:
        raise InvalidParameters(f"table holds {table.stat}, not {stat}")
    # the support of each statistic lies in |m| <= n
    if table.max_n < n_max or (table.m_max is not None and table.m_max < min(reach, table.max_n)):
        raise RangeTooSmall(
            f"{stat} table (n <= {table.max_n}, |m| <= {table.m_max}) does not cover "
            f"n <= {n_max}, |m| <= {reach}"
        )
    t0 = time.perf_counter()
    res = ScanResult(f"corn:{stat}", {"k": [k_min, k_max], "n": [n_min, n_max], "m": [-m_max, m_max]})

    lrange, shift = CORN[stat]
    for k in range(k_min, k_max + 1):
        ls = [(l, shift(l), 1 if l % 2 == 0 else -1) for l in lrange(k)]
        sk = 1 if k % 2 == 0 else -1
        for n in range(n_min, n_max + 1):
            for m in range(-m_max, m_max + 1):
                v = sk * sum(s * table.get(m - l, n - sh) for l, sh, s in ls)
                res.count += 1
                if v < 0:
                    res.violations.append((k, m, n, v))
    res.ms = 1000 * (time.perf_counter() - t0)
    return res


# -- unimodality -------------------------------------------------------------------

def is_unimodal(seq) -> bool:
    """Weakly increasing up to some peak, weakly decreasing after it."""
    seq = list(seq)
    i = 1
    while i < len(seq) and seq[i] >= seq[i - 1]:
        i += 1
    while i < len(seq) and seq[i] <= seq[i - 1]:
        i += 1
    return i >= len(seq)


def unimodal_rows(k: int, n_max: int, n_min: int = 1):
    """``{n: [J_k^T(m, n) for -n <= m <= n]}``."""
    table = gf_coefficients("JkT", n_max, k=k, m_max=n_max)
    a, off = table.array(n_max)
    return {n: [int(x) for x in a[n, off - n: off + n + 1]] for n in range(n_min, n_max + 1)}


def scan_unimodal(k_max: int, n_max: int, k_min: int = 0, n_min: int = 1, rows=None) -> ScanResult:
    """Every ``(k, n)`` whose sequence over ``-n <= m <= n`` is not
    unimodal.  Violations carry ``m = None`` and the offending sequence as
    value.  ``rows(k)`` may replace the table builder (used to inject
    sequences)."""
    _check_bounds(k_min=k_min, k_max=k_max, n_max=n_max)
    t0 = time.perf_counter()
    res = ScanResult("unimodal", {"k": [k_min, k_max], "n": [max(n_min, 1), n_max]})
    for k in range(k_min, k_max + 1):
        table = rows(k) if rows is not None else unimodal_rows(k, n_max, max(n_min, 1))
        for n in sorted(table):
            res.count += 1
            if not is_unimodal(table[n]):
                res.violations.append((k, None, n, list(table[n])))
    res.ms = 1000 * (time.perf_counter() - t0)
    return res
