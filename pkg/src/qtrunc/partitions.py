"""Partition statistics by brute-force enumeration and by generating
functions.

Enumeration never touches the series engine, so the two routes check each
other.  Tables are dictionaries ``(m, n) -> count``; for statistics without
a second index (``P``, ``PBAR``, ``MK``) ``m`` is ``None``.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from pathlib import Path

import numpy as np

from .qobjects import INF, inverse_pochhammer, pochhammer, q_binomial
from .series import Mono, constant, grading, laurent, mul, mul_mono, sum_series, VarTable

UNCOLORED = ("P", "PBAR", "MK")
COLORED = ("JE", "JT", "JG")
TRUNCATED = ("JkT", "JkI", "JkII")
STATS = UNCOLORED + COLORED + TRUNCATED
NEEDS_K = ("MK",) + TRUNCATED


# -- enumeration ---------------------------------------------------------------

def partitions(n: int, max_part: int | None = None):
    """Partitions of ``n`` as tuples of ``(part, multiplicity)``, parts
    decreasing."""
    if n < 0:
        return
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        yield ()
        return
    for part in range(max_part, 0, -1):
        for mult in range(n // part, 0, -1):
            for rest in partitions(n - part * mult, part - 1):
                yield ((part, mult),) + rest


@lru_cache(maxsize=None)
def _all_partitions(n: int) -> tuple:
    return tuple(partitions(n))


def count_p(n: int) -> int:
    if n < 0:
        return 0
    return len(_all_partitions(n))


def count_pbar(n: int) -> int:
    """Overpartitions: the last occurrence of each distinct part may be
    overlined, so a partition with ``d`` distinct parts yields ``2^d``."""
    if n < 0:
        return 0
    return sum(2 ** len(lam) for lam in _all_partitions(n))


def is_mk(lam, k: int) -> bool:
    """``k`` is the least positive integer that is not a part, and there are
    more parts above ``k`` than below it."""
    parts = {s: m for s, m in lam}
    if k in parts or any(j not in parts for j in range(1, k)):
        return False
    above = sum(m for s, m in lam if s > k)
    below = sum(m for s, m in lam if s < k)
    return above > below


def count_Mk(k: int, n: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        return 0
    return sum(1 for lam in _all_partitions(n) if is_mk(lam, k))


@lru_cache(maxsize=None)
def je_row(n: int) -> dict:
    """``m -> J_E(m, n)``: parts 1 mod 3 count +1, parts 2 mod 3 count -1."""
    row = Counter()
    for lam in _all_partitions(n):
        m = sum(mult for s, mult in lam if s % 3 == 1) - sum(mult for s, mult in lam if s % 3 == 2)
        row[m] += 1
    return dict(row)


def _split_colors(lam, colored):
    """Distribution of ``red - green`` over all ways to colour ``lam``.

    ``colored(s)`` says which colours part size ``s`` may take: ``"rgb"``
    (three colours) or ``"rg"`` (red or green).  A multiplicity ``mu`` is
    split into per-colour multiplicities.
    """
    dist = Counter({0: 1})
    for s, mu in lam:
        colors = colored(s)
        if colors == "b":
            continue
        step = Counter()
        for r in range(mu + 1):
            for g in range(mu - r + 1):
                if colors == "rg" and r + g != mu:
                    continue
                step[r - g] += 1
        new = Counter()
        for a, x in dist.items():
            for b, y in step.items():
                new[a + b] += x * y
        dist = new
    return dist


@lru_cache(maxsize=None)
def jt_row(n: int) -> dict:
    """``m -> J_T(m, n)``: three-coloured partitions, ``m`` = red - green."""
    row = Counter()
    for lam in _all_partitions(n):
        row.update(_split_colors(lam, lambda s: "rgb"))
    return {m: c for m, c in row.items() if c}


@lru_cache(maxsize=None)
def jg_row(n: int) -> dict:
    """``m -> J_G(m, n)``: odd parts are red or green, even parts blue."""
    row = Counter()
    for lam in _all_partitions(n):
        row.update(_split_colors(lam, lambda s: "rg" if s % 2 else "b"))
    return {m: c for m, c in row.items() if c}


def count_JE(m: int, n: int) -> int:
    return je_row(n).get(m, 0) if n >= 0 else 0


def count_JT(m: int, n: int) -> int:
    return jt_row(n).get(m, 0) if n >= 0 else 0


def count_JG(m: int, n: int) -> int:
    return jg_row(n).get(m, 0) if n >= 0 else 0


def count_three_colored(n: int) -> int:
    """Number of three-coloured partitions of ``n``: a part of multiplicity
    ``mu`` splits in ``C(mu + 2, 2)`` ways."""
    total = 0
    for lam in _all_partitions(n):
        ways = 1
        for _, mu in lam:
            ways *= comb(mu + 2, 2)
        total += ways
    return total


def alternating_p_sum(k: int, n: int) -> int:
    """``(-1)^(k-1) sum_{0<=j<k} (-1)^j (p(n - j(3j+1)/2) - p(n - j(3j+5)/2 - 1))``."""
    total = 0
    for j in range(k):
        term = count_p(n - j * (3 * j + 1) // 2) - count_p(n - j * (3 * j + 5) // 2 - 1)
        total += term if j % 2 == 0 else -term
    return total if k % 2 == 1 else -total


# -- tables --------------------------------------------------------------------

@dataclass
class PartitionStatTable:
    stat: str
    max_n: int
    counts: dict = field(default_factory=dict)
    k: int | None = None
    m_max: int | None = None  # colored tables are exact for |m| <= m_max

    def get(self, m, n) -> int:
        if n < 0:
            return 0
        if n > self.max_n:
            raise IndexError(f"n = {n} beyond the table (max_n = {self.max_n})")
        if self.stat in UNCOLORED:
            return self.counts.get((None, n), 0)
        if self.stat in COLORED and abs(m) > n:
            return 0
        if self.m_max is not None and abs(m) > self.m_max:
            raise IndexError(f"m = {m} beyond the table (m_max = {self.m_max})")
        return self.counts.get((m, n), 0)

    def rows(self):
        """``(m, n, count)`` rows in CSV order (n ascending, then m)."""
        if self.stat in UNCOLORED:
            return [(None, n, self.counts.get((None, n), 0)) for n in range(self.max_n + 1)]
        keys = sorted(self.counts, key=lambda mn: (mn[1], mn[0]))
        return [(m, n, self.counts[(m, n)]) for m, n in keys if self.counts[(m, n)]]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["stat", "m", "n", "count"])
        # MK has no m index; its column carries k so rows read (k, n, count)
        blank = self.k if self.stat == "MK" else ""
        for m, n, c in self.rows():
            w.writerow([self.stat, blank if m is None else m, n, c])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "stat": self.stat,
            "k": self.k,
            "max_n": self.max_n,
            "m_max": self.m_max,
            "rows": [{"m": m, "n": n, "count": c} for m, n, c in self.rows()],
        }
        return json.dumps(payload, indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_csv(cls, text: str, stat: str, max_n: int, k=None, m_max=None) -> "PartitionStatTable":
        counts = {}
        for row in csv.DictReader(io.StringIO(text)):
            m = None if stat in UNCOLORED else int(row["m"])
            counts[(m, int(row["n"]))] = int(row["count"])
        return cls(stat, max_n, counts, k, m_max)

    def array(self, m_reach: int | None = None) -> tuple[np.ndarray, int]:
        """``(A, off)`` with ``A[n, m + off]`` the count; int64, checked for
        overflow."""
        if self.stat in UNCOLORED:
            vals = [self.counts.get((None, n), 0) for n in range(self.max_n + 1)]
            _check_int64(vals)
            return np.array(vals, dtype=np.int64).reshape(-1, 1), 0
        reach = self.m_max if m_reach is None else m_reach
        if self.m_max is not None and reach > self.m_max:
            raise IndexError(f"m reach {reach} beyond m_max {self.m_max}")
        out = np.zeros((self.max_n + 1, 2 * reach + 1), dtype=np.int64)
        vals = list(self.counts.values())
        _check_int64(vals)
        for (m, n), c in self.counts.items():
            if abs(m) <= reach:
                out[n, m + reach] = c
        return out, reach


def _check_int64(values):
    limit = 2**62
    for v in values:
        if abs(v) >= limit:
            raise OverflowError(f"count {v} does not fit comfortably in int64")


def enumerate_table(stat: str, max_n: int, k: int | None = None) -> PartitionStatTable:
    """Table by enumeration (``P``, ``PBAR``, ``MK``, ``JE``, ``JT``, ``JG``)."""
    counts = {}
    if stat == "P":
        counts = {(None, n): count_p(n) for n in range(max_n + 1)}
    elif stat == "PBAR":
        counts = {(None, n): count_pbar(n) for n in range(max_n + 1)}
    elif stat == "MK":
        counts = {(None, n): count_Mk(k, n) for n in range(max_n + 1)}
    elif stat in COLORED:
        row = {"JE": je_row, "JT": jt_row, "JG": jg_row}[stat]
        for n in range(max_n + 1):
            for m, c in row(n).items():
                counts[(m, n)] = c
        return PartitionStatTable(stat, max_n, counts, None, max_n)
    else:
        raise ValueError(f"no enumeration for {stat!r}")
    return PartitionStatTable(stat, max_n, counts, k)


# -- generating functions --------------------------------------------------------

def _qtab(n_max: int) -> VarTable:
    return VarTable((grading(n_max),))


def _qz_table(n_max: int, lo: int, hi: int, small: bool) -> VarTable:
    return VarTable((grading(n_max), laurent("z", lo, hi, small=small)))


def _mono(table, c=1, **e):
    return table.mono(c, **e)


def _inv_theta(table, first, z):
    q = _mono(table, q=1)
    f = inverse_pochhammer(first, INF, table)
    f = inverse_pochhammer(q / z, INF, table, into=f)
    return inverse_pochhammer(q, INF, table, into=f)


def truncated_theta_series(kind: str, k: int, n_max: int, m_max: int | None = None):
    """Generating function of ``J_k^T``, ``J_k^I`` or ``J_k^II`` over a
    working table that is exact for ``n <= n_max`` and ``|m| <= m_max``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    m_max = n_max if m_max is None else m_max
    sgn = 1 if k % 2 == 0 else -1
    if kind in ("JkT", "JkI"):
        # small Laurent z: exact where q <= n_max and z <= m_max
        table = _qz_table(n_max, -n_max - k - 2, n_max + m_max, small=True)
        z = _mono(table, z=1)
        if kind == "JkT":
            terms = []
            for l in range(k + 1):
                m = _mono(table, 1 if l % 2 == 0 else -1, q=l * (l + 1) // 2, z=-l)
                terms += [m.series(truncate=True), -(m * z ** (2 * l + 1)).series(truncate=True)]
        else:
            terms = [_mono(table, 1 if l % 2 == 0 else -1, q=l * (l - 1) // 2, z=l).series(truncate=True)
                     for l in range(-k, k + 2)]
        f = mul(sum_series(table, terms), _inv_theta(table, z, z)) * sgn
        if kind == "JkI":
            f = f - constant(table, sgn)
        return f
    if kind == "JkII":
        pad = k + 2
        table = _qz_table(n_max, -(n_max + pad), n_max + pad, small=False)
        z = _mono(table, z=1)
        q = _mono(table, q=1)
        terms = [_mono(table, 1 if l % 2 == 0 else -1, q=l * (l - 1) // 2, z=l).series(truncate=True)
                 for l in range(-k, k + 1)]
        f = mul(sum_series(table, terms), _inv_theta(table, q * z, z)) * sgn
        return f - (constant(table, 1) - z.series()) * sgn
    raise ValueError(f"unknown truncated statistic {kind!r}")


def _colored_series(stat: str, n_max: int):
    table = _qz_table(n_max, -n_max, n_max, small=False)
    z = _mono(table, z=1)
    if stat == "JE":
        return _inv_theta_base(table, [_mono(table, q=1) * z, _mono(table, q=2) / z, _mono(table, q=3)], 3)
    if stat == "JT":
        q = _mono(table, q=1)
        return _inv_theta(table, q * z, z)
    if stat == "JG":
        return _inv_theta_base(table, [_mono(table, q=1) * z, _mono(table, q=1) / z, _mono(table, q=2)], 2)
    raise ValueError(stat)


def _inv_theta_base(table, starts, base):
    f = constant(table, 1)
    for s in starts:
        f = inverse_pochhammer(s, INF, table, base=base, into=f)
    return f


def _uncolored_series(stat: str, n_max: int, k: int | None):
    table = _qtab(n_max)
    q = _mono(table, q=1)
    if stat == "P":
        return inverse_pochhammer(q, INF, table)
    if stat == "PBAR":
        return inverse_pochhammer(q, INF, table, into=pochhammer(-q, INF, table))
    if stat == "MK":
        # sum_{n>=k} q^(binom(k,2) + (k+1) n) / (q;q)_n [n-1, k-1]
        b = k * (k - 1) // 2
        parts = []
        n = k
        while b + (k + 1) * n <= n_max:
            f = mul_mono(q_binomial(n - 1, k - 1, table), q ** (b + (k + 1) * n))
            parts.append(inverse_pochhammer(q, n, table, into=f))
            n += 1
        return sum_series(table, parts)
    raise ValueError(stat)


GENERATOR_VERSION = "1"


def _source_hash() -> str:
    h = hashlib.sha256(GENERATOR_VERSION.encode())
    h.update(Path(__file__).read_bytes())
    return h.hexdigest()[:16]


def cache_dir() -> Path:
    env = os.environ.get("QTRUNC_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "qtrunc"


def _cache_path(stat, n_max, k, m_max) -> Path:
    key = f"{stat}-k{k}-n{n_max}-m{m_max}-{_source_hash()}"
    return cache_dir() / f"{key}.csv"


def gf_coefficients(stat: str, n_max: int, k: int | None = None, m_max: int | None = None,
                    cache: bool = False) -> PartitionStatTable:
    """Coefficient table of the statistic's generating function."""
    if stat not in STATS:
        raise ValueError(f"unknown statistic {stat!r}; expected one of {', '.join(STATS)}")
    if stat in NEEDS_K and k is None:
        raise ValueError(f"{stat} needs k")
    if stat == "MK" and k < 1:
        raise ValueError("MK needs k >= 1")
    if stat not in NEEDS_K:
        k = None
    if stat in UNCOLORED:
        m_max = None
    elif m_max is None:
        m_max = n_max
    path = _cache_path(stat, n_max, k, m_max) if cache else None
    if path is not None and path.exists():
        return PartitionStatTable.from_csv(path.read_text(), stat, n_max, k, m_max)

    if stat in UNCOLORED:
        f = _uncolored_series(stat, n_max, k)
        counts = {(None, n): f.coeff((n,)) for n in range(n_max + 1)}
    else:
        f = _colored_series(stat, n_max) if stat in COLORED else truncated_theta_series(stat, k, n_max, m_max)
        counts = {}
        for (n, m), c in f.items():
            if n <= n_max and abs(m) <= m_max and c:
                counts[(m, n)] = c
    table = PartitionStatTable(stat, n_max, counts, k, m_max)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(table.to_csv())
        tmp.replace(path)
    return table
