"""Catalog of identities addressable by stable string tags."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from ..errors import InvalidBinding
from .classical import (
    EQ002,
    GAUSS_HALF,
    GAUSS_SQUARE,
    JTP,
    NTQBIN,
    PARTIAL_THETA,
    PHI01,
    PNT,
    QEXP1,
    QEXP2,
    QGAUSS,
    RF,
    SW_TRANSFORM,
    VWP5PHI5,
    WATSON,
)
from .conjecture import ConjectureReport, am_truncation, verify_conjecture_nonneg
from .core import (
    Budget,
    Context,
    FormalVar,
    Identity,
    MonoSpec,
    VerificationReport,
    build_side,
    build_sides,
    verify,
)
from .qgauss import COR11_1, COR11_2, COR11_3, COR11_4, COR12_1, COR12_2, EQM0, EQM1, MTH2, MTH3
from .rational import CORMM1, CORMM2, EQ1000, EQMMM21, EQUMM1, EQUMM2
from .theta import AM_TRUNC, GZ_GAUSS_A, GZ_GAUSS_B, TJS1, TJS2, WY1, WY2

_ENTRIES = (
    PNT, AM_TRUNC, JTP, GZ_GAUSS_A, GZ_GAUSS_B, WY1, WY2, TJS1, TJS2,
    QGAUSS, NTQBIN, QEXP1, QEXP2, PHI01, MTH2, COR11_1, COR11_2, COR11_3, COR11_4,
    VWP5PHI5, RF, EQ002, EQUMM1, GAUSS_SQUARE, GAUSS_HALF, EQUMM2,
    MTH3, COR12_1, COR12_2, CORMM1, CORMM2, EQ1000, EQMMM21,
    SW_TRANSFORM, PARTIAL_THETA, EQM0, EQM1, WATSON,
)

CATALOG: dict[str, Identity] = {e.tag: e for e in _ENTRIES}


def get(tag: str) -> Identity:
    try:
        return CATALOG[tag]
    except KeyError:
        raise InvalidBinding(f"unknown identity {tag!r}") from None


def _default_sweep(entry: Identity) -> tuple:
    """Bindings used for catalog-wide verification."""
    if entry.sweep:
        return entry.sweep
    if not entry.params:
        return ({},)
    from .classical import MONO_SWEEP

    return tuple({entry.params[0].name: m} for m in MONO_SWEEP)


def sweep(tag: str) -> tuple:
    return _default_sweep(get(tag))


def _run(job):
    tag, binding, budget = job
    return verify(get(tag), binding, budget)


def verify_many(jobs, workers: int = 1) -> list[VerificationReport]:
    """Verify ``(tag, binding, budget)`` jobs, optionally in parallel; the
    result order matches the job order."""
    jobs = list(jobs)
    if workers <= 1 or len(jobs) <= 1:
        return [_run(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run, jobs, chunksize=1))


__all__ = [
    "CATALOG", "Budget", "Context", "ConjectureReport", "FormalVar", "Identity", "MonoSpec",
    "VerificationReport", "am_truncation", "build_side", "build_sides", "get", "sweep",
    "verify", "verify_conjecture_nonneg", "verify_many",
]
