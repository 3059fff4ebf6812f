"""Stability classification of tensor normal model data.

Two independent classifiers decide, for a datum (d_1, ..., d_k; m), whether
generic data make the log-likelihood unbounded (unstable), bounded with a
maximizer but no unique one (polystable, not stable), or bounded with an
almost surely unique maximizer (stable).  One classifier evaluates closed
formulas in the exact invariants R, Delta, g_max; the other walks the
castling recursion.  They agree on every input; `explain` cross-checks them.

On top of the classifiers sit the exact sample-count thresholds (smallest m
making the likelihood bounded / a maximizer exist / the maximizer unique)
and the dimension of the invariant-theoretic quotient for generic data.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .castling import CastlingTrace, castle_step, reduce_to_minimal
from .datum import (
    Datum,
    big_r,
    delta,
    g_max,
    index_of_factor,
    normalize,
    z_quantity,
)

__all__ = [
    "StabilityClass",
    "MleProfile",
    "ThresholdReport",
    "ClassificationReport",
    "classify_closed_form",
    "classify_recursive",
    "mle_profile",
    "thresholds",
    "git_dimension",
    "explain",
]

log = logging.getLogger(__name__)


class StabilityClass(Enum):
    """Orbit behaviour of generic data under the model's symmetry group."""

    UNSTABLE = "unstable"
    POLYSTABLE_NOT_STABLE = "polystable_not_stable"
    STABLE = "stable"


def classify_closed_form(datum: Datum) -> StabilityClass:
    """Classify via closed formulas in R, Delta and g_max.

    R < 0 is unstable.  R = 0 is stable exactly when g_max = 1.  For R > 0:
    with one sample, stable exactly when Delta >= -1; with m >= 2, stable
    exactly when R > g_max^2 or g_max = 1.
    """
    r = big_r(datum)
    if r < 0:
        return StabilityClass.UNSTABLE
    g = g_max(datum)
    if r == 0:
        return StabilityClass.STABLE if g == 1 else StabilityClass.POLYSTABLE_NOT_STABLE
    if datum.m == 1:
        if delta(datum) >= -1:
            return StabilityClass.STABLE
        return StabilityClass.POLYSTABLE_NOT_STABLE
    if r > g * g or g == 1:
        return StabilityClass.STABLE
    return StabilityClass.POLYSTABLE_NOT_STABLE


def _is_exceptional(datum: Datum) -> bool:
    """Normalized data whose generic orbit is closed but never stable
    despite 2*d_k <= N: the shapes (2, d, d; 1) and (d, d; 2) with d >= 2."""
    dims, m = datum.dims, datum.m
    if m == 1 and len(dims) == 3 and dims[0] == 2 and dims[1] == dims[2] >= 2:
        return True
    if m == 2 and len(dims) == 2 and dims[0] == dims[1] >= 2:
        return True
    return False


def classify_recursive(datum: Datum) -> StabilityClass:
    """Classify by the castling recursion, no closed formulas.

    After normalizing, compare the largest dimension d_k with
    N = m * d_1 * ... * d_{k-1}:

    * d_k > N: unstable.
    * d_k = N: stable only for a single-dimension datum, else polystable.
    * N/2 < d_k < N: castle and repeat.
    * 2*d_k <= N: stable unless the datum is one of the exceptional shapes
      (2, d, d; 1) or (d, d; 2) with d >= 2, which are polystable.

    Iterative; the number of castling moves is at most log2(prod d_i).
    """
    cur = normalize(datum)
    while True:
        n = cur.m * math.prod(cur.dims[:-1])
        d_k = cur.dims[-1]
        if d_k > n:
            return StabilityClass.UNSTABLE
        if d_k == n:
            if len(cur.dims) == 1:
                return StabilityClass.STABLE
            return StabilityClass.POLYSTABLE_NOT_STABLE
        if 2 * d_k > n:
            cur = castle_step(cur)
            continue
        if _is_exceptional(cur):
            return StabilityClass.POLYSTABLE_NOT_STABLE
        return StabilityClass.STABLE


@dataclass(frozen=True)
class MleProfile:
    """Almost-sure behaviour of the likelihood at the given sample count.

    bounded_as / exists_as / unique_as: the log-likelihood is bounded above,
    a maximizer exists, the maximizer is unique -- each almost surely.
    always_unbounded: the likelihood is unbounded for generic data (the
    negation of bounded_as).  The same profile holds over the reals and the
    complex numbers.
    """

    bounded_as: bool
    exists_as: bool
    unique_as: bool
    always_unbounded: bool


def mle_profile(datum: Datum) -> MleProfile:
    """Read the likelihood profile off the stability class.

    Unstable means unbounded likelihood; otherwise a maximizer exists
    almost surely, and it is almost surely unique exactly in the stable
    case.
    """
    cls = classify_closed_form(datum)
    if cls is StabilityClass.UNSTABLE:
        return MleProfile(False, False, False, True)
    return MleProfile(True, True, cls is StabilityClass.STABLE, False)


@dataclass(frozen=True)
class ThresholdReport:
    """Smallest sample counts with the three almost-sure guarantees.

    mlt_b: likelihood bounded; mlt_e: maximizer exists; mlt_u: maximizer
    unique.  Always mlt_b = mlt_e <= mlt_u.  cor_bounds, present for
    normalized data with k >= 3 dimensions all >= 2, is the exact sandwich
    (ceil(r), ceil(r) + 1) with r = d_k / (d_1 ... d_{k-1}): the first
    entry bounds mlt_b from below, the second bounds mlt_u from above.
    """

    mlt_b: int
    mlt_e: int
    mlt_u: int
    cor_bounds: Optional[tuple[int, int]] = None


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def thresholds(dims: Sequence[int]) -> ThresholdReport:
    """Exact sample-count thresholds for the given dimensions.

    Boundedness and existence switch on together at the smallest m with
    R >= 0, which is ceil(Z(d_1^2, ..., d_k^2) / prod(d_i)) clamped to at
    least 1.  Uniqueness is found by incrementing m from there until the
    classifier reports stable; once stable at some m, every larger m is
    stable as well.
    """
    probe = Datum(tuple(dims), 1)
    z = z_quantity(tuple(d * d for d in probe.dims))
    mlt_b = max(1, _ceil_div(z, probe.product()))

    m = mlt_b
    while classify_closed_form(Datum(probe.dims, m)) is not StabilityClass.STABLE:
        m += 1
    mlt_u = m

    cor_bounds = None
    norm = normalize(probe)
    if norm.k >= 3:
        r = Fraction(norm.dims[-1], math.prod(norm.dims[:-1]))
        lower = math.ceil(r)
        cor_bounds = (lower, lower + 1)
    return ThresholdReport(mlt_b=mlt_b, mlt_e=mlt_b, mlt_u=mlt_u, cor_bounds=cor_bounds)


def git_dimension(datum: Datum) -> Optional[int]:
    """Dimension of the invariant-theoretic quotient for generic data
    (over the complex numbers); None when the quotient is empty.

    R < 0: empty.  R = 0: a point, dimension 0.  For R > 0 the dimension
    is Delta except for two exceptional families: max(g_max - 3, 0) when
    m = 1 and Delta = -2, and g_max when m = 2 and R = g_max^2 > 1.
    """
    r = big_r(datum)
    if r < 0:
        return None
    if r == 0:
        return 0
    g = g_max(datum)
    if datum.m == 1 and delta(datum) == -2:
        return max(g - 3, 0)
    if datum.m == 2 and r == g * g and r > 1:
        return g
    return delta(datum)


@dataclass(frozen=True)
class ClassificationReport:
    """Everything the library can say about one datum, cross-checked."""

    datum: Datum
    normalized: Datum
    big_r: int
    delta: int
    g_max: int
    z: int
    indices: tuple[Fraction, ...]
    trace: CastlingTrace
    class_closed_form: StabilityClass
    class_recursive: StabilityClass
    classifiers_agree: bool
    profile: MleProfile
    thresholds: ThresholdReport
    git_dimension: Optional[int]

    @property
    def stability(self) -> StabilityClass:
        return self.class_closed_form


def explain(datum: Datum) -> ClassificationReport:
    """Full dossier: invariants, castling trace, both classifications,
    likelihood profile, thresholds and quotient dimension.

    The two classifiers are required to agree; a disagreement is reported
    through the `classifiers_agree` flag and a logged warning, never by
    raising.
    """
    norm = normalize(datum)
    closed = classify_closed_form(datum)
    recursive = classify_recursive(datum)
    agree = closed is recursive
    if not agree:
        log.warning(
            "classifier disagreement on %s: closed form says %s, recursion says %s",
            datum, closed.value, recursive.value,
        )
    if norm.dims == (1,):
        indices: tuple[Fraction, ...] = ()
    else:
        indices = tuple(index_of_factor(norm, i) for i in range(1, norm.k + 1))
    return ClassificationReport(
        datum=datum,
        normalized=norm,
        big_r=big_r(datum),
        delta=delta(datum),
        g_max=g_max(datum),
        z=z_quantity(tuple(d * d for d in norm.dims)),
        indices=indices,
        trace=reduce_to_minimal(datum),
        class_closed_form=closed,
        class_recursive=recursive,
        classifiers_agree=agree,
        profile=mle_profile(datum),
        thresholds=thresholds(datum.dims),
        git_dimension=git_dimension(datum),
    )
