"""Closed-form and numeric analytics for (alpha, beta) power-law multigraphs.

Everything here is a pure function of its arguments: zeta evaluation,
degree-class counts, node/edge estimates, exact degree-interval sums with
their integral-envelope bounds, split-scheme parameters, ratio bounds for
the SDP-based algorithm, and the explicit inapproximability ratio.

Degree counts are floors of e^alpha / i^beta.  Because callers typically
pass alpha = ln(target), floors sit exactly on integer boundaries up to
float rounding; all floor evaluations therefore snap values within a
relative 1e-9 of an integer before flooring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import mpmath
import numpy as np

from .errors import DomainError, RangeError

_SNAP_REL = 1e-9
_CHUNK = 1 << 21
# below this alpha every count floor(e^alpha / i^beta) fits exactly in float64
_FLOAT_EXACT_ALPHA = 36.0
# beyond this alpha, e^alpha overflows float64 and interval sums are refused
_ALPHA_SUM_LIMIT = 700.0
# combined direct-length + bucket-count budget for the exact-integer path
_EXACT_WORK_CAP = 1 << 21

GW_ALPHA = 0.879


def _floor_stable(x: float) -> int:
    """Floor with snapping: values within rel. 1e-9 of an integer round to it."""
    if not math.isfinite(x):
        raise DomainError(f"cannot floor non-finite value {x!r}")
    r = round(x)
    if abs(x - r) <= _SNAP_REL * max(1.0, abs(x)):
        return int(r)
    return math.floor(x)


def _ceil_stable(x: float) -> int:
    if not math.isfinite(x):
        raise DomainError(f"cannot ceil non-finite value {x!r}")
    r = round(x)
    if abs(x - r) <= _SNAP_REL * max(1.0, abs(x)):
        return int(r)
    return math.ceil(x)


def _floor_stable_arr(x: np.ndarray) -> np.ndarray:
    r = np.rint(x)
    snap = np.abs(x - r) <= _SNAP_REL * np.maximum(1.0, np.abs(x))
    return np.where(snap, r, np.floor(x))


def _exp_floor(exponent: float) -> int:
    """floor(e^exponent), stable, via mpmath when float64 would overflow."""
    if exponent <= _ALPHA_SUM_LIMIT:
        return _floor_stable(math.exp(exponent))
    dps = int(exponent / math.log(10)) + 25
    with mpmath.workdps(dps):
        v = mpmath.exp(exponent)
        r = mpmath.nint(v)
        if abs(v - r) <= mpmath.mpf(_SNAP_REL) * max(1, abs(v)):
            return int(r)
        return int(mpmath.floor(v))


@dataclass(frozen=True)
class PowerLawParams:
    """The pair (alpha, beta): log-scale size parameter and power-law exponent."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0):
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not (self.beta > 0):
            raise DomainError(f"beta must be positive, got {self.beta}")

    @property
    def max_degree(self) -> int:
        return _exp_floor(self.alpha / self.beta)


@dataclass(frozen=True)
class IntervalBounds:
    """Lower/upper envelope bracketing an exact degree-interval sum."""

    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError(f"invalid bounds: lo={self.lo} > hi={self.hi}")

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class SplitParams:
    """High-degree split parameters: budget tau, threshold fraction x, inner precision."""

    tau: float
    x: float
    eps_prime: float

    def __post_init__(self):
        if not (0.0 < self.x < 1.0):
            raise DomainError(f"x must lie in (0,1), got {self.x}")
        if not (self.eps_prime > 0):
            raise DomainError(f"eps_prime must be positive, got {self.eps_prime}")


@dataclass(frozen=True)
class GwBoundInputs:
    """Inputs to the degree-1-aware rounding-ratio bound."""

    mu: float
    alpha_gw: float = GW_ALPHA

    def __post_init__(self):
        if not (0.0 <= self.mu <= 1.0):
            raise DomainError(f"mu must lie in [0,1], got {self.mu}")
        if not (0.0 < self.alpha_gw <= 1.0):
            raise DomainError(f"alpha_gw must lie in (0,1], got {self.alpha_gw}")


@dataclass(frozen=True)
class FunctionalSpec:
    """An exponent schedule beta_f = 2 - 1/f(alpha) driven by a callable f."""

    f: Callable[[float], float]
    name: str = "f"

    def value(self, alpha: float) -> float:
        v = float(self.f(alpha))
        if not math.isfinite(v):
            raise DomainError(f"{self.name}({alpha}) is not finite")
        return v

    def beta_f(self, alpha: float) -> float:
        fa = self.value(alpha)
        if fa <= 1.0:
            raise DomainError(
                f"{self.name}({alpha}) = {fa} <= 1; exponent 2 - 1/f would leave (1,2)"
            )
        return 2.0 - 1.0 / fa

    def validate_monotone(self, alphas: Sequence[float]) -> None:
        """Spot-check that f is nondecreasing on the sampled points."""
        vals = [self.value(a) for a in sorted(alphas)]
        for lo, hi in zip(vals, vals[1:]):
            if hi < lo:
                raise DomainError(f"{self.name} is not monotone increasing on samples")


# ---------------------------------------------------------------------------
# zeta and estimates
# ---------------------------------------------------------------------------


@lru_cache(maxsize=256)
def zeta(beta: float, tol: float = 1e-9) -> float:
    """Riemann zeta at real beta > 1 by partial sum plus integral tail bound.

    The tail after K terms lies between the integrals from K+1 and from K;
    returning the partial sum plus the bracket midpoint bounds the absolute
    error by half the bracket width, which K is chosen to keep below tol.
    """
    beta = float(beta)
    tol = float(tol)
    if beta <= 1.0:
        raise DomainError(f"zeta series diverges for beta = {beta} <= 1")
    if tol <= 0.0:
        raise DomainError(f"tol must be positive, got {tol}")
    k_terms = max(16, int((1.0 / (2.0 * tol)) ** (1.0 / beta)) + 1)
    total = 0.0
    lo = 1
    while lo <= k_terms:
        hi = min(k_terms, lo + _CHUNK - 1)
        i = np.arange(lo, hi + 1, dtype=np.float64)
        total += float(np.power(i, -beta).sum())
        lo = hi + 1
    tail_hi = k_terms ** (1.0 - beta) / (beta - 1.0)
    tail_lo = (k_terms + 1) ** (1.0 - beta) / (beta - 1.0)
    return total + 0.5 * (tail_hi + tail_lo)


def degree_count(p: PowerLawParams, i: int) -> int:
    """Number of degree-i vertices: floor(e^alpha / i^beta)."""
    delta = p.max_degree
    if not (1 <= i <= delta):
        raise RangeError(f"degree {i} outside [1, {delta}]")
    return _count_at(p.alpha, p.beta, i)


def max_degree(p: PowerLawParams) -> int:
    return p.max_degree


def _count_at(alpha: float, beta: float, j: float) -> int:
    t = alpha - beta * math.log(j)
    if t < -1.0:
        return 0
    if t <= _ALPHA_SUM_LIMIT:
        return max(0, _floor_stable(math.exp(t)))
    dps = int(t / math.log(10)) + 25
    with mpmath.workdps(dps):
        v = mpmath.exp(mpmath.mpf(alpha) - mpmath.mpf(beta) * mpmath.log(j))
        r = mpmath.nint(v)
        if abs(v - r) <= mpmath.mpf(_SNAP_REL) * max(1, abs(v)):
            return int(r)
        return int(mpmath.floor(v))


def node_count_estimate(p: PowerLawParams, tol: float = 1e-9) -> float:
    """Asymptotic vertex count for the regime of beta (boundaries by equality)."""
    if p.beta < 1.0:
        return math.exp(p.alpha / p.beta) / (1.0 - p.beta)
    if p.beta == 1.0:
        return p.alpha * math.exp(p.alpha)
    return zeta(p.beta, tol) * math.exp(p.alpha)


def edge_count_estimate(p: PowerLawParams, tol: float = 1e-9) -> float:
    """Asymptotic edge count for the regime of beta (boundaries by equality)."""
    if p.beta < 2.0:
        return 0.5 * math.exp(2.0 * p.alpha / p.beta) / (2.0 - p.beta)
    if p.beta == 2.0:
        return 0.25 * p.alpha * math.exp(p.alpha)
    return 0.5 * zeta(p.beta - 1.0, tol) * math.exp(p.alpha)


# ---------------------------------------------------------------------------
# exact interval sums
# ---------------------------------------------------------------------------


def _int_sum_exact(arr: np.ndarray) -> int:
    """Sum an int64 array into a Python int without overflow."""
    if arr.size == 0:
        return 0
    m = int(arr.max(initial=0))
    if arr.size * max(m, 1) < 2**62:
        return int(arr.sum())
    mid = arr.size // 2
    return _int_sum_exact(arr[:mid]) + _int_sum_exact(arr[mid:])


def _counts_arr(alpha: float, beta: float, j: np.ndarray) -> np.ndarray:
    return _floor_stable_arr(np.exp(alpha - beta * np.log(j)))


def _interval_sum(alpha: float, beta: float, a: int, b: int, weighted: bool) -> int:
    """Sum of floor(e^alpha / j^beta) over j in [a, b], optionally weighted by j.

    Short ranges are summed directly.  Long ranges are split at the point
    where the count function crosses its argument: below it the terms are
    enumerated by j, above it by count value v, each value bucket being an
    arithmetic run of j whose boundary is the inverted kernel (repaired
    against the forward kernel so both parts agree exactly).

    Within float-exact territory (alpha <= 36 and bounded work) the result
    is an exact integer; beyond that, sums are accumulated in float64 and
    are correct to ~1e-15 relative.
    """
    if b < a:
        return 0
    if alpha > _ALPHA_SUM_LIMIT:
        raise DomainError(f"interval sums unsupported for alpha > {_ALPHA_SUM_LIMIT}")

    cross = int(math.exp(alpha / (beta + 1.0)))
    t_split = min(b, max(a - 1, cross))
    direct_len = t_split - a + 1
    vmax = _count_at(alpha, beta, t_split + 1) if t_split < b else 0
    exact_mode = alpha <= _FLOAT_EXACT_ALPHA and direct_len + vmax <= _EXACT_WORK_CAP

    total_int = 0
    total_float = 0.0

    lo = a
    while lo <= t_split:
        hi = min(t_split, lo + _CHUNK - 1)
        j = np.arange(lo, hi + 1, dtype=np.float64)
        if exact_mode:
            y = _counts_arr(alpha, beta, j)
            yi = y.astype(np.int64)
            if weighted:
                if int(yi.max(initial=0)) * hi < 2**62:
                    total_int += _int_sum_exact(yi * np.arange(lo, hi + 1, dtype=np.int64))
                else:
                    total_int += sum(int(jj) * int(yy) for jj, yy in zip(range(lo, hi + 1), yi))
            else:
                total_int += _int_sum_exact(yi)
        else:
            # plain floor: snap-stability only matters for integer exactness
            y = np.floor(np.exp(alpha - beta * np.log(j)))
            total_float += float((y * j).sum()) if weighted else float(y.sum())
        lo = hi + 1

    if t_split < b:
        if exact_mode:
            total_int += _bucket_sum_exact(alpha, beta, t_split, b, vmax, weighted)
        else:
            total_float += _bucket_sum_float(alpha, beta, t_split, b, vmax, weighted)

    if exact_mode:
        return total_int
    return int(round(total_float))


def _invert_counts(alpha: float, beta: float, v: np.ndarray, repair: bool) -> np.ndarray:
    """Largest j with floor-kernel >= v.

    With repair, the inversion is corrected against the forward kernel so
    bucket boundaries agree exactly with per-j floors; without it the
    boundary can be off by one, which perturbs float-mode sums only at the
    level of their intrinsic rounding error.
    """
    if not repair:
        return np.maximum(np.floor(np.exp((alpha - np.log(v)) / beta)), 1.0)
    r = _floor_stable_arr(np.exp((alpha - np.log(v)) / beta))
    r = np.maximum(r, 1.0)
    for _ in range(4):
        bad = _counts_arr(alpha, beta, r) < v
        bad &= r > 1.0
        if not bad.any():
            break
        r = np.where(bad, r - 1.0, r)
    for _ in range(4):
        bad = _counts_arr(alpha, beta, r + 1.0) >= v
        if not bad.any():
            break
        r = np.where(bad, r + 1.0, r)
    return r


def _bucket_sum_exact(alpha, beta, t_split, b, vmax, weighted) -> int:
    # sum over j in (t_split, b] of y_j (or j*y_j), counted once per
    # threshold v <= y_j: each v contributes the run (t_split, R_v]
    total = 0
    lo = 1
    while lo <= vmax:
        hi = min(vmax, lo + _CHUNK - 1)
        v = np.arange(lo, hi + 1, dtype=np.float64)
        r = _invert_counts(alpha, beta, v, repair=True)
        r = np.minimum(r, float(b)).astype(np.int64)
        for rr in r:
            run_hi = int(rr)
            if run_hi <= t_split:
                continue
            if weighted:
                total += (run_hi * (run_hi + 1) - t_split * (t_split + 1)) // 2
            else:
                total += run_hi - t_split
        lo = hi + 1
    return total


def _bucket_sum_float(alpha, beta, t_split, b, vmax, weighted) -> float:
    total = 0.0
    lo = 1
    while lo <= vmax:
        hi = min(vmax, lo + _CHUNK - 1)
        v = np.arange(lo, hi + 1, dtype=np.float64)
        r = _invert_counts(alpha, beta, v, repair=False)
        r = np.minimum(r, float(b))
        run = np.maximum(r - t_split, 0.0)
        if weighted:
            series = np.where(run > 0, (r * (r + 1.0) - t_split * (t_split + 1.0)) * 0.5, 0.0)
            total += float(series.sum())
        else:
            total += float(run.sum())
        lo = hi + 1
    return total


def _check_interval(p: PowerLawParams, a: int, b: int) -> None:
    delta = p.max_degree
    if not (1 <= a <= b <= delta):
        raise RangeError(f"interval [{a}, {b}] outside [1, {delta}]")


def interval_size_exact(p: PowerLawParams, a: int, b: int) -> int:
    """Exact number of vertices with degree in [a, b]."""
    _check_interval(p, a, b)
    return _interval_sum(p.alpha, p.beta, a, b, weighted=False)


def interval_volume_exact(p: PowerLawParams, a: int, b: int) -> int:
    """Exact total degree of vertices with degree in [a, b]."""
    _check_interval(p, a, b)
    return _interval_sum(p.alpha, p.beta, a, b, weighted=True)


def total_volume(p: PowerLawParams) -> int:
    """Sum of all target degrees, i.e. the copy count before parity adjustment."""
    return interval_volume_exact(p, 1, p.max_degree)


def expected_edge_total(p: PowerLawParams) -> int:
    """Edge multiplicity total of a parity-adjusted realization: floor(volume/2)."""
    return total_volume(p) // 2


def _kernel_integral(alpha: float, beta: float, lo: float, hi: float) -> float:
    if beta == 1.0:
        return math.exp(alpha) * (math.log(hi) - math.log(lo))
    e = 1.0 - beta
    return math.exp(alpha) * (hi**e - lo**e) / e


def _weighted_kernel_integral(alpha: float, beta: float, lo: float, hi: float) -> float:
    if beta == 2.0:
        return math.exp(alpha) * (math.log(hi) - math.log(lo))
    e = 2.0 - beta
    return math.exp(alpha) * (hi**e - lo**e) / e


def interval_size_bounds(p: PowerLawParams, a: int, b: int) -> IntervalBounds:
    """Integral envelope for the interval size of a convex decreasing kernel."""
    _check_interval(p, a, b)
    if p.alpha > _ALPHA_SUM_LIMIT:
        raise DomainError(f"bounds unsupported for alpha > {_ALPHA_SUM_LIMIT}")
    f_a = math.exp(p.alpha - p.beta * math.log(a))
    f_b1 = math.exp(p.alpha - p.beta * math.log(b + 1))
    integral = _kernel_integral(p.alpha, p.beta, a, b + 1)
    return IntervalBounds(integral - (b - a + 1), integral + f_a - f_b1)


def interval_volume_bounds(p: PowerLawParams, a: int, b: int) -> IntervalBounds:
    """Integral envelope for the interval volume of a convex decreasing kernel."""
    _check_interval(p, a, b)
    if p.alpha > _ALPHA_SUM_LIMIT:
        raise DomainError(f"bounds unsupported for alpha > {_ALPHA_SUM_LIMIT}")
    f_a = math.exp(p.alpha - p.beta * math.log(a))
    f_b1 = math.exp(p.alpha - p.beta * math.log(b + 1))
    integral = _weighted_kernel_integral(p.alpha, p.beta, a, b + 1)
    lo = integral - (b * (b + 1) / 2.0 - (a - 1) * a / 2.0)
    hi = integral + abs((b + 1) * f_b1 - a * f_a)
    return IntervalBounds(lo, hi)


# ---------------------------------------------------------------------------
# split-scheme parameters and the functional exponent schedule
# ---------------------------------------------------------------------------


def tau(eps: float) -> float:
    """Edge-budget function 4(1+eps)/eps of the high-degree split scheme."""
    if eps <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    return 4.0 * (1.0 + eps) / eps


def split_params(eps: float, beta: float) -> SplitParams:
    """Threshold fraction x and inner precision eps' for the high-degree split.

    x solves x^(2-beta) = 1/(2 tau(eps)), so the low-degree volume stays
    within a 1/tau(eps) fraction of the edges; eps' shrinks the inner
    additive error enough that the assembled cut is a 1/(1+eps) fraction
    of the optimum.
    """
    if eps <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    if not (1.0 < beta < 2.0):
        raise DomainError(f"beta must lie in (1,2), got {beta}")
    t = tau(eps)
    x = (2.0 * t) ** (-1.0 / (2.0 - beta))
    growth = (2.0 - beta) / (beta - 1.0)
    denom = (4.0 * (2.0 - beta) / (beta - 1.0) ** 2) * (2.0 * t**growth - 1.0) ** 2
    eps_prime = (0.5 * eps / (1.0 + eps)) / denom
    return SplitParams(tau=t, x=x, eps_prime=eps_prime)


def functional_x(f: FunctionalSpec, alpha: float) -> float:
    """Threshold fraction 1/f(alpha) for the near-2 exponent schedule."""
    fa = f.value(alpha)
    if fa <= 1.0:
        raise DomainError(f"{f.name}({alpha}) = {fa} <= 1: threshold 1/f leaves (0,1)")
    return 1.0 / fa


def functional_conditions_check(
    f: FunctionalSpec, alpha: float, x: float
) -> tuple[float, float]:
    """Evaluate the two split-feasibility ratios at exponent 2 - 1/f(alpha).

    ratio1 = |[x*Delta, Delta]|^2 / |E| (should stay bounded along an
    alpha sweep) and ratio2 = vol([1, x*Delta]) / |E| (should decrease).
    Both come from the exact interval sums; the low interval is closed at
    floor(x*Delta) and the high interval opens at ceil(x*Delta).
    """
    beta_f = f.beta_f(alpha)
    p = PowerLawParams(alpha, beta_f)
    delta = p.max_degree
    lo_b = min(delta, _floor_stable(x * delta))
    hi_a = max(1, _ceil_stable(x * delta))
    # vol([1, lo_b]) is the one expensive sum; reuse it for the edge total
    vol_low = interval_volume_exact(p, 1, lo_b) if lo_b >= 1 else 0
    vol_rest = interval_volume_exact(p, lo_b + 1, delta) if lo_b < delta else 0
    edge_total = (vol_low + vol_rest) // 2
    if edge_total <= 0:
        raise DomainError("degenerate parameters: no edges")
    size_high = interval_size_exact(p, hi_a, delta) if hi_a <= delta else 0
    return size_high * size_high / edge_total, vol_low / edge_total


def classify_growth(f: FunctionalSpec, alphas: Sequence[float], rtol: float = 0.1) -> str:
    """Heuristic growth diagnostic of f relative to alpha on sampled points.

    Returns "sublinear", "linear" or "superlinear" by the trend of
    f(alpha)/alpha.  Only the sublinear regime admits the split scheme;
    the other two labels are informational.
    """
    pts = sorted(alphas)
    if len(pts) < 2:
        raise DomainError("need at least two sample points")
    first = f.value(pts[0]) / pts[0]
    last = f.value(pts[-1]) / pts[-1]
    if last < first * (1.0 - rtol):
        return "sublinear"
    if last > first * (1.0 + rtol):
        return "superlinear"
    return "linear"


# ---------------------------------------------------------------------------
# ratio bounds
# ---------------------------------------------------------------------------


def gw_ratio_bound(beta: float, g: GwBoundInputs, tol: float = 1e-9) -> float:
    """Expected inverse approximation ratio of SDP rounding plus degree-1 placement.

    mu is the fraction of degree-1 vertices matched to another degree-1
    vertex; mu = 1 gives the worst case.  The value is clamped to 1, since
    an inverse ratio above 1 is meaningless.
    """
    if beta <= 2.0:
        raise DomainError(f"requires beta > 2 (zeta(beta-1) diverges), got {beta}")
    half_z = 0.5 * zeta(beta - 1.0, tol)
    keep = 1.0 - g.mu / 2.0
    return min(1.0, (g.alpha_gw * (half_z - keep) + keep) / half_z)


def hardness_ratio(beta: float, tol: float = 1e-9) -> float:
    """Explicit inapproximability ratio for exponent beta > 2 (eps-free supremum)."""
    if beta <= 2.0:
        raise DomainError(f"requires beta > 2, got {beta}")
    c = 3.0**beta * zeta(beta - 1.0, tol) - 3.0
    return (52.0 * c + 152.0) / (52.0 * c + 151.0)


def core_strength_bound(alpha: float) -> float:
    """Upper bound alpha^3 / e^alpha on the core-strength at exponent 1."""
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    return alpha**3 * math.exp(-alpha)
