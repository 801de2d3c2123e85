"""The MAX-CUT algorithm ladder.

exact_maxcut     bitmask enumeration per connected component (the oracle)
greedy_cut       id-order placement, >= half the non-loop multiplicity
local_search     single-flip improvement to a 1-flip-optimal cut
dense_ptas       seeded sample enumeration with greedy extension
split_ptas       dense scheme on the high-degree core, greedy residuals
gw_sdp           low-rank SDP relaxation + seeded hyperplane roundings
beta_gt2_algorithm  gw_sdp on the degree>=2 core, degree-1 edges all cut

All algorithms are pure given their seeds; ties are broken toward side 0
and best-of reductions order candidates by (value, lexicographic sides),
so parallel and serial evaluation orders agree.  Self-loops are excluded
from every objective: no cut can contain them.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, DomainError, OracleSizeError
from .multigraph import Cut, DegreeInterval, Multigraph, cut_value, degree_histogram, induced_interval_subgraph
from .plgmath import PowerLawParams, _ceil_stable, split_params
from .generator import target_degree_multiset

DEFAULT_ORACLE_LIMIT = 26
ORACLE_LIMIT_ENV = "PLMC_ORACLE_LIMIT"

DENSE_SAMPLE_CONSTANT = 8.0
DENSE_SAMPLE_CAP = 20

SDP_CONVERGENCE_TOL = 1e-7
SDP_MAX_SWEEPS = 500

_MASK_CHUNK = 1 << 16


@dataclass(frozen=True)
class AlgoResult:
    """A cut with its verified value and the parameters that produced it."""

    cut: Cut
    value: int
    algorithm: str
    params: dict = field(default_factory=dict)
    certified_optimal: bool = False
    upper_bound: float | None = None


def _result(g, sides, algorithm, params, certified=False, upper_bound=None) -> AlgoResult:
    cut = Cut.from_iterable(sides)
    return AlgoResult(
        cut=cut,
        value=cut_value(g, cut),
        algorithm=algorithm,
        params=dict(params),
        certified_optimal=certified,
        upper_bound=upper_bound,
    )


def _better(a: tuple[int, tuple], b: tuple[int, tuple]) -> bool:
    """Deterministic best-of order: higher value wins, then lexicographic sides."""
    return a[0] > b[0] or (a[0] == b[0] and a[1] < b[1])


# ---------------------------------------------------------------------------
# exact oracle
# ---------------------------------------------------------------------------


def _components(g: Multigraph) -> list[list[int]]:
    adj = g.adjacency()
    seen = [False] * g.vertex_count
    comps = []
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w, _ in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _enumerate_component(g: Multigraph, comp: list[int]) -> tuple[int, dict[int, int]]:
    """Brute-force the component; vertex comp[0] is fixed on side 0."""
    local = {v: i for i, v in enumerate(comp)}
    edges = [
        (local[u], local[v], m)
        for u, v, m in g.iter_edges()
        if u in local and v in local and u != v
    ]
    k = len(comp)
    if not edges or k == 1:
        return 0, {v: 0 for v in comp}
    best_val = -1
    best_mask = 0
    n_masks = 1 << (k - 1)
    for start in range(0, n_masks, _MASK_CHUNK):
        stop = min(n_masks, start + _MASK_CHUNK)
        # shift left so bit 0 (= comp[0]) is always on side 0
        masks = np.arange(start, stop, dtype=np.uint64) << np.uint64(1)
        vals = np.zeros(stop - start, dtype=np.int64)
        for lu, lv, m in edges:
            cross = ((masks >> np.uint64(lu)) ^ (masks >> np.uint64(lv))) & np.uint64(1)
            vals += m * cross.astype(np.int64)
        idx = int(np.argmax(vals))
        if int(vals[idx]) > best_val:
            best_val = int(vals[idx])
            best_mask = (start + idx) << 1
    sides = {v: (best_mask >> i) & 1 for v, i in local.items()}
    return best_val, sides


def exact_maxcut(g: Multigraph, limit: int | None = None) -> AlgoResult:
    """Optimal cut by exhaustive enumeration, component by component.

    The cut value separates over connected components, so the instance is
    solved as independent sub-problems; the size limit (default 26,
    overridable via PLMC_ORACLE_LIMIT or the argument) applies to the
    largest component.
    """
    if limit is None:
        limit = int(os.environ.get(ORACLE_LIMIT_ENV, DEFAULT_ORACLE_LIMIT))
    sides = [0] * g.vertex_count
    total = 0
    for comp in _components(g):
        if len(comp) > limit:
            raise OracleSizeError(
                f"component with {len(comp)} vertices exceeds the oracle limit {limit}"
            )
        val, comp_sides = _enumerate_component(g, comp)
        total += val
        for v, s in comp_sides.items():
            sides[v] = s
    res = _result(g, sides, "exact", {"limit": limit}, certified=True)
    assert res.value == total
    return res


# ---------------------------------------------------------------------------
# greedy and local search
# ---------------------------------------------------------------------------


def greedy_cut(g: Multigraph) -> AlgoResult:
    """Place vertices in id order on the side cutting more placed multiplicity.

    Ties go to side 0.  The result is at least half the non-loop edge
    multiplicity: every edge is incident to exactly one later endpoint,
    and that placement cuts at least half of its incident placed weight.
    """
    adj = g.adjacency()
    sides = [0] * g.vertex_count
    placed = [False] * g.vertex_count
    for v in range(g.vertex_count):
        gain0 = 0
        gain1 = 0
        for w, m in adj[v]:
            if placed[w]:
                if sides[w] == 1:
                    gain0 += m
                else:
                    gain1 += m
        sides[v] = 1 if gain1 > gain0 else 0
        placed[v] = True
    return _result(g, sides, "greedy", {})


def local_search(g: Multigraph, start: Cut) -> AlgoResult:
    """Single-flip hill climbing from `start` until no flip improves."""
    if len(start) != g.vertex_count:
        raise ContractError("start cut does not match the graph")
    sides = list(start.sides)
    adj = g.adjacency()
    improved = True
    flips = 0
    while improved:
        improved = False
        for v in range(g.vertex_count):
            sv = sides[v]
            gain = 0
            for w, m in adj[v]:
                gain += m if sides[w] == sv else -m
            if gain > 0:
                sides[v] = 1 - sv
                flips += 1
                improved = True
    return _result(g, sides, "local-search", {"flips": flips})


def is_one_flip_optimal(g: Multigraph, c: Cut) -> bool:
    """No single vertex move increases the cut value."""
    base = cut_value(g, c)
    for v in range(g.vertex_count):
        flipped = list(c.sides)
        flipped[v] = 1 - flipped[v]
        if cut_value(g, Cut.from_iterable(flipped)) > base:
            return False
    return True


# ---------------------------------------------------------------------------
# dense sampling scheme
# ---------------------------------------------------------------------------


def _dense_sample_size(eps: float, n: int) -> int:
    if eps < 1.0:
        raw = math.ceil(DENSE_SAMPLE_CONSTANT / eps**2 * math.log(1.0 / eps))
    else:
        raw = 1
    return max(1, min(raw, DENSE_SAMPLE_CAP, n))


def dense_ptas(g: Multigraph, eps: float, seed: int) -> AlgoResult:
    """Sampling-based additive scheme for dense instances.

    Draws a seeded sample of t = min(ceil(8/eps^2 ln(1/eps)), 20, n)
    vertices without replacement, tries all 2^t sample placements, extends
    each by putting every remaining vertex on the side with the larger
    crossing multiplicity into the placed sample (the scale factor n/t of
    the crossing estimate does not move the argmax), and keeps the best
    full cut by true value.  The winner is polished by local search and
    raced against the polished greedy cut, so the result never falls below
    either baseline.
    """
    if eps <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    n = g.vertex_count
    rng = np.random.default_rng(seed)
    t = _dense_sample_size(eps, max(n, 1))
    params = {"eps": eps, "seed": seed, "t": t}
    if n == 0:
        return _result(g, [], "dense-ptas", params)

    sample = np.sort(rng.permutation(n)[:t])
    in_sample = np.zeros(n, dtype=bool)
    in_sample[sample] = True
    pos = {int(v): i for i, v in enumerate(sample)}
    rest = np.flatnonzero(~in_sample)
    rpos = {int(v): i for i, v in enumerate(rest)}

    ss_edges = []
    rr_edges = []
    weights = np.zeros((len(rest), t), dtype=np.float64)
    for u, v, m in g.iter_edges():
        if u == v:
            continue
        su, sv = in_sample[u], in_sample[v]
        if su and sv:
            ss_edges.append((pos[u], pos[v], m))
        elif su or sv:
            if su:
                weights[rpos[v], pos[u]] += m
            else:
                weights[rpos[u], pos[v]] += m
        else:
            rr_edges.append((rpos[u], rpos[v], m))
    row_tot = weights.sum(axis=1)

    best_val = -1
    best_mask = 0
    bit_cols = np.arange(t, dtype=np.uint64)
    chunk = max(256, min(_MASK_CHUNK, (1 << 25) // max(1, len(rest))))
    for start in range(0, 1 << t, chunk):
        stop = min(1 << t, start + chunk)
        masks = np.arange(start, stop, dtype=np.uint64)
        bits = ((masks[:, None] >> bit_cols) & np.uint64(1)).astype(np.float64)
        vals = np.zeros(stop - start, dtype=np.float64)
        for iu, iv, m in ss_edges:
            vals += m * (bits[:, iu] != bits[:, iv])
        if len(rest):
            cross1 = weights @ bits.T  # weight to sample side 1, per rest vertex
            cross0 = row_tot[:, None] - cross1
            side1 = cross0 > cross1  # strict: ties stay on side 0
            vals += np.maximum(cross0, cross1).sum(axis=0)
            for iu, iv, m in rr_edges:
                vals += m * (side1[iu] != side1[iv])
        idx = int(np.argmax(vals))
        if vals[idx] > best_val:
            best_val = vals[idx]
            best_mask = start + idx

    sides = np.zeros(n, dtype=np.int64)
    mask_bits = (np.uint64(best_mask) >> bit_cols) & np.uint64(1)
    sides[sample] = mask_bits.astype(np.int64)
    if len(rest):
        cross1 = weights @ mask_bits.astype(np.float64)
        cross0 = row_tot - cross1
        sides[rest] = (cross0 > cross1).astype(np.int64)

    polished = local_search(g, Cut.from_iterable(sides.tolist()))
    baseline = local_search(g, greedy_cut(g).cut)
    cand = (polished.value, polished.cut.sides)
    base = (baseline.value, baseline.cut.sides)
    winner = polished if not _better(base, cand) else baseline
    return _result(g, winner.cut.sides, "dense-ptas", params)


# ---------------------------------------------------------------------------
# high-degree split scheme
# ---------------------------------------------------------------------------


def _histogram_discrepancy(g: Multigraph, p: PowerLawParams) -> int:
    target = target_degree_multiset(p)
    got = degree_histogram(g)
    keys = set(target) | set(got)
    return sum(abs(target.get(k, 0) - got.get(k, 0)) for k in keys)


def split_ptas(g: Multigraph, p: PowerLawParams, eps: float, seed: int) -> AlgoResult:
    """Dense scheme on the high-degree core, greedy placement of the rest.

    Splits at degree ceil(x * Delta) with (x, eps') = split_params(eps,
    beta), runs dense_ptas on the induced high-degree subgraph, then adds
    each residual vertex in id order on the side cutting more multiplicity
    toward everything already placed (a pointwise improvement over
    arbitrary placement).
    """
    if not (1.0 < p.beta < 2.0):
        raise DomainError(f"split scheme requires beta in (1,2), got {p.beta}")
    sp = split_params(eps, p.beta)
    if _histogram_discrepancy(g, p) > 2:
        warnings.warn(
            "graph degree histogram deviates from the (alpha, beta) targets",
            stacklevel=2,
        )
    delta = p.max_degree
    threshold = _ceil_stable(sp.x * delta)
    params = {
        "eps": eps,
        "beta": p.beta,
        "tau": sp.tau,
        "x": sp.x,
        "eps_prime": sp.eps_prime,
        "threshold": threshold,
        "seed": seed,
    }
    n = g.vertex_count
    if threshold <= 1:
        inner = dense_ptas(g, sp.eps_prime, seed)
        return _result(g, inner.cut.sides, "split-ptas", params)

    interval = DegreeInterval(threshold, max(threshold, g.max_degree))
    sub, mapping = induced_interval_subgraph(g, interval)
    sides: list[int | None] = [None] * n
    if sub.vertex_count:
        if sub.effective_edge_total > 0 and sub.vertex_count > 1:
            inner = dense_ptas(sub, sp.eps_prime, seed)
            for i, old in enumerate(mapping):
                sides[old] = inner.cut[i]
        else:
            for old in mapping:
                sides[old] = 0
    adj = g.adjacency()
    for v in range(n):
        if sides[v] is not None:
            continue
        gain0 = 0
        gain1 = 0
        for w, m in adj[v]:
            sw = sides[w]
            if sw is None:
                continue
            if sw == 1:
                gain0 += m
            else:
                gain1 += m
        sides[v] = 1 if gain1 > gain0 else 0
    return _result(g, sides, "split-ptas", params)


# ---------------------------------------------------------------------------
# SDP relaxation with hyperplane rounding
# ---------------------------------------------------------------------------


_DENSE_EIG_CAP = 2048


def _sdp_solve(
    g: Multigraph, rng: np.random.Generator
) -> tuple[np.ndarray, float, float, int, bool]:
    """Block-coordinate ascent on the unit-vector relaxation.

    Rank ceil(sqrt(2n)) + 1 exceeds the threshold under which low-rank
    factorizations of this relaxation admit spurious optima, so ascent to
    stationarity reaches the relaxation value; each vertex update sets its
    vector to the normalized negative multiplicity-weighted neighbor sum.

    Returns (vectors, certified_upper_bound, objective, sweeps, converged).
    The certificate is the dual value M/2 + (sum_v u_v + n*eta)/4 with
    u_v = |sum_w m_vw vec_w| and eta >= -lambda_min(diag(u) + A): it
    dominates the relaxation optimum for any vector configuration, and is
    tight at stationarity, unlike the raw objective, which approaches the
    optimum from below and can sit a convergence-tolerance short of it.
    """
    n = g.vertex_count
    k = math.ceil(math.sqrt(2 * n)) + 1
    vectors = rng.standard_normal((n, k))
    vectors /= np.linalg.norm(vectors, axis=1, keepdims=True)

    adj = g.adjacency()
    nbr_idx = [np.array([w for w, _ in adj[v]], dtype=np.int64) for v in range(n)]
    nbr_m = [np.array([m for _, m in adj[v]], dtype=np.float64) for v in range(n)]
    eu, ev, em = g.edge_arrays()
    non_loop = eu != ev
    eu, ev, em = eu[non_loop], ev[non_loop], em[non_loop].astype(np.float64)

    def objective() -> float:
        dots = (vectors[eu] * vectors[ev]).sum(axis=1)
        return float((em * (1.0 - dots)).sum() / 2.0)

    obj = objective()
    sweeps = 0
    converged = False
    for _ in range(SDP_MAX_SWEEPS):
        for v in range(n):
            if len(nbr_idx[v]) == 0:
                continue
            s = nbr_m[v] @ vectors[nbr_idx[v]]
            norm = np.linalg.norm(s)
            if norm > 1e-12:
                vectors[v] = -s / norm
        sweeps += 1
        new_obj = objective()
        if new_obj - obj < SDP_CONVERGENCE_TOL:
            obj = new_obj
            converged = True
            break
        obj = new_obj

    u_norms = np.zeros(n)
    for v in range(n):
        if len(nbr_idx[v]):
            u_norms[v] = np.linalg.norm(nbr_m[v] @ vectors[nbr_idx[v]])
    weighted_deg = np.zeros(n)
    np.add.at(weighted_deg, eu, em)
    np.add.at(weighted_deg, ev, em)
    if n <= _DENSE_EIG_CAP:
        quad = np.diag(u_norms).astype(np.float64)
        quad[eu, ev] += em
        quad[ev, eu] += em
        lam_min = float(np.linalg.eigvalsh(quad)[0])
    else:
        # Gershgorin: lambda_min >= min(u_v - d_v); looser but O(n)
        lam_min = float((u_norms - weighted_deg).min())
    eta = max(0.0, -lam_min)
    ub = float(em.sum()) / 2.0 + (float(u_norms.sum()) + n * eta) / 4.0
    return vectors, ub, obj, sweeps, converged


def gw_sdp(g: Multigraph, seed: int, restarts: int = 100) -> AlgoResult:
    """SDP relaxation by low-rank coordinate ascent plus hyperplane roundings.

    The relaxation objective at the solved point is reported as an
    upper-bound certificate (it dominates every cut value).  `restarts`
    seeded Gaussian hyperplanes are rounded, each polished by local
    search; the best (value, lexicographic sides) candidate wins.
    """
    if g.vertex_count < 2:
        raise ContractError("gw_sdp needs at least 2 vertices")
    if restarts < 1:
        raise DomainError(f"restarts must be positive, got {restarts}")
    rng = np.random.default_rng(seed)
    params = {"seed": seed, "restarts": restarts}
    if g.effective_edge_total == 0:
        return _result(g, [0] * g.vertex_count, "gw", params, upper_bound=0.0)

    vectors, ub, sdp_objective, sweeps, converged = _sdp_solve(g, rng)
    params.update(
        rank=vectors.shape[1],
        sweeps=sweeps,
        converged=converged,
        sdp_objective=sdp_objective,
    )

    best: tuple[int, tuple] | None = None
    for _ in range(restarts):
        h = rng.standard_normal(vectors.shape[1])
        sides = (vectors @ h < 0.0).astype(np.int64)  # projection 0 -> side 0
        polished = local_search(g, Cut.from_iterable(sides.tolist()))
        cand = (polished.value, polished.cut.sides)
        if best is None or _better(cand, best):
            best = cand
    return _result(g, best[1], "gw", params, upper_bound=ub)


def mu_fraction(g: Multigraph) -> float:
    """Fraction of degree-1 vertices whose unique neighbor also has degree 1."""
    adj = g.adjacency()
    deg1 = [v for v in range(g.vertex_count) if g.degree(v) == 1]
    if not deg1:
        return 0.0
    paired = sum(1 for v in deg1 if g.degree(adj[v][0][0]) == 1)
    return paired / len(deg1)


def beta_gt2_algorithm(g: Multigraph, seed: int, restarts: int = 100) -> AlgoResult:
    """SDP rounding on the degree>=2 core, then optimal degree-1 placement.

    Degree-1 vertices go opposite their placed neighbor; matched degree-1
    pairs are split with the lower id on side 0.  Every non-loop edge
    incident to a degree-1 vertex is therefore cut.
    """
    n = g.vertex_count
    params = {"seed": seed, "restarts": restarts}
    sides = [0] * n
    adj = g.adjacency()
    core = [v for v in range(n) if g.degree(v) >= 2]
    if len(core) >= 2:
        sub, mapping = induced_interval_subgraph(g, DegreeInterval(2, max(2, g.max_degree)))
        if sub.effective_edge_total > 0:
            inner = gw_sdp(sub, seed, restarts)
            for i, old in enumerate(mapping):
                sides[old] = inner.cut[i]
    for v in range(n):
        if g.degree(v) != 1:
            continue
        w = adj[v][0][0]
        if g.degree(w) >= 2:
            sides[v] = 1 - sides[w]
        elif v < w:
            sides[v] = 0
            sides[w] = 1
    return _result(g, sides, "beta-gt2", params)
