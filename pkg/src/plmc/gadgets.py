"""Embedding 3-regular graphs into (alpha, beta) power-law multigraph hosts.

The host is a disjoint union: the input graph (plus K4 pads absorbing
surplus degree-3 slots), one gadget per remaining degree class, and a
matching on the residual degree-1 budget.  For beta > 1 the gadgets are
multipaths (paths of degree-i vertices with alternating edge
multiplicities and degree-1 leaves at the ends; bipartite, so fully
cuttable).  For beta <= 1 there is no leaf budget, so degree classes
become wheels (cycles of multi-edges); classes where both i and the
class size are odd cannot close a wheel consistently and are paired up
into joined wheels, with at most one leftover class carrying a single
pendant leaf.

Every gadget's optimal cut value is known in closed form and certified
(structurally for bipartite gadgets, by brute force when small), so the
host optimum equals the input-plus-pads optimum plus an exactly known
offset.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .algorithms import exact_maxcut
from .errors import ContractError, DomainError, InfeasibleReductionError
from .multigraph import Cut, Multigraph, cut_value
from .plgmath import PowerLawParams, _floor_stable, degree_count

BRUTE_FORCE_VERTEX_CAP = 20


@dataclass(frozen=True)
class Segment:
    """One block of consecutive host vertex ids holding a single gadget."""

    kind: str  # input | pad | multipath | wheel | joined | leftover | matching | isolated
    start: int
    count: int
    degree: int = 0
    class_size: int = 0
    degree2: int = 0  # second class of a joined pair
    class_size2: int = 0
    leaves_first: int = 0
    leaves_last: int = 0


@dataclass(frozen=True)
class GadgetCertificate:
    """How one gadget's optimal cut value was established."""

    gadget_id: str
    kind: str
    method: str  # bipartite | brute-force | closed-form
    vertex_count: int
    edge_total: int
    opt_value: int


@dataclass(frozen=True)
class GadgetPlan:
    """Blueprint of the embedding: per-class cases, criticals, and layout."""

    alpha_chosen: float
    beta: float
    pad_k4_count: int
    entries: dict[int, tuple[int, str]]
    critical_set: tuple[int, ...]
    critical_matching: tuple[tuple[int, int], ...]
    matching_size: int
    parity_deviation: bool
    segments: tuple[Segment, ...] = field(repr=False)
    host_vertex_count: int = 0

    def to_json_dict(self) -> dict:
        d = asdict(self)
        d["entries"] = {str(k): list(v) for k, v in self.entries.items()}
        d["critical_set"] = list(self.critical_set)
        d["critical_matching"] = [list(p) for p in self.critical_matching]
        d["segments"] = [asdict(s) for s in self.segments]
        return d


@dataclass(frozen=True)
class EmbeddingReport:
    """Aggregate gadget accounting: totals and the cut-value offset."""

    gadget_edge_total: int
    gadget_opt_value: int
    host_vertex_count: int
    offset: int

    def to_json_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DecisionThresholds:
    """Yes/no cut-size thresholds of the 3-regular decision source."""

    n_param: int
    eps: float
    yes_value: float
    no_value: float


# ---------------------------------------------------------------------------
# parameter choice
# ---------------------------------------------------------------------------


def choose_alpha(N: int, beta: float, min_k: int | None = None) -> tuple[float, int]:
    """Smallest alpha = ln(3^beta k) whose degree-3 class holds N vertices.

    The surplus k - N is forced to a multiple of 4 so it can be consumed
    exactly by disjoint K4 pads; pass min_k to force a larger class.
    """
    if N < 4:
        raise DomainError(f"need N >= 4, got {N}")
    k = max(N, min_k or N)
    while (k - N) % 4 != 0:
        k += 1
    alpha = beta * math.log(3.0) + math.log(k)
    got = _floor_stable(math.exp(alpha - beta * math.log(3.0)))
    if got != k:
        raise DomainError(f"alpha search failed: floor gave {got}, wanted {k}")
    return alpha, (k - N) // 4


# ---------------------------------------------------------------------------
# gadget builders
# ---------------------------------------------------------------------------


def _multipath_leaf_counts(i: int, n_i: int) -> tuple[int, int]:
    if i % 2 == 0:
        return i // 2, i // 2
    if n_i % 2 == 0:
        return i // 2, i // 2
    return (i + 1) // 2, i // 2


def _multipath_edge_mults(i: int, n_i: int) -> list[int]:
    """Path edge multiplicities, alternating so every path node reaches degree i."""
    lo, hi = i // 2, (i + 1) // 2
    if i % 2 == 0:
        return [lo] * (n_i - 1)
    if n_i % 2 == 0:
        # odd edge count: starts and ends on the larger multiplicity
        return [hi if k % 2 == 0 else lo for k in range(n_i - 1)]
    return [lo if k % 2 == 0 else hi for k in range(n_i - 1)]


def build_multipath(i: int, n_i: int) -> tuple[Multigraph, int]:
    """Path of n_i degree-i vertices with end leaves; bipartite, fully cuttable.

    Layout: path vertices 0..n_i-1, then the first endpoint's leaves,
    then the last endpoint's.  n_i = 1 degenerates to a star.
    """
    if i in (1, 3):
        raise ContractError(f"no multipath class for degree {i}")
    if i < 2 or n_i < 1:
        raise ContractError(f"invalid multipath parameters (i={i}, n_i={n_i})")
    a_first, a_last = _multipath_leaf_counts(i, n_i)
    edges = []
    for k, m in enumerate(_multipath_edge_mults(i, n_i)):
        edges.append((k, k + 1, m))
    nxt = n_i
    for _ in range(a_first):
        edges.append((0, nxt, 1))
        nxt += 1
    for _ in range(a_last):
        edges.append((n_i - 1, nxt, 1))
        nxt += 1
    g = Multigraph(nxt, edges)
    return g, g.edge_multiplicity_total


def build_wheel(i: int, n_i: int) -> tuple[Multigraph, int]:
    """Cycle of n_i degree-i vertices with alternating edge multiplicities.

    Even cycles are bipartite and fully cuttable; odd cycles (possible
    only for even i, where all multiplicities equal i/2) lose one edge.
    Degenerate sizes: n_i = 2 is a merged double edge, n_i = 1 (even i)
    a single self-loop vertex with optimum 0.
    """
    if i % 2 == 1 and n_i % 2 == 1:
        raise ContractError(f"critical class (i={i}, n_i={n_i}) needs joined wheels")
    if i < 2 or n_i < 1:
        raise ContractError(f"invalid wheel parameters (i={i}, n_i={n_i})")
    lo, hi = i // 2, (i + 1) // 2
    if n_i == 1:
        g = Multigraph(1, [(0, 0, i // 2)])
        return g, 0
    if i % 2 == 0:
        mults = [lo] * n_i
    else:
        mults = [lo if k % 2 == 0 else hi for k in range(n_i)]
    edges = [(k, (k + 1) % n_i, mults[k]) for k in range(n_i)]
    g = Multigraph(n_i, edges)
    total = g.edge_multiplicity_total
    if n_i % 2 == 1:
        return g, total - min(mults)
    return g, total


def _defect_cycle_edges(i: int, n: int, offset: int) -> list[tuple[int, int, int]]:
    """Odd cycle whose vertex 0 carries two floor(i/2) edges (degree i-1).

    n = 1 degenerates to a self-loop of multiplicity floor(i/2).
    """
    lo, hi = i // 2, (i + 1) // 2
    if n == 1:
        return [(offset, offset, lo)]
    mults = [lo] + [hi if k % 2 == 1 else lo for k in range(1, n - 1)] + [lo]
    return [(offset + k, offset + (k + 1) % n, mults[k]) for k in range(n)]


def build_joined_wheels(i: int, n_i: int, j: int, n_j: int) -> tuple[Multigraph, int]:
    """Two defect cycles joined by one unit edge between their special nodes.

    Both classes are critical (all of i, n_i, j, n_j odd), so each cycle
    leaves one node at degree i-1 (resp. j-1); the connecting edge lifts
    both to their targets.  The optimum misses exactly one floor(i/2) and
    one floor(j/2) cycle edge and cuts the connector.
    """
    if not (i < j):
        raise ContractError(f"need i < j, got ({i}, {j})")
    if any(x % 2 == 0 for x in (i, n_i, j, n_j)):
        raise ContractError(f"joined wheels need all-odd parameters, got {(i, n_i, j, n_j)}")
    if i < 5:
        raise ContractError(f"critical degrees start at 5, got {i}")
    edges = _defect_cycle_edges(i, n_i, 0) + _defect_cycle_edges(j, n_j, n_i)
    edges.append((0, n_i, 1))
    g = Multigraph(n_i + n_j, edges)
    opt = (i * n_i - 1) // 2 - i // 2 + (j * n_j - 1) // 2 - j // 2 + 1
    return g, opt


def build_leftover_wheel(i_c: int, n: int) -> tuple[Multigraph, int]:
    """Defect cycle whose special node carries one pendant degree-1 leaf."""
    if i_c % 2 == 0 or n % 2 == 0:
        raise ContractError(f"leftover wheel needs odd parameters, got ({i_c}, {n})")
    if i_c < 5:
        raise ContractError(f"critical degrees start at 5, got {i_c}")
    edges = _defect_cycle_edges(i_c, n, 0)
    edges.append((0, n, 1))
    g = Multigraph(n + 1, edges)
    opt = (i_c * n - 1) // 2 - i_c // 2 + 1
    return g, opt


def build_matching(count: int) -> tuple[Multigraph, int]:
    """count/2 disjoint unit edges; fully cuttable."""
    if count % 2 != 0 or count < 0:
        raise ContractError(f"matching needs an even vertex count, got {count}")
    g = Multigraph(count, [(2 * k, 2 * k + 1, 1) for k in range(count // 2)])
    return g, count // 2


def _k4_edges(offset: int) -> list[tuple[int, int, int]]:
    return [(offset + a, offset + b, 1) for a in range(4) for b in range(a + 1, 4)]


# ---------------------------------------------------------------------------
# planning
# ---------------------------------------------------------------------------


def _multipath_case(i: int, n_i: int) -> str:
    if i % 2 == 0:
        return "multipath-1" if n_i % 2 == 0 else "multipath-2"
    return "multipath-3" if n_i % 2 == 0 else "multipath-4"


def plan_reduction(N: int, beta: float, min_k: int | None = None) -> tuple[GadgetPlan, EmbeddingReport]:
    """Lay out the embedding for an N-vertex 3-regular input, without edges.

    All gadget sizes, optimal values, and the offset come from closed
    forms, so this scales to decision-threshold parameter ranges far
    beyond what could be materialized.
    """
    alpha, pad = choose_alpha(N, beta, min_k)
    p = PowerLawParams(alpha, beta)
    delta = p.max_degree
    y = {i: degree_count(p, i) for i in range(1, delta + 1)}
    if y.get(3, 0) != N + 4 * pad:
        raise DomainError("degree-3 class does not match input plus pads")

    entries: dict[int, tuple[int, str]] = {1: (y[1], "skip"), 3: (y[3], "skip")}
    segments: list[Segment] = [Segment("input", 0, N, degree=3, class_size=N)]
    cursor = N
    for _ in range(pad):
        segments.append(Segment("pad", cursor, 4, degree=3, class_size=4))
        cursor += 4

    gadget_edge_total = 0
    gadget_opt = 0
    class_degrees = [2] + list(range(4, delta + 1))

    if beta > 1.0:
        leaves_needed = 0
        for i in class_degrees:
            n_i = y[i]
            a_first, a_last = _multipath_leaf_counts(i, n_i)
            entries[i] = (n_i, _multipath_case(i, n_i))
            segments.append(
                Segment(
                    "multipath", cursor, n_i + a_first + a_last,
                    degree=i, class_size=n_i, leaves_first=a_first, leaves_last=a_last,
                )
            )
            cursor += n_i + a_first + a_last
            leaves_needed += a_first + a_last
            path_total = sum(_multipath_edge_mults(i, n_i)) + a_first + a_last
            gadget_edge_total += path_total
            gadget_opt += path_total  # bipartite
        if leaves_needed > y[1]:
            raise InfeasibleReductionError(
                f"multipath gadgets need {leaves_needed} degree-1 vertices but only "
                f"{y[1]} exist; use the wheel construction (beta <= 1)"
            )
        residual = y[1] - leaves_needed
        critical_set: tuple[int, ...] = ()
        critical_matching: tuple[tuple[int, int], ...] = ()
    else:
        criticals = [i for i in range(5, delta + 1, 2) if y[i] % 2 == 1]
        paired = list(zip(criticals[0::2], criticals[1::2]))
        leftover = criticals[-1] if len(criticals) % 2 == 1 else None
        pair_of = {}
        for a, b in paired:
            pair_of[a] = b
            pair_of[b] = a
        for i in class_degrees:
            n_i = y[i]
            if i in pair_of:
                j = pair_of[i]
                if i > j:
                    continue  # segment emitted at the smaller degree
                entries[i] = (n_i, "joined")
                entries[j] = (y[j], "joined")
                segments.append(
                    Segment(
                        "joined", cursor, n_i + y[j],
                        degree=i, class_size=n_i, degree2=j, class_size2=y[j],
                    )
                )
                cursor += n_i + y[j]
                total = (i * n_i - 1) // 2 + (j * y[j] - 1) // 2 + 1
                opt = (i * n_i - 1) // 2 - i // 2 + (j * y[j] - 1) // 2 - j // 2 + 1
                gadget_edge_total += total
                gadget_opt += opt
            elif leftover is not None and i == leftover:
                entries[i] = (n_i, "leftover-wheel")
                segments.append(
                    Segment("leftover", cursor, n_i + 1, degree=i, class_size=n_i)
                )
                cursor += n_i + 1
                total = (i * n_i - 1) // 2 + 1
                gadget_edge_total += total
                gadget_opt += total - i // 2
            else:
                entries[i] = (n_i, "wheel")
                segments.append(Segment("wheel", cursor, n_i, degree=i, class_size=n_i))
                cursor += n_i
                if n_i == 1:
                    gadget_edge_total += i // 2
                elif n_i % 2 == 0:
                    gadget_edge_total += n_i * i // 2
                    gadget_opt += n_i * i // 2
                else:
                    gadget_edge_total += n_i * i // 2
                    gadget_opt += n_i * i // 2 - i // 2
        residual = y[1] - (1 if leftover is not None else 0)
        critical_set = tuple(criticals)
        critical_matching = tuple(paired)

    matching_size = residual // 2
    parity_deviation = residual % 2 == 1
    if matching_size:
        segments.append(Segment("matching", cursor, 2 * matching_size))
        cursor += 2 * matching_size
        gadget_edge_total += matching_size
        gadget_opt += matching_size
    if parity_deviation:
        segments.append(Segment("isolated", cursor, 1))
        cursor += 1

    plan = GadgetPlan(
        alpha_chosen=alpha,
        beta=beta,
        pad_k4_count=pad,
        entries=entries,
        critical_set=critical_set,
        critical_matching=critical_matching,
        matching_size=matching_size,
        parity_deviation=parity_deviation,
        segments=tuple(segments),
        host_vertex_count=cursor,
    )
    report = EmbeddingReport(
        gadget_edge_total=gadget_edge_total,
        gadget_opt_value=gadget_opt,
        host_vertex_count=cursor,
        offset=gadget_opt,
    )
    return plan, report


# ---------------------------------------------------------------------------
# materialization and certification
# ---------------------------------------------------------------------------


def _is_bipartite(g: Multigraph) -> bool:
    color = [-1] * g.vertex_count
    adj = g.adjacency()
    if any(u == v for u, v, _ in g.iter_edges()):
        return False
    for start in range(g.vertex_count):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w, _ in adj[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def _build_segment_gadget(seg: Segment) -> tuple[Multigraph, int] | None:
    if seg.kind == "multipath":
        return build_multipath(seg.degree, seg.class_size)
    if seg.kind == "wheel":
        return build_wheel(seg.degree, seg.class_size)
    if seg.kind == "joined":
        return build_joined_wheels(seg.degree, seg.class_size, seg.degree2, seg.class_size2)
    if seg.kind == "leftover":
        return build_leftover_wheel(seg.degree, seg.class_size)
    if seg.kind == "matching":
        return build_matching(seg.count)
    return None


def _segment_id(seg: Segment) -> str:
    if seg.kind == "multipath" or seg.kind == "wheel":
        return f"W_{seg.degree}"
    if seg.kind == "joined":
        return f"W_{seg.degree},{seg.degree2}"
    if seg.kind == "leftover":
        return f"W_{seg.degree}!"
    return seg.kind.upper()


def _certify(seg: Segment, g: Multigraph, opt: int) -> GadgetCertificate:
    if _is_bipartite(g):
        method = "bipartite"
        assert opt == g.edge_multiplicity_total
    elif g.vertex_count <= BRUTE_FORCE_VERTEX_CAP:
        method = "brute-force"
        brute = exact_maxcut(g).value
        if brute != opt:
            raise ContractError(
                f"gadget {_segment_id(seg)}: closed-form optimum {opt} != brute force {brute}"
            )
    else:
        method = "closed-form"
    return GadgetCertificate(
        gadget_id=_segment_id(seg),
        kind=seg.kind,
        method=method,
        vertex_count=g.vertex_count,
        edge_total=g.edge_multiplicity_total,
        opt_value=opt,
    )


def _validate_cubic(g3: Multigraph) -> None:
    if g3.vertex_count < 4:
        raise ContractError("input graph must have at least 4 vertices")
    for u, v, m in g3.iter_edges():
        if u == v:
            raise ContractError("input graph must not contain self-loops")
        if m != 1:
            raise ContractError("input graph must have unit multiplicities")
    if any(d != 3 for d in g3.degrees):
        raise ContractError("input graph must be 3-regular")


def embed_with_certificates(
    g3: Multigraph, beta: float, min_k: int | None = None
) -> tuple[Multigraph, GadgetPlan, EmbeddingReport, list[GadgetCertificate]]:
    """Materialize the host graph and certify every gadget's optimum."""
    _validate_cubic(g3)
    plan, report = plan_reduction(g3.vertex_count, beta, min_k)
    edges: list[tuple[int, int, int]] = list(g3.iter_edges())
    certificates: list[GadgetCertificate] = []
    for seg in plan.segments:
        if seg.kind == "pad":
            edges.extend(_k4_edges(seg.start))
            continue
        built = _build_segment_gadget(seg)
        if built is None:
            continue
        gadget, opt = built
        if gadget.vertex_count != seg.count:
            raise ContractError(f"segment {seg} size mismatch with built gadget")
        certificates.append(_certify(seg, gadget, opt))
        edges.extend((seg.start + u, seg.start + v, m) for u, v, m in gadget.iter_edges())
    host = Multigraph(plan.host_vertex_count, edges)
    assert sum(c.opt_value for c in certificates) == report.offset
    return host, plan, report, certificates


def embed(
    g3: Multigraph, beta: float, min_k: int | None = None
) -> tuple[Multigraph, GadgetPlan, EmbeddingReport]:
    """Embed a 3-regular graph into a power-law host; see embed_with_certificates."""
    host, plan, report, _ = embed_with_certificates(g3, beta, min_k)
    return host, plan, report


# ---------------------------------------------------------------------------
# the gadget-optimal cut
# ---------------------------------------------------------------------------


def optimal_gadget_cut(plan: GadgetPlan, host: Multigraph) -> Cut:
    """Cut achieving the offset on the gadget vertices; input side stays 0.

    Paths and cycles alternate; odd cycles start at their special or
    minimum-multiplicity edge so the single missed edge is the cheapest;
    leaves and pendants go opposite their anchors; matched pairs split.
    """
    if host.vertex_count != plan.host_vertex_count:
        raise ContractError(
            f"host has {host.vertex_count} vertices, plan expects {plan.host_vertex_count}"
        )
    expected_first_degree = {
        "input": 3, "pad": 3, "multipath": None, "wheel": None, "joined": None,
        "leftover": None, "matching": 1, "isolated": 0,
    }
    for seg in plan.segments:
        want = expected_first_degree[seg.kind]
        if want is None:
            want = seg.degree
        if host.degree(seg.start) != want:
            raise ContractError(
                f"plan/host mismatch at segment {seg.kind}@{seg.start}: "
                f"degree {host.degree(seg.start)} != {want}"
            )
    sides = [0] * host.vertex_count
    for seg in plan.segments:
        if seg.kind in ("input", "pad", "isolated"):
            continue
        if seg.kind == "multipath":
            n = seg.class_size
            for k in range(n):
                sides[seg.start + k] = k % 2
            pos = seg.start + n
            for _ in range(seg.leaves_first):
                sides[pos] = 1 - sides[seg.start]
                pos += 1
            for _ in range(seg.leaves_last):
                sides[pos] = 1 - sides[seg.start + n - 1]
                pos += 1
        elif seg.kind == "wheel":
            for k in range(seg.class_size):
                sides[seg.start + k] = k % 2
        elif seg.kind == "joined":
            for k in range(seg.class_size):
                sides[seg.start + k] = k % 2
            for k in range(seg.class_size2):
                sides[seg.start + seg.class_size + k] = 1 - k % 2
        elif seg.kind == "leftover":
            for k in range(seg.class_size):
                sides[seg.start + k] = k % 2
            sides[seg.start + seg.class_size] = 1
        elif seg.kind == "matching":
            for k in range(seg.count):
                sides[seg.start + k] = k % 2
        else:
            raise ContractError(f"unknown segment kind {seg.kind!r}")
    cut = Cut.from_iterable(sides)
    if len(cut) != host.vertex_count:
        raise ContractError("assembled cut does not match the host")
    return cut


# ---------------------------------------------------------------------------
# decision thresholds
# ---------------------------------------------------------------------------


def decision_thresholds(n_param: int, eps: float) -> DecisionThresholds:
    """Yes/no thresholds (152-eps)n and (151+eps)n of the decision source."""
    if n_param < 1:
        raise DomainError(f"n must be positive, got {n_param}")
    if not (0.0 < eps < 1.0 / 302.0):
        raise DomainError(f"eps must lie in (0, 1/302), got {eps}")
    return DecisionThresholds(
        n_param=n_param,
        eps=eps,
        yes_value=(152.0 - eps) * n_param,
        no_value=(151.0 + eps) * n_param,
    )


def lift_thresholds(t: DecisionThresholds, r: EmbeddingReport) -> tuple[float, float]:
    """Shift both thresholds by the host's gadget offset."""
    return t.yes_value + r.offset, t.no_value + r.offset
