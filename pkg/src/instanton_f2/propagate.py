"""Fixpoint propagation of bounds on M (within 4Z) and lower bounds on r2.

Nodes are knots; edges are relations such as crossing changes, mirrors,
connected sums, clasp numbers and torus-knot bounds.  Every edge is a
monotone narrowing operator, so chaotic iteration reaches the same greatest
fixpoint in any order.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field, replace

from .errors import PropagationError
from .knotdb.records import KnotRecord
from .obstruct import genus_bound

INF = math.inf

EDGE_ARITY = {
    "seed": 1,
    "r2_value": 1,
    "r2_lower": 1,
    "r2_r0_gap": 1,
    "abs_bounds": 1,
    "clasp": 1,
    "lspace_genus": 1,
    "torus": 1,
    "slice_genus": 1,
    "crossing_change": 2,
    "mirror": 2,
    "connected_sum": 3,
}


def _ceil4(v):
    return v if v in (INF, -INF) else 4 * math.ceil(v / 4)


def _floor4(v):
    return v if v in (INF, -INF) else 4 * math.floor(v / 4)


def _fmt(v) -> str:
    if v == INF:
        return "+inf"
    if v == -INF:
        return "-inf"
    return str(int(v))


@dataclass(frozen=True)
class BoundState:
    """Interval [M_lo, M_hi] in 4Z, interval [abs_lo, abs_hi] for |M|, bounds on r2."""

    M_lo: float = -INF
    M_hi: float = INF
    abs_lo: float = 0
    abs_hi: float = INF
    r2_lo: float = 0
    r2_hi: float = INF

    @property
    def pinned(self) -> int | None:
        return int(self.M_lo) if self.M_lo == self.M_hi else None

    @property
    def abs_M_exclusions(self) -> frozenset[int]:
        """Lattice values of |M| below ``abs_lo`` that have been ruled out."""
        if self.abs_lo == INF:
            return frozenset()
        return frozenset(range(0, int(self.abs_lo), 4))

    def contains(self, M: int) -> bool:
        return self.M_lo <= M <= self.M_hi and self.abs_lo <= abs(M) <= self.abs_hi

    def is_subset_of(self, other: BoundState) -> bool:
        return (
            other.M_lo <= self.M_lo
            and self.M_hi <= other.M_hi
            and other.abs_lo <= self.abs_lo
            and self.abs_hi <= other.abs_hi
            and other.r2_lo <= self.r2_lo
            and self.r2_hi <= other.r2_hi
        )

    def describe(self) -> str:
        if self.pinned is not None:
            s = f"M = {self.pinned}"
        else:
            s = f"M in [{_fmt(self.M_lo)}, {_fmt(self.M_hi)}]"
            if self.abs_lo > 0 or self.abs_hi < INF:
                s += f", |M| in [{_fmt(self.abs_lo)}, {_fmt(self.abs_hi)}]"
        s += f", r2 >= {_fmt(self.r2_lo)}"
        if self.r2_hi < INF:
            s += f", r2 <= {_fmt(self.r2_hi)}"
        return s


class _Empty(Exception):
    pass


def tighten(st: BoundState, r0_nu: tuple[int, int] | None = None) -> BoundState:
    """Close a state under the lattice and |M| <-> M <-> r2 relations."""
    lo, hi, alo, ahi, rlo, rhi = st.M_lo, st.M_hi, st.abs_lo, st.abs_hi, st.r2_lo, st.r2_hi
    while True:
        prev = (lo, hi, alo, ahi, rlo, rhi)
        lo, hi = _ceil4(lo), _floor4(hi)
        alo, ahi = _ceil4(max(alo, 0)), _floor4(min(ahi, rhi))
        if lo > hi or alo > ahi:
            raise _Empty
        if lo >= 0:
            alo, ahi = max(alo, lo), min(ahi, hi)
        elif hi <= 0:
            alo, ahi = max(alo, -hi), min(ahi, -lo)
        else:
            ahi = min(ahi, max(-lo, hi))
        lo, hi = max(lo, -ahi), min(hi, ahi)
        if alo > 0:
            if lo > -alo:
                lo = max(lo, alo)
            if hi < alo:
                hi = min(hi, -alo)
        rlo = _ceil4(max(rlo, alo))
        rhi = _floor4(rhi)
        if lo > hi or alo > ahi or rlo > rhi:
            raise _Empty
        if (lo, hi, alo, ahi, rlo, rhi) == prev:
            return BoundState(lo, hi, alo, ahi, rlo, rhi)


@dataclass(frozen=True)
class ConstraintEdge:
    kind: str
    endpoints: tuple[str, ...]
    params: tuple[tuple[str, int], ...] = ()
    label: str = ""

    def __post_init__(self):
        if self.kind not in EDGE_ARITY:
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if len(self.endpoints) != EDGE_ARITY[self.kind]:
            raise ValueError(f"{self.kind} needs {EDGE_ARITY[self.kind]} endpoint(s)")
        for k, v in self.params:
            if self.kind not in ("seed", "r2_r0_gap") and v < 0:
                raise ValueError(f"{self.kind}: parameter {k} must be nonnegative")

    @classmethod
    def make(cls, kind: str, *endpoints: str, label: str = "", **params: int) -> ConstraintEdge:
        return cls(kind, tuple(endpoints), tuple(sorted(params.items())), label)

    def param(self, key: str) -> int:
        return dict(self.params)[key]

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "endpoints": list(self.endpoints)}
        d.update(dict(self.params))
        return d

    def __str__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.kind}({args}) on {' -> '.join(self.endpoints)}"


def crossing_change(K: str, K_prime: str, p: int, n: int) -> ConstraintEdge:
    """K becomes K_prime after changing p positive and n negative crossings."""
    return ConstraintEdge.make("crossing_change", K, K_prime, p=p, n=n)


def seed(K: str, value: int) -> ConstraintEdge:
    return ConstraintEdge.make("seed", K, value=value)


def _meet(st: BoundState, **bounds) -> BoundState:
    kw = {}
    for k, v in bounds.items():
        cur = getattr(st, k)
        kw[k] = max(cur, v) if k.endswith("_lo") else min(cur, v)
    return replace(st, **kw)


def apply_edge(states: tuple[BoundState, ...], e: ConstraintEdge) -> tuple[BoundState, ...]:
    """Tighten the endpoint states through one relation, then snap to the lattice.

    Raises :class:`PropagationError` if some endpoint interval becomes empty.
    """
    try:
        new = _apply(states, e)
        return tuple(tighten(s) for s in new)
    except _Empty:
        raise PropagationError(f"empty interval after {e}", (e,)) from None


def _apply(states, e):
    k = e.kind
    P = dict(e.params)
    if k == "seed":
        (a,) = states
        return (_meet(a, M_lo=P["value"], M_hi=P["value"]),)
    if k == "r2_value":
        (a,) = states
        return (_meet(a, r2_lo=P["value"], r2_hi=P["value"]),)
    if k == "r2_lower":
        (a,) = states
        return (_meet(a, r2_lo=P["value"]),)
    if k == "r2_r0_gap":
        # r2 >= r0 + |M - nu#|
        (a,) = states
        r0, nu = P["r0"], P["nu_sharp"]
        dist = 0 if a.M_lo <= nu <= a.M_hi else min(abs(a.M_lo - nu), abs(a.M_hi - nu))
        return (_meet(a, r2_lo=r0 + dist),)
    if k == "abs_bounds":
        (a,) = states
        return (_meet(a, abs_lo=P["lo"], abs_hi=P["hi"]),)
    if k == "clasp":
        (a,) = states
        return (_meet(a, M_lo=-4 * P["c_plus"], M_hi=4 * P["c_minus"]),)
    if k == "lspace_genus":
        (a,) = states
        a = _meet(a, abs_lo=genus_bound(P["genus"]))
        # an L-space knot over F2 has r2 = |M|
        return (_meet(a, r2_hi=a.abs_hi, abs_lo=a.r2_lo),)
    if k == "torus":
        (a,) = states
        p, q = P["p"], P["q"]
        return (_meet(a, abs_lo=p * q - p - q, abs_hi=p * q - 2),)
    if k == "slice_genus":
        (a,) = states
        return (_meet(a, abs_hi=4 * P["g4"]),)
    if k == "crossing_change":
        a, b = states
        p, n = P["p"], P["n"]
        # -4n <= M(a) - M(b) <= 4p
        a2 = _meet(a, M_lo=b.M_lo - 4 * n, M_hi=b.M_hi + 4 * p)
        b2 = _meet(b, M_lo=a.M_lo - 4 * p, M_hi=a.M_hi + 4 * n)
        return a2, b2
    if k == "mirror":
        a, b = states
        a2 = _meet(a, M_lo=-b.M_hi, M_hi=-b.M_lo, abs_lo=b.abs_lo, abs_hi=b.abs_hi, r2_lo=b.r2_lo, r2_hi=b.r2_hi)
        b2 = _meet(b, M_lo=-a.M_hi, M_hi=-a.M_lo, abs_lo=a.abs_lo, abs_hi=a.abs_hi, r2_lo=a.r2_lo, r2_hi=a.r2_hi)
        return a2, b2
    if k == "connected_sum":
        a, b, s = states
        s2 = _meet(s, M_lo=a.M_lo + b.M_lo, M_hi=a.M_hi + b.M_hi)
        a2 = _meet(a, M_lo=s.M_lo - b.M_hi, M_hi=s.M_hi - b.M_lo)
        b2 = _meet(b, M_lo=s.M_lo - a.M_hi, M_hi=s.M_hi - a.M_lo)
        return a2, b2, s2
    raise AssertionError(k)


def record_edges(K: KnotRecord, *, speculative_slice_genus: bool = False) -> list[ConstraintEdge]:
    """Facts stored on a record, expressed as single-node edges."""
    out = []
    name = K.name
    lab = f"record {name}"
    if K.M is not None:
        out.append(ConstraintEdge.make("seed", name, value=K.M, label=lab))
    if K.r2 is not None:
        out.append(ConstraintEdge.make("r2_value", name, value=K.r2, label=lab))
    if K.r0 is not None:
        out.append(ConstraintEdge.make("r2_lower", name, value=K.r0, label=lab))
        if K.nu_sharp is not None:
            out.append(ConstraintEdge.make("r2_r0_gap", name, r0=K.r0, nu_sharp=K.nu_sharp, label=lab))
    if K.abs_M_lo is not None or K.abs_M_hi is not None:
        lo = K.abs_M_lo or 0
        hi = K.abs_M_hi if K.abs_M_hi is not None else 10**18
        out.append(ConstraintEdge.make("abs_bounds", name, lo=lo, hi=hi, label=lab))
    if K.clasp_plus is not None and K.clasp_minus is not None:
        out.append(ConstraintEdge.make("clasp", name, c_plus=K.clasp_plus, c_minus=K.clasp_minus, label=lab))
    if K.lspace_f2 and K.genus is not None and K.genus >= 1:
        out.append(ConstraintEdge.make("lspace_genus", name, genus=K.genus, label=lab))
    if speculative_slice_genus and K.slice_genus is not None:
        out.append(
            ConstraintEdge.make("slice_genus", name, g4=K.slice_genus, label="SPECULATIVE |M| <= 4 g4")
        )
    return out


@dataclass
class PropagationResult:
    states: dict[str, BoundState]
    updates: int
    speculative: bool = False

    @property
    def pinned(self) -> dict[str, int]:
        return {k: v.pinned for k, v in self.states.items() if v.pinned is not None}

    @property
    def residual(self) -> dict[str, BoundState]:
        return {k: v for k, v in self.states.items() if v.pinned is None}

    def report(self) -> str:
        lines = []
        if self.speculative:
            lines.append("# SPECULATIVE: includes the unproven bound |M| <= 4 g4")
        for name in sorted(self.states, key=_natural_key):
            lines.append(f"{name}: {self.states[name].describe()}")
        return "\n".join(lines) + "\n"


def _natural_key(name: str):
    import re

    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


@dataclass
class ConstraintGraph:
    edges: list[ConstraintEdge] = field(default_factory=list)
    initial: dict[str, BoundState] = field(default_factory=dict)
    speculative: bool = False

    @property
    def nodes(self) -> list[str]:
        seen = dict.fromkeys(self.initial)
        for e in self.edges:
            for n in e.endpoints:
                seen.setdefault(n)
        return list(seen)

    def add(self, *edges: ConstraintEdge) -> ConstraintGraph:
        self.edges.extend(edges)
        return self


def _run(graph: ConstraintGraph, order: list[int], max_updates: int):
    states = {n: graph.initial.get(n, BoundState()) for n in graph.nodes}
    incident: dict[str, list[int]] = {n: [] for n in states}
    for i, e in enumerate(graph.edges):
        for n in set(e.endpoints):
            incident[n].append(i)
    support: dict[str, frozenset[int]] = {n: frozenset() for n in states}
    queue = deque(order)
    queued = set(order)
    updates = 0
    while queue:
        i = queue.popleft()
        queued.discard(i)
        e = graph.edges[i]
        before = tuple(states[n] for n in e.endpoints)
        dep = frozenset({i}).union(*(support[n] for n in e.endpoints))
        try:
            after = apply_edge(before, e)
        except PropagationError:
            return None, dep, updates
        for n, old, new in zip(e.endpoints, before, after):
            if new != states[n]:
                # several endpoints may alias one node; intersect
                cur = states[n]
                merged = BoundState(
                    max(cur.M_lo, new.M_lo),
                    min(cur.M_hi, new.M_hi),
                    max(cur.abs_lo, new.abs_lo),
                    min(cur.abs_hi, new.abs_hi),
                    max(cur.r2_lo, new.r2_lo),
                    min(cur.r2_hi, new.r2_hi),
                )
                try:
                    merged = tighten(merged)
                except _Empty:
                    return None, dep, updates
                if merged == cur:
                    continue
                states[n] = merged
                support[n] = support[n] | dep
                updates += 1
                if updates > max_updates:
                    raise PropagationError(
                        f"no fixpoint after {max_updates} updates: an unbounded chain of "
                        "tightenings means the constraints are infeasible",
                        tuple(graph.edges[j] for j in sorted(dep)),
                    )
                for j in incident[n]:
                    if j not in queued:
                        queue.append(j)
                        queued.add(j)
    return states, None, updates


def _minimize(graph: ConstraintGraph, witness: list[int], max_updates: int) -> list[int]:
    """Drop edges from a contradictory subset while it stays contradictory."""
    keep = list(witness)
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1 :]
        sub = ConstraintGraph([graph.edges[j] for j in trial], graph.initial)
        try:
            states, _, _ = _run(sub, list(range(len(trial))), max_updates)
        except PropagationError:
            states = None
        if states is None:
            keep = trial
        else:
            i += 1
    return keep


def propagate(
    graph: ConstraintGraph,
    *,
    order: list[int] | None = None,
    rng: random.Random | None = None,
    max_updates: int = 1_000_000,
) -> PropagationResult:
    """Greatest fixpoint of all edges.

    ``order`` (or a shuffle drawn from ``rng``) fixes the initial worklist;
    the result does not depend on it.  On contradiction raises
    :class:`PropagationError` whose ``witness`` is an irredundant list of edges.
    """
    idx = list(range(len(graph.edges)))
    if order is not None:
        idx = list(order)
    elif rng is not None:
        rng.shuffle(idx)
    states, dep, updates = _run(graph, idx, max_updates)
    if states is None:
        witness = _minimize(graph, sorted(dep), max_updates)
        edges = tuple(graph.edges[j] for j in witness)
        chain = "; ".join(str(e) for e in edges)
        raise PropagationError(f"contradiction: {chain}", edges)
    return PropagationResult(states, updates, graph.speculative)


# --------------------------------------------------------------- graph sources


def twist_chain(max_m: int) -> list[ConstraintEdge]:
    """Crossing-change relations among twist knots K_1 ... K_{2 max_m}.

    K_{2m-1} unknots by changing one negative crossing, K_{2m} by one positive
    crossing, and K_{n+2} changes to K_n by one negative crossing.
    """
    out = []
    for m in range(1, max_m + 1):
        out.append(crossing_change(f"K_{2 * m - 1}", "unknot", p=0, n=1))
        out.append(crossing_change(f"K_{2 * m}", "unknot", p=1, n=0))
        if m < max_m:
            out.append(crossing_change(f"K_{2 * m + 1}", f"K_{2 * m - 1}", p=0, n=1))
            out.append(crossing_change(f"K_{2 * m + 2}", f"K_{2 * m}", p=0, n=1))
    return out


def twist_chain_graph(max_m: int) -> ConstraintGraph:
    """Seeds M(K_1 = 3_1) = -4, M(K_2 = 4_1) = 0, M(unknot) = 0 plus :func:`twist_chain`."""
    g = ConstraintGraph()
    g.add(seed("unknot", 0), seed("K_1", -4), seed("K_2", 0))
    g.add(*twist_chain(max_m))
    return g


GENERATORS = {"twist_chain": lambda params: twist_chain(int(params.get("max_m", 50)))}


def edge_from_dict(obj: dict) -> list[ConstraintEdge]:
    if "generator" in obj:
        gen = GENERATORS.get(obj["generator"])
        if gen is None:
            raise ValueError(f"unknown constraint generator {obj['generator']!r}")
        return gen(obj.get("params", {}))
    obj = dict(obj)
    kind = obj.pop("kind", None)
    endpoints = obj.pop("endpoints", None)
    label = obj.pop("label", "")
    if not isinstance(endpoints, list) or not all(isinstance(x, str) for x in endpoints):
        raise ValueError("constraint 'endpoints' must be a list of knot names")
    for k, v in obj.items():
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValueError(f"constraint parameter {k!r} must be an integer")
    return [ConstraintEdge(kind, tuple(endpoints), tuple(sorted(obj.items())), label)]


def graph_from_table(
    table, *, include_records: bool = False, speculative_slice_genus: bool = False
) -> ConstraintGraph:
    """Constraint graph from a table's ``constraints`` array.

    With ``include_records`` the stored invariants of every node that the
    table can resolve are added as single-node facts.
    """
    g = ConstraintGraph(speculative=speculative_slice_genus)
    for obj in table.constraints:
        g.add(*edge_from_dict(obj))
    if include_records or speculative_slice_genus:
        for name in g.nodes:
            if name in table:
                facts = record_edges(table[name], speculative_slice_genus=speculative_slice_genus)
                if not include_records:
                    facts = [f for f in facts if f.kind == "slice_genus"]
                g.add(*facts)
    return g
