"""Auslander-Reiten translate, almost split sequences and knitting."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field as dc_field

from .algcore import Algebra
from .errors import (BudgetExceeded, CharacteristicTooSmall, InternalInconsistency,
                     NotDynkin, NotSelfinjective, NotSimplyLaced, SocleNotUnique,
                     UndefinedTranslate)
from .exactla import Mat, Span, dense, sparse_nullspace
from . import modcat as mc

DEFAULT_NODE_BUDGET = 512
DEFAULT_DIM_BUDGET = 64


# ---------------------------------------------------------------------------
# Transpose and translate
# ---------------------------------------------------------------------------

def transpose(m: mc.Module) -> mc.Module:
    """``Tr m`` over the opposite algebra, from a minimal presentation of m."""
    a = m.algebra
    op = a.opposite()
    pres = mc.minimal_presentation(m)
    p0 = mc.ProjSum(op, pres.p0.vertices)
    p1 = mc.ProjSum(op, pres.p1.vertices)
    target = p1.module()
    if not pres.p1.vertices:
        return target
    # Hom(P0, A) -> Hom(P1, A) is P_op(p0) -> P_op(p1) with the transposed element matrix.
    elems = [[pres.elems[s][r] for s in range(len(p1.vertices))] for r in range(len(p0.vertices))]
    blocks = mc.proj_map_blocks(op, p0.vertices, p1.vertices, elems)
    coker, _ = mc.cokernel_of(target, blocks)
    return coker


def tau(m: mc.Module, direction: str = "forward") -> mc.Module:
    """``D Tr m`` (forward) or ``Tr D m`` (inverse) of an indecomposable module."""
    if direction == "forward":
        if mc.is_projective(m):
            raise UndefinedTranslate(f"tau of projective module {m!r}")
        out = transpose(m).dual()
    elif direction == "inverse":
        if mc.is_injective(m):
            raise UndefinedTranslate(f"inverse tau of injective module {m!r}")
        out = transpose(m.dual())
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return out


def tau_inv(m: mc.Module) -> mc.Module:
    return tau(m, "inverse")


# ---------------------------------------------------------------------------
# Almost split sequences
# ---------------------------------------------------------------------------

def _lift_endo(z: mc.Module, p0: mc.ProjSum, eps, phi) -> tuple:
    """An endomorphism of P0 lifting ``phi`` along the cover ``eps: P0 -> z``."""
    a = z.algebra
    f = z.field
    p0m = p0.module()
    tops = []
    row_at = [0] * a.n
    for v in p0.vertices:
        tops.append((v, row_at[v]))
        for j in range(a.n):
            row_at[j] += len(a.graded_indices(v, j))
    blocks = [[] for _ in range(a.n)]
    images = []
    for v, r in tops:
        zvec = Mat(f, [eps[v].data[r]], 1, z.dims[v]) @ phi[v]
        # y with y @ eps[v] = zvec
        (sol,), _ = mc_solve_rows(eps[v], zvec)
        if sol is None:
            raise InternalInconsistency("projective cover is not surjective")
        images.append((v, sol))
    for v, y in images:
        for j in range(a.n):
            for b in a.graded_indices(v, j):
                blocks[j].extend((y @ p0m.act(b)).data)
    return tuple(Mat(f, blocks[j], len(blocks[j]), p0m.dims[j]) for j in range(a.n))


def mc_solve_rows(m: Mat, target: Mat):
    """Solve ``y @ m = target`` for a single row target."""
    from .exactla import solve
    sols, ker = solve(m.T, [target.data[0]])
    s = sols[0]
    return [None if s is None else s.T], ker


@dataclass
class AlmostSplit:
    left: mc.Module
    middle: list          # [(Module, multiplicity)]
    right: mc.Module
    middle_module: mc.Module = None


def _radical_of_local(z: mc.Module) -> list[tuple]:
    try:
        return mc.end_radical(z)
    except CharacteristicTooSmall:
        rad = mc.local_end_radical(z)
        if rad is None:
            raise
        return rad


def almost_split_sequence(x: mc.Module, right: mc.Module | None = None) -> AlmostSplit:
    """``0 -> x -> E -> tau^-1 x -> 0`` with E decomposed."""
    z = right if right is not None else tau_inv(x)
    f = x.field
    p0, eps = mc.projective_cover(z)
    p0m = p0.module()
    k, kinc = mc.kernel_of(p0m, eps)
    hk = mc.hom(k, x)
    hp = mc.hom(p0m, x)
    nflat = sum(dk * dx for dk, dx in zip(k.dims, x.dims))
    coboundary = Span(f, nflat)
    for h in hp.basis:
        coboundary.add(hk.flat(mc.compose(kinc, h)))
    ext_dim = hk.dim - len(coboundary)
    if ext_dim <= 0:
        raise InternalInconsistency(f"Ext^1(tau^-1 x, x) vanishes for {x!r}")
    # restrictions to K of lifts of rad End(z)
    rad = _radical_of_local(z)
    restr = []
    for phi in rad:
        lift = _lift_endo(z, p0, eps, phi)
        full = mc.compose(kinc, lift)  # K -> P0, lands in K
        restr.append(_factor_through_inclusion(full, kinc))
    # xi with phi*xi in coboundaries for every phi in rad End(z)
    rows = []
    if restr:
        images = [[coboundary.reduce(hk.flat(mc.compose(phik, b))) for b in hk.basis] for phik in restr]
        for per in images:
            coords = set()
            for v in per:
                coords.update(v)
            for c in sorted(coords):
                row = {a: v[c] for a, v in enumerate(per) if v.get(c)}
                if row:
                    rows.append(row)
    sol = sparse_nullspace(f, rows, hk.dim)
    socle = Span(f, nflat)
    for v in coboundary.basis:
        socle.add(list(v))
    chosen = []
    for v in sol:
        xi = hk.combination(dense(v, hk.dim, f))
        if socle.add(hk.flat(xi)):
            chosen.append(xi)
    if len(chosen) != 1:
        raise SocleNotUnique(f"socle of Ext has dimension {len(chosen)} for {x!r}")
    xi = chosen[0]
    e = pushout(k, kinc, xi, p0m, x)
    if e.dim != x.dim + z.dim:
        raise InternalInconsistency("length additivity failed")
    middle = mc.decompose(e)
    return AlmostSplit(x, middle, z, e)


def _factor_through_inclusion(g, inc) -> tuple:
    """``h`` with ``h @ inc = g`` blockwise (inc injective)."""
    f = None
    out = []
    for gb, ib in zip(g, inc):
        f = gb.field
        if ib.rows == 0:
            out.append(Mat(f, [[] for _ in range(gb.rows)], gb.rows, 0))
            continue
        solver = mc._pivot_solver(ib)
        out.append(solver(gb))
    return tuple(out)


def pushout(k: mc.Module, kinc, xi, p0m: mc.Module, x: mc.Module) -> mc.Module:
    """Middle term of the extension of the presentation along ``xi: K -> x``.

    ``E = (x + P0) / {(-xi(u), u) : u in K}``.
    """
    s = mc.direct_sum([x, p0m])
    bases = []
    for i in range(x.algebra.n):
        rows = []
        for r in range(k.dims[i]):
            rows.append([-c for c in xi[i].data[r]] + list(kinc[i].data[r]))
        if x.field.p:
            rows = [[c % x.field.p for c in row] for row in rows]
        bases.append(Mat(x.field, rows, len(rows), s.dims[i]))
    e, _ = mc.quotient_module(s, bases)
    return e


# ---------------------------------------------------------------------------
# AR quiver
# ---------------------------------------------------------------------------

@dataclass
class ARQuiver:
    algebra: Algebra
    nodes: list = dc_field(default_factory=list)
    arrows: dict = dc_field(default_factory=dict)       # (i, j) -> multiplicity
    tau: dict = dc_field(default_factory=dict)          # i -> tau(i)
    projective: list = dc_field(default_factory=list)
    injective: list = dc_field(default_factory=list)
    labels: list = dc_field(default_factory=list)

    def __len__(self) -> int:
        return len(self.nodes)

    def tau_inv(self) -> dict:
        return {v: k for k, v in self.tau.items()}

    def predecessors(self, j: int) -> list:
        return sorted(i for (i, t) in self.arrows if t == j)

    def successors(self, i: int) -> list:
        return sorted(t for (s, t) in self.arrows if s == i)

    def index_of(self, m: mc.Module):
        for k, node in enumerate(self.nodes):
            if node.dims == m.dims and mc.find_iso(node, m) is not None:
                return k
        return None

    def stable_nodes(self) -> list:
        return [k for k in range(len(self.nodes)) if not self.projective[k]]

    def orbits(self, nodes=None) -> list[list]:
        """tau-orbits of the given nodes (default: the stable ones)."""
        nodes = self.stable_nodes() if nodes is None else nodes
        seen = set()
        out = []
        tinv = self.tau_inv()
        for k in nodes:
            if k in seen:
                continue
            orb = []
            cur = k
            while cur is not None and cur not in seen:
                seen.add(cur)
                orb.append(cur)
                cur = self.tau.get(cur)
            cur = tinv.get(k)
            while cur is not None and cur not in seen:
                seen.add(cur)
                orb.insert(0, cur)
                cur = tinv.get(cur)
            out.append(orb)
        return out

    def to_json(self) -> dict:
        return {
            "nodes": [{"id": k, "label": self.labels[k], "dims": list(m.dims),
                       "projective": self.projective[k], "injective": self.injective[k]}
                      for k, m in enumerate(self.nodes)],
            "arrows": [{"source": i, "target": j, "multiplicity": c, "valuation": [1, 1]}
                       for (i, j), c in sorted(self.arrows.items())],
            "tau": [{"node": k, "tau": v} for k, v in sorted(self.tau.items())],
            "orbits": self.orbits(),
        }

    def to_dot(self) -> str:
        lines = ["digraph ARQuiver {", "  rankdir=LR;"]
        for k, m in enumerate(self.nodes):
            dims = "".join(str(d) for d in m.dims) if max(m.dims) < 10 else ",".join(map(str, m.dims))
            flags = ("P" if self.projective[k] else "") + ("I" if self.injective[k] else "")
            shape = "box" if self.projective[k] else "ellipse"
            text = f"{self.labels[k]}\\n{dims}" + (f" [{flags}]" if flags else "")
            lines.append(f'  n{k} [label="{text}", shape={shape}];')
        for (i, j), c in sorted(self.arrows.items()):
            for _ in range(c):
                lines.append(f"  n{i} -> n{j};")
        for k, v in sorted(self.tau.items()):
            lines.append(f"  n{k} -> n{v} [style=dashed, constraint=false, arrowhead=none];")
        lines.append("}")
        return "\n".join(lines) + "\n"


class _Knitter:
    def __init__(self, a: Algebra, node_budget: int, dim_budget: int):
        self.a = a
        self.node_budget = node_budget
        self.dim_budget = dim_budget
        self.nodes: list = []
        self.buckets: dict = {}
        self.queue = deque()
        self.tau: dict = {}
        self.ass: dict = {}         # node -> (middle [(node, mult)], right node)
        self.rad_proj: dict = {}    # projective node -> [(node, mult)]

    def add(self, m: mc.Module) -> int:
        for k in self.buckets.get(m.dims, ()):
            if mc.find_iso(self.nodes[k], m) is not None:
                return k
        if m.dim > self.dim_budget:
            raise BudgetExceeded(f"module of dimension {m.dim} exceeds dim budget {self.dim_budget}")
        if len(self.nodes) >= self.node_budget:
            raise BudgetExceeded(f"more than {self.node_budget} indecomposables")
        k = len(self.nodes)
        self.nodes.append(m)
        self.buckets.setdefault(m.dims, []).append(k)
        self.queue.append(k)
        return k

    def add_summands(self, m: mc.Module) -> list:
        return [(self.add(s), mult) for s, mult in mc.decompose(m)]

    def run(self) -> ARQuiver:
        a = self.a
        for i in range(a.n):
            self.add(mc.projective(a, i))
        proj = {}
        inj = {}
        while self.queue:
            k = self.queue.popleft()
            m = self.nodes[k]
            proj[k] = mc.is_projective(m)
            inj[k] = mc.is_injective(m)
            if proj[k]:
                rad, _ = mc.restrict(m, mc.radical_bases(m))
                self.rad_proj[k] = self.add_summands(rad) if rad.dim else []
            else:
                t = self.add(tau(m))
                self.tau[k] = t
            if inj[k]:
                soc = mc.socle_bases(m)
                q, _ = mc.quotient_module(m, soc)
                if q.dim:
                    self.add_summands(q)
            else:
                seq = almost_split_sequence(m)
                right = self.add(seq.right)
                middle = [(self.add(s), mult) for s, mult in seq.middle]
                self.ass[k] = (middle, right)
        g = ARQuiver(a, self.nodes)
        g.projective = [proj[k] for k in range(len(self.nodes))]
        g.injective = [inj[k] for k in range(len(self.nodes))]
        for k, (middle, right) in self.ass.items():
            if right in self.tau and self.tau[right] != k:
                raise InternalInconsistency("tau and inverse tau disagree")
            self.tau[right] = k
            for e, mult in middle:
                g.arrows[(e, right)] = mult
        for k, summands in self.rad_proj.items():
            for e, mult in summands:
                g.arrows[(e, k)] = mult
        g.tau = {k: v for k, v in self.tau.items() if not g.projective[k]}
        g.labels = _labels(g)
        return g


def _labels(g: ARQuiver) -> list:
    a = g.algebra
    names = {}
    for i in range(a.n):
        k = g.index_of(mc.projective(a, i))
        if k is not None:
            names.setdefault(k, f"P({a.vertex_names[i]})")
    for i in range(a.n):
        k = g.index_of(mc.simple(a, i))
        if k is not None:
            names.setdefault(k, f"S({a.vertex_names[i]})")
    for i in range(a.n):
        if any(g.injective):
            k = g.index_of(mc.injective(a, i))
            if k is not None:
                names.setdefault(k, f"I({a.vertex_names[i]})")
    return [names.get(k, f"M{k}") for k in range(len(g.nodes))]


def knit(a: Algebra, node_budget: int = DEFAULT_NODE_BUDGET,
         dim_budget: int = DEFAULT_DIM_BUDGET) -> ARQuiver:
    """All indecomposables reachable from the projectives, with arrows and tau."""
    if node_budget <= 0 or dim_budget <= 0:
        raise ValueError("budgets must be positive")
    g = _Knitter(a, node_budget, dim_budget).run()
    for k, m in enumerate(g.nodes):
        m.name = g.labels[k]
        m._cache["indec"] = True
    return g


# ---------------------------------------------------------------------------
# Independent checks on a knitted quiver
# ---------------------------------------------------------------------------

def mesh_defects(g: ARQuiver) -> list:
    """Nodes z where arrows into z and arrows out of tau z disagree."""
    bad = []
    for z, t in g.tau.items():
        into = sorted((i, c) for (i, j), c in g.arrows.items() if j == z)
        out = sorted((j, c) for (i, j), c in g.arrows.items() if i == t)
        if into != out:
            bad.append(z)
    return bad


def irreducible_counts(g: ARQuiver) -> dict:
    """``dim rad(X,Y) - dim rad^2(X,Y)`` for all node pairs, from Hom tables."""
    n = len(g.nodes)
    homs = {}
    rad = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                rad[i, j] = _radical_of_local(g.nodes[i])
            else:
                rad[i, j] = mc.hom(g.nodes[i], g.nodes[j]).basis
    out = {}
    for i in range(n):
        for j in range(n):
            if not rad[i, j]:
                continue
            hs = mc.HomSpace(g.nodes[i], g.nodes[j], rad[i, j])
            nflat = sum(x * y for x, y in zip(g.nodes[i].dims, g.nodes[j].dims))
            span = Span(g.nodes[i].field, nflat, keep_basis=False)
            for z in range(n):
                for u in rad[i, z]:
                    for v in rad[z, j]:
                        span.add(hs.flat(mc.compose(u, v)))
            c = len(rad[i, j]) - len(span)
            if c:
                out[i, j] = c
    return out


# ---------------------------------------------------------------------------
# Stable part and Dynkin type
# ---------------------------------------------------------------------------

@dataclass
class DynkinType:
    family: str
    rank: int

    def __str__(self) -> str:
        return self.family if self.family.startswith("E") else f"{self.family}{self.rank}"


def stable_part(g: ARQuiver) -> tuple[ARQuiver, list]:
    """The stable translation quiver (node indices preserved) and its tau-orbits."""
    for k in range(len(g.nodes)):
        if g.projective[k] != g.injective[k]:
            raise NotSelfinjective("a projective node is not injective or vice versa")
    keep = set(g.stable_nodes())
    s = ARQuiver(g.algebra, g.nodes)
    s.projective = g.projective
    s.injective = g.injective
    s.labels = g.labels
    s.arrows = {(i, j): c for (i, j), c in g.arrows.items() if i in keep and j in keep}
    s.tau = {k: v for k, v in g.tau.items() if k in keep}
    return s, s.orbits(sorted(keep))


def sectional_successors(g: ARQuiver, start: int, stable_only: bool = True) -> list:
    """Nodes reachable from ``start`` by sectional paths (start included)."""
    allowed = (lambda k: not g.projective[k]) if stable_only else (lambda k: True)
    reached = {start}
    seen_states = set()
    frontier = [(None, start)]
    while frontier:
        nxt = []
        for prev, cur in frontier:
            for y in g.successors(cur):
                if not allowed(y):
                    continue
                if prev is not None and g.tau.get(y) == prev:
                    continue
                state = (cur, y)
                if state in seen_states:
                    continue
                seen_states.add(state)
                reached.add(y)
                nxt.append(state)
        frontier = nxt
    return sorted(reached)


def classify_graph(nodes, edges) -> DynkinType:
    """Simply-laced Dynkin type of an undirected graph given by an edge multiset."""
    nodes = list(nodes)
    n = len(nodes)
    adj = {v: [] for v in nodes}
    seen_pairs = set()
    for u, v, mult in edges:
        if u == v:
            raise NotDynkin("loop in slice")
        key = frozenset((u, v))
        if mult > 1 or key in seen_pairs:
            raise NotSimplyLaced("multiple edge between two vertices")
        seen_pairs.add(key)
        adj[u].append(v)
        adj[v].append(u)
    if len(seen_pairs) != n - 1 or n == 0:
        raise NotDynkin("slice is not a tree")
    stack, seen = [nodes[0]], {nodes[0]}
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        raise NotDynkin("slice is not connected")
    branch = [v for v in nodes if len(adj[v]) > 2]
    if not branch:
        return DynkinType("A", n)
    if len(branch) > 1 or len(adj[branch[0]]) > 3:
        raise NotDynkin("graph is not of Dynkin type")
    c = branch[0]
    arms = []
    for w in adj[c]:
        length, prev, cur = 1, c, w
        while len(adj[cur]) == 2:
            prev, cur = cur, [x for x in adj[cur] if x != prev][0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return DynkinType("D", n)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return DynkinType(f"E{n}", n)
    raise NotDynkin(f"arms {arms} are not of Dynkin type")


def slice_graph(g: ARQuiver, nodes) -> list:
    ns = set(nodes)
    return [(i, j, c) for (i, j), c in g.arrows.items() if i in ns and j in ns]


def dynkin_type_of(g: ARQuiver) -> DynkinType:
    """Tree class read off the slice of sectional paths from a stable node."""
    stable = g.stable_nodes()
    if not stable:
        raise NotDynkin("stable part is empty")
    for (i, j), c in g.arrows.items():
        if c > 1 and not g.projective[i] and not g.projective[j]:
            raise NotSimplyLaced("valued arrow in the stable quiver")
    start = stable[0]
    sl = sectional_successors(g, start)
    return classify_graph(sl, slice_graph(g, sl))


def ar_json(g: ARQuiver) -> str:
    return json.dumps(g.to_json(), indent=2, sort_keys=True)
