"""Constructors for the algebra families used throughout: Nakayama algebras,
r-fold trivial extensions, repetitive truncations, one-point extensions,
reflections and Brauer tree algebras."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algcore import (Algebra, Quiver, Relation, bound_quiver_algebra, corner, gabriel_quiver)
from .errors import InvalidTwist, NotASink, NotTriangular
from .exactla import QQ, Field
from . import modcat as mc


def _rel(*paths, coeffs=None) -> Relation:
    coeffs = coeffs or [1] * len(paths)
    return Relation(tuple((c, tuple(p)) for c, p in zip(coeffs, paths)))


# ---------------------------------------------------------------------------
# Small named examples
# ---------------------------------------------------------------------------

def example_orbit_algebra(f: Field = QQ) -> Algebra:
    """Six-vertex selfinjective algebra of stable type A3 with a short cycle.

    Two commutative squares 1 -> {2, 3} -> 4 and 4 -> {5, 6} -> 1 glued so
    that crossing from one square to the other along a "wrong" arrow is zero.
    """
    q = Quiver(6, (("al1", 1, 2), ("be1", 1, 3), ("al2", 2, 4), ("be2", 3, 4),
                   ("al3", 4, 6), ("be3", 4, 5), ("al4", 6, 1), ("be4", 5, 1)))
    rels = [_rel(("al1", "al2"), ("be1", "be2"), coeffs=[1, -1]),
            _rel(("al3", "al4"), ("be3", "be4"), coeffs=[1, -1]),
            _rel(("al2", "be3")), _rel(("be2", "al3")),
            _rel(("al4", "be1")), _rel(("be4", "al1"))]
    return bound_quiver_algebra(q, rels, f)


# ---------------------------------------------------------------------------
# Nakayama algebras
# ---------------------------------------------------------------------------

def nakayama_selfinjective(m: int, ell: int, f: Field = QQ) -> Algebra:
    """N(m, ell): cyclic quiver ``a_i: i -> i+1`` on m vertices modulo paths of length ell."""
    if m < 1 or ell < 2:
        raise ValueError("need m >= 1 and ell >= 2")
    arrows = tuple((f"a{i}", i, i % m + 1) for i in range(1, m + 1))
    q = Quiver(m, arrows)
    rels = []
    for i in range(1, m + 1):
        rels.append(_rel([f"a{(i - 1 + k) % m + 1}" for k in range(ell)]))
    return bound_quiver_algebra(q, rels, f, ell + 1)


def hereditary_nakayama(n: int, f: Field = QQ) -> Algebra:
    """Path algebra of ``1 <- 2 <- ... <- n`` (lower triangular matrices T_n)."""
    if n < 1:
        raise ValueError("need n >= 1")
    arrows = tuple((f"a{i}", i + 1, i) for i in range(1, n))
    return bound_quiver_algebra(Quiver(n, arrows), [], f, n + 1)


def path_algebra(q: Quiver, f: Field = QQ) -> Algebra:
    """Path algebra of an acyclic quiver."""
    if not q.is_acyclic():
        raise NotTriangular("path algebra of a quiver with oriented cycles is infinite")
    return bound_quiver_algebra(q, [], f, q.n + 1)


# ---------------------------------------------------------------------------
# Automorphisms and trivial extensions
# ---------------------------------------------------------------------------

@dataclass
class AutomorphismSpec:
    """Automorphism of B given on vertices and on generators.

    ``perm[i]`` is the image vertex of vertex i (0-based); ``arrows`` maps a
    generator name to ``(image generator name, scalar)``.
    """

    perm: tuple
    arrows: dict = dc_field(default_factory=dict)

    def images(self, b: Algebra) -> list[dict]:
        """Image of every basis element of b, validated as an automorphism."""
        f = b.field
        n = b.n
        if sorted(self.perm) != list(range(n)):
            raise InvalidTwist("vertex map is not a permutation")
        names = list(b.gen_names)
        gen_img = []
        for g, name in enumerate(names):
            tgt_name, scalar = self.arrows.get(name, (name, 1))
            if tgt_name not in names:
                raise InvalidTwist(f"unknown generator {tgt_name}")
            h = names.index(tgt_name)
            if (b.gen_src(h), b.gen_tgt(h)) != (self.perm[b.gen_src(g)], self.perm[b.gen_tgt(g)]):
                raise InvalidTwist(f"image of {name} has wrong endpoints")
            c = f(scalar)
            if not c:
                raise InvalidTwist("zero scalar on a generator")
            gen_img.append({b.gens[h]: c})
        imgs = []
        for x in range(b.dim):
            w = b.words[x]
            if not w:
                imgs.append({b.idem[self.perm[b.src[x]]]: f.one})
                continue
            v = gen_img[w[0]]
            for g in w[1:]:
                v = b.mul(v, gen_img[g])
            imgs.append(v)
        # multiplicativity on the basis
        one = f.one
        for x in range(b.dim):
            for y in range(b.dim):
                lhs = b.mul(imgs[x], imgs[y])
                rhs = {}
                for k, c in b.table.get((x, y), {}).items():
                    for t, d in imgs[k].items():
                        val = rhs.get(t, 0) + c * d
                        if f.p:
                            val %= f.p
                        rhs[t] = val
                rhs = {t: c for t, c in rhs.items() if c}
                if lhs != rhs:
                    raise InvalidTwist("vertex/arrow data does not preserve the relations")
        from .exactla import Mat, dense
        if Mat(f, [dense(v, b.dim, f) for v in imgs], b.dim, b.dim).rank() != b.dim:
            raise InvalidTwist("map is not bijective")
        return imgs


def _dual_actions(b: Algebra):
    """Coefficient lookups for the bimodule D(B) on the dual basis.

    ``left[(b, x)] = {y: c}`` means ``b . x* = sum c y*`` and
    ``right[(x, c)]`` likewise for ``x* . c``.
    """
    left: dict = {}
    right: dict = {}
    for (u, v), prod in b.table.items():
        for x, c in prod.items():
            # u*v has coefficient c at x
            # b . x* with b = v: coefficient of x in y.v for y = u
            left.setdefault((v, x), {})
            left[(v, x)][u] = left[(v, x)].get(u, 0) + c
            # x* . c with c = u: coefficient of x in u.y for y = v
            right.setdefault((x, u), {})
            right[(x, u)][v] = right[(x, u)].get(v, 0) + c
    return left, right


def _layered_algebra(b: Algebra, layers: int, slots, twist_imgs=None, twist_perm=None,
                     vertex_names=None) -> Algebra:
    """Algebra on ``layers`` copies of B and D(B) slots.

    ``slots`` lists pairs ``(upper, lower)``: a slot has left idempotents in
    layer ``upper`` and right idempotents in layer ``lower``.  The left action
    on the last slot is twisted when ``twist_imgs`` is given.
    """
    f = b.field
    d = b.dim
    n = b.n
    left, right = _dual_actions(b)
    nslots = len(slots)
    dim = layers * d + nslots * d
    bidx = lambda m, x: m * d + x
    sidx = lambda s, x: layers * d + s * d + x
    table: dict = {}

    def put(key, vec):
        vec = {k: (c % f.p if f.p else c) for k, c in vec.items()}
        vec = {k: c for k, c in vec.items() if c}
        if vec:
            table[key] = vec

    for m in range(layers):
        for (x, y), prod in b.table.items():
            put((bidx(m, x), bidx(m, y)), {bidx(m, k): c for k, c in prod.items()})
    for s, (upper, lower) in enumerate(slots):
        twisted = twist_imgs is not None and s == nslots - 1
        for x in range(d):
            # x* . c for c in layer `lower`
            for c in range(d):
                r = right.get((x, c))
                if r:
                    put((sidx(s, x), bidx(lower, c)), {sidx(s, y): v for y, v in r.items()})
            # bb . x* for bb in layer `upper`
            for bb in range(d):
                if twisted:
                    acc: dict = {}
                    for u, cu in twist_imgs[bb].items():
                        for y, v in left.get((u, x), {}).items():
                            acc[y] = acc.get(y, 0) + cu * v
                    put((bidx(upper, bb), sidx(s, x)), {sidx(s, y): v for y, v in acc.items()})
                else:
                    l = left.get((bb, x))
                    if l:
                        put((bidx(upper, bb), sidx(s, x)), {sidx(s, y): v for y, v in l.items()})
    idems = []
    for m in range(layers):
        for i in range(n):
            idems.append({bidx(m, b.idem[i]): f.one})
    rad = [{bidx(m, x): f.one} for m in range(layers) for x in range(d) if b.words[x]]
    rad += [{sidx(s, x): f.one} for s in range(nslots) for x in range(d)]
    if vertex_names is None:
        vertex_names = [f"{b.vertex_names[i]}" if layers == 1 else f"{b.vertex_names[i]}_{m}"
                        for m in range(layers) for i in range(n)]
    return Algebra.from_table(f, dim, table, idems, vertex_names=vertex_names, radical=rad)


def trivial_extension_r(b: Algebra, r: int = 1, twist: AutomorphismSpec | None = None) -> Algebra:
    """``T(B)^(r) = B^/(nu^r)``, or ``B^/(sigma nu^r)`` for a twist sigma of B."""
    if r < 1:
        raise ValueError("r must be >= 1")
    imgs = twist.images(b) if twist is not None else None
    slots = [((m + 1) % r, m) for m in range(r)]
    return _layered_algebra(b, r, slots, twist_imgs=imgs)


def repetitive_truncation(b: Algebra, m0: int, m1: int) -> Algebra:
    """Full subcategory of the repetitive algebra on layers m0..m1."""
    if m0 > m1:
        raise ValueError("need m0 <= m1")
    k = m1 - m0 + 1
    slots = [(m + 1, m) for m in range(k - 1)]
    if k == 1:
        return b
    names = [f"{b.vertex_names[i]}_{m0 + m}" for m in range(k) for i in range(b.n)]
    return _layered_algebra(b, k, slots, vertex_names=names)


# ---------------------------------------------------------------------------
# One-point extensions and reflections
# ---------------------------------------------------------------------------

def one_point_extension(b: Algebra, m: mc.Module, name: str | None = None) -> Algebra:
    """``B[M]``: B plus a new last vertex w with ``e_w B[M] = K e_w + M``."""
    f = b.field
    d = b.dim
    offs = m.offsets()
    # basis: B, then M (vertex by vertex), then e_w
    mdim = m.dim
    w = d + mdim
    table: dict = {}
    for key, prod in b.table.items():
        table[key] = dict(prod)
    for j in range(b.n):
        for r in range(m.dims[j]):
            v = d + offs[j] + r
            table[(w, v)] = {v: f.one}
            for x in range(d):
                if b.src[x] != j:
                    continue
                row = m.act(x).data[r]
                k = b.tgt[x]
                vec = {d + offs[k] + c: a for c, a in enumerate(row) if a}
                if vec:
                    table[(v, x)] = vec
    table[(w, w)] = {w: f.one}
    idems = [{b.idem[i]: f.one} for i in range(b.n)] + [{w: f.one}]
    rad = [{x: f.one} for x in range(d) if b.words[x]] + [{d + k: f.one} for k in range(mdim)]
    names = list(b.vertex_names) + [name or str(b.n + 1)]
    return Algebra.from_table(f, d + mdim + 1, table, idems, vertex_names=names, radical=rad)


def _check_triangular(b: Algebra) -> Quiver:
    q = gabriel_quiver(b)
    if not q.is_acyclic():
        raise NotTriangular("Gabriel quiver has an oriented cycle")
    return q


def reflection(b: Algebra, i: int) -> Algebra:
    """``S_i^+ B``: extend by ``I_B(i)`` and delete i; the new vertex takes the place of i.

    ``i`` is a 0-based vertex index.
    """
    q = _check_triangular(b)
    if any(s == i + 1 for _, s, _ in q.arrows):
        raise NotASink(f"vertex {b.vertex_names[i]} is not a sink")
    ext = one_point_extension(b, mc.injective(b, i), name=b.vertex_names[i])
    order = [b.n if j == i else j for j in range(b.n)]
    return corner(ext, order, keep_order=True)


def reflection_sequence(b: Algebra) -> list[int]:
    """0-based vertices i_1..i_n, each a sink after the previous reflections.

    Ties are broken by the smallest vertex index.
    """
    _check_triangular(b)
    used: list[int] = []
    cur = b
    for _ in range(b.n):
        q = _check_triangular(cur)
        outs = {s - 1 for _, s, _ in q.arrows}
        sinks = [v for v in range(cur.n) if v not in outs and v not in used]
        if not sinks:
            raise NotTriangular("no unused sink available")
        v = sinks[0]
        used.append(v)
        cur = reflection(cur, v)
    return used


def apply_reflections(b: Algebra, seq) -> Algebra:
    cur = b
    for v in seq:
        cur = reflection(cur, v)
    return cur


# ---------------------------------------------------------------------------
# Brauer tree algebras
# ---------------------------------------------------------------------------

@dataclass
class BrauerTree:
    """Tree with edges ``1..n`` given as vertex pairs, cyclic edge orders around
    vertices, an exceptional vertex and its multiplicity."""

    edges: tuple
    exceptional: object
    multiplicity: int = 1
    cyclic_order: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")
        verts = {v for e in self.edges for v in e}
        if not self.edges:
            raise ValueError("a Brauer tree needs at least one edge")
        if len(verts) != len(self.edges) + 1:
            raise ValueError("edges do not form a tree")
        # connectivity
        adj = {v: set() for v in verts}
        for u, w in self.edges:
            adj[u].add(w)
            adj[w].add(u)
        start = next(iter(verts))
        seen, stack = {start}, [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != verts:
            raise ValueError("edges do not form a tree")
        if self.exceptional not in verts:
            raise ValueError("exceptional vertex is not a tree vertex")
        order = dict(self.cyclic_order)
        for v in sorted(verts, key=str):
            incident = [k for k, e in enumerate(self.edges) if v in e]
            if v in order:
                if sorted(order[v]) != incident:
                    raise ValueError(f"cyclic order at {v} does not list its edges")
            else:
                order[v] = incident
        self.cyclic_order = order

    @classmethod
    def star(cls, e: int, m: int = 1) -> "BrauerTree":
        """Star with e edges around the exceptional centre of multiplicity m."""
        return cls(tuple(("c", f"l{k}") for k in range(e)), "c", m)

    @classmethod
    def line(cls, n: int, m: int = 1, exceptional: int = 0) -> "BrauerTree":
        return cls(tuple((k, k + 1) for k in range(n)), exceptional, m)

    def mult(self, v) -> int:
        return self.multiplicity if v == self.exceptional else 1


def brauer_tree_algebra(t: BrauerTree, f: Field = QQ) -> Algebra:
    n = len(t.edges)
    verts = sorted(t.cyclic_order, key=str)
    # which vertices carry an arrow cycle
    kept = {v for v in verts if len(t.cyclic_order[v]) > 1 or t.mult(v) > 1}
    if n == 1 and not kept:
        kept = {t.exceptional}
    arrows = []
    nxt = {}
    for vi, v in enumerate(verts):
        if v not in kept:
            continue
        cyc = t.cyclic_order[v]
        for k, e in enumerate(cyc):
            e2 = cyc[(k + 1) % len(cyc)]
            name = f"x{vi + 1}_{e + 1}"
            arrows.append((name, e + 1, e2 + 1))
            nxt[v, e] = name
    q = Quiver(n, tuple(arrows))

    def cycle(v, e) -> list:
        cyc = t.cyclic_order[v]
        k0 = cyc.index(e)
        return [nxt[v, cyc[(k0 + k) % len(cyc)]] for k in range(len(cyc))]

    rels = []
    # consecutive arrows from different cycles compose to zero
    for v in kept:
        for e in t.cyclic_order[v]:
            cyc = t.cyclic_order[v]
            e2 = cyc[(cyc.index(e) + 1) % len(cyc)]
            a = nxt[v, e]
            for w in kept:
                if w != v and (w, e2) in nxt:
                    rels.append(_rel([a, nxt[w, e2]]))
    for e, (u, w) in enumerate(t.edges):
        ends = [v for v in (u, w) if v in kept]
        if len(ends) == 2:
            cu = cycle(ends[0], e) * t.mult(ends[0])
            cw = cycle(ends[1], e) * t.mult(ends[1])
            rels.append(_rel(cu, cw, coeffs=[1, -1]))
        else:
            v = ends[0]
            c = cycle(v, e)
            rels.append(_rel(c * t.mult(v) + [c[0]]))
    return bound_quiver_algebra(q, rels, f)
