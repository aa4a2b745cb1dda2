"""Right modules over an :class:`~arqlab.algcore.Algebra`.

A module is a vertex-graded vector space ``M = M_1 + ... + M_n`` together
with one matrix per generator: for a generator ``g: i -> j`` the matrix has
shape ``dim M_i x dim M_j`` and sends a row vector ``m`` to ``m*g``.
Morphisms are tuples of per-vertex matrices; ``f`` then ``g`` is ``F @ G``
blockwise.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import sympy

from .algcore import Algebra
from .errors import CharacteristicTooSmall, DecompositionStalled, IsoSearchInconclusive
from .exactla import (Mat, Span, dense, inverse, left_nullspace, minpoly, poly_eval, rref,
                      sparse, sparse_nullspace, vstack)

SEED = 20240601
RANDOM_ATTEMPTS = 32
ISO_ATTEMPTS = 8


def _mat(field, rows, r, c) -> Mat:
    return Mat(field, rows, r, c)


def _zero(field, r, c) -> Mat:
    return Mat.zeros(field, r, c)


class Module:
    """Finite-dimensional right module given by generator actions."""

    def __init__(self, algebra: Algebra, dims, mats, check: bool = False, name: str | None = None):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.mats = list(mats)
        self.name = name
        self._act = None
        self._cache: dict = {}
        if len(self.dims) != algebra.n or len(self.mats) != len(algebra.gens):
            raise ValueError("module data does not match the algebra")
        for g, m in enumerate(self.mats):
            s, t = algebra.gen_src(g), algebra.gen_tgt(g)
            if m.shape != (self.dims[s], self.dims[t]):
                raise ValueError(f"generator {g} has matrix of shape {m.shape}")
        if check and not self.verify():
            raise ValueError("generator matrices do not satisfy the relations")

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Module{label} dims={self.dims}>"

    def is_zero(self) -> bool:
        return self.dim == 0

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return out

    def act(self, b: int) -> Mat:
        """Matrix of right multiplication by algebra basis element ``b``."""
        if self._act is None:
            self._act = [None] * self.algebra.dim
        m = self._act[b]
        if m is None:
            a = self.algebra
            w = a.words[b]
            if not w:
                m = Mat.identity(self.field, self.dims[a.src[b]])
            else:
                m = self.mats[w[0]]
                for g in w[1:]:
                    m = m @ self.mats[g]
            self._act[b] = m
        return m

    def act_element(self, x: dict, i: int, j: int) -> Mat:
        """Action of the ``e_i x e_j`` component of a sparse algebra element."""
        a = self.algebra
        out = _zero(self.field, self.dims[i], self.dims[j])
        for b, c in x.items():
            if a.src[b] == i and a.tgt[b] == j:
                out = out + self.act(b).scale(c)
        return out

    def verify(self) -> bool:
        """Check that the generator matrices define a module over the algebra."""
        a = self.algebra
        f = self.field
        for b in range(a.dim):
            for g in range(len(a.gens)):
                if a.tgt[b] != a.gen_src(g):
                    continue
                lhs = self.act(b) @ self.mats[g]
                prod = a.table.get((b, a.gens[g]), {})
                rhs = _zero(f, self.dims[a.src[b]], self.dims[a.gen_tgt(g)])
                for k, c in prod.items():
                    rhs = rhs + self.act(k).scale(c)
                if lhs != rhs:
                    return False
        return True

    def dual(self) -> "Module":
        """``D M = Hom_K(M, K)`` as a right module over the opposite algebra."""
        op = self.algebra.opposite()
        name = f"D{self.name}" if self.name else None
        return Module(op, self.dims, [m.T for m in self.mats], name=name)

    def total_matrix(self, blocks) -> Mat:
        """Assemble per-vertex blocks of an endomorphism into one matrix."""
        from .exactla import block_diag
        return block_diag(self.field, blocks)


def direct_sum(mods, algebra: Algebra | None = None) -> Module:
    mods = list(mods)
    a = algebra or mods[0].algebra
    f = a.field
    dims = [sum(m.dims[i] for m in mods) for i in range(a.n)]
    mats = []
    for g in range(len(a.gens)):
        s, t = a.gen_src(g), a.gen_tgt(g)
        rows = []
        col_off = 0
        total_t = dims[t]
        for m in mods:
            blk = m.mats[g]
            for r in blk.data:
                rows.append([f.zero] * col_off + list(r) + [f.zero] * (total_t - col_off - m.dims[t]))
            col_off += m.dims[t]
        mats.append(Mat(f, rows, dims[s], dims[t]))
    return Module(a, dims, mats)


def sum_injections(mods) -> list[tuple]:
    """Inclusions of each summand into ``direct_sum(mods)``."""
    mods = list(mods)
    a = mods[0].algebra
    f = a.field
    totals = [sum(m.dims[i] for m in mods) for i in range(a.n)]
    offs = [0] * a.n
    out = []
    for m in mods:
        blocks = []
        for i in range(a.n):
            rows = [[f.zero] * totals[i] for _ in range(m.dims[i])]
            for r in range(m.dims[i]):
                rows[r][offs[i] + r] = f.one
            blocks.append(Mat(f, rows, m.dims[i], totals[i]))
            offs[i] += m.dims[i]
        out.append(tuple(blocks))
    return out


def sum_projections(mods) -> list[tuple]:
    return [tuple(b.T for b in inj) for inj in sum_injections(mods)]


# ---------------------------------------------------------------------------
# Standard modules
# ---------------------------------------------------------------------------

def simple(a: Algebra, i: int) -> Module:
    dims = [0] * a.n
    dims[i] = 1
    mats = [_zero(a.field, dims[a.gen_src(g)], dims[a.gen_tgt(g)]) for g in range(len(a.gens))]
    return Module(a, dims, mats, name=f"S({a.vertex_names[i]})")


def projective(a: Algebra, i: int) -> Module:
    """``P(i) = e_i A``; the basis at vertex j is the algebra basis of ``e_i A e_j``."""
    key = ("P", i)
    if key in a._cache:
        return a._cache[key]
    f = a.field
    basis = [a.graded_indices(i, j) for j in range(a.n)]
    pos = [{b: r for r, b in enumerate(basis[j])} for j in range(a.n)]
    dims = [len(bs) for bs in basis]
    mats = []
    for g in range(len(a.gens)):
        s, t = a.gen_src(g), a.gen_tgt(g)
        rows = []
        for b in basis[s]:
            row = [f.zero] * dims[t]
            for k, c in a.table.get((b, a.gens[g]), {}).items():
                row[pos[t][k]] = c
            rows.append(row)
        mats.append(Mat(f, rows, dims[s], dims[t]))
    m = Module(a, dims, mats, name=f"P({a.vertex_names[i]})")
    m.proj_basis = basis
    a._cache[key] = m
    return m


def injective(a: Algebra, i: int) -> Module:
    """``I(i) = D(A e_i)``, the dual of the projective ``e_i A^op``."""
    m = projective(a.opposite(), i).dual()
    m.name = f"I({a.vertex_names[i]})"
    return m


def standard_module(a: Algebra, kind: str, i: int) -> Module:
    if not 0 <= i < a.n:
        raise ValueError(f"vertex {i} out of range")
    if kind == "simple":
        return simple(a, i)
    if kind == "projective":
        return projective(a, i)
    if kind == "injective":
        return injective(a, i)
    raise ValueError(f"unknown kind {kind!r}")


def regular_module(a: Algebra) -> Module:
    return direct_sum([projective(a, i) for i in range(a.n)], a)


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------

def compose(f, g) -> tuple:
    """``f`` then ``g`` for per-vertex block tuples."""
    return tuple(x @ y for x, y in zip(f, g))


def identity_map(m: Module) -> tuple:
    return tuple(Mat.identity(m.field, d) for d in m.dims)


def zero_map(m: Module, n: Module) -> tuple:
    return tuple(_zero(m.field, dm, dn) for dm, dn in zip(m.dims, n.dims))


def map_is_zero(f) -> bool:
    return all(x.is_zero() for x in f)


def map_add(f, g, c=1) -> tuple:
    return tuple(x + y.scale(c) for x, y in zip(f, g))


def map_scale(f, c) -> tuple:
    return tuple(x.scale(c) for x in f)


def map_rank(f) -> int:
    return sum(x.rank() for x in f)


def is_iso_map(f) -> bool:
    return all(x.rows == x.cols and x.rank() == x.rows for x in f)


def is_intertwiner(m: Module, n: Module, f) -> bool:
    a = m.algebra
    for g in range(len(a.gens)):
        s, t = a.gen_src(g), a.gen_tgt(g)
        if m.mats[g] @ f[t] != f[s] @ n.mats[g]:
            return False
    return True


class HomSpace:
    """Basis of ``Hom_A(source, target)`` as per-vertex block tuples."""

    def __init__(self, source: Module, target: Module, basis):
        self.source = source
        self.target = target
        self.basis = list(basis)
        self._span = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"<HomSpace dim={self.dim} {self.source!r} -> {self.target!r}>"

    def flat(self, f) -> list:
        return [x for blk in f for row in blk.data for x in row]

    def _coord_span(self):
        if self._span is None:
            n = sum(dm * dn for dm, dn in zip(self.source.dims, self.target.dims))
            s = Span(self.source.field, n)
            for b in self.basis:
                s.add(self.flat(b))
            self._span = s
        return self._span

    def coordinates(self, f):
        return self._coord_span().coordinates(self.flat(f))

    def combination(self, coeffs) -> tuple:
        out = zero_map(self.source, self.target)
        for c, b in zip(coeffs, self.basis):
            if c:
                out = map_add(out, b, c)
        return out


def hom_system(m: Module, n: Module):
    """Sparse linear system whose kernel is ``Hom_A(m, n)``.

    Unknowns are the entries of the per-vertex blocks, vertex by vertex and
    row-major inside a block.
    """
    a = m.algebra
    offs, acc = [], 0
    for i in range(a.n):
        offs.append(acc)
        acc += m.dims[i] * n.dims[i]
    nvars = acc
    p = a.field.p
    rows = []
    for g in range(len(a.gens)):
        s, t = a.gen_src(g), a.gen_tgt(g)
        ms, mt, ns, nt = m.dims[s], m.dims[t], n.dims[s], n.dims[t]
        if not ms or not nt:
            continue
        A = m.mats[g].data  # ms x mt
        B = n.mats[g].data  # ns x nt
        # (A F_t - F_s B)[r][c] = 0
        for r in range(ms):
            Ar = A[r]
            for c in range(nt):
                eq = {}
                for k in range(mt):
                    if Ar[k]:
                        eq[offs[t] + k * n.dims[t] + c] = Ar[k]
                for k in range(ns):
                    x = B[k][c]
                    if x:
                        v = offs[s] + r * n.dims[s] + k
                        y = eq.get(v, 0) - x
                        if p:
                            y %= p
                        if y:
                            eq[v] = y
                        else:
                            eq.pop(v, None)
                if eq:
                    rows.append(eq)
    return rows, nvars, offs


def _unflatten(m: Module, n: Module, vec: dict, offs) -> tuple:
    f = m.field
    blocks = []
    for i in range(m.algebra.n):
        dm, dn = m.dims[i], n.dims[i]
        data = [[f.zero] * dn for _ in range(dm)]
        base = offs[i]
        for r in range(dm):
            for c in range(dn):
                x = vec.get(base + r * dn + c)
                if x:
                    data[r][c] = x
        blocks.append(Mat(f, data, dm, dn))
    return tuple(blocks)


def hom(m: Module, n: Module) -> HomSpace:
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    rows, nvars, offs = hom_system(m, n)
    ker = sparse_nullspace(m.field, rows, nvars)
    return HomSpace(m, n, [_unflatten(m, n, v, offs) for v in ker])


def hom_dim(m: Module, n: Module) -> int:
    rows, nvars, _ = hom_system(m, n)
    if not nvars:
        return 0
    s = Span(m.field, nvars, keep_basis=False)
    r = sum(1 for row in rows if s.add(row))
    return nvars - r


def end(m: Module) -> HomSpace:
    if "end" not in m._cache:
        m._cache["end"] = hom(m, m)
    return m._cache["end"]


# ---------------------------------------------------------------------------
# Submodules, quotients, kernels, images
# ---------------------------------------------------------------------------

def _pivot_solver(basis: Mat):
    """Return a function giving coordinates of row vectors in the row space of ``basis``."""
    f = basis.field
    k = basis.rows
    if k == 0:
        return lambda vecs: Mat(f, [[] for _ in range(vecs.rows)], vecs.rows, 0)
    _, piv = rref(basis)
    sub = basis.submatrix(range(k), piv)
    inv = inverse(sub)
    return lambda vecs: vecs.submatrix(range(vecs.rows), piv) @ inv


def restrict(m: Module, bases) -> tuple[Module, tuple]:
    """Submodule spanned by per-vertex row bases, with its inclusion map.

    The bases must span a submodule (not checked beyond the coordinate solve).
    """
    a = m.algebra
    f = m.field
    bases = [b if isinstance(b, Mat) else Mat(f, b, len(b), m.dims[i]) for i, b in enumerate(bases)]
    solvers = [_pivot_solver(b) for b in bases]
    dims = [b.rows for b in bases]
    mats = []
    for g in range(len(a.gens)):
        s, t = a.gen_src(g), a.gen_tgt(g)
        y = bases[s] @ m.mats[g]
        mats.append(solvers[t](y) if dims[t] else _zero(f, dims[s], 0))
    return Module(a, dims, mats), tuple(bases)


def quotient_module(m: Module, bases) -> tuple[Module, tuple]:
    """``m / U`` for the submodule with per-vertex row bases, with the projection map."""
    a = m.algebra
    f = m.field
    projs = []
    comps = []
    for i in range(a.n):
        sub = bases[i]
        sub_rows = sub.data if isinstance(sub, Mat) else list(sub)
        span = Span(f, m.dims[i])
        for r in sub_rows:
            span.add(list(r))
        comp = []
        for c in range(m.dims[i]):
            e = [f.zero] * m.dims[i]
            e[c] = f.one
            if span.add(e):
                comp.append(e)
        full = Mat(f, [list(r) for r in sub_rows] + comp, m.dims[i], m.dims[i])
        inv = inverse(full) if m.dims[i] else full
        k = len(sub_rows)
        projs.append(inv.submatrix(range(m.dims[i]), range(k, m.dims[i])))
        comps.append(Mat(f, comp, len(comp), m.dims[i]))
    dims = [c.rows for c in comps]
    mats = []
    for g in range(len(a.gens)):
        s, t = a.gen_src(g), a.gen_tgt(g)
        mats.append(comps[s] @ m.mats[g] @ projs[t])
    return Module(a, dims, mats), tuple(projs)


def _rowspace(field, mat: Mat, ncols: int) -> Mat:
    span = Span(field, ncols)
    for r in mat.data:
        span.add(list(r))
    return Mat(field, span.basis, len(span.basis), ncols)


def kernel_of(m: Module, f) -> tuple[Module, tuple]:
    """Kernel of ``f: m -> n`` with its inclusion."""
    field = m.field
    bases = [Mat(field, left_nullspace(blk) if blk.rows else [], len(left_nullspace(blk)) if blk.rows else 0, blk.rows)
             for blk in f]
    return restrict(m, bases)


def image_of(n: Module, f) -> tuple[Module, tuple]:
    """Image of ``f: m -> n`` as a submodule of ``n`` with its inclusion."""
    return restrict(n, [_rowspace(n.field, blk, n.dims[i]) for i, blk in enumerate(f)])


def cokernel_of(n: Module, f) -> tuple[Module, tuple]:
    return quotient_module(n, [_rowspace(n.field, blk, n.dims[i]) for i, blk in enumerate(f)])


def generated_submodule(m: Module, vectors) -> tuple[Module, tuple]:
    """Submodule generated by ``(vertex, row vector)`` pairs."""
    a = m.algebra
    f = m.field
    spans = [Span(f, d) for d in m.dims]
    for i, v in vectors:
        for b in range(a.dim):
            if a.src[b] == i:
                w = Mat(f, [list(v)], 1, m.dims[i]) @ m.act(b)
                spans[a.tgt[b]].add(w.data[0])
    return restrict(m, [Mat(f, s.basis, len(s.basis), m.dims[i]) for i, s in enumerate(spans)])


# ---------------------------------------------------------------------------
# Radical, socle, top
# ---------------------------------------------------------------------------

def radical_bases(m: Module) -> list[Mat]:
    a = m.algebra
    f = m.field
    out = []
    for j in range(a.n):
        span = Span(f, m.dims[j])
        for g in range(len(a.gens)):
            if a.gen_tgt(g) == j:
                for r in m.mats[g].data:
                    span.add(list(r))
        out.append(Mat(f, span.basis, len(span.basis), m.dims[j]))
    return out


def socle_bases(m: Module) -> list[Mat]:
    a = m.algebra
    f = m.field
    out = []
    for i in range(a.n):
        outs = [m.mats[g] for g in range(len(a.gens)) if a.gen_src(g) == i]
        if not outs or not m.dims[i]:
            out.append(Mat.identity(f, m.dims[i]))
            continue
        from .exactla import hstack
        big = hstack(f, outs, m.dims[i])
        ker = left_nullspace(big)
        out.append(Mat(f, ker, len(ker), m.dims[i]))
    return out


@dataclass
class Series:
    top: Module
    top_map: tuple      # projection m -> top
    radical: Module
    radical_map: tuple  # inclusion rad m -> m
    socle: Module
    socle_map: tuple    # inclusion soc m -> m


def series(m: Module) -> Series:
    rad, rinc = restrict(m, radical_bases(m))
    soc, sinc = restrict(m, socle_bases(m))
    top, tproj = quotient_module(m, radical_bases(m))
    return Series(top, tproj, rad, rinc, soc, sinc)


def top_dims(m: Module) -> tuple:
    return tuple(d - r.rows for d, r in zip(m.dims, radical_bases(m)))


def socle_dims(m: Module) -> tuple:
    return tuple(s.rows for s in socle_bases(m))


def radical_layers(m: Module) -> list[tuple]:
    """Dimension vectors of ``rad^k m / rad^(k+1) m``."""
    out = []
    cur = m
    while cur.dim:
        nxt, _ = restrict(cur, radical_bases(cur))
        out.append(tuple(x - y for x, y in zip(cur.dims, nxt.dims)))
        cur = nxt
    return out


def loewy_length(m: Module) -> int:
    return len(radical_layers(m))


# ---------------------------------------------------------------------------
# Projective covers and presentations
# ---------------------------------------------------------------------------

@dataclass
class ProjSum:
    """Direct sum of indecomposable projectives ``P(v_1) + ... + P(v_k)``."""

    algebra: Algebra
    vertices: tuple

    def module(self) -> Module:
        a = self.algebra
        if not self.vertices:
            return Module(a, [0] * a.n, [_zero(a.field, 0, 0) for _ in a.gens])
        return direct_sum([projective(a, v) for v in self.vertices], a)


def proj_map_blocks(a: Algebra, src: tuple, tgt: tuple, elems) -> tuple:
    """Module map ``sum P(src_s) -> sum P(tgt_r)`` sending the top of summand s
    to ``sum_r elems[s][r]`` with ``elems[s][r]`` in ``e_{tgt_r} A e_{src_s}``."""
    f = a.field
    one = f.one
    pos = {}
    dims_src = [0] * a.n
    dims_tgt = [0] * a.n
    for r, v in enumerate(tgt):
        for j in range(a.n):
            for b in a.graded_indices(v, j):
                pos[r, b] = dims_tgt[j]
                dims_tgt[j] += 1
    blocks = [[] for _ in range(a.n)]
    for s, v in enumerate(src):
        for j in range(a.n):
            for b in a.graded_indices(v, j):
                row = [f.zero] * dims_tgt[j]
                for r in range(len(tgt)):
                    x = elems[s][r]
                    if not x:
                        continue
                    for k, c in a.mul(x, {b: one}).items():
                        row[pos[r, k]] += c
                        if f.p:
                            row[pos[r, k]] %= f.p
                blocks[j].append(row)
    return tuple(Mat(f, blocks[j], len(blocks[j]), dims_tgt[j]) for j in range(a.n))


def projective_cover(m: Module):
    """``(ProjSum, epimorphism blocks)`` for a minimal projective cover of ``m``."""
    a = m.algebra
    f = m.field
    rad = radical_bases(m)
    verts = []
    gens = []
    for i in range(a.n):
        span = Span(f, m.dims[i])
        for r in rad[i].data:
            span.add(list(r))
        for c in range(m.dims[i]):
            e = [f.zero] * m.dims[i]
            e[c] = f.one
            if span.add(e):
                verts.append(i)
                gens.append(e)
    blocks = [[] for _ in range(a.n)]
    for v, vec in zip(verts, gens):
        row = Mat(f, [vec], 1, m.dims[v])
        for j in range(a.n):
            for b in a.graded_indices(v, j):
                blocks[j].extend((row @ m.act(b)).data)
    epi = tuple(Mat(f, blocks[j], len(blocks[j]), m.dims[j]) for j in range(a.n))
    return ProjSum(a, tuple(verts)), epi


def _elements_of_map(a: Algebra, src: ProjSum, tgt: ProjSum, blocks) -> list[list[dict]]:
    """Recover the element matrix of a map between projective sums."""
    elems = []
    offs = {}
    acc = [0] * a.n
    for r, v in enumerate(tgt.vertices):
        for j in range(a.n):
            offs[r, j] = acc[j]
            acc[j] += len(a.graded_indices(v, j))
    row_at = [0] * a.n
    src_rows = {}
    for s, v in enumerate(src.vertices):
        for j in range(a.n):
            src_rows[s, j] = row_at[j]
            row_at[j] += len(a.graded_indices(v, j))
    for s, v in enumerate(src.vertices):
        row = blocks[v].data[src_rows[s, v]]  # image of the top e_v
        per = []
        for r, w in enumerate(tgt.vertices):
            x = {}
            for k, b in enumerate(a.graded_indices(w, v)):
                c = row[offs[r, v] + k]
                if c:
                    x[b] = c
            per.append(x)
        elems.append(per)
    return elems


@dataclass
class Presentation:
    p1: ProjSum
    p0: ProjSum
    elems: list        # element matrix of P1 -> P0
    cover: tuple       # epimorphism P0 -> m


def minimal_presentation(m: Module) -> Presentation:
    a = m.algebra
    p0, eps = projective_cover(m)
    p0m = p0.module()
    k, kinc = kernel_of(p0m, eps)
    if k.dim == 0:
        return Presentation(ProjSum(a, ()), p0, [], eps)
    p1, eps1 = projective_cover(k)
    d = compose(eps1, kinc)
    elems = _elements_of_map(a, p1, p0, d)
    return Presentation(p1, p0, elems, eps)


# ---------------------------------------------------------------------------
# Endomorphism rings, decomposition, isomorphism
# ---------------------------------------------------------------------------

def _trace_pair(f, g, p) -> object:
    """``tr(f g)`` for block tuples without forming the product."""
    s = 0
    for x, y in zip(f, g):
        for r in range(x.rows):
            xr = x.data[r]
            for k in range(x.cols):
                if xr[k]:
                    s += xr[k] * y.data[k][r]
    return s % p if p else s


def end_radical(m: Module) -> list[tuple]:
    """Basis of the Jacobson radical of ``End(m)``.

    Uses the kernel of ``(f, g) -> tr(f g)`` on ``m``, which equals the
    radical when the characteristic is 0 or exceeds ``dim m``.
    """
    f = m.field
    if f.p and f.p <= m.dim:
        raise CharacteristicTooSmall(
            f"radical of End needs characteristic 0 or > {m.dim}, got {f.p}")
    e = end(m)
    rows = []
    for x in e.basis:
        rows.append({j: v for j, y in enumerate(e.basis) if (v := _trace_pair(x, y, f.p))})
    ker = sparse_nullspace(f, rows, e.dim)
    return [e.combination(dense(v, e.dim, f)) for v in ker]


def _block_total(m: Module, f) -> Mat:
    from .exactla import block_diag
    return block_diag(m.field, list(f))


def _factor_minpoly(field, coeffs) -> list[list]:
    """Primary factors ``q^e`` of a polynomial, coefficients low to high."""
    x = sympy.Symbol("x")
    if field.p:
        poly = sympy.Poly([int(c) for c in reversed(coeffs)], x, modulus=field.p)
    else:
        poly = sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator))
                           for c in reversed(coeffs)], x, domain="QQ")
    _, facs = poly.factor_list()
    out = []
    for q, e in facs:
        cs = (q ** e).all_coeffs()
        if field.p:
            out.append([field(int(c)) for c in reversed(cs)])
        else:
            out.append([field(sympy.Rational(c).p) / field(sympy.Rational(c).q) for c in reversed(cs)])
    return out


def _split_by(m: Module, x) -> list[tuple] | None:
    """Fitting split of ``m`` along the endomorphism ``x``; None if x is primary."""
    if m.dim == 0:
        return None
    total = _block_total(m, x)
    mu = minpoly(total)
    factors = _factor_minpoly(m.field, mu)
    if len(factors) < 2:
        return None
    pieces = []
    for q in factors:
        bases = []
        for i, blk in enumerate(x):
            if not blk.rows:
                bases.append(Mat(m.field, [], 0, 0))
                continue
            ker = left_nullspace(poly_eval(m.field, q, blk))
            bases.append(Mat(m.field, ker, len(ker), blk.rows))
        pieces.append(restrict(m, bases))
    return pieces


def _random_element(rng: random.Random, space: HomSpace) -> tuple:
    f = space.source.field
    if f.p:
        cs = [rng.randrange(f.p) for _ in space.basis]
    else:
        cs = [rng.randint(-9, 9) for _ in space.basis]
    return space.combination([f(c) for c in cs])


def _local_lambdas(m: Module):
    """Eigenvalue of each End basis element if every one has a single eigenvalue in K."""
    e = end(m)
    f = m.field
    lams = []
    for b in e.basis:
        mu = minpoly(_block_total(m, b))
        facs = _factor_minpoly(f, mu)
        if len(facs) != 1:
            return None
        # (x - lam)^k: coefficient of x^(k-1) is -k*lam
        k = len(mu) - 1
        if not f.p or k % f.p:
            lam = -mu[k - 1] * f.inv(f(k))
            if f.p:
                lam %= f.p
        else:
            roots = [c for c in range(f.p) if _peval(f, facs[0], c) == 0]
            if len(roots) != 1:
                return None
            lam = roots[0]
        lams.append(lam)
    return lams


def local_end_radical(m: Module):
    """rad End(m) as the kernel of the residue map, or None if End(m) is not local."""
    if not _local_certificate(m):
        return None
    e = end(m)
    lams = _local_lambdas(m)
    ident = identity_map(m)
    return [x for x in (map_add(b, ident, -l) for b, l in zip(e.basis, lams)) if not map_is_zero(x)]


def _local_certificate(m: Module) -> bool:
    """True iff ``End(m) = K*1 + N`` with N a nilpotent subalgebra, so End(m) is local."""
    e = end(m)
    if e.dim == 1:
        return True
    f = m.field
    lams = _local_lambdas(m)
    if lams is None:
        return False
    ident = identity_map(m)
    n_basis = [map_add(b, ident, -l) for b, l in zip(e.basis, lams)]
    n_span = Span(f, sum(d * d for d in m.dims))
    for v in n_basis:
        n_span.add(e.flat(v))
    if len(n_span) != e.dim - 1:
        return False
    layer = [v for v in n_basis if not map_is_zero(v)]
    layer_span = n_span
    for _ in range(m.dim + 1):
        nxt = []
        span = Span(f, sum(d * d for d in m.dims))
        for u in layer:
            for v in n_basis:
                w = compose(u, v)
                fw = e.flat(w)
                if not layer_span.contains(fw):
                    return False
                if span.add(fw):
                    nxt.append(w)
        if not nxt:
            return True
        layer, layer_span = nxt, span
    return False


def _peval(f, coeffs, c):
    acc = 0
    for a in reversed(coeffs):
        acc = acc * c + a
    return acc % f.p if f.p else acc


def _split_once(m: Module):
    """Split ``m`` into two or more pieces, or return None if m is indecomposable."""
    if "indec" in m._cache and m._cache["indec"]:
        return None
    e = end(m)
    if e.dim == 1:
        m._cache["indec"] = True
        return None
    rng = random.Random(SEED)
    x = _random_element(rng, e)
    pieces = _split_by(m, x)
    if pieces:
        return pieces
    if _local_certificate(m):
        m._cache["indec"] = True
        return None
    for _ in range(RANDOM_ATTEMPTS - 1):
        pieces = _split_by(m, _random_element(rng, e))
        if pieces:
            return pieces
    for b in e.basis:
        pieces = _split_by(m, b)
        if pieces:
            return pieces
    raise DecompositionStalled(f"no splitting endomorphism found for {m!r}")


def _sort_key(m: Module):
    return (m.dim, m.dims)


def decompose_with_maps(m: Module) -> list[tuple[Module, tuple]]:
    """Indecomposable summands together with their inclusions into ``m``."""
    if m.dim == 0:
        return []
    stack = [(m, identity_map(m))]
    out = []
    while stack:
        cur, inc = stack.pop()
        pieces = _split_once(cur)
        if not pieces:
            out.append((cur, inc))
            continue
        for sub, sinc in pieces:
            stack.append((sub, compose(sinc, inc)))
    out.sort(key=lambda t: _sort_key(t[0]))
    return out


def decompose(m: Module) -> list[tuple[Module, int]]:
    """``[(indecomposable, multiplicity), ...]`` ordered by (dim, dimension vector)."""
    groups: list[list] = []
    for s, _ in decompose_with_maps(m):
        for grp in groups:
            if grp[0].dims == s.dims and find_iso(grp[0], s) is not None:
                grp[1] += 1
                break
        else:
            groups.append([s, 1])
    return [(g[0], g[1]) for g in groups]


def is_indecomposable(m: Module) -> bool:
    if m.dim == 0:
        return False
    return _split_once(m) is None


def find_iso(m: Module, n: Module):
    """An isomorphism ``m -> n`` as a block tuple, or None."""
    if m.dims != n.dims:
        return None
    if m.dim == 0:
        return identity_map(m)
    h = hom(m, n)
    if not h.dim:
        return None
    back = hom(n, m)
    if not back.dim:
        return None
    rng = random.Random(SEED)
    for _ in range(ISO_ATTEMPTS):
        f = _random_element(rng, h)
        if is_iso_map(f):
            return f
    for f in h.basis:
        if is_iso_map(f):
            return f
    for f1, f2 in zip(h.basis, h.basis[1:]):
        f = map_add(f1, f2)
        if is_iso_map(f):
            return f
    # For m indecomposable, m = n iff some basis pair has invertible round trip.
    if is_indecomposable(m):
        for f in h.basis:
            for g in back.basis:
                if is_iso_map(compose(f, g)):
                    return f
        return None
    if not m.field.p:
        return None
    raise IsoSearchInconclusive("no isomorphism found; try a larger prime field")


def is_isomorphic(m: Module, n: Module) -> bool:
    return find_iso(m, n) is not None


def nakayama_permutation(a: Algebra):
    """``nu`` with ``P(i) = I(nu(i))`` for all i, or None if A is not selfinjective."""
    perm = []
    for i in range(a.n):
        p = projective(a, i)
        soc = socle_dims(p)
        if sum(soc) != 1:
            return None
        j = soc.index(1)
        if p.dims != injective(a, j).dims or not is_isomorphic(p, injective(a, j)):
            return None
        perm.append(j)
    if sorted(perm) != list(range(a.n)):
        return None
    return perm


def is_projective(m: Module) -> bool:
    """True iff the projective cover of m is an isomorphism."""
    p0, eps = projective_cover(m)
    return sum(projective(m.algebra, v).dim for v in p0.vertices) == m.dim


def is_injective(m: Module) -> bool:
    return is_projective(m.dual())
