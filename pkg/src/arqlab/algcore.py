"""Finite-dimensional algebras with a distinguished idempotent basis.

Every algebra is stored through structure constants on a *word basis*: the
primitive idempotents ``e_1..e_n`` plus elements that are products of a fixed
list of generators (the arrows of the Gabriel quiver).  Quiver algebras get
this basis for free from path normal forms; algebras given only by structure
constants are rebased by :meth:`Algebra.from_table`.

Conventions (fixed everywhere):

* paths compose left to right, ``a*b`` means "a then b";
* an arrow ``a: i -> j`` is a basis element with ``e_i a e_j = a``;
* modules are right modules, so ``a`` maps the vertex-``i`` component of a
  module to its vertex-``j`` component.  Vertices are 0-based internally and
  printed 1-based.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import (CharacteristicTooSmall, InternalInconsistency, MalformedRelation,
                     NotFiniteDimensional, NotTwoSided)
from .exactla import Field, Mat, QQ, Span, dense, fmt_scalar, inverse, sparse, sparse_nullspace


@dataclass(frozen=True)
class Quiver:
    """Quiver on vertices ``1..n`` with named arrows ``(name, source, target)``."""

    n: int
    arrows: tuple = ()

    def __post_init__(self):
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        for name, s, t in self.arrows:
            if not (1 <= s <= self.n and 1 <= t <= self.n):
                raise ValueError(f"arrow {name} has endpoint out of range")

    def arrow(self, name: str):
        for a in self.arrows:
            if a[0] == name:
                return a
        raise KeyError(name)

    def multiplicities(self) -> list[list[int]]:
        """``m[i][j]`` = number of arrows from vertex i+1 to j+1."""
        m = [[0] * self.n for _ in range(self.n)]
        for _, s, t in self.arrows:
            m[s - 1][t - 1] += 1
        return m

    def is_acyclic(self) -> bool:
        mult = self.multiplicities()
        indeg = [sum(mult[i][j] for i in range(self.n)) for j in range(self.n)]
        stack = [j for j in range(self.n) if indeg[j] == 0]
        seen = 0
        while stack:
            i = stack.pop()
            seen += 1
            for j in range(self.n):
                if mult[i][j]:
                    indeg[j] -= mult[i][j]
                    if indeg[j] == 0:
                        stack.append(j)
        return seen == self.n

    def sinks(self) -> list[int]:
        outs = {s for _, s, _ in self.arrows}
        return [v for v in range(1, self.n + 1) if v not in outs]

    def reversed(self) -> "Quiver":
        return Quiver(self.n, tuple((a, t, s) for a, s, t in self.arrows))


@dataclass(frozen=True)
class Relation:
    """Linear combination of paths ``((coefficient, (arrow names...)), ...)``."""

    terms: tuple

    def endpoints(self, q: Quiver) -> tuple[int, int]:
        ends = set()
        for _, path in self.terms:
            if len(path) < 2:
                raise MalformedRelation(f"relation term {'*'.join(path)} has length < 2")
            arrows = [q.arrow(a) for a in path]
            for x, y in zip(arrows, arrows[1:]):
                if x[2] != y[1]:
                    raise MalformedRelation(f"{'*'.join(path)} is not a path")
            ends.add((arrows[0][1], arrows[-1][2]))
        if len(ends) != 1:
            raise MalformedRelation("relation terms have mixed endpoints")
        return ends.pop()


def _sub_vec(p, u: dict, v: dict, c=1) -> dict:
    """u + c*v on sparse vectors (returns a new dict)."""
    w = dict(u)
    for k, b in v.items():
        x = w.get(k, 0) + c * b
        if p:
            x %= p
        if x:
            w[k] = x
        else:
            w.pop(k, None)
    return w


class Algebra:
    """Structure-constant algebra on a graded word basis.

    Attributes
    ----------
    field, n, dim
    src, tgt : vertex of each basis element (``e_src b e_tgt = b``)
    idem : basis index of each primitive idempotent
    gens : basis indices of the generators (Gabriel-quiver arrows)
    words : for each basis element the tuple of positions in ``gens`` whose
        product equals it (empty for idempotents)
    table : ``{(x, y): {k: c}}`` nonzero products of basis elements
    presentation : optional ``(Quiver, [Relation])`` the algebra came from
    """

    def __init__(self, field: Field, n: int, labels, src, tgt, words, idem, gens, table,
                 presentation=None, gen_names=None):
        self.field = field
        self.n = n
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.src = list(src)
        self.tgt = list(tgt)
        self.words = [tuple(w) for w in words]
        self.idem = list(idem)
        self.gens = list(gens)
        self.table = table
        self.presentation = presentation
        self.gen_names = list(gen_names) if gen_names else [self.labels[g] for g in self.gens]
        self._op = None
        self._cache: dict = {}
        self.basis_in_input = None  # rows: basis in the coordinates it was built from
        self.vertex_names = [str(i + 1) for i in range(n)]

    def __repr__(self) -> str:
        return f"<Algebra dim={self.dim} vertices={self.n} over {self.field}>"

    # -- elementwise arithmetic -------------------------------------------------
    def mul(self, u: dict, v: dict) -> dict:
        """Product of two sparse coordinate vectors."""
        p = self.field.p
        out: dict = {}
        table = self.table
        for x, a in u.items():
            for y, b in v.items():
                prod = table.get((x, y))
                if not prod:
                    continue
                ab = a * b
                for k, c in prod.items():
                    z = out.get(k, 0) + ab * c
                    if p:
                        z %= p
                    if z:
                        out[k] = z
                    else:
                        out.pop(k, None)
        return out

    def unit(self, x: int) -> dict:
        return {x: self.field.one}

    def one(self) -> dict:
        return {e: self.field.one for e in self.idem}

    def graded_indices(self, i: int, j: int) -> list[int]:
        key = ("graded", i, j)
        if key not in self._cache:
            self._cache[key] = [b for b in range(self.dim) if self.src[b] == i and self.tgt[b] == j]
        return self._cache[key]

    def is_idempotent_index(self, b: int) -> bool:
        return not self.words[b]

    def gen_src(self, g: int) -> int:
        return self.src[self.gens[g]]

    def gen_tgt(self, g: int) -> int:
        return self.tgt[self.gens[g]]

    def left_mult_matrix(self, x: dict) -> Mat:
        """Matrix (row convention) of ``y -> x*y``: row b is x*b."""
        rows = [dense(self.mul(x, {b: self.field.one}), self.dim, self.field) for b in range(self.dim)]
        return Mat(self.field, rows, self.dim, self.dim)

    def right_mult_matrix(self, x: dict) -> Mat:
        rows = [dense(self.mul({b: self.field.one}, x), self.dim, self.field) for b in range(self.dim)]
        return Mat(self.field, rows, self.dim, self.dim)

    def check_associative(self) -> bool:
        one = self.field.one
        for x, y, z in itertools.product(range(self.dim), repeat=3):
            if self.tgt[x] != self.src[y] or self.tgt[y] != self.src[z]:
                continue
            lhs = self.mul(self.mul({x: one}, {y: one}), {z: one})
            rhs = self.mul({x: one}, self.mul({y: one}, {z: one}))
            if lhs != rhs:
                return False
        return True

    def check_idempotents(self) -> bool:
        one = self.field.one
        for i, ei in enumerate(self.idem):
            for j, ej in enumerate(self.idem):
                want = {ei: one} if i == j else {}
                if self.mul({ei: one}, {ej: one}) != want:
                    return False
        u = self.one()
        for b in range(self.dim):
            if self.mul(u, {b: one}) != {b: one} or self.mul({b: one}, u) != {b: one}:
                return False
        return True

    # -- construction from raw structure constants -------------------------------
    @classmethod
    def from_table(cls, field: Field, dim: int, table, idempotents, labels=None,
                   vertex_names=None, radical=None) -> "Algebra":
        """Rebase an algebra given by structure constants onto a word basis.

        ``table`` maps pairs of input basis indices to sparse product vectors;
        ``idempotents`` are sparse vectors of a complete set of primitive
        orthogonal idempotents.  ``radical`` optionally supplies a spanning
        set of the Jacobson radical when it is known by construction.
        """
        raw = _RawAlgebra(field, dim, table)
        n = len(idempotents)
        one = field.one
        # graded pieces e_i A e_j
        graded = {}
        for i in range(n):
            for j in range(n):
                span = Span(field, dim)
                for b in range(dim):
                    v = raw.mul(raw.mul(idempotents[i], {b: one}), idempotents[j])
                    if v:
                        span.add(v)
                graded[i, j] = span
        if sum(len(s) for s in graded.values()) != dim:
            raise ValueError("idempotents do not give a grading of the algebra")
        rad = raw.radical() if radical is None else [dict(v) for v in radical if v]
        rad_span = Span(field, dim)
        for v in rad:
            rad_span.add(v)
        # graded radical pieces and rad^2
        rad_pieces = {}
        for (i, j) in graded:
            span = Span(field, dim)
            for v in rad:
                w = raw.mul(raw.mul(idempotents[i], v), idempotents[j])
                if w:
                    span.add(w)
            rad_pieces[i, j] = [sparse(b) for b in span.basis]
        rad2 = Span(field, dim)
        for u in rad:
            for v in rad:
                w = raw.mul(u, v)
                if w:
                    rad2.add(w)
        gens = []  # (vector, i, j)
        for (i, j), vecs in sorted(rad_pieces.items()):
            span = Span(field, dim)
            for b in rad2.basis:
                w = raw.mul(raw.mul(idempotents[i], sparse(b)), idempotents[j])
                if w:
                    span.add(w)
            for v in vecs:
                if span.add(v):
                    gens.append((v, i, j))
        # words by breadth-first extension of chosen words
        chosen = Span(field, dim)
        for e in idempotents:
            chosen.add(e)
        vectors = [dict(e) for e in idempotents]
        words = [()] * n
        srcs = list(range(n))
        tgts = list(range(n))
        frontier = []
        for g, (v, i, j) in enumerate(gens):
            if chosen.add(v):
                vectors.append(v)
                words.append((g,))
                srcs.append(i)
                tgts.append(j)
                frontier.append(len(vectors) - 1)
        while frontier:
            nxt = []
            for b in frontier:
                for g, (v, i, j) in enumerate(gens):
                    if tgts[b] != i:
                        continue
                    w = raw.mul(vectors[b], v)
                    if w and chosen.add(w):
                        vectors.append(w)
                        words.append(words[b] + (g,))
                        srcs.append(srcs[b])
                        tgts.append(j)
                        nxt.append(len(vectors) - 1)
            frontier = nxt
        if len(vectors) != dim:
            raise ValueError("generators do not generate the algebra")
        change = Mat(field, [dense(v, dim, field) for v in vectors], dim, dim)
        to_new = inverse(change)
        new_table = {}
        for x in range(dim):
            for y in range(dim):
                if tgts[x] != srcs[y]:
                    continue
                w = raw.mul(vectors[x], vectors[y])
                if not w:
                    continue
                coords = _row_times(field, w, to_new)
                if coords:
                    new_table[x, y] = coords
        gen_idx = [n + g for g in range(len(gens))]
        if vertex_names is None:
            vertex_names = [str(i + 1) for i in range(n)]
        lab = [f"e{vertex_names[i]}" for i in range(n)]
        gen_names = [f"g{k + 1}" for k in range(len(gens))]
        for w in words[n:]:
            lab.append("*".join(gen_names[g] for g in w))
        alg = cls(field, n, lab, srcs, tgts, words, list(range(n)), gen_idx, new_table,
                  gen_names=gen_names)
        alg.basis_in_input = change
        alg.vertex_names = list(vertex_names)
        alg._to_new = to_new
        return alg

    def input_to_basis(self, v) -> dict:
        """Coordinates in this basis of a vector given in the input basis."""
        if self.basis_in_input is None:
            return sparse(v) if not isinstance(v, dict) else dict(v)
        return _row_times(self.field, v if isinstance(v, dict) else sparse(v), self._to_new)

    # -- opposite ---------------------------------------------------------------
    def opposite(self) -> "Algebra":
        if self._op is None:
            table = {(y, x): v for (x, y), v in self.table.items()}
            words = [tuple(reversed(w)) for w in self.words]
            pres = None
            if self.presentation is not None:
                q, rels = self.presentation
                pres = (q.reversed(), [Relation(tuple((c, tuple(reversed(p))) for c, p in r.terms))
                                       for r in rels])
            labels = [("*".join(reversed(l.split("*"))) if w else l)
                      for l, w in zip(self.labels, self.words)]
            op = Algebra(self.field, self.n, labels, self.tgt, self.src, words, self.idem,
                         self.gens, table, pres, self.gen_names)
            op.vertex_names = list(self.vertex_names)
            op._op = self
            self._op = op
        return self._op

    # -- cached invariants -------------------------------------------------------
    def radical_basis(self) -> list[dict]:
        """The non-idempotent word-basis elements; they span rad(A) by construction."""
        if "rad" not in self._cache:
            self._cache["rad"] = [{b: self.field.one} for b in range(self.dim) if self.words[b]]
        return self._cache["rad"]

    def trace_form_radical(self) -> list[dict]:
        """Radical as the kernel of the trace form (independent cross-check)."""
        return _RawAlgebra(self.field, self.dim, self.table).radical()

    def radical_powers(self) -> list[list[dict]]:
        """``[rad^0, rad^1, ..., rad^L = 0]`` as lists of basis vectors."""
        if "radpow" in self._cache:
            return self._cache["radpow"]
        f = self.field
        powers = [[{b: f.one} for b in range(self.dim)]]
        rad = self.radical_basis()
        cur = rad
        while cur:
            powers.append(cur)
            span = Span(f, self.dim)
            nxt = []
            for u in cur:
                for v in rad:
                    w = self.mul(u, v)
                    if w and span.add(w):
                        nxt.append(w)
            cur = nxt
        powers.append([])
        self._cache["radpow"] = powers
        return powers

    def loewy_length(self) -> int:
        return len(self.radical_powers()) - 1

    def vertex_label(self, i: int) -> str:
        return self.vertex_names[i]


def _row_times(field: Field, v: dict, m: Mat) -> dict:
    p = field.p
    out: dict = {}
    for k, a in v.items():
        for j, b in enumerate(m.data[k]):
            if b:
                out[j] = out.get(j, 0) + a * b
    if p:
        out = {j: x % p for j, x in out.items()}
    return {j: x for j, x in out.items() if x}


class _RawAlgebra:
    """Bare structure constants; used before a word basis exists."""

    def __init__(self, field: Field, dim: int, table):
        self.field = field
        self.dim = dim
        self.table = table

    mul = Algebra.mul

    def radical(self) -> list[dict]:
        f = self.field
        if f.p and f.p <= self.dim:
            raise CharacteristicTooSmall(
                f"trace-form radical needs characteristic 0 or > {self.dim}, got {f.p}")
        p = f.p
        # trace of left multiplication by each basis element
        tr = [0] * self.dim
        for (x, y), v in self.table.items():
            c = v.get(y)
            if c:
                tr[x] += c
        gram = []
        for i in range(self.dim):
            row = {}
            for j in range(self.dim):
                prod = self.table.get((i, j))
                if not prod:
                    continue
                s = sum(c * tr[k] for k, c in prod.items())
                if p:
                    s %= p
                if s:
                    row[j] = s
            gram.append(row)
        return sparse_nullspace(f, gram, self.dim)


# ---------------------------------------------------------------------------
# Bound quiver algebras
# ---------------------------------------------------------------------------

def bound_quiver_algebra(q: Quiver, rels, field: Field = QQ, length_bound: int | None = None) -> Algebra:
    """KQ/<rels> with a path normal-form basis (degree-lexicographic order)."""
    rels = list(rels)
    ends = [r.endpoints(q) for r in rels]
    if length_bound is None:
        longest = max((len(p) for r in rels for _, p in r.terms), default=1)
        length_bound = max(2, longest + 1)
        if q.is_acyclic():
            # no path of length n exists, so the bound is never binding
            length_bound = max(length_bound, q.n)
    if length_bound < 2:
        raise ValueError("length_bound must be >= 2")
    L = length_bound
    n = q.n
    arrow_index = {a[0]: k for k, a in enumerate(q.arrows)}
    asrc = [a[1] - 1 for a in q.arrows]
    atgt = [a[2] - 1 for a in q.arrows]
    out_arrows = [[k for k in range(len(q.arrows)) if asrc[k] == v] for v in range(n)]
    # all nontrivial paths of length <= L, grouped by start
    paths = []
    level = [(k,) for k in range(len(q.arrows))]
    while level:
        paths.extend(level)
        if len(level[0]) == L:
            break
        level = [p + (k,) for p in level for k in out_arrows[atgt[p[-1]]]]
    order = sorted(paths, key=lambda p: (len(p), p), reverse=True)
    col = {p: i for i, p in enumerate(order)}
    pstart = lambda p: asrc[p[0]]
    pend = lambda p: atgt[p[-1]]
    by_end = [[()] + [p for p in paths if pend(p) == v] for v in range(n)]
    by_start = [[()] + [p for p in paths if pstart(p) == v] for v in range(n)]
    span = Span(field, len(order), keep_basis=False)
    one = field.one
    for r, (s, t) in zip(rels, ends):
        terms = [(field(c), tuple(arrow_index[a] for a in path)) for c, path in r.terms]
        shortest = min(len(p) for _, p in terms)
        for u in by_end[s - 1]:
            if len(u) + shortest > L:
                continue
            for v in by_start[t - 1]:
                if len(u) + shortest + len(v) > L:
                    continue
                vec = {}
                for c, p in terms:
                    w = u + p + v
                    if len(w) > L:
                        continue
                    j = col[w]
                    vec[j] = vec.get(j, 0) + c
                    if field.p:
                        vec[j] %= field.p
                vec = {j: a for j, a in vec.items() if a}
                if vec:
                    span.add(vec)
    survivors = [p for p in paths if len(p) == L and span.reduce({col[p]: one})]
    if survivors:
        raise NotFiniteDimensional(
            f"{len(survivors)} paths of length {L} survive; raise length_bound or add relations")
    pivots = set(span.rows)
    basis_paths = sorted((p for p in paths if col[p] not in pivots), key=lambda p: (len(p), p))
    for k in range(len(q.arrows)):
        if col[(k,)] in pivots:
            raise MalformedRelation(f"arrow {q.arrows[k][0]} lies in the ideal")
    labels = [f"e{v + 1}" for v in range(n)]
    src = list(range(n))
    tgt = list(range(n))
    words: list[tuple] = [()] * n
    bindex = {}
    for p in basis_paths:
        bindex[p] = len(labels)
        labels.append("*".join(q.arrows[k][0] for k in p))
        src.append(pstart(p))
        tgt.append(pend(p))
        words.append(p)
    dim = len(labels)

    def normal_form(p) -> dict:
        if len(p) >= L:
            return {}
        if p in bindex:
            return {bindex[p]: one}
        red = span.reduce({col[p]: one})
        return {bindex[order[j]]: a for j, a in red.items()}

    table = {}
    for x in range(dim):
        for y in range(dim):
            if tgt[x] != src[y]:
                continue
            if not words[x]:
                table[x, y] = {y: one}
            elif not words[y]:
                table[x, y] = {x: one}
            else:
                nf = normal_form(words[x] + words[y])
                if nf:
                    table[x, y] = nf
    gens = [bindex[(k,)] for k in range(len(q.arrows))]
    return Algebra(field, n, labels, src, tgt, words, list(range(n)), gens, table,
                   presentation=(q, rels), gen_names=[a[0] for a in q.arrows])


# ---------------------------------------------------------------------------
# Ideals and derived algebras
# ---------------------------------------------------------------------------

class SubspaceIdeal:
    """Subspace of an algebra, usually a two-sided ideal."""

    def __init__(self, algebra: Algebra, vectors, two_sided: bool = False):
        self.algebra = algebra
        self.span = Span(algebra.field, algebra.dim)
        for v in vectors:
            self.span.add(v if isinstance(v, dict) else sparse(v))
        if two_sided and not self.is_two_sided():
            raise NotTwoSided("subspace is not closed under two-sided multiplication")

    @property
    def dim(self) -> int:
        return len(self.span)

    @property
    def basis(self) -> list[dict]:
        return [sparse(b) for b in self.span.basis]

    def __contains__(self, v) -> bool:
        return self.span.contains(v if isinstance(v, dict) else sparse(v))

    def contains_subspace(self, other: "SubspaceIdeal") -> bool:
        return all(v in self for v in other.basis)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubspaceIdeal) and self.dim == other.dim
                and self.contains_subspace(other))

    def __repr__(self) -> str:
        return f"<SubspaceIdeal dim={self.dim} in {self.algebra!r}>"

    def is_two_sided(self) -> bool:
        a = self.algebra
        one = a.field.one
        for v in self.basis:
            for b in range(a.dim):
                for w in (a.mul(v, {b: one}), a.mul({b: one}, v)):
                    if w and w not in self:
                        return False
        return True


def ideal_from_vectors(a: Algebra, vectors) -> SubspaceIdeal:
    """Two-sided ideal generated by the given vectors."""
    one = a.field.one
    span = Span(a.field, a.dim)
    queue = [v for v in vectors if span.add(v)]
    queue = [sparse(b) for b in span.basis]
    while queue:
        v = queue.pop()
        for b in range(a.dim):
            for w in (a.mul(v, {b: one}), a.mul({b: one}, v)):
                if w and span.add(w):
                    queue.append(w)
    return SubspaceIdeal(a, span.basis)


def algebra_radical(a: Algebra) -> tuple[SubspaceIdeal, list[SubspaceIdeal]]:
    """Jacobson radical and the radical power series ``rad^0 ⊃ rad^1 ⊃ ... ⊃ 0``."""
    rad = SubspaceIdeal(a, a.trace_form_radical())
    series = [SubspaceIdeal(a, layer) for layer in a.radical_powers()]
    if rad != series[1]:
        raise InternalInconsistency("trace-form radical differs from the word-basis radical")
    return rad, series


def gabriel_quiver(a: Algebra) -> Quiver:
    """Quiver with ``dim e_i (rad/rad^2) e_j`` arrows from i to j."""
    rad_pw = a.radical_powers()
    rad = rad_pw[1] if len(rad_pw) > 1 else []
    rad2 = rad_pw[2] if len(rad_pw) > 2 else []
    one = a.field.one
    arrows = []
    for i in range(a.n):
        for j in range(a.n):
            ei, ej = {a.idem[i]: one}, {a.idem[j]: one}
            r1 = Span(a.field, a.dim)
            for v in rad:
                w = a.mul(a.mul(ei, v), ej)
                if w:
                    r1.add(w)
            r2 = Span(a.field, a.dim, keep_basis=False)
            for v in rad2:
                w = a.mul(a.mul(ei, v), ej)
                if w:
                    r2.add(w)
            for k in range(len(r1) - len(r2)):
                arrows.append((f"x{i + 1}_{j + 1}" + (f"_{k + 1}" if k else ""), i + 1, j + 1))
    return Quiver(a.n, tuple(arrows))


def quotient(a: Algebra, ideal: SubspaceIdeal) -> tuple[Algebra, Mat]:
    """A/I rebased on a word basis, with the projection matrix A -> A/I.

    The projection sends a row vector of A-coordinates to A/I-coordinates.
    """
    if not ideal.is_two_sided():
        raise NotTwoSided("quotient by a non-ideal")
    f = a.field
    one = f.one
    span = Span(f, a.dim)
    for v in ideal.basis:
        span.add(v)
    comp = []
    # idempotents first so that their images stay basis vectors
    order = list(a.idem) + [b for b in range(a.dim) if b not in a.idem]
    for b in order:
        if span.add({b: one}):
            comp.append(b)
    k = len(comp)
    # coordinates of any A-vector modulo I in the complement basis
    full = [sparse(v) for v in ideal.span.basis] + [{b: one} for b in comp]
    change = Mat(f, [dense(v, a.dim, f) for v in full], a.dim, a.dim)
    inv = inverse(change)
    d_i = ideal.dim

    def proj(v: dict) -> dict:
        w = _row_times(f, v, inv)
        return {j - d_i: x for j, x in w.items() if j >= d_i}

    table = {}
    for x in range(k):
        for y in range(k):
            w = proj(a.mul({comp[x]: one}, {comp[y]: one}))
            if w:
                table[x, y] = w
    kept = [i for i in range(a.n) if proj({a.idem[i]: one})]
    idems = [proj({a.idem[i]: one}) for i in kept]
    rad = [w for w in (proj(v) for v in a.radical_basis()) if w]
    b = Algebra.from_table(f, k, table, idems, vertex_names=[a.vertex_names[i] for i in kept],
                           radical=rad)
    b.kept_vertices = kept
    pm = Mat(f, [dense(b.input_to_basis(proj({c: one})), b.dim, f) for c in range(a.dim)],
             a.dim, b.dim)
    return b, pm


def corner(a: Algebra, vertices, keep_order: bool = False) -> Algebra:
    """eAe for e the sum of the idempotents at the given (0-based) vertices.

    With ``keep_order`` the vertices of the result follow the given order.
    """
    vs = list(dict.fromkeys(vertices)) if keep_order else sorted(set(vertices))
    if vs == list(range(a.n)):
        return a
    keep = [b for b in range(a.dim) if a.src[b] in vs and a.tgt[b] in vs]
    pos = {b: i for i, b in enumerate(keep)}
    table = {}
    for x in keep:
        for y in keep:
            w = a.table.get((x, y))
            if w:
                table[pos[x], pos[y]] = {pos[k]: c for k, c in w.items()}
    idems = [{pos[a.idem[i]]: a.field.one} for i in vs]
    # eAe inherits its radical as e rad(A) e
    rad = [{pos[b]: a.field.one} for b in keep if a.words[b]]
    b = Algebra.from_table(a.field, len(keep), table, idems,
                           vertex_names=[a.vertex_names[i] for i in vs], radical=rad)
    b.kept_vertices = vs
    return b


def cartan_matrix(a: Algebra) -> list[list[int]]:
    """``C[i][j] = dim e_i A e_j``: row i is the dimension vector of P(i)."""
    c = [[0] * a.n for _ in range(a.n)]
    for b in range(a.dim):
        c[a.src[b]][a.tgt[b]] += 1
    return c


def is_selfinjective(a: Algebra) -> bool:
    from .modcat import nakayama_permutation
    return nakayama_permutation(a) is not None


def render_scalar(field: Field, c) -> str:
    return fmt_scalar(field, c)


def presentation_of(a: Algebra) -> tuple[Quiver, list[Relation]]:
    """A quiver with relations whose bound quiver algebra is isomorphic to ``a``.

    Arrows are the generators of the word basis.  Relations are the kernel of
    the evaluation map on paths, keeping only those not already implied by
    the two-sided closure of the previously kept ones.
    """
    if a.presentation is not None:
        return a.presentation
    f = a.field
    one = f.one
    ng = len(a.gens)
    names = list(a.gen_names)
    q = Quiver(a.n, tuple((names[g], a.gen_src(g) + 1, a.gen_tgt(g) + 1) for g in range(ng)))
    L = a.loewy_length()
    out = [[g for g in range(ng) if a.gen_src(g) == v] for v in range(a.n)]
    paths = []
    values = {}
    level = [((g,), {a.gens[g]: one}) for g in range(ng)]
    while level and len(level[0][0]) <= L:
        nxt = []
        for p, val in level:
            paths.append(p)
            values[p] = val
            if len(p) < L:
                for g in out[a.gen_tgt(p[-1])]:
                    nxt.append((p + (g,), a.mul(val, {a.gens[g]: one})))
        level = nxt
    order = sorted(paths, key=lambda p: (len(p), p), reverse=True)
    col = {p: i for i, p in enumerate(order)}
    pend = lambda p: a.gen_tgt(p[-1])
    pstart = lambda p: a.gen_src(p[0])
    by_end = [[()] + [p for p in paths if pend(p) == v] for v in range(a.n)]
    by_start = [[()] + [p for p in paths if pstart(p) == v] for v in range(a.n)]
    closure = Span(f, len(order), keep_basis=False)
    rels = []
    cands = []
    for i in range(a.n):
        for j in range(a.n):
            block = [p for p in order if len(p) >= 2 and pstart(p) == i and pend(p) == j]
            if not block:
                continue
            rows = [values[p] for p in block]
            # kernel of the map block -> A, with leading terms as large as possible
            kern = _left_kernel_sparse(f, rows, a.dim)
            span = Span(f, len(block), keep_basis=False)
            for v in kern:
                span.add(v)
            for c, row in span.rows.items():
                cands.append((block[c], {col[block[k]]: x for k, x in row.items()}))
    cands.sort(key=lambda t: (len(t[0]), t[0]))
    for lead, vec in cands:
        if not closure.reduce(vec):
            continue
        terms = tuple((x, tuple(names[g] for g in order[k])) for k, x in sorted(vec.items()))
        rels.append(Relation(terms))
        _close_relation(f, closure, vec, order, col, by_end, by_start, L, pstart, pend)
    return q, rels


def _left_kernel_sparse(f: Field, rows, ncols: int) -> list[dict]:
    """Kernel of x -> sum x_k rows[k] (rows are sparse vectors of length ncols)."""
    cols = [dict() for _ in range(ncols)]
    for k, r in enumerate(rows):
        for j, x in r.items():
            cols[j][k] = x
    return sparse_nullspace(f, [c for c in cols if c], len(rows))


def _close_relation(f, closure, vec, order, col, by_end, by_start, L, pstart, pend):
    terms = [(x, order[k]) for k, x in vec.items()]
    s = pstart(terms[0][1])
    t = pend(terms[0][1])
    shortest = min(len(p) for _, p in terms)
    for u in by_end[s]:
        if len(u) + shortest > L:
            continue
        for v in by_start[t]:
            if len(u) + shortest + len(v) > L:
                continue
            w = {}
            for x, p in terms:
                path = u + p + v
                if path in col:
                    w[col[path]] = w.get(col[path], 0) + x
            if f.p:
                w = {k: y % f.p for k, y in w.items()}
            w = {k: y for k, y in w.items() if y}
            if w:
                closure.add(w)
