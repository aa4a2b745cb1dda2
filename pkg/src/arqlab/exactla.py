"""Exact scalars and dense/sparse linear algebra over Q and GF(p).

Rationals are ``gmpy2.mpq`` values (always in lowest terms); prime field
elements are plain ``int`` values reduced into ``range(p)``.  Every routine
takes the field explicitly, so no global state is involved.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpq


def _is_prime(p: int) -> bool:
    return p >= 2 and bool(gmpy2.is_prime(p))


@dataclass(frozen=True)
class Field:
    """The base field: characteristic 0 means Q, otherwise GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {self.characteristic}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def zero(self):
        return mpq(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return mpq(1) if self.characteristic == 0 else 1

    def __call__(self, x):
        p = self.characteristic
        if isinstance(x, str):
            x = Fraction(x.strip())
        if p == 0:
            return mpq(x)
        if isinstance(x, (Fraction, type(mpq(0)))):
            num, den = int(x.numerator), int(x.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return num * pow(den, -1, p) % p
        return int(x) % p

    def inv(self, a):
        if self.characteristic == 0:
            return 1 / a
        return pow(a, -1, self.characteristic)

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip()
        if t.upper() in ("Q", "QQ"):
            return cls(0)
        m = re.fullmatch(r"(?:GF\(\s*(\d+)\s*\)|gf:(\d+))", t, flags=re.IGNORECASE)
        if not m:
            raise ValueError(f"unknown field {text!r}")
        return cls(int(m.group(1) or m.group(2)))


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def fmt_scalar(field: Field, a) -> str:
    if field.characteristic:
        return str(a)
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"


class Mat:
    """Dense matrix with exact entries, stored row-major as a list of lists."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data, rows: int | None = None, cols: int | None = None):
        self.field = field
        self.data = [list(r) for r in data]
        self.rows = len(self.data) if rows is None else rows
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged matrix data")

    @classmethod
    def from_ints(cls, field: Field, data, rows=None, cols=None) -> "Mat":
        return cls(field, [[field(x) for x in r] for r in data], rows, cols)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(fmt_scalar(self.field, a) for a in r) for r in self.data)
        return f"Mat({self.rows}x{self.cols}: [{body}])"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Mat) and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def copy(self) -> "Mat":
        return Mat(self.field, self.data, self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(not a for r in self.data for a in r)

    @property
    def T(self) -> "Mat":
        return Mat(self.field, [list(c) for c in zip(*self.data)] if self.rows else
                   [[] for _ in range(self.cols)], self.cols, self.rows)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Mat(self.field, matmul_data(self.field, self.data, other.data, other.cols),
                   self.rows, other.cols)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        p = self.field.p
        if p:
            d = [[(a + b) % p for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        else:
            d = [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        return Mat(self.field, d, self.rows, self.cols)

    def __neg__(self) -> "Mat":
        return self.scale(self.field(-1))

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def scale(self, c) -> "Mat":
        p = self.field.p
        if p:
            d = [[a * c % p for a in r] for r in self.data]
        else:
            d = [[a * c for a in r] for r in self.data]
        return Mat(self.field, d, self.rows, self.cols)

    def flat(self) -> list:
        return [a for r in self.data for a in r]

    def submatrix(self, rows, cols) -> "Mat":
        return Mat(self.field, [[self.data[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def rank(self) -> int:
        return len(rref(self)[1])

    def trace(self):
        t = self.field.zero
        for i in range(min(self.rows, self.cols)):
            t += self.data[i][i]
        return t % self.field.p if self.field.p else t


def matmul_data(field: Field, a, b, bcols: int):
    p = field.p
    zero = field.zero
    out = []
    for row in a:
        acc = [zero] * bcols
        for k, x in enumerate(row):
            if not x:
                continue
            brow = b[k]
            for j in range(bcols):
                y = brow[j]
                if y:
                    acc[j] += x * y
        if p:
            acc = [v % p for v in acc]
        out.append(acc)
    return out


def hstack(field: Field, mats, rows: int | None = None) -> Mat:
    if not mats:
        return Mat.zeros(field, rows or 0, 0)
    r = mats[0].rows
    return Mat(field, [sum((m.data[i] for m in mats), []) for i in range(r)], r,
               sum(m.cols for m in mats))


def vstack(field: Field, mats, cols: int | None = None) -> Mat:
    if not mats:
        return Mat.zeros(field, 0, cols or 0)
    c = mats[0].cols
    return Mat(field, [r for m in mats for r in m.data], sum(m.rows for m in mats), c)


def block_diag(field: Field, mats) -> Mat:
    n = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    out = Mat.zeros(field, n, c)
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            out.data[r0 + i][c0:c0 + m.cols] = m.data[i]
        r0 += m.rows
        c0 += m.cols
    return out


# ---------------------------------------------------------------------------
# Gaussian elimination
# ---------------------------------------------------------------------------

def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form with first-nonzero pivoting."""
    field = m.field
    p = field.p
    a = [list(r) for r in m.data]
    pivots = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = field.inv(a[r][c])
        if p:
            a[r] = [x * inv % p for x in a[r]]
        else:
            a[r] = [x * inv for x in a[r]]
        prow = a[r]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                row = a[i]
                if p:
                    a[i] = [(x - f * y) % p for x, y in zip(row, prow)]
                else:
                    a[i] = [x - f * y for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return Mat(field, a, m.rows, m.cols), pivots


def kernel(m: Mat) -> list[Mat]:
    """Basis of {x : m x = 0} as column vectors."""
    return [Mat(m.field, [[a] for a in v], m.cols, 1) for v in nullspace(m)]


def nullspace(m: Mat) -> list[list]:
    """Kernel basis as plain coordinate lists (one per free column)."""
    rows = [{j: a for j, a in enumerate(r) if a} for r in m.data]
    return [dense(v, m.cols, m.field) for v in sparse_nullspace(m.field, rows, m.cols)]


def left_nullspace(m: Mat) -> list[list]:
    """Basis of {y : y m = 0} as coordinate lists."""
    return nullspace(m.T)


def solve(m: Mat, targets) -> tuple[list, list[Mat]]:
    """Solve m x = t for each target column; inconsistent targets give None.

    Returns the per-target particular solutions (column Mats) and the
    shared kernel basis.
    """
    field = m.field
    ker = kernel(m)
    tcols = [t.flat() if isinstance(t, Mat) else list(t) for t in targets]
    if not tcols:
        return [], ker
    aug = Mat(field, [m.data[i] + [t[i] for t in tcols] for i in range(m.rows)],
              m.rows, m.cols + len(tcols))
    red, pivots = rref(aug)
    sols = []
    for k in range(len(tcols)):
        col = m.cols + k
        bad = any(c >= m.cols and red.data[r][col] for r, c in enumerate(pivots))
        if bad:
            sols.append(None)
            continue
        x = [field.zero] * m.cols
        for r, c in enumerate(pivots):
            if c < m.cols:
                x[c] = red.data[r][col]
        sols.append(Mat(field, [[a] for a in x], m.cols, 1))
    return sols, ker


def inverse(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    aug = hstack(m.field, [m, Mat.identity(m.field, n)])
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return Mat(m.field, [r[n:] for r in red.data], n, n)


def is_invertible(m: Mat) -> bool:
    return m.rows == m.cols and m.rank() == m.rows


def minpoly(m: Mat) -> list:
    """Monic minimal polynomial of a square matrix, coefficients low to high."""
    if m.rows != m.cols:
        raise ValueError("minpoly of non-square matrix")
    field = m.field
    n = m.rows
    powers = [Mat.identity(field, n)]
    span = Span(field, n * n)
    span.add(powers[0].flat())
    while True:
        nxt = powers[-1] @ m
        if not span.add(nxt.flat()):
            cols = Mat(field, [list(c) for c in zip(*[q.flat() for q in powers])],
                       n * n, len(powers))
            (sol,), _ = solve(cols, [[-x % field.p if field.p else -x for x in nxt.flat()]])
            return [sol.data[i][0] for i in range(len(powers))] + [field.one]
        powers.append(nxt)


def poly_eval(field: Field, coeffs, m: Mat) -> Mat:
    """Horner evaluation of sum coeffs[i] x^i at a square matrix."""
    n = m.rows
    acc = Mat.zeros(field, n, n)
    ident = Mat.identity(field, n)
    for c in reversed(coeffs):
        acc = acc @ m + ident.scale(c)
    return acc


# ---------------------------------------------------------------------------
# Sparse routines (rows are dicts column -> nonzero scalar)
# ---------------------------------------------------------------------------

def dense(v: dict, n: int, field: Field) -> list:
    out = [field.zero] * n
    for j, a in v.items():
        out[j] = a
    return out


def sparse(v) -> dict:
    return {j: a for j, a in enumerate(v) if a}


class Span:
    """Incrementally maintained semi-echelon basis of a subspace of K^n."""

    def __init__(self, field: Field, n: int, keep_basis: bool = True):
        self.field = field
        self.n = n
        self.keep_basis = keep_basis
        self.rows: dict[int, dict] = {}  # pivot column -> row with pivot entry 1
        self.basis: list[list] = []      # the vectors as they were added

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v) -> dict:
        """Residue of v after elimination against the basis (sparse)."""
        p = self.field.p
        w = dict(v) if isinstance(v, dict) else sparse(v)
        if not w or not self.rows:
            return w
        for c in sorted(self.rows):
            a = w.get(c)
            if not a:
                continue
            for j, b in self.rows[c].items():
                x = w.get(j, 0) - a * b
                if p:
                    x %= p
                if x:
                    w[j] = x
                else:
                    w.pop(j, None)
        return w

    def add(self, v) -> bool:
        """Add v; return True iff it was independent of the current span."""
        w = self.reduce(v)
        if not w:
            return False
        c = min(w)
        inv = self.field.inv(w[c])
        p = self.field.p
        self.rows[c] = {j: (a * inv % p if p else a * inv) for j, a in w.items()}
        if self.keep_basis:
            self.basis.append(dense(v, self.n, self.field) if isinstance(v, dict) else list(v))
        return True

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def coordinates(self, v):
        """Coefficients of v with respect to ``self.basis`` or None."""
        if not self.basis:
            return [] if not self.reduce(v) else None
        m = Mat(self.field, [list(c) for c in zip(*self.basis)], self.n, len(self.basis))
        (sol,), _ = solve(m, [v if not isinstance(v, dict) else dense(v, self.n, self.field)])
        return None if sol is None else sol.flat()


def sparse_nullspace(field: Field, rows, ncols: int) -> list[dict]:
    """Kernel basis of the matrix whose rows are given as sparse dicts."""
    p = field.p
    ech: dict[int, dict] = {}
    for r in rows:
        w = dict(r)
        if not w:
            continue
        # reduce w against existing pivots, smallest first
        while w:
            hit = [c for c in w if c in ech]
            if not hit:
                break
            c = min(hit)
            a = w[c]
            for j, b in ech[c].items():
                x = w.get(j, 0) - a * b
                if p:
                    x %= p
                if x:
                    w[j] = x
                else:
                    w.pop(j, None)
        if not w:
            continue
        c = min(w)
        inv = field.inv(w[c])
        ech[c] = {j: (a * inv % p if p else a * inv) for j, a in w.items()}
    # back substitution to full RREF
    pivs = sorted(ech)
    for c in reversed(pivs):
        row = ech[c]
        for c2 in pivs:
            if c2 >= c:
                break
            other = ech[c2]
            a = other.get(c)
            if not a:
                continue
            for j, b in row.items():
                x = other.get(j, 0) - a * b
                if p:
                    x %= p
                if x:
                    other[j] = x
                else:
                    other.pop(j, None)
    pivset = set(pivs)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    col_entries: dict[int, list] = {}
    for c, row in ech.items():
        for j, a in row.items():
            if j != c:
                col_entries.setdefault(j, []).append((c, a))
    for f in free:
        v = {f: field.one}
        for c, a in col_entries.get(f, ()):
            v[c] = (-a) % p if p else -a
        basis.append(v)
    return basis


def sparse_rank(field: Field, rows) -> int:
    s = Span(field, 0, keep_basis=False)
    return sum(1 for r in rows if s.add(r))
