"""Sparse matrices over Q(z), Kronecker placement, ranks and kernels.

Basis convention for tensor spaces: a slot with basis labels ``0..d-1``
composes big-endian, so the flat index of ``(a_1, ..., a_k)`` is
``a_1 * d**(k-1) + ... + a_k``.  For 1-form slots ``d = N*N`` and the
label of the pair ``(i, j)`` (1-based) is ``(i-1)*N + (j-1)``.
"""

from __future__ import annotations

import random
from flint import fmpz_poly, nmod_mat

from .scalar import ONE, ZERO, RatFunc, as_ratfunc

__all__ = [
    "OpMatrix",
    "kron",
    "rank_exact",
    "rank_probabilistic",
    "rank_mod_p",
    "pivot_columns",
    "kernel_basis",
    "solve",
    "weighted_partial_trace",
    "PRIME",
    "Vector",
]

PRIME = (1 << 61) - 1

Vector = dict  # sparse vector: index -> RatFunc (no stored zeros)


class OpMatrix:
    """Sparse ``rows x cols`` matrix with RatFunc entries (zeros not stored)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: dict | None = None):
        self.rows = rows
        self.cols = cols
        self.data: dict[int, dict[int, RatFunc]] = data if data is not None else {}

    # ---------------------------------------------------------- constructors
    @classmethod
    def identity(cls, n: int) -> OpMatrix:
        return cls(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> OpMatrix:
        return cls(rows, cols, {})

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries) -> OpMatrix:
        """Build from ``(r, c, value)`` triples; repeated positions accumulate."""
        data: dict[int, dict[int, RatFunc]] = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            v = as_ratfunc(v)
            row = data.setdefault(r, {})
            new = row.get(c, ZERO) + v
            if new.is_zero():
                row.pop(c, None)
            else:
                row[c] = new
        return cls(rows, cols, {r: row for r, row in data.items() if row})

    @classmethod
    def from_dense(cls, dense) -> OpMatrix:
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls.from_entries(
            rows, cols, ((r, c, v) for r, line in enumerate(dense) for c, v in enumerate(line) if v != 0)
        )

    @classmethod
    def diagonal(cls, values) -> OpMatrix:
        values = [as_ratfunc(v) for v in values]
        n = len(values)
        return cls(n, n, {i: {i: v} for i, v in enumerate(values) if not v.is_zero()})

    @classmethod
    def from_columns(cls, columns, rows: int) -> OpMatrix:
        data: dict[int, dict[int, RatFunc]] = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                data.setdefault(r, {})[c] = v
        return cls(rows, len(columns), data)

    # ------------------------------------------------------------- accessors
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, rc) -> RatFunc:
        r, c = rc
        return self.data.get(r, {}).get(c, ZERO)

    def entries(self):
        for r in sorted(self.data):
            row = self.data[r]
            for c in sorted(row):
                yield r, c, row[c]

    def nnz(self) -> int:
        return sum(len(row) for row in self.data.values())

    def is_zero(self) -> bool:
        return not self.data

    def to_dense(self):
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def column(self, c: int) -> Vector:
        return {r: row[c] for r, row in self.data.items() if c in row}

    def columns(self) -> list[Vector]:
        cols: list[Vector] = [{} for _ in range(self.cols)]
        for r, row in self.data.items():
            for c, v in row.items():
                cols[c][r] = v
        return cols

    def transpose(self) -> OpMatrix:
        data: dict[int, dict[int, RatFunc]] = {}
        for r, row in self.data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return OpMatrix(self.cols, self.rows, data)

    # ------------------------------------------------------------ arithmetic
    def __matmul__(self, other):
        if isinstance(other, dict):
            return self.apply(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        odata = other.data
        data: dict[int, dict[int, RatFunc]] = {}
        for r, row in self.data.items():
            acc: dict[int, RatFunc] = {}
            for k, a in row.items():
                orow = odata.get(k)
                if not orow:
                    continue
                for c, b in orow.items():
                    prev = acc.get(c)
                    acc[c] = a * b if prev is None else prev + a * b
            acc = {c: v for c, v in acc.items() if not v.is_zero()}
            if acc:
                data[r] = acc
        return OpMatrix(self.rows, other.cols, data)

    def apply(self, vec: Vector) -> Vector:
        out: dict[int, RatFunc] = {}
        for r, row in self.data.items():
            acc = None
            for c, a in row.items():
                b = vec.get(c)
                if b is None:
                    continue
                acc = a * b if acc is None else acc + a * b
            if acc is not None and not acc.is_zero():
                out[r] = acc
        return out

    def _combine(self, other: OpMatrix, sign: int) -> OpMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = {r: dict(row) for r, row in self.data.items()}
        for r, row in other.data.items():
            target = data.setdefault(r, {})
            for c, v in row.items():
                new = target.get(c, ZERO) + (v if sign > 0 else -v)
                if new.is_zero():
                    target.pop(c, None)
                else:
                    target[c] = new
            if not target:
                del data[r]
        return OpMatrix(self.rows, self.cols, data)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, s) -> OpMatrix:
        s = as_ratfunc(s)
        if s.is_zero():
            return OpMatrix.zeros(self.rows, self.cols)
        return OpMatrix(self.rows, self.cols, {r: {c: v * s for c, v in row.items()} for r, row in self.data.items()})

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-ONE)

    def __eq__(self, other):
        if not isinstance(other, OpMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __repr__(self):
        return f"OpMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    # ------------------------------------------------------------- transport
    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, str(v)] for r, c, v in self.entries()],
        }

    @classmethod
    def from_json(cls, doc: dict) -> OpMatrix:
        return cls.from_entries(doc["rows"], doc["cols"], ((r, c, RatFunc.parse(v)) for r, c, v in doc["entries"]))

    def evaluate_mod(self, at: int, p: int = PRIME) -> nmod_mat | None:
        """The matrix at ``z = at`` over GF(p); ``None`` if some entry has a pole there."""
        flat = [0] * (self.rows * self.cols)
        cache: dict[RatFunc, int | None] = {}
        for r, row in self.data.items():
            base = r * self.cols
            for c, v in row.items():
                val = cache.get(v, -1)
                if val == -1:
                    val = v.eval_mod(at, p)
                    cache[v] = val
                if val is None:
                    return None
                flat[base + c] = val
        return nmod_mat(self.rows, self.cols, flat, p)


def kron(a: OpMatrix, b: OpMatrix) -> OpMatrix:
    """Kronecker product; the row index of ``a`` is the more significant digit."""
    data: dict[int, dict[int, RatFunc]] = {}
    for ra, rowa in a.data.items():
        for rb, rowb in b.data.items():
            row = {}
            for ca, va in rowa.items():
                base = ca * b.cols
                for cb, vb in rowb.items():
                    row[base + cb] = va if vb.is_one() else (vb if va.is_one() else va * vb)
            data[ra * b.rows + rb] = row
    return OpMatrix(a.rows * b.rows, a.cols * b.cols, data)


# --------------------------------------------------------------------------
# exact elimination over Z[z]


def _poly_lcm(a: fmpz_poly, b: fmpz_poly) -> fmpz_poly:
    g = a.gcd(b)
    return (a // g) * b


def _integral_rows(m: OpMatrix):
    """Dense rows of polynomials, each row scaled by the lcm of its denominators."""
    one = fmpz_poly([1])
    zero = fmpz_poly([])
    rows = []
    for r in range(m.rows):
        row = m.data.get(r, {})
        den = one
        for v in row.values():
            if not v.den.is_one():
                den = _poly_lcm(den, v.den)
        line = [zero] * m.cols
        for c, v in row.items():
            line[c] = v.num * (den // v.den)
        rows.append(line)
    return rows


def _bareiss(rows, ncols):
    """Fraction-free forward elimination in place; returns the pivot columns."""
    nrows = len(rows)
    prev = fmpz_poly([1])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot_row = rows[r]
        piv = pivot_row[c]
        tail = [j for j in range(c + 1, ncols) if not pivot_row[j].is_zero()]
        for i in range(r + 1, nrows):
            row = rows[i]
            lead = row[c]
            if lead.is_zero():
                for j in range(c + 1, ncols):
                    if not row[j].is_zero():
                        row[j] = (piv * row[j]) // prev
                continue
            tail_set = tail
            for j in range(c + 1, ncols):
                x = row[j]
                if x.is_zero() and j not in tail_set:
                    continue
                row[j] = (piv * x - lead * pivot_row[j]) // prev
            row[c] = fmpz_poly([])
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def pivot_columns(m: OpMatrix) -> list[int]:
    """Column indices of a column-space basis (first independent columns)."""
    if m.is_zero():
        return []
    rows = _integral_rows(m)
    rows = [row for row in rows if any(not x.is_zero() for x in row)]
    return _bareiss(rows, m.cols)


def rank_exact(m: OpMatrix) -> int:
    """Rank over Q(z) by fraction-free elimination on the denominator-cleared matrix."""
    if m.is_zero():
        return 0
    # eliminate along the shorter side
    if m.cols > m.rows:
        m = m.transpose()
    return len(pivot_columns(m))


# --------------------------------------------------------------------------
# probabilistic rank


def rank_mod_p(m: OpMatrix, at: int, p: int = PRIME) -> int | None:
    mat = m.evaluate_mod(at, p)
    if mat is None:
        return None
    return mat.rank()


def rank_probabilistic(m: OpMatrix, seed: int, trials: int = 2, p: int = PRIME) -> int:
    """Rank at random points ``z`` in GF(p), maximised over ``trials`` draws.

    Each draw is a lower bound for the rank over Q(z); it falls short only
    when ``z`` hits a root of a nonzero maximal minor, which happens with
    probability at most (degree of that minor) / p.
    """
    if m.is_zero():
        return 0
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        while True:
            at = rng.randrange(2, p - 1)
            r = rank_mod_p(m, at, p)
            if r is not None:
                break
        best = max(best, r)
    return best


# --------------------------------------------------------------------------
# kernels and linear solves over Q(z)


def _rref(dense, ncols):
    """Gauss-Jordan in place over RatFunc; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(dense)
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if not dense[i][c].is_zero()), None)
        if p is None:
            continue
        dense[r], dense[p] = dense[p], dense[r]
        inv = dense[r][c].inverse()
        dense[r] = [x * inv if not x.is_zero() else x for x in dense[r]]
        pivot_row = dense[r]
        nz = [j for j in range(ncols) if not pivot_row[j].is_zero()]
        for i in range(nrows):
            if i == r:
                continue
            f = dense[i][c]
            if f.is_zero():
                continue
            row = dense[i]
            for j in nz:
                row[j] = row[j] - f * pivot_row[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def kernel_basis(m: OpMatrix) -> list[Vector]:
    """A basis of the right kernel as sparse vectors."""
    dense = m.to_dense()
    pivots = _rref(dense, m.cols)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = {f: ONE}
        for row_idx, pc in enumerate(pivots):
            v = dense[row_idx][f]
            if not v.is_zero():
                vec[pc] = -v
        basis.append(vec)
    return basis


def solve(m: OpMatrix, rhs: Vector) -> Vector | None:
    """One solution ``x`` of ``m x = rhs`` or ``None`` when the system is inconsistent."""
    dense = m.to_dense()
    for r in range(m.rows):
        dense[r].append(rhs.get(r, ZERO))
    pivots = _rref(dense, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    return {pc: dense[i][m.cols] for i, pc in enumerate(pivots) if not dense[i][m.cols].is_zero()}


# --------------------------------------------------------------------------


def weighted_partial_trace(m: OpMatrix, slot: int, weights) -> OpMatrix:
    """Contract one tensor slot diagonally: ``sum_k w_k M[(..k..), (..k..)]``.

    ``m`` acts on ``(C^d)^{⊗n}`` with ``d = len(weights)``; ``slot`` is 0-based.
    """
    weights = [as_ratfunc(w) for w in weights]
    d = len(weights)
    if d == 0:
        raise ValueError("empty weight list")
    if d == 1:  # one-dimensional slots: the slot count is not recoverable from the size
        if slot < 0 or m.rows != m.cols:
            raise ValueError("bad slot or non-square operator")
        return m.scale(weights[0])
    n = 0
    size = 1
    while size < m.rows:
        size *= d
        n += 1
    if size != m.rows or m.rows != m.cols:
        raise ValueError(f"weight length {d} does not match a square operator of size {m.rows}x{m.cols}")
    if not 0 <= slot < n:
        raise IndexError(f"slot {slot} out of range for {n} slots")
    after = d ** (n - 1 - slot)
    out_size = m.rows // d

    def split(idx):
        hi, rest = divmod(idx, d * after)
        k, lo = divmod(rest, after)
        return hi * after + lo, k

    entries = []
    for r, row in m.data.items():
        rr, kr = split(r)
        for c, v in row.items():
            cc, kc = split(c)
            if kr == kc:
                entries.append((rr, cc, v * weights[kr]))
    return OpMatrix.from_entries(out_size, out_size, entries)
