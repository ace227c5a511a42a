"""Exact dense linear algebra over prime fields and the rationals.

Row reduction is the single hot kernel: every rank, kernel, solve and
basis choice in the package funnels through :func:`rref`.  Over a prime
field a compiled elimination core (``pathkoszul._ffcore``, built from
Cython) is used when available; a pure-Python backend covers the
rationals and serves as the fallback.  Both compute the reduced row
echelon form, which is unique, so all derived data (pivots, kernels,
solutions with free variables set to zero) is identical across backends.

Matrix entries are plain ``int`` in ``[0, p)`` over ``fp:P`` and
``fractions.Fraction`` over ``q``.  Set the environment variable
``PATHKOSZUL_PURE=1`` (or call :func:`force_pure_backend`) to disable the
compiled core.
"""

from __future__ import annotations

import os
from array import array
from fractions import Fraction

from .errors import ValidationError

try:
    from . import _ffcore
except ImportError:
    _ffcore = None

_FORCE_PURE = bool(os.environ.get("PATHKOSZUL_PURE"))


def force_pure_backend(flag=True):
    """Globally enable or disable the pure-Python fallback."""
    global _FORCE_PURE
    _FORCE_PURE = bool(flag)


def compiled_available():
    return _ffcore is not None


def backend_name():
    return "compiled" if (_ffcore is not None and not _FORCE_PURE) else "pure"


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin, valid far beyond the 2**31 cap on p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field with p elements; elements are ints in [0, p)."""

    __slots__ = ("p",)
    is_prime = True

    def __init__(self, p):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValidationError(f"field order {p!r} is not prime")
        if p >= 2**31:
            raise ValidationError(f"prime {p} too large (need p < 2^31)")
        self.p = p

    zero = 0
    one = 1

    def of_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    @property
    def name(self):
        return f"fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


_QZERO = Fraction(0)
_QONE = Fraction(1)


class RationalField:
    """The rationals; elements are fractions.Fraction."""

    __slots__ = ()
    is_prime = False

    zero = _QZERO
    one = _QONE

    def of_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    @property
    def name(self):
        return "q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "RationalField()"


def field_from_name(name):
    """Parse 'q' or 'fp:P' into a field object."""
    if name == "q":
        return RationalField()
    if name.startswith("fp:"):
        body = name[3:]
        if not body.isdigit():
            raise ValidationError(f"bad field spec {name!r}")
        return PrimeField(int(body))
    raise ValidationError(f"bad field spec {name!r} (expected 'q' or 'fp:P')")


def entry_to_str(e):
    """Canonical string form of an entry, used in JSON payloads."""
    return str(e)


class Mat:
    """Dense matrix with explicit shape; rows of canonical field elements."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, nrows, ncols, rows):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, nrows, ncols, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        rows = [[z] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = o
        return cls(field, n, n, rows)

    @classmethod
    def from_rows(cls, field, rows, ncols=None):
        """Build from lists; int entries are coerced into the field."""
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        conv = field.of_int
        out = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            out.append([conv(x) if isinstance(x, int) else x for x in r])
        return cls(field, len(out), ncols, out)

    @classmethod
    def from_cols(cls, field, cols, nrows=None):
        if nrows is None:
            if not cols:
                raise ValueError("nrows required for a matrix with no columns")
            nrows = len(cols[0])
        m = cls.zeros(field, nrows, len(cols))
        conv = field.of_int
        for j, c in enumerate(cols):
            if len(c) != nrows:
                raise ValueError("ragged columns")
            for i, x in enumerate(c):
                m.rows[i][j] = conv(x) if isinstance(x, int) else x
        return m

    def copy(self):
        return Mat(self.field, self.nrows, self.ncols, [row[:] for row in self.rows])

    def col(self, j):
        return [row[j] for row in self.rows]

    def transpose(self):
        if self.nrows and self.ncols:
            return Mat(self.field, self.ncols, self.nrows,
                       [list(col) for col in zip(*self.rows)])
        return Mat(self.field, self.ncols, self.nrows,
                   [[self.field.zero] * self.nrows for _ in range(self.ncols)])

    def is_zero(self):
        return all(not x for row in self.rows for x in row)

    def __eq__(self, other):
        return (isinstance(other, Mat) and other.field == self.field
                and other.nrows == self.nrows and other.ncols == self.ncols
                and other.rows == self.rows)

    def __repr__(self):
        return f"Mat({self.field.name}, {self.nrows}x{self.ncols})"

    def scale(self, c):
        f = self.field
        return Mat(f, self.nrows, self.ncols,
                   [[f.mul(c, x) for x in row] for row in self.rows])

    def neg(self):
        f = self.field
        return Mat(f, self.nrows, self.ncols,
                   [[f.neg(x) for x in row] for row in self.rows])

    def add(self, other):
        assert self.nrows == other.nrows and self.ncols == other.ncols
        f = self.field
        return Mat(f, self.nrows, self.ncols,
                   [[f.add(a, b) for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.rows, other.rows)])

    def sub(self, other):
        assert self.nrows == other.nrows and self.ncols == other.ncols
        f = self.field
        return Mat(f, self.nrows, self.ncols,
                   [[f.sub(a, b) for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.rows, other.rows)])

    def mul(self, other):
        """Matrix product; skips zero entries of the left factor."""
        assert self.ncols == other.nrows
        f = self.field
        m, n, k = self.nrows, other.ncols, self.ncols
        if f.is_prime and _ffcore is not None and not _FORCE_PURE and m * n * k > 8000:
            a = array("q", [x for row in self.rows for x in row])
            b = array("q", [x for row in other.rows for x in row])
            c = _ffcore.mat_mul_mod_p(a, b, m, k, n, f.p)
            return Mat(f, m, n, [list(c[i * n:(i + 1) * n]) for i in range(m)])
        z = f.zero
        out = [[z] * n for _ in range(m)]
        brows = other.rows
        for i in range(m):
            orow = out[i]
            for kk, a in enumerate(self.rows[i]):
                if not a:
                    continue
                brow = brows[kk]
                for j, b in enumerate(brow):
                    if b:
                        orow[j] = orow[j] + a * b
        if f.is_prime:
            p = f.p
            for row in out:
                for j, x in enumerate(row):
                    row[j] = x % p
        return Mat(f, m, n, out)

    def mat_vec(self, v):
        assert len(v) == self.ncols
        f = self.field
        out = []
        for row in self.rows:
            acc = f.zero
            for a, b in zip(row, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc % f.p if f.is_prime else acc)
        return out

    def to_str_lists(self):
        return [[entry_to_str(x) for x in row] for row in self.rows]


def hstack(mats):
    assert mats, "hstack of nothing"
    nrows = mats[0].nrows
    assert all(m.nrows == nrows for m in mats)
    rows = [sum((m.rows[i] for m in mats), []) for i in range(nrows)]
    return Mat(mats[0].field, nrows, sum(m.ncols for m in mats), rows)


def vstack(mats):
    assert mats, "vstack of nothing"
    ncols = mats[0].ncols
    assert all(m.ncols == ncols for m in mats)
    rows = [row[:] for m in mats for row in m.rows]
    return Mat(mats[0].field, sum(m.nrows for m in mats), ncols, rows)


def block_matrix(field, blocks, row_dims, col_dims):
    """Assemble a matrix from a grid of optional blocks (None means zero)."""
    out = Mat.zeros(field, sum(row_dims), sum(col_dims))
    r0 = 0
    for bi, rd in enumerate(row_dims):
        c0 = 0
        for bj, cd in enumerate(col_dims):
            blk = blocks[bi][bj]
            if blk is not None:
                assert blk.nrows == rd and blk.ncols == cd
                for i in range(rd):
                    out.rows[r0 + i][c0:c0 + cd] = blk.rows[i]
            c0 += cd
        r0 += rd
    return out


def _rref_modp_pure(rows, nrows, ncols, p):
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        pv = prow[c]
        if pv != 1:
            inv = pow(pv, p - 2, p)
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv % p
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            fct = row[c]
            if fct:
                for j in range(c, ncols):
                    x = prow[j]
                    if x:
                        row[j] = (row[j] - fct * x) % p
        pivots.append(c)
        r += 1
    return pivots


def _rref_generic_pure(rows, nrows, ncols, field):
    # entries must support +, -, *, / as field operations (e.g. Fraction)
    one = field.one
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        pv = prow[c]
        if pv != one:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] / pv
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            fct = row[c]
            if fct:
                for j in range(c, ncols):
                    x = prow[j]
                    if x:
                        row[j] = row[j] - fct * x
        pivots.append(c)
        r += 1
    return pivots


def rref(m):
    """Reduced row echelon form; returns (new matrix, pivot column tuple)."""
    if m.nrows == 0 or m.ncols == 0:
        return m.copy(), ()
    f = m.field
    if f.is_prime:
        if _ffcore is not None and not _FORCE_PURE:
            flat = array("q", [x for row in m.rows for x in row])
            piv = _ffcore.rref_mod_p(flat, m.nrows, m.ncols, f.p)
            n = m.ncols
            rows = [list(flat[i * n:(i + 1) * n]) for i in range(m.nrows)]
            return Mat(f, m.nrows, n, rows), tuple(piv)
        rows = [row[:] for row in m.rows]
        piv = _rref_modp_pure(rows, m.nrows, m.ncols, f.p)
        return Mat(f, m.nrows, m.ncols, rows), tuple(piv)
    rows = [row[:] for row in m.rows]
    piv = _rref_generic_pure(rows, m.nrows, m.ncols, f)
    return Mat(f, m.nrows, m.ncols, rows), tuple(piv)


def rank(m):
    return len(rref(m)[1])


def kernel_basis(m):
    """Matrix whose columns are the canonical kernel basis of m.

    Column c of the result corresponds to the c-th non-pivot column of
    rref(m) with that free variable set to one and the others to zero;
    this choice is unique, hence backend independent.
    """
    f = m.field
    if m.ncols == 0:
        return Mat.zeros(f, 0, 0)
    R, piv = rref(m)
    pset = set(piv)
    free = [c for c in range(m.ncols) if c not in pset]
    out = Mat.zeros(f, m.ncols, len(free))
    for idx, fc in enumerate(free):
        out.rows[fc][idx] = f.one
        for r, pc in enumerate(piv):
            coef = R.rows[r][fc]
            if coef:
                out.rows[pc][idx] = f.neg(coef)
    return out


def solve_many(a, b):
    """Solve a @ X = B column by column; free variables are set to zero.

    Returns the solution matrix, or None if any column is inconsistent.
    """
    assert a.nrows == b.nrows
    if b.ncols == 0:
        return Mat.zeros(a.field, a.ncols, 0)
    if a.ncols == 0:
        return None if not b.is_zero() else Mat.zeros(a.field, 0, b.ncols)
    R, piv = rref(hstack([a, b]))
    if piv and piv[-1] >= a.ncols:
        return None
    f = a.field
    out = Mat.zeros(f, a.ncols, b.ncols)
    for r, pc in enumerate(piv):
        out.rows[pc] = R.rows[r][a.ncols:]
    return out


def solve(a, b):
    """Solve a @ x = b for one vector b; None if inconsistent."""
    m = solve_many(a, Mat.from_cols(a.field, [list(b)], a.nrows))
    return None if m is None else m.col(0)


def inverse(m):
    """Inverse of a square matrix, or None if singular."""
    assert m.nrows == m.ncols
    n = m.nrows
    if n == 0:
        return Mat.zeros(m.field, 0, 0)
    R, piv = rref(hstack([m, Mat.identity(m.field, n)]))
    if len(piv) != n or piv[-1] != n - 1:
        return None
    return Mat(m.field, n, n, [row[n:] for row in R.rows])


def span_contains(span_cols, test_cols):
    """True iff every column of test_cols lies in the column span of span_cols."""
    assert span_cols.nrows == test_cols.nrows
    if test_cols.ncols == 0:
        return True
    r0 = rank(span_cols)
    return rank(hstack([span_cols, test_cols])) == r0
