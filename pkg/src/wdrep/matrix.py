"""Dense matrices over a number field, with the exact linear algebra the
rest of the package needs: echelon forms, kernels, characteristic
polynomials, the Jordan-Chevalley decomposition and exp/log of nilpotent and
unipotent matrices."""

from __future__ import annotations

from .errors import DimensionMismatch, FieldError, NotNilpotent, NotUnipotent, SingularMatrix
from .field import (
    FieldElement,
    NumberField,
    poly_deriv,
    poly_divmod,
    poly_gcd,
    poly_monic,
    poly_squarefree,
    roots_in_field,
)


class Matrix:
    """Immutable rows x cols matrix with entries in a single number field."""

    __slots__ = ("field", "rows", "nrows", "ncols", "_hash")

    def __init__(self, field: NumberField, rows):
        rows = tuple(tuple(field(v) for v in row) for row in rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrices must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = width
        self._hash = None

    @classmethod
    def _make(cls, field, rows):
        obj = object.__new__(cls)
        obj.field = field
        obj.rows = rows
        obj.nrows = len(rows)
        obj.ncols = len(rows[0])
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls._make(field, tuple(tuple(o if i == j else z for j in range(n))
                                      for i in range(n)))

    @classmethod
    def zero(cls, field, nrows, ncols=None):
        ncols = nrows if ncols is None else ncols
        return cls._make(field, tuple((field.zero,) * ncols for _ in range(nrows)))

    @classmethod
    def diag(cls, field, values):
        n = len(values)
        vals = [field(v) for v in values]
        return cls._make(field, tuple(tuple(vals[i] if i == j else field.zero
                                            for j in range(n)) for i in range(n)))

    @classmethod
    def unit(cls, field, n, i, j):
        """Matrix unit E_ij (0-based)."""
        return cls._make(field, tuple(tuple(field.one if (a, b) == (i, j) else field.zero
                                            for b in range(n)) for a in range(n)))

    @classmethod
    def from_columns(cls, field, cols):
        cols = [list(c) for c in cols]
        return cls(field, list(zip(*cols)))

    @classmethod
    def block_diag(cls, blocks):
        field = blocks[0].field
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        rows = []
        coff = 0
        for b in blocks:
            for r in b.rows:
                rows.append((field.zero,) * coff + r + (field.zero,) * (m - coff - b.ncols))
            coff += b.ncols
        assert len(rows) == n
        return cls._make(field, tuple(rows))

    # -- basic protocol -------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [list(c) for c in zip(*self.rows)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(str(v) for v in r) for r in self.rows)
        return f"Matrix([{body}])"

    def to_json(self):
        return [[v.to_json() for v in r] for r in self.rows]

    @classmethod
    def from_json(cls, field, data):
        return cls(field, [[field(v) if isinstance(v, list) else field.from_rational(v)
                            for v in row] for row in data])

    def map(self, fn, field=None):
        field = field or self.field
        return Matrix._make(field, tuple(tuple(fn(v) for v in r) for r in self.rows))

    # -- arithmetic -----------------------------------------------------
    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        self._check_same(other)
        return Matrix._make(self.field, tuple(tuple(a + b for a, b in zip(r, s))
                                              for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        self._check_same(other)
        return Matrix._make(self.field, tuple(tuple(a - b for a, b in zip(r, s))
                                              for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return Matrix._make(self.field, tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c):
        c = self.field(c) if not isinstance(c, FieldElement) else c
        if c.is_zero():
            return Matrix.zero(self.field, self.nrows, self.ncols)
        return Matrix._make(self.field, tuple(tuple(a * c for a in r) for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.field.zero
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if not a.is_zero()]
            row = []
            for col in cols:
                acc = zero
                for k, a in nz:
                    b = col[k]
                    if not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return Matrix._make(self.field, tuple(out))

    def apply(self, vec):
        zero = self.field.zero
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, vec):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return out

    @property
    def T(self):
        return Matrix._make(self.field, tuple(zip(*self.rows)))

    def __pow__(self, k: int):
        if not self.is_square():
            raise DimensionMismatch("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self):
        acc = self.field.zero
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self):
        return all(v.is_zero() for r in self.rows for v in r)

    def is_identity(self):
        return self.is_square() and self == Matrix.identity(self.field, self.nrows)

    def commutator(self, other):
        return self @ other - other @ self

    def kron(self, other):
        rows = []
        for ra in self.rows:
            for rb in other.rows:
                rows.append(tuple(a * b for a in ra for b in rb))
        return Matrix._make(self.field, tuple(rows))

    def submatrix(self, rows, cols):
        return Matrix._make(self.field, tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise DimensionMismatch("column counts differ")
        return Matrix._make(self.field, self.rows + other.rows)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise DimensionMismatch("row counts differ")
        return Matrix._make(self.field, tuple(a + b for a, b in zip(self.rows, other.rows)))

    # -- elimination ----------------------------------------------------
    def rref(self):
        """Reduced row echelon form and the list of pivot columns."""
        m = [list(r) for r in self.rows]
        nr, nc = self.nrows, self.ncols
        pivots = []
        row = 0
        for col in range(nc):
            if row >= nr:
                break
            piv = next((i for i in range(row, nr) if not m[i][col].is_zero()), None)
            if piv is None:
                continue
            m[row], m[piv] = m[piv], m[row]
            inv = m[row][col].inverse()
            m[row] = [v * inv if not v.is_zero() else v for v in m[row]]
            prow = m[row]
            for i in range(nr):
                if i != row and not m[i][col].is_zero():
                    f = m[i][col]
                    m[i] = [a - f * b if not b.is_zero() else a for a, b in zip(m[i], prow)]
            pivots.append(col)
            row += 1
        return Matrix._make(self.field, tuple(tuple(r) for r in m)), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel(self):
        """Basis of the right kernel as a list of column vectors (lists)."""
        r, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for fj in free:
            vec = [self.field.zero] * self.ncols
            vec[fj] = self.field.one
            for i, pj in enumerate(pivots):
                vec[pj] = -r.rows[i][fj]
            basis.append(vec)
        return basis

    def solve(self, rhs):
        """One solution x of self * x = rhs (rhs a vector), or None."""
        aug = self.hstack(Matrix._make(self.field, tuple((v,) for v in rhs)))
        r, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [self.field.zero] * self.ncols
        for i, pj in enumerate(pivots):
            x[pj] = r.rows[i][self.ncols]
        return x

    def inverse(self):
        if not self.is_square():
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.nrows
        aug = self.hstack(Matrix.identity(self.field, n))
        r, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise SingularMatrix("matrix is not invertible")
        return Matrix._make(self.field, tuple(row[n:] for row in r.rows))

    def is_invertible(self):
        return self.is_square() and self.rank() == self.nrows

    def det(self):
        if not self.is_square():
            raise DimensionMismatch("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        det = self.field.one
        for col in range(n):
            piv = next((i for i in range(col, n) if not m[i][col].is_zero()), None)
            if piv is None:
                return self.field.zero
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            p = m[col][col]
            det = det * p
            inv = p.inverse()
            for i in range(col + 1, n):
                if not m[i][col].is_zero():
                    f = m[i][col] * inv
                    m[i] = [a - f * b if not b.is_zero() else a for a, b in zip(m[i], m[col])]
        return det

    def charpoly(self):
        """Monic characteristic polynomial det(t - M), ascending coefficients."""
        if not self.is_square():
            raise DimensionMismatch("characteristic polynomial of a non-square matrix")
        h = _hessenberg(self)
        return _hessenberg_charpoly(h, self.field)

    def is_nilpotent(self):
        cp = self.charpoly()
        return all(c.is_zero() for c in cp[:-1])


def _hessenberg(m: Matrix):
    n = m.nrows
    h = [list(r) for r in m.rows]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if not h[i][j].is_zero()), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for r in h:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        inv = h[j + 1][j].inverse()
        for i in range(j + 2, n):
            if h[i][j].is_zero():
                continue
            u = h[i][j] * inv
            h[i] = [a - u * b if not b.is_zero() else a for a, b in zip(h[i], h[j + 1])]
            for r in h:
                if not r[i].is_zero():
                    r[j + 1] = r[j + 1] + u * r[i]
    return h


def _hessenberg_charpoly(h, field):
    n = len(h)
    one, zero = field.one, field.zero
    polys = [[one]]
    for m in range(n):
        # (t - h[m][m]) * p_{m}
        prev = polys[m]
        p = [zero] + list(prev)
        for k, c in enumerate(prev):
            p[k] = p[k] - h[m][m] * c
        t = one
        for i in range(1, m + 1):
            t = t * h[m - i + 1][m - i]
            if t.is_zero():
                break
            coef = t * h[m - i][m]
            if coef.is_zero():
                continue
            for k, c in enumerate(polys[m - i]):
                p[k] = p[k] - coef * c
        polys.append(p)
    return polys[n]


def poly_of_matrix(poly, m: Matrix) -> Matrix:
    """Evaluate a polynomial (ascending coefficients) at a square matrix."""
    n = m.nrows
    if not poly:
        return Matrix.zero(m.field, n)
    acc = Matrix.identity(m.field, n).scale(poly[-1])
    for c in reversed(poly[:-1]):
        acc = acc @ m + Matrix.identity(m.field, n).scale(c)
    return acc


def minimal_polynomial(m: Matrix):
    """Monic minimal polynomial by the first linear relation among I, m, m^2, ..."""
    n = m.nrows
    field = m.field
    powers = [Matrix.identity(field, n)]
    vecs = [[v for r in powers[0].rows for v in r]]
    while True:
        powers.append(powers[-1] @ m)
        vec = [v for r in powers[-1].rows for v in r]
        a = Matrix.from_columns(field, vecs)
        sol = a.solve(vec)
        if sol is not None:
            return [-c for c in sol] + [field.one]
        vecs.append(vec)


# ---------------------------------------------------------------------------
# Jordan-Chevalley, exp and log


def semisimple_part(m: Matrix, *, max_iter: int = 64) -> Matrix:
    """Semisimple part S of m (additive decomposition m = S + nilpotent).

    Newton iteration S <- S - P(S) P'(S)^-1 with P the squarefree part of the
    characteristic polynomial; no eigenvalues are computed.  S is a polynomial
    in m.
    """
    if not m.is_square():
        raise DimensionMismatch("Jordan-Chevalley needs a square matrix")
    p = poly_squarefree(m.charpoly())
    dp = poly_deriv(p)
    s = m
    for _ in range(max_iter):
        ps = poly_of_matrix(p, s)
        if ps.is_zero():
            return s
        s = s - ps @ poly_of_matrix(dp, s).inverse()
    raise RuntimeError("Newton iteration for the semisimple part did not converge")


def jordan_chevalley(m: Matrix):
    """Multiplicative decomposition m = S U with S semisimple, U unipotent, SU = US."""
    if not m.is_square():
        raise DimensionMismatch("Jordan-Chevalley needs a square matrix")
    if not m.is_invertible():
        raise SingularMatrix("Jordan-Chevalley (multiplicative) needs an invertible matrix")
    s = semisimple_part(m)
    u = s.inverse() @ m
    return s, u


def is_semisimple(m: Matrix) -> bool:
    """True iff the minimal polynomial of m is squarefree."""
    p = poly_squarefree(m.charpoly())
    return poly_of_matrix(p, m).is_zero()


def exp_nilpotent(n: Matrix) -> Matrix:
    if not n.is_square():
        raise DimensionMismatch("exp of a non-square matrix")
    size = n.nrows
    ident = Matrix.identity(n.field, size)
    term = ident
    total = ident
    for k in range(1, size + 1):
        term = (term @ n).scale(n.field.one / k)
        if term.is_zero():
            return total
        total = total + term
    if not term.is_zero():
        raise NotNilpotent("matrix is not nilpotent")
    return total


def log_unipotent(u: Matrix) -> Matrix:
    if not u.is_square():
        raise DimensionMismatch("log of a non-square matrix")
    size = u.nrows
    ident = Matrix.identity(u.field, size)
    x = u - ident
    if not (x ** size).is_zero():
        raise NotUnipotent("u - I is not nilpotent")
    total = Matrix.zero(u.field, size)
    power = ident
    for k in range(1, size + 1):
        power = power @ x
        if power.is_zero():
            break
        coef = u.field.one / k if k % 2 else -(u.field.one / k)
        total = total + power.scale(coef)
    return total


def eigenvalues(m: Matrix):
    """Eigenvalues in the matrix's field with algebraic multiplicity (sorted)."""
    return roots_in_field(m.charpoly(), m.field)


def column_space_basis(vectors, field):
    """Independent subset (as column lists) spanning the same space as ``vectors``."""
    if not vectors:
        return []
    a = Matrix.from_columns(field, vectors)
    _, pivots = a.rref()
    return [list(vectors[j]) for j in pivots]


def coerce_matrix(m: Matrix, field: NumberField) -> Matrix:
    """Return m over ``field``; rational matrices move between fields freely."""
    if m.field == field:
        return m
    if all(v.is_rational() for r in m.rows for v in r):
        return m.map(lambda v: field.from_rational(v.c[0]), field)
    raise FieldError("matrix entries do not lie in the target field")


def flatten(m: Matrix):
    return [v for r in m.rows for v in r]


def unflatten(field, vec, nrows, ncols=None):
    ncols = nrows if ncols is None else ncols
    vec = list(vec)
    return Matrix._make(field, tuple(tuple(vec[i * ncols:(i + 1) * ncols]) for i in range(nrows)))


def linear_kernel(field, basis, fn):
    """Basis (as matrices) of {X in span(basis) : fn(X) = 0} for linear ``fn``.

    ``fn`` returns a Matrix or a flat list of field elements.
    """
    if not basis:
        return []
    cols = []
    for b in basis:
        out = fn(b)
        cols.append(flatten(out) if isinstance(out, Matrix) else list(out))
    if not cols[0]:
        return list(basis)
    coeffs = Matrix.from_columns(field, cols).kernel()
    return [combine(field, basis, c) for c in coeffs]


def combine(field, basis, coeffs):
    """Linear combination sum c_i basis_i of matrices."""
    n, m = basis[0].shape
    acc = [[field.zero] * m for _ in range(n)]
    for c, b in zip(coeffs, basis):
        if c.is_zero():
            continue
        for i, row in enumerate(b.rows):
            ai = acc[i]
            for j, v in enumerate(row):
                if not v.is_zero():
                    ai[j] = ai[j] + c * v
    return Matrix._make(field, tuple(tuple(r) for r in acc))


__all__ = [
    "Matrix",
    "coerce_matrix",
    "column_space_basis",
    "combine",
    "flatten",
    "linear_kernel",
    "unflatten",
    "eigenvalues",
    "exp_nilpotent",
    "is_semisimple",
    "jordan_chevalley",
    "log_unipotent",
    "minimal_polynomial",
    "poly_of_matrix",
    "semisimple_part",
    "poly_gcd",
    "poly_monic",
    "poly_divmod",
]
