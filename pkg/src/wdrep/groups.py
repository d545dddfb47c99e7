"""Matrix groups G inside GL_n, their Lie algebras, and representations built
from the standard one by duals, tensor products, direct sums, symmetric and
exterior powers."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product as iproduct
from math import comb

from .errors import DegreeBudgetExceeded, DimensionMismatch, FieldError
from .field import NumberField, QQ
from .matrix import (
    Matrix,
    coerce_matrix,
    combine,
    exp_nilpotent,
    flatten,
    linear_kernel,
)

VARIANTS = ("GL", "SL", "Sp", "SO", "O", "Product", "TensorStabilizer")
DEFAULT_MAX_DEGREE = 6


# ---------------------------------------------------------------------------
# construction words
#
# A word is a nested tuple: ("std",), ("dual",), ("tensor", a, b),
# ("sum", a, b), ("sym", k, a), ("wedge", k, a).

_TOKEN = re.compile(r"\s*(Sym\^\d+|Lambda\^\d+|Λ\^\d+|wedge\^\d+|std|dual|V\*|V|⊗|⊕|\(x\)|\(\+\)|[(),])")


def parse_word(text: str):
    """Parse a construction word.

    Grammar: ``std`` (alias ``V``), ``dual`` (``V*``), ``a ⊗ b`` (``(x)``),
    ``a ⊕ b`` (``(+)``), ``Sym^k(a)``, ``Λ^k(a)`` (``Lambda^k``, ``wedge^k``)
    and the prefix forms ``tensor(a,b)``, ``directsum(a,b)``.  ``⊗`` binds
    tighter than ``⊕``.
    """
    text = text.strip()
    text = re.sub(r"\btensor\(", "T(", text)
    text = re.sub(r"\bdirectsum\(", "D(", text)
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] in "TD" and text[pos:pos + 2] in ("T(", "D("):
            tokens.append(text[pos])
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad construction word at position {pos}: {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
    word, rest = _parse_sum(tokens)
    if rest:
        raise ValueError(f"trailing tokens in construction word: {rest}")
    return word


def _parse_sum(tokens):
    left, tokens = _parse_tensor(tokens)
    while tokens and tokens[0] in ("⊕", "(+)"):
        right, tokens = _parse_tensor(tokens[1:])
        left = ("sum", left, right)
    return left, tokens


def _parse_tensor(tokens):
    left, tokens = _parse_atom(tokens)
    while tokens and tokens[0] in ("⊗", "(x)"):
        right, tokens = _parse_atom(tokens[1:])
        left = ("tensor", left, right)
    return left, tokens


def _expect(tokens, tok):
    if not tokens or tokens[0] != tok:
        raise ValueError(f"expected {tok!r}")
    return tokens[1:]


def _parse_atom(tokens):
    if not tokens:
        raise ValueError("unexpected end of construction word")
    head, rest = tokens[0], tokens[1:]
    if head in ("std", "V"):
        return ("std",), rest
    if head in ("dual", "V*"):
        return ("dual",), rest
    if head == "(":
        inner, rest = _parse_sum(rest)
        return inner, _expect(rest, ")")
    if head in ("T", "D"):
        rest = _expect(rest, "(")
        a, rest = _parse_sum(rest)
        rest = _expect(rest, ",")
        b, rest = _parse_sum(rest)
        rest = _expect(rest, ")")
        return ("tensor" if head == "T" else "sum", a, b), rest
    m = re.fullmatch(r"(Sym|Lambda|Λ|wedge)\^(\d+)", head)
    if m:
        k = int(m.group(2))
        if k < 1:
            raise ValueError("power must be at least 1")
        rest = _expect(rest, "(")
        a, rest = _parse_sum(rest)
        rest = _expect(rest, ")")
        return ("sym" if m.group(1) == "Sym" else "wedge", k, a), rest
    raise ValueError(f"unexpected token {head!r}")


def word_str(word) -> str:
    tag = word[0]
    if tag in ("std", "dual"):
        return tag
    if tag == "tensor":
        return f"{_wrap(word[1], 'sum')}⊗{_wrap(word[2], 'sum')}"
    if tag == "sum":
        return f"{word_str(word[1])}⊕{word_str(word[2])}"
    name = "Sym" if tag == "sym" else "Λ"
    return f"{name}^{word[1]}({word_str(word[2])})"


def _wrap(word, tag):
    s = word_str(word)
    return f"({s})" if word[0] == tag else s


def word_degree(word) -> int:
    """Total tensor degree of a word."""
    tag = word[0]
    if tag in ("std", "dual"):
        return 1
    if tag == "tensor":
        return word_degree(word[1]) + word_degree(word[2])
    if tag == "sum":
        return max(word_degree(word[1]), word_degree(word[2]))
    return word[1] * word_degree(word[2])


def word_dim(word, n: int) -> int:
    tag = word[0]
    if tag in ("std", "dual"):
        return n
    if tag == "tensor":
        return word_dim(word[1], n) * word_dim(word[2], n)
    if tag == "sum":
        return word_dim(word[1], n) + word_dim(word[2], n)
    m = word_dim(word[2], n)
    return comb(m + word[1] - 1, word[1]) if tag == "sym" else comb(m, word[1])


# ---------------------------------------------------------------------------
# symmetric and exterior powers of a matrix


@lru_cache(maxsize=None)
def _sym_basis(m, k):
    return tuple(combinations_with_replacement(range(m), k))


@lru_cache(maxsize=None)
def _wedge_basis(m, k):
    return tuple(combinations(range(m), k))


def sym_power(g: Matrix, k: int) -> Matrix:
    """Action on Sym^k on the monomial basis e_I (I sorted), no normalization."""
    field = g.field
    m = g.nrows
    basis = _sym_basis(m, k)
    index = {b: i for i, b in enumerate(basis)}
    cols = g.columns()
    out = [[field.zero] * len(basis) for _ in basis]
    for col_idx, mono in enumerate(basis):
        poly = {(): field.one}
        for i in mono:
            col = cols[i]
            nxt = {}
            for key, c in poly.items():
                for l, v in enumerate(col):
                    if v.is_zero():
                        continue
                    nk = tuple(sorted(key + (l,)))
                    nxt[nk] = nxt[nk] + c * v if nk in nxt else c * v
            poly = nxt
        for key, c in poly.items():
            out[index[key]][col_idx] = c
    return Matrix._make(field, tuple(tuple(r) for r in out))


def sym_derivation(x: Matrix, k: int) -> Matrix:
    field = x.field
    m = x.nrows
    basis = _sym_basis(m, k)
    index = {b: i for i, b in enumerate(basis)}
    cols = x.columns()
    out = [[field.zero] * len(basis) for _ in basis]
    for col_idx, mono in enumerate(basis):
        for pos, i in enumerate(mono):
            rest = mono[:pos] + mono[pos + 1:]
            for l, v in enumerate(cols[i]):
                if v.is_zero():
                    continue
                r = index[tuple(sorted(rest + (l,)))]
                out[r][col_idx] = out[r][col_idx] + v
    return Matrix._make(field, tuple(tuple(r) for r in out))


def wedge_power(g: Matrix, k: int) -> Matrix:
    """Action on Λ^k on the basis e_{i1}∧...∧e_{ik}, i1 < ... < ik: the k×k minors."""
    field = g.field
    basis = _wedge_basis(g.nrows, k)
    rows = []
    for r in basis:
        rows.append(tuple(g.submatrix(r, c).det() for c in basis))
    return Matrix._make(field, tuple(rows))


def wedge_derivation(x: Matrix, k: int) -> Matrix:
    field = x.field
    basis = _wedge_basis(x.nrows, k)
    index = {b: i for i, b in enumerate(basis)}
    cols = x.columns()
    out = [[field.zero] * len(basis) for _ in basis]
    for col_idx, mono in enumerate(basis):
        for pos, i in enumerate(mono):
            for l, v in enumerate(cols[i]):
                if v.is_zero() or (l != i and l in mono):
                    continue
                new = list(mono)
                new[pos] = l
                sign = _sort_sign(new)
                r = index[tuple(sorted(new))]
                out[r][col_idx] = out[r][col_idx] + v if sign > 0 else out[r][col_idx] - v
    return Matrix._make(field, tuple(tuple(r) for r in out))


def _sort_sign(seq):
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign


def _kron_sum(a: Matrix, b: Matrix) -> Matrix:
    ia = Matrix.identity(a.field, a.nrows)
    ib = Matrix.identity(a.field, b.nrows)
    return a.kron(ib) + ia.kron(b)


def word_weights(word, eigs):
    """Eigenvalue multiset of r(g) given the eigenvalues of g (as a list)."""
    tag = word[0]
    if tag == "std":
        return list(eigs)
    if tag == "dual":
        return [e.inverse() for e in eigs]
    if tag == "tensor":
        a = word_weights(word[1], eigs)
        b = word_weights(word[2], eigs)
        return [x * y for x in a for y in b]
    if tag == "sum":
        return word_weights(word[1], eigs) + word_weights(word[2], eigs)
    base = word_weights(word[2], eigs)
    combos = (combinations_with_replacement if tag == "sym" else combinations)(range(len(base)), word[1])
    out = []
    for c in combos:
        acc = base[c[0]]
        for i in c[1:]:
            acc = acc * base[i]
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# group specifications


@dataclass(frozen=True)
class Tensor:
    """A vector in the representation space of ``shape`` (a construction word)."""

    shape: tuple
    entries: tuple

    def to_json(self):
        return {"shape": word_str(self.shape), "entries": [e.to_json() for e in self.entries]}


@dataclass(frozen=True)
class GroupSpec:
    """One of GL(n), SL(n), Sp(n, J), SO(n, B), O(n, B), Product(...) or
    TensorStabilizer(n, tensors).  ``n`` is always the matrix size."""

    variant: str
    n: int
    form: Matrix | None = None
    factors: tuple = ()
    tensors: tuple = ()

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown group variant {self.variant!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.variant in ("Sp", "SO", "O"):
            f = self.form
            if f is None or f.shape != (self.n, self.n):
                raise DimensionMismatch("form must be an n x n matrix")
            if f.field != QQ and all(v.is_rational() for r in f.rows for v in r):
                # rational forms are stored over Q so equality ignores the working field
                object.__setattr__(self, "form", coerce_matrix(f, QQ))
            if not f.is_invertible():
                raise ValueError("form must be invertible")
            if self.variant == "Sp" and f.T != -f:
                raise ValueError("Sp form must be antisymmetric")
            if self.variant != "Sp" and f.T != f:
                raise ValueError("orthogonal form must be symmetric")
        if self.variant == "Product":
            if not self.factors or sum(g.n for g in self.factors) != self.n:
                raise DimensionMismatch("product factors must fill the matrix size")
        if self.variant == "TensorStabilizer":
            for t in self.tensors:
                if len(t.entries) != word_dim(t.shape, self.n):
                    raise DimensionMismatch(f"tensor of shape {word_str(t.shape)} has wrong length")

    # -- constructors --------------------------------------------------
    @staticmethod
    def GL(n):
        return GroupSpec("GL", n)

    @staticmethod
    def SL(n):
        return GroupSpec("SL", n)

    @staticmethod
    def Sp(n, form=None, field=QQ):
        if n % 2:
            raise ValueError("Sp needs even size")
        return GroupSpec("Sp", n, form if form is not None else standard_symplectic(n, field))

    @staticmethod
    def SO(n, form=None, field=QQ):
        return GroupSpec("SO", n, form if form is not None else Matrix.identity(field, n))

    @staticmethod
    def O(n, form=None, field=QQ):
        return GroupSpec("O", n, form if form is not None else Matrix.identity(field, n))

    @staticmethod
    def Product(factors):
        factors = tuple(factors)
        return GroupSpec("Product", sum(g.n for g in factors), factors=factors)

    @staticmethod
    def TensorStabilizer(n, tensors):
        return GroupSpec("TensorStabilizer", n, tensors=tuple(tensors))

    def is_gl_type(self) -> bool:
        return self.variant == "GL"

    def __str__(self):
        if self.variant == "Product":
            return "Product(" + ", ".join(str(g) for g in self.factors) + ")"
        return f"{self.variant}({self.n})"

    # -- JSON ----------------------------------------------------------
    def to_json(self):
        out = {"variant": self.variant, "n": self.n}
        if self.form is not None:
            out["form"] = self.form.to_json()
        if self.factors:
            out["factors"] = [g.to_json() for g in self.factors]
        if self.tensors:
            out["tensors"] = [t.to_json() for t in self.tensors]
        return out

    @staticmethod
    def from_json(data, field: NumberField = QQ):
        variant = data["variant"]
        n = int(data["n"])
        form = Matrix.from_json(field, data["form"]) if "form" in data else None
        if variant == "Sp" and form is None:
            form = standard_symplectic(n, field)
        if variant in ("SO", "O") and form is None:
            form = Matrix.identity(field, n)
        factors = tuple(GroupSpec.from_json(f, field) for f in data.get("factors", ()))
        tensors = tuple(
            Tensor(parse_word(t["shape"]),
                   tuple(field(v) if isinstance(v, list) else field.from_rational(v)
                         for v in t["entries"]))
            for t in data.get("tensors", ()))
        return GroupSpec(variant, n, form, factors, tensors)


def standard_symplectic(n: int, field: NumberField = QQ) -> Matrix:
    """J = [[0, I], [-I, 0]]."""
    h = n // 2
    rows = []
    for i in range(n):
        row = [0] * n
        if i < h:
            row[i + h] = 1
        else:
            row[i - h] = -1
        rows.append(row)
    return Matrix(field, rows)


def _form(g: GroupSpec, field):
    return coerce_matrix(g.form, field)


def _blocks(g: GroupSpec):
    off = 0
    for f in g.factors:
        yield f, off
        off += f.n


def _check_size(g: GroupSpec, m: Matrix):
    if m.shape != (g.n, g.n):
        raise DimensionMismatch(f"expected a {g.n}x{g.n} matrix, got {m.shape}")


def contains(g: GroupSpec, m: Matrix) -> bool:
    """Exact membership test for m in G."""
    _check_size(g, m)
    v = g.variant
    if v == "GL":
        return m.is_invertible()
    if v == "SL":
        return m.det() == 1
    if v in ("Sp", "SO", "O"):
        f = _form(g, m.field)
        if m.T @ f @ m != f:
            return False
        return v != "SO" or m.det() == 1
    if v == "Product":
        for f, off in _blocks(g):
            idx = range(off, off + f.n)
            rest = [j for j in range(g.n) if j not in idx]
            if rest and not m.submatrix(list(idx), rest).is_zero():
                return False
            if not contains(f, m.submatrix(list(idx), list(idx))):
                return False
        return True
    if not m.is_invertible():
        return False
    for t in g.tensors:
        r = _eval_group(t.shape, m, {})
        vec = [m.field(e) if e.field == m.field else m.field.from_rational(e.c[0]) for e in t.entries]
        if r.apply(vec) != vec:
            return False
    return True


def lie_constraints(g: GroupSpec, x: Matrix):
    """Flat list of linear forms in X vanishing exactly on Lie(G)."""
    v = g.variant
    if v == "GL":
        return []
    if v == "SL":
        return [x.trace()]
    if v in ("Sp", "SO", "O"):
        f = _form(g, x.field)
        return flatten(x.T @ f + f @ x)
    if v == "Product":
        out = []
        for f, off in _blocks(g):
            idx = list(range(off, off + f.n))
            rest = [j for j in range(g.n) if j < off or j >= off + f.n]
            if rest:
                out.extend(flatten(x.submatrix(idx, rest)))
            out.extend(lie_constraints(f, x.submatrix(idx, idx)))
        return out
    out = []
    for t in g.tensors:
        vec = [x.field(e) if e.field == x.field else x.field.from_rational(e.c[0]) for e in t.entries]
        out.extend(_eval_lie(t.shape, x, {}).apply(vec))
    return out


def lie_contains(g: GroupSpec, x: Matrix) -> bool:
    _check_size(g, x)
    return all(c.is_zero() for c in lie_constraints(g, x))


@lru_cache(maxsize=256)
def lie_algebra_basis(g: GroupSpec, field: NumberField):
    """A basis of Lie(G) over ``field`` as a tuple of matrices."""
    n = g.n
    units = [Matrix.unit(field, n, i, j) for i in range(n) for j in range(n)]
    if g.variant == "GL":
        return tuple(units)
    return tuple(linear_kernel(field, units, lambda x: lie_constraints(g, x)))


def in_lie_span(g: GroupSpec, field, fn):
    """Basis of {X in Lie(G) : fn(X) = 0} for a linear ``fn``."""
    return linear_kernel(field, list(lie_algebra_basis(g, field)), fn)


# ---------------------------------------------------------------------------
# representations


def _eval_group(word, g: Matrix, cache):
    key = ("g", word)
    if key in cache:
        return cache[key]
    tag = word[0]
    if tag == "std":
        out = g
    elif tag == "dual":
        out = g.inverse().T
    elif tag == "tensor":
        out = _eval_group(word[1], g, cache).kron(_eval_group(word[2], g, cache))
    elif tag == "sum":
        out = Matrix.block_diag([_eval_group(word[1], g, cache), _eval_group(word[2], g, cache)])
    elif tag == "sym":
        out = sym_power(_eval_group(word[2], g, cache), word[1])
    else:
        out = wedge_power(_eval_group(word[2], g, cache), word[1])
    cache[key] = out
    return out


def _eval_lie(word, x: Matrix, cache):
    key = ("l", word)
    if key in cache:
        return cache[key]
    tag = word[0]
    if tag == "std":
        out = x
    elif tag == "dual":
        out = -x.T
    elif tag == "tensor":
        out = _kron_sum(_eval_lie(word[1], x, cache), _eval_lie(word[2], x, cache))
    elif tag == "sum":
        out = Matrix.block_diag([_eval_lie(word[1], x, cache), _eval_lie(word[2], x, cache)])
    elif tag == "sym":
        out = sym_derivation(_eval_lie(word[2], x, cache), word[1])
    else:
        out = wedge_derivation(_eval_lie(word[2], x, cache), word[1])
    cache[key] = out
    return out


@dataclass(frozen=True)
class Rep:
    """r: G -> GL(dim) given by a construction word over the standard representation.

    Basis conventions: tensor products use lexicographic order on index pairs
    (Kronecker product); Sym^k uses sorted index tuples e_{i1}...e_{ik} in
    lexicographic order with no normalization; Λ^k uses strictly increasing
    tuples in lexicographic order.
    """

    source: GroupSpec
    word: tuple
    dim: int = dc_field(compare=False)

    @property
    def name(self) -> str:
        return word_str(self.word)

    def __call__(self, g: Matrix) -> Matrix:
        return self.group_action(g)

    def group_action(self, g: Matrix) -> Matrix:
        _check_size(self.source, g)
        return _eval_group(self.word, g, {})

    def lie_action(self, x: Matrix) -> Matrix:
        _check_size(self.source, x)
        return _eval_lie(self.word, x, {})

    def weights(self, eigs):
        """Eigenvalues of r(g) from the eigenvalues of g."""
        return word_weights(self.word, eigs)

    def __repr__(self):
        return f"Rep({self.name}, dim={self.dim})"


def build_rep(g: GroupSpec, word, max_degree: int = DEFAULT_MAX_DEGREE) -> Rep:
    if isinstance(word, str):
        word = parse_word(word)
    deg = word_degree(word)
    if deg > max_degree:
        raise DegreeBudgetExceeded(f"word {word_str(word)} has degree {deg} > {max_degree}")
    return Rep(g, word, word_dim(word, g.n))


def rep_family(g: GroupSpec, degree_bound: int):
    """std, dual, then for each 2 <= k <= degree_bound: Λ^k(std) (k <= n),
    Sym^k(std), and at k = 2 the pairwise tensors std⊗std, std⊗dual, dual⊗dual."""
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    words = [("std",), ("dual",)]
    for k in range(2, degree_bound + 1):
        if k <= g.n:
            words.append(("wedge", k, ("std",)))
        words.append(("sym", k, ("std",)))
        if k == 2:
            words += [("tensor", ("std",), ("std",)),
                      ("tensor", ("std",), ("dual",)),
                      ("tensor", ("dual",), ("dual",))]
    seen = []
    for w in words:
        if w not in seen:
            seen.append(w)
    return [Rep(g, w, word_dim(w, g.n)) for w in seen]


# ---------------------------------------------------------------------------
# random elements (tests, fixtures, CLI demos)


def _small(rng, lo=-2, hi=2):
    return rng.randint(lo, hi)


def random_lie_element(g: GroupSpec, field: NumberField, rng: random.Random, lo=-2, hi=2) -> Matrix:
    basis = lie_algebra_basis(g, field)
    return combine(field, list(basis), [field.from_rational(rng.randint(lo, hi)) for _ in basis])


def random_element(g: GroupSpec, field: NumberField, rng: random.Random) -> Matrix:
    """A random element of G(field) with small entries."""
    n = g.n
    v = g.variant
    ident = Matrix.identity(field, n)
    if v == "GL":
        while True:
            m = Matrix(field, [[_small(rng) for _ in range(n)] for _ in range(n)])
            if m.is_invertible():
                return m
    if v == "SL":
        m = ident
        for _ in range(2 * n):
            i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
            if n > 1:
                m = m @ (ident + Matrix.unit(field, n, i, j).scale(_small(rng)))
        if n > 1:
            t = rng.choice([1, 2, -1, 3])
            vals = [1] * n
            i, j = rng.sample(range(n), 2)
            vals[i], vals[j] = t, field.from_rational(t).inverse()
            m = m @ Matrix.diag(field, vals)
        return m
    if v in ("Sp", "SO", "O"):
        while True:
            x = random_lie_element(g, field, rng, -1, 1)
            a = ident + x
            if a.is_invertible():
                m = (ident - x) @ a.inverse()
                if v == "O" and rng.random() < 0.5:
                    m = m @ some_reflection(g, field)
                return m
    if v == "Product":
        return Matrix.block_diag([random_element(f, field, rng) for f in g.factors])
    # tensor stabilizer: products of exponentials of nilpotent Lie basis vectors
    m = ident
    for b in lie_algebra_basis(g, field):
        if b.is_nilpotent() and rng.random() < 0.7:
            m = m @ exp_nilpotent(b.scale(_small(rng, -1, 1)))
    return m


def some_reflection(g: GroupSpec, field):
    """Reflection in an anisotropic vector e_i or e_i + e_j (determinant -1, preserves B)."""
    b = _form(g, field)
    n = g.n
    for i in range(n):
        for j in range(i, n):
            e = [field.zero] * n
            e[i] = field.one
            e[j] = e[j] + field.one
            if not sum((x * y for x, y in zip(e, b.apply(e))), field.zero).is_zero():
                return reflection(b, e)
    raise FieldError("no anisotropic vector")


def reflection(b: Matrix, v) -> Matrix:
    """Orthogonal reflection x -> x - 2 B(x,v)/B(v,v) v."""
    field = b.field
    n = b.nrows
    bv = b.apply(v)
    q = sum((a * c for a, c in zip(v, bv)), field.zero)
    if q.is_zero():
        raise FieldError("cannot reflect in an isotropic vector")
    coef = field.from_rational(2) / q
    ident = Matrix.identity(field, n)
    outer = Matrix(field, [[vi * bj * coef for bj in bv] for vi in v])
    return ident - outer


def random_torus(g: GroupSpec, field: NumberField, rng: random.Random, values=(1, 2, 3, -1, -2, 4)):
    """A random element of the standard diagonal torus of G (w.r.t. the default forms)."""
    n = g.n
    v = g.variant
    pick = lambda: field(rng.choice(values))
    if v == "GL":
        return Matrix.diag(field, [pick() for _ in range(n)])
    if v == "SL":
        vals = [pick() for _ in range(n - 1)]
        prod = field.one
        for x in vals:
            prod = prod * x
        return Matrix.diag(field, vals + [prod.inverse()])
    if v == "Product":
        return Matrix.block_diag([random_torus(f, field, rng, values) for f in g.factors])
    h = n // 2
    if v == "Sp" and coerce_matrix(g.form, field) == standard_symplectic(n, field):
        vals = [pick() for _ in range(h)]
        return Matrix.diag(field, vals + [x.inverse() for x in vals])
    if v in ("SO", "O") and coerce_matrix(g.form, field) == split_orthogonal_form(n, field):
        vals = [pick() for _ in range(h)]
        return Matrix.diag(field, vals + [x.inverse() for x in vals] + [field.one] * (n % 2))
    raise NotImplementedError(f"no standard torus for {v} with this form")


def split_orthogonal_form(n: int, field: NumberField = QQ) -> Matrix:
    """B = [[0, I, 0], [I, 0, 0], [0, 0, 1]] (last block only for odd n)."""
    h = n // 2
    rows = [[0] * n for _ in range(n)]
    for i in range(h):
        rows[i][i + h] = 1
        rows[i + h][i] = 1
    if n % 2:
        rows[n - 1][n - 1] = 1
    return Matrix(field, rows)


__all__ = [
    "GroupSpec",
    "Rep",
    "Tensor",
    "build_rep",
    "contains",
    "in_lie_span",
    "lie_algebra_basis",
    "lie_constraints",
    "lie_contains",
    "parse_word",
    "random_element",
    "random_lie_element",
    "random_torus",
    "some_reflection",
    "reflection",
    "split_orthogonal_form",
    "rep_family",
    "standard_symplectic",
    "sym_power",
    "wedge_power",
    "word_dim",
    "word_str",
    "word_weights",
]
