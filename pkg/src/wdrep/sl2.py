"""sl2-triples through nilpotent elements, the decomposition s = t^H s'^-1 of a
Frobenius-semisimple pair, and conjugacy of triples inside classical groups.

Conjugacy is decided constructively.  For data (c, E, H, F) with
c E c^-1 = k E, c H = H c, c F c^-1 = k^-1 F, the space V splits into strings
w, Fw, ..., F^d w generated by highest-weight vectors w in
P(lam, d) = ker E ∩ ker(H - d) ∩ ker(c - lam).  Two such data sets are
G-conjugate iff the dimensions of the P(lam, d) agree and, for groups with a
form B, the induced pairings beta(w, w') = B(w, F^d w') are equivalent.  A
witness is obtained by matching adapted bases of the P(lam, d).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetExhausted, NonSplitSpectrum, NotNilpotent, NotURFS, WDError
from .extension import FieldMap, adjoin_root, adjoin_sqrt, identity_map
from .field import NumberField, is_square, rational, roots_in_field
from .groups import GroupSpec, contains, in_lie_span, lie_algebra_basis, lie_contains
from .matrix import Matrix, coerce_matrix, combine, flatten, linear_kernel
from .verdict import Verdict, equivalent, inequivalent, unknown
from .wd import WDPair, is_urfs


@dataclass(frozen=True)
class SL2Triple:
    E: Matrix
    H: Matrix
    F: Matrix

    def check(self) -> bool:
        e, h, f = self.E, self.H, self.F
        two = e.field.from_rational(2)
        return (h.commutator(e) == e.scale(two) and h.commutator(f) == f.scale(-two)
                and e.commutator(f) == h)

    def map(self, fmap) -> SL2Triple:
        return SL2Triple(fmap(self.E), fmap(self.H), fmap(self.F))

    def to_json(self):
        return {"E": self.E.to_json(), "H": self.H.to_json(), "F": self.F.to_json()}

    @staticmethod
    def from_json(data, field):
        return SL2Triple(*(Matrix.from_json(field, data[k]) for k in ("E", "H", "F")))


def zero_triple(field, n) -> SL2Triple:
    z = Matrix.zero(field, n)
    return SL2Triple(z, z, z)


# ---------------------------------------------------------------------------
# nilpotent Jordan bases


def nilpotent_strings(n_mat: Matrix):
    """Jordan strings of a nilpotent matrix: list of (w, length) with
    N^length w = 0 and w, Nw, ..., N^(length-1) w together forming a basis."""
    field = n_mat.field
    size = n_mat.nrows
    kernels = [[]]
    power = Matrix.identity(field, size)
    while len(kernels[-1]) < size:
        power = power @ n_mat
        kernels.append(power.kernel())
        if len(kernels) > size + 1:
            raise NotNilpotent("matrix is not nilpotent")
    top = len(kernels) - 1
    strings = []
    for ell in range(top, 0, -1):
        # W = ker N^(ell-1) + images of longer strings landing in ker N^ell
        w_vecs = list(kernels[ell - 1])
        for w, length in strings:
            v = w
            for _ in range(length - ell):
                v = n_mat.apply(v)
            w_vecs.append(v)
        new = _complement(field, w_vecs, kernels[ell])
        strings.extend((v, ell) for v in new)
    return strings


def _complement(field, span_vecs, target_vecs):
    """Vectors from ``target_vecs`` extending a basis of span(span_vecs) to span(all)."""
    vecs = list(span_vecs) + list(target_vecs)
    if not vecs:
        return []
    _, pivots = Matrix.from_columns(field, vecs).rref()
    return [vecs[j] for j in pivots if j >= len(span_vecs)]


def _standard_triple(n_mat: Matrix) -> SL2Triple:
    field = n_mat.field
    cols, hdiag, fcoef = [], [], []
    for w, ell in nilpotent_strings(n_mat):
        v = w
        start = len(cols)
        for j in range(ell):
            cols.append(v)
            hdiag.append(2 * j - ell + 1)
            fcoef.append((start + j, start + j - 1, j * (ell - j)) if j else None)
            v = n_mat.apply(v)
    size = n_mat.nrows
    p = Matrix.from_columns(field, cols)
    pinv = p.inverse()
    hc = Matrix.diag(field, hdiag)
    frows = [[0] * size for _ in range(size)]
    for entry in fcoef:
        if entry:
            col, row, val = entry
            frows[row][col] = val
    fc = Matrix(field, frows)
    return SL2Triple(n_mat, p @ hc @ pinv, p @ fc @ pinv)


def _triple_in_span(e: Matrix, space) -> SL2Triple | None:
    """Triple with H in [e, space] and F in space; ``space`` a list of matrices
    (a graded piece of Lie(G) of degree inverse to e)."""
    field = e.field
    if not space:
        return None
    two = field.from_rational(2)
    cols = [flatten(e.commutator(e.commutator(z))) for z in space]
    rhs = flatten(e.scale(-two))
    sol = Matrix.from_columns(field, cols).solve(rhs)
    if sol is None:
        return None
    z = combine(field, space, sol)
    h = e.commutator(z)
    cent = linear_kernel(field, space, lambda x: e.commutator(x))
    target = h.commutator(z) + z.scale(two)
    if target.is_zero() or not cent:
        u = Matrix.zero(field, e.nrows)
    else:
        cols = [flatten(h.commutator(x) + x.scale(two)) for x in cent]
        coeffs = Matrix.from_columns(field, cols).solve(flatten(target))
        if coeffs is None:
            return None
        u = combine(field, cent, coeffs)
    t = SL2Triple(e, h, z - u)
    return t if t.check() else None


def jacobson_morozov(n_mat: Matrix, group: GroupSpec | None = None) -> SL2Triple:
    """An sl2-triple (N, H, F) inside Lie(G)."""
    group = group or GroupSpec.GL(n_mat.nrows)
    if not lie_contains(group, n_mat):
        raise WDError("N is not in the Lie algebra of the group")
    if n_mat.is_zero():
        return zero_triple(n_mat.field, n_mat.nrows)
    if not n_mat.is_nilpotent():
        raise NotNilpotent("N is not nilpotent")
    t = _standard_triple(n_mat)
    if lie_contains(group, t.H) and lie_contains(group, t.F):
        return t
    t = _triple_in_span(n_mat, list(lie_algebra_basis(group, n_mat.field)))
    if t is None:
        raise WDError("no sl2-triple found in Lie(G)")
    return t


def graded_triple(p: WDPair) -> SL2Triple:
    """Triple (N, H, F) in Lie(G) with H commuting with s and s F s^-1 = q^-1 F."""
    field = p.field
    if p.N.is_zero():
        return zero_triple(field, p.n)
    s = p.s
    qinv = field.from_rational(1 / p.q)
    space = in_lie_span(p.group, field, lambda x: s @ x - (x @ s).scale(qinv))
    t = _triple_in_span(p.N, space)
    if t is None:
        raise WDError("no graded sl2-triple found")
    return t


# ---------------------------------------------------------------------------
# powers t^H


def integer_eigenspaces(h: Matrix):
    """{k: basis of ker(H - k)} for the integer eigenvalues of a semisimple H."""
    field = h.field
    n = h.nrows
    out = {}
    total = 0
    ident = Matrix.identity(field, n)
    for k in range(-(2 * n), 2 * n + 1):
        ker = (h - ident.scale(field.from_rational(k))).kernel()
        if ker:
            out[k] = ker
            total += len(ker)
        if total == n:
            break
    if total != n:
        raise NonSplitSpectrum("H is not diagonalizable with integer eigenvalues")
    return out


def t_power(h: Matrix, t) -> Matrix:
    """The semisimple matrix acting by t^k on the H = k eigenspace."""
    field = h.field
    spaces = integer_eigenspaces(h)
    cols, vals = [], []
    for k, vecs in sorted(spaces.items()):
        for v in vecs:
            cols.append(v)
            vals.append(t ** k)
    p = Matrix.from_columns(field, cols)
    return p @ Matrix.diag(field, vals) @ p.inverse()


# ---------------------------------------------------------------------------
# decomposition s = t^H s'^-1


@dataclass(frozen=True)
class ImaiData:
    """s = t^H s'^-1 with t = sqrt_q, s' commuting with (E, H, F); all over ``field``."""

    triple: SL2Triple
    s_prime: Matrix
    sqrt_q: object
    embed: FieldMap

    @property
    def field(self) -> NumberField:
        return self.s_prime.field

    def reconstruct_s(self) -> Matrix:
        return t_power(self.triple.H, self.sqrt_q) @ self.s_prime.inverse()

    def to_json(self):
        return {"triple": self.triple.to_json(), "s_prime": self.s_prime.to_json(),
                "sqrt_q": self.sqrt_q.to_json(), "field": self.field.to_json()}


def imai_decompose(p: WDPair, triple: SL2Triple | None = None) -> ImaiData:
    """``triple`` may pass a precomputed graded triple of p."""
    if not is_urfs(p):
        raise NotURFS("pair is not Frobenius-semisimple and valid")
    big, emb, t = adjoin_sqrt(p.field, p.q)
    triple = (triple or graded_triple(p)).map(emb)
    s = emb(p.s)
    if triple.E.is_zero():
        s_prime = s.inverse()
    else:
        s_prime = t_power(triple.H, t) @ s.inverse()
    return ImaiData(triple, s_prime, t, emb)


# ---------------------------------------------------------------------------
# matching adapted bases


def _form_sign(group: GroupSpec):
    if group.variant == "Sp":
        return -1
    if group.variant in ("SO", "O"):
        return 1
    return 0


def _distinct_eigenvalues(c: Matrix):
    roots = roots_in_field(c.charpoly(), c.field)
    if len(roots) < c.nrows:
        raise NonSplitSpectrum("spectrum does not split over the working field")
    return list(dict.fromkeys(roots))


def primitive_spaces(c, e, h, f=None):
    """{(lam, d): basis of ker E ∩ ker(H - d) ∩ ker(c - lam)} (nonzero ones only)."""
    field = c.field
    n = c.nrows
    ident = Matrix.identity(field, n)
    kere = e.kernel() if not e.is_zero() else [list(r) for r in ident.rows]
    out = {}
    if not kere:
        return out
    k = Matrix.from_columns(field, kere)
    # restrict c and H to ker E (stable under both)
    kc = _restrict(c, k)
    kh = _restrict(h, k)
    m = len(kere)
    kid = Matrix.identity(field, m)
    total = 0
    for lam in _distinct_eigenvalues(c):
        a = kc - kid.scale(lam)
        for d in range(0, n):
            sub = a.vstack(kh - kid.scale(field.from_rational(d))).kernel()
            if sub:
                out[(lam, d)] = [k.apply(v) for v in sub]
                total += len(sub) * (d + 1)
    if total != n:
        raise WDError("data does not define an sl2-module decomposition")
    return out


def _restrict(a: Matrix, basis: Matrix) -> Matrix:
    """Matrix of a on the column span of ``basis`` (assumed stable)."""
    img = a @ basis
    cols = []
    for col in img.columns():
        sol = basis.solve(col)
        if sol is None:
            raise WDError("subspace is not stable")
        cols.append(sol)
    return Matrix.from_columns(a.field, cols)


def _key_order(key):
    lam, d = key
    return (d, lam.sort_key())


def _strings(f, w, d):
    out = [w]
    for _ in range(d):
        out.append(f.apply(out[-1]))
    return out


class _Side:
    def __init__(self, c, e, h, f, form):
        self.c, self.e, self.h, self.f, self.form = c, e, h, f, form
        self.spaces = primitive_spaces(c, e, h, f)

    def beta(self, w, v, d):
        fv = v
        for _ in range(d):
            fv = self.f.apply(fv)
        bfv = self.form.apply(fv)
        return sum((a * b for a, b in zip(w, bfv)), self.c.field.zero)


def _dual_basis(side, basis, partner, d):
    field = side.c.field
    gram = Matrix(field, [[side.beta(w, b, d) for b in partner] for w in basis])
    m = gram.inverse()
    return [[sum((partner[j][r] * m[j, k] for j in range(len(partner))), field.zero)
             for r in range(len(partner[0]))] for k in range(len(basis))]


def _lin(field, vecs, coeffs):
    out = [field.zero] * len(vecs[0])
    for c, v in zip(coeffs, vecs):
        if not c.is_zero():
            out = [a + c * b for a, b in zip(out, v)]
    return out


def _symplectic_basis(side, vecs, d):
    field = side.c.field
    vecs = [list(v) for v in vecs]
    es, fs = [], []
    while vecs:
        x = vecs.pop(0)
        idx = next((i for i, y in enumerate(vecs) if not side.beta(x, y, d).is_zero()), None)
        if idx is None:
            raise WDError("degenerate alternating pairing")
        y = vecs.pop(idx)
        b = side.beta(x, y, d)
        y = [v / b for v in y]
        rest = []
        for v in vecs:
            a1, a2 = side.beta(v, y, d), side.beta(v, x, d)
            rest.append([vi - a1 * xi + a2 * yi for vi, xi, yi in zip(v, x, y)])
        vecs = rest
        es.append(x)
        fs.append(y)
    return es + fs


def _orthogonal_basis(side, vecs, d):
    """Basis diagonalizing the symmetric pairing; returns (basis, diagonal)."""
    vecs = [list(v) for v in vecs]
    basis, diag = [], []
    while vecs:
        idx = next((i for i, v in enumerate(vecs) if not side.beta(v, v, d).is_zero()), None)
        if idx is None:
            pair = next(((i, j) for i, j in itertools.combinations(range(len(vecs)), 2)
                         if not side.beta(vecs[i], vecs[j], d).is_zero()), None)
            if pair is None:
                raise WDError("degenerate symmetric pairing")
            i, j = pair
            vecs[i] = [a + b for a, b in zip(vecs[i], vecs[j])]
            idx = i
        v = vecs.pop(idx)
        a = side.beta(v, v, d)
        vecs = [[ui - (side.beta(u, v, d) / a) * vi for ui, vi in zip(u, v)] for u in vecs]
        basis.append(v)
        diag.append(a)
    return basis, diag


def _match_squares(avals, bvals):
    """Permutation pi of b so that many a_i / b_pi(i) are squares (greedy)."""
    remaining = list(range(len(bvals)))
    perm = []
    for a in avals:
        j = next((j for j in remaining if is_square(a / bvals[j])), remaining[0])
        remaining.remove(j)
        perm.append(j)
    return perm


def _map_vec(fmap, v):
    return [fmap(x) for x in v]


def match_data(group: GroupSpec, data1, data2, kappa, *, budget: int = 2000) -> Verdict:
    """Decide whether some g in G conjugates data1 = (c, E, H, F) to data2.

    ``kappa`` is the scalar with c E c^-1 = kappa E (1 for a centralizing c, q for
    the Frobenius itself).  Witnesses may live in an extension of the working field.
    """
    verdict, _ = _match(group, data1, data2, kappa, budget)
    return verdict


def _match(group, data1, data2, kappa, budget):
    field = data1[0].field
    if group.variant == "Product":
        return _match_product(group, data1, data2, kappa, budget)
    if group.variant == "TensorStabilizer":
        return _scan(group, data1, data2, budget), identity_map(field)
    eps = _form_sign(group)
    form = coerce_matrix(group.form, field) if eps else None
    s1 = _Side(*data1, form)
    s2 = _Side(*data2, form)
    dims1 = {k: len(v) for k, v in s1.spaces.items()}
    dims2 = {k: len(v) for k, v in s2.spaces.items()}
    if dims1 != dims2:
        return inequivalent(reason="highest-weight multiplicities differ",
                            side1=_dims_json(dims1), side2=_dims_json(dims2)), identity_map(field)
    keys = sorted(dims1, key=_key_order)
    bases1, bases2 = {}, {}
    sqrt_jobs = []  # (key, index, ratio) for symmetric blocks
    done = set()
    for key in keys:
        if key in done:
            continue
        lam, d = key
        if not eps:
            bases1[key], bases2[key] = s1.spaces[key], s2.spaces[key]
            done.add(key)
            continue
        partner = (kappa ** d / lam, d)
        if partner != key:
            if partner not in dims1:
                raise WDError("pairing partner missing; data not compatible with the form")
            for side, bases in ((s1, bases1), (s2, bases2)):
                b = side.spaces[key]
                bases[key] = b
                bases[partner] = _dual_basis(side, b, side.spaces[partner], d)
            done.update((key, partner))
            continue
        sym = eps * (-1) ** d
        if sym < 0:
            bases1[key] = _symplectic_basis(s1, s1.spaces[key], d)
            bases2[key] = _symplectic_basis(s2, s2.spaces[key], d)
        else:
            b1, a = _orthogonal_basis(s1, s1.spaces[key], d)
            b2, b = _orthogonal_basis(s2, s2.spaces[key], d)
            perm = _match_squares(a, b)
            b2 = [b2[j] for j in perm]
            b = [b[j] for j in perm]
            bases1[key], bases2[key] = b1, b2
            for i, (x, y) in enumerate(zip(a, b)):
                sqrt_jobs.append((key, i, x / y))
        done.add(key)

    # adjoin the square roots needed to match symmetric pairings
    emb = identity_map(field)
    cur = field
    for _, _, ratio in sqrt_jobs:
        r = emb(ratio)
        if not is_square(r):
            cur, e2, _ = adjoin_sqrt(cur, r)
            emb = e2.compose(emb)
    if cur != field:
        bases1 = {k: [_map_vec(emb, v) for v in vs] for k, vs in bases1.items()}
        bases2 = {k: [_map_vec(emb, v) for v in vs] for k, vs in bases2.items()}
    for key, i, ratio in sqrt_jobs:
        _, _, root = adjoin_sqrt(cur, emb(ratio))
        bases2[key][i] = [x * root for x in bases2[key][i]]

    f1 = emb(data1[3])
    f2 = emb(data2[3])
    cols1, cols2 = [], []
    layout = []
    for key in keys:
        d = key[1]
        for i, (w1, w2) in enumerate(zip(bases1[key], bases2[key])):
            layout.append((key, i, len(cols1)))
            cols1.extend(_strings(f1, w1, d))
            cols2.extend(_strings(f2, w2, d))
    b1 = Matrix.from_columns(cur, cols1)
    b2 = Matrix.from_columns(cur, cols2)
    x = b2 @ b1.inverse()

    cert = {}
    if group.variant == "SO" and x.det() != 1:
        flip = next(((key, i, off) for key, i, off in layout
                     if key[1] % 2 == 0 and key[0] ** 2 == kappa ** key[1]), None)
        if flip is None:
            return inequivalent(
                reason="every orthogonal conjugator has determinant -1: no self-dual "
                       "isotypic block of even highest weight",
                blocks=_dims_json(dims1)), emb
        key, i, off = flip
        for j in range(key[1] + 1):
            cols2[off + j] = [-v for v in cols2[off + j]]
        x = Matrix.from_columns(cur, cols2) @ b1.inverse()
        cert["determinant_fix"] = "negated one string of a self-dual even-weight block"
    if group.variant == "SL":
        det = x.det()
        if det != 1:
            key, i, off = min(layout, key=lambda t: t[0][1])
            d = key[1]
            cur2, e2, root = adjoin_root(cur, det.inverse(), d + 1)
            if cur2 != cur:
                emb = e2.compose(emb)
                cols2 = [_map_vec(e2, v) for v in cols2]
                b1 = e2(b1)
                cur = cur2
            for j in range(d + 1):
                cols2[off + j] = [v * root for v in cols2[off + j]]
            x = Matrix.from_columns(cur, cols2) @ b1.inverse()
    return equivalent(x, **cert), emb


def _dims_json(dims):
    return [{"eigenvalue": k[0].to_json(), "highest_weight": k[1], "multiplicity": v}
            for k, v in sorted(dims.items(), key=lambda kv: _key_order(kv[0]))]


def _match_product(group, data1, data2, kappa, budget):
    field = data1[0].field
    emb = identity_map(field)
    blocks = []
    off = 0
    for factor in group.factors:
        idx = list(range(off, off + factor.n))
        off += factor.n
        d1 = tuple(emb(m.submatrix(idx, idx)) for m in data1)
        d2 = tuple(emb(m.submatrix(idx, idx)) for m in data2)
        v, e2 = _match(factor, d1, d2, emb(kappa), budget)
        if not v.equivalent:
            v.certificate["factor"] = str(factor)
            return v, emb
        if e2.dst != e2.src:
            blocks = [e2(b) for b in blocks]
            emb = e2.compose(emb)
        blocks.append(v.witness)
    return equivalent(Matrix.block_diag(blocks)), emb


def _scan(group, data1, data2, budget):
    """Trial-point scan over the intertwiner space (groups without a structure theory here)."""
    field = data1[0].field
    n = group.n
    units = [Matrix.unit(field, n, i, j) for i in range(n) for j in range(n)]

    def eqs(x):
        out = []
        for a, b in zip(data1, data2):
            out.extend(flatten(x @ a - b @ x))
        return out

    space = linear_kernel(field, units, eqs)
    if not space:
        return inequivalent(reason="no nonzero linear intertwiner")
    trials = 0
    for radius in itertools.count(1):
        for coeffs in itertools.product(range(-radius, radius + 1), repeat=len(space)):
            if max(abs(c) for c in coeffs) != radius and radius > 1:
                continue
            trials += 1
            if trials > budget:
                return unknown("trial budget exhausted", trials=budget, intertwiner_dim=len(space))
            x = combine(field, space, [field.from_rational(c) for c in coeffs])
            if x.is_invertible() and contains(group, x):
                return equivalent(x, trials=trials)
        if radius > 64:
            return unknown("trial radius exhausted", trials=trials)


def triples_conjugate_in(group: GroupSpec, s_prime: Matrix, t1: SL2Triple, t2: SL2Triple,
                         budget: int = 2000) -> Verdict:
    """Is there g in Z_G(s') with g t1 g^-1 = t2?"""
    one = s_prime.field.one
    v = match_data(group, (s_prime, t1.E, t1.H, t1.F), (s_prime, t2.E, t2.H, t2.F), one,
                   budget=budget)
    if v.inequivalent:
        v.certificate["H_spectrum_1"] = _h_spectrum(t1.H)
        v.certificate["H_spectrum_2"] = _h_spectrum(t2.H)
    if v.kind == "Unknown" and budget <= 0:
        raise BudgetExhausted(v.certificate.get("reason", "budget exhausted"))
    return v


def _h_spectrum(h):
    spaces = integer_eigenspaces(h)
    return sorted((k for k, vs in spaces.items() for _ in vs), reverse=True)


__all__ = [
    "ImaiData",
    "SL2Triple",
    "graded_triple",
    "imai_decompose",
    "integer_eigenspaces",
    "jacobson_morozov",
    "match_data",
    "nilpotent_strings",
    "primitive_spaces",
    "t_power",
    "triples_conjugate_in",
    "zero_triple",
]
