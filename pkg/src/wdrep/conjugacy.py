"""Equivalence of pairs: the GL_n normal form (q-chains with interval
multiplicities), G-conjugacy with witnesses, element-conjugacy across a family
of representations, and fields of definition."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import DimensionMismatch, NonSplitSpectrum, NotURFS, WDError
from .field import FieldElement, roots_in_field
from .groups import GroupSpec, Rep, contains, rep_family
from .matrix import Matrix, coerce_matrix
from .sl2 import graded_triple, imai_decompose, match_data
from .verdict import Verdict, equivalent, inequivalent, unknown
from .wd import WDPair, apply_conjugation, is_urfs, pushforward

DEFAULT_DEGREE = 3
DEFAULT_BUDGET = 2000


# ---------------------------------------------------------------------------
# chain invariant


@dataclass(frozen=True)
class Chain:
    """Eigenvalues lam, q lam, ..., q^k lam with eigenspace dims and
    multiplicities m[(i, j)] of the interval summands on positions i..j."""

    eigenvalues: tuple
    dims: tuple
    multiplicities: tuple  # sorted ((i, j), m) with m > 0

    @property
    def mult(self):
        return dict(self.multiplicities)

    def key(self):
        return tuple(e.sort_key() for e in self.eigenvalues)

    def map(self, fmap) -> Chain:
        return Chain(tuple(fmap(e) for e in self.eigenvalues), self.dims, self.multiplicities)

    def to_json(self):
        return {"eigenvalues": [e.to_json() for e in self.eigenvalues],
                "dims": list(self.dims),
                "intervals": [{"i": i, "j": j, "m": m} for (i, j), m in self.multiplicities]}

    def __str__(self):
        eig = ", ".join(str(e) for e in self.eigenvalues)
        ms = ", ".join(f"m[{i},{j}]={m}" for (i, j), m in self.multiplicities)
        return f"chain ({eig}): {ms}"


@dataclass(frozen=True)
class ChainInvariant:
    chains: tuple
    q: object = None

    def __eq__(self, other):
        if not isinstance(other, ChainInvariant):
            return NotImplemented
        return sorted(self.chains, key=Chain.key) == sorted(other.chains, key=Chain.key)

    def __hash__(self):
        return hash(tuple(sorted(self.chains, key=Chain.key)))

    def map(self, fmap) -> ChainInvariant:
        return ChainInvariant(tuple(sorted((c.map(fmap) for c in self.chains), key=Chain.key)), self.q)

    def to_json(self):
        return {"chains": [c.to_json() for c in self.chains]}

    def __str__(self):
        return "\n".join(str(c) for c in self.chains)


def _distinct(m: Matrix, hint=None):
    if hint is not None:
        eigs = list(dict.fromkeys(hint))
        return [e for e in eigs if not (m - Matrix.identity(m.field, m.nrows).scale(e)).is_invertible()]
    roots = roots_in_field(m.charpoly(), m.field)
    if len(roots) < m.nrows:
        raise NonSplitSpectrum("the spectrum of s does not split over the working field")
    return list(dict.fromkeys(roots))


def _chains_of(eigs, q):
    present = set(eigs)
    qf = q
    chains = []
    for lam in sorted(eigs, key=lambda e: e.sort_key()):
        if lam / qf in present:
            continue
        chain = [lam]
        while chain[-1] * qf in present:
            chain.append(chain[-1] * qf)
        chains.append(chain)
    return chains


def _eigenspace(s: Matrix, lam):
    return (s - Matrix.identity(s.field, s.nrows).scale(lam)).kernel()


def _rank(field, vecs):
    vecs = [v for v in vecs if any(not x.is_zero() for x in v)]
    if not vecs:
        return 0
    return Matrix.from_columns(field, vecs).rank()


def chain_invariant(p: WDPair, eigenvalues=None, check=True) -> ChainInvariant:
    """Complete GL_n-conjugacy invariant of a Frobenius-semisimple pair.

    ``eigenvalues`` may list candidate eigenvalues of s (a superset is fine),
    which skips root finding.
    """
    if check and not is_urfs(p):
        raise NotURFS("chain invariant needs a valid Frobenius-semisimple pair")
    field = p.field
    qf = field.from_rational(p.q)
    eigs = _distinct(p.s, eigenvalues)
    chains = []
    total = 0
    for chain in _chains_of(eigs, qf):
        spaces = [_eigenspace(p.s, lam) for lam in chain]
        dims = tuple(len(v) for v in spaces)
        total += sum(dims)
        k = len(chain) - 1
        r = {}
        for i in range(k + 1):
            imgs = spaces[i]
            r[(i, i)] = len(imgs)
            for j in range(i + 1, k + 1):
                imgs = [p.N.apply(v) for v in imgs]
                r[(i, j)] = _rank(field, imgs)
        get = lambda i, j: r.get((i, j), 0) if 0 <= i <= j <= k else 0
        mult = []
        for i in range(k + 1):
            for j in range(i, k + 1):
                m = get(i, j) - get(i - 1, j) - get(i, j + 1) + get(i - 1, j + 1)
                if m < 0:
                    raise WDError("negative interval multiplicity; N does not respect the grading")
                if m:
                    mult.append(((i, j), m))
        chains.append(Chain(tuple(chain), dims, tuple(mult)))
    if total != p.n:
        raise NonSplitSpectrum("the spectrum of s does not split over the working field")
    return ChainInvariant(tuple(sorted(chains, key=Chain.key)), p.q)


def _graded_basis(p: WDPair, inv: ChainInvariant):
    """Columns: for each chain, position i, length l, the strings w, Nw, ..., N^(l-1) w
    of a graded Jordan basis, in canonical order."""
    field = p.field
    n_mat = p.N
    cols = []
    for chain in inv.chains:
        k = len(chain.eigenvalues) - 1
        spaces = [_eigenspace(p.s, lam) for lam in chain.eigenvalues]

        def w_space(i, ell):
            # V_i ∩ ker N^ell
            if i < 0 or i > k or ell <= 0:
                return []
            basis = spaces[i]
            if ell > k - i:
                return list(basis)
            imgs = basis
            for _ in range(ell):
                imgs = [n_mat.apply(v) for v in imgs]
            coeffs = Matrix.from_columns(field, imgs).kernel()
            return [_comb(field, basis, c) for c in coeffs]

        for i in range(k + 1):
            for ell in range(1, k - i + 2):
                span = w_space(i, ell - 1) + [n_mat.apply(v) for v in w_space(i - 1, ell + 1)]
                tops = _extend(field, span, w_space(i, ell))
                want = chain.mult.get((i, i + ell - 1), 0)
                if len(tops) != want:
                    raise WDError("graded Jordan basis construction failed")
                for w in tops:
                    v = w
                    for _ in range(ell):
                        cols.append(v)
                        v = n_mat.apply(v)
    return Matrix.from_columns(field, cols)


def _comb(field, basis, coeffs):
    out = [field.zero] * len(basis[0])
    for c, v in zip(coeffs, basis):
        if not c.is_zero():
            out = [a + c * b for a, b in zip(out, v)]
    return out


def _extend(field, span_vecs, target_vecs):
    vecs = [v for v in span_vecs if any(not x.is_zero() for x in v)]
    start = len(vecs)
    vecs += list(target_vecs)
    if not vecs:
        return []
    _, pivots = Matrix.from_columns(field, vecs).rref()
    return [vecs[j] for j in pivots if j >= start]


def _check_comparable(p1: WDPair, p2: WDPair):
    if p1.n != p2.n:
        raise DimensionMismatch("pairs have different sizes")
    if p1.field != p2.field:
        raise WDError("pairs live over different fields")


def verify_witness(p1: WDPair, p2: WDPair, x: Matrix, group: GroupSpec | None = None) -> bool:
    """x p1 x^-1 = p2 exactly and x in G; x may live in an extension field."""
    group = group or p1.group
    if x.field != p1.field:
        emb = _find_embedding(p1.field, x.field)
        if emb is None:
            return False
        s1, n1, s2, n2 = emb(p1.s), emb(p1.N), emb(p2.s), emb(p2.N)
    else:
        s1, n1, s2, n2 = p1.s, p1.N, p2.s, p2.N
    if not x.is_invertible():
        return False
    return x @ s1 == s2 @ x and x @ n1 == n2 @ x and contains(group, x)


def gl_equivalent(p1: WDPair, p2: WDPair) -> Verdict:
    """GL_n-conjugacy of Frobenius-semisimple pairs via the chain invariant."""
    _check_comparable(p1, p2)
    if p1.q != p2.q:
        return inequivalent(reason="different q")
    for p in (p1, p2):
        if not is_urfs(p):
            raise NotURFS("both pairs must be valid and Frobenius-semisimple")
    g1 = WDPair(GroupSpec.GL(p1.n), p1.s, p1.N, p1.q)
    g2 = WDPair(GroupSpec.GL(p2.n), p2.s, p2.N, p2.q)
    inv1 = chain_invariant(g1, check=False)
    inv2 = chain_invariant(g2, check=False)
    if inv1 != inv2:
        return inequivalent(reason="chain invariants differ", invariant1=inv1.to_json(),
                            invariant2=inv2.to_json())
    b1 = _graded_basis(g1, inv1)
    b2 = _graded_basis(g2, inv2)
    x = b2 @ b1.inverse()
    if not (x @ p1.s == p2.s @ x and x @ p1.N == p2.N @ x):
        raise WDError("witness verification failed")
    return equivalent(x, invariant=inv1.to_json())


# ---------------------------------------------------------------------------
# G-equivalence


def _spectrum_via_weights(m: Matrix):
    roots = roots_in_field(m.charpoly(), m.field)
    return roots if len(roots) == m.nrows else None


def _multiset(vals):
    return sorted(v.sort_key() for v in vals)


def compare_in_family(group: GroupSpec, a: Matrix, b: Matrix, degree: int):
    """First Rep in rep_family(group, degree) with charpoly(r(a)) != charpoly(r(b)), else None.

    Uses eigenvalue weights when both spectra split, characteristic polynomials otherwise.
    """
    ea, eb = _spectrum_via_weights(a), _spectrum_via_weights(b)
    for r in rep_family(group, degree):
        if ea is not None and eb is not None:
            if _multiset(r.weights(ea)) != _multiset(r.weights(eb)):
                return r
        elif r.group_action(a).charpoly() != r.group_action(b).charpoly():
            return r
    return None


def g_equivalent(p1: WDPair, p2: WDPair, degree: int = DEFAULT_DEGREE,
                 budget: int = DEFAULT_BUDGET) -> Verdict:
    """G-conjugacy of Frobenius-semisimple pairs, with a witness or certificate."""
    _check_comparable(p1, p2)
    if p1.group != p2.group:
        raise WDError("pairs belong to different groups")
    group = p1.group
    if p1.q != p2.q:
        return inequivalent(reason="different q")
    for p in (p1, p2):
        if not is_urfs(p):
            raise NotURFS("both pairs must be valid and Frobenius-semisimple")
    if group.variant == "GL":
        return gl_equivalent(p1, p2)
    notes = []
    # (1) standard representation
    try:
        v = gl_equivalent(p1, p2)
        if v.inequivalent:
            v.certificate["separating_rep"] = "std"
            return v
    except NonSplitSpectrum:
        notes.append("std chain invariant skipped: spectrum does not split")
    try:
        t1, t2 = graded_triple(p1), graded_triple(p2)
        # (2)-(3) s' classes across the representation family
        d1, d2 = imai_decompose(p1, t1), imai_decompose(p2, t2)
        r = compare_in_family(group, d1.s_prime, d2.s_prime, degree)
        if r is not None:
            return inequivalent(reason="s' characteristic polynomials differ",
                                separating_rep=r.name, degree=degree)
        # (4) matched adapted bases
        v = match_data(group, (p1.s, t1.E, t1.H, t1.F), (p2.s, t2.E, t2.H, t2.F),
                       p1.field.from_rational(p1.q), budget=budget)
    except NonSplitSpectrum as exc:
        return unknown(str(exc) or "spectrum does not split over the working field")
    v.notes.extend(notes)
    if v.equivalent and not verify_witness(p1, p2, v.witness):
        return unknown("witness failed verification", notes=notes)
    return v


def _find_embedding(src, dst):
    """An embedding src -> dst, found as a root of src's minimal polynomial in dst."""
    from .extension import FieldMap

    if src.is_rational_field():
        return FieldMap(src, dst, dst.zero)
    f = [dst.from_rational(c) for c in src.minpoly]
    roots = roots_in_field(f, dst)
    return FieldMap(src, dst, roots[0]) if roots else None


# ---------------------------------------------------------------------------
# element conjugacy and fields of definition


def element_conjugate(p1: WDPair, p2: WDPair, degree_bound: int = 2):
    """(True, None) if every r in rep_family gives GL-equivalent pushforwards,
    else (False, first separating Rep)."""
    _check_comparable(p1, p2)
    e1 = _spectrum_via_weights(p1.s)
    e2 = _spectrum_via_weights(p2.s)
    for r in rep_family(p1.group, degree_bound):
        a, b = pushforward(p1, r), pushforward(p2, r)
        if e1 is not None and e2 is not None:
            i1 = chain_invariant(a, r.weights(e1), check=False)
            i2 = chain_invariant(b, r.weights(e2), check=False)
            if i1 != i2:
                return False, r
        elif not gl_equivalent(a, b).equivalent:
            return False, r
    return True, None


def images_element_conjugate(group: GroupSpec, images1, images2, degree_bound: int = 2):
    """Element-conjugacy of two homomorphisms given on all group elements: for
    each element, charpoly(r(x1)) = charpoly(r(x2)) for r in rep_family."""
    for idx, (a, b) in enumerate(zip(images1, images2)):
        r = compare_in_family(group, a, b, degree_bound)
        if r is not None:
            return False, (idx, r)
    return True, None


def class_defined_over(p: WDPair, automorphisms, degree: int = DEFAULT_DEGREE):
    """True/False, or None when a comparison was inconclusive."""
    inconclusive = False
    for sigma in automorphisms:
        sp = p.map_field(sigma)
        if p.group.variant == "GL":
            if chain_invariant(p) != chain_invariant(sp):
                return False
            continue
        v = g_equivalent(p, sp, degree)
        if v.inequivalent:
            return False
        if v.unknown:
            inconclusive = True
    return None if inconclusive else True


@dataclass
class EquivalenceClass:
    """A representative with its certified invariant and witnessed members."""

    representative: WDPair
    invariant: ChainInvariant | None = None
    members: list = dc_field(default_factory=list)

    def add(self, p: WDPair, degree: int = DEFAULT_DEGREE) -> Verdict:
        v = g_equivalent(self.representative, p, degree)
        if v.equivalent:
            self.members.append((p, v.witness))
        return v


__all__ = [
    "Chain",
    "ChainInvariant",
    "EquivalenceClass",
    "chain_invariant",
    "class_defined_over",
    "compare_in_family",
    "element_conjugate",
    "g_equivalent",
    "gl_equivalent",
    "images_element_conjugate",
    "verify_witness",
]
