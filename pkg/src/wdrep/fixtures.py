"""Concrete instances: the rank-2 Tate pair and an SO(6) pair that is
element-conjugate without being globally conjugate.

The SO(6) pair is found by enumerating homomorphisms Z/4 x Z/4 -> SO(6) over
Q(i) through their eigenvalue characters.  A frozen copy lives in
data/so6_counterexample.json together with its certificates.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from importlib import resources

from .errors import NotFound, WDError
from .extension import adjoin_sqrt, identity_map
from .field import QQ, NumberField, gaussian_field, is_square, roots_in_field
from .groups import GroupSpec, contains
from .matrix import Matrix, coerce_matrix
from .sl2 import _dual_basis, _match_squares, _orthogonal_basis, _symplectic_basis
from .verdict import Verdict, equivalent, inequivalent
from .wd import WDPair

# ---------------------------------------------------------------------------
# Tate pair


def tate_pair(q=2) -> WDPair:
    """(GL(2), diag(1, q), E21, q): N sends the 1-eigenline to the q-eigenline."""
    q = int(q)
    if q < 2:
        raise WDError("q must be at least 2")
    s = Matrix.diag(QQ, [1, q])
    return WDPair(GroupSpec.GL(2), s, Matrix.unit(QQ, 2, 1, 0), q)


# ---------------------------------------------------------------------------
# finite-image homomorphisms


@dataclass(frozen=True)
class FiniteImagePair:
    """Images of the generators of a finite group; relations are words given as
    lists of (generator index, exponent) that must evaluate to I."""

    group: GroupSpec
    generators: tuple
    relations: tuple

    @property
    def field(self) -> NumberField:
        return self.generators[0].field

    def evaluate(self, word) -> Matrix:
        field = self.field
        out = Matrix.identity(field, self.group.n)
        for idx, exp in word:
            g = self.generators[idx]
            out = out @ (g ** exp if exp >= 0 else g.inverse() ** (-exp))
        return out

    def check(self) -> bool:
        return (all(contains(self.group, g) for g in self.generators)
                and all(self.evaluate(w).is_identity() for w in self.relations))

    def conjugate(self, g: Matrix) -> FiniteImagePair:
        gi = g.inverse()
        return FiniteImagePair(self.group, tuple(g @ a @ gi for a in self.generators), self.relations)

    def to_json(self):
        out = {"group": self.group.to_json(),
               "generators": [g.to_json() for g in self.generators],
               "relations": [[list(t) for t in w] for w in self.relations]}
        if not self.field.is_rational_field():
            out["field"] = self.field.to_json()
        return out

    @staticmethod
    def from_json(data, field: NumberField | None = None) -> FiniteImagePair:
        if field is None:
            field = NumberField.from_json(data["field"]) if "field" in data else QQ
        gens = tuple(Matrix.from_json(field, g) for g in data["generators"])
        rels = tuple(tuple((int(i), int(e)) for i, e in w) for w in data["relations"])
        return FiniteImagePair(GroupSpec.from_json(data["group"], field), gens, rels)


def abelian_relations(orders):
    """g_i^{n_i} = 1 and commutators of all generator pairs."""
    rels = [((i, n),) for i, n in enumerate(orders)]
    for i, j in itertools.combinations(range(len(orders)), 2):
        rels.append(((i, 1), (j, 1), (i, -1), (j, -1)))
    return tuple(rels)


def all_elements(pair: FiniteImagePair, orders):
    """Images of g_0^{a_0} ... g_k^{a_k} over the full exponent box (abelian groups)."""
    out = []
    for exps in itertools.product(*(range(n) for n in orders)):
        out.append((exps, pair.evaluate([(i, e) for i, e in enumerate(exps)])))
    return out


# ---------------------------------------------------------------------------
# conjugacy of commuting semisimple families


class _FormSide:
    def __init__(self, field, form):
        self.field = field
        self.form = form

    def beta(self, w, v, d=0):
        bv = self.form.apply(v)
        return sum((a * b for a, b in zip(w, bv)), self.field.zero)


class _FieldHolder:
    def __init__(self, field):
        self.field = field


def joint_eigenspaces(gens):
    """{tuple of eigenvalues: basis of the joint eigenspace}; spectra must split."""
    field = gens[0].field
    n = gens[0].nrows
    spectra = []
    for g in gens:
        roots = roots_in_field(g.charpoly(), field)
        if len(roots) < n:
            raise WDError("generator spectrum does not split over the working field")
        spectra.append(list(dict.fromkeys(roots)))
    ident = Matrix.identity(field, n)
    out = {}
    for key in itertools.product(*spectra):
        stacked = gens[0] - ident.scale(key[0])
        for g, lam in zip(gens[1:], key[1:]):
            stacked = stacked.vstack(g - ident.scale(lam))
        ker = stacked.kernel()
        if ker:
            out[key] = ker
    if sum(len(v) for v in out.values()) != n:
        raise WDError("generators are not simultaneously diagonalizable")
    return out


def _key_json(key):
    return [lam.to_json() for lam in key]


def commuting_conjugate(group: GroupSpec, gens1, gens2) -> Verdict:
    """Is there x in G with x a_i x^-1 = b_i for commuting semisimple a_i, b_i?

    Handles GL, O, SO and Sp.  Witnesses may need square roots adjoined.
    """
    if group.variant not in ("GL", "O", "SO", "Sp"):
        raise WDError(f"commuting_conjugate does not handle {group.variant}")
    field = gens1[0].field
    gens2 = [coerce_matrix(g, field) for g in gens2]
    sp1, sp2 = joint_eigenspaces(list(gens1)), joint_eigenspaces(gens2)
    dims1 = {k: len(v) for k, v in sp1.items()}
    dims2 = {k: len(v) for k, v in sp2.items()}
    if dims1 != dims2:
        return inequivalent(reason="joint eigenvalue multiplicities differ",
                            side1=_dims_json(dims1), side2=_dims_json(dims2))
    keys = sorted(dims1, key=_kord)
    eps = {"Sp": -1, "O": 1, "SO": 1}.get(group.variant, 0)
    bases1, bases2, sqrt_jobs, done = {}, {}, [], set()
    if eps:
        side = _FormSide(field, coerce_matrix(group.form, field))
        holder = _FieldHolder(field)
    self_dual = []
    for key in keys:
        if key in done:
            continue
        if not eps:
            bases1[key], bases2[key] = sp1[key], sp2[key]
            done.add(key)
            continue
        partner = tuple(lam.inverse() for lam in key)
        if partner != key:
            bases1[key], bases2[key] = sp1[key], sp2[key]
            bases1[partner] = _dual_basis(_Adapter(side, holder), sp1[key], sp1[partner], 0)
            bases2[partner] = _dual_basis(_Adapter(side, holder), sp2[key], sp2[partner], 0)
            done.update((key, partner))
            continue
        self_dual.append(key)
        ad = _Adapter(side, holder)
        if eps < 0:
            bases1[key] = _symplectic_basis(ad, sp1[key], 0)
            bases2[key] = _symplectic_basis(ad, sp2[key], 0)
        else:
            b1, a = _orthogonal_basis(ad, sp1[key], 0)
            b2, b = _orthogonal_basis(ad, sp2[key], 0)
            perm = _match_squares(a, b)
            bases1[key] = b1
            bases2[key] = [b2[j] for j in perm]
            sqrt_jobs.extend((key, i, x / b[j]) for i, (x, j) in enumerate(zip(a, perm)))
        done.add(key)

    emb = identity_map(field)
    cur = field
    for _, _, ratio in sqrt_jobs:
        r = emb(ratio)
        if not is_square(r):
            cur, e2, _ = adjoin_sqrt(cur, r)
            emb = e2.compose(emb)
    if cur != field:
        bases1 = {k: [[emb(x) for x in v] for v in vs] for k, vs in bases1.items()}
        bases2 = {k: [[emb(x) for x in v] for v in vs] for k, vs in bases2.items()}
    for key, i, ratio in sqrt_jobs:
        _, _, root = adjoin_sqrt(cur, emb(ratio))
        bases2[key][i] = [x * root for x in bases2[key][i]]

    cols1 = [v for k in keys for v in bases1[k]]
    cols2 = [v for k in keys for v in bases2[k]]
    b1 = Matrix.from_columns(cur, cols1)
    x = Matrix.from_columns(cur, cols2) @ b1.inverse()
    cert = {}
    if group.variant == "SO" and x.det() != 1:
        if not self_dual:
            return inequivalent(
                reason="no self-dual joint eigenspace, so the orthogonal centralizer lies in SO "
                       "and every orthogonal conjugator has determinant -1",
                orthogonal_conjugator_det=-1,
                blocks=_dims_json(dims1))
        key = self_dual[0]
        j = sum(dims1[k] for k in keys[:keys.index(key)])
        cols2[j] = [-v for v in cols2[j]]
        x = Matrix.from_columns(cur, cols2) @ b1.inverse()
        cert["determinant_fix"] = "negated one vector of a self-dual joint eigenspace"
    return equivalent(x, **cert)


class _Adapter:
    """Lets the string-matching helpers work with d = 0 (no nilpotent part)."""

    def __init__(self, side, holder):
        self.side = side
        self.c = holder

    def beta(self, w, v, d=0):
        return self.side.beta(w, v)


def _dims_json(dims):
    return [[_key_json(k), dims[k]] for k in sorted(dims, key=_kord)]


def _kord(key):
    return tuple(lam.sort_key() for lam in key)


def verify_conjugator(group: GroupSpec, gens1, gens2, x: Matrix) -> bool:
    field = x.field
    from .conjugacy import _find_embedding

    emb = _find_embedding(gens1[0].field, field)
    if emb is None or not x.is_invertible():
        return False
    xi = x.inverse()
    grp = group if field == gens1[0].field else GroupSpec.from_json(group.to_json(), field)
    return contains(grp, x) and all(x @ emb(a) @ xi == emb(coerce_matrix(b, gens1[0].field))
                                    for a, b in zip(gens1, gens2))


# ---------------------------------------------------------------------------
# the SO(6) search


_ORDERS = (4, 4)


def _rotation_power(field, k):
    r = Matrix(field, [[0, -1], [1, 0]])
    return r ** (k % 4)


def so6_from_characters(chars, field: NumberField | None = None) -> FiniteImagePair:
    """chars: three pairs (a, b) in (Z/4)^2; generator j acts on plane k by the
    rotation R^{chars[k][j]}, R the quarter turn (eigenvalues i^{+-chars})."""
    field = field or gaussian_field()
    group = GroupSpec.SO(6, field=field)
    gens = []
    for j in range(2):
        gens.append(Matrix.block_diag([_rotation_power(field, c[j]) for c in chars]))
    return FiniteImagePair(group, tuple(gens), abelian_relations(_ORDERS))


def _orthogonal_reflection(field):
    return Matrix.diag(field, [1, 1, 1, 1, 1, -1])


def _character_candidates():
    """Triples of characters up to inversion, self-dual ones included, in a fixed order."""
    chars = [(a, b) for a in range(4) for b in range(4)]
    reps = []
    for c in chars:
        inv = ((-c[0]) % 4, (-c[1]) % 4)
        if inv not in reps:
            reps.append(c)
    return list(itertools.combinations_with_replacement(reps, 3))


def certify_so6_pair(rho1: FiniteImagePair, rho2: FiniteImagePair, degree_bound: int = 2):
    """(ok, certificates): element-conjugate at ``degree_bound`` with per-element SO
    witnesses, and globally SO-inequivalent with an O-conjugator of det -1."""
    from .conjugacy import images_element_conjugate

    cert = {}
    if not (rho1.check() and rho2.check()):
        return False, {"reason": "relations or membership fail"}
    elts1 = all_elements(rho1, _ORDERS)
    elts2 = all_elements(rho2, _ORDERS)
    same, where = images_element_conjugate(rho1.group, [m for _, m in elts1],
                                           [m for _, m in elts2], degree_bound)
    if not same:
        return False, {"reason": "separated", "element": list(elts1[where[0]][0]), "rep": where[1].name}
    cert["element_conjugate"] = {"degree_bound": degree_bound, "elements_checked": len(elts1)}
    witnesses = []
    for (exps, a), (_, b) in zip(elts1, elts2):
        v = commuting_conjugate(rho1.group, [a], [b])
        if not v.equivalent or not verify_conjugator(rho1.group, [a], [b], v.witness):
            return False, {"reason": "element not SO-conjugate", "element": list(exps)}
        witnesses.append({"element": list(exps), "witness": v.witness.to_json()})
    cert["element_witnesses"] = witnesses
    glob = commuting_conjugate(rho1.group, list(rho1.generators), list(rho2.generators))
    if not glob.inequivalent:
        return False, {"reason": "globally SO-conjugate"}
    o_group = GroupSpec.O(6, field=rho1.field)
    ov = commuting_conjugate(o_group, list(rho1.generators), list(rho2.generators))
    if not ov.equivalent or not verify_conjugator(o_group, rho1.generators, rho2.generators, ov.witness):
        return False, {"reason": "no orthogonal conjugator"}
    if ov.witness.det() != -ov.witness.field.one:
        return False, {"reason": "orthogonal conjugator has det 1"}
    if not _centralizer_in_so(rho1):
        return False, {"reason": "orthogonal centralizer meets det -1"}
    cert["global"] = glob.to_json()
    cert["orthogonal_conjugator"] = ov.witness.to_json()
    return True, cert


def _centralizer_in_so(rho: FiniteImagePair) -> bool:
    """The O-centralizer of a commuting semisimple family lies in SO when no joint
    eigenspace is self-dual: it acts as (A, A^-T) on each dual pair."""
    spaces = joint_eigenspaces(list(rho.generators))
    return all(tuple(lam.inverse() for lam in key) != key for key in spaces)


def so6_counterexample_search(budget: int = 1000, degree_bound: int = 2):
    """First candidate (in enumeration order) whose O-conjugate by diag(1,..,1,-1)
    is element-conjugate but not SO-conjugate.  Returns (rho1, rho2, certificates)."""
    field = gaussian_field()
    g = _orthogonal_reflection(field)
    for idx, chars in enumerate(_character_candidates()):
        if idx >= budget:
            break
        rho1 = so6_from_characters(chars, field)
        if not rho1.check() or not _centralizer_in_so(rho1):
            continue
        rho2 = rho1.conjugate(g)
        ok, cert = certify_so6_pair(rho1, rho2, degree_bound)
        if ok:
            cert["candidate_index"] = idx
            cert["characters"] = [list(c) for c in chars]
            return rho1, rho2, cert
    raise NotFound(f"no counterexample among the first {budget} candidates")


GOLDEN_SO6 = "so6_counterexample.json"


def golden_path(name: str):
    return resources.files("wdrep").joinpath("data").joinpath(name)


def freeze_so6(rho1, rho2, cert):
    return {"rho1": rho1.to_json(), "rho2": rho2.to_json(), "certificates": cert}


def load_golden_so6():
    data = json.loads(golden_path(GOLDEN_SO6).read_text())
    return (FiniteImagePair.from_json(data["rho1"]), FiniteImagePair.from_json(data["rho2"]),
            data["certificates"])


def reverify_golden_so6(degree_bound: int = 2):
    """Re-check the frozen pair: stored witnesses verify, element conjugacy at the
    degree bound, and the determinant obstruction to global SO-conjugacy."""
    rho1, rho2, stored = load_golden_so6()
    field = rho1.field
    group = rho1.group
    elts1 = dict(all_elements(rho1, _ORDERS))
    elts2 = dict(all_elements(rho2, _ORDERS))
    for w in stored["element_witnesses"]:
        exps = tuple(w["element"])
        x = Matrix.from_json(field, w["witness"])
        if not verify_conjugator(group, [elts1[exps]], [elts2[exps]], x):
            return False
    from .conjugacy import images_element_conjugate

    same, _ = images_element_conjugate(group, list(elts1.values()), list(elts2.values()), degree_bound)
    g = Matrix.from_json(field, stored["orthogonal_conjugator"])
    o_group = GroupSpec.O(6, field=field)
    return (same and verify_conjugator(o_group, rho1.generators, rho2.generators, g)
            and g.det() == -field.one and _centralizer_in_so(rho1)
            and commuting_conjugate(group, list(rho1.generators), list(rho2.generators)).inequivalent)


__all__ = [
    "FiniteImagePair",
    "abelian_relations",
    "all_elements",
    "certify_so6_pair",
    "commuting_conjugate",
    "freeze_so6",
    "joint_eigenspaces",
    "load_golden_so6",
    "reverify_golden_so6",
    "so6_counterexample_search",
    "so6_from_characters",
    "tate_pair",
    "verify_conjugator",
]
