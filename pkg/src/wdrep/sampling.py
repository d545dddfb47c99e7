"""Seeded generators of valid pairs, used by the test-suite and the CLI demos."""

from __future__ import annotations

import random

from .field import QQ, NumberField
from .groups import GroupSpec, in_lie_span, random_element, random_torus
from .matrix import Matrix, combine, exp_nilpotent, semisimple_part
from .wd import WDPair

DEFAULT_VALUES = (1, 2, 4, "1/2", -1, -2, 3)


def twisted_lie_space(group: GroupSpec, s: Matrix, q, field: NumberField):
    """Basis of {X in Lie(G) : s X = q X s}."""
    qf = field.from_rational(q) if not hasattr(q, "field") else q
    return in_lie_span(group, field, lambda x: s @ x - (x @ s).scale(qf))


def random_pair(group: GroupSpec, rng: random.Random, *, q=2, field: NumberField = QQ,
                values=DEFAULT_VALUES, urfs=True, conjugate=True, coeffs=(-2, -1, 1, 2),
                attempts=20, zero_rate=0.05) -> WDPair:
    """A random pair: torus element s, N from the q-twisted part of Lie(G), then a
    random conjugation.  A draw with N = 0 is kept with probability ``zero_rate``
    and otherwise resampled.  With urfs=False a commuting unipotent factor is
    multiplied into s whenever one of the sampled tori admits it."""
    qf = field.from_rational(q)
    for k in range(attempts):
        last = k == attempts - 1
        lam = field(rng.choice(values))
        palette = (lam, lam * qf, lam, lam * qf * qf, field(rng.choice(values)))
        s = random_torus(group, field, rng, palette)
        basis = twisted_lie_space(group, s, q, field)
        n = combine(field, basis, [field.from_rational(rng.choice((0,) + tuple(coeffs)))
                                   for _ in basis]) if basis else Matrix.zero(field, group.n)
        if n.is_zero() and not last and rng.random() >= zero_rate:
            continue
        if urfs:
            break
        cent = in_lie_span(group, field, lambda x: (s @ x - x @ s).hstack(n @ x - x @ n))
        if not cent:
            continue
        y = combine(field, cent, [field.from_rational(rng.randint(-2, 2)) for _ in cent])
        nil = y - semisimple_part(y)
        if not nil.is_zero():
            s = s @ exp_nilpotent(nil)
            break
    p = WDPair(group, s, n, q)
    if conjugate:
        g = random_element(group, field, rng)
        gi = g.inverse()
        p = WDPair(group, g @ p.s @ gi, g @ p.N @ gi, q)
    return p


__all__ = ["random_pair", "twisted_lie_space"]
