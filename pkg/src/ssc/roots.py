"""Roots and primitivity of finite-order mapping classes.

A class ``F`` of order ``n`` has a root of degree ``m`` when ``F = F'^m``
for some ``F'``.  If ``F'`` has order ``k`` then ``F'^m`` has order
``k / gcd(k, m)``, so the search runs over every ``k`` up to the cyclic
bound ``4g+2`` with ``k / gcd(k, m) = n`` and every class of degree ``k``,
comparing powers.  A root with ``k = n`` only relabels the generator of the
same cyclic group and is reported but flagged as trivial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cyclic import DataSet, enumerate_cyclic, genus_of, power


@dataclass(frozen=True)
class Root:
    root: DataSet
    degree: int  # order of the root
    exact: bool  # False when only a free class with unknown rotation matched
    target_order: int

    @property
    def trivial(self) -> bool:
        return self.degree == self.target_order

    def to_json(self) -> dict:
        return {"root": str(self.root), "order": self.degree, "exact": self.exact,
                "trivial": self.trivial}


def root_orbifold_constraint(d_root: DataSet) -> bool:
    """A root of a free class cannot have a sphere as quotient orbifold."""
    return d_root.quotient_genus >= 1


def _match(candidate, target: DataSet):
    """``None`` if different, else whether the match is exact."""
    if not isinstance(candidate, DataSet) or not candidate.matches(target):
        return None
    if candidate.is_free and candidate.rotation != target.rotation:
        return False
    return True


def roots_of(d_f: DataSet, m: int, prune: bool = True) -> list:
    """All classes ``d'`` with ``power(d', m)`` equal to ``d_f``.

    ``prune`` skips sphere-quotient candidates when ``d_f`` is free, which
    never changes the answer.
    """
    n = d_f.degree
    if m < 1:
        raise ValueError("root degree must be positive")
    if m == 1:
        return [Root(d_f, n, True, n)]
    g = genus_of(d_f)
    out = []
    for k in range(n, 4 * g + 3):
        if k // math.gcd(k, m) != n:
            continue
        for cand in enumerate_cyclic(k, g):
            if prune and d_f.is_free and not root_orbifold_constraint(cand):
                continue
            exact = _match(power(cand, m), d_f)
            if exact is not None:
                out.append(Root(cand, k, exact, n))
    return out


@dataclass(frozen=True)
class Primitivity:
    primitive: bool
    degree: int | None = None  # smallest root degree m >= 2 with a nontrivial root
    witness: DataSet | None = None
    up_to_rotation: bool = False

    def __bool__(self):
        return self.primitive

    def to_json(self) -> dict:
        return {"primitive": self.primitive, "degree": self.degree,
                "witness": None if self.witness is None else str(self.witness),
                "up_to_rotation": self.up_to_rotation}


def is_primitive(d_f: DataSet) -> Primitivity:
    """Whether ``d_f`` has no root of order larger than its own.

    Root degrees ``m`` run over ``2 .. 4g+2``; beyond that every degree is
    congruent to a smaller one modulo the order of any candidate root.
    """
    g = genus_of(d_f)
    n = d_f.degree
    for m in range(2, 4 * g + 3):
        found = [r for r in roots_of(d_f, m) if r.degree > n]
        if found:
            exact = [r for r in found if r.exact]
            best = (exact or found)[0]
            return Primitivity(False, m, best.root, not exact)
    return Primitivity(True)


def root_signature_ok(d_root: DataSet, d_f: DataSet, m: int) -> bool:
    """Does every cone order of a degree-``m`` root lie in the admissible union?

    With ``n_j`` the cone orders of ``d_f`` (order ``n``) and ``m_i`` ranging
    over divisors of ``m``, an admissible order is some ``n_j``, some
    ``m_i`` prime to ``n``, a product ``n_j * m_i`` with ``m_i`` prime to
    ``n``, or ``n * m_i``.

    >>> from ssc.cyclic import DataSet
    >>> root_signature_ok(DataSet(6, 1, 0, ((1, 2), (1, 2))), DataSet(3, 2, None), 2)
    True
    """
    n = d_f.degree
    own = set(d_f.cone_orders)
    coprime = [d for d in range(2, m + 1) if m % d == 0 and math.gcd(d, n) == 1]
    allowed = own | set(coprime)
    allowed |= {a * b for a in own for b in coprime}
    allowed |= {n * d for d in range(2, m + 1) if m % d == 0}
    return all(t in allowed for t in d_root.cone_orders)
