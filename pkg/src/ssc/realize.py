"""Combinatorial polygon models for three-cone-point cyclic actions.

A class ``(n, g0; (c1,n1), (c2,n2), (c3,n))`` is realized as the rotation
of a hyperbolic polygon whose boundary word is a product of ``n`` blocks,
one per rotation step.  Each block holds ``g0`` commutators ``Q_r`` and one
or two labelled sides.  Labelled sides are glued according to a shift
``z = m + q*j (mod n)`` with ``q = (n/n2) * c^{-1}`` and ``j = n2 - c2``,
where the residue ``c`` is a convention parameter.

With ``c = c3`` the gluing is always an involution; ``c = c2`` is kept as
an option because it fails that check for some classes (for example
``(10,0;(1,2),(1,5),(3,10))``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import inverse
from .cyclic import DataSet, validate


class NotEligible(ValueError):
    pass


class OrderMismatch(ValueError):
    pass


CONVENTIONS = ("c2", "c3")


@dataclass(frozen=True)
class PolygonSpec:
    sides: int
    rotation_step: int
    pairing: tuple  # (i, j): labelled side a_i is glued to a_j
    word_tokens: tuple
    convention: str

    @property
    def is_involution(self) -> bool:
        """Every labelled side is glued to exactly one other side."""
        sigma = {}
        for a, b in self.pairing:
            for x, y in ((a, b), (b, a)):
                if sigma.setdefault(x, y) != y:
                    return False
        labels = {int(t[1:]) for t in self.word_tokens if t.startswith("a")}
        return set(sigma) == labels and all(sigma[x] != x for x in sigma)

    def word(self) -> str:
        pairs = "".join(f"({a}~{b})" for a, b in self.pairing)
        return f"{' '.join(self.word_tokens)} | pairs: {pairs}"

    def to_json(self) -> dict:
        return {"sides": self.sides, "rotation_step": self.rotation_step,
                "pairing": [list(p) for p in self.pairing],
                "word": self.word(), "convention": self.convention,
                "involution": self.is_involution}


def polygon_spec(d: DataSet, convention: str = "c3") -> PolygonSpec:
    """Side count, boundary word and gluing of the polygon model of ``d``.

    >>> from ssc.cyclic import DataSet
    >>> p = polygon_spec(DataSet(4, 0, 0, ((1, 2), (3, 4), (3, 4))))
    >>> p.sides, p.word()
    (4, 'a1 a2 a3 a4 | pairs: (1~3)(2~4)(3~1)(4~2)')
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    pairs = d.cone_pairs
    n, g0 = d.degree, d.quotient_genus
    if len(pairs) != 3 or pairs[2].order != n:
        raise NotEligible(f"{d} does not have exactly three cone points, one of order {n}")
    report = validate(d)
    if not report.ok:
        raise NotEligible(f"{d} is not a data set: {report.failures}")
    (c1, n1), (c2, n2), (c3, _) = ((p.c, p.order) for p in pairs)
    star = c2 if convention == "c2" else c3
    q = (n // n2) * inverse(star, n2) % n
    j = n2 - c2
    wide = n1 != 2 and n2 != 2
    per_block = 2 if wide else 1
    tokens = []
    for r in range(1, n + 1):
        if g0 > 0:
            tokens.append(f"Q{r}")
        tokens.extend(f"a{per_block * (r - 1) + s}" for s in range(1, per_block + 1))
    pairing = []
    for m in range(n):
        z = (m + q * j) % n or n
        pairing.append((2 * m + 1, 2 * z) if wide else (m + 1, z))
    sides = 2 * n * (1 + 2 * g0) if wide else n * (1 + 4 * g0)
    return PolygonSpec(sides, sides // n, tuple(pairing), tuple(tokens), convention)


def angles_cancel(d: DataSet, i: int, j: int) -> bool:
    """Do cone points ``i`` and ``j`` (same order) carry opposite rotation angles?"""
    pi, pj = d.cone_pairs[i], d.cone_pairs[j]
    if pi.order != pj.order:
        raise OrderMismatch(f"orders {pi.order} and {pj.order} differ")
    q = pi.order
    return (inverse(pi.c, q) + inverse(pj.c, q)) % q == 0
