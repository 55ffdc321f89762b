"""Weak commutativity with roots of Dehn twists, on capped surfaces.

A root of the twist about a nonseparating curve ``c`` on ``S_g`` is
encoded by a cyclic action on the capped surface ``S_{g-1}`` with two
distinguished fixed points whose rotation angles add up to ``2*pi/n``.
A separating curve splits the capped surface into two components, each
carrying its own action.

The verdicts here are one-sided: ``No`` is a proof that the maps cannot
commute, while ``PassesNecessary`` only says that the capped classes
weakly commute.  Data sets do not record which cone point of a witness is
the distinguished one, so the alignment of the marked points is not
decided.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import InvalidDegrees, weakly_commute
from .arith import inverse
from .cyclic import DataSet, genus_of
from .roots import is_primitive


class BadIndices(ValueError):
    pass


class ComponentGenusMismatch(ValueError):
    pass


NO = "No"
PASSES = "PassesNecessary"


@dataclass(frozen=True)
class DehnVerdict:
    verdict: str
    reason: str

    def __bool__(self):
        return self.verdict == PASSES

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "reason": self.reason}


def _full_order_pair(d: DataSet, i: int):
    if not 0 <= i < len(d.cone_pairs):
        raise BadIndices(f"index {i} out of range for {d}")
    p = d.cone_pairs[i]
    if p.order != d.degree:
        raise BadIndices(f"cone pair {p} of {d} is not a fixed point")
    return p


def is_root_realizing(d: DataSet, i: int, j: int) -> bool:
    """Do the fixed points ``i`` and ``j`` have rotation angles summing to ``2*pi/n``?

    Indices refer to the canonical order of ``d.cone_pairs``.  The generator
    rotates by ``2*pi*c^{-1}/n`` around a fixed point with residue ``c``.

    >>> from ssc.cyclic import DataSet
    >>> is_root_realizing(DataSet(5, 0, 0, ((3, 5), (4, 5), (3, 5))), 0, 2)
    True
    """
    if i == j:
        raise BadIndices("the two distinguished points must differ")
    pi, pj = _full_order_pair(d, i), _full_order_pair(d, j)
    n = d.degree
    return (inverse(pi.c, n) + inverse(pj.c, n)) % n == 1 % n


def _capped_commute(a: DataSet, b: DataSet) -> bool:
    """Weak commutativity of two capped classes, in either degree order."""
    if b.degree % a.degree == 0:
        return bool(weakly_commute(a, b))
    if a.degree % b.degree == 0:
        return bool(weakly_commute(b, a))
    raise InvalidDegrees(f"neither of {a.degree} and {b.degree} divides the other")


def nonsep_root_commute(d_fhat: DataSet, i: int, j: int, d_ghat: DataSet) -> DehnVerdict:
    """Root of a nonseparating twist (capped class ``d_fhat``) against ``d_ghat``."""
    if not is_root_realizing(d_fhat, i, j):
        raise BadIndices(f"points {i}, {j} of {d_fhat} do not realize a root")
    if genus_of(d_ghat) != genus_of(d_fhat):
        raise ValueError("capped classes live on surfaces of different genus")
    if not _capped_commute(d_ghat, d_fhat):
        return DehnVerdict(NO, "the capped classes do not weakly commute")
    if d_ghat.degree >= 2 and is_primitive(d_fhat):
        return DehnVerdict(NO, "the capped root class is primitive")
    return DehnVerdict(PASSES, "the capped classes weakly commute")


def sep_root_commute(fhat, ghat=None, swap: bool = False) -> DehnVerdict:
    """Root of a separating twist with components ``fhat = (F1, F2)``.

    Either ``ghat = (G1, G2)`` preserves both components and each pair
    weakly commutes, or (``swap``) an involution exchanges two equal
    components.
    """
    f1, f2 = fhat
    g1, g2 = genus_of(f1), genus_of(f2)
    if swap and g1 != g2:
        raise ComponentGenusMismatch(f"components of genus {g1} and {g2} cannot be swapped")
    if ghat is not None:
        h1, h2 = ghat
        if (genus_of(h1), genus_of(h2)) != (g1, g2):
            raise ComponentGenusMismatch("component genera of the two maps differ")
        if _capped_commute(h1, f1) and _capped_commute(h2, f2):
            return DehnVerdict(PASSES, "both component pairs weakly commute")
    if g1 == g2 and f1 == f2 and (swap or ghat is None):
        return DehnVerdict(PASSES, "the two components carry conjugate actions")
    return DehnVerdict(NO, "no component-wise commuting pair and no swap")
