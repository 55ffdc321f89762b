"""Data sets: integer encodings of conjugacy classes of cyclic actions.

A data set ``(n, g0, r; (c_1,n_1), ..., (c_l,n_l))`` describes a
``Z_n``-action on a closed surface.  The quotient orbifold has genus ``g0``
and one cone point of order ``n_i`` per pair; around the ``n/n_i`` lifts of
that cone point the generator rotates by ``2*pi*c_i^{-1}/n_i``.  When there
are no cone points the action is free and ``r`` records the rotation.

A free class whose rotation residue is not known (for instance a free
power of a non-free action) carries ``rotation=None``; such wildcards
compare equal to any free class of the same degree and quotient genus
through :meth:`DataSet.matches`.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product

from .arith import (
    cyclic_subgroup,
    divisors,
    element_order,
    inverse,
    lcm,
    scale,
    units,
)


class NonIntegerGenus(ValueError):
    pass


@dataclass(frozen=True)
class ConePair:
    c: int
    order: int

    @property
    def key(self):
        return (self.order, self.c)

    def __str__(self):
        return f"({self.c},{self.order})"


@dataclass(frozen=True)
class OrbifoldSignature:
    genus: int
    cone_orders: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "cone_orders", tuple(sorted(self.cone_orders)))

    def __str__(self):
        return f"({self.genus};{','.join(map(str, self.cone_orders))})"


class _Trivial:
    """The identity map: what a power of exponent divisible by ``n`` gives."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TrivialAction"

    def __reduce__(self):
        return (_Trivial, ())


TrivialAction = _Trivial()


def _as_pair(p) -> ConePair:
    if isinstance(p, ConePair):
        return p
    c, order = p
    return ConePair(int(c), int(order))


@dataclass(frozen=True)
class DataSet:
    degree: int
    quotient_genus: int
    rotation: int | None = 0
    cone_pairs: tuple = field(default=())

    def __post_init__(self):
        pairs = tuple(sorted((_as_pair(p) for p in self.cone_pairs), key=lambda p: p.key))
        object.__setattr__(self, "cone_pairs", pairs)

    @classmethod
    def free(cls, degree, quotient_genus, rotation=None):
        return cls(degree, quotient_genus, rotation, ())

    @property
    def is_free(self) -> bool:
        return not self.cone_pairs

    @property
    def genus(self) -> int:
        return genus_of(self)

    @property
    def cone_orders(self) -> tuple:
        return tuple(p.order for p in self.cone_pairs)

    def multiplicities(self) -> list:
        """``[(ConePair, count), ...]`` in canonical order."""
        return list(Counter(self.cone_pairs).items())

    def stabilizers(self) -> list:
        """Images ``(n/n_i)*c_i`` in ``Z_n`` of the elliptic generators."""
        n = self.degree
        return [((n // p.order) * p.c % n,) for p in self.cone_pairs]

    def sort_key(self):
        r = -1 if self.rotation is None else self.rotation
        return (self.degree, self.quotient_genus, r, tuple(p.key for p in self.cone_pairs))

    def matches(self, other) -> bool:
        """Equality, except that free classes ignore the rotation residue."""
        if not isinstance(other, DataSet):
            return False
        if self.is_free and other.is_free:
            return (self.degree, self.quotient_genus) == (other.degree, other.quotient_genus)
        return self == other

    def __str__(self):
        return format_dataset(self)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "quotient_genus": self.quotient_genus,
            "rotation": self.rotation,
            "cone_pairs": [[p.c, p.order] for p in self.cone_pairs],
        }

    @classmethod
    def from_json(cls, obj) -> "DataSet":
        return cls(obj["degree"], obj["quotient_genus"], obj.get("rotation", 0),
                   tuple(tuple(p) for p in obj["cone_pairs"]))


def format_dataset(d: DataSet) -> str:
    """Canonical whitespace-free text form, e.g. ``(6,0;((1,6),2),(2,3))``."""
    if d.is_free:
        r = "*" if d.rotation is None else str(d.rotation)
        return f"({d.degree},{d.quotient_genus},{r};)"
    parts = []
    for p, k in d.multiplicities():
        parts.append(f"({p},{k})" if k > 1 else str(p))
    return f"({d.degree},{d.quotient_genus};{','.join(parts)})"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple = ()
    genus: int | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": [list(f) for f in self.failures], "genus": self.genus}


def genus_of(d: DataSet) -> int:
    """Genus of the surface acted on, from the Riemann-Hurwitz formula."""
    n = d.degree
    chi = n * (2 - 2 * d.quotient_genus) + sum(Fraction(n, o) - n for o in d.cone_orders)
    g = Fraction(2 - chi, 2)
    if g.denominator != 1:
        raise NonIntegerGenus(f"{format_dataset(d)} has genus {g}")
    return int(g)


def validate(d: DataSet, min_genus: int = 1) -> ValidationReport:
    """Check the defining conditions of a data set.

    Failures are reported as ``(condition, message)`` tuples with the
    condition named ``i`` to ``v`` or ``genus``.  ``min_genus`` defaults to
    one; induced actions on quotient orbifolds may live on spheres and are
    validated with ``min_genus=0``.
    """
    n = d.degree
    fails = []
    if n < 2 or d.quotient_genus < 0:
        fails.append(("range", "need degree >= 2 and quotient genus >= 0"))
        return ValidationReport(False, tuple(fails))
    pairs = d.cone_pairs
    r = d.rotation
    if pairs:
        if r not in (0, None):
            fails.append(("i", "rotation must be 0 when there are cone points"))
    else:
        if r is not None and not (0 < r < n and math.gcd(r, n) == 1):
            fails.append(("i", f"free rotation {r} must be a unit modulo {n}"))
    if any(p.order < 2 or n % p.order for p in pairs):
        fails.append(("ii", "every cone order must be >= 2 and divide the degree"))
    if any(not (1 <= p.c < p.order) or math.gcd(p.c, p.order) != 1 for p in pairs if p.order >= 2):
        fails.append(("iii", "every residue must be a unit modulo its cone order"))
    orders = d.cone_orders
    N = lcm(*orders)
    if any(lcm(*(orders[:i] + orders[i + 1:])) != N for i in range(len(orders))):
        fails.append(("iv", "lcm of cone orders drops when a cone point is removed"))
    if d.quotient_genus == 0 and N != n:
        fails.append(("iv", f"quotient is a sphere but lcm of cone orders is {N}"))
    if sum((n // p.order) * p.c for p in pairs if p.order and n % p.order == 0) % n:
        fails.append(("v", "sum of (n/n_i)*c_i is not 0 modulo n"))
    genus = None
    if not any(f[0] == "ii" for f in fails):
        try:
            genus = genus_of(d)
        except NonIntegerGenus as exc:
            fails.append(("genus", str(exc)))
        else:
            if genus < min_genus:
                fails.append(("genus", f"genus {genus} < {min_genus}"))
    return ValidationReport(not fails, tuple(fails), genus)


def signature_of(d: DataSet) -> OrbifoldSignature:
    return OrbifoldSignature(d.quotient_genus, d.cone_orders)


# --- enumeration -------------------------------------------------------------

def _workers() -> int:
    try:
        return max(1, int(os.environ.get("SSC_THREADS", "1")))
    except ValueError:
        return 1


def _order_multisets(choices, target: Fraction, start=0):
    """Nondecreasing tuples from ``choices`` with sum of ``1 - 1/o`` = target."""
    if target == 0:
        yield ()
        return
    if target < Fraction(1, 2):
        return
    for i in range(start, len(choices)):
        o = choices[i]
        w = 1 - Fraction(1, o)
        if w > target:
            break
        for rest in _order_multisets(choices, target - w, i):
            yield (o,) + rest


def removal_stable(orders) -> bool:
    N = lcm(*orders)
    return all(lcm(*(orders[:i] + orders[i + 1:])) == N for i in range(len(orders)))


def _cyclic_blocks(n, g):
    blocks = []
    g0 = 0
    choices = [d for d in divisors(n) if d >= 2]
    while n * (2 * g0 - 2) <= 2 * g - 2:
        target = Fraction(2 * g - 2, n) - (2 * g0 - 2)
        for orders in _order_multisets(choices, target):
            if not removal_stable(orders):
                continue
            if g0 == 0 and lcm(*orders) != n:
                continue
            if not orders and g0 == 0:
                continue
            blocks.append((n, g0, orders))
        g0 += 1
    return blocks


def _cyclic_block(block):
    n, g0, orders = block
    if not orders:
        return [DataSet(n, g0, r) for r in units(n)]
    groups = sorted(Counter(orders).items())
    choices = [list(combinations_with_replacement(units(o), k)) for o, k in groups]
    out = []
    for pick in product(*choices):
        total = 0
        for (o, _), cs in zip(groups, pick):
            total += (n // o) * sum(cs)
        if total % n:
            continue
        pairs = [(c, o) for (o, _), cs in zip(groups, pick) for c in cs]
        out.append(DataSet(n, g0, 0, tuple(pairs)))
    return out


def _run_blocks(func, blocks):
    workers = min(_workers(), len(blocks))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(func, blocks))
    else:
        chunks = [func(b) for b in blocks]
    return [x for chunk in chunks for x in chunk]


@lru_cache(maxsize=None)
def _enumerate_cyclic(n, g):
    found = _run_blocks(_cyclic_block, _cyclic_blocks(n, g))
    return tuple(sorted(set(found), key=DataSet.sort_key))


def enumerate_cyclic(n: int, g: int) -> list:
    """All data sets of degree ``n`` and genus ``g``, canonical and sorted."""
    if n < 2 or g < 0:
        return []
    return list(_enumerate_cyclic(n, g))


# --- restriction to cyclic subgroups ----------------------------------------

def restrict_to_cyclic(moduli, genus, stabilizers, h):
    """Data set of the subgroup generated by ``h`` of an abelian action.

    The action of ``H = Z_{k1} + ... + Z_{kr}`` on a genus-``genus`` surface
    is described by ``stabilizers``: one element per cone point of the
    quotient, namely the image of the elliptic generator (a rotation by
    ``2*pi/order`` around each lift).  Over a cone point with stabilizer
    ``<s>`` of order ``o`` the subgroup ``<h>`` (order ``d``) meets ``<s>``
    in a group of order ``t``; that fibre yields ``|H|*t/(o*d)`` cone points
    of order ``t`` for ``<h>``.  Writing ``s^(o/t) = h^((d/t)*j)`` gives the
    residue ``j``.
    """
    d = element_order(h, moduli)
    if d == 1:
        return TrivialAction
    size = math.prod(moduli)
    exponent = {scale(h, s, moduli): s for s in range(d)}
    pairs = []
    for s in stabilizers:
        o = element_order(s, moduli)
        powers = cyclic_subgroup(s, moduli)
        t = sum(1 for p in powers if p in exponent)
        if t < 2:
            continue
        j = exponent[powers[o // t]] // (d // t)
        pairs.extend([(j % t, t)] * (size * t // (o * d)))
    chi = Fraction(2 - 2 * genus, d) + sum(1 - Fraction(1, t) for _, t in pairs)
    g0 = (2 - chi) / 2
    if g0.denominator != 1 or g0 < 0:
        raise ValueError(f"inconsistent action data: quotient genus {g0}")
    if pairs:
        rotation = 0
    else:
        # a free class of degree 2 has only one possible rotation
        rotation = 1 if d == 2 else None
    return DataSet(d, int(g0), rotation, tuple(pairs))


def power(d: DataSet, k: int):
    """Data set of ``F^k`` with respect to the generator ``F^k``.

    Returns :data:`TrivialAction` when ``n | k``.  Free results of degree
    at least 3 carry a wildcard rotation unless ``k = 1 (mod n)``.
    """
    if k < 1:
        raise ValueError("exponent must be positive")
    n = d.degree
    if k % n == 1 % n:
        return d
    return restrict_to_cyclic((n,), genus_of(d), d.stabilizers(), (k % n,))


def fixed_point_count(d: DataSet, t: int) -> int:
    """Number of points fixed by ``F^t`` for ``1 <= t < n``."""
    n = d.degree
    if not 1 <= t < n:
        raise ValueError(f"t must lie in [1, {n})")
    need = n // math.gcd(n, t)
    return sum(n // p.order for p in d.cone_pairs if p.order % need == 0)


@dataclass(frozen=True)
class Classification:
    free: bool
    irreducible: bool
    type1: bool
    type2: bool
    satisfies_lcm_condition: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def classify(d: DataSet) -> Classification:
    irreducible = d.quotient_genus == 0 and len(d.cone_pairs) == 3
    type1 = irreducible and d.degree in d.cone_orders
    return Classification(
        free=d.is_free,
        irreducible=irreducible,
        type1=type1,
        type2=irreducible and not type1,
        satisfies_lcm_condition=bool(d.cone_pairs) and lcm(*d.cone_orders) == d.degree,
    )


def unit_relabel(d: DataSet, k: int) -> DataSet:
    """``d`` with every residue multiplied by ``k^{-1}``; ``gcd(k, n) = 1``."""
    pairs = tuple((p.c * inverse(k, p.order) % p.order, p.order) for p in d.cone_pairs)
    return DataSet(d.degree, d.quotient_genus, d.rotation, pairs)
