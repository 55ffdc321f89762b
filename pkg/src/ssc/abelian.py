"""Abelian data sets: weak conjugacy classes of ``Z_m + Z_n``-actions.

An abelian data set ``(m*n, g0; [(c11,n11),(c12,n12),n1], ...)`` lists one
triple per cone point of the quotient ``S_g / (Z_m + Z_n)``.  The triple
records the stabilizer of the cone point as the group element

    ((m/n11)*c11 mod m, (n/n12)*c12 mod n)

of order ``n1 = lcm(n11, n12)``.  The first coordinate belongs to ``G``
(order ``m``), the second to ``F`` (order ``n``), and ``m`` divides ``n``.

Two maps of orders ``m`` and ``n`` have commuting conjugates generating a
group of order ``mn`` exactly when some abelian data set has the pair of
their data sets as its factor classes; :func:`weakly_commute` decides this
by exhaustive search, and :func:`necessary_report` is a faster filter whose
negative answers are always correct.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product

from .arith import divisors, elements, element_order, generates, lcm, units
from .cyclic import (
    ConePair,
    DataSet,
    OrbifoldSignature,
    ValidationReport,
    _order_multisets,
    _run_blocks,
    genus_of,
    removal_stable,
    restrict_to_cyclic,
    signature_of,
    validate,
)


class InvalidDegrees(ValueError):
    pass


class InducedClassInvalid(ValueError):
    pass


class FactorInvalid(ValueError):
    pass


TRIVIAL_PART = ConePair(0, 1)


def _part(x: int, k: int) -> ConePair:
    """Encode ``x in Z_k`` as ``(c, order)`` with ``x = (k/order)*c``."""
    order = k // math.gcd(x, k)
    if order == 1:
        return TRIVIAL_PART
    return ConePair(x // (k // order), order)


@dataclass(frozen=True)
class AbelianTriple:
    g_part: ConePair
    f_part: ConePair
    order: int

    def __post_init__(self):
        for name in ("g_part", "f_part"):
            p = getattr(self, name)
            if not isinstance(p, ConePair):
                object.__setattr__(self, name, ConePair(*p))

    @classmethod
    def from_element(cls, e, m: int, n: int) -> "AbelianTriple":
        x, y = e
        g, f = _part(x % m, m), _part(y % n, n)
        return cls(g, f, lcm(g.order, f.order))

    def element(self, m: int, n: int) -> tuple:
        g, f = self.g_part, self.f_part
        return ((m // g.order) * g.c % m, (n // f.order) * f.c % n)

    @property
    def key(self):
        return (self.order, self.g_part.order, self.g_part.c, self.f_part.order, self.f_part.c)

    def __str__(self):
        return f"[{self.g_part},{self.f_part},{self.order}]"


@dataclass(frozen=True)
class AbelianDataSet:
    m: int
    n: int
    quotient_genus: int
    triples: tuple = field(default=())

    def __post_init__(self):
        ts = []
        for t in self.triples:
            if not isinstance(t, AbelianTriple):
                g, f, o = t
                t = AbelianTriple(ConePair(*g), ConePair(*f), o)
            ts.append(t)
        object.__setattr__(self, "triples", tuple(sorted(ts, key=lambda t: t.key)))

    @classmethod
    def from_elements(cls, m, n, g0, elems) -> "AbelianDataSet":
        return cls(m, n, g0, tuple(AbelianTriple.from_element(e, m, n) for e in elems))

    @property
    def moduli(self):
        return (self.m, self.n)

    @property
    def genus(self) -> int:
        return abelian_genus(self)

    @property
    def cone_orders(self) -> tuple:
        return tuple(sorted(t.order for t in self.triples))

    def stabilizers(self) -> list:
        return [t.element(self.m, self.n) for t in self.triples]

    def sort_key(self):
        return (self.m, self.n, self.quotient_genus, tuple(t.key for t in self.triples))

    def swapped(self) -> "AbelianDataSet":
        """Exchange the roles of the two generators (only when ``m == n``)."""
        if self.m != self.n:
            raise InvalidDegrees("coordinates can only be swapped when m = n")
        ts = tuple(AbelianTriple(t.f_part, t.g_part, t.order) for t in self.triples)
        return AbelianDataSet(self.m, self.n, self.quotient_genus, ts)

    def __str__(self):
        return format_abelian(self)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "quotient_genus": self.quotient_genus,
            "triples": [[[t.g_part.c, t.g_part.order], [t.f_part.c, t.f_part.order], t.order]
                        for t in self.triples],
        }

    @classmethod
    def from_json(cls, obj) -> "AbelianDataSet":
        return cls(obj["m"], obj["n"], obj["quotient_genus"],
                   tuple((tuple(g), tuple(f), o) for g, f, o in obj["triples"]))


def format_abelian(a: AbelianDataSet) -> str:
    """Canonical text, e.g. ``(2*2,1;[(1,2),(0,1),2]*2)``."""
    parts = []
    for t, k in Counter(a.triples).items():
        parts.append(f"{t}*{k}" if k > 1 else str(t))
    return f"({a.m}*{a.n},{a.quotient_genus};{','.join(parts)})"


def abelian_genus(a: AbelianDataSet) -> int:
    size = a.m * a.n
    chi = size * (2 - 2 * a.quotient_genus) + sum(Fraction(size, o) - size for o in a.cone_orders)
    g = Fraction(2 - chi, 2)
    if g.denominator != 1:
        raise ValueError(f"{format_abelian(a)} has non-integer genus {g}")
    return int(g)


def validate_abelian(a: AbelianDataSet, min_genus: int = 2) -> ValidationReport:
    """Check the defining conditions of an abelian data set.

    At quotient genus zero the stabilizer elements must generate the whole
    group; this is tested by closing them under addition.
    """
    m, n = a.m, a.n
    fails = []
    if m < 2 or n < 2 or a.quotient_genus < 0:
        return ValidationReport(False, (("range", "need m, n >= 2 and quotient genus >= 0"),))
    if n % m:
        fails.append(("i", f"{m} does not divide {n}"))
    for t in a.triples:
        g, f = t.g_part, t.f_part
        if m % g.order or n % f.order:
            fails.append(("iv", f"{t}: part orders must divide {m} and {n}"))
        elif lcm(g.order, f.order) != t.order or t.order < 2:
            fails.append(("iv", f"{t}: order must be lcm of the part orders and at least 2"))
        for p in (g, f):
            if p.order == 1 and p.c != 0 or p.order > 1 and not (
                    1 <= p.c < p.order and math.gcd(p.c, p.order) == 1):
                fails.append(("v", f"{t}: residue {p.c} is not a unit modulo {p.order}"))
    if fails:
        return ValidationReport(False, tuple(fails))
    orders = a.cone_orders
    if not removal_stable(orders):
        fails.append(("iii", "lcm of cone orders drops when a cone point is removed"))
    if a.quotient_genus == 0 and lcm(*orders) != n:
        fails.append(("iii", f"quotient is a sphere but lcm of cone orders is not {n}"))
    elems = a.stabilizers()
    if sum(e[0] for e in elems) % m or sum(e[1] for e in elems) % n:
        fails.append(("vi", "stabilizer elements do not sum to zero"))
    if a.quotient_genus == 0 and not generates(elems, (m, n)):
        fails.append(("vii", "stabilizer elements generate a proper subgroup"))
    genus = None
    try:
        genus = abelian_genus(a)
    except ValueError as exc:
        fails.append(("ii", str(exc)))
    else:
        if genus < min_genus:
            fails.append(("ii", f"genus {genus} < {min_genus}"))
    return ValidationReport(not fails, tuple(fails), genus)


# --- enumeration -------------------------------------------------------------

def _abelian_blocks(m, n, g):
    blocks = []
    choices = [d for d in divisors(n) if d >= 2]
    size = m * n
    g0 = 0
    while size * (2 * g0 - 2) <= 2 * g - 2:
        target = Fraction(2 * g - 2, size) - (2 * g0 - 2)
        for orders in _order_multisets(choices, target):
            if not orders and g0 == 0:
                continue
            if not removal_stable(orders):
                continue
            if g0 == 0 and lcm(*orders) != n:
                continue
            blocks.append((m, n, g0, orders))
        g0 += 1
    return blocks


def _abelian_block(block):
    m, n, g0, orders = block
    moduli = (m, n)
    by_order = {}
    for e in elements(moduli):
        by_order.setdefault(element_order(e, moduli), []).append(e)
    groups = sorted(Counter(orders).items())
    choices = [list(combinations_with_replacement(by_order.get(o, []), k)) for o, k in groups]
    out = []
    for pick in product(*choices):
        elems = [e for es in pick for e in es]
        if sum(e[0] for e in elems) % m or sum(e[1] for e in elems) % n:
            continue
        if g0 == 0 and not generates(elems, moduli):
            continue
        out.append(AbelianDataSet.from_elements(m, n, g0, elems))
    return out


@lru_cache(maxsize=None)
def _enumerate_abelian(m, n, g):
    found = _run_blocks(_abelian_block, _abelian_blocks(m, n, g))
    return tuple(sorted(set(found), key=AbelianDataSet.sort_key))


def enumerate_abelian(m: int, n: int, g: int) -> list:
    """All abelian data sets of degree ``m*n`` and genus ``g``, sorted.

    Genus 1 is allowed so that actions on capped tori can be compared.
    """
    if m < 1 or n % m:
        raise InvalidDegrees(f"{m} does not divide {n}")
    if m < 2 or g < 1:
        return []
    return list(_enumerate_abelian(m, n, g))


# --- induced classes and factors --------------------------------------------

def _free_rotation(degree):
    return 1 if degree == 2 else None


def induced_quotient_classes(a: AbelianDataSet) -> tuple:
    """``(D_Gbar, D_Fbar)``: the actions induced on ``S/<F>`` and ``S/<G>``."""
    out = []
    for degree, parts in ((a.m, [t.g_part for t in a.triples]),
                          (a.n, [t.f_part for t in a.triples])):
        pairs = tuple(p for p in parts if p.order > 1)
        rotation = 0 if pairs else _free_rotation(degree)
        d = DataSet(degree, a.quotient_genus, rotation, pairs)
        report = validate(d, min_genus=0)
        if not report.ok:
            raise InducedClassInvalid(f"{d}: {report.failures}")
        out.append(d)
    return tuple(out)


@dataclass(frozen=True)
class FactorPair:
    d_g: DataSet
    d_f: DataSet

    @property
    def up_to_rotation(self) -> bool:
        """True when a free factor's rotation residue is not determined."""
        return self.d_g.rotation is None or self.d_f.rotation is None

    def matches(self, d_g: DataSet, d_f: DataSet) -> bool:
        return self.d_g.matches(d_g) and self.d_f.matches(d_f)

    def swapped(self) -> "FactorPair":
        return FactorPair(self.d_f, self.d_g)

    def __str__(self):
        return f"[{self.d_g};{self.d_f}]"

    def to_json(self) -> dict:
        return {"d_g": self.d_g.to_json(), "d_f": self.d_f.to_json(),
                "up_to_rotation": self.up_to_rotation}


def factor_generators(a: AbelianDataSet) -> FactorPair:
    """Conjugacy classes of the two generators ``G = (1,0)`` and ``F = (0,1)``.

    Over a cone point of order ``n_i`` whose stabilizer ``s`` has ``G``-part
    of order ``n_i1`` the cyclic group ``<F>`` meets ``<s>`` in a subgroup of
    order ``n_i/n_i1``, giving ``m/n_i1`` cone points of ``F`` of that order.
    The residues come from writing the generator of the intersection as a
    power of ``F``.

    >>> a = AbelianDataSet.from_elements(2, 4, 0, [(0, 1), (0, 3), (1, 0), (1, 0)])
    >>> print(factor_generators(a))
    [(2,0;((1,2),8));(4,0;((1,4),2),((3,4),2))]
    """
    g = abelian_genus(a)
    stabs = a.stabilizers()
    d_g = restrict_to_cyclic(a.moduli, g, stabs, (1, 0))
    d_f = restrict_to_cyclic(a.moduli, g, stabs, (0, 1))
    for d in (d_g, d_f):
        report = validate(d)
        if not report.ok:
            raise FactorInvalid(f"{d}: {report.failures}")
    return FactorPair(d_g, d_f)


def orbifold_signatures(a: AbelianDataSet) -> tuple:
    """Signatures of ``S/<F>`` and ``S/<G>`` read off the triples.

    The first has genus equal to that of the induced class ``D_Gbar`` and
    cone orders ``n_i/n_i1`` repeated ``m/n_i1`` times; the second is the
    mirror image with the ``F``-parts.
    """
    gbar, fbar = induced_quotient_classes(a)
    first, second = [], []
    for t in a.triples:
        a1, b1 = t.g_part.order, t.f_part.order
        first += [t.order // a1] * (a.m // a1)
        second += [t.order // b1] * (a.n // b1)
    return (OrbifoldSignature(genus_of(gbar), tuple(o for o in first if o > 1)),
            OrbifoldSignature(genus_of(fbar), tuple(o for o in second if o > 1)))


def common_signature(a: AbelianDataSet) -> OrbifoldSignature:
    """Signature of ``S/(Z_m + Z_n)``, shared by both twice-quotiented orbifolds."""
    return OrbifoldSignature(a.quotient_genus, a.cone_orders)


@lru_cache(maxsize=None)
def _factor_index(m, n, g):
    return tuple((a, factor_generators(a)) for a in _enumerate_abelian(m, n, g))


def _check_pair(d_g: DataSet, d_f: DataSet):
    m, n = d_g.degree, d_f.degree
    if n % m:
        raise InvalidDegrees(f"{m} does not divide {n}")
    g = genus_of(d_g)
    if genus_of(d_f) != g:
        raise ValueError("the two classes live on surfaces of different genus")
    return m, n, g


def weakly_commute(d_g: DataSet, d_f: DataSet) -> list:
    """Abelian data sets whose generators realize ``d_g`` and ``d_f``.

    An empty list means no conjugates of the two classes commute and
    generate a group of order ``m*n``.
    """
    m, n, g = _check_pair(d_g, d_f)
    return [a for a, fp in _factor_index(m, n, g) if fp.matches(d_g, d_f)]


def realized_pairs(m: int, n: int, g: int) -> set:
    """All factor pairs ``(d_g, d_f)`` occurring for degree ``m*n`` on genus ``g``."""
    return {(fp.d_g, fp.d_f) for _, fp in _factor_index(m, n, g)}


# --- counting-level necessary conditions -------------------------------------

_STAGES = ("signature", "orbit-counts", "fixed-points", "sphere-lcm", "delta", "induced-classes")


@dataclass(frozen=True)
class NecessaryReport:
    """Outcome of :func:`necessary_report`.

    ``stage`` names the furthest check reached by the best candidate
    quotient: a ``Fail`` there means no candidate survives, which proves the
    pair does not weakly commute.  ``Pass`` proves nothing by itself.
    """

    verdict: str
    stage: str
    reason: str = ""
    signature: OrbifoldSignature | None = None
    induced_f: DataSet | None = None
    induced_g: DataSet | None = None
    delta_1: int | None = None
    delta_2: int | None = None
    bound_1: int | None = None
    bound_2: int | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "Pass"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "stage": self.stage,
            "reason": self.reason,
            "signature": None if self.signature is None else str(self.signature),
            "induced_f": None if self.induced_f is None else str(self.induced_f),
            "induced_g": None if self.induced_g is None else str(self.induced_g),
            "delta_1": self.delta_1,
            "delta_2": self.delta_2,
            "B_1": self.bound_1,
            "B_2": self.bound_2,
        }


def _entry_types(o, m, n):
    """Orders ``(a, b)`` of the two parts of a stabilizer of order ``o``."""
    return [(a, b) for a in divisors(m) for b in divisors(n) if lcm(a, b) == o]


def _candidates(m, n, g):
    """Common quotients with a part-order type for every cone point."""
    for _, _, g0, orders in _abelian_blocks(m, n, g):
        groups = sorted(Counter(orders).items())
        options = [list(combinations_with_replacement(_entry_types(o, m, n), k)) for o, k in groups]
        for pick in product(*options):
            entries = tuple((o, a, b) for (o, _), ts in zip(groups, pick) for a, b in ts)
            yield g0, orders, entries


def _assignments(d: DataSet, blocks):
    """Ways to cut the cone pairs of ``d`` into blocks of identical pairs.

    ``blocks`` is a list of ``(order, size)``; yields one residue per block.
    """
    avail = Counter(d.cone_pairs)
    if sum(size for _, size in blocks) != len(d.cone_pairs):
        return
    chosen = []

    def rec(i):
        if i == len(blocks):
            yield tuple(chosen)
            return
        t, size = blocks[i]
        for p in sorted(avail, key=lambda p: p.key):
            if p.order == t and avail[p] >= size:
                avail[p] -= size
                chosen.append(p.c)
                yield from rec(i + 1)
                chosen.pop()
                avail[p] += size

    yield from rec(0)


def _side(d: DataSet, deg_self, deg_other, entries, own, other):
    """Data for one generator: ``own``/``other`` index the part orders.

    The generator of degree ``deg_self`` has, over an entry ``(o, a, b)``,
    ``deg_other/x`` cone points of order ``o/x`` where ``x`` is the part of
    the *other* generator.  Returns the list of blocks and the indices of
    entries whose other part is trivial (their own residue is then read off
    the block).
    """
    blocks, index, pure = [], [], []
    for k, e in enumerate(entries):
        x = e[other]
        t = e[0] // x
        if t >= 2:
            blocks.append((t, deg_other // x))
            index.append(k)
            if x == 1:
                pure.append(len(blocks) - 1)
    return blocks, index, pure


def _quotient_genus(deg, g0, parts):
    chi = deg * (2 - 2 * g0) - sum(deg - deg // p for p in parts if p > 1)
    return Fraction(2 - chi, 2)


def _lex_units(steps, deg, target):
    """Lex-least units ``u_k`` mod ``b_k`` with ``sum (deg/b_k) u_k = target``."""
    reach = [set() for _ in range(len(steps) + 1)]
    reach[-1] = {0}
    for k in range(len(steps) - 1, -1, -1):
        b = steps[k]
        reach[k] = {(s + (deg // b) * u) % deg for s in reach[k + 1] for u in units(b)}
    if target % deg not in reach[0]:
        return None
    out, need = [], target % deg
    for k, b in enumerate(steps):
        for u in units(b):
            if (need - (deg // b) * u) % deg in reach[k + 1]:
                out.append(u)
                need = (need - (deg // b) * u) % deg
                break
    return out


def _induced_candidate(deg, g0, entries, own, fixed):
    """Induced class on a quotient with lex-least free residues, or ``None``.

    ``fixed`` maps entry index to an already determined residue.
    """
    parts = [(k, e[own]) for k, e in enumerate(entries) if e[own] > 1]
    orders = [b for _, b in parts]
    if not parts:
        return DataSet(deg, g0, _free_rotation(deg)) if g0 >= 1 else None
    if not removal_stable(tuple(orders)) or g0 == 0 and lcm(*orders) != deg:
        return None
    known = sum((deg // b) * fixed[k] for k, b in parts if k in fixed)
    free = [(k, b) for k, b in parts if k not in fixed]
    us = _lex_units([b for _, b in free], deg, -known)
    if us is None:
        return None
    res = dict(fixed)
    res.update({k: u for (k, _), u in zip(free, us)})
    return DataSet(deg, g0, 0, tuple((res[k], b) for k, b in parts))


def _fixed_point_bound(beta, beta_bar, m, n, g):
    low = -(-beta // m)
    high = ((m - 1) * (2 * g - 2 + 2 * n)) // (m * (n - 1)) + low
    return low <= beta_bar <= high


def _sphere_lcm(orders, m, n):
    """A sub-multiset with removal-stable lcm ``n`` whose complement has lcm divisible by ``m``."""
    orders = tuple(orders)
    for mask in range(1, 1 << len(orders)):
        inside = tuple(o for i, o in enumerate(orders) if mask >> i & 1)
        outside = tuple(o for i, o in enumerate(orders) if not mask >> i & 1)
        if lcm(*inside) == n and removal_stable(inside) and lcm(*outside) % m == 0:
            return True
    return False


def _evaluate(d_g, d_f, m, n, g, g0, orders, entries):
    """Run the checks on one candidate; returns ``(stage_index, report_fields)``."""
    info = {"signature": OrbifoldSignature(g0, orders)}
    # F sees, over each entry, cone points of order o/a; G sees order o/b
    f_blocks, f_index, f_pure = _side(d_f, n, m, entries, 2, 1)
    g_blocks, g_index, g_pure = _side(d_g, m, n, entries, 1, 2)
    if (_quotient_genus(m, g0, [e[1] for e in entries]) != d_f.quotient_genus
            or _quotient_genus(n, g0, [e[2] for e in entries]) != d_g.quotient_genus):
        return 1, info, "quotient genera of the factors do not match the candidate"
    f_assign = list(_assignments(d_f, f_blocks))
    g_assign = list(_assignments(d_g, g_blocks))
    if not f_assign or not g_assign:
        return 1, info, "cone points of the factors cannot be grouped into orbits of the candidate"

    pure_f = sorted({tuple((f_index[i], asg[i]) for i in f_pure) for asg in f_assign})
    pure_g = sorted({tuple((g_index[i], asg[i]) for i in g_pure) for asg in g_assign})
    info["induced_f"] = _induced_candidate(n, g0, entries, 2, dict(pure_f[0]))
    info["induced_g"] = _induced_candidate(m, g0, entries, 1, dict(pure_g[0]))

    beta_f = sum(1 for p in d_f.cone_pairs if p.order == n)
    beta_g = sum(1 for p in d_g.cone_pairs if p.order == m)
    if not (_fixed_point_bound(beta_f, sum(1 for e in entries if e[2] == n), m, n, g)
            and _fixed_point_bound(beta_g, sum(1 for e in entries if e[1] == m), n, m, g)):
        return 2, info, "fixed points of a factor violate the induced fixed-point bound"

    if g0 == 0 and not _sphere_lcm(orders, m, n):
        return 3, info, "no sub-multiset of cone orders has stable lcm n with complement divisible by m"

    b1 = lcm(*(o for o, a, _ in entries if a > 1))
    b2 = math.gcd(lcm(*(o for o, _, b in entries if b > 1)), m)
    info["bound_1"], info["bound_2"] = b1, b2
    ok_f = [p for p in pure_f if sum((n // entries[k][0]) * c for k, c in p) % (n // b1) == 0]
    ok_g = [p for p in pure_g if sum((m // entries[k][0]) * c for k, c in p) % (m // b2) == 0]
    for side, key, pure, deg in ((ok_f, "delta_2", pure_f, n), (ok_g, "delta_1", pure_g, m)):
        p = (side or pure)[0]
        info[key] = -sum((deg // entries[k][0]) * c for k, c in p) % deg
    if not ok_f or not ok_g:
        return 4, info, "residue sums of the pure cone points are not divisible by n/B_1 or m/B_2"

    for pf in ok_f:
        cf = _induced_candidate(n, g0, entries, 2, dict(pf))
        if cf is None:
            continue
        for pg in ok_g:
            cg = _induced_candidate(m, g0, entries, 1, dict(pg))
            if cg is not None:
                info["induced_f"], info["induced_g"] = cf, cg
                return 6, info, ""
    return 5, info, "no valid induced classes on the intermediate quotients"


def necessary_report(d_g: DataSet, d_f: DataSet) -> NecessaryReport:
    """Counting-level necessary conditions for ``d_g`` and ``d_f`` to weakly commute.

    Every candidate common quotient ``(g0; n_1, ..., n_l)`` together with
    the orders of the two parts of each stabilizer is tested against the
    cone data of both factors: orbit counts, the fixed-point bound of the
    induced maps, the sphere lcm condition, the divisibility of the pure
    residue sums, and the existence of induced classes.  ``Fail`` is only
    returned when every candidate is ruled out.
    """
    m, n, g = _check_pair(d_g, d_f)
    best = (0, {}, "no common quotient signature satisfies Riemann-Hurwitz and the lcm condition")
    for g0, orders, entries in _candidates(m, n, g):
        stage, info, reason = _evaluate(d_g, d_f, m, n, g, g0, orders, entries)
        if stage > best[0]:
            best = (stage, info, reason)
        if stage == len(_STAGES):
            break
    stage, info, reason = best
    if stage == len(_STAGES):
        return NecessaryReport("Pass", _STAGES[-1], "", **info)
    return NecessaryReport("Fail", _STAGES[stage], reason, **info)


# --- involutions --------------------------------------------------------------

class NotInvolutions(ValueError):
    pass


class NotWeaklyCommuting(ValueError):
    pass


class NotFree(ValueError):
    pass


def _half_cone_count(d: DataSet) -> int:
    return len(d.cone_pairs) // 2


@dataclass(frozen=True)
class InvolutionVerdict:
    commute: bool
    feasible: tuple = ()  # (s', s'') pairs

    def __bool__(self):
        return self.commute

    def to_json(self) -> dict:
        return {"commute": self.commute, "feasible": [list(p) for p in self.feasible]}


def involution_weak_commute(d_f: DataSet, d_g: DataSet) -> InvolutionVerdict:
    """Decide weak commutativity of two involutions from cone counts alone.

    With ``2k'`` and ``2k''`` fixed points for ``F`` and ``G``, the induced
    involutions on ``S/<G>`` and ``S/<F>`` have ``2s'`` and ``2s''`` fixed
    points; they must exist as involutions over a common quotient of genus
    ``g0``, satisfy ``g+k+1 >= 2s >= k`` on each side, and agree on
    ``2s' - k' = 2s'' - k''``, the half-count of fixed points of ``FG``.

    >>> from ssc.cyclic import DataSet
    >>> v = involution_weak_commute(DataSet(2, 4, 1), DataSet(2, 3, 0, (((1, 2),) * 4)))
    >>> v.commute, v.feasible
    (True, ((0, 1), (2, 3), (4, 5)))
    """
    if d_f.degree != 2 or d_g.degree != 2:
        raise NotInvolutions("both classes must have degree 2")
    g = genus_of(d_f)
    if genus_of(d_g) != g:
        raise ValueError("the two involutions live on surfaces of different genus")
    k1, k2 = _half_cone_count(d_f), _half_cone_count(d_g)
    feasible = []
    for s1 in range(0, g + 2):
        c = 2 * s1 - k1
        if c < 0 or (c + k2) % 2:
            continue
        s2 = (c + k2) // 2
        if not (g + k1 + 1 >= 2 * s1 >= k1 and g + k2 + 1 >= 2 * s2 >= k2):
            continue
        # Riemann-Hurwitz over the Klein four group: g = 4 g0 - 3 + k'' + k' + c
        rest = g + 3 - k1 - k2 - c
        if rest < 0 or rest % 4:
            continue
        g0 = rest // 4
        if g0 == 0 and (s1 == 0 or s2 == 0):
            continue
        feasible.append((s1, s2))
    return InvolutionVerdict(bool(feasible), tuple(feasible))


def klein_completions(d_f: DataSet, d_g: DataSet) -> list:
    """Possible classes of ``FG`` for commuting involutions ``F`` and ``G``."""
    verdict = involution_weak_commute(d_f, d_g)
    if not verdict:
        raise NotWeaklyCommuting(f"{d_f} and {d_g} do not weakly commute")
    g = genus_of(d_f)
    out = set()
    for s1, _ in verdict.feasible:
        k = 2 * s1 - _half_cone_count(d_f)
        if k == 0:
            out.add(DataSet(2, (g + 1) // 2, 1))
        else:
            out.add(DataSet(2, (g + 1 - k) // 2, 0, (((1, 2),) * (2 * k))))
    return sorted(out, key=DataSet.sort_key)


# --- free actions and lifts ------------------------------------------------------

def free_weak_commute(d_f: DataSet, d_g: DataSet) -> bool:
    """Weak commutativity when ``F`` is free and induces a free map on ``S/<G>``.

    Requires every cone multiplicity ``beta_j`` of ``d_g`` to be divisible
    by ``n``, ``n | (g0 - 1)`` for the quotient genus ``g0`` of ``d_g``, and
    the class ``(m, (g0-1)/n + 1; ((d_j, m_j), beta_j/n), ...)`` of the
    induced map on ``S/<F>`` to be a data set (its residue sum is the
    condition ``sum (beta_j/n)(m/m_j) d_j = 0 mod m``).
    """
    if not d_f.is_free:
        raise NotFree(f"{d_f} has cone points")
    n, m = d_f.degree, d_g.degree
    if genus_of(d_f) != genus_of(d_g):
        raise ValueError("the two classes live on surfaces of different genus")
    g0 = d_g.quotient_genus
    mult = d_g.multiplicities()
    if any(beta % n for _, beta in mult) or (g0 - 1) % n:
        return False
    pairs = tuple(p for p, beta in mult for _ in range(beta // n))
    gbar = DataSet(m, (g0 - 1) // n + 1, 0 if pairs else _free_rotation(m), pairs)
    if not pairs:
        return True
    return validate(gbar, min_genus=0).ok


@dataclass(frozen=True)
class LiftVerdict:
    liftable: bool
    witness: DataSet | None = None

    def __bool__(self):
        return self.liftable

    def to_json(self) -> dict:
        return {"liftable": self.liftable,
                "witness": None if self.witness is None else str(self.witness),
                "witness_genus": None if self.witness is None else genus_of(self.witness)}


def liftable_conjugate(d_f: DataSet, m: int) -> LiftVerdict:
    """Does some conjugate of ``F`` lift to a cyclic ``m``-sheeted cover?

    The witness is a class on the covering surface of genus ``m(g-1)+1``
    commuting with the deck group and inducing ``F``.  For a quotient of
    positive genus every cone pair is repeated ``m`` times.  Over a sphere
    two cone orders ``n_1, n_2`` divisible by ``m`` are replaced by
    ``n_1/m, n_2/m`` with new residues, and the others repeated ``m``
    times; the lexicographically least valid choice is returned.

    >>> from ssc.cyclic import DataSet
    >>> print(liftable_conjugate(DataSet(2, 0, 0, (((1, 2),) * 8)), 2).witness)
    (2,0;((1,2),12))
    """
    if m < 2:
        raise ValueError("the cover needs at least two sheets")
    n, g0 = d_f.degree, d_f.quotient_genus
    if g0 >= 1:
        pairs = tuple(p for p in d_f.cone_pairs for _ in range(m))
        rot = 0 if pairs else None
        return LiftVerdict(True, DataSet(n, m * (g0 - 1) + 1, rot, pairs))
    pairs = list(d_f.cone_pairs)
    best = None
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            if pairs[i].order % m or pairs[j].order % m:
                continue
            rest = [p for k, p in enumerate(pairs) if k not in (i, j) for _ in range(m)]
            o1, o2 = pairs[i].order // m, pairs[j].order // m
            for c1 in units(o1):
                for c2 in units(o2):
                    new = [(c, o) for c, o in ((c1, o1), (c2, o2)) if o > 1]
                    d = DataSet(n, 0, 0, tuple(new) + tuple(rest))
                    if validate(d, min_genus=0).ok and (best is None or d.sort_key() < best.sort_key()):
                        best = d
    return LiftVerdict(best is not None, best)
