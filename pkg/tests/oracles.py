"""Independent brute-force oracles used by the tests.

The enumeration oracles do not import ``ssc``; they recompute everything
from the defining conditions so that the package can be checked against
them.  The property checkers at the end drive the package itself.
"""

import itertools
import math
from functools import reduce


def lcm(xs):
    return reduce(math.lcm, xs, 1)


def _units(o):
    return [c for c in range(1, o) if math.gcd(c, o) == 1]


def brute_cyclic(n, g):
    """Set of ``(n, g0, r, ((order, c), ...))`` for all data sets of degree n, genus g."""
    out = set()
    divs = [d for d in range(2, n + 1) if n % d == 0]
    for g0 in range(0, g + 1):
        if n * (2 * g0 - 2) == 2 * g - 2:
            out.update((n, g0, r, ()) for r in _units(n))
        for k in range(1, 2 * g + 5):
            for orders in itertools.combinations_with_replacement(divs, k):
                if n * (2 - 2 * g0) - sum(n - n // o for o in orders) != 2 - 2 * g:
                    continue
                big = lcm(orders)
                if g0 == 0 and big != n:
                    continue
                if any(lcm(orders[:i] + orders[i + 1:]) != big for i in range(k)):
                    continue
                for cs in itertools.product(*(_units(o) for o in orders)):
                    if sum(n // o * c for c, o in zip(cs, orders)) % n == 0:
                        out.add((n, g0, 0, tuple(sorted(zip(orders, cs)))))
    return out


def as_tuple(d):
    """Package DataSet in the oracle's tuple form."""
    return (d.degree, d.quotient_genus, d.rotation,
            tuple(sorted((p.order, p.c) for p in d.cone_pairs)))


def _order(e, moduli):
    return lcm([k // math.gcd(x, k) for x, k in zip(e, moduli)])


def _span(gens, moduli):
    seen = {tuple(0 for _ in moduli)}
    frontier = list(seen)
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = tuple((a + b) % k for a, b, k in zip(x, s, moduli))
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def brute_abelian(m, n, g):
    """Set of ``(g0, sorted stabilizer elements)`` for Z_m + Z_n actions of genus g."""
    moduli = (m, n)
    size = m * n
    by_order = {}
    for e in itertools.product(range(m), range(n)):
        if any(e):
            by_order.setdefault(_order(e, moduli), []).append(e)
    out = set()
    for g0 in range(0, g + 1):
        for k in range(0, 2 * g + 5):
            for orders in itertools.combinations_with_replacement(sorted(by_order), k):
                if size * (2 - 2 * g0) - sum(size - size // o for o in orders) != 2 - 2 * g:
                    continue
                big = lcm(orders)
                if any(lcm(orders[:i] + orders[i + 1:]) != big for i in range(k)):
                    continue
                if g0 == 0 and big != n:
                    continue
                groups = [(o, orders.count(o)) for o in sorted(set(orders))]
                for pick in itertools.product(*(
                        itertools.combinations_with_replacement(by_order[o], c)
                        for o, c in groups)):
                    pick = [e for part in pick for e in part]
                    if sum(e[0] for e in pick) % m or sum(e[1] for e in pick) % n:
                        continue
                    if g0 == 0 and len(_span(pick, moduli)) != size:
                        continue
                    out.add((g0, tuple(sorted(pick))))
    return out


def fixed_points_of(elements_, moduli, h):
    """Number of points fixed by the group element ``h``, from stabilizer data."""
    size = math.prod(moduli)
    total = 0
    for s in elements_:
        o = _order(s, moduli)
        powers = {tuple(x * j % k for x, k in zip(s, moduli)) for j in range(o)}
        if h in powers:
            total += size // o
    return total


def same_class(a, b):
    """Equality up to an unresolved rotation of a free class."""
    if not hasattr(a, "degree") or not hasattr(b, "degree"):
        return a is b
    if not a.matches(b):
        return False
    if a.is_free and None not in (a.rotation, b.rotation):
        return a.rotation == b.rotation
    return True


def power_violations(max_degree=12, max_genus=4):
    """Check the power-map laws on every class with n <= max_degree, g <= max_genus."""
    from ssc.cyclic import (
        TrivialAction, enumerate_cyclic, fixed_point_count, genus_of, power, unit_relabel,
    )

    bad = []
    checked = 0
    for g in range(1, max_genus + 1):
        for n in range(2, max_degree + 1):
            for d in enumerate_cyclic(n, g):
                checked += 1
                for a in range(1, n + 1):
                    pa = power(d, a)
                    if a % n == 0:
                        if pa is not TrivialAction:
                            bad.append(("trivial", d, a))
                        continue
                    if pa is TrivialAction or pa.degree != n // math.gcd(n, a):
                        bad.append(("degree", d, a))
                        continue
                    if genus_of(pa) != g:
                        bad.append(("genus", d, a))
                    if math.gcd(a, n) == 1 and not same_class(pa, unit_relabel(d, a)):
                        bad.append(("relabel", d, a))
                    for b in range(1, pa.degree + 1):
                        if not same_class(power(pa, b), power(d, a * b)):
                            bad.append(("compose", d, a, b))
                    for t in range(1, pa.degree):
                        if fixed_point_count(pa, t) != fixed_point_count(d, a * t % n):
                            bad.append(("fixed", d, a, t))
    return checked, bad


def degree_pairs(g):
    """``(m, n)`` with ``m | n``, ``m >= 2`` and ``mn <= 4g + 4``."""
    return [(m, n) for n in range(2, 4 * g + 3) for m in range(2, n + 1)
            if n % m == 0 and m * n <= 4 * g + 4]


def main_theorem_violations(g):
    """Soundness of the filter and agreement of both fast paths with the oracle."""
    from ssc.abelian import (
        free_weak_commute, involution_weak_commute, necessary_report, weakly_commute,
    )
    from ssc.cyclic import enumerate_cyclic

    stats = {"pairs": 0, "unsound": 0, "filter_fail": 0, "oracle_empty": 0,
             "involution_pairs": 0, "involution_bad": 0, "free_pairs": 0, "free_bad": 0}
    for m, n in degree_pairs(g):
        for d_g in enumerate_cyclic(m, g):
            for d_f in enumerate_cyclic(n, g):
                stats["pairs"] += 1
                witnesses = weakly_commute(d_g, d_f)
                passed = necessary_report(d_g, d_f).passed
                stats["filter_fail"] += not passed
                stats["oracle_empty"] += not witnesses
                stats["unsound"] += bool(witnesses) and not passed
                if m == n == 2:
                    stats["involution_pairs"] += 1
                    fast = bool(involution_weak_commute(d_f, d_g))
                    stats["involution_bad"] += fast != bool(witnesses)
                if d_f.is_free:
                    # applicable witnesses: F acts freely on S/<G> (trivial F-parts)
                    stats["free_pairs"] += 1
                    oracle = any(all(t.f_part.order == 1 for t in a.triples) for a in witnesses)
                    stats["free_bad"] += free_weak_commute(d_f, d_g) != oracle
    return stats


def irreducible_violations(g):
    """Type 2 classes never weakly commute; Type 1 partners force Z_2 + Z_{2g+2}."""
    from ssc.abelian import weakly_commute
    from ssc.cyclic import classify, enumerate_cyclic

    stats = {"type2_pairs": 0, "type2_bad": 0, "type1_positive": 0, "type1_bad": 0}
    for m, n in degree_pairs(g):
        for d_g in enumerate_cyclic(m, g):
            for d_f in enumerate_cyclic(n, g):
                cg, cf = classify(d_g), classify(d_f)
                positive = bool(weakly_commute(d_g, d_f))
                if cg.type2 or cf.type2:
                    stats["type2_pairs"] += 1
                    stats["type2_bad"] += positive
                if positive and (cg.type1 or cf.type1):
                    stats["type1_positive"] += 1
                    stats["type1_bad"] += not (m == 2 and m * n == 4 * g + 4)
    stats["type2_classes"] = sum(classify(d).type2 for n in range(2, 4 * g + 3)
                                 for d in enumerate_cyclic(n, g))
    return stats
