"""Modular arithmetic helpers shared by the classification modules.

Everything here works on plain Python integers, so there is no overflow
to worry about.  Elements of ``Z_{k1} + ... + Z_{kr}`` are represented as
tuples of residues together with the tuple of moduli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from itertools import product


class NotInvertible(ArithmeticError):
    pass


class NoDecomposition(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"{self.value} is not reduced modulo {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        return cls(value % modulus, modulus)

    def __str__(self):
        return f"{self.value} mod {self.modulus}"


def lcm(*values: int) -> int:
    """lcm of the arguments; the lcm of nothing is 1."""
    return reduce(math.lcm, values, 1)


def units(k: int) -> list[int]:
    """Residues in ``[1, k)`` coprime to ``k`` (``[0]`` when ``k == 1``)."""
    if k == 1:
        return [0]
    return [c for c in range(1, k) if math.gcd(c, k) == 1]


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def mod_inverse(a: Residue) -> Residue:
    """Multiplicative inverse of a unit.

    >>> mod_inverse(Residue(3, 5))
    Residue(value=2, modulus=5)
    """
    if math.gcd(a.value, a.modulus) != 1:
        raise NotInvertible(f"{a.value} is not a unit modulo {a.modulus}")
    if a.modulus == 1:
        return Residue(0, 1)
    return Residue(pow(a.value, -1, a.modulus), a.modulus)


def inverse(a: int, k: int) -> int:
    """Integer shortcut for :func:`mod_inverse`."""
    return mod_inverse(Residue.of(a, k)).value


def decompose_delta(delta: Residue, ks) -> tuple[Residue, ...]:
    """Split ``delta`` into summands ``d_i`` with ``(n/k_i) | d_i``.

    Requires ``lcm(ks)`` to divide ``n = delta.modulus``.  A solution exists
    exactly when ``n / lcm(ks)`` divides ``delta``; the lexicographically
    least one is returned.

    >>> [d.value for d in decompose_delta(Residue(2, 12), (4, 6))]
    [0, 2]
    """
    n = delta.modulus
    ks = tuple(ks)
    if not ks or any(k < 1 for k in ks):
        raise ValueError("ks must be a non-empty sequence of positive integers")
    beta = lcm(*ks)
    if n % beta:
        raise ValueError(f"lcm{ks} = {beta} does not divide {n}")
    if delta.value % (n // beta):
        raise NoDecomposition(f"{n // beta} does not divide {delta.value}")

    out = []
    remaining = delta.value
    for i, k in enumerate(ks):
        step = n // k
        # multiples reachable by the remaining summands
        rest = n // lcm(*ks[i + 1:]) if i + 1 < len(ks) else n
        for d in range(0, n, step):
            if (remaining - d) % rest == 0:
                out.append(Residue(d, n))
                remaining = (remaining - d) % n
                break
        else:  # pragma: no cover - excluded by the divisibility precondition
            raise NoDecomposition(str(delta))
    return tuple(out)


# --- finite abelian groups as tuples of residues ----------------------------

def element_order(e, moduli) -> int:
    return lcm(*(k // math.gcd(x, k) for x, k in zip(e, moduli)))


def add(e, f, moduli):
    return tuple((x + y) % k for x, y, k in zip(e, f, moduli))


def scale(e, s: int, moduli):
    return tuple((x * s) % k for x, k in zip(e, moduli))


def cyclic_subgroup(e, moduli) -> list:
    """The powers ``e^0, e^1, ...`` in order, one full period."""
    return [scale(e, s, moduli) for s in range(element_order(e, moduli))]


def elements(moduli):
    return list(product(*(range(k) for k in moduli)))


def generated_order(gens, moduli) -> int:
    """Order of the subgroup generated by ``gens`` (closure by BFS)."""
    zero = tuple(0 for _ in moduli)
    seen = {zero}
    frontier = [zero]
    gens = [g for g in gens if any(g)]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = add(x, g, moduli)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen)


def generates(gens, moduli) -> bool:
    return generated_order(gens, moduli) == math.prod(moduli)
