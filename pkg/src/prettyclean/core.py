"""Exponent vectors and monomial ideals.

Monomials are represented by their exponent vectors (tuples of ints), faces of
multicomplexes by tuples whose entries are ints or :data:`INF`.  The
coefficient field never materializes: everything here is exponent
combinatorics.

Variable indices in public set-valued arguments (primes, saturation and
substitution variables) are 1-based, matching ``x1, ..., xn``; tuple positions
are 0-based.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

Exponent = Tuple[int, ...]


class _Infinity(enum.Enum):
    """The point at infinity of the extended naturals."""

    INF = "inf"

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        if other is self or isinstance(other, int):
            return other is not self
        return NotImplemented

    def __ge__(self, other):
        if other is self or isinstance(other, int):
            return True
        return NotImplemented

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "inf"

    __str__ = __repr__


INF = _Infinity.INF

ExtExp = Union[int, _Infinity]
Face = Tuple[ExtExp, ...]


class DimensionMismatch(ValueError):
    pass


class ImproperIdealError(ValueError):
    """Raised when a predicate needs a proper, nonzero ideal."""


def is_finite(v: ExtExp) -> bool:
    return v is not INF


def leq(a: Sequence, b: Sequence) -> bool:
    """Componentwise ``a <= b``; works for exponents and faces alike."""
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Sequence, b: Sequence) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def gcd(a: Sequence, b: Sequence) -> tuple:
    return tuple(min(x, y) for x, y in zip(a, b))


def unit_vector(n: int, k: int, e: int = 1) -> Exponent:
    """Exponent of ``x_k**e`` (``k`` is 1-based)."""
    v = [0] * n
    v[k - 1] = e
    return tuple(v)


def support(b: Sequence) -> frozenset:
    """1-based indices of the nonzero coordinates."""
    return frozenset(i + 1 for i, x in enumerate(b) if x)


def maximal_elements(vectors: Iterable[tuple]) -> Tuple[tuple, ...]:
    """The antichain of componentwise-maximal vectors, sorted."""
    vs = sorted(set(vectors), reverse=True)
    keep = []
    for v in vs:
        if not any(leq(v, w) for w in keep):
            keep.append(v)
    return tuple(sorted(keep))


def _minimal_elements(vectors: Iterable[Exponent]) -> Tuple[Exponent, ...]:
    vs = sorted(set(vectors), key=lambda v: (sum(v), v))
    keep = []
    for v in vs:
        if not any(leq(g, v) for g in keep):
            keep.append(v)
    return tuple(sorted(keep))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal of ``K[x1..xn]`` given by its minimal generators.

    Generators are minimalized and sorted on construction, so equality of
    ideals is structural equality.  ``gens == ((0,)*n,)`` is the unit ideal,
    ``gens == ()`` the zero ideal.
    """

    n: int
    gens: Tuple[Exponent, ...] = ()

    def __post_init__(self):
        gens = [tuple(int(x) for x in g) for g in self.gens]
        for g in gens:
            if len(g) != self.n:
                raise DimensionMismatch(
                    f"generator {g} has length {len(g)}, expected {self.n}")
            if any(x < 0 for x in g):
                raise ValueError(f"negative exponent in {g}")
        object.__setattr__(self, "gens", _minimal_elements(gens))

    @classmethod
    def unit(cls, n: int) -> "MonomialIdeal":
        return cls(n, ((0,) * n,))

    @classmethod
    def zero(cls, n: int) -> "MonomialIdeal":
        return cls(n, ())

    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.n,)

    def is_zero(self) -> bool:
        return not self.gens

    def is_proper_nonzero(self) -> bool:
        return not self.is_zero() and not self.is_unit()

    def __contains__(self, b) -> bool:
        return membership(self, b)

    def __le__(self, other: "MonomialIdeal") -> bool:
        """Ideal containment ``self ⊆ other``."""
        _check_same(self, other)
        return all(membership(other, g) for g in self.gens)

    def __lt__(self, other: "MonomialIdeal") -> bool:
        return self <= other and self != other

    def max_exponents(self) -> Exponent:
        """Per-variable maximum exponent over the generators."""
        out = [0] * self.n
        for g in self.gens:
            for k, e in enumerate(g):
                if e > out[k]:
                    out[k] = e
        return tuple(out)

    def __str__(self):
        from .textio import format_ideal
        return "(" + format_ideal(self) + ")"

    def __repr__(self):
        return f"MonomialIdeal({self.n}, {self.gens!r})"


@dataclass(frozen=True, order=False)
class MonomialPrime:
    """The prime ``(x_j : j in vars)``; ``vars`` holds 1-based indices."""

    n: int
    vars: frozenset

    def __post_init__(self):
        vs = frozenset(int(v) for v in self.vars)
        if any(v < 1 or v > self.n for v in vs):
            raise ValueError(f"variable index out of range 1..{self.n}: {sorted(vs)}")
        object.__setattr__(self, "vars", vs)

    @property
    def height(self) -> int:
        return len(self.vars)

    @property
    def dim(self) -> int:
        return self.n - len(self.vars)

    def ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self.n, [unit_vector(self.n, j) for j in self.vars])

    def sort_key(self):
        # descending height, then lex on the variable list
        return (-len(self.vars), tuple(sorted(self.vars)))

    def __le__(self, other: "MonomialPrime") -> bool:
        return self.vars <= other.vars

    def __lt__(self, other: "MonomialPrime") -> bool:
        return self.vars < other.vars

    def __str__(self):
        if not self.vars:
            return "(0)"
        return "(" + ",".join(f"x{j}" for j in sorted(self.vars)) + ")"

    def __repr__(self):
        return f"MonomialPrime({self.n}, {sorted(self.vars)})"


def _check_same(I: MonomialIdeal, J: MonomialIdeal):
    if I.n != J.n:
        raise DimensionMismatch(f"ambient mismatch: {I.n} vs {J.n}")


def _check_len(I: MonomialIdeal, b: Sequence):
    if len(b) != I.n:
        raise DimensionMismatch(f"exponent {tuple(b)} has length {len(b)}, expected {I.n}")


def membership(I: MonomialIdeal, b: Sequence[int]) -> bool:
    """True iff some generator of ``I`` divides ``x^b``."""
    _check_len(I, b)
    return any(leq(g, b) for g in I.gens)


def minimalize(n: int, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
    return MonomialIdeal(n, [tuple(g) for g in gens])


def ideal_sum(I: MonomialIdeal, *others: MonomialIdeal) -> MonomialIdeal:
    gens = list(I.gens)
    for J in others:
        _check_same(I, J)
        gens.extend(J.gens)
    return MonomialIdeal(I.n, gens)


def intersection(I: MonomialIdeal, *others: MonomialIdeal) -> MonomialIdeal:
    """Intersection via pairwise lcm of generators."""
    out = I
    for J in others:
        _check_same(out, J)
        out = MonomialIdeal(out.n, [lcm(g, h) for g in out.gens for h in J.gens])
    return out


def intersect_all(n: int, ideals: Iterable[MonomialIdeal]) -> MonomialIdeal:
    """Intersection of a possibly empty family (empty gives the unit ideal)."""
    return intersection(MonomialIdeal.unit(n), *ideals)


def colon_monomial(I: MonomialIdeal, b: Sequence[int]) -> MonomialIdeal:
    """``I : x^b``."""
    _check_len(I, b)
    return MonomialIdeal(
        I.n, [tuple(max(x - y, 0) for x, y in zip(g, b)) for g in I.gens])


def colon_ideal(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """``I : J`` as the intersection of the colons by the generators of ``J``."""
    _check_same(I, J)
    return intersect_all(I.n, (colon_monomial(I, h) for h in J.gens))


def saturation_var(I: MonomialIdeal, j: int) -> MonomialIdeal:
    """``I : x_j^inf`` (``j`` is 1-based)."""
    return substitute_ones(I, {j})


def saturation_ideal(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """``I : J^inf`` for ``J`` generated by variables."""
    _check_same(I, J)
    variables = []
    for h in J.gens:
        supp = support(h)
        if len(supp) != 1 or sum(h) != 1:
            raise ValueError("saturation_ideal expects an ideal generated by variables")
        variables.extend(supp)
    return intersect_all(I.n, (saturation_var(I, j) for j in variables))


def substitute_ones(I: MonomialIdeal, vars: Iterable[int]) -> MonomialIdeal:
    """Set the variables in ``vars`` to 1.

    Models the extension of ``I`` to the localization of ``S`` at the monomial
    prime generated by the remaining variables.
    """
    drop = {j - 1 for j in vars}
    if any(k < 0 or k >= I.n for k in drop):
        raise ValueError(f"variable index out of range 1..{I.n}")
    return MonomialIdeal(
        I.n, [tuple(0 if k in drop else e for k, e in enumerate(g)) for g in I.gens])


def radical(I: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(I.n, [tuple(min(e, 1) for e in g) for g in I.gens])


def _require_proper(I: MonomialIdeal):
    if not I.is_proper_nonzero():
        raise ImproperIdealError("improper ideal: expected a proper nonzero monomial ideal")


def is_irreducible(I: MonomialIdeal) -> bool:
    """Every generator is a pure power of a single variable."""
    _require_proper(I)
    return all(len(support(g)) == 1 for g in I.gens)


def is_primary(I: MonomialIdeal) -> bool:
    """Every variable occurring in a generator also occurs as a pure power."""
    _require_proper(I)
    pure = set()
    occurring = set()
    for g in I.gens:
        s = support(g)
        occurring |= s
        if len(s) == 1:
            pure |= s
    return occurring <= pure


def is_prime(I: MonomialIdeal) -> Optional[MonomialPrime]:
    _require_proper(I)
    if all(sum(g) == 1 for g in I.gens):
        return MonomialPrime(I.n, frozenset().union(*(support(g) for g in I.gens)))
    return None


def prime_of(I: MonomialIdeal) -> Optional[MonomialPrime]:
    """Like :func:`is_prime` but returns None instead of raising on unit/zero.

    The zero ideal is the prime with no variables.
    """
    if I.is_zero():
        return MonomialPrime(I.n, frozenset())
    if I.is_unit():
        return None
    return is_prime(I)


def degree_box(*ideals: MonomialIdeal) -> Exponent:
    """Per-coordinate bound ``max exponent + 1`` over all generators."""
    n = ideals[0].n
    out = [0] * n
    for I in ideals:
        for k, e in enumerate(I.max_exponents()):
            out[k] = max(out[k], e)
    return tuple(e + 1 for e in out)
