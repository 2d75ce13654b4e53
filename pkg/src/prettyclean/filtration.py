"""Multigraded prime filtrations of ``S/I``.

A filtration is stored as an ascending chain of monomial ideals
``I = I_0 ⊂ I_1 ⊂ ... ⊂ I_r = S`` with ``I_i = I_{i-1} + (x^{b_i})``.  The
factor ``I_i / I_{i-1}`` is ``S/(I_{i-1} : x^{b_i})`` shifted by ``b_i``, so a
step is prime exactly when that colon is a prime ideal.  Step 1 is the bottom
of the filtration of ``S/I``.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .core import (
    Exponent,
    Face,
    MonomialIdeal,
    MonomialPrime,
    colon_monomial,
    ideal_sum,
    intersect_all,
    is_irreducible,
    is_primary,
    membership,
    prime_of,
    radical,
    support,
)
from .decomposition import irreducible_decomposition, primary_decomposition
from .multicomplex import (
    INF,
    Multicomplex,
    enumerate_facets,
    face_prime,
    intersection_facets,
    irreducible_ideal_of_face,
    multicomplex_from_ideal,
)
from .shellability import (
    DEFAULT_MAX_NODES,
    _Budget,
    check_maximal_shelling,
    check_shelling_order,
    differing_coordinates,
    find_maximal_shelling,
)


class FiltrationError(ValueError):
    pass


def _mono(n: int, b: Sequence[int]) -> MonomialIdeal:
    return MonomialIdeal(n, [tuple(b)])


@dataclass(frozen=True)
class FiltrationStep:
    ideal_before: MonomialIdeal
    witness: Exponent
    prime: MonomialPrime
    shift: Exponent

    @property
    def ideal_after(self) -> MonomialIdeal:
        return ideal_sum(self.ideal_before, _mono(self.ideal_before.n, self.witness))

    @property
    def degree(self) -> int:
        return sum(self.shift)


def make_step(before: MonomialIdeal, witness: Sequence[int]) -> FiltrationStep:
    """Step adjoining ``x^witness``; the colon must be prime."""
    witness = tuple(witness)
    P = prime_of(colon_monomial(before, witness))
    if P is None:
        raise FiltrationError(f"colon by {witness} is not a prime ideal")
    return FiltrationStep(before, witness, P, witness)


@dataclass
class Classification:
    prime: bool
    clean: bool
    pretty_clean: bool
    almost_clean: bool


@dataclass
class PrimeFiltration:
    base: MonomialIdeal
    steps: List[FiltrationStep] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def primes(self) -> List[MonomialPrime]:
        return [s.prime for s in self.steps]

    def chain(self) -> List[MonomialIdeal]:
        return [self.base] + [s.ideal_after for s in self.steps]

    def classification(self) -> Classification:
        return verify_filtration(self).classification


def is_pretty_clean_sequence(primes: Sequence[MonomialPrime]) -> bool:
    """No earlier prime is properly contained in a later one."""
    return not any(primes[i] < primes[j]
                   for i in range(len(primes)) for j in range(i + 1, len(primes)))


def _supp_of_module(I: MonomialIdeal, P: MonomialPrime) -> bool:
    # P ⊇ I  (for monomial ideals: every generator involves a variable of P)
    return all(support(g) & P.vars for g in I.gens)


@dataclass
class FiltrationReport:
    filtration: PrimeFiltration
    errors: List[Tuple[int, str]]
    classification: Classification
    length: int
    facet_count: Optional[int]

    @property
    def ok(self) -> bool:
        return not self.errors


def verify_filtration(f: PrimeFiltration) -> FiltrationReport:
    """Recheck every step and classify the filtration.

    Step indices in ``errors`` are 1-based; index 0 marks whole-filtration
    problems.  For pretty clean filtrations the length is compared with the
    facet count of the multicomplex of the base ideal.
    """
    errors: List[Tuple[int, str]] = []
    n = f.base.n
    current = f.base
    for i, s in enumerate(f.steps, start=1):
        if s.ideal_before != current:
            errors.append((i, f"ideal_before {s.ideal_before} does not continue the chain at {current}"))
        if membership(s.ideal_before, s.witness):
            errors.append((i, "witness already lies in ideal_before"))
        col = colon_monomial(s.ideal_before, s.witness)
        if col != s.prime.ideal():
            errors.append((i, f"colon {col} differs from recorded prime {s.prime}"))
        if tuple(s.shift) != tuple(s.witness):
            errors.append((i, "shift differs from the witness exponent"))
        current = s.ideal_after
    if not current.is_unit():
        errors.append((0, f"chain ends at {current}, not at the unit ideal"))

    primes = f.primes
    is_prime_filt = not errors
    ass: List[MonomialPrime] = []
    mins: List[MonomialPrime] = []
    facet_count = None
    if f.base.is_proper_nonzero():
        report = primary_decomposition(f.base)
        ass, mins = report.ass, report.min_primes
        facet_count = len(enumerate_facets(multicomplex_from_ideal(f.base)))
    elif f.base.is_zero():
        ass = mins = [MonomialPrime(n, frozenset())]
        facet_count = 1
    supp = set(primes)
    if is_prime_filt:
        missing = [P for P in ass if P not in supp]
        if missing:
            errors.append((0, f"associated primes missing from the support: {[str(P) for P in missing]}"))
        outside = [P for P in supp if not _supp_of_module(f.base, P)]
        if outside:
            errors.append((0, f"primes outside Supp(S/I): {[str(P) for P in outside]}"))
    pretty = is_prime_filt and is_pretty_clean_sequence(primes)
    clean = is_prime_filt and all(P in mins for P in primes)
    almost = is_prime_filt and all(P in ass for P in primes)
    if pretty and facet_count is not None and len(primes) != facet_count:
        errors.append((0, f"pretty clean filtration of length {len(primes)} but {facet_count} facets"))
    return FiltrationReport(f, errors, Classification(is_prime_filt, clean, pretty, almost),
                            len(primes), facet_count)


def filtration_from_witnesses(base: MonomialIdeal, witnesses: Sequence[Sequence[int]]) -> PrimeFiltration:
    """Build the chain ``base + (x^{b_1}) + ... `` recording each colon."""
    steps = []
    current = base
    for b in witnesses:
        b = tuple(b)
        col = colon_monomial(current, b)
        P = prime_of(col)
        if P is None:
            raise FiltrationError(f"colon {col} by {b} is not prime")
        steps.append(FiltrationStep(current, b, P, b))
        current = ideal_sum(current, _mono(base.n, b))
    return PrimeFiltration(base, steps)


# --- pretty clean search -------------------------------------------------

@functools.lru_cache(maxsize=4096)
def _ass(I: MonomialIdeal) -> Tuple[MonomialPrime, ...]:
    if I.is_zero():
        return (MonomialPrime(I.n, frozenset()),)
    return tuple(primary_decomposition(I).ass)


def witness_bounds(I: MonomialIdeal) -> Tuple[int, ...]:
    """Per-variable maximum pure-power exponent over the irreducible components."""
    out = [0] * I.n
    for C in irreducible_decomposition(I):
        for g in C.gens:
            (j,) = support(g)
            out[j - 1] = max(out[j - 1], g[j - 1])
    return tuple(out)


def find_pretty_clean_filtration(I: MonomialIdeal,
                                 max_nodes: Optional[int] = DEFAULT_MAX_NODES) -> Optional[PrimeFiltration]:
    """Backtracking search for a multigraded pretty clean filtration of ``S/I``.

    Witnesses range over the box ``0..B_k`` with ``B_k`` from
    :func:`witness_bounds`.  A step may only use an associated prime of
    ``S/I`` that does not properly contain a prime used below it.  Dead
    states ``(ideal, used primes)`` are memoized.
    """
    if not I.is_proper_nonzero():
        raise FiltrationError("expected a proper nonzero ideal")
    n = I.n
    ass = set(primary_decomposition(I).ass)
    bounds = witness_bounds(I)
    box = sorted(itertools.product(*(range(B + 1) for B in bounds)),
                 key=lambda b: (-sum(b), b))
    budget = _Budget(max_nodes)
    dead = set()
    witnesses: List[Exponent] = []

    def candidates(cur: MonomialIdeal, used: FrozenSet[MonomialPrime]):
        out = []
        for b in box:
            if membership(cur, b):
                continue
            P = prime_of(colon_monomial(cur, b))
            if P is None or P not in ass:
                continue
            if any(Q < P for Q in used):
                continue
            out.append((P.sort_key(), -sum(b), b, P))
        out.sort(key=lambda t: (t[0], t[1], t[2]))
        return out

    def extend(cur: MonomialIdeal, used: FrozenSet[MonomialPrime]) -> bool:
        if cur.is_unit():
            return True
        state = (cur, used)
        if state in dead:
            return False
        budget.tick()
        # the rest of the chain filters S/cur, so it must use all of Ass(S/cur)
        if any(Q < P for P in _ass(cur) for Q in used):
            dead.add(state)
            return False
        for _, _, b, P in candidates(cur, used):
            witnesses.append(b)
            if extend(ideal_sum(cur, _mono(n, b)), used | {P}):
                return True
            witnesses.pop()
        dead.add(state)
        return False

    if not extend(I, frozenset()):
        return None
    return filtration_from_witnesses(I, witnesses)


# --- maximal shellings ----------------------------------------------------

def f_monomial(G: Multicomplex, order: Sequence[Face], i: int, strict: bool = True):
    """``f_i`` for a maximal shelling ``order`` (``i`` is 1-based).

    Every maximal facet ``w`` of ``Γ(u_1..u_{i-1}) ∩ Γ(u_i)`` differs from
    ``u_i`` in one coordinate ``λ``; ``f_i`` is the product of the
    ``x_λ^{w(λ)+1}``.  Returns the exponent of ``f_i`` and the ``(w, λ)``
    table.  With ``strict=False`` offending facets are listed with
    ``λ = None`` and left out of the product instead of raising.
    """
    order = list(order)
    u = order[i - 1]
    W = intersection_facets(order[:i - 1], u)
    t = [0] * G.n
    table = []
    for w in W:
        diff = differing_coordinates(w, u)
        if len(diff) != 1:
            if strict:
                raise FiltrationError(f"intersection facet {w} differs from u_{i} in coordinates {diff}")
            table.append((w, None))
            continue
        lam = diff[0]
        table.append((w, lam))
        t[lam - 1] += w[lam - 1] + 1
    return tuple(t), table


def verify_colon_identity(G: Multicomplex, order: Sequence[Face], i: int) -> bool:
    """``∩_{j<i} I(Γ(u_j)) + I(Γ(u_i)) == I(Γ(u_i)) + (f_i)``."""
    order = list(order)
    Ii = irreducible_ideal_of_face(order[i - 1])
    left = ideal_sum(intersect_all(G.n, (irreducible_ideal_of_face(u) for u in order[:i - 1])), Ii)
    t, _ = f_monomial(G, order, i)
    right = ideal_sum(Ii, _mono(G.n, t))
    return left == right


@dataclass(frozen=True)
class PrimaryStep:
    ideal_before: MonomialIdeal
    witness: Exponent
    primary: MonomialIdeal
    prime: MonomialPrime


@dataclass
class PrimaryFiltration:
    base: MonomialIdeal
    steps: List[PrimaryStep]


def build_maximal_shelling_filtration(G: Multicomplex, order: Sequence[Face], s: int) -> PrimaryFiltration:
    """Primary filtration of ``S/I(Γ)`` from a maximal shelling.

    The chain is ``K_r ⊂ K_{r-1} ⊂ ... ⊂ K_s ⊂ S`` with
    ``K_k = ∩_{j<=k} I(Γ(u_j))``.  For ``k > s`` the step adjoins ``f_k`` and
    its factor is ``S/(I(Γ(u_k)) : f_k)``, an irreducible ideal primary to
    ``P_{u_k}``; the last step has factor ``S/K_s``, which is primary.
    """
    verdict = check_maximal_shelling(G, order, s)
    if not verdict.overall:
        raise FiltrationError("not a maximal shelling: " + "; ".join(verdict.failures()))
    order = list(verdict.order)
    n, r = G.n, len(order)
    K = [None] * (r + 1)
    for k in range(1, r + 1):
        K[k] = intersect_all(n, (irreducible_ideal_of_face(u) for u in order[:k]))
    steps = []
    for k in range(r, s, -1):
        t, _ = f_monomial(G, order, k)
        J = colon_monomial(irreducible_ideal_of_face(order[k - 1]), t)
        if not is_irreducible(J) or prime_of(radical(J)) != face_prime(order[k - 1]):
            raise FiltrationError(f"factor at k={k} is not irreducible primary to P_u")
        if colon_monomial(K[k], t) != J or ideal_sum(K[k], _mono(n, t)) != K[k - 1]:
            raise FiltrationError(f"chain step k={k} does not match the colon identity")
        steps.append(PrimaryStep(K[k], t, J, face_prime(order[k - 1])))
    terminal = K[s]
    if not is_primary(terminal):
        raise FiltrationError("terminal ideal is not primary")
    steps.append(PrimaryStep(terminal, (0,) * n, terminal, prime_of(radical(terminal))))
    return PrimaryFiltration(K[r], steps)


def quotient_basis(Q: MonomialIdeal) -> List[Exponent]:
    """Monomials in the variables of ``rad(Q)`` outside the primary ideal ``Q``."""
    if not is_primary(Q):
        raise FiltrationError(f"{Q} is not primary")
    P = prime_of(radical(Q))
    top = Q.max_exponents()
    ranges = [range(top[k]) if k + 1 in P.vars else (0,) for k in range(Q.n)]
    return [b for b in itertools.product(*ranges) if not membership(Q, b)]


def refine_primary_to_clean(Q: MonomialIdeal, base: Optional[MonomialIdeal] = None,
                            witness: Optional[Sequence[int]] = None) -> List[FiltrationStep]:
    """Clean refinement of a primary factor ``S/Q``.

    By default refines ``S/Q`` itself.  Given a chain position ``base`` and
    ``witness`` with ``base : x^witness == Q``, refines the step
    ``base ⊂ base + (x^witness)`` instead.  Basis monomials are adjoined by
    decreasing degree (lex tiebreak), so every colon is ``rad(Q)``.
    """
    n = Q.n
    if base is None:
        base, witness = Q, (0,) * n
    witness = tuple(witness)
    if colon_monomial(base, witness) != Q:
        raise FiltrationError("base : witness does not equal Q")
    P = prime_of(radical(Q))
    steps = []
    current = base
    for c in sorted(quotient_basis(Q), key=lambda b: (-sum(b), tuple(-x for x in b))):
        b = tuple(x + y for x, y in zip(witness, c))
        col = colon_monomial(current, b)
        if col != P.ideal():
            raise FiltrationError(f"refinement step {b} has colon {col}, expected {P}")
        steps.append(FiltrationStep(current, b, P, b))
        current = ideal_sum(current, _mono(n, b))
    if current != ideal_sum(base, _mono(n, witness)):
        raise FiltrationError("refinement does not reach base + (witness)")
    return steps


def prime_filtration_from_primary(pf: PrimaryFiltration) -> PrimeFiltration:
    steps: List[FiltrationStep] = []
    for st in pf.steps:
        steps.extend(refine_primary_to_clean(st.primary, st.ideal_before, st.witness))
    return PrimeFiltration(pf.base, steps)


# --- simplicial complexes -------------------------------------------------

def squarefree_face(n: int, F) -> Face:
    return tuple(INF if j + 1 in F else 0 for j in range(n))


def stanley_reisner_ideal(n: int, facets: Sequence) -> MonomialIdeal:
    return intersect_all(n, (facet_prime(n, F).ideal() for F in facets))


def facet_prime(n: int, F) -> MonomialPrime:
    return MonomialPrime(n, frozenset(range(1, n + 1)) - frozenset(F))


def simplicial_shelling_numbers(order: Sequence) -> List[int]:
    """``a_i`` = number of facets of ``<F_1..F_{i-1}> ∩ <F_i>``, ``a_1 = 0``."""
    out = []
    for i, F in enumerate(order):
        meets = {frozenset(F) & frozenset(E) for E in order[:i]}
        maximal = [A for A in meets if not any(A < B for B in meets)]
        out.append(len(maximal))
    return out


@dataclass
class SimplicialCleanFiltration:
    filtration: PrimeFiltration
    shelling_numbers: List[int]
    # shifts listed top-down, i.e. aligned with the facet order
    shifts: List[int]


def simplicial_clean_filtration(facets: Sequence, order: Optional[Sequence] = None,
                                n: Optional[int] = None) -> SimplicialCleanFiltration:
    """Clean filtration ``M_i = ∩_{j<=r-i} P_j`` of ``K[Δ]`` from a shelling.

    Each step's squarefree witness is found by search; its degree must equal
    the shelling number of the corresponding facet.
    """
    facets = [frozenset(F) for F in facets]
    order = [frozenset(F) for F in (order if order is not None else facets)]
    if sorted(map(sorted, order)) != sorted(map(sorted, facets)):
        raise FiltrationError("order is not a permutation of the facets")
    if any(A < B for A in facets for B in facets):
        raise FiltrationError("facets must be pairwise incomparable")
    if n is None:
        n = max((max(F) for F in facets if F), default=0)
    G = Multicomplex(n, tuple(squarefree_face(n, F) for F in facets))
    verdict = check_shelling_order(G, [squarefree_face(n, F) for F in order])
    if not verdict.overall:
        raise FiltrationError("order is not a shelling: " + "; ".join(verdict.failures()))

    r = len(order)
    K = [intersect_all(n, (facet_prime(n, F).ideal() for F in order[:k])) for k in range(r + 1)]
    numbers = simplicial_shelling_numbers(order)
    squarefree = sorted(itertools.product((0, 1), repeat=n), key=lambda b: (sum(b), b))
    steps = []
    for k in range(r, 0, -1):
        P = facet_prime(n, order[k - 1])
        witness = None
        for b in squarefree:
            if (not membership(K[k], b) and colon_monomial(K[k], b) == P.ideal()
                    and ideal_sum(K[k], _mono(n, b)) == K[k - 1]):
                witness = b
                break
        if witness is None:
            raise FiltrationError(f"no squarefree monomial generates step k={k}")
        if sum(witness) != numbers[k - 1]:
            raise FiltrationError(
                f"witness degree {sum(witness)} differs from shelling number {numbers[k - 1]} at k={k}")
        steps.append(FiltrationStep(K[k], witness, P, witness))
    filt = PrimeFiltration(K[r], steps)
    cls = verify_filtration(filt).classification
    if not cls.clean:
        raise FiltrationError("resulting filtration is not clean")
    return SimplicialCleanFiltration(filt, numbers, [sum(s.witness) for s in reversed(steps)])


def filtration_via_maximal_shelling(I: MonomialIdeal, **search) -> Optional[PrimeFiltration]:
    G = multicomplex_from_ideal(I)
    found = find_maximal_shelling(G, **search)
    if found is None:
        return None
    order, s, _ = found
    return prime_filtration_from_primary(build_maximal_shelling_filtration(G, order, s))
