"""Seeded random corpus shared by the property suites.

Three families, all with n <= 4, exponents <= 2 and at most 7 facets:
random generator sets, random maximal faces over {0, 1, inf}, and pairs of
faces with complementary infinite parts (these are mostly not shellable).
"""
import random
from dataclasses import dataclass
from typing import Optional

from prettyclean import (
    INF,
    MonomialIdeal,
    Multicomplex,
    ass_totally_ordered,
    enumerate_facets,
    filtration_via_maximal_shelling,
    find_maximal_shelling,
    find_pretty_clean_filtration,
    find_shelling,
    ideal_from_multicomplex,
    is_borel_type,
    multicomplex_from_ideal,
    pret_criterion,
)

MAX_FACETS = 7
SEED = 20240611


def _accept(I, G):
    return I.is_proper_nonzero() and len(enumerate_facets(G)) <= MAX_FACETS


def _from_generators(rng):
    while True:
        n = rng.randint(2, 4)
        gens = [tuple(rng.randint(0, 2) for _ in range(n)) for _ in range(rng.randint(1, 4))]
        gens = [g for g in gens if any(g)]
        if not gens:
            continue
        I = MonomialIdeal(n, gens)
        G = multicomplex_from_ideal(I)
        if _accept(I, G):
            return I, G


def _from_faces(rng):
    while True:
        n = rng.choice((3, 4, 4, 4))
        faces = [tuple(rng.choice((0, 1, INF, INF)) for _ in range(n)) for _ in range(rng.randint(2, 3))]
        G = Multicomplex(n, faces)
        I = ideal_from_multicomplex(G)
        if _accept(I, G):
            return I, G


def _complementary(rng):
    while True:
        n = 4
        perm = rng.sample(range(n), n)
        A = set(perm[:2])
        f1 = tuple(INF if k in A else rng.choice((0, 0, 1)) for k in range(n))
        f2 = tuple(rng.choice((0, 0, 1)) if k in A else INF for k in range(n))
        faces = [f1, f2]
        if rng.random() < 0.6:
            faces.append(tuple(rng.choice((0, 1, INF)) for _ in range(n)))
        G = Multicomplex(n, faces)
        I = ideal_from_multicomplex(G)
        if _accept(I, G):
            return I, G


def build_corpus(seed: int = SEED, sizes=(110, 60, 60)):
    rng = random.Random(seed)
    out = []
    for family, count in zip((_from_generators, _from_faces, _complementary), sizes):
        for k in range(count):
            I, G = family(rng)
            out.append((f"{family.__name__[1:]}-{k}", I, G))
    return out


@dataclass
class Outcome:
    label: str
    ideal: MonomialIdeal
    mc: Multicomplex
    facet_count: int
    shelling: Optional[tuple]
    shelling_dim: Optional[tuple]
    maximal: Optional[tuple]
    search_filtration: object
    maxshell_filtration: object
    pret: bool
    totally_ordered: bool
    borel: bool


def evaluate(label, I, G) -> Outcome:
    maximal = find_maximal_shelling(G)
    return Outcome(
        label=label,
        ideal=I,
        mc=G,
        facet_count=len(enumerate_facets(G)),
        shelling=find_shelling(G),
        shelling_dim=find_shelling(G, strategy="dimension"),
        maximal=maximal,
        search_filtration=find_pretty_clean_filtration(I),
        maxshell_filtration=filtration_via_maximal_shelling(I) if maximal else None,
        pret=pret_criterion(I)[0],
        totally_ordered=ass_totally_ordered(I),
        borel=is_borel_type(I),
    )
