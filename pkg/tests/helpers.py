"""Shared builders for randomized test sweeps.

Everything is driven by an explicitly seeded random.Random so failures
reproduce exactly.
"""

from __future__ import annotations

import random
from fractions import Fraction

from phaseqm.algebra import GaussianRational, HbarCoeff, PhasePoly
from phaseqm.operators import OpPoly


def random_fraction(rng: random.Random, span: int = 6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def random_gaussian(rng: random.Random, span: int = 6) -> GaussianRational:
    return GaussianRational(random_fraction(rng, span), random_fraction(rng, span))


def random_hbar_coeff(rng: random.Random, max_grade: int = 2) -> HbarCoeff:
    terms = {}
    for k in range(max_grade + 1):
        if rng.random() < 0.6:
            terms[k] = random_gaussian(rng)
    return HbarCoeff(terms)


def random_phase_poly(
    rng: random.Random, max_degree: int = 6, n_terms: int = 5, real: bool = False
) -> PhasePoly:
    monomials = {}
    for _ in range(n_terms):
        a = rng.randint(0, max_degree)
        b = rng.randint(0, max_degree - a)
        if real:
            coeff = HbarCoeff.scalar(random_fraction(rng))
        else:
            coeff = random_hbar_coeff(rng)
        monomials[(a, b)] = monomials.get((a, b), HbarCoeff.zero()) + coeff
    return PhasePoly(monomials)


def random_op_poly(
    rng: random.Random, max_degree: int = 4, n_terms: int = 4
) -> OpPoly:
    words = {}
    for _ in range(n_terms):
        a = rng.randint(0, max_degree)
        b = rng.randint(0, max_degree - a)
        words[(a, b)] = words.get((a, b), HbarCoeff.zero()) + random_hbar_coeff(rng)
    return OpPoly(words)


def naive_reorder(word: str, coeff: HbarCoeff) -> dict[tuple[int, int], HbarCoeff]:
    """Normal-order a single operator word by repeated adjacent swaps.

    The word is a string over {'q', 'p'}; each swap 'pq' -> 'qp' splits off
    a commutator term with one fewer letter.  Deliberately slow and
    independent of the production rewrite, for cross-checking.
    """
    out: dict[tuple[int, int], HbarCoeff] = {}
    stack = [(word, coeff)]
    while stack:
        w, c = stack.pop()
        i = w.find("pq")
        if i < 0:
            key = (w.count("q"), w.count("p"))
            s = out.get(key, HbarCoeff.zero()) + c
            if s.is_zero:
                out.pop(key, None)
            else:
                out[key] = s
            continue
        # p q = q p - i hbar
        stack.append((w[:i] + "qp" + w[i + 2 :], c))
        stack.append((w[:i] + w[i + 2 :], c * HbarCoeff.hbar(1, GaussianRational(0, -1))))
    return out
