"""Seeded random test-case synthesis.

Coefficients are random integers in [-9, 9] placed on random monomials up to
a requested degree, so exact mode sees exact data and float mode sees the
same values in doubles.  Closed inputs are synthesized by construction
(d of a potential form, dbar of a potential function, ddbar of a potential),
which both guarantees the precondition and supplies a residual oracle.
"""

from __future__ import annotations

import random

from .calculus import (ComplexForm11, Form01, PForm, dbar_function, ddbar,
                       exterior_d)
from .fields import COMPLEX, REAL, ScalarField
from .multiindex import enumerate_indices
from .scalars import QC


def random_degree_vector(rng: random.Random, m: int, max_degree: int) -> tuple[int, ...]:
    total = rng.randint(0, max_degree)
    d = [0] * m
    for _ in range(total):
        d[rng.randrange(m)] += 1
    return tuple(d)


def _random_coefficient(rng: random.Random, kind: str, exact: bool):
    re = rng.randint(-9, 9)
    if kind == COMPLEX:
        im = rng.randint(-9, 9)
        if re == 0 and im == 0:
            re = 1
        return QC(re, im) if exact else complex(re, im)
    if re == 0:
        re = 1
    return re


def random_scalar_field(rng: random.Random, m: int, capacity: int, max_degree: int,
                        kind: str = REAL, exact: bool = True,
                        terms: int = 3) -> ScalarField:
    coeffs: dict = {}
    for _ in range(terms):
        deg = random_degree_vector(rng, m, max_degree)
        coeffs[deg] = _random_coefficient(rng, kind, exact)
    return ScalarField(m, capacity, kind, exact, coeffs)


def random_pform(rng: random.Random, n: int, p: int, capacity: int, max_degree: int,
                 kind: str = REAL, exact: bool = True, terms: int = 2) -> PForm:
    comps = {}
    for idx in enumerate_indices(n, p):
        comps[idx] = random_scalar_field(rng, n, capacity, max_degree, kind, exact, terms)
    return PForm(n, p, capacity, kind, exact, comps)


def random_closed_pform(rng: random.Random, n: int, p_plus_1: int, capacity: int,
                        max_degree: int, kind: str = REAL, exact: bool = True,
                        terms: int = 2) -> PForm:
    """A d-closed (p+1)-form of coefficient degree <= max_degree, built as
    d of a random p-form of degree <= max_degree + 1."""
    for _ in range(64):
        g = random_pform(rng, n, p_plus_1 - 1, capacity, max_degree + 1, kind, exact, terms)
        f = exterior_d(g)
        if not f.is_zero():
            return f
    return exterior_d(random_pform(rng, n, p_plus_1 - 1, capacity, max_degree + 1,
                                   kind, exact, terms))


def random_complex_function(rng: random.Random, n: int, capacity: int, max_degree: int,
                            exact: bool = True, terms: int = 3) -> ScalarField:
    return random_scalar_field(rng, 2 * n, capacity, max_degree, COMPLEX, exact, terms)


def random_form01(rng: random.Random, n: int, capacity: int, max_degree: int,
                  exact: bool = True, terms: int = 2) -> Form01:
    return Form01([random_scalar_field(rng, 2 * n, capacity, max_degree, COMPLEX,
                                       exact, terms) for _ in range(n)])


def random_dbar_closed_form01(rng: random.Random, n: int, capacity: int,
                              max_degree: int, exact: bool = True,
                              terms: int = 3) -> Form01:
    """A dbar-closed (0,1)-form, built as dbar of a random function."""
    for _ in range(64):
        u = random_complex_function(rng, n, capacity, max_degree + 1, exact, terms)
        g = dbar_function(u)
        if not g.is_zero():
            return g
    return dbar_function(random_complex_function(rng, n, capacity, max_degree + 1,
                                                 exact, terms))


def random_complexform11(rng: random.Random, n: int, capacity: int, max_degree: int,
                         exact: bool = True, terms: int = 2) -> ComplexForm11:
    return ComplexForm11([[random_scalar_field(rng, 2 * n, capacity, max_degree,
                                               COMPLEX, exact, terms)
                           for _ in range(n)] for _ in range(n)])


def random_closed_complexform11(rng: random.Random, n: int, capacity: int,
                                potential_degree: int, exact: bool = True,
                                terms: int = 3) -> tuple[ScalarField, ComplexForm11]:
    """A d-closed (1,1)-form as ddbar of a random potential (returned with it)."""
    for _ in range(64):
        w = random_complex_function(rng, n, capacity, potential_degree, exact, terms)
        f = ddbar(w)
        if not f.is_zero():
            return w, f
    w = random_complex_function(rng, n, capacity, potential_degree, exact, terms)
    return w, ddbar(w)
