"""Seeded random instance generation for tests and the CLI.

Atoms are drawn as distinct small-denominator rationals, weights as random
positive integers normalized to total 1, so every generated object stays
exact end to end. All generators take an explicit ``random.Random`` so a seed
reproduces the corpus byte for byte.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .distributions import DiscreteDistribution, SmpcTriple, TransitionMatrix, apply_transition
from .linalg import Matrix, null_space_vector, rank
from .lp import StandardFormLP
from .persuasion import PiecewiseLinearFn


def random_distribution(rng: Random, n: int, spread: int = 12, max_denominator: int = 5) -> DiscreteDistribution:
    atoms: set[Fraction] = set()
    while len(atoms) < n:
        atoms.add(Fraction(rng.randint(-spread, spread), rng.randint(1, max_denominator)))
    raw = [rng.randint(1, 9) for _ in range(n)]
    total = sum(raw)
    return DiscreteDistribution(tuple(sorted(atoms)), tuple(Fraction(w, total) for w in raw))


def random_transition(rng: Random, n: int, m: int) -> TransitionMatrix:
    grid = []
    for _ in range(n):
        row = [rng.randint(0, 6) for _ in range(m)]
        while sum(row) == 0:
            row = [rng.randint(0, 6) for _ in range(m)]
        total = sum(row)
        grid.append(tuple(Fraction(x, total) for x in row))
    return TransitionMatrix(Matrix(tuple(grid)))


def random_smpc(rng: Random, n: int, m: int) -> SmpcTriple:
    """Random garbling triple; the target may have fewer than m atoms."""
    return apply_transition(random_distribution(rng, n), random_transition(rng, n, m))


def random_split_instance(rng: Random, n: int, generic: bool = True) -> SmpcTriple:
    """Triple with exactly n+1 target atoms and a unique null direction.

    With ``generic`` set, degenerate certificates are resampled away: every
    null coefficient nonzero and a strict maximizer of |c| inside each sign
    group. Ties make more than two columns zeroable (the tied ones empty
    together), which the uniqueness probe treats separately.
    """
    while True:
        triple = random_smpc(rng, n, n + 1)
        if len(triple.target.atoms) != n + 1:
            continue
        if rank(triple.transition.matrix) != n:
            continue
        if generic:
            c = null_space_vector(triple.transition.matrix)
            if any(v == 0 for v in c):
                continue
            positives = sorted(abs(v) for v in c if v > 0)
            negatives = sorted(abs(v) for v in c if v < 0)
            if len(positives) >= 2 and positives[-1] == positives[-2]:
                continue
            if len(negatives) >= 2 and negatives[-1] == negatives[-2]:
                continue
        return triple


def perturb_mean(rng: Random, dist: DiscreteDistribution) -> DiscreteDistribution:
    """Shift the top atom upward: same shape, strictly larger mean."""
    delta = Fraction(1, rng.randint(1, 9))
    atoms = dist.atoms[:-1] + (dist.atoms[-1] + delta,)
    return DiscreteDistribution(atoms, dist.weights)


def random_lp(rng: Random, max_total: int = 8) -> StandardFormLP:
    """Random LP with nvars + nrows <= max_total and a bounded feasible set.

    The first row caps the variable sum, so no generated instance is
    unbounded; feasibility varies with the remaining random rows.
    """
    nvars = rng.randint(1, max_total // 2)
    nextra = rng.randint(1, max_total - nvars - 1)
    rows = [[Fraction(1)] * nvars]
    rhs = [Fraction(rng.randint(1, 8))]
    senses = ["le"]
    for _ in range(nextra):
        rows.append([Fraction(rng.randint(-3, 3)) for _ in range(nvars)])
        rhs.append(Fraction(rng.randint(-4, 6)))
        senses.append(rng.choice(["le", "ge", "eq"]))
    objective = tuple(Fraction(rng.randint(-4, 4)) for _ in range(nvars))
    return StandardFormLP(
        objective=objective,
        constraint_matrix=Matrix(tuple(tuple(r) for r in rows)),
        rhs=tuple(rhs),
        senses=tuple(senses),
    )


def random_piecewise_linear(
    rng: Random, lo: Fraction, hi: Fraction, interior: int = 2
) -> PiecewiseLinearFn:
    """Random piecewise-linear function whose domain is exactly [lo, hi]."""
    xs: set[Fraction] = set()
    while len(xs) < interior:
        den = rng.randint(2, 6)
        num = rng.randint(1, den - 1)
        x = lo + (hi - lo) * Fraction(num, den)
        if lo < x < hi:
            xs.add(x)
    knot_xs = sorted({lo, hi} | xs)
    knots = tuple(
        (x, Fraction(rng.randint(-8, 8), rng.randint(1, 3))) for x in knot_xs
    )
    return PiecewiseLinearFn(knots)
