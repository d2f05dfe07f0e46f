"""Finitely supported distributions, Markov garblings, and the contraction order.

A distribution is a sorted list of atoms with positive rational weights that
sum to one. Garbling it through a row-stochastic matrix pools mass parcels at
their barycenters; a triple (source, transition, target) is only constructed
after both defining identities

    weights(source) @ F == weights(target)
    (weights(source) * atoms(source)) @ F == weights(target) * atoms(target)

have been checked exactly, column by column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BarycenterIdentityError,
    DimensionError,
    DistributionError,
    EntryRangeError,
    RowSumError,
    WeightIdentityError,
)
from .linalg import Matrix, format_rational, parse_rational


@dataclass(frozen=True)
class DiscreteDistribution:
    """Purely atomic distribution: strictly increasing atoms, positive weights."""

    atoms: tuple[Fraction, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.atoms or len(self.atoms) != len(self.weights):
            raise DistributionError("atoms and weights must be equally long and nonempty")
        for k in range(len(self.atoms) - 1):
            if self.atoms[k] >= self.atoms[k + 1]:
                raise DistributionError("atoms must be strictly increasing")
        for w in self.weights:
            if w <= 0:
                raise DistributionError("weights must be positive")
        if sum(self.weights) != 1:
            raise DistributionError("weights must sum to exactly 1")

    @classmethod
    def from_pairs(cls, atoms, weights) -> "DiscreteDistribution":
        return cls(
            tuple(parse_rational(a) for a in atoms),
            tuple(parse_rational(w) for w in weights),
        )

    @classmethod
    def point_mass(cls, atom) -> "DiscreteDistribution":
        return cls((parse_rational(atom),), (Fraction(1),))

    def mean(self) -> Fraction:
        return sum(p * a for p, a in zip(self.weights, self.atoms))

    def integrated_cdf(self, t: Fraction) -> Fraction:
        """Integral of the cdf from -inf to t: sum of w * max(t - a, 0)."""
        return sum((w * (t - a) for a, w in zip(self.atoms, self.weights) if a < t), Fraction(0))

    def to_json(self) -> dict:
        return {
            "atoms": [format_rational(a) for a in self.atoms],
            "weights": [format_rational(w) for w in self.weights],
        }

    @classmethod
    def from_json(cls, obj) -> "DiscreteDistribution":
        if not isinstance(obj, dict) or "atoms" not in obj or "weights" not in obj:
            raise ValueError("distribution JSON needs 'atoms' and 'weights' lists")
        return cls.from_pairs(obj["atoms"], obj["weights"])


@dataclass(frozen=True)
class TransitionMatrix:
    """Row-stochastic (Markov) matrix: entries in [0, 1], every row sums to 1."""

    matrix: Matrix

    def __post_init__(self) -> None:
        for i, row in enumerate(self.matrix.entries):
            for j, x in enumerate(row):
                if x and (x < 0 or x > 1):
                    raise EntryRangeError(
                        f"entry ({i},{j}) = {format_rational(x)} outside [0, 1]",
                        row=i,
                        column=j,
                    )
            total = sum((x for x in row if x), Fraction(0))
            if total != 1:
                raise RowSumError(f"row {i} sums to {format_rational(total)}, not 1")

    @classmethod
    def from_rows(cls, rows) -> "TransitionMatrix":
        return cls(Matrix.from_rows(rows))

    @classmethod
    def _trusted(cls, matrix: Matrix) -> "TransitionMatrix":
        # Fast path for callers whose construction already guarantees the
        # invariants exactly; everything user-facing goes through __init__.
        self = object.__new__(cls)
        object.__setattr__(self, "matrix", matrix)
        return self

    @classmethod
    def identity(cls, n: int) -> "TransitionMatrix":
        return cls(Matrix.identity(n))

    @property
    def rows(self) -> int:
        return self.matrix.rows

    @property
    def cols(self) -> int:
        return self.matrix.cols

    def column(self, j: int) -> tuple[Fraction, ...]:
        return self.matrix.column(j)

    def to_json(self) -> dict:
        return {"rows": [[format_rational(x) for x in row] for row in self.matrix.entries]}

    @classmethod
    def from_json(cls, obj) -> "TransitionMatrix":
        if not isinstance(obj, dict) or "rows" not in obj:
            raise ValueError("matrix JSON needs a 'rows' grid")
        return cls.from_rows(obj["rows"])


@dataclass(frozen=True)
class SmpcTriple:
    """A certified (source, transition, target) garbling triple.

    Construction re-checks both defining identities exactly, so any held
    instance is valid by construction.
    """

    source: DiscreteDistribution
    transition: TransitionMatrix
    target: DiscreteDistribution

    def __post_init__(self) -> None:
        n, m = len(self.source.atoms), len(self.target.atoms)
        if self.transition.rows != n or self.transition.cols != m:
            raise DimensionError(
                f"transition is {self.transition.rows}x{self.transition.cols}, "
                f"expected {n}x{m}"
            )
        p, a = self.source.weights, self.source.atoms
        q, b = self.target.weights, self.target.atoms
        zero = Fraction(0)
        got_weight = [zero] * m
        got_moment = [zero] * m
        for i in range(n):
            pi = p[i]
            pai = pi * a[i]
            row = self.transition.matrix.entries[i]
            for j in range(m):
                x = row[j]
                if x:
                    got_weight[j] += pi * x
                    got_moment[j] += pai * x
        for j in range(m):
            if got_weight[j] != q[j]:
                raise WeightIdentityError(
                    f"weight identity fails at column {j}: "
                    f"{format_rational(got_weight[j])} != {format_rational(q[j])}",
                    column=j,
                )
        for j in range(m):
            if got_moment[j] != q[j] * b[j]:
                raise BarycenterIdentityError(
                    f"barycenter identity fails at column {j}: "
                    f"{format_rational(got_moment[j])} != {format_rational(q[j] * b[j])}",
                    column=j,
                )

    @classmethod
    def _trusted(
        cls,
        source: DiscreteDistribution,
        transition: TransitionMatrix,
        target: DiscreteDistribution,
    ) -> "SmpcTriple":
        # Fast path for apply_transition, whose outputs satisfy both
        # identities by the construction arithmetic itself.
        self = object.__new__(cls)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "transition", transition)
        object.__setattr__(self, "target", target)
        return self

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "transition": self.transition.to_json(),
            "target": self.target.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> "SmpcTriple":
        if not isinstance(obj, dict):
            raise ValueError("triple JSON must be an object")
        for key in ("source", "transition", "target"):
            if key not in obj:
                raise ValueError(f"triple JSON needs '{key}'")
        return cls(
            DiscreteDistribution.from_json(obj["source"]),
            TransitionMatrix.from_json(obj["transition"]),
            DiscreteDistribution.from_json(obj["target"]),
        )


def validate_smpc(
    source: DiscreteDistribution,
    transition: TransitionMatrix,
    target: DiscreteDistribution,
) -> SmpcTriple:
    """Certify the triple, or raise naming the first violated identity."""
    return SmpcTriple(source, transition, target)


def apply_transition(source: DiscreteDistribution, transition: TransitionMatrix) -> SmpcTriple:
    """Garble ``source`` through ``transition`` and return the certified triple.

    Zero-mass columns are dropped (they carry no atom), and columns whose
    barycenters coincide are merged by summing them, so any row-stochastic
    matrix is a legal input. Target atoms come out sorted with the matrix
    columns permuted to match.
    """
    n = len(source.atoms)
    if transition.rows != n:
        raise DimensionError(f"transition has {transition.rows} rows, expected {n}")
    m = transition.cols
    p, a = source.weights, source.atoms
    zero = Fraction(0)
    masses = [zero] * m
    moments = [zero] * m
    for i in range(n):
        pi = p[i]
        pai = pi * a[i]
        row = transition.matrix.entries[i]
        for j in range(m):
            x = row[j]
            if x:
                masses[j] += pi * x
                moments[j] += pai * x
    cells: dict[Fraction, tuple[Fraction, list[Fraction]]] = {}
    for j in range(m):
        if masses[j] == 0:
            continue
        barycenter = moments[j] / masses[j]
        col = transition.matrix.column(j)
        if barycenter in cells:
            old_mass, old_col = cells[barycenter]
            cells[barycenter] = (
                old_mass + masses[j],
                [x + y for x, y in zip(old_col, col)],
            )
        else:
            cells[barycenter] = (masses[j], list(col))
    atoms = tuple(sorted(cells))
    weights = tuple(cells[b][0] for b in atoms)
    grid = tuple(tuple(cells[b][1][i] for b in atoms) for i in range(n))
    target = DiscreteDistribution(atoms, weights)
    # Both identities hold by the arithmetic above: the target weights are the
    # computed column masses and each atom is its column's exact barycenter.
    return SmpcTriple._trusted(source, TransitionMatrix._trusted(Matrix(grid)), target)


def mpc_violation(source: DiscreteDistribution, candidate: DiscreteDistribution) -> str | None:
    """Why ``candidate`` is not a mean-preserving contraction of ``source``.

    Returns ``None`` when it is one. The test is the integrated-cdf criterion:
    equal means, and the integrated cdf of the candidate weakly below that of
    the source. Both integrated cdfs are piecewise linear with kinks only at
    atoms, so comparing at every atom of either distribution decides the
    pointwise inequality.
    """
    if candidate.mean() != source.mean():
        return "mean mismatch"
    for t in sorted(set(source.atoms) | set(candidate.atoms)):
        if candidate.integrated_cdf(t) > source.integrated_cdf(t):
            return f"integrated cdf exceeds at {format_rational(t)}"
    return None


def is_mpc(source: DiscreteDistribution, candidate: DiscreteDistribution) -> bool:
    """Exact convex-order test: is ``candidate`` an MPC of ``source``?"""
    return mpc_violation(source, candidate) is None
