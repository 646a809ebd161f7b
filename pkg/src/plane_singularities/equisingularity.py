"""Equisingularity data of plane-curve germs (pure, no I/O).

Two germs are equisingular when a bijection of their branches preserves the
Puiseux characteristic pairs of every branch and all pairwise intersection
numbers. The aggregate invariants (delta, branch count, Milnor number) follow
from that datum alone.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from plane_singularities.branch import Branch, CharPairs, branch_pairs, delta_from_pairs, intersection_number
from plane_singularities.errors import DegenerateInput, PreconditionError

logger = logging.getLogger(__name__)

DEFAULT_WORKERS = 1


@dataclass(frozen=True)
class EquisingularityDatum:
    """Pairs per branch and the symmetric intersection matrix (None on the diagonal)."""

    branches: tuple[CharPairs, ...]
    inter: tuple[tuple[int | None, ...], ...]

    def __post_init__(self):
        size = len(self.branches)
        if len(self.inter) != size or any(len(row) != size for row in self.inter):
            raise PreconditionError(f"intersection matrix is not {size} x {size}")
        for i in range(size):
            if self.inter[i][i] is not None:
                raise PreconditionError("the diagonal of the intersection matrix is unused")
            for j in range(i + 1, size):
                if self.inter[i][j] != self.inter[j][i]:
                    raise PreconditionError(f"intersection matrix is not symmetric at ({i}, {j})")
                if self.inter[i][j] is None or self.inter[i][j] < 0:
                    raise PreconditionError(f"intersection number at ({i}, {j}) must be a non-negative integer")


@dataclass(frozen=True)
class AggregateInvariants:
    delta: int
    branches: int
    milnor: int


def intersection_matrix(branches: list[Branch], workers: int = DEFAULT_WORKERS) -> tuple[tuple[int | None, ...], ...]:
    """Halphen-Zeuthen numbers for every pair, assembled in input order."""
    size = len(branches)
    pairs = list(combinations(range(size), 2))

    def compute(pair: tuple[int, int]) -> int:
        i, j = pair
        return intersection_number(branches[i], branches[j])

    if workers > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            numbers = list(pool.map(compute, pairs))
    else:
        numbers = [compute(pair) for pair in pairs]

    matrix: list[list[int | None]] = [[None] * size for _ in range(size)]
    for (i, j), number in zip(pairs, numbers):
        matrix[i][j] = matrix[j][i] = number
    return tuple(tuple(row) for row in matrix)


def equisingularity_datum(branches: list[Branch], workers: int = DEFAULT_WORKERS) -> EquisingularityDatum:
    pairs = tuple(branch_pairs(branch) for branch in branches)
    return EquisingularityDatum(pairs, intersection_matrix(branches, workers))


def equal_equisingularity_witness(
    first: EquisingularityDatum, second: EquisingularityDatum
) -> tuple[int, ...] | None:
    """A branch bijection sigma (first branch i -> second branch sigma[i]), or None.

    Candidates for branch i are the unused branches of `second` with the same
    pairs; each choice must agree with the intersection numbers against the
    branches already matched.
    """
    size = len(first.branches)
    if size != len(second.branches):
        return None
    if sorted(map(str, first.branches)) != sorted(map(str, second.branches)):
        return None
    sigma: list[int] = []
    used = [False] * size

    def extend() -> bool:
        i = len(sigma)
        if i == size:
            return True
        for j in range(size):
            if used[j] or second.branches[j] != first.branches[i]:
                continue
            if any(first.inter[i][k] != second.inter[j][sigma[k]] for k in range(i)):
                continue
            used[j] = True
            sigma.append(j)
            if extend():
                return True
            sigma.pop()
            used[j] = False
        return False

    return tuple(sigma) if extend() else None


def equal_equisingularity(first: EquisingularityDatum, second: EquisingularityDatum) -> bool:
    return equal_equisingularity_witness(first, second) is not None


@lru_cache(maxsize=256)
def _branch_delta(pairs: CharPairs) -> int:
    return delta_from_pairs(pairs).value


def aggregate_invariants(datum: EquisingularityDatum) -> AggregateInvariants:
    """delta = sum of branch deltas + sum of intersections; mu = 2*delta - r + 1."""
    count = len(datum.branches)
    if count == 0:
        raise DegenerateInput("a germ needs at least one branch")
    delta = sum(_branch_delta(pairs) for pairs in datum.branches)
    delta += sum(datum.inter[i][j] for i, j in combinations(range(count), 2))
    logger.debug("aggregate delta %d over %d branches", delta, count)
    return AggregateInvariants(delta=delta, branches=count, milnor=2 * delta - count + 1)
