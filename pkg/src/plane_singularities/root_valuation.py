"""Root valuation data (w, r) and their equivalence (pure, no I/O).

The d eigenvalue embeddings are indexed by (branch, conjugate). w is the Galois
permutation, one cycle per branch, and r[i][j] is the valuation of the
difference of embeddings i and j. Two data are equivalent when a relabeling
sigma carries one onto the other: (sigma w sigma^-1, sigma . r).

Equivalence is decided through a canonical form: the lexicographically least
encoding of (w, r) over all labelings, found by a search that only expands the
labelings that can still reach the least encoding and skips candidates
exchanged by a transposition that is an automorphism.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from plane_singularities.branch import Branch, conjugate_difference_valuation
from plane_singularities.errors import (
    CapExceeded,
    InsufficientPrecision,
    InvariantViolation,
    NotDistinct,
    PreconditionError,
    SizeMismatch,
)
from plane_singularities.series import INDETERMINATE, INFINITY, difference_valuation

logger = logging.getLogger(__name__)

MAX_CANONICAL_SIZE = 10


@dataclass(frozen=True)
class RootValuationDatum:
    """w is 0-based (w[i] is the image of i); r has None on its diagonal."""

    d: int
    w: tuple[int, ...]
    r: tuple[tuple[Fraction | None, ...], ...]

    def __post_init__(self):
        d = self.d
        if sorted(self.w) != list(range(d)):
            raise PreconditionError(f"w = {self.w} is not a permutation of 0..{d - 1}")
        if len(self.r) != d or any(len(row) != d for row in self.r):
            raise PreconditionError(f"r is not a {d} x {d} matrix")
        for i in range(d):
            if self.r[i][i] is not None:
                raise PreconditionError("the diagonal of r is unused and must be empty")
            for j in range(d):
                if i != j and self.r[i][j] != self.r[j][i]:
                    raise InvariantViolation(f"r is not symmetric at ({i}, {j})")
                if i != j and self.r[self.w[i]][self.w[j]] != self.r[i][j]:
                    raise InvariantViolation(f"r is not invariant under w at ({i}, {j})")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    if len({i, j, k}) == 3 and self.r[i][k] < min(self.r[i][j], self.r[j][k]):
                        raise InvariantViolation(f"ultrametric inequality fails at ({i}, {j}, {k})")

    def cycles(self) -> list[list[int]]:
        """Disjoint cycles of w, 1-based, each starting at its minimum, sorted."""
        seen = set()
        cycles = []
        for start in range(self.d):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            current = self.w[start]
            while current != start:
                cycle.append(current)
                seen.add(current)
                current = self.w[current]
            cycles.append([i + 1 for i in cycle])
        return sorted(cycles)

    def cycle_type(self) -> list[int]:
        return sorted(len(cycle) for cycle in self.cycles())

    def relabel(self, sigma: tuple[int, ...]) -> "RootValuationDatum":
        """The datum with embedding i renamed sigma[i]."""
        inverse = [0] * self.d
        for i, image in enumerate(sigma):
            inverse[image] = i
        w = tuple(sigma[self.w[inverse[k]]] for k in range(self.d))
        r = tuple(
            tuple(None if a == b else self.r[inverse[a]][inverse[b]] for b in range(self.d))
            for a in range(self.d)
        )
        return RootValuationDatum(self.d, w, r)


def root_valuation_datum(branches: list[Branch]) -> RootValuationDatum:
    """Index embeddings branch by branch, conjugates 0..d_i-1 in order."""
    labels = [(b, j) for b, branch in enumerate(branches) for j in range(branch.d)]
    offsets = []
    total = 0
    for branch in branches:
        offsets.append(total)
        total += branch.d
    w = tuple(offsets[b] + (j + 1) % branches[b].d for b, j in labels)
    conjugates = {}
    r: list[list[Fraction | None]] = [[None] * total for _ in range(total)]
    for first in range(total):
        for second in range(first + 1, total):
            (b1, j1), (b2, j2) = labels[first], labels[second]
            if b1 == b2:
                value = conjugate_difference_valuation(branches[b1], (j2 - j1) % branches[b1].d)
            else:
                for key in ((b1, j1), (b2, j2)):
                    if key not in conjugates:
                        conjugates[key] = branches[key[0]].conjugate(key[1])
                value = difference_valuation(conjugates[(b1, j1)], conjugates[(b2, j2)])
                if value is INDETERMINATE:
                    raise InsufficientPrecision(
                        f"embeddings {first + 1} and {second + 1} agree up to their truncation"
                    )
                if value == INFINITY:
                    raise NotDistinct(f"embeddings {first + 1} and {second + 1} coincide")
            r[first][second] = r[second][first] = value
    return RootValuationDatum(total, w, tuple(tuple(row) for row in r))


# --- canonical form -----------------------------------------------------------


def _cycle_lengths(datum: RootValuationDatum) -> list[int]:
    lengths = [0] * datum.d
    for cycle in datum.cycles():
        for i in cycle:
            lengths[i - 1] = len(cycle)
    return lengths


def _entry(datum: RootValuationDatum, lengths, order: list[int], position: dict, candidate: int) -> tuple:
    d = datum.d
    preimage = datum.w.index(candidate)
    return (
        lengths[candidate],
        tuple(datum.r[candidate][placed] for placed in order),
        position.get(datum.w[candidate], d),
        position.get(preimage, d),
    )


def _swap_is_automorphism(datum: RootValuationDatum, a: int, b: int) -> bool:
    def swap(i):
        return b if i == a else a if i == b else i

    for i in range(datum.d):
        if swap(datum.w[swap(i)]) != datum.w[i]:
            return False
        for j in range(datum.d):
            if i != j and datum.r[swap(i)][swap(j)] != datum.r[i][j]:
                return False
    return True


def canonical_form(datum: RootValuationDatum) -> tuple[tuple, tuple[int, ...]]:
    """(least encoding, a labeling order achieving it).

    The encoding lists, position by position, the cycle length of the element,
    its r-values against earlier positions, and where its w-image and w-preimage
    were placed (d when not yet placed).
    """
    if datum.d > MAX_CANONICAL_SIZE:
        raise CapExceeded(f"canonical form supports d <= {MAX_CANONICAL_SIZE}, got {datum.d}")
    lengths = _cycle_lengths(datum)
    best: list = [None, None]
    visited = 0

    def search(order: list[int], position: dict, code: tuple) -> None:
        nonlocal visited
        visited += 1
        if len(order) == datum.d:
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, tuple(order)
            return
        entries = {
            i: _entry(datum, lengths, order, position, i)
            for i in range(datum.d) if i not in position
        }
        least = min(entries.values())
        prefix = code + (least,)
        if best[0] is not None and prefix > best[0][: len(prefix)]:
            return
        expanded: list[int] = []
        for candidate in sorted(i for i, entry in entries.items() if entry == least):
            if any(_swap_is_automorphism(datum, other, candidate) for other in expanded):
                continue
            expanded.append(candidate)
            position[candidate] = len(order)
            order.append(candidate)
            search(order, position, prefix)
            order.pop()
            del position[candidate]

    search([], {}, ())
    logger.debug("canonical form of a size-%d datum visited %d nodes", datum.d, visited)
    return best[0], best[1]


def _quick_invariants(datum: RootValuationDatum) -> tuple:
    rows = sorted(
        tuple(sorted(value for value in row if value is not None)) for row in datum.r
    )
    return tuple(datum.cycle_type()), tuple(rows)


def equal_root_valuation_witness(
    first: RootValuationDatum, second: RootValuationDatum
) -> tuple[int, ...] | None:
    """A relabeling sigma with first.relabel(sigma) == second, or None."""
    if first.d != second.d:
        raise SizeMismatch(f"data of sizes {first.d} and {second.d} cannot be compared")
    if _quick_invariants(first) != _quick_invariants(second):
        return None
    code_a, order_a = canonical_form(first)
    code_b, order_b = canonical_form(second)
    if code_a != code_b:
        return None
    sigma = [0] * first.d
    for a, b in zip(order_a, order_b):
        sigma[a] = b
    sigma = tuple(sigma)
    if first.relabel(sigma) != second:
        raise InvariantViolation("canonical forms agree but the induced relabeling does not")
    return sigma


def equal_root_valuation(first: RootValuationDatum, second: RootValuationDatum) -> bool:
    return equal_root_valuation_witness(first, second) is not None

