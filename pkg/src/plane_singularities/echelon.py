"""Exact echelon reduction over sparse vectors (pure, no I/O).

Vectors are dicts from sortable keys (t-orders, monomials, ...) to field
elements: Fractions, or Cyclotomic numbers when a branch carries roots of
unity. The leading entry of a vector is the one with the smallest key, so for
order-indexed vectors the pivots of an echelon basis are exactly the orders
realized by elements of the span. This is the oracle behind valuation
semigroups and local quotient dimensions.
"""

from collections.abc import Hashable, Iterable, Mapping

from plane_singularities.errors import PreconditionError


class EchelonBasis:
    """Incrementally built echelon basis; each stored row has leading entry 1."""

    def __init__(self):
        self._rows: dict[Hashable, dict] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> set:
        return set(self._rows)

    def reduce(self, vector: Mapping) -> dict:
        """The remainder of `vector` after eliminating every known pivot."""
        work = {k: v for k, v in vector.items() if v}
        while work:
            lead = min(work)
            row = self._rows.get(lead)
            if row is None:
                break
            factor = work[lead]
            for key, value in row.items():
                updated = work.get(key, 0) - factor * value
                if updated:
                    work[key] = updated
                else:
                    work.pop(key, None)
        return work

    def insert(self, vector: Mapping) -> bool:
        """Add `vector` to the span; False when it was already inside."""
        remainder = self.reduce(vector)
        if not remainder:
            return False
        lead = min(remainder)
        scale = remainder[lead]
        self._rows[lead] = {key: value / scale for key, value in remainder.items()}
        return True

    def contains(self, vector: Mapping) -> bool:
        return not self.reduce(vector)


def echelon_pivot_orders(vectors: Iterable[Mapping[int, object]], bound: int) -> set[int]:
    """Leading orders of an echelon basis of the span of order-indexed vectors."""
    basis = EchelonBasis()
    for vector in vectors:
        outside = [order for order in vector if not 0 <= order < bound]
        if outside:
            raise PreconditionError(f"orders {sorted(outside)} outside [0, {bound})")
        basis.insert(vector)
    return basis.pivots
