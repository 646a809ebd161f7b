"""Verification harness: equal root valuation data imply equisingular spectral curves.

Only the forward implication is asserted. The converse is recorded in the
report for information and never treated as a failure.
"""

import logging
from dataclasses import dataclass

from plane_singularities.branch import Branch
from plane_singularities.equisingularity import (
    DEFAULT_WORKERS,
    EquisingularityDatum,
    equal_equisingularity_witness,
    equisingularity_datum,
)
from plane_singularities.errors import InvariantViolation
from plane_singularities.root_valuation import (
    RootValuationDatum,
    equal_root_valuation_witness,
    root_valuation_datum,
)
from plane_singularities.spectral import MatrixSeries, eigen_expansions

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectralData:
    branches: list[Branch]
    rootval: RootValuationDatum
    equising: EquisingularityDatum


@dataclass(frozen=True)
class GkmReport:
    first: SpectralData
    second: SpectralData
    rootval_witness: tuple[int, ...] | None
    equising_witness: tuple[int, ...] | None

    @property
    def rootval_equal(self) -> bool:
        return self.rootval_witness is not None

    @property
    def equising_equal(self) -> bool:
        return self.equising_witness is not None

    @property
    def implication(self) -> str:
        return "FAIL" if self.rootval_equal and not self.equising_equal else "PASS"

    @property
    def converse_holds(self) -> bool:
        """Informational only: equisingular germs with equal root valuation data."""
        return not self.equising_equal or self.rootval_equal


def spectral_data(matrix: MatrixSeries, precision=None, workers: int = DEFAULT_WORKERS) -> SpectralData:
    branches = eigen_expansions(matrix, precision)
    return SpectralData(
        branches=branches,
        rootval=root_valuation_datum(branches),
        equising=equisingularity_datum(branches, workers),
    )


def verify_gkm_lemma(
    first: MatrixSeries, second: MatrixSeries, precision=None, workers: int = DEFAULT_WORKERS
) -> GkmReport:
    """Compare both data of two regular semisimple matrices.

    Equal root valuation data with unequal equisingularity data is raised as
    InvariantViolation; every other outcome is a PASS.
    """
    a = spectral_data(first, precision, workers)
    b = spectral_data(second, precision, workers)
    rootval_witness = (
        equal_root_valuation_witness(a.rootval, b.rootval) if a.rootval.d == b.rootval.d else None
    )
    report = GkmReport(
        first=a,
        second=b,
        rootval_witness=rootval_witness,
        equising_witness=equal_equisingularity_witness(a.equising, b.equising),
    )
    logger.debug(
        "rootval equal %s, equising equal %s", report.rootval_equal, report.equising_equal
    )
    if report.implication == "FAIL":
        raise InvariantViolation(
            "root valuation data agree but the spectral curves are not equisingular"
        )
    return report
