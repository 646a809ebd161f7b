"""Certified dimensions of truncated local quotients (pure data, no I/O)."""

from dataclasses import dataclass
from enum import Enum


class QuotientMethod(Enum):
    JACOBIAN_QUOTIENT = "jacobian-quotient"
    TJURINA_QUOTIENT = "tjurina-quotient"
    NORMALIZATION_CODIM = "normalization-codim"
    SEMIGROUP_GAPS = "semigroup-gaps"


@dataclass(frozen=True)
class LocalQuotientCertificate:
    """A dimension together with the truncation degree at which it stabilized.

    `rechecked_at` is the larger truncation at which the same value was
    reproduced; uncertified values are never wrapped in a certificate.
    """

    value: int
    stabilized_at: int
    method: QuotientMethod
    rechecked_at: int
