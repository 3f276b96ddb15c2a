"""Oracles, exhaustive sweeps, structural predicates and randomized audits."""

from .audit import AuditReport, predicate_audit, predicate_corpus, s6_membership_audit
from .oracles import sum3_oracle, sum4_oracle, zero_sum_quadruples, zero_sum_triples
from .predicates import (
    NotACHMError,
    NotApplicable,
    PredicateId,
    Violation,
    applies,
    check_all,
    predicate_check,
)
from .sweep import InfeasibleSweep, SweepReport, format_report, grid_sweep, write_witnesses
from .three_rows import canonical_key, classify_three_rows

__all__ = [
    "AuditReport", "InfeasibleSweep", "NotACHMError", "NotApplicable", "PredicateId",
    "SweepReport", "Violation", "applies", "canonical_key", "check_all", "classify_three_rows",
    "format_report", "grid_sweep", "predicate_audit", "predicate_check", "predicate_corpus",
    "s6_membership_audit", "sum3_oracle", "sum4_oracle", "write_witnesses",
    "zero_sum_quadruples", "zero_sum_triples",
]
