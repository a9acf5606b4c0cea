from src.filters.relevance import (
    RelevanceReport,
    RelevanceTolerances,
    SeedConditions,
    check_r1,
    check_r2,
    check_r3,
    check_r4,
    periodized_seed,
    relevance_report,
    seed_conditions,
    transfer_function,
)
from src.filters.sequence import FilterSequence, Provenance, extract_filter, reflect

__all__ = [
    "FilterSequence",
    "Provenance",
    "RelevanceReport",
    "RelevanceTolerances",
    "SeedConditions",
    "check_r1",
    "check_r2",
    "check_r3",
    "check_r4",
    "extract_filter",
    "periodized_seed",
    "reflect",
    "relevance_report",
    "seed_conditions",
    "transfer_function",
]
