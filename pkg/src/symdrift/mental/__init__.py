"""Table-guided translation: expression routing with extend/reuse/refine."""

from .oracles import EquivalenceOracle, LexiconOracle, LLMOracle, lexicon_oracle, llm_oracle
from .table import (
    EXTEND,
    MentalTable,
    REFINE,
    REUSE,
    SymbolRef,
    TableEntry,
    UpdateEvent,
    camel_case_symbol,
    normalize_expression,
)
from .translate import (
    Proposal,
    TraceEvent,
    TranslationState,
    instantiate,
    process_expression,
    translate_with_mental,
)

__all__ = [
    "EXTEND", "EquivalenceOracle", "LLMOracle", "LexiconOracle", "MentalTable",
    "Proposal", "REFINE", "REUSE", "SymbolRef", "TableEntry", "TraceEvent",
    "TranslationState", "UpdateEvent", "camel_case_symbol", "instantiate",
    "lexicon_oracle", "llm_oracle", "normalize_expression",
    "process_expression", "translate_with_mental",
]
