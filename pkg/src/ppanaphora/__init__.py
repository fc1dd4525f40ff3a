"""Coordinated pronoun resolution and PP attachment over annotated sentences."""

from .anaphora import anaphora_pass, candidate_antecedents, resolve_anaphor, skip_anaphor
from .attachment import attach_pp, attachment_pass, object_class, skip_pp
from .coordinator import (
    SentenceResult,
    cycle_metrics,
    resolve_document,
    resolve_sentence,
)
from .model import (
    AnnotatedSentence,
    AttachmentRuleTable,
    DiscourseState,
    SemanticLexicon,
    build_initial_state,
    validate_sentence,
)
from .trace import TraceEvent

__all__ = [
    "AnnotatedSentence", "AttachmentRuleTable", "DiscourseState", "SemanticLexicon",
    "SentenceResult", "TraceEvent", "anaphora_pass", "attach_pp", "attachment_pass",
    "build_initial_state", "candidate_antecedents", "cycle_metrics", "object_class",
    "resolve_anaphor", "resolve_document", "resolve_sentence", "skip_anaphor", "skip_pp",
    "validate_sentence",
]
__version__ = "0.1.0"
