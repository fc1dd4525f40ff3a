"""Alternating scheduler for the anaphora and PP-attachment modules.

The two modules are called in turn, anaphora first, over a working copy of
the sentence. Each call only takes the decisions that no longer depend on
an open decision of the other module; everything else is skipped and
revisited by the next call of its module. Each decision is taken exactly
once, so repeated calls split the work rather than redo it.

Documents are processed sentence by sentence. Leftovers of a sentence are
never reopened; its entities feed the focus list used by later sentences.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import anaphora, attachment
from .anaphora import entity_snapshot
from .model import (
    AnnotatedSentence,
    AttachmentRuleTable,
    DiscourseState,
    EntitySnapshot,
    SemanticLexicon,
    Status,
    ValidationError,
    build_initial_state,
)
from .trace import ANAPHORA, ATTACHMENT, PassReport, TraceEvent

logger = logging.getLogger(__name__)

COMPLETE = "complete"
DEADLOCKED = "deadlocked"
DEADLOCK_REASON = "deadlock"


@dataclass
class SentenceResult:
    state: AnnotatedSentence
    trace: list[TraceEvent] = field(default_factory=list)
    reports: list[PassReport] = field(default_factory=list)
    module_calls: int = 0
    outcome: str = COMPLETE
    deadlocked: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.outcome == COMPLETE

    def decisions(self) -> dict[str, tuple]:
        """Final ``(status, antecedent-or-site, reason)`` per anaphor/PP id."""
        return {x.id: x.outcome() for x in [*self.state.anaphors, *self.state.pps]}


@dataclass
class CycleMetrics:
    module_calls: int
    progress_per_pass: list[int]
    decisions_per_module: dict[str, int]
    cycles: int


def resolve_sentence(s: AnnotatedSentence, d: DiscourseState, rules: AttachmentRuleTable,
                     lex: SemanticLexicon) -> SentenceResult:
    state = build_initial_state(s, lex)
    result = SentenceResult(state)

    def run(module: str) -> int:
        result.module_calls += 1
        n = result.module_calls
        if module == ANAPHORA:
            _, report, events = anaphora.anaphora_pass(state, d, lex, n)
        else:
            _, report, events = attachment.attachment_pass(state, rules, lex, n)
        result.reports.append(report)
        result.trace.extend(events)
        return report.progress

    first = True
    while True:
        progress = run(ANAPHORA)
        if not first and not state.open_items():
            break
        progress += run(ATTACHMENT)
        first = False
        if not state.open_items():
            break
        if progress == 0:
            _mark_deadlock(result)
            break
    return result


def _mark_deadlock(result: SentenceResult) -> None:
    for item in result.state.open_items():
        item.give_up(DEADLOCK_REASON)
        result.deadlocked.append(item.id)
    result.outcome = DEADLOCKED
    logger.info("sentence %d deadlocked on %s", result.state.index, result.deadlocked)


SalienceHook = Callable[[AnnotatedSentence, DiscourseState, SemanticLexicon],
                        list[tuple[str, EntitySnapshot]]]


def subject_first_salience(s: AnnotatedSentence, d: DiscourseState,
                           lex: SemanticLexicon) -> list[tuple[str, EntitySnapshot]]:
    """Entities of a finished sentence: subject first, then textual order.

    Resolved pronouns stand for their antecedents; open or unresolvable
    pronouns contribute nothing.
    """

    def entity(np_id):
        np = s.np(np_id)
        if not np.is_pronoun:
            return np.id, entity_snapshot(np, lex)
        a = s.anaphor_for_np(np_id)
        if a is None or a.status is not Status.RESOLVED:
            return None
        return a.antecedent, anaphora.lookup_entity(a.antecedent, s, d, lex)

    order = sorted(s.nps, key=lambda np: np.span)
    ids = [np.id for np in order]
    if s.subject is not None:
        ids.remove(s.subject)
        ids.insert(0, s.subject)
    out, seen = [], set()
    for np_id in ids:
        ent = entity(np_id)
        if ent is None or ent[0] in seen:
            continue
        seen.add(ent[0])
        out.append(ent)
    return out


def resolve_document(doc: Sequence[AnnotatedSentence], rules: AttachmentRuleTable,
                     lex: SemanticLexicon, discourse: Optional[DiscourseState] = None,
                     salience: SalienceHook = subject_first_salience):
    """Resolve sentences in order, threading the focus list between them.

    Returns ``(results, final discourse state)``.
    """
    d = discourse.copy() if discourse is not None else DiscourseState()
    results = []
    last = None
    for s in doc:
        if last is not None and s.index <= last:
            raise ValueError(f"sentence indices not increasing at {s.index}")
        last = s.index
        try:
            r = resolve_sentence(s, d, rules, lex)
        except ValidationError:
            logger.error("sentence %d failed validation", s.index)
            raise
        results.append(r)
        d.promote(salience(r.state, d, lex), s.index)
    return results, d


def cycle_metrics(r: SentenceResult) -> CycleMetrics:
    per_module = {ANAPHORA: 0, ATTACHMENT: 0}
    for ev in r.trace:
        if ev.terminal:
            per_module[ev.module] += 1
    passes = [rep.pass_number for rep in r.reports]
    assert passes == list(range(1, r.module_calls + 1))
    assert all(ev.pass_number <= r.module_calls for ev in r.trace)
    return CycleMetrics(
        module_calls=r.module_calls,
        progress_per_pass=[rep.progress for rep in r.reports],
        decisions_per_module=per_module,
        cycles=(r.module_calls + 1) // 2,
    )
