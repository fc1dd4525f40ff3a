"""Pronoun resolution against the sentence so far and the focus list.

Resolution of an anaphor is postponed while an ambiguous PP before it is
still open, since the antecedent may sit inside that PP's eventual role.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .model import (
    AnnotatedSentence,
    Anaphor,
    DiscourseState,
    EntitySnapshot,
    NounPhrase,
    PrepPhrase,
    SemanticLexicon,
    Status,
)
from .trace import ANAPHORA, RESOLVE, SKIP, UNRESOLVABLE, PassReport, TraceEvent

logger = logging.getLogger(__name__)

INTRA = "intra-sentential"
FOCUS = "focus-list"

# rank tiers, best first
TIER_FOCUS_HEAD = 3
TIER_SUBJECT = 2
TIER_INTRA = 1
TIER_FOCUS = 0


class Candidate(NamedTuple):
    entity: str
    rank: int
    provenance: str
    recency: tuple


@dataclass
class CandidateSet:
    anaphor: str
    candidates: list[Candidate] = field(default_factory=list)
    # no preceding candidate, but a following mention would fit
    cataphoric: bool = False

    @property
    def ids(self) -> list[str]:
        return [c.entity for c in self.candidates]

    def __len__(self) -> int:
        return len(self.candidates)


class Resolution(NamedTuple):
    status: Status
    value: str  # antecedent id when resolved, reason otherwise


def anaphor_blockers(a: Anaphor, s: AnnotatedSentence) -> list[PrepPhrase]:
    """Open ambiguous PPs before ``a`` whose object does not contain it."""
    out = []
    for p in s.pps:
        if p.position >= a.position:
            break
        if p.status.open and p.ambiguous and not s.np(p.object_np).contains_position(a.position):
            out.append(p)
    return out


def skip_anaphor(a: Anaphor, s: AnnotatedSentence) -> Optional[str]:
    """Return the skip reason, or None when ``a`` may be resolved now."""
    blockers = anaphor_blockers(a, s)
    if blockers:
        return f"blocked-by({blockers[0].id})"
    return None


def entity_snapshot(np: NounPhrase, lex: SemanticLexicon) -> EntitySnapshot:
    return EntitySnapshot(lex.class_of(np), lex.agreement_of(np), lex.is_proper(np))


def lookup_entity(eid: str, s: AnnotatedSentence, d: DiscourseState,
                  lex: SemanticLexicon) -> EntitySnapshot:
    if s.has_np(eid):
        return entity_snapshot(s.np(eid), lex)
    return d.snapshots[eid]


def _passes_filters(a: Anaphor, pronoun: NounPhrase, ent: EntitySnapshot,
                    lex: SemanticLexicon) -> bool:
    agr = lex.agreement_of(pronoun)
    if a.kind == "demonstrative-one-anaphor":
        return agr.number_compatible(ent.agreement) and not ent.proper
    if not agr.compatible(ent.agreement):
        return False
    if a.kind == "possessive":
        return ent.semantic_class in lex.possessor_classes
    return True


def _mention_entity(np: NounPhrase, s: AnnotatedSentence) -> Optional[str]:
    """Entity a mention stands for; resolved pronouns map to their antecedent."""
    if not np.is_pronoun:
        return np.id
    ana = s.anaphor_for_np(np.id)
    if ana is not None and ana.status is Status.RESOLVED:
        return ana.antecedent
    return None


def candidate_antecedents(a: Anaphor, s: AnnotatedSentence, d: DiscourseState,
                          lex: SemanticLexicon) -> CandidateSet:
    pronoun = s.np(a.np_id)
    intra: dict[str, tuple] = {}
    for np in s.nps:
        if np.end > a.position:
            continue
        eid = _mention_entity(np, s)
        if eid is None:
            continue
        key = (np.end, np.start)
        if eid not in intra or key > intra[eid]:
            intra[eid] = key

    subject = None
    if s.subject is not None and s.np(s.subject).end <= a.position:
        subject = _mention_entity(s.np(s.subject), s)
    focus_ids = d.focus_ids
    head = focus_ids[0] if focus_ids else None

    cands = []
    for eid, (end, start) in intra.items():
        if not _passes_filters(a, pronoun, lookup_entity(eid, s, d, lex), lex):
            continue
        tier = TIER_FOCUS_HEAD if eid == head else TIER_SUBJECT if eid == subject else TIER_INTRA
        cands.append(Candidate(eid, tier, INTRA, (1, end, start)))
    for i, eid in enumerate(focus_ids):
        if eid in intra or not _passes_filters(a, pronoun, d.snapshots[eid], lex):
            continue
        tier = TIER_FOCUS_HEAD if eid == head else TIER_FOCUS
        cands.append(Candidate(eid, tier, FOCUS, (0, -i, 0)))
    cands.sort(key=lambda c: (c.rank, c.recency), reverse=True)

    result = CandidateSet(a.id, cands)
    if not cands:
        result.cataphoric = any(
            np.start > a.position and not np.is_pronoun
            and _passes_filters(a, pronoun, entity_snapshot(np, lex), lex)
            for np in s.nps
        )
    return result


def resolve_anaphor(a: Anaphor, c: CandidateSet) -> Resolution:
    if c.candidates:
        return Resolution(Status.RESOLVED, c.candidates[0].entity)
    if c.cataphoric:
        return Resolution(Status.UNRESOLVABLE, "cataphor-out-of-scope")
    return Resolution(Status.UNRESOLVABLE, "no-candidate")


def decide_anaphor(a: Anaphor, s: AnnotatedSentence, d: DiscourseState,
                   lex: SemanticLexicon) -> Resolution:
    """Compute and apply the decision for an anaphor that may proceed."""
    res = resolve_anaphor(a, candidate_antecedents(a, s, d, lex))
    if res.status is Status.RESOLVED:
        a.resolve(res.value, lookup_entity(res.value, s, d, lex).semantic_class)
    else:
        a.give_up(res.value)
    return res


def anaphora_pass(s: AnnotatedSentence, d: DiscourseState, lex: SemanticLexicon,
                  pass_number: int = 1):
    """One call of the anaphora module over every open anaphor, left to right.

    Mutates ``s``; returns ``(s, report, events)``.
    """
    report = PassReport(pass_number, ANAPHORA)
    events = []
    for a in s.anaphors:
        if not a.status.open:
            continue
        reason = skip_anaphor(a, s)
        if reason is not None:
            a.skip(reason)
            ev = TraceEvent(pass_number, ANAPHORA, a.id, SKIP, reason)
        else:
            res = decide_anaphor(a, s, d, lex)
            action = RESOLVE if res.status is Status.RESOLVED else UNRESOLVABLE
            ev = TraceEvent(pass_number, ANAPHORA, a.id, action, res.value)
        logger.debug(ev.format())
        report.record(ev)
        events.append(ev)
    return s, report, events
