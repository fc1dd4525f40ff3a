"""Rule-table PP attachment into frame roles or NP-modifier sites.

A PP waits while any open anaphor precedes it, or while its own object
contains an open anaphor: the rules key on the object's semantic class,
which a pronoun only acquires once resolved.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from .model import (
    DEFAULT_RULE,
    AnnotatedSentence,
    Anaphor,
    AttachmentRule,
    AttachmentRuleTable,
    PrepPhrase,
    SemanticLexicon,
    SiteRef,
    Status,
)
from .trace import ATTACH, ATTACHMENT, SKIP, UNATTACHED, PassReport, TraceEvent

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AttachmentDecision:
    pp: str
    chosen: Optional[SiteRef]
    rule: Optional[AttachmentRule] = None
    score: int = 0
    reason: Optional[str] = None

    @property
    def attached(self) -> bool:
        return self.chosen is not None


def pp_blockers(p: PrepPhrase, s: AnnotatedSentence) -> list[tuple[str, Anaphor]]:
    """Open anaphors holding ``p`` back, tagged with the clause that fires.

    Anaphors inside the object come first, then those before the preposition.
    """
    obj = s.np(p.object_np)
    inside = [("object-contains-anaphor", a) for a in s.anaphors
              if a.status.open and obj.contains_position(a.position)]
    before = [("preceded-by-anaphor", a) for a in s.anaphors
              if a.status.open and a.position < p.position]
    return inside + before


def skip_pp(p: PrepPhrase, s: AnnotatedSentence) -> Optional[str]:
    """Return the skip reason, or None when ``p`` may be attached now."""
    blockers = pp_blockers(p, s)
    if blockers:
        tag, a = blockers[0]
        return f"{tag}({a.id})"
    return None


def object_class(p: PrepPhrase, s: AnnotatedSentence, lex: SemanticLexicon) -> Optional[str]:
    """Semantic class of the PP object.

    A pronoun object takes its antecedent's class; an unresolvable one has
    no class (None), so only the single-site default can attach it.
    """
    obj = s.np(p.object_np)
    if not obj.is_pronoun:
        return lex.class_of(obj)
    a = s.anaphor_for_np(obj.id)
    if a.status is Status.RESOLVED:
        return a.resolved_class
    if a.status.open:
        raise RuntimeError(f"{p.id}: object class read while {a.id} is still open")
    return None


def _governors(site: SiteRef, s: AnnotatedSentence, lex: SemanticLexicon) -> set[str]:
    if site.is_frame_role:
        return {s.frame(site.frame).predicate_lemma}
    np = s.np(site.np)
    if np.is_pronoun:
        a = s.anaphor_for_np(np.id)
        cls = a.resolved_class if a is not None else None
        return {np.head_lemma} | ({cls} if cls else set())
    return {np.head_lemma, lex.class_of(np)}


def attach_pp(p: PrepPhrase, s: AnnotatedSentence, rules: AttachmentRuleTable,
              lex: SemanticLexicon) -> AttachmentDecision:
    """Pick the best-scoring admissible site; ties go to the rightmost site."""
    cls = object_class(p, s, lex)
    best = None
    admissible = []
    for idx, site in enumerate(p.candidate_sites):
        if site.is_frame_role:
            slot = s.frame(site.frame).roles[site.role]
            if not slot.admits(p.preposition, cls):
                continue
        admissible.append(site)
        for rule in rules.matching(_governors(site, s, lex), p.preposition, cls):
            if site.is_frame_role and rule.role != site.role:
                continue
            key = (rule.score, idx)
            if best is None or key > best[0]:
                best = (key, site, rule)
    if best is not None:
        (score, _), site, rule = best
        return AttachmentDecision(p.id, site, rule, score)
    if len(p.candidate_sites) == 1 and admissible:
        return AttachmentDecision(p.id, admissible[0], DEFAULT_RULE, 0)
    return AttachmentDecision(p.id, None, reason="no-rule")


def decide_pp(p: PrepPhrase, s: AnnotatedSentence, rules: AttachmentRuleTable,
              lex: SemanticLexicon) -> AttachmentDecision:
    """Compute and apply the decision for a PP that may proceed."""
    dec = attach_pp(p, s, rules, lex)
    if dec.attached:
        p.attach(dec.chosen)
        if dec.chosen.is_frame_role:
            s.frame(dec.chosen.frame).roles[dec.chosen.role].fill(p.object_np)
    else:
        p.give_up(dec.reason)
    return dec


def attachment_pass(s: AnnotatedSentence, rules: AttachmentRuleTable,
                    lex: SemanticLexicon, pass_number: int = 2):
    """One call of the attachment procedure over every open PP, left to right.

    Mutates ``s``; returns ``(s, report, events)``.
    """
    report = PassReport(pass_number, ATTACHMENT)
    events = []
    for p in s.pps:
        if not p.status.open:
            continue
        reason = skip_pp(p, s)
        if reason is not None:
            p.skip(reason)
            ev = TraceEvent(pass_number, ATTACHMENT, p.id, SKIP, reason)
        else:
            dec = decide_pp(p, s, rules, lex)
            if dec.attached:
                ev = TraceEvent(pass_number, ATTACHMENT, p.id, ATTACH, str(dec.chosen))
            else:
                ev = TraceEvent(pass_number, ATTACHMENT, p.id, UNATTACHED, dec.reason)
        logger.debug(ev.format())
        report.record(ev)
        events.append(ev)
    return s, report, events
