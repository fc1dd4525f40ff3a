"""Annotated-sentence data model, lexicon, rule table and validation.

Sentences arrive pre-annotated: noun phrases carry spans and heads, every
pronoun has an anaphor record, and every prepositional phrase lists the
sites it could attach to (left to right). Only the status fields of
anaphors, PPs and role slots change while a sentence is being resolved.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional


GENDERS = ("masc", "fem", "neut", "unspec")
NUMBERS = ("sing", "plur", "unspec")
ANAPHOR_KINDS = ("personal", "possessive", "demonstrative-one-anaphor")
DEFAULT_POSSESSOR_CLASSES = frozenset({"ORGANIZATION", "HUMAN", "EVENT"})


class Status(str, Enum):
    PENDING = "pending"
    SKIPPED = "skipped"
    RESOLVED = "resolved"
    UNRESOLVABLE = "unresolvable"
    ATTACHED = "attached"
    UNATTACHED = "unattached"

    @property
    def open(self) -> bool:
        """True while the decision may still be taken in a later pass."""
        return self in (Status.PENDING, Status.SKIPPED)


class StatusError(RuntimeError):
    """Raised on an illegal status transition."""


class ModelError(ValueError):
    """Configuration problem, e.g. a lemma missing from the lexicon."""


@dataclass(frozen=True)
class Agreement:
    gender: str = "unspec"
    number: str = "unspec"

    def compatible(self, other: "Agreement") -> bool:
        def ok(a, b):
            return a == "unspec" or b == "unspec" or a == b

        return ok(self.gender, other.gender) and ok(self.number, other.number)

    def number_compatible(self, other: "Agreement") -> bool:
        return "unspec" in (self.number, other.number) or self.number == other.number


@dataclass(frozen=True)
class Token:
    index: int
    surface: str
    lemma: str


@dataclass(frozen=True)
class NounPhrase:
    """A mention. ``semantic_class``/``gender``/``number`` left as None
    fall back to the lexicon entry for ``head_lemma``."""

    id: str
    span: tuple[int, int]
    head_lemma: str
    semantic_class: Optional[str] = None
    gender: Optional[str] = None
    number: Optional[str] = None
    is_pronoun: bool = False
    parent_np: Optional[str] = None

    @property
    def start(self) -> int:
        return self.span[0]

    @property
    def end(self) -> int:
        return self.span[1]

    def contains_position(self, position: int) -> bool:
        return self.span[0] <= position < self.span[1]


@dataclass(frozen=True)
class SiteRef:
    """Either a frame role ``(frame, role)`` or an NP to modify."""

    frame: Optional[str] = None
    role: Optional[str] = None
    np: Optional[str] = None

    @classmethod
    def frame_role(cls, frame: str, role: str) -> "SiteRef":
        return cls(frame=frame, role=role)

    @classmethod
    def np_modifier(cls, np: str) -> "SiteRef":
        return cls(np=np)

    @property
    def is_frame_role(self) -> bool:
        return self.frame is not None

    def __str__(self) -> str:
        if self.is_frame_role:
            return f"{self.frame}.{self.role}"
        return f"np:{self.np}"


@dataclass
class RoleSlot:
    expected_classes: frozenset = frozenset()
    admitted_prepositions: frozenset = frozenset()
    filler: Optional[str] = None

    def admits(self, prep: str, object_class: Optional[str]) -> bool:
        if self.admitted_prepositions and prep not in self.admitted_prepositions:
            return False
        if self.expected_classes and object_class not in self.expected_classes:
            return False
        return True

    def fill(self, entity_id: str) -> None:
        if self.filler is not None:
            raise StatusError(f"role slot already filled by {self.filler}")
        self.filler = entity_id


@dataclass
class Frame:
    id: str
    predicate_lemma: str
    roles: dict[str, RoleSlot] = field(default_factory=dict)


def _transition(item, new: Status, allowed_final: tuple[Status, ...]) -> None:
    old = item.status
    if not old.open:
        raise StatusError(f"{item.id}: already {old.value}, cannot become {new.value}")
    if new not in allowed_final and not new.open:
        raise StatusError(f"{item.id}: {new.value} is not a legal status here")
    item.status = new


@dataclass
class Anaphor:
    id: str
    np_id: str
    kind: str
    position: int
    status: Status = Status.PENDING
    antecedent: Optional[str] = None
    reason: Optional[str] = None
    # class copied from the antecedent, consulted when the pronoun heads a PP object
    resolved_class: Optional[str] = None

    def skip(self, reason: str) -> None:
        _transition(self, Status.SKIPPED, ())
        self.reason = reason

    def resolve(self, antecedent: str, semantic_class: Optional[str] = None) -> None:
        _transition(self, Status.RESOLVED, (Status.RESOLVED,))
        self.antecedent, self.reason = antecedent, None
        self.resolved_class = semantic_class

    def give_up(self, reason: str) -> None:
        _transition(self, Status.UNRESOLVABLE, (Status.UNRESOLVABLE,))
        self.reason = reason

    def outcome(self) -> tuple:
        return (self.status.value, self.antecedent, self.reason)


@dataclass
class PrepPhrase:
    id: str
    preposition: str
    object_np: str
    position: int
    candidate_sites: tuple[SiteRef, ...]
    status: Status = Status.PENDING
    site: Optional[SiteRef] = None
    reason: Optional[str] = None

    @property
    def ambiguous(self) -> bool:
        return len(self.candidate_sites) >= 2

    def skip(self, reason: str) -> None:
        _transition(self, Status.SKIPPED, ())
        self.reason = reason

    def attach(self, site: SiteRef) -> None:
        if site not in self.candidate_sites:
            raise StatusError(f"{self.id}: {site} is not a candidate site")
        _transition(self, Status.ATTACHED, (Status.ATTACHED,))
        self.site, self.reason = site, None

    def give_up(self, reason: str) -> None:
        _transition(self, Status.UNATTACHED, (Status.UNATTACHED,))
        self.reason = reason

    def outcome(self) -> tuple:
        return (self.status.value, str(self.site) if self.site else None, self.reason)


@dataclass
class AnnotatedSentence:
    index: int
    tokens: list[Token]
    nps: list[NounPhrase] = field(default_factory=list)
    anaphors: list[Anaphor] = field(default_factory=list)
    pps: list[PrepPhrase] = field(default_factory=list)
    frames: list[Frame] = field(default_factory=list)
    subject: Optional[str] = None

    def np(self, np_id: str) -> NounPhrase:
        for np in self.nps:
            if np.id == np_id:
                return np
        raise KeyError(np_id)

    def has_np(self, np_id: str) -> bool:
        return any(np.id == np_id for np in self.nps)

    def frame(self, frame_id: str) -> Frame:
        for fr in self.frames:
            if fr.id == frame_id:
                return fr
        raise KeyError(frame_id)

    def anaphor_for_np(self, np_id: str) -> Optional[Anaphor]:
        for a in self.anaphors:
            if a.np_id == np_id:
                return a
        return None

    def anaphors_in(self, span: tuple[int, int]) -> list[Anaphor]:
        return [a for a in self.anaphors if span[0] <= a.position < span[1]]

    def open_items(self) -> list:
        return [x for x in [*self.anaphors, *self.pps] if x.status.open]

    def copy(self) -> "AnnotatedSentence":
        return copy.deepcopy(self)


@dataclass(frozen=True)
class LexEntry:
    semantic_class: str
    gender: str = "unspec"
    number: str = "unspec"
    proper: bool = False


@dataclass
class SemanticLexicon:
    classes: frozenset
    entries: dict[str, LexEntry]
    possessor_classes: frozenset = DEFAULT_POSSESSOR_CLASSES

    def entry(self, lemma: str) -> LexEntry:
        try:
            return self.entries[lemma]
        except KeyError:
            raise ModelError(f"lemma {lemma!r} missing from lexicon") from None

    def class_of(self, np: NounPhrase) -> str:
        return np.semantic_class or self.entry(np.head_lemma).semantic_class

    def agreement_of(self, np: NounPhrase) -> Agreement:
        e = self.entries.get(np.head_lemma)
        gender = np.gender or (e.gender if e else "unspec")
        number = np.number or (e.number if e else "unspec")
        return Agreement(gender, number)

    def is_proper(self, np: NounPhrase) -> bool:
        e = self.entries.get(np.head_lemma)
        return bool(e and e.proper)


@dataclass(frozen=True)
class AttachmentRule:
    governor: str
    preposition: str
    object_class: str
    role: str
    score: int


DEFAULT_RULE = AttachmentRule("*", "*", "*", "default", 0)


@dataclass
class AttachmentRuleTable:
    rules: list[AttachmentRule] = field(default_factory=list)

    def conflicts(self) -> list[str]:
        seen: dict[tuple, AttachmentRule] = {}
        out = []
        for r in self.rules:
            key = (r.governor, r.preposition, r.object_class, r.score)
            prev = seen.setdefault(key, r)
            if prev.role != r.role:
                out.append(
                    f"rules {r.governor}/{r.preposition}/{r.object_class} score {r.score}"
                    f" disagree on role ({prev.role} vs {r.role})"
                )
        return out

    def matching(self, governors: Iterable[str], prep: str, object_class: Optional[str]):
        govs = set(governors)
        return [
            r for r in self.rules
            if r.governor in govs and r.preposition == prep and r.object_class == object_class
        ]


@dataclass(frozen=True)
class EntitySnapshot:
    semantic_class: str
    agreement: Agreement
    proper: bool = False


@dataclass
class DiscourseState:
    """Focus list of entities from already processed sentences.

    ``focus`` holds ``(entity_id, sentence_index)`` pairs, most salient first.
    """

    focus: list[tuple[str, int]] = field(default_factory=list)
    snapshots: dict[str, EntitySnapshot] = field(default_factory=dict)

    @property
    def focus_ids(self) -> list[str]:
        return [e for e, _ in self.focus]

    def promote(self, entities: list[tuple[str, EntitySnapshot]], sentence_index: int) -> None:
        """Prepend ``entities`` (already in salience order) to the focus list."""
        fresh = []
        for eid, snap in entities:
            if eid in (x for x, _ in fresh):
                continue
            fresh.append((eid, sentence_index))
            self.snapshots[eid] = snap
        ids = {e for e, _ in fresh}
        self.focus = fresh + [(e, i) for e, i in self.focus if e not in ids]

    def copy(self) -> "DiscourseState":
        return DiscourseState(list(self.focus), dict(self.snapshots))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    id: str
    message: str

    def __str__(self) -> str:
        return f"{self.id}: {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, id: str, message: str) -> None:
        self.violations.append(Violation(id, message))

    def messages(self) -> list[str]:
        return [str(v) for v in self.violations]


def validate_sentence(s: AnnotatedSentence, lex: SemanticLexicon) -> ValidationReport:
    """Check every structural invariant of ``s``; violations are returned, not raised."""
    rep = ValidationReport()
    sid = f"s{s.index}"
    n = len(s.tokens)

    for i, tok in enumerate(s.tokens):
        if tok.index != i:
            rep.add(sid, f"token {tok.surface!r} has index {tok.index}, expected {i}")

    nps: dict[str, NounPhrase] = {}
    for np in s.nps:
        if np.id in nps:
            rep.add(np.id, "duplicate noun phrase id")
        nps[np.id] = np
    for np in s.nps:
        start, end = np.span
        if not 0 <= start < end <= n:
            rep.add(np.id, f"span {list(np.span)} outside sentence of {n} tokens")
        if np.head_lemma not in lex.entries:
            rep.add(np.id, f"head lemma {np.head_lemma!r} not in lexicon")
        cls = np.semantic_class
        if cls is not None and cls not in lex.classes:
            rep.add(np.id, f"undefined class {cls!r}")
        if np.gender is not None and np.gender not in GENDERS:
            rep.add(np.id, f"bad gender {np.gender!r}")
        if np.number is not None and np.number not in NUMBERS:
            rep.add(np.id, f"bad number {np.number!r}")
        if np.parent_np is not None:
            parent = nps.get(np.parent_np)
            if parent is None:
                rep.add(np.id, f"parent_np {np.parent_np} does not exist")
            elif not (parent.start <= start and end <= parent.end):
                rep.add(np.id, f"parent_np {parent.id} does not contain its span")
        if np.is_pronoun:
            refs = [a for a in s.anaphors if a.np_id == np.id]
            if len(refs) != 1:
                rep.add(np.id, f"pronoun referenced by {len(refs)} anaphors, expected 1")

    if s.subject is not None and s.subject not in nps:
        rep.add(sid, f"subject {s.subject} does not exist")

    ids = set(nps)
    prev = -1
    for a in s.anaphors:
        if a.id in ids:
            rep.add(a.id, "duplicate id")
        ids.add(a.id)
        if a.kind not in ANAPHOR_KINDS:
            rep.add(a.id, f"unknown anaphor kind {a.kind!r}")
        np = nps.get(a.np_id)
        if np is None:
            rep.add(a.id, f"np {a.np_id} does not exist")
        elif not np.is_pronoun:
            rep.add(a.id, f"references non-pronoun np {a.np_id}")
        elif not np.contains_position(a.position):
            rep.add(a.id, f"position {a.position} outside np {a.np_id}")
        if a.position <= prev:
            rep.add(a.id, "anaphor positions not strictly increasing")
        prev = a.position

    frames = {}
    for fr in s.frames:
        if fr.id in frames or fr.id in ids:
            rep.add(fr.id, "duplicate id")
        frames[fr.id] = fr
        for role, slot in fr.roles.items():
            for c in slot.expected_classes:
                if c not in lex.classes:
                    rep.add(fr.id, f"role {role} expects undefined class {c!r}")
            if slot.filler is not None and slot.filler not in nps:
                rep.add(fr.id, f"role {role} filled by unknown entity {slot.filler}")

    anaphor_positions = {a.position for a in s.anaphors}
    role_owner: dict[tuple[str, str], str] = {}
    prev = -1
    for p in s.pps:
        if p.id in ids:
            rep.add(p.id, "duplicate id")
        ids.add(p.id)
        if not 0 <= p.position < n:
            rep.add(p.id, f"position {p.position} outside sentence")
        if p.position in anaphor_positions:
            rep.add(p.id, "preposition shares its token with an anaphor")
        if p.position <= prev:
            rep.add(p.id, "PP positions not strictly increasing")
        prev = p.position
        obj = nps.get(p.object_np)
        if obj is None:
            rep.add(p.id, f"object np {p.object_np} does not exist")
        elif obj.start <= p.position:
            rep.add(p.id, "object span does not begin after the preposition")
        if not p.candidate_sites:
            rep.add(p.id, "empty candidate_sites")
        if len(set(p.candidate_sites)) != len(p.candidate_sites):
            rep.add(p.id, "duplicate candidate site")
        for site in p.candidate_sites:
            if site.is_frame_role:
                fr = frames.get(site.frame)
                if fr is None or site.role not in fr.roles:
                    rep.add(p.id, f"site {site} does not exist")
                    continue
                owner = role_owner.setdefault((site.frame, site.role), p.id)
                if owner != p.id:
                    rep.add(p.id, f"role {site} is already a candidate of {owner}")
            else:
                target = nps.get(site.np)
                if target is None:
                    rep.add(p.id, f"site {site} does not exist")
                elif target.start >= p.position:
                    rep.add(p.id, f"np site {site.np} does not precede the preposition")
    return rep


def build_initial_state(s: AnnotatedSentence, lex: SemanticLexicon) -> AnnotatedSentence:
    """Fresh working copy with every decision pending and contested roles empty."""
    report = validate_sentence(s, lex)
    if not report.ok:
        raise ValidationError(s.index, report)
    state = s.copy()
    for a in state.anaphors:
        a.status, a.antecedent, a.reason = Status.PENDING, None, None
        a.resolved_class = None
    contested = {(site.frame, site.role) for p in state.pps for site in p.candidate_sites
                 if site.is_frame_role}
    for p in state.pps:
        p.status, p.site, p.reason = Status.PENDING, None, None
    for fr in state.frames:
        for role, slot in fr.roles.items():
            if (fr.id, role) in contested:
                slot.filler = None
    return state


class ValidationError(ValueError):
    def __init__(self, where, report: ValidationReport):
        self.where = where
        self.report = report
        lines = "; ".join(report.messages())
        super().__init__(f"sentence {where} does not validate: {lines}")
