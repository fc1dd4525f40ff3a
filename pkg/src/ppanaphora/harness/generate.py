"""Seeded random sentences for engine/oracle equivalence runs.

Sentences are well formed by construction. Pronouns are chosen to agree
with some earlier mention (or a focus entity) most of the time, so that an
unresolvable anaphor usually comes from scheduling rather than the data.
A fraction of PPs are discontinuous (material between the preposition and
its object), which is what makes dependency cycles possible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from ..model import (
    Agreement,
    Anaphor,
    AnnotatedSentence,
    AttachmentRule,
    AttachmentRuleTable,
    DiscourseState,
    EntitySnapshot,
    Frame,
    LexEntry,
    NounPhrase,
    PrepPhrase,
    RoleSlot,
    SemanticLexicon,
    SiteRef,
    Token,
)

CLASSES = ("ORGANIZATION", "HUMAN", "EVENT", "TIME-POINT", "ATTRIBUTE", "TRANSACTION",
           "INFORMATION", "COMMUNICATION", "PRONOUN")

NOUNS = {
    "firm": LexEntry("ORGANIZATION", "neut", "sing"),
    "banks": LexEntry("ORGANIZATION", "neut", "plur"),
    "chairman": LexEntry("HUMAN", "masc", "sing"),
    "analyst": LexEntry("HUMAN", "fem", "sing"),
    "investors": LexEntry("HUMAN", "unspec", "plur"),
    "sale": LexEntry("TRANSACTION", "neut", "sing"),
    "deals": LexEntry("TRANSACTION", "neut", "plur"),
    "rumour": LexEntry("INFORMATION", "neut", "sing"),
    "price": LexEntry("ATTRIBUTE", "neut", "sing"),
    "profits": LexEntry("ATTRIBUTE", "neut", "plur"),
    "meeting": LexEntry("EVENT", "neut", "sing"),
    "request": LexEntry("COMMUNICATION", "neut", "sing"),
    "October": LexEntry("TIME-POINT", "neut", "sing", proper=True),
    "Credito": LexEntry("ORGANIZATION", "neut", "sing", proper=True),
    "Smith": LexEntry("HUMAN", "masc", "sing", proper=True),
}
PERSONAL = {"it": ("neut", "sing"), "he": ("masc", "sing"), "she": ("fem", "sing"),
            "they": ("unspec", "plur")}
POSSESSIVE = {"its": ("neut", "sing"), "his": ("masc", "sing"), "her": ("fem", "sing"),
              "their": ("unspec", "plur")}
DEMONSTRATIVE = {"that": ("unspec", "sing"), "those": ("unspec", "plur")}
PREDICATES = ("suspend", "propose", "buy", "announce")
PREPOSITIONS = ("of", "in", "on", "at", "since", "for", "with")
ROLES = ("TIME", "CAUSE", "THEME", "SOURCE", "GOAL", "MANNER")


def random_lexicon() -> SemanticLexicon:
    entries = dict(NOUNS)
    for table in (PERSONAL, POSSESSIVE, DEMONSTRATIVE):
        for lemma, (g, n) in table.items():
            entries[lemma] = LexEntry("PRONOUN", g, n)
    return SemanticLexicon(frozenset(CLASSES), entries)


LEXICON = random_lexicon()


@dataclass
class Instance:
    seed: int
    sentence: AnnotatedSentence
    rules: AttachmentRuleTable
    discourse: DiscourseState
    lexicon: SemanticLexicon = LEXICON


def _pick_pronoun(table: dict, agr: Optional[Agreement], rng: random.Random) -> str:
    if agr is not None:
        fits = [lem for lem, (g, n) in table.items()
                if Agreement(g, n).compatible(agr)]
        if fits:
            return rng.choice(fits)
    return rng.choice(sorted(table))


class _Builder:
    def __init__(self, rng: random.Random, max_anaphors: int, max_pps: int,
                 discourse: DiscourseState):
        self.rng = rng
        self.max_anaphors = max_anaphors
        self.max_pps = max_pps
        self.d = discourse
        self.tokens: list[Token] = []
        self.nps: list[NounPhrase] = []
        self.anaphors: list[Anaphor] = []
        self.pps: list[PrepPhrase] = []
        self.frames: list[Frame] = []
        self.n = 0

    def fresh(self, prefix: str) -> str:
        self.n += 1
        return f"{prefix}{self.n}"

    def token(self, surface: str) -> int:
        self.tokens.append(Token(len(self.tokens), surface, surface))
        return len(self.tokens) - 1

    @property
    def can_pronoun(self) -> bool:
        return len(self.anaphors) < self.max_anaphors

    def antecedent_agreement(self, possessive=False, common=False) -> Optional[tuple]:
        """(agreement, class) of a plausible antecedent, or None."""
        pool = []
        for np in self.nps:
            if np.is_pronoun:
                continue
            e = LEXICON.entries[np.head_lemma]
            pool.append((Agreement(e.gender, e.number), e.semantic_class, e.proper))
        for eid in self.d.focus_ids:
            snap = self.d.snapshots[eid]
            pool.append((snap.agreement, snap.semantic_class, snap.proper))
        if possessive:
            pool = [x for x in pool if x[1] in LEXICON.possessor_classes]
        if common:
            pool = [x for x in pool if not x[2]]
        if not pool or self.rng.random() < 0.1:
            return None
        return self.rng.choice(pool)

    def noun(self, parent: Optional[str] = None) -> NounPhrase:
        lemma = self.rng.choice(sorted(NOUNS))
        start = len(self.tokens)
        if not NOUNS[lemma].proper and self.rng.random() < 0.5:
            self.token("the")
        self.token(lemma)
        np = NounPhrase(self.fresh("e"), (start, len(self.tokens)), lemma, parent_np=parent)
        self.nps.append(np)
        return np

    def pronoun(self) -> NounPhrase:
        kind = self.rng.choice(("personal", "personal", "demonstrative-one-anaphor"))
        target = self.antecedent_agreement(common=kind != "personal")
        table = PERSONAL if kind == "personal" else DEMONSTRATIVE
        lemma = _pick_pronoun(table, target[0] if target else None, self.rng)
        pos = self.token(lemma)
        np = NounPhrase(self.fresh("e"), (pos, pos + 1), lemma, is_pronoun=True)
        self.nps.append(np)
        self.anaphors.append(Anaphor(self.fresh("a"), np.id, kind, pos))
        return np

    def possessed(self) -> NounPhrase:
        target = self.antecedent_agreement(possessive=True)
        lemma = _pick_pronoun(POSSESSIVE, target[0] if target else None, self.rng)
        outer_id = self.fresh("e")
        pos = self.token(lemma)
        inner = NounPhrase(self.fresh("e"), (pos, pos + 1), lemma, is_pronoun=True,
                           parent_np=outer_id)
        head = self.rng.choice([x for x in sorted(NOUNS) if not NOUNS[x].proper])
        self.token(head)
        outer = NounPhrase(outer_id, (pos, len(self.tokens)), head)
        self.nps.extend([inner, outer])
        self.anaphors.append(Anaphor(self.fresh("a"), inner.id, "possessive", pos))
        return outer

    def mention(self) -> NounPhrase:
        r = self.rng.random()
        if self.can_pronoun and r < 0.3:
            return self.pronoun()
        if self.can_pronoun and r < 0.45:
            return self.possessed()
        return self.noun()

    def verb(self) -> Frame:
        lemma = self.rng.choice(PREDICATES)
        self.token(lemma)
        fr = Frame(self.fresh("f"), lemma, {})
        self.frames.append(fr)
        return fr

    def pp(self, depth: int = 0) -> None:
        prep = self.rng.choice(PREPOSITIONS)
        pos = self.token(prep)
        if depth == 0 and self.rng.random() < 0.15:
            filler = self.rng.random()
            if filler < 0.4 and self.can_pronoun:
                self.pronoun()
            elif filler < 0.7 and len(self.pps) + 1 < self.max_pps:
                self.pp(depth + 1)
            else:
                self.noun()
        obj = self.mention()
        self.pps.append(PrepPhrase(self.fresh("p"), prep, obj.id, pos, self.sites(prep, pos)))

    def sites(self, prep: str, pos: int) -> tuple[SiteRef, ...]:
        rng = self.rng
        np_sites = [SiteRef.np_modifier(np.id) for np in self.nps if np.start < pos]
        frame_sites = []
        for fr in self.frames:
            free = [r for r in ROLES if r not in fr.roles]
            if free and rng.random() < 0.7:
                role = rng.choice(free)
                expected = frozenset(rng.sample(CLASSES[:-1], rng.randint(0, 2)))
                preps = frozenset({prep}) if rng.random() < 0.3 else frozenset()
                frame_sites.append((fr, role, expected, preps))
        pool = [("np", s) for s in np_sites] + [("frame", x) for x in frame_sites]
        if not pool:
            fr = self.frames[0] if self.frames else None
            if fr is None:
                # a frame must exist to host the only site
                fr = Frame(self.fresh("f"), rng.choice(PREDICATES), {})
                self.frames.append(fr)
            free = [r for r in ROLES if r not in fr.roles] or [f"R{self.n}"]
            pool = [("frame", (fr, rng.choice(free), frozenset(), frozenset()))]
        k = min(len(pool), rng.choice((1, 2, 2, 2, 3)))
        chosen = rng.sample(pool, k)
        out = []
        for kind, x in chosen:
            if kind == "np":
                out.append(x)
            else:
                fr, role, expected, preps = x
                fr.roles[role] = RoleSlot(expected, preps)
                out.append(SiteRef.frame_role(fr.id, role))
        return tuple(out)

    def sentence(self, index: int) -> AnnotatedSentence:
        rng = self.rng
        target_pps = rng.randint(0, self.max_pps)
        subject = self.mention() if rng.random() < 0.8 else None
        if rng.random() < 0.8:
            self.verb()
        steps = 0
        while len(self.pps) < target_pps and steps < 40:
            steps += 1
            r = rng.random()
            if r < 0.55:
                self.pp()
            elif r < 0.8:
                self.mention()
            elif r < 0.9:
                self.verb()
            else:
                self.token(rng.choice(("and", "was", "said", "following")))
        while self.can_pronoun and rng.random() < 0.2:
            self.mention()
        self.token(".")
        return AnnotatedSentence(
            index,
            self.tokens,
            self.nps,
            sorted(self.anaphors, key=lambda a: a.position),
            sorted(self.pps, key=lambda p: p.position),
            self.frames,
            subject.id if subject is not None and not subject.is_pronoun else None,
        )

    def rules(self, s: AnnotatedSentence) -> AttachmentRuleTable:
        rng = self.rng
        frames = {f.id: f for f in s.frames}
        nps = {np.id: np for np in s.nps}
        table: dict[tuple, AttachmentRule] = {}
        for p in s.pps:
            obj = nps[p.object_np]
            true_class = LEXICON.entries[obj.head_lemma].semantic_class
            for site in p.candidate_sites:
                if rng.random() > 0.6:
                    continue
                if site.is_frame_role:
                    governor, role = frames[site.frame].predicate_lemma, site.role
                else:
                    np = nps[site.np]
                    entry = LEXICON.entries[np.head_lemma]
                    governor = rng.choice((np.head_lemma, entry.semantic_class))
                    role = "MOD"
                if obj.is_pronoun or rng.random() < 0.3:
                    cls = rng.choice(CLASSES[:-1])
                else:
                    cls = true_class
                rule = AttachmentRule(governor, p.preposition, cls, role, rng.randint(1, 3))
                key = (rule.governor, rule.preposition, rule.object_class, rule.score)
                table.setdefault(key, rule)
        return AttachmentRuleTable(list(table.values()))


def random_discourse(rng: random.Random) -> DiscourseState:
    d = DiscourseState()
    if rng.random() < 0.5:
        return d
    ents = []
    for i in range(rng.randint(1, 3)):
        e = NOUNS[rng.choice(sorted(NOUNS))]
        ents.append((f"d{i}", EntitySnapshot(e.semantic_class, Agreement(e.gender, e.number),
                                             e.proper)))
    d.promote(ents, 0)
    return d


def random_instance(seed: int, max_anaphors: int = 8, max_pps: int = 8) -> Instance:
    rng = random.Random(seed)
    d = random_discourse(rng)
    b = _Builder(rng, max_anaphors, max_pps, d)
    s = b.sentence(1)
    return Instance(seed, s, b.rules(s), d)
