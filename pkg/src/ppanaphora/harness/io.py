"""Reading and writing corpus, lexicon and rule-table files.

All three are UTF-8 JSON. The writers put one document (or one lexicon
entry, one rule) per line so fixtures diff cleanly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from ..model import (
    DEFAULT_POSSESSOR_CLASSES,
    Anaphor,
    AnnotatedSentence,
    AttachmentRule,
    AttachmentRuleTable,
    Frame,
    LexEntry,
    NounPhrase,
    PrepPhrase,
    RoleSlot,
    SemanticLexicon,
    SiteRef,
    Token,
    ValidationError,
    validate_sentence,
)


class FormatError(ValueError):
    """Malformed input file; ``where`` names the line or field."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class DanglingReferenceError(FormatError):
    """A reference to an id or class tag that is not defined."""

    def __init__(self, ref: str, where: str = ""):
        self.ref = ref
        super().__init__(f"undefined reference {ref!r}", where)


@dataclass
class Document:
    id: str
    sentences: list[AnnotatedSentence] = field(default_factory=list)


def _parse_json(data, what: str) -> Any:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(f"not UTF-8 ({exc.reason})", what) from None
    if not data.strip():
        raise FormatError("empty file", what)
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{what} line {exc.lineno} column {exc.colno}") from None


def _get(obj: dict, key: str, where: str, kind=None, default=...):
    if not isinstance(obj, dict):
        raise FormatError("expected an object", where)
    if key not in obj:
        if default is ...:
            raise FormatError(f"missing field {key!r}", where)
        return default
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise FormatError(f"field {key!r} has wrong type {type(value).__name__}", where)
    return value


# ---------------------------------------------------------------------------
# lexicon
# ---------------------------------------------------------------------------


def load_lexicon(data) -> SemanticLexicon:
    raw = _parse_json(data, "lexicon")
    classes = _get(raw, "classes", "lexicon", list)
    entries_raw = _get(raw, "entries", "lexicon", dict)
    defined = frozenset(classes)
    entries = {}
    for lemma, e in entries_raw.items():
        where = f"lexicon.entries[{lemma!r}]"
        cls = _get(e, "class", where, str)
        if cls not in defined:
            raise DanglingReferenceError(cls, where)
        entries[lemma] = LexEntry(
            cls,
            _get(e, "gender", where, str, "unspec"),
            _get(e, "number", where, str, "unspec"),
            bool(_get(e, "proper", where, bool, False)),
        )
    possessors = raw.get("possessor_classes")
    possessor_classes = DEFAULT_POSSESSOR_CLASSES if possessors is None else frozenset(possessors)
    return SemanticLexicon(defined, entries, possessor_classes)


def lexicon_to_dict(lex: SemanticLexicon) -> dict:
    entries = {}
    for lemma, e in lex.entries.items():
        d = {"class": e.semantic_class, "gender": e.gender, "number": e.number}
        if e.proper:
            d["proper"] = True
        entries[lemma] = d
    out = {"classes": sorted(lex.classes), "entries": entries}
    if lex.possessor_classes != DEFAULT_POSSESSOR_CLASSES:
        out["possessor_classes"] = sorted(lex.possessor_classes)
    return out


def serialize_lexicon(lex: SemanticLexicon) -> str:
    d = lexicon_to_dict(lex)
    lines = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in d["entries"].items())
    extra = "".join(f',\n "{k}": {json.dumps(v)}' for k, v in d.items()
                    if k not in ("classes", "entries"))
    return f'{{"classes": {json.dumps(d["classes"])},\n "entries": {{\n{lines}\n }}{extra}}}\n'


# ---------------------------------------------------------------------------
# rules
# ---------------------------------------------------------------------------


def load_rules(data, lexicon: Optional[SemanticLexicon] = None) -> AttachmentRuleTable:
    raw = _parse_json(data, "rules")
    rules = []
    for i, r in enumerate(_get(raw, "rules", "rules", list)):
        where = f"rules[{i}]"
        score = _get(r, "score", where, int)
        if isinstance(score, bool) or score <= 0:
            raise FormatError("score must be a positive integer", where)
        rule = AttachmentRule(
            _get(r, "governor", where, str),
            _get(r, "prep", where, str),
            _get(r, "object_class", where, str),
            _get(r, "role", where, str),
            score,
        )
        if lexicon is not None and rule.object_class not in lexicon.classes:
            raise DanglingReferenceError(rule.object_class, where)
        rules.append(rule)
    table = AttachmentRuleTable(rules)
    conflicts = table.conflicts()
    if conflicts:
        raise FormatError(conflicts[0], "rules")
    return table


def rules_to_dict(table: AttachmentRuleTable) -> dict:
    return {"rules": [
        {"governor": r.governor, "prep": r.preposition, "object_class": r.object_class,
         "role": r.role, "score": r.score}
        for r in table.rules
    ]}


def serialize_rules(table: AttachmentRuleTable) -> str:
    rows = ",\n".join("  " + json.dumps(r) for r in rules_to_dict(table)["rules"])
    return f'{{"rules": [\n{rows}\n]}}\n'


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------


def _site(raw, where) -> SiteRef:
    if isinstance(raw, dict) and "np" in raw:
        return SiteRef.np_modifier(_get(raw, "np", where, str))
    return SiteRef.frame_role(_get(raw, "frame", where, str), _get(raw, "role", where, str))


def _sentence(raw, where) -> AnnotatedSentence:
    tokens = [
        Token(_get(t, "i", f"{where}.tokens[{k}]", int),
              _get(t, "surface", f"{where}.tokens[{k}]", str),
              _get(t, "lemma", f"{where}.tokens[{k}]", str))
        for k, t in enumerate(_get(raw, "tokens", where, list))
    ]
    nps = []
    for k, n in enumerate(_get(raw, "nps", where, list, [])):
        w = f"{where}.nps[{k}]"
        span = _get(n, "span", w, list)
        if len(span) != 2 or not all(isinstance(x, int) for x in span):
            raise FormatError("span must be [start, end]", w)
        nps.append(NounPhrase(
            _get(n, "id", w, str), (span[0], span[1]), _get(n, "head", w, str),
            _get(n, "class", w, str, None), _get(n, "gender", w, str, None),
            _get(n, "number", w, str, None), _get(n, "pronoun", w, bool, False),
            _get(n, "parent", w, str, None),
        ))
    anaphors = []
    for k, a in enumerate(_get(raw, "anaphors", where, list, [])):
        w = f"{where}.anaphors[{k}]"
        anaphors.append(Anaphor(_get(a, "id", w, str), _get(a, "np", w, str),
                                _get(a, "kind", w, str), _get(a, "position", w, int)))
    pps = []
    for k, p in enumerate(_get(raw, "pps", where, list, [])):
        w = f"{where}.pps[{k}]"
        sites = tuple(_site(x, f"{w}.sites[{j}]")
                      for j, x in enumerate(_get(p, "sites", w, list)))
        pps.append(PrepPhrase(_get(p, "id", w, str), _get(p, "prep", w, str),
                              _get(p, "object", w, str), _get(p, "position", w, int), sites))
    frames = []
    for k, f in enumerate(_get(raw, "frames", where, list, [])):
        w = f"{where}.frames[{k}]"
        roles = {}
        for name, r in _get(f, "roles", w, dict, {}).items():
            rw = f"{w}.roles[{name!r}]"
            roles[name] = RoleSlot(frozenset(_get(r, "expected", rw, list, [])),
                                   frozenset(_get(r, "preps", rw, list, [])),
                                   _get(r, "filler", rw, str, None))
        frames.append(Frame(_get(f, "id", w, str), _get(f, "predicate", w, str), roles))
    return AnnotatedSentence(_get(raw, "index", where, int), tokens, nps, anaphors, pps,
                             frames, _get(raw, "subject", where, str, None))


def _check_references(doc: Document, where: str) -> None:
    seen: set[str] = set()
    for s in doc.sentences:
        w = f"{where}.sentences[{s.index}]"
        np_ids = {n.id for n in s.nps}
        frames = {f.id: f for f in s.frames}
        for x in [*s.nps, *s.anaphors, *s.pps, *s.frames]:
            if x.id in seen:
                raise FormatError(f"id {x.id!r} used twice in document", w)
            seen.add(x.id)
        for n in s.nps:
            if n.parent_np is not None and n.parent_np not in np_ids:
                raise DanglingReferenceError(n.parent_np, f"{w}.{n.id}")
        if s.subject is not None and s.subject not in np_ids:
            raise DanglingReferenceError(s.subject, f"{w}.subject")
        for a in s.anaphors:
            if a.np_id not in np_ids:
                raise DanglingReferenceError(a.np_id, f"{w}.{a.id}")
        for p in s.pps:
            if p.object_np not in np_ids:
                raise DanglingReferenceError(p.object_np, f"{w}.{p.id}")
            for site in p.candidate_sites:
                if site.is_frame_role:
                    if site.frame not in frames or site.role not in frames[site.frame].roles:
                        raise DanglingReferenceError(str(site), f"{w}.{p.id}")
                elif site.np not in np_ids:
                    raise DanglingReferenceError(site.np, f"{w}.{p.id}")


def load_corpus(data, lexicon: Optional[SemanticLexicon] = None) -> list[Document]:
    """Parse a corpus file; with a lexicon, every sentence is also validated."""
    raw = _parse_json(data, "corpus")
    docs = []
    for k, d in enumerate(_get(raw, "documents", "corpus", list)):
        where = f"documents[{k}]"
        doc = Document(_get(d, "id", where, str),
                       [_sentence(s, f"{where}.sentences[{j}]")
                        for j, s in enumerate(_get(d, "sentences", where, list))])
        _check_references(doc, where)
        if lexicon is not None:
            for s in doc.sentences:
                report = validate_sentence(s, lexicon)
                if not report.ok:
                    raise ValidationError(f"{doc.id}/{s.index}", report)
        docs.append(doc)
    return docs


def sentence_to_dict(s: AnnotatedSentence) -> dict:
    def np_dict(n: NounPhrase) -> dict:
        d = {"id": n.id, "span": list(n.span), "head": n.head_lemma}
        for key, value in (("class", n.semantic_class), ("gender", n.gender),
                           ("number", n.number), ("parent", n.parent_np)):
            if value is not None:
                d[key] = value
        if n.is_pronoun:
            d["pronoun"] = True
        return d

    def site_dict(site: SiteRef) -> dict:
        return {"frame": site.frame, "role": site.role} if site.is_frame_role else {"np": site.np}

    def role_dict(slot: RoleSlot) -> dict:
        d = {"expected": sorted(slot.expected_classes), "preps": sorted(slot.admitted_prepositions)}
        if slot.filler is not None:
            d["filler"] = slot.filler
        return d

    out = {
        "index": s.index,
        "tokens": [{"i": t.index, "surface": t.surface, "lemma": t.lemma} for t in s.tokens],
        "nps": [np_dict(n) for n in s.nps],
        "anaphors": [{"id": a.id, "np": a.np_id, "kind": a.kind, "position": a.position}
                     for a in s.anaphors],
        "pps": [{"id": p.id, "prep": p.preposition, "object": p.object_np,
                 "position": p.position, "sites": [site_dict(x) for x in p.candidate_sites]}
                for p in s.pps],
        "frames": [{"id": f.id, "predicate": f.predicate_lemma,
                    "roles": {name: role_dict(r) for name, r in f.roles.items()}}
                   for f in s.frames],
    }
    if s.subject is not None:
        out["subject"] = s.subject
    return out


def corpus_to_dict(docs: list[Document]) -> dict:
    return {"documents": [{"id": d.id, "sentences": [sentence_to_dict(s) for s in d.sentences]}
                          for d in docs]}


def serialize_corpus(docs: list[Document]) -> str:
    rows = ",\n".join("  " + json.dumps(d, ensure_ascii=False)
                      for d in corpus_to_dict(docs)["documents"])
    return f'{{"documents": [\n{rows}\n]}}\n'
