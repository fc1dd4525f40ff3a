import dataclasses

import pytest

from ppanaphora.model import (
    Agreement,
    Anaphor,
    AnnotatedSentence,
    AttachmentRule,
    AttachmentRuleTable,
    DiscourseState,
    EntitySnapshot,
    NounPhrase,
    PrepPhrase,
    SiteRef,
    Status,
    StatusError,
    Token,
    ValidationError,
    build_initial_state,
    validate_sentence,
)


def tokens(text):
    return [Token(i, w, w) for i, w in enumerate(text.split())]


def test_example_fixtures_validate(lex, corpus, extra_docs):
    for doc in [*corpus.values(), *extra_docs.values()]:
        for s in doc.sentences:
            report = validate_sentence(s, lex)
            assert report.ok, report.messages()


def test_empty_candidate_sites_is_reported(ex2, lex):
    ex2.pps[0] = dataclasses.replace(ex2.pps[0], candidate_sites=())
    report = validate_sentence(ex2, lex)
    assert not report.ok
    assert any(v.id == "p1" and "empty candidate_sites" in v.message for v in report.violations)


def test_anaphor_on_non_pronoun_np_is_reported(ex2, lex):
    ex2.anaphors.append(Anaphor("a9", "e8", "personal", 22))
    report = validate_sentence(ex2, lex)
    assert [v.id for v in report.violations if "non-pronoun" in v.message] == ["a9"]


@pytest.mark.parametrize("mutate, fragment", [
    (lambda s: s.nps.append(NounPhrase("e99", (30, 31), "firm")), "outside sentence"),
    (lambda s: s.nps.append(NounPhrase("e99", (0, 1), "zebra")), "not in lexicon"),
    (lambda s: s.nps.append(NounPhrase("e99", (0, 1), "firm", parent_np="e8")),
     "does not contain"),
    (lambda s: s.anaphors.append(Anaphor("a9", "e6", "possessive", 17)), "referenced by 2"),
    (lambda s: s.pps.reverse(), "not strictly increasing"),
    (lambda s: s.pps.append(PrepPhrase("p9", "of", "e1", 23, (SiteRef.np_modifier("e8"),))),
     "does not begin after"),
    (lambda s: s.pps.append(PrepPhrase("p9", "of", "e8", 20, (SiteRef.np_modifier("e8"),))),
     "does not precede"),
    (lambda s: s.pps.append(PrepPhrase(
        "p9", "of", "e8", 23, (SiteRef.frame_role("f_surge", "THEME"),))), "already a candidate"),
    (lambda s: s.pps.append(PrepPhrase(
        "p9", "of", "e8", 23, (SiteRef.frame_role("f_nope", "X"),))), "does not exist"),
])
def test_invariant_breaches_are_reported(ex2, lex, mutate, fragment):
    mutate(ex2)
    report = validate_sentence(ex2, lex)
    assert any(fragment in m for m in report.messages()), report.messages()


def test_initial_state_example_2(ex2, lex):
    state = build_initial_state(ex2, lex)
    assert [(a.id, a.status) for a in state.anaphors] == [("a1", Status.PENDING)]
    assert [p.preposition for p in state.pps if p.status is Status.PENDING] == \
        ["since", "at", "in", "on"]
    contested = {(s.frame, s.role) for p in state.pps for s in p.candidate_sites
                 if s.is_frame_role}
    for fr in state.frames:
        for role, slot in fr.roles.items():
            if (fr.id, role) in contested:
                assert slot.filler is None
    # roles outside the attachment problem keep their annotation
    assert state.frame("f_suspend").roles["THEME"].filler == "e1"


def test_initial_state_example_1(ex1, lex):
    state = build_initial_state(ex1, lex)
    assert [(a.np_id, a.status) for a in state.anaphors] == [("e4", Status.PENDING)]
    assert [(p.preposition, p.status) for p in state.pps] == \
        [("of", Status.PENDING), ("of", Status.PENDING)]


def test_initial_state_empty_sentence(lex):
    s = AnnotatedSentence(0, tokens("Prices rose ."))
    state = build_initial_state(s, lex)
    assert state.open_items() == []


def test_initial_state_is_a_copy(ex2, lex):
    state = build_initial_state(ex2, lex)
    state.anaphors[0].skip("x")
    assert ex2.anaphors[0].status is Status.PENDING


def test_initial_state_rejects_invalid(ex2, lex):
    ex2.pps[0] = dataclasses.replace(ex2.pps[0], candidate_sites=())
    with pytest.raises(ValidationError):
        build_initial_state(ex2, lex)


def test_status_transitions():
    a = Anaphor("a1", "e1", "personal", 0)
    a.skip("blocked-by(p1)")
    a.skip("blocked-by(p2)")
    a.resolve("e2")
    with pytest.raises(StatusError):
        a.resolve("e3")
    with pytest.raises(StatusError):
        a.skip("late")
    p = PrepPhrase("p1", "of", "e2", 1, (SiteRef.np_modifier("e1"),))
    with pytest.raises(StatusError):
        p.attach(SiteRef.np_modifier("e9"))
    p.give_up("no-rule")
    with pytest.raises(StatusError):
        p.attach(SiteRef.np_modifier("e1"))


@pytest.mark.parametrize("a, b, ok", [
    (("neut", "sing"), ("neut", "sing"), True),
    (("neut", "sing"), ("neut", "plur"), False),
    (("unspec", "plur"), ("masc", "plur"), True),
    (("fem", "unspec"), ("masc", "sing"), False),
])
def test_agreement(a, b, ok):
    assert Agreement(*a).compatible(Agreement(*b)) is ok
    assert Agreement(*b).compatible(Agreement(*a)) is ok


def test_rule_table_conflicts():
    table = AttachmentRuleTable([
        AttachmentRule("suspend", "on", "EVENT", "CAUSE", 3),
        AttachmentRule("suspend", "on", "EVENT", "REASON", 3),
        AttachmentRule("suspend", "on", "EVENT", "REASON", 2),
    ])
    assert len(table.conflicts()) == 1


def test_discourse_promote_has_no_duplicates():
    d = DiscourseState()
    snap = EntitySnapshot("HUMAN", Agreement("masc", "sing"))
    d.promote([("e1", snap), ("e2", snap)], 0)
    d.promote([("e3", snap), ("e1", snap)], 1)
    assert d.focus == [("e3", 1), ("e1", 1), ("e2", 0)]
