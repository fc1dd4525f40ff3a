from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppanaphora.coordinator import cycle_metrics, resolve_document, resolve_sentence
from ppanaphora.harness.generate import random_instance
from ppanaphora.harness.oracle import dependency_graph
from ppanaphora.model import AnnotatedSentence, Token, ValidationError, build_initial_state
from ppanaphora.trace import ANAPHORA, ATTACHMENT


def short(trace):
    return [(e.pass_number, e.module[:3], e.action, e.target) for e in trace]


def expected_module_calls(s, lex):
    """Pass count read off the dependency graph: an item runs in the first
    call of its module after everything it waits for is decided."""
    state = build_initial_state(s, lex)
    g = dependency_graph(state)
    anaphors = {a.id for a in state.anaphors}

    @lru_cache(None)
    def pass_of(n):
        deps = g.requires[n]
        if not deps:
            return 1 if n in anaphors else 2
        return max(pass_of(m) for m in deps) + 1

    return max([2] + [pass_of(n) for n in g.nodes])


def test_golden_trace_example_2(ex2, rules, lex, empty_discourse):
    r = resolve_sentence(ex2, empty_discourse, rules, lex)
    assert short(r.trace) == [
        (1, "ANA", "SKIP", "a1"),
        (2, "ATT", "ATTACH", "p1"), (2, "ATT", "ATTACH", "p2"),
        (2, "ATT", "SKIP", "p3"), (2, "ATT", "SKIP", "p4"),
        (3, "ANA", "RESOLVE", "a1"),
        (4, "ATT", "ATTACH", "p3"), (4, "ATT", "ATTACH", "p4"),
    ]
    assert r.module_calls == 4 and r.complete
    assert r.state.anaphors[0].antecedent == "e3"


def test_golden_trace_example_1(ex1, rules, lex, empty_discourse):
    r = resolve_sentence(ex1, empty_discourse, rules, lex)
    assert short(r.trace) == [
        (1, "ANA", "RESOLVE", "a1"), (2, "ATT", "ATTACH", "p1"), (2, "ATT", "ATTACH", "p2")]
    assert r.module_calls == 2 and r.complete


def test_pronoun_object_chain(chain, rules, lex, empty_discourse):
    r = resolve_sentence(chain, empty_discourse, rules, lex)
    assert r.complete
    assert r.module_calls >= 5
    assert r.module_calls == expected_module_calls(chain, lex) == 6


def test_cyclic_sentence_deadlocks(cyclic, rules, lex, empty_discourse):
    r = resolve_sentence(cyclic, empty_discourse, rules, lex)
    assert r.outcome == "deadlocked" and r.module_calls == 2
    assert sorted(r.deadlocked) == ["a1", "a2", "p1", "p2", "p3"]
    assert all(v[2] == "deadlock" for v in r.decisions().values())


def test_cycle_metrics(ex1, ex2, rules, lex, empty_discourse):
    m2 = cycle_metrics(resolve_sentence(ex2, empty_discourse, rules, lex))
    assert m2.module_calls == 4 and m2.cycles == 2
    assert m2.progress_per_pass == [0, 2, 1, 2]
    assert m2.decisions_per_module == {ANAPHORA: 1, ATTACHMENT: 4}
    assert cycle_metrics(resolve_sentence(ex1, empty_discourse, rules, lex)).module_calls == 2


def test_empty_sentence_runs_one_cycle(rules, lex, empty_discourse):
    s = AnnotatedSentence(0, [Token(0, "Prices", "price"), Token(1, "rose", "rise")])
    m = cycle_metrics(resolve_sentence(s, empty_discourse, rules, lex))
    assert m.module_calls == 2 and m.progress_per_pass == [0, 0]


def test_focus_list_carries_subject_across_sentences(extra_docs, rules, lex):
    results, d = resolve_document(extra_docs["focus"].sentences, rules, lex)
    he = results[1].state.anaphors[0]
    assert he.antecedent == "e1"            # "The chairman" of sentence 0
    assert d.focus_ids[0] == "e1"


def test_single_sentence_document_equals_sentence_run(ex2, rules, lex, empty_discourse):
    (doc_result,), _ = resolve_document([ex2], rules, lex)
    single = resolve_sentence(ex2, empty_discourse, rules, lex)
    assert doc_result.decisions() == single.decisions()
    assert doc_result.trace == single.trace


def test_document_continues_after_deadlock(extra_docs, rules, lex):
    results, d = resolve_document(extra_docs["after-deadlock"].sentences, rules, lex)
    assert [r.outcome for r in results] == ["deadlocked", "complete"]
    assert results[1].state.anaphors[0].antecedent == "e4"   # "its chairman"
    assert "e1" not in d.focus_ids and "e3" not in d.focus_ids  # unresolved pronouns


def test_document_rejects_unordered_sentences(ex1, ex2, rules, lex):
    with pytest.raises(ValueError):
        resolve_document([ex1, ex2], rules, lex)


def test_validation_error_names_sentence(ex2, rules, lex):
    ex2.index = 7
    ex2.pps[0].candidate_sites = ()
    with pytest.raises(ValidationError, match="sentence 7"):
        resolve_document([ex2], rules, lex)


def check_run(inst):
    s, d = inst.sentence, inst.discourse
    r = resolve_sentence(s, d, inst.rules, inst.lexicon)
    A, P = len(s.anaphors), len(s.pps)
    assert r.module_calls <= 2 * (A + P + 1)

    modules = [rep.module for rep in r.reports]
    assert modules == [ANAPHORA if i % 2 == 0 else ATTACHMENT for i in range(len(modules))]

    # replay: SKIP* then at most one terminal action per target
    seen_terminal = set()
    for ev in r.trace:
        assert ev.target not in seen_terminal
        if ev.terminal:
            seen_terminal.add(ev.target)

    acyclic = dependency_graph(build_initial_state(s, inst.lexicon)).acyclic()
    assert r.complete == acyclic
    if acyclic:
        assert r.module_calls == expected_module_calls(s, inst.lexicon)
    assert not r.state.open_items()
    return r


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**7))
def test_scheduler_properties(seed):
    check_run(random_instance(seed))


def test_scheduler_properties_on_fixtures(corpus, extra_docs, lex, rules):
    for doc in [*corpus.values(), *extra_docs.values()]:
        for s in doc.sentences:
            r = resolve_sentence(s, __import__("ppanaphora").DiscourseState(), rules, lex)
            assert r.module_calls <= 2 * (len(s.anaphors) + len(s.pps) + 1)
