"""Pass-free reference scheduler used to check the coordinator.

The dependency graph is read off the skip predicates in the initial state
(every decision pending). Decisions are then taken in topological order,
earliest textual position first among those that are ready, with the same
resolution and attachment rules the engine uses. Anything left over sits on
or behind a cycle and is marked as deadlocked.
"""

from __future__ import annotations

import graphlib
import heapq
from dataclasses import dataclass, field

from ..anaphora import anaphor_blockers, decide_anaphor
from ..attachment import decide_pp, pp_blockers
from ..coordinator import (
    COMPLETE,
    DEADLOCK_REASON,
    DEADLOCKED,
    SentenceResult,
    SalienceHook,
    subject_first_salience,
)
from ..model import (
    AnnotatedSentence,
    AttachmentRuleTable,
    DiscourseState,
    SemanticLexicon,
    build_initial_state,
)


@dataclass
class DependencyGraph:
    nodes: list[str]
    positions: dict[str, int]
    # node -> the decisions it waits for
    requires: dict[str, set[str]] = field(default_factory=dict)

    @property
    def edges(self) -> list[tuple[str, str]]:
        return sorted((n, m) for n, deps in self.requires.items() for m in deps)

    def acyclic(self) -> bool:
        try:
            tuple(graphlib.TopologicalSorter(self.requires).static_order())
        except graphlib.CycleError:
            return False
        return True


def dependency_graph(initial: AnnotatedSentence) -> DependencyGraph:
    """Edges for every blocker the skip predicates see when nothing is decided."""
    positions = {x.id: x.position for x in [*initial.anaphors, *initial.pps]}
    nodes = sorted(positions, key=positions.get)
    requires = {n: set() for n in nodes}
    for a in initial.anaphors:
        requires[a.id].update(p.id for p in anaphor_blockers(a, initial))
    for p in initial.pps:
        requires[p.id].update(a.id for _, a in pp_blockers(p, initial))
    return DependencyGraph(nodes, positions, requires)


@dataclass
class OracleResult:
    state: AnnotatedSentence
    graph: DependencyGraph
    order: list[str]
    deadlocked: list[str]

    @property
    def outcome(self) -> str:
        return DEADLOCKED if self.deadlocked else COMPLETE

    def decisions(self) -> dict[str, tuple]:
        return {x.id: x.outcome() for x in [*self.state.anaphors, *self.state.pps]}


def oracle_resolve(s: AnnotatedSentence, d: DiscourseState, rules: AttachmentRuleTable,
                   lex: SemanticLexicon) -> OracleResult:
    state = build_initial_state(s, lex)
    graph = dependency_graph(state)
    items = {x.id: x for x in [*state.anaphors, *state.pps]}
    anaphor_ids = {a.id for a in state.anaphors}

    waiting = {n: len(deps) for n, deps in graph.requires.items()}
    dependents: dict[str, list[str]] = {n: [] for n in graph.nodes}
    for n, deps in graph.requires.items():
        for m in deps:
            dependents[m].append(n)
    ready = [(graph.positions[n], n) for n in graph.nodes if waiting[n] == 0]
    heapq.heapify(ready)

    order = []
    while ready:
        _, n = heapq.heappop(ready)
        if n in anaphor_ids:
            decide_anaphor(items[n], state, d, lex)
        else:
            decide_pp(items[n], state, rules, lex)
        order.append(n)
        for m in dependents[n]:
            waiting[m] -= 1
            if waiting[m] == 0:
                heapq.heappush(ready, (graph.positions[m], m))

    deadlocked = [n for n in graph.nodes if n not in set(order)]
    for n in deadlocked:
        items[n].give_up(DEADLOCK_REASON)
    return OracleResult(state, graph, order, deadlocked)


def oracle_document(doc, rules, lex, discourse=None,
                    salience: SalienceHook = subject_first_salience):
    d = discourse.copy() if discourse is not None else DiscourseState()
    out = []
    for s in doc:
        r = oracle_resolve(s, d, rules, lex)
        out.append(r)
        d.promote(salience(r.state, d, lex), s.index)
    return out, d


@dataclass
class EquivalenceReport:
    diffs: list[tuple[str, tuple, tuple]] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return not self.diffs

    def __str__(self) -> str:
        if self.equal:
            return "equal"
        return "; ".join(f"{i}: engine={e} oracle={o}" for i, e, o in self.diffs)


def compare(engine: SentenceResult | OracleResult, oracle: SentenceResult | OracleResult
            ) -> EquivalenceReport:
    """Diff final status, antecedent/site and reason for every decision id."""
    a, b = engine.decisions(), oracle.decisions()
    report = EquivalenceReport()
    for key in sorted(set(a) | set(b)):
        if a.get(key) != b.get(key):
            report.diffs.append((key, a.get(key), b.get(key)))
    if engine.outcome != oracle.outcome:
        report.diffs.append(("<outcome>", (engine.outcome,), (oracle.outcome,)))
    return report
