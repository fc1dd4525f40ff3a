from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Iterable

from ..coordinator import SentenceResult
from ..model import AnnotatedSentence


@dataclass
class CorpusStats:
    """Counts over resolved sentences; ``+`` merges partial results."""

    sentences: int = 0
    anaphors: int = 0
    pps: int = 0
    ambiguous_pps: int = 0
    # anaphor with no ambiguous PP before it
    case_a: int = 0
    # anaphor after at least one ambiguous PP
    case_b: int = 0
    # PP whose object contains a pronoun
    case_c: int = 0
    module_calls: int = 0
    deadlocked: int = 0

    @property
    def mean_module_calls(self) -> float:
        return self.module_calls / self.sentences if self.sentences else 0.0

    def __add__(self, other: "CorpusStats") -> "CorpusStats":
        return CorpusStats(*(getattr(self, f.name) + getattr(other, f.name)
                             for f in fields(self)))

    def as_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["mean_module_calls"] = round(self.mean_module_calls, 4)
        return d


def sentence_cases(s: AnnotatedSentence) -> CorpusStats:
    st = CorpusStats(sentences=1, anaphors=len(s.anaphors), pps=len(s.pps))
    ambiguous = [p for p in s.pps if p.ambiguous]
    st.ambiguous_pps = len(ambiguous)
    for a in s.anaphors:
        if any(p.position < a.position for p in ambiguous):
            st.case_b += 1
        else:
            st.case_a += 1
    for p in s.pps:
        if s.anaphors_in(s.np(p.object_np).span):
            st.case_c += 1
    return st


def corpus_stats(results: Iterable[SentenceResult]) -> CorpusStats:
    total = CorpusStats()
    for r in results:
        st = sentence_cases(r.state)
        st.module_calls = r.module_calls
        st.deadlocked = int(not r.complete)
        total = total + st
    return total
