from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

ANAPHORA = "ANAPHORA"
ATTACHMENT = "ATTACHMENT"

RESOLVE = "RESOLVE"
ATTACH = "ATTACH"
SKIP = "SKIP"
UNRESOLVABLE = "UNRESOLVABLE"
UNATTACHED = "UNATTACHED"

TERMINAL_ACTIONS = frozenset({RESOLVE, ATTACH, UNRESOLVABLE, UNATTACHED})


@dataclass(frozen=True)
class TraceEvent:
    pass_number: int
    module: str
    target: str
    action: str
    detail: str = ""

    @property
    def terminal(self) -> bool:
        return self.action in TERMINAL_ACTIONS

    def format(self) -> str:
        return (f"pass={self.pass_number} module={self.module} action={self.action}"
                f" target={self.target} detail={self.detail}")

    @classmethod
    def parse(cls, line: str) -> "TraceEvent":
        fields = dict(part.split("=", 1) for part in line.split())
        return cls(int(fields["pass"]), fields["module"], fields["target"],
                   fields["action"], fields.get("detail", ""))

    def short(self) -> tuple[str, str]:
        return (self.action, self.target)


@dataclass
class PassReport:
    pass_number: int
    module: str
    counts: Counter = field(default_factory=Counter)

    @property
    def progress(self) -> int:
        """Number of decisions taken in this pass."""
        return sum(n for action, n in self.counts.items() if action in TERMINAL_ACTIONS)

    def record(self, event: TraceEvent) -> None:
        self.counts[event.action] += 1
