"""Staged pass/fail reports shared by every verifier."""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from .exact.scalars import to_plain


class Verdict(str, Enum):
    """Outcome of a verification or of one of its stages."""
    PASS = "pass"
    FAIL = "fail"
    REJECT = "reject"


@dataclass
class Stage:
    """One named condition inside a report."""
    name: str
    verdict: Verdict
    witness: Optional[Dict[str, Any]] = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"name": self.name, "verdict": self.verdict.value}
        if self.witness is not None:
            out["witness"] = to_plain(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


def passed(name: str, detail: str = "") -> Stage:
    """Build a passing stage."""
    return Stage(name=name, verdict=Verdict.PASS, detail=detail)


def failed(name: str, witness: Dict[str, Any], detail: str = "") -> Stage:
    """Build a failing stage; a failure always carries a witness."""
    return Stage(name=name, verdict=Verdict.FAIL, witness=witness, detail=detail)


@dataclass
class Report:
    """
    Structured verdict of a verification.

    The overall verdict is derived from the stages unless it is set
    explicitly (``reject`` for precondition failures).
    """
    subject: str
    stages: List[Stage] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    forced_verdict: Optional[Verdict] = None

    @property
    def verdict(self) -> Verdict:
        if self.forced_verdict is not None:
            return self.forced_verdict
        if any(stage.verdict == Verdict.REJECT for stage in self.stages):
            return Verdict.REJECT
        if any(stage.verdict == Verdict.FAIL for stage in self.stages):
            return Verdict.FAIL
        return Verdict.PASS

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    @property
    def failed_stage(self) -> Optional[Stage]:
        """First stage that did not pass."""
        for stage in self.stages:
            if stage.verdict != Verdict.PASS:
                return stage
        return None

    def stage(self, name: str) -> Stage:
        for stage in self.stages:
            if stage.name == name:
                return stage
        raise KeyError(name)

    def add(self, stage: Stage) -> Stage:
        self.stages.append(stage)
        return stage

    def extend(self, other: "Report", prefix: str = "") -> None:
        """Append the stages of another report, optionally namespaced."""
        for stage in other.stages:
            self.stages.append(
                Stage(
                    name=f"{prefix}{stage.name}",
                    verdict=stage.verdict,
                    witness=stage.witness,
                    detail=stage.detail,
                )
            )

    @classmethod
    def rejected(cls, subject: str, reason: str, witness: Optional[Dict[str, Any]] = None) -> "Report":
        """Report for an input that fails the operation's precondition."""
        return cls(
            subject=subject,
            stages=[Stage(name="precondition", verdict=Verdict.REJECT, witness=witness, detail=reason)],
            forced_verdict=Verdict.REJECT,
        )

    def to_dict(self) -> Dict[str, Any]:
        failed_stage = self.failed_stage
        return {
            "subject": self.subject,
            "verdict": self.verdict.value,
            "failed_stage": failed_stage.name if failed_stage else None,
            "stages": [stage.to_dict() for stage in self.stages],
            "data": to_plain(self.data),
            "notes": list(self.notes),
        }

    def to_markdown(self) -> str:
        lines = [f"## {self.subject}", "", f"**Verdict:** {self.verdict.value}", ""]
        if self.stages:
            lines.append("| Stage | Verdict | Witness |")
            lines.append("|---|---|---|")
            for stage in self.stages:
                witness = json.dumps(to_plain(stage.witness), sort_keys=True) if stage.witness else ""
                lines.append(f"| {stage.name} | {stage.verdict.value} | {witness} |")
            lines.append("")
        if self.data:
            lines.append("**Data**")
            lines.append("")
            for key in sorted(self.data):
                lines.append(f"- `{key}`: {json.dumps(to_plain(self.data[key]), sort_keys=True)}")
            lines.append("")
        for note in self.notes:
            lines.append(f"> {note}")
        return "\n".join(lines).rstrip() + "\n"
