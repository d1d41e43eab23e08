"""Evidence values explaining why an input is not a leaf power."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple


@dataclass(frozen=True)
class NotPowerEvidence:
    """First failing stage of the recognition pipeline plus a witness.

    stage is one of: TooManyCliques, AdmissibilityViolation, BadCliqueBlock,
    EmptyRootSet, NoCompatibleChoice, NotSquareComponent, NotGNetworkClass,
    NotCliqueComponent, NotBiconnected, ConflictingPatterns.
    """

    stage: str
    detail: str = ""
    witness: Tuple[str, ...] = field(default=())

    def render(self) -> str:
        parts = [self.stage]
        if self.detail:
            parts.append(self.detail)
        if self.witness:
            parts.append("witness: " + ", ".join(self.witness))
        return " | ".join(parts)
