"""Method and system complexity: v(G), Halstead volume, Maintainability Index."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ClassModel, HalsteadCounts, MethodDecl


@dataclass(frozen=True)
class MiInputs:
    hv: float      # Halstead volume
    cc: float      # mean cyclomatic complexity per module
    locpm: float   # mean lines of code per module
    clpm: float    # mean comment-line fraction per module, in [0, 1]

    def __post_init__(self):
        if self.hv <= 0:
            raise ValueError("HV must be > 0")
        if self.cc < 1:
            raise ValueError("CC must be >= 1")
        if self.locpm <= 0:
            raise ValueError("LOCPM must be > 0")
        if not 0 <= self.clpm <= 1:
            raise ValueError("CLPM must be in [0, 1]")


def cyclomatic(method: MethodDecl) -> int:
    """v(G) = decision points + 1."""
    return method.decision_count + 1


def halstead_volume(h: HalsteadCounts) -> float:
    """HV = (N1 + N2) * log2(n1 + n2)."""
    vocabulary = h.n1 + h.n2
    length = h.N1 + h.N2
    if vocabulary == 0:
        if length > 0:
            raise ValueError("zero vocabulary with non-zero length")
        return 0.0
    return length * math.log2(vocabulary)


def maintainability_index(inputs: MiInputs) -> float:
    """Composite index; higher means easier to maintain."""
    return (171.0
            - 5.2 * math.log(inputs.hv)
            - 0.23 * inputs.cc
            - 16.2 * math.log(inputs.locpm)
            + 50.0 * math.sin(math.sqrt(2.46 * inputs.clpm)))


def system_complexity_summary(model: ClassModel):
    """(sum of v(G), average v(G) or None, method count) over all methods."""
    total = 0
    count = 0
    for decl in model.types.values():
        for method in decl.methods:
            total += cyclomatic(method)
            count += 1
    avg = total / count if count else None
    return total, avg, count
