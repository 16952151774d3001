"""Shared error types and the check-report record used across the workbench."""

from __future__ import annotations

from dataclasses import dataclass


class GuardRailError(RuntimeError):
    """An operation would exceed its enumeration guard rail or budget."""


class ConsistencyError(RuntimeError):
    """An exact identity that must hold internally failed.

    Raised when two routes to the same number disagree, when an integrality
    or divisibility condition breaks, or when a reconstruction does not match
    its input. Any occurrence signals a bug, never bad user input.
    """


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a single verification check."""

    ok: bool
    description: str
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"
