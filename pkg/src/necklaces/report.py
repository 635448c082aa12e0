"""Verification results shared by the library checks and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

PASS = "pass"
FAIL = "fail"
SKIP = "skip"


@dataclass
class Report:
    identity_name: str
    p: int
    gamma: str | None
    status: str
    first_mismatch: Any = None
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        out = {"identity_name": self.identity_name, "p": self.p, "gamma": self.gamma, "status": self.status}
        if self.first_mismatch is not None:
            out["first_mismatch"] = self.first_mismatch
        if self.detail:
            out["detail"] = self.detail
        return out


def check(name: str, p: int, gamma, ok: bool, mismatch=None, **detail) -> Report:
    return Report(name, p, None if gamma is None else str(gamma), PASS if ok else FAIL,
                  None if ok else mismatch, detail)


def matrix_check(name: str, p: int, gamma, got: np.ndarray, want: np.ndarray, **detail) -> Report:
    got, want = np.asarray(got), np.asarray(want)
    if got.shape != want.shape:
        return check(name, p, gamma, False, {"shape": [list(got.shape), list(want.shape)]}, **detail)
    bad = np.argwhere(got != want)
    if bad.size == 0:
        return check(name, p, gamma, True, **detail)
    i, j = (int(x) for x in bad[0])
    return check(name, p, gamma, False,
                 {"row": i, "col": j, "got": int(got[i, j]), "expected": int(want[i, j])}, **detail)


def skipped(name: str, p: int, gamma, reason: str) -> Report:
    return Report(name, p, None if gamma is None else str(gamma), SKIP, None, {"reason": reason})
