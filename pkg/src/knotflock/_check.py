from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Check:
    """Outcome of a universally quantified identity check.

    Truthy iff the identity holds.  On failure ``witness`` is the
    lexicographically first offending tuple (0-based element indices, plus a
    leading condition id where a checker tests several identities).
    """

    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


PASS = Check(True)


def first_failure(bad: np.ndarray, prefix: tuple = ()) -> Check:
    """Turn a boolean "violation" array indexed by tuples into a Check."""
    if not bad.any():
        return PASS
    flat = int(np.flatnonzero(bad.ravel())[0])
    idx = tuple(int(i) for i in np.unravel_index(flat, bad.shape))
    return Check(False, prefix + idx)
