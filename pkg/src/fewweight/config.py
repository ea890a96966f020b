from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_FIELD_CAP = 2**22
DEFAULT_ENUM_CAP = 2**24
# The pairwise cover check is quadratic in the number of codewords.
DEFAULT_PAIR_CAP = 3**6


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


@dataclass(frozen=True)
class Caps:
    field: int = DEFAULT_FIELD_CAP
    enumeration: int = DEFAULT_ENUM_CAP
    pairs: int = DEFAULT_PAIR_CAP

    @classmethod
    def from_env(cls) -> "Caps":
        return cls(
            field=_env_int("FEWWEIGHT_FIELD_CAP", DEFAULT_FIELD_CAP),
            enumeration=_env_int("FEWWEIGHT_ENUM_CAP", DEFAULT_ENUM_CAP),
            pairs=DEFAULT_PAIR_CAP,
        )
