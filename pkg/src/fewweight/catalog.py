"""Reference codes with published parameters and weight enumerators."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ReferenceCode:
    spec: tuple[int, int, int, int, int, int]  # (p, s, m, m1, h, n)
    parameters: tuple[int, int, int]  # [length, dimension, d]
    enumerator: str
    optimal_claim: str | None = None
    annotation: str | None = None


REFERENCE_CODES: tuple[ReferenceCode, ...] = (
    ReferenceCode((3, 1, 2, 1, 1, 4), (24, 3, 16), "1 + 18z^16 + 8z^18", "optimal"),
    ReferenceCode(
        (3, 1, 2, 1, 1, 8),
        (48, 3, 32),
        "1 + 18z^32 + 8z^36",
        "almost optimal",
        "best known [48,3] ternary code has d = 33 (literature value, not recomputed)",
    ),
    ReferenceCode((3, 1, 2, 2, 1, 4), (72, 4, 48), "1 + 72z^48 + 8z^54", "optimal"),
    ReferenceCode((3, 1, 2, 1, 2, 4), (24, 3, 12), "1 + 4z^12 + 18z^16 + 4z^24"),
    ReferenceCode((3, 1, 2, 2, 2, 4), (72, 4, 36), "1 + 4z^36 + 72z^48 + 4z^72"),
    ReferenceCode((3, 1, 4, 2, 4, 10), (180, 6, 108), "1 + 60z^108 + 648z^120 + 20z^162"),
    ReferenceCode((3, 1, 4, 2, 5, 8), (144, 6, 54), "1 + 16z^54 + 648z^96 + 64z^108"),
)
