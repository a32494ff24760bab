"""Integer codecs for pairs and finite sequences, plus finite stand-ins for
infinite inputs (injections, horizons)."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Sequence


def pair(i: int, j: int) -> int:
    """Cantor pairing: ``(i + j)(i + j + 1) / 2 + j``."""
    if i < 0 or j < 0:
        raise ValueError(f"pair() takes naturals, got ({i}, {j})")
    s = i + j
    return s * (s + 1) // 2 + j


def unpair(code: int) -> tuple[int, int]:
    """Inverse of :func:`pair`."""
    if code < 0:
        raise ValueError(f"unpair() takes a natural, got {code}")
    w = (isqrt(8 * code + 1) - 1) // 2
    j = code - w * (w + 1) // 2
    return w - j, j


def encode_seq(seq: Iterable[int]) -> int:
    """Bijective code of a finite sequence; the empty sequence codes as 0."""
    code = 0
    for x in seq:
        code = pair(code, x) + 1
    return code


def decode_seq(code: int) -> tuple[int, ...]:
    out: list[int] = []
    while code > 0:
        code, x = unpair(code - 1)
        out.append(x)
    return tuple(reversed(out))


def extend_seq(code: int, x: int) -> int:
    """Code of ``decode_seq(code) + (x,)`` without decoding."""
    return pair(code, x) + 1


def split_last(code: int) -> tuple[int, int]:
    """Return ``(parent_code, last_entry)`` of a nonempty sequence code."""
    if code <= 0:
        raise ValueError("empty sequence has no last entry")
    return unpair(code - 1)


@dataclass(frozen=True)
class InjectionPrefix:
    """Finite injective prefix ``f(0), ..., f(N-1)`` standing in for an
    injection on the naturals."""

    values: tuple[int, ...]

    @property
    def support(self) -> int:
        return len(self.values)

    def __call__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def in_range(self, j: int, upto: int | None = None) -> bool:
        """``j`` in the range of ``f`` restricted to ``{0, ..., upto-1}``."""
        vals = self.values if upto is None else self.values[:upto]
        return j in vals

    def preimage(self, j: int) -> int | None:
        try:
            return self.values.index(j)
        except ValueError:
            return None

    @property
    def range(self) -> frozenset[int]:
        return frozenset(self.values)


def validate_injection(values: Sequence[int]) -> InjectionPrefix:
    """Check pairwise distinctness and wrap as an :class:`InjectionPrefix`.

    Raises ``ValueError`` naming the first two colliding indices.
    """
    seen: dict[int, int] = {}
    for idx, v in enumerate(values):
        if v < 0:
            raise ValueError(f"f({idx}) = {v} is not a natural number")
        if v in seen:
            raise ValueError(
                f"not injective: f({seen[v]}) = f({idx}) = {v}"
            )
        seen[v] = idx
    return InjectionPrefix(tuple(int(v) for v in values))


@dataclass(frozen=True)
class Horizon:
    """Finite-approximation bounds: sequence depth, entry/vertex width, and
    construction stages."""

    depth: int = 1
    width: int = 16
    stages: int = 64

    def __post_init__(self):
        for name in ("depth", "width", "stages"):
            if getattr(self, name) < 1:
                raise ValueError(f"horizon {name} must be >= 1")

    @classmethod
    def parse(cls, text: str) -> "Horizon":
        parts = [int(p) for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"horizon must be D,W,S; got {text!r}")
        return cls(*parts)
