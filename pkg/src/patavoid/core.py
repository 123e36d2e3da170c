"""Shared value types: words, multiplicity vectors, patterns, composition queries.

A word is represented as a plain ``tuple[int, ...]``. Everything here is
immutable once constructed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

Word = Tuple[int, ...]


class PatavoidError(Exception):
    """Base class for errors raised by this package."""


class DomainError(PatavoidError, ValueError):
    """An argument lies outside the domain of the operation."""


class QueryError(PatavoidError, ValueError):
    """A composition query is malformed."""


class ConsistencyError(PatavoidError, ArithmeticError):
    """An internal identity that must hold exactly did not."""


@dataclass(frozen=True)
class MultisetSpec:
    """Multiplicity vector ``(a_1, ..., a_k)``: ``a_i`` copies of letter ``i``."""

    mult: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mult", tuple(int(a) for a in self.mult))
        if any(a < 0 for a in self.mult):
            raise DomainError(f"negative multiplicity in {self.mult}")

    @classmethod
    def of(cls, *mult: int) -> "MultisetSpec":
        return cls(tuple(mult))

    @property
    def k(self) -> int:
        return len(self.mult)

    @property
    def size(self) -> int:
        return sum(self.mult)

    def letters(self) -> Word:
        """The multiset as its smallest (sorted) word."""
        return tuple(i for i, a in enumerate(self.mult, start=1) for _ in range(a))

    def __iter__(self):
        return iter(self.mult)

    def __len__(self):
        return len(self.mult)

    def __getitem__(self, idx):
        return self.mult[idx]


@dataclass(frozen=True)
class Pattern:
    """A pattern given by a sequence of integers, normally a permutation of 1..m.

    Construction does not validate; use :func:`validate_pattern` or
    :meth:`parse`.
    """

    perm: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(x) for x in self.perm))

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        """Parse the paper-style digit string, e.g. ``"132"``."""
        text = text.strip()
        if not text.isdigit():
            raise DomainError(f"pattern must be a digit string, got {text!r}")
        p = cls(tuple(int(ch) for ch in text))
        if not validate_pattern(p):
            raise DomainError(f"{text!r} is not a permutation of 1..{len(text)}")
        return p

    @property
    def m(self) -> int:
        return len(self.perm)

    def __str__(self):
        return "".join(str(x) for x in self.perm)


PatternLike = Union[Pattern, Sequence[int], str]


def as_pattern(p: PatternLike) -> Pattern:
    """Coerce ``p`` to a validated :class:`Pattern`."""
    if isinstance(p, Pattern):
        pat = p
    elif isinstance(p, str):
        return Pattern.parse(p)
    else:
        pat = Pattern(tuple(p))
    if not validate_pattern(pat):
        raise DomainError(f"{pat.perm} is not a permutation of 1..{len(pat.perm)}")
    return pat


def as_spec(spec: Union[MultisetSpec, Iterable[int]]) -> MultisetSpec:
    return spec if isinstance(spec, MultisetSpec) else MultisetSpec(tuple(spec))


@dataclass(frozen=True)
class CompositionQuery:
    """Which compositions of ``n`` to generate.

    ``flavor`` is ``"positive"`` (parts >= 1) or ``"nonnegative"`` (parts >= 0,
    requires a fixed ``k``). ``k`` fixes the number of parts and ``max_part``
    caps every part.
    """

    n: int
    flavor: str = "positive"
    k: Optional[int] = None
    max_part: Optional[int] = None

    def __post_init__(self):
        if self.n < 0:
            raise QueryError(f"n must be >= 0, got {self.n}")
        if self.flavor not in ("positive", "nonnegative"):
            raise QueryError(f"unknown flavor {self.flavor!r}")
        if self.flavor == "nonnegative" and self.k is None:
            raise QueryError("nonnegative compositions need a fixed number of parts k")
        if self.k is not None and self.k < 0:
            raise QueryError(f"k must be >= 0, got {self.k}")
        if self.max_part is not None and self.max_part < 0:
            raise QueryError(f"max_part must be >= 0, got {self.max_part}")

    @property
    def min_part(self) -> int:
        return 1 if self.flavor == "positive" else 0


def normalize_spec(spec: Union[MultisetSpec, Iterable[int]]) -> MultisetSpec:
    """Drop zero multiplicities; the surviving letters are relabeled 1..k'."""
    return MultisetSpec(tuple(a for a in as_spec(spec) if a != 0))


def word_multiset(w: Sequence[int]) -> MultisetSpec:
    """Multiplicity vector of ``w`` indexed by letters 1..max(w)."""
    if not w:
        return MultisetSpec(())
    if min(w) < 1:
        raise DomainError("multiset letters start at 1; found letter < 1")
    counts = Counter(w)
    return MultisetSpec(tuple(counts[i] for i in range(1, max(w) + 1)))


def validate_pattern(p: Union[Pattern, Sequence[int]]) -> bool:
    """True iff ``p`` is a permutation of 1..m with m >= 2."""
    perm = p.perm if isinstance(p, Pattern) else tuple(p)
    return len(perm) >= 2 and sorted(perm) == list(range(1, len(perm) + 1))
