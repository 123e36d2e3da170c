"""Parenthesis-matching bijection between permutations of M(a) and M(b), b a rearrangement of a.

For a focus letter i, read i as '(' and i+1 as ')' and match in the usual
stack fashion; every other letter is ignored. All unmatched ')' lie to the
left of all unmatched '('. ``tau`` turns the leftmost unmatched '(' into ')'
without disturbing any matched pair, and ``theta_adjacent`` applies it
a_i - a_{i+1} times, which swaps the multiplicities of i and i+1 while
preserving avoidance of increasing patterns.

Positions are 0-based.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from patavoid.core import DomainError, PatavoidError, Word, as_spec, word_multiset

OPEN, CLOSE, OTHER = "open", "close", "other"


class PreconditionError(PatavoidError, ValueError):
    """``tau`` or ``tau_inverse`` was applied to a word with nothing to flip."""


@dataclass(frozen=True)
class ParenView:
    word: Word
    focus: int
    roles: Tuple[str, ...]
    match: Tuple[Tuple[int, int], ...]
    unmatched_opens: Tuple[int, ...]
    unmatched_closes: Tuple[int, ...]

    def partner(self) -> Dict[int, int]:
        """Matched positions in both directions."""
        out = {}
        for p, q in self.match:
            out[p] = q
            out[q] = p
        return out

    def render(self, marks: bool = True) -> str:
        """Paper-style display: '(' and ')' for the focus pair, 'U' for unmatched opens."""
        unmatched = set(self.unmatched_opens) if marks else set()
        out = []
        for pos, (x, role) in enumerate(zip(self.word, self.roles)):
            if role == OPEN:
                out.append("U" if pos in unmatched else "(")
            elif role == CLOSE:
                out.append(")")
            else:
                out.append(str(x))
        return " ".join(out)


def match_parens(w: Sequence[int], i: int) -> ParenView:
    if i < 1:
        raise DomainError("focus letter must be >= 1")
    roles = []
    stack: List[int] = []
    pairs = []
    loose_closes = []
    for pos, x in enumerate(w):
        if x == i:
            roles.append(OPEN)
            stack.append(pos)
        elif x == i + 1:
            roles.append(CLOSE)
            if stack:
                pairs.append((stack.pop(), pos))
            else:
                loose_closes.append(pos)
        else:
            roles.append(OTHER)
    return ParenView(tuple(w), i, tuple(roles), tuple(sorted(pairs)), tuple(stack), tuple(loose_closes))


def _flip(w: Sequence[int], positions: Iterable[int], letter: int) -> Word:
    out = list(w)
    for pos in positions:
        out[pos] = letter
    return tuple(out)


def tau(w: Sequence[int], i: int) -> Word:
    """Change the leftmost unmatched ``i`` to ``i + 1``."""
    view = match_parens(w, i)
    if not view.unmatched_opens:
        raise PreconditionError(f"no unmatched {i} in {tuple(w)}")
    return _flip(w, view.unmatched_opens[:1], i + 1)


def tau_inverse(w: Sequence[int], i: int) -> Word:
    """Change the rightmost unmatched ``i + 1`` to ``i``."""
    view = match_parens(w, i)
    if not view.unmatched_closes:
        raise PreconditionError(f"no unmatched {i + 1} in {tuple(w)}")
    return _flip(w, view.unmatched_closes[-1:], i)


def theta_adjacent(w: Sequence[int], i: int) -> Word:
    """Swap the multiplicities of letters ``i`` and ``i + 1`` in ``w``.

    With d = #i - #(i+1): d > 0 flips the d leftmost unmatched ``i``;
    d < 0 flips the |d| rightmost unmatched ``i + 1``; d = 0 is the identity.
    """
    counts = Counter(w)
    d = counts[i] - counts[i + 1]
    if d == 0:
        return tuple(w)
    view = match_parens(w, i)
    if d > 0:
        return _flip(w, view.unmatched_opens[:d], i + 1)
    return _flip(w, view.unmatched_closes[d:], i)


def swap_schedule(source: Sequence[int], target: Sequence[int]) -> List[int]:
    """Adjacent transpositions (1-based letter indices) carrying ``source`` to ``target``.

    Positions are fixed left to right. For each position the nearest entry
    to its right holding the wanted value is bubbled leftward, so equal
    neighbours are never swapped.
    """
    cur = list(source)
    if sorted(cur) != sorted(target) or len(cur) != len(target):
        raise DomainError(f"{tuple(target)} is not a rearrangement of {tuple(source)}")
    steps = []
    for p, want in enumerate(target):
        q = cur.index(want, p)
        for s in range(q - 1, p - 1, -1):
            cur[s], cur[s + 1] = cur[s + 1], cur[s]
            steps.append(s + 1)
    return steps


def theta(w: Sequence[int], target) -> Word:
    """Map a permutation of M(word_multiset(w)) to a permutation of M(target)."""
    target = tuple(as_spec(target).mult)
    source = list(word_multiset(w).mult)
    if len(source) < len(target):
        source += [0] * (len(target) - len(source))
    out = tuple(w)
    for i in swap_schedule(source, target):
        out = theta_adjacent(out, i)
    return out


def one_letter_matching(src: Iterable[Sequence[int]], dst: Iterable[Sequence[int]], frm: int, to: int) -> Optional[Dict[Word, Word]]:
    """A bijection src -> dst where each image differs from its preimage by one ``frm`` changed to ``to``.

    Returns ``None`` when no such bijection exists.
    """
    src = [tuple(w) for w in src]
    dst = set(tuple(w) for w in dst)
    if len(src) != len(dst):
        return None
    options = {
        w: [_flip(w, [pos], to) for pos, x in enumerate(w) if x == frm and _flip(w, [pos], to) in dst]
        for w in src
    }
    owner: Dict[Word, Word] = {}

    def augment(w, seen):
        for v in options[w]:
            if v in seen:
                continue
            seen.add(v)
            if v not in owner or augment(owner[v], seen):
                owner[v] = w
                return True
        return False

    for w in src:
        if not augment(w, set()):
            return None
    return {w: v for v, w in owner.items()}
