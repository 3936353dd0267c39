"""The pattern-avoiding stack machine and its movement-sequence calculus.

The machine reads its input left to right over a single stack.  Each step
either pushes the next input letter, when the stack read top to bottom
with that letter on top still avoids every forbidden pattern, or pops the
stack top to the output.  Once the input runs dry the stack drains.  With
the single forbidden pattern 21 this is the classical stack sort.

A run of length n takes exactly 2n steps, recorded as a movement sequence
over N (enter) and X (exit); movement sequences are balanced Dyck words.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .words import (
    PatternSet,
    Word,
    contains,
    occurrences,
    pattern_of,
    reverse,
)

ENTER = "N"
EXIT = "X"


@lru_cache(maxsize=1 << 18)
def _push_keeps_avoiding(stack_pattern: Word, patterns: frozenset) -> bool:
    # stack_pattern is the order pattern of the stack read top to bottom with
    # the candidate letter on top.  Keyed on the pattern, not the raw word,
    # so sweeps over S_n share entries across letter choices.
    return not any(contains(stack_pattern, p) for p in patterns)


def _can_push(x: int, stack: list[int], patterns: frozenset) -> bool:
    return _push_keeps_avoiding(pattern_of((x, *reversed(stack))), patterns)


def sort(w: Word, tset: PatternSet) -> Word:
    """Run the machine on w and return the output, a rearrangement of w.

    >>> from permstack.words import pattern_set
    >>> sort((1, 3, 2), pattern_set("21"))
    (1, 2, 3)
    >>> sort((5, 2, 4, 1, 3), pattern_set("123", "132"))
    (4, 2, 3, 1, 5)
    """
    patterns = tset.patterns
    out: list[int] = []
    stack: list[int] = []
    for x in w:
        while stack and not _can_push(x, stack, patterns):
            out.append(stack.pop())
        stack.append(x)
    while stack:
        out.append(stack.pop())
    return tuple(out)


@dataclass(frozen=True)
class TraceEvent:
    """One machine step: what moved, and the state just after."""

    step: str     # ENTER or EXIT
    letter: int
    stack: Word   # top to bottom
    output: Word  # output so far

    def as_dict(self) -> dict:
        return {
            "step": self.step,
            "letter": self.letter,
            "stack": list(self.stack),
            "output": list(self.output),
        }


def sort_with_trace(
    w: Word, tset: PatternSet
) -> tuple[Word, str, tuple[TraceEvent, ...]]:
    """Like sort, but also return the N/X step string and the full event log."""
    patterns = tset.patterns
    out: list[int] = []
    stack: list[int] = []
    steps: list[str] = []
    events: list[TraceEvent] = []

    def pop_top() -> None:
        top = stack.pop()
        out.append(top)
        steps.append(EXIT)
        events.append(TraceEvent(EXIT, top, tuple(reversed(stack)), tuple(out)))

    for x in w:
        while stack and not _can_push(x, stack, patterns):
            pop_top()
        stack.append(x)
        steps.append(ENTER)
        events.append(TraceEvent(ENTER, x, tuple(reversed(stack)), tuple(out)))
    while stack:
        pop_top()
    return tuple(out), "".join(steps), tuple(events)


def movement_sequence(w: Word, tset: PatternSet) -> str:
    """The N/X step string the machine follows on w."""
    return sort_with_trace(w, tset)[1]


@dataclass(frozen=True)
class Clumping:
    """Decomposition of a word around its earliest blocking occurrence.

    segments holds (a_0, ..., a_k): a_0 is the (possibly empty) prefix before
    the first witness letter, each later segment starts at a witness letter,
    and the segments concatenate back to the source word.  witness_indices
    are the 0-based positions of the witness letters; their letters, read
    left to right, form an occurrence of reverse(witness_pattern).
    """

    segments: tuple[Word, ...]
    witness_pattern: Word
    witness_indices: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "segments": [list(s) for s in self.segments],
            "witness_pattern": list(self.witness_pattern),
            "witness_indices": list(self.witness_indices),
        }


def clumping(w: Word, tset: PatternSet) -> Clumping | None:
    """None when w avoids every reversed pattern of the set; otherwise the
    unique decomposition induced by the colexicographically least occurrence
    of some reversed pattern.

    Index tuples compare by last index, then second-to-last, and so on; a
    tuple exhausted while still tied is the smaller (this extends the order
    to sets with patterns of mixed lengths).  Should two patterns ever match
    the same least tuple, the lexicographically least pattern is stored; in
    fact one index tuple determines its pattern, so this is cosmetic.
    """
    best_key = None
    best: tuple[Word, tuple[int, ...]] | None = None
    for sigma in tset:  # sorted, so the pattern tie-break is deterministic
        for idxs in occurrences(w, reverse(sigma)):
            key = tuple(reversed(idxs))
            if best_key is None or key < best_key:
                best_key, best = key, (sigma, idxs)
    if best is None:
        return None
    sigma, idxs = best
    cuts = list(idxs) + [len(w)]
    segments = [w[: idxs[0]]]
    segments.extend(w[cuts[j] : cuts[j + 1]] for j in range(len(idxs)))
    return Clumping(tuple(segments), sigma, idxs)


def sort_recursive(w: Word, tset: PatternSet) -> Word:
    """Evaluate the machine through its clumping recurrence instead of
    simulating it: a word avoiding all reversed patterns just reverses;
    otherwise the next-to-last segment pops out reversed and the rest
    re-enters as a fresh input."""
    c = clumping(w, tset)
    if c is None:
        return reverse(w)
    segs = c.segments
    rest = sum(segs[:-2], ()) + segs[-1]
    return reverse(segs[-2]) + sort_recursive(rest, tset)


def is_movement_sequence(steps: str) -> bool:
    """Dyck validity: no prefix pops more than it pushed, totals balance."""
    h = 0
    for ch in steps:
        if ch == ENTER:
            h += 1
        elif ch == EXIT:
            h -= 1
            if h < 0:
                return False
        else:
            return False
    return h == 0


def movement_sequences(semilength: int) -> Iterator[str]:
    """All balanced step strings of the given semilength, lexicographically
    (N before X); there are catalan(semilength) of them."""
    if semilength < 0:
        raise ValueError("semilength must be nonnegative")
    steps: list[str] = []

    def grow(pushed: int, height: int) -> Iterator[str]:
        if len(steps) == 2 * semilength:
            yield "".join(steps)
            return
        if pushed < semilength:
            steps.append(ENTER)
            yield from grow(pushed + 1, height + 1)
            steps.pop()
        if height > 0:
            steps.append(EXIT)
            yield from grow(pushed, height - 1)
            steps.pop()

    yield from grow(0, 0)


def is_legal_movement_sequence(steps: str, n: int, tset: PatternSet) -> bool:
    """Shape test for candidate sequences of a length-n sort: with k the
    shortest forbidden pattern length, the first k-2 steps must be enters,
    the last k-2 exits, and the core in between balanced on its own."""
    pad = tset.min_len - 2
    if len(steps) != 2 * n or n < pad:
        return False
    if steps[:pad] != ENTER * pad or steps[len(steps) - pad :] != EXIT * pad:
        return False
    return is_movement_sequence(steps[pad : len(steps) - pad])


def legal_movement_sequences(n: int, k: int) -> Iterator[str]:
    """Every candidate step string for sorting a length-n word when the
    shortest forbidden pattern has length k; catalan(n - k + 2) in all."""
    pad = k - 2
    if n < pad:
        raise ValueError(f"no shaped sequences of semilength {n} for k={k}")
    head, tail = ENTER * pad, EXIT * pad
    for core in movement_sequences(n - pad):
        yield head + core + tail


def reconstruct_input(out: Word, steps: str) -> Word:
    """Play steps backwards from an output, rebuilding the one input that
    yields `out` if the machine were to follow `steps` on it.

    The result is only a candidate: the greedy machine may refuse to follow
    `steps` on it, so callers must re-sort it and compare.
    """
    if len(steps) != 2 * len(out) or not is_movement_sequence(steps):
        raise ValueError("steps must be balanced and match the output length")
    output = list(out)
    stack: list[int] = []
    rev_input: list[int] = []
    for ch in reversed(steps):
        if ch == EXIT:
            stack.append(output.pop())
        else:
            rev_input.append(stack.pop())
    return tuple(reversed(rev_input))
