"""Global behaviour of the sorting map on S_n.

Bijectivity and the reverse-conjugate inverse, the two-stage machine and
its identity-preimage counts, preimage (fertility) enumeration against the
Catalan bound, the extremal constructions that meet the bound, complement
conjugation, and periodic-orbit structure.  Everything is exhaustive and
desk scale: sweeps refuse n beyond words.MAX_ENUM_N.

Sweeps walk the permutation prefix tree so machine state is shared across
inputs with a common prefix; results are identical to sorting each
permutation separately (the tests compare the two).  Functions taking a
``workers`` argument split the tree by first letter across processes and
merge deterministically, so output never depends on the worker count.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial

from .machine import (
    _can_push,
    legal_movement_sequences,
    reconstruct_input,
    sort,
)
from .words import (
    MAX_ENUM_N,
    PatternSet,
    Word,
    catalan,
    complement,
    enumerate_avoiders,
    enumerate_permutations,
    identity,
    is_permutation,
    pattern_set,
    reverse,
    reverse_identity,
    swap_first_two,
)

#: The classical stack: forbid a descent, read top to bottom.
CLASSICAL_STACK = pattern_set("21")

#: All six length-3 patterns, lexicographically.
LENGTH3_PATTERNS = tuple(itertools.permutations((1, 2, 3)))


# ---------------------------------------------------------------------------
# exhaustive sweeps


def _extend_images(
    patterns: frozenset,
    n: int,
    used: list[bool],
    stack: list[int],
    out: list[int],
    images: list[Word],
) -> None:
    if len(out) + len(stack) == n:
        images.append(tuple(out) + tuple(reversed(stack)))
        return
    for x in range(1, n + 1):
        if used[x]:
            continue
        used[x] = True
        popped = 0
        while stack and not _can_push(x, stack, patterns):
            out.append(stack.pop())
            popped += 1
        stack.append(x)
        _extend_images(patterns, n, used, stack, out, images)
        stack.pop()
        for _ in range(popped):
            stack.append(out.pop())
        used[x] = False


def _subtree_images(args: tuple[PatternSet, int, int]) -> list[Word]:
    tset, n, first = args
    used = [False] * (n + 1)
    used[first] = True
    images: list[Word] = []
    _extend_images(tset.patterns, n, used, [first], [], images)
    return images


def sort_images(tset: PatternSet, n: int, workers: int = 1) -> list[Word]:
    """Machine outputs across S_n, in lexicographic input order.

    Equal to [sort(p, tset) for p in enumerate_permutations(n)] but shares
    stack state across inputs with a common prefix.
    """
    if not 0 <= n <= MAX_ENUM_N:
        raise ValueError(f"exhaustive sweeps are capped at n <= {MAX_ENUM_N}")
    if n == 0:
        return [()]
    jobs = [(tset, n, first) for first in range(1, n + 1)]
    if workers > 1 and factorial(n) >= 5000:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_subtree_images, jobs))
    else:
        parts = [_subtree_images(job) for job in jobs]
    return [img for part in parts for img in part]


def sort_map(tset: PatternSet, n: int, workers: int = 1) -> dict[Word, Word]:
    """The map as a finite function table on S_n."""
    return dict(zip(enumerate_permutations(n), sort_images(tset, n, workers)))


def image_size(tset: PatternSet, n: int, workers: int = 1) -> int:
    """How many distinct outputs the map has on S_n (n! exactly when the
    bijectivity criterion holds)."""
    return len(set(sort_images(tset, n, workers)))


# ---------------------------------------------------------------------------
# bijectivity


def bijectivity_criterion(tset: PatternSet) -> bool:
    """True exactly when swapping the first two letters of any member lands
    back in the set; such maps are bijections and only such maps are."""
    return all(swap_first_two(p) in tset for p in tset)


def verify_bijective(tset: PatternSet, n: int, workers: int = 1):
    """Exhaustively check injectivity on S_n.

    Returns True, or the first pair (in input order) of distinct
    permutations sharing an image.
    """
    seen: dict[Word, Word] = {}
    for p, img in zip(enumerate_permutations(n), sort_images(tset, n, workers)):
        if img in seen:
            return (seen[img], p)
        seen[img] = p
    return True


def inverse_sort(p: Word, tset: PatternSet) -> Word:
    """The inverse map reverse . sort . reverse; only defined when the
    bijectivity criterion holds."""
    if not bijectivity_criterion(tset):
        raise ValueError("the sorting map is not bijective for this pattern set")
    return reverse(sort(reverse(p), tset))


# ---------------------------------------------------------------------------
# the two-stage machine


def machine_sort(w: Word, first: Word, second: Word) -> Word:
    """Send w through the stack avoiding {first, second}, then through the
    classical stack."""
    return sort(sort(w, pattern_set(first, second)), CLASSICAL_STACK)


def _machine_subtree(args: tuple[PatternSet, int, int]) -> list[Word]:
    tset, n, start = args
    return [sort(img, CLASSICAL_STACK) for img in _subtree_images((tset, n, start))]


def machine_images(first: Word, second: Word, n: int, workers: int = 1) -> list[Word]:
    """Two-stage machine outputs across S_n in lexicographic input order."""
    if not 0 <= n <= MAX_ENUM_N:
        raise ValueError(f"exhaustive sweeps are capped at n <= {MAX_ENUM_N}")
    if n == 0:
        return [()]
    stage = pattern_set(first, second)
    jobs = [(stage, n, s) for s in range(1, n + 1)]
    if workers > 1 and factorial(n) >= 5000:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_machine_subtree, jobs))
    else:
        parts = [_machine_subtree(job) for job in jobs]
    return [img for part in parts for img in part]


def sort_set(first: Word, second: Word, n: int, workers: int = 1) -> set[Word]:
    """The permutations the two-stage machine sends to the identity."""
    target = identity(n)
    return {
        p
        for p, img in zip(enumerate_permutations(n), machine_images(first, second, n, workers))
        if img == target
    }


def sort_count(first: Word, second: Word, n: int, workers: int = 1) -> int:
    """How many permutations of S_n the two-stage machine sorts."""
    target = identity(n)
    return sum(1 for img in machine_images(first, second, n, workers) if img == target)


#: Previously reported counts for |sort_n| over all pairs of length-3
#: patterns, n = 1..4, kept for cross-checking.  The reference tabulation
#: is flawed: it lists (1,2,3),(2,3,1) twice, gives two conflicting rows
#: for (2,1,3),(2,3,1), and omits (1,3,2),(2,3,1) and (2,1,3),(3,1,2);
#: entries here keep every printed candidate so the mismatch handling can
#: be exercised.
REFERENCE_COUNTS: dict[tuple[Word, Word], tuple[tuple[int, ...], ...]] = {
    ((1, 2, 3), (1, 3, 2)): ((1, 2, 5, 14),),
    ((1, 2, 3), (2, 1, 3)): ((1, 2, 5, 14),),
    ((1, 2, 3), (2, 3, 1)): ((1, 2, 6, 21), (1, 2, 6, 21)),
    ((1, 2, 3), (3, 1, 2)): ((1, 2, 5, 15),),
    ((1, 2, 3), (3, 2, 1)): ((1, 2, 4, 7),),
    ((1, 3, 2), (2, 1, 3)): ((1, 2, 5, 15),),
    ((1, 3, 2), (2, 3, 1)): (),
    ((1, 3, 2), (3, 1, 2)): ((1, 2, 5, 14),),
    ((1, 3, 2), (3, 2, 1)): ((1, 2, 4, 10),),
    ((2, 1, 3), (2, 3, 1)): ((1, 2, 5, 16), (1, 2, 6, 23)),
    ((2, 1, 3), (3, 1, 2)): (),
    ((2, 1, 3), (3, 2, 1)): ((1, 2, 4, 12),),
    ((2, 3, 1), (3, 1, 2)): ((1, 2, 6, 23),),
    ((2, 3, 1), (3, 2, 1)): ((1, 2, 5, 14),),
    ((3, 1, 2), (3, 2, 1)): ((1, 2, 4, 10),),
}


@dataclass(frozen=True)
class SortTableRow:
    sigma: Word
    tau: Word
    counts: tuple[int, ...]
    is_catalan: bool
    reference: tuple[tuple[int, ...], ...]
    note: str

    def as_dict(self) -> dict:
        return {
            "sigma": list(self.sigma),
            "tau": list(self.tau),
            "counts": list(self.counts),
            "catalan": self.is_catalan,
            "reference": [list(r) for r in self.reference],
            "note": self.note,
        }


@dataclass(frozen=True)
class SortTable:
    max_n: int
    rows: tuple[SortTableRow, ...]

    def as_dict(self) -> dict:
        return {"max_n": self.max_n, "rows": [r.as_dict() for r in self.rows]}


def _reference_note(counts: tuple[int, ...], refs, max_n: int) -> str:
    window = min(max_n, 4)
    mine = counts[:window]
    if not refs:
        return "no reference value; computed from scratch"
    if len(set(refs)) > 1:
        listed = " vs ".join(str(r) for r in refs)
        return f"reference values conflict ({listed}); computed value is authoritative"
    dup = " (reference lists this pair twice, one row likely mislabeled)" if len(refs) > 1 else ""
    if mine == refs[0][:window]:
        return "matches reference" + dup
    return f"DIFFERS from reference {refs[0]}" + dup


def build_sort_table(max_n: int, workers: int = 1) -> SortTable:
    """Identity-preimage counts of the two-stage machine over all 15 pairs
    of distinct length-3 patterns, for n = 1..max_n, with notes comparing
    against the previously reported values."""
    if not 1 <= max_n <= MAX_ENUM_N:
        raise ValueError(f"table size must be 1..{MAX_ENUM_N}")
    cat_prefix = tuple(catalan(i) for i in range(1, max_n + 1))
    rows = []
    for sigma, tau in itertools.combinations(LENGTH3_PATTERNS, 2):
        counts = tuple(sort_count(sigma, tau, n, workers) for n in range(1, max_n + 1))
        refs = REFERENCE_COUNTS[(sigma, tau)]
        rows.append(
            SortTableRow(
                sigma=sigma,
                tau=tau,
                counts=counts,
                is_catalan=counts == cat_prefix,
                reference=refs,
                note=_reference_note(counts, refs, max_n),
            )
        )
    return SortTable(max_n, tuple(rows))


# ---------------------------------------------------------------------------
# preimages and fertility


def preimages(gamma: Word, tset: PatternSet, method: str = "movement") -> set[Word]:
    """All permutations the machine sends to gamma.

    method "movement" rebuilds one candidate from each shaped movement
    sequence and keeps those that really sort to gamma (distinct preimages
    always follow distinct sequences, so nothing is missed); "brute"
    filters all of S_n.  The two agree, which the tests sweep exhaustively.
    """
    if not is_permutation(gamma):
        raise ValueError("preimages are computed for permutations")
    n = len(gamma)
    if not 0 <= n <= MAX_ENUM_N:
        raise ValueError(f"preimage search is capped at n <= {MAX_ENUM_N}")
    if method == "brute":
        return {p for p in enumerate_permutations(n) if sort(p, tset) == gamma}
    if method != "movement":
        raise ValueError(f"unknown method {method!r}")
    k = tset.min_len
    if n < k - 2:
        # no pattern can ever fit in the stack: the machine just reverses
        return {reverse(gamma)}
    found = set()
    for steps in legal_movement_sequences(n, k):
        cand = reconstruct_input(gamma, steps)
        if sort(cand, tset) == gamma:
            found.add(cand)
    return found


def preimage_map(tset: PatternSet, n: int, workers: int = 1) -> dict[Word, set[Word]]:
    """Every image with its full preimage set, from a single sweep of S_n."""
    table: dict[Word, set[Word]] = {}
    for p, img in zip(enumerate_permutations(n), sort_images(tset, n, workers)):
        table.setdefault(img, set()).add(p)
    return table


@dataclass(frozen=True)
class FertilityReport:
    """The largest preimage count on S_n and everything attaining it."""

    patterns: PatternSet
    n: int
    max_count: int
    witnesses: frozenset[Word]
    bound: int

    def as_dict(self) -> dict:
        return {
            "patterns": [list(p) for p in self.patterns],
            "n": self.n,
            "max_count": self.max_count,
            "bound": self.bound,
            "witnesses": [list(w) for w in sorted(self.witnesses)],
        }


def fertility_max(tset: PatternSet, n: int, workers: int = 1) -> FertilityReport:
    """Histogram the images of one S_n sweep and report the maximum preimage
    count with all its witnesses; bound is catalan(n - k + 2), the number of
    shaped movement sequences."""
    k = tset.min_len
    if n < k - 2:
        raise ValueError(f"fertility bound needs n >= {k - 2} for these patterns")
    counts = Counter(sort_images(tset, n, workers))
    top = max(counts.values())
    witnesses = frozenset(g for g, c in counts.items() if c == top)
    return FertilityReport(tset, n, top, witnesses, catalan(n - k + 2))


# ---------------------------------------------------------------------------
# extremal constructions meeting the fertility bound


def extremal_literal(pattern: Word) -> Word:
    """The literal word pinning the stack bottom in the extremal fertility
    construction; defined when the pattern's first two letters are
    consecutive integers.

    Letters of the pattern past the second map to themselves when below the
    first letter and to complement-marked values when above it.
    """
    if not is_permutation(pattern) or len(pattern) < 3:
        raise ValueError("need a permutation pattern of length at least 3")
    if abs(pattern[0] - pattern[1]) != 1:
        raise ValueError("first two pattern letters must be consecutive")
    k = len(pattern)
    out = []
    for v in pattern[2:]:
        out.append(v if v < pattern[0] else -(k + 1 - v))
    return tuple(out)


def _literal_targets(lit: Word, n: int) -> list[int]:
    targets = [v if v > 0 else n + 1 + v for v in lit]
    if len(set(targets)) != len(targets) or not all(1 <= t <= n for t in targets):
        raise ValueError("literal word does not embed in a length-n permutation")
    return targets


def extremal_target(pattern: Word, n: int) -> Word:
    """The length-n permutation whose preimage count meets the Catalan bound
    for a single forbidden pattern with consecutive first letters: its last
    k-2 entries literally realize extremal_literal(pattern) and the rest run
    increasing (first letter above second) or decreasing (below)."""
    lit = extremal_literal(pattern)
    if n < len(pattern):
        raise ValueError("target length must be at least the pattern length")
    tail = _literal_targets(lit, n)
    rest = sorted(set(range(1, n + 1)) - set(tail))
    if pattern[0] < pattern[1]:
        rest.reverse()
    return tuple(rest) + tuple(tail)


def extremal_family(pattern: Word, n: int) -> set[Word]:
    """The catalan(n - k + 2) permutations whose first k-2 entries literally
    realize the reversed extremal literal and whose remaining entries avoid
    231 (first pattern letter above second) or 213 (below); exactly the
    preimages of extremal_target(pattern, n)."""
    lit = extremal_literal(pattern)
    if n < len(pattern):
        raise ValueError("target length must be at least the pattern length")
    head = tuple(_literal_targets(reverse(lit), n))
    rest_letters = sorted(set(range(1, n + 1)) - set(head))
    avoided = (2, 3, 1) if pattern[0] > pattern[1] else (2, 1, 3)
    family = set()
    for rho in enumerate_avoiders(n - len(pattern) + 2, [avoided]):
        family.add(head + tuple(rest_letters[r - 1] for r in rho))
    return family


# ---------------------------------------------------------------------------
# complement conjugation


def complement_conjugation_check(tset: PatternSet, n: int, workers: int = 1) -> bool:
    """Sorting the complement under the complemented patterns must equal the
    complement of the sorted original, across all of S_n."""
    comp_tset = tset.complemented()
    return all(
        sort(complement(p), comp_tset) == complement(img)
        for p, img in zip(enumerate_permutations(n), sort_images(tset, n, workers))
    )


# ---------------------------------------------------------------------------
# periodic structure


def is_half_decreasing(p: Word) -> bool:
    """True when position n-1 holds 1, position n-3 holds 2, and so on down
    to position 2 or 3; order isomorphism is not enough, the letters must be
    literally 1, 2, ...  Vacuously true for n <= 2."""
    if not is_permutation(p):
        raise ValueError("half-decreasing is defined on permutations")
    n = len(p)
    return all(p[n - 2 * t] == t for t in range(1, (n - 1) // 2 + 1))


def is_half_increasing(p: Word) -> bool:
    """True when the complement is half-decreasing."""
    return is_half_decreasing(complement(p))


def half_decreasing_step(p: Word) -> Word:
    """Closed form for one application of the {123, 132}-avoiding stack to a
    half-decreasing permutation: the pinned letters stay put and the free
    letters shift cyclically one slot left.  Must equal the simulation."""
    if len(p) < 3:
        raise ValueError("closed form needs length at least 3")
    if not is_half_decreasing(p):
        raise ValueError("closed form only applies to half-decreasing permutations")
    n = len(p)
    pinned = {n - 2 * t for t in range(1, (n - 1) // 2 + 1)}
    free = [i for i in range(n) if i not in pinned]
    out = list(p)
    for j, i in enumerate(free):
        out[i] = p[free[(j + 1) % len(free)]]
    return tuple(out)


@dataclass(frozen=True)
class OrbitReport:
    """Trajectory of one permutation under repeated sorting: the pre-periodic
    tail, then the cycle it falls into."""

    start: Word
    tail: tuple[Word, ...]
    cycle: tuple[Word, ...]

    @property
    def cycle_length(self) -> int:
        return len(self.cycle)

    def as_dict(self) -> dict:
        return {
            "start": list(self.start),
            "tail": [list(w) for w in self.tail],
            "cycle": [list(w) for w in self.cycle],
            "cycle_length": self.cycle_length,
        }


def orbit(p: Word, tset: PatternSet) -> OrbitReport:
    """Iterate the map from p until a repeat; S_n is finite so this always
    terminates."""
    if not is_permutation(p):
        raise ValueError("orbits are computed for permutations")
    if len(p) > MAX_ENUM_N:
        raise ValueError(f"orbit iteration is capped at n <= {MAX_ENUM_N}")
    seen = {p: 0}
    seq = [p]
    cur = p
    while True:
        cur = sort(cur, tset)
        if cur in seen:
            i = seen[cur]
            return OrbitReport(p, tuple(seq[:i]), tuple(seq[i:]))
        seen[cur] = len(seq)
        seq.append(cur)


def _periodic_from_map(f: dict[Word, Word]) -> set[Word]:
    state: dict[Word, int] = {}  # 1 on the current walk, 2 settled
    periodic: set[Word] = set()
    for start in f:
        if start in state:
            continue
        path: list[Word] = []
        cur = start
        while cur not in state:
            state[cur] = 1
            path.append(cur)
            cur = f[cur]
        if state[cur] == 1:
            periodic.update(path[path.index(cur) :])
        for q in path:
            state[q] = 2
    return periodic


def periodic_points(tset: PatternSet, n: int, workers: int = 1) -> set[Word]:
    """All permutations of S_n lying on a cycle of the map."""
    return _periodic_from_map(sort_map(tset, n, workers))


def orbit_partition(tset: PatternSet, n: int, workers: int = 1) -> tuple[tuple[Word, ...], ...]:
    """The periodic points grouped into their disjoint cycles; each cycle
    starts at its lexicographically least member, cycles sorted by that
    member."""
    f = sort_map(tset, n, workers)
    points = _periodic_from_map(f)
    cycles = []
    seen: set[Word] = set()
    for p in sorted(points):
        if p in seen:
            continue
        cyc = [p]
        cur = f[p]
        while cur != p:
            cyc.append(cur)
            cur = f[cur]
        seen.update(cyc)
        cycles.append(tuple(cyc))
    return tuple(cycles)


def trivial_periodic_points_only(
    tset: PatternSet, n: int, workers: int = 1
) -> tuple[bool, Word | None]:
    """Check that nothing but the identity and its reverse is periodic;
    returns (verdict, counterexample), the counterexample being the least
    other periodic point when the check fails."""
    extras = sorted(
        periodic_points(tset, n, workers) - {identity(n), reverse_identity(n)}
    )
    return (not extras, extras[0] if extras else None)
