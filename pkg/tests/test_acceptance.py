"""Acceptance gate: one test per headline claim, each at its stated size.

Run with `pytest tests/test_acceptance.py -v -s` to see one pass line per
criterion.  Every expected value here is either a hand-traced constant, a
value verified against an independent oracle implemented in this file, or
a closed-form count (catalan / factorial).
"""

import itertools
from math import factorial

from permstack import dynamics as dyn
from permstack.machine import movement_sequence, sort, sort_recursive
from permstack.words import (
    catalan,
    complement,
    enumerate_avoiders,
    enumerate_permutations,
    identity,
    pattern_set,
    reverse_identity,
)

S3 = sorted(itertools.permutations((1, 2, 3)))


def test_criterion_01_figure_regression():
    assert sort((1, 3, 2), pattern_set("21")) == (1, 2, 3)
    assert movement_sequence((1, 3, 2), pattern_set("21")) == "NXNNXX"
    print("PASS criterion 1: classical sort of 132 gives 123 via NXNNXX")


# --- criterion 2: the 15-pair count table ------------------------------------


def naive_iso(u, v):
    return len(u) == len(v) and all(
        (u[i] < u[j]) == (v[i] < v[j]) and (u[i] > u[j]) == (v[i] > v[j])
        for i in range(len(u))
        for j in range(len(u))
    )


def naive_contains(w, p):
    return any(
        naive_iso([w[i] for i in c], p)
        for c in itertools.combinations(range(len(w)), len(p))
    )


def naive_machine_count(first, second, n):
    # an independent two-stage machine: list-based stack, combinations scan
    def naive_sort(w, pats):
        out, stack = [], []  # stack[0] is the top
        for x in w:
            while stack and any(naive_contains([x] + stack, p) for p in pats):
                out.append(stack.pop(0))
            stack.insert(0, x)
        out.extend(stack)
        return tuple(out)

    target = tuple(range(1, n + 1))
    return sum(
        1
        for p in itertools.permutations(range(1, n + 1))
        if naive_sort(naive_sort(p, [first, second]), [(2, 1)]) == target
    )


TRUE_REFERENCE_ROWS = {
    ((1, 2, 3), (1, 3, 2)): (1, 2, 5, 14),
    ((1, 2, 3), (2, 1, 3)): (1, 2, 5, 14),
    ((1, 3, 2), (3, 1, 2)): (1, 2, 5, 14),
    ((2, 3, 1), (3, 2, 1)): (1, 2, 5, 14),
    ((1, 2, 3), (3, 2, 1)): (1, 2, 4, 7),
    ((1, 2, 3), (3, 1, 2)): (1, 2, 5, 15),
    ((1, 3, 2), (3, 2, 1)): (1, 2, 4, 10),
    ((3, 1, 2), (3, 2, 1)): (1, 2, 4, 10),
    ((2, 3, 1), (3, 1, 2)): (1, 2, 6, 23),
}


def test_criterion_02_sort_table_reproduction():
    table = dyn.build_sort_table(4)
    rows = {(r.sigma, r.tau): r for r in table.rows}
    assert len(rows) == 15

    for pair, expected in TRUE_REFERENCE_ROWS.items():
        assert rows[pair].counts == expected, f"row {pair}"
        assert rows[pair].note == "matches reference"

    # the reference prints 1,2,5,15 for (132,213), but every computation
    # route gives 1,2,5,16 (the 16-sequence even appears in the reference
    # under a spurious duplicate label), so this row is typo territory:
    # the tool must report the computed value with a visible discrepancy note
    disputed = rows[((1, 3, 2), (2, 1, 3))]
    assert disputed.counts == (1, 2, 5, 16)
    assert naive_machine_count((1, 3, 2), (2, 1, 3), 4) == 16
    assert "DIFFERS" in disputed.note

    # the typo-conflicted labels: computed values reported, discrepancy noted
    dup = rows[((1, 2, 3), (2, 3, 1))]
    assert dup.counts == (1, 2, 6, 21)
    assert "twice" in dup.note
    conflict = rows[((2, 1, 3), (2, 3, 1))]
    assert conflict.counts == (1, 2, 6, 23)
    assert "conflict" in conflict.note

    # rows absent from the reference still get computed values
    assert rows[((1, 3, 2), (2, 3, 1))].counts == (1, 2, 6, 22)
    assert rows[((2, 1, 3), (3, 1, 2))].counts == (1, 2, 5, 16)
    assert naive_machine_count((2, 1, 3), (3, 1, 2), 4) == 16

    # exactly the four catalan rows carry the marker
    assert sum(r.is_catalan for r in table.rows) == 4
    print("PASS criterion 2: 15-pair table reproduced; typo rows flagged with notes")


def test_criterion_03_catalan_machine_law():
    expected = (1, 2, 5, 14, 42, 132)
    for sigma in ((1, 2, 3), (1, 3, 2), (2, 3, 1)):
        tau = (sigma[1], sigma[0]) + sigma[2:]
        got = tuple(dyn.sort_count(sigma, tau, n) for n in range(1, 7))
        assert got == expected, f"machine ({sigma},{tau})"
        assert got == tuple(catalan(n) for n in range(1, 7))
    print("PASS criterion 3: swap-closed machines sort catalan(n) permutations, n<=6")


def test_criterion_04_bijectivity_dichotomy():
    tsets = [pattern_set(p) for p in S3]
    tsets += [pattern_set(a, b) for a, b in itertools.combinations(S3, 2)]
    tsets.append(pattern_set("21"))
    n_true = 0
    for tset in tsets:
        crit = dyn.bijectivity_criterion(tset)
        injective = all(dyn.verify_bijective(tset, n) is True for n in range(1, 8))
        assert crit == injective, f"dichotomy fails for {sorted(tset)}"
        if crit:
            n_true += 1
            for p in enumerate_permutations(7):
                assert dyn.inverse_sort(sort(p, tset), tset) == p
    assert n_true == 3  # exactly the three swap-closed pairs
    print("PASS criterion 4: criterion == exhaustive injectivity (n<=7); inverses round-trip on S_7")


RECURSION_SETS = ("21", ("123",), ("132",), ("123", "132"), ("213", "231"), ("231", "321"))


def test_criterion_05_recursion_oracle():
    for names in RECURSION_SETS:
        tset = pattern_set(names) if isinstance(names, str) else pattern_set(*names)
        for n in range(0, 8):
            for p, img in zip(enumerate_permutations(n), dyn.sort_images(tset, n)):
                assert sort_recursive(p, tset) == img, (sorted(tset), p)
    print("PASS criterion 5: simulation == clumping recursion on S_n, n<=7, six pattern sets")


def test_criterion_06_preimage_bound_and_agreement():
    for names in (("123", "132"), ("213", "231"), ("213",)):
        tset = pattern_set(*names)
        k = tset.min_len
        bound = catalan(6 - k + 2)
        table = dyn.preimage_map(tset, 6)
        for gamma in enumerate_permutations(6):
            via_moves = dyn.preimages(gamma, tset)
            assert via_moves == table.get(gamma, set()), (sorted(tset), gamma)
            assert len(via_moves) <= bound
    print("PASS criterion 6: both preimage strategies agree on S_6; counts within the catalan bound")


def test_criterion_07_sharpness_dichotomy():
    for k, cap in ((3, 7), (4, 8)):
        for sigma in itertools.permutations(range(1, k + 1)):
            tset = pattern_set(sigma)
            if abs(sigma[0] - sigma[1]) == 1:
                for n in range(k, cap + 1):
                    rep = dyn.fertility_max(tset, n)
                    assert rep.max_count == rep.bound == catalan(n - k + 2), (sigma, n)
                    target = dyn.extremal_target(sigma, n)
                    assert target in rep.witnesses, (sigma, n)
                    assert dyn.preimages(target, tset) == dyn.extremal_family(sigma, n), (sigma, n)
            else:
                for n in range(k + 1, cap + 1):
                    rep = dyn.fertility_max(tset, n)
                    assert rep.max_count < rep.bound == catalan(n - k + 2), (sigma, n)
    print("PASS criterion 7: bound met exactly for consecutive-start patterns (S_3 to n=7, S_4 to n=8)")


def test_criterion_08_identity_preimages_of_213_machines():
    for tau in ((2, 3, 1), (3, 2, 1)):
        tset = pattern_set((2, 1, 3), tau)
        for n in range(3, 8):
            expected = {(n,) + rho for rho in enumerate_avoiders(n - 1, [(2, 3, 1)])}
            assert dyn.preimages(identity(n), tset) == expected, (tau, n)
            assert len(expected) == catalan(n - 1)
    for n in range(3, 8):
        rep = dyn.fertility_max(pattern_set("213", "231"), n)
        assert rep.max_count == catalan(n - 1)
        assert rep.witnesses == frozenset({identity(n), reverse_identity(n)})
    print("PASS criterion 8: identity preimages are n-prefixed 231-avoiders; max fertility only at id and its reverse")


def test_criterion_09_complement_conjugation():
    for names in (("123", "132"), ("213",), ("21",)):
        tset = pattern_set(*names)
        comp = tset.complemented()
        for p in enumerate_permutations(6):
            assert sort(complement(p), comp) == complement(sort(p, tset)), (names, p)
    print("PASS criterion 9: complement conjugation holds pointwise on S_6 for three pattern sets")


def test_criterion_10_periodic_structure():
    tset = pattern_set("123", "132")
    for n in range(3, 9):
        cycle_len = (n + 2) // 2
        f = dyn.sort_map(tset, n)
        half_dec = {p for p in f if dyn.is_half_decreasing(p)}
        assert dyn._periodic_from_map(f) == half_dec, n
        assert len(half_dec) == factorial(cycle_len), n
        cycles = dyn.orbit_partition(tset, n)
        assert len(cycles) == factorial(n // 2), n
        assert all(len(c) == cycle_len for c in cycles), n
        for p in half_dec:
            assert dyn.half_decreasing_step(p) == f[p], (n, p)
    for p in enumerate_permutations(7):
        rep = dyn.orbit(p, tset)
        assert any(dyn.is_half_decreasing(q) for q in rep.tail + rep.cycle), p
    print("PASS criterion 10: periodic = half-decreasing with the stated counts (n=3..8); all of S_7 absorbed")


def test_criterion_11_half_increasing_periodic_points():
    tset = pattern_set("312", "321")
    for n in range(1, 8):
        pts = dyn.periodic_points(tset, n)
        expected = {p for p in enumerate_permutations(n) if dyn.is_half_increasing(p)}
        assert pts == expected, n
    print("PASS criterion 11: periodic points of the {312,321} machine are the half-increasing permutations, n<=7")


def test_criterion_12_conjecture_sweep():
    for names in (("132", "213"), ("231", "213")):
        tset = pattern_set(*names)
        for n in range(1, 8):
            ok, witness = dyn.trivial_periodic_points_only(tset, n)
            assert ok, (
                f"counterexample for {{{','.join(names)}}} at n={n}: "
                f"{witness} is periodic but is neither the identity nor its reverse"
            )
    print("PASS criterion 12: only trivial periodic points found for {132,213} and {231,213}, n<=7")
