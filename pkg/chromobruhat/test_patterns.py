import itertools

import pytest

from chromobruhat.bruhat import distances_to, interval_size
from chromobruhat.chromatics import permutation_ao
from chromobruhat.patterns import (
    CHROMOBRUHATIC, SMOOTH, ReductionPair, ReductionPairError, Rook, apply_symmetry,
    class_counts, contains, find_reduction_pair, first_descent, first_occurrence,
    is_chromobruhatic, is_heavy, is_light, is_smooth, occurrences, reduction_step,
    witness_below, witness_step_down,
)
from chromobruhat.permutation import (
    Permutation, Transposition, absolute_length, all_permutations, compose, identity,
    inverse, rotate,
)

P = Permutation.parse


def _br(w):
    return 1 if w is None else interval_size(w)


def _ao(w):
    return 1 if w is None else permutation_ao(w)


def contains_bruteforce(w, p):
    for positions in itertools.combinations(range(1, w.n + 1), p.n):
        values = [w(i) for i in positions]
        ranks = [sorted(values).index(v) + 1 for v in values]
        if tuple(ranks) == p.word:
            return True
    return False


def test_occurrences():
    assert list(occurrences(P('4231'), P('4231'))) == [(1, 2, 3, 4)]
    assert list(occurrences(P('3412'), P('21'))) == [(1, 3), (1, 4), (2, 3), (2, 4)]
    assert first_occurrence(P('52413'), P('4231')) == (1, 2, 3, 4)
    assert first_occurrence(P('35124'), P('4231')) is None
    assert list(occurrences(P('12'), P('123'))) == []


def test_contains_matches_bruteforce_on_s5():
    for w in all_permutations(5):
        for p in CHROMOBRUHATIC.patterns + SMOOTH.patterns:
            assert contains(w, p) == contains_bruteforce(w, p)


@pytest.mark.parametrize('n,expected', [
    (4, {'total': 24, 'chromobruhatic': 23, 'smooth': 22}),
    (5, {'total': 120, 'chromobruhatic': 101, 'smooth': 88}),
])
def test_class_counts(n, expected):
    assert class_counts(n) == expected


def test_classes_closed_under_symmetries():
    assert CHROMOBRUHATIC.closed_under_symmetries()
    assert SMOOTH.closed_under_symmetries()


def test_smooth_implies_chromobruhatic_on_s5():
    for w in all_permutations(5):
        if is_smooth(w):
            assert is_chromobruhatic(w)


def test_first_descent():
    assert first_descent(identity(4)) is None
    assert first_descent(P('4132')) == (Rook(2, 1), Rook(1, 4))


def test_light_and_heavy_require_descent():
    with pytest.raises(ReductionPairError):
        is_light(P('4132'), Rook(3, 3), Rook(1, 4))
    with pytest.raises(ReductionPairError):
        is_heavy(P('1234'), Rook(2, 2), Rook(1, 1))


def test_apply_symmetry():
    w = P('4132')
    assert apply_symmetry(w, 'inverse') == inverse(w)
    assert apply_symmetry(w, 'rotate-inverse') == inverse(rotate(w))
    with pytest.raises(ValueError):
        apply_symmetry(w, 'mirror')


def test_reduction_pair_4132_is_heavy_first_descent():
    pair = find_reduction_pair(P('4132'))
    assert pair == ReductionPair('heavy', 'identity', P('4132'), Rook(2, 1), Rook(1, 4))
    step = reduction_step(P('4132'), pair)
    assert step.rho == P('1432')
    assert step.minus_x == P('321')
    assert step.minus_y == P('132')
    assert step.minus_xy == P('21')
    assert (_br(step.rho), _br(step.minus_x), _br(step.minus_y), _br(step.minus_xy)) == (6, 6, 2, 2)
    assert _br(step.target) == 6 + 6 + 2 - 2 == 12


def test_heavy_pair_with_empty_region_above_y():
    # zwischen den Spalten von x und y liegen nur Türme unterhalb von x
    w = P('4132')
    x, y = first_descent(w)
    assert not is_light(w, x, y)
    assert is_heavy(w, x, y)


def test_light_pair_on_first_descent():
    w = P('2134')
    pair = find_reduction_pair(w)
    assert (pair.kind, pair.symmetry, pair.x, pair.y) == ('light', 'identity', Rook(2, 1), Rook(1, 2))
    step = reduction_step(w, pair)
    assert step.rho == identity(4)
    assert _br(w) == _br(step.rho) + _br(step.minus_y) == 2


def _pair_among_first_descents(n):
    for w in all_permutations(n):
        if w.is_identity or not is_chromobruhatic(w):
            continue
        pair = find_reduction_pair(w)
        assert pair is not None, w
        assert pair.symmetry in ('identity', 'inverse'), (w, pair.describe())


def test_pair_among_first_descents_of_w_or_inverse_on_s5():
    _pair_among_first_descents(5)


@pytest.mark.slow
def test_pair_among_first_descents_of_w_or_inverse_on_s6():
    _pair_among_first_descents(6)


def test_reduction_pair_3412_is_heavy():
    pair = find_reduction_pair(P('3412'))
    assert (pair.kind, pair.symmetry, pair.x, pair.y) == ('heavy', 'identity', Rook(3, 1), Rook(2, 4))
    step = reduction_step(P('3412'), pair)
    assert step.rho == P('3142')
    assert (_br(step.target), _br(step.rho), _br(step.minus_x), _br(step.minus_y), _br(step.minus_xy)) \
        == (14, 8, 4, 4, 2)


def test_reduction_step_validates_source():
    pair = find_reduction_pair(P('4132'))
    with pytest.raises(ReductionPairError):
        reduction_step(P('3412'), pair)


def test_no_pair_for_identity():
    assert find_reduction_pair(identity(5)) is None


def test_recurrences_on_avoiding_s5():
    for w in all_permutations(5):
        if w.is_identity or not is_chromobruhatic(w):
            continue
        pair = find_reduction_pair(w)
        assert pair is not None, w
        step = reduction_step(w, pair)
        assert is_chromobruhatic(step.rho)
        for size in (_br, _ao):
            if pair.kind == 'light':
                assert size(step.target) == size(step.rho) + size(step.minus_y)
            else:
                assert size(step.target) == (size(step.rho) + size(step.minus_x)
                                             + size(step.minus_y) - size(step.minus_xy))


@pytest.mark.parametrize('text,expected_u', [
    ('4231', '1324'),
    ('35142', '12435'),
])
def test_witness_below(text, expected_u):
    w = P(text)
    witness = witness_below(w)
    assert witness.pattern == w
    assert witness.u == P(expected_u)


def test_witness_for_4231_has_absolute_gap_two():
    witness = witness_below(P('4231'))
    assert witness.cycle == compose(witness.u, inverse(P('4231')))
    assert witness.absolute_gap == 2


def test_witness_none_for_avoiding():
    assert witness_below(P('4132')) is None
    assert witness_step_down(P('35124')) is None


def test_witness_gap_on_s5():
    for w in all_permutations(5):
        witness = witness_below(w)
        if is_chromobruhatic(w):
            assert witness is None
            continue
        distances = distances_to(w)
        assert distances[witness.u] > absolute_length(compose(witness.u, inverse(w)))


def test_witness_step_down_4231():
    assert witness_step_down(P('4231')) == (Transposition(2, 3), identity(4))


def test_chromobruhatic_invariant_under_symmetries_on_s6():
    for w in all_permutations(6):
        avoiding = is_chromobruhatic(w)
        assert is_chromobruhatic(inverse(w)) == avoiding
        assert is_chromobruhatic(rotate(w)) == avoiding
        assert is_smooth(inverse(w)) == is_smooth(w)
