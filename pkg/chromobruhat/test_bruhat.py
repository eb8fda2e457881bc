import itertools

import pytest

from chromobruhat.bruhat import (
    PatternClassError, bruhat_graph, bruhat_leq, bruhat_less, bubbles, directed_distance,
    directed_distance_unrestricted, distances_to, interval, interval_by_filter,
    interval_size, left_weak_covers, permanent, poincare_polynomial, rank_matrix,
    right_hull, right_weak_covers, two_sided_weak_covers, weak_chain_to_identity,
    weak_leq_left, weak_leq_right,
)
from chromobruhat.patterns import is_chromobruhatic
from chromobruhat.permutation import (
    Permutation, PermutationError, absolute_length, all_permutations, compose, identity,
    inverse, length, longest, rotate,
)

P = Permutation.parse

INTERVAL_4132 = ['1234', '1243', '1324', '1342', '1423', '1432',
                 '2134', '2143', '3124', '3142', '4123', '4132']


def test_rank_matrix_shape():
    w = P('4132')
    rm = rank_matrix(w)
    assert rm.at(4, 1) == 4
    assert rm.at(1, 4) == 1
    assert rm.at(2, 2) == 1
    for i in range(1, 5):
        for j in range(2, 5):
            assert rm.at(i, j) <= rm.at(i, j - 1)


def test_bubbles():
    assert bubbles(P('4132')) == {(2, 2), (2, 3)}
    assert bubbles(identity(4)) == {(i, j) for i in range(1, 5) for j in range(i + 1, 5)}
    assert bubbles(longest(4)) == frozenset()


def test_backends_agree_on_s4():
    perms = list(all_permutations(4))
    for u, w in itertools.product(perms, repeat=2):
        assert bruhat_leq(u, w, 'rank') == bruhat_leq(u, w, 'bubble')


def test_hull_backend_on_avoiding_s5():
    perms = list(all_permutations(5))
    for w in perms:
        if not is_chromobruhatic(w):
            continue
        for u in perms:
            assert bruhat_leq(u, w, 'hull') == bruhat_leq(u, w)


def test_hull_backend_rejects_pattern():
    with pytest.raises(PatternClassError):
        bruhat_leq(identity(4), P('4231'), backend='hull')


def test_unknown_backend_and_size_mismatch():
    with pytest.raises(ValueError):
        bruhat_leq(identity(3), identity(3), backend='matrix')
    with pytest.raises(PermutationError):
        bruhat_leq(identity(3), identity(4))


def test_known_comparisons():
    assert bruhat_leq(P('1324'), P('4231'))
    assert bruhat_less(identity(4), P('4132'))
    assert not bruhat_less(P('4132'), P('4132'))
    assert not bruhat_leq(P('2341'), P('4132'))


def test_right_hull_35124():
    assert right_hull(P('35124')).rows_as_text() == ['11100', '11111', '11111', '01111', '00011']
    hull = right_hull(P('35124'))
    assert (1, 3) in hull and (1, 4) not in hull
    assert hull.rotated().rotated() == hull


def test_interval_4132():
    assert [u.format() for u in interval(P('4132'))] == INTERVAL_4132


def test_interval_matches_filter_on_s4():
    for w in all_permutations(4):
        assert interval(w) == interval_by_filter(w)


@pytest.mark.parametrize('method', ['permanent', 'profile', 'filter', None])
def test_interval_size_4132(method):
    assert interval_size(P('4132'), method) == 12


def test_interval_size_methods_agree_on_s5():
    for w in all_permutations(5):
        profile = interval_size(w, 'profile')
        assert profile == len(interval(w))
        if is_chromobruhatic(w):
            assert interval_size(w, 'permanent') == profile


def test_interval_size_extremes():
    assert interval_size(identity(6)) == 1
    assert interval_size(longest(5)) == 120
    assert interval_size(P('4231'), 'profile') == 20
    with pytest.raises(ValueError):
        interval_size(identity(3), 'guess')


def test_permanent():
    assert permanent(()) == 1
    full = tuple(tuple(True for _ in range(4)) for _ in range(4))
    assert permanent(full) == 24
    diag = tuple(tuple(i == j for j in range(3)) for i in range(3))
    assert permanent(diag) == 1


def test_poincare_polynomial():
    assert poincare_polynomial(P('4132')).coefficients == (1, 3, 4, 3, 1)
    assert poincare_polynomial(identity(3)).coefficients == (1,)


def test_bruhat_graph_4132():
    graph = bruhat_graph(P('4132'))
    assert graph.number_of_nodes() == 12
    for x, y, data in graph.edges(data=True):
        assert length(x) < length(y)
        i, j = data['reflection']
        assert x(i) == y(j) and x(j) == y(i)


def test_distances_4132():
    distances = distances_to(P('4132'))
    assert distances[P('4132')] == 0
    assert distances[identity(4)] == 2
    assert distances[P('1324')] == 3
    counts = [0] * 4
    for d in distances.values():
        counts[d] += 1
    assert counts == [1, 4, 5, 2]


def test_directed_distance_on_pattern():
    # Der Zeuge u = (1 4)(2 3)w liegt vier Schritte unter w, nicht zwei
    u, w = P('1324'), P('4231')
    assert directed_distance(u, w) == 4
    assert absolute_length(compose(u, inverse(w))) == 2


def test_directed_distance_requires_order():
    with pytest.raises(ValueError):
        directed_distance(P('4132'), identity(4))


def test_restricted_bfs_matches_unrestricted_on_s4():
    for w in all_permutations(4):
        for u, d in distances_to(w).items():
            assert directed_distance_unrestricted(u, w) == d


def test_directed_distance_bounds_absolute_length():
    for w in all_permutations(5):
        winv = inverse(w)
        for u, d in distances_to(w).items():
            assert absolute_length(compose(u, winv)) <= d


def test_weak_orders():
    w = P('4132')
    assert weak_leq_right(identity(4), w)
    assert weak_leq_left(identity(4), w)
    for u in right_weak_covers(w):
        assert weak_leq_right(u, w)
        assert length(u) == length(w) - 1
    for u in left_weak_covers(w):
        assert weak_leq_left(u, w)
        assert length(u) == length(w) - 1
    assert set(two_sided_weak_covers(w)) == set(right_weak_covers(w)) | set(left_weak_covers(w))


def test_right_weak_implies_bruhat_on_s5():
    perms = list(all_permutations(5))
    for u, w in itertools.product(perms, repeat=2):
        if weak_leq_right(u, w):
            assert bruhat_leq(u, w)


def test_weak_chain_to_identity():
    chain = weak_chain_to_identity(P('4132'))
    assert chain[0] == P('4132') and chain[-1] == identity(4)
    assert len(chain) == length(P('4132')) + 1
    assert weak_chain_to_identity(P('4231')) is None


def test_weak_chain_exists_for_avoiding_s5():
    for w in all_permutations(5):
        if is_chromobruhatic(w):
            chain = weak_chain_to_identity(w)
            assert chain is not None
            assert all(is_chromobruhatic(c) for c in chain)


def test_hull_of_rotation_is_rotated_hull_on_s5():
    for w in all_permutations(5):
        assert right_hull(rotate(w)) == right_hull(w).rotated()


def test_interval_size_invariant_under_symmetries_on_s6():
    for w in all_permutations(6):
        size = interval_size(w, 'profile')
        assert interval_size(inverse(w), 'profile') == size
        assert interval_size(rotate(w), 'profile') == size


def test_directed_distance_parity_on_s5():
    for w in all_permutations(5):
        for u, d in distances_to(w).items():
            assert (d - (length(w) - length(u))) % 2 == 0
            assert d <= length(w) - length(u)

@pytest.mark.slow
def test_permanent_matches_filter_on_avoiding_s6():
    for w in all_permutations(6):
        if is_chromobruhatic(w):
            assert interval_size(w, 'permanent') == len(interval_by_filter(w))
