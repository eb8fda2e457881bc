import json
from pathlib import Path

import pytest

from chromobruhat.arrangement import DecreasingChain, LatticeError, SetPartition, build_lattice
from chromobruhat.bruhat import bruhat_less
from chromobruhat.patterns import is_chromobruhatic
from chromobruhat.permutation import (
    Permutation, all_permutations, all_reduced_expressions, identity, length,
)
from chromobruhat.phi_map import (
    absolute_equals_directed, going_down_edges, going_down_walk, missed_parity, phi,
    phi_images, phi_table, verify_betti_inequalities, verify_characterization,
    verify_going_down, verify_injective, verify_surjective,
)

P = Permutation.parse

GOLDEN = json.loads((Path(__file__).parent.parent / 'data' / 'golden_4132.json').read_text(encoding='utf-8'))


def test_phi_table_4132():
    rows = phi_table(P('4132'))
    assert [{k: r[k] for k in ('labels', 'product', 'image', 'image_word')} for r in rows] == GOLDEN['chains']
    assert [r['length'] for r in rows] == [4, 3, 2, 1, 0, 1, 2, 3, 2, 1, 2, 3]


def test_identity_has_single_chain():
    images = phi_images(identity(3))
    assert len(images) == 1
    assert images[0].image == identity(3)


def test_phi_rejects_chain_with_wrong_labels():
    lattice = build_lattice(P('4132'))
    bottom = lattice.bottom
    upper = SetPartition.parse('12|3|4')
    with pytest.raises(LatticeError):
        phi(DecreasingChain((bottom, upper), (2,)), P('4132'), lattice)
    top = SetPartition.parse('123|4')
    with pytest.raises(LatticeError):
        phi(DecreasingChain((bottom, upper, top), (2, 1)), P('4132'), lattice)


def test_injective_on_s5():
    for w in all_permutations(5):
        assert verify_injective(w)


def test_injective_for_every_expression():
    for text in ('4132', '4231', '3412'):
        w = P(text)
        for expr in all_reduced_expressions(w):
            assert verify_injective(w, expr)


def test_surjective_4132():
    assert verify_surjective(P('4132')) == (True, [])


def test_missed_elements_of_4231():
    surjective, missed = verify_surjective(P('4231'))
    assert not surjective
    assert len(missed) == 2
    assert missed == sorted(missed)
    assert missed_parity(P('4231')) == (1, 1)


def test_surjective_iff_avoiding_on_s5():
    for w in all_permutations(5):
        surjective, _ = verify_surjective(w, eager=False)
        assert surjective == is_chromobruhatic(w)
        even, odd = missed_parity(w)
        assert even == odd


def test_going_down_walk_4132():
    w = P('4132')
    lattice = build_lattice(w)
    image = next(img for img in phi_images(w, lattice=lattice) if img.chain.labels == (1, 3, 4))
    walk = going_down_walk(image, lattice)
    assert [u.format() for u in walk] == ['4132', '4123', '3124', '1324']
    assert all(bruhat_less(b, a) for a, b in zip(walk, walk[1:]))
    assert len(going_down_edges(w)) == GOLDEN['fat_edges']


def test_going_down_on_s4():
    for w in all_permutations(4):
        assert verify_going_down(w)


def test_characterization_on_s5():
    assert absolute_equals_directed(P('4132'))
    assert not absolute_equals_directed(P('4231'))
    for w in all_permutations(5):
        assert verify_characterization(w)


def test_betti_4132():
    cmp = verify_betti_inequalities(P('4132'))
    assert cmp.schubert == (1, 3, 4, 3, 1)
    assert cmp.arrangement == tuple(GOLDEN['betti'])
    assert cmp.holds and cmp.equality_at_max


def test_betti_on_avoiding_s5():
    for w in all_permutations(5):
        if is_chromobruhatic(w):
            cmp = verify_betti_inequalities(w)
            assert cmp.holds and cmp.equality_at_max


@pytest.mark.slow
def test_injective_and_surjective_on_s6():
    for w in all_permutations(6):
        assert verify_injective(w, eager=False)
        surjective, _ = verify_surjective(w, eager=False)
        assert surjective == is_chromobruhatic(w)


def test_image_length_drop_has_chain_parity_on_s5():
    for w in all_permutations(5):
        for img in phi_images(w):
            m = img.chain.length
            drop = length(w) - length(img.image)
            assert drop >= m
            assert (drop - m) % 2 == 0
