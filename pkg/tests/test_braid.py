import itertools
import random

import pytest

from bfcalc.braid import (
    ARTIN_CROSSING_THRESHOLD,
    AWord,
    BraidError,
    CombedForm,
    CombingLimitError,
    SigmaWord,
    _CASE_INSTANCES,
    _conjugator_letters,
    _kernel_word_to_aword,
    a_to_sigma,
    artin_image,
    braids_equal,
    comb,
    delete_strand,
    delete_strand_sigma,
    is_pure,
    is_trivial,
    kr_sign,
    linking_numbers,
    permutation,
    reconstruct,
    shift_embed,
    split_a,
    split_sigma,
)
from bfcalc.freegroup import reduce_letters


def random_aword(rng, strands, max_letters=10, min_letters=0):
    letters = []
    for _ in range(rng.randint(min_letters, max_letters)):
        i = rng.randint(1, strands - 1)
        j = rng.randint(i + 1, strands)
        letters.append((i, j, rng.choice((1, -1))))
    return AWord(strands, tuple(letters))


def random_sigma(rng, strands, max_letters=10):
    letters = tuple(rng.choice((1, -1)) * rng.randint(1, strands - 1)
                    for _ in range(rng.randint(0, max_letters)))
    return SigmaWord(strands, letters)


# --- the two alphabets

def test_a_to_sigma_adjacent():
    assert a_to_sigma(AWord(2, ((1, 2, 1),))).letters == (-1, -1)


def test_a_to_sigma_spread():
    assert a_to_sigma(AWord(4, ((2, 4, 1),))).letters == (-2, -3, -3, 2)


def test_a_letter_cancels_with_inverse():
    word = AWord(4, ((2, 4, 1), (2, 4, -1)))
    assert is_trivial(word)


def test_word_validation():
    with pytest.raises(BraidError):
        AWord(3, ((2, 2, 1),))
    with pytest.raises(BraidError):
        AWord(3, ((1, 4, 1),))
    with pytest.raises(BraidError):
        SigmaWord(3, (3,))


# --- permutations and purity

def test_permutation_examples():
    assert permutation(SigmaWord(3, ())) == (1, 2, 3)
    assert is_pure(SigmaWord(3, ()))
    assert permutation(SigmaWord(2, (1,))) == (2, 1)
    assert not is_pure(SigmaWord(2, (1,)))


def test_a_words_are_pure():
    rng = random.Random(0)
    for _ in range(100):
        word = random_aword(rng, rng.randint(2, 6))
        assert is_pure(a_to_sigma(word))


# --- Artin action

def test_artin_identity():
    assert artin_image(SigmaWord(3, ())) == ((1,), (2,), (3,))


def test_artin_single_crossing():
    assert artin_image(SigmaWord(2, (1,))) == ((1, 2, -1), (1,))
    assert artin_image(SigmaWord(2, (-1,))) == ((2,), (-2, 1, 2))


def test_artin_braid_relations_exhaustive():
    for m in range(2, 7):
        for i in range(1, m - 1):
            lhs = SigmaWord(m, (i, i + 1, i))
            rhs = SigmaWord(m, (i + 1, i, i + 1))
            assert artin_image(lhs) == artin_image(rhs)
        for i, j in itertools.combinations(range(1, m), 2):
            if j - i > 1:
                assert artin_image(SigmaWord(m, (i, j))) == artin_image(SigmaWord(m, (j, i)))


def test_artin_homomorphism():
    rng = random.Random(1)

    def compose(outer, inner):
        out = []
        for image in inner:
            letters = []
            for v in image:
                piece = outer[abs(v) - 1]
                letters.extend(piece if v > 0 else [-x for x in reversed(piece)])
            out.append(tuple(reduce_letters(letters)))
        return tuple(out)

    for _ in range(50):
        m = rng.randint(2, 5)
        u, v = random_sigma(rng, m, 6), random_sigma(rng, m, 6)
        assert artin_image(u * v) == compose(artin_image(u), artin_image(v))


# --- equality oracle

def test_braids_equal_far_commutation():
    assert braids_equal(SigmaWord(4, (1, 3)), SigmaWord(4, (3, 1)))


def test_braids_equal_nontrivial():
    assert not braids_equal(SigmaWord(2, (1,)), SigmaWord(2, ()))


def test_braids_equal_strand_mismatch():
    with pytest.raises(BraidError):
        braids_equal(SigmaWord(2, ()), SigmaWord(3, ()))


def test_braids_equal_free_insertion():
    rng = random.Random(2)
    for _ in range(500):
        m = rng.randint(2, 5)
        word = random_sigma(rng, m, 8)
        q = rng.randint(1, m - 1)
        spot = rng.randint(0, len(word.letters))
        padded = SigmaWord(m, word.letters[:spot] + (q, -q) + word.letters[spot:])
        assert braids_equal(word, padded)


def test_braids_equal_is_congruence():
    rng = random.Random(3)
    for _ in range(300):
        m = rng.randint(2, 5)
        u = random_sigma(rng, m, 6)
        q = rng.randint(1, m - 1)
        u_pad = SigmaWord(m, (q, -q) + u.letters)
        w = random_sigma(rng, m, 6)
        assert braids_equal(u, u_pad)
        assert braids_equal(u * w, u_pad * w)
        assert braids_equal(w * u, w * u_pad)


def test_linking_numbers_invariant():
    rng = random.Random(4)
    for _ in range(100):
        m = rng.randint(2, 5)
        w = random_aword(rng, m)
        assert sum(abs(v) for v in linking_numbers(w).values()) <= len(w.letters)


# --- strand deletion

def test_delete_strand_examples():
    assert delete_strand(AWord(2, ((1, 2, 1),)), 1) == AWord(1, ())
    assert delete_strand(AWord(4, ((2, 4, 1),)), 1) == AWord(3, ((1, 3, 1),))


def test_delete_strand_homomorphism():
    rng = random.Random(5)
    for _ in range(500):
        m = rng.randint(2, 5)
        u, v = random_aword(rng, m, 5), random_aword(rng, m, 5)
        d = rng.randint(1, m)
        assert braids_equal(delete_strand(u * v, d),
                            delete_strand(u, d) * delete_strand(v, d))


def test_delete_strand_matches_diagram_deletion():
    rng = random.Random(6)
    for _ in range(200):
        m = rng.randint(2, 5)
        word = random_aword(rng, m, 8)
        d = rng.randint(1, m)
        assert braids_equal(a_to_sigma(delete_strand(word, d)),
                            delete_strand_sigma(a_to_sigma(word), d))


# --- block embedding

def test_shift_embed_examples():
    word = AWord(2, ((1, 2, 1),))
    assert shift_embed(word, 1, 2) == word
    assert shift_embed(word, 3, 5) == AWord(5, ((3, 4, 1),))
    with pytest.raises(BraidError):
        shift_embed(word, 5, 5)


def test_shift_embed_homomorphism():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(2, 4)
        u, v = random_aword(rng, n, 4), random_aword(rng, n, 4)
        total = n + rng.randint(0, 3)
        offset = rng.randint(1, total - n + 1)
        assert braids_equal(shift_embed(u * v, offset, total),
                            shift_embed(u, offset, total) * shift_embed(v, offset, total))


# --- cabling

def test_split_sigma_empty():
    assert split_sigma(SigmaWord(3, ()), 2, 3) == SigmaWord(5, ())


def test_split_sigma_needs_pure_input():
    with pytest.raises(BraidError):
        split_sigma(SigmaWord(2, (1,)), 1, 2)


def test_split_sigma_example_matches_a_product():
    # Splitting the second strand of the double negative crossing gives the
    # descending product A[1,3] A[1,2] on three strands.
    split = split_sigma(SigmaWord(2, (-1, -1)), 2, 2)
    assert braids_equal(split, a_to_sigma(AWord(3, ((1, 3, 1), (1, 2, 1)))))


def test_split_sigma_homomorphism():
    rng = random.Random(8)
    for _ in range(300):
        m = rng.randint(2, 5)
        u, v = random_aword(rng, m, 4), random_aword(rng, m, 4)
        t = rng.randint(1, m)
        n = rng.choice((2, 3))
        su, sv = a_to_sigma(u), a_to_sigma(v)
        assert braids_equal(split_sigma(su * sv, t, n),
                            split_sigma(su, t, n) * split_sigma(sv, t, n))


def test_split_a_empty_cases():
    assert split_a(AWord(3, ()), 2, 2, AWord.identity(2)) == AWord(4, ())
    inner = AWord(2, ((1, 2, 1),))
    assert split_a(AWord(3, ()), 2, 2, inner) == AWord(4, ((2, 3, 1),))


def test_split_a_matches_diagram_exhaustive_small():
    for n in (2, 3):
        for m in range(2, 5):
            for i in range(1, m):
                for j in range(i + 1, m + 1):
                    for s in (1, -1):
                        for t in range(1, m + 1):
                            word = AWord(m, ((i, j, s),))
                            lhs = a_to_sigma(split_a(word, t, n, AWord.identity(n)))
                            rhs = split_sigma(a_to_sigma(word), t, n)
                            assert braids_equal(lhs, rhs)


def test_split_a_with_inner_matches_diagram():
    rng = random.Random(9)
    for _ in range(100):
        m = rng.randint(2, 4)
        n = rng.choice((2, 3))
        word = random_aword(rng, m, 5)
        inner = random_aword(rng, n, 3)
        t = rng.randint(1, m)
        lhs = a_to_sigma(split_a(word, t, n, inner))
        rhs = split_sigma(a_to_sigma(word), t, n) * a_to_sigma(
            shift_embed(inner, t, m + n - 1))
        assert braids_equal(lhs, rhs)


def test_split_a_is_homomorphism():
    rng = random.Random(10)
    for _ in range(300):
        m = rng.randint(2, 5)
        u, v = random_aword(rng, m, 4), random_aword(rng, m, 4)
        t = rng.randint(1, m)
        n = rng.choice((2, 3))
        empty = AWord.identity(n)
        assert braids_equal(split_a(u * v, t, n, empty),
                            split_a(u, t, n, empty) * split_a(v, t, n, empty))


# --- combing

def test_comb_empty():
    form = comb(AWord(4, ()))
    assert form.is_trivial()
    assert [c.rank for c in form.coordinates] == [3, 2, 1]


def test_comb_kernel_letter():
    form = comb(AWord(2, ((1, 2, 1),)))
    assert [c.letters for c in form.coordinates] == [(1,)]


def test_comb_reconstruction():
    rng = random.Random(11)
    for _ in range(100):
        m = rng.randint(2, 5)
        word = random_aword(rng, m, 12)
        assert braids_equal(word, reconstruct(comb(word)))


def test_comb_respects_letter_limit():
    rng = random.Random(12)
    word = random_aword(rng, 5, 12, min_letters=12)
    with pytest.raises(CombingLimitError):
        comb(word, letter_limit=2)


def test_conjugation_rules_validated_against_artin():
    # Every interleaving pattern of the combing rewrite, checked on all
    # concrete instances with at most 5 strands.
    for r in range(2, 5):
        for s in range(r + 1, 6):
            for j in range(2, 6):
                for e in (1, -1):
                    u = _conjugator_letters(r, s, e, j)
                    candidate = reduce_letters(
                        list(u) + [j - 1] + [-x for x in reversed(u)])
                    k = max(s, j)
                    target = AWord(k, ((r, s, e), (1, j, 1), (r, s, -e)))
                    assert braids_equal(_kernel_word_to_aword(candidate, k), target)


def test_case_instances_cover_all_patterns():
    assert set(_CASE_INSTANCES) == {"j=r", "j=s", "r<j<s"}


# --- the braid sign

def test_kr_sign_examples():
    assert kr_sign(AWord(3, ())) == 0
    assert kr_sign(AWord(2, ((1, 2, 1),))) == 1
    assert kr_sign(AWord(2, ((1, 2, -1),))) == -1


def test_kr_sign_antisymmetric():
    rng = random.Random(13)
    for _ in range(500):
        word = random_aword(rng, rng.randint(2, 5), 10)
        assert kr_sign(word.inverse()) == -kr_sign(word)


def test_kr_sign_zero_iff_trivial():
    rng = random.Random(14)
    for _ in range(300):
        word = random_aword(rng, rng.randint(2, 5), 8)
        assert (kr_sign(word) == 0) == is_trivial(word)


def test_kr_sign_semigroup():
    rng = random.Random(15)
    done = 0
    while done < 500:
        m = rng.randint(2, 5)
        u = random_aword(rng, m, 6)
        v = random_aword(rng, m, 6)
        if kr_sign(u) != 1 or kr_sign(v) != 1:
            continue
        done += 1
        assert kr_sign(u * v) == 1


def test_kr_sign_conjugation_invariant():
    rng = random.Random(16)
    for _ in range(500):
        m = rng.randint(2, 5)
        w = random_aword(rng, m, 8)
        g = random_aword(rng, m, 6)
        assert kr_sign(g * w * g.inverse()) == kr_sign(w)


def test_kr_sign_split_preserves_positivity():
    rng = random.Random(17)
    done = 0
    while done < 300:
        m = rng.randint(2, 5)
        word = random_aword(rng, m, 8)
        if kr_sign(word) != 1:
            continue
        done += 1
        n = rng.choice((2, 3))
        t = rng.randint(1, m)
        assert kr_sign(split_a(word, t, n, AWord.identity(n))) == 1


def test_combed_form_shape_validation():
    from bfcalc.freegroup import FreeWord
    with pytest.raises(BraidError):
        CombedForm(3, (FreeWord(2, ()),))
    with pytest.raises(BraidError):
        CombedForm(3, (FreeWord(1, ()), FreeWord(1, ())))


def test_long_word_equality_uses_normal_form():
    # Build a pure word longer than the Artin threshold and its padded twin.
    rng = random.Random(18)
    base = random_aword(rng, 4, 6, min_letters=4)
    repeated = AWord(4, base.letters * (ARTIN_CROSSING_THRESHOLD // (len(base.letters)) + 1))
    padded = repeated * AWord(4, ((1, 3, 1), (1, 3, -1)))
    assert braids_equal(repeated, padded)
    assert not braids_equal(repeated, padded * AWord(4, ((1, 2, 1),)))
