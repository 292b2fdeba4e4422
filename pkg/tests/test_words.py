import pytest
from hypothesis import given
from hypothesis import strategies as hs

from oracles import free_reduce_all_orders
from stackings import (
    Alphabet,
    FormatError,
    Presentation,
    Word,
    cyclic_rotations,
    formal_inverse,
    free_reduce,
    load_presentation,
    parse_sections,
    symmetrize,
)

AB = Alphabet.from_pairs(("a", "A", "b", "B"), [("a", "A"), ("b", "B")])


def w(text: str) -> Word:
    return AB.word(text)


class TestAlphabet:
    def test_involution_enforced(self):
        with pytest.raises(FormatError):
            Alphabet(("a", "A"), (0, 0))  # fixed point
        with pytest.raises(FormatError):
            Alphabet(("a", "A"), (1, 1))  # not an involution
        with pytest.raises(FormatError):
            Alphabet.from_pairs(("a",), [("a", "a")])

    def test_bad_tokens(self):
        with pytest.raises(FormatError):
            Alphabet.from_pairs(("a", "b c"), [("a", "b c")])
        with pytest.raises(FormatError):
            Alphabet.from_pairs(("a", "#x"), [("a", "#x")])
        with pytest.raises(FormatError):
            Alphabet.from_pairs(("a", "a"), [("a", "a")])

    def test_missing_inverse(self):
        with pytest.raises(FormatError):
            Alphabet.from_pairs(("a", "A", "c"), [("a", "A")])

    def test_multichar_tokens_parse(self):
        al = Alphabet.from_pairs(("x0", "X0"), [("x0", "X0")])
        assert al.word("x0 X0 x0").letters == (0, 1, 0)

    def test_unknown_token(self):
        with pytest.raises(FormatError):
            AB.word("a z")


class TestWord:
    def test_concat_and_inverse(self):
        u = w("a b")
        assert str(u * w("B")) == "a b B"
        assert str(u.inverse()) == "B A"
        assert u.inverse().inverse() == u

    def test_free_reduce_examples(self):
        assert str(free_reduce(w("a A b"))) == "b"
        assert str(free_reduce(w("a b B A"))) == ""
        assert free_reduce(w("")).letters == ()
        assert free_reduce(w("a b a")).letters == w("a b a").letters

    def test_free_reduce_idempotent(self):
        u = free_reduce(w("a b B A a b"))
        assert free_reduce(u) == u
        assert u.is_freely_reduced()

    def test_shortlex_key_orders_by_length_then_letters(self):
        assert w("b").shortlex_key() < w("a a").shortlex_key()
        assert w("a b").shortlex_key() < w("b a").shortlex_key()


@given(
    hs.lists(hs.integers(min_value=0, max_value=3), max_size=9).map(
        lambda ls: Word(AB, tuple(ls))
    )
)
def test_free_reduction_confluent_against_all_orders(u):
    """Every order of cancelling adjacent inverse pairs reaches the same
    reduced word, and it is the one the library computes."""
    results = free_reduce_all_orders(u)
    assert results == {free_reduce(u).letters}


@given(
    hs.lists(hs.integers(min_value=0, max_value=3), max_size=9).map(
        lambda ls: Word(AB, tuple(ls))
    )
)
def test_inverse_reduces_to_inverse(u):
    assert free_reduce(u * formal_inverse(u)).letters == ()
    assert free_reduce(formal_inverse(u) * u).letters == ()


class TestSymmetrize:
    def test_commutator_closure_has_eight_members(self):
        p = Presentation(AB, frozenset({w("a b A B")}))
        closed = symmetrize(p)
        assert len(closed.relators) == 8
        assert closed.is_symmetrized()
        assert w("b A B a") in closed.relators
        assert w("b a B A") in closed.relators

    def test_unreduced_and_empty_seeds(self):
        p = Presentation(AB, frozenset({w("a A"), w("a a A b A B a A")}))
        closed = symmetrize(p)
        assert all(len(r) > 0 and r.is_freely_reduced() for r in closed.relators)
        # a a A b A B a A freely reduces to the commutator a b A B
        assert w("a b A B") in closed.relators

    def test_cyclic_rotations(self):
        assert [str(c) for c in cyclic_rotations(w("a b B"))] == [
            "a b B",
            "b B a",
            "B a b",
        ]
        assert cyclic_rotations(AB.empty()) == [AB.empty()]


class TestFileFormat:
    def test_sections_and_comments(self):
        sections = parse_sections(
            "# header\n[generators]\na A # trailing\n\n[relators]\na A\n"
        )
        assert sections == {"generators": ["a A"], "relators": ["a A"]}

    def test_content_before_section_rejected(self):
        with pytest.raises(FormatError):
            parse_sections("a A\n[generators]\n")

    def test_load_presentation(self):
        p = load_presentation(
            """
            [generators]
            a A b B
            [inverses]
            a A
            b B
            [relators]
            a b A B
            """
        )
        assert len(p.alphabet) == 4
        assert p.alphabet.word("a b A B") in p.relators

    def test_self_inverse_generator_rejected(self):
        with pytest.raises(FormatError):
            load_presentation("[generators]\ns\n[inverses]\ns s\n")
