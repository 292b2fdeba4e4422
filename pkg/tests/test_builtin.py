import pytest

from oracles import affine_eval, all_words
from stackings import (
    AlmostConvexityError,
    Alphabet,
    FormatError,
    FunctionOracle,
    OutsideExploredRegionError,
    StructureError,
    almost_convexity_check,
    bs1p_structure,
    crs_structure,
    expsum_x0,
    free_group_oracle,
    load_rewriting_system,
    reduce_to_irreducible,
    shortlex_ac_structure,
    thompson_alphabet,
    thompson_f_direct,
    thompson_f_in_C,
)
from stackings.builtin import BS1pElement, _bs_normalize


class TestBS1p:
    def test_normalize_collapses_divisible_middle(self):
        # t^-1 a^4 t = a^2 in BS(1,2)
        assert _bs_normalize(2, 1, 4, 1) == BS1pElement(0, 2, 0)

    def test_normal_forms_match_affine_representation(self, bs2):
        # the affine oracle a -> x+1, t -> 2x separates BS(1,2) elements
        al = bs2.alphabet
        seen = {}
        for w in all_words(al, 6):
            nf = bs2.normal_form(w)
            key = affine_eval(w)
            assert affine_eval(nf) == key
            assert seen.setdefault(key, nf.letters) == nf.letters

    def test_phi_t_edge_positive(self, bs2):
        al = bs2.alphabet
        assert str(bs2.phi(al.word("T a a"), al.index("t"))) == "A A t a"

    def test_phi_t_edge_negative(self, bs2):
        al = bs2.alphabet
        assert str(bs2.phi(al.word("a"), al.index("T"))) == "A T a a"

    def test_phi_a_edge(self, bs2):
        al = bs2.alphabet
        assert str(bs2.phi(al.word("t"), al.index("A"))) == "T A A t"

    def test_phi_rejects_degenerate_queries(self, bs2):
        al = bs2.alphabet
        with pytest.raises(StructureError):
            bs2.phi(al.word("a"), al.index("a"))  # a^m by a: degenerate
        with pytest.raises(StructureError):
            bs2.phi(al.word("T T"), al.index("T"))  # m = 0: degenerate

    def test_p3(self):
        bs3 = bs1p_structure(3)
        al = bs3.alphabet
        assert str(bs3.normal_form(al.word("t a T"))) == "a a a"
        assert str(bs3.phi(al.word("t"), al.index("a"))) == "T a a a t"
        assert bs3.bound_k == 5

    def test_bound_is_p_plus_two(self, bs2):
        assert bs2.bound_k == 4

    def test_p_below_two_rejected(self):
        with pytest.raises(FormatError):
            bs1p_structure(1)


class TestCrsStructure:
    def test_requires_claimed_complete(self, z2S):
        from stackings import RewritingSystem

        S = RewritingSystem(z2S.alphabet, z2S.rules, claimed_complete=False)
        with pytest.raises(StructureError):
            crs_structure(S)

    def test_phi_is_conjugated_rule(self, z2struct):
        # y_g = b, a: rule "b a -> a b" factors as u~ a with u~ = b
        al = z2struct.alphabet
        assert str(z2struct.phi(al.word("b"), al.index("a"))) == "B a b"


class TestShortlexAC:
    def test_normal_forms_are_shortlex_least(self, z2oracle):
        st = shortlex_ac_structure(z2oracle, ball_radius=3, k_ac=2)
        al = st.alphabet
        assert str(st.normal_form(al.word("b a"))) == "a b"
        assert str(st.normal_form(al.word("B b"))) == ""

    def test_case2_appends_last_letter(self, z2oracle):
        # b -> ab gains length: phi = (path b to a in B(1)) + b
        st = shortlex_ac_structure(z2oracle, ball_radius=4, k_ac=2)
        al = st.alphabet
        assert str(st.phi(al.word("b"), al.index("a"))) == "B a b"

    def test_case3_prepends_inverse_letter(self, z2oracle):
        # ab -> b loses length: phi = b^-1 + (path a to b in B(1))
        st = shortlex_ac_structure(z2oracle, ball_radius=4, k_ac=2)
        al = st.alphabet
        assert str(st.phi(al.word("a b"), al.index("A"))) == "B A b"

    def test_degenerate_queries_rejected(self, z2oracle):
        st = shortlex_ac_structure(z2oracle, ball_radius=4, k_ac=2)
        al = st.alphabet
        with pytest.raises(StructureError):
            st.phi(al.word("a"), al.index("b"))

    def test_case1_avoids_edge_on_sphere(self):
        # cyclic of order 3: the edge a -> a^2 joins two sphere-S(1)
        # elements; the connecting path must dip into B(0), so phi is the
        # detour "A A", never the edge label itself
        C3 = load_rewriting_system(
            """
            [generators]
            a A
            [inverses]
            a A
            [rules]
            a a -> A
            A A -> a
            a A ->
            A a ->
            """
        )
        oracle = FunctionOracle(C3.alphabet, lambda w: reduce_to_irreducible(C3, w))
        st = shortlex_ac_structure(oracle, ball_radius=2, k_ac=2)
        al = st.alphabet
        assert str(st.phi(al.word("a"), al.index("a"))) == "A A"

    def test_refutation_raises(self, c5_oracle):
        # cyclic of order 5: a^2 and a^3 lie on S(2) but every connecting
        # path inside B(2) has length 4
        st = shortlex_ac_structure(c5_oracle, ball_radius=3, k_ac=2)
        al = st.alphabet
        with pytest.raises(AlmostConvexityError):
            st.phi(al.word("a a"), al.index("a"))

    def test_detour_found_with_larger_constant(self, c5_oracle):
        st = shortlex_ac_structure(c5_oracle, ball_radius=3, k_ac=4)
        al = st.alphabet
        assert str(st.phi(al.word("a a"), al.index("a"))) == "A A A A"

    def test_outside_explored_region(self, z2oracle):
        st = shortlex_ac_structure(z2oracle, ball_radius=3, k_ac=2)
        with pytest.raises(OutsideExploredRegionError):
            st.normal_form(st.alphabet.word("a a a a"))


class TestAlmostConvexityCheck:
    def test_z2_passes_with_k2(self, z2oracle):
        report = almost_convexity_check(z2oracle, n_max=3, k_ac=2)
        assert report.passed and report.pairs_checked > 0

    def test_z2_fails_with_k1(self, z2oracle):
        report = almost_convexity_check(z2oracle, n_max=3, k_ac=1)
        assert not report.passed
        assert report.failures[0] == {"n": 1, "g": "a", "h": "A"}

    def test_free_group_passes(self):
        al = Alphabet.from_pairs(("a", "A", "b", "B"), [("a", "A"), ("b", "B")])
        report = almost_convexity_check(free_group_oracle(al), n_max=3, k_ac=2)
        assert report.passed

    def test_vacuous_at_zero(self, z2oracle):
        report = almost_convexity_check(z2oracle, n_max=0, k_ac=1)
        assert report.passed and report.pairs_checked == 0

    def test_report_serializes(self, z2oracle):
        import json

        report = almost_convexity_check(z2oracle, n_max=2, k_ac=2)
        data = json.loads(report.to_json())
        assert data["passed"] is True and data["n_max"] == 2
        assert "PASS" in report.summary()


class TestThompsonF:
    def test_spot_values(self):
        al = thompson_alphabet()
        assert thompson_f_in_C(al.empty())
        assert thompson_f_in_C(al.word("X0 x1 x0"))
        assert not thompson_f_in_C(al.word("x1 x0"))  # positive x0 prefix sum
        assert not thompson_f_in_C(al.word("x1 X1"))  # forbidden subword
        assert not thompson_f_in_C(al.word("x0 x0 x1"))

    def test_recognizers_agree_on_short_words(self):
        al = thompson_alphabet()
        for w in all_words(al, 6):
            assert thompson_f_in_C(w) == thompson_f_direct(w)

    def test_expsum(self):
        al = thompson_alphabet()
        assert expsum_x0(al.word("X0 X0 x1")) == -2
        assert expsum_x0(al.empty()) == 0

    def test_wrong_alphabet_rejected(self):
        al = Alphabet.from_pairs(("a", "A"), [("a", "A")])
        with pytest.raises(FormatError):
            thompson_f_in_C(al.word("a"))
