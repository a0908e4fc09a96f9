import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ltlfsynth import formula as fm
from ltlfsynth.dfa import (AlphabetMismatch, ExplicitDfa, accepts, dump, empty_language, load,
                           minimize_hopcroft, minimize_moore, product, to_dot, trim_reachable,
                           universal_nonempty)
from ltlfsynth.otf import expand_full
from ltlfsynth.parser import parse_formula

from oracles import formula_corpus, language_matches_formula, same_bounded_language

P = {"a": 0, "b": 1, "c": 2}
ABC = ("a", "b", "c")


def parse(text):
    return parse_formula(text, dict(P))


def dfa_of(text):
    return expand_full(parse(text), ABC)


class TestExplicitDfa:
    def test_incomplete_rejected(self):
        with pytest.raises(ValueError):
            ExplicitDfa(("a",), 0, [[0]], [False])

    def test_target_range_checked(self):
        with pytest.raises(ValueError):
            ExplicitDfa(("a",), 0, [[0, 3]], [False])

    def test_run_and_accepts(self):
        g = dfa_of("a U b")
        assert accepts(g, [1, 1, 2])
        assert not accepts(g, [1, 0, 2])

    def test_empty_and_universal(self):
        e, u = empty_language(ABC), universal_nonempty(ABC)
        assert language_matches_formula(e, fm.false(), 3)
        assert language_matches_formula(u, fm.true(), 3)
        assert u.same_structure(dfa_of("true"))


class TestProduct:
    def test_until_and_globally(self):
        f1, f2 = parse("a U b"), parse("G c")
        g = product(expand_full(f1, ABC), expand_full(f2, ABC))
        assert language_matches_formula(g, fm.and_(f1, f2), 5)

    def test_pair_labels(self):
        g = product(dfa_of("F a"), dfa_of("F b"))
        assert g.labels[g.init] == (0, 0)

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatch):
            product(dfa_of("F a"), expand_full(parse("F a"), ("a", "b")))

    def test_only_reachable_pairs(self):
        g = product(dfa_of("a"), dfa_of("!a"))
        assert g.n_states <= 4
        assert not g.accepting.any()


class TestMinimize:
    def test_duplicate_states_merge(self):
        # two accepting sinks that are indistinguishable
        g = ExplicitDfa(("a",), 0, [[1, 2], [1, 1], [2, 2]], [False, True, True])
        m = minimize_hopcroft(g)
        assert m.n_states == 2
        assert m.same_structure(minimize_moore(g))

    def test_unreachable_removed(self):
        g = ExplicitDfa(("a",), 0, [[0, 0], [0, 1]], [False, True])
        assert trim_reachable(g).n_states == 1
        assert minimize_hopcroft(g).n_states == 1

    def test_known_sizes(self):
        assert minimize_hopcroft(dfa_of("G b")).n_states == 3
        assert minimize_hopcroft(dfa_of("false")).n_states == 1
        assert minimize_hopcroft(dfa_of("X X a")).n_states == 5

    def test_canonical_numbering_init_zero(self):
        m = minimize_hopcroft(dfa_of("a U (b && X c)"))
        assert m.init == 0


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32))
def test_minimizers_agree(seed):
    g = expand_full(formula_corpus(1, seed)[0], ABC)
    h, m = minimize_hopcroft(g), minimize_moore(g)
    assert h.same_structure(m)
    assert minimize_hopcroft(h).same_structure(h)
    assert h.n_states <= g.n_states
    assert same_bounded_language(g, h, 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_product_is_intersection(seed):
    f1, f2 = formula_corpus(2, seed, max_size=6)
    g = product(expand_full(f1, ABC), expand_full(f2, ABC))
    assert language_matches_formula(g, fm.and_(f1, f2), 4)


class TestExchange:
    def test_dump_load_roundtrip(self):
        g = minimize_hopcroft(dfa_of("G(a -> X b)"))
        h = load(dump(g), ABC)
        assert h.same_structure(g)
        assert np.array_equal(h.trans, g.trans)

    def test_load_default_names(self):
        h = load(dump(dfa_of("F a")))
        assert h.alphabet == ("p0", "p1", "p2")

    def test_load_wrong_alphabet(self):
        with pytest.raises(AlphabetMismatch):
            load(dump(dfa_of("F a")), ("a",))

    def test_load_garbage(self):
        with pytest.raises(ValueError):
            load("hello 1 2 3")

    def test_dot(self):
        text = to_dot(minimize_hopcroft(dfa_of("F a")), name="fa")
        assert text.startswith("digraph fa {")
        assert "doublecircle" in text
        assert "__start -> 0;" in text
