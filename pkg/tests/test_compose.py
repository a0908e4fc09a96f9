import random

import pytest
from hypothesis import given, settings, strategies as st

from ltlfsynth.compose import (FULL_COMPOSITION, MODES, compose_incremental, compose_individual,
                               order_conjuncts, synthesize, tt_region, unrealizable_after_composing,
                               unrealizable_conjunct)
from ltlfsynth.dfa import AlphabetMismatch
from ltlfsynth.formula import and_, closure, decompose
from ltlfsynth.game import check_realizable_otf, get_awr_otf, solve_explicit
from ltlfsynth.random_specs import random_spec
from ltlfsynth.spec import SynthesisSpec
from ltlfsynth.strategy import verify_strategy


def spec(text, inputs=("x",), outputs=("y",)):
    return SynthesisSpec.parse(text, inputs, outputs)


def decomposable(seed, lo=2, hi=4):
    rng = random.Random(seed)
    while True:
        s = random_spec(rng, rng.randint(lo, hi), 6, rng.randint(0, 2), rng.randint(1, 2))
        if lo <= len(decompose(s.phi)) <= hi:
            return s


class TestProvenance:
    def test_strings(self):
        assert str(unrealizable_conjunct(2)) == "conjunct:2"
        assert str(unrealizable_after_composing(3)) == "composed:3"
        assert str(FULL_COMPOSITION) == "full"

    @pytest.mark.parametrize("mode", MODES)
    def test_realizable(self, mode):
        v = synthesize(spec("y"), mode)
        assert v.realizable and str(v.provenance) == "full" and v.verified

    @pytest.mark.parametrize("mode", ["individual", "incremental"])
    def test_conflict_found_while_composing(self, mode):
        v = synthesize(spec("F y && G !y"), mode)
        assert not v.realizable and str(v.provenance) == "composed:2"

    @pytest.mark.parametrize("mode", ["individual", "incremental"])
    def test_unrealizable_conjunct(self, mode):
        v = synthesize(spec("F x && G y"), mode)
        assert str(v.provenance) == "conjunct:1"

    def test_skip_precheck_reports_first_step(self):
        v = synthesize(spec("G y && F x"), precheck=False)
        # the order of decompose puts F x first
        assert str(v.provenance) == "conjunct:1"

    def test_monolithic(self):
        assert str(synthesize(spec("F y && G !y"), "monolithic").provenance) == "conjunct:1"

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            synthesize(spec("y"), "parallel")


class TestCompose:
    def test_seed_region(self):
        w = tt_region(("x", "y"), 1)
        assert w.same_structure(solve_explicit(spec("true")))

    @pytest.mark.parametrize("composer", [compose_individual, compose_incremental])
    def test_pair_matches_monolithic(self, composer):
        s1, s2 = spec("F y"), spec("G(x -> y)")
        w = composer(get_awr_otf(s1), s2)
        assert w.same_structure(solve_explicit(s1.with_formula(and_(s1.phi, s2.phi))))

    @pytest.mark.parametrize("composer", [compose_individual, compose_incremental])
    def test_alphabet_checked(self, composer):
        with pytest.raises(AlphabetMismatch):
            composer(get_awr_otf(spec("y")), spec("y", inputs=("z",)))

    def test_pruning_skips_losing_outputs(self):
        s = SynthesisSpec.parse("G y1", ("x",), ("y1", "y2"))
        stats = {}
        compose_incremental(get_awr_otf(s), s.with_formula(s.parse("F y2", s.inputs, s.outputs).phi),
                            stats=stats)
        assert 0 not in stats["init_outputs"] and 2 not in stats["init_outputs"]
        assert stats["ew_pairs"] == 0

    def test_ablation_explores_more(self):
        s = SynthesisSpec.parse("G y1", ("x",), ("y1", "y2", "y3"))
        f = SynthesisSpec.parse("F(y2 && X y3)", s.inputs, s.outputs).phi
        w1 = get_awr_otf(s)
        on, off = {}, {}
        a = compose_incremental(w1, s.with_formula(f), stats=on)
        b = compose_incremental(w1, s.with_formula(f), prune=False, stats=off)
        assert a.same_structure(b)
        assert on["expansions"] < off["expansions"]
        assert off["ew_pairs"] > 0

    def test_order(self):
        s = spec("G(x -> (y && N y)) && F y && y")
        cs = decompose(s.phi)
        assert order_conjuncts(cs) == [0, 1, 2]
        sizes = [len(closure(c)) for c in cs]
        idx = order_conjuncts(cs, "size-asc")
        assert [sizes[i] for i in idx] == sorted(sizes)
        with pytest.raises(ValueError):
            order_conjuncts(cs, "random")

    def test_stats_line(self):
        v = synthesize(spec("F y && G(x -> y)"), "incremental")
        line = v.stats_line()
        assert line.startswith("realizable=1 provenance=full mode=incremental")
        assert "rank=" in line


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_pair_contract(seed):
    rng = random.Random(seed)
    s = random_spec(rng, 2, 6, rng.randint(0, 2), rng.randint(1, 2))
    parts = decompose(s.phi)
    if len(parts) < 2:
        return
    psi1, psi2 = parts[0], and_(*parts[1:])
    w1 = get_awr_otf(s.with_formula(psi1))
    if w1 is None:
        return
    expected = solve_explicit(s.with_formula(and_(psi1, psi2)))
    for composer in (compose_individual, compose_incremental):
        got = composer(w1, s.with_formula(psi2))
        if expected is None:
            assert got is None
        else:
            assert got is not None and got.same_structure(expected)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_modes_agree(seed):
    s = decomposable(seed)
    verdicts = {m: synthesize(s, m) for m in MODES}
    assert len({v.realizable for v in verdicts.values()}) == 1
    parts = decompose(s.phi)
    for v in verdicts.values():
        assert v.verified in (None, True)
        if v.provenance.kind == "conjunct" and v is not verdicts["monolithic"]:
            assert not check_realizable_otf(s.with_formula(parts[v.provenance.index - 1]))
    assert synthesize(s, order="size-asc").realizable == verdicts["monolithic"].realizable


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_unrealizable_conjunct_implies_unrealizable(seed):
    s = decomposable(seed)
    if any(not check_realizable_otf(s.with_formula(c)) for c in decompose(s.phi)):
        assert not synthesize(s, "monolithic").realizable


class TestComposeExamples:
    two = dict(inputs=("x",), outputs=("y1", "y2"))

    @pytest.mark.parametrize("composer", [compose_individual, compose_incremental])
    def test_two_eventualities(self, composer):
        s1, s2 = spec("F y1", **self.two), spec("F y2", **self.two)
        w = composer(get_awr_otf(s1), s2)
        assert w.same_structure(get_awr_otf(s1.with_formula(and_(s1.phi, s2.phi))))

    @pytest.mark.parametrize("composer", [compose_individual, compose_incremental])
    def test_contradiction_is_null(self, composer):
        assert composer(get_awr_otf(spec("F y")), spec("G !y")) is None

    @pytest.mark.parametrize("composer", [compose_individual, compose_incremental])
    @pytest.mark.parametrize("text", ["F y", "G(x -> y)", "y U (x || y)", "true"])
    def test_true_is_identity(self, composer, text):
        s = spec(text)
        assert composer(tt_region(s.alphabet, 1), s).same_structure(get_awr_otf(s))

    def test_both_goals_within_two_rounds(self):
        s = spec("F y1 && F y2", **self.two)
        v = synthesize(s)
        assert v.realizable and v.strategy.rank[v.strategy.init] <= 2
        assert verify_strategy(v.strategy, s.phi, 3)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([compose_individual, compose_incremental]))
def test_fold_invariant(seed, composer):
    s = decomposable(seed)
    parts = decompose(s.phi)
    w = tt_region(s.alphabet, s.n_inputs)
    for i in range(1, len(parts) + 1):
        w = composer(w, s.with_formula(parts[i - 1]))
        expected = solve_explicit(s.with_formula(and_(*parts[:i])))
        if expected is None:
            assert w is None
            return
        assert w is not None and w.same_structure(expected)
