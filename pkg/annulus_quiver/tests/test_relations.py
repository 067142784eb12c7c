import unittest
from collections import Counter

from hypothesis import given, settings
from hypothesis import strategies as st

from annulus_quiver.arquiver import build_gamma_bar_m
from annulus_quiver.exceptions import MoveError
from annulus_quiver.geometry import inner, outer, sigma_distance
from annulus_quiver.moves import WordBuilder, evaluate_word, push_down, tube_step
from annulus_quiver.quiver import TranslationQuiver
from annulus_quiver.relations import (
    generate_diamond_rules,
    generate_mesh_relations,
    generate_triangle_rules,
    is_ptolemy_square,
    reduce_word,
    relation_f_closed_forms,
    relation_f_words,
    verify_c1_c2,
    verify_diamonds,
    verify_e,
    verify_f,
    verify_f_sweep,
    verify_factoring,
)
from annulus_quiver.schema import ZERO, AnnulusArc, Config, LiftArc, MoveWord, RuleKind, TubeStep, Zero

CFG = Config(g=3, h=2, m=1)
ACCEPTANCE_CONFIGS = (
    Config(g=2, h=1, m=1),
    Config(g=3, h=2, m=1),
    Config(g=3, h=2, m=2),
    Config(g=4, h=3, m=1),
    Config(g=5, h=1, m=1),
)


class TestRuleGeneration(unittest.TestCase):
    gamma: TranslationQuiver[AnnulusArc]

    @classmethod
    def setUpClass(cls) -> None:
        cls.gamma = build_gamma_bar_m(CFG)

    def test_mesh_relations(self) -> None:
        rules = generate_mesh_relations(self.gamma)
        zero_kills = Counter(rule.family for rule in rules if rule.kind is RuleKind.ZERO_KILL)
        self.assertEqual(zero_kills, Counter({'Tg': 3, 'Th': 2}), 'one zero path per mouth mesh')
        swaps = [rule for rule in rules if rule.kind is RuleKind.MESH_SWAP]
        self.assertTrue(swaps)
        reversed_pairs = {(rule.replacement, rule.pattern) for rule in swaps}
        for rule in swaps:
            self.assertIn((rule.pattern, rule.replacement), reversed_pairs, f'{rule} is stored both ways')

    def test_diamond_families(self) -> None:
        families = {rule.family for rule in generate_diamond_rules(self.gamma)}
        self.assertEqual(families, {'A', 'B', 'C', 'D'})

    def test_triangle_shapes(self) -> None:
        rules = generate_triangle_rules(self.gamma)
        shapes = {rule.family.rsplit(':', 1)[1] for rule in rules}
        self.assertEqual(shapes, {'I', 'II'})
        for rule in rules:
            self.assertEqual(len(rule.replacement), 1)
            self.assertEqual(rule.pattern[0].source, rule.replacement[0].source)
            self.assertEqual(rule.pattern[1].target, rule.replacement[0].target)

    def test_reduce_without_collapses(self) -> None:
        word = WordBuilder(LiftArc(outer(0), outer(3)), CFG).down().up().build()
        self.assertEqual(reduce_word(word, []), word)
        self.assertEqual(reduce_word(MoveWord(), generate_triangle_rules(self.gamma)), MoveWord())


class TestPushDown(unittest.TestCase):
    """Tube segments are sorted into all-down-then-all-up form."""

    def test_mouth_is_zero(self) -> None:
        start = LiftArc(outer(0), outer(2))
        self.assertIs(push_down(WordBuilder(start, CFG).up().down().build(), start, CFG), ZERO)

    def test_inner_tube(self) -> None:
        start = LiftArc(inner(0), inner(3))
        pushed = push_down(WordBuilder(start, CFG).up().down().build(), start, CFG)
        assert not isinstance(pushed, Zero)
        self.assertEqual([tube_step(move) for move in pushed.moves], [TubeStep.DOWN, TubeStep.UP])
        self.assertEqual(evaluate_word(pushed, start, CFG), LiftArc(inner(1), inner(4)))

    @settings(max_examples=60, deadline=None)
    @given(level=st.integers(0, 4), ups=st.integers(0, 4), data=st.data())
    def test_interleavings(self, level: int, ups: int, data: st.DataObject) -> None:
        downs = data.draw(st.integers(0, level), label='downs')
        steps = data.draw(st.permutations([TubeStep.UP] * ups + [TubeStep.DOWN] * downs), label='steps')
        start = LiftArc(outer(0), outer(level + 2))
        builder = WordBuilder(start, CFG)
        for step in steps:
            if step is TubeStep.UP:
                builder.up()
            else:
                builder.down()

        pushed = push_down(builder.build(), start, CFG)
        assert not isinstance(pushed, Zero)
        self.assertEqual(
            [tube_step(move) for move in pushed.moves], [TubeStep.DOWN] * downs + [TubeStep.UP] * ups, str(steps)
        )
        self.assertEqual(evaluate_word(pushed, start, CFG), LiftArc(outer(-ups), outer(level + 2 - downs)))


class TestRelationF(unittest.TestCase):
    def test_closed_forms(self) -> None:
        inner_form, outer_form = relation_f_closed_forms(CFG, 1)
        self.assertEqual(inner_form, LiftArc(inner(-14), outer(-1)))
        self.assertEqual(outer_form, LiftArc(inner(-10), outer(5)))
        self.assertEqual(sigma_distance(outer_form, inner_form, CFG), -2)

        inner_form, outer_form = relation_f_closed_forms(CFG, 0)
        self.assertEqual(inner_form, LiftArc(inner(-16), outer(-4)))
        self.assertEqual(outer_form, LiftArc(inner(-8), outer(8)))
        self.assertEqual(sigma_distance(outer_form, inner_form, CFG), -4)

    def test_word_lengths(self) -> None:
        inner_word, outer_word = relation_f_words(CFG, 1)
        self.assertEqual(len(inner_word), 2 + 2 * CFG.h)
        self.assertEqual(len(outer_word), 2 + 2 * CFG.g * CFG.tube_truncation)
        self.assertEqual(inner_word.long_count, 2)

    def test_out_of_range(self) -> None:
        with self.assertRaises(MoveError):
            relation_f_words(CFG, CFG.tube_truncation + 2)
        with self.assertRaises(MoveError):
            relation_f_words(CFG, -1)

    def test_single_value(self) -> None:
        report = verify_f(CFG, 1)
        self.assertEqual([check.name for check in report.checks], ['(f) j=1'])
        self.assertTrue(report.passed, report.checks[0].witness)

    def test_sweep(self) -> None:
        for cfg in ACCEPTANCE_CONFIGS:
            report = verify_f_sweep(cfg)
            self.assertEqual(len(report.checks), cfg.tube_truncation + 2)
            self.assertTrue(report.passed, f'{cfg}: {report.failures}')


class TestConnectingRelations(unittest.TestCase):
    def test_c1_c2(self) -> None:
        for cfg in ACCEPTANCE_CONFIGS:
            report = verify_c1_c2(cfg)
            self.assertEqual(len(report.checks), 5)
            self.assertTrue(report.passed, f'{cfg}: {report.failures}')

    def test_e(self) -> None:
        for cfg in ACCEPTANCE_CONFIGS:
            report = verify_e(cfg)
            self.assertTrue(report.passed, f'{cfg}: {report.failures}')
            self.assertEqual(sum(1 for check in report.checks if check.name.startswith('control')), 2)

    def test_diamonds_and_factoring(self) -> None:
        for cfg in (Config(g=2, h=1, m=1), CFG):
            gamma = build_gamma_bar_m(cfg)
            diamonds = verify_diamonds(gamma)
            self.assertEqual(len(diamonds.checks), 5)
            self.assertTrue(diamonds.passed, f'{cfg}: {diamonds.failures}')
            factoring = verify_factoring(gamma)
            self.assertTrue(factoring.passed, f'{cfg}: {factoring.failures}')


class TestPtolemySquare(unittest.TestCase):
    def test_square(self) -> None:
        x = LiftArc(outer(0), inner(0))
        z = LiftArc(outer(-1), inner(1))
        self.assertTrue(is_ptolemy_square(x, LiftArc(outer(-1), inner(0)), z, LiftArc(outer(0), inner(1))))

    def test_degenerate(self) -> None:
        x = LiftArc(outer(0), inner(0))
        self.assertFalse(is_ptolemy_square(x, x, LiftArc(outer(-1), inner(1)), LiftArc(outer(0), inner(1))))
        self.assertFalse(
            is_ptolemy_square(x, LiftArc(outer(-1), inner(0)), LiftArc(outer(0), inner(1)), x),
            'opposite sides share a corner',
        )
