import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from annulus_quiver.exceptions import InvalidArcError, InvalidConfigError
from annulus_quiver.geometry import (
    classify,
    embedding_coords,
    format_lift_arc,
    injective_arc,
    injective_lift,
    inner,
    load_config,
    outer,
    parse_lift_arc,
    project,
    projective_arc,
    projective_lift,
    reverse_orientation,
    sigma_distance,
    sigma_shift,
    tau,
    tau_inv,
    tau_orbit_position,
    tau_power,
    verify_classification,
    window_lift,
)
from annulus_quiver.schema import ArcClass, Component, Config, LiftArc

CFG = Config(g=3, h=2, m=1)


class TestConfig(unittest.TestCase):
    """Config validation and loading from plain mappings."""

    def test_derived_parameters(self) -> None:
        cfg = load_config({'g': 3, 'h': 2, 'm': 1})
        self.assertEqual(cfg.n, 4)
        self.assertEqual(cfg.tube_truncation, 10, 'N = 2m(n+1)')
        self.assertEqual(cfg.last_slice, 6, 'ghm')

    def test_unknown_key_rejected(self) -> None:
        with self.assertRaises(InvalidConfigError):
            load_config({'g': 3, 'h': 2, 'm': 1, 'k': 4})

    def test_g_below_h_rejected(self) -> None:
        with self.assertRaises(InvalidConfigError) as ctx:
            load_config({'g': 1, 'h': 2, 'm': 1})
        self.assertEqual(ctx.exception.field, 'g')

    def test_non_positive_rejected(self) -> None:
        with self.assertRaises(InvalidConfigError):
            Config(g=2, h=1, m=0)


class TestArcText(unittest.TestCase):
    def test_parse(self) -> None:
        self.assertEqual(parse_lift_arc('[0o,0i]'), LiftArc(outer(0), inner(0)))
        self.assertEqual(parse_lift_arc(' [ -3i , 5o ] '), LiftArc(inner(-3), outer(5)))

    def test_format_is_inverse_of_parse(self) -> None:
        for text in ('[0o,0i]', '[-14i,-1o]', '[0o,2o]'):
            self.assertEqual(format_lift_arc(parse_lift_arc(text)), text)
        self.assertEqual(format_lift_arc(project(LiftArc(outer(4), inner(1)), CFG)), '[1o,-1i]')

    def test_boundary_segment_rejected(self) -> None:
        with self.assertRaises(InvalidArcError):
            parse_lift_arc('[0o,1o]')

    def test_malformed_rejected(self) -> None:
        with self.assertRaises(InvalidArcError) as ctx:
            parse_lift_arc('[0x,1o]')
        self.assertEqual(ctx.exception.arc_text, '[0x,1o]')


class TestCover(unittest.TestCase):
    """Deck transformation, projection and the translation on lifts."""

    def test_projection_picks_start_in_first_period(self) -> None:
        arc = project(LiftArc(outer(7), inner(5)), CFG)
        self.assertEqual(arc.canonical, LiftArc(outer(1), inner(1)))

    def test_sigma_distance(self) -> None:
        lift = LiftArc(inner(-10), outer(5))
        self.assertEqual(sigma_distance(lift, sigma_shift(lift, -2, CFG), CFG), -2)
        self.assertIsNone(sigma_distance(lift, LiftArc(inner(-10), outer(6)), CFG))

    def test_sigma_shift_examples(self) -> None:
        self.assertEqual(sigma_shift(LiftArc(outer(0), inner(0)), 1, CFG), LiftArc(outer(3), inner(2)))
        self.assertEqual(sigma_shift(LiftArc(outer(-3), inner(0)), 1, CFG), LiftArc(outer(0), inner(2)))
        self.assertEqual(sigma_shift(LiftArc(outer(0), outer(5)), 0, CFG), LiftArc(outer(0), outer(5)))

    @given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-6, 6), st.booleans())
    @settings(max_examples=100, deadline=None)
    def test_sigma_shift_preserves_projection(self, x: int, y: int, t: int, outer_first: bool) -> None:
        lift = LiftArc(outer(x), inner(y)) if outer_first else LiftArc(inner(y), outer(x))
        shifted = sigma_shift(lift, t, CFG)
        self.assertEqual(sigma_shift(shifted, -t, CFG), lift)
        self.assertEqual(project(shifted, CFG), project(lift, CFG))
        self.assertEqual(sigma_distance(lift, shifted, CFG), t)

    @given(st.integers(-30, 30), st.integers(2, 12), st.integers(-6, 6), st.booleans())
    @settings(max_examples=100, deadline=None)
    def test_sigma_shift_preserves_peripheral_projection(self, x: int, gap: int, t: int, on_outer: bool) -> None:
        point = outer if on_outer else inner
        lift = LiftArc(point(x), point(x + gap))
        self.assertEqual(project(sigma_shift(lift, t, CFG), CFG), project(lift, CFG))

    def test_tau_of_beta_g(self) -> None:
        self.assertEqual(tau(projective_arc(3, CFG), CFG), project(LiftArc(outer(1), inner(-1)), CFG))

    @given(st.integers(-30, 30), st.integers(-30, 30))
    @settings(max_examples=100, deadline=None)
    def test_tau_inverse(self, x: int, y: int) -> None:
        arc = project(LiftArc(outer(x), inner(y)), CFG)
        self.assertEqual(tau_inv(tau(arc, CFG), CFG), arc)
        self.assertEqual(tau_power(arc, 0, CFG), arc)

    @given(st.integers(-30, 30), st.integers(-30, 30))
    @settings(max_examples=100, deadline=None)
    def test_window_lift_sum_range(self, x: int, y: int) -> None:
        lift = window_lift(LiftArc(outer(x), inner(y)), CFG)
        self.assertIn(lift.start.index + lift.end.index, range(-CFG.g, CFG.h))

    def test_reverse_orientation(self) -> None:
        bridging = projective_arc(3, CFG)
        reversed_arc = reverse_orientation(bridging, CFG)
        self.assertEqual(reversed_arc.canonical.start, inner(0))
        self.assertEqual(reverse_orientation(reversed_arc, CFG), bridging)
        peripheral = project(LiftArc(outer(0), outer(5)), CFG)
        self.assertEqual(reverse_orientation(peripheral, CFG), peripheral)


class TestClassification(unittest.TestCase):
    def test_examples(self) -> None:
        self.assertIs(classify(projective_arc(3, CFG), CFG), ArcClass.PREPROJECTIVE)
        self.assertIs(classify(injective_arc(0, CFG), CFG), ArcClass.PREINJECTIVE)
        self.assertIs(classify(project(LiftArc(outer(0), outer(2)), CFG), CFG), ArcClass.PERIPHERAL_OUTER)
        self.assertIs(classify(project(LiftArc(inner(0), inner(3)), CFG), CFG), ArcClass.PERIPHERAL_INNER)

    def test_tau_of_projectives_not_admissible(self) -> None:
        for i in range(CFG.n + 1):
            arc = tau(projective_arc(i, CFG), CFG)
            self.assertIs(classify(arc, CFG), ArcClass.NOT_ADMISSIBLE, f'tau(beta_{i}) = {arc}')

    def test_lift_formulas(self) -> None:
        self.assertEqual(projective_lift(0, 6, CFG), LiftArc(outer(-9), inner(6)))
        self.assertEqual(projective_lift(4, 2, CFG), LiftArc(outer(-2), inner(3)))
        self.assertEqual(injective_lift(0, 0, CFG), LiftArc(inner(-2), outer(-1)))
        self.assertEqual(injective_lift(4, 1, CFG), LiftArc(inner(-2), outer(3)))
        with self.assertRaises(InvalidArcError):
            projective_lift(5, 0, CFG)

    @given(st.integers(0, 4), st.integers(0, 40))
    @settings(max_examples=100, deadline=None)
    def test_orbit_position_recovers_coordinates(self, i: int, r: int) -> None:
        self.assertEqual(tau_orbit_position(project(projective_lift(i, r, CFG), CFG), CFG), (Component.P, i, r))
        self.assertEqual(tau_orbit_position(project(injective_lift(i, r, CFG), CFG), CFG), (Component.I, i, r))

    def test_peripheral_has_no_orbit_position(self) -> None:
        self.assertIsNone(tau_orbit_position(project(LiftArc(outer(0), outer(4)), CFG), CFG))

    def test_matches_reachability_oracle(self) -> None:
        for cfg in (Config(2, 1, 1), Config(3, 2, 1), Config(4, 3, 1), Config(5, 1, 1)):
            report = verify_classification(cfg)
            self.assertTrue(report.passed, [str(check) for check in report.failures])

    def test_oracle_covers_whole_window(self) -> None:
        report = verify_classification(Config(2, 1, 1))
        self.assertTrue(report.passed)
        self.assertTrue(report.checks[0].witness.startswith('75 arcs'), report.checks[0].witness)
        narrow = verify_classification(CFG, window=8)
        self.assertTrue(narrow.checks[0].witness.startswith('85 arcs'), narrow.checks[0].witness)


class TestEmbedding(unittest.TestCase):
    def test_coordinates(self) -> None:
        self.assertEqual(embedding_coords(outer(2), CFG), (4, 0))
        self.assertEqual(embedding_coords(inner(3), CFG), (9, 1))

    @settings(max_examples=50, deadline=None)
    @given(index=st.integers(-30, 30))
    def test_deck_shift_is_horizontal(self, index: int) -> None:
        for point, period in ((outer(index), CFG.g), (inner(index), CFG.h)):
            x, y = embedding_coords(point, CFG)
            self.assertEqual(embedding_coords(point.shifted(period), CFG), (x + CFG.g * CFG.h, y))
