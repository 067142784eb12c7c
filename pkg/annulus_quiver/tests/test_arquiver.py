import unittest

from annulus_quiver.arquiver import (
    build_components,
    build_gamma_bar_m,
    gamma_bar_component,
    is_mouth,
    mesh_check,
    mouth_triangles,
    tube_bound,
)
from annulus_quiver.geometry import inner, outer, project, projective_arc, projective_lift, tau
from annulus_quiver.schema import AnnulusArc, ArrowKind, Component, Config, LiftArc

CFG = Config(g=3, h=2, m=1)
ACCEPTANCE_CONFIGS = (
    Config(g=2, h=1, m=1),
    Config(g=3, h=2, m=1),
    Config(g=3, h=2, m=2),
    Config(g=4, h=3, m=1),
    Config(g=5, h=1, m=1),
)


def peripheral(start: int, end: int, on_outer: bool = True) -> AnnulusArc:
    point = outer if on_outer else inner
    return AnnulusArc(LiftArc(point(start), point(end)))


class TestComponents(unittest.TestCase):
    """Membership and sizes of the truncated components."""

    def test_tube_bound(self) -> None:
        self.assertEqual(tube_bound(peripheral(0, 2), CFG), 33, 'column 3 of the outer tube')
        self.assertEqual(tube_bound(peripheral(1, 3), CFG), 31)
        self.assertEqual(tube_bound(peripheral(0, 2, on_outer=False), CFG), 22)
        self.assertEqual(tube_bound(peripheral(1, 3, on_outer=False), CFG), 21)

    def test_membership(self) -> None:
        self.assertIs(gamma_bar_component(projective_arc(0, CFG), CFG), Component.P)
        self.assertIs(gamma_bar_component(peripheral(0, 35), CFG), Component.TG)
        self.assertIsNone(gamma_bar_component(peripheral(0, 36), CFG), 'above the truncation')
        self.assertIsNone(gamma_bar_component(project(projective_lift(0, 7, CFG), CFG), CFG), 'past the last slice')
        self.assertIsNone(gamma_bar_component(tau(projective_arc(3, CFG), CFG), CFG), 'not admissible')

    def test_sizes(self) -> None:
        for cfg, sizes in (
            (CFG, {Component.P: 35, Component.I: 35, Component.TG: 99, Component.TH: 45}),
            (Config(g=2, h=1, m=1), {Component.P: 9, Component.I: 9, Component.TG: 29, Component.TH: 8}),
        ):
            quiver = build_components(cfg)
            for component, size in sizes.items():
                self.assertEqual(len(quiver.vertices_in(component)), size, f'{component.value} for {cfg}')
            self.assertEqual(len(quiver), sum(sizes.values()))

    def test_components_are_separate(self) -> None:
        self.assertEqual(build_components(CFG).component_count(), 4)

    def test_tau_stays_in_component(self) -> None:
        quiver = build_components(CFG)
        for source, target in quiver.tau.items():
            self.assertIs(quiver.vertex(source).component, quiver.vertex(target).component)


class TestGammaBar(unittest.TestCase):
    def setUp(self) -> None:
        self.quiver = build_gamma_bar_m(CFG)

    def test_connected_by_long_arrows(self) -> None:
        self.assertEqual(self.quiver.component_count(), 1)
        self.assertEqual(self.quiver.component_count([ArrowKind.ELEMENTARY]), 4)
        self.assertGreater(len(self.quiver.arrows_of_kind(ArrowKind.LONG)), 0)

    def test_long_arrows_join_components(self) -> None:
        allowed = {
            (Component.P, Component.TG),
            (Component.P, Component.TH),
            (Component.TG, Component.I),
            (Component.TH, Component.I),
        }
        for arrow in self.quiver.arrows_of_kind(ArrowKind.LONG):
            pair = (self.quiver.vertex(arrow.source).component, self.quiver.vertex(arrow.target).component)
            self.assertIn(pair, allowed, f'long arrow {arrow.id}')

    def test_meshes(self) -> None:
        for cfg in ACCEPTANCE_CONFIGS:
            report = mesh_check(build_gamma_bar_m(cfg))
            self.assertTrue(report.passed, f'{cfg}: {report.failures}')

    def test_mouth_triangles(self) -> None:
        counts = mouth_triangles(self.quiver)
        self.assertEqual(counts[Component.TG], 3)
        self.assertEqual(counts[Component.TH], 2)

    def test_is_mouth(self) -> None:
        self.assertTrue(is_mouth(peripheral(4, 6)))
        self.assertFalse(is_mouth(peripheral(4, 7)))
        self.assertFalse(is_mouth(projective_arc(0, CFG)))
