import unittest

from annulus_quiver.arquiver import build_gamma_bar_m
from annulus_quiver.cluster import (
    build_cluster_quiver_m,
    eta_arcs,
    oriented,
    unorient,
    unoriented_moves,
    unoriented_predecessors,
    unoriented_tau,
    verify_stable_translation,
)
from annulus_quiver.geometry import (
    injective_arc,
    inner,
    outer,
    project,
    projective_arc,
    reverse_orientation,
    tau,
    tau_power,
)
from annulus_quiver.schema import ArrowKind, Boundary, Component, Config, LiftArc, UnorientedArc

CFG = Config(g=3, h=2, m=1)
ACCEPTANCE_CONFIGS = (
    Config(g=2, h=1, m=1),
    Config(g=3, h=2, m=1),
    Config(g=3, h=2, m=2),
    Config(g=4, h=3, m=1),
    Config(g=5, h=1, m=1),
)


class TestUnorientedArcs(unittest.TestCase):
    """Forgetting orientation of arcs."""

    def test_bridging_arcs_start_outside(self) -> None:
        arc = unorient(injective_arc(0, CFG), CFG)
        self.assertIs(arc.canonical.start.boundary, Boundary.OUTER)
        self.assertEqual(arc, UnorientedArc(LiftArc(outer(2), inner(0))))

    def test_orientation_is_forgotten(self) -> None:
        for i in range(CFG.n + 1):
            for arc in (projective_arc(i, CFG), injective_arc(i, CFG)):
                self.assertEqual(unorient(arc, CFG), unorient(reverse_orientation(arc, CFG), CFG), str(arc))

    def test_oriented_representative(self) -> None:
        beta = projective_arc(3, CFG)
        self.assertEqual(oriented(unorient(beta, CFG), CFG), beta)

    def test_gamma_is_tau_squared_beta(self) -> None:
        for i in range(CFG.n + 1):
            self.assertEqual(
                unorient(injective_arc(i, CFG), CFG), unorient(tau_power(projective_arc(i, CFG), 2, CFG), CFG), f'i={i}'
            )

    def test_tau_commutes_with_unorient(self) -> None:
        for i in range(CFG.n + 1):
            gamma = injective_arc(i, CFG)
            self.assertEqual(unoriented_tau(unorient(gamma, CFG), CFG), unorient(tau(gamma, CFG), CFG))

    def test_moves_and_predecessors_agree(self) -> None:
        for eta in eta_arcs(CFG):
            for target in unoriented_moves(eta, CFG):
                self.assertIn(eta, unoriented_predecessors(target, CFG), f'{eta} -> {target}')


class TestEtaSlice(unittest.TestCase):
    def test_eta_arcs(self) -> None:
        etas = eta_arcs(CFG)
        self.assertEqual(len(etas), CFG.n + 1)
        self.assertEqual(len(set(etas)), CFG.n + 1)
        self.assertEqual(etas[3], unorient(project(LiftArc(outer(1), inner(-1)), CFG), CFG))


class TestClusterQuiver(unittest.TestCase):
    def test_sizes(self) -> None:
        quiver = build_cluster_quiver_m(CFG)
        self.assertEqual(len(quiver), 219)
        self.assertEqual(len(quiver.vertices_in(Component.ETA)), 5)
        self.assertTrue(any(arrow.label == 'eta' for arrow in quiver.arrows))

    def test_sizes_and_components(self) -> None:
        for cfg in ACCEPTANCE_CONFIGS:
            gamma = build_gamma_bar_m(cfg)
            quiver = build_cluster_quiver_m(cfg, gamma)
            self.assertEqual(len(quiver), len(gamma) + cfg.n + 1, str(cfg))
            self.assertEqual(quiver.component_count([ArrowKind.ELEMENTARY]), 3, str(cfg))

    def test_stable_translation(self) -> None:
        for cfg in (CFG, Config(g=2, h=1, m=1)):
            gamma = build_gamma_bar_m(cfg)
            report = verify_stable_translation(build_cluster_quiver_m(cfg, gamma), gamma)
            self.assertTrue(report.passed, f'{cfg}: {report.failures}')
