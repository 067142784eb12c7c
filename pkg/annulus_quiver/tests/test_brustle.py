import unittest

from annulus_quiver.brustle import (
    brustle_tau,
    build_qm_prime,
    connecting_indices,
    connecting_vertices,
    contains,
    tube_top,
)
from annulus_quiver.constants import IOTA_0, IOTA_INF, KAPPA_0, KAPPA_INF
from annulus_quiver.exceptions import UnknownVertexError
from annulus_quiver.schema import ArrowKind, BrustleVertex, Component, Config

CFG = Config(g=3, h=2, m=1)


def tg(r: int, s: int) -> BrustleVertex:
    return BrustleVertex(Component.TG, r, s)


def th(r: int, s: int) -> BrustleVertex:
    return BrustleVertex(Component.TH, r, s)


class TestCoordinates(unittest.TestCase):
    def test_tube_top(self) -> None:
        self.assertEqual([tube_top(Component.TG, s, CFG) for s in (1, 2, 3)], [31, 32, 33])
        self.assertEqual([tube_top(Component.TH, s, CFG) for s in (1, 2)], [21, 22])

    def test_contains(self) -> None:
        self.assertTrue(contains(tg(31, 1), CFG))
        self.assertFalse(contains(tg(32, 1), CFG))
        self.assertFalse(contains(tg(0, 0), CFG), 'tube columns start at 1')
        self.assertTrue(contains(BrustleVertex(Component.P, 6, 4), CFG))
        self.assertFalse(contains(BrustleVertex(Component.I, 7, 0), CFG))

    def test_tau(self) -> None:
        self.assertEqual(brustle_tau(tg(5, 1), CFG), tg(5, 2))
        self.assertEqual(brustle_tau(tg(5, 3), CFG), tg(5, 1))
        self.assertEqual(brustle_tau(th(5, 1), CFG), th(5, 2))
        self.assertEqual(brustle_tau(BrustleVertex(Component.P, 2, 1), CFG), BrustleVertex(Component.P, 1, 1))
        self.assertIsNone(brustle_tau(BrustleVertex(Component.P, 0, 1), CFG), 'projectives have no translate')
        self.assertIsNone(brustle_tau(BrustleVertex(Component.I, 6, 1), CFG), 'cut at the last slice')
        self.assertIsNone(brustle_tau(tg(33, 3), CFG), 'column 1 stops at level 31')

    def test_str(self) -> None:
        self.assertEqual(str(tg(33, 3)), '(33,3)_g')
        self.assertEqual(str(th(22, 2)), '(22,2)_h')
        self.assertEqual(str(BrustleVertex(Component.P, 6, 0)), '(6,0)_P')


class TestConnectingArrows(unittest.TestCase):
    def test_indices(self) -> None:
        self.assertEqual(connecting_indices(IOTA_0, CFG), [0, 1, 2, 3])
        self.assertEqual(connecting_indices(KAPPA_INF, CFG), [0, 3, 4])
        with self.assertRaises(UnknownVertexError):
            connecting_indices('lambda', CFG)

    def test_endpoints(self) -> None:
        p60 = BrustleVertex(Component.P, 6, 0)
        self.assertEqual(connecting_vertices(IOTA_0, 0, CFG), (p60, tg(33, 3)))
        self.assertEqual(connecting_vertices(KAPPA_0, 0, CFG), (tg(33, 3), BrustleVertex(Component.I, 6, 0)))
        self.assertEqual(connecting_vertices(IOTA_INF, 0, CFG), (p60, th(22, 2)))
        with self.assertRaises(UnknownVertexError):
            connecting_vertices(IOTA_INF, 1, CFG)

    def test_endpoints_are_vertices(self) -> None:
        for family in (IOTA_0, KAPPA_0, IOTA_INF, KAPPA_INF):
            for index in connecting_indices(family, CFG):
                for vertex in connecting_vertices(family, index, CFG):
                    self.assertTrue(contains(vertex, CFG), f'{family}({index}) touches {vertex}')


class TestQmPrime(unittest.TestCase):
    def test_sizes(self) -> None:
        quiver = build_qm_prime(CFG)
        self.assertEqual(len(quiver), 214)
        self.assertEqual(len(quiver.arrows_of_kind(ArrowKind.CONNECTING)), 14)
        self.assertEqual(len(build_qm_prime(Config(g=2, h=1, m=1))), 55)

    def test_connected(self) -> None:
        quiver = build_qm_prime(CFG)
        self.assertEqual(quiver.component_count(), 1)
        self.assertEqual(quiver.component_count([ArrowKind.ELEMENTARY]), 4)
