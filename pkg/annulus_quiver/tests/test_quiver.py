import unittest

from annulus_quiver.exceptions import UnknownVertexError
from annulus_quiver.quiver import TranslationQuiver
from annulus_quiver.schema import ArrowKind, Component, Config, Endpoint


def small_quiver() -> TranslationQuiver[str]:
    quiver: TranslationQuiver[str] = TranslationQuiver('small', Config(g=2, h=1, m=1))
    for key in ('a', 'b', 'c'):
        quiver.add_vertex(key, Component.P)
    quiver.add_vertex('t', Component.TG)
    quiver.add_arrow('a', 'b', ArrowKind.ELEMENTARY, 'x', Endpoint.START)
    quiver.add_arrow('b', 'c', ArrowKind.ELEMENTARY, 'y')
    quiver.add_arrow('a', 't', ArrowKind.LONG)
    quiver.set_tau('c', 'a')
    return quiver


class TestTranslationQuiver(unittest.TestCase):
    def test_ids_follow_insertion(self) -> None:
        quiver = small_quiver()
        self.assertEqual([vertex.id for vertex in quiver], [0, 1, 2, 3])
        self.assertEqual(quiver.add_vertex('b', Component.P), 1, 'adding a known key returns its id')
        self.assertEqual(len(quiver), 4)

    def test_unknown_vertex(self) -> None:
        quiver = small_quiver()
        with self.assertRaises(UnknownVertexError):
            quiver.id_of('z')
        with self.assertRaises(UnknownVertexError):
            quiver.add_arrow('a', 'z', ArrowKind.ELEMENTARY)
        self.assertEqual(quiver.arrows_between('a', 'z', ArrowKind.ELEMENTARY), [])

    def test_lookups(self) -> None:
        quiver = small_quiver()
        self.assertEqual(quiver.tau_of('c'), 'a')
        self.assertIsNone(quiver.tau_of('a'))
        self.assertTrue(quiver.has_arrow('a', 'b', ArrowKind.ELEMENTARY))
        self.assertFalse(quiver.has_arrow('a', 'b', ArrowKind.LONG))
        self.assertEqual([arrow.label for arrow in quiver.arrows_from('a')], ['x', ''])
        self.assertEqual(len(quiver.arrows_into('t', ArrowKind.LONG)), 1)
        self.assertEqual([vertex.key for vertex in quiver.vertices_in(Component.TG)], ['t'])

    def test_without_arrow_keeps_ids(self) -> None:
        quiver = small_quiver()
        copy = quiver.without_arrow(1)
        self.assertEqual([arrow.id for arrow in copy.arrows], [0, 2], 'remaining arrows keep their ids')
        self.assertEqual(len(quiver.arrows), 3, 'the original is untouched')
        self.assertEqual(copy.tau, quiver.tau)
        self.assertFalse(copy.has_arrow('b', 'c', ArrowKind.ELEMENTARY))

    def test_components(self) -> None:
        quiver = small_quiver()
        self.assertEqual(quiver.component_count(), 1)
        self.assertEqual(quiver.component_count([ArrowKind.ELEMENTARY]), 2)
        graph = quiver.to_networkx([ArrowKind.LONG])
        self.assertEqual(graph.number_of_edges(), 1)
        self.assertEqual(graph.nodes[3]['component'], 'Tg')

    def test_arrow_counter(self) -> None:
        quiver = small_quiver()
        quiver.add_arrow('a', 'b', ArrowKind.ELEMENTARY)
        counter = quiver.arrow_counter(ArrowKind.ELEMENTARY)
        self.assertEqual(counter[('a', 'b')], 2)
        self.assertEqual(counter[('b', 'c')], 1)
        self.assertNotIn(('a', 't'), counter)
