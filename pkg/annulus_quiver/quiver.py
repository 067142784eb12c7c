from collections import Counter, defaultdict
from collections.abc import Callable, Hashable, Iterable, Iterator
from dataclasses import dataclass
from typing import Generic, TypeVar

import networkx as nx

from .exceptions import UnknownVertexError
from .schema import ArrowKind, Component, Config, Endpoint, Report

K = TypeVar('K', bound=Hashable)


@dataclass(frozen=True)
class QuiverVertex(Generic[K]):
    id: int
    component: Component
    key: K


@dataclass(frozen=True)
class QuiverArrow:
    id: int
    source: int
    target: int
    kind: ArrowKind
    label: str = ''
    anchor: Endpoint | None = None


class TranslationQuiver(Generic[K]):
    """
    Vertices keyed by arcs or coordinates, typed arrows and a partial translation.
    Ids follow insertion order, so building in a fixed order gives reproducible ids.
    """

    def __init__(self, name: str, cfg: Config) -> None:
        self.name = name
        self.cfg = cfg
        self._vertices: list[QuiverVertex[K]] = []
        self._ids: dict[K, int] = {}
        self._arrows: list[QuiverArrow] = []
        self._outgoing: dict[int, list[QuiverArrow]] = defaultdict(list)
        self._incoming: dict[int, list[QuiverArrow]] = defaultdict(list)
        self._between: dict[tuple[int, int, ArrowKind], list[QuiverArrow]] = defaultdict(list)
        self.tau: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, key: object) -> bool:
        return key in self._ids

    def __iter__(self) -> Iterator[QuiverVertex[K]]:
        return iter(self._vertices)

    @property
    def arrows(self) -> list[QuiverArrow]:
        return list(self._arrows)

    def add_vertex(self, key: K, component: Component) -> int:
        if key in self._ids:
            return self._ids[key]
        vertex = QuiverVertex(id=len(self._vertices), component=component, key=key)
        self._vertices.append(vertex)
        self._ids[key] = vertex.id
        return vertex.id

    def add_arrow(
        self, source: K, target: K, kind: ArrowKind, label: str = '', anchor: Endpoint | None = None
    ) -> QuiverArrow:
        arrow = QuiverArrow(
            id=len(self._arrows),
            source=self.id_of(source),
            target=self.id_of(target),
            kind=kind,
            label=label,
            anchor=anchor,
        )
        self._register(arrow)
        return arrow

    def _register(self, arrow: QuiverArrow) -> None:
        self._arrows.append(arrow)
        self._outgoing[arrow.source].append(arrow)
        self._incoming[arrow.target].append(arrow)
        self._between[(arrow.source, arrow.target, arrow.kind)].append(arrow)

    def set_tau(self, key: K, image: K) -> None:
        self.tau[self.id_of(key)] = self.id_of(image)

    def id_of(self, key: K) -> int:
        try:
            return self._ids[key]
        except KeyError:
            raise UnknownVertexError(f'{key} is not a vertex of {self.name}', str(key)) from None

    def vertex(self, key_or_id: K | int) -> QuiverVertex[K]:
        if isinstance(key_or_id, int) and not isinstance(key_or_id, bool):
            return self._vertices[key_or_id]
        return self._vertices[self.id_of(key_or_id)]

    def key(self, vertex_id: int) -> K:
        return self._vertices[vertex_id].key

    def component(self, key: K) -> Component:
        return self.vertex(key).component

    def vertices_in(self, component: Component) -> list[QuiverVertex[K]]:
        return [vertex for vertex in self._vertices if vertex.component is component]

    def tau_of(self, key: K) -> K | None:
        image = self.tau.get(self.id_of(key))
        return None if image is None else self.key(image)

    def arrows_from(self, key: K, kind: ArrowKind | None = None) -> list[QuiverArrow]:
        arrows = self._outgoing.get(self.id_of(key), [])
        return [arrow for arrow in arrows if kind is None or arrow.kind is kind]

    def arrows_into(self, key: K, kind: ArrowKind | None = None) -> list[QuiverArrow]:
        arrows = self._incoming.get(self.id_of(key), [])
        return [arrow for arrow in arrows if kind is None or arrow.kind is kind]

    def arrows_between(self, source: K, target: K, kind: ArrowKind) -> list[QuiverArrow]:
        if source not in self._ids or target not in self._ids:
            return []
        return list(self._between.get((self._ids[source], self._ids[target], kind), []))

    def has_arrow(self, source: K, target: K, kind: ArrowKind) -> bool:
        return bool(self.arrows_between(source, target, kind))

    def arrows_of_kind(self, *kinds: ArrowKind) -> list[QuiverArrow]:
        return [arrow for arrow in self._arrows if arrow.kind in kinds]

    def without_arrow(self, arrow_id: int) -> 'TranslationQuiver[K]':
        """Copy with one arrow deleted; remaining arrows keep their ids."""
        copy: TranslationQuiver[K] = TranslationQuiver(f'{self.name} without arrow {arrow_id}', self.cfg)
        for vertex in self._vertices:
            copy.add_vertex(vertex.key, vertex.component)
        for arrow in self._arrows:
            if arrow.id != arrow_id:
                copy._register(arrow)
        copy.tau = dict(self.tau)
        return copy

    def to_networkx(self, kinds: Iterable[ArrowKind] | None = None) -> nx.MultiDiGraph:
        selected = set(ArrowKind) if kinds is None else set(kinds)
        graph = nx.MultiDiGraph(name=self.name)
        for vertex in self._vertices:
            graph.add_node(vertex.id, key=str(vertex.key), component=vertex.component.value)
        for arrow in self._arrows:
            if arrow.kind in selected:
                graph.add_edge(arrow.source, arrow.target, key=arrow.id, kind=arrow.kind.value, label=arrow.label)
        return graph

    def component_count(self, kinds: Iterable[ArrowKind] | None = None) -> int:
        return nx.number_weakly_connected_components(self.to_networkx(kinds))

    def arrow_counter(self, *kinds: ArrowKind) -> Counter[tuple[K, K]]:
        return Counter((self.key(arrow.source), self.key(arrow.target)) for arrow in self.arrows_of_kind(*kinds))


def interior_meshes(
    quiver: TranslationQuiver[K],
    predecessors: Callable[[K], list[K]],
    successors: Callable[[K], list[K]],
) -> Iterator[tuple[K, Counter[K], Counter[K]]]:
    """
    Yield (v, sources of elementary arrows into v, targets of elementary arrows out of tau(v)) for every
    vertex v whose mesh is not cut by the truncation: tau(v) exists and all geometric neighbours are present.
    """
    for vertex in quiver:
        tau_key = quiver.tau_of(vertex.key)
        if tau_key is None:
            continue
        if not all(key in quiver for key in predecessors(vertex.key)):
            continue
        if not all(key in quiver for key in successors(tau_key)):
            continue

        into = Counter(quiver.key(arrow.source) for arrow in quiver.arrows_into(vertex.key, ArrowKind.ELEMENTARY))
        out_of_tau = Counter(quiver.key(arrow.target) for arrow in quiver.arrows_from(tau_key, ArrowKind.ELEMENTARY))
        yield vertex.key, into, out_of_tau


def check_meshes(
    quiver: TranslationQuiver[K],
    predecessors: Callable[[K], list[K]],
    successors: Callable[[K], list[K]],
    is_mouth: Callable[[K], bool],
) -> Report:
    report = Report(title=f'meshes of {quiver.name}')
    violations: list[str] = []
    misplaced_triangles: list[str] = []
    checked = 0
    triangles = 0

    for key, into, out_of_tau in interior_meshes(quiver, predecessors, successors):
        checked += 1
        if into != out_of_tau:
            violations.append(f'{key}: in {sorted(map(str, into))} vs out of tau {sorted(map(str, out_of_tau))}')
            continue
        if sum(into.values()) == 1:
            triangles += 1
            if not is_mouth(key):
                misplaced_triangles.append(str(key))

    report.add('meshes complete', not violations, '; '.join(violations[:5]))
    report.add('3-vertex meshes only at tube mouths', not misplaced_triangles, ', '.join(misplaced_triangles[:5]))
    report.add('interior meshes found', checked > 0, f'{checked} meshes, {triangles} with 3 vertices')
    return report
