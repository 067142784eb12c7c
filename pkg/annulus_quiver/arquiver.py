"""
Geometric translation quivers: the four truncated components and the connected quiver with long moves.
"""

from collections import Counter, defaultdict
from collections.abc import Callable

import networkx as nx

from .geometry import (
    classify,
    elementary_lift_preimages,
    elementary_lift_steps,
    injective_lift,
    project,
    projective_lift,
    tau,
    tau_orbit_position,
)
from .moves import elementary_moves
from .quiver import TranslationQuiver, check_meshes, interior_meshes
from .schema import (
    AnnulusArc,
    ArcClass,
    ArrowKind,
    Boundary,
    Component,
    Config,
    Endpoint,
    LiftArc,
    LiftPoint,
    Report,
)
from .utils import logged_stage, logger, wrap_residue

# (source component, target component) -> endpoint shared by every long arrow between them
LONG_ARROW_ANCHORS = {
    (Component.P, Component.TG): Endpoint.START,
    (Component.P, Component.TH): Endpoint.END,
    (Component.TG, Component.I): Endpoint.END,
    (Component.TH, Component.I): Endpoint.START,
}

COMPONENT_ORDER = (Component.P, Component.I, Component.TG, Component.TH)

Neighbours = Callable[[AnnulusArc], list[AnnulusArc]]


def tube_bound(arc: AnnulusArc, cfg: Config) -> int:
    """Highest level kept in the column of a peripheral arc: rank * N + s."""
    lift = arc.canonical
    rank = cfg.period(lift.start.boundary)
    column = lift.end.index - 2 if lift.start.boundary is Boundary.OUTER else lift.end.index
    return rank * cfg.tube_truncation + wrap_residue(column, rank)


def gamma_bar_component(arc: AnnulusArc, cfg: Config) -> Component | None:
    """The component of the truncated quiver containing arc, or None when arc is cut off."""
    arc_class = classify(arc, cfg)
    if arc_class in (ArcClass.PERIPHERAL_OUTER, ArcClass.PERIPHERAL_INNER):
        level = arc.canonical.end.index - arc.canonical.start.index - 2
        if level > tube_bound(arc, cfg):
            return None
        return Component.TG if arc_class is ArcClass.PERIPHERAL_OUTER else Component.TH

    position = tau_orbit_position(arc, cfg)
    if position is None:
        return None
    component, _, r = position
    return component if 0 <= r <= cfg.last_slice else None


def tube_arcs(cfg: Config, boundary: Boundary) -> list[AnnulusArc]:
    rank = cfg.period(boundary)
    arcs = []
    for start in range(rank):
        for level in range(rank * cfg.tube_truncation + rank + 1):
            arc = AnnulusArc(LiftArc(LiftPoint(boundary, start), LiftPoint(boundary, start + level + 2)))
            if level <= tube_bound(arc, cfg):
                arcs.append(arc)
    return arcs


def component_arcs(cfg: Config) -> dict[Component, list[AnnulusArc]]:
    """Vertex arcs per component, ordered by tau-orbit (or column) and then by level."""
    slices = range(cfg.last_slice + 1)
    indices = range(cfg.n + 1)
    return {
        Component.P: [project(projective_lift(i, r, cfg), cfg) for i in indices for r in slices],
        Component.I: [project(injective_lift(i, r, cfg), cfg) for i in indices for r in slices],
        Component.TG: tube_arcs(cfg, Boundary.OUTER),
        Component.TH: tube_arcs(cfg, Boundary.INNER),
    }


@logged_stage('components')
def build_components(cfg: Config) -> TranslationQuiver[AnnulusArc]:
    quiver: TranslationQuiver[AnnulusArc] = TranslationQuiver(f'Gamma_{cfg.m}({cfg.g},{cfg.h})', cfg)
    for component, arcs in component_arcs(cfg).items():
        for arc in arcs:
            quiver.add_vertex(arc, component)

    for vertex in quiver:
        for move, target in elementary_moves(vertex.key, cfg):
            if target in quiver:
                quiver.add_arrow(vertex.key, target, ArrowKind.ELEMENTARY, anchor=move.anchor)
        image = tau(vertex.key, cfg)
        if image in quiver and quiver.component(image) is vertex.component:
            quiver.set_tau(vertex.key, image)

    sizes = ', '.join(f'{component.value}={len(quiver.vertices_in(component))}' for component in COMPONENT_ORDER)
    logger.info(f'Built components of {quiver.name}: {sizes}, {len(quiver.arrows)} elementary arrows')
    return quiver


def _anchor_residue(arc: AnnulusArc, anchor: Endpoint, cfg: Config) -> int:
    point = arc.canonical.point(anchor)
    return point.index % cfg.period(point.boundary)


@logged_stage('gamma bar')
def build_gamma_bar_m(cfg: Config) -> TranslationQuiver[AnnulusArc]:
    quiver = build_components(cfg)
    quiver.name = f'Gamma-bar_{cfg.m}({cfg.g},{cfg.h})'

    long_arrows = 0
    for (source_component, target_component), anchor in LONG_ARROW_ANCHORS.items():
        targets: dict[int, list[AnnulusArc]] = defaultdict(list)
        for vertex in quiver.vertices_in(target_component):
            targets[_anchor_residue(vertex.key, anchor, cfg)].append(vertex.key)
        for vertex in quiver.vertices_in(source_component):
            for target in targets[_anchor_residue(vertex.key, anchor, cfg)]:
                quiver.add_arrow(vertex.key, target, ArrowKind.LONG, anchor=anchor)
                long_arrows += 1

    connected = nx.is_weakly_connected(quiver.to_networkx())
    logger.info(f'Added {long_arrows} long arrows to {quiver.name}, connected: {connected}')
    return quiver


def is_mouth(arc: AnnulusArc) -> bool:
    return arc.is_peripheral and arc.canonical.end.index - arc.canonical.start.index == 2


def mesh_predecessors(cfg: Config) -> Neighbours:
    return lambda arc: [project(lift, cfg) for _, lift in elementary_lift_preimages(arc.canonical)]


def mesh_successors(cfg: Config) -> Neighbours:
    return lambda arc: [project(lift, cfg) for _, lift in elementary_lift_steps(arc.canonical)]


@logged_stage('mesh check')
def mesh_check(quiver: TranslationQuiver[AnnulusArc]) -> Report:
    report = check_meshes(quiver, mesh_predecessors(quiver.cfg), mesh_successors(quiver.cfg), is_mouth)
    logger.info(f'Mesh check of {quiver.name}: {len(report.failures)} failed checks')
    return report


def mouth_triangles(quiver: TranslationQuiver[AnnulusArc]) -> Counter[Component]:
    """Number of complete 3-vertex meshes per component."""
    counts: Counter[Component] = Counter()
    cfg = quiver.cfg
    for key, into, out_of_tau in interior_meshes(quiver, mesh_predecessors(cfg), mesh_successors(cfg)):
        if into == out_of_tau and sum(into.values()) == 1:
            counts[quiver.component(key)] += 1
    return counts
