"""
Integer model of the annulus with g outer and h inner marked points.

Marked points of the universal cover are i_o (outer boundary) and j_i (inner boundary), i, j in Z.
The deck transformation sigma moves outer indices by g and inner indices by h.
"""

import re
from collections.abc import Iterator
from typing import Any

import networkx as nx
from dacite import Config as DaciteConfig, DaciteError, from_dict

from .constants import ORACLE_WINDOW_FACTOR
from .exceptions import InvalidArcError, InvalidConfigError
from .schema import AnnulusArc, ArcClass, Boundary, Component, Config, Endpoint, LiftArc, LiftPoint, Report
from .utils import logged_stage, logger

ARC_PATTERN = re.compile(r'^\s*\[\s*(-?\d+)\s*([oi])\s*,\s*(-?\d+)\s*([oi])\s*\]\s*$')


def load_config(data: dict[str, Any]) -> Config:
    try:
        return from_dict(Config, data, config=DaciteConfig(strict=True))
    except DaciteError as e:
        raise InvalidConfigError(f'Invalid configuration {data}: {e}', 'config', data) from e


def outer(index: int) -> LiftPoint:
    return LiftPoint(Boundary.OUTER, index)


def inner(index: int) -> LiftPoint:
    return LiftPoint(Boundary.INNER, index)


def parse_lift_arc(text: str) -> LiftArc:
    """Parse `[<int><o|i>,<int><o|i>]`, o for the outer boundary and i for the inner one."""
    match = ARC_PATTERN.match(text)
    if match is None:
        raise InvalidArcError(f'Cannot parse arc {text!r}, expected e.g. "[0o,0i]"', text)
    start_index, start_side, end_index, end_side = match.groups()
    return LiftArc(
        LiftPoint(Boundary(start_side), int(start_index)),
        LiftPoint(Boundary(end_side), int(end_index)),
    )


def format_lift_arc(arc: LiftArc | AnnulusArc) -> str:
    """Inverse of parse_lift_arc; annulus arcs are written through their canonical lift."""
    lift = arc.canonical if isinstance(arc, AnnulusArc) else arc
    return f'[{lift.start},{lift.end}]'


def embedding_coords(point: LiftPoint, cfg: Config) -> tuple[int, int]:
    if point.boundary is Boundary.OUTER:
        return point.index * cfg.h, 0
    return point.index * cfg.g, 1


def sigma_shift(arc: LiftArc, t: int, cfg: Config) -> LiftArc:
    return LiftArc(
        arc.start.shifted(t * cfg.period(arc.start.boundary)),
        arc.end.shifted(t * cfg.period(arc.end.boundary)),
    )


def sigma_distance(source: LiftArc, target: LiftArc, cfg: Config) -> int | None:
    """The t with sigma_shift(source, t) == target, or None when the lifts are not sigma-equivalent."""
    if source.start.boundary is not target.start.boundary or source.end.boundary is not target.end.boundary:
        return None
    delta = target.start.index - source.start.index
    period = cfg.period(source.start.boundary)
    if delta % period:
        return None
    t = delta // period
    return t if sigma_shift(source, t, cfg) == target else None


def project(arc: LiftArc, cfg: Config) -> AnnulusArc:
    period = cfg.period(arc.start.boundary)
    return AnnulusArc(sigma_shift(arc, -(arc.start.index // period), cfg))


def anchored_lift(arc: AnnulusArc, endpoint: Endpoint, index: int, cfg: Config) -> LiftArc | None:
    """The lift of arc whose given endpoint sits at index, if the residues allow one."""
    point = arc.canonical.point(endpoint)
    delta = index - point.index
    period = cfg.period(point.boundary)
    if delta % period:
        return None
    return sigma_shift(arc.canonical, delta // period, cfg)


def tau_lift(arc: LiftArc, k: int = 1) -> LiftArc:
    """tau^k on a lift: outer indices +k, inner indices -k."""

    def moved(point: LiftPoint) -> LiftPoint:
        return point.shifted(k if point.boundary is Boundary.OUTER else -k)

    return LiftArc(moved(arc.start), moved(arc.end))


def tau(arc: AnnulusArc, cfg: Config) -> AnnulusArc:
    return project(tau_lift(arc.canonical), cfg)


def tau_inv(arc: AnnulusArc, cfg: Config) -> AnnulusArc:
    return project(tau_lift(arc.canonical, -1), cfg)


def tau_power(arc: AnnulusArc, k: int, cfg: Config) -> AnnulusArc:
    return project(tau_lift(arc.canonical, k), cfg)


def reverse_orientation(arc: AnnulusArc, cfg: Config) -> AnnulusArc:
    # peripheral lifts are stored smaller index first, so they carry no orientation
    if arc.is_peripheral:
        return arc
    return project(LiftArc(arc.canonical.end, arc.canonical.start), cfg)


def projective_lift(i: int, r: int, cfg: Config) -> LiftArc:
    """Lift of tau^{-r} beta_i."""
    _check_index(i, cfg, 'beta')
    if i <= cfg.g:
        return LiftArc(outer(i - cfg.g - r), inner(r))
    return LiftArc(outer(-r), inner(i - cfg.g + r))


def injective_lift(i: int, r: int, cfg: Config) -> LiftArc:
    """Lift of tau^r gamma_i."""
    _check_index(i, cfg, 'gamma')
    if i <= cfg.g:
        return LiftArc(inner(-2 - r), outer(i - cfg.g + 2 + r))
    return LiftArc(inner(i - cfg.g - 2 - r), outer(2 + r))


def projective_arc(i: int, cfg: Config) -> AnnulusArc:
    return project(projective_lift(i, 0, cfg), cfg)


def injective_arc(i: int, cfg: Config) -> AnnulusArc:
    return project(injective_lift(i, 0, cfg), cfg)


def _check_index(i: int, cfg: Config, name: str) -> None:
    if not 0 <= i <= cfg.n:
        raise InvalidArcError(f'{name}_{i} does not exist, index must lie in 0..{cfg.n}', f'{name}_{i}')


def window_lift(arc: LiftArc, cfg: Config) -> LiftArc:
    """The lift of a bridging arc whose endpoint indices sum into -g..h-1."""
    total = arc.start.index + arc.end.index
    return sigma_shift(arc, -((total + cfg.g) // (cfg.g + cfg.h)), cfg)


def peripheral_level(arc: LiftArc) -> int:
    return arc.end.index - arc.start.index - 2


def classify(arc: AnnulusArc, cfg: Config) -> ArcClass:
    lift = arc.canonical
    if lift.is_peripheral:
        return ArcClass.PERIPHERAL_OUTER if lift.start.boundary is Boundary.OUTER else ArcClass.PERIPHERAL_INNER

    window = window_lift(lift, cfg)
    total = window.start.index + window.end.index
    if window.start.boundary is Boundary.OUTER:
        x, y = window.start.index, window.end.index
        admissible = y >= 0 if total <= 0 else x <= 0
        return ArcClass.PREPROJECTIVE if admissible else ArcClass.NOT_ADMISSIBLE

    u, v = window.start.index, window.end.index
    admissible = u <= -2 if total <= 0 else v >= 2
    return ArcClass.PREINJECTIVE if admissible else ArcClass.NOT_ADMISSIBLE


def tau_orbit_position(arc: AnnulusArc, cfg: Config) -> tuple[Component, int, int] | None:
    """
    (P, i, r) when arc is tau^{-r} beta_i, (I, i, r) when arc is tau^r gamma_i, None otherwise.
    """
    arc_class = classify(arc, cfg)
    if arc_class not in (ArcClass.PREPROJECTIVE, ArcClass.PREINJECTIVE):
        return None

    window = window_lift(arc.canonical, cfg)
    total = window.start.index + window.end.index
    i = total + cfg.g
    if arc_class is ArcClass.PREPROJECTIVE:
        r = window.end.index if total <= 0 else -window.start.index
        return Component.P, i, r
    r = -2 - window.start.index if total <= 0 else window.end.index - 2
    return Component.I, i, r


def elementary_lift_steps(arc: LiftArc) -> list[tuple[Endpoint, LiftArc]]:
    """
    Minimal clockwise rotations about one endpoint: the free endpoint moves -1 on the outer
    boundary and +1 on the inner one. Steps that would produce a boundary segment are dropped.
    """
    steps = []
    for free in (Endpoint.START, Endpoint.END):
        point = arc.point(free)
        moved = point.shifted(-1 if point.boundary is Boundary.OUTER else 1)
        try:
            steps.append((free, arc.with_point(free, moved)))
        except InvalidArcError:
            continue
    return steps


def elementary_lift_preimages(arc: LiftArc) -> list[tuple[Endpoint, LiftArc]]:
    """Lifts with an elementary step onto arc, paired with the endpoint that step moves."""
    preimages = []
    for free in (Endpoint.START, Endpoint.END):
        point = arc.point(free)
        moved = point.shifted(1 if point.boundary is Boundary.OUTER else -1)
        try:
            preimages.append((free, arc.with_point(free, moved)))
        except InvalidArcError:
            continue
    return preimages


def window_arcs(cfg: Config, window: int) -> Iterator[AnnulusArc]:
    """Canonical bridging arcs whose free endpoint index lies in -window..window."""
    for start_boundary, end_boundary in ((Boundary.OUTER, Boundary.INNER), (Boundary.INNER, Boundary.OUTER)):
        for start_index in range(cfg.period(start_boundary)):
            for end_index in range(-window, window + 1):
                yield AnnulusArc(
                    LiftArc(LiftPoint(start_boundary, start_index), LiftPoint(end_boundary, end_index))
                )


@logged_stage('classification oracle')
def classification_oracle(cfg: Config, window: int | None = None) -> tuple[set[AnnulusArc], set[AnnulusArc]]:
    """
    Arcs reachable from beta_g and arcs reaching gamma_0 by elementary moves, inside the window.

    Along elementary moves the canonical free index of an outer-to-inner arc never decreases and the
    one of an inner-to-outer arc never increases, so paths between window arcs never leave the window.
    """
    if window is None:
        window = ORACLE_WINDOW_FACTOR * (cfg.n + 1)

    nodes = set(window_arcs(cfg, window))
    graph = nx.DiGraph()
    graph.add_nodes_from(nodes)
    for arc in nodes:
        for _, moved in elementary_lift_steps(arc.canonical):
            target = project(moved, cfg)
            if target in nodes:
                graph.add_edge(arc, target)

    source = projective_arc(cfg.g, cfg)
    sink = injective_arc(0, cfg)
    preprojective = nx.descendants(graph, source) | {source}
    preinjective = nx.ancestors(graph, sink) | {sink}
    logger.info(
        f'Oracle window {window}: {len(nodes)} arcs, {len(preprojective)} preprojective, '
        f'{len(preinjective)} preinjective'
    )
    return preprojective, preinjective


def verify_classification(cfg: Config, window: int | None = None) -> Report:
    """Compare classify against reachability from beta_g and towards gamma_0 on every arc of the window."""
    if window is None:
        window = ORACLE_WINDOW_FACTOR * (cfg.n + 1)
    # the oracle graph spans twice the checked window
    preprojective, preinjective = classification_oracle(cfg, 2 * window)
    report = Report(title=f'classification for g={cfg.g}, h={cfg.h}')

    mismatches = []
    checked = 0
    for arc in window_arcs(cfg, window):
        checked += 1
        arc_class = classify(arc, cfg)
        if (arc_class is ArcClass.PREPROJECTIVE) != (arc in preprojective):
            mismatches.append(f'{arc}: {arc_class.value}, reachable from beta_g: {arc in preprojective}')
        elif (arc_class is ArcClass.PREINJECTIVE) != (arc in preinjective):
            mismatches.append(f'{arc}: {arc_class.value}, reaches gamma_0: {arc in preinjective}')

    report.add('classification matches reachability', not mismatches, f'{checked} arcs; {mismatches[:3]}')
    overlap = preprojective & preinjective
    report.add('no arc is both preprojective and preinjective', not overlap, ', '.join(map(str, list(overlap)[:3])))
    return report
