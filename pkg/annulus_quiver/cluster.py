"""
The quiver of unoriented arcs, modelling the AR-quiver of the cluster category.

Forgetting orientation identifies gamma_i with tau^2 beta_i; one new slice of arcs eta_i = tau(beta_i)
joins the preinjective and preprojective parts into a single transjective component.
"""

from collections import Counter

from .arquiver import build_gamma_bar_m
from .exceptions import InconsistentModelError
from .geometry import (
    classify,
    elementary_lift_preimages,
    elementary_lift_steps,
    injective_arc,
    project,
    projective_arc,
    reverse_orientation,
    tau,
    tau_inv,
    tau_power,
)
from .quiver import TranslationQuiver, check_meshes, interior_meshes
from .schema import AnnulusArc, ArcClass, ArrowKind, Boundary, Component, Config, Report, UnorientedArc
from .utils import logged_stage, logger

TRANSJECTIVE = frozenset({Component.P, Component.I, Component.ETA})


def unorient(arc: AnnulusArc, cfg: Config) -> UnorientedArc:
    if arc.is_peripheral or arc.canonical.start.boundary is Boundary.OUTER:
        return UnorientedArc(arc.canonical)
    return UnorientedArc(reverse_orientation(arc, cfg).canonical)


def oriented(arc: UnorientedArc, cfg: Config) -> AnnulusArc:
    """The representative stored for arc: outer to inner when bridging."""
    return project(arc.canonical, cfg)


def unoriented_moves(arc: UnorientedArc, cfg: Config) -> list[UnorientedArc]:
    """Elementary moves of either orientation; both orientations of a bridging arc give the same arcs."""
    return [unorient(project(lift, cfg), cfg) for _, lift in elementary_lift_steps(arc.canonical)]


def unoriented_predecessors(arc: UnorientedArc, cfg: Config) -> list[UnorientedArc]:
    return [unorient(project(lift, cfg), cfg) for _, lift in elementary_lift_preimages(arc.canonical)]


def unoriented_tau(arc: UnorientedArc, cfg: Config) -> UnorientedArc:
    return unorient(tau(oriented(arc, cfg), cfg), cfg)


def eta_arcs(cfg: Config) -> list[UnorientedArc]:
    arcs = []
    for i in range(cfg.n + 1):
        from_gamma = unorient(tau_inv(injective_arc(i, cfg), cfg), cfg)
        from_beta = unorient(tau(projective_arc(i, cfg), cfg), cfg)
        if from_gamma != from_beta:
            raise InconsistentModelError(
                f'tau^-1(gamma_{i}) and tau(beta_{i}) differ as unoriented arcs', f'{from_gamma} vs {from_beta}'
            )
        arcs.append(from_beta)
    return arcs


@logged_stage('cluster quiver')
def build_cluster_quiver_m(
    cfg: Config, gamma: TranslationQuiver[AnnulusArc] | None = None
) -> TranslationQuiver[UnorientedArc]:
    if gamma is None:
        gamma = build_gamma_bar_m(cfg)
    quiver: TranslationQuiver[UnorientedArc] = TranslationQuiver(f'Gamma-under_{cfg.m}({cfg.g},{cfg.h})', cfg)

    for vertex in gamma:
        quiver.add_vertex(unorient(vertex.key, cfg), vertex.component)
    etas = eta_arcs(cfg)
    for eta in etas:
        quiver.add_vertex(eta, Component.ETA)

    for arrow in gamma.arrows:
        source, target = unorient(gamma.key(arrow.source), cfg), unorient(gamma.key(arrow.target), cfg)
        quiver.add_arrow(source, target, arrow.kind, arrow.label, arrow.anchor)

    # arrows of the new slice: gamma_i -> eta_j and eta_i -> beta_j
    slice_sources = [unorient(injective_arc(i, cfg), cfg) for i in range(cfg.n + 1)] + etas
    eta_set = set(etas)
    for source in slice_sources:
        for target in unoriented_moves(source, cfg):
            if target in quiver and (source in eta_set or target in eta_set):
                quiver.add_arrow(source, target, ArrowKind.ELEMENTARY, 'eta')

    for vertex in quiver:
        image = unoriented_tau(vertex.key, cfg)
        if image not in quiver:
            continue
        image_component = quiver.component(image)
        if image_component is vertex.component or {image_component, vertex.component} <= TRANSJECTIVE:
            quiver.set_tau(vertex.key, image)

    eta_arrows = sum(1 for arrow in quiver.arrows if arrow.label == 'eta')
    logger.info(f'Built {quiver.name}: {len(quiver)} vertices, {len(quiver.arrows)} arrows, {eta_arrows} on eta')
    return quiver


def _is_mouth(arc: UnorientedArc) -> bool:
    lift = arc.canonical
    return lift.is_peripheral and lift.end.index - lift.start.index == 2


@logged_stage('stable translation check')
def verify_stable_translation(
    quiver: TranslationQuiver[UnorientedArc], gamma: TranslationQuiver[AnnulusArc] | None = None
) -> Report:
    cfg = quiver.cfg
    if gamma is None:
        gamma = build_gamma_bar_m(cfg)
    report = check_meshes(
        quiver, lambda arc: unoriented_predecessors(arc, cfg), lambda arc: unoriented_moves(arc, cfg), _is_mouth
    )
    report.title = f'stable translation quiver {quiver.name}'

    images = list(quiver.tau.values())
    report.add('tau is injective', len(images) == len(set(images)), f'{len(images)} tau pairs')

    etas = [vertex.key for vertex in quiver.vertices_in(Component.ETA)]
    betas = {unorient(projective_arc(i, cfg), cfg) for i in range(cfg.n + 1)}
    complete = {
        key
        for key, into, out_of_tau in interior_meshes(
            quiver, lambda arc: unoriented_predecessors(arc, cfg), lambda arc: unoriented_moves(arc, cfg)
        )
        if into == out_of_tau
    }
    missing = [str(key) for key in [*etas, *sorted(betas)] if key not in complete]
    report.add('meshes across the eta slice', not missing and len(etas) == cfg.n + 1, ', '.join(missing[:5]))

    reversals = [
        i
        for i in range(cfg.n + 1)
        if unorient(injective_arc(i, cfg), cfg) != unorient(tau_power(projective_arc(i, cfg), 2, cfg), cfg)
    ]
    report.add('gamma_i = tau^2 beta_i unoriented', not reversals, f'fails for {reversals}')

    oriented_gaps = [
        i for i in range(cfg.n + 1) if classify(tau(projective_arc(i, cfg), cfg), cfg) is not ArcClass.NOT_ADMISSIBLE
    ]
    report.add('oriented tau(beta_i) is not admissible', not oriented_gaps, f'admissible for {oriented_gaps}')

    embedded: Counter[tuple[UnorientedArc, UnorientedArc]] = Counter()
    for (source, target), count in gamma.arrow_counter(*ArrowKind).items():
        embedded[(unorient(source, cfg), unorient(target, cfg))] += count
    restricted = Counter(
        {
            pair: count
            for pair, count in quiver.arrow_counter(*ArrowKind).items()
            if quiver.component(pair[0]) is not Component.ETA and quiver.component(pair[1]) is not Component.ETA
        }
    )
    report.add(f'{gamma.name} is a full subquiver', embedded == restricted, f'{sum(embedded.values())} arrows')

    components = quiver.component_count([ArrowKind.ELEMENTARY])
    report.add('three connected components', components == 3, f'{components} components')

    logger.info(f'Stable translation check of {quiver.name}: {len(report.failures)} failed checks')
    return report
