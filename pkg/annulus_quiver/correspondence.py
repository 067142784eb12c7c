"""
The vertex map F from the geometric quiver to Brüstle's coordinate quiver, and the checks that
F is an isomorphism of translation quivers once connecting arrows stand in for long moves.
"""

from collections import Counter
from collections.abc import Iterator

from .arquiver import build_gamma_bar_m, gamma_bar_component
from .brustle import build_qm_prime, connecting_indices, connecting_label, connecting_vertices, inner_offset
from .constants import CONNECTING_FAMILIES, IOTA_0, IOTA_INF, KAPPA_0, KAPPA_INF
from .exceptions import InvalidArcError, MoveError, UnknownVertexError
from .geometry import anchored_lift, injective_lift, inner, outer, project, tau_orbit_position
from .moves import apply_move_lift, long_move, opposite, step_lift
from .quiver import TranslationQuiver
from .schema import (
    AnnulusArc,
    ArrowKind,
    Boundary,
    BrustleVertex,
    Component,
    Config,
    Endpoint,
    LiftArc,
    Move,
    Report,
)
from .utils import logged_stage, logger, wrap_residue

CONNECTING_ANCHORS = {
    IOTA_0: Endpoint.START,
    KAPPA_0: Endpoint.END,
    IOTA_INF: Endpoint.END,
    KAPPA_INF: Endpoint.START,
}


def f_vertex(arc: AnnulusArc, cfg: Config) -> BrustleVertex:
    component = gamma_bar_component(arc, cfg)
    if component is None:
        raise UnknownVertexError(f'{arc} is not a vertex of the truncated quiver', str(arc))

    lift = arc.canonical
    level = lift.end.index - lift.start.index - 2
    if component is Component.TG:
        return BrustleVertex(Component.TG, level, wrap_residue(lift.end.index - 2, cfg.g))
    if component is Component.TH:
        return BrustleVertex(Component.TH, level, wrap_residue(lift.start.index + 2, cfg.h))

    position = tau_orbit_position(arc, cfg)
    assert position is not None
    _, i, r = position
    if component is Component.P:
        return BrustleVertex(Component.P, r, i)
    return BrustleVertex(Component.I, r, (cfg.g - i) % (cfg.n + 1))


def last_slice_injective(index: int, cfg: Config) -> AnnulusArc:
    """The arc sent to (ghm, index)_I."""
    return project(injective_lift((cfg.g - index) % (cfg.n + 1), cfg.last_slice, cfg), cfg)


def connecting_lifts(family: str, index: int, cfg: Config) -> tuple[LiftArc, LiftArc]:
    """Lifts of the source and target of a connecting arrow, sharing the anchored endpoint."""
    connecting_vertices(family, index, cfg)
    ghm = cfg.last_slice
    extremal_outer = cfg.g * cfg.tube_truncation + cfg.g + 2

    if family == IOTA_0:
        return (
            LiftArc(outer(index), inner(cfg.h * cfg.m * (cfg.n + 1) + cfg.h)),
            LiftArc(outer(index), outer(extremal_outer)),
        )
    if family == KAPPA_0:
        source = LiftArc(outer(0), outer(extremal_outer - index))
        target = anchored_lift(last_slice_injective(index, cfg), Endpoint.END, extremal_outer - index, cfg)
        assert target is not None
        return source, target

    extremal_inner = -2 - cfg.h * (cfg.m * (cfg.n + 1) + cfg.h * cfg.m)
    k = inner_offset(index, cfg)
    if family == IOTA_INF:
        return LiftArc(outer(-ghm), inner(ghm + k)), LiftArc(inner(extremal_inner), inner(ghm + k))

    start = extremal_inner + cfg.h - k
    source = LiftArc(inner(start), inner(cfg.h + ghm))
    target = anchored_lift(last_slice_injective(index, cfg), Endpoint.START, start, cfg)
    assert target is not None
    return source, target


def connecting_arrow_endpoints(family: str, index: int, cfg: Config) -> tuple[AnnulusArc, AnnulusArc]:
    source, target = connecting_lifts(family, index, cfg)
    return project(source, cfg), project(target, cfg)


def connecting_move(family: str, index: int, cfg: Config) -> Move:
    source, target = connecting_arrow_endpoints(family, index, cfg)
    return long_move(source, target, cfg, connecting_label(family, index))


def connecting_labels(cfg: Config) -> Iterator[tuple[str, int]]:
    for family in CONNECTING_FAMILIES:
        for index in connecting_indices(family, cfg):
            yield family, index


@logged_stage('bijection check')
def verify_bijection(
    cfg: Config,
    gamma: TranslationQuiver[AnnulusArc] | None = None,
    brustle: TranslationQuiver[BrustleVertex] | None = None,
) -> Report:
    if gamma is None:
        gamma = build_gamma_bar_m(cfg)
    if brustle is None:
        brustle = build_qm_prime(cfg)
    report = Report(title=f'bijection {gamma.name} -> {brustle.name}')

    images: dict[AnnulusArc, BrustleVertex] = {}
    unmapped: list[str] = []
    for vertex in gamma:
        try:
            images[vertex.key] = f_vertex(vertex.key, cfg)
        except UnknownVertexError:
            unmapped.append(str(vertex.key))
    wrong_component = [str(arc) for arc, image in images.items() if image.component is not gamma.component(arc)]
    image_set = set(images.values())
    missed = [str(vertex.key) for vertex in brustle if vertex.key not in image_set]
    injective = len(image_set) == len(images)
    report.add(
        '(i) vertex bijection',
        not unmapped and not wrong_component and not missed and injective and len(gamma) == len(brustle),
        f'{len(gamma)} vs {len(brustle)} vertices; unmapped {unmapped[:3]}, '
        f'component changes {wrong_component[:3]}, not hit {missed[:3]}',
    )

    def mapped(counter: Counter[tuple[AnnulusArc, AnnulusArc]]) -> Counter[tuple[BrustleVertex, BrustleVertex]]:
        result: Counter[tuple[BrustleVertex, BrustleVertex]] = Counter()
        for (source, target), count in counter.items():
            if source in images and target in images:
                result[(images[source], images[target])] += count
        return result

    geometric = mapped(gamma.arrow_counter(ArrowKind.ELEMENTARY))
    coordinate = brustle.arrow_counter(ArrowKind.ELEMENTARY)
    report.add(
        '(ii) elementary arrows',
        geometric == coordinate,
        f'only geometric {[str(pair) for pair in (geometric - coordinate)][:3]}, '
        f'only coordinate {[str(pair) for pair in (coordinate - geometric)][:3]}',
    )

    mismatches = []
    for vertex in gamma:
        if vertex.key not in images:
            continue
        geometric_tau = gamma.tau_of(vertex.key)
        expected = None if geometric_tau is None else images.get(geometric_tau)
        actual = brustle.tau_of(images[vertex.key]) if images[vertex.key] in brustle else None
        if expected != actual:
            mismatches.append(f'{vertex.key}: F(tau) = {expected}, tau(F) = {actual}')
    report.add('(iii) F commutes with tau', not mismatches, '; '.join(mismatches[:3]))

    logger.info(f'Bijection check: {len(report.failures)} of {len(report.checks)} checks failed')
    return report


def anchored_walk(
    lift: LiftArc, free: Endpoint, quiver: TranslationQuiver[AnnulusArc], backwards: bool = False
) -> Iterator[LiftArc]:
    """Lifts reached from lift by elementary arrows of the quiver that keep the other endpoint fixed."""
    cfg = quiver.cfg
    current = lift
    while True:
        yield current
        try:
            if backwards:
                point = current.point(free)
                following = current.with_point(free, point.shifted(1 if point.boundary is Boundary.OUTER else -1))
            else:
                following = step_lift(current, free)
        except (MoveError, InvalidArcError):
            return
        before, after = (following, current) if backwards else (current, following)
        if not quiver.has_arrow(project(before, cfg), project(after, cfg), ArrowKind.ELEMENTARY):
            return
        current = following


def factored_long_pairs(quiver: TranslationQuiver[AnnulusArc]) -> dict[tuple[AnnulusArc, AnnulusArc], str]:
    """
    Every (u, v) obtained as an anchored elementary path into a connecting source, the connecting
    arrow, and an anchored elementary path out of its target; mapped to the connecting label used.
    """
    cfg = quiver.cfg
    pairs: dict[tuple[AnnulusArc, AnnulusArc], str] = {}
    for family, index in connecting_labels(cfg):
        source_lift, target_lift = connecting_lifts(family, index, cfg)
        free = opposite(CONNECTING_ANCHORS[family])
        sources = [project(lift, cfg) for lift in anchored_walk(source_lift, free, quiver, backwards=True)]
        targets = [project(lift, cfg) for lift in anchored_walk(target_lift, free, quiver)]
        for source in sources:
            for target in targets:
                pairs.setdefault((source, target), connecting_label(family, index))
    return pairs


@logged_stage('isomorphism check')
def verify_isomorphism(cfg: Config, gamma: TranslationQuiver[AnnulusArc] | None = None) -> Report:
    if gamma is None:
        gamma = build_gamma_bar_m(cfg)
    brustle = build_qm_prime(cfg)
    report = verify_bijection(cfg, gamma, brustle)
    report.title = f'isomorphism {gamma.name} -> {brustle.name}'

    broken = []
    for family, index in connecting_labels(cfg):
        label = connecting_label(family, index)
        source_lift, target_lift = connecting_lifts(family, index, cfg)
        try:
            move = connecting_move(family, index, cfg)
            propagated = apply_move_lift(move, source_lift, cfg)
        except MoveError as e:
            broken.append(f'{label}: {e.message}')
            continue
        if propagated != target_lift:
            broken.append(f'{label}: lift {propagated} instead of {target_lift}')
        images = (f_vertex(move.source, cfg), f_vertex(move.target, cfg))
        if images != connecting_vertices(family, index, cfg):
            broken.append(f'{label}: F gives {images[0]} -> {images[1]}')
        if move.anchor is not CONNECTING_ANCHORS[family]:
            broken.append(f'{label}: anchored at the {move.anchor.value} point')
    report.add('(iv) connecting arrows are long moves', not broken, '; '.join(broken[:3]))

    long_pairs = {(gamma.key(arrow.source), gamma.key(arrow.target)) for arrow in gamma.arrows_of_kind(ArrowKind.LONG)}
    factored = factored_long_pairs(gamma)
    not_factoring = [f'{u} -> {v}' for u, v in long_pairs if (u, v) not in factored]
    not_present = [f'{u} -> {v} via {label}' for (u, v), label in factored.items() if (u, v) not in long_pairs]
    report.add(
        '(v) long arrows factor through connecting arrows',
        not not_factoring and not not_present,
        f'{len(long_pairs)} long arrows; not factoring {sorted(not_factoring)[:3]}; '
        f'missing long arrows {sorted(not_present)[:3]}',
    )

    logger.info(f'Isomorphism check of {gamma.name}: {len(report.failures)} failed checks')
    return report
