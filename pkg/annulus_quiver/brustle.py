"""
Brüstle's coordinate quiver Q'_m, built from vertex coordinates alone.

Coordinates are (r,i)_P and (r,i)_I for the preprojective and preinjective slices, (r,s)_g and (r,s)_h
for the two exceptional tubes. The Th column called 0 in the literature is stored as h.
"""

from collections.abc import Iterator

from .constants import CONNECTING_FAMILIES, IOTA_0, IOTA_INF, KAPPA_0, KAPPA_INF
from .exceptions import UnknownVertexError
from .quiver import TranslationQuiver
from .schema import ArrowKind, BrustleVertex, Component, Config
from .utils import logged_stage, logger, wrap_residue


def tube_top(component: Component, s: int, cfg: Config) -> int:
    """Highest level of column s kept in the truncated tube."""
    if component is Component.TG:
        return cfg.g * cfg.tube_truncation + s
    top = cfg.h * cfg.tube_truncation + cfg.h
    return top if s == cfg.h else top - s


def contains(vertex: BrustleVertex, cfg: Config) -> bool:
    if vertex.component in (Component.P, Component.I):
        return 0 <= vertex.r <= cfg.last_slice and 0 <= vertex.index <= cfg.n
    rank = cfg.g if vertex.component is Component.TG else cfg.h
    return 1 <= vertex.index <= rank and 0 <= vertex.r <= tube_top(vertex.component, vertex.index, cfg)


def brustle_tau(vertex: BrustleVertex, cfg: Config) -> BrustleVertex | None:
    match vertex.component:
        case Component.P:
            image = BrustleVertex(Component.P, vertex.r - 1, vertex.index)
        case Component.I:
            image = BrustleVertex(Component.I, vertex.r + 1, vertex.index)
        case Component.TG:
            image = BrustleVertex(Component.TG, vertex.r, wrap_residue(vertex.index + 1, cfg.g))
        case Component.TH:
            image = BrustleVertex(Component.TH, vertex.r, wrap_residue(vertex.index - 1, cfg.h))
        case _:
            return None
    return image if contains(image, cfg) else None


def _slice_arrows(cfg: Config) -> Iterator[tuple[BrustleVertex, BrustleVertex, str]]:
    """Arrows of the preprojective component, second coordinates taken modulo n+1."""
    size = cfg.n + 1

    def p(r: int, i: int) -> BrustleVertex:
        return BrustleVertex(Component.P, r, i % size)

    for r in range(cfg.last_slice + 1):
        for i in range(cfg.g):
            yield p(r, i + 1), p(r, i), f'({r},beta_{i})'
            yield p(r, i), p(r + 1, i + 1), f"({r},beta_{i}')"
        for i in range(cfg.g, cfg.n + 1):
            yield p(r, i), p(r, i + 1), f'({r},alpha_{i})'
            yield p(r, i + 1), p(r + 1, i), f"({r},alpha_{i}')"


def _tube_arrows(component: Component, cfg: Config) -> Iterator[tuple[BrustleVertex, BrustleVertex, str]]:
    rank = cfg.g if component is Component.TG else cfg.h
    suffix = '0' if component is Component.TG else 'inf'
    # pi(r,s) comes down from column s+1 in the outer tube and from column s-1 in the inner one
    shift = 1 if component is Component.TG else -1
    for s in range(1, rank + 1):
        for r in range(tube_top(component, s, cfg) + 1):
            yield BrustleVertex(component, r, s), BrustleVertex(component, r + 1, s), f'rho_{suffix}({r},{s})'
            upper = BrustleVertex(component, r + 1, wrap_residue(s + shift, rank))
            yield upper, BrustleVertex(component, r, s), f'pi_{suffix}({r},{s})'


def connecting_indices(family: str, cfg: Config) -> list[int]:
    if family in (IOTA_0, KAPPA_0):
        return list(range(cfg.g + 1))
    if family in (IOTA_INF, KAPPA_INF):
        return [0, *range(cfg.g, cfg.n + 1)]
    raise UnknownVertexError(f'Unknown connecting family {family!r}', family)


def connecting_label(family: str, index: int) -> str:
    return f'{family}({index})'


def inner_offset(y: int, cfg: Config) -> int:
    """k with iota_inf(y) landing at level hN+k: y-g for y >= g, h for y = 0."""
    return cfg.h if y == 0 else y - cfg.g


def connecting_vertices(family: str, index: int, cfg: Config) -> tuple[BrustleVertex, BrustleVertex]:
    if index not in connecting_indices(family, cfg):
        raise UnknownVertexError(f'{connecting_label(family, index)} is not a connecting arrow', f'{family}({index})')

    last = cfg.last_slice
    if family in (IOTA_0, KAPPA_0):
        level = cfg.g * cfg.tube_truncation + cfg.g - index
        if family == IOTA_0:
            return BrustleVertex(Component.P, last, index), BrustleVertex(Component.TG, level, cfg.g)
        column = wrap_residue(cfg.g - index, cfg.g)
        return BrustleVertex(Component.TG, level, column), BrustleVertex(Component.I, last, index)

    k = inner_offset(index, cfg)
    level = cfg.h * cfg.tube_truncation + k
    if family == IOTA_INF:
        return BrustleVertex(Component.P, last, index), BrustleVertex(Component.TH, level, cfg.h)
    column = wrap_residue(cfg.h - k, cfg.h)
    return BrustleVertex(Component.TH, level, column), BrustleVertex(Component.I, last, index)


def brustle_vertices(cfg: Config) -> Iterator[BrustleVertex]:
    for component in (Component.P, Component.I):
        for i in range(cfg.n + 1):
            for r in range(cfg.last_slice + 1):
                yield BrustleVertex(component, r, i)
    for component, rank in ((Component.TG, cfg.g), (Component.TH, cfg.h)):
        for s in range(1, rank + 1):
            for r in range(tube_top(component, s, cfg) + 1):
                yield BrustleVertex(component, r, s)


@logged_stage('brustle quiver')
def build_qm_prime(cfg: Config) -> TranslationQuiver[BrustleVertex]:
    quiver: TranslationQuiver[BrustleVertex] = TranslationQuiver(f"Q'_{cfg.m}({cfg.g},{cfg.h})", cfg)
    for vertex in brustle_vertices(cfg):
        quiver.add_vertex(vertex, vertex.component)

    def add(source: BrustleVertex, target: BrustleVertex, label: str, kind: ArrowKind) -> None:
        if contains(source, cfg) and contains(target, cfg):
            quiver.add_arrow(source, target, kind, label)

    slice_arrows = list(_slice_arrows(cfg))
    for source, target, label in slice_arrows:
        add(source, target, label, ArrowKind.ELEMENTARY)
    # the preinjective component is the mirror image of the preprojective one
    for source, target, label in slice_arrows:
        add(
            BrustleVertex(Component.I, target.r, target.index),
            BrustleVertex(Component.I, source.r, source.index),
            label,
            ArrowKind.ELEMENTARY,
        )
    for component in (Component.TG, Component.TH):
        for source, target, label in _tube_arrows(component, cfg):
            add(source, target, label, ArrowKind.ELEMENTARY)

    for family in CONNECTING_FAMILIES:
        for index in connecting_indices(family, cfg):
            source, target = connecting_vertices(family, index, cfg)
            quiver.add_arrow(source, target, ArrowKind.CONNECTING, connecting_label(family, index))

    for vertex in quiver:
        image = brustle_tau(vertex.key, cfg)
        if image is not None:
            quiver.set_tau(vertex.key, image)

    connecting = len(quiver.arrows_of_kind(ArrowKind.CONNECTING))
    logger.info(f'Built {quiver.name}: {len(quiver)} vertices, {len(quiver.arrows)} arrows ({connecting} connecting)')
    return quiver
