from .constants import DEFAULT_MAX_LEVEL
from .exceptions import InvalidArcError, MoveError, NotAdmissibleError
from .geometry import (
    anchored_lift,
    classify,
    elementary_lift_preimages,
    elementary_lift_steps,
    injective_lift,
    inner,
    outer,
    peripheral_level,
    project,
)
from .schema import (
    ZERO,
    AnnulusArc,
    ArcClass,
    Boundary,
    Config,
    Endpoint,
    LiftArc,
    Move,
    MoveKind,
    MoveWord,
    TubeStep,
    Zero,
    ZeroOrArc,
)
from .utils import logger

# (source class, target class) -> endpoint the long move keeps fixed
LONG_MOVE_ANCHORS = {
    (ArcClass.PREPROJECTIVE, ArcClass.PERIPHERAL_OUTER): Endpoint.START,
    (ArcClass.PREPROJECTIVE, ArcClass.PERIPHERAL_INNER): Endpoint.END,
    (ArcClass.PERIPHERAL_OUTER, ArcClass.PREINJECTIVE): Endpoint.END,
    (ArcClass.PERIPHERAL_INNER, ArcClass.PREINJECTIVE): Endpoint.START,
}


def opposite(endpoint: Endpoint) -> Endpoint:
    return Endpoint.END if endpoint is Endpoint.START else Endpoint.START


def step_lift(lift: LiftArc, free: Endpoint) -> LiftArc:
    """One elementary rotation of lift moving its free endpoint."""
    for moved_endpoint, moved in elementary_lift_steps(lift):
        if moved_endpoint is free:
            return moved
    raise MoveError(f'No elementary move of {lift} moves its {free.value} point', str(lift))


def elementary_moves(arc: AnnulusArc, cfg: Config) -> list[tuple[Move, AnnulusArc]]:
    if classify(arc, cfg) is ArcClass.NOT_ADMISSIBLE:
        raise NotAdmissibleError(f'{arc} is not admissible', str(arc))

    moves = []
    for free, moved in elementary_lift_steps(arc.canonical):
        target = project(moved, cfg)
        moves.append((Move(MoveKind.ELEMENTARY, opposite(free), arc, target), target))
    return moves


def elementary_predecessors(arc: AnnulusArc, cfg: Config) -> list[tuple[Move, AnnulusArc]]:
    """Elementary moves ending at arc, paired with their sources."""
    moves = []
    for free, moved in elementary_lift_preimages(arc.canonical):
        source = project(moved, cfg)
        moves.append((Move(MoveKind.ELEMENTARY, opposite(free), source, arc), source))
    return moves


def long_move_anchor(source: AnnulusArc, target: AnnulusArc, cfg: Config) -> Endpoint | None:
    """The fixed endpoint of the long move source -> target, or None when there is no such move."""
    anchor = LONG_MOVE_ANCHORS.get((classify(source, cfg), classify(target, cfg)))
    if anchor is None:
        return None

    source_point = source.canonical.point(anchor)
    target_point = target.canonical.point(anchor)
    if source_point.boundary is not target_point.boundary:
        return None
    period = cfg.period(source_point.boundary)
    if (source_point.index - target_point.index) % period:
        return None
    return anchor


def is_long_move(source: AnnulusArc, target: AnnulusArc, cfg: Config) -> bool:
    return long_move_anchor(source, target, cfg) is not None


def long_move(source: AnnulusArc, target: AnnulusArc, cfg: Config, label: str = '') -> Move:
    anchor = long_move_anchor(source, target, cfg)
    if anchor is None:
        raise MoveError(f'There is no long move from {source} to {target}', str(source), str(target))
    return Move(MoveKind.LONG, anchor, source, target, label)


def long_moves(arc: AnnulusArc, cfg: Config, max_level: int = DEFAULT_MAX_LEVEL) -> list[Move]:
    """
    Long moves out of arc, cut off at tube level max_level (preprojective sources)
    or at preinjective depth max_level (tube sources).
    """
    arc_class = classify(arc, cfg)
    lift = arc.canonical
    targets: list[AnnulusArc] = []

    if arc_class is ArcClass.PREPROJECTIVE:
        start, end = lift.start.index, lift.end.index
        targets.extend(project(LiftArc(outer(start), outer(start + 2 + level)), cfg) for level in range(max_level + 1))
        targets.extend(project(LiftArc(inner(end - 2 - level), inner(end)), cfg) for level in range(max_level + 1))
    elif arc_class in (ArcClass.PERIPHERAL_OUTER, ArcClass.PERIPHERAL_INNER):
        for depth in range(max_level + 1):
            for i in range(cfg.n + 1):
                candidate = project(injective_lift(i, depth, cfg), cfg)
                if is_long_move(arc, candidate, cfg):
                    targets.append(candidate)

    return [long_move(arc, target, cfg) for target in targets]


def apply_move_lift(move: Move, source_lift: LiftArc, cfg: Config) -> LiftArc:
    """The lift of move.target whose anchored endpoint coincides with that of source_lift."""
    if project(source_lift, cfg) != move.source:
        raise MoveError(f'{source_lift} is not a lift of {move.source}', str(source_lift), str(move.source))

    anchor_point = source_lift.point(move.anchor)
    if move.target.canonical.point(move.anchor).boundary is not anchor_point.boundary:
        raise MoveError(f'{move} moves the anchored endpoint across boundaries', str(source_lift), str(move.target))

    target_lift = anchored_lift(move.target, move.anchor, anchor_point.index, cfg)
    if target_lift is None:
        raise MoveError(f'{move} does not fix the {move.anchor.value} point', str(source_lift), str(move.target))
    return target_lift


def tube_level(arc: LiftArc | AnnulusArc) -> int:
    lift = arc.canonical if isinstance(arc, AnnulusArc) else arc
    if not lift.is_peripheral:
        raise MoveError(f'{lift} does not lie in a tube', str(lift))
    return peripheral_level(lift)


def tube_free_endpoint(boundary: Boundary, step: TubeStep) -> Endpoint:
    """Outer tubes go up by moving the start point, inner tubes by moving the end point."""
    if boundary is Boundary.OUTER:
        return Endpoint.START if step is TubeStep.UP else Endpoint.END
    return Endpoint.END if step is TubeStep.UP else Endpoint.START


def tube_step(move: Move) -> TubeStep:
    if move.kind is not MoveKind.ELEMENTARY or not move.source.is_peripheral:
        raise MoveError(f'{move} is not a tube move', str(move.source), str(move.target))
    return TubeStep.UP if tube_level(move.target) > tube_level(move.source) else TubeStep.DOWN


def _tube_walk(lift: LiftArc, steps: list[TubeStep]) -> ZeroOrArc:
    current = lift
    for step in steps:
        free = tube_free_endpoint(current.start.boundary, step)
        point = current.point(free)
        try:
            current = current.with_point(free, point.shifted(-1 if point.boundary is Boundary.OUTER else 1))
        except InvalidArcError:
            return ZERO
    return current


def f_down_up_g(lift: LiftArc, cfg: Config) -> ZeroOrArc:
    """g moves down the outer tube followed by g moves up."""
    if not (lift.is_peripheral and lift.start.boundary is Boundary.OUTER):
        raise MoveError(f'{lift} is not a peripheral arc on the outer boundary', str(lift))
    return _tube_walk(lift, [TubeStep.DOWN] * cfg.g + [TubeStep.UP] * cfg.g)


def f_up_down_h(lift: LiftArc, cfg: Config) -> ZeroOrArc:
    """
    h moves up the inner tube followed by h moves down.

    By the tube meshes this equals h moves down followed by h moves up, which is
    zero as soon as a down move would leave the mouth.
    """
    if not (lift.is_peripheral and lift.start.boundary is Boundary.INNER):
        raise MoveError(f'{lift} is not a peripheral arc on the inner boundary', str(lift))
    return _tube_walk(lift, [TubeStep.DOWN] * cfg.h + [TubeStep.UP] * cfg.h)


class WordBuilder:
    """
    Builds a MoveWord step by step from a concrete lift, tracking the lift reached so far.
    """

    def __init__(self, start: LiftArc, cfg: Config) -> None:
        self.cfg = cfg
        self.start = start
        self.lift = start
        self.moves: list[Move] = []

    @property
    def arc(self) -> AnnulusArc:
        return project(self.lift, self.cfg)

    def step(self, free: Endpoint, label: str = '', count: int = 1) -> 'WordBuilder':
        for _ in range(count):
            moved = step_lift(self.lift, free)
            self.moves.append(Move(MoveKind.ELEMENTARY, opposite(free), self.arc, project(moved, self.cfg), label))
            self.lift = moved
        return self

    def up(self, count: int = 1, label: str = '') -> 'WordBuilder':
        free = tube_free_endpoint(self.lift.start.boundary, TubeStep.UP)
        return self.step(free, label or ('rho_0' if self.lift.start.boundary is Boundary.OUTER else 'rho_inf'), count)

    def down(self, count: int = 1, label: str = '') -> 'WordBuilder':
        free = tube_free_endpoint(self.lift.start.boundary, TubeStep.DOWN)
        return self.step(free, label or ('pi_0' if self.lift.start.boundary is Boundary.OUTER else 'pi_inf'), count)

    def long(self, target: AnnulusArc, label: str = '') -> 'WordBuilder':
        return self.move(long_move(self.arc, target, self.cfg, label))

    def move(self, move: Move) -> 'WordBuilder':
        self.lift = apply_move_lift(move, self.lift, self.cfg)
        self.moves.append(move)
        return self

    def extend(self, moves: tuple[Move, ...] | list[Move]) -> 'WordBuilder':
        for move in moves:
            self.move(move)
        return self

    def build(self) -> MoveWord:
        return MoveWord(tuple(self.moves))


def _is_tube_move(move: Move) -> bool:
    return move.kind is MoveKind.ELEMENTARY and move.source.is_peripheral


def push_down(word: MoveWord, source_lift: LiftArc, cfg: Config) -> MoveWord | Zero:
    """
    Mesh-swap every tube segment of word into all-down-then-all-up form. An up step leaving the mouth
    followed by a down step can only be swapped through the 3-vertex mesh, so the word is zero.
    """
    moves = list(word.moves)
    result: list[Move] = []
    lift = source_lift
    position = 0
    while position < len(moves):
        if not _is_tube_move(moves[position]):
            lift = apply_move_lift(moves[position], lift, cfg)
            result.append(moves[position])
            position += 1
            continue

        end = position
        while end < len(moves) and _is_tube_move(moves[end]):
            end += 1
        steps = [tube_step(move) for move in moves[position:end]]
        start_level = tube_level(lift)

        swapped = True
        while swapped:
            swapped = False
            level = start_level
            for k in range(len(steps) - 1):
                if steps[k] is TubeStep.UP and steps[k + 1] is TubeStep.DOWN:
                    if level == 0:
                        logger.debug(f'Push down hits the mouth at {project(lift, cfg)} step {k}')
                        return ZERO
                    steps[k], steps[k + 1] = TubeStep.DOWN, TubeStep.UP
                    swapped = True
                level += 1 if steps[k] is TubeStep.UP else -1

        builder = WordBuilder(lift, cfg)
        for step in steps:
            if step is TubeStep.UP:
                builder.up()
            else:
                builder.down()
        result.extend(builder.moves)
        lift = builder.lift
        position = end

    return MoveWord(tuple(result))


def evaluate_word(word: MoveWord, source_lift: LiftArc, cfg: Config) -> ZeroOrArc:
    """Value of word on source_lift, after pushing each tube segment down through the meshes."""
    pushed = push_down(word, source_lift, cfg)
    if isinstance(pushed, Zero):
        return ZERO
    current = source_lift
    for move in pushed.moves:
        current = apply_move_lift(move, current, cfg)
    return current
