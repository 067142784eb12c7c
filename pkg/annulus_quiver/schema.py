from dataclasses import dataclass, field
from enum import Enum

from .constants import INNER_SUFFIX, MIN_PERIPHERAL_GAP, OUTER_SUFFIX
from .exceptions import InvalidArcError, InvalidConfigError, MoveError


class Boundary(str, Enum):
    OUTER = OUTER_SUFFIX
    INNER = INNER_SUFFIX


class ArcClass(str, Enum):
    PREPROJECTIVE = 'preprojective'
    PREINJECTIVE = 'preinjective'
    PERIPHERAL_OUTER = 'peripheral_outer'
    PERIPHERAL_INNER = 'peripheral_inner'
    NOT_ADMISSIBLE = 'not_admissible'


class Component(str, Enum):
    P = 'P'
    I = 'I'  # noqa: E741
    TG = 'Tg'
    TH = 'Th'
    ETA = 'eta'


class Endpoint(str, Enum):
    START = 'start'
    END = 'end'


class MoveKind(str, Enum):
    ELEMENTARY = 'elementary'
    LONG = 'long'


class TubeStep(str, Enum):
    UP = 'up'
    DOWN = 'down'


class ArrowKind(str, Enum):
    ELEMENTARY = 'elementary'
    LONG = 'long'
    CONNECTING = 'connecting'


class RuleKind(str, Enum):
    MESH_SWAP = 'mesh_swap'
    ZERO_KILL = 'zero_kill'
    DIAMOND_SWAP = 'diamond_swap'
    TRIANGLE_COLLAPSE = 'triangle_collapse'


class QuiverMode(str, Enum):
    AR = 'ar'
    CLUSTER = 'cluster'
    BRUSTLE = 'brustle'


class Suite(str, Enum):
    ISO = 'iso'
    RELATIONS = 'relations'
    MESH = 'mesh'
    ORACLE = 'oracle'
    CLUSTER = 'cluster'
    ALL = 'all'


class ExportFormat(str, Enum):
    DOT = 'dot'
    JSON = 'json'


@dataclass(frozen=True)
class Config:
    """
    Annulus with g marked points on the outer boundary and h on the inner one,
    truncated at parameter m.
    """

    g: int
    h: int
    m: int

    def __post_init__(self) -> None:
        for name in ('g', 'h', 'm'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InvalidConfigError(f'{name} must be a positive integer, got {value!r}', name, value)
        if self.g < self.h:
            raise InvalidConfigError(f'g must be at least h, got g={self.g}, h={self.h}', 'g', self.g)

    @property
    def n(self) -> int:
        return self.g + self.h - 1

    @property
    def tube_truncation(self) -> int:
        """N = 2m(n+1), the truncation parameter of both exceptional tubes."""
        return 2 * self.m * (self.n + 1)

    @property
    def last_slice(self) -> int:
        """ghm, the index of the last slice kept in the preprojective and preinjective components."""
        return self.g * self.h * self.m

    def period(self, boundary: Boundary) -> int:
        return self.g if boundary is Boundary.OUTER else self.h


@dataclass(frozen=True, order=True)
class LiftPoint:
    boundary: Boundary
    index: int

    def __str__(self) -> str:
        return f'{self.index}{self.boundary.value}'

    def shifted(self, delta: int) -> 'LiftPoint':
        return LiftPoint(self.boundary, self.index + delta)


@dataclass(frozen=True, order=True)
class LiftArc:
    """Oriented arc in the universal cover, given by its two integer-indexed endpoints."""

    start: LiftPoint
    end: LiftPoint

    def __post_init__(self) -> None:
        if self.start.boundary is self.end.boundary and self.start.index > self.end.index - MIN_PERIPHERAL_GAP:
            raise InvalidArcError(f'{self} is a boundary segment, not an arc', str(self))

    def __str__(self) -> str:
        return f'[{self.start},{self.end}]'

    @property
    def is_peripheral(self) -> bool:
        return self.start.boundary is self.end.boundary

    @property
    def is_bridging(self) -> bool:
        return not self.is_peripheral

    def point(self, endpoint: Endpoint) -> LiftPoint:
        return self.start if endpoint is Endpoint.START else self.end

    def with_point(self, endpoint: Endpoint, point: LiftPoint) -> 'LiftArc':
        if endpoint is Endpoint.START:
            return LiftArc(point, self.end)
        return LiftArc(self.start, point)


@dataclass(frozen=True, order=True)
class AnnulusArc:
    """σ-class of lifts, stored through its canonical lift."""

    canonical: LiftArc

    def __str__(self) -> str:
        return f'pi{self.canonical}'

    @property
    def is_peripheral(self) -> bool:
        return self.canonical.is_peripheral


@dataclass(frozen=True, order=True)
class UnorientedArc:
    """Arc with its orientation forgotten; bridging arcs keep the outer endpoint first."""

    canonical: LiftArc

    def __str__(self) -> str:
        return f'{{{self.canonical.start},{self.canonical.end}}}'


@dataclass(frozen=True, order=True)
class BrustleVertex:
    component: Component
    r: int
    index: int

    def __str__(self) -> str:
        suffix = {Component.TG: 'g', Component.TH: 'h'}.get(self.component, self.component.value)
        return f'({self.r},{self.index})_{suffix}'


@dataclass(frozen=True)
class Zero:
    """The zero morphism; absorbs every further move."""

    def __str__(self) -> str:
        return '0'


ZERO = Zero()
ZeroOrArc = LiftArc | Zero


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    anchor: Endpoint
    source: AnnulusArc
    target: AnnulusArc
    label: str = field(default='', compare=False)

    def __str__(self) -> str:
        name = self.label or self.kind.value
        return f'{name}: {self.source} -> {self.target}'

    @property
    def free(self) -> Endpoint:
        return Endpoint.END if self.anchor is Endpoint.START else Endpoint.START


@dataclass(frozen=True)
class MoveWord:
    """Composable sequence of moves, applied left to right."""

    moves: tuple[Move, ...] = ()

    def __post_init__(self) -> None:
        for first, second in zip(self.moves, self.moves[1:]):
            if first.target != second.source:
                raise MoveError(
                    f'Moves are not composable: {first} then {second}', str(first.target), str(second.source)
                )

    def __len__(self) -> int:
        return len(self.moves)

    def __str__(self) -> str:
        return ' . '.join(move.label or move.kind.value for move in self.moves) or 'id'

    @property
    def long_count(self) -> int:
        return sum(1 for move in self.moves if move.kind is MoveKind.LONG)


@dataclass(frozen=True)
class RewriteRule:
    kind: RuleKind
    family: str
    pattern: tuple[Move, ...]
    replacement: tuple[Move, ...] = ()

    def __str__(self) -> str:
        return f'{self.kind.value}[{self.family}]'


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: str = ''


@dataclass
class Report:
    title: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def add(self, name: str, passed: bool, witness: str = '') -> CheckResult:
        check = CheckResult(name=name, passed=passed, witness=witness)
        self.checks.append(check)
        return check

    def extend(self, other: 'Report') -> None:
        self.checks.extend(other.checks)


@dataclass
class ExportConfig:
    g: int
    h: int
    m: int
    n: int
    tube_truncation: int


@dataclass
class ExportVertex:
    id: int
    component: Component
    key: str
    arc: str | None = None
    brustle: str | None = None


@dataclass
class ExportArrow:
    id: int
    source: int
    target: int
    kind: ArrowKind
    label: str = ''
    anchor: Endpoint | None = None


@dataclass
class ExportTauPair:
    source: int
    target: int


@dataclass
class ExportDocument:
    config: ExportConfig
    mode: QuiverMode
    vertices: list[ExportVertex] = field(default_factory=list)
    arrows: list[ExportArrow] = field(default_factory=list)
    tau: list[ExportTauPair] = field(default_factory=list)
    report: Report | None = None
