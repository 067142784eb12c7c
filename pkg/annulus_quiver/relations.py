"""
Relations of the truncated quiver as rewrite rules on move words, and directed checks of the
connecting-arrow identities.

Word equalities are established by following a fixed strategy (collapse triangles, swap one diamond,
push a tube segment down) rather than by searching the rewrite closure.
"""

from collections import Counter, defaultdict
from collections.abc import Iterable, Sequence

from .arquiver import build_gamma_bar_m, mesh_predecessors, mesh_successors
from .brustle import connecting_label
from .constants import IOTA_0, IOTA_INF, KAPPA_0, KAPPA_INF
from .correspondence import (
    anchored_walk,
    connecting_labels,
    connecting_lifts,
    connecting_move,
    factored_long_pairs,
    last_slice_injective,
)
from .exceptions import InvalidArcError, MoveError
from .geometry import anchored_lift, inner, outer, project, sigma_distance
from .moves import WordBuilder, apply_move_lift, evaluate_word, opposite, push_down
from .quiver import QuiverArrow, TranslationQuiver, interior_meshes
from .schema import (
    AnnulusArc,
    ArrowKind,
    Component,
    Config,
    Endpoint,
    LiftArc,
    LiftPoint,
    Move,
    MoveKind,
    MoveWord,
    Report,
    RewriteRule,
    RuleKind,
    Zero,
)
from .utils import logged_stage, logger

DIAMOND_FAMILIES = {
    (Component.P, Component.TG): 'A',
    (Component.P, Component.TH): 'B',
    (Component.TG, Component.I): 'C',
    (Component.TH, Component.I): 'D',
}


def arrow_move(quiver: TranslationQuiver[AnnulusArc], arrow: QuiverArrow) -> Move:
    if arrow.anchor is None:
        raise MoveError(f'Arrow {arrow.id} of {quiver.name} carries no anchor', str(quiver.key(arrow.source)))
    kind = MoveKind.ELEMENTARY if arrow.kind is ArrowKind.ELEMENTARY else MoveKind.LONG
    return Move(kind, arrow.anchor, quiver.key(arrow.source), quiver.key(arrow.target), arrow.label)


@logged_stage('mesh relations')
def generate_mesh_relations(quiver: TranslationQuiver[AnnulusArc]) -> list[RewriteRule]:
    """
    A swap in both directions for every 4-vertex mesh and a zero rule for every 3-vertex mesh.
    Paths through a mesh are grouped by the lift they reach, which separates parallel arrows.
    """
    cfg = quiver.cfg
    rules = []
    for key, into, out_of_tau in interior_meshes(quiver, mesh_predecessors(cfg), mesh_successors(cfg)):
        if into != out_of_tau:
            continue
        start = quiver.tau_of(key)
        assert start is not None
        family = quiver.component(key).value
        paths: dict[LiftArc, list[tuple[Move, Move]]] = defaultdict(list)
        zero_paths = []
        for first in quiver.arrows_from(start, ArrowKind.ELEMENTARY):
            for second in quiver.arrows_between(quiver.key(first.target), key, ArrowKind.ELEMENTARY):
                path = (arrow_move(quiver, first), arrow_move(quiver, second))
                result = evaluate_word(MoveWord(path), start.canonical, cfg)
                if isinstance(result, Zero):
                    zero_paths.append(path)
                else:
                    paths[result].append(path)

        rules.extend(RewriteRule(RuleKind.ZERO_KILL, family, path) for path in zero_paths)
        for group in paths.values():
            for left in group:
                for right in group:
                    if left != right:
                        rules.append(RewriteRule(RuleKind.MESH_SWAP, family, left, right))

    counts = Counter(rule.kind.value for rule in rules)
    logger.info(f'Generated mesh relations for {quiver.name}: {dict(counts)}')
    return rules


def _replace_point(lift: LiftArc, endpoint: Endpoint, point: LiftPoint) -> LiftArc | None:
    try:
        return lift.with_point(endpoint, point)
    except InvalidArcError:
        return None


@logged_stage('diamond rules')
def generate_diamond_rules(quiver: TranslationQuiver[AnnulusArc]) -> list[RewriteRule]:
    """
    Squares X -> Y1 -> Z = X -> Y2 -> Z where X -> Y1 is elementary and moves the endpoint anchoring the
    long move X -> Y2; Z is Y2 with that endpoint moved along.
    """
    cfg = quiver.cfg
    rules = []
    for long_arrow in quiver.arrows_of_kind(ArrowKind.LONG):
        long_x_y2 = arrow_move(quiver, long_arrow)
        anchor = long_x_y2.anchor
        family = DIAMOND_FAMILIES[(quiver.component(long_x_y2.source), quiver.component(long_x_y2.target))]
        x_lift = long_x_y2.source.canonical
        y2_lift = apply_move_lift(long_x_y2, x_lift, cfg)

        for elementary in quiver.arrows_from(long_x_y2.source, ArrowKind.ELEMENTARY):
            if elementary.anchor is anchor:
                continue
            x_y1 = arrow_move(quiver, elementary)
            y1_lift = apply_move_lift(x_y1, x_lift, cfg)
            z_lift = _replace_point(y2_lift, anchor, y1_lift.point(anchor))
            if z_lift is None:
                continue
            z = project(z_lift, cfg)
            if z not in quiver or not quiver.has_arrow(x_y1.target, z, ArrowKind.LONG):
                continue
            y2_z = [
                arrow_move(quiver, arrow)
                for arrow in quiver.arrows_between(long_x_y2.target, z, ArrowKind.ELEMENTARY)
                if arrow.anchor is opposite(anchor)
            ]
            if not y2_z:
                continue
            y1_z = arrow_move(quiver, quiver.arrows_between(x_y1.target, z, ArrowKind.LONG)[0])
            rules.append(RewriteRule(RuleKind.DIAMOND_SWAP, family, (x_y1, y1_z), (long_x_y2, y2_z[0])))

    counts = Counter(rule.family for rule in rules)
    logger.info(f'Generated {len(rules)} diamonds for {quiver.name}: {dict(sorted(counts.items()))}')
    return rules


@logged_stage('triangle rules')
def generate_triangle_rules(quiver: TranslationQuiver[AnnulusArc]) -> list[RewriteRule]:
    """
    For every long arrow X -> Y: elementary-then-long (shape I) and long-then-elementary (shape II)
    paths with the same anchor collapse to X -> Y.
    """
    rules = []
    for long_arrow in quiver.arrows_of_kind(ArrowKind.LONG):
        long_x_y = arrow_move(quiver, long_arrow)
        x, y, anchor = long_x_y.source, long_x_y.target, long_x_y.anchor
        pair = f'{quiver.component(x).value}-{quiver.component(y).value}'

        for elementary in quiver.arrows_from(x, ArrowKind.ELEMENTARY):
            if elementary.anchor is not anchor:
                continue
            w = quiver.key(elementary.target)
            for long_w_y in quiver.arrows_between(w, y, ArrowKind.LONG):
                pattern = (arrow_move(quiver, elementary), arrow_move(quiver, long_w_y))
                rules.append(RewriteRule(RuleKind.TRIANGLE_COLLAPSE, f'{pair}:I', pattern, (long_x_y,)))

        for elementary in quiver.arrows_into(y, ArrowKind.ELEMENTARY):
            if elementary.anchor is not anchor:
                continue
            w = quiver.key(elementary.source)
            for long_x_w in quiver.arrows_between(x, w, ArrowKind.LONG):
                pattern = (arrow_move(quiver, long_x_w), arrow_move(quiver, elementary))
                rules.append(RewriteRule(RuleKind.TRIANGLE_COLLAPSE, f'{pair}:II', pattern, (long_x_y,)))

    logger.info(f'Generated {len(rules)} triangle collapses for {quiver.name}')
    return rules


CollapseIndex = dict[tuple[Move, ...], RewriteRule]


def _collapse_index(rules: Iterable[RewriteRule]) -> CollapseIndex:
    return {rule.pattern: rule for rule in rules if rule.kind is RuleKind.TRIANGLE_COLLAPSE}


def _reduce(moves: Sequence[Move], collapses: CollapseIndex) -> tuple[tuple[Move, ...], list[RewriteRule]]:
    current = list(moves)
    applied: list[RewriteRule] = []
    position = 0
    while position < len(current) - 1:
        rule = collapses.get((current[position], current[position + 1]))
        if rule is None:
            position += 1
            continue
        current[position : position + 2] = rule.replacement
        applied.append(rule)
        position = max(position - 1, 0)
    return tuple(current), applied


def reduce_word_trace(word: MoveWord, rules: Iterable[RewriteRule]) -> tuple[MoveWord, list[RewriteRule]]:
    """Collapse triangles until none applies; returns the reduced word and the collapses used in order."""
    moves, applied = _reduce(word.moves, _collapse_index(rules))
    return MoveWord(moves), applied


def reduce_word(word: MoveWord, rules: Iterable[RewriteRule]) -> MoveWord:
    reduced, _ = reduce_word_trace(word, rules)
    return reduced


def rewrite_once(
    word: MoveWord, rules: Iterable[RewriteRule], family: str | None = None, reverse: bool = False
) -> tuple[MoveWord, RewriteRule] | None:
    """Apply the first swap rule whose pattern (or replacement, when reverse) occurs in word."""
    index: dict[tuple[Move, ...], RewriteRule] = {}
    for rule in rules:
        if rule.kind in (RuleKind.DIAMOND_SWAP, RuleKind.MESH_SWAP) and (family is None or rule.family == family):
            index[rule.replacement if reverse else rule.pattern] = rule

    moves = word.moves
    for position in range(len(moves) - 1):
        rule = index.get(moves[position : position + 2])
        if rule is None:
            continue
        replacement = rule.pattern if reverse else rule.replacement
        return MoveWord(moves[:position] + replacement + moves[position + 2 :]), rule
    return None


def last_slice_projective_lift(index: int, cfg: Config) -> LiftArc:
    """Lift of (ghm, index)_P whose outer point lies at index - ghm, for index in 0..g."""
    return LiftArc(outer(index - cfg.last_slice), inner(cfg.last_slice + cfg.h))


def relation_f_source(cfg: Config) -> LiftArc:
    return last_slice_projective_lift(0, cfg)


def _loops(builder: WordBuilder, rank: int, count: int) -> WordBuilder:
    for _ in range(count):
        builder.down(rank).up(rank)
    return builder


def relation_f_words(cfg: Config, j: int) -> tuple[MoveWord, MoveWord]:
    """
    The two sides of relation (f), both starting at (ghm,0)_P:
    iota_inf(0), j loops in the inner tube, kappa_inf(0); and
    iota_0(0), N+1-j loops in the outer tube, kappa_0(0).
    """
    if not 0 <= j <= cfg.tube_truncation + 1:
        raise MoveError(f'j must lie in 0..{cfg.tube_truncation + 1}, got {j}', str(j))

    inner_side = WordBuilder(relation_f_source(cfg), cfg).move(connecting_move(IOTA_INF, 0, cfg))
    _loops(inner_side, cfg.h, j).move(connecting_move(KAPPA_INF, 0, cfg))

    outer_side = WordBuilder(relation_f_source(cfg), cfg).move(connecting_move(IOTA_0, 0, cfg))
    _loops(outer_side, cfg.g, cfg.tube_truncation + 1 - j).move(connecting_move(KAPPA_0, 0, cfg))
    return inner_side.build(), outer_side.build()


def relation_f_closed_forms(cfg: Config, j: int) -> tuple[LiftArc, LiftArc]:
    g, h, m, n, ghm = cfg.g, cfg.h, cfg.m, cfg.n, cfg.last_slice
    inner_form = LiftArc(inner(-2 - h * (m * (n + 1) + h * m - j)), outer(2 - ghm + j * g))
    outer_form = LiftArc(inner(-2 - ghm - h * j), outer(2 + ghm - g * j))
    return inner_form, outer_form


def verify_f(cfg: Config, j: int) -> Report:
    report = Report(title=f'relation (f) at j={j}')
    source = relation_f_source(cfg)
    inner_word, outer_word = relation_f_words(cfg, j)
    inner_value = evaluate_word(inner_word, source, cfg)
    outer_value = evaluate_word(outer_word, source, cfg)
    inner_form, outer_form = relation_f_closed_forms(cfg, j)
    target = last_slice_injective(0, cfg)

    if isinstance(inner_value, Zero) or isinstance(outer_value, Zero):
        report.add(f'(f) j={j}', False, f'zero value: {inner_value} vs {outer_value}')
        return report

    exponent = sigma_distance(inner_form, outer_form, cfg)
    passed = (
        inner_value == outer_value
        and project(inner_value, cfg) == target
        and inner_value == inner_form
        and exponent is not None
    )
    report.add(
        f'(f) j={j}',
        passed,
        f'{inner_value} vs {outer_value}; closed forms {inner_form}, {outer_form} related by sigma^{exponent}',
    )
    return report


@logged_stage('relation (f) sweep')
def verify_f_sweep(cfg: Config) -> Report:
    report = Report(title='relation (f)')
    for j in range(cfg.tube_truncation + 2):
        report.extend(verify_f(cfg, j))
    logger.info(f'Relation (f): {len(report.checks) - len(report.failures)} of {len(report.checks)} values agree')
    return report


@logged_stage('relations (c1) and (c2)')
def verify_c1_c2(cfg: Config, gamma: TranslationQuiver[AnnulusArc] | None = None) -> Report:
    if gamma is None:
        gamma = build_gamma_bar_m(cfg)
    rules = generate_triangle_rules(gamma)
    report = Report(title='relations (c1) and (c2)')
    g, h = cfg.g, cfg.h
    top = last_slice_projective_lift(g, cfg)

    identities = {
        'iota_0(g) = pi_0^g iota_0(0) alpha_P^h': (
            WordBuilder(top, cfg).step(Endpoint.END, 'alpha_P', h).move(connecting_move(IOTA_0, 0, cfg)).down(g),
            connecting_move(IOTA_0, g, cfg),
        ),
        'iota_inf(g) = pi_inf^h iota_inf(0) beta_P^g': (
            WordBuilder(top, cfg).step(Endpoint.START, 'beta_P', g).move(connecting_move(IOTA_INF, 0, cfg)).down(h),
            connecting_move(IOTA_INF, g, cfg),
        ),
        'kappa_0(g) = beta_I^h kappa_0(0) rho_0^g': (
            WordBuilder(connecting_lifts(KAPPA_0, g, cfg)[0], cfg)
            .up(g)
            .move(connecting_move(KAPPA_0, 0, cfg))
            .step(Endpoint.START, 'beta_I', h),
            connecting_move(KAPPA_0, g, cfg),
        ),
        'kappa_inf(g) = alpha_I^g kappa_inf(0) rho_inf^h': (
            WordBuilder(connecting_lifts(KAPPA_INF, g, cfg)[0], cfg)
            .up(h)
            .move(connecting_move(KAPPA_INF, 0, cfg))
            .step(Endpoint.END, 'alpha_I', g),
            connecting_move(KAPPA_INF, g, cfg),
        ),
    }

    for name, (builder, expected) in identities.items():
        word = builder.build()
        reduced, applied = reduce_word_trace(word, rules)
        same_value = evaluate_word(word, builder.start, cfg) == evaluate_word(reduced, builder.start, cfg)
        passed = reduced.moves == (expected,) and len(applied) == g + h and same_value
        report.add(name, passed, f'{len(word)} moves -> {reduced} after {len(applied)} collapses')

    # the path through iota_0(1) is not composable with alpha_P^h
    alpha = WordBuilder(top, cfg).step(Endpoint.END, 'alpha_P', h).moves
    try:
        MoveWord((*alpha, connecting_move(IOTA_0, 1, cfg)))
    except MoveError as e:
        report.add('iota_0(1) in place of iota_0(0) is rejected', True, e.message)
    else:
        report.add('iota_0(1) in place of iota_0(0) is rejected', False, 'word was accepted')

    logger.info(f'Relations (c1)/(c2): {len(report.failures)} of {len(report.checks)} checks failed')
    return report


def _zero_by_diamond(
    report: Report,
    name: str,
    builder: WordBuilder,
    diamonds: Sequence[RewriteRule],
    family: str,
    reverse: bool = False,
) -> None:
    """Swap one diamond of the given family into word, then push its tube segment down to zero."""
    word = builder.build()
    swapped = rewrite_once(word, diamonds, family, reverse)
    if swapped is None:
        report.add(name, False, f'no diamond {family} applies to {word}')
        return
    rewritten, _ = swapped
    pushed = push_down(rewritten, builder.start, builder.cfg)
    report.add(name, isinstance(pushed, Zero), f'diamond {family} then push down gives {pushed}')


@logged_stage("relations (e) and (e')")
def verify_e(cfg: Config, gamma: TranslationQuiver[AnnulusArc] | None = None) -> Report:
    """
    The four zero relations obtained by extending (f) at its extreme values of j by one slice arrow,
    plus controls showing the same words without the extra arrow do not vanish.
    """
    if gamma is None:
        gamma = build_gamma_bar_m(cfg)
    diamonds = generate_diamond_rules(gamma)
    report = Report(title="relations (e) and (e')")
    ghm, last_j = cfg.last_slice, cfg.tube_truncation + 1
    inner_word, _ = relation_f_words(cfg, last_j)
    _, outer_word = relation_f_words(cfg, 0)

    for j in (last_j, 0):
        check = verify_f(cfg, j).checks[0]
        report.add(f'kappa_0(0) iota_0(0) rewritten through (f) at j={j}', check.passed, check.witness)

    alpha_p = WordBuilder(LiftArc(outer(-ghm), inner(ghm + cfg.h - 1)), cfg).step(Endpoint.END, 'alpha_n')
    alpha_p.extend(inner_word.moves)
    _zero_by_diamond(report, '(e) kappa_0(0) iota_0(0) alpha_n(P) = 0', alpha_p, diamonds, 'B')

    beta_p = WordBuilder(last_slice_projective_lift(1, cfg), cfg).step(Endpoint.START, 'beta_0')
    beta_p.extend(outer_word.moves)
    _zero_by_diamond(report, "(e') kappa_inf(0) iota_inf(0) beta_0(P) = 0", beta_p, diamonds, 'A')

    alpha_i = WordBuilder(relation_f_source(cfg), cfg).extend(inner_word.moves).step(Endpoint.START, 'alpha_n')
    report.add('alpha_n(I) ends at (ghm,n)_I', alpha_i.arc == last_slice_injective(cfg.n, cfg), str(alpha_i.arc))
    _zero_by_diamond(report, '(e) alpha_n(I) kappa_0(0) iota_0(0) = 0', alpha_i, diamonds, 'D', reverse=True)

    beta_i = WordBuilder(relation_f_source(cfg), cfg).extend(outer_word.moves).step(Endpoint.END, 'beta_0')
    report.add('beta_0(I) ends at (ghm,1)_I', beta_i.arc == last_slice_injective(1, cfg), str(beta_i.arc))
    _zero_by_diamond(report, "(e') beta_0(I) kappa_inf(0) iota_inf(0) = 0", beta_i, diamonds, 'C', reverse=True)

    # without the slice arrow the push down reaches a nonzero normal form
    for name, word, j in (('inner', inner_word, last_j), ('outer', outer_word, 0)):
        expected = relation_f_closed_forms(cfg, j)[0]
        value = evaluate_word(word, relation_f_source(cfg), cfg)
        report.add(f'control: {name} loops alone stay nonzero', value == expected, f'{value} vs {expected}')

    logger.info(f"Relations (e)/(e'): {len(report.failures)} of {len(report.checks)} checks failed")
    return report


def _corners(lift: LiftArc) -> set[LiftPoint]:
    return {lift.start, lift.end}


def is_ptolemy_square(x: LiftArc, y1: LiftArc, z: LiftArc, y2: LiftArc) -> bool:
    """x and z are opposite sides of a quadrilateral on four distinct lift points, y1 and y2 its diagonals."""
    if len(_corners(x) | _corners(z)) != 4:
        return False
    return all(len(_corners(y) & _corners(x)) == 1 and len(_corners(y) & _corners(z)) == 1 for y in (y1, y2))


@logged_stage('diamond check')
def verify_diamonds(quiver: TranslationQuiver[AnnulusArc]) -> Report:
    cfg = quiver.cfg
    report = Report(title=f'commutative squares of {quiver.name}')
    squares: dict[str, list[RewriteRule]] = defaultdict(list)
    for rule in generate_diamond_rules(quiver):
        squares[f'diamond {rule.family}'].append(rule)
    for rule in generate_mesh_relations(quiver):
        if rule.kind is RuleKind.MESH_SWAP:
            squares['mesh squares'].append(rule)

    for name in [*(f'diamond {family}' for family in sorted(set(DIAMOND_FAMILIES.values()))), 'mesh squares']:
        broken = []
        for rule in squares[name]:
            x = rule.pattern[0].source.canonical
            y1 = apply_move_lift(rule.pattern[0], x, cfg)
            y2 = apply_move_lift(rule.replacement[0], x, cfg)
            z = apply_move_lift(rule.pattern[1], y1, cfg)
            if z != apply_move_lift(rule.replacement[1], y2, cfg) or not is_ptolemy_square(x, y1, z, y2):
                broken.append(f'{x} -> {y1} | {y2} -> {z}')
        report.add(f'{name} commute', not broken, f'{len(squares[name])} squares; broken {broken[:3]}')

    logger.info(f'Square check of {quiver.name}: {len(report.failures)} failed checks')
    return report


def _free_distance(lift: LiftArc, other: LiftArc, free: Endpoint) -> int:
    return abs(lift.point(free).index - other.point(free).index)


def connecting_word(source: AnnulusArc, target: AnnulusArc, family: str, index: int, cfg: Config) -> WordBuilder:
    """Anchored elementary steps to the connecting source, the connecting arrow, anchored steps to target."""
    move = connecting_move(family, index, cfg)
    anchor = move.anchor
    free = opposite(anchor)
    source_lift, target_lift = connecting_lifts(family, index, cfg)
    start = anchored_lift(source, anchor, source_lift.point(anchor).index, cfg)
    end = anchored_lift(target, anchor, target_lift.point(anchor).index, cfg)
    if start is None or end is None:
        raise MoveError(f'{source} -> {target} does not share the anchor of {move}', str(source), str(target))

    builder = WordBuilder(start, cfg)
    builder.step(free, count=_free_distance(start, source_lift, free)).move(move)
    return builder.step(free, count=_free_distance(target_lift, end, free))


@logged_stage('factoring check')
def verify_factoring(quiver: TranslationQuiver[AnnulusArc]) -> Report:
    """
    Every long arrow is the triangle reduction of a word through one connecting arrow, and long arrows
    compose with anchored elementary rays on both sides.
    """
    cfg = quiver.cfg
    report = Report(title=f'long arrows of {quiver.name} through connecting arrows')
    collapses = _collapse_index(generate_triangle_rules(quiver))
    labels = {connecting_label(family, index): (family, index) for family, index in connecting_labels(cfg)}
    factored = factored_long_pairs(quiver)

    failures = []
    long_arrows = quiver.arrows_of_kind(ArrowKind.LONG)
    for arrow in long_arrows:
        expected = arrow_move(quiver, arrow)
        label = factored.get((expected.source, expected.target))
        if label is None:
            failures.append(f'{expected.source} -> {expected.target}: no connecting arrow')
            continue
        try:
            word = connecting_word(expected.source, expected.target, *labels[label], cfg).build()
        except MoveError as e:
            failures.append(f'{expected.source} -> {expected.target}: {e.message}')
            continue
        reduced, _ = _reduce(word.moves, collapses)
        if reduced != (expected,):
            failures.append(f'{expected.source} -> {expected.target} via {label} reduces to {MoveWord(reduced)}')

    witness = f'{len(long_arrows)} long arrows; {failures[:3]}'
    report.add('long arrows reduce to connecting words', not failures, witness)

    not_closed = []
    for arrow in long_arrows:
        move = arrow_move(quiver, arrow)
        free = opposite(move.anchor)
        target_lift = apply_move_lift(move, move.source.canonical, cfg)
        further = (project(lift, cfg) for lift in anchored_walk(target_lift, free, quiver))
        earlier = (project(lift, cfg) for lift in anchored_walk(move.source.canonical, free, quiver, backwards=True))
        u, v = move.source, move.target
        not_closed.extend(f'{u} -> {w}' for w in further if not quiver.has_arrow(u, w, ArrowKind.LONG))
        not_closed.extend(f'{w} -> {v}' for w in earlier if not quiver.has_arrow(w, v, ArrowKind.LONG))
    report.add('long arrows extend along anchored rays', not not_closed, '; '.join(not_closed[:3]))
    logger.info(f'Factoring check of {quiver.name}: {len(failures)} of {len(long_arrows)} long arrows fail')
    return report
