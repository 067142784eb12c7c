import json
from collections.abc import Hashable
from dataclasses import asdict
from enum import Enum
from typing import Any

import networkx as nx
from dacite import Config as DaciteConfig, DaciteError, from_dict

from .constants import DOT_ELEMENTARY_STYLE, DOT_LONG_STYLE, DOT_TAU_STYLE
from .correspondence import f_vertex
from .exceptions import InvalidDocumentError, UnknownVertexError
from .quiver import K, TranslationQuiver
from .schema import (
    AnnulusArc,
    ArrowKind,
    Component,
    Config,
    ExportArrow,
    ExportConfig,
    ExportDocument,
    ExportTauPair,
    ExportVertex,
    QuiverMode,
    Report,
)
from .utils import logger

ARROW_STYLES = {
    ArrowKind.ELEMENTARY: DOT_ELEMENTARY_STYLE,
    ArrowKind.LONG: DOT_LONG_STYLE,
    ArrowKind.CONNECTING: DOT_LONG_STYLE,
}


def _brustle_text(key: Hashable, cfg: Config) -> str | None:
    if not isinstance(key, AnnulusArc):
        return None
    try:
        return str(f_vertex(key, cfg))
    except UnknownVertexError:
        return None


def document_from_quiver(
    quiver: TranslationQuiver[K], mode: QuiverMode, report: Report | None = None
) -> ExportDocument:
    cfg = quiver.cfg
    document = ExportDocument(
        config=ExportConfig(g=cfg.g, h=cfg.h, m=cfg.m, n=cfg.n, tube_truncation=cfg.tube_truncation),
        mode=mode,
        report=report,
    )
    for vertex in quiver:
        key = str(vertex.key)
        if mode is QuiverMode.BRUSTLE:
            document.vertices.append(ExportVertex(vertex.id, vertex.component, key, brustle=key))
        else:
            brustle = _brustle_text(vertex.key, cfg)
            document.vertices.append(ExportVertex(vertex.id, vertex.component, key, arc=key, brustle=brustle))
    document.arrows = [
        ExportArrow(arrow.id, arrow.source, arrow.target, arrow.kind, arrow.label, arrow.anchor)
        for arrow in quiver.arrows
    ]
    document.tau = [ExportTauPair(source, target) for source, target in sorted(quiver.tau.items())]
    return document


def to_json(document: ExportDocument) -> str:
    return json.dumps(asdict(document), indent=2, sort_keys=True) + '\n'


def parse_document(text: str) -> ExportDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidDocumentError(f'Export document is not valid JSON: {e.msg}', f'line {e.lineno}') from e
    try:
        return from_dict(ExportDocument, data, config=DaciteConfig(cast=[Enum]))
    except (DaciteError, ValueError) as e:
        raise InvalidDocumentError(f'Export document does not match the schema: {e}', str(e)) from e


def to_dot(document: ExportDocument) -> str:
    cfg = document.config
    lines = [f'digraph "{document.mode.value}_{cfg.m}_{cfg.g}_{cfg.h}" {{', '  rankdir=LR;']
    for vertex in document.vertices:
        label = vertex.key
        if vertex.brustle is not None and vertex.brustle != vertex.key:
            label = f'{vertex.key}\\n{vertex.brustle}'
        lines.append(f'  {vertex.id} [label="{label}", group="{vertex.component.value}"];')

    for component in Component:
        ids = [str(vertex.id) for vertex in document.vertices if vertex.component is component]
        if ids:
            lines.append(f'  {{ rank=same; {"; ".join(ids)}; }}')

    for arrow in document.arrows:
        label = f', label="{arrow.label}"' if arrow.label else ''
        lines.append(f'  {arrow.source} -> {arrow.target} [style={ARROW_STYLES[arrow.kind]}{label}];')
    for pair in document.tau:
        lines.append(f'  {pair.source} -> {pair.target} [style={DOT_TAU_STYLE}, constraint=false, arrowhead=none];')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def document_to_quiver(document: ExportDocument) -> TranslationQuiver[str]:
    cfg = Config(g=document.config.g, h=document.config.h, m=document.config.m)
    quiver: TranslationQuiver[str] = TranslationQuiver(f'{document.mode.value} document', cfg)
    for vertex in sorted(document.vertices, key=lambda vertex: vertex.id):
        if quiver.add_vertex(vertex.key, vertex.component) != vertex.id:
            raise InvalidDocumentError(f'Vertex ids are not consecutive at {vertex.key}', str(vertex.id))

    keys = {vertex.id: vertex.key for vertex in document.vertices}
    for arrow in sorted(document.arrows, key=lambda arrow: arrow.id):
        if arrow.source not in keys or arrow.target not in keys:
            raise InvalidDocumentError(f'Arrow {arrow.id} points outside the vertex list', str(arrow.id))
        added = quiver.add_arrow(keys[arrow.source], keys[arrow.target], arrow.kind, arrow.label, arrow.anchor)
        if added.id != arrow.id:
            raise InvalidDocumentError(f'Arrow ids are not consecutive at {arrow.id}', str(arrow.id))

    for pair in document.tau:
        if pair.source not in keys or pair.target not in keys:
            message = f'Tau pair {pair.source} -> {pair.target} points outside the vertex list'
            raise InvalidDocumentError(message, str(pair.source))
        quiver.set_tau(keys[pair.source], keys[pair.target])
    logger.debug(f'Loaded {quiver.name}: {len(quiver)} vertices, {len(quiver.arrows)} arrows')
    return quiver


def same_quiver(first: TranslationQuiver[Any], second: TranslationQuiver[Any]) -> bool:
    """Identical ids, vertex keys and tau, and isomorphic as typed multigraphs."""
    if [str(vertex.key) for vertex in first] != [str(vertex.key) for vertex in second]:
        return False
    if first.tau != second.tau:
        return False
    return nx.is_isomorphic(
        first.to_networkx(),
        second.to_networkx(),
        node_match=lambda a, b: a['key'] == b['key'] and a['component'] == b['component'],
        edge_match=lambda a, b: sorted((e['kind'], e['label']) for e in a.values())
        == sorted((e['kind'], e['label']) for e in b.values()),
    )
