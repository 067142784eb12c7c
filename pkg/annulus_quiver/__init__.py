"""
Annulus Quiver

Arcs in an annulus with g marked points on the outer boundary and h on the inner one, as a
geometric model of the module and cluster categories of affine type A.
"""

__version__ = '0.1.0'
__author__ = 'Annulus Quiver developers'

from .arquiver import build_components, build_gamma_bar_m, mesh_check
from .brustle import build_qm_prime
from .cluster import build_cluster_quiver_m, eta_arcs, unorient, unoriented_moves, verify_stable_translation
from .constants import CONNECTING_FAMILIES, IOTA_0, IOTA_INF, KAPPA_0, KAPPA_INF
from .correspondence import connecting_arrow_endpoints, f_vertex, verify_bijection, verify_isomorphism
from .exceptions import (
    AnnulusQuiverException,
    InconsistentModelError,
    InvalidArcError,
    InvalidConfigError,
    InvalidDocumentError,
    MoveError,
    NotAdmissibleError,
    UnknownVertexError,
)
from .export import document_from_quiver, document_to_quiver, parse_document, same_quiver, to_dot, to_json
from .geometry import (
    classify,
    format_lift_arc,
    injective_arc,
    load_config,
    parse_lift_arc,
    project,
    projective_arc,
    reverse_orientation,
    tau,
    tau_inv,
    verify_classification,
)
from .moves import (
    WordBuilder,
    apply_move_lift,
    elementary_moves,
    evaluate_word,
    f_down_up_g,
    f_up_down_h,
    long_move,
    long_moves,
    push_down,
)
from .quiver import TranslationQuiver
from .relations import (
    generate_diamond_rules,
    generate_mesh_relations,
    generate_triangle_rules,
    reduce_word,
    relation_f_words,
    verify_c1_c2,
    verify_diamonds,
    verify_e,
    verify_f,
    verify_f_sweep,
    verify_factoring,
)

# Import main schema classes for convenience
from .schema import (
    ZERO,
    AnnulusArc,
    ArcClass,
    ArrowKind,
    Boundary,
    BrustleVertex,
    Component,
    Config,
    Endpoint,
    ExportDocument,
    ExportFormat,
    LiftArc,
    LiftPoint,
    Move,
    MoveKind,
    MoveWord,
    QuiverMode,
    Report,
    RewriteRule,
    RuleKind,
    Suite,
    UnorientedArc,
    Zero,
)

__all__ = [
    # Builders
    'build_components',
    'build_gamma_bar_m',
    'build_qm_prime',
    'build_cluster_quiver_m',
    'TranslationQuiver',
    # Geometry and moves
    'load_config',
    'parse_lift_arc',
    'format_lift_arc',
    'project',
    'classify',
    'tau',
    'tau_inv',
    'reverse_orientation',
    'projective_arc',
    'injective_arc',
    'elementary_moves',
    'long_move',
    'long_moves',
    'apply_move_lift',
    'evaluate_word',
    'f_down_up_g',
    'f_up_down_h',
    'WordBuilder',
    'unorient',
    'unoriented_moves',
    'eta_arcs',
    # Verification
    'mesh_check',
    'verify_classification',
    'f_vertex',
    'connecting_arrow_endpoints',
    'verify_bijection',
    'verify_isomorphism',
    'generate_mesh_relations',
    'generate_diamond_rules',
    'generate_triangle_rules',
    'reduce_word',
    'push_down',
    'relation_f_words',
    'verify_c1_c2',
    'verify_e',
    'verify_f',
    'verify_f_sweep',
    'verify_diamonds',
    'verify_factoring',
    'verify_stable_translation',
    # Export
    'document_from_quiver',
    'document_to_quiver',
    'parse_document',
    'same_quiver',
    'to_dot',
    'to_json',
    # Constants
    'CONNECTING_FAMILIES',
    'IOTA_0',
    'IOTA_INF',
    'KAPPA_0',
    'KAPPA_INF',
    # Exceptions
    'AnnulusQuiverException',
    'InconsistentModelError',
    'InvalidArcError',
    'InvalidConfigError',
    'InvalidDocumentError',
    'MoveError',
    'NotAdmissibleError',
    'UnknownVertexError',
    # Schema classes
    'ZERO',
    'AnnulusArc',
    'ArcClass',
    'ArrowKind',
    'Boundary',
    'BrustleVertex',
    'Component',
    'Config',
    'Endpoint',
    'ExportDocument',
    'ExportFormat',
    'LiftArc',
    'LiftPoint',
    'Move',
    'MoveKind',
    'MoveWord',
    'QuiverMode',
    'Report',
    'RewriteRule',
    'RuleKind',
    'Suite',
    'UnorientedArc',
    'Zero',
]
