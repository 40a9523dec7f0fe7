"""L-systems with affine geometry interpretation for curve generation."""

from .errors import (
    AffineError,
    DefinitionError,
    DimensionError,
    DomainError,
    EvalError,
    ExtractionError,
    LsysError,
    ParseError,
    ProjectionError,
    StateError,
    WeightError,
)
from .geometry import (
    Point,
    WeightedPoint,
    affine_combine,
    distance,
    lift_with_weight,
    project_to_plane,
)
from .rewriting import (
    Binding,
    Module,
    ModuleString,
    PatternModule,
    Production,
    Schedule,
    Table,
    TemplateModule,
    derive,
    derive_step,
    interpret,
    match_at,
)

__version__ = "0.1.0"
