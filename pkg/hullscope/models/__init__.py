"""All models."""

from hullscope.models.legendre_model import (
    Anchor,
    FitRegime,
    LegendreModel,
    RegimeKind,
)
from hullscope.models.mlp_model import (
    DisagreementSplit,
    MlpModel,
    Polygon2D,
    SeedPairReport,
    TrainingRun,
    TrainRegime,
)
from hullscope.models.point_set import PointSet
from hullscope.models.projection import (
    Membership,
    MembershipStatus,
    ProjectionResult,
    SolverConfig,
    SupportLabels,
)
from hullscope.models.summary import (
    DiameterRatios,
    DistanceSummary,
    Histogram,
    SetComparison,
)
from hullscope.models.wavelet_spec import WaveletFamily, WaveletSpec

__all__ = [
    'Anchor',
    'DiameterRatios',
    'DisagreementSplit',
    'DistanceSummary',
    'FitRegime',
    'Histogram',
    'LegendreModel',
    'Membership',
    'MembershipStatus',
    'MlpModel',
    'PointSet',
    'Polygon2D',
    'ProjectionResult',
    'RegimeKind',
    'SeedPairReport',
    'SetComparison',
    'SolverConfig',
    'SupportLabels',
    'TrainingRun',
    'TrainRegime',
    'WaveletFamily',
    'WaveletSpec',
]
