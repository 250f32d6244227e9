# Models package
from app.models.enums import SchemeId, SweepAxis, ReceptionModel, EstimatorPath
from app.models.channel import LinkSet, ChannelRealization
from app.models.design import Scheme1Design, Scheme2Design, Scheme1Residuals, Scheme2Residuals
from app.models.estimate import Scheme1Observation, Scheme2Observation, ChannelEstimate, StackedEstimate

__all__ = [
    "SchemeId",
    "SweepAxis",
    "ReceptionModel",
    "EstimatorPath",
    "LinkSet",
    "ChannelRealization",
    "Scheme1Design",
    "Scheme2Design",
    "Scheme1Residuals",
    "Scheme2Residuals",
    "Scheme1Observation",
    "Scheme2Observation",
    "ChannelEstimate",
    "StackedEstimate",
]
