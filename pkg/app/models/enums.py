from enum import Enum


class SchemeId(str, Enum):
    """Estimation scheme and training design under test."""
    SCHEME1_OPTIMAL = "scheme1_optimal"
    SCHEME1_RANDOM_REFLECTION = "scheme1_random_reflection"
    SCHEME1_RANDOM_PILOT = "scheme1_random_pilot"
    SCHEME2_OPTIMAL = "scheme2_optimal"
    SCHEME2_RANDOM_REFLECTION = "scheme2_random_reflection"
    SCHEME2_RANDOM_PILOT = "scheme2_random_pilot"

    @property
    def is_scheme1(self) -> bool:
        return self.value.startswith("scheme1")

    @property
    def is_random(self) -> bool:
        return "random" in self.value


class SweepAxis(str, Enum):
    """Quantity varied across the grid of a sweep."""
    SNR_DB = "snr_db"
    KAPPA_DB = "kappa_db"


class ReceptionModel(str, Enum):
    """Scheme 2 received-signal model."""
    IDEALIZED = "idealized"
    PHYSICAL = "physical"


class EstimatorPath(str, Enum):
    """Pseudo-inverse evaluation path."""
    AUTO = "auto"
    CLOSED_FORM = "closed_form"
    GENERAL = "general"
