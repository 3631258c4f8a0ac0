"""Special functions and profiles: Airy pair, ground states, ring profile, modulation constants."""

from .airy import (
    AI_ZERO,
    AIP_ZERO,
    BI_ZERO,
    BIP_ZERO,
    S_SUPPORT,
    AiryPair,
    airy_ai_bi,
    airy_eval,
    first_negative_root,
    g_combination,
    kappa,
    kappa_amplitude_form,
)
from .profiles import (
    GroundStateData,
    RingProfileData,
    ShootingError,
    ground_state_1d,
    ground_state_radial,
    profile_residual_max,
    ring_profile,
)

__all__ = [
    "AI_ZERO",
    "AIP_ZERO",
    "BI_ZERO",
    "BIP_ZERO",
    "S_SUPPORT",
    "AiryPair",
    "airy_ai_bi",
    "airy_eval",
    "first_negative_root",
    "g_combination",
    "kappa",
    "kappa_amplitude_form",
    "GroundStateData",
    "RingProfileData",
    "ShootingError",
    "ground_state_1d",
    "ground_state_radial",
    "profile_residual_max",
    "ring_profile",
]
