"""Belief-propagation decoders for CSS codes."""

from .decoders import (
    DecodeOutcome,
    Decoder,
    DecoderConfig,
    gmbp4_decode,
    hybrid_decode,
    mbp4_decode,
    relay_bp4,
)
from .messages import boxplus, hard_decision, init_priors, quaternary_to_binary, soft_weight
from .osd import osd1, osd1_full, symplectic_reliabilities

__all__ = [
    "DecodeOutcome",
    "Decoder",
    "DecoderConfig",
    "boxplus",
    "gmbp4_decode",
    "hard_decision",
    "hybrid_decode",
    "init_priors",
    "mbp4_decode",
    "osd1",
    "osd1_full",
    "quaternary_to_binary",
    "relay_bp4",
    "soft_weight",
    "symplectic_reliabilities",
]
