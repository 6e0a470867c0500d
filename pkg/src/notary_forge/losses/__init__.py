"""Training objectives for the binary classifier and the segmenter."""

from .binary import PROB_CLAMP, FocalParams, bce_binary, clamp_probs, focal_binary
from .objective import LossSpec, LossTerm, combine, evaluate_term
from .segmentation import DICE_EPS, bce_map, dice_weighted, focal_map
from .weights import class_frequencies, inverse_frequency_weights, weights_from_frequencies

__all__ = [
    "PROB_CLAMP",
    "DICE_EPS",
    "FocalParams",
    "LossSpec",
    "LossTerm",
    "bce_binary",
    "focal_binary",
    "bce_map",
    "focal_map",
    "dice_weighted",
    "clamp_probs",
    "combine",
    "evaluate_term",
    "class_frequencies",
    "inverse_frequency_weights",
    "weights_from_frequencies",
]
