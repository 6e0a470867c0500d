"""Random minority oversampling and majority undersampling."""

from .streams import (
    SAMPLING_MODES,
    SampleStream,
    SamplingMode,
    make_stream,
    oversample_minority,
    undersample_majority,
)

__all__ = [
    "SAMPLING_MODES",
    "SampleStream",
    "SamplingMode",
    "make_stream",
    "oversample_minority",
    "undersample_majority",
]
