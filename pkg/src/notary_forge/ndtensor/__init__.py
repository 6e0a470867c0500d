"""Minimal dense-tensor engine with reverse-mode automatic differentiation."""

from .checkpoint import load_checkpoint, save_checkpoint
from .gradcheck import GradCheckReport, finite_diff_check
from .ops import (
    batchnorm2d,
    concat_channels,
    conv2d,
    dropout,
    global_avg_pool,
    linear,
    maxpool2,
    one_hot,
    relu,
    sigmoid,
    softmax_channel,
    upsample_nearest2,
)
from .tensor import (
    Tape,
    TapeNode,
    Tensor,
    as_tensor,
    backward,
    default_dtype,
    get_default_dtype,
    no_grad,
    set_debug,
)

__all__ = [
    "Tensor",
    "Tape",
    "TapeNode",
    "as_tensor",
    "backward",
    "default_dtype",
    "get_default_dtype",
    "no_grad",
    "set_debug",
    "conv2d",
    "batchnorm2d",
    "relu",
    "sigmoid",
    "softmax_channel",
    "maxpool2",
    "upsample_nearest2",
    "linear",
    "global_avg_pool",
    "concat_channels",
    "dropout",
    "one_hot",
    "finite_diff_check",
    "GradCheckReport",
    "save_checkpoint",
    "load_checkpoint",
]
