"""Network operations on :class:`Tensor` with their backward rules."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.special import expit

from ..errors import ShapeError
from .tensor import Tensor, as_tensor, make_result

BN_MOMENTUM = 0.1
BN_EPS = 1e-5


def conv2d(
    x: Tensor,
    w: Tensor,
    b: Optional[Tensor] = None,
    stride: int = 1,
    pad: int = 0,
) -> Tensor:
    """2-D cross-correlation, N×C×H×W with K×C×kh×kw weights."""
    if x.ndim != 4 or w.ndim != 4:
        raise ShapeError(f"conv2d needs 4-d input and weight, got {x.shape}, {w.shape}")
    n, c, h, wd = x.shape
    k, wc, kh, kw = w.shape
    if wc != c:
        raise ShapeError(f"conv2d channel mismatch: input {c}, weight {wc}")
    if b is not None and b.shape != (k,):
        raise ShapeError(f"conv2d bias must have shape ({k},), got {b.shape}")
    span_h, span_w = h + 2 * pad - kh, wd + 2 * pad - kw
    if span_h < 0 or span_w < 0 or span_h % stride or span_w % stride:
        raise ShapeError(
            f"conv2d output extent is not integral for input {h}x{wd}, "
            f"kernel {kh}x{kw}, stride {stride}, pad {pad}"
        )
    out_h, out_w = span_h // stride + 1, span_w // stride + 1

    xp = np.pad(x.data, ((0, 0), (0, 0), (pad, pad), (pad, pad))) if pad else x.data
    windows = sliding_window_view(xp, (kh, kw), axis=(2, 3))[:, :, ::stride, ::stride]
    # windows: N, C, out_h, out_w, kh, kw
    out = np.tensordot(windows, w.data, axes=([1, 4, 5], [1, 2, 3]))
    out = out.transpose(0, 3, 1, 2)
    if b is not None:
        out = out + b.data.reshape(1, k, 1, 1)

    def grad_fn(g):
        grad_w = np.tensordot(g, windows, axes=([0, 2, 3], [0, 2, 3]))
        grad_b = g.sum(axis=(0, 2, 3)) if b is not None else None
        grad_xp = np.zeros_like(xp)
        for i in range(kh):
            for j in range(kw):
                contrib = np.tensordot(g, w.data[:, :, i, j], axes=([1], [0]))
                grad_xp[
                    :,
                    :,
                    i : i + stride * out_h : stride,
                    j : j + stride * out_w : stride,
                ] += contrib.transpose(0, 3, 1, 2)
        grad_x = grad_xp[:, :, pad : pad + h, pad : pad + wd] if pad else grad_xp
        return (grad_x, grad_w, grad_b)

    inputs = (x, w) if b is None else (x, w, b)
    return make_result(np.ascontiguousarray(out), inputs, "conv2d", grad_fn)


def batchnorm2d(
    x: Tensor,
    gamma: Tensor,
    beta: Tensor,
    running_mean: np.ndarray,
    running_var: np.ndarray,
    training: bool,
    momentum: float = BN_MOMENTUM,
    eps: float = BN_EPS,
) -> Tensor:
    """Per-channel batch normalization.

    Training mode normalizes with batch statistics and updates the running
    statistics in place; eval mode uses the running statistics unchanged.
    """
    if x.ndim != 4 or gamma.shape != (x.shape[1],) or beta.shape != (x.shape[1],):
        raise ShapeError(
            f"batchnorm2d parameters {gamma.shape}/{beta.shape} do not match "
            f"input channels of {x.shape}"
        )
    axes = (0, 2, 3)
    g_scale = gamma.data.reshape(1, -1, 1, 1)
    if training:
        mean = x.data.mean(axis=axes)
        var = x.data.var(axis=axes)
        count = x.size // x.shape[1]
        unbiased = var * count / max(count - 1, 1)
        running_mean *= 1.0 - momentum
        running_mean += momentum * mean
        running_var *= 1.0 - momentum
        running_var += momentum * unbiased
    else:
        mean, var = running_mean, running_var
        count = None
    inv_std = (1.0 / np.sqrt(var + eps)).astype(x.dtype).reshape(1, -1, 1, 1)
    xhat = (x.data - mean.reshape(1, -1, 1, 1).astype(x.dtype)) * inv_std
    out = g_scale * xhat + beta.data.reshape(1, -1, 1, 1)

    def grad_fn(g):
        grad_gamma = (g * xhat).sum(axis=axes)
        grad_beta = g.sum(axis=axes)
        dxhat = g * g_scale
        if training:
            grad_x = (
                inv_std
                / count
                * (
                    count * dxhat
                    - dxhat.sum(axis=axes, keepdims=True)
                    - xhat * (dxhat * xhat).sum(axis=axes, keepdims=True)
                )
            )
        else:
            grad_x = dxhat * inv_std
        return (grad_x, grad_gamma, grad_beta)

    return make_result(out, (x, gamma, beta), "batchnorm2d", grad_fn)


def relu(x: Tensor) -> Tensor:
    positive = x.data > 0
    return make_result(
        np.where(positive, x.data, 0).astype(x.dtype),
        (x,),
        "relu",
        lambda g: (g * positive,),
    )


def sigmoid(x: Tensor) -> Tensor:
    out = expit(x.data).astype(x.dtype)
    return make_result(out, (x,), "sigmoid", lambda g: (g * out * (1.0 - out),))


def softmax_channel(x: Tensor) -> Tensor:
    """Softmax over axis 1."""
    shifted = x.data - x.data.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    out = e / e.sum(axis=1, keepdims=True)

    def grad_fn(g):
        return (out * (g - (g * out).sum(axis=1, keepdims=True)),)

    return make_result(out, (x,), "softmax_channel", grad_fn)


def maxpool2(x: Tensor) -> Tensor:
    """2×2 max pooling with stride 2."""
    n, c, h, w = x.shape
    if h % 2 or w % 2:
        raise ShapeError(f"maxpool2 needs even spatial extents, got {h}x{w}")
    blocks = (
        x.data.reshape(n, c, h // 2, 2, w // 2, 2)
        .transpose(0, 1, 2, 4, 3, 5)
        .reshape(n, c, h // 2, w // 2, 4)
    )
    winner = blocks.argmax(axis=-1)[..., None]
    out = np.take_along_axis(blocks, winner, axis=-1)[..., 0]

    def grad_fn(g):
        routed = np.zeros_like(blocks)
        np.put_along_axis(routed, winner, g[..., None], axis=-1)
        grad = (
            routed.reshape(n, c, h // 2, w // 2, 2, 2)
            .transpose(0, 1, 2, 4, 3, 5)
            .reshape(n, c, h, w)
        )
        return (grad,)

    return make_result(out, (x,), "maxpool2", grad_fn)


def upsample_nearest2(x: Tensor) -> Tensor:
    n, c, h, w = x.shape
    out = x.data.repeat(2, axis=2).repeat(2, axis=3)
    return make_result(
        out,
        (x,),
        "upsample_nearest2",
        lambda g: (g.reshape(n, c, h, 2, w, 2).sum(axis=(3, 5)),),
    )


def linear(x: Tensor, w: Tensor, b: Optional[Tensor] = None) -> Tensor:
    """``x @ w.T + b`` for x of shape N×in and w of shape out×in."""
    if x.ndim != 2 or w.ndim != 2 or x.shape[1] != w.shape[1]:
        raise ShapeError(f"linear shapes do not match: {x.shape} vs weight {w.shape}")
    out = x.data @ w.data.T
    if b is not None:
        out = out + b.data

    def grad_fn(g):
        grad_b = g.sum(axis=0) if b is not None else None
        return (g @ w.data, g.T @ x.data, grad_b)

    inputs = (x, w) if b is None else (x, w, b)
    return make_result(out, inputs, "linear", grad_fn)


def global_avg_pool(x: Tensor) -> Tensor:
    n, c, h, w = x.shape
    return make_result(
        x.data.mean(axis=(2, 3)),
        (x,),
        "global_avg_pool",
        lambda g: (np.broadcast_to(g[:, :, None, None] / (h * w), x.shape).copy(),),
    )


def concat_channels(tensors: Sequence[Tensor]) -> Tensor:
    tensors = [as_tensor(t) for t in tensors]
    spatial = {t.shape[:1] + t.shape[2:] for t in tensors}
    if len(spatial) != 1:
        raise ShapeError(
            f"concat_channels needs matching N/H/W, got {[t.shape for t in tensors]}"
        )
    bounds = np.cumsum([t.shape[1] for t in tensors])[:-1]

    def grad_fn(g):
        return tuple(np.split(g, bounds, axis=1))

    return make_result(
        np.concatenate([t.data for t in tensors], axis=1),
        tuple(tensors),
        "concat_channels",
        grad_fn,
    )


def dropout(
    x: Tensor, p: float, training: bool, rng: Optional[np.random.Generator] = None
) -> Tensor:
    """Inverted dropout; identity outside training mode.

    Training mode needs an explicit ``rng`` so masks replay from the run seed.
    """
    if not 0.0 <= p < 1.0:
        raise ValueError(f"dropout probability must lie in [0, 1), got {p}")
    if not training or p == 0.0:
        return x
    if rng is None:
        raise ValueError("dropout in training mode needs a seeded rng")
    keep = (rng.random(x.shape) >= p).astype(x.dtype) / (1.0 - p)
    return make_result(x.data * keep, (x,), "dropout", lambda g: (g * keep,))


def one_hot(mask: np.ndarray, n_classes: int, dtype=None) -> np.ndarray:
    """N×H×W class indices to an N×C×H×W indicator array."""
    mask = np.asarray(mask)
    if mask.size and (mask.min() < 0 or mask.max() >= n_classes):
        raise ValueError(
            f"mask classes must lie in [0, {n_classes}), "
            f"found range [{mask.min()}, {mask.max()}]"
        )
    eye = np.eye(n_classes, dtype=dtype or np.float64)
    return np.moveaxis(eye[mask], -1, 1)
