"""Adam with bias correction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..errors import ShapeError
from ..ndtensor import Tensor


@dataclass
class AdamState:
    """First and second moment estimates plus the number of completed steps."""

    m: list[np.ndarray]
    v: list[np.ndarray]
    t: int = 0

    @classmethod
    def zeros(cls, params: Sequence[np.ndarray]) -> "AdamState":
        return cls(
            m=[np.zeros_like(p, dtype=np.float64) for p in params],
            v=[np.zeros_like(p, dtype=np.float64) for p in params],
        )


def adam_step(
    params: Sequence[np.ndarray],
    grads: Sequence[Optional[np.ndarray]],
    state: AdamState,
    lr: float,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> tuple[list[np.ndarray], AdamState]:
    """One update; returns new parameter arrays and the advanced state.

    A missing gradient counts as zero.
    """
    if not (len(params) == len(grads) == len(state.m) == len(state.v)):
        raise ShapeError(
            f"{len(params)} parameters, {len(grads)} gradients and "
            f"{len(state.m)} moment slots do not line up"
        )
    t = state.t + 1
    corr1 = 1.0 - beta1**t
    corr2 = 1.0 - beta2**t
    new_params, new_m, new_v = [], [], []
    for index, (p, g, m, v) in enumerate(zip(params, grads, state.m, state.v)):
        g = np.zeros_like(m) if g is None else np.asarray(g, dtype=np.float64)
        if g.shape != p.shape or m.shape != p.shape:
            raise ShapeError(
                f"parameter {index} has shape {p.shape}, gradient {g.shape}, moments {m.shape}"
            )
        m = beta1 * m + (1.0 - beta1) * g
        v = beta2 * v + (1.0 - beta2) * g * g
        update = lr * (m / corr1) / (np.sqrt(v / corr2) + eps)
        new_params.append((p - update).astype(p.dtype))
        new_m.append(m)
        new_v.append(v)
    return new_params, AdamState(m=new_m, v=new_v, t=t)


@dataclass
class Adam:
    """Stateful wrapper updating tensors in place from their ``.grad``."""

    params: list[Tensor]
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    state: AdamState = field(init=False)

    def __post_init__(self):
        self.params = list(self.params)
        self.state = AdamState.zeros([p.data for p in self.params])

    def zero_grad(self) -> None:
        for p in self.params:
            p.zero_grad()

    def step(self, lr: float) -> None:
        updated, self.state = adam_step(
            [p.data for p in self.params],
            [p.grad for p in self.params],
            self.state,
            lr,
            self.beta1,
            self.beta2,
            self.eps,
        )
        for p, data in zip(self.params, updated):
            p.data[...] = data
