"""Central finite-difference gradient checking."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .tensor import Tensor, no_grad


@dataclass
class InputReport:
    """Per-element comparison for one checked input."""

    shape: tuple[int, ...]
    indices: np.ndarray
    analytic: np.ndarray
    numeric: np.ndarray
    rel_error: np.ndarray

    @property
    def max_rel_error(self) -> float:
        return float(self.rel_error.max()) if self.rel_error.size else 0.0


@dataclass
class GradCheckReport:
    inputs: list[InputReport] = field(default_factory=list)
    tolerance: float = 1e-4

    @property
    def max_rel_error(self) -> float:
        return max((r.max_rel_error for r in self.inputs), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_rel_error < self.tolerance


def finite_diff_check(
    f: Callable[..., Tensor],
    inputs: Union[Tensor, Sequence[Tensor]],
    tol: float = 1e-4,
    eps: float = 1e-4,
    floor: float = 1e-6,
    max_elements: Optional[int] = None,
    seed: int = 0,
) -> GradCheckReport:
    """Compare autodiff gradients of scalar ``f(*inputs)`` with central differences.

    The relative error of an element is ``|a - n| / max(|a|, |n|, floor)``.
    Run under ``default_dtype(np.float64)``; tolerances assume 64-bit data.
    ``max_elements`` bounds how many entries per input are perturbed, chosen
    at random with ``seed``.
    """
    if isinstance(inputs, Tensor):
        inputs = [inputs]
    inputs = list(inputs)
    for tensor in inputs:
        tensor.zero_grad()
    out = f(*inputs)
    out.backward()
    analytic_grads = [
        t.grad.copy() if t.grad is not None else np.zeros_like(t.data) for t in inputs
    ]

    rng = np.random.default_rng(seed)
    report = GradCheckReport(tolerance=tol)
    for tensor, analytic in zip(inputs, analytic_grads):
        flat = tensor.data.reshape(-1)
        chosen = np.arange(flat.size)
        if max_elements is not None and flat.size > max_elements:
            chosen = np.sort(rng.choice(flat.size, size=max_elements, replace=False))
        numeric = np.empty(chosen.size)
        with no_grad():
            for slot, index in enumerate(chosen):
                original = flat[index]
                flat[index] = original + eps
                plus = f(*inputs).item()
                flat[index] = original - eps
                minus = f(*inputs).item()
                flat[index] = original
                numeric[slot] = (plus - minus) / (2.0 * eps)
        picked = analytic.reshape(-1)[chosen].astype(np.float64)
        denom = np.maximum(np.maximum(np.abs(picked), np.abs(numeric)), floor)
        report.inputs.append(
            InputReport(
                shape=tensor.shape,
                indices=chosen,
                analytic=picked,
                numeric=numeric,
                rel_error=np.abs(picked - numeric) / denom,
            )
        )
    return report
