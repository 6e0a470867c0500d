"""Class-balancing sample streams over the training split."""

from __future__ import annotations

from collections import deque
from typing import Iterator, Literal, Sequence

from ..corpus import Label, Manifest
from ..errors import ConfigError
from ..rng import make_rng

SamplingMode = Literal["natural", "oversample", "undersample"]
SAMPLING_MODES = ("natural", "oversample", "undersample")


class SampleStream:
    """Endless, seed-determined sequence of record ids.

    ``natural`` shuffles the whole pool every epoch. ``oversample`` picks a
    class with probability 0.5, then a member of it with replacement.
    ``undersample`` builds epochs of the whole smaller class plus an
    equally large random subset of the larger one, redrawn every epoch.
    """

    def __init__(
        self,
        majority: Sequence[str],
        minority: Sequence[str],
        mode: SamplingMode = "natural",
        seed: int = 0,
    ):
        if mode not in SAMPLING_MODES:
            raise ConfigError(f"unknown sampling mode: {mode}")
        if mode != "natural" and (not majority or not minority):
            raise ConfigError(
                f"{mode} needs both classes in the pool, got {len(majority)} majority "
                f"and {len(minority)} minority records"
            )
        if not majority and not minority:
            raise ConfigError("cannot sample from an empty pool")
        self.majority = list(majority)
        self.minority = list(minority)
        self.mode = mode
        self.seed = seed
        self.position = 0
        self.epoch = 0
        self._rng = make_rng(seed, "sample-stream", mode)
        self._pending: deque[str] = deque()

    @classmethod
    def from_manifest(
        cls, manifest: Manifest, mode: SamplingMode = "natural", seed: int = 0, split: str = "train"
    ) -> "SampleStream":
        notary = [e.id for e in manifest.select(split, Label.NOTARY)]
        other = [e.id for e in manifest.select(split, Label.NON_NOTARY)]
        majority, minority = (other, notary) if len(other) >= len(notary) else (notary, other)
        return cls(majority, minority, mode, seed)

    @property
    def pool(self) -> list[str]:
        return self.majority + self.minority

    @property
    def epoch_length(self) -> int:
        if self.mode == "undersample":
            return 2 * min(len(self.majority), len(self.minority))
        return len(self.majority) + len(self.minority)

    def next_epoch(self) -> list[str]:
        """Ids of one epoch; for ``oversample`` this is ``epoch_length`` draws."""
        self.epoch += 1
        if self.mode == "oversample":
            return [self._draw() for _ in range(self.epoch_length)]
        if self.mode == "natural":
            ids = self.pool
        else:
            small, large = sorted((self.majority, self.minority), key=len)
            picked = self._rng.choice(len(large), size=len(small), replace=False)
            ids = small + [large[int(i)] for i in sorted(picked)]
        return [ids[int(i)] for i in self._rng.permutation(len(ids))]

    def _draw(self) -> str:
        pool = self.minority if self._rng.random() < 0.5 else self.majority
        return pool[int(self._rng.integers(len(pool)))]

    def __iter__(self) -> Iterator[str]:
        return self

    def __next__(self) -> str:
        if self.mode == "oversample":
            item = self._draw()
        else:
            if not self._pending:
                self._pending.extend(self.next_epoch())
            item = self._pending.popleft()
        self.position += 1
        return item

    def take(self, n: int) -> list[str]:
        return [next(self) for _ in range(n)]


def oversample_minority(manifest: Manifest, seed: int) -> SampleStream:
    return SampleStream.from_manifest(manifest, "oversample", seed)


def undersample_majority(manifest: Manifest, seed: int) -> SampleStream:
    return SampleStream.from_manifest(manifest, "undersample", seed)


def make_stream(manifest: Manifest, mode: SamplingMode, seed: int, split: str = "train") -> SampleStream:
    return SampleStream.from_manifest(manifest, mode, seed, split)
