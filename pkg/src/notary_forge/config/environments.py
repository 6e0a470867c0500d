from dataclasses import dataclass

from ..corpus.spec import CorpusSpec
from .training import TrainConfig


@dataclass
class ScalePreset:
    """Corpus size, image size and training durations of one scale."""

    name: str
    corpus: CorpusSpec
    classification: TrainConfig
    segmentation: TrainConfig
    classifier_input: tuple[int, int]
    unet_base_channels: int

    def train_config(self, task: str, focal: bool = False, **overrides) -> TrainConfig:
        """Task defaults with the focal learning rate applied when asked for."""
        base = self.classification if task == "classification" else self.segmentation
        return base.for_loss(focal).with_overrides(**overrides)


class Environments:
    @staticmethod
    def get_desk_config() -> ScalePreset:
        """Laptop CPU scale: 64×64 pages, 3300 documents at 32:1."""
        return ScalePreset(
            name="desk",
            corpus=CorpusSpec(),
            classification=TrainConfig.classification(),
            segmentation=TrainConfig.segmentation(),
            classifier_input=(64, 64),
            unet_base_channels=16,
        )

    @staticmethod
    def get_paper_config() -> ScalePreset:
        """Full-size hyper-parameters: 224×224 pages, 31,836 documents, long runs."""
        return ScalePreset(
            name="paper",
            corpus=CorpusSpec(n_non_notary=30871, n_notary=965, image_size=(224, 224)),
            classification=TrainConfig.classification(duration=1250, batch_size=32),
            segmentation=TrainConfig.segmentation(duration=60, batch_size=16),
            classifier_input=(224, 224),
            unet_base_channels=64,
        )

    @staticmethod
    def get_test_config() -> ScalePreset:
        """Tiny corpus and runs for the test suite."""
        return ScalePreset(
            name="test",
            corpus=CorpusSpec(n_non_notary=64, n_notary=8, image_size=(32, 32)),
            classification=TrainConfig.classification(duration=4, batch_size=4, log_every=1),
            segmentation=TrainConfig.segmentation(duration=1, batch_size=2, step_size=1),
            classifier_input=(32, 32),
            unet_base_channels=4,
        )

    @classmethod
    def get_config(cls, environment: str) -> ScalePreset:
        """Get the preset for the named scale."""
        env_map = {
            "desk": cls.get_desk_config,
            "paper": cls.get_paper_config,
            "test": cls.get_test_config,
        }

        config_getter = env_map.get(environment.lower())
        if not config_getter:
            raise ValueError(f"Unknown environment: {environment}")

        return config_getter()
