"""The ``forge`` command line."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from loguru import logger
from pydantic import ValidationError

from ..augment import PRESETS, AugmentationPlan, apply_plan, sample_plan
from ..config import AppSettings, Environments, ScalePreset, Settings
from ..corpus import CorpusSpec, Manifest, generate_corpus, import_local
from ..corpus.imageio import load_image, load_mask, save_image, save_mask
from ..errors import ConfigError
from ..monitoring import RunMetricsConfig, configure_logging
from ..ndtensor import set_debug
from ..rng import make_rng
from .experiments import get_setting, resolve_task
from .grid import run_grid, run_setting
from .report import write_report

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

TOPOLOGIES = ("dense", "residual")


def _seeds(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"seeds must be comma-separated integers: {text}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forge", description="Class-imbalance countermeasures for notarial document analysis."
    )
    parser.add_argument("--log-level", default=None, help="override FORGE_LOG_LEVEL")
    parser.add_argument(
        "--paper-scale", "--full-scale", action="store_true", help="use the full-size hyper-parameters"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    corpus = commands.add_parser("corpus", help="build or check a corpus").add_subparsers(
        dest="action", required=True
    )
    generate = corpus.add_parser("generate", help="render a synthetic corpus")
    generate.add_argument("--spec", type=Path, help="CorpusSpec JSON (default: scale preset)")
    generate.add_argument("--out", type=Path, required=True)
    generate.add_argument("--workers", type=int, default=None)
    imported = corpus.add_parser("import", help="build a manifest from annotated scans")
    imported.add_argument("--images", type=Path, required=True)
    imported.add_argument("--annotations", type=Path, required=True)
    imported.add_argument("--out", type=Path, default=None)
    imported.add_argument("--seed", type=int, default=0)
    verify = corpus.add_parser("verify", help="recompute manifest checksums")
    verify.add_argument("--corpus", type=Path, required=True)

    augment = commands.add_parser("augment", help="augmentation tools").add_subparsers(
        dest="action", required=True
    )
    preview = augment.add_parser("preview", help="augment one image and keep its plan")
    preview.add_argument("--level", required=True, choices=sorted(PRESETS))
    preview.add_argument("--seed", type=int, default=0)
    preview.add_argument("--in", dest="input", type=Path, required=True)
    preview.add_argument("--out", type=Path, required=True)
    preview.add_argument("--plan", type=Path, default=None, help="write the sampled plan here")
    preview.add_argument("--replay", type=Path, default=None, help="apply this plan instead")
    preview.add_argument("--mask", type=Path, default=None)
    preview.add_argument("--mask-out", type=Path, default=None)

    train = commands.add_parser("train", help="train one setting")
    train.add_argument("task", choices=("cls", "seg"))
    train.add_argument("--setting", type=int, required=True)
    train.add_argument("--seed", type=int, default=0)
    train.add_argument("--corpus", type=Path, required=True)
    train.add_argument("--out", type=Path, required=True)
    train.add_argument("--model", choices=("residual", "dense"), default=None)
    train.add_argument("--duration", type=int, default=None)

    grid = commands.add_parser("grid", help="train every setting of a grid")
    grid.add_argument("task", choices=("cls", "seg"))
    grid.add_argument("--seeds", type=_seeds, default=None, help="e.g. 1,2,3")
    grid.add_argument("--settings", type=_seeds, default=None, help="subset, e.g. 1,2,4")
    grid.add_argument("--corpus", type=Path, required=True)
    grid.add_argument("--out", type=Path, required=True)
    grid.add_argument("--workers", type=int, default=None)
    grid.add_argument("--duration", type=int, default=None)
    grid.add_argument(
        "--model",
        choices=("residual", "dense", "both"),
        default=None,
        help="classifier topology for every cell (default: each setting's own)",
    )

    report = commands.add_parser("report", help="summarise grid results")
    report.add_argument("--in", dest="input", type=Path, required=True)
    report.add_argument("--out", type=Path, default=None)
    return parser


def _scale(args: argparse.Namespace, settings: AppSettings) -> ScalePreset:
    return Environments.get_paper_config() if args.paper_scale else settings.scale


def _corpus(args, settings: AppSettings) -> int:
    if args.action == "generate":
        if args.spec is not None:
            try:
                spec = CorpusSpec.model_validate_json(args.spec.read_text(encoding="utf-8"))
            except OSError as e:
                raise ConfigError(f"cannot read corpus spec {args.spec}: {e}") from e
        else:
            spec = _scale(args, settings).corpus
        manifest = generate_corpus(spec, args.out, workers=args.workers or settings.workers)
        print(f"{len(manifest.records)} documents written to {args.out}")
    elif args.action == "import":
        manifest = import_local(args.images, args.annotations, args.out, seed=args.seed)
        print(f"{len(manifest.records)} documents imported into {manifest.root}")
    else:
        bad = Manifest.load(args.corpus, check_files=False).verify()
        if bad:
            logger.error("{} files do not match their checksums, e.g. {}", len(bad), bad[0])
            return EXIT_RUNTIME
        print(f"{args.corpus}: all checksums match")
    return EXIT_OK


def _augment(args) -> int:
    image = load_image(args.input).astype("float32") / 255.0
    mask = load_mask(args.mask) if args.mask is not None else None
    if args.replay is not None:
        plan = AugmentationPlan.from_json(args.replay.read_text(encoding="utf-8"))
    else:
        plan = sample_plan(PRESETS[args.level], make_rng(args.seed, "preview"), seed=args.seed)
    out_image, out_mask = apply_plan(plan, image, mask)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    save_image(args.out, out_image)
    if out_mask is not None and args.mask_out is not None:
        save_mask(args.mask_out, out_mask)
    if args.plan is not None:
        args.plan.write_text(plan.to_json() + "\n", encoding="utf-8")
    print(f"{len(plan)} effects: {', '.join(step.effect for step in plan.steps) or 'none'}")
    return EXIT_OK


def _overrides(args) -> dict:
    return {} if args.duration is None else {"duration": args.duration}


def _train(args, settings: AppSettings) -> int:
    setting = get_setting(args.task, args.setting)
    if args.model is not None:
        if setting.task != "classification":
            raise ConfigError("--model only applies to classification settings")
        setting = setting.with_model(args.model)
    manifest = Manifest.load(args.corpus)
    result = run_setting(
        setting,
        manifest,
        _scale(args, settings),
        args.seed,
        args.out,
        metrics_config=RunMetricsConfig.for_profile(settings.run_metrics),
        **_overrides(args),
    )
    scores = ", ".join(
        f"{k}={v:.4f}" for k, v in result.row.items() if isinstance(v, float)
    )
    print(f"{setting.label} seed {args.seed}: {scores}")
    return EXIT_OK


def _grid(args, settings: AppSettings) -> int:
    task = resolve_task(args.task)
    models = None
    if args.model is not None:
        if task != "classification":
            raise ConfigError("--model only applies to classification settings")
        models = list(TOPOLOGIES) if args.model == "both" else [args.model]
    seeds = args.seeds or ([1, 2, 3] if task == "classification" else [1])
    result = run_grid(
        task,
        seeds,
        args.corpus,
        args.out,
        preset=_scale(args, settings),
        workers=args.workers or settings.workers,
        settings=args.settings,
        models=models,
        metrics_config=RunMetricsConfig.for_profile(settings.run_metrics),
        **_overrides(args),
    )
    print(f"{len(result.rows)} runs, {len(result.failures)} failed: {result.results}")
    return EXIT_OK if not result.failures else EXIT_RUNTIME


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = Settings.load()
        configure_logging(settings, args.log_level)
        set_debug(settings.debug_mode)
        if args.command == "corpus":
            return _corpus(args, settings)
        if args.command == "augment":
            return _augment(args)
        if args.command == "train":
            return _train(args, settings)
        if args.command == "grid":
            return _grid(args, settings)
        path = write_report(args.input, args.out)
        print(f"report written to {path}")
        return EXIT_OK
    except (ConfigError, ValidationError, ValueError) as e:
        logger.error("Configuration error: {}", e)
        return EXIT_CONFIG
    except Exception as e:
        logger.exception("Run failed: {}", e)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
