"""Command-line surface: single-image augment, dataset batch, param sampling."""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from . import batch as batch_mod
from . import dataset_io
from .effects import AugmentationParams, augment
from .sampling import ParamRanges, sample_params


@click.group()
@click.version_option(package_name="sensorfx")
def main() -> None:
    """Physically-based camera sensor effect augmentation."""
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")


@main.command("augment")
@click.option("--input", "input_path", required=True, type=click.Path(path_type=Path))
@click.option("--output", "output_path", required=True, type=click.Path(path_type=Path))
@click.option("--params", "params_path", required=True, type=click.Path(path_type=Path),
              help="JSON file holding a full set of augmentation parameters.")
def cmd_augment(input_path: Path, output_path: Path, params_path: Path) -> None:
    """Augment a single image with explicit parameters."""
    try:
        params = AugmentationParams.from_dict(
            json.loads(params_path.read_text(encoding="utf-8"))
        )
    except FileNotFoundError:
        click.echo(f"error: no such params file: {params_path}", err=True)
        sys.exit(2)
    except (ValueError, json.JSONDecodeError) as exc:
        click.echo(f"error: invalid params file {params_path}: {exc}", err=True)
        sys.exit(1)
    try:
        image = dataset_io.load_image(input_path)
    except dataset_io.MissingImageError:
        click.echo(f"error: no such input image: {input_path}", err=True)
        sys.exit(2)
    except dataset_io.ImageIOError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    try:
        result = augment(image, params)
        dataset_io.save_image(result, output_path)
    except (ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    click.echo(json.dumps(params.to_dict()))


@main.command("batch")
@click.option("--input-dir", required=True, type=click.Path(path_type=Path))
@click.option("--output-dir", required=True, type=click.Path(path_type=Path))
@click.option("--config", "config_path", type=click.Path(path_type=Path),
              help="ParamRanges JSON config; defaults apply when omitted.")
@click.option("--seed", "global_seed", type=int, default=0, show_default=True)
@click.option("--augs-per-image", type=int, default=1, show_default=True)
@click.option("--labels-dir", type=click.Path(path_type=Path), default=None)
@click.option("--manifest", "manifest_path", type=click.Path(path_type=Path), default=None)
@click.option("--jobs", type=int, default=None, envvar="SENSORFX_JOBS",
              help="Worker count; results are identical for any value.")
def cmd_batch(
    input_dir: Path,
    output_dir: Path,
    config_path: Path | None,
    global_seed: int,
    augs_per_image: int,
    labels_dir: Path | None,
    manifest_path: Path | None,
    jobs: int | None,
) -> None:
    """Augment every image in a dataset tree with sampled parameters."""
    try:
        ranges = dataset_io.load_config(config_path) if config_path else ParamRanges()
    except FileNotFoundError:
        click.echo(f"error: no such config file: {config_path}", err=True)
        sys.exit(2)
    except (ValueError, json.JSONDecodeError) as exc:
        click.echo(f"error: invalid config {config_path}: {exc}", err=True)
        sys.exit(1)
    spec = batch_mod.JobSpec(
        input_dir=input_dir,
        output_dir=output_dir,
        ranges=ranges,
        global_seed=global_seed,
        augs_per_image=augs_per_image,
        labels_dir=labels_dir,
        manifest_path=manifest_path,
        jobs=jobs if jobs is not None else 1,
    )
    try:
        spec.validate()
        result = batch_mod.run_batch(spec)
    except (ValueError, NotADirectoryError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    click.echo(f"augmented {len(result.records)} outputs, {len(result.failures)} failures")
    if not result.ok:
        for key, message in result.failures:
            click.echo(f"failed: {key}: {message}", err=True)
        sys.exit(1)


@main.command("sample")
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--count", type=int, default=1, show_default=True)
def cmd_sample(config_path: Path | None, seed: int, count: int) -> None:
    """Print sampled parameter sets as newline-delimited JSON."""
    try:
        ranges = dataset_io.load_config(config_path) if config_path else ParamRanges()
        ranges.validate()
    except FileNotFoundError:
        click.echo(f"error: no such config file: {config_path}", err=True)
        sys.exit(2)
    except (ValueError, json.JSONDecodeError) as exc:
        click.echo(f"error: invalid config: {exc}", err=True)
        sys.exit(1)
    for i in range(count):
        params = sample_params(ranges, seed + i)
        click.echo(json.dumps(params.to_dict()))


if __name__ == "__main__":
    main()
