"""Deterministic batch augmentation over a dataset tree.

Every (image, augmentation index) pair is an independent unit of work whose
parameters derive only from the global seed and the item's stable key, so the
output trees and manifest are byte-identical for any worker count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import dataset_io
from .dataset_io import AugmentationRecord, DatasetItem
from .effects import augment
from .sampling import ParamRanges, derive_seed, sample_params

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class JobSpec:
    """A full batch job: dataset roots, config, seeding, and worker count."""

    input_dir: Path
    output_dir: Path
    ranges: ParamRanges
    global_seed: int = 0
    augs_per_image: int = 1
    labels_dir: Path | None = None
    manifest_path: Path | None = None
    jobs: int = 1

    def validate(self) -> None:
        if self.augs_per_image < 1:
            raise ValueError("augs_per_image must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if Path(self.input_dir).resolve() == Path(self.output_dir).resolve():
            raise ValueError("output_dir must differ from input_dir")
        self.ranges.validate()


@dataclass
class BatchResult:
    records: list[AugmentationRecord] = field(default_factory=list)
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def output_name(stable_key: str, aug_index: int, suffix: str = ".png") -> str:
    """`<stem>_aug<k>` with the relative subdirectory preserved."""
    rel = Path(stable_key)
    return (rel.parent / f"{rel.stem}_aug{aug_index}{suffix}").as_posix()


def _process_task(
    task: tuple[DatasetItem, int],
    output_dir: Path,
    ranges: ParamRanges,
    global_seed: int,
) -> AugmentationRecord:
    item, aug_index = task
    seed = derive_seed(global_seed, f"{item.stable_key}#{aug_index}")
    params = sample_params(ranges, seed)
    image = dataset_io.load_image(item.image_path)
    result = augment(image, params)
    out_key = output_name(item.stable_key, aug_index)
    dataset_io.save_image(result, output_dir / out_key)
    if item.label_path is not None:
        dataset_io.copy_label(item, output_dir / output_name(item.stable_key, aug_index, ".txt"))
    return AugmentationRecord(
        source=item.stable_key,
        output=out_key,
        aug_index=aug_index,
        seed=seed,
        params=params,
    )


def run_batch(spec: JobSpec) -> BatchResult:
    """Augment every enumerated item ``augs_per_image`` times.

    Per-item failures are logged and collected rather than aborting the batch;
    the manifest holds the successful records in stable key order.
    """
    spec.validate()
    items = dataset_io.enumerate_items(spec.input_dir, labels_dir=spec.labels_dir)
    tasks = [(item, k) for item in items for k in range(spec.augs_per_image)]
    result = BatchResult()

    def handle(task: tuple[DatasetItem, int], outcome: AugmentationRecord | Exception) -> None:
        if isinstance(outcome, Exception):
            key = f"{task[0].stable_key}#{task[1]}"
            log.error("failed to augment %s: %s", key, outcome)
            result.failures.append((key, str(outcome)))
        else:
            result.records.append(outcome)

    if spec.jobs == 1 or len(tasks) <= 1:
        for task in tasks:
            try:
                outcome: AugmentationRecord | Exception = _process_task(
                    task, Path(spec.output_dir), spec.ranges, spec.global_seed
                )
            except Exception as exc:  # noqa: BLE001 - isolate per-item failures
                outcome = exc
            handle(task, outcome)
    else:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            futures = [
                pool.submit(_process_task, task, Path(spec.output_dir),
                            spec.ranges, spec.global_seed)
                for task in tasks
            ]
            for task, fut in zip(tasks, futures):
                try:
                    outcome = fut.result()
                except Exception as exc:  # noqa: BLE001
                    outcome = exc
                handle(task, outcome)

    result.records.sort(key=lambda r: (r.source, r.aug_index))
    if spec.manifest_path is not None:
        dataset_io.write_manifest(result.records, spec.manifest_path)
    return result
