"""Image decode/encode, dataset enumeration, labels, and the replay manifest.

Output images are always PNG: the augmented pixel statistics are the whole
point of the artifact, and lossy recompression would corrupt the injected
noise. Label files are copied byte-for-byte. The manifest is newline-delimited
JSON with enough precision to replay every output bit-for-bit.
"""

from __future__ import annotations

import fnmatch
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray
from PIL import Image, UnidentifiedImageError

from .effects import AugmentationParams
from .sampling import ParamRanges

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg")


class ImageIOError(Exception):
    """Base class for image decode/encode failures."""


class MissingImageError(ImageIOError):
    pass


class UnsupportedImageError(ImageIOError):
    pass


class ImageDecodeError(ImageIOError):
    pass


@dataclass(frozen=True)
class DatasetItem:
    """One enumerated source image with its stable key and optional label."""

    image_path: Path
    stable_key: str
    label_path: Path | None = None


@dataclass(frozen=True)
class AugmentationRecord:
    """Provenance row: replaying (source, params) reproduces output exactly."""

    source: str
    output: str
    aug_index: int
    seed: int
    params: AugmentationParams

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "output": self.output,
            "aug_index": self.aug_index,
            "seed": self.seed,
            "params": self.params.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AugmentationRecord":
        return cls(
            source=data["source"],
            output=data["output"],
            aug_index=int(data["aug_index"]),
            seed=int(data["seed"]),
            params=AugmentationParams.from_dict(data["params"]),
        )


def load_image(path: str | Path) -> NDArray[np.float32]:
    """Decode an 8-bit PNG or JPEG into a float32 [0, 255] RGB buffer.

    Grayscale is promoted to RGB; higher bit depths and extra channels are
    rejected. Integer sample values map to the same float values exactly.
    """
    path = Path(path)
    if not path.exists():
        raise MissingImageError(f"no such image file: {path}")
    try:
        with Image.open(path) as im:
            im.load()
            mode = im.mode
            if mode == "L":
                im = im.convert("RGB")
            elif mode != "RGB":
                raise UnsupportedImageError(
                    f"{path}: unsupported image mode {mode!r} "
                    "(only 8-bit RGB or grayscale)"
                )
            return np.asarray(im, dtype=np.float32)
    except UnidentifiedImageError as exc:
        raise ImageDecodeError(f"{path}: cannot decode image: {exc}") from exc


def save_image(image: NDArray, path: str | Path) -> None:
    """Quantize to 8 bits (half away from zero) and write a PNG."""
    arr = np.asarray(image, dtype=np.float64)
    # Samples are non-negative, so floor(x + 0.5) is half-away-from-zero.
    q = np.clip(np.floor(arr + 0.5), 0.0, 255.0).astype(np.uint8)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(q, "RGB").save(path, format="PNG")


def quantize(image: NDArray) -> NDArray[np.uint8]:
    """The exact 8-bit rounding applied by :func:`save_image`."""
    arr = np.asarray(image, dtype=np.float64)
    return np.clip(np.floor(arr + 0.5), 0.0, 255.0).astype(np.uint8)


def enumerate_items(
    dataset_root: str | Path,
    pattern: str | None = None,
    labels_dir: str | Path | None = None,
) -> list[DatasetItem]:
    """List image files under a root in stable, platform-independent order.

    Keys are forward-slash relative paths sorted lexicographically, so the
    result does not depend on the OS directory-listing order. ``pattern`` is
    an optional fnmatch filter on the stable key. Labels, when a labels
    directory is given, are the matching relative paths with a .txt suffix.
    """
    root = Path(dataset_root)
    if not root.is_dir():
        raise NotADirectoryError(f"not a readable directory: {root}")
    labels_root = Path(labels_dir) if labels_dir is not None else None
    items = []
    for path in root.rglob("*"):
        if not path.is_file() or path.suffix.lower() not in IMAGE_SUFFIXES:
            continue
        key = path.relative_to(root).as_posix()
        if pattern is not None and not fnmatch.fnmatch(key, pattern):
            continue
        label = None
        if labels_root is not None:
            candidate = labels_root / Path(key).with_suffix(".txt")
            if candidate.is_file():
                label = candidate
        items.append(DatasetItem(image_path=path, stable_key=key, label_path=label))
    items.sort(key=lambda item: item.stable_key)
    return items


def copy_label(item: DatasetItem, dest: Path) -> None:
    """Copy the label file byte-for-byte (original labels are reused as-is)."""
    assert item.label_path is not None
    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_bytes(item.label_path.read_bytes())


def write_manifest(records: list[AugmentationRecord], path: str | Path) -> None:
    """Write newline-delimited JSON, one record per line, keys in fixed order.

    Floats are serialized with repr-level precision, so parsing a line back
    yields an equal record.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record.to_dict()) + "\n")


def read_manifest(path: str | Path) -> list[AugmentationRecord]:
    with Path(path).open("r", encoding="utf-8") as fh:
        return [AugmentationRecord.from_dict(json.loads(line)) for line in fh if line.strip()]


def load_config(path: str | Path) -> ParamRanges:
    """Load and validate a ParamRanges JSON config file."""
    with Path(path).open("r", encoding="utf-8") as fh:
        return ParamRanges.from_dict(json.load(fh))
