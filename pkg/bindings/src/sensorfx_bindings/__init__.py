"""In-process access to the augmentation engine for training loops.

Operates on caller-provided H x W x 3 arrays (uint8 or float32) and plain
mappings mirroring the JSON schemas, so callers never touch the engine's
internal dataclasses. Results are numerically identical to the file-based
CLI path for the same pixels, parameters, and seeds. The functions hold no
global state and are safe to call from multiple threads.
"""

from __future__ import annotations

import json

import numpy as np

from sensorfx.effects import AugmentationParams
from sensorfx.effects import augment as _augment
from sensorfx.sampling import ParamRanges
from sensorfx.sampling import derive_seed as _derive_seed
from sensorfx.sampling import sample_params as _sample_params

__version__ = "0.1.0"

__all__ = ["augment", "sample_params", "derive_seed"]


def _coerce_params(params: dict | str | AugmentationParams) -> AugmentationParams:
    if isinstance(params, AugmentationParams):
        return params
    if isinstance(params, str):
        params = json.loads(params)
    if not isinstance(params, dict):
        raise TypeError(f"params must be a mapping or JSON string, got {type(params).__name__}")
    return AugmentationParams.from_dict(params)


def augment(array: np.ndarray, params: dict | str | AugmentationParams) -> np.ndarray:
    """Augment an H x W x 3 array, returning a new array of the same dtype.

    uint8 input is promoted to float [0, 255] on the way in and rounded half
    away from zero on the way out, matching the PNG-backed CLI path exactly.
    float32 input must already lie in [0, 255].
    """
    arr = np.asarray(array)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"expected an H x W x 3 array, got shape {arr.shape}")
    if arr.dtype == np.uint8:
        image = arr.astype(np.float32)
    elif arr.dtype in (np.float32, np.float64):
        image = arr.astype(np.float32, copy=False)
    else:
        raise TypeError(f"unsupported dtype {arr.dtype}; use uint8 or float32")
    result = _augment(image, _coerce_params(params))
    if arr.dtype == np.uint8:
        return np.clip(np.floor(result.astype(np.float64) + 0.5), 0.0, 255.0).astype(np.uint8)
    return result.astype(arr.dtype, copy=False)


def sample_params(config: dict | None, seed: int) -> dict:
    """Draw one parameter set; ``config`` follows the JSON config schema.

    Returns a mapping in the params JSON schema, byte-identical to what the
    ``sensorfx sample`` command prints for the same config and seed.
    """
    ranges = ParamRanges.from_dict(config) if config is not None else ParamRanges()
    return _sample_params(ranges, seed).to_dict()


def derive_seed(global_seed: int, item_key: str) -> int:
    """Stable 64-bit per-item seed; identical to the core engine's derivation."""
    return _derive_seed(global_seed, item_key)
