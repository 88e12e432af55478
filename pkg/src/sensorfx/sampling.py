"""Reproducible random draws of augmentation parameters.

Each scalar is drawn independently and uniformly from its configured closed
interval. Seeds for individual dataset items come from a keyed 64-bit hash of
the item key, so results do not depend on traversal order or worker count.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .effects import (
    DEFAULT_CONTRAST,
    AugmentationParams,
    BlurParams,
    ChromAbParams,
    ColorShiftParams,
    ExposureParams,
    NoiseParams,
)

_UINT64_MASK = (1 << 64) - 1

Interval = tuple[float, float]


@dataclass(frozen=True)
class ParamRanges:
    """Sampling domain: per-parameter intervals plus per-effect enable flags.

    The defaults are this artifact's own tuned values, chosen to stay visually
    plausible at road-scene resolutions; every one is overridable via the JSON
    config. ``contrast`` may be a fixed scalar or an interval.
    """

    chrom_ab_enabled: bool = True
    green_scale: Interval = (0.998, 1.006)
    shift: Interval = (-2.0, 2.0)
    blur_enabled: bool = True
    sigma: Interval = (0.0, 3.0)
    exposure_enabled: bool = True
    delta_s: Interval = (-1.2, 1.2)
    contrast: float | Interval = DEFAULT_CONTRAST
    noise_enabled: bool = True
    poisson_scale: Interval = (0.0, 4.0)
    gaussian_std: Interval = (0.0, 8.0)
    color_enabled: bool = True
    delta_l: Interval = (-10.0, 10.0)
    delta_a: Interval = (-10.0, 10.0)
    delta_b: Interval = (-10.0, 10.0)

    def validate(self) -> None:
        for name in ("green_scale", "shift", "sigma", "delta_s",
                     "poisson_scale", "gaussian_std", "delta_l", "delta_a", "delta_b"):
            lo, hi = getattr(self, name)
            if not (np.isfinite(lo) and np.isfinite(hi) and lo <= hi):
                raise ValueError(f"invalid interval for {name}: [{lo}, {hi}]")
        if self.green_scale[0] <= 0.0:
            raise ValueError("green channel scale interval must be positive")
        for name in ("sigma", "poisson_scale", "gaussian_std"):
            if getattr(self, name)[0] < 0.0:
                raise ValueError(f"{name} interval must be non-negative")
        lo, hi = self._contrast_interval()
        if not (np.isfinite(lo) and np.isfinite(hi) and 0.0 < lo <= hi):
            raise ValueError(f"invalid contrast: {self.contrast}")

    def _contrast_interval(self) -> Interval:
        if isinstance(self.contrast, (int, float)):
            return (float(self.contrast), float(self.contrast))
        lo, hi = self.contrast
        return (float(lo), float(hi))

    def to_dict(self) -> dict:
        """Serialize to the JSON config schema."""
        contrast = self.contrast if isinstance(self.contrast, (int, float)) else list(self.contrast)
        return {
            "chromatic_aberration": {
                "enabled": self.chrom_ab_enabled,
                "S": list(self.green_scale),
                "t": list(self.shift),
            },
            "blur": {"enabled": self.blur_enabled, "sigma": list(self.sigma)},
            "exposure": {
                "enabled": self.exposure_enabled,
                "delta_S": list(self.delta_s),
                "A": contrast,
            },
            "noise": {
                "enabled": self.noise_enabled,
                "a": list(self.poisson_scale),
                "b": list(self.gaussian_std),
            },
            "color_shift": {
                "enabled": self.color_enabled,
                "dL": list(self.delta_l),
                "da": list(self.delta_a),
                "db": list(self.delta_b),
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ParamRanges":
        """Parse the JSON config schema; unknown keys are rejected."""
        if not isinstance(data, dict):
            raise ValueError("config must be a JSON object")
        allowed = {"chromatic_aberration", "blur", "exposure", "noise", "color_shift"}
        unknown = set(data) - allowed
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs: dict = {}

        def section(name: str, keys: set[str]) -> dict:
            sec = data.get(name, {})
            if not isinstance(sec, dict):
                raise ValueError(f"config section {name!r} must be an object")
            bad = set(sec) - keys - {"enabled"}
            if bad:
                raise ValueError(f"unknown keys in {name!r}: {sorted(bad)}")
            return sec

        def interval(sec: dict, key: str) -> Interval | None:
            if key not in sec:
                return None
            v = sec[key]
            if not (isinstance(v, (list, tuple)) and len(v) == 2):
                raise ValueError(f"{key!r} must be a [lo, hi] pair, got {v!r}")
            return (float(v[0]), float(v[1]))

        mapping = [
            ("chromatic_aberration", "chrom_ab_enabled",
             {"S": "green_scale", "t": "shift"}),
            ("blur", "blur_enabled", {"sigma": "sigma"}),
            ("exposure", "exposure_enabled", {"delta_S": "delta_s"}),
            ("noise", "noise_enabled", {"a": "poisson_scale", "b": "gaussian_std"}),
            ("color_shift", "color_enabled",
             {"dL": "delta_l", "da": "delta_a", "db": "delta_b"}),
        ]
        for sec_name, flag, fields in mapping:
            keys = set(fields) | ({"A"} if sec_name == "exposure" else set())
            sec = section(sec_name, keys)
            if "enabled" in sec:
                kwargs[flag] = bool(sec["enabled"])
            for key, attr in fields.items():
                iv = interval(sec, key)
                if iv is not None:
                    kwargs[attr] = iv
            if sec_name == "exposure" and "A" in sec:
                a = sec["A"]
                if isinstance(a, (int, float)):
                    kwargs["contrast"] = float(a)
                else:
                    kwargs["contrast"] = interval(sec, "A")
        ranges = cls(**kwargs)
        ranges.validate()
        return ranges


def sample_params(ranges: ParamRanges, seed: int) -> AugmentationParams:
    """Draw one AugmentationParams uniformly from the configured intervals.

    Disabled effects receive identity parameters and consume no draws. The
    draw order is fixed and documented by the code below; changing it would
    break reproducibility of existing manifests.
    """
    ranges.validate()
    gen = np.random.Generator(np.random.Philox(key=int(seed) & _UINT64_MASK))

    def draw(interval: Interval) -> float:
        lo, hi = interval
        return float(gen.uniform(lo, hi))

    chrom_ab = ChromAbParams()
    if ranges.chrom_ab_enabled:
        chrom_ab = ChromAbParams(
            green_scale=draw(ranges.green_scale),
            red_shift=(draw(ranges.shift), draw(ranges.shift)),
            green_shift=(draw(ranges.shift), draw(ranges.shift)),
            blue_shift=(draw(ranges.shift), draw(ranges.shift)),
        )
    blur = BlurParams(sigma=draw(ranges.sigma)) if ranges.blur_enabled else BlurParams()
    exposure = ExposureParams()
    if ranges.exposure_enabled:
        delta_s = draw(ranges.delta_s)
        if isinstance(ranges.contrast, (int, float)):
            contrast = float(ranges.contrast)
        else:
            contrast = draw(ranges._contrast_interval())
        exposure = ExposureParams(delta_s=delta_s, contrast=contrast)
    noise = NoiseParams()
    if ranges.noise_enabled:
        noise = NoiseParams(
            poisson_scale=draw(ranges.poisson_scale),
            gaussian_std=draw(ranges.gaussian_std),
        )
    color = ColorShiftParams()
    if ranges.color_enabled:
        color = ColorShiftParams(
            delta_l=draw(ranges.delta_l),
            delta_a=draw(ranges.delta_a),
            delta_b=draw(ranges.delta_b),
        )
    noise_seed = int(gen.integers(0, 1 << 64, dtype=np.uint64))
    return AugmentationParams(
        chrom_ab=chrom_ab, blur=blur, exposure=exposure,
        noise=noise, color=color, noise_seed=noise_seed,
    )


def derive_seed(global_seed: int, item_key: str) -> int:
    """Stable 64-bit per-item seed.

    BLAKE2b with an 8-byte digest, keyed by the little-endian global seed and
    fed the UTF-8 item key; the digest is read little-endian. This mapping is
    part of the manifest file format and must never change.
    """
    digest = hashlib.blake2b(
        item_key.encode("utf-8"),
        digest_size=8,
        key=(int(global_seed) & _UINT64_MASK).to_bytes(8, "little"),
    ).digest()
    return int.from_bytes(digest, "little")
