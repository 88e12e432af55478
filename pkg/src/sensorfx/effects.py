"""The five physically-based camera effects and their composed pipeline.

Images are H x W x 3 float32 arrays (R, G, B) with samples in [0, 255].
Stage order in :func:`augment` is fixed: lens effects (channel warp, blur),
then sensor effects (re-exposure, mosaiced noise), then post-processing
(CIELAB color shift). Every stage is a pure function; identical inputs give
bit-identical outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from scipy import ndimage, special, stats

from .color_space import lab_to_srgb, srgb_to_lab

# Clamp margin keeping the inverse exposure sigmoid finite at 0 and 255.
EXPOSURE_EPS = 0.1

# Default sigmoid contrast constant; places the usable dynamic range of the
# exposure curve across [0, 255].
DEFAULT_CONTRAST = 0.85

# Poisson means at or above this are drawn from the Normal(mean, sqrt(mean))
# approximation instead of exact inversion sampling.
POISSON_NORMAL_APPROX_MEAN = 30.0

_UINT64_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class ChromAbParams:
    """Per-channel affine warp: green magnification plus RGB translations."""

    green_scale: float = 1.0
    red_shift: tuple[float, float] = (0.0, 0.0)
    green_shift: tuple[float, float] = (0.0, 0.0)
    blue_shift: tuple[float, float] = (0.0, 0.0)

    @property
    def is_identity(self) -> bool:
        return self.green_scale == 1.0 and not any(
            v for s in (self.red_shift, self.green_shift, self.blue_shift) for v in s
        )


@dataclass(frozen=True)
class BlurParams:
    """Out-of-focus blur strength; sigma = 0 is the identity."""

    sigma: float = 0.0

    @property
    def is_identity(self) -> bool:
        return self.sigma == 0.0


@dataclass(frozen=True)
class ExposureParams:
    """Exposure shift on the log-odds scale with sigmoid contrast constant."""

    delta_s: float = 0.0
    contrast: float = DEFAULT_CONTRAST

    @property
    def is_identity(self) -> bool:
        return self.delta_s == 0.0


@dataclass(frozen=True)
class NoiseParams:
    """Poisson-Gaussian sensor noise.

    ``poisson_scale`` is the photon scale a: shot-noise variance at intensity
    v is a * v. ``gaussian_std`` is the read-noise standard deviation b.
    (0, 0) disables the noise stage entirely, including its mosaic round trip.
    """

    poisson_scale: float = 0.0
    gaussian_std: float = 0.0

    @property
    def is_identity(self) -> bool:
        return self.poisson_scale == 0.0 and self.gaussian_std == 0.0


@dataclass(frozen=True)
class ColorShiftParams:
    """Additive CIELAB offsets modeling post-processing color cast."""

    delta_l: float = 0.0
    delta_a: float = 0.0
    delta_b: float = 0.0

    @property
    def is_identity(self) -> bool:
        return self.delta_l == self.delta_a == self.delta_b == 0.0


@dataclass(frozen=True)
class AugmentationParams:
    """One concrete draw of every effect parameter plus the noise seed."""

    chrom_ab: ChromAbParams = field(default_factory=ChromAbParams)
    blur: BlurParams = field(default_factory=BlurParams)
    exposure: ExposureParams = field(default_factory=ExposureParams)
    noise: NoiseParams = field(default_factory=NoiseParams)
    color: ColorShiftParams = field(default_factory=ColorShiftParams)
    noise_seed: int = 0

    def to_dict(self) -> dict:
        """Serialize with the JSON key names used by config and manifest files."""
        return {
            "chromatic_aberration": {
                "S": self.chrom_ab.green_scale,
                "t": {
                    "R": list(self.chrom_ab.red_shift),
                    "G": list(self.chrom_ab.green_shift),
                    "B": list(self.chrom_ab.blue_shift),
                },
            },
            "blur": {"sigma": self.blur.sigma},
            "exposure": {"delta_S": self.exposure.delta_s, "A": self.exposure.contrast},
            "noise": {"a": self.noise.poisson_scale, "b": self.noise.gaussian_std},
            "color_shift": {
                "dL": self.color.delta_l,
                "da": self.color.delta_a,
                "db": self.color.delta_b,
            },
            "noise_seed": int(self.noise_seed) & _UINT64_MASK,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AugmentationParams":
        try:
            ca = data["chromatic_aberration"]
            shifts = ca["t"]
            return cls(
                chrom_ab=ChromAbParams(
                    green_scale=float(ca["S"]),
                    red_shift=tuple(float(v) for v in shifts["R"]),
                    green_shift=tuple(float(v) for v in shifts["G"]),
                    blue_shift=tuple(float(v) for v in shifts["B"]),
                ),
                blur=BlurParams(sigma=float(data["blur"]["sigma"])),
                exposure=ExposureParams(
                    delta_s=float(data["exposure"]["delta_S"]),
                    contrast=float(data["exposure"]["A"]),
                ),
                noise=NoiseParams(
                    poisson_scale=float(data["noise"]["a"]),
                    gaussian_std=float(data["noise"]["b"]),
                ),
                color=ColorShiftParams(
                    delta_l=float(data["color_shift"]["dL"]),
                    delta_a=float(data["color_shift"]["da"]),
                    delta_b=float(data["color_shift"]["db"]),
                ),
                noise_seed=int(data["noise_seed"]) & _UINT64_MASK,
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed augmentation params: {exc}") from exc


def _check_image(image: NDArray) -> NDArray[np.float32]:
    arr = np.asarray(image)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"expected an H x W x 3 image, got shape {arr.shape}")
    if arr.shape[0] < 2 or arr.shape[1] < 2:
        raise ValueError(f"image must be at least 2 x 2, got shape {arr.shape}")
    arr = arr.astype(np.float32, copy=False)
    if not np.all(np.isfinite(arr)):
        raise ValueError("image contains non-finite samples")
    return arr


def chromatic_aberration(image: NDArray, p: ChromAbParams) -> NDArray[np.float32]:
    """Resample each channel under its affine map.

    Green scales by ``green_scale`` about the image center and translates;
    red and blue translate only. Inverse-mapped bilinear sampling with
    edge-clamp boundary; output dimensions equal input.
    """
    img = _check_image(image)
    values = [p.green_scale, *p.red_shift, *p.green_shift, *p.blue_shift]
    if not all(math.isfinite(v) for v in values):
        raise ValueError("chromatic aberration parameters must be finite")
    if p.green_scale <= 0.0:
        raise ValueError(f"green channel scale must be positive, got {p.green_scale}")
    h, w = img.shape[:2]
    bound = min(w, h) / 4.0
    if any(abs(v) > bound for pair in (p.red_shift, p.green_shift, p.blue_shift) for v in pair):
        raise ValueError(f"channel translations exceed the sanity bound of {bound} px")

    cy, cx = (h - 1) / 2.0, (w - 1) / 2.0
    ys, xs = np.meshgrid(np.arange(h, dtype=np.float64), np.arange(w, dtype=np.float64),
                         indexing="ij")
    out = np.empty_like(img)
    channels = [
        (0, 1.0, p.red_shift),
        (1, p.green_scale, p.green_shift),
        (2, 1.0, p.blue_shift),
    ]
    for idx, scale, (tx, ty) in channels:
        if scale == 1.0 and tx == 0.0 and ty == 0.0:
            out[:, :, idx] = img[:, :, idx]
            continue
        if scale == 1.0:
            src_x, src_y = xs - tx, ys - ty
        else:
            src_x = (xs - tx - cx) / scale + cx
            src_y = (ys - ty - cy) / scale + cy
        out[:, :, idx] = ndimage.map_coordinates(
            img[:, :, idx].astype(np.float64), [src_y, src_x], order=1, mode="nearest"
        )
    return np.clip(out, 0.0, 255.0, out=out)


def gaussian_kernel(sigma: float) -> NDArray[np.float64]:
    """1-D Gaussian taps with radius ceil(3 sigma), renormalized to sum 1."""
    radius = math.ceil(3.0 * sigma)
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-(x**2) / (2.0 * sigma**2))
    return k / k.sum()


def gaussian_blur(image: NDArray, p: BlurParams) -> NDArray[np.float32]:
    """Separable Gaussian convolution with reflect boundary handling."""
    img = _check_image(image)
    if not math.isfinite(p.sigma) or p.sigma < 0.0:
        raise ValueError(f"blur sigma must be finite and >= 0, got {p.sigma}")
    if p.sigma == 0.0:
        return img.copy()
    kernel = gaussian_kernel(p.sigma)
    if kernel.size == 1:
        return img.copy()
    data = ndimage.convolve1d(img.astype(np.float64), kernel, axis=0, mode="reflect")
    data = ndimage.convolve1d(data, kernel, axis=1, mode="reflect")
    return np.clip(data, 0.0, 255.0).astype(np.float32)


def re_expose(image: NDArray, p: ExposureParams) -> NDArray[np.float32]:
    """Shift exposure through the sigmoid intensity model.

    Per pixel: clamp intensity into [0.1, 254.9], map to the light-intensity
    domain via the inverse sigmoid, add ``delta_s``, map back. Output lies in
    (0, 255) by construction.
    """
    img = _check_image(image)
    if not math.isfinite(p.contrast) or p.contrast <= 0.0:
        raise ValueError(f"contrast constant must be positive, got {p.contrast}")
    if not math.isfinite(p.delta_s):
        raise ValueError("exposure shift must be finite")
    i = np.clip(img.astype(np.float64), EXPOSURE_EPS, 255.0 - EXPOSURE_EPS)
    s = -np.log(255.0 / i - 1.0) / p.contrast
    out = 255.0 / (1.0 + np.exp(-p.contrast * (s + p.delta_s)))
    return out.astype(np.float32)


# Channel index recorded at each site of the 2x2 GBRG tile, indexed by
# (row % 2, col % 2): row 0 is G,B and row 1 is R,G.
_GBRG_CHANNEL = np.array([[1, 2], [0, 1]])


def bayer_masks(height: int, width: int) -> list[NDArray[np.bool_]]:
    """Boolean site masks for (R, G, B) under the GBRG pattern."""
    ch = _GBRG_CHANNEL[np.arange(height)[:, None] % 2, np.arange(width)[None, :] % 2]
    return [ch == c for c in range(3)]


def mosaic_gbrg(image: NDArray) -> NDArray[np.float32]:
    """Project an RGB image onto a single-plane GBRG Bayer mosaic."""
    img = _check_image(image)
    h, w = img.shape[:2]
    ch = _GBRG_CHANNEL[np.arange(h)[:, None] % 2, np.arange(w)[None, :] % 2]
    return np.take_along_axis(img, ch[..., None], axis=2)[..., 0]


def demosaic_bilinear(plane: NDArray) -> NDArray[np.float32]:
    """Bilinear demosaicing of a GBRG plane back to RGB.

    Native-channel sites pass through unchanged; each missing value is the
    average of the available same-channel neighbors in the 3x3 neighborhood
    (2 or 4 in the interior, the available subset at edges).
    """
    p = np.asarray(plane, dtype=np.float64)
    if p.ndim != 2 or p.shape[0] < 2 or p.shape[1] < 2:
        raise ValueError(f"expected a plane of at least 2 x 2, got shape {p.shape}")
    h, w = p.shape
    ones = np.ones((3, 3))
    out = np.empty((h, w, 3), dtype=np.float32)
    for c, mask in enumerate(bayer_masks(h, w)):
        vals = np.where(mask, p, 0.0)
        num = ndimage.convolve(vals, ones, mode="constant", cval=0.0)
        den = ndimage.convolve(mask.astype(np.float64), ones, mode="constant", cval=0.0)
        out[..., c] = np.where(mask, p, num / den)
    return out


def _site_uniforms(shape: tuple[int, ...], seed: int) -> NDArray[np.float64]:
    """Two uniform draws per site from a counter-based stream keyed by seed.

    The whole block is generated in one row-major pass, so results do not
    depend on evaluation order or worker count.
    """
    gen = np.random.Generator(np.random.Philox(key=int(seed) & _UINT64_MASK))
    u = gen.random((2, *shape), dtype=np.float64)
    # Keep strictly inside (0, 1) for the inverse-CDF transforms.
    return np.clip(u, 1e-16, 1.0 - 1e-16)


def sample_noise(plane: NDArray, p: NoiseParams, seed: int) -> NDArray[np.float64]:
    """Draw the raw Poisson-Gaussian noise realization for a mosaic plane.

    Shot noise: v' = a * Poisson(v / a), exact inversion sampling below mean
    30 and Normal(mean, sqrt(mean)) above. Read noise adds Normal(0, b).
    Returned values are unclamped; mean is v and variance a * v + b^2 at
    every site.
    """
    if p.poisson_scale < 0.0 or p.gaussian_std < 0.0:
        raise ValueError("noise parameters must be >= 0")
    v = np.asarray(plane, dtype=np.float64)
    u_shot, u_read = _site_uniforms(v.shape, seed)
    if p.poisson_scale > 0.0:
        a = p.poisson_scale
        mean = v / a
        approx = mean >= POISSON_NORMAL_APPROX_MEAN
        out = np.empty_like(v)
        if np.any(~approx):
            out[~approx] = a * stats.poisson.ppf(u_shot[~approx], mean[~approx])
        if np.any(approx):
            m = mean[approx]
            out[approx] = a * (m + np.sqrt(m) * special.ndtri(u_shot[approx]))
    else:
        out = v.copy()
    if p.gaussian_std > 0.0:
        out += p.gaussian_std * special.ndtri(u_read)
    return out


def noisy_mosaic(plane: NDArray, p: NoiseParams, seed: int) -> NDArray[np.float64]:
    """Noisy mosaic plane as fed to demosaicing: sampled noise clamped to [0, 255]."""
    out = sample_noise(plane, p, seed)
    return np.clip(out, 0.0, 255.0, out=out)


def sensor_noise(image: NDArray, p: NoiseParams, seed: int) -> NDArray[np.float32]:
    """Mosaic, add per-site Poisson-Gaussian noise, and demosaic back."""
    img = _check_image(image)
    return demosaic_bilinear(noisy_mosaic(mosaic_gbrg(img), p, seed))


def color_shift(image: NDArray, p: ColorShiftParams) -> NDArray[np.float32]:
    """Translate the image in CIELAB by (delta_l, delta_a, delta_b)."""
    img = _check_image(image)
    values = (p.delta_l, p.delta_a, p.delta_b)
    if not all(math.isfinite(v) for v in values):
        raise ValueError("color shift offsets must be finite")
    lab = srgb_to_lab(img)
    lab += np.asarray(values)
    return lab_to_srgb(lab)


def augment(image: NDArray, p: AugmentationParams) -> NDArray[np.float32]:
    """Apply the full effect pipeline in its fixed order.

    Stages with identity parameters are skipped outright; in particular a
    disabled noise stage skips the mosaic/demosaic round trip, which would
    otherwise re-interpolate the image even without noise.
    """
    img = _check_image(image)
    if float(img.min()) < 0.0 or float(img.max()) > 255.0:
        raise ValueError("image samples must lie in [0, 255]")
    if not p.chrom_ab.is_identity:
        img = chromatic_aberration(img, p.chrom_ab)
    if not p.blur.is_identity:
        img = gaussian_blur(img, p.blur)
    if not p.exposure.is_identity:
        img = re_expose(img, p.exposure)
    if not p.noise.is_identity:
        img = sensor_noise(img, p.noise, p.noise_seed)
    if not p.color.is_identity:
        img = color_shift(img, p.color)
    return np.clip(img, 0.0, 255.0)
