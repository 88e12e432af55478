"""Conversions between 8-bit-scale sRGB, linear RGB, CIE XYZ and CIELAB.

All conversions assume the D65 illuminant and the CIE 1931 2-degree standard
observer. Images enter and leave on the [0, 255] scale; Lab arrays hold
(L*, a*, b*) with L* in [0, 100] for in-gamut input. Internals run in float64
so an sRGB -> Lab -> sRGB round trip stays below half an 8-bit quantization
step; returned images are float32.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

# CIE XYZ tristimulus of the D65 reference white, Y normalized to 100.
D65_WHITE = np.array([95.047, 100.0, 108.883])

# IEC 61966-2-1 sRGB primaries -> XYZ (D65), acting on linear RGB in [0, 1].
LINEAR_RGB_TO_XYZ = np.array([
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
])

# Numeric inverse rather than the published 7-digit matrix, so the forward and
# inverse transforms cancel to machine precision.
XYZ_TO_LINEAR_RGB = np.linalg.inv(LINEAR_RGB_TO_XYZ)

# Lab threshold constant: the cube-root segment hands off to the linear
# segment at t = (6/29)^3.
_DELTA = 6.0 / 29.0


def srgb_decode(srgb: NDArray) -> NDArray[np.float64]:
    """sRGB transfer decoding, [0, 1] encoded -> [0, 1] linear."""
    srgb = np.asarray(srgb, dtype=np.float64)
    return np.where(srgb <= 0.04045, srgb / 12.92, ((srgb + 0.055) / 1.055) ** 2.4)


def srgb_encode(linear: NDArray) -> NDArray[np.float64]:
    """sRGB transfer encoding, [0, 1] linear -> [0, 1] encoded."""
    linear = np.asarray(linear, dtype=np.float64)
    return np.where(
        linear <= 0.0031308,
        linear * 12.92,
        1.055 * np.power(linear, 1.0 / 2.4) - 0.055,
    )


def srgb_to_lab(image: NDArray) -> NDArray[np.float64]:
    """Convert an (..., 3) sRGB image on the [0, 255] scale to CIELAB.

    Returns a float64 array of the same shape holding (L*, a*, b*).
    """
    rgb = np.asarray(image, dtype=np.float64) / 255.0
    xyz = srgb_decode(rgb) @ LINEAR_RGB_TO_XYZ.T * 100.0
    t = xyz / D65_WHITE
    f = np.where(t > _DELTA**3, np.cbrt(t), t / (3.0 * _DELTA**2) + 4.0 / 29.0)
    fx, fy, fz = f[..., 0], f[..., 1], f[..., 2]
    lab = np.empty_like(f)
    lab[..., 0] = 116.0 * fy - 16.0
    lab[..., 1] = 500.0 * (fx - fy)
    lab[..., 2] = 200.0 * (fy - fz)
    return lab


def lab_to_srgb(lab: NDArray) -> NDArray[np.float32]:
    """Convert an (..., 3) CIELAB array back to sRGB on the [0, 255] scale.

    Exact algebraic inverse of :func:`srgb_to_lab` for in-gamut colors.
    Out-of-gamut Lab values are clipped per channel in linear RGB, which is
    lossy for large shifts but keeps the conversion total.
    """
    lab = np.asarray(lab, dtype=np.float64)
    fy = (lab[..., 0] + 16.0) / 116.0
    fx = fy + lab[..., 1] / 500.0
    fz = fy - lab[..., 2] / 200.0
    f = np.stack([fx, fy, fz], axis=-1)
    t = np.where(f > _DELTA, f**3, 3.0 * _DELTA**2 * (f - 4.0 / 29.0))
    linear = (t * D65_WHITE / 100.0) @ XYZ_TO_LINEAR_RGB.T
    srgb = srgb_encode(np.clip(linear, 0.0, 1.0))
    return np.clip(srgb * 255.0, 0.0, 255.0).astype(np.float32)
