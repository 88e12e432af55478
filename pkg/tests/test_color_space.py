"""Color conversion tests against an independent scalar reference."""

import math

import numpy as np
import pytest

from sensorfx.color_space import lab_to_srgb, srgb_to_lab


def scalar_srgb_to_lab(r: float, g: float, b: float) -> tuple[float, float, float]:
    """Straight-line scalar evaluation of the CIE formulas, no numpy."""

    def decode(u: float) -> float:
        u /= 255.0
        return u / 12.92 if u <= 0.04045 else ((u + 0.055) / 1.055) ** 2.4

    lin = [decode(r), decode(g), decode(b)]
    m = [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
    xyz = [100.0 * sum(m[i][j] * lin[j] for j in range(3)) for i in range(3)]
    white = [95.047, 100.0, 108.883]
    delta = 6.0 / 29.0

    def f(t: float) -> float:
        return t ** (1.0 / 3.0) if t > delta**3 else t / (3.0 * delta**2) + 4.0 / 29.0

    fx, fy, fz = (f(xyz[i] / white[i]) for i in range(3))
    return 116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)


def as_pixel(r, g, b):
    return np.array([[[r, g, b]]], dtype=np.float32)


def test_white_maps_to_l100():
    lab = srgb_to_lab(as_pixel(255, 255, 255))[0, 0]
    assert lab[0] == pytest.approx(100.0, abs=1e-3)
    assert abs(lab[1]) <= 1e-4 and abs(lab[2]) <= 1e-4


def test_black_maps_to_zero():
    lab = srgb_to_lab(as_pixel(0, 0, 0))[0, 0]
    assert np.allclose(lab, 0.0, atol=1e-12)


def test_mid_gray_against_scalar_oracle():
    # Frozen from scalar_srgb_to_lab(119, 119, 119).
    lab = srgb_to_lab(as_pixel(119, 119, 119))[0, 0]
    assert lab[0] == pytest.approx(50.034440993686104, abs=1e-9)
    assert abs(lab[1]) <= 1e-4 and abs(lab[2]) <= 1e-4


def test_matches_scalar_oracle_on_random_triples(rng):
    for _ in range(50):
        r, g, b = (float(v) for v in rng.integers(0, 256, size=3))
        expected = scalar_srgb_to_lab(r, g, b)
        got = srgb_to_lab(as_pixel(r, g, b))[0, 0]
        assert got == pytest.approx(expected, abs=1e-9)


def test_lab_white_inverts_to_srgb_white():
    rgb = lab_to_srgb(np.array([[[100.0, 0.0, 0.0]]]))[0, 0]
    assert rgb == pytest.approx([255.0, 255.0, 255.0], abs=1e-3)


def test_lab_l50_is_neutral_gray():
    rgb = lab_to_srgb(np.array([[[50.0, 0.0, 0.0]]]))[0, 0]
    # Frozen from the scalar oracle's inverse; approximately (119, 119, 119).
    assert rgb == pytest.approx([118.91329] * 3, abs=1e-3)
    assert np.ptp(rgb) <= 1e-3


def test_round_trip_within_half_quantization_step(rng):
    triples = rng.integers(0, 256, size=(20000, 1, 3)).astype(np.float32)
    back = lab_to_srgb(srgb_to_lab(triples))
    assert np.abs(back - triples).max() <= 0.51


def test_gray_axis_neutral_and_monotone():
    v = np.arange(256, dtype=np.float32)
    lab = srgb_to_lab(np.stack([v, v, v], axis=-1)[None])
    assert np.abs(lab[..., 1]).max() <= 1e-4
    assert np.abs(lab[..., 2]).max() <= 1e-4
    assert np.all(np.diff(lab[0, :, 0]) > 0)


def test_out_of_gamut_lab_is_clipped_not_nan():
    lab = np.array([[[50.0, 200.0, -200.0], [-20.0, 0.0, 0.0], [150.0, 0.0, 0.0]]])
    rgb = lab_to_srgb(lab)
    assert np.all(np.isfinite(rgb))
    assert rgb.min() >= 0.0 and rgb.max() <= 255.0
