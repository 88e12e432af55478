"""Binding behavior plus the cross-boundary equivalence acceptance check."""

import json
import subprocess
import sys

import numpy as np
import pytest

import sensorfx_bindings as bindings
from sensorfx.dataset_io import load_image, save_image
from sensorfx.sampling import ParamRanges, sample_params


def identity_params() -> dict:
    return bindings.sample_params(
        {
            "chromatic_aberration": {"enabled": False},
            "blur": {"enabled": False},
            "exposure": {"enabled": False},
            "noise": {"enabled": False},
            "color_shift": {"enabled": False},
        },
        seed=0,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def test_identity_params_round_trip_uint8(rng):
    arr = rng.integers(0, 256, size=(12, 10, 3), dtype=np.uint8)
    out = bindings.augment(arr, identity_params())
    assert out.dtype == np.uint8
    assert np.array_equal(out, arr)


def test_float_input_stays_float(rng):
    arr = rng.uniform(0, 255, size=(8, 8, 3)).astype(np.float32)
    out = bindings.augment(arr, identity_params())
    assert out.dtype == np.float32
    assert np.abs(out - arr).max() <= 0.51


def test_params_accepted_as_json_string(rng):
    arr = rng.integers(0, 256, size=(8, 8, 3), dtype=np.uint8)
    params = bindings.sample_params(None, seed=3)
    assert np.array_equal(
        bindings.augment(arr, params),
        bindings.augment(arr, json.dumps(params)),
    )


def test_wrong_channel_count_rejected(rng):
    with pytest.raises(ValueError):
        bindings.augment(np.zeros((8, 8, 4), dtype=np.uint8), identity_params())
    with pytest.raises(TypeError):
        bindings.augment(np.zeros((8, 8, 3), dtype=np.int32), identity_params())


def test_invalid_ranges_raise_value_error():
    with pytest.raises(ValueError):
        bindings.sample_params({"blur": {"sigma": [2.0, 1.0]}}, seed=0)


def test_sampling_matches_core_for_degenerate_intervals():
    params = bindings.sample_params(
        {"blur": {"sigma": [1.5, 1.5]}, "noise": {"a": [0.25, 0.25], "b": [2.0, 2.0]}},
        seed=5,
    )
    assert params["blur"]["sigma"] == 1.5
    assert params["noise"] == {"a": 0.25, "b": 2.0}


def test_seed_derivation_matches_published_vector():
    assert bindings.derive_seed(0, "img/000001.png#0") == 7922030650955381797


# ---------------------------------------------------------------------------
# cross-boundary equivalence acceptance criterion


def run_cli(args):
    return subprocess.run(
        [sys.executable, "-m", "sensorfx.cli", *args],
        capture_output=True,
        text=True,
    )


def test_binding_equals_cli_on_fixture_images(tmp_path, rng):
    ranges = ParamRanges()
    for i in range(10):
        arr = rng.integers(0, 256, size=(24, 32, 3), dtype=np.uint8)
        params = sample_params(ranges, seed=100 + i)
        src = tmp_path / f"img{i}.png"
        dst = tmp_path / f"img{i}_out.png"
        params_file = tmp_path / f"params{i}.json"
        save_image(arr.astype(np.float32), src)
        params_file.write_text(json.dumps(params.to_dict()))
        proc = run_cli(["augment", "--input", str(src), "--output", str(dst),
                        "--params", str(params_file)])
        assert proc.returncode == 0, proc.stderr
        via_cli = load_image(dst).astype(np.uint8)
        via_binding = bindings.augment(arr, params.to_dict())
        assert np.array_equal(via_binding, via_cli), f"mismatch on fixture {i}"
    print("[ACCEPTANCE] cross-boundary equivalence (images): PASS")


def test_binding_sampling_equals_core_for_100_seeds():
    ranges = ParamRanges()
    for seed in range(100):
        assert bindings.sample_params(None, seed) == sample_params(ranges, seed).to_dict()
    print("[ACCEPTANCE] cross-boundary equivalence (sampling): PASS")
