from pathlib import Path

import numpy as np
import pytest

DATA_DIR = Path(__file__).parent / "data"


def random_image(rng: np.random.Generator, height: int = 16, width: int = 16) -> np.ndarray:
    return rng.uniform(0.0, 255.0, size=(height, width, 3)).astype(np.float32)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
