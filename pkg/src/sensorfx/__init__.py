"""sensorfx: physically-based camera sensor effect augmentation."""

from .color_space import lab_to_srgb, srgb_to_lab
from .effects import (
    AugmentationParams,
    BlurParams,
    ChromAbParams,
    ColorShiftParams,
    ExposureParams,
    NoiseParams,
    augment,
    chromatic_aberration,
    color_shift,
    demosaic_bilinear,
    gaussian_blur,
    mosaic_gbrg,
    re_expose,
    sensor_noise,
)
from .sampling import ParamRanges, derive_seed, sample_params
from .dataset_io import load_image, save_image

__version__ = "0.1.0"

__all__ = [
    "AugmentationParams",
    "BlurParams",
    "ChromAbParams",
    "ColorShiftParams",
    "ExposureParams",
    "NoiseParams",
    "ParamRanges",
    "augment",
    "chromatic_aberration",
    "color_shift",
    "demosaic_bilinear",
    "derive_seed",
    "gaussian_blur",
    "lab_to_srgb",
    "load_image",
    "mosaic_gbrg",
    "re_expose",
    "sample_params",
    "save_image",
    "sensor_noise",
    "srgb_to_lab",
    "__version__",
]
