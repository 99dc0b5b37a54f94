"""Chest radiograph preprocessing and enhancement.

Images are numpy uint8 arrays shaped (H, W) or (H, W, 3).
"""

from ._core import (
    CxrError,
    apply_mask,
    augmentation_angles,
    bcet,
    bcet_fit,
    clahe,
    classification_report,
    complement,
    enhance,
    fold_sizes,
    gamma_correct,
    gamma_curve,
    hist_equalize,
    histogram,
    image_stats,
    read_image,
    resize,
    rotate,
    seg_overlap_scores,
    techniques,
    write_image,
    zscore,
)

__all__ = [
    "CxrError",
    "apply_mask",
    "augmentation_angles",
    "bcet",
    "bcet_fit",
    "clahe",
    "classification_report",
    "complement",
    "enhance",
    "fold_sizes",
    "gamma_correct",
    "gamma_curve",
    "hist_equalize",
    "histogram",
    "image_stats",
    "read_image",
    "resize",
    "rotate",
    "seg_overlap_scores",
    "techniques",
    "write_image",
    "zscore",
]
