"""Landmark-guided face parsing annotation toolkit.

Converts 106-point facial landmarks into 11-category pixel label maps via
category-wise geometric fitting and hierarchical fusion, derives boundary
and loss-weight maps, provides reference loss formulas, and scores
predictions with per-category F1.
"""

from .boundary import DEFAULT_ALPHA, extract_boundary, make_weight_map
from .categories import (
    CATEGORY_IDS,
    CATEGORY_NAMES,
    FITTED_CATEGORIES,
    NUM_CATEGORIES,
    PALETTE,
)
from .compositor import fuse, rasterize
from .dataset import DatasetManifest, Sample, scan_dataset
from .fitting import (
    Contour,
    Parabola,
    SimilarityTransform,
    contour_is_simple,
    fit_nose,
    fit_parabola,
    fit_parabola_pair,
    fit_part,
    fit_polygon_smooth,
    normalize_part,
)
from .landmarks import (
    LandmarkSet,
    load_landmark_file,
    parse_landmark_file,
    save_landmark_file,
    serialize_landmarks,
)
from .losses import (
    DEFAULT_LAMBDAS,
    LossWeights,
    boundary_loss,
    fusion_loss,
    semantic_loss,
    total_loss,
)
from .metrics import (
    CategoryScores,
    ConfusionCounts,
    accumulate,
    f1,
    mean_f1,
    merge_labels,
    merged_scores,
)
from .pipeline import compose_label_map, fit_parts
from .rle import decode_label_rows, encode_label_rows
from .schema import PartEntry, PartSchema, default_schema, load_part_schema

__version__ = "0.1.0"
