"""Fixed 11-category table for face parsing label maps.

Label ids are frozen; every label map, palette and score report in the
toolkit indexes into this table.
"""

from __future__ import annotations

BACKGROUND = 0
SKIN = 1
LEFT_EYEBROW = 2
RIGHT_EYEBROW = 3
LEFT_EYE = 4
RIGHT_EYE = 5
NOSE = 6
UPPER_LIP = 7
INNER_MOUTH = 8
LOWER_LIP = 9
HAIR = 10

NUM_CATEGORIES = 11

CATEGORY_NAMES: tuple[str, ...] = (
    "background",
    "skin",
    "left_eyebrow",
    "right_eyebrow",
    "left_eye",
    "right_eye",
    "nose",
    "upper_lip",
    "inner_mouth",
    "lower_lip",
    "hair",
)

CATEGORY_IDS: dict[str, int] = {name: i for i, name in enumerate(CATEGORY_NAMES)}

# Categories whose regions are fitted from landmarks.  Skin and hair arrive
# as externally produced masks; background is the unpainted remainder.
FITTED_CATEGORIES: tuple[int, ...] = (
    LEFT_EYEBROW,
    RIGHT_EYEBROW,
    LEFT_EYE,
    RIGHT_EYE,
    NOSE,
    UPPER_LIP,
    INNER_MOUTH,
    LOWER_LIP,
)

# Foreground = everything except background; used by the mean-F1 aggregate.
FOREGROUND_CATEGORIES: tuple[int, ...] = tuple(range(1, NUM_CATEGORIES))

# Coarse classes used for cross-dataset comparison: left/right pairs merge,
# the three lip categories merge into one mouth class.
MERGED_NAMES: tuple[str, ...] = (
    "background",
    "skin",
    "brows",
    "eyes",
    "nose",
    "mouth",
    "hair",
)

# label id -> merged id
MERGE_TABLE: tuple[int, ...] = (0, 1, 2, 2, 3, 3, 4, 5, 5, 5, 6)

# Merged classes entering the "overall" score: brows, eyes, nose, mouth.
OVERALL_MERGED_IDS: tuple[int, ...] = (2, 3, 4, 5)

# Display palette for label-map PNGs (index = category id).
PALETTE: tuple[tuple[int, int, int], ...] = (
    (0, 0, 0),        # background
    (255, 211, 165),  # skin
    (120, 72, 36),    # left eyebrow
    (169, 109, 58),   # right eyebrow
    (48, 160, 80),    # left eye
    (36, 148, 148),   # right eye
    (238, 206, 32),   # nose
    (222, 58, 58),    # upper lip
    (140, 16, 49),    # inner mouth
    (244, 121, 121),  # lower lip
    (64, 80, 224),    # hair
)


def category_name(category_id: int) -> str:
    return CATEGORY_NAMES[category_id]


def category_id(name: str) -> int:
    return CATEGORY_IDS[name]
