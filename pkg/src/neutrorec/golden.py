"""Published reference values for the built-in four-patient example.

Pairs are ordered as itertools.combinations over (Alex, Linda, Bill, John).
"""

PAIR_NAMES = ("Alex-Linda", "Alex-Bill", "Alex-John", "Linda-Bill", "Linda-John", "Bill-John")

# (sx, sy, sd) per pair
COMPONENTS = (
    (0.4316, 0.20833, 0.2666),
    (0.39833, 0.11166, 0.15833),
    (0.29, 0.2866, 0.28333),
    (0.15833, 0.2, 0.31666),
    (0.30833, 0.23, 0.25833),
    (0.2333, 0.23, 0.25666),
)

MATRICES = {
    "eq60": (
        (0.20833, 0.20833, 0.2866, 0.20833, 0.23, 0.23),
        (0.20833, 0.11166, 0.2866, 0.2, 0.23, 0.23),
        (0.2866, 0.2866, 0.2866, 0.2866, 0.2866, 0.2866),
        (0.20833, 0.2, 0.2866, 0.2, 0.23, 0.23),
        (0.23, 0.23, 0.2866, 0.23, 0.23, 0.23),
        (0.23, 0.23, 0.2866, 0.23, 0.23, 0.23),
    ),
    "eq65": (
        (0.83878, 0.67171, 0.90812, 0.74606, 0.84832, 0.82904),
        (0.67171, 0.50464, 0.74105, 0.57899, 0.68124, 0.66197),
        (0.90812, 0.74105, 0.97746, 0.8154, 0.91765, 0.89838),
        (0.74606, 0.57899, 0.8154, 0.65334, 0.75559, 0.73632),
        (0.84832, 0.68124, 0.91765, 0.75559, 0.85784, 0.83857),
        (0.82904, 0.66197, 0.89838, 0.73632, 0.83857, 0.8193),
    ),
    "eq67": (
        (0.22555, 0.12822, 0.27067, 0.17018, 0.23192, 0.22003),
        (0.12822, 0.07289, 0.15387, 0.09674, 0.13184, 0.12508),
        (0.27067, 0.15387, 0.32482, 0.20422, 0.27831, 0.26404),
        (0.17018, 0.09674, 0.20422, 0.12840, 0.17498, 0.16601),
        (0.23192, 0.13184, 0.27831, 0.17498, 0.23846, 0.22624),
        (0.22003, 0.12508, 0.26404, 0.16601, 0.22624, 0.21464),
    ),
    "eq69": (
        (0.44654, 0.50994, 0.22667, 0.2237, 0.3016, 0.22657),
        (0.50994, 0.57334, 0.29007, 0.28667, 0.365, 0.28997),
        (0.22667, 0.29007, 0.0068, 0.0034, 0.08173, 0.0067),
        (0.2237, 0.28667, 0.0034, 0.0, 0.07833, 0.0033),
        (0.3016, 0.365, 0.08173, 0.07833, 0.15666, 0.08163),
        (0.22657, 0.28997, 0.0067, 0.0033, 0.08163, 0.006),
    ),
    "eq71": (
        (0.33, 0.405, 0.17167, 0.00667, 0.215, 0.14164),
        (0.405, 0.48, 0.24667, 0.08167, 0.29, 0.21664),
        (0.17167, 0.24667, 0.01334, -0.15166, 0.05667, -0.01669),
        (0.00667, 0.08167, -0.15166, -0.31666, -0.10833, -0.18169),
        (0.215, 0.29, 0.05667, -0.10833, 0.1, 0.02664),
        (0.14164, 0.21664, -0.01669, -0.18169, 0.02664, -0.04672),
    ),
}

# Mean MSE per data set (rows) and method (columns).
MSE_METHODS = ("ICSM", "DSM", "CARE", "CFMD", "Proposed", "V67", "V69", "V71")
MSE_DATASETS = ("Heart", "RHC", "Diabetes", "Breast", "DMD")
MSE_MATRIX = (
    (0.3407, 0.3407, 0.2502, 0.2525, 0.236052, 0.235093, 0.236079, 0.234787),
    (0.1780, 0.1780, 0.3658, 0.1896, 0.25, 0.25, 0.25, 0.25),
    (0.1085, 0.1085, 0.1253, 0.0472, 0.086841, 0.029185, 0.029185, 0.078113),
    (0.1984, 0.1984, 0.1494, 0.1909, 0.030004, 0.030545, 0.030545, 0.029496),
    (0.3589, 0.3589, 0.2439, 0.0472, 0.038967, 0.035131, 0.035131, 0.03482),
)

# Published summary statistics for MSE_MATRIX grouped by method.
ANOVA_REFERENCE = {"f": 1.21, "p": 0.3252, "ss_columns": 0.09069, "ss_error": 0.34232,
                   "ss_total": 0.43301, "df": (7, 32, 39)}
KRUSKAL_REFERENCE = {"chi_sq": 1.71, "p": 0.3587, "ss_columns": 1052.5, "ss_error": 4270.5,
                     "ss_total": 5323.0, "df": (7, 32, 39)}

# Set-operation example: exact cells for the union, intersection and
# bounded-difference results, keyed by slot then label.
SET_OPERATION_CELLS = {
    "union": {
        "x": {"x1": (0.4, 0.3, 0.7), "x2": (0.0, 1.0, 0.0), "x3": (0.8, 0.2, 0.5)},
        "y": {"y1": (0.4, 0.5, 0.0), "y2": (0.4, 0.4, 0.6), "y3": (0.2, 0.7, 0.0)},
    },
    "intersection": {
        "x": {"x1": (0.3, 0.5, 0.8), "x2": (0.0, 1.0, 0.0), "x3": (0.5, 0.2, 0.6)},
        "y": {"y1": (0.0, 0.7, 0.8), "y2": (0.3, 0.8, 0.7), "y3": (0.0, 0.8, 0.4)},
    },
    "bounded_diff": {
        "x": {"x1": (0.0, 0.2, 0.1), "x2": (0.0, 0.0, 0.0), "x3": (0.0, 0.2, 0.1)},
        "y": {"y1": (0.0, 0.2, 0.0), "y2": (0.1, 0.4, 0.0), "y3": (0.2, 0.0, 0.4)},
        "d": {"x1": (0.0, 0.6, 0.4), "x2": (0.5, 0.0, 0.1), "x3": (0.0, 0.5, 0.2),
              "y1": (0.0, 0.0, 0.1), "y2": (0.0, 0.6, 0.4), "y3": (0.0, 0.0, 0.2)},
    },
}
