# Output formats for reports
VALID_OUTPUT_FORMATS = ["text", "json"]

# Document formats for spaces
VALID_DOCUMENT_FORMATS = ["json", "csv"]

# Tree and ball-graph export formats
VALID_EXPORT_FORMATS = ["json", "dot"]

# Generator kinds
VALID_GENERATOR_KINDS = ["chain_R", "random_tree", "random_metric_nonultra"]

# Full isometry lists are only materialized up to this group order (7! * 2)
DEFAULT_ISO_LIST_CAP = 10080

DEFAULT_ORACLE_CAPS = {
    "isometries_cap": 8,
    "weaksim_cap": 7,
    "ham_paths_cap": 8,
}

DEFAULT_HEREDITARY_EXHAUSTIVE_CAP = 10
DEFAULT_EDGE_MINIMALITY_CAP = 12

DEFAULT_SEED = 0
DEFAULT_JOBS = 1
DEFAULT_OUTPUT_FORMAT = "text"

# Weights for 2, 3 and 4 children when growing random trees
DEFAULT_BRANCHING = (0.6, 0.3, 0.1)

# Upper bound for random integer distances in generated metric tables
RANDOM_METRIC_MAX_DISTANCE = 9
RANDOM_METRIC_MAX_ATTEMPTS = 1000

SEED_ENV_VAR = "ULTRA_SEED"
LOG_LEVEL_ENV_VAR = "LOG_LEVEL"

# Exit statuses
EXIT_OK = 0
EXIT_FINDING = 1
EXIT_INPUT_ERROR = 2

SETTINGS_INT_KEYS = [
    "iso_list_cap",
    "hereditary_exhaustive_cap",
    "edge_minimality_cap",
    "jobs",
]
