"""Redundant 12-direction lifting wavelet transform for grayscale images."""
from .boundary import BoundaryMode, resolve_index
from .container import ContainerError, decode, encode, read_container, write_container
from .directions import N_DIRECTIONS, DirectionSet, direction_vectors
from .edge import (
    EdgeMap,
    EdgePipelineConfig,
    Threshold,
    binarize,
    detect_edges,
    edge_energy,
    keep_levels,
    zero_coarse,
)
from .equivalent import (
    EquivalentFilters,
    FrequencyResponse,
    dominant_orientation,
    equivalent_filters,
    frequency_response,
    required_probe_size,
    update_first_forward,
)
from .filters import Filter2D, bspline_filter_1d, bspline_filter_2d, interpolating_prediction, update_from_prediction
from .imaging import (
    ImageBuffer,
    ImageFormatError,
    gaussian_smooth,
    generate_test_image,
    load_image,
    normalize_to_8bit,
    save_image,
)
from .lifting import LiftingStep1D, haar_step, lagrange_midpoint_taps, lwt_forward_1d, lwt_inverse_1d
from .transform import (
    Decomposition,
    LiftingConfig,
    MergePolicy,
    coefficient_count,
    coset_spread,
    dlwt_forward,
    dlwt_inverse,
    redundancy_ratio,
    split,
)

__version__ = "0.1.0"
