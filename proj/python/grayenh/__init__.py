"""Gray-level image enhancement with lambda-weighted Bernstein means."""

from ._core import (
    BETA_FORMULA,
    EnhancementConfig,
    EnhancementResult,
    GrayEnhError,
    GrayImage,
    ImageStats,
    LambdaParams,
    PiecewiseLinearTransform,
    StepParameters,
    TraceEntry,
    apply_to_image,
    bernstein,
    build_step_transform,
    compute_stats,
    enhance,
    export_lut,
    lambda_row,
    node_values,
    read_pgm,
    read_pgm_file,
    solve_coefficients,
    step_parameters,
    uniform_reference,
    write_pgm,
    write_pgm_file,
)

__version__ = "0.1.0"
