"""Surgical smoke removal by TV-regularised layer decomposition.

Images are float64 arrays of shape (H, W, 3) with values in [0, 1].
"""

from ._desmoke import (
    Betas,
    DimensionError,
    IoError,
    ParameterError,
    ShapeMismatch,
    SolverParams,
    apply_D,
    apply_Dt,
    apply_smoke,
    decompose,
    energy,
    evaluate,
    f_update,
    generate_smoke_field,
    load_image,
    psnr,
    re_metric,
    save_image,
    shrink,
    solve,
    textured_scene,
    tv_norm,
    visible_edges,
)

__all__ = [
    "Betas",
    "DimensionError",
    "IoError",
    "ParameterError",
    "ShapeMismatch",
    "SolverParams",
    "apply_D",
    "apply_Dt",
    "apply_smoke",
    "decompose",
    "energy",
    "evaluate",
    "f_update",
    "generate_smoke_field",
    "load_image",
    "psnr",
    "re_metric",
    "save_image",
    "shrink",
    "solve",
    "textured_scene",
    "tv_norm",
    "visible_edges",
]
