from ._core import (
    ToeplitzError,
    TrigSymbol,
    band_decay,
    dense_invert,
    eigenvalues,
    factor,
    grid_locations,
    hankel_inverse,
    hankel_product_norm,
    predictor,
    property1_residual,
    toeplitz_matrix,
    weyl_gap,
)

__all__ = [
    "ToeplitzError",
    "TrigSymbol",
    "band_decay",
    "dense_invert",
    "eigenvalues",
    "factor",
    "grid_locations",
    "hankel_inverse",
    "hankel_product_norm",
    "predictor",
    "property1_residual",
    "toeplitz_matrix",
    "weyl_gap",
]
