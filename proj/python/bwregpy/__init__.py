"""Python bindings for the Bures-Wasserstein Fréchet regression library."""

try:
    from ._bwreg import (  # noqa: F401  (installed package layout)
        BwregError,
        ExistenceViolation,
        NotSpdResultError,
        bw_distance_sq,
        check_existence,
        commuting_oracle,
        euclidean_gradient,
        geodesic,
        geometric_mean,
        global_weights,
        helix_tensor,
        laplacian_to_spd,
        objective,
        predict,
        solve_barycenter,
        transport_map,
    )
except ImportError:
    from _bwreg import (  # noqa: F401  (build-tree layout)
        BwregError,
        ExistenceViolation,
        NotSpdResultError,
        bw_distance_sq,
        check_existence,
        commuting_oracle,
        euclidean_gradient,
        geodesic,
        geometric_mean,
        global_weights,
        helix_tensor,
        laplacian_to_spd,
        objective,
        predict,
        solve_barycenter,
        transport_map,
    )
