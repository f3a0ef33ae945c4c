"""Urban cellular coverage twin: link budget, traffic and nomadic-node placement."""

try:
    from ._core import (  # installed layout: extension inside the package
        ValidationError,
        breakpoint_distance,
        delaunay,
        distance3d,
        ks_two_sample,
        max_concurrent_users,
        mcs_table,
        normalize_volume,
        path_loss_db,
        received_power_dbm,
        run_pipeline,
        select_mcs,
        temporal_model,
        temporal_volume,
        triangle_incentre,
    )
except ImportError:  # build-tree layout: _core next to the package on sys.path
    from _core import (
        ValidationError,
        breakpoint_distance,
        delaunay,
        distance3d,
        ks_two_sample,
        max_concurrent_users,
        mcs_table,
        normalize_volume,
        path_loss_db,
        received_power_dbm,
        run_pipeline,
        select_mcs,
        temporal_model,
        temporal_volume,
        triangle_incentre,
    )

__all__ = [
    "ValidationError",
    "breakpoint_distance",
    "delaunay",
    "distance3d",
    "ks_two_sample",
    "max_concurrent_users",
    "mcs_table",
    "normalize_volume",
    "path_loss_db",
    "received_power_dbm",
    "run_pipeline",
    "select_mcs",
    "temporal_model",
    "temporal_volume",
    "triangle_incentre",
]
