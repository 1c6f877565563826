"""Structure-preserving model order reduction with randomized symplectic bases.

Thin python layer over the C++ core: cSVD and rcSVD basis generation, the
projection-error bounds, SRFT sketching and the 2D wave benchmark.
"""

try:
    # installed layout: the extension lives inside the package
    from . import _symplrom as _impl
except ImportError:  # build-tree layout: extension directly on sys.path
    import _symplrom as _impl

__all__ = [
    "ArgumentError",
    "AssumptionError",
    "GapError",
    "OrthoSymplecticBasis",
    "RankError",
    "StructureError",
    "StructureReport",
    "WaveModelConfig",
    "bound_report",
    "check_structure",
    "collect_snapshots",
    "csvd",
    "gaussian_sketch",
    "initial_state",
    "integrate",
    "load_matrix",
    "optimal_tail",
    "power_sketch",
    "projection_error",
    "rcsvd",
    "rcsvd_real",
    "save_matrix",
    "spectrum",
    "srft_apply",
    "srft_materialize",
    "srft_threshold",
    "symplectic_inverse",
]

for _name in __all__:
    globals()[_name] = getattr(_impl, _name)

__version__ = _impl.__version__
