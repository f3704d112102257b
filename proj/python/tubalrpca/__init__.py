"""Low-tubal-rank plus sparse tensor decomposition.

Arrays are numpy ``(d1, d2, d3)`` float64; the third axis is the tube axis
along which the Fourier transform runs.
"""

from ._core import (  # noqa: F401
    AdmmConfig,
    ConfigError,
    DimensionError,
    InputError,
    IoError,
    NumericError,
    SvdBackend,
    TubalError,
    WeightPolicy,
    conj_transpose,
    corrupt_tubes,
    default_lambda,
    dft3,
    grouped_intra,
    gwtnn,
    identity_tensor,
    idft3,
    lapack_available,
    load_tensor,
    mce_inter_weights,
    prox_gwtnn,
    psnr,
    read_t3b,
    save_image,
    slice_energies,
    soft_threshold,
    solve,
    solve_etrpca_like,
    solve_rpca_per_channel,
    solve_trpca,
    synthesize,
    tnn,
    tprod,
    tsvd,
    write_t3b,
)

__version__ = "0.1.0"


def recover(x, method="gwtrpca", config=None):
    """Run one of ``gwtrpca``, ``trpca``, ``etrpca`` or ``rpca`` on ``x``."""
    config = AdmmConfig() if config is None else config
    runners = {
        "gwtrpca": solve,
        "trpca": solve_trpca,
        "etrpca": solve_etrpca_like,
        "rpca": solve_rpca_per_channel,
    }
    try:
        runner = runners[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}") from None
    return runner(x, config)
