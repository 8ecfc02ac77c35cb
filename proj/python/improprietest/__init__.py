"""Impropriety testing for complex Gaussian vectors.

Thin wrapper over the C++ core: spectrum pipeline, GLRT / Roy statistics,
null calibrations (beta-product, CLT, adjusted Bartlett, Tracy-Widom),
synthetic models, and the experiment harness.
"""

from ._core import (  # noqa: F401
    ImproprietySpectrum,
    RegimeParams,
    GlrtNullParams,
    RoyNullParams,
    __version__,
    bulk_cdf,
    bulk_edge,
    bulk_moments,
    bulk_pdf,
    calibrate_threshold,
    experiment_defaults,
    experiment_names,
    generate,
    glrt_clt_params,
    glrt_statistic,
    load_csv,
    population_lambdas,
    roy_params,
    roy_statistic,
    run_experiment,
    run_test,
    sample_spectrum,
    sample_wilks_null,
    spike_map,
    spike_rho_c,
    theta_for_lambda,
    tw1_cdf,
    tw1_quantile,
)
