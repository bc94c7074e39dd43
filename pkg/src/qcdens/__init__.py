"""Conditional density estimation through a marginal KDE and a copula
density fitted on rank pseudo-observations, with double-kernel and
local-polynomial baselines, a Frank-copula simulation ground truth and
a Monte Carlo benchmark harness.
"""

from ._backend import backend_name
from .bench import (BiasScalingReport, ComparisonReport, ConvergenceReport,
                    EstimatorSpec, ExperimentConfig, GridSpec,
                    VarianceCheckReport, aggregate_records, run_bias_scaling,
                    run_comparison, run_convergence, run_variance_check)
from .conditional_density import (UNDEFINED, ClippingPolicy,
                                  ConditionalDensityEstimator,
                                  DoubleKernelEstimator,
                                  LocalPolynomialEstimator,
                                  QuantileCopulaEstimator, fit_double_kernel,
                                  fit_local_polynomial, fit_quantile_copula,
                                  is_undefined)
from .copula_density import (BetaKernelMode, CopulaDensityEstimate,
                             ProductKernelMode, copula_eval, copula_fit)
from .empirical import (Ecdf, PairedSample, ecdf_fit, ks_statistic,
                        pseudo_observations)
from .kde import BandwidthRule, UnivariateKde, bandwidth, kde_eval, kde_fit
from .kernels import (EPANECHNIKOV, GAUSSIAN, UNIFORM, BetaKernelSpec,
                      KernelSpec, eval_beta_kernel, eval_kernel, kernel_l2,
                      kernel_moment)
from .simulation import (FrankCopula, SimulationModel, StandardNormal,
                         frank_cdf, frank_density, frank_sample, sample_xy,
                         true_conditional_density)

__version__ = "0.1.0"
