"""Exact law, moments and moment asymptotics of the longest alternating
subsequence of a uniformly random permutation."""

from .asymfit import AsymptoticSeries, FitReport, fit_inverse_powers, fit_odd_scaled, interpolate_in_r, to_high_precision
from .distexact import DistributionTable, distribution_bruteforce, distribution_dp, iter_distributions
from .moments import (
    MomentTable,
    gaussian_moment,
    moments_from_table,
    paper_even_correction,
    paper_mean,
    paper_odd_coeffs,
    paper_variance,
    predict_alpha,
)
from .montecarlo import EmpiricalHistogram, empirical_histogram, kolmogorov_to_normal, tv_distance
from .permcore import Convention, Permutation, as_bruteforce, as_linear, complement, make_rng, sample_permutation

__version__ = "0.1.0"
