"""Certified finite-n comparison of binomial window probabilities with the Gaussian integral."""

from .binom import GeneralWindow, SymmetricWindow, pmf, window_prob_gen, window_prob_sym
from .certify_gen import GeneralCertificate, check_general_sandwich, reflect_left_window
from .certify_sym import (
    certify_nonasymptotic_even,
    certify_nonasymptotic_odd,
    certify_unified,
    check_pi_bounds_even,
    check_pi_bounds_odd,
    check_window_sandwich_even,
    check_window_sandwich_odd,
    interval_difference,
)
from .exactnum import Enclosure, Precision, exp_enclose, pi_enclose, sqrt_enclose
from .gauss import GaussianIntegral, gauss_integral, gauss_tail_bound
from .report import CertificateReport, Claim, Verdict
from .wallis import PiMultiple, wallis

__version__ = "0.1.0"
