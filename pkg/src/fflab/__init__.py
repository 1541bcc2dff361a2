"""Finite-field harmonic analysis and sum-product expander experiments.

The library is organized as:

- ``fflab.field``       exact F_{p^k} arithmetic with trace / discrete-log tables
- ``fflab.polynomials`` univariate and bivariate polynomials over F_q
- ``fflab.harmonics``   dense Fourier analysis over products of F_q and F_q*
- ``fflab.incidence``   incidence counts, Salem constants, Weil / Katz /
                        Schwarz-Zippel verification
- ``fflab.expanders``   sumset engines, linear-factor scans, exact sumset
                        inequality checks, constructions
- ``fflab.experiments`` the experiment registry
- ``fflab.runner``      deterministic execution and CSV/JSONL serialization
- ``fflab.cli``         ``fflab run | list | selftest``
"""

from .field import FieldCtx, build_field

__all__ = ["FieldCtx", "build_field"]
__version__ = "0.1.0"
