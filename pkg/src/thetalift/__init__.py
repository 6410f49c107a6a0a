"""Singular theta lifts for the signature (2,1) lattice of level 4N.

The package evaluates the twisted lift of vector valued harmonic Maass forms
of weight 3/2 - k, its images under the xi operator (Shimura lifts), and the
dual Shintani cycle integrals, together with numerical certification suites
for every analytic identity the closed forms rest on.
"""

__version__ = "0.1.0"
