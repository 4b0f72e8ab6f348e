"""Exact zero tests for sums of roots of unity.

Run: python demos/04_exact_arithmetic.py
"""
import numpy as np

from zccs import CycloSum, cyclotomic_poly, is_zero_exact
from zccs.verify import accf, correlate_fft
from zccs.seqgen import PhaseSequence

# %% 1 + w3 + w3^2 = 0, written over 6th roots
s = CycloSum.from_exponents(6, [0, 2, 4])
print("Phi_6 =", cyclotomic_poly(6).coeffs, " sum zero?", is_zero_exact(s), " float:", complex(s))

# %% One extra root spoils the cancellation
t = CycloSum.from_exponents(60, [0, 20, 40, 1])
print("with an extra root: zero?", is_zero_exact(t), " |value| =", abs(complex(t)))

# %% Exact and FFT correlations agree
rng = np.random.default_rng(1)
x = PhaseSequence(12, rng.integers(0, 12, 50))
y = PhaseSequence(12, rng.integers(0, 12, 50))
exact = np.array([complex(accf(x, y, tau)) for tau in range(-49, 50)])
print("max |exact - fft| =", np.abs(exact - correlate_fft(x, y)).max())
