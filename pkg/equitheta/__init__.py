"""Equivariant L-functions of F_q(t), Fitting ideals over (Z/l^k)[G] and Coates-Sinnott predictions."""

__version__ = "0.1.0"
