"""Exact audits of polynomial cometrics for diffusion-orthogonal polynomial models."""

__version__ = "0.1.0"
