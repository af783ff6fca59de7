"""Measurements taken on solver output: risks, bounds, restricted eigenvalues and stability."""
