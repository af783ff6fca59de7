"""ihtgap - Sparsity-constrained ERM, iterative hard thresholding and generalization experiments."""
__version__ = '0.1.0'
