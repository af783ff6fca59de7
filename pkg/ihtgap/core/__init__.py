"""Core numerics and the sweep engine of the ihtgap toolkit."""
