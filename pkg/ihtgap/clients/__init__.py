"""Client modules for config files, result tables and plots."""
