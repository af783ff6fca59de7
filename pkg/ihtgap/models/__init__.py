"""Data models for the ihtgap toolkit."""
