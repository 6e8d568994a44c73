"""City-level social-media sentiment series and reservoir-based causal inference."""

__version__ = "0.1.0"
