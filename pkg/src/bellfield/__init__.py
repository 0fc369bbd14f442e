"""Classical-field homodyne simulator: correlations, Bell/CHSH tests, joint-distribution existence."""

__version__ = "0.1.0"
