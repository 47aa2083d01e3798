"""levelness - Decide levelness and nearly Gorensteinness of graded rings exactly."""

__version__ = "0.1.0"
