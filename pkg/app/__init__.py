"""TSAug Bench: time-series augmentation engine and desk-scale benchmark."""

__version__ = "1.0.0"
