"""Class-imbalance countermeasures for notarial document classification and segmentation."""

__version__ = "0.1.0"
