"""Neutrosophic recommender toolkit: set algebra, similarity-based prediction and evaluation."""

__version__ = "0.1.0"
