"""
ordlex - lexicographic order types of context-free languages: scatteredness,
Hausdorff rank, well-orderedness and grammar synthesis for ordinals.
"""

__version__ = "0.1.0"
