"""Community detection on graphs with node features.

Thin wrapper over the compiled extension; see ``jcdc._core`` for the
underlying implementations.
"""

from ._core import (
    criterion,
    fit,
    generate_features,
    generate_sbm,
    kmeans,
    misclassification_distance,
    nmi,
    spectral_clustering,
)

__all__ = [
    "criterion",
    "fit",
    "generate_features",
    "generate_sbm",
    "kmeans",
    "misclassification_distance",
    "nmi",
    "spectral_clustering",
]
