"""Prototype classifier over graph embeddings.

Training is a single pass: each class prototype is the epsilon-
regularized L2 normalization of the mean training embedding of that
class. Inference normalizes the query the same way and returns the
class with the highest dot product (cosine similarity); exact ties
resolve to the smallest class index so accuracy numbers reproduce.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encoder import EncoderConfig
from .hdc import COSINE_EPS


@dataclass(frozen=True, eq=False)
class PrototypeModel:
    """Per-class unit-norm prototypes plus the encoder that produced them."""

    prototypes: np.ndarray  # (num_classes, dim) float64
    num_classes: int
    config: EncoderConfig

    @property
    def dim(self) -> int:
        return self.prototypes.shape[1]


def fit(embeddings: np.ndarray, labels: np.ndarray, num_classes: int,
        config: EncoderConfig) -> PrototypeModel:
    """Build class prototypes from training embeddings in one pass."""
    embeddings = np.asarray(embeddings, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if embeddings.ndim != 2 or len(embeddings) != len(labels):
        raise ValueError(f"{len(embeddings)} embeddings but {len(labels)} labels")
    if len(embeddings) == 0:
        raise ValueError("need at least one training embedding")
    protos = np.zeros((num_classes, embeddings.shape[1]), dtype=np.float64)
    for c in range(num_classes):
        members = embeddings[labels == c]
        if len(members) == 0:
            raise ValueError(f"class {c} has no training embeddings")
        mean = members.mean(axis=0)
        protos[c] = mean / (np.linalg.norm(mean) + COSINE_EPS)
    return PrototypeModel(protos, num_classes, config)


def predict_scores(model: PrototypeModel, z: np.ndarray) -> np.ndarray:
    """Per-class cosine similarities of one embedding."""
    z = np.asarray(z, dtype=np.float64)
    if z.shape != (model.dim,):
        raise ValueError(f"embedding dim {z.shape} != model dim {model.dim}")
    zn = z / (np.linalg.norm(z) + COSINE_EPS)
    return model.prototypes @ zn


def predict(model: PrototypeModel, z: np.ndarray) -> int:
    """Most similar class; exact ties go to the smallest class index."""
    return int(np.argmax(predict_scores(model, z)))


def predict_many(model: PrototypeModel, embeddings: np.ndarray) -> np.ndarray:
    """predict() over the rows of an (N, dim) embedding matrix."""
    embeddings = np.asarray(embeddings, dtype=np.float64)
    return np.array([predict(model, z) for z in embeddings], dtype=np.int64)
