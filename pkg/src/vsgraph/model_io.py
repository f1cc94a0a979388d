"""Flat binary model container with a human-readable JSON sidecar.

Layout (all integers little-endian; see docs/MODEL_FORMAT.md):

    offset size field
    0      8    magic  b"VSGMODL\\x00"
    8      4    format_version (currently 1)
    12     1    model_kind: 1 = dense prototypes, 2 = binary prototypes
    13     1    aggregation mode: 0 = max, 1 = binarize-or
    14     2    reserved (zero)
    16     4    dim
    20     4    num_classes
    24     4    hops
    28     4    layers
    32     8    alpha (float64)
    40     8    master_seed
    48     8    stream_id
    56     -    payload, row-major:
                kind 1: num_classes x dim float64 rows
                kind 2: num_classes x ceil(dim/64) uint64 rows

Prototype rows round-trip bit-exactly. ``<path>.meta.json`` mirrors the
header for humans and tooling.
"""

from __future__ import annotations

import json
import struct

import numpy as np

from .classifier import PrototypeModel
from .encoder import AGGREGATION_MODES, EncoderConfig
from .graphhd import GraphHDModel, prototype_words
from .hdc import BinaryHypervector
from .seeding import SeedSpec, words_for

MAGIC = b"VSGMODL\x00"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<8sIBB2sIIIIdQQ")

KIND_DENSE = 1
KIND_BINARY = 2


class ModelFormatError(ValueError):
    """Unreadable or incompatible model file."""


def _meta(kind: int, dim: int, num_classes: int, hops: int, layers: int,
          alpha: float, aggregation: str, seed: SeedSpec) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "model_kind": "dense-prototypes" if kind == KIND_DENSE else "binary-prototypes",
        "dim": dim,
        "num_classes": num_classes,
        "hops": hops,
        "layers": layers,
        "alpha": alpha,
        "aggregation": aggregation,
        "master_seed": seed.master_seed,
        "stream_id": seed.stream_id,
    }


def save_model(model: PrototypeModel | GraphHDModel, path: str) -> None:
    """Write the flat binary container plus its JSON sidecar."""
    if isinstance(model, PrototypeModel):
        kind = KIND_DENSE
        cfg = model.config
        hops, layers, alpha = cfg.hops, cfg.layers, cfg.alpha
        aggregation = cfg.aggregation
        seed = cfg.seed
        payload = np.ascontiguousarray(model.prototypes, dtype="<f8").tobytes()
        dim = model.dim
    elif isinstance(model, GraphHDModel):
        kind = KIND_BINARY
        hops, layers, alpha = 0, 0, 0.0
        aggregation = "max"
        seed = model.seed
        payload = prototype_words(model).astype("<u8").tobytes()
        dim = model.dim
    else:
        raise TypeError(f"cannot serialize {type(model).__name__}")
    header = _HEADER.pack(MAGIC, FORMAT_VERSION, kind,
                          AGGREGATION_MODES.index(aggregation), b"\x00\x00",
                          dim, model.num_classes, hops, layers, alpha,
                          seed.master_seed, seed.stream_id)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)
    with open(path + ".meta.json", "w", encoding="utf-8") as fh:
        json.dump(_meta(kind, dim, model.num_classes, hops, layers, alpha,
                        aggregation, seed), fh, indent=2)
        fh.write("\n")


def load_model(path: str) -> PrototypeModel | GraphHDModel:
    """Read a model container; raises ModelFormatError on any mismatch."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size:
        raise ModelFormatError(f"{path}: truncated header")
    (magic, version, kind, agg_idx, _reserved, dim, num_classes, hops,
     layers, alpha, master_seed, stream_id) = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise ModelFormatError(f"{path}: bad magic, not a model file")
    if version != FORMAT_VERSION:
        raise ModelFormatError(
            f"{path}: format version {version} unsupported "
            f"(expected {FORMAT_VERSION})")
    if agg_idx >= len(AGGREGATION_MODES):
        raise ModelFormatError(f"{path}: unknown aggregation mode {agg_idx}")
    seed = SeedSpec(master_seed, stream_id)
    body = blob[_HEADER.size:]
    if kind == KIND_DENSE:
        expected = num_classes * dim * 8
        if len(body) != expected:
            raise ModelFormatError(
                f"{path}: payload is {len(body)} bytes, expected {expected}")
        protos = np.frombuffer(body, dtype="<f8").reshape(num_classes, dim)
        cfg = EncoderConfig(dim=dim, hops=hops, layers=layers, alpha=alpha,
                            seed=seed, aggregation=AGGREGATION_MODES[agg_idx])
        return PrototypeModel(protos.astype(np.float64), num_classes, cfg)
    if kind == KIND_BINARY:
        nwords = words_for(dim)
        expected = num_classes * nwords * 8
        if len(body) != expected:
            raise ModelFormatError(
                f"{path}: payload is {len(body)} bytes, expected {expected}")
        words = np.frombuffer(body, dtype="<u8").reshape(num_classes, nwords)
        protos = [BinaryHypervector(dim, words[c].astype(np.uint64))
                  for c in range(num_classes)]
        return GraphHDModel(protos, num_classes, dim, seed)
    raise ModelFormatError(f"{path}: unknown model kind {kind}")
