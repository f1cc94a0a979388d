"""Pure-NumPy kernel implementations.

Fallback backend used when numba is unavailable or when
``VSGRAPH_BACKEND=numpy`` is set. Every function here defines the
reference semantics for the numba twins in :mod:`numba_impl`; sums that
feed equality-sensitive results are computed in the same element order
as the numba loops (cumsum / bincount accumulate left to right) so both
backends agree bit-for-bit wherever the contract demands exactness.
"""

from __future__ import annotations

import numpy as np

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def popcount64(words: np.ndarray) -> np.ndarray:
    """Per-word set-bit counts for a uint64 array (classic SWAR)."""
    x = words.astype(np.uint64, copy=True)
    x -= (x >> np.uint64(1)) & _M1
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return (x * _H01) >> np.uint64(56)


def unpack_words(words: np.ndarray, dim: int) -> np.ndarray:
    """uint64 packed rows -> uint8 bit matrix, bit d at column d."""
    flat = np.ascontiguousarray(words, dtype=np.uint64)
    bits = np.unpackbits(flat.view(np.uint8), bitorder="little", axis=-1)
    return bits[..., :dim]


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Inverse of unpack_words; pads the tail with zero bits."""
    bits = np.asarray(bits, dtype=np.uint8)
    dim = bits.shape[-1]
    nwords = (dim + 63) // 64
    pad = nwords * 64 - dim
    if pad:
        shape = bits.shape[:-1] + (pad,)
        bits = np.concatenate([bits, np.zeros(shape, dtype=np.uint8)], axis=-1)
    packed = np.packbits(bits, bitorder="little", axis=-1)
    return packed.view(np.uint64).reshape(bits.shape[:-1] + (nwords,)).copy()


def diffuse(offsets: np.ndarray, neighbors: np.ndarray, hops: int) -> np.ndarray:
    """Synchronous neighbor-sum propagation from an all-ones start.

    After each round the vector is rescaled by its maximum (skipped when
    the maximum is zero); rescaling preserves all pairwise order
    relations while preventing overflow for large hop counts.
    """
    n = len(offsets) - 1
    s = np.ones(n, dtype=np.float64)
    if hops == 0:
        return s
    rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(offsets))
    for _ in range(hops):
        s = np.bincount(rows, weights=s[neighbors], minlength=n)
        m = s.max()
        if m > 0.0:
            s /= m
    return s


def dense_ranks(values: np.ndarray, rel_tol: float = 1e-9) -> np.ndarray:
    """Dense descending ranks; values within rel_tol of the group leader tie."""
    n = len(values)
    order = np.argsort(-values, kind="mergesort")
    ranks = np.empty(n, dtype=np.int64)
    rank = 0
    leader = values[order[0]]
    ranks[order[0]] = 0
    for k in range(1, n):
        v = values[order[k]]
        if leader - v > rel_tol * leader:
            rank += 1
            leader = v
        ranks[order[k]] = rank
    return ranks


def rank_states(basis_words: np.ndarray, ranks: np.ndarray, dim: int) -> np.ndarray:
    """Initial dense node states: unpacked basis row for each node's rank."""
    return unpack_words(basis_words[ranks], dim).astype(np.float64)


def aggregate_max(offsets: np.ndarray, neighbors: np.ndarray,
                  states: np.ndarray) -> np.ndarray:
    """Componentwise max over neighbor states; zero vector for isolated nodes.

    Requires nonnegative states (the pipeline keeps everything in [0,1]).
    The appended zero row keeps every reduceat start index in range; rows
    of isolated nodes are zeroed afterwards because reduceat yields
    a[start] for an empty segment, not an empty reduction.
    """
    dim = states.shape[1]
    gathered = np.concatenate([states[neighbors], np.zeros((1, dim))], axis=0)
    out = np.maximum.reduceat(gathered, offsets[:-1], axis=0)
    out[np.diff(offsets) == 0] = 0.0
    return out


def aggregate_binary_or(offsets: np.ndarray, neighbors: np.ndarray,
                        states: np.ndarray) -> np.ndarray:
    """Logical-OR aggregation of neighbor states binarized at 0.5."""
    return aggregate_max(offsets, neighbors, (states >= 0.5).astype(np.float64))


def blend(h: np.ndarray, m: np.ndarray, alpha: float) -> np.ndarray:
    """Convex residual update alpha*h + (1-alpha)*m."""
    return alpha * h + (1.0 - alpha) * m


def message_pass(offsets: np.ndarray, neighbors: np.ndarray, h0: np.ndarray,
                 alpha: float, layers: int, binarize: bool) -> np.ndarray:
    """L synchronous aggregate-then-blend layers over the initial states."""
    h = h0.copy()
    agg = aggregate_binary_or if binarize else aggregate_max
    for _ in range(layers):
        h = blend(h, agg(offsets, neighbors, h), alpha)
    return h


def encode_states(offsets: np.ndarray, neighbors: np.ndarray,
                  basis_words: np.ndarray, ranks: np.ndarray, dim: int,
                  alpha: float, layers: int, binarize: bool,
                  buf_a: np.ndarray, buf_b: np.ndarray) -> np.ndarray:
    """rank_states + message_pass in one call.

    The scratch buffers exist for signature parity with the numba twin,
    which runs allocation-free; the vectorized path just composes the
    standalone kernels (identical values either way).
    """
    h = rank_states(basis_words, ranks, dim)
    return message_pass(offsets, neighbors, h, alpha, layers, binarize)


def readout_mean(states: np.ndarray) -> np.ndarray:
    """Componentwise mean over node states, exactly permutation-invariant.

    Rows are accumulated in a canonical order derived purely from row
    content: primary key is the sequential (left-to-right) row sum,
    ties broken by lexicographic comparison of the component bit
    patterns. Rows with fully equal keys are bitwise identical and
    interchangeable, so any relabeling of the nodes produces a
    bit-identical result. Big-endian byte strings compare exactly like
    the uint64 bit-pattern sequences the numba twin walks.
    """
    states = np.ascontiguousarray(states, dtype=np.float64)
    n = states.shape[0]
    sums = np.cumsum(states, axis=1)[:, -1]
    keys = states.astype(">f8").tobytes()
    width = states.shape[1] * 8
    order = sorted(range(n),
                   key=lambda i: (sums[i], keys[i * width:(i + 1) * width]))
    acc = np.zeros(states.shape[1], dtype=np.float64)
    for i in order:
        acc += states[i]
    return acc / n


def pagerank(offsets: np.ndarray, neighbors: np.ndarray, damping: float,
             tol: float, max_iter: int) -> np.ndarray:
    """Power iteration with uniform teleportation; dangling mass spread uniformly.

    Stops when the L1 change drops below tol or after max_iter rounds.
    """
    n = len(offsets) - 1
    deg = np.diff(offsets).astype(np.float64)
    isolated = deg == 0.0
    rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(offsets))
    s = np.full(n, 1.0 / n)
    base = (1.0 - damping) / n
    for _ in range(max_iter):
        vals = np.divide(s, deg, out=np.zeros(n), where=~isolated)
        sums = np.bincount(rows, weights=vals[neighbors], minlength=n)
        dangling = np.cumsum(s[isolated])[-1] if isolated.any() else 0.0
        dm = dangling / n
        new = base + damping * (sums + dm)
        delta = np.cumsum(np.abs(new - s))[-1]
        s = new
        if delta < tol:
            break
    return s


def graphhd_encode(offsets: np.ndarray, neighbors: np.ndarray, ranks: np.ndarray,
                   basis_words: np.ndarray, dim: int,
                   tie_words: np.ndarray) -> np.ndarray:
    """Majority bundle of XOR-bound rank vectors, one per undirected edge.

    Edgeless graphs encode to the all-zero vector.
    """
    n = len(offsets) - 1
    rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(offsets))
    fwd = rows < neighbors
    num_edges = int(fwd.sum())
    nwords = basis_words.shape[1]
    if num_edges == 0:
        return np.zeros(nwords, dtype=np.uint64)
    edge_hvs = basis_words[ranks[rows[fwd]]] ^ basis_words[ranks[neighbors[fwd]]]
    counts = unpack_words(edge_hvs, dim).astype(np.int64).sum(axis=0)
    twice = 2 * counts
    bits = (twice > num_edges).astype(np.uint8)
    ties = twice == num_edges
    if ties.any():
        bits[ties] = unpack_words(tie_words, dim)[ties]
    return pack_bits(bits)


def encode_embedding(offsets: np.ndarray, neighbors: np.ndarray,
                     basis_words: np.ndarray, hops: int, rank_tol: float,
                     dim: int, alpha: float, layers: int, binarize: bool,
                     buf_a: np.ndarray, buf_b: np.ndarray) -> np.ndarray:
    """Whole per-graph pipeline composed from the standalone kernels."""
    spikes = diffuse(offsets, neighbors, hops)
    ranks = dense_ranks(spikes, rank_tol)
    states = encode_states(offsets, neighbors, basis_words, ranks, dim,
                           alpha, layers, binarize, buf_a, buf_b)
    return readout_mean(states)
