#!/usr/bin/env python3
"""Benchmark: numba kernels vs the pure-NumPy fallback.

Times every hot kernel on a synthetic corpus and prints a side-by-side
table with speedups. Both backends are imported directly, so this runs
in one process regardless of VSGRAPH_BACKEND.

Usage:
    python benchmarks/bench_kernels.py [--graphs N] [--nodes N] [--dim D]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from vsgraph.diffusion import default_basis
from vsgraph.graphs import random_graph
from vsgraph.kernels import numpy_impl
from vsgraph.seeding import SeedSpec

try:
    from vsgraph.kernels import numba_impl
except ImportError:
    numba_impl = None


def build_corpus(args):
    seed = SeedSpec(args.seed)
    graphs = [random_graph(seed.derive(i), args.nodes, args.edge_prob)
              for i in range(args.graphs)]
    basis = default_basis(seed, args.dim)
    basis.ensure(args.nodes)
    return graphs, basis


def bench(fn, graphs, repeats):
    for g in graphs[:2]:  # warm-up and JIT compile
        fn(g)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for g in graphs:
            fn(g)
        best = min(best, time.perf_counter() - t0)
    return best * 1e3 / len(graphs)


def kernel_suite(impl, basis, args):
    dim = args.dim
    words = basis.words(args.nodes)
    tie = basis.words(args.nodes + 1)[args.nodes]
    scratch = (np.empty((args.nodes, dim)), np.empty((args.nodes, dim)))

    def full_encode(g):
        return impl.encode_embedding(g.csr_offsets, g.csr_neighbors, words,
                                     args.hops, 1e-9, dim, args.alpha,
                                     args.layers, False,
                                     scratch[0][:g.num_nodes],
                                     scratch[1][:g.num_nodes])

    def diffuse(g):
        return impl.diffuse(g.csr_offsets, g.csr_neighbors, args.hops)

    def states(g):
        spikes = impl.diffuse(g.csr_offsets, g.csr_neighbors, args.hops)
        ranks = impl.dense_ranks(spikes, 1e-9)
        return impl.rank_states(words, ranks, dim)

    def message_pass(g, _cache={}):
        h0 = _cache.get(id(g))
        if h0 is None:
            h0 = _cache[id(g)] = states(g)
        return impl.message_pass(g.csr_offsets, g.csr_neighbors, h0,
                                 args.alpha, args.layers, False)

    def readout(g, _cache={}):
        h = _cache.get(id(g))
        if h is None:
            h = _cache[id(g)] = message_pass(g)
        return impl.readout_mean(h)

    def prank(g):
        return impl.pagerank(g.csr_offsets, g.csr_neighbors, 0.85, 1e-9, 200)

    def ghd(g, _cache={}):
        ranks = _cache.get(id(g))
        if ranks is None:
            ranks = _cache[id(g)] = impl.dense_ranks(prank(g), 1e-9)
        return impl.graphhd_encode(g.csr_offsets, g.csr_neighbors, ranks,
                                   words, dim, tie)

    return {
        "diffuse": diffuse,
        "rank_states": states,
        "message_pass": message_pass,
        "readout_mean": readout,
        "encode_embedding": full_encode,
        "pagerank": prank,
        "graphhd_encode": ghd,
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--graphs", type=int, default=100)
    parser.add_argument("--nodes", type=int, default=18)
    parser.add_argument("--edge-prob", type=float, default=0.15)
    parser.add_argument("--dim", type=int, default=8192)
    parser.add_argument("--hops", type=int, default=2)
    parser.add_argument("--layers", type=int, default=2)
    parser.add_argument("--alpha", type=float, default=0.5)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    graphs, basis = build_corpus(args)
    print(f"corpus: {args.graphs} graphs, {args.nodes} nodes, "
          f"D={args.dim}, hops={args.hops}, layers={args.layers}")
    print()

    numpy_times = {name: bench(fn, graphs, args.repeats)
                   for name, fn in kernel_suite(numpy_impl, basis, args).items()}
    if numba_impl is None:
        print("numba unavailable; NumPy timings only")
        for name, ms in numpy_times.items():
            print(f"{name:<18} {ms:>10.4f} ms/graph")
        return

    numba_times = {name: bench(fn, graphs, args.repeats)
                   for name, fn in kernel_suite(numba_impl, basis, args).items()}

    print(f"{'kernel':<18} {'numpy ms/g':>12} {'numba ms/g':>12} {'speedup':>9}")
    print("-" * 55)
    for name in numpy_times:
        np_ms, nb_ms = numpy_times[name], numba_times[name]
        print(f"{name:<18} {np_ms:>12.4f} {nb_ms:>12.4f} {np_ms / nb_ms:>8.1f}x")


if __name__ == "__main__":
    main()
