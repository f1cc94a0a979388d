"""Backend parity: the numba kernels must agree with the NumPy reference.

Everything is bit-exact by construction except pagerank, whose
convergence accounting may differ by one iteration at the stopping
boundary; there the outputs must agree to 1e-12 and produce identical
dense ranks.
"""

import numpy as np
import pytest

from vsgraph import kernels
from vsgraph.diffusion import default_basis
from vsgraph.graphs import make_graph, random_graph
from vsgraph.kernels import numpy_impl as ref
from vsgraph.seeding import SeedSpec

numba_impl = pytest.importorskip("vsgraph.kernels.numba_impl")

DIM = 200


def graph_suite(seed):
    yield make_graph(1, [])
    yield make_graph(4, [])
    yield make_graph(3, [(0, 1)])
    yield make_graph(3, [(0, 1), (1, 2), (2, 0)])
    for i in range(40):
        yield random_graph(seed.derive(i), 2 + i % 11, (i % 4) * 0.25)


def test_popcount_parity():
    words = np.arange(4096, dtype=np.uint64) * np.uint64(0x9E3779B97F4A7C15)
    assert np.array_equal(ref.popcount64(words), numba_impl.popcount64(words))


def test_pipeline_kernels_bit_exact(seed):
    basis = default_basis(seed, DIM)
    words = basis.words(12)
    tie = basis.words(13)[12]
    for g in graph_suite(seed):
        off, nbr = g.csr_offsets, g.csr_neighbors
        for hops in (0, 1, 3):
            s_ref = ref.diffuse(off, nbr, hops)
            s_nb = numba_impl.diffuse(off, nbr, hops)
            assert np.array_equal(s_ref, s_nb)
        r_ref = ref.dense_ranks(s_ref, 1e-9)
        r_nb = numba_impl.dense_ranks(s_nb, 1e-9)
        assert np.array_equal(r_ref, r_nb)
        st_ref = ref.rank_states(words, r_ref, DIM)
        st_nb = numba_impl.rank_states(words, r_nb, DIM)
        assert np.array_equal(st_ref, st_nb)
        for agg_ref, agg_nb in ((ref.aggregate_max, numba_impl.aggregate_max),
                                (ref.aggregate_binary_or,
                                 numba_impl.aggregate_binary_or)):
            m_ref = agg_ref(off, nbr, st_ref)
            m_nb = agg_nb(off, nbr, st_nb)
            assert np.array_equal(m_ref, m_nb)
        m_ref = ref.aggregate_max(off, nbr, st_ref)
        for alpha in (0.0, 0.3, 0.5, 1.0):
            b_ref = ref.blend(st_ref, m_ref, alpha)
            b_nb = numba_impl.blend(st_nb, m_ref, alpha)
            assert np.array_equal(b_ref, b_nb)
        for binarize in (False, True):
            mp_ref = ref.message_pass(off, nbr, st_ref, 0.3, 2, binarize)
            mp_nb = numba_impl.message_pass(off, nbr, st_nb, 0.3, 2, binarize)
            assert np.array_equal(mp_ref, mp_nb)
        assert np.array_equal(ref.readout_mean(b_ref),
                              numba_impl.readout_mean(b_nb))
        e_ref = ref.graphhd_encode(off, nbr, r_ref, words, DIM, tie)
        e_nb = numba_impl.graphhd_encode(off, nbr, r_nb, words, DIM, tie)
        assert np.array_equal(e_ref, e_nb)


def test_message_pass_equals_composed_ops(seed):
    # the fused layer kernel must match aggregate followed by blend exactly
    basis = default_basis(seed, DIM)
    words = basis.words(12)
    for g in graph_suite(seed):
        off, nbr = g.csr_offsets, g.csr_neighbors
        ranks = ref.dense_ranks(ref.diffuse(off, nbr, 2), 1e-9)
        h0 = ref.rank_states(words, ranks, DIM)
        for impl in (ref, numba_impl):
            fused = impl.message_pass(off, nbr, h0, 0.3, 3, False)
            h = h0.copy()
            for _ in range(3):
                h = impl.blend(h, impl.aggregate_max(off, nbr, h), 0.3)
            assert np.array_equal(fused, h)


def test_pagerank_parity(seed):
    for g in graph_suite(seed):
        off, nbr = g.csr_offsets, g.csr_neighbors
        p_ref = ref.pagerank(off, nbr, 0.85, 1e-9, 200)
        p_nb = numba_impl.pagerank(off, nbr, 0.85, 1e-9, 200)
        assert np.allclose(p_ref, p_nb, atol=1e-12, rtol=0.0)
        assert np.array_equal(ref.dense_ranks(p_ref, 1e-9),
                              numba_impl.dense_ranks(p_nb, 1e-9))


def test_active_backend_exposed():
    assert kernels.BACKEND in ("numba", "numpy")


def test_numpy_backend_forced_in_subprocess(tmp_path):
    import subprocess
    import sys
    code = ("from vsgraph import kernels; "
            "print(kernels.BACKEND)")
    out = subprocess.run([sys.executable, "-c", code],
                         env={"VSGRAPH_BACKEND": "numpy",
                              "PATH": "/usr/bin:/bin"},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
