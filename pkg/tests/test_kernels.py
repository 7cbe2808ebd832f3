from __future__ import annotations

import os
from contextlib import contextmanager
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from falsetheta import _kernels
from tests.oracles import naive_mul

BACKENDS = ["numpy"] + (["numba"] if _kernels.numba is not None else [])
moduli = st.sampled_from([2, 3, 4, 8, 97, 65537, (1 << 31) - 1])


@contextmanager
def on(name):
    prev = _kernels.use_backend(name)
    try:
        yield
    finally:
        _kernels.use_backend(prev)


per_backend = pytest.mark.parametrize("backend", BACKENDS)


def residues(draw_list, m):
    return np.array([v % m for v in draw_list], dtype=np.int64)


@per_backend
@given(st.lists(st.integers(0, 2**40), min_size=1, max_size=120),
       st.lists(st.integers(0, 2**40), min_size=1, max_size=120), moduli)
@settings(max_examples=60, deadline=None)
def test_mul_mod_matches_naive(backend, x, y, m):
    a, b = residues(x, m), residues(y, m)
    n = min(len(x), len(y)) - 1
    expected = [v % m for v in naive_mul([int(v) for v in a], [int(v) for v in b], n)]
    with on(backend):
        assert _kernels.mul_mod(a, b, n, m).tolist() == expected


@per_backend
@given(st.lists(st.integers(0, 2**40), min_size=1, max_size=120), moduli)
@settings(max_examples=60, deadline=None)
def test_reciprocal_mod_inverts(backend, x, m):
    s = residues([1] + x, m)
    n = len(x)
    with on(backend):
        r = _kernels.reciprocal_mod(s, n, m, 1)
        prod = _kernels.mul_mod(s, r, n, m)
    assert prod.tolist() == [1 % m] + [0] * n


@per_backend
def test_reciprocal_mod_with_unit_constant(backend):
    m = 9
    s = np.array([2, 1, 0, 5], dtype=np.int64)
    with on(backend):
        r = _kernels.reciprocal_mod(s, 3, m, pow(2, -1, m))
        assert _kernels.mul_mod(s, r, 3, m).tolist() == [1, 0, 0, 0]


@per_backend
@given(st.lists(st.integers(0, 1), min_size=1, max_size=200), st.integers(1, 12))
@settings(deadline=None)
def test_zero_classes_matches_slicing(backend, bits, A):
    values = np.array(bits, dtype=np.int64)
    expected = [not values[B::A].any() for B in range(A)]
    with on(backend):
        assert _kernels.zero_classes(values, A).tolist() == expected


def test_backends_agree_on_large_product():
    if len(BACKENDS) < 2:
        pytest.skip("numba not installed")
    rng = np.random.default_rng(11)
    a = rng.integers(0, 1 << 30, 3000, dtype=np.int64)
    b = rng.integers(0, 1 << 30, 3000, dtype=np.int64)
    results = []
    for name in BACKENDS:
        with on(name):
            results.append(_kernels.mul_mod(a, b, 2999, (1 << 31) - 1))
    assert np.array_equal(results[0], results[1])


def test_use_backend_rejects_unknown():
    with pytest.raises(ValueError):
        _kernels.use_backend("fortran")


def test_env_flag_selects_numpy():
    env = dict(os.environ, FALSETHETA_DISABLE_NUMBA="1")
    proc = subprocess.run([sys.executable, "-c", "from falsetheta import _kernels; print(_kernels.backend())"],
                          capture_output=True, text=True, env=env, check=True)
    assert proc.stdout.strip() == "numpy"


def test_benchmark_script_runs():
    script = os.path.join(os.path.dirname(__file__), os.pardir, "benchmarks", "bench_kernels.py")
    proc = subprocess.run([sys.executable, script, "--trunc", "300", "--repeat", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert "reciprocal_mod" in proc.stdout
