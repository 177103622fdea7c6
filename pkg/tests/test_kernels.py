from __future__ import annotations

import os
import random
import subprocess
import sys

import pytest

from wtensor import kernels
from wtensor.kernels import _pykernels as py

ck = pytest.importorskip("wtensor.kernels._ckernels")


def test_backend_default_is_compiled():
    assert ck.BACKEND != "python"
    assert kernels.BACKEND == ck.BACKEND


def test_pure_python_switch():
    env = dict(os.environ, WTENSOR_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import wtensor.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("k,n", [(2, 4), (3, 3), (3, 4)])
def test_digit_census_agrees(k, n):
    for table in (kernels.block_table(k), kernels.mfil_table(k)):
        assert py.digit_census(n, table) == ck.digit_census(n, table)


def test_digit_census_random_tables():
    rng = random.Random(0)
    for _ in range(10):
        width = rng.randint(1, 3)
        table = [tuple(rng.randint(0, 2) for _ in range(width)) for _ in range(rng.randint(1, 4))]
        n = rng.randint(0, 4)
        assert py.digit_census(n, table) == ck.digit_census(n, table)


def test_cover_count_agrees():
    rng = random.Random(1)
    for _ in range(10):
        n = rng.randint(0, 4)
        f = [rng.randint(0, 2) for _ in range(n + 1)]
        g = [rng.randint(0, 2) for _ in range(n + 1)]
        lam = rng.randint(0, 2)
        assert py.cover_structure_count(n, lam, f, g) == ck.cover_structure_count(n, lam, f, g)


@pytest.mark.parametrize("a,b,n", [(2, 2, 3), (3, 2, 4), (1, 3, 3), (2, 3, 5)])
def test_cov_census_agrees(a, b, n):
    assert py.cov_census(a, b, n) == ck.cov_census(a, b, n)


def test_linear_algebra_agrees():
    rng = random.Random(2)
    for _ in range(30):
        p = rng.choice([2, 3, 5])
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        rows = [[rng.randrange(p) for _ in range(c)] for _ in range(r)]
        assert py.rref_mod_p(rows, p) == ck.rref_mod_p(rows, p)
        assert py.rank_mod_p(rows, p) == ck.rank_mod_p(rows, p)
        assert py.nullspace_mod_p(rows, c, p) == ck.nullspace_mod_p(rows, c, p)


@pytest.mark.parametrize("p,n,a", [(2, 3, 1), (2, 3, 2), (3, 2, 1), (3, 2, 2)])
def test_censuses_agree(p, n, a):
    assert py.image_census(p, n, a) == ck.image_census(p, n, a)
    assert py.kernel_census(p, n, a) == ck.kernel_census(p, n, a)


def test_compiled_rejects_negative_contributions():
    with pytest.raises(ValueError):
        ck.digit_census(2, [(1,), (-1,)])
