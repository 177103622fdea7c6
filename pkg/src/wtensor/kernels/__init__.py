"""Enumeration kernels, compiled when available.

Set ``WTENSOR_PURE_PYTHON=1`` to force the pure-Python implementation.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("WTENSOR_PURE_PYTHON") == "1":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND

digit_census = _impl.digit_census
cover_structure_count = _impl.cover_structure_count
cov_census = _impl.cov_census
rref_mod_p = _impl.rref_mod_p
rank_mod_p = _impl.rank_mod_p
nullspace_mod_p = _impl.nullspace_mod_p
image_census = _impl.image_census
kernel_census = _impl.kernel_census


def block_table(k: int) -> list:
    """Digit table for labels assigned to nonempty S in <k>.

    Contribution: (#S - 1, [1 in S], ..., [k in S]).
    """
    rows = []
    for mask in range(1, 1 << k):
        bits = [(mask >> i) & 1 for i in range(k)]
        rows.append((sum(bits) - 1, *bits))
    return rows


def mfil_table(k: int) -> list:
    """Digit table for one label of a modified k-filtration.

    A label enters the U-chain at level l (in U_i for i >= l) and lies in V_i
    for a chosen subset of levels l..k-1.  Contribution: (weight, size_1..size_k)
    with weight = #{i < k : in U_i, not in V_i} and size_i = [in U_i, not in V_{i-1}].
    """
    rows = []
    for level in range(1, k + 1):
        span = k - level
        for vbits in range(1 << span):
            in_v = {level + j for j in range(span) if (vbits >> j) & 1}
            weight = sum(1 for i in range(level, k) if i not in in_v)
            sizes = [1 if i >= level and (i - 1) not in in_v else 0 for i in range(1, k + 1)]
            rows.append((weight, *sizes))
    return rows


def block_census(n_labels: int, k: int) -> dict:
    return digit_census(n_labels, block_table(k))


def mfil_census(k: int, n_labels: int) -> dict:
    return digit_census(n_labels, mfil_table(k))
