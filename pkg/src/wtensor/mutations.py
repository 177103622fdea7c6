"""Deliberately broken law variants, used to show the checks are not vacuous.

Each mutation drops the lam cross-term from one defining formula.
"""

from __future__ import annotations

from contextlib import contextmanager

from . import gphtensor, hurwitz


def _derivation_rhs_no_cross(alg, a, b, da, db, lam):
    return alg.add(alg.mul(da, b), alg.mul(a, db))


def _rb_argument_no_cross(alg, a, b, pa, pb, lam):
    return alg.add(alg.mul(pa, b), alg.mul(a, pb))


def _binary_source_no_cross(g1, g2, lam):
    return g1.s.kron(g2.t) + g1.t.kron(g2.s)


MUTATIONS = {
    "derivation": (hurwitz, "_derivation_rhs", _derivation_rhs_no_cross),
    "rb": (hurwitz, "_rb_argument", _rb_argument_no_cross),
    "graph_source": (gphtensor, "_binary_source", _binary_source_no_cross),
}


@contextmanager
def mutated(*names: str):
    """Temporarily install the named mutations."""
    saved = []
    try:
        for name in names:
            if name not in MUTATIONS:
                raise KeyError(f"unknown mutation {name!r}; choose from {sorted(MUTATIONS)}")
            module, attr, fn = MUTATIONS[name]
            saved.append((module, attr, getattr(module, attr)))
            setattr(module, attr, fn)
        yield
    finally:
        for module, attr, fn in reversed(saved):
            setattr(module, attr, fn)
