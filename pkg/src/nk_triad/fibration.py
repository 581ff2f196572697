"""Vertical Lie triple systems and the canonical twistor fibrations.

For a vertical layer V of a type III/IV space the two relevant subalgebras are

    g_V    = V + [V, V]          (an ideal of the next one)
    gbar_V = V + k

gbar_V is the fixed algebra of an explicit inner involution, the fiber of the
canonical fibration is Gbar_V / K with tangent space V, and the base is
G / Gbar_V.  Everything here is exact root combinatorics: subalgebras are
closed root subsets plus Cartan directions, and types are read off through
the Dynkin classification of the subsystem, never from dimension counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .automorph import OrderThreeSymmetricSpace
from .chevalley import _add, _neg
from .rootsys import Coeffs, RootSystem, SubsystemType, _rational_rank, subsystem_type


class NonClosedSubalgebra(RuntimeError):
    """A bracket closure produced vectors outside the candidate subalgebra."""


class NotInvolutive(ValueError):
    """The candidate automorphism does not square to the identity."""


@dataclass
class FibrationReport:
    vertical_label: str
    g_v_type: SubsystemType
    gbar_v_type: SubsystemType
    g_v_dim: int
    gbar_v_dim: int
    fiber_dim: int
    base_dim: int
    involution_h: tuple[tuple[int, Fraction], ...]
    base_hermitian: bool
    note: str = ""


def check_lie_triple_system(space: OrderThreeSymmetricSpace, nu,
                            tol: float = 1e-9) -> bool:
    """[nu,nu]_m inside nu and [[nu,nu]_k, nu] inside nu, to tolerance.

    ``nu`` is either a list of m-basis positions or a dm x r column matrix.
    """
    xi, kc, ak = space.tensors()
    dm = space.dim_m
    if isinstance(nu, np.ndarray) and nu.ndim == 2:
        cols = nu
    else:
        cols = np.eye(dm)[:, list(nu)]
    proj_out = np.eye(dm) - cols @ cols.T
    r = cols.shape[1]
    # m-closure: [nu_a, nu_b]_m = -2 xi(nu_a, nu_b)
    for a in range(r):
        for b in range(a + 1, r):
            mvec = -2.0 * np.einsum("i,j,ijk->k", cols[:, a], cols[:, b], xi)
            if np.abs(proj_out @ mvec).max() > tol:
                return False
            kvec = np.einsum("i,j,ijs->s", cols[:, a], cols[:, b], kc)
            act = np.einsum("s,spq->pq", kvec, ak)
            if np.abs(proj_out @ act @ cols).max() > tol:
                return False
    return True


def _root_closure(rs: RootSystem, seed: set[Coeffs]) -> set[Coeffs]:
    full = set(seed) | {_neg(c) for c in seed}
    grew = True
    while grew:
        grew = False
        for x, y in itertools.combinations(sorted(full), 2):
            s = _add(x, y)
            if any(s) and rs.is_root(s) and s not in full:
                full.add(s)
                full.add(_neg(s))
                grew = True
    return full


def involution_fixed_points(rs: RootSystem, h_nodes: tuple[tuple[int, Fraction], ...]):
    """Positive roots fixed by Ad(exp 2 pi sqrt(-1) H'), H' = sum c_k H_k.

    Raises unless the rotation is an involution (every angle a half-turn).
    """
    def value(root: Coeffs) -> Fraction:
        return sum((c * Fraction(root[n - 1], rs.marks[n - 1]) for n, c in h_nodes),
                   Fraction(0))

    fixed = []
    for r in rs.positive_roots:
        t = value(r.coeffs) % 1
        if t == 0:
            fixed.append(r.coeffs)
        elif t != Fraction(1, 2):
            raise NotInvolutive(f"root angle {t} is not a half-turn")
    return fixed


_INVOLUTION_RULES = {
    ("A3II", "V1"): lambda i, j: ((i, Fraction(1, 2)), (j, Fraction(1, 2))),
    ("A3II", "V2"): lambda i, j: ((j, Fraction(1, 2)),),
    ("A3II", "V3"): lambda i, j: ((i, Fraction(1, 2)),),
    ("A3III", "V"): lambda i: ((i, Fraction(1)),),
}


def fibration_subalgebras(space: OrderThreeSymmetricSpace,
                          vertical_label: str) -> FibrationReport:
    """Compute (g_V, gbar_V) for one vertical layer and classify both."""
    if space.type_label not in ("A3II", "A3III"):
        raise NonClosedSubalgebra("canonical fibrations need a type III/IV space")
    if vertical_label not in space.layer_roots:
        raise KeyError(f"no vertical layer {vertical_label}")
    rs = space.algebra.rs
    v_roots = set(space.layer_roots[vertical_label])

    closure = _root_closure(rs, v_roots)
    pos = sorted(c for c in closure if c in rs._index)
    g_v_rank = _rational_rank(pos)
    g_v_type = subsystem_type(rs, closure, ambient_rank=g_v_rank)
    g_v_dim = 2 * len(pos) + g_v_rank

    gbar_pos = sorted(v_roots | set(space.delta_plus_h))
    gbar = {c for c in gbar_pos} | {_neg(c) for c in gbar_pos}
    for x, y in itertools.combinations(sorted(gbar), 2):
        s = _add(x, y)
        if any(s) and rs.is_root(s) and s not in gbar:
            raise NonClosedSubalgebra("V + k is not bracket-closed")
    gbar_v_type = subsystem_type(rs, gbar, ambient_rank=rs.rank)
    gbar_v_dim = 2 * len(gbar_pos) + rs.rank

    # g_V must be an ideal of gbar_V
    for x in gbar:
        for y in closure:
            s = _add(x, y)
            if any(s) and rs.is_root(s) and s not in closure:
                raise NonClosedSubalgebra("V + [V,V] is not an ideal of V + k")

    fiber_dim = 2 * len(v_roots)
    base_dim = space.algebra.dim - gbar_v_dim
    if fiber_dim != gbar_v_dim - (space.algebra.dim - space.dim_m):
        raise NonClosedSubalgebra("fiber dimension bookkeeping failed")

    nodes = space.h_spec.nodes
    invol = _INVOLUTION_RULES[(space.type_label, vertical_label)](*nodes)
    fixed = involution_fixed_points(rs, invol)
    if sorted(fixed) != gbar_pos:
        raise NonClosedSubalgebra("involution fixed points differ from V + k")

    note = ""
    if space.type_label == "A3III" and fiber_dim == 2 and rs.family == "c" \
            and nodes == (1,):
        note = ("odd projective space carries the symplectic-group metric here, "
                "not the symmetric one")
    return FibrationReport(
        vertical_label, g_v_type, gbar_v_type, g_v_dim, gbar_v_dim,
        fiber_dim, base_dim, invol,
        base_hermitian=gbar_v_type.torus_rank >= 1, note=note,
    )


def all_fibrations(space: OrderThreeSymmetricSpace) -> list[FibrationReport]:
    labels = ("V1", "V2", "V3") if space.type_label == "A3II" else ("V",)
    return [fibration_subalgebras(space, lbl) for lbl in labels]
