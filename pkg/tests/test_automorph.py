"""Order-3 automorphism enumeration and realization."""

from fractions import Fraction

import numpy as np
import pytest

from nk_triad.automorph import (
    InnerClass,
    NotOrderThree,
    classify_type,
    enumerate_inner_order3,
    fixed_algebra_root_signature,
    invariant_halves,
    orbit_span_dim,
    realize_cyclic_c3,
    realize_inner,
    realize_triality_d4,
)
from nk_triad.rootsys import subsystem_type
from nk_triad.tables import realize

F = Fraction


def kinds(rs, dedup=False):
    return [(c.kind, c.nodes) for c in enumerate_inner_order3(rs, dedup=dedup)]


def test_enumeration_g2(rootsys):
    assert kinds(rootsys("g", 2)) == [("A3III", (2,)), ("A3IV", (1,))]


def test_enumeration_a2(rootsys):
    assert kinds(rootsys("a", 2)) == [("A3I", (1,)), ("A3I", (2,)), ("A3II", (1, 2))]


def test_enumeration_e8(rootsys):
    assert kinds(rootsys("e", 8)) == [("A3III", (1,)), ("A3III", (8,)),
                                      ("A3IV", (2,)), ("A3IV", (7,))]


def test_enumeration_e6_with_dedup(rootsys):
    rs = rootsys("e", 6)
    raw = kinds(rs)
    assert ("A3I", (1,)) in raw and ("A3I", (6,)) in raw
    assert ("A3II", (1, 6)) in raw
    assert raw.count(("A3IV", (4,))) == 1
    deduped = kinds(rs, dedup=True)
    assert ("A3I", (6,)) not in deduped          # diagram flip merges the ends
    assert ("A3III", (5,)) not in deduped        # 3 ~ 5 under the flip
    assert ("A3III", (3,)) in deduped


def test_enumeration_dn_pairs(rootsys):
    raw = kinds(rootsys("d", 5))
    assert ("A3II", (1, 4)) in raw and ("A3II", (1, 5)) in raw and ("A3II", (4, 5)) in raw
    dd = kinds(rootsys("d", 5), dedup=True)
    assert ("A3II", (1, 5)) not in dd            # 4 ~ 5 merges (1,4) and (1,5)


def test_alpha_value_is_exact(rootsys):
    rs = rootsys("g", 2)
    cls = InnerClass("A3IV", (1,), (F(1),))
    assert cls.alpha_value(rs, (3, 2)) == 1      # highest root, n1/m1 = 3/3
    assert cls.alpha_value(rs, (1, 1)) == F(1, 3)


def test_realize_su3_flag(algebra):
    sp = realize_inner(algebra("a", 2), InnerClass("A3II", (1, 2), (F(1, 3), F(1, 3))))
    assert sp.dim_k == 2 and sp.dim_m == 6
    assert sp.delta_plus_h == []
    assert {k: len(v) for k, v in sp.layers.items()} == {"V1": 2, "V2": 2, "V3": 2}
    assert classify_type(sp).label == "III"


def test_realize_g2_twistor(algebra):
    sp = realize_inner(algebra("g", 2), InnerClass("A3III", (2,), (F(2, 3),)))
    assert sp.delta_plus_h == [(1, 0)]
    assert sp.dim_k == 4 and sp.dim_m == 10
    assert len(sp.layers["V"]) == 2 and len(sp.layers["H"]) == 8
    assert classify_type(sp).label == "IV"


def test_realize_f4_node1_isotropy_is_c3(algebra):
    sp = realize_inner(algebra("f", 4), InnerClass("A3III", (1,), (F(2, 3),)))
    assert len(sp.delta_plus_h) == 9
    rs = sp.algebra.rs
    full = sp.delta_plus_h + [tuple(-x for x in c) for c in sp.delta_plus_h]
    st = subsystem_type(rs, full)
    assert st.components == (("c", 3),) and st.torus_rank == 1


def test_sigma_cubes_for_all_table_classes(algebra):
    for family, rank in [("a", 3), ("b", 3), ("e", 6)]:
        ca = algebra(family, rank)
        for cls in enumerate_inner_order3(ca.rs):
            sp = realize_inner(ca, cls)
            sp.check_invariants()
            assert sp.dim_m % 2 == 0
            assert sp.dim_k + sp.dim_m == ca.dim


def test_bad_h_spec_raises(algebra):
    # an order-6 element is rejected by the order-3 invariant checks
    with pytest.raises(NotOrderThree):
        realize_inner(algebra("a", 2), InnerClass("A3II", (1, 2), (F(1, 6), F(1, 6))))


def test_triality_dimensions_and_fixed_vectors(algebra):
    ca = algebra("d", 4)
    sp = realize_triality_d4(ca)
    assert sp.dim_k == 14 and sp.dim_m == 14
    # sigma fixes the alpha_2 and highest-root planes
    rs = ca.rs
    for root in [(0, 1, 0, 0), (1, 2, 1, 1)]:
        for p in (0, 1):
            idx = ca.u_index(rs.index(root), p)
            assert abs(sp.sigma[idx, idx] - 1) < 1e-12
    assert sp.bracket_preservation_residual(samples=150) < 1e-12


def test_triality_fixed_algebra_is_g2(algebra):
    sp = realize_triality_d4(algebra("d", 4))
    rank, nroots, ratio = fixed_algebra_root_signature(sp)
    assert (rank, nroots) == (2, 12)
    assert abs(ratio - 3.0) < 1e-6


def test_triality_halves_are_invariant(algebra):
    sp = realize_triality_d4(algebra("d", 4))
    _, _, ak = sp.tensors()
    e_pos, je_pos = sp.layers["E"], sp.layers["JE"]
    for s in range(sp.dim_k):
        block = ak[s][np.ix_(je_pos, e_pos)]
        assert np.abs(block).max() < 1e-9
    dec = classify_type(sp)
    assert dec.label == "II"
    assert dec.evidence["half_dims"] == (7, 7)


def test_cyclic_su2(algebra):
    sp = realize_cyclic_c3(algebra("a", 1))
    assert sp.algebra.dim == 9 and sp.dim_k == 3 and sp.dim_m == 6
    dec = classify_type(sp)
    assert dec.label == "II"


def test_cyclic_diagonal_action_matches_component(algebra):
    """ad of the diagonal on the first half acts as the component algebra."""
    base = algebra("a", 2)
    sp = realize_cyclic_c3(base)
    _, _, ak = sp.tensors()
    d = base.dim
    for s in range(d):
        expect = base.ad_dense(s) / np.sqrt(3.0)
        assert np.abs(ak[s][:d, :d] - expect).max() < 1e-12


def test_orbit_span_full_on_isotropy_irreducible():
    sp = realize("g", 2, "A3IV", (1,))
    rng = np.random.default_rng(11)
    assert orbit_span_dim(sp, rng.standard_normal(sp.dim_m)) == sp.dim_m
    assert invariant_halves(sp) is None
    assert classify_type(sp).label == "I"


def test_orbit_span_half_inside_invariant_subspace(algebra):
    sp = realize_cyclic_c3(algebra("a", 1))
    seed = np.zeros(sp.dim_m)
    seed[0] = 1.0                         # a vector of the E half
    assert orbit_span_dim(sp, seed) == 3
    halves = invariant_halves(sp)
    assert halves is not None and halves[0].shape[1] == 3
