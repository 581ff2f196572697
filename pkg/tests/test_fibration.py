"""Lie triple systems and canonical fibration subalgebras."""

from fractions import Fraction

import numpy as np
import pytest

from nk_triad.fibration import (
    NotInvolutive,
    all_fibrations,
    check_lie_triple_system,
    fibration_subalgebras,
    involution_fixed_points,
)
from nk_triad.tables import realize

F = Fraction


def test_vertical_layers_are_lie_triple_systems():
    sp = realize("b", 4, "A3III", (2,))
    assert check_lie_triple_system(sp, sp.layers["V"])
    sp2 = realize("a", 3, "A3II", (1, 3))
    for label in ("V1", "V2", "V3"):
        assert check_lie_triple_system(sp2, sp2.layers[label])


def test_random_plane_usually_fails_lts():
    sp = realize("a", 2, "A3II", (1, 2))
    rng = np.random.default_rng(123)
    hits = 0
    for _ in range(5):
        plane, _ = np.linalg.qr(rng.standard_normal((sp.dim_m, 2)))
        hits += not check_lie_triple_system(sp, plane)
    assert hits >= 1


def test_g2_fibration():
    rep = fibration_subalgebras(realize("g", 2, "A3III", (2,)), "V")
    assert rep.g_v_type.components == (("a", 1),)
    assert rep.gbar_v_type.components == (("a", 1), ("a", 1))
    assert rep.gbar_v_type.torus_rank == 0
    assert (rep.fiber_dim, rep.base_dim) == (2, 8)
    assert not rep.base_hermitian


def test_f4_node4_fibration_is_so9():
    rep = fibration_subalgebras(realize("f", 4, "A3III", (4,)), "V")
    assert rep.g_v_type.components == (("b", 4),)
    assert rep.gbar_v_type.components == (("b", 4),)
    assert rep.g_v_dim == rep.gbar_v_dim == 36
    assert (rep.fiber_dim, rep.base_dim) == (14, 16)


def test_so2n_flag_fibrations():
    """The two fibration shapes of SO(2n)/(U(n-1)xSO(2)), at n = 5."""
    sp = realize("d", 5, "A3II", (4, 5))
    reps = {r.vertical_label: r for r in all_fibrations(sp)}
    assert reps["V1"].g_v_type.components == (("d", 4),)
    assert reps["V1"].gbar_v_type.components == (("d", 4),)
    assert reps["V1"].gbar_v_type.torus_rank == 1
    assert (reps["V1"].fiber_dim, reps["V1"].base_dim) == (12, 16)
    for label in ("V2", "V3"):
        assert reps[label].g_v_type.components == (("a", 4),)
        assert (reps[label].fiber_dim, reps[label].base_dim) == (8, 20)
    assert all(r.base_hermitian for r in reps.values())


def test_su_flag_fibrations_cyclic_pattern():
    sp = realize("a", 5, "A3II", (2, 4))  # SU(6)/S(U(2)^3)
    reps = {r.vertical_label: r for r in all_fibrations(sp)}
    for label in ("V1", "V2", "V3"):
        assert reps[label].g_v_type.components == (("a", 3),)
        assert reps[label].gbar_v_type.components == (("a", 1), ("a", 3))
        assert reps[label].gbar_v_type.torus_rank == 1
        assert (reps[label].fiber_dim, reps[label].base_dim) == (8, 16)


def test_involution_fixed_points_a2():
    from nk_triad.tables import cached_root_system

    rs = cached_root_system("a", 2)
    fixed = involution_fixed_points(rs, ((2, F(1, 2)),))
    assert fixed == [(1, 0)]            # dim = 2 cartan + 2 = 4
    with pytest.raises(NotInvolutive):
        involution_fixed_points(rs, ((2, F(1, 3)),))


def test_involution_fixed_points_bn():
    """tau fixes so(2i) + so(2(n-i)+1) on the odd orthogonal algebra."""
    from nk_triad.rootsys import subsystem_type
    from nk_triad.tables import cached_root_system

    rs = cached_root_system("b", 4)
    fixed = involution_fixed_points(rs, ((2, F(1)),))
    full = fixed + [tuple(-x for x in c) for c in fixed]
    st = subsystem_type(rs, full)
    assert st.components == (("a", 1), ("a", 1), ("b", 2))  # so(4) + so(5)
    assert st.torus_rank == 0


def test_involutions_match_gbar_everywhere():
    for args, label in [(("b", 4, "A3III", (2,)), "V"),
                        (("c", 4, "A3III", (3,)), "V"),
                        (("a", 4, "A3II", (2, 3)), "V2"),
                        (("e", 6, "A3III", (3,)), "V")]:
        rep = fibration_subalgebras(realize(*args), label)
        assert rep.gbar_v_dim + rep.base_dim == \
            {"b": 36, "c": 36, "a": 24, "e": 78}[args[0]]


def test_e8_sphere_fiber():
    rep = fibration_subalgebras(realize("e", 8, "A3III", (8,)), "V")
    assert rep.g_v_type.components == (("a", 1),)
    assert rep.gbar_v_type.components == (("a", 1), ("e", 7))
    assert (rep.fiber_dim, rep.base_dim) == (2, 112)
    assert not rep.base_hermitian


def test_type_iii_bases_hermitian_type_iv_not():
    iii = realize("a", 4, "A3II", (1, 2))
    assert all(r.base_hermitian for r in all_fibrations(iii))
    iv = realize("c", 3, "A3III", (2,))
    assert not any(r.base_hermitian for r in all_fibrations(iv))


def test_odd_projective_metric_note():
    rep = fibration_subalgebras(realize("c", 3, "A3III", (1,)), "V")
    assert "symplectic" in rep.note
