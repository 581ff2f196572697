"""Canonical almost-complex structure, intrinsic torsion and curvature tensors.

Conventions, over the reductive split g = k + m with metric <.,.> = -(1/2)B:

    J     = (2 sigma|m + id)/sqrt(3)
    xi_X Y = -(1/2)[X, Y]_m
    R^min_{X Y} = ad([X, Y]_k)|m
    R(X,Y,Z,T) = R^min(X,Y,Z,T) + 2<xi_X Y, xi_Z T>
                 - <xi_X Z, xi_Y T> + <xi_X T, xi_Y Z>

with the curvature sign convention R_{X Y} = nabla_[X,Y] - [nabla_X, nabla_Y]
(spheres have positive sectional curvature).  Ricci is the trace
Ric(X,Y) = R(X, e_i, Y, e_i), the star variant pairs through J, and

    r = Ric - Ric*,     C = Ric - 5 Ric* = 5r - 4 Ric.

Eigenvalues of r, Ric and C are exact rationals in units of kappa = |mu|^2;
on root layers they come from sums of exact squared structure constants, and
are cross-checked against the floating-point trace computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .automorph import OrderThreeSymmetricSpace
from .chevalley import _add, _neg, _sub
from .compactform import DUAL_COXETER

KAPPA = Fraction(2)

FULL_SWEEP_LIMIT = 64   # largest dim m given exhaustive curvature sweeps
SAMPLE_TUPLES = 200


class FixedVectorInM(ValueError):
    """sigma restricted to m has a fixed vector; the split k + m is wrong."""


class NonRationalEigenvalue(ArithmeticError):
    """A float eigenvalue failed to reconstruct as an exact rational."""


class RIdentityMismatch(AssertionError):
    """Ric - Ric* disagrees with the torsion tensor r."""


class IdentityViolation(AssertionError):
    """A curvature or torsion identity exceeded tolerance."""


# -- basic structure -----------------------------------------------------------


def canonical_J(space: OrderThreeSymmetricSpace, tol: float = 1e-9) -> np.ndarray:
    """J = (2 sigma|m + id)/sqrt(3); raises if sigma|m has a fixed vector."""
    sm = space.sigma_m
    dm = space.dim_m
    if dm and np.linalg.svd(sm - np.eye(dm), compute_uv=False).min() < tol:
        raise FixedVectorInM("sigma|m has eigenvalue 1")
    j = (2.0 * sm + np.eye(dm)) / np.sqrt(3.0)
    if np.abs(j @ j + np.eye(dm)).max() > 1e-12:
        raise FixedVectorInM("J^2 != -id; sigma|m is not fixed-point free of order 3")
    return j


def layer_epsilon(space: OrderThreeSymmetricSpace) -> dict[str, int]:
    """Sign eps with J U0 = eps U1 per layer: +1 on a(H) = 1/3, -1 on 2/3."""
    out = {}
    for label, roots in space.layer_roots.items():
        rep = roots[0]
        t = space.h_spec.alpha_value(space.algebra.rs, rep) % 1
        out[label] = 1 if t == Fraction(1, 3) else -1
    return out


def torsion(space: OrderThreeSymmetricSpace) -> np.ndarray:
    """xi as a 3-tensor: xi[i, j, :] = xi_{e_i} e_j in the m-basis."""
    return space.tensors()[0]


def min_connection_curvature(space: OrderThreeSymmetricSpace, a: int, b: int) -> np.ndarray:
    """Endomorphism R^min_{e_a e_b} = ad([e_a, e_b]_k)|m."""
    _, kc, ak = space.tensors()
    return np.einsum("s,spq->pq", kc[a, b], ak)


def min_connection_tensor(space: OrderThreeSymmetricSpace) -> np.ndarray:
    """R^min as a 4-tensor; only for moderate dim m."""
    _, kc, ak = space.tensors()
    return np.einsum("abs,sdc->abcd", kc, ak, optimize=True)


def riemann_tensor(space: OrderThreeSymmetricSpace) -> np.ndarray:
    """Full Riemannian curvature R[a,b,c,d] = R(e_a, e_b, e_c, e_d)."""
    xi = space.tensors()[0]
    g2 = np.einsum("abk,cdk->abcd", xi, xi, optimize=True)
    r4 = min_connection_tensor(space)
    r4 += 2.0 * g2
    r4 -= np.einsum("acbd->abcd", g2)
    r4 += np.einsum("adbc->abcd", g2)
    return r4


def riemann_value(space, x, y, z, t) -> float:
    """R on arbitrary m-vectors, without materializing the 4-tensor."""
    xi, kc, ak = space.tensors()
    kv = np.einsum("a,b,abs->s", x, y, kc)
    out = float(np.einsum("s,sdc,c,d->", kv, ak, z, t))
    xy = np.einsum("a,b,abk->k", x, y, xi)
    zt = np.einsum("a,b,abk->k", z, t, xi)
    xz = np.einsum("a,b,abk->k", x, z, xi)
    yt = np.einsum("a,b,abk->k", y, t, xi)
    xt = np.einsum("a,b,abk->k", x, t, xi)
    yz = np.einsum("a,b,abk->k", y, z, xi)
    return out + 2.0 * xy @ zt - xz @ yt + xt @ yz


def tensor_r(space: OrderThreeSymmetricSpace) -> np.ndarray:
    """r(X, Y) = -4 trace xi_X xi_Y as a symmetric matrix."""
    xi = space.tensors()[0]
    return -4.0 * np.einsum("aij,bji->ab", xi, xi, optimize=True)


def ricci_tensors(space: OrderThreeSymmetricSpace, j: np.ndarray | None = None):
    """(Ric, Ric*, C) by tracing the curvature; never builds the 4-tensor."""
    xi, kc, ak = space.tensors()
    if j is None:
        j = canonical_J(space)
    ric = np.einsum("ais,sib->ab", kc, ak, optimize=True)
    ric += 2.0 * np.einsum("aik,bik->ab", xi, xi, optimize=True)
    ric += np.einsum("aik,ibk->ab", xi, xi, optimize=True)

    akj = np.einsum("lp,spq,qm->slm", j.T, ak, j, optimize=True)
    ric_star = np.einsum("ais,sib->ab", kc, akj, optimize=True)
    w = np.einsum("cb,ji,cjk->bik", j, j, xi, optimize=True)
    ric_star += 2.0 * np.einsum("aik,bik->ab", xi, w, optimize=True)
    u = np.einsum("ijk,ji->k", xi, j)
    ric_star -= np.einsum("ack,cb,k->ab", xi, j, u)
    ric_star += np.einsum("ajk,ji,ick,cb->ab", xi, j, xi, j, optimize=True)
    return ric, ric_star, ric - 5.0 * ric_star


# -- exact layer eigenvalues -----------------------------------------------------


@dataclass(frozen=True)
class EigenData:
    layer: str
    value: Fraction          # eigenvalue in units of kappa
    dim: int


def _layer_fraction(space, root):
    return space.h_spec.alpha_value(space.algebra.rs, root) % 1


def exact_r_eigenvalues(space: OrderThreeSymmetricSpace) -> dict[str, Fraction]:
    """r-eigenvalue per root layer, in units of kappa, from exact N^2 sums.

    Every root of a layer must produce the same value; anything else means
    the layer fails to be an eigenbundle and is reported as an error.
    """
    rs = space.algebra.rs
    cd = space.algebra.cd
    m_roots = [r for roots in space.layer_roots.values() for r in roots]
    t_of = {r: _layer_fraction(space, r) for r in m_roots}
    out: dict[str, Fraction] = {}
    for label, roots in space.layer_roots.items():
        values = {_exact_r_on_root(cd, rs, r, t_of) for r in roots}
        if len(values) != 1:
            raise NonRationalEigenvalue(f"layer {label} is not an r-eigenbundle: {values}")
        out[label] = values.pop() / KAPPA
    return out


def _exact_r_on_root(cd, rs, alpha, t_of) -> Fraction:
    total = Fraction(0)
    ta = t_of[alpha]
    for beta, tb in t_of.items():
        if beta == alpha:
            continue
        s = _add(alpha, beta)
        if rs.is_root(s) and (ta + tb) % 1 != 0:
            total += cd.n_squared(alpha, beta)
        d = _sub(alpha, beta)
        if any(d) and rs.is_root(d) and ta != tb:
            total += cd.n_squared(_neg(alpha), beta)
    return 2 * total


def exact_r_cross_layer(space, cd=None) -> dict[tuple[str, str], Fraction]:
    """Torsion trace of one layer against another: r^s restricted, exact.

    Entry (L, S) is 4 sum_{v in S-frame} |xi_X v|^2 for X a unit vector of
    layer L, the per-layer summand of the Ricci trace formula.
    """
    rs = space.algebra.rs
    cd = cd or space.algebra.cd
    t_of = {r: _layer_fraction(space, r)
            for roots in space.layer_roots.values() for r in roots}
    out: dict[tuple[str, str], Fraction] = {}
    for label, roots in space.layer_roots.items():
        alpha = roots[0]
        ta = t_of[alpha]
        for other, oroots in space.layer_roots.items():
            total = Fraction(0)
            for beta in oroots:
                if beta == alpha:
                    continue
                if rs.is_root(_add(alpha, beta)) and (ta + t_of[beta]) % 1 != 0:
                    total += cd.n_squared(alpha, beta)
                d = _sub(alpha, beta)
                if any(d) and rs.is_root(d) and ta != t_of[beta]:
                    total += cd.n_squared(_neg(alpha), beta)
            out[(label, other)] = 2 * total
    return out


def exact_ricci_eigenvalues(space: OrderThreeSymmetricSpace) -> dict[str, Fraction]:
    """Ricci eigenvalue per layer (kappa units) via the layer-trace formula.

    Ric|L = lambda_L/4 + (1/lambda_L) sum_S lambda_S r^S|L over the parallel
    layer decomposition; an independent closed form for the curvature trace.
    """
    lam = exact_r_eigenvalues(space)           # kappa units
    cross = exact_r_cross_layer(space)         # absolute units
    out: dict[str, Fraction] = {}
    for label in space.layer_roots:
        lam_abs = lam[label] * KAPPA
        acc = lam_abs / 4
        for other in space.layer_roots:
            acc += (lam[other] * KAPPA) * cross[(label, other)] / lam_abs
        out[label] = acc / KAPPA
    return out


def verify_r_cross_consistency(space) -> None:
    """sum_S r^S|L must equal the full eigenvalue lambda_L, exactly."""
    lam = exact_r_eigenvalues(space)
    cross = exact_r_cross_layer(space)
    for label in space.layer_roots:
        total = sum(cross[(label, other)] for other in space.layer_roots)
        if total != lam[label] * KAPPA:
            raise NonRationalEigenvalue(f"layer traces of {label} do not sum to lambda")


# -- report ---------------------------------------------------------------------


@dataclass
class NKReport:
    name: str
    algebra: str
    automorphism: str
    nk_type: str
    dim_m: int
    splitting: dict[str, int]
    r_eigs: list[EigenData]
    ric_eigs: list[EigenData]
    c_eigs: list[EigenData]
    einstein: bool
    einstein_constant: Fraction | None
    mu2: Fraction | None
    lk_ratio: Fraction | None
    lk_label: str | None
    kahler: bool = False
    notes: list[str] = field(default_factory=list)

    def eig_by_layer(self, which: str) -> dict[str, Fraction]:
        data = {"r": self.r_eigs, "ric": self.ric_eigs, "c": self.c_eigs}[which]
        return {e.layer: e.value for e in data}


_LAYER_ORDER = {"V": 0, "H": 1, "V1": 0, "V2": 1, "V3": 2, "m": 0, "E": 0, "JE": 1}


def _sorted_layers(layers: dict[str, list[int]]) -> list[str]:
    return sorted(layers, key=lambda s: (_LAYER_ORDER.get(s, 9), s))


def build_report(space: OrderThreeSymmetricSpace, classify=None) -> NKReport:
    from .automorph import classify_type

    decision = classify if classify is not None else classify_type(space)
    auto = space.h_spec.describe() if space.h_spec else space.type_label
    alg = getattr(space.algebra, "rs", None)
    alg_label = alg.type_label if alg is not None else space.name
    if space.type_label == "C3":
        alg_label = f"({space.algebra.base.rs.type_label})^3"

    if space.type_label == "A3I":
        return NKReport(space.name, alg_label, auto, decision.label, space.dim_m,
                        {"m": space.dim_m}, [], [], [], True, None, None, None, None,
                        kahler=True)

    if space.layer_roots:
        lam = exact_r_eigenvalues(space)
        ric = exact_ricci_eigenvalues(space)
        splitting = {lbl: len(space.layers[lbl]) for lbl in _sorted_layers(space.layers)}
        labels = _sorted_layers(space.layer_roots)
    else:
        # outer / cyclic constructions: the single eigenvalue is 2h*/3 kappa
        base = space.algebra.base if space.type_label == "C3" else space.algebra
        hstar = DUAL_COXETER[base.rs.family](base.rs.rank)
        lam = {"m": Fraction(2 * hstar, 3)}
        ric = {"m": lam["m"] * Fraction(5, 4)}
        splitting = {lbl: len(space.layers[lbl]) for lbl in _sorted_layers(space.layers)} \
            or {"m": space.dim_m}
        labels = ["m"]
        _check_scalar_r(space, lam["m"])

    r_eigs = [EigenData(lbl, lam[lbl], _layer_dim(space, lbl)) for lbl in labels]
    ric_eigs = [EigenData(lbl, ric[lbl], _layer_dim(space, lbl)) for lbl in labels]
    c_eigs = [EigenData(lbl, 5 * lam[lbl] - 4 * ric[lbl], _layer_dim(space, lbl))
              for lbl in labels]

    einstein = len({e.value for e in r_eigs}) == 1
    constant = ric_eigs[0].value if einstein else None

    mu2 = None
    if decision.label == "III":
        mu2 = sum(lam[lbl] for lbl in ("V1", "V2", "V3"))
    elif decision.label == "IV":
        mu2 = lam["V"] + 2 * lam["H"]

    ratio, lk_label = lk_ratio(space, lam)
    return NKReport(space.name, alg_label, auto, decision.label, space.dim_m,
                    splitting, r_eigs, ric_eigs, c_eigs, einstein, constant,
                    mu2, ratio, lk_label)


def _layer_dim(space, label):
    if label == "m" and "m" not in space.layers:
        return space.dim_m
    return len(space.layers[label])


def _check_scalar_r(space, expect_kappa: Fraction, tol: float = 1e-9) -> None:
    r = tensor_r(space)
    target = float(expect_kappa * KAPPA)
    if np.abs(r - target * np.eye(space.dim_m)).max() > tol * max(1.0, target):
        raise NonRationalEigenvalue(
            f"r is not the expected scalar {expect_kappa}*kappa on {space.name}")


# -- Einstein / twistor ratio ----------------------------------------------------


def einstein_check(report: NKReport) -> tuple[bool, str]:
    """Einstein flag with the dimension-balance certificate behind it."""
    if report.kahler:
        return True, "Kahler symmetric layer; r = 0"
    lam = report.eig_by_layer("r")
    dims = report.splitting
    if report.nk_type == "III":
        cert = (f"dim V1 = {dims['V1']}, dim V2 = {dims['V2']}, dim V3 = {dims['V3']}"
                f" -> Einstein iff all equal")
        flag = dims["V1"] == dims["V2"] == dims["V3"]
    elif report.nk_type == "IV":
        cert = f"2 dim V = {2 * dims['V']}, dim H = {dims['H']} -> Einstein iff equal"
        flag = 2 * dims["V"] == dims["H"]
    else:
        cert = "single r-eigenvalue"
        flag = True
    if flag != (len(set(lam.values())) == 1):
        raise RIdentityMismatch("dimension balance contradicts the eigenvalue test")
    return flag, cert


def lk_ratio(space, lam: dict[str, Fraction]):
    """Vertical/horizontal eigenvalue ratio l/k for twistor-type splittings.

    Defined for the two-eigenvalue situation: every A3III space, and A3II
    spaces whose two horizontal layers share one eigenvalue.
    """
    if space.type_label == "A3III":
        ratio = lam["V"] / lam["H"]
        dim_v = len(space.layers["V"])
    elif space.type_label == "A3II" and len({lam["V1"], lam["V2"], lam["V3"]}) <= 2:
        pairs = ["V1", "V2", "V3"]
        vals = [lam[p] for p in pairs]
        odd = [p for p in pairs if vals.count(lam[p]) == 1]
        if not odd:
            ratio = Fraction(1)
            dim_v = len(space.layers["V1"])
        else:
            rest = next(p for p in pairs if p != odd[0])
            ratio = lam[odd[0]] / lam[rest]
            dim_v = len(space.layers[odd[0]])
    else:
        return None, None
    return ratio, _lk_label(space, ratio, dim_v)


def _lk_label(space, ratio: Fraction, dim_v: int) -> str:
    """Name per the two-dimensional-fiber classification; generic otherwise."""
    rs = getattr(space.algebra, "rs", None)
    fam = rs.family if rs else "?"
    if dim_v != 2:
        return f"l/k = {ratio}"
    if ratio == 1:
        return "Einstein twistor space"
    if fam == "c" and space.h_spec and space.h_spec.nodes == (1,):
        return f"odd projective space with the symplectic metric, l/k = {ratio}"
    if fam in ("b", "d") and space.h_spec and space.h_spec.nodes[0] == 2:
        return f"real-Grassmannian twistor space, l/k = {ratio}"
    if fam == "g":
        return f"g2 twistor space, l/k = {ratio}"
    if fam in ("f", "e"):
        return f"exceptional twistor space, l/k = {ratio}"
    if fam == "a":
        return f"flag twistor space over a complex Grassmannian, l/k = {ratio}"
    return f"l/k = {ratio}"


def lk_classification(report: NKReport) -> tuple[Fraction, str] | None:
    if report.lk_ratio is None:
        return None
    return report.lk_ratio, report.lk_label


# -- identity suites ---------------------------------------------------------------


def _sample_indices(rng, dm, count, width):
    return rng.integers(0, dm, size=(count, width))


def verify_structure_identities(space, j=None, tol=1e-9) -> dict[str, float]:
    """Torsion/J identities that need no curvature tensors."""
    xi, kc, _ = space.tensors()
    if j is None:
        j = canonical_J(space)
    dm = space.dim_m
    res: dict[str, float] = {}
    res["J_squared"] = float(np.abs(j @ j + np.eye(dm)).max())
    res["J_isometry"] = float(np.abs(j.T @ j - np.eye(dm)).max())
    res["xi_XX"] = max(float(np.abs(xi[i, i]).max()) for i in range(dm))
    res["xi_J_anticommute"] = max(
        float(np.abs(xi[i] @ j + j @ xi[i]).max()) for i in range(dm))
    res["xi_totally_skew"] = max(
        float(np.abs(xi + np.einsum("abk->bak", xi)).max()),
        float(np.abs(xi + np.einsum("abk->akb", xi)).max()),
    )
    mm = -2.0 * xi  # m-part of the bracket
    res["bracket_JJ_k"] = float(np.abs(
        np.einsum("ca,db,cds->abs", j, j, kc, optimize=True) - kc).max())
    res["bracket_J_m"] = float(np.abs(
        np.einsum("ca,cbk->abk", j, mm, optimize=True) + np.einsum("lk,abk->abl", j, mm, optimize=True)).max())
    return res


def verify_curvature_identities(space, j=None, tol=1e-9, seed=0,
                                full: bool | None = None) -> dict[str, float]:
    """First Bianchi, pair symmetry, the J-curvature defect, and Ricci facts."""
    xi, _, _ = space.tensors()
    if j is None:
        j = canonical_J(space)
    dm = space.dim_m
    if full is None:
        full = dm <= FULL_SWEEP_LIMIT
    res: dict[str, float] = {}

    if full:
        r4 = riemann_tensor(space)
        res["bianchi"] = float(np.abs(
            r4 + np.einsum("bcad->abcd", r4) + np.einsum("cabd->abcd", r4)).max())
        res["pair_symmetry"] = float(np.abs(r4 - np.einsum("cdab->abcd", r4)).max())
        res["antisymmetry"] = float(np.abs(r4 + np.einsum("bacd->abcd", r4)).max())
        g2 = np.einsum("abk,cdk->abcd", xi, xi, optimize=True)
        jj = np.einsum("abcd,ce,df->abef", r4, j, j, optimize=True)
        res["curvature_J_defect"] = float(np.abs(r4 - jj - 4.0 * g2).max())
    else:
        _, kc, ak = space.tensors()

        def entry(a, b, c, d):
            return float(kc[a, b] @ ak[:, d, c]) + 2.0 * xi[a, b] @ xi[c, d] \
                - xi[a, c] @ xi[b, d] + xi[a, d] @ xi[b, c]

        akj = np.einsum("lp,spq,qm->slm", j.T, ak, j, optimize=True)
        rng = np.random.default_rng(seed)
        worst_b = worst_p = worst_j = 0.0
        for a, b, c, d in _sample_indices(rng, dm, SAMPLE_TUPLES, 4):
            rabcd = entry(a, b, c, d)
            worst_b = max(worst_b, abs(rabcd + entry(b, c, a, d) + entry(c, a, b, d)))
            worst_p = max(worst_p, abs(rabcd - entry(c, d, a, b)))
            jz, jt = j[:, c], j[:, d]
            xi_jzjt = np.einsum("i,ijk,j->k", jz, xi, jt)
            rot = float(kc[a, b] @ akj[:, d, c]) + 2.0 * xi[a, b] @ xi_jzjt \
                - (jz @ xi[a]) @ (jt @ xi[b]) + (jt @ xi[a]) @ (jz @ xi[b])
            worst_j = max(worst_j, abs(rabcd - rot - 4.0 * xi[a, b] @ xi[c, d]))
        res["bianchi"] = worst_b
        res["pair_symmetry"] = worst_p
        res["curvature_J_defect"] = worst_j

    ric, ric_star, c = ricci_tensors(space, j)
    r = tensor_r(space)
    res["ric_symmetric"] = float(np.abs(ric - ric.T).max())
    res["ric_star_symmetric"] = float(np.abs(ric_star - ric_star.T).max())
    res["ric_J_commute"] = float(np.abs(ric @ j - j @ ric).max())
    res["r_identity"] = float(np.abs((ric - ric_star) - r).max())
    if res["r_identity"] > tol * max(1.0, float(np.abs(r).max())):
        raise RIdentityMismatch(f"|Ric - Ric* - r| = {res['r_identity']:.2e}")
    return res


def verify_min_connection_identity(space, tol=1e-9, seed=0) -> float:
    """Contracted curvature identity of the minimal connection.

    For X horizontal, U arbitrary and V1, V2 vertical:
    R^min(X,U,V1,V2) = 4(<[xi_V1, xi_V2]X, U> - <xi_X U, xi_V1 V2>).
    Only defined on special-algebraic-torsion splittings.
    """
    if space.type_label == "A3III":
        vert = space.layers["V"]
        horiz = space.layers["H"]
    elif space.type_label == "A3II":
        vert = space.layers["V1"]
        horiz = space.layers["V2"] + space.layers["V3"]
    else:
        raise IdentityViolation("minimal-connection identity needs a vertical split")
    xi, kc, ak = space.tensors()
    dm = space.dim_m
    worst = 0.0
    tuples = []
    total = len(horiz) * dm * len(vert) ** 2
    if total <= 200_000:
        tuples = [(x, u, v1, v2) for x in horiz for u in range(dm)
                  for v1 in vert for v2 in vert]
    else:
        rng = np.random.default_rng(seed)
        for _ in range(SAMPLE_TUPLES):
            tuples.append((int(rng.choice(horiz)), int(rng.integers(dm)),
                           int(rng.choice(vert)), int(rng.choice(vert))))
    for x, u, v1, v2 in tuples:
        lhs = float(np.einsum("s,s->", kc[x, u], ak[:, v2, v1]))
        comm = xi[v1] @ xi[v2] - xi[v2] @ xi[v1]
        rhs = 4.0 * (comm[u, x] - xi[x, u] @ xi[v1, v2])
        worst = max(worst, abs(lhs - rhs))
    if worst > tol:
        raise IdentityViolation(f"minimal-connection identity residual {worst:.2e}")
    return worst


def verify_sat_identities(space, tol=1e-9, seed=0) -> dict[str, float]:
    """Layer facts of special algebraic torsion plus the trace identities."""
    xi, _, _ = space.tensors()
    lam = exact_r_eigenvalues(space)
    res: dict[str, float] = {}

    def block_max(rows, cols, out):
        worst = 0.0
        for i in rows:
            sub = xi[i][np.ix_(cols, out)]
            worst = max(worst, float(np.abs(sub).max()) if sub.size else 0.0)
        return worst

    dm = space.dim_m
    if space.type_label == "A3III":
        v, h = space.layers["V"], space.layers["H"]
        res["xi_VV"] = block_max(v, v, range(dm))
        res["xi_HH_in_V"] = block_max(h, h, h)
        res["xi_VH_in_H"] = block_max(v, h, v)
        splits = [("V", v, "H", h)]
        lam_v, lam_h = lam["V"], lam["H"]
        if 2 * lam_v * len(v) != lam_h * len(h):
            raise IdentityViolation("vertical/horizontal trace balance fails")
        res["balance"] = 0.0
    elif space.type_label == "A3II":
        v1, v2, v3 = space.layers["V1"], space.layers["V2"], space.layers["V3"]
        res["xi_VkVk"] = max(block_max(a, a, range(dm)) for a in (v1, v2, v3))
        res["xi_V1V2_in_V3"] = block_max(v1, v2, v1 + v2)
        splits = [("V1", v1, "H1", v2 + v3)]
        if not (lam["V1"] * len(v1) == lam["V2"] * len(v2) == lam["V3"] * len(v3)):
            raise IdentityViolation("three-layer trace balance fails")
        res["balance"] = 0.0
    else:
        raise IdentityViolation("special algebraic torsion needs type III/IV")

    # double-torsion containments and the frame-trace identity on horizontals
    rng = np.random.default_rng(seed)
    for name, vert, hname, horiz in splits:
        pv = np.zeros(dm)
        pv[vert] = 1.0
        worst_xx = worst_vv = 0.0
        for _ in range(40):
            x1, x2 = rng.choice(horiz, size=2)
            u1, u2 = rng.choice(vert, size=2)
            worst_vv = max(worst_vv, float(np.abs(xi[int(u1)] @ xi[int(x1), int(x2)]).max()))
            worst_xx = max(worst_xx, float(np.abs(xi[int(x1)] @ xi[int(u1), int(u2)]).max()))
        res["xi_V_xi_HH"] = worst_vv
        res["xi_H_xi_VV"] = worst_xx

        r = tensor_r(space)
        frame_v = 8.0 * np.einsum("iak,ibk->ab", xi[vert][:, horiz][:, :, :],
                                  xi[vert][:, horiz][:, :, :])
        sub = r[np.ix_(horiz, horiz)]
        res["trace_identity_vertical_frame"] = float(np.abs(frame_v - sub).max())
        frame_h = 8.0 * np.einsum("iak,ibk->ab", xi[horiz][:, horiz][:, :, :],
                                  xi[horiz][:, horiz][:, :, :])
        res["trace_identity_horizontal_frame"] = float(np.abs(frame_h - sub).max())

    bad = {k: v for k, v in res.items() if v > tol}
    if bad:
        raise IdentityViolation(f"special-torsion identities failed: {bad}")
    return res


def verify_ricci_oracle(space, tol=1e-9) -> float:
    """Trace-of-curvature Ricci against the exact layer closed form."""
    ric, _, _ = ricci_tensors(space)
    if space.layer_roots:
        exact = exact_ricci_eigenvalues(space)
        expect = np.zeros(space.dim_m)
        for label, positions in space.layers.items():
            expect[positions] = float(exact[label] * KAPPA)
    else:
        base = space.algebra.base if space.type_label == "C3" else space.algebra
        hstar = DUAL_COXETER[base.rs.family](base.rs.rank)
        # scalar case: r = (2h*/3) kappa, Ric = (5/4) r
        expect = np.full(space.dim_m, float(Fraction(5, 4) * Fraction(2 * hstar, 3) * KAPPA))
    worst = float(np.abs(ric - np.diag(expect)).max())
    if worst > tol * max(1.0, float(np.abs(expect).max())):
        raise RIdentityMismatch(f"Ricci oracle residual {worst:.3e} on {space.name}")
    return worst


def verify_prop_table_relations(report: NKReport) -> None:
    """Exact eigenvalue relations between r, Ric and C per splitting shape."""
    lam = report.eig_by_layer("r")
    ric = report.eig_by_layer("ric")
    cc = report.eig_by_layer("c")
    if report.nk_type == "IV":
        l, k = lam["V"], lam["H"]
        checks = [
            (ric["V"], (l + 4 * k) / 4), (ric["H"], (2 * l + 3 * k) / 4),
            (cc["V"], 4 * (l - k)), (cc["H"], 2 * (k - l)),
        ]
    elif report.nk_type == "III":
        l, k, m = lam["V1"], lam["V2"], lam["V3"]
        checks = [
            (ric["V1"], (l + 2 * k + 2 * m) / 4),
            (ric["V2"], (2 * l + k + 2 * m) / 4),
            (ric["V3"], (2 * l + 2 * k + m) / 4),
            (cc["V1"], 2 * (2 * l - k - m)),
            (cc["V2"], 2 * (-l + 2 * k - m)),
            (cc["V3"], 2 * (-l - k + 2 * m)),
        ]
    elif report.nk_type in ("I", "II"):
        k = lam["m"]
        checks = [(ric["m"], Fraction(5, 4) * k), (cc["m"], Fraction(0))]
    else:
        return
    for got, want in checks:
        if got != want:
            raise RIdentityMismatch(f"table relation failed: {got} != {want}")
    if report.einstein:
        for e in report.c_eigs:
            if e.value != 0:
                raise RIdentityMismatch("Einstein space with nonzero C")


def sectional_curvature_samples(space, count=30, seed=3) -> list[float]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        x = rng.standard_normal(space.dim_m)
        y = rng.standard_normal(space.dim_m)
        x /= np.linalg.norm(x)
        y -= (x @ y) * x
        y /= np.linalg.norm(y)
        out.append(riemann_value(space, x, y, x, y))
    return out
