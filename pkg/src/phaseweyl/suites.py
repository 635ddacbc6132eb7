"""Verification suites: every proved identity of the index/symbol calculus
reproduced over randomized instance batteries, with per-identity residual
aggregation.

Each suite function returns a list of IdentityResult records; `run_suite`
wraps one into a VerificationReport. Exact integer identities report the
largest absolute defect as their residual (0.0 when clean); analytic grid
identities report the largest relative residual seen.
"""

from __future__ import annotations

import numpy as np

from .config import Config, DEFAULT, GridConfig
from . import czindex as cz
from . import lagmaslov as lm
from . import metaplectic as mp
from . import phasespace as ps
from .corpus import (
    near_degenerate_symplectic,
    random_lag_lift,
    random_lagrangian_frame,
    stratified_lagrangian_pair,
)
from .errors import PhaseweylError
from .grids import (
    GridFunctionZ,
    WindowState,
    gaussian_ground_state,
    hermite_state,
    random_state_battery,
    standard_axes,
)
from .numkit import unitary_log_trace
from .report import IdentityResult, VerificationReport, make_report, timed
from .sympcore import (
    GeneratingFunction,
    SymplecticPath,
    alpha_loop,
    blocks,
    cayley_transform,
    hessian_ws,
    random_symplectic,
    rotation_path,
    standard_j,
    symplectic_form,
)

SUITE_NAMES = (
    "kashiwara",
    "alm",
    "maslov",
    "cayley",
    "nu",
    "metaplectic",
    "phase-space",
)


class Collector:
    """Per-identity residual/failure accumulator."""

    def __init__(self):
        self.data: dict[str, list] = {}

    def record(self, name: str, ok: bool, residual: float = 0.0):
        row = self.data.setdefault(name, [0, 0, 0.0])
        row[0] += 1
        row[1] += 0 if ok else 1
        row[2] = max(row[2], abs(float(residual)))

    def check(self, name: str, lhs, rhs, tol: float = 0):
        resid = abs(float(lhs) - float(rhs))
        self.record(name, resid <= tol, resid)

    def extend(self, rows):
        for name, ok, resid in rows:
            self.record(name, ok, resid)

    def results(self) -> list[IdentityResult]:
        return [
            IdentityResult(name=k, instances=v[0], failures=v[1], max_residual=v[2])
            for k, v in sorted(self.data.items())
        ]


def map_instances(fn, count: int, cfg: Config, salt: int = 0):
    """Run fn(index, rng) over `count` independent instances, each with its
    own spawned generator, optionally across cfg.workers threads.

    Results are flattened in index order, so the aggregate is identical for
    every worker count (residuals combine by max, counts by sum, both
    order-independent anyway); fn must return a list of
    (identity, ok, residual) rows and must not share mutable state.
    """
    seeds = np.random.SeedSequence([cfg.seed, salt]).spawn(count)
    args = [(i, np.random.default_rng(seeds[i])) for i in range(count)]
    if cfg.workers <= 1:
        batches = [fn(i, rng) for i, rng in args]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            batches = list(pool.map(lambda a: fn(*a), args))
    return [row for batch in batches for row in batch]


def _rel(a, b) -> float:
    num = np.sqrt(np.sum(np.abs(a.values - b.values) ** 2))
    den = np.sqrt(np.sum(np.abs(b.values) ** 2))
    return float(num / max(den, 1e-300))


# ---------------------------------------------------------------------------
# kashiwara


_PERMS = [
    ((0, 1, 2), +1),
    ((1, 2, 0), +1),
    ((2, 0, 1), +1),
    ((0, 2, 1), -1),
    ((2, 1, 0), -1),
    ((1, 0, 2), -1),
]


def suite_kashiwara(cfg: Config, triples: int = 510) -> list[IdentityResult]:
    col = Collector()

    def one(i, rng):
        rows = []
        n = int(rng.integers(1, 5))
        frames = [random_lagrangian_frame(n, rng) for _ in range(4)]
        taus = {}
        for idx in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
            taus[idx] = lm.kashiwara_signature(*(frames[i] for i in idx), cfg.tol)
        base = taus[(0, 1, 2)]
        # K.1 antisymmetry over all six permutations
        worst = 0
        for perm, sign in _PERMS:
            t = lm.kashiwara_signature(*(frames[i] for i in perm), cfg.tol)
            worst = max(worst, abs(t - sign * base))
        rows.append(("K1-antisymmetry", worst == 0, worst))
        # K.1 degenerate: repeated arguments vanish
        rep = lm.kashiwara_signature(frames[0], frames[0], frames[1], cfg.tol)
        rows.append(("K1-repeated", rep == 0, rep))
        # K.2 Sp invariance
        S = random_symplectic(n, rng)
        moved = [f.transformed(S) for f in frames[:3]]
        inv = lm.kashiwara_signature(*moved, cfg.tol) - base
        rows.append(("K2-invariance", inv == 0, inv))
        # K.4 cocycle (coboundary of the quadruple)
        co = taus[(1, 2, 3)] - taus[(0, 2, 3)] + taus[(0, 1, 3)] - taus[(0, 1, 2)]
        rows.append(("K4-cocycle", co == 0, co))
        # K.5 additivity of two independent n=1 triples
        a = [random_lagrangian_frame(1, rng) for _ in range(3)]
        b = [random_lagrangian_frame(1, rng) for _ in range(3)]
        tsum = lm.kashiwara_signature(
            *(lm.direct_sum_frame(x, y) for x, y in zip(a, b)), cfg.tol
        )
        diff = tsum - lm.kashiwara_signature(*a, cfg.tol) - lm.kashiwara_signature(*b, cfg.tol)
        rows.append(("K5-additivity", diff == 0, diff))
        # K.6 transversal projection route agrees when defined
        f1, f2, f3 = frames[:3]
        if lm.intersection_dim(f1, f3, cfg.tol) == 0:
            d6 = lm.kashiwara_transversal(f1, f2, f3, cfg.tol) - base
            rows.append(("K6-projection-route", d6 == 0, d6))
        return rows

    col.extend(map_instances(one, triples, cfg, salt=1))
    # K.7 decomposition triples vanish (n = 2 construction, moved randomly)
    rng7 = np.random.default_rng(cfg.seed + 1)
    for _ in range(50):
        n = 2
        l_full = lm.x_star_frame(n)
        f2 = np.zeros((2 * n, n))
        f2[n, 0] = 1.0  # p1 axis
        ang = rng7.uniform(0.3, 1.2)
        f2[1, 1], f2[n + 1, 1] = np.sin(ang), np.cos(ang)
        f3 = np.zeros((2 * n, n))
        f3[n + 1, 0] = 1.0  # p2 axis
        ang = rng7.uniform(0.3, 1.2)
        f3[0, 1], f3[n, 1] = np.sin(ang), np.cos(ang)
        S = random_symplectic(n, rng7, 0.5)
        tau = lm.kashiwara_signature(
            l_full.transformed(S),
            lm.LagrangianFrame(S @ f2),
            lm.LagrangianFrame(S @ f3),
            cfg.tol,
        )
        col.check("K7-decomposition", tau, 0)
    # K.8 normalization: tau(X*, l_A, X) = sign(A)
    rng8 = np.random.default_rng(cfg.seed + 2)
    for _ in range(50):
        n = int(rng8.integers(1, 5))
        A = rng8.standard_normal((n, n))
        A = 0.5 * (A + A.T) + 0.3 * np.eye(n) * rng8.standard_normal()
        w = np.linalg.eigvalsh(A)
        if np.min(np.abs(w)) < 1e-3:
            continue
        sgn = int(np.sum(w > 0) - np.sum(w < 0))
        tau = lm.kashiwara_signature(
            lm.x_star_frame(n), lm.graph_frame(A), lm.x_axis_frame(n), cfg.tol
        )
        col.check("K8-normalization", tau, sgn)
    return col.results()


# ---------------------------------------------------------------------------
# alm


def suite_alm(cfg: Config, instances: int = 210) -> list[IdentityResult]:
    col = Collector()

    def one(i, rng):
        rows = []
        n = int(rng.integers(1, 4))
        l1, l2, l3 = (random_lag_lift(n, rng) for _ in range(3))
        mu12 = lm.alm_index(l1, l2, rng, cfg.tol)
        mu13 = lm.alm_index(l1, l3, rng, cfg.tol)
        mu23 = lm.alm_index(l2, l3, rng, cfg.tol)
        tau = lm.kashiwara_signature(l1.frame(), l2.frame(), l3.frame(), cfg.tol)
        rows.append(("ALM1-cocycle", mu12 - mu13 + mu23 == tau, mu12 - mu13 + mu23 - tau))
        anti = mu12 + lm.alm_index(l2, l1, rng, cfg.tol)
        rows.append(("ALM2-antisymmetry", anti == 0, anti))
        diag = lm.alm_index(l1, l1, rng, cfg.tol)
        rows.append(("ALM2-diagonal", diag == 0, diag))
        d = lm.intersection_dim(l1.frame(), l2.frame(), cfg.tol)
        rows.append(("ALM3-mod2", (mu12 - n - d) % 2 == 0, (mu12 - n - d) % 2))
        r, rp = int(rng.integers(-2, 3)), int(rng.integers(-2, 3))
        beta = lm.alm_index(l1.beta(r), l2.beta(rp), rng, cfg.tol) - mu12 - 2 * (r - rp)
        rows.append(("ALM4-beta-action", beta == 0, beta))
        # ALM.5 additivity on n=1 pieces
        a1, a2 = (random_lag_lift(1, rng) for _ in range(2))
        b1, b2 = (random_lag_lift(1, rng) for _ in range(2))
        add = lm.alm_index(
            lm.direct_sum_lift(a1, b1), lm.direct_sum_lift(a2, b2), rng, cfg.tol
        ) - lm.alm_index(a1, a2, rng, cfg.tol) - lm.alm_index(b1, b2, rng, cfg.tol)
        rows.append(("ALM5-additivity", add == 0, add))
        # ALM.6 symplectic invariance under a common path transport
        path = lm.SymplecticPathLift(SymplecticPath.random(n, rng, 0.7))
        m1 = lm.act_on_lift(path, l1, cfg.tol)
        m2 = lm.act_on_lift(path, l2, cfg.tol)
        inv = lm.alm_index(m1, m2, rng, cfg.tol) - mu12
        rows.append(("ALM6-invariance", inv == 0, inv))
        # transversal-formula integrality drift
        margin = np.abs(np.linalg.eigvals(-l1.w @ np.linalg.inv(l2.w)) + 1.0).min()
        if margin > cfg.tol.branch_cut:
            raw = (
                l1.theta
                - l2.theta
                + (1j * unitary_log_trace(-l1.w @ np.linalg.inv(l2.w), tol=cfg.tol)).real
            ) / np.pi
            rows.append(("souriau-integrality", abs(raw - round(raw)) < 1e-6, abs(raw - round(raw))))
        return rows

    col.extend(map_instances(one, instances, cfg, salt=2))
    # auxiliary independence on every intersection stratum
    rng2 = np.random.default_rng(cfg.seed + 3)
    for n in (1, 2, 3):
        for k in range(1, n + 1):
            for _ in range(6):
                f1, f2 = stratified_lagrangian_pair(n, k, rng2)
                l1 = lm.lift_of_frame(f1)
                l2 = lm.lift_of_frame(f2)
                col.check(
                    "stratum-dimension",
                    lm.intersection_dim(f1, f2, cfg.tol),
                    k,
                )
                v1 = lm.alm_index(l1, l2, np.random.default_rng(101), cfg.tol)
                v2 = lm.alm_index(l1, l2, np.random.default_rng(202), cfg.tol)
                col.check("aux-plane-independence", v1, v2)
    return col.results()


# ---------------------------------------------------------------------------
# maslov


def suite_maslov(cfg: Config, instances: int = 40) -> list[IdentityResult]:
    rng = np.random.default_rng(cfg.seed)
    col = Collector()
    for _ in range(instances):
        n = int(rng.integers(1, 3))
        p1 = SymplecticPath.random(n, rng, 0.8)
        p2 = SymplecticPath.random(n, rng, 0.8)
        frame = random_lagrangian_frame(n, rng)
        L1 = lm.SymplecticPathLift(p1)
        L2 = lm.SymplecticPathLift(p2)
        mu1 = lm.maslov_mu_ell(L1, frame, rng, cfg.tol)
        mu2 = lm.maslov_mu_ell(L2, frame, rng, cfg.tol)
        S1 = L1.endpoint()
        S12 = S1 @ L2.endpoint()
        # M.1 product law
        tau = lm.kashiwara_signature(
            frame, frame.transformed(S1), frame.transformed(S12), cfg.tol
        )
        mu12 = lm.maslov_mu_ell(L1.then(L2), frame, rng, cfg.tol)
        col.check("M1-product", mu12, mu1 + mu2 + tau)
        # M.3 alpha action
        r = int(rng.integers(1, 3))
        mu_r = lm.maslov_mu_ell(
            lm.SymplecticPathLift(alpha_loop(n, r).then(p1)), frame, rng, cfg.tol
        )
        col.check("M3-alpha-action", mu_r, mu1 + 4 * r)
        # parity
        d = lm.intersection_dim(frame.transformed(S1), frame, cfg.tol)
        col.check("mumod2-parity", (mu1 - n - d) % 2, 0)
        # change of plane (mule), both displayed forms
        frame2 = random_lagrangian_frame(n, rng)
        mu1p = lm.maslov_mu_ell(L1, frame2, rng, cfg.tol)
        Sl = frame.transformed(S1)
        Slp = frame2.transformed(S1)
        rhs1 = lm.kashiwara_signature(Sl, frame, frame2, cfg.tol) - lm.kashiwara_signature(
            Sl, Slp, frame2, cfg.tol
        )
        rhs2 = lm.kashiwara_signature(Sl, frame, Slp, cfg.tol) - lm.kashiwara_signature(
            frame, Slp, frame2, cfg.tol
        )
        col.check("mule-change-of-plane", mu1 - mu1p, rhs1)
        col.check("mule-second-form", mu1 - mu1p, rhs2)
        # reduced index laws
        m1 = lm.reduced_m_ell(L1, frame, rng, cfg.tol)
        col.check(
            "maf-alpha-action",
            lm.reduced_m_ell(
                lm.SymplecticPathLift(alpha_loop(n, r).then(p1)), frame, rng, cfg.tol
            ),
            m1 + 2 * r,
        )
        try:
            inert = lm.leray_inertia(
                frame, frame.transformed(S1), frame.transformed(S12), cfg.tol
            )
        except PhaseweylError:
            inert = None
        d2 = lm.intersection_dim(frame.transformed(L2.endpoint()), frame, cfg.tol)
        if inert is not None and d2 == 0:
            # reduced product law carries Inert - n:
            # m12 - m1 - m2 = (tau - n)/2 when all the intersection
            # dimensions vanish, which the transversality guards ensure
            m12 = lm.reduced_m_ell(L1.then(L2), frame, rng, cfg.tol)
            m2 = lm.reduced_m_ell(L2, frame, rng, cfg.tol)
            col.check("mredux-product", m12, m1 + m2 + inert - n)
        # local constancy under a small in-stratum extension
        eps = 5e-3
        H = rng.uniform(-1.0, 1.0, size=(2 * n, 2 * n))
        H = 0.5 * (H + H.T)
        from scipy.linalg import expm

        def ext(t, S1=S1, H=H, eps=eps):
            return S1 @ expm(t * eps * (standard_j(n) @ H))

        ext_path = lm.SymplecticPathLift(p1.extended_to(ext))
        dim_after = lm.intersection_dim(
            frame.transformed(ext_path.endpoint()), frame, cfg.tol
        )
        if dim_after == d:
            col.check(
                "spnk-local-constancy",
                lm.maslov_mu_ell(ext_path, frame, rng, cfg.tol),
                mu1,
            )
    # M.2 and zero path
    n = 1
    col.check(
        "M2-identity-path",
        lm.maslov_mu_ell(lm.SymplecticPathLift.constant(1), lm.x_star_frame(1), rng, cfg.tol),
        0,
    )
    quarter = lm.SymplecticPathLift(rotation_path(1, np.pi / 2))
    col.check("quarter-rotation-mu", lm.maslov_mu_ell(quarter, lm.x_star_frame(1), rng, cfg.tol), -1)
    col.check("quarter-rotation-m", lm.reduced_m_ell(quarter, lm.x_star_frame(1), rng, cfg.tol), 0)
    # loop index of the alpha loop
    for r in (1, 2, 3):
        col.check(
            "alpha-loop-index",
            lm.loop_maslov_index(lm.SymplecticPathLift(alpha_loop(2, r)), cfg.tol),
            r,
        )
    col.check(
        "constant-loop-index",
        lm.loop_maslov_index(lm.SymplecticPathLift.constant(2), cfg.tol),
        0,
    )
    # Robbin-Salamon and intersection indices
    rng_rs = np.random.default_rng(cfg.seed + 4)
    xs = lm.x_star_frame(1)
    const_lag = lm.LagrangianPathLift(
        lambda t: xs, 1, lm.lift_of_frame(xs)
    )
    col.check("rs-constant", lm.robbin_salamon(const_lag, lm.x_axis_frame(1), rng_rs, cfg.tol), 0)
    qpath = rotation_path(1, np.pi / 2)
    fwd = lm.LagrangianPathLift.from_symplectic_action(qpath, xs)
    ref_lift = lm.lift_of_frame(lm.x_axis_frame(1))
    mu_b = lm.alm_index(fwd.endpoint_lift(cfg.tol), ref_lift, rng_rs, cfg.tol)
    mu_a = lm.alm_index(fwd.start, ref_lift, rng_rs, cfg.tol)
    col.check(
        "rs-quarter-doubled-endpoint",
        lm.robbin_salamon(fwd, lm.x_axis_frame(1), rng_rs, cfg.tol),
        0.5 * (mu_b - mu_a),
    )
    # reverse path cancels
    rev = lm.LagrangianPathLift(
        lambda t: xs.transformed(qpath.legs[0](1.0 - t)),
        1,
        fwd.endpoint_lift(cfg.tol),
    )
    col.check(
        "rs-reversal",
        lm.robbin_salamon(fwd, lm.x_axis_frame(1), rng_rs, cfg.tol)
        + lm.robbin_salamon(rev, lm.x_axis_frame(1), rng_rs, cfg.tol),
        0,
    )
    # symplectic path intersection index
    pre = lm.SymplecticPathLift(SymplecticPath.random(1, rng_rs, 0.5))
    seg1 = lm.SymplecticPathLift(SymplecticPath.random(1, rng_rs, 0.5))
    seg2 = lm.SymplecticPathLift(SymplecticPath.random(1, rng_rs, 0.5))
    ell = random_lagrangian_frame(1, rng_rs)
    whole = lm.symplectic_intersection_index(pre, seg1.then(seg2), ell, rng_rs, cfg.tol)
    first = lm.symplectic_intersection_index(pre, seg1, ell, rng_rs, cfg.tol)
    second = lm.symplectic_intersection_index(pre.then(seg1), seg2, ell, rng_rs, cfg.tol)
    col.check("intersection-additivity", whole, first + second)
    col.check(
        "intersection-alpha-loop",
        lm.symplectic_intersection_index(
            lm.SymplecticPathLift.constant(1),
            lm.SymplecticPathLift(alpha_loop(1)),
            lm.x_star_frame(1),
            rng_rs,
            cfg.tol,
        ),
        2,
    )
    return col.results()


# ---------------------------------------------------------------------------
# cayley


def suite_cayley(cfg: Config, instances: int = 520) -> list[IdentityResult]:
    col = Collector()
    from .sympcore import cayley_inverse, cayley_of_product

    def one(i, rng):
        rows = []
        while True:
            n = int(rng.integers(1, 5))
            S = random_symplectic(n, rng)
            I = np.eye(2 * n)
            if abs(np.linalg.det(S - I)) >= 1e-4:
                break
        M = cayley_transform(S, cfg.tol)
        back = cayley_inverse(M, cfg.tol)
        rows.append(("cayley-roundtrip", True, np.abs(back - S).max()))
        rows.append(
            (
                "rathobvious-inverse",
                True,
                np.abs(cayley_transform(np.linalg.inv(S), cfg.tol) + M).max(),
            )
        )
        # composition identities on an admissible partner
        Sp = random_symplectic(n, rng)
        dets = [np.linalg.det(T - I) for T in (Sp, S @ Sp)]
        if min(abs(d) for d in dets) > 1e-3 and abs(
            np.linalg.det(M + cayley_transform(Sp, cfg.tol))
        ) > 1e-6:
            Mprod = cayley_of_product(S, Sp, cfg.tol)  # asserts mss + mess
            scale = max(1.0, np.abs(Mprod).max())
            rows.append(
                (
                    "mss-composition",
                    True,
                    np.abs(Mprod - cayley_transform(S @ Sp, cfg.tol)).max() / scale,
                )
            )
            Msum = M + cayley_transform(Sp, cfg.tol)
            rhs = -(Sp - I) @ np.linalg.solve(S @ Sp - I, (S - I) @ standard_j(n))
            rows.append(
                (
                    "mess-resolvent",
                    True,
                    np.abs(np.linalg.inv(Msum) - rhs).max() / max(1.0, np.abs(rhs).max()),
                )
            )
        # lemma1 determinant factorization on free S
        if abs(np.linalg.det(blocks(S)[1])) > 1e-3:
            lhs = np.linalg.det(S - I)
            rhs = (
                (-1.0) ** n
                * np.linalg.det(blocks(S)[1])
                * np.linalg.det(hessian_ws(S, cfg.tol))
            )
            rows.append(
                (
                    "lemma1-factorization",
                    abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs)),
                    abs(lhs - rhs) / max(1.0, abs(lhs)),
                )
            )
        return rows

    col.extend(map_instances(one, instances, cfg, salt=3))
    # near-degenerate strata: roundtrip survives small det(S - I)
    rng2 = np.random.default_rng(cfg.seed + 5)
    for _ in range(40):
        n = int(rng2.integers(1, 3))
        target = 10.0 ** rng2.uniform(-6, -2)
        S = near_degenerate_symplectic(n, rng2, target)
        if abs(np.linalg.det(S - np.eye(2 * n))) <= cfg.tol.det_si:
            continue
        M = cayley_transform(S, cfg.tol)
        back = cayley_inverse(M, cfg.tol)
        col.record(
            "near-degenerate-roundtrip",
            np.abs(back - S).max() < 1e-6,
            np.abs(back - S).max(),
        )
    return col.results()


# ---------------------------------------------------------------------------
# nu


def suite_nu(cfg: Config, instances: int = 110) -> list[IdentityResult]:
    col = Collector()

    def one(i, rng):
        rows = []
        while True:
            n = int(rng.integers(1, 4))
            path = SymplecticPath.random(n, rng, 0.8)
            lift = lm.SymplecticPathLift(path)
            S = lift.endpoint()
            I = np.eye(2 * n)
            if (
                abs(np.linalg.det(S - I)) >= 1e-3
                and abs(np.linalg.det(blocks(S)[1])) >= 1e-2
            ):
                break
        ref = cz.nu_via_doubled(lift, rng, cfg.tol).value
        free = cz.nu_via_free(lift, rng, cfg.tol).value
        rows.append(("route-agreement", free == ref, free - ref))
        inv = cz.nu_via_doubled(lift.inverse(), rng, cfg.tol).value
        rows.append(("nu1-antisymmetry", inv == -ref, inv + ref))
        r = int(rng.integers(1, 3))
        shifted = cz.nu_via_doubled(
            lm.SymplecticPathLift(alpha_loop(n, r).then(path)), rng, cfg.tol
        ).value
        rows.append(("nu2-alpha-action", shifted == ref + 2 * r, shifted - ref - 2 * r))
        # Maslov2 parity: det(S-I) > 0 iff nu = n mod 2
        d = np.linalg.det(S - I)
        par = (ref - n) % 2 - (0 if d > 0 else 1)
        rows.append(("maslov2-parity", par == 0, par))
        if i % 3 == 0:
            # nu.3 product law against the concatenated path
            path2 = SymplecticPath.random(n, rng, 0.8)
            lift2 = lm.SymplecticPathLift(path2)
            S2 = lift2.endpoint()
            if (
                abs(np.linalg.det(S2 - I)) > 1e-3
                and abs(np.linalg.det(S @ S2 - I)) > 1e-3
            ):
                nu2 = cz.nu_via_doubled(lift2, rng, cfg.tol).value
                pred = cz.nu_of_product(ref, nu2, S, S2, cfg.tol)
                got = cz.nu_via_doubled(lift.then(lift2), rng, cfg.tol).value
                rows.append(("nu3-product", got == pred, got - pred))
        if i % 5 == 0:
            # nu.4 local constancy along an in-component convex continuation
            from scipy.linalg import expm

            H = rng.uniform(-0.2, 0.2, size=(2 * n, 2 * n))
            H = 0.5 * (H + H.T)
            target = S @ expm(standard_j(n) @ H)
            if np.linalg.det(target - I) * np.linalg.det(S - I) > 0:
                try:
                    rows.append(
                        (
                            "nu4-local-constancy",
                            cz.nu_locally_constant_check(lift, target, rng, cfg.tol),
                            0.0,
                        )
                    )
                except PhaseweylError:
                    pass
        return rows

    col.extend(map_instances(one, instances, cfg, salt=4))
    # frozen reference values
    rng = np.random.default_rng(cfg.seed)
    quarter = lm.SymplecticPathLift(rotation_path(1, np.pi / 2))
    col.check("quarter-rotation-nu", cz.nu(quarter, "both", rng, cfg.tol).value, -1)
    half = lm.SymplecticPathLift(rotation_path(1, np.pi / 2).then(rotation_path(1, np.pi / 2)))
    col.check("half-rotation-nu", cz.nu_via_doubled(half, rng, cfg.tol).value, -1)
    col.check(
        "constant-path-nu", cz.nu_via_doubled(lm.SymplecticPathLift.constant(2), rng, cfg.tol).value, 0
    )
    # even-multiplicity parity: endpoint with Ker(S - I) != 0 still integral
    blockpath = SymplecticPath.random(1, np.random.default_rng(cfg.seed + 6), 0.8)

    def embed(t, blockpath=blockpath):
        out = np.eye(4)
        Sb = blockpath.legs[0](t)
        out[1, 1] = Sb[0, 0]
        out[1, 3] = Sb[0, 1]
        out[3, 1] = Sb[1, 0]
        out[3, 3] = Sb[1, 1]
        return out

    kerpath = lm.SymplecticPathLift(SymplecticPath([embed], 2))
    col.record("kernel-parity-integer", isinstance(cz.nu_via_doubled(kerpath, rng, cfg.tol).value, int), 0.0)
    return col.results()


# ---------------------------------------------------------------------------
# metaplectic


def _admissible_qft_pair(rng, tol, axis, chirp=0.5, lr=(0.85, 1.2), max_tries=200):
    """Generator pair with all three fixed-point determinants regular and
    every involved R_nu kernel resolvable on the working grid."""
    I = np.eye(2)
    for _ in range(max_tries):
        q1 = mp.random_qft(1, rng, chirp_scale=chirp, l_range=lr)
        q2 = mp.random_qft(1, rng, chirp_scale=chirp, l_range=lr)
        S1, S2 = q1.matrix(), q2.matrix()
        if min(
            abs(np.linalg.det(S1 - I)),
            abs(np.linalg.det(S2 - I)),
            abs(np.linalg.det(S1 @ S2 - I)),
        ) < 0.05:
            continue
        try:
            sym1 = mp.twisted_symbol(S1, mp.nu_of_qft(q1, tol), tol)
            sym2 = mp.twisted_symbol(S2, mp.nu_of_qft(q2, tol), tol)
            comp = mp.compose_twisted(sym1, sym2, tol)
            for sym in (sym1, sym2, comp):
                mp.r_nu_kernel(sym, axis, tol)
        except PhaseweylError:
            continue
        return q1, q2, sym1, sym2, comp
    raise PhaseweylError("no admissible generator pair found")


def suite_metaplectic(cfg: Config, pairs: int = 12) -> list[IdentityResult]:
    rng = np.random.default_rng(cfg.seed)
    col = Collector()
    axes_x, _ = standard_axes(cfg.grid)
    battery = random_state_battery(axes_x, rng, count=6, max_center=2.0)

    # unitarity of generator actions and of R_nu
    for k in range(8):
        q = mp.random_qft(1, rng)
        f = battery[k % len(battery)]
        g = mp.apply_swm(q, f)
        col.record("generator-unitarity", abs(g.norm() - 1.0) < 1e-6, abs(g.norm() - 1.0))
        w = mp.factor_swm(q)
        col.record("factorization-action", _rel(w.apply(f), g) < 1e-8, _rel(w.apply(f), g))
        col.record(
            "factorization-projection",
            np.abs(w.matrix() - q.matrix()).max() < 1e-9,
            np.abs(w.matrix() - q.matrix()).max(),
        )
        if f.n == 1:
            dense = mp.apply_swm_dense(q, f)
            col.record("dense-oracle-match", _rel(g, dense) < 1e-8, _rel(g, dense))

    for k in range(pairs):
        try:
            q1, q2, sym1, sym2, comp = _admissible_qft_pair(rng, cfg.tol, axes_x[0])
        except PhaseweylError:
            continue
        f = battery[k % len(battery)]
        # proplett: R_{nu(S-hat)}(S_W) equals the generator on grids
        r1 = mp.r_nu_apply(sym1, f, cfg.tol)
        col.record("proplett-identification", _rel(r1, mp.apply_swm(q1, f)) < 1e-6, _rel(r1, mp.apply_swm(q1, f)))
        col.record("r-unitarity", abs(r1.norm() - 1.0) < 1e-6, abs(r1.norm() - 1.0))
        # erinv: R_{-nu}(S^{-1}) inverts
        back = mp.r_nu_apply(
            mp.twisted_symbol(np.linalg.inv(sym1.matrix()), -sym1.nu, cfg.tol), r1, cfg.tol
        )
        col.record("erinv-inversion", _rel(back, f) < 1e-6, _rel(back, f))
        # adjoint = inverse on grids (conjugated symbol)
        adj = mp.r_nu_apply(sym1.conjugated(), r1, cfg.tol)
        col.record("adjoint-is-inverse", _rel(adj, f) < 1e-6, _rel(adj, f))
        # ernunu: composed symbol acts like the composition
        lhs = mp.r_nu_apply(comp, f, cfg.tol)
        rhs = mp.r_nu_apply(sym1, mp.r_nu_apply(sym2, f, cfg.tol), cfg.tol)
        col.record("ernunu-composition", _rel(lhs, rhs) < 1e-6, _rel(lhs, rhs))
        # composed Cayley matrix and nu class
        col.record(
            "composition-cayley",
            np.abs(comp.M - cayley_transform(sym1.matrix() @ sym2.matrix(), cfg.tol)).max() < 1e-9,
            np.abs(comp.M - cayley_transform(sym1.matrix() @ sym2.matrix(), cfg.tol)).max(),
        )
        col.check("composition-nu-class", comp.nu % 4, mp.nu_of_word(mp.QFTWord([q1, q2]), cfg.tol))
        # twisted/plain symbol Fourier consistency at sample points
        try:
            plain = mp.plain_weyl_symbol(sym1.matrix(), sym1.nu, cfg.tol)
        except PhaseweylError:
            plain = None
        if plain is not None:
            from .numkit import fresnel_gaussian_ft

            z = rng.uniform(-1.5, 1.5, size=2)
            J = standard_j(1)
            direct = plain.coeff * np.exp(0.5j * z @ plain.G @ z)
            via_fres = (
                (1j ** sym1.nu)
                * sym1.amplitude
                * (2 * np.pi) ** -1
                * (2 * np.pi)
                * fresnel_gaussian_ft(sym1.M, J @ z, cfg.tol)
            )
            col.record(
                "plain-symbol-fresnel",
                abs(direct - via_fres) < 1e-9 * max(1.0, abs(direct)),
                abs(direct - via_fres),
            )

    # associativity of compose_twisted on admissible triples
    made = 0
    rng_assoc = np.random.default_rng(cfg.seed + 7)
    while made < 6:
        try:
            q1, q2, s1, s2, c12 = _admissible_qft_pair(rng_assoc, cfg.tol, axes_x[0])
            q3 = mp.random_qft(1, rng_assoc, chirp_scale=0.4, l_range=(0.9, 1.15))
            S3 = q3.matrix()
            s3 = mp.twisted_symbol(S3, mp.nu_of_qft(q3, cfg.tol), cfg.tol)
            left = mp.compose_twisted(c12, s3, cfg.tol)
            right = mp.compose_twisted(s1, mp.compose_twisted(s2, s3, cfg.tol), cfg.tol)
        except PhaseweylError:
            continue
        made += 1
        col.record(
            "composition-associativity-M",
            np.abs(left.M - right.M).max() < 1e-9 * max(1.0, np.abs(right.M).max()),
            np.abs(left.M - right.M).max(),
        )
        col.check("composition-associativity-nu", left.nu % 4, right.nu % 4)

    # lambda-shift factorization
    rng_lam = np.random.default_rng(cfg.seed + 8)
    made = 0
    while made < 8:
        q1 = mp.random_qft(1, rng_lam, chirp_scale=0.5)
        q2 = mp.random_qft(1, rng_lam, chirp_scale=0.5)
        try:
            s1, s2, lam = mp.free_pair_factorization(q1, q2, tol=cfg.tol)
        except PhaseweylError:
            continue
        made += 1
        I2 = np.eye(1)
        d1 = abs(np.linalg.det(s1.W.hessian_diag()))
        d2 = abs(np.linalg.det(s2.W.hessian_diag()))
        col.record("lambda-dets-regular", min(d1, d2) >= 1e-6, min(d1, d2))
        f = battery[made % len(battery)]
        before = mp.apply_swm(q1, mp.apply_swm(q2, f))
        # shifted chirps cancel exactly between the factors; the per-factor
        # Nyquist guard does not apply to the pair comparison
        after = mp.apply_swm(s1, mp.apply_swm(s2, f, check=False), check=False)
        col.record("lambda-action-preserved", _rel(after, before) < 1e-7, _rel(after, before))
        col.record(
            "lambda-projection-preserved",
            np.abs(s1.matrix() @ s2.matrix() - q1.matrix() @ q2.matrix()).max() < 1e-9,
            np.abs(s1.matrix() @ s2.matrix() - q1.matrix() @ q2.matrix()).max(),
        )

    # m-hat laws: product rule and double-factorization congruences
    rng_m = np.random.default_rng(cfg.seed + 9)
    made = 0
    while made < 10:
        qa, qb, qc, qd = (mp.random_qft(1, rng_m) for _ in range(4))
        try:
            w1, w2 = mp.QFTWord([qa, qb]), mp.QFTWord([qc, qd])
            m1, m2 = w1.m_hat(cfg.tol), w2.m_hat(cfg.tol)
            m12 = mp.QFTWord([qa, qb, qc, qd]).m_hat(cfg.tol)
            xs = lm.x_star_frame(1)
            S1m = w1.matrix()
            inert = lm.leray_inertia(
                xs, xs.transformed(S1m), xs.transformed(S1m @ w2.matrix()), cfg.tol
            )
        except PhaseweylError:
            continue
        made += 1
        col.check("mhat-product-law", (m12 - m1 - m2 - (inert - 1)) % 4, 0)
        # two factorizations of one element: reduce (qa qb qc) two ways
        try:
            left = mp.compose_qft(mp.compose_qft(qa, qb, cfg.tol), qc, cfg.tol)
            right = mp.compose_qft(qa, mp.compose_qft(qb, qc, cfg.tol), cfg.tol)
        except PhaseweylError:
            continue
        col.check("mhat-refactorization", left.m % 4, right.m % 4)
        col.record(
            "refactorization-matrix",
            np.abs(left.matrix() - right.matrix()).max() < 1e-8,
            np.abs(left.matrix() - right.matrix()).max(),
        )

    # m-hat against the reduced Maslov index of path lifts, and nu-hat against
    # the path-level class
    rng_link = np.random.default_rng(cfg.seed + 10)
    made = 0
    while made < 4:
        q1 = mp.random_qft(1, rng_link, chirp_scale=0.4, l_range=(0.9, 1.15))
        q2 = mp.random_qft(1, rng_link, chirp_scale=0.4, l_range=(0.9, 1.15))
        word = mp.QFTWord([q1, q2])
        S = word.matrix()
        if abs(np.linalg.det(S - np.eye(2))) < 0.05:
            continue
        try:
            nu_word = mp.nu_of_word(word, cfg.tol)
            nu_path = cz.nu_mod4(word, rng_link, cfg.tol)
        except PhaseweylError:
            continue
        made += 1
        col.check("defczmp-word-vs-path", nu_word, nu_path)
    return col.results()


# ---------------------------------------------------------------------------
# phase-space


def suite_phase_space(cfg: Config) -> list[IdentityResult]:
    col = Collector()
    rng = np.random.default_rng(cfg.seed)
    axes_x, axes_z = standard_axes(cfg.grid)
    phi0 = gaussian_ground_state(axes_x)
    win = WindowState(phi0)
    step = axes_z[0].step

    battery = random_state_battery(axes_x, rng, count=16, max_center=2.5)
    # Parseval over 50 random pairs
    images = [ps.u_phi(f, win, axes_z) for f in battery]
    for _ in range(50):
        i, j = rng.integers(0, len(battery), size=2)
        lhs = images[i].inner(images[j])
        rhs = battery[int(i)].inner(battery[int(j)])
        col.record("parseval", abs(lhs - rhs) < 1e-6, abs(lhs - rhs))
    # u_phi versus the rescaled Wigner--Moyal definition
    f0 = battery[0]
    W = ps.wigner_moyal(f0, phi0.with_values(np.conj(phi0.values)), axes_z, half_arguments=True)
    col.record(
        "uphi-wigner-consistency",
        _rel(W.with_values((np.pi / 2) ** 0.5 * W.values), images[0]) < 1e-8,
        _rel(W.with_values((np.pi / 2) ** 0.5 * W.values), images[0]),
    )
    # adjoint: defect, reconstruction, projector idempotency
    Fz = images[1]
    fstar = ps.u_phi_adjoint(Fz, win, axes_x)
    col.record("ustar-u-identity", _rel(fstar, battery[1]) < 1e-6, _rel(fstar, battery[1]))
    mesh = np.meshgrid(axes_z[0].grid(), axes_z[1].grid(), indexing="ij")
    # smooth non-member probe (band-limited, decaying): a chirped Gaussian
    # plus one range member
    probe = GridFunctionZ(
        axes_z,
        np.exp(-0.12 * ((mesh[0] - 1.0) ** 2 + (mesh[1] + 0.5) ** 2))
        * np.exp(0.4j * mesh[0] - 0.3j * mesh[1])
        + 0.5 * images[2].values,
    )
    defect = abs(
        images[2].inner(probe) - battery[2].inner(ps.u_phi_adjoint(probe, win, axes_x))
    )
    col.record("adjoint-defect", defect < 1e-8, defect)
    P1 = ps.u_phi(ps.u_phi_adjoint(probe, win, axes_x), win, axes_z)
    P2 = ps.u_phi(ps.u_phi_adjoint(P1, win, axes_x), win, axes_z)
    col.record("projector-idempotent", _rel(P2, P1) < 1e-6, _rel(P2, P1))
    # Moyal identity
    lhsW = ps.wigner_moyal(battery[0], battery[1], axes_z)
    rhsW = ps.wigner_moyal(battery[2], battery[3], axes_z)
    moyal = abs(
        lhsW.inner(rhsW)
        - (2 * np.pi) ** -1 * battery[0].inner(battery[2]) * np.conj(battery[1].inner(battery[3]))
    )
    col.record("moyal-identity", moyal < 1e-6, moyal)

    # Heisenberg laws: exact phases, commensurate shifts. The pointwise
    # comparisons need the shifted states to stay numerically inside the
    # box, so the X-side checks run on the centered ground state.
    from .grids import coherent_state

    F = images[0]
    tight = coherent_state(axes_x, np.zeros(1), np.zeros(1))
    for _ in range(12):
        z0 = step * rng.integers(-16, 17, size=2).astype(float)
        z1 = step * rng.integers(-16, 17, size=2).astype(float)
        t0, t1 = rng.uniform(-2, 2, size=2)
        sig = symplectic_form(z0, z1)
        lhs = ps.t_ph_heisenberg(z0, t0, ps.t_ph_heisenberg(z1, t1, F))
        rhs = ps.t_ph_heisenberg(z0 + z1, t0 + t1 + 0.5 * sig, F)
        col.record("formuco1-group-law", np.abs(lhs.values - rhs.values).max() < 1e-10,
                   np.abs(lhs.values - rhs.values).max())
        a = ps.t_ph(z1, ps.t_ph(z0, F))
        b = ps.t_ph(z0, ps.t_ph(z1, F))
        col.record(
            "noco1-commutation",
            np.abs(a.values - np.exp(-1j * sig) * b.values).max() < 1e-10,
            np.abs(a.values - np.exp(-1j * sig) * b.values).max(),
        )
        c = ps.t_ph(z0 + z1, F)
        col.record(
            "formuco3-product",
            np.abs(b.values - np.exp(0.5j * sig) * c.values).max() < 1e-10,
            np.abs(b.values - np.exp(0.5j * sig) * c.values).max(),
        )
        # Stone--von Neumann intertwining
        lhs2 = ps.t_ph_heisenberg(z0, t0, ps.u_phi(tight, win, axes_z))
        rhs2 = ps.u_phi(ps.heisenberg_weyl(z0, t0, tight), win, axes_z)
        col.record("unit-intertwining", np.abs(lhs2.values - rhs2.values).max() < 1e-8,
                   np.abs(lhs2.values - rhs2.values).max())
        # H_n law on the X side
        aa = ps.heisenberg_weyl(z0, t0, ps.heisenberg_weyl(z1, t1, tight))
        bb = ps.heisenberg_weyl(z0 + z1, t0 + t1 + 0.5 * sig, tight)
        col.record("hn-law-x-side", np.abs(aa.values - bb.values).max() < 1e-10,
                   np.abs(aa.values - bb.values).max())

    # ladder relations and the commutator
    f = battery[5]
    Ff = images[5]
    xf = f.with_values(f.meshes()[0] * f.values)
    lhs = ps.u_phi(xf, win, axes_z)
    rhs = ps.zhat_ph_apply("x", 0, Ff)
    col.record("uffe-position", _rel(lhs, rhs) < 1e-5, _rel(lhs, rhs))
    from .phasespace import _spectral_derivative

    pf = f.with_values(-1j * _spectral_derivative(f.values, f.axes[0], 0))
    lhs = ps.u_phi(pf, win, axes_z)
    rhs = ps.zhat_ph_apply("p", 0, Ff)
    col.record("uffe-momentum", _rel(lhs, rhs) < 1e-5, _rel(lhs, rhs))
    comm = (
        ps.zhat_ph_apply("x", 0, ps.zhat_ph_apply("p", 0, Ff)).values
        - ps.zhat_ph_apply("p", 0, ps.zhat_ph_apply("x", 0, Ff)).values
    )
    resid = np.abs(comm - 1j * Ff.values).max() / np.abs(Ff.values).max()
    col.record("canonical-commutator", resid < 1e-6, resid)

    # harmonic oscillator
    U0 = ps.u_phi(phi0, win, axes_z)
    H0 = ps.harmonic_oscillator_ph(U0)
    r0 = _rel(H0, U0.with_values(0.5 * U0.values))
    col.record("ho-ground-eigen", r0 < 1e-5, r0)
    h1 = hermite_state(axes_x, 1)
    U1 = ps.u_phi(h1, win, axes_z)
    r1 = _rel(ps.harmonic_oscillator_ph(U1), U1.with_values(1.5 * U1.values))
    col.record("ho-excited-eigen", r1 < 1e-5, r1)
    r2 = _rel(ps.harmonic_oscillator_via_zhat(images[6]), ps.harmonic_oscillator_ph(images[6]))
    col.record("ho-two-routes", r2 < 1e-6, r2)
    rint = _rel(ps.harmonic_oscillator_ph(images[7]), ps.u_phi(ps.harmonic_oscillator_x(battery[7]), win, axes_z))
    col.record("inter-ho-symbol", rint < 1e-5, rint)

    # intertwining for multiplication symbols
    avals = np.exp(-0.3 * axes_x[0].grid() ** 2) * (1.0 + 0.4 * axes_x[0].grid())
    mf = battery[8].with_values(avals * battery[8].values)
    lhs = ps.a_ph_mult_x(_embed_x_axis(avals, axes_x, axes_z), ps.u_phi(battery[8], win, axes_z))
    rhs = ps.u_phi(mf, win, axes_z)
    col.record("inter-mult-symbol", _rel(lhs, rhs) < 1e-5, _rel(lhs, rhs))

    # CR condition separation
    members = [ps.cr_condition_residual(images[k]) for k in range(4)]
    generic = []
    for k in range(4):
        a_coef, b_coef = rng.uniform(0.2, 0.6, size=2)
        raw = np.exp(-0.1 * (mesh[0] ** 2 + mesh[1] ** 2)) * (
            1.0 + a_coef * np.cos(mesh[0] + k) + b_coef * 1j * np.sin(mesh[1] - k)
        )
        generic.append(ps.cr_condition_residual(GridFunctionZ(axes_z, raw)))
    ratio = min(generic) / max(max(members), 1e-300)
    col.record("cr-separation", ratio >= 1e3, ratio)
    col.record("cr-members-small", max(members) <= 1e-4, max(members))

    return col.results() + _phase_space_operator_checks(cfg) + _phase_space_nd_smoke(cfg)


def _embed_x_axis(avals, axes_x, axes_z):
    """Multiplication-symbol samples live on the Z x-axis; embed by exact
    index placement (shared step)."""
    ax, az = axes_x[0], axes_z[0]
    out = np.zeros(az.points, dtype=complex)
    offset = az.index_of(ax.grid()[0])
    out[offset : offset + ax.points] = avals
    return out


def _phase_space_operator_checks(cfg: Config) -> list[IdentityResult]:
    """A_ph machinery and metaplectic covariance on a coarser grid (the
    twisted-convolution battery is the expensive part of the suite)."""
    col = Collector()
    coarse = GridConfig(points_x=128, halfwidth_x=8.0, points_z=256)
    axes_x, axes_z = standard_axes(coarse)
    rng = np.random.default_rng(cfg.seed + 11)
    phi0 = gaussian_ground_state(axes_x)
    win = WindowState(phi0)
    states_x = random_state_battery(axes_x, rng, count=3, max_center=1.5)
    states_z = [ps.u_phi(f, win, axes_z) for f in states_x]
    mesh = np.meshgrid(axes_z[0].grid(), axes_z[1].grid(), indexing="ij")

    # symplectic Fourier: involution and the delta pairing
    a = GridFunctionZ(axes_z, np.exp(-0.5 * (mesh[0] ** 2 + mesh[1] ** 2) + 0.2j * mesh[0]))
    Fa = ps.symplectic_fourier(a)
    r = _rel(ps.symplectic_fourier(Fa), a)
    col.record("fsigma-involution", r < 1e-8, r)
    one = GridFunctionZ(axes_z, np.ones_like(mesh[0]))
    spike = ps.symplectic_fourier(one)
    test = GridFunctionZ(axes_z, np.exp(-0.5 * (mesh[0] ** 2 + mesh[1] ** 2)))
    pairing = complex(np.sum(spike.values * test.values) * spike.cell())
    col.record(
        "fsigma-delta-pairing",
        abs(pairing - (2 * np.pi) * test.values[128, 128]) < 1e-6 * 2 * np.pi,
        abs(pairing - 2 * np.pi * test.values[128, 128]),
    )
    # identity symbol
    dvals = np.zeros_like(mesh[0], dtype=complex)
    dvals[128, 128] = 2 * np.pi / (axes_z[0].step * axes_z[1].step)
    ident = ps.a_ph_apply(GridFunctionZ(axes_z, dvals), states_z[0])
    col.record("aph-identity-symbol", _rel(ident, states_z[0]) < 1e-10, _rel(ident, states_z[0]))
    # composition coherence for decaying Gaussian symbols
    a1 = GridFunctionZ(axes_z, np.exp(-(mesh[0] ** 2 + mesh[1] ** 2) / 3.4 + 0.3j * mesh[0]))
    a2 = GridFunctionZ(axes_z, np.exp(-(mesh[0] ** 2 + mesh[1] ** 2) / 1.6 - 0.2j * mesh[1]))
    c12 = ps.twisted_convolution_grid(a1, a2)
    lhs = ps.a_ph_apply(c12, states_z[1])
    rhs = ps.a_ph_apply(a1, ps.a_ph_apply(a2, states_z[1]))
    col.record("aph-composition", _rel(lhs, rhs) < 1e-5, _rel(lhs, rhs))
    # intertwining for a decaying symbol: A_ph U_phi = U_phi A with the Weyl
    # operator on X applied through its own twisted route (mult-x symbols)
    avals = np.exp(-0.25 * axes_x[0].grid() ** 2) * (1.0 - 0.3 * axes_x[0].grid() ** 2)
    lhs = ps.a_ph_mult_x(_embed_x_axis(avals, axes_x, axes_z), states_z[2])
    rhs = ps.u_phi(states_x[2].with_values(avals * states_x[2].values), win, axes_z)
    col.record("inter-mult-coarse", _rel(lhs, rhs) < 1e-5, _rel(lhs, rhs))

    # metaplectic covariance battery
    q_j = mp.QuadraticFourierTransform(
        GeneratingFunction(P=np.zeros((1, 1)), L=np.eye(1), Q=np.zeros((1, 1))), 0
    )
    words = [mp.QFTWord([q_j])]
    rngw = np.random.default_rng(cfg.seed + 12)
    for _ in range(2):
        words.append(
            mp.QFTWord([mp.random_qft(1, rngw, chirp_scale=0.3, l_range=(0.9, 1.15))])
        )
    A = np.array([[0.55, 0.1], [0.1, 0.8]])

    def transported(S):
        zs = np.stack([mesh[0], mesh[1]], axis=-1) @ S.T
        q = np.einsum("...i,ij,...j->...", zs, A, zs)
        return GridFunctionZ(axes_z, np.exp(-0.5 * q))

    for w in words:
        res = ps.metaplectic_covariance_residual(
            w, transported(np.eye(2)), states_z[:2], win, axes_x, transported
        )
        col.record("metaco-covariance", res < 1e-5, res)
        # intertwining for the metaplectic operators themselves:
        # S_ph U_phi f = U_phi S-hat f
        direct = ps.u_phi(w.apply(states_x[0]), win, axes_z)
        viaph = ps.s_ph_apply(w, ps.u_phi(states_x[0], win, axes_z), win, axes_x)
        col.record("inter-metaplectic", _rel(viaph, direct) < 1e-5, _rel(viaph, direct))
    # a word projecting to S = I (J^4): global phases cancel under the
    # conjugation, so the residual sits at grid accuracy
    res0 = ps.metaplectic_covariance_residual(
        mp.QFTWord([q_j, q_j, q_j, q_j]),
        transported(np.eye(2)),
        states_z[:1],
        win,
        axes_x,
        transported,
    )
    col.record("metaco-identity-word", res0 < 1e-7, res0)
    # T_ph conjugation form with commensurate images
    step = axes_z[0].step
    z0 = np.array([6 * step, -4 * step])
    Jw = words[0]
    Sz0 = Jw.matrix() @ z0
    lhs = ps.s_ph_apply(
        Jw, ps.t_ph(z0, ps.s_ph_apply(Jw, states_z[0], win, axes_x, inverse=True)), win, axes_x
    )
    rhs = ps.t_ph(Sz0, states_z[0])
    col.record("tph-conjugation", _rel(lhs, rhs) < 1e-6, _rel(lhs, rhs))
    # rotation-invariant symbol is fixed by the J word
    iso = GridFunctionZ(axes_z, np.exp(-0.4 * (mesh[0] ** 2 + mesh[1] ** 2)))
    lhs = ps.a_ph_apply(iso, states_z[0])
    rhs = ps.s_ph_apply(
        Jw, ps.a_ph_apply(iso, ps.s_ph_apply(Jw, states_z[0], win, axes_x)), win, axes_x, inverse=True
    )
    col.record("metaco-rotation-invariant", _rel(lhs, rhs) < 1e-5, _rel(lhs, rhs))

    # window transform rule
    pts = np.stack(
        np.meshgrid(np.linspace(-4, 4, 9), np.linspace(-4, 4, 9)), axis=-1
    ).reshape(-1, 2)
    for w in words:
        r = ps.window_transform_rule_residual(w, states_x[0], win, pts)
        col.record("mcwpt-window-rule", r < 1e-5, r)
    # both sides of mcwpt are isometric images (norm consistency)
    Sf = words[1].apply(states_x[0])
    col.record(
        "mcwpt-isometry", abs(Sf.norm() - states_x[0].norm()) < 1e-6, abs(Sf.norm() - 1.0)
    )
    # Wigner covariance metac1
    sub = np.stack(
        np.meshgrid(np.linspace(-4, 4, 7), np.linspace(-4, 4, 7)), axis=-1
    ).reshape(-1, 2)
    for w in words[:2]:
        Sf = w.apply(states_x[0])
        Sg = w.apply(states_x[1])
        lhs_pts = ps.wigner_pointwise(Sf, Sg, sub)
        rhs_pts = ps.wigner_pointwise(
            states_x[0], states_x[1], (np.linalg.inv(w.matrix()) @ sub.T).T
        )
        r = np.abs(lhs_pts - rhs_pts).max() / np.abs(rhs_pts).max()
        col.record("metac1-wigner-covariance", r < 1e-5, r)
    return col.results()


def _phase_space_nd_smoke(cfg: Config) -> list[IdentityResult]:
    """n = 2 smoke tests for the dimension-generic operators.

    Two 32-point grids: the symplectic Fourier transform needs halfwidth
    below sqrt(pi N / 2) for self-reciprocity, while the oscillator ground
    image exp(-|z|^2/4) is wide and needs the larger box.
    """
    col = Collector()
    from .grids import Axis

    rng = np.random.default_rng(cfg.seed + 13)
    # tight grid: F_sigma, commutator, group law
    ax = Axis(0.0, 6.0, 32)
    axes_z = (ax, ax, ax, ax)
    mesh = np.meshgrid(*[a.grid() for a in axes_z], indexing="ij")
    r2 = sum(m**2 for m in mesh)
    F = GridFunctionZ(axes_z, np.exp(-0.5 * r2) * (1.0 + 0.3 * mesh[0] + 0.2j * mesh[3]))
    # group-law state: very tight, so the rolled tails stay at 1e-10 level
    G0 = GridFunctionZ(axes_z, np.exp(-1.5 * r2))
    z0 = ax.step * rng.integers(-1, 2, size=4).astype(float)
    z1 = ax.step * rng.integers(-1, 2, size=4).astype(float)
    t0, t1 = rng.uniform(-1, 1, size=2)
    sig = symplectic_form(z0, z1)
    lhs = ps.t_ph_heisenberg(z0, t0, ps.t_ph_heisenberg(z1, t1, G0))
    rhs = ps.t_ph_heisenberg(z0 + z1, t0 + t1 + 0.5 * sig, G0)
    col.record("nd-formuco1", np.abs(lhs.values - rhs.values).max() < 1e-10,
               np.abs(lhs.values - rhs.values).max())
    comm = (
        ps.zhat_ph_apply("x", 1, ps.zhat_ph_apply("p", 1, F)).values
        - ps.zhat_ph_apply("p", 1, ps.zhat_ph_apply("x", 1, F)).values
    )
    r = np.abs(comm - 1j * F.values).max() / np.abs(F.values).max()
    col.record("nd-commutator", r < 1e-5, r)
    Fa = ps.symplectic_fourier(F)
    col.record("nd-fsigma-involution", _rel(ps.symplectic_fourier(Fa), F) < 1e-7,
               _rel(ps.symplectic_fourier(Fa), F))
    # wide grid: H_ph eigenrelation for the ground-state image e^{-|z|^2/4}
    axw = Axis(0.0, 8.0, 32)
    axes_w = (axw, axw, axw, axw)
    meshw = np.meshgrid(*[a.grid() for a in axes_w], indexing="ij")
    r2w = sum(m**2 for m in meshw)
    G = GridFunctionZ(axes_w, np.exp(-0.25 * r2w))
    HG = ps.harmonic_oscillator_ph(G)
    r = _rel(HG, G.with_values(1.0 * G.values))
    col.record("nd-ho-ground", r < 1e-5, r)
    return col.results()


# ---------------------------------------------------------------------------
# front door


_SUITES = {
    "kashiwara": suite_kashiwara,
    "alm": suite_alm,
    "maslov": suite_maslov,
    "cayley": suite_cayley,
    "nu": suite_nu,
    "metaplectic": suite_metaplectic,
    "phase-space": suite_phase_space,
}


def run_suite(name: str, cfg: Config = DEFAULT) -> VerificationReport:
    if name not in _SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(_SUITES)} or 'all'")
    results, wall = timed(_SUITES[name], cfg)
    return make_report(name, cfg, results, wall)


def run_all(cfg: Config = DEFAULT) -> list[VerificationReport]:
    return [run_suite(name, cfg) for name in SUITE_NAMES]
