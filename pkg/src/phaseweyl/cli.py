"""Command-line surface.

Exit codes: 0 = pass / success, 1 = verification failure or computation
error, 2 = usage / configuration error (argparse's own convention).

Subcommands:
    verify <suite>            run an identity suite (or "all")
    gen                       generate a seeded instance corpus
    compute <entity> ...      one-off computations (tau, alm, mu-ell, nu,
                              cayley, symbol)
    report <path>             pretty-print a saved report
    nu --path path.json       alias of compute nu
    mp apply|symbol           metaplectic grid actions and symbols
    ps wigner|uphi|aph|covariance|cr-residual
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .config import load_config
from .errors import PhaseweylError

# ---------------------------------------------------------------------------
# JSON object readers (schemas documented in README)


def read_matrix(path: str) -> np.ndarray:
    raw = json.loads(Path(path).read_text())
    S = np.asarray(raw["rows"], dtype=float)
    if "n" in raw and S.shape != (2 * raw["n"], 2 * raw["n"]):
        raise PhaseweylError(f"matrix shape {S.shape} inconsistent with n={raw['n']}")
    return S


def read_frame(path: str):
    from .lagmaslov import LagrangianFrame

    raw = json.loads(Path(path).read_text())
    cols = np.asarray(raw["columns"], dtype=float)
    return LagrangianFrame(cols.T if cols.shape[0] == raw.get("n", cols.shape[0]) else cols)


def read_path(path: str):
    from .lagmaslov import SymplecticPathLift

    raw = json.loads(Path(path).read_text())
    if "samples" in raw:
        mats = np.asarray([m["rows"] if isinstance(m, dict) else m for m in raw["samples"]], dtype=float)
        return SymplecticPathLift(mats, base_samples=mats.shape[0])
    if "generator" in raw:
        from .sympcore import SymplecticPath

        H = np.asarray(raw["generator"], dtype=float)
        return SymplecticPathLift(SymplecticPath.from_generator(H))
    raise PhaseweylError("path file needs 'samples' or 'generator'")


def read_word(path: str):
    from . import metaplectic as mp
    from .sympcore import GeneratingFunction

    raw = json.loads(Path(path).read_text())
    factors = []
    for fac in raw["factors"]:
        kind = fac["type"].upper()
        if kind in ("QFT", "SWM"):
            W = GeneratingFunction(
                P=np.asarray(fac["P"], dtype=float),
                L=np.asarray(fac["L"], dtype=float),
                Q=np.asarray(fac["Q"], dtype=float),
            )
            factors.append(mp.QuadraticFourierTransform(W, int(fac["m"])))
        else:
            raise PhaseweylError(f"unknown word factor type {fac['type']!r}")
    return mp.QFTWord(factors)


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(args) -> int:
    from .suites import SUITE_NAMES, run_all, run_suite

    cfg = load_config(args.config, seed=args.seed)
    if args.suite == "all":
        reports = run_all(cfg)
    elif args.suite in SUITE_NAMES:
        reports = [run_suite(args.suite, cfg)]
    else:
        print(f"unknown suite {args.suite!r}; choose from {list(SUITE_NAMES) + ['all']}",
              file=sys.stderr)
        return 2
    for rep in reports:
        for line in rep.summary_lines():
            print(line)
    if args.json:
        payload = [rep.to_dict() for rep in reports]
        Path(args.json).write_text(json.dumps(payload, indent=1, sort_keys=True))
        print(f"report written to {args.json}")
    return 0 if all(r.passed for r in reports) else 1


def cmd_gen(args) -> int:
    from .corpus import generate

    spec = {
        "kind": args.kind,
        "n_min": args.n_min,
        "n_max": args.n_max if args.n_max else args.n_min,
        "count": args.count,
    }
    corpus = generate(spec, args.seed)
    corpus.write(args.out)
    print(f"{args.count} instances ({args.kind}) written to {args.out}")
    return 0


def _print_value(entity: str, value, extra: dict, as_json: str | None):
    payload = {"entity": entity, "value": value, **extra}
    print(json.dumps(payload, indent=1, sort_keys=True, default=str))
    if as_json:
        Path(as_json).write_text(json.dumps(payload, indent=1, sort_keys=True, default=str))


def cmd_compute(args) -> int:
    from . import czindex as cz
    from . import lagmaslov as lmod
    from . import metaplectic as mp
    from .sympcore import cayley_transform

    cfg = load_config(args.config, seed=args.seed)
    rng = np.random.default_rng(cfg.seed)
    entity = args.entity
    if entity == "tau":
        frames = [read_frame(p) for p in args.inputs]
        if len(frames) != 3:
            print("tau needs three frame files", file=sys.stderr)
            return 2
        val = lmod.kashiwara_signature(*frames, cfg.tol)
        _print_value("tau", val, {"route": "triple-form signature"}, args.json)
    elif entity == "alm":
        lifts = []
        for p in args.inputs:
            raw = json.loads(Path(p).read_text())
            w = np.asarray(raw["w_re"], dtype=float) + 1j * np.asarray(raw["w_im"], dtype=float)
            lifts.append(lmod.LagLift(w, float(raw["theta"])))
        if len(lifts) != 2:
            print("alm needs two lift files", file=sys.stderr)
            return 2
        val = lmod.alm_index(lifts[0], lifts[1], rng, cfg.tol)
        _print_value("alm", val, {"route": "souriau/cocycle"}, args.json)
    elif entity == "mu-ell":
        path = read_path(args.inputs[0])
        frame = read_frame(args.inputs[1])
        val = lmod.maslov_mu_ell(path, frame, rng, cfg.tol)
        _print_value("mu-ell", val, {}, args.json)
    elif entity == "nu":
        path = read_path(args.inputs[0])
        out = cz.nu(path, args.route, rng, cfg.tol)
        _print_value("nu", out.value, {"route": out.route}, args.json)
    elif entity == "cayley":
        S = read_matrix(args.inputs[0])
        M = cayley_transform(S, cfg.tol)
        _print_value("cayley", M.tolist(), {}, args.json)
    elif entity == "symbol":
        S = read_matrix(args.inputs[0])
        sym = mp.twisted_symbol(S, args.nu, cfg.tol)
        _print_value(
            "symbol",
            {"nu": sym.nu, "amplitude": sym.amplitude, "M": sym.M.tolist()},
            {"tolerances": {"det_si": cfg.tol.det_si}},
            args.json,
        )
    else:
        print(f"unknown entity {entity!r}", file=sys.stderr)
        return 2
    return 0


def cmd_report(args) -> int:
    from .report import VerificationReport

    raw = json.loads(Path(args.path).read_text())
    reports = raw if isinstance(raw, list) else [raw]
    ok = True
    for rep_dict in reports:
        tmp = Path(args.path).with_suffix(".tmp.json")
        tmp.write_text(json.dumps(rep_dict))
        rep = VerificationReport.read(tmp)
        tmp.unlink()
        for line in rep.summary_lines():
            print(line)
        ok = ok and rep.passed
    return 0 if ok else 1


def cmd_mp(args) -> int:
    from . import metaplectic as mp
    from .grids import read_grid, write_grid

    cfg = load_config(args.config, seed=args.seed)
    if args.action == "apply":
        word = read_word(args.word)
        f = read_grid(args.infile)
        g = word.apply(f)
        write_grid(g, args.out)
        print(f"applied {len(word.factors)}-factor word; output in {args.out}")
        return 0
    if args.action == "symbol":
        S = read_matrix(args.matrix)
        sym = mp.twisted_symbol(S, args.nu, cfg.tol)
        print(json.dumps({"nu": sym.nu, "amplitude": sym.amplitude, "M": sym.M.tolist()}, indent=1))
        return 0
    print(f"unknown mp action {args.action!r}", file=sys.stderr)
    return 2


def cmd_ps(args) -> int:
    from . import phasespace as psmod
    from .grids import WindowState, gaussian_ground_state, read_grid, standard_axes, write_grid

    cfg = load_config(args.config, seed=args.seed)
    axes_x, axes_z = standard_axes(cfg.grid)
    if args.action == "wigner":
        f = read_grid(args.infile)
        g = read_grid(args.second) if args.second else f
        W = psmod.wigner_moyal(f, g, axes_z)
        write_grid(W, args.out)
        print(f"Wigner-Moyal transform written to {args.out}")
        return 0
    if args.action == "uphi":
        f = read_grid(args.infile)
        win = WindowState(read_grid(args.window)) if args.window else WindowState(
            gaussian_ground_state(f.axes)
        )
        F = psmod.u_phi(f, win, axes_z)
        write_grid(F, args.out)
        print(f"U_phi image written to {args.out}")
        return 0
    if args.action == "aph":
        a = read_grid(args.symbol)
        F = read_grid(args.infile)
        out = psmod.a_ph_apply(a, F)
        write_grid(out, args.out)
        print(f"A_ph action written to {args.out}")
        return 0
    if args.action == "cr-residual":
        F = read_grid(args.infile)
        print(json.dumps({"cr_residual": psmod.cr_condition_residual(F)}))
        return 0
    if args.action == "covariance":
        from . import metaplectic as mp
        from .grids import GridFunctionZ, random_state_battery

        word = read_word(args.word)
        rng = np.random.default_rng(cfg.seed)
        phi0 = gaussian_ground_state(axes_x)
        states = [
            psmod.u_phi(f, WindowState(phi0), axes_z)
            for f in random_state_battery(axes_x, rng, count=2, max_center=1.5)
        ]
        mesh = np.meshgrid(axes_z[0].grid(), axes_z[1].grid(), indexing="ij")

        def transported(S):
            zs = np.stack([mesh[0], mesh[1]], axis=-1) @ S.T
            return GridFunctionZ(axes_z, np.exp(-0.5 * np.einsum("...i,...i->...", zs, zs)))

        res = psmod.metaplectic_covariance_residual(
            word, transported(np.eye(2)), states, WindowState(phi0), axes_x, transported
        )
        print(json.dumps({"covariance_residual": res}))
        return 0
    print(f"unknown ps action {args.action!r}", file=sys.stderr)
    return 2


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="phaseweyl", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="TOML config file")
    common.add_argument("--seed", type=int, default=None, help="override the corpus seed")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run an identity suite", parents=[common])
    p.add_argument("suite")
    p.add_argument("--json", default=None, help="write the report(s) to this path")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("gen", help="generate a seeded instance corpus", parents=[common])
    p.add_argument("--kind", default="symplectic",
                   choices=["symplectic", "near-degenerate", "lagrangian-pairs"])
    p.add_argument("--n-min", type=int, default=1, dest="n_min")
    p.add_argument("--n-max", type=int, default=0, dest="n_max")
    p.add_argument("--count", type=int, default=16)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_gen, seed_default=20260810)

    p = sub.add_parser("compute", help="single-value computations", parents=[common])
    p.add_argument("entity", choices=["tau", "alm", "mu-ell", "nu", "cayley", "symbol"])
    p.add_argument("inputs", nargs="*")
    p.add_argument("--route", default="both", choices=["free", "doubled", "both"])
    p.add_argument("--nu", type=int, default=0)
    p.add_argument("--json", default=None)
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("report", help="pretty-print a saved report", parents=[common])
    p.add_argument("path")
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("nu", help="alias of compute nu", parents=[common])
    p.add_argument("--path", required=True)
    p.add_argument("--route", default="both", choices=["free", "doubled", "both"])
    p.add_argument("--json", default=None)
    p.set_defaults(fn=lambda a: cmd_compute(_nu_alias(a)))

    p = sub.add_parser("mp", help="metaplectic grid actions", parents=[common])
    p.add_argument("action", choices=["apply", "symbol"])
    p.add_argument("--word", default=None)
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--matrix", default=None)
    p.add_argument("--nu", type=int, default=0)
    p.set_defaults(fn=cmd_mp)

    p = sub.add_parser("ps", help="phase-space operators", parents=[common])
    p.add_argument("action", choices=["wigner", "uphi", "aph", "covariance", "cr-residual"])
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--second", default=None)
    p.add_argument("--window", default=None)
    p.add_argument("--symbol", default=None)
    p.add_argument("--word", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_ps)
    return top


class _nu_alias:
    def __init__(self, args):
        self.entity = "nu"
        self.inputs = [args.path]
        self.route = args.route
        self.nu = 0
        self.json = args.json
        self.config = args.config
        self.seed = args.seed


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is None and hasattr(args, "seed_default"):
        args.seed = args.seed_default
    try:
        return args.fn(args)
    except PhaseweylError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
