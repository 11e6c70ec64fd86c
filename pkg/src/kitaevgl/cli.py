"""Command-line interface.

Every command is a thin client of the service API: it builds a typed
request, sends it through :class:`LocalClient` (in-process, the default) or
:class:`HttpClient` (``--server`` / ``KITAEVGL_SERVER``), and renders the
response.  Human-readable summaries go to stdout; machine-readable output
goes only to files named with ``--out`` / ``--out-dir`` (default directory
from ``KITAEVGL_OUT_DIR``).

Exit codes: 0 success, 1 domain error (solver failure, ambiguous crossing),
2 usage error (bad flags, malformed spec), 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import ChainError
from .model import ChainSpec
from .service import ClientError, HttpClient, LocalClient
from .service import schemas as s

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

_INLINE_FLAGS = ("n", "t", "delta", "mu", "profile", "g0", "gain_site",
                 "loss_site", "max_g", "seed")


def _add_chain_flags(p: argparse.ArgumentParser, with_spec_file: bool = True):
    if with_spec_file:
        p.add_argument("--spec", metavar="FILE",
                       help="chain spec JSON file (mutually exclusive with inline flags)")
    p.add_argument("--n", type=int, help="number of sites")
    p.add_argument("--t", type=float, help="hopping amplitude (default 1)")
    p.add_argument("--delta", type=float, help="pairing strength (default 1)")
    p.add_argument("--mu", type=float, help="chemical potential (default 0)")
    p.add_argument("--profile",
                   choices=["zero", "alternating", "two-impurity", "random"],
                   help="gain/loss profile constructor "
                        "(default: alternating if --g0/--max-g given, else zero)")
    p.add_argument("--g0", type=float, help="profile amplitude")
    p.add_argument("--gain-site", type=int, help="gain site for two-impurity (1-indexed)")
    p.add_argument("--loss-site", type=int, help="loss site for two-impurity (1-indexed)")
    p.add_argument("--max-g", type=float, help="max interior strength for random profile")
    p.add_argument("--seed", type=int, help="seed for random profile")


def _profile_model(args, parser) -> s.ProfileModel:
    name = args.profile
    if name is None:
        name = "alternating" if (args.g0 is not None or args.max_g is not None) else "zero"
    name = name.replace("-", "_")
    if name == "two_impurity" and (args.gain_site is None or args.loss_site is None):
        parser.error("--profile two-impurity needs --gain-site and --loss-site")
    if name == "random" and args.seed is None:
        parser.error("--profile random needs --seed")
    return s.ProfileModel(
        name=name,
        g0=args.g0 if args.g0 is not None else 0.0,
        gain_site=args.gain_site,
        loss_site=args.loss_site,
        max_strength=args.max_g if args.max_g is not None else 0.0,
        seed=args.seed,
    )


def _resolve_spec(args, parser) -> s.ChainSpecModel:
    """Chain spec from a JSON file or from inline flags (never both)."""
    inline_given = any(getattr(args, f, None) is not None for f in _INLINE_FLAGS)
    if getattr(args, "spec", None):
        if inline_given:
            parser.error("--spec and inline chain flags are mutually exclusive")
        try:
            text = Path(args.spec).read_text()
        except OSError as exc:
            raise ClientError("io", f"cannot read spec file: {exc}") from exc
        try:
            core = ChainSpec.from_json(text)
        except ChainError as exc:
            raise ClientError("usage", f"malformed spec file: {exc}") from exc
        return s.ChainSpecModel.from_core(core)
    if args.n is None:
        parser.error("either --spec or --n is required")
    profile = _profile_model(args, parser)
    try:
        core_profile = profile.to_core().build(args.n)
        core = ChainSpec(
            n_sites=args.n,
            hopping=args.t if args.t is not None else 1.0,
            pairing=args.delta if args.delta is not None else 1.0,
            chemical_potential=args.mu if args.mu is not None else 0.0,
            profile=core_profile,
        )
    except ChainError as exc:
        raise ClientError("usage", str(exc)) from exc
    return s.ChainSpecModel.from_core(core)


def _make_client(args):
    return HttpClient(args.server) if args.server else LocalClient()


def _out_path(args, name: str) -> Path:
    out_dir = Path(getattr(args, "out_dir", None) or os.environ.get("KITAEVGL_OUT_DIR", "."))
    path = Path(name)
    return path if path.is_absolute() else out_dir / path


def _fmt_complex(z: tuple[float, float]) -> str:
    return f"{z[0]:+.12e} {z[1]:+.12e}j"


# ---------------------------------------------------------------- commands


def cmd_spectrum(args, parser) -> int:
    spec = _resolve_spec(args, parser)
    req = s.SpectrumRequest(
        spec=spec,
        zero_tolerance=args.tol_zero,
        reality_tolerance=args.tol_real,
    )
    resp = _make_client(args).spectrum(req)
    print(f"chain: N={spec.n_sites} T={spec.hopping:g} delta={spec.pairing:g} "
          f"mu={spec.chemical_potential:g}")
    print("eigenvalues (re im):")
    for z in resp.eigenvalues:
        print(f"  {_fmt_complex(z)}")
    print(f"reality: {resp.reality} (max |Im| = {resp.max_imag:.3e})")
    print(f"zero modes: {resp.zero_count}")
    off = complex(*resp.scalar_offset)
    print(f"scalar offset: {off.real:g}{off.imag:+g}j")
    if resp.phase is not None:
        print(f"phase: {resp.phase}")
    if not resp.balanced:
        print(f"warning: profile is unbalanced; whole spectrum shifts by {off.imag:g}i")
    if args.out:
        path = _out_path(args, args.out)
        lines = ["index,re,im"]
        lines += [f"{i},{z[0]:.17g},{z[1]:.17g}" for i, z in enumerate(resp.eigenvalues)]
        path.write_text("\n".join(lines) + "\n")
        print(f"wrote {path}")
    return EXIT_OK


def cmd_zero_modes(args, parser) -> int:
    spec = _resolve_spec(args, parser)
    req = s.ZeroModesRequest(spec=spec, zero_tolerance=args.tol_zero)
    resp = _make_client(args).zero_modes(req)
    print(f"zero modes: {resp.zero_count} (|lambda| <= {args.tol_zero:g} * max(1, ||M||))")
    for z, (wl, wr), xi in zip(resp.zero_eigenvalues, resp.edge_weights,
                               resp.localization_lengths):
        xi_text = "exact edge mode" if xi is None else f"decay length {xi:.3f} sites"
        print(f"  lambda = {_fmt_complex(z)}  w_left={wl:.6f} w_right={wr:.6f}  {xi_text}")
    if args.out:
        path = _out_path(args, args.out)
        path.write_text(json.dumps(resp.model_dump(), indent=2) + "\n")
        print(f"wrote {path}")
    return EXIT_OK


def cmd_sweep(args, parser) -> int:
    if args.config:
        if any(getattr(args, f, None) is not None for f in _INLINE_FLAGS + ("axis",)):
            parser.error("--config and inline sweep flags are mutually exclusive")
        try:
            doc = json.loads(Path(args.config).read_text())
        except OSError as exc:
            raise ClientError("io", f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ClientError("usage", f"config is not valid JSON: {exc}") from exc
        req = _sweep_request_from_doc(doc, parser)
        out_name = doc.get("out") or f"sweep_{req.axis.name}.csv"
    else:
        if args.axis is None:
            parser.error("--axis is required (or use --config)")
        spec = _resolve_spec(args, parser)
        profile = _profile_model(args, parser) if args.spec is None else None
        req = s.SweepRequest(
            base=spec,
            axis=s.AxisModel(name=args.axis, min=args.min, max=args.max, steps=args.steps),
            profile=profile,
            store_spectra=args.store_spectra,
            zero_tolerance=args.tol_zero,
            reality_tolerance=args.tol_real,
        )
        out_name = args.out or f"sweep_{args.axis}.csv"
    resp = _make_client(args).sweep(req)
    path = _out_path(args, args.out or out_name)
    path.write_text(resp.csv)
    written = [str(path)]
    if resp.spectra_csv is not None:
        sidecar = path.with_name(path.stem + ".spectra" + path.suffix)
        sidecar.write_text(resp.spectra_csv)
        written.append(str(sidecar))
    n_failed = sum(1 for r in resp.records if r.failed)
    print(f"swept {req.axis.name} over [{req.axis.min:g}, {req.axis.max:g}] "
          f"in {req.axis.steps} steps ({n_failed} failed)")
    for w in written:
        print(f"wrote {w}")
    return EXIT_OK


def _sweep_request_from_doc(doc: dict, parser) -> s.SweepRequest:
    from .sweep import SweepConfig

    try:
        config = SweepConfig.from_json_dict(doc)
    except ChainError as exc:
        raise ClientError("usage", f"bad sweep config: {exc}") from exc
    profile = None
    if config.profile is not None:
        profile = s.ProfileModel(
            name=config.profile.kind,
            g0=config.profile.g0,
            gain_site=config.profile.gain_site,
            loss_site=config.profile.loss_site,
            max_strength=config.profile.max_strength,
            seed=config.profile.seed,
        )
    return s.SweepRequest(
        base=s.ChainSpecModel.from_core(config.base),
        axis=s.AxisModel(
            name=config.axis.name, min=config.axis.start,
            max=config.axis.stop, steps=config.axis.steps,
        ),
        profile=profile,
        store_spectra=config.store_spectra,
        zero_tolerance=config.zero_tolerance,
        reality_tolerance=config.reality_tolerance,
    )


def _parse_range(text: str, parser) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        parser.error(f"--range expects lo:hi, got {text!r}")


def cmd_critical(args, parser) -> int:
    lo, hi = _parse_range(args.range, parser)
    spec = _resolve_spec(args, parser)
    profile = _profile_model(args, parser) if args.spec is None else None
    req = s.CriticalRequest(
        base=spec, axis=args.axis, lo=lo, hi=hi, profile=profile,
        reality_tolerance=args.tol_real,
    )
    resp = _make_client(args).critical(req)
    if resp.critical is None:
        print("no crossing")
    else:
        print(f"{args.axis}_c = {resp.critical:.6f}")
    return EXIT_OK


def cmd_random_ensemble(args, parser) -> int:
    req = s.EnsembleRequest(
        n_sites=args.n if args.n is not None else 12,
        mu=args.mu if args.mu is not None else 0.0,
        hopping=args.t if args.t is not None else 1.0,
        pairing=args.delta if args.delta is not None else 1.0,
        max_strength=args.max_g if args.max_g is not None else 0.5,
        n_trials=args.trials,
        seed=args.seed if args.seed is not None else 1,
        zero_tolerance=args.tol_zero,
    )
    resp = _make_client(args).random_ensemble(req)
    n_two = sum(1 for t in resp.trials if t.zero_count == 2)
    print(f"{n_two}/{resp.n_trials} trials: 2 exact zero modes")
    if resp.max_edge_deviation is not None:
        print(f"worst edge-weight deviation: {resp.max_edge_deviation:.3e}")
    if args.out:
        path = _out_path(args, args.out)
        path.write_text(json.dumps(resp.model_dump(), indent=2) + "\n")
        print(f"wrote {path}")
    return EXIT_OK


def cmd_reproduce(args, parser) -> int:
    req = s.ReproduceRequest(figure=args.figure, g0=args.g0, steps=args.steps)
    resp = _make_client(args).reproduce(req)
    main_path = _out_path(args, f"{resp.base_name}.csv")
    spectra_path = _out_path(args, f"{resp.base_name}.spectra.csv")
    main_path.write_text(resp.csv)
    spectra_path.write_text(resp.spectra_csv)
    print(f"wrote {main_path}")
    print(f"wrote {spectra_path}")
    return EXIT_OK


def cmd_serve(args, parser) -> int:
    import uvicorn

    uvicorn.run("kitaevgl.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


# ---------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kitaevgl",
        description="Kitaev chain with balanced gain and loss",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", default=os.environ.get("KITAEVGL_SERVER"),
                        help="service URL; default is in-process execution")
    common.add_argument("--out-dir", default=None,
                        help="directory for output files (env KITAEVGL_OUT_DIR, default .)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("spectrum", help="diagonalize one chain")
    _add_chain_flags(p)
    p.add_argument("--tol-zero", type=float, default=1e-10)
    p.add_argument("--tol-real", type=float, default=1e-9)
    p.add_argument("--out", help="write eigenvalues CSV here")
    p.set_defaults(func=cmd_spectrum)

    p = add_parser("zero-modes", help="detect and localize zero modes")
    _add_chain_flags(p)
    p.add_argument("--tol-zero", type=float, default=1e-10)
    p.add_argument("--out", help="write the zero-mode report JSON here")
    p.set_defaults(func=cmd_zero_modes)

    p = add_parser("sweep", help="sweep one axis over a grid")
    _add_chain_flags(p)
    p.add_argument("--config", metavar="FILE", help="sweep config JSON")
    p.add_argument("--axis", choices=["mu", "delta", "g0"])
    p.add_argument("--min", type=float, default=-3.0)
    p.add_argument("--max", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=121)
    p.add_argument("--store-spectra", action="store_true")
    p.add_argument("--tol-zero", type=float, default=0.25,
                   help="absolute near-zero window for the zero_count column")
    p.add_argument("--tol-real", type=float, default=1e-9)
    p.add_argument("--out", help="output CSV path")
    p.set_defaults(func=cmd_sweep)

    p = add_parser("critical", help="bisect the spectral-reality threshold")
    _add_chain_flags(p)
    p.add_argument("--axis", choices=["mu", "delta", "g0"], required=True)
    p.add_argument("--range", required=True, help="scan range lo:hi")
    p.add_argument("--tol-real", type=float, default=1e-9)
    p.set_defaults(func=cmd_critical)

    p = add_parser("random-ensemble", help="zero modes over random balanced profiles")
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--max-g", type=float)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol-zero", type=float, default=1e-10)
    p.add_argument("--out", help="write the ensemble summary JSON here")
    p.set_defaults(func=cmd_random_ensemble)

    p = add_parser("reproduce", help="figure-reproduction sweeps")
    p.add_argument("figure", choices=["fig2", "fig3"])
    p.add_argument("--g0", type=float, required=True)
    p.add_argument("--steps", type=int, default=121)
    p.set_defaults(func=cmd_reproduce)

    p = add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except ClientError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.detail.get("brackets"):
            print(f"sign-change brackets: {exc.detail['brackets']}", file=sys.stderr)
        return {"usage": EXIT_USAGE, "domain": EXIT_DOMAIN, "io": EXIT_IO}[exc.kind]
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
