"""Config-driven command line front end.

Subcommands: build | verify | spectrum | invert.  Experiments are described
by a JSON config file; command-line flags override config fields, which
override defaults.  Exit codes: 0 pass, 1 suite failure, 2 config error,
3 numerical precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .blaschke import BlaschkeProduct
from .clark import diagonalizing_measure, functional_calculus_unitary
from .errors import NumericalError, ValidationError
from .hardy import BoundaryGrid, RationalSymbol
from .modelspace import ModelSpaceBasis
from .operators import (
    INF,
    compressed_shift,
    modified_shift,
    quotient_operator,
    regime,
    sedlock_membership,
    tto_matrix,
)
from .suites import (
    SUITE_NAMES,
    inverse_divisibility_residual,
    recover_class_symbol,
    run_suites,
)
from .blaschke import frostman_shift

DEFAULTS = {
    "grid": 1024,
    "alphas": [[0.0, 0.0]],
    "symbols": [],
    "phi_atoms": None,
    "suites": list(SUITE_NAMES),
    "seed": 0,
    "tol": 1e-8,
    "out": None,
}
ALLOWED_KEYS = {"u", "constant"} | set(DEFAULTS)


def _parse_alpha(entry):
    if entry == "inf":
        return INF
    if len(entry) == 1:
        return complex(float(entry[0]), 0.0)
    re, im = entry
    return complex(float(re), float(im))


def _alpha_key(alpha) -> str:
    if alpha is INF:
        return "inf"
    return f"{alpha.real:.12g},{alpha.imag:.12g}"


def _matrix_payload(M) -> list:
    return [[[z.real, z.imag] for z in row] for row in np.asarray(M, dtype=complex)]


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ValidationError("config must be a JSON object")
    unknown = set(cfg) - ALLOWED_KEYS
    if unknown:
        raise ValidationError(f"unknown config keys: {sorted(unknown)}")
    return cfg


def _parse_u_zeros(spec: str):
    zeros = []
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) not in (2, 3):
            raise ValidationError(f"bad zero spec {chunk!r}; expected re,im[,mult]")
        re, im = float(parts[0]), float(parts[1])
        mult = int(parts[2]) if len(parts) == 3 else 1
        zeros.append([re, im, mult])
    if not zeros:
        raise ValidationError("empty --u-zeros")
    return zeros


def merge_config(args) -> dict:
    cfg = dict(DEFAULTS)
    cfg.update(load_config(args.config))
    if args.u_zeros is not None:
        cfg["u"] = {"zeros": _parse_u_zeros(args.u_zeros),
                    "constant": cfg.get("u", {}).get("constant", [1.0, 0.0])}
    if args.alpha:
        cfg["alphas"] = [
            "inf" if a.strip() == "inf" else [float(x) for x in a.split(",")]
            for a in args.alpha
        ]
    if args.grid is not None:
        cfg["grid"] = args.grid
    if args.tol is not None:
        cfg["tol"] = args.tol
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.out is not None:
        cfg["out"] = args.out
    if "u" not in cfg:
        raise ValidationError("no inner function: give a config or --u-zeros")
    return cfg


def _build_objects(cfg):
    try:
        u = BlaschkeProduct.from_dict(cfg["u"])
        grid = BoundaryGrid(int(cfg["grid"]))
        alphas = [_parse_alpha(a) for a in cfg["alphas"]]
        symbols = [RationalSymbol.from_dict(s) for s in cfg["symbols"]]
    except (TypeError, KeyError, IndexError) as exc:
        raise ValidationError(f"malformed config: {exc}") from exc
    return u, grid, alphas, symbols


def _meta(cfg) -> dict:
    echo = {k: v for k, v in cfg.items() if k != "out"}
    return {"version": __version__, "seed": cfg["seed"], "config": echo}


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_build(cfg) -> int:
    u, grid, alphas, symbols = _build_objects(cfg)
    basis = ModelSpaceBasis(u, grid)
    payload = {
        "meta": _meta(cfg),
        "basis": {"u": u.to_dict(), "grid": grid.n,
                  "zero_order": [[a.real, a.imag] for a in basis.zeros]},
        "S_u": _matrix_payload(compressed_shift(basis)),
        "modified_shifts": {},
        "tto": [],
        "clark": {},
    }
    for alpha in alphas:
        if alpha is INF:
            payload["modified_shifts"]["inf"] = _matrix_payload(
                compressed_shift(basis).conj().T
            )
            continue
        payload["modified_shifts"][_alpha_key(alpha)] = _matrix_payload(
            modified_shift(basis, alpha)
        )
        if regime(alpha) == "unit":
            mu = diagonalizing_measure(basis, alpha)
            payload["clark"][_alpha_key(alpha)] = mu.to_dict()
    for sym in symbols:
        payload["tto"].append(
            _matrix_payload(tto_matrix(basis, sym(grid.points)))
        )
    out = Path(cfg["out"] or "build.json")
    _write_json(out, payload)
    print(f"wrote {out}")
    return 0


def cmd_verify(cfg, plot: bool = False) -> int:
    u, grid, alphas, symbols = _build_objects(cfg)
    reports = run_suites(
        u, alphas, cfg["suites"], grid, symbols or None,
        seed=int(cfg["seed"]), tol=float(cfg["tol"]),
    )
    payload = {
        "meta": _meta(cfg),
        "reports": [rep.to_json_dict() for rep in reports],
    }
    out = Path(cfg["out"] or "verify.json")
    _write_json(out, payload)
    for rep in reports:
        status = "pass" if rep.verdict else "FAIL"
        worst = max(rep.residuals.values(), default=0.0)
        print(f"{status}  {rep.suite:<20} alpha={rep.params['alpha']}  "
              f"worst residual {worst:.3e}")
    if plot:
        from .plotting import residual_figure

        fig = residual_figure(reports)
        fig.savefig(out.with_suffix(".png"), dpi=150)
        print(f"wrote {out.with_suffix('.png')}")
    print(f"wrote {out}")
    return 0 if all(rep.verdict for rep in reports) else 1


def cmd_spectrum(cfg, plot: bool = False) -> int:
    u, grid, alphas, _ = _build_objects(cfg)
    alpha = alphas[0]
    if alpha is INF or regime(alpha) != "unit":
        raise ValidationError("spectrum needs a unimodular alpha")
    basis = ModelSpaceBasis(u, grid)
    mu = diagonalizing_measure(basis, alpha)
    order = np.argsort(np.angle(mu.atoms))
    atoms = mu.atoms[order]
    weights = mu.weights[order]
    if cfg["phi_atoms"] is not None:
        if len(cfg["phi_atoms"]) != len(atoms):
            raise ValidationError("phi_atoms length must equal the number of atoms")
        phi = np.array([complex(re, im) for re, im in cfg["phi_atoms"]])
    else:
        phi = atoms.copy()
    A = functional_calculus_unitary(
        basis, mu, phi[np.argsort(order)]
    )
    evals = np.linalg.eigvals(A)
    matched = np.array([evals[np.argmin(np.abs(evals - p))] for p in phi])
    out = Path(cfg["out"] or "spectrum.csv")
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# ttolab version={__version__}\n")
        fh.write(f"# seed={cfg['seed']}\n")
        fh.write(f"# u={json.dumps(u.to_dict(), sort_keys=True)}\n")
        fh.write(f"# alpha={_alpha_key(alpha)} grid={grid.n}\n")
        fh.write("atom_re,atom_im,angle,weight,phi_re,phi_im,eigen_re,eigen_im\n")
        for z, w, p, e in zip(atoms, weights, phi, matched):
            fh.write(
                f"{z.real:.15g},{z.imag:.15g},{np.angle(z):.15g},{w:.15g},"
                f"{p.real:.15g},{p.imag:.15g},{e.real:.15g},{e.imag:.15g}\n"
            )
    print(f"wrote {out}")
    if plot:
        from .plotting import spectrum_figure

        fig = spectrum_figure(mu, phi, matched)
        fig.savefig(out.with_suffix(".png"), dpi=150)
        print(f"wrote {out.with_suffix('.png')}")
    return 0


def cmd_invert(cfg) -> int:
    u, grid, alphas, symbols = _build_objects(cfg)
    alpha = alphas[0]
    basis = ModelSpaceBasis(u, grid)
    payload = {"meta": _meta(cfg), "alpha": cfg["alphas"][0]}
    if alpha is not INF and regime(alpha) == "inside":
        if not symbols:
            raise ValidationError("invert needs a symbol in the config")
        phi = symbols[0]
        alpha = complex(alpha)
        A = quotient_operator(basis, phi, alpha)
        cond = float(np.linalg.cond(A))
        payload["condition_number"] = cond
        if cond > 1e12:
            payload["invertible"] = False
        else:
            M = np.linalg.inv(A)
            u_alpha = frostman_shift(u, alpha)
            basis_alpha = ModelSpaceBasis(u_alpha, grid)
            _, psi, recon = recover_class_symbol(basis, basis_alpha, alpha, M)
            cls = sedlock_membership(M, basis)
            payload.update(
                invertible=True,
                inverse_symbol=psi.to_dict(),
                recovery_residual=recon,
                divisibility_residual=inverse_divisibility_residual(
                    u_alpha, phi, psi
                ),
                membership_contains_alpha=cls.contains(alpha, 1e-8),
            )
    elif alpha is not INF and regime(alpha) == "unit":
        from .clark import atomic_mult_inverse

        mu = diagonalizing_measure(basis, alpha)
        if cfg["phi_atoms"] is None:
            raise ValidationError("invert at |alpha| = 1 needs phi_atoms")
        phi = np.array([complex(re, im) for re, im in cfg["phi_atoms"]])
        inv_vals = atomic_mult_inverse(phi)
        payload["invertible"] = inv_vals is not None
        if inv_vals is not None:
            payload["inverse_atoms"] = [[v.real, v.imag] for v in inv_vals]
    else:
        raise ValidationError("invert supports |alpha| < 1 and |alpha| = 1")
    out = Path(cfg["out"] or "invert.json")
    _write_json(out, payload)
    print(f"wrote {out}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ttolab",
        description="Truncated Toeplitz operators on finite model spaces",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("build", "verify", "spectrum", "invert"):
        p = sub.add_parser(name)
        p.add_argument("--config", default=None)
        p.add_argument("--u-zeros", default=None,
                       help='zero list "re,im,mult;re,im,mult;..."')
        p.add_argument("--alpha", action="append", default=None,
                       help='"re[,im]" or "inf"; repeatable')
        p.add_argument("--grid", type=int, default=None)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None)
        if name in ("verify", "spectrum"):
            p.add_argument("--plot", action="store_true")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = merge_config(args)
        if args.command == "build":
            return cmd_build(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, plot=getattr(args, "plot", False))
        if args.command == "spectrum":
            return cmd_spectrum(cfg, plot=getattr(args, "plot", False))
        return cmd_invert(cfg)
    except ValidationError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical precondition failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
