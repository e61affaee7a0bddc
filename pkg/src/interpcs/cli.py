"""Command-line front end.

    interpcs state    --family algebraic --alpha 2 --k 1
    interpcs qsurface --family perelomov --k 0.25,0.5,0.75,1
    interpcs squeeze  --family algebraic --step 0.1
    interpcs wigner   --alpha 2.5 --k 0.5
    interpcs verify   [--diagnostic-paper-forms]

``--alpha-re-range``/``--alpha-im-range``/``--step`` describe the grid a
command sweeps: |alpha| for ``qsurface`` (only the re-range is used), the
complex label plane for ``squeeze`` (beta for the Perelomov family) and the
phase-space point z for ``wigner``.

Numbers are written with 17 significant digits.  CSV output starts with
``# key=value`` metadata lines followed by a header row; JSON output holds
``{"command", "meta", "columns", "rows"}`` (``verify`` writes ``checks``).

Exit codes: 0 ok, 1 verification failure, 2 configuration error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import cmath
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import algebra, fock, measure, observables, states

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

DEFAULT_K_LIST = (0.25, 0.5, 0.75, 1.0)
VERIFY_K_LIST = (0.0, 0.25, 0.5, 0.75, 1.0)
EIGEN_DIM = 400


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    family: str = "algebraic"
    k_list: tuple[float, ...] = DEFAULT_K_LIST
    alpha: complex = 1.0
    alpha_re_range: tuple[float, float] | None = None
    alpha_im_range: tuple[float, float] | None = None
    step: float | None = None
    dim: int | None = None
    fmt: str = "csv"
    out: str | None = None
    tolerances: dict = field(default_factory=dict)
    diagnostic: bool = False

    def validate(self) -> None:
        if not self.k_list:
            raise ConfigError("empty k list")
        for k in self.k_list:
            if not 0.0 <= k <= 1.0:
                raise ConfigError(f"k={k} outside [0, 1]")
        if self.step is not None and not self.step > 0:
            raise ConfigError("--step must be positive")
        for rng in (self.alpha_re_range, self.alpha_im_range):
            if rng is not None and rng[1] < rng[0]:
                raise ConfigError(f"empty range {rng}")
        if self.dim is not None and self.dim < 2:
            raise ConfigError("--dim must be at least 2")
        if self.family not in states.FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")


# --- serialization ----------------------------------------------------------


def _num(x) -> str:
    if x is None:
        return "null"
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        raise ArithmeticError("non-finite value reached the output")
    return format(x, ".17g")


def _json(obj) -> str:
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json(v) for v in obj) + "]"
    if isinstance(obj, str):
        return json.dumps(obj)
    return _num(obj)


def _csv_cell(x) -> str:
    if isinstance(x, str):
        return x
    if x is None:
        return ""
    return _num(x)


def render_table(command: str, meta: dict, columns: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "json":
        body = {"command": command, "meta": meta, "columns": columns, "rows": rows}
        return _json(body) + "\n"
    buf = io.StringIO()
    buf.write(f"# command={command}\n")
    for key, val in meta.items():
        buf.write(f"# {key}={_csv_cell(val) if not isinstance(val, (list, dict)) else _json(val)}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_csv_cell(v) for v in row) + "\n")
    return buf.getvalue()


def _complex_str(z: complex) -> str:
    return f"{_num(z.real)}{'+' if z.imag >= 0 else '-'}{_num(abs(z.imag))}j"


# --- commands ---------------------------------------------------------------


def _single_k(cfg: RunConfig) -> float:
    if len(cfg.k_list) != 1:
        raise ConfigError("this command takes a single --k value")
    return cfg.k_list[0]


def cmd_state(cfg: RunConfig) -> tuple[str, int]:
    k = 0.0 if cfg.family == "coherent" else (1.0 if cfg.family == "phase" else _single_k(cfg))
    label = states.StateLabel(cfg.family, complex(cfg.alpha), k)
    psi = states.make_state(label, cfg.dim)
    p = observables.photon_distribution(psi)
    meta = {
        "family": cfg.family,
        "alpha": _complex_str(label.alpha),
        "k": k,
        "dim": psi.size,
        "norm": float(p.sum()),
    }
    rows = [[n, psi[n].real, psi[n].imag, p[n]] for n in range(psi.size)]
    return render_table("state", meta, ["n", "re_c", "im_c", "p"], rows, cfg.fmt), EXIT_OK


def cmd_qsurface(cfg: RunConfig) -> tuple[str, int]:
    if cfg.family not in ("algebraic", "perelomov"):
        raise ConfigError("qsurface supports the algebraic and perelomov families")
    step = cfg.step or 0.05
    default_max = 2.5 if cfg.family == "algebraic" else 2.0
    lo, hi = cfg.alpha_re_range or (0.0, default_max)
    if lo < 0:
        raise ConfigError("qsurface sweeps |alpha| >= 0")
    radii = observables.grid_axis(lo, hi, step)
    radii = radii[radii > 0]  # Q is undefined for the vacuum
    rows = []
    for k in cfg.k_list:
        for r in radii:
            if cfg.family == "algebraic":
                psi = states.algebraic_cs(r, k, cfg.dim)
                rows.append([k, r, observables.q_parameter(psi), psi.size])
            else:
                psi = states.perelomov_cs(r, k, cfg.dim)
                rows.append([k, r, abs(states.beta_of_alpha(r, k)), observables.q_parameter(psi), psi.size])
    cols = ["k", "abs_alpha", "Q", "dim"] if cfg.family == "algebraic" else ["k", "abs_alpha", "abs_beta", "Q", "dim"]
    meta = {"family": cfg.family, "step": step, "q_convention": "variance/mean"}
    return render_table("qsurface", meta, cols, rows, cfg.fmt), EXIT_OK


def cmd_squeeze(cfg: RunConfig) -> tuple[str, int]:
    step = cfg.step or 0.05
    perelomov = cfg.family == "perelomov"
    rmax = 0.95 if perelomov else 2.5
    re = observables.grid_axis(*(cfg.alpha_re_range or (-rmax, rmax)), step)
    im = observables.grid_axis(*(cfg.alpha_im_range or (-rmax, rmax)), step)
    rows = []
    for k in cfg.k_list:
        for y in im:
            for x in re:
                lab = complex(x, y)
                if abs(lab) > rmax + 1e-12:
                    continue
                if perelomov:
                    if k * abs(lab) ** 2 >= 1.0:
                        continue
                    a = states.alpha_of_beta(lab, k)
                    psi = states.perelomov_cs(a, k, cfg.dim)
                    rep = observables.quadrature_variances(psi)
                    rows.append([k, x, y, a.real, a.imag, rep.var_x, rep.var_p])
                else:
                    psi = _family_state(cfg.family, lab, k, cfg.dim)
                    rep = observables.quadrature_variances(psi)
                    rows.append([k, x, y, rep.var_x, rep.var_p])
    if perelomov:
        cols = ["k", "re_beta", "im_beta", "re_alpha", "im_alpha", "var_x", "var_p"]
    else:
        cols = ["k", "re_alpha", "im_alpha", "var_x", "var_p"]
    meta = {"family": cfg.family, "step": step, "label_radius_max": rmax, "variance_of": "x=(a+a^dag)/sqrt2"}
    return render_table("squeeze", meta, cols, rows, cfg.fmt), EXIT_OK


def _family_state(family: str, alpha: complex, k: float, dim: int | None) -> np.ndarray:
    if family == "coherent":
        return states.coherent_state(alpha, dim)
    if family == "phase":
        return states.phase_state(alpha, dim)
    return states.make_state(states.StateLabel(family, alpha, k), dim)


def cmd_wigner(cfg: RunConfig) -> tuple[str, int]:
    k = _single_k(cfg)
    psi = _family_state(cfg.family, complex(cfg.alpha), k, cfg.dim)
    grid = observables.wigner_grid(
        psi,
        cfg.alpha_re_range or (-6.0, 6.0),
        cfg.alpha_im_range or (-6.0, 6.0),
        cfg.step or 0.05,
    )
    meta = {
        "family": cfg.family,
        "alpha": _complex_str(complex(cfg.alpha)),
        "k": k,
        "dim": psi.size,
        "step": grid.step,
        "min_W": grid.minimum(),
        "integral": grid.integral(),
    }
    rows = [[x, y, grid.values[i, j]] for i, y in enumerate(grid.im) for j, x in enumerate(grid.re)]
    return render_table("wigner", meta, ["re_z", "im_z", "W"], rows, cfg.fmt), EXIT_OK


# --- verify -----------------------------------------------------------------


def _record(check: str, k, residual, tol, status: str | None = None, **params) -> dict:
    if status is None:
        status = "PASS" if residual <= tol else "FAIL"
    rec = {"check": check, "k": k, "residual": residual, "tol": tol, "status": status}
    rec.update(params)
    return rec


def _from_report(rep: algebra.CertificationReport, **params) -> dict:
    return _record(rep.name, rep.k, rep.residual, rep.tol, dim=rep.dim, block=rep.block, **params)


def run_verify(cfg: RunConfig) -> list[dict]:
    tol = cfg.tolerances
    dim = cfg.dim or 60
    out: list[dict] = []
    for k in cfg.k_list:
        out.append(_from_report(algebra.verify_commutators(k, dim, tol.get("commutator", 1e-10))))
        out.append(_from_report(algebra.casimir_check(k, dim, tol.get("casimir", 1e-12))))
        out.append(_from_report(algebra.verify_w3_realization(k, dim)))
        for rep in ("algebraic", "group"):
            out.append(_from_report(algebra.differential_rep_commutators(k, rep, 24)))
            res = max(algebra.differential_rep_check(k, rep, m, 24).residual for m in range(22))
            out.append(_record(f"differential_rep_{rep}", k, res, 1e-12, order=24))

    eig_tol = tol.get("eigen", 1e-10)
    for k in cfg.k_list:
        res_a = 0.0
        res_b = 0.0
        # truncation leaves a residual of |alpha c_{D-1}|; D = EIGEN_DIM makes it negligible
        ctx = fock.make_context(k, EIGEN_DIM)
        for r in (0.5, 1.0, 1.5, 2.0, 2.5):
            a = r * cmath.exp(0.7j)
            psi = states.algebraic_cs(a, k, EIGEN_DIM)
            res_a = max(res_a, float(np.linalg.norm(ctx.Am @ psi - a * psi)))
            if k * r * r <= 0.9:
                phi = states.bminus_eigenstate(a, k, EIGEN_DIM)
                res_b = max(res_b, float(np.linalg.norm(ctx.Bm @ phi - a * phi)))
        out.append(_record("eigen_A_minus", k, res_a, eig_tol, dim=EIGEN_DIM))
        out.append(_record("eigen_B_minus", k, res_b, eig_tol, dim=EIGEN_DIM))
        out.append(_record("nonunitary_deformation", k, states.nonunitary_deformation_check(1.0, k), 1e-8))

    for k in cfg.k_list:
        for a in (0.5, 1.2 * cmath.exp(1j * math.pi / 3)):
            rep = algebra.verify_disentanglement(a, k, 120, 20, tol.get("disentangle", 1e-8))
            out.append(_from_report(rep, alpha=_complex_str(a)))

    mom_tol = tol.get("moment", 1e-8)
    id_tol = tol.get("identity", 1e-6)
    for k in cfg.k_list:
        if k == 0.0:
            out.append(_record("moments", k, None, mom_tol, "SKIP", reason="radial weight defined for 0 < k <= 1"))
            out.append(_record("identity_algebraic", k, None, id_tol, "SKIP", reason="radial weight defined for 0 < k <= 1"))
        else:
            err = max(measure.moment_check(k, n).relative_error for n in range(11))
            out.append(_record("moments", k, err, mom_tol, n_max=10))
            R = measure.identity_resolution_algebraic(k, 44)
            out.append(_record("identity_algebraic_diag", k, float(np.max(np.abs(np.diag(R)[:11] - 1))), id_tol, n_max=10))
            out.append(_record("identity_algebraic_offdiag", k, float(np.max(np.abs(R - np.diag(np.diag(R))))), 1e-8))
        if 0.0 < k < 1.0:
            R = measure.identity_resolution_perelomov(k, 44)
            out.append(_record("identity_perelomov_diag", k, float(np.max(np.abs(np.diag(R)[:11] - 1))), id_tol, n_max=10))
            out.append(_record("identity_perelomov_offdiag", k, float(np.max(np.abs(R - np.diag(np.diag(R))))), 1e-8))
        else:
            out.append(
                _record("identity_perelomov", k, None, id_tol, "SKIP", reason="disk measure needs 0 < k < 1 (prefactor 1-k)")
            )
    if cfg.diagnostic:
        out.extend(_diagnostics(cfg))
    return out


def _diagnostics(cfg: RunConfig) -> list[dict]:
    """Printed forms that do not survive the checks; reported, never counted."""
    out = []
    n = np.arange(11)
    for k in cfg.k_list:
        if 0.0 < k < 1.0:
            R1 = measure.identity_resolution_perelomov(k, 44, exponent=1)
            d = np.diag(R1).real[:11]
            out.append(
                _record(
                    "printed_perelomov_measure",
                    k,
                    float(np.max(np.abs(d - 1))),
                    1e-6,
                    diagnostic=True,
                    profile_vs_1_over_1_plus_kn=float(np.max(np.abs(d / d[0] * (1 + k * n) - 1))),
                    diagonal=[float(v) for v in d],
                )
            )
        if 0.0 < k <= 1.0:
            err = max(measure.moment_check(k, m, printed_weight=True).relative_error for m in range(11))
            out.append(_record("printed_radial_weight", k, err, 1e-8, diagnostic=True))
    z = np.array([0.3 + 0.2j, 1.0 + 0.5j, 1.5, -0.5 + 0.8j, 2.0 - 0.4j])
    psi = states.algebraic_cs(2.5, 0.5)
    cmp = observables.wigner_printed_form_comparison(2.5, 0.5, z, psi)
    out.append(
        _record(
            "printed_wigner_series",
            0.5,
            abs(cmp["raw_ratio_max"] - 1.0),
            1e-8,
            diagnostic=True,
            fitted_constant_after_gaussian_fix=cmp["fitted_constant"],
            residual_after_fix=cmp["residual"],
        )
    )
    return out


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    checks = run_verify(cfg)
    failed = [c for c in checks if c["status"] == "FAIL" and not c.get("diagnostic")]
    code = EXIT_VERIFY_FAILED if failed else EXIT_OK
    summary = {"n_checks": len(checks), "n_failed": len(failed), "dim": cfg.dim or 60}
    if cfg.fmt == "json":
        return _json({"command": "verify", "meta": summary, "checks": checks}) + "\n", code
    cols = ["check", "k", "residual", "tol", "status"]
    rows = [[c["check"], c["k"], c["residual"], c["tol"], c["status"]] for c in checks]
    return render_table("verify", summary, cols, rows, "csv"), code


COMMANDS = {
    "state": cmd_state,
    "qsurface": cmd_qsurface,
    "squeeze": cmd_squeeze,
    "wigner": cmd_wigner,
    "verify": cmd_verify,
}


# --- argument parsing -------------------------------------------------------


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _range(text: str) -> tuple[float, float]:
    vals = _float_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError("expected LO,HI")
    return vals[0], vals[1]


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="interpcs", description="Interpolating coherent states toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--family", default="algebraic", choices=states.FAMILIES)
        p.add_argument("--k", type=_float_list, default=None, help="comma-separated k values")
        p.add_argument("--alpha", type=_complex, default=None, help="state label, e.g. 1.2+0.5j")
        p.add_argument("--alpha-re-range", type=_range, default=None, metavar="LO,HI")
        p.add_argument("--alpha-im-range", type=_range, default=None, metavar="LO,HI")
        p.add_argument("--step", type=float, default=None)
        p.add_argument("--dim", type=int, default=None)
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="json" if name == "verify" else "csv")
        p.add_argument("--out", default=None)
        p.add_argument("--tol-commutator", type=float, default=None)
        p.add_argument("--tol-casimir", type=float, default=None)
        p.add_argument("--tol-eigen", type=float, default=None)
        p.add_argument("--tol-disentangle", type=float, default=None)
        p.add_argument("--tol-moment", type=float, default=None)
        p.add_argument("--tol-identity", type=float, default=None)
        p.add_argument("--diagnostic-paper-forms", dest="diagnostic", action="store_true")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    defaults = {
        "state": ((1.0,), 1.0),
        "qsurface": (DEFAULT_K_LIST, None),
        "squeeze": (DEFAULT_K_LIST, None),
        "wigner": ((0.5,), 2.5),
        "verify": (VERIFY_K_LIST, None),
    }
    k_default, alpha_default = defaults[ns.command]
    tols = {
        key: getattr(ns, f"tol_{key}")
        for key in ("commutator", "casimir", "eigen", "disentangle", "moment", "identity")
        if getattr(ns, f"tol_{key}") is not None
    }
    cfg = RunConfig(
        command=ns.command,
        family=ns.family,
        k_list=ns.k if ns.k is not None else k_default,
        alpha=ns.alpha if ns.alpha is not None else (alpha_default or 0.0),
        alpha_re_range=ns.alpha_re_range,
        alpha_im_range=ns.alpha_im_range,
        step=ns.step,
        dim=ns.dim,
        fmt=ns.fmt,
        out=ns.out,
        tolerances=tols,
        diagnostic=ns.diagnostic,
    )
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        text, code = COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"interpcs: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (states.TruncationError, ArithmeticError, OverflowError, np.linalg.LinAlgError) as exc:
        print(f"interpcs: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"interpcs: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
