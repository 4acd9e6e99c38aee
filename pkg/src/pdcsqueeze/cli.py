"""Command-line front end: figure-grade CSV tables and the validation suite.

Subcommands
-----------
``spectrum``    squeezing spectrum and continuous angle over a mismatch grid
``homodyne``    normalised photocurrent noise spectrum over a mismatch grid
``gain-sweep``  degree of squeezing against the gain exponent at fixed mismatch
``taylor``      small-gain Taylor coefficients against the closed-form tables
``validate``    run the oracle cross-check suite (quick or full)

All numeric output is deterministic: floats are written with 17 significant
digits, ``\n`` line endings and UTF-8 encoding, so identical configurations
produce byte-identical files.  Exit status: 0 success, 1 usage error,
2 validation failure.

Options may also be supplied through ``--config FILE`` holding flat
``key=value`` lines (keys are the long flag names with underscores);
explicit flags override file values.
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings
from dataclasses import dataclass

import numpy as np

from . import analysis as _analysis
from . import homodyne as _homodyne
from . import magnus as _magnus
from . import oracle as _oracle
from . import pdc_exact as _exact
from . import specfun as _specfun
from . import symplectic_bm as _sym

__all__ = ["RunConfig", "main", "console_main",
           "cmd_spectrum", "cmd_homodyne", "cmd_gain_sweep", "cmd_taylor", "cmd_validate"]

_ALL_SOLUTIONS = ("exact", "ma1", "ma2", "ma3")
_DEF_THETA_MIN = -4.0 * np.pi
_DEF_THETA_MAX = 4.0 * np.pi
_DEF_THETA_POINTS = 2001


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration of one figure-style run."""

    g: float
    phi: float = 0.0
    theta_min: float = _DEF_THETA_MIN
    theta_max: float = _DEF_THETA_MAX
    theta_points: int = _DEF_THETA_POINTS
    solutions: tuple[str, ...] = _ALL_SOLUTIONS
    output_path: str = "out.csv"

    def __post_init__(self):
        if self.theta_points < 2:
            raise ValueError(f"theta_points must be >= 2, got {self.theta_points}")
        if not self.theta_min < self.theta_max:
            raise ValueError("theta_min must be < theta_max")
        if self.g < 0:
            raise ValueError("gain exponent g must be >= 0")
        bad = [s for s in self.solutions if s not in _ALL_SOLUTIONS]
        if bad:
            raise ValueError(f"unknown solutions {bad}; choose from {_ALL_SOLUTIONS}")
        if not self.solutions:
            raise ValueError("at least one solution must be requested")
        if self.g >= np.pi:
            warnings.warn("g >= pi: the Magnus expansion is not guaranteed to converge",
                          stacklevel=2)

    def theta_grid(self) -> np.ndarray:
        return np.linspace(self.theta_min, self.theta_max, self.theta_points)


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def _write_csv(path: str, header: list[str], columns: list[np.ndarray]):
    n = len(columns[0])
    lines = [",".join(header)]
    for i in range(n):
        lines.append(",".join(_fmt(col[i]) for col in columns))
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as e:
        raise UsageError(f"cannot write output file {path!r}: {e}") from e


class UsageError(Exception):
    """Bad configuration or unusable output path (exit status 1)."""


def _ordered_solutions(requested) -> tuple[str, ...]:
    return tuple(s for s in _ALL_SOLUTIONS if s in requested)


def cmd_spectrum(cfg: RunConfig) -> None:
    """Write theta, per-solution (s, unwrapped psi) columns, and the gray-band marker."""
    thetas = cfg.theta_grid()
    pump = _exact.PumpCrystalConfig(g=cfg.g, phi=cfg.phi)
    header = ["theta"]
    cols: list[np.ndarray] = [thetas]
    for sol in _ordered_solutions(cfg.solutions):
        s, psi = _analysis.spectrum_curve(sol, pump, thetas)
        header += [f"s_{sol}", f"psi_{sol}"]
        cols += [s, psi]
    header.append("gamma_real")
    cols.append(_exact.gamma_is_real(cfg.g, thetas).astype(int))
    _write_csv(cfg.output_path, header, cols)


def cmd_homodyne(cfg: RunConfig, lock: bool = True, beta: float = 0.0) -> None:
    """Write theta, per-solution noise columns, and the gray-band marker."""
    thetas = cfg.theta_grid()
    pump = _exact.PumpCrystalConfig(g=cfg.g, phi=cfg.phi)
    mode = _homodyne.LockMode.LOCK_AT_THETA_ZERO if lock else _homodyne.LockMode.FIXED_BETA
    hcfg = _homodyne.HomodyneConfig(beta=beta, lock_mode=mode)
    header = ["theta"]
    cols: list[np.ndarray] = [thetas]
    for sol in _ordered_solutions(cfg.solutions):
        noise = _homodyne.noise_spectrum_curve(sol, pump, thetas, hcfg)
        header.append(f"noise_{sol}")
        cols.append(noise)
    header.append("gamma_real")
    cols.append(_exact.gamma_is_real(cfg.g, thetas).astype(int))
    _write_csv(cfg.output_path, header, cols)


def cmd_gain_sweep(theta_fixed: float, g_min: float, g_max: float, g_points: int,
                   solutions, phi: float, output_path: str) -> None:
    """Write g, per-solution r(g) columns, and the gray-band marker."""
    if g_points < 2:
        raise UsageError("g_points must be >= 2")
    if not 0 <= g_min < g_max:
        raise UsageError("need 0 <= g_min < g_max")
    g_grid = np.linspace(g_min, g_max, g_points)
    sweep = _analysis.gain_sweep(theta_fixed, g_grid, _ordered_solutions(solutions), phi=phi)
    header = ["g"]
    cols: list[np.ndarray] = [g_grid]
    for sol in _ordered_solutions(solutions):
        header.append(f"r_{sol}")
        cols.append(sweep.curves[sol])
    header.append("gamma_real")
    cols.append((np.abs(theta_fixed) < g_grid).astype(int))
    _write_csv(output_path, header, cols)


def cmd_taylor(theta: float, parameter: str, max_order: int | None = None,
               phi: float = 0.0, out=None) -> None:
    """Print the per-solution Taylor coefficients next to the table references."""
    out = sys.stdout if out is None else out
    if max_order is None:
        max_order = 4 if parameter == "r" else 3
    reports = {sol: _analysis.taylor_extract(parameter, sol, theta, max_order, phi=phi)
               for sol in _ALL_SOLUTIONS}
    orders = reports["exact"].orders
    print(f"Taylor coefficients of {parameter} at theta={_fmt(theta)}, phi={_fmt(phi)} "
          f"(coefficient of g^k/k!)", file=out)
    head = f"{'k':>2} " + " ".join(f"{s:>12} {'(ref)':>12}" for s in _ALL_SOLUTIONS)
    print(head, file=out)
    for k in orders:
        cells = []
        for sol in _ALL_SOLUTIONS:
            rep = reports[sol]
            cells.append(f"{rep.estimates[k]:>12.6g} {rep.references[k]:>12.6g}")
        print(f"{k:>2} " + " ".join(cells), file=out)
    worst = max(abs(reports[s].estimates[k] - reports[s].references[k])
                for s in _ALL_SOLUTIONS for k in orders)
    print(f"max |estimate - reference| = {worst:.3e}", file=out)


# ---------------------------------------------------------------------------
# validation suite


def _check_specfun_identity(level):
    u = np.linspace(-100.0, 100.0, 4001)
    pair = _specfun.entire_cosh_sinhc(u)
    d = pair.identity_defect(u)
    return d < 1e-12, f"normalised |c^2 - u s^2 - 1| = {d:.2e}"


def _check_specfun_branches(level):
    worst = abs(_specfun.sinc(1e-3 * (1 - 1e-12)) - _specfun.sinc(1e-3 * (1 + 1e-12)))
    for m, thr in ((1, 0.03), (2, 0.12)):
        worst = max(worst, abs(_specfun.sph_bessel(m, thr * (1 - 1e-12))
                               - _specfun.sph_bessel(m, thr * (1 + 1e-12))))
    return worst < 1e-13, f"max step across a series threshold = {worst:.2e}"


def _grids(level):
    n = 100 if level == "full" else 12
    return np.linspace(0.0, np.pi, n), np.linspace(_DEF_THETA_MIN, _DEF_THETA_MAX, n)


def _check_exact_vs_rk4(level):
    gs, ths = _grids(level)
    G, T = np.meshgrid(gs, ths, indexing="ij")
    t0 = time.time()
    S_ode = _oracle.ode_propagate_grid(G.ravel(), T.ravel())
    worst = 0.0
    for i, g in enumerate(gs):
        pump = _exact.PumpCrystalConfig(g=float(g))
        A, B = _exact.exact_AB(pump, ths)
        St = _sym.build_s_tilde(A * np.exp(-1j * ths), B * np.exp(-1j * ths),
                                np.zeros_like(ths))
        for j in range(ths.size):
            phi_m = _sym.phase_matrix(ths[j], 0.0)
            worst = max(worst, float(np.max(np.abs(St[j] - phi_m @ S_ode[i * ths.size + j]))))
    return worst < 1e-8, (f"max entry diff = {worst:.2e} on {gs.size}x{ths.size} grid "
                          f"({time.time() - t0:.1f}s)")


def _check_symplecticity(level):
    gs, ths = _grids(level)
    worst = 0.0
    for g in gs:
        pump = _exact.PumpCrystalConfig(g=float(g))
        A, B = _exact.exact_AB(pump, ths)
        worst = max(worst, _sym.check_symplectic(
            _sym.build_s_tilde(A * np.exp(-1j * ths), B * np.exp(-1j * ths),
                               np.zeros_like(ths))))
        for k in (1, 2, 3):
            d = _magnus.magnus_params_grid(k, pump, ths)
            St = _sym.build_s_tilde(
                np.exp(1j * (d["psi_L"] - d["psi_0"])) * np.cosh(d["r"]),
                np.exp(1j * (d["psi_L"] + d["psi_0"])) * np.sinh(d["r"]),
                d["kappa"])
            worst = max(worst, _sym.check_symplectic(St))
    return worst < 1e-12, f"max residual = {worst:.2e} (exact + 3 orders)"


def _check_bloch_messiah(level):
    rng = np.random.default_rng(20260810)
    n_bm = 1000 if level == "full" else 200
    worst_rec, worst_r = 0.0, 0.0
    for _ in range(n_bm):
        p = _exact.SqueezingParams(
            r=float(rng.uniform(0, np.pi)),
            psi_L=float(rng.uniform(-np.pi, np.pi)),
            psi_0=float(rng.uniform(-np.pi, np.pi)),
            kappa=float(rng.uniform(-np.pi, np.pi)),
        )
        St = _sym.assemble_S_tilde(p)
        f = _sym.bloch_messiah(p)
        worst_rec = max(worst_rec, float(np.max(np.abs(_sym.bm_reconstruct(f) - St.m))))
        worst_r = max(worst_r, abs(_oracle.bloch_messiah_numeric(St).r - p.r))
    ok = worst_rec < 1e-10 and worst_r < 1e-8
    return ok, f"recon = {worst_rec:.2e}, |r_svd - r| = {worst_r:.2e} over {n_bm} sets"


def _magnus_points(level):
    rng = np.random.default_rng(1234)
    pts = 10 if level == "full" else 3
    return list(zip(rng.uniform(0.3, 2.9, pts), rng.uniform(-2.5, 2.5, pts)))


def _check_magnus_quadrature(level):
    worst = 0.0
    pts = _magnus_points(level)
    for g, th in pts:
        pump = _exact.PumpCrystalConfig(g=float(g), phi=0.2)
        for k in (1, 2, 3):
            q = _oracle.magnus_term_quadrature(k, pump, float(th), panels=32)
            worst = max(worst, float(np.max(np.abs(q - _magnus.magnus_term(k, pump, float(th))))))
    return worst < 1e-9, f"max entry diff = {worst:.2e} at {len(pts)} points, k=1..3"


def _check_magnus_expm(level):
    worst = 0.0
    for g, th in _magnus_points(level):
        pump = _exact.PumpCrystalConfig(g=float(g), phi=0.2)
        for k in (1, 2, 3):
            gen = sum(_magnus.magnus_term(j, pump, float(th)) for j in range(1, k + 1))
            ref = _sym.phase_matrix(float(th), 0.3) @ _oracle.expm_numeric(gen)
            st = _magnus.magnus_S_tilde(k, pump, float(th), 0.3).m
            worst = max(worst, float(np.max(np.abs(st - ref))))
    return worst < 1e-10, f"max entry diff vs generic exponential = {worst:.2e}"


def _check_db_pairs(level):
    pairs = [(1.84, 16.0), (0.7, 6.0), (1.15, 10.0), (1.44, 12.5), (np.pi, 27.0)]
    worst = max(abs(_analysis.squeezing_db(g) - db) for g, db in pairs)
    return worst < 0.4, f"max |dB - quoted| = {worst:.3f} over 5 pairs"


def _check_first_zeros(level):
    thetas = _analysis.default_theta_grid()
    pump = _exact.PumpCrystalConfig(g=1.84)
    step = thetas[1] - thetas[0]
    e0 = abs(_analysis.first_zero("exact", pump, thetas) - np.sqrt(1.84**2 + np.pi**2))
    e1 = abs(_analysis.first_zero("ma1", pump, thetas) - np.pi)
    ed = abs(_analysis.ultra_high_gain_distance(1.44) - 0.100)
    ok = e0 <= step + 1e-12 and e1 < 1e-9 and ed < 1e-3
    return ok, f"theta0 err = {e0:.2e} (<= step), theta1 err = {e1:.2e}, d(1.44) err = {ed:.2e}"


def _check_homodyne_lock(level):
    worst = 0.0
    for g in (0.7, 1.84):
        pump = _exact.PumpCrystalConfig(g=g)
        hcfg = _homodyne.HomodyneConfig(lock_mode=_homodyne.LockMode.LOCK_AT_THETA_ZERO)
        noise = _homodyne.noise_spectrum_curve("exact", pump, np.asarray([0.0]), hcfg)
        worst = max(worst, abs(float(noise[0]) - np.exp(-2 * g)))
        worst = max(worst, abs(np.exp(-2 * g) * np.exp(2 * g) - 1.0))
    return worst < 1e-12, f"locked noise / min-max product deviation = {worst:.2e}"


def _check_taylor_tables(level):
    th_list = (0.5, 1.0, 2.0) if level == "full" else (1.0,)
    worst = 0.0
    for th in th_list:
        for par, mo in (("r", 4), ("psi_L", 3)):
            for sol in _ALL_SOLUTIONS:
                rep = _analysis.taylor_extract(par, sol, th, mo)
                for k in rep.orders:
                    worst = max(worst, abs(rep.estimates[k] - rep.references[k]))
    return worst < 1e-5, f"max |estimate - table| = {worst:.2e} at theta in {th_list}"


def _check_figure_ordering(level):
    thetas = _analysis.default_theta_grid()
    pump = _exact.PumpCrystalConfig(g=1.84)
    m1 = _analysis.deviation_metrics("exact", "ma1", pump, thetas)
    m2 = _analysis.deviation_metrics("exact", "ma2", pump, thetas)
    m3 = _analysis.deviation_metrics("exact", "ma3", pump, thetas)
    ok = m3["max_abs_s"] < m1["max_abs_s"] and m2["max_abs_psi"] < m1["max_abs_psi"]
    return ok, (f"s: {m3['max_abs_s']:.3f} < {m1['max_abs_s']:.3f}; "
                f"psi: {m2['max_abs_psi']:.3f} < {m1['max_abs_psi']:.3f}")


def _check_order_of_accuracy(level):
    ok = True
    detail = []
    gs_small = np.array([1e-2, 5e-3, 2.5e-3])
    for k in (1, 2, 3):
        errs = []
        for g in gs_small:
            pump = _exact.PumpCrystalConfig(g=float(g))
            A, B = _exact.exact_AB(pump, 1.0)
            St_e = _sym.build_s_tilde(A * np.exp(-1j), B * np.exp(-1j), 0.0)
            errs.append(np.max(np.abs(_magnus.magnus_S_tilde(k, pump, 1.0).m - St_e)))
        slope = np.polyfit(np.log(gs_small), np.log(errs), 1)[0]
        ok &= slope >= k + 1 - 0.1
        detail.append(f"k={k}: {slope:.2f}")
    return ok, "log-log slopes " + ", ".join(detail)


_VALIDATION_CHECKS = [
    ("specfun.entire-identity", _check_specfun_identity),
    ("specfun.branch-agreement", _check_specfun_branches),
    ("exact.vs-rk4-oracle", _check_exact_vs_rk4),
    ("symplectic.residual", _check_symplecticity),
    ("bloch-messiah.reconstruction", _check_bloch_messiah),
    ("magnus.terms-vs-quadrature", _check_magnus_quadrature),
    ("magnus.S-vs-expm", _check_magnus_expm),
    ("db.quoted-pairs", _check_db_pairs),
    ("zeros.first-and-distance", _check_first_zeros),
    ("homodyne.lock", _check_homodyne_lock),
    ("taylor.tables", _check_taylor_tables),
    ("ordering.third-order-closest", _check_figure_ordering),
    ("magnus.order-of-accuracy", _check_order_of_accuracy),
]


def cmd_validate(level: str, out=None) -> int:
    """Run the cross-check suite; returns 0 if every check passes, else 2.

    Each check is isolated: an exception counts as a failure and the
    remaining checks still run.
    """
    out = sys.stdout if out is None else out
    if level not in ("quick", "full"):
        raise UsageError(f"level must be 'quick' or 'full', got {level!r}")
    failures = 0
    for name, fn in _VALIDATION_CHECKS:
        try:
            ok, detail = fn(level)
        except Exception as e:  # a crashed check is a failed check
            ok, detail = False, f"raised {type(e).__name__}: {e}"
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}", file=out)
        failures += 0 if ok else 1
    print(f"{'OK' if failures == 0 else 'FAILED'} "
          f"(level={level}, {failures} failing check(s))", file=out)
    return 0 if failures == 0 else 2


# ---------------------------------------------------------------------------
# argument handling


class _Parser(argparse.ArgumentParser):
    # exit status 1 on usage errors (argparse defaults to 2)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_config_file(path: str) -> dict[str, str]:
    cfg = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for ln, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{ln}: expected key=value, got {line!r}")
                key, _, val = line.partition("=")
                cfg[key.strip()] = val.strip()
    except OSError as e:
        raise UsageError(f"cannot read config file {path!r}: {e}") from e
    return cfg


def _merged(args, key: str, cast, default):
    """Flag value if given, else config-file value, else default."""
    val = getattr(args, key, None)
    if val is not None:
        return val
    filecfg = getattr(args, "_filecfg", {})
    if key in filecfg:
        raw = filecfg[key]
        if cast is bool:
            return raw.lower() in ("1", "true", "yes", "on")
        try:
            return cast(raw)
        except ValueError as e:
            raise UsageError(f"config key {key}={raw!r}: {e}") from e
    return default


def _solutions_arg(raw: str) -> tuple[str, ...]:
    return tuple(s.strip() for s in raw.split(",") if s.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pdcsqueeze",
                     description="Broadband down-conversion squeezing tables and validation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="key=value config file; flags override it")
        p.add_argument("--g", type=float, help="parametric gain exponent (default 1.84)")
        p.add_argument("--phi", type=float, help="pump phase in radians (default 0)")
        p.add_argument("--out", help="output CSV path (default out.csv)")

    def add_grid(p):
        p.add_argument("--theta-min", type=float, dest="theta_min")
        p.add_argument("--theta-max", type=float, dest="theta_max")
        p.add_argument("--theta-points", type=int, dest="theta_points")
        p.add_argument("--solutions", type=_solutions_arg,
                       help="comma list from exact,ma1,ma2,ma3 (default all)")

    p = sub.add_parser("spectrum", help="squeezing spectrum and continuous angle")
    add_common(p)
    add_grid(p)

    p = sub.add_parser("homodyne", help="normalised photocurrent noise spectrum")
    add_common(p)
    add_grid(p)
    p.add_argument("--lock-lo", action="store_const", const=True, dest="lock_lo",
                   help="lock the LO phase at theta = 0 (default)")
    p.add_argument("--beta", type=float, help="fixed LO phase (disables the lock)")

    p = sub.add_parser("gain-sweep", help="degree of squeezing against the gain exponent")
    add_common(p)
    p.add_argument("--theta", type=float, help="fixed mismatch angle (default pi/2)")
    p.add_argument("--g-min", type=float, dest="g_min")
    p.add_argument("--g-max", type=float, dest="g_max")
    p.add_argument("--g-points", type=int, dest="g_points")
    p.add_argument("--solutions", type=_solutions_arg)

    p = sub.add_parser("taylor", help="small-gain Taylor coefficients vs reference tables")
    p.add_argument("--config", help="key=value config file; flags override it")
    p.add_argument("--theta", type=float, help="mismatch angle (default 1.0)")
    p.add_argument("--phi", type=float)
    p.add_argument("--parameter", choices=("r", "psi_L"), help="default r")
    p.add_argument("--max-order", type=int, dest="max_order")

    p = sub.add_parser("validate", help="run the oracle cross-check suite")
    p.add_argument("--config", help="key=value config file; flags override it")
    p.add_argument("--level", choices=("quick", "full"), help="default quick")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        filecfg = _read_config_file(args.config) if getattr(args, "config", None) else {}
        args._filecfg = filecfg

        if args.command == "spectrum" or args.command == "homodyne":
            cfg = RunConfig(
                g=_merged(args, "g", float, 1.84),
                phi=_merged(args, "phi", float, 0.0),
                theta_min=_merged(args, "theta_min", float, _DEF_THETA_MIN),
                theta_max=_merged(args, "theta_max", float, _DEF_THETA_MAX),
                theta_points=_merged(args, "theta_points", int, _DEF_THETA_POINTS),
                solutions=tuple(_merged(args, "solutions", _solutions_arg, _ALL_SOLUTIONS)),
                output_path=_merged(args, "out", str, "out.csv"),
            )
            if args.command == "spectrum":
                cmd_spectrum(cfg)
            else:
                beta = _merged(args, "beta", float, None)
                lock = _merged(args, "lock_lo", bool, beta is None)
                cmd_homodyne(cfg, lock=lock, beta=0.0 if beta is None else beta)
            return 0

        if args.command == "gain-sweep":
            cmd_gain_sweep(
                theta_fixed=_merged(args, "theta", float, np.pi / 2.0),
                g_min=_merged(args, "g_min", float, 0.0),
                g_max=_merged(args, "g_max", float, float(np.pi)),
                g_points=_merged(args, "g_points", int, 501),
                solutions=tuple(_merged(args, "solutions", _solutions_arg, _ALL_SOLUTIONS)),
                phi=_merged(args, "phi", float, 0.0),
                output_path=_merged(args, "out", str, "out.csv"),
            )
            return 0

        if args.command == "taylor":
            cmd_taylor(
                theta=_merged(args, "theta", float, 1.0),
                parameter=_merged(args, "parameter", str, "r"),
                max_order=_merged(args, "max_order", int, None),
                phi=_merged(args, "phi", float, 0.0),
            )
            return 0

        if args.command == "validate":
            return cmd_validate(_merged(args, "level", str, "quick"))

        raise UsageError(f"unknown command {args.command!r}")
    except (UsageError, ValueError) as e:
        print(f"pdcsqueeze: error: {e}", file=sys.stderr)
        return 1


def console_main():  # pragma: no cover - thin wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    console_main()
