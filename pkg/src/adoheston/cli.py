"""Command-line front end: TOML configs in, CSV/JSON tables out.

Every command is deterministic given its config and seed, and writes
17-significant-digit floats with LF line endings so reruns are
byte-identical.  Exit codes: 0 on success, 2 on validation/usage errors,
3 on numerical failures.
"""

from __future__ import annotations

import functools
import json
import math
import sys

import click
import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .charfn import ModelParams, bs_cf
from .errors import NumericalError, ValidationError
from .fit import fit_a_of_H, fit_power_law, fit_shared_exponent
from .kernels import hurst_constants
from .pricing import FftGrid, FwdStartSpec, carr_madan_forward_call, mc_forward_cf
from .sim import (
    ConstZeta,
    LinearZeta,
    drift_ode_path,
    path_table,
    power_graded_grid,
    simulate_q,
)
from .skew import QuadratureConfig, atm_skew, atm_skew_forward, atm_skew_upper_bound, skew_curve

_DEFAULT_H_GRID = (0.1, 0.2, 0.3, 0.4, 0.47, 0.5)


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _load_config(path):
    if path is None:
        return {}
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _model_from(cfg: dict, H: float) -> ModelParams:
    m = cfg.get("model", {})
    I = float(m.get("I", 0.5))
    return ModelParams(
        hp=hurst_constants(H),
        kappa=float(m.get("kappa", 1.0)),
        xi=float(m.get("xi", 0.01)),
        rho=float(m.get("rho", 0.7)),
        zeta=float(m.get("zeta", 100.0)),
        I=I,
        eps=float(m.get("eps", 0.0)),
        v0=float(m.get("v0", I * I)),
        V0=float(m.get("V0", 200.0)),
        F0=float(m.get("F0", 1.0)),
        r=float(m.get("r", 0.0)),
        delta=float(m.get("delta", 0.0)),
    )


def _T_grid(cfg: dict, t_min, t_max, n_t):
    t_min = float(t_min if t_min is not None else cfg.get("T_min", 0.001))
    t_max = float(t_max if t_max is not None else cfg.get("T_max", 0.3))
    n_t = int(n_t if n_t is not None else cfg.get("n_T", 50))
    if n_t < 1:
        raise ValidationError("need at least one maturity point")
    if not 0 < t_min < t_max:
        raise ValidationError("need 0 < T_min < T_max")
    if cfg.get("spacing", "log") == "log":
        return np.geomspace(t_min, t_max, n_t)
    return np.linspace(t_min, t_max, n_t)


def _H_list(cfg: dict, H_flag) -> list:
    if H_flag:
        return [float(h) for h in H_flag]
    return [float(h) for h in cfg.get("H_grid", _DEFAULT_H_GRID)]


def _write(out: str, text: str):
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _guarded(fn):
    """Map library errors to the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValidationError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except NumericalError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)

    return wrapper


def _common_options(fn):
    fn = click.option("--config", type=click.Path(exists=True, dir_okay=False),
                      default=None, help="TOML config file; flags override it.")(fn)
    fn = click.option("--out", default="-", show_default=True,
                      help="Output path ('-' for stdout).")(fn)
    fn = click.option("--seed", type=int, default=None,
                      help="RNG seed override (commands that simulate).")(fn)
    fn = click.option("--threads", type=int, default=1, show_default=True,
                      help="Worker threads; accepted for compatibility, current "
                           "implementation is single-process.")(fn)
    return fn


@click.group()
def main():
    """ATM-skew asymptotics, power-law fits, simulation, and FFT pricing."""


@main.command("skew-curve")
@_common_options
@click.option("--t-min", type=float, default=None, help="Smallest maturity.")
@click.option("--t-max", type=float, default=None, help="Largest maturity.")
@click.option("--n-t", type=int, default=None, help="Number of maturities.")
@click.option("--hurst", "-H", "h_values", type=float, multiple=True,
              help="Hurst exponent(s); repeatable. Default grid: 0.1 … 0.5.")
@_guarded
def cmd_skew_curve(config, out, seed, threads, t_min, t_max, n_t, h_values):
    """Skew and its analytic bound on a (H, T) grid. CSV: H,T,skew,upper_bound."""
    cfg = _load_config(config)
    Ts = _T_grid(cfg, t_min, t_max, n_t)
    lines = ["H,T,skew,upper_bound"]
    for H in _H_list(cfg, h_values):
        mp = _model_from(cfg, H)
        curve = skew_curve(Ts, mp, QuadratureConfig())
        for T, s in curve.points:
            ub = atm_skew_upper_bound(T, mp)
            lines.append(f"{_fmt(H)},{_fmt(T)},{_fmt(s)},{_fmt(ub)}")
    _write(out, "\n".join(lines) + "\n")


@main.command("skew-bound")
@_common_options
@click.option("--t-min", type=float, default=None, help="Smallest maturity.")
@click.option("--t-max", type=float, default=None, help="Largest maturity.")
@click.option("--n-t", type=int, default=None, help="Number of maturities.")
@click.option("--hurst", "-H", "h_values", type=float, multiple=True,
              help="Hurst exponent(s); repeatable.")
@_guarded
def cmd_skew_bound(config, out, seed, threads, t_min, t_max, n_t, h_values):
    """Analytic skew bound only. CSV: H,T,upper_bound."""
    cfg = _load_config(config)
    Ts = _T_grid(cfg, t_min, t_max, n_t)
    lines = ["H,T,upper_bound"]
    for H in _H_list(cfg, h_values):
        mp = _model_from(cfg, H)
        for T in Ts:
            lines.append(f"{_fmt(H)},{_fmt(T)},{_fmt(atm_skew_upper_bound(T, mp))}")
    _write(out, "\n".join(lines) + "\n")


@main.command("fit")
@_common_options
@click.option("--t-min", type=float, default=None, help="Smallest maturity.")
@click.option("--t-max", type=float, default=None, help="Largest maturity.")
@click.option("--n-t", type=int, default=None, help="Number of maturities.")
@click.option("--hurst", "-H", "h_values", type=float, multiple=True,
              help="Hurst exponent(s); repeatable.")
@_guarded
def cmd_fit(config, out, seed, threads, t_min, t_max, n_t, h_values):
    """Power-law fits of the skew curves. JSON: per_H, pooled_b, aH_fit."""
    cfg = _load_config(config)
    Ts = _T_grid(cfg, t_min, t_max, n_t)
    q = QuadratureConfig()
    curves = [skew_curve(Ts, _model_from(cfg, H), q) for H in _H_list(cfg, h_values)]
    fits = [fit_power_law(c) for c in curves]
    pooled = [c for c in curves if c.H != 0.5]
    if len(pooled) >= 2:
        pooled_b, _ = fit_shared_exponent(pooled)
    else:
        pooled_b = None
    c0, c1 = fit_a_of_H(fits)
    doc = {
        "per_H": [
            {"H": f.H, "a": f.a, "b_scaled": f.b_scaled, "rss": f.rss} for f in fits
        ],
        "pooled_b": pooled_b,
        "aH_fit": {"c0": c0, "c1": c1},
    }
    _write(out, json.dumps(doc, indent=2, sort_keys=True) + "\n")


@main.command("fwd-skew")
@_common_options
@click.option("--maturity", "-T", "T", type=float, default=None, help="Contract maturity.")
@click.option("--start", "-s", "s_values", type=float, multiple=True,
              help="Determination date(s); repeatable.")
@click.option("--hurst", "-H", "h_values", type=float, multiple=True,
              help="Hurst exponent(s); repeatable.")
@_guarded
def cmd_fwd_skew(config, out, seed, threads, T, s_values, h_values):
    """Forward-start ATM skew. CSV: H,s,Tbar,skew."""
    cfg = _load_config(config)
    T = float(T if T is not None else cfg.get("T", 1.0))
    s_list = [float(s) for s in (s_values or cfg.get("s_grid", (0.0, 0.25, 0.5)))]
    q = QuadratureConfig()
    lines = ["H,s,Tbar,skew"]
    for H in _H_list(cfg, h_values):
        mp = _model_from(cfg, H)
        for s in s_list:
            val = atm_skew_forward(s, T, mp, q)
            lines.append(f"{_fmt(H)},{_fmt(s)},{_fmt(T - s)},{_fmt(val)}")
    _write(out, "\n".join(lines) + "\n")


@main.command("drift-path")
@_common_options
@click.option("--hurst", "-H", "H", type=float, default=None, help="Hurst exponent.")
@click.option("--alpha", type=float, default=None, help="Feedback gain in zeta(h) = alpha*h.")
@click.option("--maturity", "-T", "T", type=float, default=None, help="Horizon.")
@click.option("--n-steps", type=int, default=None, help="Grid points.")
@_guarded
def cmd_drift_path(config, out, seed, threads, H, alpha, T, n_steps):
    """Deterministic (v, V) drift path on a power-graded grid. CSV: t,v,V."""
    cfg = _load_config(config)
    H = float(H if H is not None else cfg.get("H", 0.1))
    alpha = float(alpha if alpha is not None else cfg.get("alpha", 0.1))
    T = float(T if T is not None else cfg.get("T", 1.0))
    n = int(n_steps if n_steps is not None else cfg.get("n_steps", 4000))
    dcfg = dict(cfg)
    dcfg.setdefault("model", {})
    dcfg["model"].setdefault("v0", 0.5)
    mp = _model_from(dcfg, H)
    grid = power_graded_grid(T, n, H)
    v_path, V_path = drift_ode_path(mp, alpha, grid)
    lines = ["t,v,V"]
    for t, v, V in zip(grid, v_path, V_path):
        lines.append(f"{_fmt(t)},{_fmt(v)},{_fmt(V)}")
    _write(out, "\n".join(lines) + "\n")


@main.command("simulate")
@_common_options
@click.option("--hurst", "-H", "H", type=float, default=None, help="Hurst exponent.")
@click.option("--n-paths", type=int, default=None, help="Monte-Carlo paths.")
@click.option("--n-steps", type=int, default=None, help="Euler steps.")
@click.option("--maturity", "-T", "T", type=float, default=None, help="Horizon.")
@click.option("--zeta-mode", type=click.Choice(["const", "linear"]), default=None,
              help="Constant zeta or linear feedback zeta(h) = alpha*h.")
@_guarded
def cmd_simulate(config, out, seed, threads, H, n_paths, n_steps, T, zeta_mode):
    """Euler–Maruyama paths of (F, v, V, h). CSV: path,t,F,v,V,h."""
    cfg = _load_config(config)
    H = float(H if H is not None else cfg.get("H", 0.2))
    n_paths = int(n_paths if n_paths is not None else cfg.get("n_paths", 100))
    n_steps = int(n_steps if n_steps is not None else cfg.get("n_steps", 250))
    T = float(T if T is not None else cfg.get("T", 1.0))
    seed = int(seed if seed is not None else cfg.get("seed", 12345))
    mode_name = zeta_mode or cfg.get("zeta_mode", "const")
    mp = _model_from(cfg, H)
    if mode_name == "const":
        mode = ConstZeta(float(cfg.get("zeta_const", mp.zeta)))
    else:
        mode = LinearZeta(float(cfg.get("alpha", 0.1)))
    ps = simulate_q(mp, mode, n_paths, n_steps, T, seed)
    rows = path_table(ps)
    lines = ["path,t,F,v,V,h"]
    for row in rows:
        lines.append(
            f"{int(row[0])},{_fmt(row[1])},{_fmt(row[2])},{_fmt(row[3])},"
            f"{_fmt(row[4])},{_fmt(row[5])}"
        )
    _write(out, "\n".join(lines) + "\n")


@main.command("price-fwd")
@_common_options
@click.option("--start", "-s", "s", type=float, default=None, help="Determination date.")
@click.option("--maturity", "-T", "T", type=float, default=None, help="Maturity.")
@click.option("--k-min", type=float, default=None, help="Smallest strike.")
@click.option("--k-max", type=float, default=None, help="Largest strike.")
@click.option("--n-k", type=int, default=None, help="Number of strikes.")
@click.option("--cf", "cf_kind", type=click.Choice(["bs", "model"]), default=None,
              help="Forward CF: lognormal oracle (bs) or MC-averaged model CF.")
@_guarded
def cmd_price_fwd(config, out, seed, threads, s, T, k_min, k_max, n_k, cf_kind):
    """Forward-start call prices by Carr–Madan FFT. CSV: K,price."""
    cfg = _load_config(config)
    s = float(s if s is not None else cfg.get("s", 0.0))
    T = float(T if T is not None else cfg.get("T", 0.75))
    k_min = float(k_min if k_min is not None else cfg.get("K_min", 0.5))
    k_max = float(k_max if k_max is not None else cfg.get("K_max", 2.0))
    n_k = int(n_k if n_k is not None else cfg.get("n_K", 21))
    cf_kind = cf_kind or cfg.get("cf", "bs")
    if n_k < 1:
        raise ValidationError("need at least one strike")
    if not 0 < k_min <= k_max:
        raise ValidationError("need 0 < K_min <= K_max")
    g = cfg.get("fft", {})
    grid = FftGrid(
        n=int(g.get("n", 4096)), eta=float(g.get("eta", 0.25)), alpha=float(g.get("alpha", 1.5))
    )
    H = float(cfg.get("H", 0.2))
    mp = _model_from(cfg, H)
    tau = T - s
    if tau <= 0:
        raise ValidationError("need T > s")
    if cf_kind == "bs":
        cf = lambda z: bs_cf(z, tau, mp.r, mp.delta, mp.I)
    else:
        n_paths = int(cfg.get("n_paths", 2000))
        n_steps = int(cfg.get("n_steps", 128))
        seed = int(seed if seed is not None else cfg.get("seed", 12345))
        mode = LinearZeta(float(cfg.get("alpha", 0.1))) if cfg.get("zeta_mode") == "linear" \
            else ConstZeta(float(cfg.get("zeta_const", mp.zeta)))
        ps = simulate_q(mp, mode, n_paths, n_steps, T, seed)
        cf = mc_forward_cf(ps, mp, s, T)
    Ks = np.linspace(k_min, k_max, n_k)
    lines = ["K,price"]
    for K in Ks:
        spec = FwdStartSpec(s=s, T=T, K=float(K), r=mp.r, delta=mp.delta)
        lines.append(f"{_fmt(K)},{_fmt(carr_madan_forward_call(spec, cf, grid))}")
    _write(out, "\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
