"""
Command-line interface for the staggered TL lab.

Usage:
    python -m src.cli spectrum --t 5 --sizes 4,6,8 --output results/spectrum.csv
    python -m src.cli bethe --gamma 0.7853981633974483 --N 4 --state ground
    python -m src.cli partition --Q 2 --tau-grid "1j,0.3+0.8j" --format json
    python -m src.cli tba --t 5 --r-grid 1e-4,1e-2,1,10 --workers 4
    python -m src.cli runs --limit 10

Exit codes: 0 all checks passed, 1 a numerical check failed or a solver gave
up, 2 usage error.
"""

import functools
import logging
import math
import os
import sys
from pathlib import Path

import click
from dotenv import load_dotenv

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.bethe import (
    BetheState,
    bae_residuals,
    bethe_energy,
    solve_bae,
    solve_xxz_bae,
    xxz_energy,
)
from src.cft import TorusPoint, z_ising, z_potts, z_untwisted
from src.config import load_config
from src.exceptions import LabError, ParameterError, SolverError
from src.lattice import Couplings, build_hamiltonian, build_params, get_representation, params_from_Q, params_from_t
from src.reporting import FORMATS, Report
from src.scan import run_grid
from src.spectra import central_charge_fit, diagonalize, exponent_fit, exponent_formulas
from src.spectra.diagonalize import DENSE_LIMIT
from src.storage import Database, RootBaseline, RunRecord
from src.tba import chain_system, solve_tba, twisted_sg_fork, uv_central_charge, uv_dilog_check


# Load environment variables
load_dotenv()

EXIT_FAILED = 1
EXIT_USAGE = 2
MAX_ED_DIMENSION = 100_000

SPECTRUM_COLUMNS = ["t", "N", "sector", "twist", "re", "im"]
FIT_COLUMNS = ["quantity", "t", "sizes", "estimate", "reference"]
BETHE_COLUMNS = ["line", "index", "bethe_integer", "root", "residual"]
PARTITION_COLUMNS = ["quantity", "re_tau", "im_tau", "value"]
TBA_COLUMNS = ["t", "r", "E", "c_eff"]
FORK_COLUMNS = ["n", "r", "E", "c_eff"]


def handle_errors(func):
    """Map lab exceptions onto messages and exit codes."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ParameterError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_USAGE)
        except SolverError as e:
            click.echo(f"Error: {e}", err=True)
            click.echo(f"  residual: {e.residual}, iterations: {e.iterations}", err=True)
            sys.exit(EXIT_FAILED)
        except LabError as e:
            click.echo(f"Error: {type(e).__name__}: {e}", err=True)
            sys.exit(EXIT_FAILED)
    return wrapper


def parse_list(text: str, convert=float, name: str = "list") -> list:
    """Comma-separated values; an empty string gives an empty list."""
    items = [item.strip() for item in text.split(",") if item.strip()]
    try:
        return [convert(item) for item in items]
    except ValueError:
        raise ParameterError(f"could not parse {name} {text!r}")


def resolve_params(gamma, t, fallback_gamma):
    """--gamma wins over --t; otherwise the config value is used."""
    if gamma is not None:
        return build_params(gamma)
    if t is not None:
        return params_from_t(t)
    return build_params(fallback_gamma)


def emit(ctx, report: Report, output: str, fmt: str):
    """Write or print the report, record the run and exit with its status."""
    if output:
        written = report.write(output, fmt)
        for path in written:
            click.echo(f"Wrote {path}")
    else:
        click.echo(report.render(fmt), nl=False)

    summary = not output
    click.echo(f"\n{'='*50}", err=summary)
    click.echo(f"{report.command}: {len(report.checks)} checks", err=summary)
    click.echo('='*50, err=summary)
    for check in report.checks:
        mark = "✓" if check.passed else "✗"
        reference = "" if check.reference is None else f" (reference {check.reference:.10g})"
        click.echo(f"  {mark} {check.name}: {check.value:.10g}{reference}", err=summary)

    if ctx.obj['record']:
        db = Database(ctx.obj['db_path'])
        try:
            db.save_run(RunRecord.create(report.command, report.params, report.check_outcomes(), output))
            for baseline in ctx.obj.get('baselines', []):
                db.save_baseline(baseline)
        finally:
            db.close()

    if not report.passed:
        sys.exit(EXIT_FAILED)


def output_options(func):
    func = click.option('--format', 'fmt', type=click.Choice(FORMATS), default='csv',
                        help='Output format')(func)
    func = click.option('--output', '--out', '-o', default=None,
                        help='Output file (printed to stdout when omitted)')(func)
    return func


@click.group()
@click.option('--config', 'config_path', default=None, help='YAML config file (default: config/experiments.yaml)')
@click.option('--log-level', default=None,
              type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False),
              help='Logging level (default: LAB_LOG_LEVEL or WARNING)')
@click.option('--db-path', default=None, help='Path to the run ledger')
@click.option('--no-record', is_flag=True, help='Do not record this run in the ledger')
@click.pass_context
def cli(ctx, config_path, log_level, db_path, no_record):
    """Staggered TL Lab - spectra, Bethe roots, torus partition functions and TBA flows."""
    ctx.ensure_object(dict)
    level = (log_level or os.getenv("LAB_LOG_LEVEL", "WARNING")).upper()
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        ctx.obj['config'] = load_config(config_path)
    except FileNotFoundError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_USAGE)
    except LabError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_USAGE)
    ctx.obj['db_path'] = db_path
    ctx.obj['record'] = not no_record


# =========================================
# SPECTRUM
# =========================================

def ed_dimension(N: int, sector: int) -> int:
    n_up = N + sector
    return math.comb(2 * N, n_up) if 0 <= n_up <= 2 * N else 0


def check_ed_size(N: int, sector: int):
    """Reject sizes whose sector is too large to build."""
    dim = ed_dimension(N, sector)
    if dim > MAX_ED_DIMENSION:
        # ~ (4N + 1) stored entries per row at 16 + 4 bytes each
        estimate = dim * (4 * N + 1) * 20 / 2 ** 20
        raise ParameterError(
            f"N = {N} gives a sector of dimension {dim} (limit {MAX_ED_DIMENSION}); "
            f"the sparse Hamiltonian alone needs about {estimate:.0f} MiB"
        )


def twisted_energies(params, sizes, phi) -> dict:
    return {N: bethe_energy(solve_bae(BetheState.ground_state(N, phi=phi), params), params) for N in sizes}


def watermelon_gaps(params, sizes, k) -> dict:
    """k-leg energies measured from the twisted ground state at φ = γ."""
    gaps = {}
    for N in sizes:
        reference = bethe_energy(solve_bae(BetheState.ground_state(N, phi=params.gamma), params), params)
        gaps[N] = bethe_energy(solve_bae(BetheState.k_leg(N, k), params), params) - reference
    return gaps


@cli.command()
@click.option('--t', 't_values', default=None, help='Comma-separated t values (γ = π/t)')
@click.option('--gamma', type=float, default=None, help='Anisotropy γ (overrides --t)')
@click.option('--sizes', default=None, help='Comma-separated even block counts, e.g. 4,6,8')
@click.option('--sector', type=int, default=None, help='Sz sector of the ED rows')
@click.option('--twist', type=float, default=None, help='Twist φ of the fitted ground state (default γ)')
@click.option('--levels', type=int, default=None, help='Eigenvalues kept per size')
@output_options
@click.pass_context
@handle_errors
def spectrum(ctx, t_values, gamma, sizes, sector, twist, levels, output, fmt):
    """
    Exact spectra and finite-size fits of c and the watermelon exponents.

    Examples:
        python -m src.cli spectrum --t 5 --sizes 4,6,8
        python -m src.cli spectrum --t 4,5,6 --output results/c_scan.csv
    """
    cfg = ctx.obj['config'].spectrum
    tol = ctx.obj['config'].tolerances
    sizes = parse_list(sizes, int, "sizes") if sizes is not None else list(cfg.sizes)
    if not sizes:
        raise ParameterError("empty size list")
    if any(N < 2 or N % 2 for N in sizes):
        raise ParameterError(f"sizes must be even block counts >= 2, got {sizes}")
    sizes = sorted(set(sizes))
    sector = cfg.sector if sector is None else sector
    twist = cfg.twist if twist is None else twist
    levels = cfg.levels if levels is None else levels
    for N in sizes:
        check_ed_size(N, sector)

    if gamma is not None:
        param_sets = [build_params(gamma)]
    else:
        ts = parse_list(t_values, float, "t") if t_values is not None else cfg.t
        ts = ts if isinstance(ts, list) else [ts]
        param_sets = [params_from_t(t) for t in ts]

    report = Report(
        command="spectrum",
        params={
            "t": [p.t for p in param_sets],
            "sizes": sizes,
            "sector": sector,
            "twist": "gamma" if twist is None else twist,
            "levels": levels,
            "watermelons": list(cfg.watermelons),
        },
        columns=SPECTRUM_COLUMNS,
        tolerances={"spectrum_c": tol.spectrum_c, "spectrum_h": tol.spectrum_h},
    )
    fit_rows = []

    for params in param_sets:
        t = params.t
        click.echo(f"Spectrum at t = {t:.6g} (gamma = {params.gamma:.6g})", err=not output)
        ground = {}
        for N in sizes:
            rep = get_representation("spin", N, params, sector=sector)
            H = build_hamiltonian(Couplings.z2_point(params), params, rep)
            mode = "full" if H.dim <= DENSE_LIMIT else "extremal"
            table = diagonalize(H, mode=mode, k=levels, N=N)
            report.rows.extend(table.to_rows(t)[:levels])
            ground[N] = table.ground.real

        formulas = exponent_formulas(params)
        if len(sizes) >= 3:
            if sector == 0:
                fit = central_charge_fit(ground, params.v)
                report.add_check(f"c_untwisted_t{t:g}", fit.estimate, tol.spectrum_c, reference=2.0, relative=True)
                fit_rows.append({"quantity": "c", "t": t, "sizes": fit.sizes, "estimate": fit.estimate,
                                 "reference": 2.0})

            phi = params.gamma if twist is None else twist
            fit = central_charge_fit(twisted_energies(params, sizes, phi), params.v)
            reference = formulas.effective_central_charge(phi)
            report.add_check(f"c_tw_t{t:g}", fit.estimate, tol.spectrum_c, reference=reference, relative=True)
            fit_rows.append({"quantity": "c_tw", "t": t, "sizes": fit.sizes, "estimate": fit.estimate,
                             "reference": reference})
        else:
            logging.getLogger(__name__).warning("fewer than three sizes: central charge not fitted")

        if len(sizes) >= 2:
            for k in cfg.watermelons:
                fit = exponent_fit(watermelon_gaps(params, sizes, k), params.v)
                reference = 2 * formulas.h_k(k)
                report.add_check(f"2h_{k}_t{t:g}", 2 * fit.estimate, tol.spectrum_h, reference=reference, relative=True)
                fit_rows.append({"quantity": f"2h_{k}", "t": t, "sizes": fit.sizes, "estimate": 2 * fit.estimate,
                                 "reference": reference})

    report.add_table("fits", FIT_COLUMNS, fit_rows)
    emit(ctx, report, output, fmt)


# =========================================
# BETHE
# =========================================

def build_state(kind: str, N: int, phi: float, I0, I1) -> BetheState:
    if kind == "ground":
        return BetheState.ground_state(N, phi=phi)
    if kind in ("k2", "k4"):
        return BetheState.k_leg(N, int(kind[1]), phi=phi)
    if kind == "custom":
        return BetheState(N, tuple(I0), tuple(I1), phi, label="custom")
    raise ParameterError(f"unknown state {kind!r}")


@cli.command()
@click.option('--gamma', type=float, default=None, help='Anisotropy γ')
@click.option('--t', 't_value', type=float, default=None, help='γ = π/t (ignored when --gamma is given)')
@click.option('--N', 'N', type=int, default=None, help='Block count (2N strands)')
@click.option('--state', 'kind', type=click.Choice(['ground', 'k2', 'k4', 'custom']), default=None,
              help='Bethe state')
@click.option('--I0', 'I0', default=None, help='Custom Bethe integers on line 0, comma-separated')
@click.option('--I1', 'I1', default=None, help='Custom Bethe integers on line 1, comma-separated')
@click.option('--phi', type=float, default=None, help='Twist φ')
@output_options
@click.pass_context
@handle_errors
def bethe(ctx, gamma, t_value, N, kind, I0, I1, phi, output, fmt):
    """
    Solve the Bethe equations for one state and compare with exact diagonalization.

    Examples:
        python -m src.cli bethe --N 4 --state ground
        python -m src.cli bethe --N 4 --state custom --I0 -0.5,0.5 --I1 -0.5,0.5
    """
    cfg = ctx.obj['config'].bethe
    tol = ctx.obj['config'].tolerances
    params = resolve_params(gamma, t_value, fallback_gamma=cfg.gamma)
    N = cfg.N if N is None else N
    kind = kind or cfg.state
    phi = cfg.phi if phi is None else phi
    I0 = parse_list(I0, float, "I0") if I0 is not None else list(cfg.I0)
    I1 = parse_list(I1, float, "I1") if I1 is not None else list(cfg.I1)
    state = build_state(kind, N, phi, I0, I1)

    initial = None
    if ctx.obj['record']:
        db = Database(ctx.obj['db_path'])
        baseline = db.get_baseline(state, params.gamma)
        db.close()
        if baseline:
            initial = baseline.to_roots()
            logging.getLogger(__name__).info(f"Starting from stored roots {baseline.key}")

    roots = solve_bae(state, params, initial=initial)
    energy = bethe_energy(roots, params)
    residuals = bae_residuals(roots, params)

    report = Report(
        command="bethe",
        params={"gamma": params.gamma, "N": N, "state": state.to_dict()},
        columns=BETHE_COLUMNS,
        tolerances={"bethe_ed": tol.bethe_ed, "bethe_xxz": tol.bethe_xxz},
    )
    integers = list(state.I0) + list(state.I1)
    for i, root in enumerate(roots.all_lambdas):
        line = 0 if i < state.r0 else 1
        report.rows.append({
            "line": line,
            "index": i if line == 0 else i - state.r0,
            "bethe_integer": integers[i],
            "root": float(root),
            "residual": float(residuals[i]),
        })
    report.add_table("energy", ["quantity", "value"], [{"quantity": "E", "value": energy}])
    report.add_check("bae_residual", roots.residual, 1e-10)

    if N <= cfg.ed_limit and phi == 0:
        rep = get_representation("spin", N, params, sector=state.sz)
        H = build_hamiltonian(Couplings.z2_point(params), params, rep)
        levels = diagonalize(H).eigenvalues.real
        closest = float(levels[abs(levels - energy).argmin()])
        report.add_check("ed_energy", energy, tol.bethe_ed, reference=closest)
    elif N > cfg.ed_limit:
        click.echo(f"N = {N} above ed_limit = {cfg.ed_limit}: no ED comparison", err=True)

    if state.is_symmetric:
        mu = solve_xxz_bae(N, state.I0, params, phi=phi)
        base = math.cos(2 * params.gamma)
        ratio = (energy - 2 * N * base) / (xxz_energy(mu, N, params) - 0.5 * N * base)
        report.add_check("xxz_ratio", ratio, tol.bethe_xxz, reference=2.0)

    ctx.obj['baselines'] = [RootBaseline.from_roots(roots, energy)]
    emit(ctx, report, output, fmt)


# =========================================
# PARTITION
# =========================================

def parse_tau(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise ParameterError(f"could not parse tau {text!r}")


def partition_point(tau: complex, Q: float) -> dict:
    tp = TorusPoint(tau)
    params = params_from_Q(Q)
    return {
        "Z_potts": z_potts(Q, tp),
        "Z_potts_shifted": z_potts(Q, tp.shifted()),
        "Z_potts_inverted": z_potts(Q, tp.inverted()),
        "Z_g": z_untwisted(params.g, tp),
        "Z_ising": z_ising(tp),
    }


@cli.command()
@click.option('--Q', 'Q', type=float, default=None, help='Potts Q in (0, 4)')
@click.option('--t', 't_value', type=float, default=None, help='Use Q = 4cos²(π/t)')
@click.option('--tau-grid', default=None, help='Comma-separated modular parameters, e.g. "1j,0.3+0.8j"')
@click.option('--workers', type=int, default=1, help='Worker threads for the grid')
@output_options
@click.pass_context
@handle_errors
def partition(ctx, Q, t_value, tau_grid, workers, output, fmt):
    """
    Torus partition functions on a grid of τ with modular and Q = 1, 2 checks.

    Examples:
        python -m src.cli partition --Q 2 --tau-grid "1j"
        python -m src.cli partition --t 5 --format json --output results/z.json
    """
    cfg = ctx.obj['config'].partition
    tol = ctx.obj['config'].tolerances
    if workers < 1:
        raise ParameterError(f"workers must be at least 1, got {workers}")
    if Q is None:
        Q = params_from_t(t_value).Q if t_value is not None else cfg.Q
    params_from_Q(Q)
    if tau_grid is not None:
        taus = [parse_tau(item) for item in tau_grid.split(",") if item.strip()]
    else:
        taus = [complex(re, im) for re, im in cfg.tau_grid]
    if not taus:
        raise ParameterError("empty tau grid")
    for tau in taus:
        TorusPoint(tau)

    values = run_grid(functools.partial(partition_point, Q=Q), taus, workers)

    report = Report(
        command="partition",
        params={"Q": Q, "tau_grid": [[tau.real, tau.imag] for tau in taus]},
        columns=PARTITION_COLUMNS,
        tolerances={
            "partition_ising": tol.partition_ising,
            "partition_modular": tol.partition_modular,
            "partition_q1": tol.partition_q1,
        },
    )
    worst_modular = 0.0
    for tau, point in zip(taus, values):
        for quantity in ("Z_potts", "Z_g", "Z_ising"):
            report.rows.append({"quantity": quantity, "re_tau": tau.real, "im_tau": tau.imag,
                                "value": point[quantity]})
        scale = max(1.0, abs(point["Z_potts"]))
        for moved in ("Z_potts_shifted", "Z_potts_inverted"):
            worst_modular = max(worst_modular, abs(point[moved] - point["Z_potts"]) / scale)

    report.add_check("modular_invariance", worst_modular, tol.partition_modular)
    if Q == 2.0:
        worst = max(abs(p["Z_potts"] - p["Z_ising"]) for p in values)
        report.add_check("potts_q2_is_ising", worst, tol.partition_ising)
    if Q == 1.0:
        report.add_check("potts_q1_vanishes", max(abs(p["Z_potts"]) for p in values), tol.partition_q1)
    emit(ctx, report, output, fmt)


# =========================================
# TBA
# =========================================

def tba_point(r: float, t: int) -> dict:
    solution = solve_tba(chain_system(t), r)
    return {"t": t, "r": r, "E": solution.energy, "c_eff": solution.c_eff}


def fork_point(r: float, n: int) -> dict:
    solution = twisted_sg_fork(n, r)
    return {"n": n, "r": r, "E": solution.energy, "c_eff": solution.c_eff}


@cli.command()
@click.option('--t', 't_value', type=int, default=None, help='Integer t >= 4 (A_{t-3} diagram)')
@click.option('--r-grid', default=None, help='Comma-separated scales r = μR')
@click.option('--fork/--no-fork', default=None, help='Also solve the twisted fork (t - 3 odd)')
@click.option('--workers', type=int, default=1, help='Worker threads for the grid')
@output_options
@click.pass_context
@handle_errors
def tba(ctx, t_value, r_grid, fork, workers, output, fmt):
    """
    Ground-state energy flow of the massive TBA system.

    t = 4 is the single free massive node (c = 1/2).

    Examples:
        python -m src.cli tba --t 5 --r-grid 1e-4,1e-2,1,10
        python -m src.cli tba --t 6 --fork --workers 4
    """
    cfg = ctx.obj['config'].tba
    tol = ctx.obj['config'].tolerances
    if workers < 1:
        raise ParameterError(f"workers must be at least 1, got {workers}")
    t = cfg.t if t_value is None else t_value
    fork = cfg.fork if fork is None else fork
    rs = parse_list(r_grid, float, "r grid") if r_grid is not None else list(cfg.r_grid)
    if not rs:
        raise ParameterError("empty r grid")
    if any(r <= 0 for r in rs):
        raise ParameterError(f"scales must be positive, got {rs}")
    system = chain_system(t)
    if fork and (t < 6 or (t - 3) % 2 == 0):
        raise ParameterError(f"the fork reduction needs t - 3 odd and t >= 6, got t = {t}")

    click.echo(f"TBA {system.name} on {len(rs)} scales", err=not output)
    rows = run_grid(functools.partial(tba_point, t=t), rs, workers)

    report = Report(
        command="tba",
        params={"t": t, "r_grid": rs, "fork": fork},
        columns=TBA_COLUMNS,
        rows=rows,
        tolerances={"tba_uv": tol.tba_uv, "tba_ir": tol.tba_ir, "tba_fork": tol.tba_fork},
    )

    c_uv = uv_central_charge(t)
    report.add_check("dilog_uv_value", uv_dilog_check(system), 1e-10, reference=c_uv)
    by_scale = sorted(rows, key=lambda row: row["r"])
    if by_scale[0]["r"] <= 1e-4:
        report.add_check("uv_central_charge", by_scale[0]["c_eff"], tol.tba_uv, reference=c_uv)
    if by_scale[-1]["r"] >= 10:
        report.add_check("ir_decoupling", by_scale[-1]["c_eff"], tol.tba_ir)
    increases = sum(1 for a, b in zip(by_scale, by_scale[1:]) if b["c_eff"] > a["c_eff"])
    report.add_check("c_eff_monotone", increases, 0.5)

    if fork:
        n = (t - 4) // 2
        fork_rows = run_grid(functools.partial(fork_point, n=n), rs, workers)
        report.add_table("fork", FORK_COLUMNS, fork_rows)
        worst = max(
            abs(row["E"] - 2 * frow["E"]) / max(abs(row["E"]), 1e-300)
            for row, frow in zip(rows, fork_rows)
        )
        report.add_check("fork_half_energy", worst, tol.tba_fork)

    emit(ctx, report, output, fmt)


# =========================================
# LEDGER
# =========================================

@cli.command()
@click.option('--limit', '-n', type=int, default=20, help='Maximum runs to show')
@click.option('--command', 'command', default=None, help='Only runs of this command')
@click.pass_context
def runs(ctx, limit, command):
    """List recorded runs, newest first."""
    db = Database(ctx.obj['db_path'])
    records = db.get_recent_runs(limit, command)
    counts = db.count_runs_by_outcome()
    db.close()

    if not records:
        click.echo("No runs recorded.")
        return

    click.echo(f"\n{'='*50}")
    click.echo(f"Runs: {counts['passed']} passed, {counts['failed']} failed")
    click.echo('='*50)
    for record in records:
        mark = "✓" if record.passed else "✗"
        checks = sum(record.checks.values())
        click.echo(f"{mark} [{record.id}] {record.command:10} {record.created_at:%Y-%m-%d %H:%M} "
                   f"{checks}/{len(record.checks)} checks")
        if record.output_path:
            click.echo(f"    → {record.output_path}")


if __name__ == '__main__':
    cli()
