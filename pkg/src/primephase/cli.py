"""Command-line surface: verification suites, Wigner tables, evolutions, and
the group-algebra oracle, all emitting machine-readable JSON reports.

Exit codes: 0 all asserted checks pass, 1 a check failed, 2 usage or
configuration error.  Every check row carries the tag of the identity it
exercises (e.g. "Eq:(JxJ)") so a failure can be traced to the construction.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import dynamics, oracle, sl2, subspaces
from . import metaplectic as mp
from .wigner import StateVector, covariance_check, expectation_char, fourier_wigner
from .wigner import weyl_residual_report, wigner as wigner_table
from .fields import FieldError, PrimeField, is_odd_prime, legendre
from .heisenberg import random_element as random_h
from .heisenberg import schrodinger_of, sl2_automorphism
from .scalars import gauss_sum, gauss_sum_closed_form
from .sl2 import random_element as random_g


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    N: int
    omega: int = 1
    backend: str = "float"
    tolerance: float = 1e-9
    seed: int = 0
    out: Path | None = None

    def __post_init__(self):
        if not is_odd_prime(self.N):
            raise ConfigError("modulus must be an odd prime")
        self.omega %= self.N
        if self.omega == 0:
            raise ConfigError("omega must be nonzero mod N")
        if self.backend not in ("float", "exact"):
            raise ConfigError("backend must be 'float' or 'exact'")
        if self.tolerance <= 0:
            raise ConfigError("tolerance must be positive")
        if self.backend == "exact" and self.N > 5:
            raise ConfigError("exact backend guarded to N <= 5")


@dataclass
class Report:
    config: dict
    checks: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def add(self, name: str, eq: str, residual: float, tolerance: float,
            asserted: bool = True) -> None:
        self.checks.append(
            {
                "name": name,
                "eq": eq,
                "residual": float(residual),
                "tolerance": tolerance,
                "asserted": asserted,
                "pass": bool(residual < tolerance) if asserted else None,
            }
        )

    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks if c["asserted"])

    def to_json(self) -> dict:
        return {"config": self.config, "checks": self.checks, **self.extras}


def _emit(report: Report, cfg: RunConfig, name: str) -> None:
    payload = json.dumps(report.to_json(), indent=2, default=_jsonify)
    if cfg.out is not None:
        cfg.out.mkdir(parents=True, exist_ok=True)
        (cfg.out / f"{name}.json").write_text(payload)
    else:
        print(payload)
    for c in report.checks:
        status = "pass" if c["pass"] else ("FAIL" if c["asserted"] else "report")
        print(f"[{status}] {c['name']} (eq {c['eq']}): residual {c['residual']:.3e}",
              file=sys.stderr)


def _jsonify(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.integer, np.floating, np.bool_)):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _load_state(spec: str, N: int, omega: int, require_normalized: bool) -> StateVector:
    if ":" in spec or spec in ("uniform", "delta", "char", "chirp"):
        f = StateVector.preset(spec, N, omega)
    else:
        path = Path(spec)
        if not path.exists():
            raise ConfigError(f"state file not found: {spec}")
        data = json.loads(path.read_text())
        if data.get("n") != N:
            raise ConfigError("state file modulus does not match --n")
        amp = np.array([re + 1j * im for re, im in data["amplitudes"]])
        if len(amp) != N:
            raise ConfigError("amplitude count must equal N")
        f = StateVector(amp, data.get("omega", omega))
    if require_normalized and abs(f.norm2() - 1.0) > 1e-9:
        raise ConfigError("state is not normalized")
    return f


def state_to_json(f: StateVector) -> dict:
    return {
        "n": f.N,
        "omega": f.omega,
        "amplitudes": [[z.real, z.imag] for z in f.amplitudes],
    }


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(cfg: RunConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    N, omega, tol = cfg.N, cfg.omega, cfg.tolerance
    report = Report(
        {"command": "verify", "n": N, "omega": omega, "backend": cfg.backend,
         "tolerance": tol, "seed": cfg.seed}
    )

    # representation suite
    worst = 0.0
    for _ in range(50):
        g1, g2 = random_g(rng, N), random_g(rng, N)
        W12 = mp.weil(g1 * g2, omega).matrix
        worst = max(worst, float(np.max(np.abs(
            mp.weil(g1, omega).matrix @ mp.weil(g2, omega).matrix - W12))))
    report.add("weil_homomorphism", "tsxts/tuxtu/JxJ", worst, tol)

    for tok, eq in (("s", "tsxts"), ("u", "tuxtu"), ("J", "JxJ"), ("d", "tdf")):
        par = 1 if tok != "u" else 2
        W = mp.weil_generator((tok, par), omega, N)
        report.add(f"unitarity_{tok}", eq,
                   float(np.max(np.abs(W.conj().T @ W - np.eye(N)))), tol)

    td_direct = mp.weil_td_direct(2, omega, N)
    td_composed = mp.weil_word(
        sl2.GeneratorWord((("J", 1), ("u", -2), ("s", -1), ("J", 1)), N), omega, N)
    report.add("td_direct_vs_composed", "tdf",
               float(np.max(np.abs(td_direct - td_composed))), tol)

    # intertwining suite
    worst = 0.0
    gens = [sl2.J(N), sl2.t_s(2 % N or 1, N), sl2.t_u(1, N), sl2.t_d(1, N)]
    for g in gens:
        for _ in range(20):
            worst = max(worst, mp.intertwine_check(g, random_h(rng, N), omega))
    report.add("intertwining", "schrep", worst, tol)

    # gauss sums
    worst = max(
        abs(gauss_sum(c, N) - legendre(c, N) * gauss_sum_closed_form(N))
        for c in range(1, N)
    )
    report.add("gauss_sum_split", "G(1,N)", worst, max(tol, 1e-10))

    # wigner structure
    worst_im = worst_marg = worst_cov = worst_char = 0.0
    for _ in range(20):
        f = StateVector.random(rng, N, omega)
        W = wigner_table(f)
        worst_marg = max(worst_marg, float(np.max(np.abs(
            W.values.sum(axis=1) - N * np.abs(f.amplitudes) ** 2))))
        g = random_g(rng, N)
        worst_cov = max(worst_cov, covariance_check(g, f))
        q, p = int(rng.integers(N)), int(rng.integers(N))
        worst_char = max(worst_char, expectation_char(f, q, p).residual)
    report.add("wigner_position_marginal", "wigd", worst_marg, tol)
    report.add("phase_space_covariance", "fwigmatg", worst_cov, tol)
    report.add("character_weyl_map", "fwigop/wigfunc", worst_char, tol)

    # rho_h / B_h over F_N (exact integer arithmetic: residual is 0 or 1)
    ok = True
    for h in range(1, 7):
        B = subspaces.bform(h)
        for _ in range(20):
            g1, g2 = random_g(rng, N), random_g(rng, N)
            R1, R2 = subspaces.rho(h, g1), subspaces.rho(h, g2)
            if not np.array_equal(R1 @ R2 % N, subspaces.rho(h, g1 * g2)):
                ok = False
            if not np.array_equal(R1.T @ B @ R1 % N, B % N):
                ok = False
    report.add("rho_homomorphism_and_invariant_form", "rho_h/b_h", 0.0 if ok else 1.0, 0.5)

    # dynamics
    gen = dynamics.oscillator_generator(N)
    Wr = mp.weil(gen.matrix(), omega).matrix
    report.add("oscillator_period", "t_r order N+1",
               float(np.max(np.abs(np.linalg.matrix_power(Wr, N + 1) - np.eye(N)))), tol)
    worst = 0.0
    for t1 in range(N):
        for t2 in range(N):
            U1 = dynamics.free_particle(t1, 1, omega, N).matrix
            U2 = dynamics.free_particle(t2, 1, omega, N).matrix
            U12 = dynamics.free_particle((t1 + t2) % N, 1, omega, N).matrix
            worst = max(worst, float(np.max(np.abs(U1 @ U2 - U12))))
    report.add("free_particle_semigroup", "freep", worst, tol)

    # residual documentation (reported, not asserted, except the exact rows)
    f = StateVector.random(rng, N, omega)
    weyl_rows = []
    for m in range(5):
        for n in range(5 - m):
            row = weyl_residual_report(f, m, n)
            weyl_rows.append(row.to_json())
            if (m, n) in ((0, 0), (1, 0)):
                report.add(f"weyl_map_exact_{m}{n}", "expop/exfun1", row.residual, 1e-11)
    report.extras["weyl_residuals"] = weyl_rows
    pred_rows = []
    for h in range(5):
        pred = subspaces.predict_moments(h, random_g(rng, N), f)
        pred_rows.append(pred.to_json())
        if h == 0:
            report.add("moment_prediction_order0", "fwigmatg", pred.residual, 1e-11)
    report.extras["moment_predictions"] = pred_rows

    # exact-backend spot check
    if cfg.backend == "exact":
        resid = oracle.verify_generator_action(("J", 1), omega, min(N, 3), exact=True)
        report.add("oracle_exact_J", "JxJ", resid, tol)

    _emit(report, cfg, "verify")
    return 0 if report.passed() else 1


# ---------------------------------------------------------------------------
# wigner
# ---------------------------------------------------------------------------

def cmd_wigner(cfg: RunConfig, state_spec: str, require_normalized: bool) -> int:
    f = _load_state(state_spec, cfg.N, cfg.omega, require_normalized)
    W = wigner_table(f)
    A = fourier_wigner(f)
    out = cfg.out or Path(".")
    out.mkdir(parents=True, exist_ok=True)
    W.to_csv(out / "wigner.csv")
    payload = {
        "state": state_to_json(f),
        "wigner": W.to_json(),
        "fourier_wigner": A.to_json(),
        "position_marginal": (W.values.sum(axis=1) / cfg.N).tolist(),
        "momentum_marginal": (W.values.sum(axis=0) / cfg.N).tolist(),
    }
    (out / "wigner.json").write_text(json.dumps(payload, indent=2, default=_jsonify))
    print(f"wrote {out / 'wigner.csv'} and {out / 'wigner.json'}")
    return 0


# ---------------------------------------------------------------------------
# evolve
# ---------------------------------------------------------------------------

def cmd_evolve(cfg: RunConfig, family: str, state_spec: str, steps: int,
               mass: int, delta: int | None, require_normalized: bool) -> int:
    f = _load_state(state_spec, cfg.N, cfg.omega, require_normalized)
    if family == "free":
        if mass % cfg.N == 0:
            raise ConfigError("mass must be nonzero mod N")
        traj = dynamics.evolve_free(f, mass, steps, moment_orders=(1, 2))
        rho1_step = subspaces.lift_matrix(
            subspaces.rho(1, sl2.t_d(PrimeField(cfg.N).div(-1, mass), cfg.N)), cfg.N)
    else:
        gen = dynamics.oscillator_generator(cfg.N, delta)
        traj = dynamics.evolve_oscillator(f, gen, steps, moment_orders=(1, 2))
        rho1_step = subspaces.lift_matrix(subspaces.rho(1, gen.matrix()), cfg.N)

    rows = []
    for i, (state, mom) in enumerate(zip(traj.states, traj.moment_track)):
        r1, r2 = mom[1], mom[2]
        row = {
            "step": i,
            "state": state_to_json(state),
            "moments_order1": r1.values,
            "moments_order2": r2.values,
            "dm_invariant_order2": subspaces.dm_invariant(r2),
        }
        if i > 0:
            prev = traj.moment_track[i - 1][1].values
            row["rho1_predicted"] = rho1_step.astype(complex) @ prev
            row["rho1_residual"] = float(
                np.max(np.abs(row["rho1_predicted"] - r1.values)))
        rows.append(row)

    payload = {
        "config": {"command": "evolve", "family": family, "n": cfg.N,
                   "omega": cfg.omega, "steps": steps, "mass": mass},
        "trajectory": rows,
    }
    out = cfg.out or Path(".")
    out.mkdir(parents=True, exist_ok=True)
    (out / "evolution.json").write_text(json.dumps(payload, indent=2, default=_jsonify))
    print(f"wrote {out / 'evolution.json'}")
    return 0


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

def cmd_invariants(cfg: RunConfig, state_spec: str, steps: int) -> int:
    """rho_h/B_h verification rows plus invariant trajectories for a state."""
    rng = np.random.default_rng(cfg.seed)
    N = cfg.N
    report = Report(
        {"command": "invariants", "n": N, "omega": cfg.omega, "seed": cfg.seed}
    )
    for h in range(1, 7):
        B = subspaces.bform(h) % N
        ok = True
        for _ in range(50):
            g1, g2 = random_g(rng, N), random_g(rng, N)
            R1 = subspaces.rho(h, g1)
            ok &= np.array_equal(R1 @ subspaces.rho(h, g2) % N, subspaces.rho(h, g1 * g2))
            ok &= np.array_equal(R1.T @ B @ R1 % N, B)
        report.add(f"rho_{h}_homomorphism_and_form", "rho_h/b_h", 0.0 if ok else 1.0, 0.5)

    f = _load_state(state_spec, N, cfg.omega, False)
    gen = dynamics.oscillator_generator(N)
    traj = dynamics.evolve_oscillator(f, gen, steps, moment_orders=(2, 4))
    report.extras["oscillator_trajectory"] = [
        {
            "step": i,
            "dm_invariant_order2": subspaces.dm_invariant(mom[2]),
            "dm_invariant_order4": subspaces.dm_invariant(mom[4]),
        }
        for i, mom in enumerate(traj.moment_track)
    ]
    from .wigner import moments

    report.extras["shear_sweep"] = [
        {
            "b": b,
            "dm_invariant_order2": subspaces.dm_invariant(
                moments(f.apply(mp.weil(sl2.t_u(b, N), cfg.omega)), 2)
            ),
        }
        for b in range(N)
    ]
    _emit(report, cfg, "invariants")
    return 0 if report.passed() else 1


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

def cmd_oracle(cfg: RunConfig) -> int:
    if cfg.N not in (3, 5):
        raise ConfigError("oracle runs at N in {3, 5}")
    exact = cfg.backend == "exact"
    report = Report(
        {"command": "oracle", "n": cfg.N, "omega": cfg.omega, "backend": cfg.backend}
    )
    tol = cfg.tolerance if not exact else 1e-15
    ideal = oracle.build_ideal(cfg.omega, cfg.N, exact=exact)
    toks = [("s", 2 % cfg.N), ("u", 1), ("J", 1), ("d", 1), ("h", (1, 1, 1))]
    for tok in toks:
        eq = {"s": "tsxts", "u": "tuxtu", "J": "JxJ", "d": "tdf", "h": "schrep"}[tok[0]]
        resid = oracle.verify_generator_action(tok, cfg.omega, cfg.N,
                                               exact=exact, ideal=ideal)
        report.add(f"generator_action_{tok[0]}", eq, resid, max(tol, 1e-8))
    doubled = oracle.doubled_checks(cfg.omega, cfg.N)
    report.add("doubled_commutator", "comuTT", doubled["comuTT"], cfg.tolerance)
    report.add("doubled_commutator_bar", "comTTb", doubled["comTTb"], cfg.tolerance)
    if "reexpTr/2" in doubled:
        report.add("reexpression", "reexpTr/2", doubled["reexpTr/2"], cfg.tolerance)
    for row in doubled["test_f_id"]:
        if row["exact_expected"]:
            report.add(
                f"test_f_id_{row['m']}{row['n']}{row['h']}{row['k']}", "test f id",
                row["residual_negative"], max(cfg.tolerance, 1e-8))
    report.extras["test_f_id"] = doubled["test_f_id"]
    _emit(report, cfg, "oracle")
    return 0 if report.passed() else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="primephase")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("verify", "wigner", "evolve", "invariants", "oracle"):
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--omega", type=int, default=1)
        p.add_argument("--backend", choices=["float", "exact"], default="float")
        p.add_argument("--tolerance", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", type=Path, default=None)
        if name in ("wigner", "evolve", "invariants"):
            p.add_argument("--state", default="uniform",
                           help="preset (delta:k0, uniform, char:m, chirp:b) or JSON path")
            p.add_argument("--require-normalized", action="store_true")
        if name == "evolve":
            p.add_argument("family", choices=["free", "oscillator"])
            p.add_argument("--mass", type=int, default=1)
            p.add_argument("--delta", type=int, default=None)
        if name in ("evolve", "invariants"):
            p.add_argument("--steps", type=int, default=4)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.n, args.omega, args.backend, args.tolerance,
                        args.seed, args.out)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "wigner":
            return cmd_wigner(cfg, args.state, args.require_normalized)
        if args.command == "evolve":
            return cmd_evolve(cfg, args.family, args.state, args.steps,
                              args.mass, args.delta, args.require_normalized)
        if args.command == "invariants":
            return cmd_invariants(cfg, args.state, args.steps)
        if args.command == "oracle":
            return cmd_oracle(cfg)
        raise ConfigError(f"unknown command {args.command}")
    except (ConfigError, FieldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
