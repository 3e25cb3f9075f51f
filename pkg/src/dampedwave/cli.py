"""Command-line front end for the standard experiments.

Each subcommand builds a preset system, runs one study and prints a
small table.  Sizes default to settings that finish in seconds; raise
--paths / --samples for sharper statistics.
"""

from __future__ import annotations

import argparse

import numpy as np

from . import presets
from .action import minimum_action
from .limits import (
    controlled_convergence_study,
    ldp_rate_study,
    small_mass_study,
    tightness_study,
)
from .verification import limit_order, spatial_decay, transformed_order, wave_order


def _build_system(args, n_points=None):
    if args.force == "linear":
        return presets.lipschitz_system(args.modes, seed=args.seed, n_points=n_points)
    return presets.polynomial_system(args.modes, exponent=args.exponent, seed=args.seed,
                                     n_points=n_points)


def _add_common(p):
    p.add_argument("--modes", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", choices=["linear", "power"], default="linear")
    p.add_argument("--exponent", type=float, default=3.0)


def cmd_small_mass(args):
    system = _build_system(args)
    u0 = presets.bump(system.basis)
    study = small_mass_study(system, args.masses, args.duration, args.dt, u0,
                             n_paths=args.paths)
    print(f"limit correction size |E u_on - E u_off| = {study.correction_size:.4f}")
    print(f"{'mass':>8} {'path gap':>10} {'mean gap':>10} {'mean gap (no corr.)':>20}")
    for m, pg, mg, mo in zip(study.masses, study.path_gaps, study.mean_gaps,
                             study.mean_gaps_uncorrected):
        print(f"{m:8.4f} {pg:10.4f} {mg:10.4f} {mo:20.4f}")


def cmd_controlled(args):
    system = _build_system(args)
    u0 = presets.bump(system.basis)
    n_steps = int(round(args.duration / args.dt))
    t = (np.arange(n_steps) + 0.5) * args.dt
    control = np.zeros((n_steps, system.basis.n_modes))
    control[:, 0] = 1.5 * np.sin(np.pi * t / args.duration)
    control[:, 1] = -0.8 * np.cos(np.pi * t / args.duration)
    study = controlled_convergence_study(system, args.masses, args.duration, args.dt,
                                         u0, control, n_paths=args.paths)
    print(f"{'mass':>8} {'terminal gap to skeleton':>25}")
    for m, g in zip(study.masses, study.gaps):
        print(f"{m:8.4f} {g:25.4f}")


def cmd_rate(args):
    system = _build_system(args)
    u0 = np.zeros(system.basis.n_modes)
    target = np.zeros(system.basis.n_modes)
    target[0] = args.level
    study = ldp_rate_study(system, args.masses, args.duration, u0, target, args.radius,
                           n_samples=args.samples)
    print(f"steering cost: center {study.cost_center:.4f}, ball edge {study.cost_ball:.4f}")
    print(f"{'mass':>8} {'probability':>13} {'stderr':>10} {'hits':>6} {'-mass log p':>12}")
    for m, est in zip(study.masses, study.estimates):
        print(f"{m:8.4f} {est.probability:13.4e} {est.stderr:10.1e} {est.n_hits:6d} {est.rate:12.4f}")


def cmd_action(args):
    system = _build_system(args)
    u0 = np.zeros(system.basis.n_modes)
    target = np.zeros(system.basis.n_modes)
    target[0] = args.level
    res = minimum_action(system, u0, target, args.duration, args.steps)
    print(f"steering cost 1/2 int |phi|^2 dt = {res.cost:.6f}")
    print(f"endpoint gap |u(T) - target|     = {res.endpoint_gap:.2e}")
    print(f"L-BFGS iterations                = {res.n_iterations}")


def cmd_orders(args):
    system = _build_system(args, n_points=8 * args.modes)
    w = wave_order(system, 0.05, 0.4, 4e-3)
    l = limit_order(system, 0.4, 8e-3)
    t = transformed_order(system, 0.4, 8e-3)
    s = spatial_decay()
    print(f"wave integrator temporal order        {w.order:6.3f}")
    print(f"limit integrator temporal order       {l.order:6.3f}")
    print(f"transformed integrator temporal order {t.order:6.3f}")
    print(f"spatial truncation decay exponent     {s.order:6.3f}")


def cmd_tightness(args):
    system = _build_system(args)
    u0 = presets.bump(system.basis)
    study = tightness_study(system, args.masses, args.duration, args.dt, u0,
                            n_paths=args.paths)
    print(f"increment scaling exponent kappa = {study.increment_exponent:.3f}")
    print(f"{'mass':>8} {'E sup_t |g(u)|_H^0.75':>22}")
    for m, s in zip(study.masses, study.sup_norms):
        print(f"{m:8.4f} {s:22.4f}")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="dampedwave",
        description="Small-mass limits and rare events for damped stochastic wave equations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("small-mass", help="wave system vs. its vanishing-mass limit")
    _add_common(p)
    p.add_argument("--masses", type=float, nargs="+", default=[0.02, 0.01, 0.005])
    p.add_argument("--duration", type=float, default=0.5)
    p.add_argument("--dt", type=float, default=2e-4)
    p.add_argument("--paths", type=int, default=128)
    p.set_defaults(func=cmd_small_mass)

    p = sub.add_parser("controlled", help="controlled paths against the limit skeleton")
    _add_common(p)
    p.add_argument("--masses", type=float, nargs="+", default=[0.04, 0.02, 0.01, 0.005])
    p.add_argument("--duration", type=float, default=0.5)
    p.add_argument("--dt", type=float, default=2e-4)
    p.add_argument("--paths", type=int, default=64)
    p.set_defaults(func=cmd_controlled)

    p = sub.add_parser("rate", help="terminal-ball probabilities and their decay rates")
    _add_common(p)
    p.add_argument("--masses", type=float, nargs="+", default=[0.08, 0.05, 0.03])
    p.add_argument("--duration", type=float, default=0.4)
    p.add_argument("--level", type=float, default=0.22)
    p.add_argument("--radius", type=float, default=0.05)
    p.add_argument("--samples", type=int, default=4000)
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("action", help="minimum steering cost to a terminal state")
    _add_common(p)
    p.add_argument("--duration", type=float, default=0.4)
    p.add_argument("--level", type=float, default=0.22)
    p.add_argument("--steps", type=int, default=160)
    p.set_defaults(func=cmd_action)

    p = sub.add_parser("orders", help="manufactured-solution convergence orders")
    _add_common(p)
    p.set_defaults(func=cmd_orders)

    p = sub.add_parser("tightness", help="fractional-norm bounds uniform in the mass")
    _add_common(p)
    p.add_argument("--masses", type=float, nargs="+", default=[0.02, 0.01, 0.005])
    p.add_argument("--duration", type=float, default=0.5)
    p.add_argument("--dt", type=float, default=2e-4)
    p.add_argument("--paths", type=int, default=32)
    p.set_defaults(func=cmd_tightness)

    args = parser.parse_args(argv)
    args.func(args)


if __name__ == "__main__":
    main()
