"""Command-line interface: ``compute``, ``sweep``, ``figure`` and ``crossover``.

Results are written as CSV: ``#`` metadata lines (tool version and every
option), one header row, then one row per record with floats printed to 9
significant digits.  Exit status: 0 on success, 2 for bad options, 3 when a
numerical method does not converge, 4 for file errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import logging
import math
import os
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from . import __version__
from .crossover import QUANTITIES, CrossoverQuery, deviation, find_crossover
from .exceptions import CasimirError, NoStraddleError, PermittivityTableError
from .figures import figure_table, preset_names
from .force import (
    NumericsConfig,
    force_asymptotic,
    force_full,
    force_ideal_metal_classical,
    force_l0,
)
from .kinematics import GrapheneParams, Scenario
from .materials import IdealMetal, Vacuum, substrate_from_name

log = logging.getLogger("cpgraphene")

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_FILE = 0, 2, 3, 4
FLOAT_FORMAT = "%.8e"

RECORD_FIELDS = (
    "a_um", "temp_k", "delta_ev", "mu_ev", "substrate", "alpha0_cm3", "mode", "rel_tol",
    "force_n", "l0_term_n", "tail_n", "l_max_used", "quad_error_n",
    "force_ideal_metal_n", "ratio_to_ideal_metal", "ratio_to_bare", "delta_f",
    "ratio_to_asymptotic",
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.axis not in ("separation", "delta", "mu"):
            raise ValueError(f"unknown sweep axis {self.axis!r}")
        if not self.start < self.stop:
            raise ValueError("sweep needs start < stop")
        if self.count < 2:
            raise ValueError("sweep needs count >= 2")
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"unknown spacing {self.spacing!r}")
        if self.spacing == "log" and self.start <= 0:
            raise ValueError("log spacing needs start > 0")

    def points(self):
        if self.spacing == "log":
            pts = np.geomspace(self.start, self.stop, self.count)
        else:
            pts = np.linspace(self.start, self.stop, self.count)
        # exact end points so that count=2 reproduces the flags verbatim
        pts[0], pts[-1] = self.start, self.stop
        return pts


def _fmt(value):
    if isinstance(value, (float, np.floating)):
        return FLOAT_FORMAT % value
    if value is None:
        return ""
    return str(value)


def _metadata(args):
    lines = [f"# cpgraphene {__version__}"]
    for key in sorted(vars(args)):
        if key == "func":
            continue
        lines.append(f"# {key}={getattr(args, key)}")
    return lines


def write_csv(args, header, rows, out):
    """Render the table and send it to ``out`` (path) or standard output.

    Files are written to a temporary name and renamed, so a failure never
    leaves a partial file behind.
    """
    buf = io.StringIO()
    for line in _metadata(args):
        buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    if out is None:
        sys.stdout.write(text)
        return
    tmp = f"{out}.part"
    try:
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    finally:
        if os.path.exists(tmp):
            os.remove(tmp)


def read_csv(path):
    """Parse a file written by this tool into ``(metadata, rows)``.

    Metadata is a dict of the ``key=value`` lines; rows are dicts of
    strings keyed by the header.
    """
    meta, body = {}, []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#"):
                text = line[1:].strip()
                if "=" in text:
                    key, value = text.split("=", 1)
                    meta[key] = value
            else:
                body.append(line)
    return meta, list(csv.DictReader(body))


def _graphene(delta, mu):
    if delta is None and mu is None:
        return None
    return GrapheneParams(delta or 0.0, mu or 0.0)


def run_record(a_um, temp_k, delta, mu, substrate_name, alpha0, mode, rel_tol):
    """Evaluate one point and return the values in ``RECORD_FIELDS`` order."""
    substrate = substrate_from_name(substrate_name)
    graphene = _graphene(delta, mu)
    config = NumericsConfig(rel_tol=rel_tol)
    scenario = Scenario.from_um(a_um, temp_k, alpha0)
    f_im = force_ideal_metal_classical(scenario)
    l0 = tail = qerr = math.nan
    l_max = 0
    if mode == "classical":
        total = f_im
    elif mode == "asymptotic":
        if graphene is None:
            raise UsageError("--mode asymptotic needs --delta-ev or --mu-ev")
        total = force_asymptotic(scenario, graphene)
    else:
        compute = force_full if mode == "full" else force_l0
        res = compute(scenario, graphene, substrate, config)
        total, l0, tail, l_max, qerr = (res.total, res.l0_term, res.tail_l_ge_1,
                                        res.l_max_used, res.quad_error_estimate)
    ratio_bare = math.nan
    if mode in ("full", "l0") and graphene is not None \
            and not isinstance(substrate, (Vacuum, IdealMetal)):
        bare = compute(scenario, None, substrate, config).total
        # an eps = 1 table gives no bare force at l = 0
        ratio_bare = total / bare if bare != 0 else math.nan
    ratio_as = math.nan
    if graphene is not None and mode != "asymptotic":
        ratio_as = total / force_asymptotic(scenario, graphene)
    delta_f = (total - f_im) / f_im + 0.0
    return (float(a_um), float(temp_k), delta, mu, substrate_name, float(alpha0), mode,
            float(rel_tol), total, l0, tail, l_max, qerr, f_im, total / f_im, ratio_bare,
            delta_f, ratio_as)


def cmd_compute(args):
    if args.a_um is None:
        raise UsageError("compute needs --a-um")
    row = run_record(args.a_um, args.temp_k, args.delta_ev, args.mu_ev, args.substrate,
                     args.alpha0_cm3, args.mode, args.rel_tol)
    write_csv(args, RECORD_FIELDS, [row], args.out)


def cmd_sweep(args):
    spec = SweepSpec(args.axis, args.start, args.stop, args.count, args.spacing)
    if spec.axis != "separation" and args.a_um is None:
        raise UsageError("a delta or mu sweep needs --a-um")
    rows = []
    for value in spec.points():
        a, delta, mu = args.a_um, args.delta_ev, args.mu_ev
        value = float(value)
        if spec.axis == "separation":
            a = value
        elif spec.axis == "delta":
            delta, mu = value, mu or 0.0
        else:
            delta, mu = delta or 0.0, value
        rows.append(run_record(a, args.temp_k, delta, mu, args.substrate,
                               args.alpha0_cm3, args.mode, args.rel_tol))
    write_csv(args, RECORD_FIELDS, rows, args.out)


def cmd_figure(args):
    if args.name not in preset_names():
        raise UsageError(f"unknown figure {args.name!r}; choose from {', '.join(preset_names())}")
    columns, data = figure_table(args.name, args.points, args.temp_k,
                                 NumericsConfig(rel_tol=args.rel_tol))
    write_csv(args, columns, [tuple(float(v) for v in row) for row in data], args.out)


def cmd_crossover(args):
    substrate = substrate_from_name(args.substrate)
    config = NumericsConfig(rel_tol=args.rel_tol)
    template = Scenario.from_um(args.a_low_um, args.temp_k, args.alpha0_cm3)
    query = CrossoverQuery(args.quantity, args.threshold,
                           (args.a_low_um * 1e-6, args.a_high_um * 1e-6))
    rows = []
    for delta, mu in itertools.product(args.delta_ev, args.mu_ev):
        graphene = GrapheneParams(delta, mu)
        try:
            a_cross = find_crossover(query, template, graphene, substrate, config) * 1e6
            status = "crossed"
        except NoStraddleError as exc:
            # below everywhere: the threshold is met from the lower edge on
            status = exc.side
            a_cross = args.a_low_um if exc.side == "below" else math.nan
            log.info("delta=%g mu=%g: %s", delta, mu, exc)
        except CasimirError as exc:
            status, a_cross = "error", math.nan
            log.error("delta=%g mu=%g: %s", delta, mu, exc)
        rows.append((float(delta), float(mu), args.quantity, float(args.threshold),
                     status if status != "above" else "not-reached", a_cross))
    write_csv(args, ("delta_ev", "mu_ev", "quantity", "threshold", "status", "a_cross_um"),
              rows, args.out)


def _common(p, graphene=True):
    p.add_argument("--temp-k", type=float, default=300.0)
    if graphene:
        p.add_argument("--delta-ev", type=float, default=None)
        p.add_argument("--mu-ev", type=float, default=None)
    p.add_argument("--substrate", default="sio2",
                   help="sio2, vacuum, ideal-metal or table:PATH")
    p.add_argument("--alpha0-cm3", type=float, default=1.0)
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--out", default=None, help="CSV file (default: standard output)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cpgraphene",
        description="Casimir-Polder force on a microparticle above a graphene-coated plate.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    modes = ("full", "l0", "asymptotic", "classical")
    p = sub.add_parser("compute", help="one evaluation")
    p.add_argument("--a-um", type=float, default=None)
    p.add_argument("--mode", choices=modes, default="full")
    _common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="evaluate along one axis")
    p.add_argument("--a-um", type=float, default=None)
    p.add_argument("--mode", choices=modes, default="full")
    p.add_argument("--axis", choices=("separation", "delta", "mu"), default="separation")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--spacing", choices=("linear", "log"), default="linear")
    _common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="data for one of the figure presets")
    p.add_argument("name", help=", ".join(preset_names()))
    p.add_argument("--points", type=int, default=40)
    p.add_argument("--temp-k", type=float, default=300.0)
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("crossover", help="separation where a deviation crosses a threshold")
    p.add_argument("--quantity", choices=QUANTITIES, default="delta-vs-ideal")
    p.add_argument("--threshold", type=float, default=0.01)
    p.add_argument("--a-low-um", type=float, default=1.0)
    p.add_argument("--a-high-um", type=float, default=1000.0)
    p.add_argument("--delta-ev", type=float, nargs="+", required=True)
    p.add_argument("--mu-ev", type=float, nargs="+", required=True)
    p.add_argument("--temp-k", type=float, default=300.0)
    p.add_argument("--substrate", default="sio2")
    p.add_argument("--alpha0-cm3", type=float, default=1.0)
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_crossover)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    logging.captureWarnings(True)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            args.func(args)
    except PermittivityTableError as exc:
        log.error("%s", exc)
        return EXIT_FILE
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_FILE
    except CasimirError as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except (UsageError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    return EXIT_OK


__all__ = ["main", "build_parser", "SweepSpec", "run_record", "read_csv", "deviation"]
