"""Command-line driver.

Exit codes: 0 success, 1 a property check failed, 2 usage or parse error.
"""

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone

from . import __version__
from .bounds import chernoff_bound, keli_beta_bound, min_bayes_risk_closed_form
from .checks import DEFAULT_EPS, oracle_suite, verify_suite
from .discrimination import error_pair, keli_test, neyman_pearson_test
from .errors import InvalidStateError, ResourceError
from .iid import stein_experiment
from .linalg import IND_TOL
from .states import load_pair

TRADEOFF_HEADER = ["eps", "alpha_keli", "beta_keli", "keli_bound", "alpha_np", "beta_np",
                   "bayes_risk_min", "chernoff_value", "chernoff_s_star"]
STEIN_HEADER = ["eps", "n", "log_eps_n", "alpha_lower", "alpha_upper", "minus_log_beta",
                "predicted"]


class UsageError(Exception):
    pass


def _floats(text):
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    return vals


def _ints(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")


def _fmt(v):
    return v if isinstance(v, (int, str)) else format(float(v), ".17g")


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(doc, args):
    if not args.no_timestamp:
        doc = {**doc, "timestamp": datetime.now(timezone.utc).isoformat()}
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)


def _eps_grid(args, default):
    eps = default if args.eps is None else args.eps
    if not eps:
        raise UsageError("--eps must list at least one value")
    if any(e <= 0 for e in eps):
        raise UsageError("--eps values must be positive")
    return eps


def _need_pair(args):
    if not args.pair:
        raise UsageError("--pair <file> is required")
    return load_pair(args.pair)


def cmd_verify(args):
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    if args.dim < 1:
        raise UsageError("--dim must be at least 1")
    eps = _eps_grid(args, DEFAULT_EPS)
    res = verify_suite(args.dim, args.trials, args.seed, eps, ind_tol=args.tol)
    res["config"] = {"dim": args.dim, "trials": args.trials, "seed": args.seed, "eps": eps,
                     "ind_tol": args.tol}
    _report(res, args)
    return 1 if res["failures"] else 0


def cmd_tradeoff(args):
    eps_grid = _eps_grid(args, None)
    pair = _need_pair(args)
    rows = []
    bad = False
    for eps in eps_grid:
        t_kl = keli_test(pair, eps, ind_tol=args.tol)
        e_kl = error_pair(pair, t_kl)
        bound = keli_beta_bound(pair, eps, args.tol)
        p = 1.0 / (1.0 + eps)
        e_np = error_pair(pair, neyman_pearson_test(pair, p))
        value, s_star = chernoff_bound(pair, p)
        rows.append([eps, e_kl.alpha, e_kl.beta, bound, e_np.alpha, e_np.beta,
                     min_bayes_risk_closed_form(pair, p), value, s_star])
        bad |= e_kl.beta > bound + 1e-10 or e_kl.alpha > eps + 1e-10
    _emit(_csv(TRADEOFF_HEADER, rows), args.out)
    return 1 if bad else 0


def cmd_stein(args):
    eps_grid = _eps_grid(args, None)
    if any(not 0 < e < 1 for e in eps_grid):
        raise UsageError("stein needs --eps values in (0, 1)")
    n_list = args.n or [25, 100, 400]
    if any(n < 1 for n in n_list):
        raise UsageError("--n values must be positive")
    pair = _need_pair(args)
    rows = []
    for eps in eps_grid:
        for r in stein_experiment(pair, eps, n_list, prune_tol=args.prune_tol):
            rows.append([eps, r.n, r.log_eps_n, r.alpha_tail.lower, r.alpha_tail.upper,
                         r.minus_log_beta, r.predicted])
    _emit(_csv(STEIN_HEADER, rows), args.out)
    return 0


def cmd_oracle(args):
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    eps = _eps_grid(args, (0.25, 0.8, 2.0))
    n_values = args.n or [2, 3]
    if any(not 1 <= n <= 12 for n in n_values):
        raise UsageError("--n values must lie in 1..12 for qubit tensor powers")
    res = oracle_suite(args.trials, args.seed, n_values, eps, args.prune_tol)
    res["config"] = {"trials": args.trials, "seed": args.seed, "n": n_values, "eps": eps,
                     "prune_tol": args.prune_tol}
    _report(res, args)
    return 1 if res["failures"] else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="kelilemma", description="Ke Li's hypothesis-testing lemma, checked numerically.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=4)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--eps", type=_floats, default=None, help="comma-separated list")
    common.add_argument("--n", type=_ints, default=None, help="comma-separated list")
    common.add_argument("--pair", help="state-pair JSON file")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--prune-tol", type=float, default=0.0)
    common.add_argument("--tol", type=float, default=IND_TOL,
                        help="boundary band for eigenvalue indicators")
    common.add_argument("--no-timestamp", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, trials in (("verify", cmd_verify, 200), ("tradeoff", cmd_tradeoff, 1),
                             ("stein", cmd_stein, 1), ("oracle", cmd_oracle, 20)):
        p = sub.add_parser(name, parents=[common])
        p.set_defaults(func=fn, default_trials=trials)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.trials is None:
        args.trials = args.default_trials
    if args.prune_tol < 0 or args.tol < 0:
        print("error: tolerances must be nonnegative", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidStateError as exc:
        print(f"error: invalid state file: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
