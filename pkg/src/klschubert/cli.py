"""Command-line front end.

    klschubert print-fgl --m 2 --out latex
    klschubert segre --m 1 --e-roots x1,x2 --f-roots y1 --k 1
    klschubert kl --type A --m 1 --n 3 --d 1 --lambda 1 --specialize
    klschubert verify --suite all --max-m 2 --workers 4

Results go to stdout and are byte-identical between runs; progress and timing
go to stderr.  Exit status is 0 on success, 1 when a verification fails and 2
on invalid input.
"""
from __future__ import annotations

import argparse
import configparser
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import klengine, schurkernels, segre, symfn
from .coeffs import Q2mScalar, gamma_table
from .fgl import build_fgl, unfactored_sum, verify_fgl_axioms
from .polyalg import Poly, homogeneous_degree, sum_polys
from .textio import ParseError, from_json_obj, parse, to_display, to_json_obj, to_latex, to_text

SUITES = ("coeffs", "polyalg", "fgl", "symfn", "segre", "kernels", "klA", "klC")


class UsageError(ValueError):
    pass


def render(p: Poly, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(to_json_obj(p), sort_keys=True)
    if fmt == "latex":
        return to_latex(p)
    return to_display(p)


# -- verification cases ---------------------------------------------------------
# Every case is a module-level function returning a list of failure strings,
# so cases can be shipped to worker processes by name.


def _residuals(pairs) -> list[str]:
    return [f"{name}: {to_text(r)}" for name, r in pairs if r]


def case_coeffs(m: int) -> list[str]:
    g = gamma_table(m)
    out = []
    if any(g[l] != g[2 * m - l] for l in range(1, 2 * m)):
        out.append("gamma is not palindromic")
    if sum((-1) ** l * g[l] for l in range(2 * m)):
        out.append("alternating gamma sum is nonzero")
    return out


def case_scalars(m: int, seed: int) -> list[str]:
    rng = random.Random(seed * 1000 + m)
    out = []
    for _ in range(50):
        a, b, c = (Q2mScalar(rng.randint(-9, 9), rng.randint(-9, 9), m) for _ in range(3))
        if a * b != b * a or (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
            out.append(f"ring axiom fails on {a}, {b}, {c}")
    return out


def _random_poly(rng: random.Random, m: int) -> Poly:
    vars_ = [Poly.gen("x", 1, m), Poly.gen("x", 2, m), Poly.gen("y", 1, m), Poly.gen("tau", 1, m)]
    p = Poly(m=m)
    for _ in range(rng.randint(0, 5)):
        t = Poly.const(rng.randint(-5, 5), m) + Poly.alpha(m) * rng.randint(-5, 5)
        for v in vars_:
            t = t * v ** rng.randint(0, 2)
        p = p + t
    return p


def case_polyalg(m: int, seed: int) -> list[str]:
    rng = random.Random(seed * 1000 + m)
    out = []
    for _ in range(30):
        a, b, c = (_random_poly(rng, m) for _ in range(3))
        if a * b != b * a or (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
            out.append(f"ring axiom fails on {to_text(a)}")
        if parse(to_text(a), m) != a or parse(to_display(a), m) != a:
            out.append(f"text round trip fails on {to_text(a)}")
        if from_json_obj(json.loads(json.dumps(to_json_obj(a)))) != a:
            out.append(f"json round trip fails on {to_text(a)}")
    return out


def case_fgl(m: int) -> list[str]:
    rep = verify_fgl_axioms(m)
    out = _residuals(rep.residuals.items())
    F = build_fgl(m)
    if F.sum != unfactored_sum(m):
        out.append("factored and expanded forms differ")
    if homogeneous_degree(F.sum) != 1:
        out.append("formal group law is not homogeneous of degree 1")
    return out


def case_symfn(n: int, m: int) -> list[str]:
    xs = symfn.root_list("x", n, m)
    ys = symfn.root_list("y", max(n - 1, 1), m)
    rep = symfn.newton_identity_residuals(8, xs, m)
    out = _residuals((f"newton {k}{part}", r) for (k, part), r in rep.residuals.items())
    for k in range(1, 9):
        dual = sum_polys(
            ((-1) ** i * symfn.elem_sym(i, xs, m) * symfn.complete_sym(k - i, xs, m) for i in range(k + 1)), m
        )
        out += _residuals([(f"e/h duality k={k}", dual)])
    V = symfn.VirtualBundle(xs, ys, m)
    for k in range(1, 7):
        out += _residuals([(f"virtual p_{k}", symfn.virtual_power_sum(k, V) - symfn.power_sum_via_chern(k, V))])
    G = symfn.VirtualBundle(xs, (), m)
    for k in range(0, 5):
        out += _residuals([(f"genuine c_{k}", symfn.virtual_chern(k, G) - symfn.elem_sym(k, xs, m))])
    return out


def case_segre_paths(e: int, m: int) -> list[str]:
    xs = symfn.root_list("x", e, m)
    zero = Poly(m=m)
    out = []
    for k in range(-2 * m, 6):
        f = segre.segre_formula(k, xs, m)
        pushed = segre.segre_vishik(k, xs, m, stabilize=True)
        out += _residuals([(f"S_{k} formula - push", f - pushed)])
        out += _residuals([(f"S_{k} stability", segre.segre_formula(k, xs + (zero,), m) - f)])
        out += _residuals([(f"S_{k} mod al", f.drop_alpha() - symfn.complete_sym(k, xs, m))])
        if f and homogeneous_degree(f) != k:
            out.append(f"S_{k} has degree {homogeneous_degree(f)}")
    return out


def case_segre_series(e: int, m: int) -> list[str]:
    xs = symfn.root_list("x", e, m)
    res = segre.segre_series_residuals(xs, m, -2 * m - 3, 6)
    return _residuals((f"R_{i}", r) for i, r in res.items())


def case_push(e: int, f: int, m: int) -> list[str]:
    xs = symfn.root_list("x", e, m)
    ys = symfn.root_list("y", f, m)
    out = []
    for s in range(4):
        lhs = segre.push_twisted_top(s, xs, ys, m)
        rhs = segre.segre_virtual(s + f - e + 1, xs, ys, m)
        out += _residuals([(f"s={s}", lhs - rhs)])
    return out


def case_vandermonde(lam: tuple, m: int) -> list[str]:
    out = []
    chk = schurkernels.vandermonde_identity_check(lam, m)
    if not chk.ok:
        out.append(f"vandermonde residual with {len(chk.residual)} terms")
    if schurkernels.kernel_A(lam, m).degree() != sum(lam):
        out.append("kernel is not homogeneous of degree |lambda|")
    return out


def case_pfaffian(lam: tuple, m: int) -> list[str]:
    out = _residuals([("pfaffian kernel", schurkernels.pfaffian_identity_check(lam, m).residual)])
    family = schurkernels.ClassSymbolFamily.for_m("C", [p - 1 for p in lam], m)
    if len(lam) <= 3:
        deep = schurkernels.phi(schurkernels.kernel_C(lam, m, 2), family)
        out += _residuals([("truncation margin", deep - schurkernels.phi(schurkernels.kernel_C(lam, m), family))])
    if len(lam) % 2 == 0:
        rows = list(zip(family.superscripts, lam))
        rec = schurkernels.pfaffian_recursion(rows, m)
        out += _residuals([("row expansion", schurkernels.multischur_pf(rows, m) - rec)])
    return out


def case_kl_A(n: int, d: int, lam: tuple, m: int, specialize: bool) -> list[str]:
    s = klengine.GrassmannSetup(n, d, lam, m)
    closed = klengine.kl_A_closed(s)
    iterated = klengine.kl_A_iterated(s)
    out = _residuals([("closed - iterated", closed - iterated)])
    out += _residuals([("classical part", closed.drop_alpha() - klengine.kl_A_closed(s, classical=True))])
    if specialize:
        out += _residuals([
            ("specialized", klengine.specialize_split(closed, s) - klengine.specialize_split(iterated, s))
        ])
    return out


def case_kl_C(n: int, lam: tuple, m: int) -> list[str]:
    s = klengine.LagrangianSetup(n, lam, m)
    closed = klengine.kl_C_closed(s)
    out = _residuals([("closed - iterated", closed - klengine.kl_C_iterated(s))])
    out += _residuals([("classical part", closed.drop_alpha() - klengine.kl_C_closed(s, classical=True))])
    return out


def _fmt(lam) -> str:
    return ",".join(map(str, lam)) or "empty"


def build_cases(suite: str, max_m: int, seed: int) -> list[tuple[str, str, tuple]]:
    """(case id, function name, arguments) for one suite."""
    ms = lambda cap: range(1, min(cap, max_m) + 1)
    cases: list[tuple[str, str, tuple]] = []
    if suite == "coeffs":
        cases += [(f"coeffs/gamma/m={m}", "case_coeffs", (m,)) for m in ms(8)]
        cases += [(f"coeffs/scalars/m={m}", "case_scalars", (m, seed)) for m in ms(4)]
    elif suite == "polyalg":
        cases += [(f"polyalg/m={m}", "case_polyalg", (m, seed)) for m in ms(4)]
    elif suite == "fgl":
        cases += [(f"fgl/m={m}", "case_fgl", (m,)) for m in ms(4)]
    elif suite == "symfn":
        cases += [(f"symfn/n={n}/m={m}", "case_symfn", (n, m)) for m in ms(2) for n in range(1, 5)]
    elif suite == "segre":
        cases += [(f"segre/paths/e={e}/m={m}", "case_segre_paths", (e, m)) for m in ms(3) for e in range(1, 5)]
        cases += [(f"segre/series/e={e}/m={m}", "case_segre_series", (e, m)) for m in ms(2) for e in range(1, 5)]
        cases += [
            (f"segre/push/e={e}/f={f}/m={m}", "case_push", (e, f, m))
            for m in ms(2) for e in range(1, 4) for f in range(0, 4)
        ]
    elif suite == "kernels":
        for m in ms(3):
            for r in range(1, 5):
                for lam in klengine.partitions_in_box(r, 4):
                    if len(lam) == r:
                        cases.append((f"kernels/A/m={m}/{_fmt(lam)}", "case_vandermonde", (lam, m)))
        for m in ms(2):
            for lam in klengine.strict_partitions(5):
                if 1 <= len(lam) <= 4:
                    cases.append((f"kernels/C/m={m}/{_fmt(lam)}", "case_pfaffian", (lam, m)))
    elif suite == "klA":
        for m in ms(2):
            for n in range(1, 5):
                for d in range(1, min(n, 2) + 1):
                    for lam in klengine.partitions_in_box(d, n - d):
                        cases.append((f"klA/m={m}/n={n}/d={d}/{_fmt(lam)}", "case_kl_A", (n, d, lam, m, False)))
        rng = random.Random(seed)
        pool = list(klengine.partitions_in_box(3, 2))
        for lam in sorted(rng.sample(pool, min(4, len(pool)))):
            cases.append((f"klA/specialized/m=1/n=5/d=3/{_fmt(lam)}", "case_kl_A", (5, 3, lam, 1, True)))
    elif suite == "klC":
        for m in ms(2):
            for n in range(1, 4):
                for lam in klengine.strict_partitions(n):
                    cases.append((f"klC/m={m}/n={n}/{_fmt(lam)}", "case_kl_C", (n, lam, m)))
    else:
        raise UsageError(f"unknown suite {suite!r}")
    return cases


def run_case(item: tuple[str, str, tuple]) -> tuple[str, list[str]]:
    case_id, fname, args = item
    try:
        failures = globals()[fname](*args)
    except Exception as exc:  # a crash is a failure of that case, not of the run
        failures = [f"{type(exc).__name__}: {exc}"]
    return case_id, failures


@dataclass
class VerifyReport:
    suite: str
    cases: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)
    wall: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures


def run_verify(suite: str, max_m: int, seed: int, workers: int, stream=None) -> VerifyReport:
    stream = stream or sys.stderr
    suites = SUITES if suite == "all" else (suite,)
    items = [c for s in suites for c in build_cases(s, max_m, seed)]
    start = time.perf_counter()
    results = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for case_id, failures in pool.map(run_case, items):
                results[case_id] = failures
                print(f"{'ok  ' if not failures else 'FAIL'} {case_id}", file=stream, flush=True)
    else:
        for item in items:
            case_id, failures = run_case(item)
            results[case_id] = failures
            print(f"{'ok  ' if not failures else 'FAIL'} {case_id}", file=stream, flush=True)
    report = VerifyReport(suite, len(items), wall=time.perf_counter() - start)
    for case_id in sorted(results):
        for f in results[case_id]:
            report.failures.append((case_id, f))
    return report


# -- argument handling -------------------------------------------------------------


def _roots(text: str, m: int) -> tuple[Poly, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(parse(piece, m) for piece in text.split(","))


def _partition(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"bad partition {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="klschubert", description=__doc__.split("\n")[0])
    ap.add_argument("--config", help="key = value file mirroring the flags")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("print-fgl", help="print the formal group law")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--out", choices=("text", "latex", "json"), default="text")

    p = sub.add_parser("segre", help="relative Segre class S_k(E - F)")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--e-roots", required=True, help="comma separated, e.g. x1,x2")
    p.add_argument("--f-roots", default="")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", choices=("text", "latex", "json"), default="text")

    p = sub.add_parser("kl", help="Kempf-Laksov class")
    p.add_argument("--type", choices=("A", "C"), required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--lambda", dest="lam", default="")
    p.add_argument("--out", choices=("text", "latex", "json"), default="text")
    p.add_argument("--path", choices=("closed", "iterated", "both"), default="closed")
    p.add_argument("--specialize", action="store_true")

    p = sub.add_parser("verify", help="run identity checks")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--max-m", type=_positive, default=8, help="upper bound on m; each suite has its own cap")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=_positive, default=1)
    return ap


def config_argv(path: str) -> list[str]:
    """Turn a key = value file into argv; ``command`` names the subcommand."""
    cp = configparser.ConfigParser()
    try:
        with open(path) as fh:
            cp.read_string("[run]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    section = dict(cp["run"])
    if "command" not in section:
        raise UsageError("config needs a 'command' key")
    argv = [section.pop("command")]
    for key, value in section.items():
        flag = "--" + key.replace("_", "-")
        if key == "lambda":
            flag = "--lambda"
        if key == "specialize":
            if value.lower() in ("1", "true", "yes", "on"):
                argv.append(flag)
            continue
        argv += [flag, value]
    return argv


def _expand_config(argv: list[str]) -> list[str]:
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise UsageError("--config needs a path")
    rest = argv[:i] + argv[i + 2:]
    base = config_argv(argv[i + 1])
    # flags given on the command line win over the file
    if rest and rest[0] in ("print-fgl", "segre", "kl", "verify"):
        rest = rest[1:]
    return base + rest


def _worker_cap(requested: int) -> int:
    env = os.environ.get("KLSCHUBERT_WORKERS")
    if env:
        try:
            return max(1, min(requested, int(env)))
        except ValueError:
            raise UsageError("KLSCHUBERT_WORKERS must be an integer") from None
    return requested


def run(args: argparse.Namespace, out=None) -> int:
    out = out or sys.stdout
    if args.command == "print-fgl":
        print(render(build_fgl(args.m).sum, args.out), file=out)
        return 0
    if args.command == "segre":
        E = _roots(args.e_roots, args.m)
        F = _roots(args.f_roots, args.m)
        print(render(segre.segre_virtual(args.k, E, F, args.m), args.out), file=out)
        return 0
    if args.command == "kl":
        lam = _partition(args.lam)
        if args.type == "A":
            if args.d is None:
                raise UsageError("type A needs --d")
            setup = klengine.GrassmannSetup(args.n, args.d, lam, args.m)
            closed, iterated = klengine.kl_A_closed, klengine.kl_A_iterated
        else:
            setup = klengine.LagrangianSetup(args.n, lam, args.m)
            closed, iterated = klengine.kl_C_closed, klengine.kl_C_iterated
        status = 0
        if args.path == "iterated":
            value = iterated(setup)
        else:
            value = closed(setup)
            if args.path == "both" and iterated(setup) != value:
                print("closed and iterated results differ", file=sys.stderr)
                status = 1
        if args.specialize:
            value = klengine.specialize_split(value, setup)
        print(render(value, args.out), file=out)
        return status
    report = run_verify(args.suite, args.max_m, args.seed, _worker_cap(args.workers))
    for case_id, failure in report.failures:
        print(f"FAIL {case_id}: {failure}", file=out)
    print(f"suite {report.suite}: {report.cases} cases, {len(report.failures)} failures", file=out)
    print(f"wall time {report.wall:.2f}s", file=sys.stderr)
    return 0 if report.ok else 1


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _expand_config(argv)
        args = build_parser().parse_args(argv)
        return run(args)
    except SystemExit as exc:  # argparse reports bad flags with status 2
        return int(exc.code or 0)
    except (UsageError, ParseError, klengine.InvalidPartition, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
