"""
Command-line entry point: one computation per invocation, one report.

Exit codes: 0 when every check passes, 1 when a check fails (the report
carries a `failures` list), 2 on usage errors or unreadable input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import __version__
from . import barcobar as bc
from . import spaces as sp
from . import witt
from .exact_linalg import CohomologyGroup, acyclicity_certificate, cohomology, random_complex, torsion_fixtures

SCHEMA = "binring.report/1"


@dataclass
class RunConfig:
    command: str
    target: str | None = None
    second: str | None = None
    file: str | None = None
    window_n: int | None = None
    window_d: int | None = None
    truncation: int | None = None
    samples: int | None = None
    seed: int = 0
    max_level: int | None = None
    out: str | None = None
    format: str = "json"
    timing: bool = True

    def echo(self) -> dict:
        d = asdict(self)
        for k in ("out", "format", "timing"):
            d.pop(k)
        return {k: v for k, v in d.items() if v is not None}


@dataclass
class Outcome:
    result: dict
    failures: list[str] = field(default_factory=list)
    table: list[dict] | None = None


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# expected answers


def _groups(table: dict[int, tuple[int, tuple[int, ...]]]) -> dict[int, CohomologyGroup]:
    return {n: CohomologyGroup(f, t) for n, (f, t) in table.items()}


EXPECTED_SPACES = {
    "point": _groups({0: (1, ())}),
    "circle": _groups({0: (1, ()), 1: (1, ())}),
    "sphere2": _groups({0: (1, ()), 1: (0, ()), 2: (1, ())}),
    "sphere3": _groups({0: (1, ()), 1: (0, ()), 2: (0, ()), 3: (1, ())}),
    "boundary2": _groups({0: (1, ()), 1: (1, ())}),
    "boundary3": _groups({0: (1, ()), 1: (0, ()), 2: (1, ())}),
    "simplex2": _groups({0: (1, ()), 1: (0, ()), 2: (0, ())}),
    "torus": _groups({0: (1, ()), 1: (2, ()), 2: (1, ())}),
    "rp2": _groups({0: (1, ()), 1: (0, ()), 2: (0, (2,))}),
    "circle_x_sphere2": _groups({0: (1, ()), 1: (1, ()), 2: (1, ()), 3: (1, ())}),
}


def _nonzero_exactly(H: dict, support: Callable[[int, int], bool]) -> list[str]:
    bad = []
    for (n, d), g in sorted(H.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        want = CohomologyGroup(1) if support(n, d) else CohomologyGroup()
        if g != want:
            bad.append(f"({n},{d}): got {g}, expected {want}")
    return bad


def _bigraded_table(H: dict) -> list[dict]:
    return [
        {"n": n, "d": d, "free_rank": g.free_rank, "torsion": " ".join(map(str, g.torsion)), "group": str(g)}
        for (n, d), g in sorted(H.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    ]


def _load_json(path: str | None) -> dict:
    if not path:
        raise UsageError("--file is required for this input")
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# commands


def _coalgebra(cfg: RunConfig, d_max: int) -> bc.GradedCoalgebra:
    kind = cfg.target or "num"
    if kind == "num":
        return bc.num_coalgebra(d_max)
    if kind == "trivial":
        return bc.trivial_coalgebra(d_max)
    if kind == "divided":
        return bc.divided_power_dual(d_max)
    if kind == "num2":
        return bc.num_coalgebra_multi(2, d_max)
    if kind == "file":
        try:
            C = bc.GradedCoalgebra.from_json(_load_json(cfg.file))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad coalgebra file: {exc}") from exc
        defects = C.coassociativity_defects()
        if defects:
            raise UsageError(f"coalgebra in file is not coassociative at {defects[0]}")
        return C
    raise UsageError(f"unknown coalgebra {kind!r}")


def cmd_cobar(cfg: RunConfig) -> Outcome:
    n_max = 6 if cfg.window_n is None else cfg.window_n
    d_max = 8 if cfg.window_d is None else cfg.window_d
    C = _coalgebra(cfg, d_max)
    try:
        H = bc.cobar_cohomology(C, n_max, d_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    failures = []
    expectation = None
    if cfg.target in (None, "num"):
        expectation = "Z at (0,0) and (1,1), zero elsewhere"
        failures = _nonzero_exactly(H, lambda n, d: (n, d) in ((0, 0), (1, 1)))
    elif cfg.target == "trivial":
        expectation = "Z at (0,0) only"
        failures = _nonzero_exactly(H, lambda n, d: (n, d) == (0, 0))
    result = {
        "coalgebra": C.name,
        "window": {"n_max": n_max, "d_max": d_max},
        "expectation": expectation,
        "cohomology": bc.cohomology_table(H),
        "nonzero": {f"({n},{d})": str(g) for (n, d), g in sorted(H.items()) if not g.is_zero},
    }
    return Outcome(result, failures, _bigraded_table(H))


def cmd_bar(cfg: RunConfig) -> Outcome:
    n_max = 5 if cfg.window_n is None else cfg.window_n
    d_max = 8 if cfg.window_d is None else cfg.window_d
    kind = cfg.target or "poly"
    algebras = {
        "poly": lambda: bc.polynomial_algebra(d_max),
        "dual-numbers": lambda: bc.truncated_polynomial_algebra(2, d_max),
        "trivial": lambda: bc.trivial_algebra(d_max),
        "koszul": lambda: bc.koszul_dg_algebra(d_max),
    }
    if kind not in algebras:
        raise UsageError(f"unknown algebra {kind!r}; choose from {sorted(algebras)}")
    A = algebras[kind]()
    try:
        H = bc.bar_homology(A, n_max, d_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    supports = {
        "poly": lambda n, d: (n, d) in ((0, 0), (1, 1)),
        "dual-numbers": lambda n, d: n == d,
        "trivial": lambda n, d: (n, d) == (0, 0),
        "koszul": lambda n, d: (n, d) == (0, 0),
    }
    failures = _nonzero_exactly(H, supports[kind])
    result = {
        "algebra": A.name,
        "window": {"n_max": n_max, "d_max": d_max},
        "homology": bc.cohomology_table(H),
        "nonzero": {f"({n},{d})": str(g) for (n, d), g in sorted(H.items()) if not g.is_zero},
    }
    return Outcome(result, failures, _bigraded_table(H))


def cmd_dualcheck(cfg: RunConfig) -> Outcome:
    n_max = 5 if cfg.window_n is None else cfg.window_n
    d_max = 8 if cfg.window_d is None else cfg.window_d
    C = _coalgebra(cfg, d_max)
    try:
        rep = bc.dual_compare(C, n_max, d_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    failures = [f"bar and transposed cobar differ at {m}" for m in rep.mismatches]
    if rep.compared == 0 and d_max > 0:
        failures.append("no differentials compared")
    return Outcome(rep.to_json(), failures)


def _space(name: str | None, file: str | None) -> sp.FiniteSimplicialSet:
    if name == "file" or (name is None and file):
        try:
            return sp.load_simplicial_set(_load_json(file))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad simplicial set file: {exc}") from exc
    if name not in sp.FIXTURES:
        raise UsageError(f"unknown space {name!r}; choose from {sorted(sp.FIXTURES)} or 'file'")
    return sp.FIXTURES[name]()


def cmd_space(cfg: RunConfig) -> Outcome:
    from .cosimplicial import normalized_complex, validate

    X = _space(cfg.target, cfg.file)
    T = X.dim + 1 if cfg.truncation is None else cfg.truncation
    H = sp.space_cohomology(X, T)
    failures = []
    # same groups from the normalized complex of the full cochain ring
    R = sp.cochain_ring(X, T)
    v = validate(R.structure)
    if v is not None:
        failures.append(f"cochain ring violates {v}")
    HN = cohomology(normalized_complex(R.structure))
    for n in range(T):
        if HN.get(n, CohomologyGroup()) != H[n]:
            failures.append(f"H^{n}: nondegenerate cochains give {H[n]}, normalized cochain ring gives {HN.get(n)}")
    expected = EXPECTED_SPACES.get(cfg.target or "")
    if expected is not None:
        for n, g in expected.items():
            if n < T and H[n] != g:
                failures.append(f"H^{n}: got {H[n]}, expected {g}")
    result = {
        "space": X.name,
        "T": T,
        "nondegenerate_counts": {str(k): len(v) for k, v in sorted(X.cells.items())},
        "level_ranks": list(R.structure.ranks),
        "cohomology": {str(n): g.to_json() for n, g in H.items()},
        "groups": {str(n): str(g) for n, g in H.items()},
        "expected": None if expected is None else {str(n): str(g) for n, g in expected.items()},
    }
    table = [{"degree": n, "free_rank": g.free_rank, "torsion": " ".join(map(str, g.torsion)), "group": str(g)} for n, g in H.items()]
    return Outcome(result, failures, table)


def cmd_kunneth(cfg: RunConfig) -> Outcome:
    X = _space(cfg.target or "circle", None)
    Y = _space(cfg.second or "circle", None)
    T = 4 if cfg.truncation is None else cfg.truncation
    rep = sp.kunneth_check(X, Y, T)
    failures = [k for k, v in rep.to_json().items() if v is False]
    return Outcome(rep.to_json(), failures)


def cmd_alpha1(cfg: RunConfig) -> Outcome:
    rep = sp.alpha1_pointwise_check(
        max_internal_degree=6 if cfg.window_d is None else cfg.window_d,
        samples=500 if cfg.samples is None else cfg.samples,
        seed=cfg.seed,
        max_level=3 if cfg.max_level is None else cfg.max_level,
    )
    failures = list(rep.discrepancies[:20])
    for key in ("x_is_cocycle", "x_generates_cobar_H1", "x_matches_linear_generator"):
        if not rep.to_json()[key]:
            failures.append(f"{key} is false")
    return Outcome(rep.to_json(), failures)


def cmd_binomiality(cfg: RunConfig) -> Outcome:
    X = _space(cfg.target or "torus", cfg.file)
    rep = sp.binomiality_check(
        X, 3 if cfg.truncation is None else cfg.truncation, 100 if cfg.samples is None else cfg.samples, cfg.seed
    )
    failures = list(rep.failures[:20])
    if not rep.structure_maps_are_ring_maps:
        failures.append("a structure map is not a pullback of functions")
    return Outcome(rep.to_json(), failures)


def cmd_witt(cfg: RunConfig) -> Outcome:
    try:
        p = int(cfg.target or 2)
        k = int(cfg.second or 1)
        rep = witt.frobenius_fixed_points(p, k)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    failures = []
    if not (rep.cyclic and rep.order == p**k and rep.invariant_factors == ((p**k,) if k else ())):
        failures.append(f"fixed points have invariants {rep.invariant_factors}, expected cyclic of order {p ** k}")
    if not rep.closed_under_mul:
        failures.append("fixed points are not a subring")
    out = rep.to_json()
    out["group"] = " + ".join(f"Z/{f}" for f in rep.invariant_factors) or "0"
    return Outcome(out, failures)


def cmd_conservativity(cfg: RunConfig) -> Outcome:
    d_max = 5 if cfg.window_d is None else cfg.window_d
    maps = bc.example_maps(d_max)
    which = cfg.target or "all"
    if which != "all" and which not in maps:
        raise UsageError(f"unknown example {which!r}; choose from {sorted(maps)} or 'all'")
    names = sorted(maps) if which == "all" else [which]
    reports = {name: bc.conservativity_demo(maps[name], d_max) for name in names}
    failures = [f"{name}: B(f) is a quasi-isomorphism but f is not" for name, r in reports.items() if r.contradiction]
    return Outcome({"window": {"d_max": d_max}, "examples": {n: r.to_json() for n, r in reports.items()}}, failures)


def cmd_acyclic(cfg: RunConfig) -> Outcome:
    samples = 50 if cfg.samples is None else cfg.samples
    rng = random.Random(cfg.seed)
    failures = []
    acyclic = 0
    for k in range(samples):
        C, H = random_complex(rng)
        rep = acyclicity_certificate(C)
        truth = all(g.is_zero for g in H.values())
        acyclic += truth
        if not rep.consistent or rep.acyclic_over_Z != truth:
            failures.append(f"random complex {k}: certificate {rep.to_json()} vs known acyclic={truth}")
    crafted = {}
    for name, (C, witnesses) in torsion_fixtures().items():
        rep = acyclicity_certificate(C)
        crafted[name] = rep.to_json()
        if not rep.consistent or rep.witness_primes != witnesses or rep.acyclic_over_Z:
            failures.append(f"fixture {name}: {rep.to_json()}")
    result = {
        "random_complexes": samples,
        "random_acyclic": acyclic,
        "random_agreements": samples - sum(f.startswith("random") for f in failures),
        "crafted": crafted,
    }
    return Outcome(result, failures)


COMMANDS: dict[str, tuple[Callable[[RunConfig], Outcome], str]] = {
    "cobar": (cmd_cobar, "cobar cohomology table: num | trivial | divided | num2 | file"),
    "bar": (cmd_bar, "bar homology table: poly | dual-numbers | trivial | koszul"),
    "dualcheck": (cmd_dualcheck, "bar of the dual algebra versus transposed cobar"),
    "space": (cmd_space, "integer cohomology of a fixture space or a JSON simplicial set"),
    "kunneth": (cmd_kunneth, "Kunneth comparison for two fixture spaces"),
    "alpha1": (cmd_alpha1, "pointwise check of the cobar object of Num[x] against Z^{K_1}"),
    "binomiality": (cmd_binomiality, "sampled binomial-ring axioms on a cochain ring"),
    "witt": (cmd_witt, "Frobenius-fixed points of p-typical Witt vectors over F_p: witt P K"),
    "conservativity": (cmd_conservativity, "f versus B(f) quasi-isomorphism verdicts"),
    "acyclic": (cmd_acyclic, "acyclicity certificates on random and crafted complexes"),
}


# ---------------------------------------------------------------------------
# output


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out += _flatten(v, f"{prefix}.{k}" if prefix else str(k))
        return out
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        out = []
        for i, v in enumerate(obj):
            out += _flatten(v, f"{prefix}[{i}]")
        return out
    if isinstance(obj, list):
        return [(prefix, " ".join(map(str, obj)))]
    return [(prefix, obj)]


def render(report: dict, table: list[dict] | None, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if table:
            w = csv.DictWriter(buf, fieldnames=list(table[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(table)
        else:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["key", "value"])
            w.writerows(_flatten(report))
        return buf.getvalue()
    lines = [f"{report['command']}: {'PASS' if report['passed'] else 'FAIL'}"]
    for key, value in _flatten(report["result"]):
        lines.append(f"  {key} = {value}")
    for f in report.get("failures", []):
        lines.append(f"  failure: {f}")
    if "wall_time_s" in report:
        lines.append(f"  wall time {report['wall_time_s']:.3f} s")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="binring", description="Exact computations with reproducible reports.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("target", nargs="?", help="fixture / example name (command specific)")
        p.add_argument("second", nargs="?", help="second fixture or parameter (kunneth, witt)")
        p.add_argument("--file", help="JSON input for 'file' targets")
        p.add_argument("--window-n", type=int, help="largest cohomological degree n reported")
        p.add_argument("--window-d", type=int, help="largest internal degree d")
        p.add_argument("--truncation", "-T", type=int, help="cosimplicial truncation level T")
        p.add_argument("--samples", type=int, help="number of random samples")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-level", type=int, help="largest cosimplicial level sampled (alpha1)")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
        p.add_argument(
            "--no-timing", dest="timing", action="store_false", help="omit wall time so reports are byte-identical"
        )
    return parser


def run(cfg: RunConfig) -> tuple[dict, list[dict] | None]:
    func, _ = COMMANDS[cfg.command]
    start = time.perf_counter()
    outcome = func(cfg)
    elapsed = time.perf_counter() - start
    report = {
        "schema": SCHEMA,
        "library_version": __version__,
        "command": cfg.command,
        "config": cfg.echo(),
        "passed": not outcome.failures,
        "failures": outcome.failures,
        "result": outcome.result,
    }
    if cfg.timing:
        report["wall_time_s"] = round(elapsed, 6)
    return report, outcome.table


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(**vars(args))
    try:
        report, table = run(cfg)
    except UsageError as exc:
        json.dump({"schema": SCHEMA, "command": cfg.command, "error": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 2
    text = render(report, table, cfg.format)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if report["passed"] else 1
