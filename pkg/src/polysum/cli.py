"""Command-line surface: bounds, hulls, Minkowski sums, family construction,
tightness verification, block-determinant certification, and a selftest.

Every command emits a deterministic JSON run report (identical argv gives
byte-identical output); wall-clock timings are opt-in via --timing since
they would break that determinism.  Exit codes: 0 all checks pass, 1 a
check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import bounds as bnd
from . import detasym
from .cayley import PartitionedPointSet, minksum_direct, minksum_via_cayley
from .construction import ConstructionParams, find_tau_star, find_zeta_diamond, generate_family, verify_tightness
from .exact import rat
from .hull import PointSet, convex_hull, scale_translate, verify_supporting
from .jsonio import (
    dump_json,
    fraction_str,
    lattice_to_dict,
    load_pointset,
    pointset_to_dict,
)

DEFAULT_SEED = 20240809


@dataclass
class RunReport:
    command: str
    inputs: dict
    outputs: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    timing: Optional[dict] = None

    def check(self, name, expected, actual):
        self.checks.append(
            {"name": name, "expected": expected, "actual": actual, "pass": expected == actual}
        )

    def check_that(self, name, condition):
        self.check(name, True, bool(condition))

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": self.checks,
            "passed": self.passed,
        }
        if self.timing is not None:
            out["timing"] = self.timing
        return out


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polysum",
        description="Exact Minkowski-sum face counts via the Cayley embedding",
    )
    parser.add_argument("--timing", action="store_true", help="include wall-clock timings (non-deterministic output)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phi", help="spanning-subset count (trivial bound kernel)")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--out")

    p = sub.add_parser("bound", help="evaluate a face-count bound")
    p.add_argument("--kind", required=True, choices=["trivial", "three", "two", "zonotope", "f0-many"])
    p.add_argument("--k", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=_int_list)
    p.add_argument("--out")

    p = sub.add_parser("hull", help="face lattice of a polytope JSON file")
    p.add_argument("--inputs", nargs=1, required=True)
    p.add_argument("--method", choices=["auto", "exhaustive", "guided"])
    p.add_argument("--out")

    p = sub.add_parser("minksum", help="f-vector of a Minkowski sum")
    p.add_argument("--inputs", nargs="+", required=True)
    p.add_argument("--method", default="both", choices=["cayley", "direct", "both"])
    p.add_argument("--out")

    p = sub.add_parser("construct", help="build a certified tight family")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--alpha", help="per-part comma lists separated by ';'")
    p.add_argument("--max-halvings", type=int, default=64)
    p.add_argument("--out")

    p = sub.add_parser("verify-tight", help="end-to-end tightness verification")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--max-halvings", type=int, default=64)
    p.add_argument("--report")

    p = sub.add_parser("delta", help="certify positivity of a block determinant")
    p.add_argument("--spec", required=True)
    p.add_argument("--find-tau0", action="store_true")
    p.add_argument("--max-halvings", type=int, default=64)
    p.add_argument("--report")

    p = sub.add_parser("selftest", help="run the invariant suites")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out")

    return parser


def _load_delta_spec(path: str) -> detasym.DeltaSpec:
    import json

    with open(path) as fh:
        data = json.load(fh)
    return detasym.DeltaSpec(
        kappa=tuple(int(k) for k in data["kappa"]),
        beta=tuple(int(b) for b in data["beta"]),
        x=tuple(tuple(rat(v) for v in row) for row in data["x"]),
    )


def _parse_alpha(text: str) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(
        tuple(rat(tok) for tok in part.split(",") if tok.strip())
        for part in text.split(";")
    )


def _cmd_phi(args, report: RunReport) -> None:
    value = bnd.phi(args.ell, tuple(args.n))
    report.outputs["value"] = value
    report.check("phi_matches_composition_sum", bnd.phi_brute_force(args.ell, tuple(args.n)), value)
    print(value)


def _cmd_bound(args, report: RunReport) -> None:
    kind = args.kind
    if kind == "trivial":
        profile = bnd.VertexProfile(tuple(args.n), args.d)
        value = bnd.trivial_upper_bound(args.k, profile)
        report.outputs["value"] = value
    elif kind == "three":
        m1, m2 = args.n
        f0, f1, f2 = bnd.three_polytope_bounds(m1, m2)
        report.outputs["values"] = {"f0": f0, "f1": f1, "f2": f2}
        report.check("euler_consistency", 2, f0 - f1 + f2)
    elif kind == "two":
        n1, n2 = args.n
        value = bnd.two_polytope_bound(args.k, args.d, n1, n2)
        report.outputs["value"] = value
        report.check(
            "hull_vs_gale_cyclic_path",
            bnd.two_polytope_bound(args.k, args.d, n1, n2, method="gale"),
            value,
        )
    elif kind == "zonotope":
        (n_edges,) = args.n
        value = bnd.zonotope_bound(args.ell, n_edges, args.d)
        report.outputs["value"] = value
    else:
        profile = bnd.VertexProfile(tuple(args.n), args.d)
        sanyal, weibel = bnd.many_summand_f0_bounds(profile)
        report.outputs["values"] = {"sanyal": sanyal, "weibel": weibel}
        report.check_that("weibel_le_sanyal", weibel <= sanyal)


def _cmd_hull(args, report: RunReport) -> None:
    ps = load_pointset(args.inputs[0])
    lat = convex_hull(ps, method=args.method)
    report.outputs["lattice"] = lattice_to_dict(lat)
    euler = sum((-1) ** k * fk for k, fk in enumerate(lat.f_vector))
    report.check("euler_relation", 1 - (-1) ** lat.polytope_dim if lat.polytope_dim >= 1 else 0, euler)
    report.check_that("facets_support_all_points", verify_supporting(lat, ps))


def _cmd_minksum(args, report: RunReport) -> None:
    parts = tuple(load_pointset(path) for path in args.inputs)
    pps = PartitionedPointSet(parts)
    if args.method in ("cayley", "both"):
        fc = minksum_via_cayley(pps)
        report.outputs["f_cayley"] = list(fc)
    if args.method in ("direct", "both"):
        fd = minksum_direct(pps)
        report.outputs["f_direct"] = list(fd)
    if args.method == "both":
        report.check("oracle_equality", report.outputs["f_cayley"], report.outputs["f_direct"])
        report.outputs["f_vector"] = report.outputs["f_cayley"]
    else:
        key = "f_cayley" if args.method == "cayley" else "f_direct"
        report.outputs["f_vector"] = report.outputs[key]


def _cmd_construct(args, report: RunReport) -> None:
    import dataclasses

    params = ConstructionParams.defaults(args.d, args.r, args.n)
    if args.alpha:
        params = dataclasses.replace(params, alpha=_parse_alpha(args.alpha))
    tau_cert = find_tau_star(params, args.max_halvings)
    params = dataclasses.replace(params, tau=tau_cert.value)
    zeta_cert = find_zeta_diamond(params, args.max_halvings)
    params = dataclasses.replace(params, zeta=zeta_cert.value)
    family = generate_family(params, lifted=True)
    report.outputs.update(
        {
            "tau_star": fraction_str(tau_cert.value),
            "zeta_diamond": fraction_str(zeta_cert.value),
            "certificates": {
                "tau": {
                    "halvings": tau_cert.halvings,
                    "determinants_checked": tau_cert.determinants_checked,
                },
                "zeta": {
                    "halvings": zeta_cert.halvings,
                    "determinants_checked": zeta_cert.determinants_checked,
                },
            },
            "parts": [pointset_to_dict(p) for p in family.parts],
        }
    )
    report.check("tau_checks_complete", tau_cert.expected_checks, tau_cert.determinants_checked)
    report.check("zeta_checks_complete", zeta_cert.expected_checks, zeta_cert.determinants_checked)


def _cmd_verify_tight(args, report: RunReport) -> None:
    result = verify_tightness(args.d, args.r, args.n, args.max_halvings)
    report.outputs.update(result.to_dict())
    report.checks.extend(result.checks)


def _cmd_delta(args, report: RunReport) -> None:
    spec = _load_delta_spec(args.spec)
    report.inputs["spec"] = {
        "kappa": list(spec.kappa),
        "beta": list(spec.beta),
        "x": [[fraction_str(v) for v in row] for row in spec.x],
    }
    pos = detasym.certify_positivity(spec, args.max_halvings)
    report.outputs["positivity"] = pos.to_dict()
    report.check_that("delta_positive_at_tau0", detasym.delta_value(spec, pos.tau0) > 0)
    report.check_that("delta_positive_at_half_tau0", detasym.delta_value(spec, pos.tau0 / 2) > 0)
    report.check_that("ratio_deviation_decreasing", pos.deviation_decreasing)
    if spec.K <= detasym.BRUTE_FORCE_SIZE_CAP:
        poly = detasym.delta_polynomial(spec)
        lt = detasym.leading_term(spec)
        low = min(poly)
        report.check("brute_force_lowest_degree", lt.theta, low)
        report.check(
            "brute_force_leading_coefficient",
            fraction_str(lt.coefficient),
            fraction_str(poly[low]),
        )


def _cmd_selftest(args, report: RunReport) -> None:
    rng = random.Random(args.seed)

    # Euler relation + supporting facets + scale/translate invariance on a
    # battery of random hulls
    euler_ok = invariance_ok = supporting_ok = True
    for _ in range(12):
        d = rng.randint(2, 4)
        n = rng.randint(d + 1, 8)
        ps = PointSet.from_rows([[rng.randint(-5, 5) for _ in range(d)] for _ in range(n)])
        lat = convex_hull(ps)
        euler = sum((-1) ** k * fk for k, fk in enumerate(lat.f_vector))
        if lat.polytope_dim >= 1 and euler != 1 - (-1) ** lat.polytope_dim:
            euler_ok = False
        if not verify_supporting(lat, ps):
            supporting_ok = False
        s = Fraction(rng.randint(1, 5), rng.randint(1, 5))
        shift = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(d)]
        lat2 = convex_hull(scale_translate(ps, s, shift))
        if lat.faces != lat2.faces:
            invariance_ok = False
    report.check_that("euler_relation_on_random_hulls", euler_ok)
    report.check_that("facets_support_all_points", supporting_ok)
    report.check_that("scale_translate_invariance", invariance_ok)

    # canonical hull values
    report.check("cyclic_c4_6_f_vector", [6, 15, 18, 9], list(bnd.cyclic_fvector_hull(4, 6)))

    # GVD positivity on 100 random increasing positive inputs
    gvd_ok = True
    done = 0
    while done < 100:
        k = rng.randint(2, 5)
        xs = sorted({Fraction(rng.randint(1, 60), rng.randint(1, 5)) for _ in range(k)})
        if len(xs) < 2:
            continue
        mu = sorted(rng.sample(range(0, 9), len(xs)))
        if detasym.gvd(xs, mu) <= 0:
            gvd_ok = False
        done += 1
    report.check_that("gvd_positive_100_random", gvd_ok)

    # phi subset-count identity, exhaustively for sum(n) <= 12
    phi_ok = True

    def profiles(max_total):
        for r in (2, 3, 4):
            def rec(prefix, remaining_parts, budget):
                if remaining_parts == 0:
                    yield tuple(prefix)
                    return
                for v in range(1, budget - (remaining_parts - 1) + 1):
                    yield from rec(prefix + [v], remaining_parts - 1, budget - v)
            yield from rec([], r, max_total)

    for n in profiles(12):
        total = sum(bnd.phi(ell, n) for ell in range(len(n), sum(n) + 1))
        if total != __import__("math").prod(2**ni - 1 for ni in n):
            phi_ok = False
            break
    report.check_that("phi_subset_count_identity_sum_le_12", phi_ok)

    # Laplace expansion recovers determinants
    from polysum.exact import ExactMatrix, determinant

    laplace_ok = True
    for _ in range(20):
        size = rng.randint(2, 6)
        m = ExactMatrix.from_rows(
            [[rng.randint(-4, 4) for _ in range(size)] for _ in range(size)]
        )
        block = sorted(rng.sample(range(size), rng.randint(1, size)))
        if sum(t.value for t in detasym.laplace_expand(m, block)) != determinant(m):
            laplace_ok = False
    report.check_that("laplace_expansion_equals_det", laplace_ok)

    # Minkowski oracle equivalence on small random instances
    oracle_ok = True
    for _ in range(4):
        d = rng.choice([2, 3])
        r = rng.choice([2, 3])
        parts = []
        for _ in range(r):
            ni = rng.randint(1, 4)
            pts = {tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(ni)}
            parts.append([list(p) for p in sorted(pts)])
        pps = PartitionedPointSet.from_rows(parts)
        if minksum_via_cayley(pps) != minksum_direct(pps):
            oracle_ok = False
    report.check_that("minksum_oracle_equivalence", oracle_ok)

    for c in report.checks:
        print(("ok   - " if c["pass"] else "FAIL - ") + c["name"])


_HANDLERS = {
    "phi": _cmd_phi,
    "bound": _cmd_bound,
    "hull": _cmd_hull,
    "minksum": _cmd_minksum,
    "construct": _cmd_construct,
    "verify-tight": _cmd_verify_tight,
    "delta": _cmd_delta,
    "selftest": _cmd_selftest,
}


def run_command(argv: Sequence[str]) -> tuple[int, Optional[RunReport]]:
    """Parse and dispatch; returns (exit_code, report)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), None
    inputs = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("command", "timing") and v is not None
    }
    report = RunReport(command=args.command, inputs=inputs)
    started = time.perf_counter()
    try:
        _HANDLERS[args.command](args, report)
    except (ValueError, IndexError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None
    if args.timing:
        report.timing = {"total_seconds": round(time.perf_counter() - started, 6)}
    out_path = getattr(args, "out", None) or getattr(args, "report", None)
    text = dump_json(report.to_dict(), out_path)
    if args.command not in ("phi", "selftest") and not out_path:
        print(text)
    return (0 if report.passed else 1), report


def main() -> None:
    code, _ = run_command(sys.argv[1:])
    sys.exit(code)
