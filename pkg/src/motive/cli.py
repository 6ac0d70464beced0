"""Command line entry point: ``motive verify <target>``.

Exit codes: 0 when every executed check passes, 1 on a failed check, 2 on a
usage error or a missing fixture.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from . import catalog, cubics, intlin, symplectic, tori
from .burnside import lambda_powers, lambda_powers_from_marks, qs_torus_class
from .lring import pmul
from .marks import GSet, group_by_name, is_lower_triangular

REPORT_VERSION = 1
FIXTURE_ENV = "MOTIVE_FIXTURES"
SUBGROUP_CLASS_COUNTS = {"s2": 2, "s3": 4, "s4": 11}


class UsageError(Exception):
    pass


@dataclass
class Check:
    name: str
    status: str  # pass | fail | skipped
    expected: Any
    actual: Any
    provenance: str
    runtime_ms: float | None = None

    def as_dict(self, stable: bool) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "provenance": self.provenance,
            "runtime_ms": None if stable else round(self.runtime_ms or 0.0, 3),
        }


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _timed(fn: Callable[[], list[Check]]) -> list[Check]:
    t0 = time.perf_counter()
    out = fn()
    ms = (time.perf_counter() - t0) * 1000.0
    for c in out:
        c.runtime_ms = ms / max(len(out), 1)
    return out


def _from_result(res: catalog.CheckResult, provenance: str) -> list[Check]:
    out = [Check(res.name, _status(res.ok), str(res.expected), str(res.actual), provenance)]
    for e in res.extra:
        out.append(Check(f"{res.name} / {e.name}", _status(e.ok), str(e.expected), str(e.actual),
                         e.citation or provenance))
    return out


# --- fixtures -----------------------------------------------------------------

def find_fixture(n: int, path: str | None = None) -> Path | None:
    if path:
        p = Path(path)
        if not p.is_file():
            raise UsageError(f"resolution fixture {p} does not exist")
        return p
    root = os.environ.get(FIXTURE_ENV)
    if root:
        p = Path(root) / f"resolution_n{n}.json"
        if p.is_file():
            return p
    return None


def load_fixture(n: int, path: str | None = None) -> tori.TorusResolution | None:
    if n == 2 and not path:
        return tori.fixture_n2()
    p = find_fixture(n, path)
    return tori.load_resolution(p) if p else None


def _missing(n: int) -> str:
    return (f"missing fixture resolution_n{n}.json: pass --resolution FILE "
            f"or set {FIXTURE_ENV} to a directory containing it")


# --- suites -------------------------------------------------------------------

def run_pgl2() -> list[Check]:
    return _from_result(catalog.verify_pgl2(), "stratification of binary quadratic forms")


def run_pgl3(resolution_path: str | None = None) -> list[Check]:
    r = load_fixture(3, resolution_path)
    prov = "stratification of plane cubics"
    prov += "; PN3 stratum from torus resolution" if r else "; PN3 stratum taken as expected class"
    return _from_result(catalog.verify_pgl3(r), prov)


def run_m11() -> list[Check]:
    res = catalog.verify_m11()
    out = _from_result(res, "stratification by j-invariant")
    val = res.actual.specialize(7)
    out.append(Check("M_11 at q = 7", _status(val == 7), "7", str(val), "point count specialization"))
    return out


def run_monomial(max_n: int) -> list[Check]:
    if not 1 <= max_n <= 6:
        raise UsageError("--max-n must be in 1..6")
    out = []
    for res in catalog.monomial_checks(max_n):
        out.extend(_from_result(res, "monomial recurrence"))
    return out


def run_theorem_b(n: int, resolution_path: str | None = None, skip_missing: bool = False) -> list[Check]:
    name = f"B PN{n} via norm-one torus"
    expected = str(tori.expected_b_pn(n))
    r = load_fixture(n, resolution_path)
    if r is None:
        if skip_missing:
            return [Check(name, "skipped", expected, None, _missing(n))]
        raise UsageError(_missing(n))
    rep = tori.verify_resolution(r)
    if not rep:
        return [Check(f"{name} / resolution", "fail", "exact sequence", f"{rep.failed} {rep.detail}".strip(),
                      "verify_resolution")]
    res = tori.theorem_b_check(n, r)
    prov = "built-in resolution" if n == 2 and not resolution_path else "resolution fixture"
    return [Check(f"{name} / resolution", "pass", "exact sequence", "exact sequence", "verify_resolution"),
            Check(name, _status(res.ok), expected, str(res.actual), prov + ", all-ones assignment")]


def run_marks(group: str) -> list[Check]:
    G = group_by_name(group)
    table = G.subgroup_table
    out = [Check(f"marks {group} / classes", _status(len(table) == SUBGROUP_CLASS_COUNTS[group]),
                 SUBGROUP_CLASS_COUNTS[group], len(table), "subgroup enumeration")]
    diag_ok = all(table.marks[k][k] > 0 for k in range(len(table)))
    out.append(Check(f"marks {group} / triangular", _status(is_lower_triangular(table) and diag_ok),
                     "lower triangular, positive diagonal", "lower triangular" if diag_ok else "degenerate",
                     "table of marks"))
    # symmetric powers grow fast, so only G-sets with at most 6 points
    cosets = (GSet.cosets(G, sorted(table.reps[k])) for k in range(len(table)))
    sets = [GSet.natural(G)] + [E for E in cosets if E.size <= 6]
    lam_ok = all(lambda_powers(E, E.size) == lambda_powers_from_marks(E) for E in sets)
    out.append(Check(f"marks {group} / lambda routes", _status(lam_ok), "agree", "agree" if lam_ok else "differ",
                     "sigma convolution vs marks"))
    qs_ok = True
    for E in sets[:4]:
        p = qs_torus_class(E)
        for k in range(len(table)):
            want = (1,)
            for w in E.restricted_orbit_lengths(table.reps[k]):
                want = pmul(want, (-1,) + (0,) * (w - 1) + (1,))
            qs_ok = qs_ok and p.mark_poly(k) == want
    out.append(Check(f"marks {group} / qs marks", _status(qs_ok), "prod (l^w - 1)", "match" if qs_ok else "mismatch",
                     "marks of (l - 1)^E"))
    return out


def run_symplectic(ells: list[int]) -> list[Check]:
    out = []
    for ell in ells:
        try:
            row = symplectic.conjecture_scan([ell])[0]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        dpp = intlin.det_exact(symplectic.phi_prime_matrix(ell))
        info: dict[str, Any] = {"ell": ell, "det": str(row.det), "conjecture": str(row.conjecture),
                                "match": row.match}
        ok = row.match and dpp == -ell
        expected = {"det": str(row.conjecture), "det_phi_prime": -ell}
        if ell <= 7:
            rep = symplectic.diagram_report(ell)
            info.update(B_order=rep.B_order, A_invariants=rep.A_invariants)
            ok = ok and rep.ok
            failed = [k for k, v in rep.checks.items() if not v]
            if failed:
                info["failed"] = failed
            if ell == 3:
                expected.update(B_order=3, A_invariants=[])
                ok = ok and rep.B_order == 3 and not rep.A_invariants
            elif ell == 5:
                expected["A_nonzero"] = True
                ok = ok and bool(rep.A_invariants)
        info["det_phi_prime"] = dpp
        out.append(Check(f"symplectic ell = {ell}", _status(ok), expected, info, "exact determinants and Smith forms"))
    return out


def run_stabilizers(q: int, cases: list[str] | None, large: bool) -> list[Check]:
    try:
        cubics.require_good_field(q)
        if q > 7 and not large:
            raise UsageError(f"q = {q} is a long sweep; add --large")
        rep = cubics.verify_appendix(q, cases, allow_large=large)
    except cubics.FieldError as exc:
        raise UsageError(str(exc)) from exc
    out = []
    for r in rep.rows:
        out.append(Check(f"stabilizer {r.case} q = {q}", r.status,
                         {"order": r.expected_order, "dim": r.expected_dim},
                         {"form": r.form, "order": r.counted_order, "dim": r.lie_dim,
                          "parametrization": r.parametrization_ok},
                         "enumeration over PGL_3(F_q); dual-number Lie algebra"))
    return out


def run_j_family(q: int) -> list[Check]:
    try:
        rep = cubics.j_family_check(q)
    except cubics.FieldError as exc:
        raise UsageError(str(exc)) from exc
    return [Check(f"j-family q = {q}", _status(rep.ok), "j(E_t) = t", {"tested": len(rep.rows),
                  "failures": rep.failures}, "Weierstrass invariants")]


def run_all(resolution_path: str | None = None) -> list[Check]:
    suites: list[Callable[[], list[Check]]] = [
        run_pgl2,
        lambda: run_pgl3(resolution_path),
        run_m11,
        lambda: run_monomial(6),
        lambda: run_theorem_b(2),
        lambda: run_theorem_b(3, resolution_path, skip_missing=True),
        lambda: run_marks("s2"),
        lambda: run_marks("s3"),
        lambda: run_marks("s4"),
        lambda: run_symplectic([3, 5, 7, 11]),
        lambda: run_stabilizers(7, None, False),
        lambda: run_j_family(7),
        lambda: run_j_family(13),
    ]
    out = []
    for s in suites:
        out.extend(_timed(s))
    return out


# --- reporting ----------------------------------------------------------------

def overall(checks: list[Check]) -> str:
    executed = [c for c in checks if c.status != "skipped"]
    return "pass" if executed and all(c.status == "pass" for c in executed) else "fail"


def render_json(checks: list[Check], stable: bool) -> str:
    doc: dict[str, Any] = {"version": REPORT_VERSION, "checks": [c.as_dict(stable) for c in checks],
                           "overall": overall(checks)}
    if not stable:
        doc["generated_at"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return json.dumps(doc, indent=2, sort_keys=True)


def render_text(checks: list[Check], stable: bool) -> str:
    lines = []
    for c in checks:
        t = "" if stable or c.runtime_ms is None else f"  ({c.runtime_ms:.0f} ms)"
        lines.append(f"{c.status.upper():7s} {c.name}: {_short(c.actual)}{t}")
        if c.status == "fail":
            lines.append(f"        expected {_short(c.expected)}")
    lines.append(f"overall: {overall(checks)}")
    return "\n".join(lines)


def _short(v) -> str:
    return v if isinstance(v, str) else json.dumps(v, sort_keys=True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON report")
    common.add_argument("--stable", action="store_true", default=argparse.SUPPRESS,
                        help="omit timings and timestamps so output is reproducible")

    p = argparse.ArgumentParser(prog="motive", parents=[common], description="Verify class identities.")
    sub = p.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    vs = verify.add_subparsers(dest="target", required=True)

    for name in ("pgl2", "m11"):
        vs.add_parser(name, parents=[common])
    sp = vs.add_parser("pgl3", parents=[common])
    sp.add_argument("--resolution", help="n = 3 torus resolution fixture (JSON)")
    sp = vs.add_parser("monomial", parents=[common])
    sp.add_argument("--max-n", type=int, default=6)
    sp = vs.add_parser("theorem-b", parents=[common])
    sp.add_argument("--n", type=int, choices=(2, 3), required=True)
    sp.add_argument("--resolution", help="torus resolution fixture (JSON)")
    sp = vs.add_parser("marks", parents=[common])
    sp.add_argument("--group", choices=sorted(SUBGROUP_CLASS_COUNTS), required=True)
    sp = vs.add_parser("symplectic", parents=[common])
    sp.add_argument("--ell", type=_int_list, default=[3, 5, 7])
    sp = vs.add_parser("stabilizers", parents=[common])
    sp.add_argument("--q", type=int, default=7)
    sp.add_argument("--case", choices=sorted(cubics.STANDARD_FORMS), action="append")
    sp.add_argument("--large", action="store_true", help="allow q > 7 (slow)")
    sp = vs.add_parser("j-family", parents=[common])
    sp.add_argument("--q", type=int, default=7)
    sp = vs.add_parser("all", parents=[common])
    sp.add_argument("--resolution", help="n = 3 torus resolution fixture (JSON)")
    return p


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def dispatch(args: argparse.Namespace) -> list[Check]:
    t = args.target
    if t == "pgl2":
        return _timed(run_pgl2)
    if t == "pgl3":
        return _timed(lambda: run_pgl3(args.resolution))
    if t == "m11":
        return _timed(run_m11)
    if t == "monomial":
        return _timed(lambda: run_monomial(args.max_n))
    if t == "theorem-b":
        return _timed(lambda: run_theorem_b(args.n, args.resolution))
    if t == "marks":
        return _timed(lambda: run_marks(args.group))
    if t == "symplectic":
        return _timed(lambda: run_symplectic(args.ell))
    if t == "stabilizers":
        return _timed(lambda: run_stabilizers(args.q, args.case, args.large))
    if t == "j-family":
        return _timed(lambda: run_j_family(args.q))
    if t == "all":
        return run_all(args.resolution)
    raise UsageError(f"unknown target {t}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    as_json = getattr(args, "json", False)
    stable = getattr(args, "stable", False)
    try:
        checks = dispatch(args)
    except UsageError as exc:
        print(f"motive: error: {exc}", file=sys.stderr)
        return 2
    except tori.InvalidResolution as exc:
        print(f"motive: error: {exc}", file=sys.stderr)
        return 2
    print(render_json(checks, stable) if as_json else render_text(checks, stable))
    return 0 if overall(checks) == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
