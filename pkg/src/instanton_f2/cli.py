"""Command-line front end.

Exit codes: 0 success, 1 usage or domain error, 2 incomplete record or
ambiguous value, 3 contradiction or consistency violation.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from . import dims, froyshov, obstruct, propagate
from .errors import (
    AmbiguousDimensionError,
    ContradictionError,
    IncompleteRecordError,
    InstantonError,
    PropagationError,
)
from .knotdb import io as kio
from .knotdb.records import connected_sum, mirror, validate
from .modalg import (
    as_matrix,
    decompose,
    gr_eps_from_q3,
    psi_iso,
    ses_dims,
    snf,
    v_space,
)
from .slope import BundleClass, Slope

# accept "-3/5" as a value, not an option
_NEG = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *a, **kw):
        super().__init__(*a, **kw)
        self._negative_number_matcher = _NEG

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _slope(text: str) -> Slope:
    return Slope.parse(text)


def _bundle(text: str) -> BundleClass:
    return BundleClass.parse(text)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--db", metavar="PATH", help=f"knot database JSON (default: ${kio.ENV_VAR} or bundled)")
    return p


def _knot_slope(sub, name, help_, bundle=True):
    p = sub.add_parser(name, help=help_, parents=[_common()])
    p.add_argument("knot")
    p.add_argument("slope", type=_slope, help='"p/q", "n" or "inf"')
    if bundle:
        p.add_argument("--bundle", type=_bundle, default=BundleClass.TRIVIAL, help="trivial|nontrivial")
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="instanton-f2", description="Framed instanton homology of Dehn surgeries.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    _knot_slope(sub, "dim", "dimension over F2")
    _knot_slope(sub, "dimc", "dimension over C (ambiguous pairs print as lo|hi)")
    _knot_slope(sub, "q3", "Froyshov q3 of an odd-numerator surgery", bundle=False)
    p = sub.add_parser("lspace", help="L-space knot test and L-space slopes", parents=[_common()])
    p.add_argument("knot")
    p.add_argument("slope", type=_slope, nargs="?")
    p.add_argument("--bundle", type=_bundle, default=BundleClass.TRIVIAL)
    _knot_slope(sub, "torsionfree", "whether integral I# has no 2-torsion")
    p = _knot_slope(sub, "su2ab", "SU(2)-abelian obstruction", bundle=False)
    p.add_argument("--json", action="store_true")
    p = sub.add_parser("t2", help="torsion summands at slope 1", parents=[_common()])
    p.add_argument("knot")
    p = sub.add_parser("sum", help="connected-sum record", parents=[_common()])
    p.add_argument("knots", nargs=2)
    p = sub.add_parser("mirror", help="mirror record", parents=[_common()])
    p.add_argument("knot")

    p = sub.add_parser("table", help="CSV of dimensions over a slope range", parents=[_common()])
    p.add_argument("knot")
    p.add_argument("--from", dest="lo", type=Fraction, required=True)
    p.add_argument("--to", dest="hi", type=Fraction, required=True)
    p.add_argument("--denom-max", type=int, default=1)

    p = sub.add_parser("triangles", help="exact-triangle consistency scan", parents=[_common()])
    p.add_argument("knot")
    p.add_argument("--qmax", type=int, default=8)
    p.add_argument("--pmax", type=int, default=64)
    p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("propagate", help="bound propagation over the constraint graph", parents=[_common()])
    p.add_argument("--records", action="store_true", help="add stored invariants of every node")
    p.add_argument(
        "--speculative-slice-genus",
        action="store_true",
        help="assume the unproven bound |M| <= 4 g4 (output is labeled speculative)",
    )
    p.add_argument("--shuffle", type=int, metavar="SEED", help="randomize the initial edge order")
    p.add_argument("--constraints", metavar="PATH", help="constraint JSON (default: the database's)")

    p = sub.add_parser("modalg", help="F2[x]-module algebra")
    msub = p.add_subparsers(dest="op", required=True, parser_class=_Parser)
    for op, h in (
        ("snf", "Smith normal form U, D, V"),
        ("decompose", "module structure of the cokernel"),
        ("vspace", "filtration profile of V = T/xT"),
        ("psi", "gr V -> ker(x) isomorphism check"),
        ("ses", "dim coker(x) + dim ker(x)"),
    ):
        q = msub.add_parser(op, help=h)
        q.add_argument("matrix", help='JSON rows of polynomials, e.g. \'[["x","1"],["0","x"]]\'')
    q = msub.add_parser("gr-eps", help="gr eps_0 from q3 values and b+")
    q.add_argument("q3_source", type=int)
    q.add_argument("q3_target", type=int)
    q.add_argument("b_plus", type=int)

    sub.add_parser("validate", help="check structural identities on every record", parents=[_common()])
    return ap


def _table(args):
    return kio.open_table(args.db)


def _fmt_matrix(A) -> str:
    return "[" + ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in A) + "]"


def _parse_matrix(text: str):
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"matrix is not valid JSON: {exc}") from None
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise UsageError("matrix must be a JSON list of rows")
    try:
        return as_matrix(rows)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd(args, out) -> int:
    c = args.cmd
    if c == "modalg":
        return _modalg(args, out)
    if c == "validate":
        return _validate(args, out)
    if c == "propagate":
        return _propagate(args, out)
    T = _table(args)
    if c == "sum":
        K = connected_sum(T[args.knots[0]], T[args.knots[1]])
        print(json.dumps(K.to_dict(), indent=2), file=out)
        return 0
    K = T[args.knot]
    if c == "dim":
        print(dims.dim_f2(K, args.slope, args.bundle), file=out)
    elif c == "dimc":
        print(dims.dim_c(K, args.slope, args.bundle), file=out)
    elif c == "q3":
        v, branch = froyshov.q3_branch(K, args.slope)
        print(f"{v} (branch {branch})", file=out)
    elif c == "lspace":
        if args.slope is not None:
            print(str(obstruct.lspace_slopes(K).contains(args.slope, args.bundle)).lower(), file=out)
        elif obstruct.is_lspace_knot_f2(K):
            print(f"L-space knot over F2; L-space slopes: {obstruct.lspace_slopes(K)}", file=out)
        else:
            print(f"not an L-space knot over F2 (r2 = {K.r2}, |M| = {abs(K.M)})", file=out)
    elif c == "torsionfree":
        print(str(obstruct.torsion_free(K, args.slope, args.bundle)).lower(), file=out)
    elif c == "su2ab":
        rep = obstruct.su2_abelian_obstruction(K, args.slope)
        if args.json:
            print(json.dumps(rep.to_dict(), indent=2), file=out)
        else:
            print(rep.verdict, file=out)
            for r in rep.rules:
                print(f"  rule: {r}", file=out)
            for n in rep.notes:
                print(f"  note: {n}", file=out)
    elif c == "t2":
        print(dims.t2(K), file=out)
    elif c == "mirror":
        print(json.dumps(mirror(K).to_dict(), indent=2), file=out)
    elif c == "table":
        out.write(dims.table_csv(K, args.lo, args.hi, args.denom_max))
    elif c == "triangles":
        res = dims.triangle_scan(K, args.qmax, args.pmax)
        for v in res.violations:
            print(f"violation: {v.describe()}", file=out)
        if args.verbose:
            print(f"{res.checked} cases checked", file=out)
        print(f"{len(res.violations)} violations", file=out)
        return 3 if res.violations else 0
    return 0


def _modalg(args, out) -> int:
    if args.op == "gr-eps":
        print(gr_eps_from_q3(args.q3_source, args.q3_target, args.b_plus), file=out)
        return 0
    A = _parse_matrix(args.matrix)
    if args.op == "snf":
        U, D, V = snf(A)
        print(f"U = {_fmt_matrix(U)}", file=out)
        print(f"D = {_fmt_matrix(D)}", file=out)
        print(f"V = {_fmt_matrix(V)}", file=out)
        return 0
    M = decompose(A).module
    if args.op == "decompose":
        print(M, file=out)
    elif args.op == "vspace":
        F = v_space(M)
        print(f"dim V = {F.total}", file=out)
        print("profile: " + " ".join(f"F{r}={d}" for r, d in enumerate(F.profile)), file=out)
    elif args.op == "psi":
        iso = psi_iso(M)
        print(f"dim gr V = {len(iso.domain_levels)}, dim ker x = {iso.kernel_dim}, rank psi = {iso.rank}", file=out)
        print("bijective" if iso.bijective else "not bijective", file=out)
    elif args.op == "ses":
        s = ses_dims(M)
        print(f"{s.total} (coker {s.coker} + ker {s.ker})", file=out)
    return 0


def _validate(args, out) -> int:
    path = args.db
    T = kio.open_table(path, strict=False)
    knots = T.fixture_knots()
    bad = 0
    for K in knots:
        for v in validate(K):
            print(f"{K.name}: {v}", file=out)
            bad += 1
    print(f"{len(knots)} records, {bad} violations", file=out)
    return 3 if bad else 0


def _propagate(args, out) -> int:
    T = _table(args)
    if args.constraints:
        with open(args.constraints, encoding="utf-8") as fh:
            doc = json.load(fh)
        T = T.with_constraints(doc["constraints"] if isinstance(doc, dict) else doc)
    g = propagate.graph_from_table(
        T, include_records=args.records, speculative_slice_genus=args.speculative_slice_genus
    )
    rng = random.Random(args.shuffle) if args.shuffle is not None else None
    try:
        res = propagate.propagate(g, rng=rng)
    except PropagationError as exc:
        print(f"contradiction after {len(exc.witness)} edge(s):", file=out)
        for e in exc.witness:
            print(f"  {e}", file=out)
        return 3
    out.write(res.report())
    return 0


def run(argv=None, stdout=None, stderr=None) -> int:
    out = sys.stdout if stdout is None else stdout
    err = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        return _cmd(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except (IncompleteRecordError, AmbiguousDimensionError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except ContradictionError as exc:
        print(f"contradiction: {exc}", file=err)
        return 3
    except KeyError as exc:
        print(f"error: unknown knot {exc.args[0]!r}", file=err)
        return 1
    except (InstantonError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    except SystemExit as exc:
        # --help
        return 0 if exc.code in (0, None) else 1


def main() -> None:
    sys.exit(run())
