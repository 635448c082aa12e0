"""Command-line front end.

    necklaces enumerate  --p 5 --match-paper
    necklaces pairing    --p 11 --verify-table
    necklaces verify     --p 5 --all
    necklaces invariants --pmin 5 --pmax 19 --format csv

Exit status is 0 when every requested check passes, 1 when one fails and
2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

from sympy import primerange

from . import correspond, invariants, necklace, pairing
from .fqarith import MAX_PRIME, GammaChoice, all_gammas, InvalidGamma, InvalidPrime, check_prime, find_gamma, is_square
from .groundtruth import CHARPOLY_TABLE, PUBLISHED_GAMMA, published_necklace_keys, table_factors
from .polynomial import factored_to_json, format_factored, format_poly, rank_and_det
from .report import FAIL, PASS, SKIP, Report, skipped

SUITES = ("chen86", "theta", "degeneracy", "elliptic", "genus", "merelade", "pairing")
FORMATS = ("text", "json", "csv")
# gammas compared for spectrum independence when p is past the exhaustive range
GAMMA_SAMPLE = 4


@dataclass(frozen=True)
class RunConfig:
    command: str
    primes: tuple[int, ...]
    gamma: tuple[int, int] | None = None
    epsilon: int | None = None
    fmt: str = "text"
    out: str | None = None
    jobs: int = 1


def prime_arg(s: str) -> int:
    try:
        return check_prime(int(s))
    except (ValueError, InvalidPrime) as exc:
        raise argparse.ArgumentTypeError(f"{s!r} is not a prime between 5 and {MAX_PRIME}: {exc}") from None


def gamma_arg(s: str) -> tuple[int, int]:
    try:
        t, n = (int(x) for x in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected t,n but got {s!r}") from None
    return t, n


def gamma_for(p: int, override=None) -> GammaChoice:
    """The override if given, the published choice for p = 5, 7, else the lexicographic minimum."""
    if override is not None:
        return find_gamma(p, override)
    return find_gamma(p, PUBLISHED_GAMMA.get(p))


# enumerate

def enumerate_task(p: int, gamma_override, oriented: bool, match_paper: bool) -> dict:
    gamma = gamma_for(p, gamma_override)
    items = necklace.enumerate_oriented(gamma) if oriented else necklace.enumerate_necklaces(gamma)
    rec = {
        "p": p,
        "gamma": str(gamma),
        "oriented": oriented,
        "count": len(items),
        "necklaces": [necklace.format_necklace(v, p) for v in items],
    }
    if match_paper:
        if p in PUBLISHED_GAMMA:
            computed = set(necklace.enumerate_necklaces(gamma))
            keys = published_necklace_keys(p)
            matched = sum(k in computed for k in keys)
            ok = matched == len(keys) == len(computed)
            rec["match_paper"] = {"matched": matched, "expected": len(keys), "status": PASS if ok else FAIL}
        else:
            rec["match_paper"] = {"matched": 0, "expected": 0, "status": SKIP}
    return rec


def render_enumerate(records, fmt: str) -> str:
    if fmt == "csv":
        rows = [(r["p"], r["gamma"], i, s) for r in records for i, s in enumerate(r["necklaces"])]
        return _csv(("p", "gamma", "index", "necklace"), rows)
    if fmt == "json":
        return _json("enumerate", records)
    lines = []
    for r in records:
        kind = "oriented necklaces" if r["oriented"] else "necklaces"
        lines.append(f"p={r['p']} gamma={r['gamma']} {kind}={r['count']}")
        lines.extend(r["necklaces"])
        m = r.get("match_paper")
        if m is not None:
            if m["status"] == SKIP:
                lines.append("published sequences: none for this p")
            else:
                lines.append(f"published sequences matched: {m['matched']}/{m['expected']} {m['status'].upper()}")
    return "\n".join(lines) + "\n"


# pairing

def pairing_task(p: int, gamma_override, verify_table: bool, show_matrix: bool) -> dict:
    gamma = gamma_for(p, gamma_override)
    M = pairing.pairing_matrix(gamma)
    f = pairing.pairing_charpoly(gamma)
    size = M.shape[0]
    det = (-1) ** size * f.coeffs[0]
    rank = size if det != 0 else rank_and_det(M)[0]
    rec = {
        "p": p,
        "gamma": str(gamma),
        "size": size,
        "rank": rank,
        "det": det,
        "charpoly": format_poly(f),
        "charpoly_coeffs": list(f.coeffs),
        "table": None,
    }
    if p in CHARPOLY_TABLE:
        rep = pairing.verify_charpoly_table(p, gamma)
        factors = table_factors(p)
        rec["table"] = {
            "factored": format_factored(factors),
            "factors": factored_to_json(factors)["factors"],
            "status": rep.status,
            "first_mismatch": rep.first_mismatch,
        }
    rec["verified"] = bool(verify_table and rec["table"] is not None)
    if show_matrix:
        rec["matrix"] = M.tolist()
    return rec


def render_pairing(records, fmt: str) -> str:
    if fmt == "csv":
        rows = [(r["p"], r["gamma"], r["size"], r["rank"], r["det"], r["charpoly"],
                 r["table"]["status"] if r["table"] else "") for r in records]
        return _csv(("p", "gamma", "size", "rank", "det", "charpoly", "table_status"), rows)
    if fmt == "json":
        return _json("pairing", records)
    lines = []
    for r in records:
        lines.append(f"p={r['p']} gamma={r['gamma']} size={r['size']} rank={r['rank']} det={r['det']}")
        lines.append(f"charpoly: {r['charpoly']}")
        if r["table"] is not None:
            lines.append(f"table: {r['table']['factored']} {r['table']['status'].upper()}")
        else:
            lines.append("table: no reference entry for this p")
        for row in r.get("matrix", ()):
            lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


# verify

def run_suite(name: str, gamma: GammaChoice, epsilon: int | None = None) -> list[Report]:
    p = gamma.p
    if name == "chen86":
        return correspond.verify_chen86(gamma) + correspond.verify_equivariance(gamma, necklace.pgl_generators(p))
    if name == "theta":
        return correspond.verify_theta_lemma(gamma)
    if name == "degeneracy":
        if p > correspond.MAX_TRIPLES_PRIME:
            return [skipped("degeneracy", p, gamma, f"triples fibre only built for p <= {correspond.MAX_TRIPLES_PRIME}")]
        return correspond.verify_degeneracy(gamma, epsilon)
    if name == "elliptic":
        return invariants.verify_elliptic(gamma) + invariants.verify_flipped_lemmas(gamma)
    if name == "genus":
        return (necklace.verify_counts(gamma) + invariants.verify_genus(gamma)
                + invariants.verify_genus_relation([p]))
    if name == "merelade":
        return necklace.verify_merelade(gamma)
    if name == "pairing":
        out = pairing.verify_pairing(gamma) + correspond.verify_phi_lambda(gamma)
        if p in CHARPOLY_TABLE:
            out.append(pairing.verify_charpoly_table(p, gamma))
        gammas = all_gammas(p)
        if p > 13:
            gammas = gammas[:GAMMA_SAMPLE]
        out += pairing.verify_gamma_independence(p, [gamma] + [g for g in gammas if g != gamma])
        return out
    raise ValueError(f"unknown suite {name!r}")


def verify_task(p: int, gamma_override, epsilon, suites) -> list[dict]:
    gamma = gamma_for(p, gamma_override)
    return [r.to_dict() for s in suites for r in run_suite(s, gamma, epsilon)]


def render_verify(records, fmt: str) -> str:
    flat = [r for group in records for r in group]
    if fmt == "csv":
        rows = [(r["identity_name"], r["p"], r["gamma"] or "", r["status"],
                 json.dumps(r["first_mismatch"]) if "first_mismatch" in r else "") for r in flat]
        return _csv(("identity_name", "p", "gamma", "status", "first_mismatch"), rows)
    if fmt == "json":
        return _json("verify", flat)
    lines = []
    for r in flat:
        line = f"{r['status'].upper():4} {r['identity_name']} p={r['p']}"
        if r["gamma"]:
            line += f" gamma={r['gamma']}"
        if "first_mismatch" in r:
            line += f" first_mismatch={json.dumps(r['first_mismatch'])}"
        lines.append(line)
    failed = sum(r["status"] == FAIL for r in flat)
    lines.append(f"{len(flat) - failed}/{len(flat)} checks passed or skipped, {failed} failed")
    return "\n".join(lines) + "\n"


# invariants

INVARIANT_COLUMNS = ("p", "curve", "d", "e2", "e3", "e_inf", "genus", "relation")


def invariants_task(p: int) -> list[dict]:
    return invariants.invariants_table([p])


def render_invariants(records, fmt: str) -> str:
    rows = [r for group in records for r in group]
    if fmt == "csv":
        return _csv(INVARIANT_COLUMNS, [tuple(r[c] for c in INVARIANT_COLUMNS) for r in rows])
    if fmt == "json":
        return _json("invariants", rows)
    widths = [max(len(c), *(len(str(r[c])) for r in rows)) for c in INVARIANT_COLUMNS]
    fmt_row = lambda vals: "  ".join(str(v).rjust(w) for v, w in zip(vals, widths))  # noqa: E731
    lines = [fmt_row(INVARIANT_COLUMNS)]
    lines += [fmt_row([r[c] for c in INVARIANT_COLUMNS]) for r in rows]
    return "\n".join(lines) + "\n"


# output helpers

def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(command: str, results) -> str:
    status = FAIL if any(_failed(r) for r in results) else PASS
    doc = {"command": command, "status": status, "results": results}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _failed(rec: dict) -> bool:
    if rec.get("status") == FAIL or rec.get("relation") == "FAIL":
        return True
    if rec.get("match_paper", {}).get("status") == FAIL:
        return True
    table = rec.get("table")
    return bool(rec.get("verified") and table and table["status"] == FAIL)


def run_parallel(fn, primes, jobs: int) -> list:
    """Map over primes; results come back in input order whatever the completion order."""
    if jobs <= 1 or len(primes) <= 1:
        return [fn(p) for p in primes]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, primes))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=prime_arg, help="a single prime p >= 5")
    common.add_argument("--pmin", type=int, help="smallest prime of a range")
    common.add_argument("--pmax", type=int, help="largest prime of a range")
    common.add_argument("--gamma", type=gamma_arg, metavar="t,n",
                        help="generator gamma as the coefficients of X^2 - tX + n")
    common.add_argument("--epsilon", type=int, help="non-square used by the degeneracy maps")
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="text")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes over primes")

    parser = argparse.ArgumentParser(prog="necklaces", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="list necklaces")
    e.add_argument("--oriented", action="store_true", help="list oriented necklaces instead")
    e.add_argument("--match-paper", action="store_true",
                   help="check the published sequences for p = 5, 7 occur in the computed set")

    q = sub.add_parser("pairing", parents=[common], help="pairing matrix and characteristic polynomial")
    q.add_argument("--verify-table", action="store_true", help="fail if the reference table disagrees")
    q.add_argument("--show-matrix", action="store_true")

    v = sub.add_parser("verify", parents=[common], help="run identity checks")
    v.add_argument("--suite", action="append", choices=SUITES + ("all",))
    v.add_argument("--all", action="store_true", help="same as --suite all")

    sub.add_parser("invariants", parents=[common], help="degrees, elliptic points, cusps and genera")
    return parser


def make_config(parser, args) -> RunConfig:
    if args.p is not None and (args.pmin is not None or args.pmax is not None):
        parser.error("give either --p or --pmin/--pmax, not both")
    if args.p is not None:
        primes = (args.p,)
    elif args.pmin is not None or args.pmax is not None:
        lo = args.pmin if args.pmin is not None else 5
        hi = args.pmax if args.pmax is not None else lo
        if lo > hi:
            parser.error("--pmin exceeds --pmax")
        if hi > MAX_PRIME:
            parser.error(f"--pmax may be at most {MAX_PRIME}")
        primes = tuple(primerange(max(lo, 5), hi + 1))
        if not primes:
            parser.error(f"no primes p >= 5 in [{lo}, {hi}]")
    else:
        parser.error("one of --p or --pmin/--pmax is required")
    for p in primes:
        if args.gamma is not None:
            try:
                find_gamma(p, args.gamma)
            except InvalidGamma as exc:
                parser.error(f"--gamma {args.gamma[0]},{args.gamma[1]} is invalid for p={p}: {exc}")
        if args.epsilon is not None and (args.epsilon % p == 0 or is_square(args.epsilon, p)):
            parser.error(f"--epsilon {args.epsilon} is not a non-square mod {p}")
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    return RunConfig(args.command, primes, args.gamma, args.epsilon, args.fmt, args.out, args.jobs)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = make_config(parser, args)

    if cfg.command == "enumerate":
        records = run_parallel(partial(enumerate_task, gamma_override=cfg.gamma, oriented=args.oriented,
                                       match_paper=args.match_paper), cfg.primes, cfg.jobs)
        text = render_enumerate(records, cfg.fmt)
        failed = any(r.get("match_paper", {}).get("status") == FAIL for r in records)
    elif cfg.command == "pairing":
        records = run_parallel(partial(pairing_task, gamma_override=cfg.gamma, verify_table=args.verify_table,
                                       show_matrix=args.show_matrix), cfg.primes, cfg.jobs)
        text = render_pairing(records, cfg.fmt)
        failed = any(_failed(r) for r in records)
    elif cfg.command == "verify":
        suites = args.suite or ["all"]
        if args.all or "all" in suites:
            suites = list(SUITES)
        suites = [s for s in SUITES if s in suites]
        records = run_parallel(partial(verify_task, gamma_override=cfg.gamma, epsilon=cfg.epsilon,
                                       suites=tuple(suites)), cfg.primes, cfg.jobs)
        text = render_verify(records, cfg.fmt)
        failed = any(r["status"] == FAIL for group in records for r in group)
    else:
        records = run_parallel(invariants_task, cfg.primes, cfg.jobs)
        text = render_invariants(records, cfg.fmt)
        failed = any(r["relation"] == "FAIL" for group in records for r in group)

    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
