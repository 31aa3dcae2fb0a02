"""Command line interface: ``sgp <verb> ...``.

Every verb calls the library and formats its result.  ``--json`` prints the
payload as JSON; scans write one JSON record per semigroup so they can be
streamed and resumed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .curve import PresentationError, jacobian, presentation
from .deform import build_family_3, build_family_4, build_variant_b2, projectivize, verify_flatness
from .orderbound import check_conjecture, find_sm, nu, order_bound, predict_sm
from .regress import FIXTURES
from .semigroup import (
    SemigroupError,
    classify_sequence,
    enumerate_by_genus,
    format_semigroup,
    parse_semigroup,
    profile,
)
from .smoothness import BadPrimeError, finite_field_smoothness_scan, origin_scan
from .t1 import m2_obstruction_certificate, module_generator_degrees, t1_scan
from .weierstrass import buchweitz_test, gamma_hyperelliptic_reduce, torres_double

SCAN_DIR_ENV = "SEMICURVE_SCAN_DIR"


@dataclass
class CommandResult:
    command: list[str]
    payload: dict
    status: int = 0
    text: str = ""
    json_output: bool = False

    def to_json(self) -> str:
        return json.dumps(self.payload, indent=2)


class UsageError(Exception):
    pass


def _normalize(payload: dict) -> dict:
    # Tuples become lists so that parse(emit(payload)) == payload.
    return json.loads(json.dumps(payload))


def _semigroup(text: str):
    try:
        return parse_semigroup(text)
    except SemigroupError as exc:
        raise UsageError(str(exc)) from None


# -- verbs -----------------------------------------------------------------


def cmd_profile(args) -> tuple[dict, str, int]:
    S = _semigroup(args.semigroup)
    if S.is_natural_numbers():
        payload = {"semigroup": format_semigroup(S), "generators": [1], "genus": 0, "conductor": 0, "ordinary": True}
        return payload, "S = N (ordinary: no gaps)", 0
    P = profile(S)
    cls = classify_sequence(S)
    payload = {
        "semigroup": format_semigroup(S),
        "generators": list(S.min_generators),
        "profile": P.as_dict(),
        "sequence": {"kind": cls.kind, "a": cls.a, "d": cls.d},
    }
    lines = [format_semigroup(S), f"generators = {list(S.min_generators)}"]
    lines += [f"{k} = {v}" for k, v in P.as_dict().items()]
    if P.is_ordinary:
        lines.append("ordinary semigroup")
    lines.append(f"sequence: {cls.kind}")
    return payload, "\n".join(lines), 0


def cmd_nu(args) -> tuple[dict, str, int]:
    S = _semigroup(args.semigroup)
    prof = find_sm(S)
    upto = args.upto if args.upto is not None else prof.window
    members = S.members(upto)
    values = [nu(S, s) for s in members]
    payload = {"s": members, "nu": values, "s_m": prof.s_m}
    text = "\n".join(f"{s}\t{v}" for s, v in zip(members, values))
    return payload, text, 0


def cmd_sm(args) -> tuple[dict, str, int]:
    S = _semigroup(args.semigroup)
    prof = find_sm(S)
    payload = {"s_m": prof.s_m, "index": prof.m_index}
    lines = [f"s_m = {prof.s_m}"]
    if not S.is_ordinary():
        pred = predict_sm(S)
        payload["prediction"] = pred.__dict__
        payload["prediction_ok"] = pred.consistent_with(prof.s_m)
        lines.append(f"case {pred.case}: exact={pred.exact} lower={pred.lower} upper={pred.upper}")
    else:
        lines.append("ordinary: nu never drops")
    return payload, "\n".join(lines), 0


def cmd_ordbound(args) -> tuple[dict, str, int]:
    S = _semigroup(args.semigroup)
    val = order_bound(S, args.k)
    return {"k": args.k, "order_bound": val}, f"d_ORD(C_{args.k}) = {val}", 0


def _scan_path(name: str | None, default: str) -> Path | None:
    base = os.environ.get(SCAN_DIR_ENV)
    if name is None:
        return Path(base) / default if base else None
    p = Path(name)
    if not p.is_absolute() and base:
        p = Path(base) / p
    return p


def _conjecture_record(gens: tuple[int, ...]) -> dict:
    from .semigroup import from_generators

    S = from_generators(gens)
    rec = check_conjecture(S).as_dict()
    rec["verdict"] = "pass" if rec["holds"] else "counterexample"
    return rec


def cmd_conjecture_scan(args) -> tuple[dict, str, int]:
    path = _scan_path(args.jsonl, f"conjecture-g{args.genus_max}.jsonl")
    done: dict[tuple[int, ...], dict] = {}
    if path is not None and path.exists():
        for line in path.read_text().splitlines():
            if line.strip():
                rec = json.loads(line)
                done[tuple(rec["generators"])] = rec
    todo = [
        S.min_generators
        for S in enumerate_by_genus(args.genus_max)
        if not S.is_ordinary() and S.min_generators not in done
    ]
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
    out = open(path, "a") if path is not None else None
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                records = list(ex.map(_conjecture_record, todo, chunksize=64))
        else:
            records = [_conjecture_record(g) for g in todo]
        for rec in records:
            done[tuple(rec["generators"])] = rec
            if out:
                out.write(json.dumps(rec) + "\n")
    finally:
        if out:
            out.close()
    recs = list(done.values())
    bad = [r for r in recs if not r["holds"]]
    pred_bad = [r for r in recs if not r["prediction_ok"]]
    payload = {
        "genus_max": args.genus_max,
        "checked": len(recs),
        "counterexamples": [r["generators"] for r in bad],
        "prediction_violations": [r["generators"] for r in pred_bad],
        "jsonl": str(path) if path else None,
    }
    text = (
        f"checked {len(recs)} non-ordinary semigroups of genus <= {args.genus_max}\n"
        f"counterexamples to s_m >= c + d - e: {len(bad)}\n"
        f"case-prediction violations: {len(pred_bad)}"
    )
    return payload, text, 1 if bad or pred_bad else 0


def cmd_buchweitz(args) -> tuple[dict, str, int]:
    S = _semigroup(args.semigroup)
    rep = buchweitz_test(S, args.mmax, shortcut=not args.no_shortcut)
    lines = [f"genus {rep.genus}"]
    if rep.shortcut_applied:
        lines.append("2c < 3g: bound holds for all m")
    for r in rep.records:
        lines.append(f"m={r.m}: #H_m = {r.size}, bound {r.bound}" + ("  VIOLATED" if r.violated else ""))
    lines.append(f"verdict: {rep.verdict}")
    return rep.as_dict(), "\n".join(lines), 0


def cmd_torres(args) -> tuple[dict, str, int]:
    Sp = _semigroup(args.semigroup)
    try:
        res = torres_double(Sp, args.genus)
    except SemigroupError as exc:
        raise UsageError(str(exc)) from None
    S = res.semigroup
    payload = {
        "semigroup": format_semigroup(S),
        "generators": list(S.min_generators),
        "genus": S.genus,
        "symmetric": S.is_symmetric(),
        "non_weierstrass": res.non_weierstrass,
    }
    text = f"{format_semigroup(S)}\ngenus {S.genus}, symmetric {S.is_symmetric()}\n"
    text += "non-Weierstrass (source is obstructed)" if res.non_weierstrass else "no obstruction inherited"
    return payload, text, 0


def cmd_reduce(args) -> tuple[dict, str, int]:
    S = _semigroup(args.semigroup)
    res = gamma_hyperelliptic_reduce(S, args.gamma)
    if res.semigroup is None:
        return {"failed": res.failed}, f"not reducible: {res.failed}", 0
    T = res.semigroup
    payload = {"semigroup": format_semigroup(T), "generators": list(T.min_generators), "genus": T.genus}
    return payload, format_semigroup(T), 0


def cmd_enumerate(args) -> tuple[dict, str, int]:
    counts = [0] * (args.genus_max + 1)
    items = []
    for S in enumerate_by_genus(args.genus_max):
        counts[S.genus] += 1
        if args.list:
            items.append(list(S.min_generators))
    payload = {"counts": counts}
    if args.list:
        payload["semigroups"] = items
    text = "\n".join(f"g={g}: {n}" for g, n in enumerate(counts))
    if args.list:
        text += "\n" + "\n".join("gen:" + ",".join(map(str, g)) for g in items)
    return payload, text, 0


def _presentation(text: str):
    S = _semigroup(text)
    try:
        return presentation(S)
    except PresentationError as exc:
        raise UsageError(str(exc)) from None


def cmd_curve_ideal(args) -> tuple[dict, str, int]:
    pres = _presentation(args.semigroup)
    jac = jacobian(pres)
    payload = pres.as_dict()
    payload["J1"] = [list(r) for r in jac.J1]
    lines = [f"{d}\t{p}" for d, p in zip(pres.degrees, pres.f)]
    lines.append("constants: " + ", ".join(f"{k}={v}" for k, v in pres.constants.items()))
    lines.append("relations:")
    lines += ["  [" + ", ".join(str(x) for x in row) + "]" for row in pres.r]
    return payload, "\n".join(lines), 0


def cmd_curve_t1(args) -> tuple[dict, str, int]:
    pres = _presentation(args.semigroup)
    table = t1_scan(pres)
    cert = m2_obstruction_certificate(pres, table)
    payload = table.as_dict()
    payload["generator_degrees"] = module_generator_degrees(pres, table)
    payload["m2"] = cert.as_dict()
    lines = [f"window {table.window[0]}..{table.window[1]}"]
    if args.table:
        lines.append("l\tG\t#G\tH\trho\tdim")
        for p in table.pieces:
            if p.G:
                H = sorted(set(p.H_degrees))
                lines.append(f"{p.ell}\t{list(p.G)}\t{len(p.G)}\t{H}\t{p.rho if p.H else ''}\t{p.dim}")
    else:
        for p in table.nonzero():
            lines.append(f"l={p.ell}: dim {p.dim}, basis {[list(b) for b in p.basis]}")
    lines.append(f"dim T1 = {table.total} (negative part {table.negative})")
    lines.append(f"negatively graded: {table.negatively_graded}")
    lines.append(cert.verdict)
    return payload, "\n".join(lines), 0


def _parse_ff(text: str) -> dict[str, int]:
    out = {}
    for part in text.split(","):
        k, _, v = part.partition("=")
        if not v:
            raise UsageError(f"malformed --ff-scan {text!r}")
        out[k.strip().lower()] = int(v)
    if "p" not in out:
        raise UsageError("--ff-scan needs p=<prime>")
    return out


def cmd_curve_deform(args) -> tuple[dict, str, int]:
    S = _semigroup(args.semigroup)
    case = args.case
    try:
        if case == "auto":
            case = "embdim3" if S.embedding_dimension == 3 else "arithmetic4"
        if case == "embdim3":
            fam = build_family_3(S)
        elif case == "arithmetic4":
            fam = build_family_4(S)
        elif case == "variant":
            fam = build_variant_b2(S)
        else:
            raise UsageError(f"unknown case {case!r}")
    except PresentationError as exc:
        raise UsageError(str(exc)) from None
    payload = {"family": fam.as_dict()}
    lines = [f"family {fam.name}, parameters {dict(zip(fam.params, fam.param_weights))}"]
    lines += [f"  F{j + 1} = {p}" for j, p in enumerate(fam.F)]
    status = 0
    if args.verify:
        if fam.parent is not None:
            rep = verify_flatness(fam.parent, raise_on_failure=False)
        else:
            rep = verify_flatness(fam, raise_on_failure=False)
        payload["flatness"] = rep.as_dict()
        proj = projectivize(fam)
        payload["projective"] = proj.as_dict()
        lines.append("flatness: " + ("all residuals zero" if rep.ok else "FAILED"))
        lines.append("projective closure:")
        lines += [f"  {p}" for p in proj.equations]
        status = 0 if rep.ok else 1
    if args.ff_scan:
        opts = _parse_ff(args.ff_scan)
        p = opts.pop("p")
        val = opts.get("u", opts.get("v", 1))
        try:
            if case == "variant":
                rep = origin_scan(fam, p)
                payload["origin_scan"] = rep.as_dict()
                lines.append(f"origin singular on every fibre over F_{p}^*: {rep.singular_everywhere}")
            else:
                rep = finite_field_smoothness_scan(fam, p, val, jobs=args.jobs)
                payload["ff_scan"] = rep.as_dict()
                lines.append(f"F_{p} scan at {rep.params}: {rep.points} points, min rank {rep.min_rank}")
                lines.append(rep.verdict)
                if not rep.smooth and val % p:
                    status = 1
        except BadPrimeError as exc:
            raise UsageError(str(exc)) from None
    return payload, "\n".join(lines), status


def cmd_paper_regress(args) -> tuple[dict, str, int]:
    results = [fn() for fn in FIXTURES.values()]
    payload = {"fixtures": [r.as_dict() for r in results]}
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.ok else 'FAIL'}  {r.name}")
        lines += [f"    {d}" for d in r.details]
    lines.append(
        "note: smoothability is a characteristic-0 statement; the checks above are exact identities "
        "and finite-field scans"
    )
    return payload, "\n".join(lines), 0 if all(r.ok for r in results) else 1


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(add_help=False)
    top.add_argument("--json", action="store_true", help="print JSON")
    top.add_argument("--jobs", type=int, default=1, help="worker processes for scans")
    # Repeated after the verb; SUPPRESS keeps a flag given before the verb.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print JSON")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for scans")

    parser = argparse.ArgumentParser(prog="sgp", description="Numerical semigroups and monomial curves.", parents=[top])
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_, semigroup=True):
        p = sub.add_parser(name, help=help_, parents=[common])
        if semigroup:
            p.add_argument("semigroup", help="gen:4,9,11 or elem:0,8,12,14,15,16;c=20")
        p.set_defaults(func=fn)
        return p

    verb("profile", cmd_profile, "conductor, dominant, subconductor and related invariants")
    verb("nu", cmd_nu, "nu-sequence").add_argument("--upto", type=int)
    verb("sm", cmd_sm, "last strict drop of nu and its case prediction")
    verb("ordbound", cmd_ordbound, "order bound d_ORD(C_k)").add_argument("--k", type=int, required=True)
    p = verb("conjecture-scan", cmd_conjecture_scan, "check s_m >= c + d - e by genus", semigroup=False)
    p.add_argument("--genus-max", type=int, required=True)
    p.add_argument("--jsonl", help=f"output file (relative paths go under ${SCAN_DIR_ENV})")
    p = verb("buchweitz", cmd_buchweitz, "gap-sumset obstruction")
    p.add_argument("--mmax", type=int, default=2)
    p.add_argument("--no-shortcut", action="store_true")
    verb("torres", cmd_torres, "symmetric double cover construction").add_argument("--genus", type=int, required=True)
    verb("reduce", cmd_reduce, "halve a gamma-hyperelliptic semigroup").add_argument("--gamma", type=int, required=True)
    p = verb("enumerate", cmd_enumerate, "semigroups by genus", semigroup=False)
    p.add_argument("--genus-max", type=int, required=True)
    p.add_argument("--list", action="store_true")

    curve = sub.add_parser("curve", help="monomial curve computations", parents=[common])
    csub = curve.add_subparsers(dest="curve_verb", required=True)
    for name, fn, help_ in (
        ("ideal", cmd_curve_ideal, "binomial generators and relations"),
        ("t1", cmd_curve_t1, "graded pieces of T^1"),
        ("deform", cmd_curve_deform, "explicit deformation family"),
    ):
        p = csub.add_parser(name, help=help_, parents=[common])
        p.add_argument("semigroup")
        p.set_defaults(func=fn)
        if name == "t1":
            p.add_argument("--table", action="store_true")
        if name == "deform":
            p.add_argument("--case", default="auto", choices=["auto", "embdim3", "arithmetic4", "variant"])
            p.add_argument("--verify", action="store_true")
            p.add_argument("--ff-scan", help="p=31,u=1")
    verb("paper-regress", cmd_paper_regress, "run the reference fixture set", semigroup=False)
    return parser


def run(argv: list[str]) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandResult(list(argv), {"error": "usage"}, int(exc.code or 2))
    try:
        payload, text, status = args.func(args)
    except UsageError as exc:
        return CommandResult(list(argv), {"error": str(exc)}, 2, f"error: {exc}\n{parser.format_usage()}")
    except (SemigroupError, PresentationError, ValueError) as exc:
        return CommandResult(list(argv), {"error": str(exc)}, 1, f"error: {exc}")
    return CommandResult(list(argv), _normalize(payload), status, text, args.json)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    res = run(argv)
    if res.json_output:
        print(res.to_json())
    elif res.text:
        stream = sys.stderr if "error" in res.payload and res.status else sys.stdout
        print(res.text, file=stream)
    return res.status


if __name__ == "__main__":
    raise SystemExit(main())
