"""
Command line front end.

Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.
GL3EXT_P and GL3EXT_F override the default prime and degree.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from dataclasses import dataclass

from . import golden
from .extgraph import GraphVertex, distance, parse_vertex, to_dot
from .tametypes import (
    GenericityWarning,
    RhoData,
    TameType,
    TypeData,
    intersect_types,
    jh,
    rotate_pairs,
    rotation,
    w_question,
)
from .weyl import (
    AffElem,
    AffElem1,
    admissible_set,
    length,
    perm_from_cycle,
    reduced_word,
    word_to_elem,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    """Malformed command line input."""


@dataclass(frozen=True)
class RunConfig:
    p: int = 101
    f: int = 1
    seed: int = 0
    fmt: str = "text"
    strict: str = "warn"

    def __post_init__(self):
        if self.p < 5 or any(self.p % d == 0 for d in range(2, int(self.p ** 0.5) + 1)):
            raise InputError(f"p = {self.p} must be a prime at least 5")
        if self.f < 1:
            raise InputError(f"f = {self.f} must be positive")
        if self.fmt not in ("json", "dot", "text"):
            raise InputError(f"unknown format {self.fmt!r}")
        if self.strict not in ("warn", "error"):
            raise InputError(f"unknown strictness {self.strict!r}")


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def parse_triples(text: str) -> tuple:
    """'a,b,c;d,e,f' -> ((a, b, c), (d, e, f))."""
    out = []
    for part in text.split(";"):
        vals = [v for v in part.replace(" ", "").split(",") if v]
        if len(vals) != 3:
            raise InputError(f"expected three integers in {part!r}")
        try:
            out.append(tuple(int(v) for v in vals))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    return tuple(out)


def parse_perms(text: str) -> tuple:
    """'(12),id' -> permutations, one per embedding."""
    try:
        return tuple(perm_from_cycle(c) for c in text.replace(" ", "").split(",") if c)
    except (ValueError, KeyError, IndexError) as exc:
        raise InputError(f"bad permutation list {text!r}") from exc


def parse_type(text: str) -> tuple:
    """'S:MU' with S a comma separated list of cycles and MU semicolon separated triples."""
    if ":" not in text:
        raise InputError(f"expected 'perms:weights', got {text!r}")
    s_txt, mu_txt = text.split(":", 1)
    s, mu = parse_perms(s_txt), parse_triples(mu_txt)
    if len(s) != len(mu):
        raise InputError("number of permutations and weights differ")
    return s, mu


def parse_shape(text: str) -> AffElem:
    """Embeddings separated by ';'; each is 'perm|a,b,c' or a word over a, b, g (antidominant base)."""
    comps = []
    for part in text.split(";"):
        part = part.strip()
        if "|" in part:
            w, nu = part.split("|", 1)
            comps.append(AffElem1(parse_perms(w)[0], parse_triples(nu)[0]))
        else:
            word = "" if part in ("", "id", "Id") else part
            if set(word) - set("abg"):
                raise InputError(f"bad word {part!r}")
            comps.append(word_to_elem(word, -1))
    return AffElem(tuple(comps))


def parse_vertex_arg(text: str) -> GraphVertex:
    try:
        return parse_vertex(text)
    except ValueError as exc:
        raise InputError(f"bad vertex {text!r}; use '(m1,m2;a)' per embedding") from exc


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def emit(cfg: RunConfig, payload, text: str, dot: str | None = None) -> None:
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif cfg.fmt == "dot" and dot is not None:
        print(dot)
    else:
        print(text)


def _labelled(table: dict) -> list:
    return [{"label": lab.to_json(), "weight": sw.to_json()} for lab, sw in sorted(table.items())]


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def cmd_jh(args, cfg: RunConfig) -> int:
    s, mu = parse_type(args.type)
    tau = TameType(s, mu)
    table = jh(tau, cfg.p)
    text = "\n".join(f"{lab.label():<24} {sw}" for lab, sw in sorted(table.items()))
    emit(cfg, {"type": tau.to_json(), "p": cfg.p, "jh": _labelled(table)}, text,
         to_dot(table.keys(), "jh"))
    return EXIT_OK


def cmd_wq(args, cfg: RunConfig) -> int:
    s, lam = parse_type(args.rho)
    rho = RhoData(s, lam)
    table = w_question(rho, cfg.p)
    text = "\n".join(f"{lab.label():<24} {sw}" for lab, sw in sorted(table.items()))
    emit(cfg, {"rho": rho.to_json(), "p": cfg.p, "w?": _labelled(table)}, text,
         to_dot(table.keys(), "wq"))
    return EXIT_OK


def cmd_dist(args, cfg: RunConfig) -> int:
    v1, v2 = parse_vertex_arg(args.from_), parse_vertex_arg(args.to)
    if v1.f != v2.f:
        raise InputError("vertices have different f")
    center = parse_triples(args.center) if args.center else None
    if center is not None and len(center) != v1.f:
        raise InputError("center has the wrong number of embeddings")
    try:
        d = distance(v1, v2, center=center, p=cfg.p)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    emit(cfg, {"from": v1.to_json(), "to": v2.to_json(), "distance": d}, str(d))
    return EXIT_OK


def cmd_adm(args, cfg: RunConfig) -> int:
    lam = parse_triples(args.lambda_)[0]
    base = {"+": 1, "-": -1}.get(args.sign)
    if base is None:
        raise InputError("sign must be + or -")
    try:
        elems = sorted(admissible_set(lam, base), key=lambda x: (length(x, base), x))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    rows = []
    for x in elems:
        word, _ = reduced_word(x, base)
        rows.append({"element": str(x), "length": length(x, base), "word": word or "id",
                     "star": str(x.star()), "json": x.to_json()})
    text = "\n".join(f"{r['element']:<18} length {r['length']}  word {r['word']:<6} star {r['star']}"
                     for r in rows)
    text += f"\n{len(rows)} elements"
    emit(cfg, {"lambda": list(lam), "sign": args.sign, "elements": rows}, text)
    return EXIT_OK


def intersect_table_diff(p: int) -> list:
    """Recompute every table row and its rotations; return the mismatches."""
    mu = ((45, 20, 3),)
    rot = rotation()
    diffs = []
    for row in golden.load("intersections")["rows"]:
        x = word_to_elem(row["word"])
        want = frozenset(golden.pair(q) for q in row["sigma"])
        for k in (0, 1, 2):
            y = (rot ** k) * x * (rot ** k).inverse()
            got = intersect_types(((0, 1, 2),), mu, AffElem((y,)), p)[0]
            exp = rotate_pairs(want, k)
            if got != exp:
                diffs.append({"word": row["word"] or "Id", "rotation": k, "element": str(y),
                              "missing": sorted(map(list, exp - got)),
                              "extra": sorted(map(list, got - exp))})
    return diffs


def cmd_intersect_table(args, cfg: RunConfig) -> int:
    diffs = intersect_table_diff(cfg.p)
    n = 3 * len(golden.load("intersections")["rows"])
    lines = [f"- {d['word']} (rotation {d['rotation']}): missing {d['missing']} extra {d['extra']}"
             for d in diffs]
    text = "\n".join(lines) if diffs else f"all {n} rows match"
    emit(cfg, {"rows": n, "diffs": diffs}, text)
    return EXIT_FAIL if diffs else EXIT_OK


def cmd_lattice(args, cfg: RunConfig) -> int:
    from .lattices import predicted_graph, predicted_layers

    s, mu = parse_type(args.type)
    tau = TameType(s, mu)
    table = jh(tau, cfg.p)
    lab = parse_vertex_arg(args.cosocle)
    if lab not in table:
        raise InputError(f"{args.cosocle} is not a label of {tau}")
    sigma = table[lab]
    layers = predicted_layers(tau, sigma, cfg.p)
    g = predicted_graph(tau, sigma, cfg.p)
    text = "\n".join(f"layer {d}: " + ", ".join(str(x) for x in sorted(layer))
                     for d, layer in enumerate(layers))
    payload = g.to_json()
    payload["layers"] = [[x.to_json() for x in sorted(layer)] for layer in layers]
    emit(cfg, payload, text, g.to_dot())
    return EXIT_OK


def cmd_phi(args, cfg: RunConfig) -> int:
    from .frobenius import round_trip

    s, mu = parse_type(args.type)
    if len(s) != 1:
        raise InputError("phi takes a single permutation s_tau")
    td = TypeData(s[0], mu)
    shape = parse_shape(args.shape)
    if shape.f != td.f:
        raise InputError("shape and type have different f")
    try:
        rt = round_trip(shape, td, cfg.p)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    lines = []
    for j, m in enumerate(rt["matrices"]):
        lines += [f"B^({j}):", m.render()]
    lines += ["phi^f:", rt["phi_f"].render(),
              f"recovered {rt['recovered'].tau} (niveau {rt['recovered'].niveau})",
              f"expected  {rt['expected']}", f"round trip {'ok' if rt['ok'] else 'FAILED'}"]
    payload = {"matrices": [m.to_json() for m in rt["matrices"]], "phi_f": rt["phi_f"].to_json(),
               "recovered": rt["recovered"].tau.to_json(), "expected": rt["expected"].to_json(),
               "ok": rt["ok"]}
    emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if rt["ok"] else EXIT_FAIL


def cmd_ideal(args, cfg: RunConfig) -> int:
    from . import idealcalc as ic

    params = parse_triples(args.params)[0] if args.params else ic.DEFAULT_PARAMS
    p = args.prime or ic.DEFAULT_PRIME
    try:
        ic.check_params(params, p)
    except ic.DegenerateParametersError as exc:
        raise InputError(str(exc)) from exc
    if args.action == "report":
        rep = ic.discrepancy_report(params, p)
        text = "\n".join(f"{r['topic']:<40} {r['reading']:<36} {r['holds']!s:<6} {r['detail']}"
                         for r in rep["readings"])
        emit(cfg, rep, text)
        return EXIT_OK
    target = args.lemma or "all"
    if target == "all":
        reports = ic.verify_all(params, p)
    elif target in ic.LEMMAS:
        reports = [ic.verify_lemma(target, params, p)]
    else:
        raise InputError(f"unknown lemma {target!r}; choose from {', '.join(ic.LEMMAS)} or all")
    text = "\n".join(f"{r.name:<24} {'holds' if r.holds else 'FAILS'}" for r in reports)
    emit(cfg, {"params": list(params), "p": p, "reports": [r.to_json() for r in reports]}, text)
    return EXIT_OK if all(r.holds for r in reports) else EXIT_FAIL


def cmd_selftest(args, cfg: RunConfig) -> int:
    from .acceptance import run_all

    numbers = [int(n) for n in args.only.split(",")] if args.only else None
    results = []
    for res in run_all(numbers):
        results.append(res)
        if cfg.fmt == "text":
            print(res.line(), flush=True)
    if cfg.fmt == "json":
        print(json.dumps([r.to_json() for r in results], indent=2))
    else:
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=argparse.SUPPRESS,
                        help="prime (default: $GL3EXT_P or 101)")
    common.add_argument("--f", type=int, default=argparse.SUPPRESS,
                        help="degree (default: $GL3EXT_F or 1)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", dest="fmt", choices=("json", "dot", "text"), default=argparse.SUPPRESS)
    common.add_argument("--strict", choices=("warn", "error"), default=argparse.SUPPRESS,
                        help="treat genericity warnings as errors")
    ap = argparse.ArgumentParser(prog="gl3ext", parents=[common],
                                 description="Extension graph and tame type toolkit for GL3.")
    sub = ap.add_subparsers(dest="verb", required=True)
    _add = sub.add_parser

    def add_verb(name, **kw):
        return _add(name, parents=[common], **kw)

    sp = add_verb("jh", help="Jordan-Hoelder factors of R_s(mu)")
    sp.add_argument("--type", required=True, help="e.g. 'id:20,10,2' or '(12),id:20,10,2;30,12,1'")
    sp.set_defaults(func=cmd_jh)

    sp = add_verb("wq", help="predicted weights W?(rho)")
    sp.add_argument("--rho", required=True, help="'s:lambda' with V(rho|_I) = R_s(lambda)")
    sp.set_defaults(func=cmd_wq)

    sp = add_verb("dist", help="graph distance between two vertices")
    sp.add_argument("--from", dest="from_", required=True, help="'(m1,m2;a)' per embedding")
    sp.add_argument("--to", required=True)
    sp.add_argument("--center", help="restrict to Lambda_W^center")
    sp.set_defaults(func=cmd_dist)

    sp = add_verb("adm", help="admissible set with lengths and adjoints")
    sp.add_argument("--lambda", dest="lambda_", required=True, help="dominant triple, e.g. 2,1,0")
    sp.add_argument("--sign", required=True, help="+ (dominant base alcove) or -")
    sp.set_defaults(func=cmd_adm)

    sp = add_verb("intersect-table", help="recompute the intersection table and diff it")
    sp.set_defaults(func=cmd_intersect_table)

    sp = add_verb("lattice", help="predicted layers and graph of a lattice with given cosocle")
    sp.add_argument("--type", required=True)
    sp.add_argument("--cosocle", required=True, help="Sigma label '(m1,m2;a)' per embedding")
    sp.set_defaults(func=cmd_lattice)

    sp = add_verb("phi", help="Frobenius matrices of a semisimple shape and the type they carry")
    sp.add_argument("--shape", required=True, help="per embedding 'perm|a,b,c' or a word over a,b,g")
    sp.add_argument("--type", required=True, help="'s_tau:mu' with mu the digit triples")
    sp.set_defaults(func=cmd_phi)

    sp = add_verb("ideal", help="ideal identities of the deformation ring presentations")
    sp.add_argument("action", choices=("verify", "report"))
    sp.add_argument("lemma", nargs="?", help="lemma name or 'all'")
    sp.add_argument("--params", help="a,b,c (default 70,35,0)")
    sp.add_argument("--prime", type=int, help="characteristic (default 101)")
    sp.set_defaults(func=cmd_ideal)

    sp = add_verb("selftest", help="run the acceptance checks")
    sp.add_argument("--only", help="comma separated criterion numbers")
    sp.set_defaults(func=cmd_selftest)
    return ap


def _env_int(name: str, default: int) -> int:
    val = os.environ.get(name)
    if val is None:
        return default
    try:
        return int(val)
    except ValueError as exc:
        raise InputError(f"{name}={val!r} is not an integer") from exc


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = RunConfig(
            p=getattr(args, "p", None) or _env_int("GL3EXT_P", 101),
            f=getattr(args, "f", None) or _env_int("GL3EXT_F", 1),
            seed=getattr(args, "seed", 0), fmt=getattr(args, "fmt", "text"),
            strict=getattr(args, "strict", "warn"),
        )
        with warnings.catch_warnings():
            warnings.simplefilter("error" if cfg.strict == "error" else "default", GenericityWarning)
            return args.func(args, cfg)
    except (ValueError, GenericityWarning) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
