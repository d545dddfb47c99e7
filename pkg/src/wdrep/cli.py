"""Command-line interface.

Every command prints a JSON report on stdout (the bare pair for commands that
produce one, so they compose through pipes) and a summary with timing on
stderr; --timing also puts the elapsed time into the JSON.
Exit codes: 0 definitive answer, 1 a check failed (invalid input object or
negative validation), 2 usage or input error, 3 Unknown.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import conjugacy, fixtures, isocrystal, monodromy
from .errors import WDError
from .extension import field_automorphisms
from .groups import build_rep, parse_word
from .wd import WDPair, rescale_nilpotent, semisimplify, validate_pair, pushforward

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_UNKNOWN = 3

DEFAULTS = {
    "degree": 3,
    "budget": 2000,
    "search_budget": 1000,
    "order": isocrystal.DEFAULT_ORDER,
    "convention": "arithmetic",
    "seed": 0,
}


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# input


def read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _load(path, parser, what):
    data = read_json(path)
    try:
        return parser(data)
    except (KeyError, TypeError, ValueError, WDError) as exc:
        raise InputError(f"{path}: not a valid {what}: {exc!r}") from exc


def load_pair(path, cfg) -> WDPair:
    p = _load(path, WDPair.from_json, "pair")
    if cfg["convention"] == "geometric":
        p = WDPair(p.group, p.s.inverse(), p.N, p.q)
    return p


def emit_pair(p: WDPair, cfg):
    if cfg["convention"] == "geometric":
        p = WDPair(p.group, p.s.inverse(), p.N, p.q)
    return p.to_json()


def load_config(args):
    cfg = dict(DEFAULTS)
    if args.config:
        data = read_json(args.config)
        if not isinstance(data, dict):
            raise InputError(f"{args.config}: config must be a JSON object")
        unknown_keys = set(data) - set(DEFAULTS)
        if unknown_keys:
            raise InputError(f"{args.config}: unknown config keys {sorted(unknown_keys)}")
        cfg.update(data)
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    for key in ("degree", "budget", "search_budget", "order"):
        if not isinstance(cfg[key], int) or cfg[key] < 1:
            raise InputError(f"--{key.replace('_', '-')} must be a positive integer")
    if cfg["convention"] not in ("arithmetic", "geometric"):
        raise InputError("--convention must be arithmetic or geometric")
    return cfg


# ---------------------------------------------------------------------------
# commands; each returns (report dict, exit code, summary line)


def _verdict_exit(v):
    return EXIT_UNKNOWN if v.unknown else EXIT_OK


def cmd_validate(args, cfg):
    rep = validate_pair(load_pair(args.pair, cfg))
    return {"validation": rep.to_json()}, EXIT_OK if rep.ok else EXIT_FAILED, str(rep)


def cmd_check_equiv(args, cfg):
    p1, p2 = load_pair(args.a, cfg), load_pair(args.b, cfg)
    v = conjugacy.g_equivalent(p1, p2, cfg["degree"], cfg["budget"])
    return v.to_json(), _verdict_exit(v), v.kind


def cmd_canonical_form(args, cfg):
    p = load_pair(args.pair, cfg)
    inv = conjugacy.chain_invariant(p)
    out = {"chain_invariant": inv.to_json()}
    if p.group.variant != "GL":
        from .sl2 import graded_triple, imai_decompose, _h_spectrum

        t = graded_triple(p)
        d = imai_decompose(p, t)
        out["H_spectrum"] = _h_spectrum(t.H)
        out["s_prime_charpoly"] = [c.to_json() for c in d.s_prime.charpoly()]
        if not d.field.is_rational_field():
            out["s_prime_field"] = d.field.to_json()
    return out, EXIT_OK, str(inv)


def cmd_semisimplify(args, cfg):
    p = semisimplify(load_pair(args.pair, cfg))
    return emit_pair(p, cfg), EXIT_OK, "semisimplified"


def cmd_pushforward(args, cfg):
    p = load_pair(args.pair, cfg)
    try:
        r = build_rep(p.group, parse_word(args.word))
    except WDError as exc:
        raise InputError(f"--word: {exc}") from exc
    out = pushforward(p, r)
    return emit_pair(out, cfg), EXIT_OK, f"pushed forward along {r.name}"


def cmd_rescale(args, cfg):
    p = rescale_nilpotent(load_pair(args.pair, cfg), args.factor)
    return emit_pair(p, cfg), EXIT_OK, f"N scaled by {args.factor}"


def cmd_element_conj(args, cfg):
    p1, p2 = load_pair(args.a, cfg), load_pair(args.b, cfg)
    same, rep = conjugacy.element_conjugate(p1, p2, cfg["degree"])
    out = {"element_conjugate": same, "degree_bound": cfg["degree"]}
    if rep is not None:
        out["separating_rep"] = rep.name
    return out, EXIT_OK, f"element-conjugate: {same}"


def cmd_rationality(args, cfg):
    p = load_pair(args.pair, cfg)
    auts = [a for a in field_automorphisms(p.field) if a.gen_image != p.field.gen]
    res = conjugacy.class_defined_over(p, auts, cfg["degree"])
    label = {True: "defined over Q", False: "not defined over Q", None: "inconclusive"}[res]
    out = {"defined_over_Q": res, "automorphisms_checked": len(auts)}
    return out, EXIT_UNKNOWN if res is None else EXIT_OK, label


def cmd_monodromy_extract(args, cfg):
    t = _load(args.presentation, monodromy.TamePresentation.from_json, "tame presentation")
    rep = monodromy.validate_presentation(t)
    if not rep.ok:
        return {"validation": rep.to_json()}, EXIT_FAILED, str(rep)
    p = monodromy.extract_wd(t)
    return emit_pair(p, cfg), EXIT_OK, "extracted"


def cmd_restrict_ram(args, cfg):
    p = load_pair(args.pair, cfg)
    out = monodromy.restrict_totally_ramified(p, args.e, args.renormalize)
    return emit_pair(out, cfg), EXIT_OK, f"restricted to ramification degree {args.e}"


def _load_module(path, cfg):
    m = _load(path, isocrystal.LogModule.from_json, "log module")
    if cfg["order"] != DEFAULTS["order"] or cfg.get("_order_given"):
        if cfg["order"] > m.order:
            raise InputError(f"--order {cfg['order']} exceeds the module's order {m.order}")
        m = isocrystal.LogModule(m.p, cfg["order"], m.A[:cfg["order"]], m.Phi[:cfg["order"]])
    return m


def cmd_isoc(args, cfg):
    m = _load_module(args.module, cfg)
    if args.isoc_cmd == "validate":
        rep = isocrystal.validate_log_module(m)
        return {"validation": rep.to_json()}, EXIT_OK if rep.ok else EXIT_FAILED, str(rep)
    if args.isoc_cmd == "fiber":
        d = isocrystal.special_fiber(m)
        return d.to_json(), EXIT_OK, f"phi0 = {d.phi0}, N = {d.N}"
    if args.isoc_cmd == "gauge":
        g, const = isocrystal.gauge_to_constant(m)
        comp = isocrystal.check_fiber_comparison(m)
        out = {"gauge": [x.to_json() for x in g], "module": const.to_json(),
               "fiber_comparison": comp.to_json()}
        return out, EXIT_OK if comp.ok else EXIT_FAILED, str(comp)
    d = isocrystal.special_fiber(m)
    p = isocrystal.wd_from_phiN(d, args.s_deg)
    return emit_pair(p, cfg), EXIT_OK, "pair from the special fiber"


def cmd_fixture(args, cfg):
    if args.fixture_cmd == "tate":
        p = fixtures.tate_pair(args.q)
        return emit_pair(p, cfg), EXIT_OK, f"Tate pair for q = {args.q}"
    if args.search:
        rho1, rho2, cert = fixtures.so6_counterexample_search(cfg["search_budget"], 2)
        return fixtures.freeze_so6(rho1, rho2, cert), EXIT_OK, \
            f"found at candidate {cert['candidate_index']}"
    ok = fixtures.reverify_golden_so6()
    rho1, rho2, cert = fixtures.load_golden_so6()
    out = fixtures.freeze_so6(rho1, rho2, cert)
    out["reverified"] = ok
    return out, EXIT_OK if ok else EXIT_FAILED, f"golden pair re-verified: {ok}"


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default settings")
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument("--degree", type=int, help="representation degree bound")
    common.add_argument("--budget", type=int, help="intertwiner trial budget")
    common.add_argument("--search-budget", dest="search_budget", type=int,
                        help="candidate cap for the counterexample search")
    common.add_argument("--order", type=int, help="truncation order for log modules")
    common.add_argument("--timing", action="store_true", default=None,
                        help="include elapsed seconds in the JSON report")
    common.add_argument("--convention", choices=["arithmetic", "geometric"],
                        help="whether s is an arithmetic or a geometric Frobenius image")

    ap = argparse.ArgumentParser(prog="wdrep", parents=[common],
                                 description="Exact tools for Weil-Deligne pairs (s, N).")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, fn, *files, help=None):
        sp = sub.add_parser(name, parents=[common], help=help)
        for f in files:
            sp.add_argument(f)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "pair", help="check group membership and the twist relation")
    add("check-equiv", cmd_check_equiv, "a", "b", help="decide G-conjugacy")
    add("canonical-form", cmd_canonical_form, "pair", help="chain invariant")
    add("semisimplify", cmd_semisimplify, "pair", help="Frobenius semisimplification")
    sp = add("pushforward", cmd_pushforward, "pair", help="push along a representation word")
    sp.add_argument("--word", required=True, help="e.g. 'Sym^2(std)' or 'std (x) dual'")
    sp = add("rescale", cmd_rescale, "pair", help="replace N by a N")
    sp.add_argument("--factor", required=True)
    add("element-conj", cmd_element_conj, "a", "b", help="compare across the representation family")
    add("rationality", cmd_rationality, "pair", help="is the class fixed by the field automorphisms")
    mono = sub.add_parser("monodromy", parents=[common], help="tame presentations")
    msub = mono.add_subparsers(dest="mono_cmd", required=True)
    ex = msub.add_parser("extract", parents=[common], help="(sigma, gamma) -> (s, N)")
    ex.add_argument("presentation")
    ex.set_defaults(fn=cmd_monodromy_extract)
    sp = add("restrict-ram", cmd_restrict_ram, "pair", help="restrict to a totally ramified extension")
    sp.add_argument("--e", type=int, required=True, help="ramification degree")
    sp.add_argument("--renormalize", action="store_true")
    isoc = sub.add_parser("isoc", parents=[common], help="log modules with Frobenius")
    isub = isoc.add_subparsers(dest="isoc_cmd", required=True)
    for name in ("validate", "fiber", "gauge", "to-wd"):
        sp = isub.add_parser(name, parents=[common])
        sp.add_argument("module")
        sp.set_defaults(fn=cmd_isoc)
        if name == "to-wd":
            sp.add_argument("--s-deg", dest="s_deg", type=int, default=1)
    fx = sub.add_parser("fixture", parents=[common], help="built-in examples")
    fsub = fx.add_subparsers(dest="fixture_cmd", required=True)
    sp = fsub.add_parser("tate", parents=[common])
    sp.add_argument("--q", type=int, default=2)
    sp.set_defaults(fn=cmd_fixture)
    sp = fsub.add_parser("so6", parents=[common])
    sp.add_argument("--search", action="store_true", help="rerun the search instead of loading golden data")
    sp.set_defaults(fn=cmd_fixture)
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        cfg = load_config(args)
        cfg["_order_given"] = args.order is not None
        random.seed(cfg["seed"])
        report, code, summary = args.fn(args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except WDError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INPUT
    elapsed = time.perf_counter() - start
    if args.timing and isinstance(report, dict):
        report = dict(report, timing_s=round(elapsed, 6))
    json.dump(report, stdout, indent=2, sort_keys=True)
    stdout.write("\n")
    print(f"{summary}\n[{elapsed:.3f} s]", file=stderr)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
