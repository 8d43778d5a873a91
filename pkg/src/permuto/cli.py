"""Command-line front end.

Reports are line-oriented ``key=value`` text.  Every report echoes its inputs,
the seed, and (when one is used) the certified weight, so any run can be
replayed byte-identically from its own output.  All randomness flows through
the seed; the default seed is DEFAULT_SEED below and can be overridden by the
PERMUTO_SEED environment variable or --seed.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import euler, genperm, matroid, tropical
from .errors import CapExceeded, ParseError, PermutoError

DEFAULT_SEED = 101

PIPELINE_CAP = 8       # chi / indeg / snapper / hstar / omega / numdim
SWEEP_CAP = 6          # exhaustive self-test sweeps
FANO_WHITELIST = 7     # the one n = 7 pipeline citizen


def _seed_from(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PERMUTO_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"PERMUTO_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _load_matroid(args) -> matroid.Matroid:
    if not args.matroid:
        raise ParseError("this command needs --matroid")
    return matroid.catalog(args.matroid)


def _check_pipeline_cap(m: matroid.Matroid):
    if m.n > PIPELINE_CAP:
        raise CapExceeded(f"pipeline commands cap the ground set at {PIPELINE_CAP}")


def _load_polytope(args, m: matroid.Matroid | None) -> genperm.SubmodularSpec:
    if not args.polytope:
        raise ParseError("this command needs --polytope")
    expr = args.polytope
    if expr.startswith("file:"):
        with open(expr[len("file:"):], "r", encoding="utf-8") as fh:
            return genperm.loads(fh.read())
    env = {"M": m} if m is not None else None
    p = genperm.build_polytope(expr, env)
    if m is not None and p.n < m.n:
        p = genperm.embed_spec(p, m.n)
    return p


def _echo(args, keys):
    lines = [f"command={args.command}"]
    for key in keys:
        val = getattr(args, key, None)
        if val is not None:
            lines.append(f"{key}={val}")
    return lines


def _weight_lines(w: tropical.Weight):
    return [f"seed={w.seed}", f"w={w}", f"retries={w.retries}"]


def run(argv) -> tuple[int, str]:
    """Execute a request; returns (exit status, report text)."""
    args = _parse(argv)
    try:
        lines = _dispatch(args)
        status = 0
    except PermutoError as err:
        lines = [f"command={args.command}", f"error={err.code}", f"detail={err}"]
        status = err.exit_status
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return status, text


def _dispatch(args) -> list[str]:
    cmd = args.command
    if cmd == "validate":
        m = _load_matroid(args)
        out = _echo(args, ["matroid"])
        out += [f"ok=true", f"n={m.n}", f"r={m.r}", f"bases={len(m.bases)}",
                f"loopless={'true' if m.is_loopless else 'false'}"]
        if args.verbose:
            out.append(matroid.dumps(m).rstrip("\n"))
        return out

    if cmd == "flats":
        m = _load_matroid(args)
        out = _echo(args, ["matroid"])
        flats = matroid.proper_flats(m)
        out.append(f"count={len(flats)}")
        for f in flats:
            out.append(f"flat={matroid.set_str(f)} rank={m.rank(f)}")
        return out

    if cmd == "bergman":
        m = _load_matroid(args)
        _check_pipeline_cap(m)
        bf = tropical.bergman_fan(m)
        out = _echo(args, ["matroid"])
        out += [f"dim={bf.dim}", f"maximal_cones={len(bf.maximal_chains)}"]
        for ch in bf.maximal_chains:
            out.append("cone=" + ("<".join(matroid.set_str(s) for s in ch) or "-"))
        return out

    if cmd == "dilworth":
        m = _load_matroid(args)
        d = matroid.dilworth_truncation(m)
        out = _echo(args, ["matroid"])
        out += [f"pairs={d.n}", f"rank={d.r}", f"bases={len(d.bases)}"]
        if args.verbose:
            out.append(matroid.dumps(d).rstrip("\n"))
        return out

    if cmd == "dhr":
        m = _load_matroid(args)
        if args.sets is None:
            raise ParseError("dhr needs --sets (semicolon-separated comma lists)")
        sets = [[int(tok) for tok in part.split(",")]
                for part in args.sets.split(";") if part.strip()]
        val = euler.dhr_degree(m, sets)
        return _echo(args, ["matroid", "sets"]) + [f"dhr={val}"]

    if cmd == "macaulay":
        if args.vector is None:
            raise ParseError("macaulay needs --vector h0,h1,...")
        vec = tuple(int(tok) for tok in args.vector.split(","))
        ok, witness = euler.macaulay_check(vec)
        out = _echo(args, ["vector"])
        out.append(f"macaulay={'true' if ok else 'false'} "
                   f"witness={witness if witness is not None else 'none'}")
        return out

    if cmd == "progenitor":
        m = _load_matroid(args)
        ms = euler.kindred_snapper(m)
        d, top, prog = euler.multidegree_and_progenitor(ms)
        out = _echo(args, ["matroid"])
        out += [f"degree={d}", f"top_sets={len(top)}",
                f"round_trip={'true' if prog == m else 'false'}"]
        if args.verbose:
            out.append(f"snapper={ms}")
        return out

    if cmd == "selftest":
        from . import selftest
        level = args.level or "fast"
        report, ok = selftest.run(level, seed=_seed_from(args))
        return _echo(args, ["level"]) + report + [f"selftest={'pass' if ok else 'FAIL'}"]

    if cmd == "numdim":
        m = _load_matroid(args)
        _check_pipeline_cap(m)
        p = _load_polytope(args, m)
        out = _echo(args, ["matroid", "polytope"])
        out.append(f"numdim={euler.numerical_dimension(m, p)}")
        return out

    # pipeline commands below need a matroid + weight
    m = _load_matroid(args)
    if m.n != FANO_WHITELIST:
        _check_pipeline_cap(m)
    seed = _seed_from(args)
    w = tropical.sample_weight(m, seed)

    if cmd == "indeg":
        deg = tropical.degeneration(m, w)
        out = _echo(args, ["matroid"])
        out.append(tropical.report(deg).rstrip("\n"))
        out.append(f"components={len(deg.components)}")
        out.append(f"coefficient_total={deg.total()}")
        ok = tropical.multiplicity_certificate(m, w)
        out.append(f"multiplicity_one={'true' if ok else 'false'}")
        return out

    if cmd == "chi":
        p = _load_polytope(args, m)
        a = args.power if args.power is not None else 1
        val = euler.chi(m, p, a, w)
        out = _echo(args, ["matroid", "polytope", "power"])
        if args.power is None:
            out.append(f"power={a}")
        out += _weight_lines(w)
        out.append(f"chi={val}")
        return out

    if cmd == "snapper":
        p = _load_polytope(args, m)
        poly = euler.snapper_polynomial(m, p, w)
        out = _echo(args, ["matroid", "polytope"]) + _weight_lines(w)
        out.append(f"degree={poly.degree}")
        out.append(f"p(a) = {poly.binomial_str()} ; monomial form: {poly.monomial_str()}")
        return out

    if cmd == "hstar":
        p = _load_polytope(args, m)
        h = euler.hstar(m, p, w)
        ok, witness = euler.macaulay_check(h)
        out = _echo(args, ["matroid", "polytope"]) + _weight_lines(w)
        out.append("hstar=" + ",".join(str(v) for v in h))
        out.append(f"macaulay={'true' if ok else 'false'} "
                   f"witness={witness if witness is not None else 'none'}")
        return out

    if cmd == "omega":
        val = euler.omega(m, w)
        out = _echo(args, ["matroid"]) + _weight_lines(w)
        out.append(f"omega={val}")
        return out

    raise ParseError(f"unknown command {cmd!r}")


def _parse(argv):
    ap = argparse.ArgumentParser(
        prog="permuto",
        description="Exact matroid Euler-characteristic calculus on the "
                    "permutohedral toric variety.")
    ap.add_argument("command", choices=[
        "validate", "flats", "bergman", "indeg", "chi", "snapper", "hstar",
        "macaulay", "omega", "numdim", "dilworth", "dhr", "progenitor",
        "selftest"])
    ap.add_argument("--matroid", help="catalog expression or file:PATH")
    ap.add_argument("--polytope", help="polytope expression or file:PATH")
    ap.add_argument("--power", type=int, help="tensor power a (chi)")
    ap.add_argument("--seed", type=int, help=f"RNG seed (default {DEFAULT_SEED}, "
                                             "env PERMUTO_SEED overrides the default)")
    ap.add_argument("--vector", help="comma-separated integers (macaulay)")
    ap.add_argument("--sets", help="semicolon-separated comma lists (dhr)")
    ap.add_argument("--level", choices=["fast", "full"], help="selftest level")
    ap.add_argument("--out", help="also write the report to this path")
    ap.add_argument("--verbose", action="store_true")
    return ap.parse_args(argv)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    status, text = run(argv)
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
