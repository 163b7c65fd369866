"""Command-line front end.

Exit codes: 0 success (or inequality holds), 3 inequality fails,
2 invalid input, 1 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import serialize as S
from .algebra.fields import field_from_name
from .algebra.unipoly import UniPoly
from .complexes import betti, euler_characteristic, generic_betti, specialize
from .corpus import CATALOG
from .errors import MissingEulerData, NonIsolated, NovikovError, UnsupportedGroup
from .jumps import jump_points
from .luck import (character_decomposition_oracle, normalized_betti_sequence, rate_constant,
                   verify_l2_novikov_bott)
from .morse_bott import (component_betti, euler_corollary, isolated_counts, morse_polynomial,
                         novikov_polynomial, strong_inequalities, verify_novikov_bott)

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_FAILS = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise CliError(EXIT_IO, f"{path}: {e.strerror or e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise CliError(EXIT_INVALID, f"{path}: not valid JSON ({e.msg} at line {e.lineno})") from None


def _guard(path: str, fn, *args):
    """Run a parse/validate step and prefix failures with the file name."""
    try:
        return fn(*args)
    except (NovikovError, ValueError, KeyError, TypeError) as e:
        cell = getattr(e, "cell", None)
        where = f" [{cell}]" if cell else ""
        raise CliError(EXIT_INVALID, f"{path}{where}: {type(e).__name__}: {e}") from None


class Run:
    def __init__(self, args: argparse.Namespace, argv: Sequence[str]):
        self.args = args
        self.argv = list(argv)
        self.inputs: dict[str, str] = {}

    def load(self, path: str):
        data = _read_json(path)
        self.inputs[path] = S.sha256_file(path)
        return data

    def instance(self, path: str):
        data = self.load(path)
        inst = _guard(path, S.complex_from_json, data)
        nc = _guard(path, inst.novikov)
        return inst, nc

    def report(self, results: dict, lines: list[str]) -> None:
        if self.args.json:
            out = {
                "schema": S.REPORT,
                "command": self.argv,
                "inputs": self.inputs,
                "exact_arithmetic": True,
                "float_rendering": bool(getattr(self.args, "float", False)),
                "results": results,
            }
            sys.stdout.write(S.dumps(out))
        else:
            sys.stdout.write("\n".join(lines) + "\n")


def _fmt(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _point(text: str, nc):
    s = text.strip()
    if "=" in s:
        s = s.split("=", 1)[1]
    vals = [x.strip() for x in s.split(",")]
    return tuple(nc.field.parse(x) for x in vals)


def cmd_betti(run: Run) -> int:
    path = run.args.input
    _, nc = run.instance(path)
    if run.args.at is None:
        b = generic_betti(nc)
        run.report({"generic": True, "betti": list(b)}, [f"generic betti {_fmt(b)}"])
        return EXIT_OK
    pt = _guard(path, _point, run.args.at, nc)
    b = betti(_guard(path, specialize, nc, pt))
    at = ",".join(nc.field.format(x) for x in pt)
    run.report({"generic": False, "at": at, "betti": list(b)}, [f"betti at u={at} {_fmt(b)}"])
    return EXIT_OK


def cmd_generic(run: Run) -> int:
    _, nc = run.instance(run.args.input)
    b = generic_betti(nc)
    chi = euler_characteristic(nc)
    run.report({"betti": list(b), "euler": chi, "ranks": [r for r, _ in nc.generic_ranks]},
               [f"generic betti {_fmt(b)}", f"euler characteristic {chi}"])
    return EXIT_OK


def cmd_jumps(run: Run) -> int:
    path = run.args.input
    _, nc = run.instance(path)
    js = _guard(path, jump_points, nc)
    approx = run.args.float
    roots = [S.root_json(r.root, r.betti, r.confirmed, approx) for r in js.roots]
    lines = [f"jump polynomial J(u) = {js.polynomial.to_str('u')}", f"generic betti {_fmt(js.generic)}"]
    for r in roots:
        where = r["exact"] or f"root of {r['poly']} in ({r['interval'][0]}, {r['interval'][1]})"
        tag = "" if r["confirmed"] else "  candidate, unconfirmed"
        extra = f"  ~{r['approx_non_authoritative']} (approximate)" if approx else ""
        lines.append(f"  u = {where}: betti {_fmt(r['betti']) if r['betti'] else '?'}{tag}{extra}")
    if not roots:
        lines.append("  no jump points on (0, inf)")
    run.report({"polynomial": js.polynomial.to_str("u"), "generic": list(js.generic), "roots": roots}, lines)
    return EXIT_OK


def cmd_verify(run: Run) -> int:
    a = run.args
    inst, nc = run.instance(a.complex)
    comps, extra = _guard(a.critical, S.components_from_json, run.load(a.critical))
    lines = []
    if a.mode == "l2":
        if a.tower:
            tower = _guard(a.tower, S.tower_from_json, run.load(a.tower), inst)
            N = UniPoly(normalized_betti_sequence(inst, tower).limit)
        else:
            N = novikov_polynomial(generic_betti(nc))
        M = _guard(a.critical, morse_polynomial, comps)
        cert = verify_l2_novikov_bott(M, N)
    else:
        M = _guard(a.critical, morse_polynomial, comps)
        N = novikov_polynomial(generic_betti(nc))
        cert = verify_novikov_bott(M, N, "integer")
    results = S.certificate_json(cert)
    lines += [f"M(λ) = {results['M']['text']}", f"N(λ) = {results['N']['text']}",
              f"Q(λ) = {results['Q']['text'] if results['Q'] else '(not a polynomial)'}",
              f"verdict: {results['verdict']}"]
    try:
        m = isolated_counts(comps)
        d = nc.fiber_dim or 1
        strong = strong_inequalities(m, generic_betti(nc), d)
        results["strong_inequalities"] = strong
        lines.append(f"strong inequalities {strong}")
    except NonIsolated:
        results["strong_inequalities"] = None
    chi = extra.get("chi")
    if chi is None and nc.fiber_dim:
        chi = euler_characteristic(nc) // nc.fiber_dim
    try:
        if chi is None:
            raise MissingEulerData("no Euler characteristic for a rank-0 bundle; give 'chi'")
        results["euler_corollary"] = euler_corollary(comps, int(chi))
        lines.append(f"euler corollary (chi = {chi}): {results['euler_corollary']}")
    except MissingEulerData as e:
        results["euler_corollary"] = None
        lines.append(f"euler corollary: {e}")
    results["component_betti"] = {Z.name: [str(x) for x in component_betti(Z)] for Z in comps}
    run.report(results, lines)
    return EXIT_OK if cert.holds else EXIT_FAILS


def cmd_luck(run: Run) -> int:
    a = run.args
    inst, _ = run.instance(a.input)
    tower = _guard(a.tower, S.tower_from_json, run.load(a.tower), inst)
    seq = _guard(a.input, normalized_betti_sequence, inst, tower)
    levels = []
    lines = [f"limit {_fmt(seq.limit)}"]
    J = None
    if tower.rank == 1:
        J = rate_constant(inst, tower.psi)
    for lv, err in zip(seq.levels, seq.errors()):
        row = {
            "modulus": list(lv.modulus),
            "index": lv.index,
            "betti": list(lv.betti),
            "normalized": [str(x) for x in lv.normalized],
            "polynomial": S.poly_json(UniPoly(lv.normalized)),
            "error": [str(x) for x in err],
        }
        msg = f"m={'x'.join(map(str, lv.modulus))}: normalized ({', '.join(row['normalized'])})"
        if tower.rank == 1:
            oracle = character_decomposition_oracle(inst, tower.psi, lv.index)
            row["oracle"] = list(oracle)
            row["oracle_agrees"] = tuple(oracle) == tuple(lv.betti)
            row["within_rate"] = all(e <= Fraction(j, lv.index) for e, j in zip(err, J))
            msg += f"  oracle {'agrees' if row['oracle_agrees'] else 'DISAGREES'}"
            msg += f"  |error| <= J/m: {row['within_rate']}"
        levels.append(row)
        lines.append(msg)
    results = {"levels": levels, "limit": list(seq.limit), "rate_constant": None if J is None else list(J)}
    run.report(results, lines)
    return EXIT_OK


def cmd_validate(run: Run) -> int:
    inst, nc = run.instance(run.args.input)
    cx = inst.complex
    msg = f"ok: cells {_fmt(cx.cells)}, fiber dimension {nc.fiber_dim}, {nc.nvars} variable(s), field {nc.field.name}"
    run.report({"valid": True, "cells": list(cx.cells), "fiber_dim": nc.fiber_dim, "nvars": nc.nvars,
                "field": nc.field.name}, [msg])
    return EXIT_OK


def _parse_params(extra: Sequence[str]) -> dict:
    params = {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--"):
            raise CliError(EXIT_INVALID, f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, raw = key.split("=", 1)
        else:
            raw = next(it, None)
            if raw is None:
                raise CliError(EXIT_INVALID, f"missing value for --{key}")
        try:
            params[key.replace("-", "_")] = json.loads(raw)
        except json.JSONDecodeError:
            params[key.replace("-", "_")] = raw
    return params


def cmd_corpus(run: Run, extra: Sequence[str]) -> int:
    name = run.args.name
    if name == "list":
        if run.args.json:
            sys.stdout.write(S.dumps({n: {"params": dict(e.params), "summary": e.summary}
                                      for n, e in sorted(CATALOG.items())}))
        else:
            for n, e in sorted(CATALOG.items()):
                ps = ", ".join(f"{k}: {v}" for k, v in e.params.items()) or "no parameters"
                sys.stdout.write(f"{n:15s} {e.summary} ({ps})\n")
        return EXIT_OK
    if name not in CATALOG:
        raise CliError(EXIT_INVALID, f"unknown corpus instance {name!r}; try 'corpus list'")
    params = _parse_params(extra)
    if "field" in params:
        params["field"] = _guard(name, field_from_name, params["field"])
    inst = _guard(name, lambda: CATALOG[name].builder(**params))
    sys.stdout.write(S.dumps(S.complex_to_json(inst)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="novikov", description="Exact Novikov numbers and Novikov-Bott inequalities")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="emit a report/v1 JSON document")
        return sp

    sp = add("betti", "Betti numbers, generic or at a point")
    sp.add_argument("--input", required=True)
    sp.add_argument("--at", help="point, e.g. u=2 or u=1/3 (comma separated for several variables)")
    sp = add("generic", "generic (Novikov) Betti numbers")
    sp.add_argument("--input", required=True)
    sp = add("jumps", "jump points on (0, inf)")
    sp.add_argument("--input", required=True)
    sp.add_argument("--float", action="store_true", help="also print decimal approximations (non-authoritative)")
    sp = add("verify", "check M - N = (1 + lambda) Q with Q >= 0")
    sp.add_argument("--complex", required=True)
    sp.add_argument("--critical", required=True)
    sp.add_argument("--mode", choices=["integer", "l2"], default="integer")
    sp.add_argument("--tower", help="tower/v1 file; in l2 mode N is the limit of the tower")
    sp = add("luck", "normalized Betti numbers along a tower of finite covers")
    sp.add_argument("--input", required=True)
    sp.add_argument("--tower", required=True)
    sp = add("validate", "parse and validate a complex/v1 file")
    sp.add_argument("--input", required=True)
    sp = add("corpus", "emit a corpus instance as complex/v1 JSON, or 'list'")
    sp.add_argument("name")
    return p


COMMANDS = {"betti": cmd_betti, "generic": cmd_generic, "jumps": cmd_jumps, "verify": cmd_verify,
            "luck": cmd_luck, "validate": cmd_validate}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    if extra and args.command != "corpus":
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    run = Run(args, argv)
    try:
        if args.command == "corpus":
            return cmd_corpus(run, extra)
        return COMMANDS[args.command](run)
    except CliError as e:
        sys.stderr.write(f"error: {e}\n")
        return e.code
    except UnsupportedGroup as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
