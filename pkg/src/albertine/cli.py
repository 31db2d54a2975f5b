"""Command line driver: ``albertine <command> ...``.

Exit status 0 when every check passes, 1 when one fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from pathlib import Path

from . import census, cns, comp, fts, her3, iso, tits
from .exact import GF, QQ, ZZ, PolyRing, extend
from .report import Report

VERIFY_TARGETS = ("comp:zorn", "comp:coxeter", "jordan:mat3", "jordan:split-albert", "jordan:her3-coxeter",
                  "tits:mat3-q", "fts:split", "fts:coxeter")


class UsageError(Exception):
    pass


# --- verify -----------------------------------------------------------------------

def _comp_report(C) -> Report:
    rep = comp.verify(C)
    bad = comp.corrupt(C)
    rep.add("negative_control", "a perturbed product table is rejected", not comp.verify(bad).ok)
    return rep


def _jordan_report(J, levels=cns.LEVELS) -> Report:
    rep = cns.verify(J, levels)
    bad = cns.verify(cns.corrupt_adjoint(J), ("axioms",))
    rep.add("negative_control", "a perturbed adjoint is rejected", not bad.ok)
    return rep


def coxeter_jordan_report() -> Report:
    """Axioms directly on Her_3 of the Coxeter order.  The Jordan identities go through the
    rational frame change onto the orthonormal octonion table; the degree-three identities
    through the splitting of the octonions over Q(i), which carries them from Her_3(Zorn)."""
    J = her3.her3(comp.coxeter_order())
    rep = _jordan_report(J, ("axioms",))
    target, frame = her3.frame_change_report(J)
    rep.extend(frame)
    for c in cns.verify(target, ("jordan",)).checks:
        rep.add(f"{c.name}_via_frame", c.ref, c.passed, c.detail, c.counterexample)
    rep.extend(her3.gaussian_splitting_report())
    for c in cns.verify(her3.her3(comp.zorn(ZZ)), ("degree3",)).checks:
        rep.add(f"{c.name}_via_splitting", c.ref, c.passed, c.detail, c.counterexample)
    return rep


def fts_report(C) -> Report:
    J = her3.her3(C)
    F = fts.FTSystem(J)
    rep = Report(command=f"fts {C.kind}")
    sweep = F.divisibility_sweep()
    rep.add("polarization_even", "L(e_a, e_b, e_c, e_d) even on all basis 4-tuples", not sweep["odd_polarization"],
            f"{sweep['tuples']} tuples")
    rep.add("psi_integral", "Theta + sum Phi even on all basis 4-tuples", not sweep["odd_psi"])
    G = extend(ZZ, "X", F.dim)
    X = [G.gen(n) for n in G.names]
    rep.add("b_alternating", "b(X, X) = 0", F.b(X, X, G) == 0)

    Q = extend(ZZ, "q", C.rank)
    q = [Q.gen(n) for n in Q.names]
    for s, t in ((0, 1), (1, 2), (2, 0)):
        r = F.preserves(F.e6_embed(her3.isometry("tau", J, s=s, t=t, q=q, ring=Q)))
        rep.add(f"e6_tau{s + 1}{t + 1}_preserves", "b and q fixed by e6(tau)", r["b"] and r["q"])
    r = F.preserves(F.e6_embed(her3.isometry("perm", J, pi=(1, 2, 0))))
    rep.add("e6_perm_preserves", "b and q fixed by e6(perm)", r["b"] and r["q"])
    B = PolyRing(ZZ, ["beta"], ("beta",))
    r = F.preserves(F.torus(B.gen("beta"), B))
    rep.add("torus_preserves", "b and q fixed by the torus", r["b"] and r["q"])
    for kind in ("up", "down"):
        r = F.translation_preserves(kind)
        rep.add(f"trans_{kind}_preserves", "b and q fixed by translations", r["b"] and r["q"] and r["additive"],
                "per-direction generic scalar with additivity")
    M = PolyRing(ZZ, ["mu"], ("mu",))
    r = F.preserves(F.similarity(M.gen("mu"), M))
    rep.add("similarity_scales", "b -> mu b and q -> mu^2 q", r["b"] and r["q"])
    bad = fts.FTMap("perturbed", [row[:] for row in F.torus(1, ZZ).matrix], ZZ)
    bad.matrix[1][2] = 1
    r = F.preserves(bad)
    rep.add("negative_control", "a perturbed map is rejected", not (r["b"] and r["q"]))
    return rep


def run_verify(target: str) -> Report:
    if target == "comp:zorn":
        rep = _comp_report(comp.zorn(ZZ))
    elif target == "comp:coxeter":
        rep = _comp_report(comp.coxeter_order())
    elif target == "jordan:mat3":
        rep = _jordan_report(her3.mat3_plus(ZZ))
    elif target == "jordan:split-albert":
        rep = _jordan_report(her3.her3(comp.zorn(ZZ)))
    elif target == "jordan:her3-coxeter":
        rep = coxeter_jordan_report()
    elif target == "tits:mat3-q":
        rep = _jordan_report(tits.tits1(tits.mat3(QQ), 2))
    elif target == "fts:split":
        rep = fts_report(comp.zorn(ZZ))
    elif target == "fts:coxeter":
        rep = fts_report(comp.coxeter_order())
    else:
        raise UsageError(f"unknown target {target!r}; choose from {', '.join(VERIFY_TARGETS)}")
    rep.command = f"verify {target}"
    return rep.finish()


# --- the other commands -------------------------------------------------------------

def run_signature(model: str) -> Report:
    rep = Report(command=f"signature {model}")
    names = census.REAL_MODELS if model == "all" else [model]
    for name in names:
        try:
            sig, triple = census.trace_signature(name)
        except KeyError as exc:
            raise UsageError(str(exc)) from None
        want = census.expected_signature(name)
        rep.add(f"signature[{name}]", "signature of the trace form", sig == want, f"{sig} (n+, n-, n0) = {triple}")
    return rep.finish()


def run_census(which: str) -> Report:
    rep = Report(command=f"census {which}")
    if which == "roots":
        L = census.coxeter_lattice()
        n = census.root_count()
        rep.add("gram_even", "even bilinear Gram", L.is_even())
        rep.add("gram_unimodular", "det 1", L.det() == 1, str(L.det()))
        rep.add("root_count", "240 vectors of value 2", n == 240, str(n))
        return rep.finish()
    if which not in ("her", "lambda"):
        raise UsageError("census expects her, lambda or roots")
    data = census.build_census_lattices()
    for name, ok in data.certificates.items():
        rep.add(f"certificate[{name}]", name, ok)
    res = census.idempotent_census(which)
    want = 3 if which == "her" else 0
    rep.add("idempotent_count", f"{want} trace-one elements with zero adjoint", res.count == want, str(res.count))
    if which == "her":
        eps = sorted(tuple(int(i == k) for i in range(27)) for k in range(3))
        rep.add("witnesses", "witnesses are eps_1, eps_2, eps_3", sorted(res.witnesses) == eps)
    return rep.finish()


def run_diagonalize(field: str, seed: int, trials: int, p: int) -> Report:
    rep = Report(command=f"diagonalize --field {field} --seed {seed}")
    if field == "p":
        J = her3.her3(comp.zorn(GF(p)))
        res = iso.diagonalize_trials(J, trials, seed)
        rep.add(f"diagonalize[GF({p})]", "random invertible elements diagonalize with N preserved", res.ok,
                f"{res.diagonalized}/{res.trials}")
    elif field == "q":
        J = her3.her3(comp.zorn(QQ))
        res = iso.diagonalize_trials(J, trials, seed)
        rep.add("diagonalize[split/Q]", "random invertible elements diagonalize with N preserved", res.ok,
                f"{res.diagonalized}/{res.trials}")
        data = census.build_census_lattices()
        JQ = her3.her3(comp.coxeter_order().base_change(QQ))
        res = iso.diagonalize_trials(JQ, 0, seed, extra=[data.v])
        rep.add("diagonalize[v]", "v diagonalizes with N preserved", res.ok)
    else:
        raise UsageError("--field must be q or p")
    return rep.finish()


def run_generators(which: str, seed: int) -> Report:
    rep = Report(command=f"generators {which}")
    if which == "mat2-f2":
        r = tits.generator_census_mat2(GF(2))
        rep.add("pairs_do_not_generate", "max pair closure dim <= 3", r["max_pair_dim"] <= 3, str(r["max_pair_dim"]))
        rep.add("triple_generates", "some 3-subset generates", r["triple"] is not None,
                str([[cns.as_int(c) for c in m] for m in r["triple"] or []]))
    elif which in ("albert-f2", "albert-q"):
        F = GF(2) if which == "albert-f2" else QQ
        J, gens, dim = tits.albert_generators(F, seed)
        rep.add("albert_three_generators", "three elements generate the split Albert algebra", dim == 27, str(dim))
        S = cns.matrix_algebra(F, 3)
        pair = tits.find_generating_pair(S, random.Random(seed))
        rep.add("mat3_two_generators", "two elements generate Mat_3^+", pair is not None)
    else:
        raise UsageError("generators expects mat2-f2, albert-f2 or albert-q")
    return rep.finish()


def run_report() -> Report:
    rep = Report(command="report")
    for sub in (run_census("her"), run_census("lambda"), run_census("roots"), run_signature("all"),
                run_verify("comp:zorn"), run_verify("jordan:mat3")):
        for c in sub.checks:
            rep.add(f"{sub.command}: {c.name}", c.ref, c.passed, c.detail, c.counterexample)
    return rep.finish()


# --- argument handling --------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="albertine", description=__doc__.splitlines()[0])
    ap.add_argument("--json", metavar="PATH", help="also write the report as JSON")
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run generic-point identity suites")
    v.add_argument("target", choices=VERIFY_TARGETS)
    s = sub.add_parser("signature", help="trace-form signature of a real model")
    s.add_argument("model", help=f"one of {', '.join(census.REAL_MODELS)} or all")
    c = sub.add_parser("census", help="lattice censuses")
    c.add_argument("which", choices=("her", "lambda", "roots"))
    d = sub.add_parser("diagonalize", help="random diagonalization trials")
    d.add_argument("--field", choices=("q", "p"), required=True)
    d.add_argument("--p", type=int, default=7, help="characteristic for --field p")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--trials", type=int, default=100)
    g = sub.add_parser("generators", help="generation experiments")
    g.add_argument("which", choices=("mat2-f2", "albert-f2", "albert-q"))
    g.add_argument("--seed", type=int, default=0)
    r = sub.add_parser("report", help="run a standard bundle of checks")
    r.add_argument("--json", dest="report_json", metavar="PATH")
    return ap


def _seed(args) -> int:
    env = os.environ.get("ALBERTINE_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"ALBERTINE_SEED must be an integer, got {env!r}") from None
    return args.seed


def run(argv=None) -> tuple[int, Report | None]:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 2), None
    try:
        if args.command == "verify":
            rep = run_verify(args.target)
        elif args.command == "signature":
            rep = run_signature(args.model)
        elif args.command == "census":
            rep = run_census(args.which)
        elif args.command == "diagonalize":
            rep = run_diagonalize(args.field, _seed(args), args.trials, args.p)
        elif args.command == "generators":
            rep = run_generators(args.which, _seed(args))
        else:
            rep = run_report()
    except UsageError as exc:
        print(f"albertine: {exc}", file=sys.stderr)
        return 2, None
    for line in rep.lines():
        print(line)
    print(f"{'ok' if rep.ok else 'FAILED'}: {sum(c.passed for c in rep.checks)}/{len(rep.checks)} checks, "
          f"{rep.elapsed_ms:.0f} ms")
    path = getattr(args, "report_json", None) or args.json
    if path:
        Path(path).write_text(rep.to_json(indent=2) + "\n")
    return (0 if rep.ok else 1), rep


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
