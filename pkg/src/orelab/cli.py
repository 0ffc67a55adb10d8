"""``orelab`` command line: check, verify-paper, annihilators, idempotents, search, multiply."""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .checks import PROPERTY_NAMES, decide, replay_witness
from .corpus import CATALOGUE, InstanceStream, fixture_names, generate_instances, load_fixture
from .deciders import (
    idempotent_generator,
    right_annihilator,
    right_ideal_annihilator,
)
from .errors import OrelabError, UnknownFixture
from .harness import HarnessConfig, default_workers, verify_paper
from .ore import OreExtension
from .polysearch import WORK_CAP
from .rings import build_ring, enumerate_idempotents
from .specfile import RingSpec, load_spec
from .verdicts import REPORT_SCHEMA_VERSION, Status

EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR = 0, 1, 2


# -- target resolution -----------------------------------------------------------------

def _shorthand(text: str):
    """Ring specs for names like ``zmod4``, ``z4``, ``gf4``, ``gf2^2`` or a catalogue entry."""
    key = text.lower()
    for name, (spec, _) in CATALOGUE.items():
        if key == name.lower():
            return name, spec
    m = re.fullmatch(r"(?:zmod|z)(\d+)", key)
    if m:
        return text, {"kind": "zmod", "params": {"n": int(m.group(1))}}
    m = re.fullmatch(r"gf(\d+)(?:\^(\d+))?", key)
    if m:
        p, k = int(m.group(1)), int(m.group(2) or 1)
        if m.group(2) is None:
            # gf4 = GF(2^2), gf9 = GF(3^2)
            for q in range(2, p + 1):
                e = 1
                while q ** e < p:
                    e += 1
                if q ** e == p and all(q % d for d in range(2, q)):
                    p, k = q, e
                    break
        return text, {"kind": "gf", "params": {"p": p, "k": k}}
    return None


def resolve_target(text: str | None) -> RingSpec:
    """A spec file path, a fixture name, or a built-in ring name."""
    if not text:
        raise UnknownFixture("no target given: pass a spec file, fixture name or ring name")
    path = Path(text)
    if path.suffix == ".json" or path.is_file():
        return load_spec(path)
    if text in fixture_names():
        return load_fixture(text).spec
    hit = _shorthand(text)
    if hit is None:
        raise UnknownFixture(f"'{text}' is not a spec file, fixture ({', '.join(fixture_names())}) "
                             f"or built-in ring ({', '.join(CATALOGUE)}, zmodN, gfQ)")
    name, spec = hit
    ring = build_ring(spec)
    ring.name = name
    return RingSpec(name, ring)


# -- subcommands ------------------------------------------------------------------------

def _emit(args, text: str, doc: dict):
    out = json.dumps(doc, sort_keys=True, indent=2) if args.format == "machine" else text
    print(out)


def cmd_check(args) -> int:
    target = args.fixture or args.target
    if args.property is None:
        if args.fixture and args.target:
            args.property = args.target
        else:
            raise OrelabError("usage: check TARGET PROPERTY (or --fixture NAME PROPERTY)")
    spec = resolve_target(target)
    sigma = spec.sigma(args.sigma)
    delta = spec.delta(args.delta, sigma)
    candidates = [c.split(";") for c in args.candidate] if args.candidate else None
    v = decide(args.property, spec.ring, sigma, delta, dmax=args.dmax, work_cap=args.work_cap,
               seed=args.seed, candidates=candidates, var=spec.var)
    replayed = replay_witness(v, spec.ring, sigma, delta, var=spec.var) if v.fails else None
    doc = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "target": spec.name,
        "sigma": sigma.name,
        "delta": delta.name,
        "verdict": v.to_record(spec.ring, timings=False),
        "replayed": replayed,
        "timings": {"elapsed": round(v.elapsed, 6)},
    }
    text = f"{spec.name} [sigma={sigma.name}, delta={delta.name}] {v.line(spec.ring)}"
    if replayed is not None:
        text += f"\nwitness replay: {'genuine violation' if replayed else 'DOES NOT REPLAY'}"
    _emit(args, text, doc)
    return EXIT_FAILS if v.status == Status.FAILS else EXIT_HOLDS


def annihilator_report(ring) -> dict:
    """Point and principal-ideal right annihilators, their intersection closure, and idempotents."""
    fmt = lambda xs: sorted(ring.format(x) for x in xs)
    idem = enumerate_idempotents(ring)

    def entry(ann):
        e = idempotent_generator(ring, ann.members)
        return {"of": [ring.format(x) for x in ann.generators], "members": fmt(ann.members),
                "idempotent_generated": e is not None,
                "generator": ring.format(e) if e is not None else None}

    point = [entry(right_annihilator(ring, [a])) for a in ring.elements]
    ideal = [entry(right_ideal_annihilator(ring, [a])) for a in ring.elements]
    sets = {right_annihilator(ring, [a]).members for a in ring.elements}
    frontier = set(sets)
    while frontier:
        new = {x & y for x in frontier for y in sets} - sets
        sets |= new
        frontier = new
    closure = []
    for members in sorted(sets, key=lambda s: (len(s), sorted(s))):
        e = idempotent_generator(ring, members)
        closure.append({"members": fmt(members), "idempotent_generated": e is not None,
                        "generator": ring.format(e) if e is not None else None})
    return {"ring": ring.name, "idempotents": [ring.format(e) for e in idem],
            "point": point, "principal_ideal": ideal, "closure": closure}


def cmd_annihilators(args) -> int:
    spec = resolve_target(args.fixture or args.target)
    rep = annihilator_report(spec.ring)
    lines = [f"{spec.name}: idempotents {{{', '.join(rep['idempotents'])}}}"]
    for title, key in (("r({a})", "point"), ("r(aR)", "principal_ideal")):
        lines.append(f"{title}:")
        for e in rep[key]:
            flag = f"= {e['generator']}R" if e["idempotent_generated"] else "NOT idempotent-generated"
            lines.append(f"  a={e['of'][0]}: {{{', '.join(e['members'])}}}  {flag}")
    lines.append("intersection closure of the r({a}):")
    for e in rep["closure"]:
        flag = f"= {e['generator']}R" if e["idempotent_generated"] else "NOT idempotent-generated"
        lines.append(f"  {{{', '.join(e['members'])}}}  {flag}")
    _emit(args, "\n".join(lines), dict(rep, schema_version=REPORT_SCHEMA_VERSION))
    return EXIT_HOLDS


def cmd_idempotents(args) -> int:
    spec = resolve_target(args.fixture or args.target)
    R = spec.ring
    idem = enumerate_idempotents(R)
    central = [e for e in idem if all(R.eq(R.mul(e, r), R.mul(r, e)) for r in R.elements)]
    doc = {"schema_version": REPORT_SCHEMA_VERSION, "ring": spec.name,
           "idempotents": [R.format(e) for e in idem],
           "central": [R.format(e) for e in central],
           "right_ideals": {R.format(e): sorted(R.format(x) for x in
                                                {R.mul(e, r) for r in R.elements}) for e in idem}}
    lines = [f"{spec.name}: {len(idem)} idempotents"]
    for e in idem:
        tag = "central" if e in central else "not central"
        lines.append(f"  {R.format(e)} ({tag}); eR = {{{', '.join(doc['right_ideals'][R.format(e)])}}}")
    _emit(args, "\n".join(lines), doc)
    return EXIT_HOLDS


def cmd_verify_paper(args) -> int:
    cfg = HarnessConfig(dmax=args.dmax, work_cap=args.work_cap, seed=args.seed,
                        workers=args.workers or default_workers())
    fixtures = [load_fixture(n) for n in args.fixture] if args.fixture else None
    report = verify_paper(cfg, fixtures, run_theorems=not args.no_theorems)
    if args.output:
        Path(args.output).write_text(report.to_json(timings=not args.no_timings) + "\n")
    if args.format == "machine":
        print(report.to_json(timings=not args.no_timings))
    else:
        print(report.to_text())
    return EXIT_HOLDS if report.ok else EXIT_FAILS


def cmd_search(args) -> int:
    """Corpus instances where every ``--holds`` property holds and every ``--fails`` one fails."""
    stream = InstanceStream(seed=args.seed, rings=tuple(args.ring) if args.ring else tuple(CATALOGUE))
    found = []
    for inst in generate_instances(stream):
        verdicts = {}
        ok = True
        for prop, want_fail in [(p, False) for p in args.holds] + [(p, True) for p in args.fails]:
            v = decide(prop, inst.ring, inst.sigma, inst.delta, dmax=args.dmax,
                       work_cap=args.work_cap, seed=inst.seed)
            verdicts[prop] = v
            if v.fails != want_fail:
                ok = False
                break
        if ok:
            found.append({"instance": inst.label,
                          "verdicts": [v.to_record(inst.ring, timings=False) for v in verdicts.values()]})
            if args.limit and len(found) >= args.limit:
                break
    lines = [f"{len(found)} matching instance(s)"]
    for f in found:
        lines.append(f"  {f['instance']}")
        for v in f["verdicts"]:
            w = f"  witness {v['witness']}" if v["witness"] else ""
            lines.append(f"    {v['property']}: {v['status']} [{v['mode']}]{w}")
    _emit(args, "\n".join(lines), {"schema_version": REPORT_SCHEMA_VERSION, "matches": found})
    return EXIT_HOLDS if found else EXIT_FAILS


def cmd_multiply(args) -> int:
    spec = resolve_target(args.fixture or args.target)
    sigma = spec.sigma(args.sigma)
    ext = OreExtension(spec.ring, sigma, spec.delta(args.delta, sigma), var=spec.var)
    p, q = ext.parse(args.p), ext.parse(args.q)
    iterated, words = ext.mul(p, q), ext.mul_words(p, q)
    agree = iterated == words
    doc = {"schema_version": REPORT_SCHEMA_VERSION, "p": str(p), "q": str(q),
           "product": str(iterated), "word_route": str(words), "routes_agree": agree}
    _emit(args, f"({p}) * ({q}) = {iterated}" + ("" if agree else f"\nword route: {words}"), doc)
    return EXIT_HOLDS if agree else EXIT_ERROR


# -- parser ----------------------------------------------------------------------------------

def _common(p, target=True):
    if target:
        p.add_argument("target", nargs="?", help="spec file, fixture name, or built-in ring (e.g. zmod4)")
        p.add_argument("--fixture", help="use a bundled fixture as the target")
    p.add_argument("--format", choices=("text", "machine"), default="text")


def _search_opts(p):
    p.add_argument("--dmax", type=int, default=2, help="maximum polynomial degree searched")
    p.add_argument("--work-cap", type=int, default=WORK_CAP,
                   help="products allowed before a search switches to seeded sampling")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orelab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide one property")
    _common(p)
    p.add_argument("property", nargs="?", help=f"one of: {', '.join(PROPERTY_NAMES)}")
    p.add_argument("--sigma", help="morphism name from the spec (default: the first)")
    p.add_argument("--delta", help="derivation name from the spec (default: the first for sigma)")
    p.add_argument("--candidate", action="append",
                   help="witness-mode candidate, elements or polynomials separated by ';'")
    _search_opts(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify-paper", help="replay every fixture and run every theorem check")
    _common(p, target=False)
    _search_opts(p)
    p.add_argument("--fixture", action="append", help="restrict to these fixtures")
    p.add_argument("--workers", type=int, default=0, help="worker processes (default: up to 4)")
    p.add_argument("--no-theorems", action="store_true", help="fixtures only")
    p.add_argument("--no-timings", action="store_true", help="omit the timings section")
    p.add_argument("--output", help="also write the machine report here")
    p.set_defaults(func=cmd_verify_paper)

    for name, fn, hlp in (("annihilators", cmd_annihilators, "list right annihilators"),
                          ("idempotents", cmd_idempotents, "list idempotents")):
        p = sub.add_parser(name, help=hlp)
        _common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("search", help="find corpus instances with a given property profile")
    _common(p, target=False)
    _search_opts(p)
    p.add_argument("--holds", action="append", default=[], help="property that must hold")
    p.add_argument("--fails", action="append", default=[], help="property that must fail")
    p.add_argument("--ring", action="append", help=f"restrict to catalogue rings ({', '.join(CATALOGUE)})")
    p.add_argument("--limit", type=int, default=0)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("multiply", help="multiply two skew polynomials by both routes")
    _common(p)
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("--sigma")
    p.add_argument("--delta")
    p.set_defaults(func=cmd_multiply)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OrelabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
