"""Theorem checks over the generated corpus, fixture replay, and run reports."""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

from .checks import decide, replay_witness
from .corpus import (
    Fixture,
    Instance,
    InstanceStream,
    all_fixtures,
    generate_instances,
    run_fixture,
)
from .errors import OrelabError
from .ore import OreExtension
from .polysearch import WORK_CAP
from .verdicts import REPORT_SCHEMA_VERSION, SAMPLED, PropertyVerdict, Status, render_value

# facts whose value depends on (ring) only, (ring, sigma), or the full instance
_RING_ONLY = {"reversible", "symmetric", "baer", "quasi-baer", "pq-baer", "abelian", "armendariz"}
_SIGMA_ONLY = {"c-sigma", "right-sigma-reversible", "sigma-reversible", "right-sigma-symmetric",
               "sigma-symmetric", "sigma-skew-armendariz", "sigma-armendariz"}


@dataclass(frozen=True)
class HarnessConfig:
    dmax: int = 2
    work_cap: int = WORK_CAP
    seed: int = 0
    workers: int = 1
    word_depth: int = 3


class Facts:
    """Lazily computed verdicts for one instance, memoized in a shared cache."""

    def __init__(self, inst: Instance, cfg: HarnessConfig, cache: dict):
        self.inst = inst
        self.cfg = cfg
        self.cache = cache
        self.used: list[PropertyVerdict] = []

    def _key(self, name):
        i = self.inst
        if name in _RING_ONLY:
            return (i.ring_name, name)
        if name in _SIGMA_ONLY:
            return (i.ring_name, i.sigma.name, name)
        return (i.ring_name, i.sigma.name, i.delta.name, name)

    def __getitem__(self, name: str) -> PropertyVerdict:
        key = self._key(name)
        if key not in self.cache:
            i = self.inst
            v = decide(name, i.ring, i.sigma, i.delta, dmax=self.cfg.dmax,
                       work_cap=self.cfg.work_cap, seed=i.seed)
            self.cache[key] = (v, i)
        v = self.cache[key][0]
        self.used.append(v)
        return v

    def holds(self, name: str) -> bool:
        return self[name].holds


@dataclass(frozen=True)
class TheoremCheck:
    """A universally quantified statement checked instance by instance.

    ``hypotheses`` name facts that must not fail; ``conclusion`` returns the
    violations found on a qualifying instance (an empty list means it held).
    """

    id: str
    description: str
    hypotheses: tuple
    conclusion: Callable[[Facts], list]
    needs_unital: bool = False


def _fails(facts, name, label=None) -> list:
    v = facts[name]
    if v.holds:
        return []
    return [{"statement": label or name, "witness": v.render_witness(facts.inst.ring),
             "verdict": v}]


def _matrix(statements: dict) -> Callable[[Facts], list]:
    """Pairwise implications ``s_i ⇒ s_j`` among statements given as fact predicates."""

    def conclude(facts):
        vals = {k: fn(facts) for k, fn in statements.items()}
        out = []
        for a, (ok_a, _) in vals.items():
            for b, (ok_b, why_b) in vals.items():
                if a != b and ok_a and not ok_b:
                    out.append({"statement": f"{a} => {b}", **why_b})
        return out

    return conclude


def _fact(name):
    def get(facts):
        v = facts[name]
        return v.holds, ({} if v.holds else {"witness": v.render_witness(facts.inst.ring),
                                              "verdict": v})
    return get


def _both(*names):
    def get(facts):
        for n in names:
            ok, why = _fact(n)(facts)
            if not ok:
                return ok, dict(why, failing=n)
        return True, {}
    return get


def _annihilation_powers(facts) -> list:
    """``ab = 0`` implies ``σ^n(a)b = 0`` and ``δ^n(a)b = 0`` for ``1 <= n <= word_depth``."""
    i = facts.inst
    R, s, d = i.ring, i.sigma, i.delta
    out = []
    for a in R.elements:
        for b in R.elements:
            if not R.is_zero(R.mul(a, b)):
                continue
            sa, da = a, a
            for n in range(1, facts.cfg.word_depth + 1):
                sa, da = s(sa), d(da)
                for which, v in (("sigma", sa), ("delta", da)):
                    if not R.is_zero(R.mul(v, b)):
                        out.append({"statement": f"{which}^{n}(a)b = 0",
                                    "witness": {"a": R.format(a), "b": R.format(b), "n": n}})
                        return out
    return out


def _annihilation_words(facts) -> list:
    """``ab = 0`` implies ``a·f_l^n(b) = 0`` for ``l <= n <= word_depth``."""
    i = facts.inst
    R = i.ring
    ext = OreExtension(R, i.sigma, i.delta)
    for a in R.elements:
        for b in R.elements:
            if not R.is_zero(R.mul(a, b)):
                continue
            for n in range(facts.cfg.word_depth + 1):
                for l in range(n + 1):
                    if not R.is_zero(R.mul(a, ext.word_map_apply(n, l, b))):
                        return [{"statement": "a f_l^n(b) = 0",
                                 "witness": {"a": R.format(a), "b": R.format(b), "n": n, "l": l}}]
    return []


SDSKEW = "sigma-delta-skew-armendariz"

THEOREM_CHECKS = [
    TheoremCheck("annihilation-under-sigma-delta-powers",
                 "skew Armendariz with C_sigma: ab=0 gives sigma^n(a)b = delta^n(a)b = 0",
                 (SDSKEW, "c-sigma"), _annihilation_powers),
    TheoremCheck("annihilation-under-word-maps",
                 "adds reversibility: ab=0 gives a f_l^n(b) = 0",
                 (SDSKEW, "c-sigma", "reversible"), _annihilation_words),
    TheoremCheck("coefficient-annihilation",
                 "skew Armendariz with C_sigma: fg=0 gives a_i b_j = 0",
                 (SDSKEW, "c-sigma"), lambda f: _fails(f, "sigma-delta-armendariz")),
    TheoremCheck("coefficient-annihilation-symmetric-extension",
                 "a_0-skew Armendariz with a symmetric extension: fg=0 gives a_i b_j = 0",
                 ("skew-armendariz", "poly-symmetric"), lambda f: _fails(f, "sigma-delta-armendariz")),
    TheoremCheck("triple-coefficient-annihilation",
                 "skew Armendariz with C_sigma: fgh=0 gives a_i b_j c_k = 0",
                 (SDSKEW, "c-sigma"), lambda f: _fails(f, "triple-annihilation")),
    TheoremCheck("reversible-transfer",
                 "skew Armendariz with C_sigma: R reversible iff R[x;sigma,delta] reversible",
                 (SDSKEW, "c-sigma"),
                 _matrix({"reversible": _fact("reversible"), "poly-reversible": _fact("poly-reversible")})),
    TheoremCheck("symmetric-transfer",
                 "skew Armendariz with C_sigma: R symmetric iff R[x;sigma,delta] symmetric",
                 (SDSKEW, "c-sigma"),
                 _matrix({"symmetric": _fact("symmetric"), "poly-symmetric": _fact("poly-symmetric")})),
    TheoremCheck("sigma-armendariz-characterization",
                 "sigma-Armendariz iff sigma-skew Armendariz with C_sigma",
                 (),
                 _matrix({"sigma-armendariz": _fact("sigma-armendariz"),
                          "sigma-skew-armendariz+c-sigma": _both("sigma-skew-armendariz", "c-sigma")})),
    TheoremCheck("reversible-iff-sigma-reversible",
                 "C_sigma: reversible iff sigma-reversible, symmetric iff sigma-symmetric",
                 ("c-sigma",),
                 lambda f: (_matrix({"reversible": _fact("reversible"),
                                     "sigma-reversible": _fact("sigma-reversible")})(f)
                            + _matrix({"symmetric": _fact("symmetric"),
                                       "sigma-symmetric": _fact("sigma-symmetric")})(f))),
    TheoremCheck("reversibility-equivalences",
                 "skew Armendariz with C_sigma: four reversibility statements agree",
                 (SDSKEW, "c-sigma"),
                 _matrix({k: _fact(k) for k in ("reversible", "sigma-reversible",
                                                "right-sigma-reversible", "poly-reversible")})),
    TheoremCheck("symmetry-equivalences",
                 "skew Armendariz with C_sigma: four symmetry statements agree",
                 (SDSKEW, "c-sigma"),
                 _matrix({k: _fact(k) for k in ("symmetric", "sigma-symmetric",
                                                "right-sigma-symmetric", "poly-symmetric")})),
    TheoremCheck("idempotents-fixed",
                 "right sigma-reversible, sigma(1)=1: sigma(e)=e, delta(e)=0, R abelian",
                 ("right-sigma-reversible",), lambda f: _fails(f, "idempotents-fixed"),
                 needs_unital=True),
    TheoremCheck("baer-transfer",
                 "right sigma-reversible, C_sigma, sigma(1)=1, R Baer: R[x;sigma,delta] Baer",
                 ("right-sigma-reversible", "c-sigma", "baer"), lambda f: _fails(f, "baer-transfer"),
                 needs_unital=True),
    TheoremCheck("quasi-baer-transfer",
                 "same with quasi-Baer",
                 ("right-sigma-reversible", "c-sigma", "quasi-baer"),
                 lambda f: _fails(f, "quasi-baer-transfer"), needs_unital=True),
    TheoremCheck("pq-baer-transfer",
                 "same with right p.q.-Baer",
                 ("right-sigma-reversible", "c-sigma", "pq-baer"),
                 lambda f: _fails(f, "pq-baer-transfer"), needs_unital=True),
]

CHECKS_BY_ID = {c.id: c for c in THEOREM_CHECKS}


# -- per-instance evaluation ------------------------------------------------------------

def evaluate_instance(inst: Instance, cfg: HarnessConfig, checks=THEOREM_CHECKS,
                      cache: dict | None = None) -> list[dict]:
    """One outcome record per check: ``qualifying``, ``non-qualifying`` or ``errored``."""
    cache = {} if cache is None else cache
    out = []
    for chk in checks:
        facts = Facts(inst, cfg, cache)
        rec = {"check": chk.id, "instance": inst.index, "label": inst.label}
        try:
            if chk.needs_unital and not inst.sigma.unital:
                rec["outcome"] = "non-qualifying"
            elif not all(facts.holds(h) for h in chk.hypotheses):
                rec["outcome"] = "non-qualifying"
            else:
                violations = chk.conclusion(facts)
                rec["outcome"] = "qualifying"
                rec["violations"] = [_violation_record(inst, v) for v in violations]
            rec["sampled"] = any(v.mode == SAMPLED for v in facts.used)
            rec["bounds"] = sorted({json.dumps(v.bounds, sort_keys=True) for v in facts.used})
        except OrelabError as exc:
            rec["outcome"] = "errored"
            rec["error"] = f"{type(exc).__name__}: {exc}"
        out.append(rec)
    return out


def _violation_record(inst, v) -> dict:
    rec = {k: v[k] for k in ("statement", "witness", "failing") if k in v}
    verdict = v.get("verdict")
    if verdict is not None and verdict.fails:
        rec["replayed"] = replay_witness(verdict, inst.ring, inst.sigma, inst.delta)
    return rec


_WORKER_STATE: dict = {}


def _worker(args):
    stream, cfg, indices, check_ids = args
    key = (stream, cfg)
    if _WORKER_STATE.get("key") != key:
        _WORKER_STATE["key"] = key
        _WORKER_STATE["instances"] = generate_instances(stream)
    instances = _WORKER_STATE["instances"]
    checks = [CHECKS_BY_ID[c] if isinstance(c, str) else c for c in check_ids]
    cache: dict = {}
    out = []
    for k in indices:
        t0 = time.perf_counter()
        recs = evaluate_instance(instances[k], cfg, checks, cache)
        out.append((k, recs, time.perf_counter() - t0))
    return out, replay_cached_failures(cache)


def replay_cached_failures(cache: dict) -> list[dict]:
    """Replay every failing verdict a task computed, hypotheses included."""
    out = []
    for v, inst in cache.values():
        if v.fails:
            out.append({"instance": inst.index, "label": inst.label, "property": v.property,
                        "genuine": replay_witness(v, inst.ring, inst.sigma, inst.delta)})
    return out


# -- reports -----------------------------------------------------------------------------

@dataclass
class CheckSummary:
    id: str
    description: str
    qualifying: int = 0
    non_qualifying: int = 0
    errored: int = 0
    sampled: int = 0
    violations: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.qualifying + self.non_qualifying + self.errored

    @property
    def status(self) -> str:
        if self.violations or self.errored:
            return "fail"
        if self.qualifying == 0:
            return "no-qualifying-instance"
        return "pass"


@dataclass
class RunReport:
    config: HarnessConfig
    instances: int
    checks: list
    fixtures: list = field(default_factory=list)
    replays: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (all(c.status == "pass" for c in self.checks)
                and all(f["match"] for f in self.fixtures)
                and not self.replays.get("spurious"))

    def to_dict(self, timings: bool = True) -> dict:
        doc = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "config": asdict(self.config) | {"workers": None},
            "ok": self.ok,
            "instances": self.instances,
            "fixtures": self.fixtures,
            "witness_replay": self.replays,
            "checks": [
                {"id": c.id, "description": c.description, "status": c.status,
                 "qualifying": c.qualifying, "non_qualifying": c.non_qualifying,
                 "errored": c.errored, "total": c.total, "sampled_instances": c.sampled,
                 "violations": c.violations, "errors": c.errors}
                for c in self.checks
            ],
        }
        if timings:
            doc["timings"] = self.timings
        return doc

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = []
        if self.fixtures:
            lines.append("fixtures:")
            for f in self.fixtures:
                mark = "ok  " if f["match"] else "FAIL"
                lines.append(f"  {mark} {f['fixture']}: {f['property']} -> {f['status']} "
                             f"[{f['mode']}]" + (f"  witness: {f['witness']}" if f["witness"] else ""))
                if f.get("diff"):
                    lines.extend("       " + d for d in f["diff"].splitlines())
        lines.append(f"theorem checks over {self.instances} instances "
                     f"(dmax={self.config.dmax}, seed={self.config.seed}):")
        for c in self.checks:
            lines.append(f"  {c.status:>22}  {c.id}: qualifying={c.qualifying} "
                         f"non-qualifying={c.non_qualifying} errored={c.errored}"
                         + (f" sampled={c.sampled}" if c.sampled else ""))
            for v in c.violations[:5]:
                lines.append(f"      violation on {v['label']}: {v['statement']} {v.get('witness')}")
            for e in c.errors[:5]:
                lines.append(f"      error on {e['label']}: {e['error']}")
        if self.replays:
            lines.append(f"witness replay: {self.replays['genuine']}/{self.replays['checked']} "
                         "failing verdicts re-evaluate to genuine violations")
            for r in self.replays["spurious"][:5]:
                lines.append(f"      spurious: {r['label']} {r['property']}")
        lines.append("PASS" if self.ok else "FAIL")
        elapsed = self.timings.get("total", self.timings.get("theorems"))
        if elapsed is not None:
            lines.append(f"elapsed {elapsed:.1f}s")
        return "\n".join(lines)


def run_theorem_suite(cfg: HarnessConfig = HarnessConfig(), stream: InstanceStream | None = None,
                      checks=THEOREM_CHECKS) -> RunReport:
    t0 = time.perf_counter()
    stream = stream or InstanceStream(seed=cfg.seed)
    instances = generate_instances(stream)
    # group by (ring, sigma) so each task reuses the cached ring/sigma facts
    groups: dict = {}
    for inst in instances:
        groups.setdefault((inst.ring_name, inst.sigma.name), []).append(inst.index)
    ids = [c.id for c in checks]
    # registered checks travel by id so they pickle; ad-hoc ones run in-process
    registered = all(CHECKS_BY_ID.get(c.id) is c for c in checks)
    payload = ids if registered else list(checks)
    tasks = [(stream, cfg, idx, payload) for idx in groups.values()]
    if cfg.workers > 1 and registered:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_worker, tasks))
    else:
        chunks = [_worker(t) for t in tasks]
    results = sorted((r for chunk, _ in chunks for r in chunk), key=lambda r: r[0])
    replays = sorted((r for _, reps in chunks for r in reps),
                     key=lambda r: (r["instance"], r["property"]))

    summaries = {c.id: CheckSummary(c.id, c.description) for c in checks}
    per_instance = {}
    for k, recs, dt in results:
        per_instance[instances[k].label] = round(dt, 4)
        for rec in recs:
            s = summaries[rec["check"]]
            if rec["outcome"] == "qualifying":
                s.qualifying += 1
                s.sampled += bool(rec.get("sampled"))
                for v in rec["violations"]:
                    s.violations.append({"instance": k, "label": rec["label"], **v})
            elif rec["outcome"] == "non-qualifying":
                s.non_qualifying += 1
            else:
                s.errored += 1
                s.errors.append({"instance": k, "label": rec["label"], "error": rec["error"]})
    report = RunReport(cfg, len(instances), [summaries[i] for i in ids])
    report.replays = {"checked": len(replays), "genuine": sum(r["genuine"] for r in replays),
                      "spurious": [r for r in replays if not r["genuine"]]}
    report.timings = {"theorems": round(time.perf_counter() - t0, 3), "per_instance": per_instance}
    return report


def fixture_records(fixtures: list[Fixture] | None = None, seed: int = 0,
                    work_cap: int = WORK_CAP) -> tuple[list, dict]:
    fixtures = all_fixtures() if fixtures is None else fixtures
    records, timings = [], {}
    for fx in fixtures:
        t0 = time.perf_counter()
        for res in run_fixture(fx, seed, work_cap):
            v = res.verdict
            records.append({
                "fixture": fx.name,
                "property": res.expectation.property,
                "expected": res.expectation.status.value,
                "status": v.status.value if v else "error",
                "mode": v.mode if v else None,
                "bounds": v.bounds if v else None,
                "witness": res.rendered,
                "replayed": res.replayed,
                "note": res.expectation.note,
                "match": res.matches,
                "diff": res.diff(),
            })
        timings[fx.name] = round(time.perf_counter() - t0, 4)
    return records, timings


def verify_paper(cfg: HarnessConfig = HarnessConfig(), fixtures: list[Fixture] | None = None,
                 run_theorems: bool = True) -> RunReport:
    """Every fixture expectation plus every theorem check; ``report.ok`` is the verdict."""
    t0 = time.perf_counter()
    records, ftimes = fixture_records(fixtures, cfg.seed, cfg.work_cap)
    if run_theorems:
        report = run_theorem_suite(cfg)
    else:
        report = RunReport(cfg, 0, [])
    report.fixtures = records
    report.timings["fixtures"] = ftimes
    report.timings["total"] = round(time.perf_counter() - t0, 3)
    return report


def default_workers() -> int:
    return max(1, min(4, os.cpu_count() or 1))


__all__ = [
    "HarnessConfig", "TheoremCheck", "THEOREM_CHECKS", "RunReport", "CheckSummary",
    "evaluate_instance", "run_theorem_suite", "verify_paper", "fixture_records",
    "default_workers", "Status", "render_value",
]
