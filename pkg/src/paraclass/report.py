"""Scan reports, named verification scenarios and the JSON-lines result cache."""
from __future__ import annotations

import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .class_group import compute_class_group
from .cyclotomic import cyclo23_witness
from .ideals import ideal_from_generators, ideal_pow, is_principal
from .intmat import lattice_quotient
from .laurent import LaurentPoly, finite_quotient
from .metabelian.embedding import embedding_demo
from .metabelian.groups import OutOfScope
from .metabelian.laurent_ideals import laurent_ideal_principal
from .metabelian.lcs import Verdict, is_finitely_presentable, is_residually_nilpotent
from .metabelian.para import para_inclusion_check, para_witness
from .metabelian.telescope import telescope_chain
from .para_class import Z_C2, classify_para, is_s_fractional, realize_para_group, z_c2_family
from .published import LAURENT_D, PID_D, SCAN_BOUND, published_class_order
from .quad_order import RingElement, brute_force_fundamental_unit, is_laurent_domain, is_squarefree, maximal_order

SCHEMA_VERSION = 1
EXAMPLES = ("d10", "wreath_ideal", "zc2", "cyclo23", "telescope", "embedding")


def dumps(obj) -> str:
    """The one serialization: sorted keys, no timestamps."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


# -- cache ------------------------------------------------------------------------------------

def cache_path() -> Path:
    env = os.environ.get("PARACLASS_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "paraclass" / "results.jsonl"


class ResultCache:
    """Append-only JSON lines keyed by (kind, param); each write rewrites via temp file + rename.

    Only the process that owns the instance writes; scan workers return rows to it.
    """

    def __init__(self, path: Path | None = None):
        self.path = Path(path) if path else cache_path()
        self._entries: dict[tuple[str, str], dict] = {}
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    continue  # a torn line cannot occur with rename, but never trust the disk
                if rec.get("schema") == SCHEMA_VERSION:
                    self._entries[(rec["kind"], rec["param"])] = rec["value"]

    def get(self, kind: str, param) -> dict | None:
        return self._entries.get((kind, str(param)))

    def put_many(self, items) -> None:
        new = [(k, str(p), v) for k, p, v in items if (k, str(p)) not in self._entries]
        if not new:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        old = self.path.read_text() if self.path.exists() else ""
        if old and not old.endswith("\n"):
            old += "\n"
        lines = [json.dumps({"schema": SCHEMA_VERSION, "kind": k, "param": p, "value": v}, sort_keys=True) for k, p, v in new]
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".results.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(old + "\n".join(lines) + "\n")
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        for k, p, v in new:
            self._entries[(k, p)] = v

    def put(self, kind: str, param, value: dict) -> None:
        self.put_many([(kind, param, value)])


# -- scan -----------------------------------------------------------------------------------------

def _unit_dict(u: RingElement) -> list[int]:
    return [u.x, u.y]


def scan_row(d: int) -> dict:
    """Everything the scan records for one squarefree d."""
    cert = is_laurent_domain(d)
    row = {
        "d": d,
        "fundamental_unit": _unit_dict(cert.unit),
        "laurent": cert.laurent,
        "laurent_certificate": cert.to_dict(),
    }
    G = f"quad:{d}"
    row["residually_nilpotent"] = is_residually_nilpotent(G).to_dict()
    if cert.laurent:
        rep = classify_para(G).to_dict()
        row["class_group"] = rep["class_group"]
        row["s_class_group"] = rep["s_class_group"]
        row["para_class_count"] = rep["para_class_count"]
        row["representatives"] = rep["representatives"]
        row["classification_path"] = rep["path"]
        row["error"] = None
        return row
    row["s_class_group"] = None
    row["para_class_count"] = None
    row["representatives"] = []
    row["classification_path"] = "out_of_scope"
    try:
        cl = compute_class_group(maximal_order(d))
        row["class_group"] = cl.structure.to_dict()
        row["error"] = None
    except RuntimeError as e:  # exponent bound exceeded; isolated per row
        row["class_group"] = None
        row["error"] = str(e)
    row["note"] = "Z[eps, 1/eps] is a proper suborder of the maximal order; class group is that of the maximal order"
    return row


def _safe_row(d: int) -> dict:
    try:
        return scan_row(d)
    except Exception as e:  # per-d failures never abort the scan
        return {"d": d, "error": f"{type(e).__name__}: {e}"}


def _certificate(d: int) -> dict:
    cert = is_laurent_domain(d)
    brute = brute_force_fundamental_unit(d)
    return {
        "fundamental_unit": _unit_dict(cert.unit),
        "unit_norm": cert.norm,
        "index": cert.index,
        "brute_force_unit": _unit_dict(brute) if brute else None,
        "checked": brute == cert.unit,
    }


def scan_diff(rows: list[dict], max_d: int) -> dict:
    """Computed lists against the published ones; published values are only read, never replaced."""
    by_d = {r["d"]: r for r in rows}
    laurent = sorted(d for d, r in by_d.items() if r.get("laurent"))
    published = [d for d in LAURENT_D if d <= max_d]
    entries = []
    for d in sorted(set(laurent) ^ set(published)):
        entries.append({"d": d, "published": d in published, "computed": d in laurent, "certificate": _certificate(d)})
    pid = sorted(d for d in laurent if (by_d[d].get("class_group") or {}).get("order") == 1)
    pub_pid = [d for d in PID_D if d <= max_d]
    pid_entries = []
    for d in sorted(set(pid) ^ set(pub_pid)):
        e = {"d": d, "published": d in pub_pid, "computed": d in pid}
        cg = by_d.get(d, {}).get("class_group")
        e["computed_class_group"] = cg
        e["laurent_certificate"] = _certificate(d)
        pid_entries.append(e)
    orders = []
    for d in published:
        want = published_class_order(d)
        got = (by_d.get(d, {}).get("class_group") or {}).get("order")
        if want is not None and want != got:
            orders.append({"d": d, "published": want, "computed": got, "laurent": d in laurent})
    return {
        "laurent": {
            "published": published,
            "computed": laurent,
            "agreeing_published_entries": sum(1 for d in published if d in laurent),
            "published_count": len(published),
            "disagreements": entries,
        },
        "pid": {"published": pub_pid, "computed": pid, "disagreements": pid_entries},
        "class_orders": {"disagreements": orders},
    }


def run_scan(max_d: int, jobs: int = 1, cache: ResultCache | None = None) -> dict:
    if max_d < 2:
        raise ValueError("max_d must be >= 2")
    ds = [d for d in range(2, max_d + 1) if is_squarefree(d)]
    rows, todo = {}, []
    for d in ds:
        hit = cache.get("scan_row", d) if cache else None
        if hit is not None:
            rows[d] = hit
        else:
            todo.append(d)
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            fresh = list(ex.map(_safe_row, todo))
    else:
        fresh = [_safe_row(d) for d in todo]
    for r in fresh:
        rows[r["d"]] = r
    if cache:
        cache.put_many(("scan_row", r["d"], r) for r in fresh if not r.get("error"))
    ordered = [rows[d] for d in ds]
    return {
        "kind": "scan",
        "max_d": max_d,
        "rows": ordered,
        "diff": scan_diff(ordered, max_d),
        "failures": [r["d"] for r in ordered if r.get("error")],
        "published_bound": SCAN_BOUND,
    }


# -- quadratic report ---------------------------------------------------------------------------

def quad_report(d: int) -> dict:
    if not is_squarefree(d) or d < 2:
        raise ValueError("d must be a squarefree integer >= 2")
    row = scan_row(d)
    row["kind"] = "quad"
    row["published"] = {"laurent": d in LAURENT_D, "class_order": published_class_order(d)}
    return row


# -- verification scenarios ----------------------------------------------------------------------

@dataclass
class VerifyResult:
    name: str
    passed: bool
    transcript: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "transcript": self.transcript, "data": self.data}


class _Log:
    def __init__(self):
        self.lines: list[str] = []
        self.ok = True

    def check(self, label: str, cond: bool, detail: str = "") -> bool:
        self.ok = self.ok and bool(cond)
        self.lines.append(f"[{'ok' if cond else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))
        return bool(cond)

    def note(self, text: str):
        self.lines.append(f"      {text}")


def submodule_presentability(G, index_structure) -> Verdict:
    """T ⋉ J against T ⋉ A for J of finite index in A.

    Z[t] and Z[1/t] are noetherian, so J is finitely generated over either one
    exactly when A is; tameness, and with it finite presentability, transfers.
    """
    if not index_structure.is_finite:
        raise OutOfScope("J has infinite index in A")
    v = is_finitely_presentable(G)
    return Verdict(v.value, f"[A : J] = {index_structure.order}; {v.reason}", {"index": index_structure.order, **v.certificate})


D10_MATRICES = {
    "action_on_J": [[2, 3], [3, 4]],
    "action_on_A": [[0, 1], [1, 6]],
    "inclusion": [[3, -2], [0, 1]],
}


def _verify_d10(log: _Log) -> dict:
    cert = is_laurent_domain(10)
    R = cert.ring
    log.check("Z[sqrt 10] is a Laurent ring", cert.laurent, f"eps = {cert.unit.x} + {cert.unit.y} sqrt 10, ring {R.describe()}")
    J = ideal_from_generators(R, [RingElement(3, 0), RingElement(-2, 1)])
    res = is_principal(J)
    log.check("J = (3, t - 2) is not principal", not res.principal, f"HNF {list(J.hnf_tuple())}")
    res2 = is_principal(ideal_pow(J, 2))
    g = res2.generator
    log.check("J^2 is principal", res2.principal, f"generator {g.x} {'-' if g.y < 0 else '+'} {abs(g.y)} t" if g else "")
    real = realize_para_group(J, basis=[RingElement(3, 0), RingElement(-2, 1)])
    got = {"action_on_J": real.action_on_J, "action_on_A": real.action_on_A, "inclusion": real.inclusion}
    for key, want in D10_MATRICES.items():
        log.check(f"{key} = {want}", got[key] == want, f"computed {got[key]}")
    log.check("inclusion intertwines the actions", real.commutes)
    inc = para_inclusion_check(J, "quad:10", depth=10)
    log.check("T ⋉ J -> T ⋉ A bijective on levels 1..10", inc.passed,
              f"first failure {inc.first_failure}" if not inc.passed else f"level 10: {inc.levels[-1].target}")
    idx = lattice_quotient([[1, 0], [0, 1]], [[3, 0], [-2, 1]], 2)
    vJ = is_finitely_presentable({"module": {"kind": "lattice", "action": real.action_on_J}})
    vA = is_finitely_presentable("quad:10")
    log.check("finite presentability agrees on the pair", vJ.value == vA.value, f"T ⋉ J: {vJ.value}, T ⋉ A: {vA.value}, [A : J] = {idx.order}")
    return {"matrices": got, "j_squared_generator": [g.x, g.y] if g else None, "inclusion": inc.to_dict()}


def _verify_wreath(log: _Log) -> dict:
    gens = [LaurentPoly([-1, 2]), LaurentPoly([2, -1])]
    res = laurent_ideal_principal(gens)
    log.check("J = (2t - 1, 2 - t) is not principal in Z[t, 1/t]", not res.principal, res.obstruction or "")
    if res.normal_form:
        m, a = res.normal_form
        log.note(f"J = ({m}, t - {a})")
    q = finite_quotient(*gens)
    log.check("A / J is finite", q.is_finite, f"A / J = {q}")
    inc = para_inclusion_check(gens, "wreath_zz", depth=6)
    log.check("J -> A bijective on levels 1..6", inc.passed)
    wit = para_witness(gens, "wreath_zz", depth=6)
    log.check("s A -> J bijective on levels 1..6", wit.backward.passed, f"s = {wit.s}")
    vA = is_finitely_presentable("wreath_zz")
    vJ = submodule_presentability("wreath_zz", q)
    log.check("finite presentability agrees on the pair", vA.value == vJ.value, f"both {vA.value}")
    return {"principality": res.to_dict(), "inclusion": inc.to_dict(), "witness": wit.to_dict()}


def _element_search(J, limit: int):
    """An element x + y t of J with x + y = 1, by bounded search over basis coefficients."""
    basis = J.basis()
    rng = range(-limit, limit + 1)
    if len(basis) == 1:
        b = basis[0]
        return next((k for k in rng if k * (b.x + b.y) == 1), None) is not None
    b0, b1 = basis
    for i in rng:
        for j in rng:
            if i * (b0.x + b0.y) + j * (b1.x + b1.y) == 1:
                return True
    return False


def _verify_zc2(log: _Log) -> dict:
    fam = list(z_c2_family())
    s_frac = [J for J in fam if is_s_fractional(J)]
    bound = 2 * max(max(J.hnf_tuple()) for J in fam)
    agree = all(is_s_fractional(J) == _element_search(J, bound) for J in fam)
    log.check("S-fractional iff J meets 1 + (t - 1), on every ideal of the family", agree, f"{len(fam)} ideals, search bound {bound}")
    bad = ideal_from_generators(Z_C2, [RingElement(2, 0), RingElement(1, 1)])
    log.check("(2, 1 + t) is not S-fractional", not is_s_fractional(bad))
    principal = [is_principal(J).principal for J in s_frac]
    log.check("every S-fractional ideal of the family is principal", all(principal), f"{sum(principal)} / {len(s_frac)}")
    rep = classify_para("zc2")
    log.check("classification gives one class", rep.para_class_count == 1, rep.reason)
    return {"family_size": len(fam), "s_fractional": [list(J.hnf_tuple()) for J in s_frac], "classification": rep.to_dict()}


def _verify_cyclo23(log: _Log) -> dict:
    w = cyclo23_witness()
    log.check("class number of Q(sqrt -23) is 3", w.class_number == 3)
    log.check("(2, (1 + sqrt -23)/2) is not principal", not w.principal, f"HNF {list(w.ideal_hnf)}")
    log.check("no element of norm ±2", not w.norm_two_solutions)
    log.check("the ideal meets 1 + aug", w.s_fractional, f"s = {w.s_element.x} + {w.s_element.y} w" if w.s_element else "")
    log.note(w.note)
    return w.to_dict()


def _verify_telescope(log: _Log) -> dict:
    out = {}
    rep = telescope_chain("quad:10", [LaurentPoly([5, 2])], 3)
    log.check("quad:10 with s = 2t + 5 is strictly ascending", rep.passed and rep.strictly_ascending,
              f"indices {[l.index for l in rep.links]}")
    out["proper"] = rep.to_dict()
    rep = telescope_chain("quad:10", [LaurentPoly.const(1)], 3)
    log.check("unit denominator gives a constant chain", rep.passed and rep.constant)
    out["constant"] = rep.to_dict()
    rep = telescope_chain("wreath_zz", [LaurentPoly([2, -1])], 3)
    log.check("wreath_zz with s = 2 - t is strictly ascending", rep.passed and rep.strictly_ascending)
    out["free"] = rep.to_dict()
    return out


def _verify_embedding(log: _Log) -> dict:
    rep = embedding_demo()
    for k, v in sorted(rep.checks.items()):
        log.check(k, v)
    for step in rep.derivation:
        log.check(f"{step.rule}: {step.detail}", step.ok, str(step.expr))
    for n in rep.notes:
        log.note(n)
    return rep.to_dict()


_SCENARIOS = {
    "d10": _verify_d10,
    "wreath_ideal": _verify_wreath,
    "zc2": _verify_zc2,
    "cyclo23": _verify_cyclo23,
    "telescope": _verify_telescope,
    "embedding": _verify_embedding,
}


def verify_example(name: str) -> VerifyResult:
    if name not in _SCENARIOS:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    log = _Log()
    try:
        data = _SCENARIOS[name](log)
    except Exception as e:
        log.check("scenario ran to completion", False, f"{type(e).__name__}: {e}")
        data = {}
    return VerifyResult(name, log.ok, log.lines, data)


def render_text(obj, indent: int = 0) -> str:
    """Plain-text view derived from the JSON form."""
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj) or all(
            isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x) for x in obj
        ):
            return f"{pad}{json.dumps(obj, ensure_ascii=False)}"
        return "\n".join(render_text(x, indent) if isinstance(x, dict) else f"{pad}- {json.dumps(x, ensure_ascii=False)}" for x in obj)
    return f"{pad}{json.dumps(obj, ensure_ascii=False)}"
