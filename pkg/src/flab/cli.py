"""Command-line front end.

Query commands print one JSON object (or aligned text); check commands
stream VerificationReport records, newline-delimited in json format.
Exit codes: 0 all pass, 1 any violation, 2 input or capacity trouble.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

from . import combinatorics as comb
from . import free_lie as fl
from . import graded_lie as gl
from . import group_engine as ge
from .errors import CapacityError, InputError
from .reports import (
    CAPACITY_ERROR,
    INPUT_ERROR,
    PASS,
    VIOLATION,
    VerificationReport,
    report_check,
)
from .rings import multiplicative_order, ring_from_json

# --- argument parsing helpers ---


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}")


def _int_pair(text: str) -> tuple[int, int]:
    vals = _int_list(text)
    if len(vals) != 2:
        raise InputError(f"expected two comma-separated integers, got {text!r}")
    return vals[0], vals[1]


def _params(n: int, q: int, r: int) -> comb.FrobeniusParams:
    return comb.FrobeniusParams(n, q, r)


def _parse_generators(text: str) -> list[fl.IndexedGenerator]:
    """name or name@index entries, comma separated."""
    gens = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "@" in part:
            name, _, idx = part.partition("@")
            try:
                gens.append(fl.IndexedGenerator(name, int(idx)))
            except ValueError:
                raise InputError(f"bad generator {part!r}")
        else:
            gens.append(fl.IndexedGenerator(part))
    if not gens:
        raise InputError("no generators given")
    return gens


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")


def _load_group(args) -> ge.FiniteGroup:
    if getattr(args, "name", None):
        return ge.named_group(args.name)
    if getattr(args, "file", None):
        return ge.build_group(_load_json(args.file))
    raise InputError("provide --name or --file")


def _infer_prime(G, p: int | None) -> int:
    if p is not None:
        return p
    if G.order == 1:
        raise InputError("--p is required for the trivial group")
    fac = ge.factorize(G.order)
    if len(fac) == 1:
        return next(iter(fac))
    raise InputError("--p is required when the order has several prime factors")


# --- output ---


def _emit_data(obj: dict, fmt: str, out) -> None:
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True), file=out)
        return
    width = max((len(k) for k in obj), default=0)
    for key in sorted(obj):
        val = obj[key]
        if not isinstance(val, str):
            val = json.dumps(val, sort_keys=True)
        print(f"{key:<{width}}  {val}", file=out)


def _emit_reports(reports, fmt: str, out) -> None:
    if fmt == "json":
        for rep in reports:
            print(rep.json_line(), file=out)
        return
    nw = max((len(r.name) for r in reports), default=0)
    sw = max((len(r.status) for r in reports), default=0)
    for rep in reports:
        extra = rep.reason or ""
        if not extra and rep.witness is not None:
            extra = json.dumps(rep.witness, sort_keys=True)
        line = f"{rep.name:<{nw}}  {rep.status:<{sw}}  {extra}"
        print(line.rstrip(), file=out)


def _exit_code(reports) -> int:
    statuses = {rep.status for rep in reports}
    if INPUT_ERROR in statuses or CAPACITY_ERROR in statuses:
        return 2
    if VIOLATION in statuses:
        return 1
    return 0


def _rename(rep: VerificationReport, name: str) -> VerificationReport:
    return VerificationReport(name, rep.status, rep.witness, rep.reason, rep.seconds)


# --- report adapters, shared by subcommands and the fixture suite ---


def report_prim(name: str, n: int, q: int, r: int) -> VerificationReport:
    def body():
        params = _params(n, q, r)
        if params.passes_prim():
            return PASS, {"n": n, "q": q, "r": r}, None
        witness = {"n": n, "q": q, "r": r}
        for d in range(2, n + 1):
            if n % d:
                continue
            order = (
                multiplicative_order(r % d, d) if math.gcd(r, d) == 1 else None
            )
            if order != q:
                witness["divisor"] = d
                witness["order"] = order
                break
        return VIOLATION, witness, "r lacks multiplicative order q modulo a divisor of n"

    return report_check(name, body)


def report_dset(name, seq, n, q, r, expected) -> VerificationReport:
    def body():
        found = sorted(comb.d_set(seq, _params(n, q, r)))
        if found == sorted(expected):
            return PASS, {"d_set": found}, None
        return VIOLATION, {"d_set": found, "expected": sorted(expected)}, \
            "computed D-set differs from the expected one"

    return report_check(name, body)


def report_charp(name: str, g1, g2, limit: int) -> VerificationReport:
    def body():
        bound = comb.charp_bound(g1, g2)
        moduli = sorted(comb.common_root_moduli(g1, g2, limit))
        exceeding = [m for m in moduli if m > bound]
        witness = {"bound": bound, "moduli": moduli}
        if exceeding:
            witness["exceeding"] = exceeding
            return VIOLATION, witness, (
                "a common-root modulus exceeds the bound; "
                "the polynomials likely share a complex root"
            )
        return PASS, witness, None

    return report_check(name, body)


def _rewrite_report(name, kind, u_indices, tail_indices, c, n, q, r, w=None):
    def body():
        params = _params(n, q, r)
        head = fl.UAtom(tuple(u_indices))
        tail = tuple(
            fl.IndexedGenerator(f"x{t}", idx) for t, idx in enumerate(tail_indices)
        )
        if kind == "odin":
            result = fl.odin_rewrite(head, tail, c, params)
        else:
            result = fl.dva_rewrite(head, tail, c, params, w)
        identity = result.verify()
        dset = comb.d_set(tuple(u_indices), params)
        in_dset = all(
            fl.tree_index_sum(elem) % n in dset
            for term in result.kept_terms
            for elem in term.elems
        )
        witness = {
            "kept_terms": len(result.kept_terms),
            "dropped_terms": len(result.dropped_terms),
            "drop_reasons": sorted(
                {t.reason for t in result.dropped_terms if t.reason}
            ),
            "identity": identity,
            "kept_indices_in_dset": in_dset,
        }
        if identity and in_dset:
            return PASS, witness, None
        return VIOLATION, witness, "rewrite guarantees fail"

    return report_check(name, body)


def report_odin(name, u_indices, tail_indices, c, n, q, r):
    return _rewrite_report(name, "odin", u_indices, tail_indices, c, n, q, r)


def report_dva(name, u_indices, tail_indices, c, n, q, r, w):
    return _rewrite_report(name, "dva", u_indices, tail_indices, c, n, q, r, w)


def report_razresh(name, c, q, n, r, indices, expect_member) -> VerificationReport:
    def body():
        rez = fl.razresh_membership(c, q, _params(n, q, r), indices)
        witness = {
            "member": rez.member,
            "qualifying_count": rez.qualifying_count,
            "certificate_size": len(rez.certificate) if rez.certificate else 0,
        }
        if rez.member == expect_member:
            return PASS, witness, None
        return VIOLATION, witness, "membership answer differs from the expected one"

    return report_check(name, body)


def report_lie_validate(name: str, data) -> VerificationReport:
    def body():
        L = gl.GradedLieRing.from_json(data)
        rep = gl.validate(L)
        if rep.valid:
            return PASS, {"rank": L.rank}, None
        issues = [[iss.kind, list(iss.indices)] for iss in rep.issues]
        return VIOLATION, {"issues": issues}, "bracket laws fail"

    return report_check(name, body)


def report_selective(name, data, c, n, q, r) -> VerificationReport:
    def body():
        L = gl.GradedLieRing.from_json(data)
        holds, witness = gl.check_selective_nilpotency(L, c, _params(n, q, r))
        if holds:
            return PASS, {"c": c}, None
        return VIOLATION, {
            "grades": list(witness.grades),
            "basis_chain": list(witness.basis_chain),
        }, "an r-independent bracket survives"

    return report_check(name, body)


def report_simple3(name: str, ring_json) -> VerificationReport:
    def body():
        ex = gl.example_simple3(ring_from_json(ring_json))
        L = ex.lie
        fixed_f = gl.fixed_subring(L, ex.f)
        fixed_h = gl.fixed_subring(L, (ex.h,))
        full = L.span([L.basis_vector(i) for i in range(L.rank)])
        gamma2 = gl.lower_central_series(L).member(2)
        witness = {
            "fixed_f_dim": fixed_f.rank(),
            "fixed_h_dim": fixed_h.rank(),
            "gamma2_full": gamma2 == full,
        }
        ok = fixed_f.is_zero() and fixed_h.rank() == 1 and gamma2 == full
        if ok:
            return PASS, witness, None
        return VIOLATION, witness, "example invariants fail"

    return report_check(name, body)


def report_pm(name: str, p: int, m: int) -> VerificationReport:
    def body():
        ex = gl.example_pm(p, m)
        L = ex.lie
        R = L.ring
        fixed_f = gl.fixed_subring(L, ex.f)
        fixed_h = gl.fixed_subring(L, (ex.h,))
        diagonal = L.span([[R.one(), R.one(), R.one()]])
        cls = gl.lower_central_series(L).nilpotency_class()
        witness = {
            "fixed_f_dim": fixed_f.rank(),
            "fixed_h_is_diagonal": fixed_h == diagonal,
            "class": cls,
        }
        ok = fixed_f.is_zero() and fixed_h == diagonal and cls == m
        if ok:
            return PASS, witness, None
        return VIOLATION, witness, "example invariants fail"

    return report_check(name, body)


_FIELD_CHECKS = {
    "order-formula": ge.verify_order_formula,
    "coverage": ge.verify_coverage,
    "generation": ge.verify_generation,
    "invariant-sylow": ge.verify_invariant_sylow,
    "nilpotency-transfer": ge.verify_nilpotency_transfer,
    "exponent-relation": ge.exponent_relation_report,
}


def report_field_verify(name: str, p: int, k: int, check: str) -> VerificationReport:
    def body():
        if check not in _FIELD_CHECKS:
            raise InputError(f"unknown check {check!r}")
        res = ge.build_field_action(p, k)
        rep = _FIELD_CHECKS[check](res.group, res.action)
        return rep.status, rep.witness, rep.reason

    return report_check(name, body)


def report_free_module_field(name: str, p: int, k: int) -> VerificationReport:
    res = ge.build_field_action(p, k)
    return _rename(ge.free_module_check(res.group, res.action.h, k), name)


def report_free_module_trivial(name: str, p: int, dim: int, q: int) -> VerificationReport:
    group = ge.elementary_abelian_group(p, dim)
    return _rename(
        ge.free_module_check(group, ge.perm_identity(group.order), q), name
    )


def report_jz_dims(name: str, group_name: str, p: int, expected) -> VerificationReport:
    def body():
        G = ge.named_group(group_name)
        dims = list(ge.jz_filtration(G, p).dims())
        if dims == list(expected):
            return PASS, {"dims": dims}, None
        return VIOLATION, {"dims": dims, "expected": list(expected)}, \
            "filtration dimensions differ"

    return report_check(name, body)


def report_lazard_lemma(name: str, group_name: str, p: int) -> VerificationReport:
    return _rename(ge.lazard_lemma_check(ge.named_group(group_name), p), name)


def report_powerful(name: str, group_name: str, p: int, expected: bool) -> VerificationReport:
    def body():
        answer = ge.is_powerful(ge.named_group(group_name), p)
        if answer == bool(expected):
            return PASS, {"powerful": answer}, None
        return VIOLATION, {"powerful": answer, "expected": bool(expected)}, \
            "powerfulness answer differs from the expected one"

    return report_check(name, body)


def _bch_data(p: int, m: int, sweep: bool) -> dict:
    ex = gl.example_pm(p, m)
    lz = ge.lazard_group_from_lie(ex.lie, automorphisms=ex.f + (ex.h,))
    P = lz.group
    out = {
        "order": P.order,
        "modulus": P.modulus,
        "rank": P.rank,
        "lie_class": lz.lie_class,
        "group_class": ge.bch_nilpotency_class(P),
    }
    if sweep:
        f_perms = lz.transported[:3]
        h_perm = lz.transported[3]
        fixed_f = [
            x for x in range(P.order) if all(t[x] == x for t in f_perms)
        ]
        fixed_h = [x for x in range(P.order) if h_perm[x] == x]
        out["fixed_f"] = len(fixed_f)
        out["fixed_h"] = len(fixed_h)
        out["fixed_h_cyclic"] = any(
            P.element_order(x) == len(fixed_h) for x in fixed_h
        )
    return out


def report_bch_pm(name: str, p: int, m: int, sweep: bool = True) -> VerificationReport:
    def body():
        data = _bch_data(p, m, sweep)
        ok = data["group_class"] == data["lie_class"]
        if sweep:
            ok = ok and data["fixed_f"] == 1 and data["fixed_h_cyclic"]
        if ok:
            return PASS, data, None
        return VIOLATION, data, "transported group invariants fail"

    return report_check(name, body)


# --- query command handlers: return ("data", dict) ---


def cmd_rdep(args):
    params = _params(args.n, args.q, args.r)
    dependent, witness = comb.is_r_dependent(_int_list(args.seq), params)
    return "data", {
        "dependent": dependent,
        "exponents": list(witness.exponents) if witness else None,
    }


def cmd_dset(args):
    params = _params(args.n, args.q, args.r)
    found = comb.d_set(_int_list(args.seq), params, method=args.method)
    return "data", {"d_set": sorted(found)}


def cmd_nbound(args):
    return "data", {
        "capacity": comb.capacity_n(args.c, args.q),
        "engel_width": comb.engel_width(args.c, args.q),
    }


def cmd_lie_series(args):
    L = gl.GradedLieRing.from_json(_load_json(args.file))
    if args.kind == "lower":
        chain = gl.lower_central_series(L)
        depth = {"class": chain.nilpotency_class()}
    else:
        chain = gl.derived_series(L)
        depth = {"derived_length": chain.derived_length()}
    out = {"kind": args.kind, "dims": [m.rank() for m in chain.members]}
    out.update(depth)
    return "data", out


def cmd_lie_eigen(args):
    data = _load_json(args.file)
    L = gl.GradedLieRing.from_json(data["lie"])
    if "phi" not in data or "n" not in data:
        raise InputError("eigen input needs 'lie', 'phi', and 'n'")
    phi = [[L.ring.from_json(c) for c in row] for row in data["phi"]]
    omega = L.ring.from_json(data["omega"]) if "omega" in data else None
    components, defect = gl.eigenspace_decomposition(L, phi, int(data["n"]), omega)
    return "data", {
        "dims": [comp.rank() for comp in components],
        "spans": defect.spans,
        "direct": defect.direct,
        "scaled_contained": defect.scaled_contained,
        "dependencies_annihilated": defect.dependencies_annihilated,
    }


def cmd_free_basis(args):
    words = fl.hall_basis(_parse_generators(args.gens), args.max_weight)
    return "data", {
        "count": len(words),
        "words": [fl.format_tree(_word_tree(w)) for w in words],
    }


def _word_tree(word: fl.HallWord):
    if word.gen is not None:
        return word.gen
    return (_word_tree(word.left), _word_tree(word.right))


def cmd_free_normalize(args):
    elem = fl.normalize(fl.parse_expression(args.expression))
    return "data", {"normalized": fl.format_element(elem)}


def cmd_free_delta(args):
    gens = _parse_generators(args.args)
    elem = fl.delta(args.k, gens)
    return "data", {"element": fl.format_element(elem)}


def cmd_free_razresh(args):
    params = _params(args.n, args.q, args.r)
    rez = fl.razresh_membership(
        args.c, args.q, params, _int_list(args.indices), args.weight_cap
    )
    return "data", {
        "member": rez.member,
        "qualifying_count": rez.qualifying_count,
        "certificate_size": len(rez.certificate) if rez.certificate else 0,
    }


def cmd_group_build(args):
    G = _load_group(args)
    return "data", {
        "order": G.order,
        "identity": G.identity,
        "abelian": G.is_abelian(),
        "exponent": G.exponent(),
        "nilpotency_class": ge.nilpotency_class(G),
        "center_order": len(ge.center(G)),
    }


def cmd_group_jz(args):
    G = _load_group(args)
    p = _infer_prime(G, args.p)
    filt = ge.jz_filtration(G, p)
    return "data", {
        "prime": p,
        "dims": list(filt.dims()),
        "term_orders": [len(t) for t in filt.terms],
    }


def cmd_group_powerful(args):
    G = _load_group(args)
    p = _infer_prime(G, args.p)
    return "data", {"prime": p, "powerful": ge.is_powerful(G, p)}


def cmd_group_bch(args):
    if args.pm:
        p, m = args.pm
        return "data", _bch_data(p, m, sweep=not args.no_sweep)
    if not args.file:
        raise InputError("provide --pm or --file")
    L = gl.GradedLieRing.from_json(_load_json(args.file))
    lz = ge.lazard_group_from_lie(L)
    P = lz.group
    return "data", {
        "order": P.order,
        "modulus": P.modulus,
        "rank": P.rank,
        "lie_class": lz.lie_class,
        "group_class": ge.bch_nilpotency_class(P),
    }


# --- check command handlers: return ("reports", [VerificationReport]) ---


def cmd_prim(args):
    return "reports", [report_prim("prim", args.n, args.q, args.r)]


def cmd_charp(args):
    return "reports", [
        report_charp("charp", _int_list(args.g1), _int_list(args.g2), args.limit)
    ]


def cmd_lie_validate(args):
    return "reports", [report_lie_validate("lie-validate", _load_json(args.file))]


def cmd_lie_select(args):
    return "reports", [
        report_selective(
            "selective-nilpotency", _load_json(args.file),
            args.c, args.n, args.q, args.r,
        )
    ]


def cmd_lie_examples(args):
    reports = [
        report_simple3("simple3-f5", {"kind": "PrimeField", "modulus": 5}),
        report_simple3("simple3-rational", {"kind": "Rationals"}),
    ]
    for p, m in ((5, 1), (5, 2), (7, 2)):
        reports.append(report_pm(f"pm-{p}-{m}", p, m))
    return "reports", reports


def cmd_free_odin(args):
    return "reports", [
        report_odin("odin", _int_list(args.u), _int_list(args.tail),
                    args.c, args.n, args.q, args.r)
    ]


def cmd_free_dva(args):
    return "reports", [
        report_dva("dva", _int_list(args.u), _int_list(args.tail),
                   args.c, args.n, args.q, args.r, args.w)
    ]


def cmd_group_verify(args):
    if args.field:
        p, k = args.field
        res = ge.build_field_action(p, k)
        group, action = res.group, res.action
    elif args.file:
        data = _load_json(args.file)
        if "group" not in data or "action" not in data:
            raise InputError("verify input needs 'group' and 'action'")
        group = ge.build_group(data["group"])
        action = ge.action_from_json(group, data["action"])
    else:
        raise InputError("provide --field or --file")
    names = list(_FIELD_CHECKS) if args.check == "all" else [args.check]
    return "reports", [_FIELD_CHECKS[name](group, action) for name in names]


def cmd_group_lazard(args):
    G = _load_group(args)
    p = _infer_prime(G, args.p)
    rep = ge.lazard_lemma_check(G, p)
    if rep.status == PASS:
        dl = ge.lazard_algebra(G, p)
        witness = dict(rep.witness)
        witness.update({
            "dims": list(dl.filtration.dims()),
            "degrees": list(dl.degrees),
            "lp_rank": dl.lp.rank(),
            "lp_spans": dl.lp.rank() == dl.lie.rank,
        })
        rep = VerificationReport(rep.name, rep.status, witness, rep.reason, rep.seconds)
    return "reports", [rep]


# --- the bundled fixture suite ---

TASK_KINDS = {
    "prim": lambda name, a: report_prim(name, a["n"], a["q"], a["r"]),
    "dset": lambda name, a: report_dset(
        name, a["seq"], a["n"], a["q"], a["r"], a["expected"]),
    "odin": lambda name, a: report_odin(
        name, a["u"], a["tail"], a["c"], a["n"], a["q"], a["r"]),
    "dva": lambda name, a: report_dva(
        name, a["u"], a["tail"], a["c"], a["n"], a["q"], a["r"], a["w"]),
    "razresh": lambda name, a: report_razresh(
        name, a["c"], a["q"], a["n"], a["r"], a["indices"], a["member"]),
    "example-simple3": lambda name, a: report_simple3(name, a["ring"]),
    "example-pm": lambda name, a: report_pm(name, a["p"], a["m"]),
    "bch-pm": lambda name, a: report_bch_pm(
        name, a["p"], a["m"], a.get("sweep", True)),
    "field-verify": lambda name, a: report_field_verify(
        name, a["p"], a["k"], a["check"]),
    "free-module-field": lambda name, a: report_free_module_field(
        name, a["p"], a["k"]),
    "free-module-trivial": lambda name, a: report_free_module_trivial(
        name, a["p"], a["dim"], a["q"]),
    "jz-dims": lambda name, a: report_jz_dims(
        name, a["group"], a["p"], a["dims"]),
    "lazard-lemma": lambda name, a: report_lazard_lemma(name, a["group"], a["p"]),
    "powerful": lambda name, a: report_powerful(
        name, a["group"], a["p"], a["expected"]),
}


def load_fixtures() -> list[dict]:
    root = resources.files("flab").joinpath("fixtures")
    out = []
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            out.append(json.loads(entry.read_text(encoding="utf-8")))
    if not out:
        raise InputError("no bundled fixtures found")
    return out


def _run_task(task) -> VerificationReport:
    kind = task.get("kind")
    if kind not in TASK_KINDS:
        raise InputError(f"unknown task kind {kind!r}")
    return TASK_KINDS[kind](task["id"], task.get("args", {}))


def run_suite(jobs: int | None = None) -> list[VerificationReport]:
    """Run every fixture task and compare against its golden report;
    ordering follows task ids regardless of completion order."""
    tasks = []
    for fixture in load_fixtures():
        tasks.extend(fixture.get("tasks", ()))
    tasks.sort(key=lambda t: t["id"])
    workers = jobs or min(8, max(1, len(tasks)))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_task, task) for task in tasks]
        actuals = [f.result() for f in futures]
    out = []
    for task, actual in zip(tasks, actuals):
        golden = task["expected"]
        got = actual.to_json(with_timing=False)
        if got == golden:
            out.append(VerificationReport(
                task["id"], PASS, got, None, actual.seconds))
        else:
            out.append(VerificationReport(
                task["id"], VIOLATION, {"expected": golden, "actual": got},
                "report differs from the golden", actual.seconds))
    return out


def cmd_suite(args):
    if args.target != "paper":
        raise InputError(f"unknown suite {args.target!r}")
    return "reports", run_suite(args.jobs)


# --- parser wiring ---


def _add_params(sub) -> None:
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--q", type=int, required=True)
    sub.add_argument("--r", type=int, required=True)


def _add_format(sub) -> None:
    sub.add_argument("--format", choices=("json", "table"), default="table")


def _add_group_source(sub) -> None:
    sub.add_argument("--name", help="bundled group name, e.g. D8")
    sub.add_argument("--file", help="JSON group file")
    sub.add_argument("--p", type=int, help="prime (inferred for p-groups)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flab",
        description="Exact computations on graded Lie rings, free Lie "
                    "rewriting, and finite group actions.",
    )
    top = parser.add_subparsers(dest="command", required=True)

    sub = top.add_parser("prim", help="test the order condition on (n, q, r)")
    _add_params(sub)
    _add_format(sub)
    sub.set_defaults(func=cmd_prim, label="prim")

    sub = top.add_parser("rdep", help="exhaustive r-dependence test")
    sub.add_argument("--seq", required=True, help="comma-separated residues")
    _add_params(sub)
    _add_format(sub)
    sub.set_defaults(func=cmd_rdep, label="rdep")

    sub = top.add_parser("dset", help="residues whose adjunction breaks independence")
    sub.add_argument("--seq", required=True, help="comma-separated residues")
    sub.add_argument("--method", choices=("auto", "brute", "formula"),
                     default="auto")
    _add_params(sub)
    _add_format(sub)
    sub.set_defaults(func=cmd_dset, label="dset")

    sub = top.add_parser("nbound", help="capacity and Engel-width bounds")
    sub.add_argument("--c", type=int, required=True)
    sub.add_argument("--q", type=int, required=True)
    _add_format(sub)
    sub.set_defaults(func=cmd_nbound, label="nbound")

    sub = top.add_parser("charp", help="common-root moduli against the bound")
    sub.add_argument("--g1", required=True, help="ascending coefficients")
    sub.add_argument("--g2", required=True, help="ascending coefficients")
    sub.add_argument("--limit", type=int, default=10000)
    _add_format(sub)
    sub.set_defaults(func=cmd_charp, label="charp")

    lie = top.add_parser("lie", help="graded Lie ring tools").add_subparsers(
        dest="subcommand", required=True)

    sub = lie.add_parser("validate", help="check the bracket laws of a JSON ring")
    sub.add_argument("file")
    _add_format(sub)
    sub.set_defaults(func=cmd_lie_validate, label="lie-validate")

    sub = lie.add_parser("series", help="lower central or derived series")
    sub.add_argument("file")
    sub.add_argument("--kind", choices=("lower", "derived"), default="lower")
    _add_format(sub)
    sub.set_defaults(func=cmd_lie_series, label="lie-series")

    sub = lie.add_parser("select", help="selective nilpotency check")
    sub.add_argument("file")
    sub.add_argument("--c", type=int, required=True)
    _add_params(sub)
    _add_format(sub)
    sub.set_defaults(func=cmd_lie_select, label="selective-nilpotency")

    sub = lie.add_parser("eigen", help="eigenspace decomposition of a JSON action")
    sub.add_argument("file")
    _add_format(sub)
    sub.set_defaults(func=cmd_lie_eigen, label="lie-eigen")

    sub = lie.add_parser("examples", help="recheck the bundled ring examples")
    _add_format(sub)
    sub.set_defaults(func=cmd_lie_examples, label="lie-examples")

    free = top.add_parser("free", help="free Lie ring tools").add_subparsers(
        dest="subcommand", required=True)

    sub = free.add_parser("basis", help="Hall basis up to a weight")
    sub.add_argument("--gens", required=True, help="name or name@index list")
    sub.add_argument("--max-weight", type=int, required=True)
    _add_format(sub)
    sub.set_defaults(func=cmd_free_basis, label="free-basis")

    sub = free.add_parser("normalize", help="rewrite an expression in the Hall basis")
    sub.add_argument("expression")
    _add_format(sub)
    sub.set_defaults(func=cmd_free_normalize, label="free-normalize")

    sub = free.add_parser("delta", help="balanced bracket on 2**k generators")
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--args", required=True, help="name@index list")
    _add_format(sub)
    sub.set_defaults(func=cmd_free_delta, label="free-delta")

    sub = free.add_parser("odin", help="head rewrite keeping D-set indices")
    sub.add_argument("--u", required=True, help="head index tuple")
    sub.add_argument("--tail", required=True, help="tail indices")
    sub.add_argument("--c", type=int, required=True)
    _add_params(sub)
    _add_format(sub)
    sub.set_defaults(func=cmd_free_odin, label="odin")

    sub = free.add_parser("dva", help="head rewrite with reordered long terms")
    sub.add_argument("--u", required=True, help="head index tuple")
    sub.add_argument("--tail", required=True, help="tail indices")
    sub.add_argument("--c", type=int, required=True)
    sub.add_argument("--w", type=int, required=True)
    _add_params(sub)
    _add_format(sub)
    sub.set_defaults(func=cmd_free_dva, label="dva")

    sub = free.add_parser("razresh", help="span membership for delta commutators")
    sub.add_argument("--c", type=int, required=True)
    sub.add_argument("--indices", required=True)
    sub.add_argument("--weight-cap", type=int, default=None)
    _add_params(sub)
    _add_format(sub)
    sub.set_defaults(func=cmd_free_razresh, label="razresh")

    group = top.add_parser("group", help="finite group tools").add_subparsers(
        dest="subcommand", required=True)

    sub = group.add_parser("build", help="order, exponent, class of a group")
    _add_group_source(sub)
    _add_format(sub)
    sub.set_defaults(func=cmd_group_build, label="group-build")

    sub = group.add_parser("verify", help="fixed-point theorems on an action")
    sub.add_argument("check", choices=tuple(_FIELD_CHECKS) + ("all",))
    sub.add_argument("--field", type=_int_pair, default=None,
                     help="p,k for the bundled field action")
    sub.add_argument("--file", help="JSON file with 'group' and 'action'")
    _add_format(sub)
    sub.set_defaults(func=cmd_group_verify, label="group-verify")

    sub = group.add_parser("jz", help="dimension-subgroup filtration")
    _add_group_source(sub)
    _add_format(sub)
    sub.set_defaults(func=cmd_group_jz, label="group-jz")

    sub = group.add_parser("lazard", help="graded algebra and the power lemma")
    _add_group_source(sub)
    _add_format(sub)
    sub.set_defaults(func=cmd_group_lazard, label="lazard-lemma")

    sub = group.add_parser("powerful", help="commutators inside the power subgroup")
    _add_group_source(sub)
    _add_format(sub)
    sub.set_defaults(func=cmd_group_powerful, label="group-powerful")

    sub = group.add_parser("bch", help="Hausdorff-product group of a Lie ring")
    sub.add_argument("--pm", type=_int_pair, default=None,
                     help="p,m for the bundled cyclic-bracket ring")
    sub.add_argument("--file", help="JSON Lie ring file")
    sub.add_argument("--no-sweep", action="store_true",
                     help="skip the fixed-point sweeps")
    _add_format(sub)
    sub.set_defaults(func=cmd_group_bch, label="group-bch")

    sub = top.add_parser("suite", help="run the bundled fixture corpus")
    sub.add_argument("target", choices=("paper",))
    sub.add_argument("--jobs", type=int, default=None)
    _add_format(sub)
    sub.set_defaults(func=cmd_suite, label="suite")

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", "table")
    label = getattr(args, "label", "flab")
    try:
        kind, payload = args.func(args)
    except InputError as exc:
        rep = VerificationReport(label, INPUT_ERROR, None, str(exc) or "invalid input")
        _emit_reports([rep], fmt, sys.stdout)
        return 2
    except CapacityError as exc:
        rep = VerificationReport(
            label, CAPACITY_ERROR, None, str(exc) or "capacity exceeded")
        _emit_reports([rep], fmt, sys.stdout)
        return 2
    if kind == "data":
        _emit_data(payload, fmt, sys.stdout)
        return 0
    _emit_reports(payload, fmt, sys.stdout)
    return _exit_code(payload)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
