"""Cross-strategy synthesis: towers, rational interpolation, curve instances.

For a requested (q, n) the planner evaluates every enabled strategy,
verifies each produced algorithm exhaustively, and returns the best one
with a machine-checkable certificate.  Ties break by the documented
strategy order: composition, then genus 0, then curves.
"""

import itertools
import json
import os

from . import curves as curves_mod
from . import genus0
from .bilinear import BilinearAlgorithm, CostTable, verify, verify_or_raise
from .bounds import factor_prime_power
from .errors import CcmaError, PlanInfeasible
from .gf import FieldSpec, field_extend

CERT_FORMAT = "ccma-certificate-v1"

_INSTANCE_DIR = os.path.join(os.path.dirname(__file__), "instances")


def shipped_instances():
    out = []
    for name in sorted(os.listdir(_INSTANCE_DIR)):
        if name.endswith(".json"):
            with open(os.path.join(_INSTANCE_DIR, name)) as fh:
                out.append(json.load(fh))
    return out


def spec_for_q(q):
    p, k = factor_prime_power(q)
    return FieldSpec.get(p, k)


class Planner:
    """Strategy orchestrator with per-field memoized cost tables."""

    STRATEGY_ORDER = ("tower", "g0", "curve")

    def __init__(
        self,
        base,
        strategies=("tower", "g0", "curve"),
        max_place_degree=None,
        max_mult=4,
        limit=None,
        instances=None,
    ):
        self.base = base
        self.strategies = tuple(s for s in self.STRATEGY_ORDER if s in strategies)
        if not self.strategies:
            raise CcmaError("no strategies enabled")
        self.max_place_degree = max_place_degree
        self.max_mult = max_mult
        self.limit = limit
        self.instances = instances if instances is not None else shipped_instances()
        self._tables = {}
        self._memo = {}

    def table(self, spec):
        tab = self._tables.get(spec)
        if tab is None:
            tab = CostTable(spec, self.limit)
            self._tables[spec] = tab
        return tab

    def synth(self, n):
        """Best verified algorithm across the enabled strategies."""
        alg, strategy = self._best(self.base, n)
        if alg is None:
            raise PlanInfeasible(f"no strategy produced an algorithm for n={n}")
        return self.certificate(alg, strategy)

    def certificate(self, alg, strategy):
        verify_or_raise(alg, "certificate algorithm")
        n = alg.target.n if alg.target.kind == "extension" else alg.target.m
        return {
            "format": CERT_FORMAT,
            "q": self.base.q,
            "n": n,
            "rank": alg.N,
            "symmetric": alg.symmetric,
            "strategy": strategy,
            "winograd_lower": 2 * n - 1,
            "algorithm": alg.to_json(),
        }

    def _best(self, spec, n):
        key = (spec, n)
        if key in self._memo:
            return self._memo[key]
        best = None
        best_strategy = None
        for strategy in self.strategies:
            for alg, detail in self._candidates(spec, n, strategy):
                if alg is None:
                    continue
                if best is None or alg.N < best.N:
                    best = alg
                    best_strategy = detail
        self._memo[key] = (best, best_strategy)
        return best, best_strategy

    def _candidates(self, spec, n, strategy):
        if strategy == "tower":
            if n == 1:
                yield self.table(spec).get(1, 1), {"kind": "trivial"}
                return
            from .bilinear import compose_tower, karatsuba, extension_target

            best = None
            detail = None
            for a in range(2, n):
                if n % a:
                    continue
                outer, so = self._best_for_compose(spec, a)
                big = field_extend(spec, a, self.limit)
                inner, si = self._best_for_compose(big, n // a)
                alg = compose_tower(outer, inner, self.limit)
                if best is None or alg.N < best.N:
                    best = alg
                    detail = {
                        "kind": "tower",
                        "split": [a, n // a],
                        "outer": so,
                        "inner": si,
                    }
            if n == 2:
                alg = karatsuba(extension_target(spec, 2))
                yield alg, {"kind": "karatsuba"}
                return
            if best is not None:
                yield best, detail
        elif strategy == "g0":
            from .errors import GuardExceeded

            try:
                tab = self.table(spec)
                plan = genus0.plan_search(
                    spec,
                    n,
                    1,
                    tab,
                    max_place_degree=self.max_place_degree,
                    max_mult=self.max_mult,
                    limit=self.limit,
                )
                alg = genus0.build(plan, tab, self.limit)
                yield alg, {"kind": "genus0", "plan": plan.describe()}
            except (PlanInfeasible, GuardExceeded):
                return
        elif strategy == "curve":
            for inst in self.instances:
                curve_info = inst["curve"]
                if n not in inst.get("targets", []):
                    continue
                curve = curves_mod.CurveModel.from_json(curve_info)
                if curve.base != spec:
                    continue
                alg = curve_instance_synth(
                    curve, n, self.table(spec), limit=self.limit
                )
                yield alg, {"kind": "curve", "instance": inst.get("name", "?")}

    def _best_for_compose(self, spec, m):
        """Best non-curve algorithm for a tower component (extension target)."""
        tab = self.table(spec)
        alg = tab.get(m, 1)
        return alg, {"kind": "table", "n": m, "q": spec.q, "rank": alg.N}


def curve_instance_synth(curve, n, cost_table, limit=None, assignment_cap=40):
    """Deterministic driver: plan the place multiset, pick the divisor, build."""
    g = curve.genus
    need = 2 * n + g - 1
    classes = _curve_classes(curve, need, cost_table, limit)
    counts = _curve_class_dp(classes, need, cost_table)
    items_shape = [
        (d, u, c) for (d, u, avail), c in zip(classes, counts) if c
    ]
    # materialize the places and search derived-evaluation assignments
    degree_pools = {
        d: curves_mod.enumerate_curve_places(curve, d, limit)
        for d in {d for d, _, _ in items_shape}
    }
    Q = curves_mod.find_place_of_degree(curve, n)
    base_items = []
    for d in sorted({d for d, _, _ in items_shape}):
        shapes = [(u, c) for dd, u, c in items_shape if dd == d]
        total = sum(c for _, c in shapes)
        pool = [p for p in degree_pools[d] if p != Q][:total]
        if len(pool) < total:
            raise PlanInfeasible(f"not enough degree-{d} places on the curve")
        base_items.append((d, shapes, pool))
    tried = 0
    last_error = None
    for items in _assignments(base_items):
        tried += 1
        if tried > assignment_cap:
            break
        try:
            D = curves_mod.find_divisor(curve, Q, items, limit=limit)
            return curves_mod.ccma_build_curve(
                curve, Q, D, D, items, 1, cost_table, limit
            )
        except CcmaError as exc:
            last_error = exc
            continue
    raise PlanInfeasible(
        f"curve instance failed after {min(tried, assignment_cap)} assignments: {last_error}"
    )


def _curve_classes(curve, need, cost_table, limit):
    """Place classes, enumerating higher degrees only when actually needed."""
    classes = []
    capacity = 0
    for d in (1, 2, 3):
        if curve.base.q ** d > 4096:
            break
        places = curves_mod.enumerate_curve_places(curve, d, limit)
        avail = len(places)
        if avail <= 0:
            continue
        for u in (1, 2):
            if d * u <= need:
                classes.append((d, u, avail))
        capacity += avail * 2 * d
        if capacity >= need:
            break
    return classes


def _curve_class_dp(classes, need, cost_table):
    """Exact minimum-cost class counts, shared availability per degree."""
    counts, total = genus0._lazy_plan_dp(classes, need, cost_table)
    if counts is None:
        raise PlanInfeasible("curve place classes cannot reach the degree target")
    return counts


def _assignments(base_items):
    """Deterministic stream of concrete (place, u) lists across degrees."""
    per_degree = []
    for d, shapes, pool in base_items:
        options = []
        high = [(u, c) for u, c in shapes if u > 1]
        total_high = sum(c for _, c in high)
        idxs = range(len(pool))
        if total_high == 0:
            options.append([(p, 1) for p in pool])
        else:
            for combo in itertools.combinations(idxs, total_high):
                items = []
                hi = list(combo)
                # distribute the high multiplicities over the chosen slots
                ulist = []
                for u, c in sorted(high, reverse=True):
                    ulist.extend([u] * c)
                for pos, p in enumerate(pool):
                    if pos in combo:
                        items.append((p, ulist[hi.index(pos)]))
                    else:
                        items.append((p, 1))
                # drop extras: the u = 1 count may be smaller than the pool rest
                low = sum(c for u, c in shapes if u == 1)
                ones = [it for it in items if it[1] == 1][:low]
                highs = [it for it in items if it[1] > 1]
                options.append(highs + ones)
        per_degree.append(options)
    for chosen in itertools.product(*per_degree):
        merged = []
        for part in chosen:
            merged.extend(part)
        yield merged


def verify_file_payload(data):
    """Re-verify a stored algorithm or certificate; returns a report dict."""
    if "algorithm" in data:
        alg = BilinearAlgorithm.from_json(data["algorithm"])
        claimed = data.get("rank")
    else:
        alg = BilinearAlgorithm.from_json(data)
        claimed = None
    ok = verify(alg)
    target = alg.target
    n = target.n if target.kind == "extension" else target.m
    report = {
        "verified": ok,
        "rank": alg.N,
        "symmetric": alg.symmetric,
        "target": target.describe(),
        "q": target.base.q,
        "winograd_lower": 2 * n - 1 if target.kind == "extension" else None,
        "failing_pair": alg.failing_pair(),
    }
    if claimed is not None:
        report["claimed_rank"] = claimed
        report["rank_matches_claim"] = claimed == alg.N
    return report
