"""Interpolation on the projective line: plans, search, and assembly.

A plan for multiplying in F_{q^n} (or F_{q^m}[t]/(t^l)) evaluates products
of polynomials of degree <= nl-1 at a multiset of places with
multiplicities whose degrees sum to at least 2nl-1, multiplies locally
with cost-table algorithms, and reconstructs by linear inversion.
"""

from . import linalg
from .bilinear import BilinearAlgorithm, ExtAlgebra, TruncAlgebra, verify_or_raise
from .errors import CcmaError, PlanInfeasible, VerificationError
from .gf import (
    INFINITY,
    ExtensionRing,
    Poly,
    PrimePowerLocal,
    count_irreducibles,
    is_irreducible,
    iter_irreducibles,
    lex_least_irreducible,
)
from .guard import check_guard


class G0Place:
    """A closed point of the projective line: monic irreducible or infinity."""

    def __init__(self, poly_or_inf):
        if poly_or_inf == INFINITY:
            self.poly = None
        else:
            if not is_irreducible(poly_or_inf):
                raise CcmaError("finite place needs an irreducible polynomial")
            self.poly = poly_or_inf.monic()

    @property
    def is_infinity(self):
        return self.poly is None

    @property
    def degree(self):
        return 1 if self.poly is None else self.poly.degree

    def __eq__(self, other):
        return isinstance(other, G0Place) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return "G0Place(inf)" if self.is_infinity else f"G0Place({self.poly!r})"

    def describe(self):
        return "inf" if self.is_infinity else list(self.poly.coeffs)


def enumerate_g0_places(spec, d, limit=None):
    """Degree-d places: monic irreducibles, plus infinity when d = 1."""
    if d < 1:
        raise CcmaError("degree must be >= 1")
    check_guard(spec.q ** d, f"place enumeration over {spec!r} degree {d}", limit)
    out = [G0Place(p) for p in iter_irreducibles(spec, d)]
    if d == 1:
        out.append(G0Place(INFINITY))
    return out


class EvalPlan:
    """A costed multiset of (place, multiplicity) pairs for one target."""

    def __init__(self, base, n, ell, Q, items, cost):
        self.base = base
        self.n = n
        self.ell = ell
        self.Q = Q
        self.items = list(items)
        self.cost = cost
        degree_sum = sum(p.degree * u for p, u in self.items)
        if degree_sum < 2 * n * ell - 1:
            raise CcmaError("plan violates the degree condition")
        seen = set()
        for p, u in self.items:
            if p in seen:
                raise CcmaError("plan repeats a place")
            seen.add(p)
            if not p.is_infinity and p.poly == Q:
                raise CcmaError("plan evaluates at the interpolation place")

    @property
    def degree_sum(self):
        return sum(p.degree * u for p, u in self.items)

    def describe(self):
        return {
            "n": self.n,
            "l": self.ell,
            "Q": list(self.Q.coeffs),
            "items": [{"place": p.describe(), "u": u} for p, u in self.items],
            "cost": self.cost,
        }


def plan_search(
    base,
    n,
    ell,
    cost_table,
    max_place_degree=None,
    max_mult=4,
    max_item_dim=None,
    limit=None,
):
    """Minimal-cost feasible plan for F_{q^n} (ell = 1) or F_{q^n}[t]/(t^ell).

    Exact optimization over (degree, multiplicity) class counts subject to
    place availability, with the documented lexicographic tie-break.
    """
    q = base.q
    budget = 2 * n * ell - 1
    d_cap = max_place_degree if max_place_degree is not None else 2 * n
    dim_cap = max_item_dim if max_item_dim is not None else budget
    Q = lex_least_irreducible(base, n)
    classes = []
    for d in range(1, d_cap + 1):
        avail = (q + 1) if d == 1 else count_irreducibles(q, d)
        if d == n:
            avail -= 1  # the interpolation place itself
        if avail <= 0:
            continue
        for u in range(1, max_mult + 1):
            if d * u <= min(dim_cap, budget):
                classes.append((d, u, avail))
    if not classes:
        raise PlanInfeasible(f"no admissible items for n={n}, l={ell} over {base!r}")

    rational_avail = classes[0][2] if classes[0][:2] == (1, 1) else 0
    if rational_avail >= budget:
        # every item costs at least 2 d u - 1, so a plan of budget rational
        # places (cost 1 each) is exactly optimal
        counts = [budget if cls[:2] == (1, 1) else 0 for cls in classes]
        total = budget
    else:
        counts, total = _lazy_plan_dp(classes, budget, cost_table)
    if counts is None:
        raise PlanInfeasible(f"no feasible plan for n={n}, l={ell} within caps")

    # assign concrete places per degree in canonical order, skipping Q
    items = []
    used = {}
    for (d, u, _), c in zip(classes, counts):
        if not c:
            continue
        pool = used.get(d)
        if pool is None:
            pool = _place_stream(base, d, Q)
            used[d] = pool
        for _ in range(c):
            items.append((next(pool), u))
    items.sort(key=_item_key)
    return EvalPlan(base, n, ell, Q, items, int(total))


def _lazy_plan_dp(classes, budget, cost_table):
    """Exact minimum-cost counts with lazily priced entries.

    Entries are priced optimistically at the local lower bound 2du-1 until
    a candidate-optimal plan actually uses them; iterating to a fixpoint
    yields the true optimum while never building irrelevant table entries.
    """
    INF = float("inf")
    estimates = {}
    exact = set()

    def est(d, u):
        v = estimates.get((d, u))
        if v is None:
            v = 2 * d * u - 1
            estimates[(d, u)] = v
        return v

    def next_used(idx, used, c):
        if idx + 1 < len(classes) and classes[idx + 1][0] == classes[idx][0]:
            return used + c
        return 0

    for _ in range(len(classes) * 4 + 4):
        memo = {}

        def best_from(idx, remaining, used):
            if remaining <= 0:
                return 0
            if idx == len(classes):
                return INF
            key = (idx, remaining, used)
            hit = memo.get(key)
            if hit is not None:
                return hit
            d, u, avail = classes[idx]
            best = INF
            top = min(avail - used, -(-remaining // (d * u)))
            for c in range(top + 1):
                rest = best_from(idx + 1, remaining - c * d * u, next_used(idx, used, c))
                if rest < INF:
                    total = c * est(d, u) + rest
                    if total < best:
                        best = total
            memo[key] = best
            return best

        total = best_from(0, budget, 0)
        if total == INF:
            return None, None
        # reconstruct lexicographically least multiset: prefer more copies
        # of earlier (smaller) classes among equal-cost solutions
        counts = []
        remaining = budget
        target_cost = total
        used = 0
        for idx, (d, u, avail) in enumerate(classes):
            top = min(avail - used, max(0, -(-remaining // (d * u))))
            chosen = 0
            for c in range(top, -1, -1):
                rest = best_from(idx + 1, remaining - c * d * u, next_used(idx, used, c))
                if rest < INF and c * est(d, u) + rest == target_cost:
                    chosen = c
                    break
            counts.append(chosen)
            remaining -= chosen * d * u
            target_cost -= chosen * est(d, u)
            used = next_used(idx, used, chosen)
        pending = [
            cls[:2]
            for cls, c in zip(classes, counts)
            if c and cls[:2] not in exact
        ]
        if not pending:
            return counts, int(total)
        for d, u in pending:
            estimates[(d, u)] = cost_table.cost(d, u)
            exact.add((d, u))
    raise PlanInfeasible("plan pricing did not converge")


def _item_key(item):
    place, u = item
    if place.is_infinity:
        return (place.degree, u, 1, ())
    return (place.degree, u, 0, place.poly.order_key())


def _place_stream(base, d, Q):
    for p in iter_irreducibles(base, d):
        if p != Q:
            yield G0Place(p)
    if d == 1:
        yield G0Place(INFINITY)


def _local_columns(base, bound, place, u, entry, limit=None):
    """Matrix of the local evaluation on the monomial basis x^0..x^bound.

    Rows are coordinates in the cost-table entry's own basis of the
    truncated local algebra (the residue field in the entry's power basis).
    """
    d = place.degree
    cols = bound + 1
    if place.is_infinity:
        rows = [[0] * cols for _ in range(u)]
        for j in range(u):
            if bound - j >= 0:
                rows[j][bound - j] = 1
        return rows
    local = PrimePowerLocal(place.poly, u)
    if d == 1:
        conv = None
    else:
        entry_Q = entry.target.Q
        field = ExtensionRing(base, entry_Q)
        root = field.find_root(place.poly, limit)
        if root is None:
            raise CcmaError("place polynomial has no root in the entry field")
        powers = [field.one]
        for _ in range(d - 1):
            powers.append(field.mul(powers[-1], root))
        conv = [[powers[j][i] for j in range(d)] for i in range(d)]
    rows = [[0] * cols for _ in range(d * u)]
    xt = Poly.one(base)
    x = Poly.x(base)
    for t in range(cols):
        digits = local.to_coords(xt)
        for j, z in enumerate(digits):
            vec = list(z) if conv is None else linalg.mat_vec(base, conv, list(z))
            for i in range(d):
                rows[j * d + i][t] = vec[i]
        xt = xt * x
    return rows


def build(plan, cost_table, limit=None):
    """Assemble and exhaustively verify the bilinear algorithm of a plan."""
    base = plan.base
    n, ell = plan.n, plan.ell
    dim = n * ell
    m1 = dim - 1  # degree bound of the lifted factors
    m2 = 2 * dim - 2  # degree bound of products
    if ell == 1:
        target = ExtAlgebra(base, plan.Q)
        lift = linalg.identity(base, dim)
        qmod = plan.Q
        tq_digits = None
    else:
        target = TruncAlgebra(base, n, ell, plan.Q)
        local_q = PrimePowerLocal(plan.Q, ell)
        cols = []
        for j in range(ell):
            for i in range(n):
                digit = tuple(1 if t == i else 0 for t in range(n))
                digits = [digit if t == j else (0,) * n for t in range(ell)]
                f = local_q.from_coords(digits)
                col = [0] * dim
                for t, c in enumerate(f.coeffs):
                    col[t] = c
                cols.append(col)
        lift = [[cols[c][r] for c in range(dim)] for r in range(dim)]
        qmod = local_q.modulus
        tq_digits = local_q

    # reduction of the product space into the target algebra
    tq = [[0] * (2 * dim - 1) for _ in range(dim)]
    xt = Poly.one(base)
    x = Poly.x(base)
    for t in range(2 * dim - 1):
        if ell == 1:
            red = xt % qmod
            for i, c in enumerate(red.coeffs):
                tq[i][t] = c
        else:
            digits = tq_digits.to_coords(xt)
            flat = []
            for z in digits:
                flat.extend(z)
            for i, c in enumerate(flat):
                tq[i][t] = c
        xt = xt * x

    A_rows = []
    B_rows = []
    e_rows = []
    w_blocks = []
    for place, u in plan.items:
        entry = cost_table.get(place.degree, u) if not place.is_infinity else cost_table.get(1, u)
        phi1 = _local_columns(base, m1, place, u, entry, limit)
        phi2 = _local_columns(base, m2, place, u, entry, limit)
        lifted = linalg.mat_mul(base, phi1, lift)
        A_rows.extend(linalg.mat_mul(base, entry.A, lifted))
        B_rows.extend(linalg.mat_mul(base, entry.B, lifted))
        e_rows.extend(phi2)
        w_blocks.append(entry.W)

    E = e_rows
    R = linalg.left_inverse(base, E)
    if R is None:
        raise VerificationError("evaluation map is not injective; plan is defective")

    total_rows = len(e_rows)
    total_prods = sum(len(wb[0]) for wb in w_blocks)
    bigW = [[0] * total_prods for _ in range(total_rows)]
    roff = 0
    coff = 0
    for wb in w_blocks:
        for i, row in enumerate(wb):
            for j, v in enumerate(row):
                bigW[roff + i][coff + j] = v
        roff += len(wb)
        coff += len(wb[0])

    W = linalg.mat_mul(base, linalg.mat_mul(base, tq, R), bigW)
    alg = BilinearAlgorithm(
        target,
        A_rows,
        B_rows,
        W,
        meta={"method": "genus0", "plan": plan.describe()},
    )
    verify_or_raise(alg, "genus-0 assembly")
    if alg.N != plan.cost:
        raise VerificationError("assembled rank disagrees with plan cost")
    return alg


def interpolation_matrix_rank(plan, cost_table, limit=None):
    """Column rank of the product-space evaluation matrix (should be 2nl-1)."""
    base = plan.base
    m2 = 2 * plan.n * plan.ell - 2
    rows = []
    for place, u in plan.items:
        entry = cost_table.get(place.degree, u) if not place.is_infinity else cost_table.get(1, u)
        rows.extend(_local_columns(base, m2, place, u, entry, limit))
    return linalg.rank(base, rows)
