"""Decompositions as linear codes, and the exact-supercode correspondence.

A length-N decomposition of multiplication in F_{q^n} induces the code
spanned by the images x -> (a_1(x), ..., a_N(x)); symmetric decompositions
correspond to exact supercodes S in F_{q^n} (+) F_q^N.
"""

from . import linalg
from .bilinear import BilinearAlgorithm, verify
from .errors import (
    CcmaError,
    DegenerateDecomposition,
    SupercodeConditionError,
)
from .guard import check_guard


class LinearCode:
    """Generator-matrix code over a FieldSpec, with cached exact distance."""

    def __init__(self, spec, generator):
        self.spec = spec
        self.G = [list(r) for r in generator]
        self.n = len(self.G)
        self.N = len(self.G[0]) if self.G else 0
        if linalg.rank(spec, self.G) != self.n:
            raise DegenerateDecomposition("generator rows are dependent")
        self._distance = None

    def min_distance(self, limit=None):
        """Exact minimum Hamming weight over all nonzero codewords (guarded)."""
        if self._distance is not None:
            return self._distance
        spec = self.spec
        q = spec.q
        check_guard(q ** self.n, f"codeword enumeration [{self.N},{self.n}]_{q}", limit)
        best = self.N + 1
        msg = [0] * self.n
        columns = linalg.transpose(self.G)
        for enc in range(1, q ** self.n):
            v = enc
            for i in range(self.n):
                msg[i] = v % q
                v //= q
            word = linalg.mat_vec(spec, columns, msg)
            w = sum(1 for c in word if c)
            if w < best:
                best = w
        self._distance = best
        return best

    def to_json(self):
        spec = self.spec
        return {
            "q": spec.q,
            "N": self.N,
            "n": self.n,
            "generator": [[list(spec.decode(v)) for v in row] for row in self.G],
        }

    def __repr__(self):
        return f"LinearCode([{self.N},{self.n}]_{self.spec.q})"


def code_from_decomposition(alg):
    """The [N, n, >= n] code spanned by the x-side linear forms."""
    if alg.target.kind != "extension":
        raise CcmaError("code extraction needs an extension-field target")
    spec = alg.target.base
    G = linalg.transpose(alg.A)
    return LinearCode(spec, G)


def min_distance(code, limit=None):
    return code.min_distance(limit)


class Supercode:
    """Subspace of F_{q^n} (+) F_q^N given by basis rows of length n+N."""

    def __init__(self, algebra, N, basis):
        self.algebra = algebra
        self.n = algebra.dim
        self.N = N
        self.basis = [list(r) for r in basis]
        for row in self.basis:
            if len(row) != self.n + N:
                raise CcmaError("basis row has wrong length")

    @property
    def dim(self):
        return linalg.rank(self.algebra.base, self.basis)

    def product(self, r1, r2):
        n = self.n
        spec = self.algebra.base
        first = self.algebra.mul_coords(r1[:n], r2[:n])
        second = [spec.mul(a, b) for a, b in zip(r1[n:], r2[n:])]
        return first + second

    def condition1_holds(self):
        first = [row[: self.n] for row in self.basis]
        return linalg.rank(self.algebra.base, first) == self.n

    def square_span(self):
        rows = []
        for i in range(len(self.basis)):
            for j in range(i, len(self.basis)):
                rows.append(self.product(self.basis[i], self.basis[j]))
        red, pivots = linalg.rref(self.algebra.base, rows)
        return [red[r] for r in range(len(pivots))]

    def condition2_holds(self):
        span = self.square_span()
        second = [row[self.n :] for row in span]
        return linalg.rank(self.algebra.base, second) == len(span)

    def is_exact(self):
        return self.dim == self.n

    def to_json(self):
        spec = self.algebra.base
        tinfo = self.algebra.describe()
        tinfo["Q"] = [list(spec.decode(c)) for c in tinfo["Q"]]
        return {
            "q": spec.q,
            "n": self.n,
            "N": self.N,
            "target": tinfo,
            "basis": [[list(spec.decode(v)) for v in row] for row in self.basis],
        }


def supercode_from_symmetric(alg):
    """Exact supercode of a verified symmetric decomposition."""
    if not alg.symmetric:
        raise CcmaError("supercode construction needs a symmetric algorithm")
    if alg.target.kind != "extension":
        raise CcmaError("supercode construction needs an extension-field target")
    if not verify(alg):
        raise CcmaError("algorithm does not verify")
    dim = alg.target.dim
    rows = []
    for i in range(dim):
        e = [1 if t == i else 0 for t in range(dim)]
        rows.append(e + linalg.mat_vec(alg.target.base, alg.A, e))
    S = Supercode(alg.target, alg.N, rows)
    if not S.condition1_holds():
        raise SupercodeConditionError(1, "first projection not surjective")
    if not S.condition2_holds():
        raise SupercodeConditionError(2, "second projection not injective on the square span")
    return S


def symmetric_from_supercode(S):
    """Symmetric algorithm recovered from a supercode (exact sub-supercode first)."""
    spec = S.algebra.base
    n = S.n
    if not S.condition1_holds():
        raise SupercodeConditionError(1, "first projection not surjective")
    if not S.condition2_holds():
        raise SupercodeConditionError(2, "second projection not injective on the square span")
    # exact sub-supercode: pivot rows of the first block under row reduction
    red, pivots = linalg.rref(spec, S.basis)
    reduced = [red[r] for r in range(len(pivots))]
    exact_rows = [row for row, p in zip(reduced, pivots) if p < n]
    if len(exact_rows) != n:
        raise SupercodeConditionError(1, "no exact sub-supercode of dimension n")
    M = [row[:n] for row in exact_rows]
    Minv = linalg.invert(spec, M)
    canon = linalg.mat_mul(spec, Minv, exact_rows)  # rows (e_i, u(e_i))
    A = [ [canon[i][n + l] for i in range(n)] for l in range(S.N) ]
    sub = Supercode(S.algebra, S.N, canon)
    span = sub.square_span()
    # W solves W v = z for every (z, v) in the square span
    cols = [row[n:] for row in span]
    zs = [row[:n] for row in span]
    W = []
    for h in range(n):
        rhs = [zs[s][h] for s in range(len(span))]
        aug = [[cols[s][l] for l in range(S.N)] for s in range(len(span))]
        sol = linalg.solve(spec, aug, rhs)
        if sol is None:
            raise SupercodeConditionError(2, "square span is inconsistent")
        W.append(sol)
    alg = BilinearAlgorithm(
        S.algebra, A, [r[:] for r in A], W, meta={"method": "supercode"}
    )
    if not verify(alg):
        raise CcmaError("recovered algorithm failed verification")
    return alg
