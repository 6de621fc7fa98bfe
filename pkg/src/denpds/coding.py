"""Projective two-intersection sets and two-weight codes from a set family.

Group elements are coordinatized over GF(q) by the power bases of the two
deterministic field generators; a scale-closed set collapses to one
projective point per GF(q)* orbit.  The hyperplane profile and the weight
enumerator are separate exhaustive sweeps (all normalized dual vectors,
all q^dim messages) so the geometry and the code check each other.
"""

from __future__ import annotations

import numpy as np

from . import params as pm
from .construct import PdsSet, Tower
from .errors import CapExceededError, InternalError, NotScaleClosedError
from .verify import CheckItem, _chunk_ranges, _run_chunks

DEFAULT_ENUM_CAP = 1 << 16


class QArith:
    """Vectorized GF(q) arithmetic via packed-value lookup tables."""

    def __init__(self, tower: Tower):
        self.base = tower.base
        self.q = tower.base.size
        q = self.q
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for x in range(q):
            for y in range(q):
                add[x, y] = self.base.add_packed(x, y)
                mul[x, y] = self.base.mul_packed(x, y)
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = self.base.antilog[(-self.base.dlog[x]) % self.base.order]
        neg = np.array([self.base.neg_packed(x) for x in range(q)], dtype=np.int64)
        for t in (add, mul, inv, neg):
            t.setflags(write=False)
        self.add, self.mul, self.inv, self.neg = add, mul, inv, neg

    def dot(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        """(R, n) x (n, C) -> (R, C) over GF(q)."""
        acc = np.zeros((rows.shape[0], cols.shape[1]), dtype=np.int64)
        for t in range(rows.shape[1]):
            acc = self.add[acc, self.mul[rows[:, t][:, None], cols[t][None, :]]]
        return acc


class CodingContext:
    """Coordinate tables and scalar action for one tower."""

    def __init__(self, tower: Tower):
        self.tower = tower
        self.qa = QArith(tower)
        tp = tower.params
        self.q = tp.q
        self.dim = tp.dim_q
        self.dim1 = tp.m * tp.ell
        self.dim2 = tp.m * (tp.ell + 1)
        self.coords1 = tower.f1.coords_table(tp.s)
        self.coords2 = tower.f2.coords_table(tp.s)
        # discrete logs of the embedded GF(q)* scalars inside each big field
        from .ff import embed

        e1 = embed(tower.base, tower.f1)
        e2 = embed(tower.base, tower.f2)
        self.scalar_dlogs1 = [
            tower.f1.dlog[e1.apply_packed(s)] for s in range(1, self.q)
        ]
        self.scalar_dlogs2 = [
            tower.f2.dlog[e2.apply_packed(s)] for s in range(1, self.q)
        ]

    def pair_coords(self, pair: tuple[int, int]) -> np.ndarray:
        i, j = pair
        a = 0 if i < 0 else self.tower.f1.antilog[i]
        b = 0 if j < 0 else self.tower.f2.antilog[j]
        return np.concatenate([self.coords1[a], self.coords2[b]])

    def set_coords(self, pds: PdsSet) -> np.ndarray:
        return np.stack([self.pair_coords(e) for e in pds.sorted_elements()])

    def check_scale_closed(self, pds: PdsSet) -> None:
        """The diagonal GF(q)* action must permute the set."""
        ord1, ord2 = self.tower.f1.order, self.tower.f2.order
        elems = pds.elements
        for s1, s2 in zip(self.scalar_dlogs1, self.scalar_dlogs2):
            for (i, j) in elems:
                scaled = (
                    i if i < 0 else (i + s1) % ord1,
                    j if j < 0 else (j + s2) % ord2,
                )
                if scaled not in elems:
                    raise NotScaleClosedError(
                        "element %s leaves the set under scaling" % ((i, j),)
                    )


class ProjectiveSet:
    """Distinct normalized points (first nonzero coordinate 1) in PG(dim-1, q)."""

    def __init__(self, q: int, dim: int, points: np.ndarray):
        self.q = q
        self.dim = dim
        self.points = points

    @property
    def n(self) -> int:
        return len(self.points)

    def point_strings(self) -> list[str]:
        return [" ".join(str(int(c)) for c in row) for row in self.points]


def _normalize_rows(rows: np.ndarray, qa: QArith) -> np.ndarray:
    nz = rows != 0
    if not nz.any(axis=1).all():
        raise InternalError("cannot normalize a zero vector")
    first = nz.argmax(axis=1)
    lead = rows[np.arange(len(rows)), first]
    return qa.mul[qa.inv[lead][:, None], rows]


def to_projective_set(pds: PdsSet, ctx: CodingContext) -> ProjectiveSet:
    """Collapse a scale-closed set by the GF(q)* action."""
    ctx.check_scale_closed(pds)
    rows = ctx.set_coords(pds)
    norm = _normalize_rows(rows, ctx.qa)
    uniq = np.unique(norm, axis=0)
    want, rem = divmod(pds.k, ctx.q - 1)
    if rem or len(uniq) != want:
        raise InternalError(
            "collapse gave %d points, expected %d" % (len(uniq), want)
        )
    return ProjectiveSet(ctx.q, ctx.dim, uniq)


def _normalized_duals(q: int, dim: int, qa: QArith, cap: int) -> np.ndarray:
    """All hyperplane representatives: nonzero vectors with first nonzero 1."""
    total = q**dim
    if total > cap:
        raise CapExceededError("hyperplane enumeration above cap %d" % cap)
    vals = np.arange(1, total, dtype=np.int64)
    digs = np.empty((total - 1, dim), dtype=np.int64)
    for i in range(dim):
        digs[:, i] = (vals // q**i) % q
    nz = digs != 0
    first = nz.argmax(axis=1)
    lead = digs[np.arange(total - 1), first]
    keep = lead == 1
    return digs[keep]


def hyperplane_profile(
    S: ProjectiveSet, ctx: CodingContext, cap: int = DEFAULT_ENUM_CAP, threads: int = 0
) -> dict[int, int]:
    """Map: intersection size -> number of hyperplanes attaining it."""
    duals = _normalized_duals(S.q, S.dim, ctx.qa, cap)
    pts = S.points.T.copy()
    chunk = max(1, (8 << 20) // max(1, S.n * 8))
    ranges = _chunk_ranges(len(duals), chunk)

    def one(rng):
        lo, hi = rng
        prods = ctx.qa.dot(duals[lo:hi], pts)
        sizes = (prods == 0).sum(axis=1)
        return np.bincount(sizes, minlength=S.n + 1)

    counts = np.zeros(S.n + 1, dtype=np.int64)
    for part in _run_chunks(one, ranges, threads):
        counts += part
    expected_total = (S.q**S.dim - 1) // (S.q - 1)
    if counts.sum() != expected_total:
        raise InternalError("hyperplane count mismatch")
    return {int(h): int(c) for h, c in enumerate(counts) if c}


class GeneratorMatrix:
    """dim x n matrix over GF(q); columns are the sorted normalized points."""

    def __init__(self, q: int, mat: np.ndarray, rank: int):
        self.q = q
        self.mat = mat
        self.rank = rank

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def n(self) -> int:
        return self.mat.shape[1]

    def row_strings(self) -> list[str]:
        return [" ".join(str(int(c)) for c in row) for row in self.mat]


def _rank_gfq(mat: np.ndarray, qa: QArith) -> int:
    m = mat.copy()
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        pivot = None
        for rr in range(rank, rows):
            if m[rr, c]:
                pivot = rr
                break
        if pivot is None:
            continue
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        m[rank] = qa.mul[qa.inv[m[rank, c]], m[rank]]
        for rr in range(rows):
            if rr != rank and m[rr, c]:
                m[rr] = qa.add[m[rr], qa.mul[qa.neg[m[rr, c]], m[rank]]]
        rank += 1
        if rank == rows:
            break
    return rank


def build_code(S: ProjectiveSet, ctx: CodingContext) -> GeneratorMatrix:
    """Columns in lexicographic coordinate order; distinct normalized points
    are pairwise independent by construction, which is re-asserted."""
    cols = sorted(map(tuple, S.points.tolist()))
    if len(set(cols)) != len(cols):
        raise InternalError("generator columns are not pairwise independent")
    mat = np.array(cols, dtype=np.int64).T
    rank = _rank_gfq(mat.T.copy(), ctx.qa)
    return GeneratorMatrix(S.q, mat, rank)


def weight_enumerator(
    gm: GeneratorMatrix, ctx: CodingContext, cap: int = DEFAULT_ENUM_CAP, threads: int = 0
) -> dict[int, int]:
    """Exhaustive weight counts over all q^dim messages."""
    q, dim, n = gm.q, gm.dim, gm.n
    total = q**dim
    if total > cap:
        raise CapExceededError("message sweep above cap %d" % cap)
    qa = ctx.qa
    cw = np.zeros((1, n), dtype=np.int64)
    for t in range(dim):
        scaled = qa.mul[np.arange(q, dtype=np.int64)[:, None], gm.mat[t][None, :]]
        cw = qa.add[cw[:, None, :], scaled[None, :, :]].reshape(-1, n)
    ranges = _chunk_ranges(total, max(1, total // max(1, threads or 1)))

    def one(rng):
        lo, hi = rng
        w = (cw[lo:hi] != 0).sum(axis=1)
        return np.bincount(w, minlength=n + 1)

    counts = np.zeros(n + 1, dtype=np.int64)
    for part in _run_chunks(one, ranges, threads):
        counts += part
    if counts.sum() != total:
        raise InternalError("message count mismatch")
    if counts[0] != q ** (dim - gm.rank):
        raise InternalError("zero-weight count must equal the kernel size")
    return {int(w): int(c) for w, c in enumerate(counts) if c}


# -- checks tying geometry, code and set parameters together --


def check_two_intersection(
    profile: dict[int, int], expected: tuple[int, int, int, int]
) -> CheckItem:
    n, _, h1, h2 = expected
    sizes = sorted(profile)
    want = sorted({h1, h2})
    ok = sizes == want
    details = {"observed": {str(a): b for a, b in sorted(profile.items())}, "expected": want}
    return CheckItem("two-intersection", ok, details=details)


def check_two_weight(
    enum: dict[int, int], expected: tuple[int, int, int, int], kernel: int
) -> CheckItem:
    """Nonzero weights must be exactly the closed-form pair; a zero value in
    the pair (degenerate ranks) folds into the kernel count."""
    n, _, w1, w2 = expected
    nonzero = sorted(w for w in enum if w)
    want = sorted({w for w in (w1, w2) if w})
    ok = nonzero == want and enum.get(0, 0) == kernel
    details = {
        "observed": {str(a): b for a, b in sorted(enum.items())},
        "expected": want,
        "kernel": kernel,
    }
    return CheckItem("two-weight", ok, details=details)


def check_pairing(
    profile: dict[int, int],
    enum: dict[int, int],
    expected_pts: tuple[int, int, int, int],
    expected_code: tuple[int, int, int, int],
    q: int,
) -> CheckItem:
    """h = n - w pointwise and (q - 1) * #hyperplanes(h) = #codewords(n - h)."""
    n, _, h1, h2 = expected_pts
    _, _, w1, w2 = expected_code
    ok = h1 == n - w1 and h2 == n - w2
    details = {}
    for h, cnt in profile.items():
        w = n - h
        if w == 0:
            continue  # these hyperplanes pair with kernel messages
        if enum.get(w, 0) != (q - 1) * cnt:
            ok = False
            details[str(h)] = {"hyperplanes": cnt, "codewords": enum.get(w, 0)}
    return CheckItem("weight-hyperplane-pairing", ok, details=details)


def check_dictionary(
    sp: pm.SrgParams, n: int, w1: int, w2: int, q: int, dim: int
) -> CheckItem:
    """The code parameters must reproduce (v, k, lam, mu) exactly."""
    derived = pm.lemma_dictionary_params(q, dim, n, w1, w2)
    ok = derived == sp
    return CheckItem(
        "parameter-dictionary",
        ok,
        details={"derived": derived.as_dict(), "expected": sp.as_dict()},
    )
