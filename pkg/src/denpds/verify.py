"""Exact verification oracles for candidate sets.

Nothing here trusts the construction: expected parameters are recomputed
from the closed forms, membership is re-tested, and every count is an
exact integer.  Character sums are computed by a dimension-wise transform
over Z_p^n that keeps, for every character, the vector of counts of each
p-th root of unity; a sum is a rational integer exactly when all nonzero
root powers occur equally often.  No floating point is used anywhere.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import modp, params as pm
from .construct import DELSARTE_TAG, PdsSet, Subspace, Tower, dual_subspace
from .errors import (
    CapExceededError,
    DeltaNotSquareError,
    InternalError,
    SpectrumNotTwoValuedError,
)

DEFAULT_PROFILE_CAP = 1 << 16
DEFAULT_SPECTRUM_CAP = 1 << 20
DEFAULT_NEIGHBOR_CAP = 1 << 12
CHUNK_TARGET_BYTES = 32 << 20


@dataclass(frozen=True)
class Caps:
    profile: int = DEFAULT_PROFILE_CAP
    spectrum: int = DEFAULT_SPECTRUM_CAP
    neighbor: int = DEFAULT_NEIGHBOR_CAP

    def as_dict(self) -> dict:
        return {"profile": self.profile, "spectrum": self.spectrum, "neighbor": self.neighbor}


class GroupIndexer:
    """Bijection between group elements (pairs) and integers [0, v).

    The index is the concatenated base-p digit string of the two packed
    coordinates, first coordinate least significant, so index arithmetic
    is coordinate-wise arithmetic mod p.
    """

    def __init__(self, tower: Tower):
        self.tower = tower
        self.p = tower.params.p
        self.n = tower.params.dim_p
        self.v = tower.params.v
        self.sz1 = tower.f1.size
        self.sz2 = tower.f2.size
        self._cache: dict = {}

    def index_of_pair(self, pair: tuple[int, int]) -> int:
        i, j = pair
        a = 0 if i < 0 else self.tower.f1.antilog[i]
        b = 0 if j < 0 else self.tower.f2.antilog[j]
        return a + self.sz1 * b

    def pair_of_index(self, g: int) -> tuple[int, int]:
        a, b = g % self.sz1, g // self.sz1
        return (self.tower.f1.dlog[a], self.tower.f2.dlog[b])

    def indices_of(self, pds: PdsSet) -> np.ndarray:
        anti1 = self.tower.f1.antilog_array()
        anti2 = self.tower.f2.antilog_array()
        arr = np.array(sorted(pds.elements), dtype=np.int64)
        a = np.where(arr[:, 0] < 0, 0, anti1[arr[:, 0]])
        b = np.where(arr[:, 1] < 0, 0, anti2[arr[:, 1]])
        return np.sort(a + self.sz1 * b)

    def digits_all(self) -> np.ndarray:
        """(v, n) base-p digits of every group index."""
        d = self._cache.get("digits")
        if d is None:
            vals = np.arange(self.v, dtype=np.int64)
            d = np.empty((self.v, self.n), dtype=np.int64)
            for i in range(self.n):
                d[:, i] = (vals // self.p**i) % self.p
            d.setflags(write=False)
            self._cache["digits"] = d
        return d

    def weights(self) -> np.ndarray:
        w = self._cache.get("weights")
        if w is None:
            w = self.p ** np.arange(self.n, dtype=np.int64)
            w.setflags(write=False)
            self._cache["weights"] = w
        return w

    def neg_perm(self) -> np.ndarray:
        perm = self._cache.get("neg")
        if perm is None:
            perm = ((self.p - self.digits_all()) % self.p) @ self.weights()
            perm.setflags(write=False)
            self._cache["neg"] = perm
        return perm

    # -- trace pairing between group elements and characters --

    def _gram(self, which: int) -> tuple[np.ndarray, np.ndarray]:
        key = ("gram", which)
        out = self._cache.get(key)
        if out is None:
            fld = self.tower.f1 if which == 1 else self.tower.f2
            tr = fld.trace_table()
            n = fld.n
            g = np.zeros((n, n), dtype=np.int64)
            for i in range(n):
                for k in range(n):
                    g[i, k] = tr[fld.mul_packed(fld._pows[i], fld._pows[k])]
            out = (g, modp.inverse(g, self.p))
            self._cache[key] = out
        return out

    def _upack(self, which: int) -> np.ndarray:
        """For every packed coordinate value a, the packed digit vector of
        (Tr(a x^i))_i, i.e. the character label of a in dot-index space."""
        key = ("upack", which)
        u = self._cache.get(key)
        if u is None:
            fld = self.tower.f1 if which == 1 else self.tower.f2
            gram, _ = self._gram(which)
            digs = fld.digit_matrix()
            pw = self.p ** np.arange(fld.n, dtype=np.int64)
            u = ((digs @ gram) % self.p) @ pw
            u.setflags(write=False)
            self._cache[key] = u
        return u

    def char_index_table(self) -> np.ndarray:
        """Group index of (a, b) -> dot-space index of the character
        zeta^(Tr1(a x) + Tr2(b y)).  A permutation of [0, v)."""
        t = self._cache.get("chidx")
        if t is None:
            u1, u2 = self._upack(1), self._upack(2)
            g = np.arange(self.v, dtype=np.int64)
            t = u1[g % self.sz1] + self.sz1 * u2[g // self.sz1]
            if len(np.unique(t)) != self.v:
                raise InternalError("trace pairing is degenerate")
            t.setflags(write=False)
            self._cache["chidx"] = t
        return t

    def pair_of_char_index(self, chidx: int) -> tuple[int, int]:
        """Inverse of the trace pairing: character dot-index -> (a, b) pair."""
        inv = self._cache.get("chinv")
        if inv is None:
            t = self.char_index_table()
            inv = np.empty(self.v, dtype=np.int64)
            inv[t] = np.arange(self.v, dtype=np.int64)
            inv.setflags(write=False)
            self._cache["chinv"] = inv
        return self.pair_of_index(int(inv[chidx]))


def _chunk_ranges(total: int, chunk: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]


def _run_chunks(fn, ranges, threads: int):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, ranges))
    return [fn(r) for r in ranges]


@dataclass
class DifferenceProfile:
    """c(g) = number of ordered pairs of distinct set elements with
    difference g, for every group index g."""

    counts: np.ndarray
    k: int
    v: int

    def total(self) -> int:
        return int(self.counts.sum())


def difference_profile(
    pds: PdsSet,
    indexer: GroupIndexer,
    cap: int = DEFAULT_PROFILE_CAP,
    threads: int = 0,
) -> DifferenceProfile:
    v, p = indexer.v, indexer.p
    if v > cap:
        raise CapExceededError("profile oracle: v=%d above cap %d" % (v, cap))
    idx = indexer.indices_of(pds)
    k = len(idx)
    digits = indexer.digits_all()[idx]
    weights = indexer.weights()
    chunk = max(1, CHUNK_TARGET_BYTES // (max(k, 1) * indexer.n * 8))
    ranges = _chunk_ranges(k, chunk)

    def one(rng):
        lo, hi = rng
        diff = (digits[lo:hi, None, :] - digits[None, :, :]) % p
        return np.bincount((diff @ weights).ravel(), minlength=v)

    counts = np.zeros(v, dtype=np.int64)
    for part in _run_chunks(one, ranges, threads):
        counts += part
    if counts[0] != k:
        raise InternalError("self-differences must account for index 0 exactly")
    counts[0] = 0
    return DifferenceProfile(counts, k, v)


@dataclass
class CharacterSpectrum:
    """Exact character sums for all v characters, as root-of-unity counts.

    ``counts[g, j]`` is the number of set elements x with <g, x> = j; the
    sum is a rational integer exactly when counts over j = 1..p-1 agree,
    and then equals counts[g, 0] - counts[g, 1].
    """

    counts: np.ndarray
    values: np.ndarray
    rational: np.ndarray
    k: int

    @property
    def v(self) -> int:
        return self.counts.shape[0]

    def nonprincipal_value_counts(self) -> dict[int, int]:
        vals = self.values[1:][self.rational[1:]]
        uniq, cnt = np.unique(vals, return_counts=True)
        return {int(a): int(b) for a, b in zip(uniq, cnt)}

    def all_rational(self) -> bool:
        return bool(self.rational.all())


def character_spectrum(
    pds: PdsSet,
    indexer: GroupIndexer,
    cap: int = DEFAULT_SPECTRUM_CAP,
) -> CharacterSpectrum:
    v, p, n = indexer.v, indexer.p, indexer.n
    if v > cap:
        raise CapExceededError("spectrum oracle: v=%d above cap %d" % (v, cap))
    idx = indexer.indices_of(pds)
    counts = np.zeros((v, p), dtype=np.int64)
    counts[idx, 0] = 1
    for i in range(n):
        block = p**i
        high = v // (block * p)
        a4 = counts.reshape(high, p, block, p)
        out = np.empty_like(a4)
        for c in range(p):
            acc = np.zeros((high, block, p), dtype=np.int64)
            for d in range(p):
                acc += np.roll(a4[:, d], shift=(c * d) % p, axis=-1)
            out[:, c] = acc
        counts = out.reshape(v, p)
    if p == 2:
        rational = np.ones(v, dtype=bool)
    else:
        rational = (counts[:, 1:] == counts[:, 1:2]).all(axis=1)
    values = counts[:, 0] - counts[:, 1]
    if counts[0, 0] != len(idx) or counts[0, 1:].any():
        raise InternalError("principal character must sum to |D|")
    return CharacterSpectrum(counts, values, rational, len(idx))


@dataclass
class CheckItem:
    name: str
    passed: bool
    skipped: str | None = None
    details: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.skipped is not None:
            return "skip"
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        out = {"name": self.name, "status": self.status, "details": self.details}
        if self.skipped is not None:
            out["reason"] = self.skipped
        if self.witnesses:
            out["witnesses"] = self.witnesses
        return out


def _skip(name: str, reason: str) -> CheckItem:
    return CheckItem(name, True, skipped=reason)


def expected_params(pds: PdsSet) -> pm.SrgParams:
    """Closed-form parameters for the set's provenance; the claim on the
    set itself is never used."""
    tp = pds.params
    if pds.provenance == "primal":
        return tp.primal_params()
    if pds.provenance == "dual":
        return tp.dual_params()
    if pds.provenance == "delsarte-dual":
        return pm.delsarte_dual_params(tp.primal_params())
    if pds.provenance == "complement":
        return pm.complement_params(tp.primal_params())
    if pds.provenance == "complement-dual":
        return pm.complement_params(tp.dual_params())
    raise ValueError("unknown provenance %r" % pds.provenance)


def check_pds(
    pds: PdsSet,
    indexer: GroupIndexer,
    profile: DifferenceProfile,
    expected: pm.SrgParams | None = None,
) -> CheckItem:
    """Exact difference-count test plus the parameter identity."""
    exp = expected_params(pds) if expected is None else expected
    details: dict = {"expected": exp.as_dict()}
    witnesses: list = []
    ok = True
    if not exp.identity_holds():
        return CheckItem("pds-differences", False, details={"reason": "identity fails"})
    if pds.claimed != exp:
        ok = False
        details["claim_mismatch"] = pds.claimed.as_dict()
    idx = indexer.indices_of(pds)
    if len(idx) != exp.k:
        ok = False
        details["size"] = len(idx)
    member = np.zeros(indexer.v, dtype=bool)
    member[idx] = True
    c = profile.counts
    bad_in = np.flatnonzero(member & (c != exp.lam))
    off = ~member
    off[0] = False
    bad_out = np.flatnonzero(off & (c != exp.mu))
    sym_bad = np.flatnonzero(c != c[indexer.neg_perm()])
    if profile.total() != exp.k * (exp.k - 1):
        ok = False
        details["total"] = profile.total()
    for g in bad_in[:5]:
        witnesses.append({"element": list(indexer.pair_of_index(int(g))), "count": int(c[g]), "want": exp.lam})
    for g in bad_out[:5]:
        witnesses.append({"element": list(indexer.pair_of_index(int(g))), "count": int(c[g]), "want": exp.mu})
    if len(bad_in) or len(bad_out) or len(sym_bad):
        ok = False
        details["bad_inside"] = int(len(bad_in))
        details["bad_outside"] = int(len(bad_out))
        details["asymmetric"] = int(len(sym_bad))
    return CheckItem("pds-differences", ok, details=details, witnesses=witnesses)


def check_two_valued(
    spectrum: CharacterSpectrum,
    expected: pm.SrgParams,
) -> CheckItem:
    """Nonprincipal sums must take exactly the two predicted values with
    the predicted multiplicities."""
    theta, tau = expected.eigenvalues
    kplus = pm.delsarte_dual_params(expected).k
    details = {
        "values": [theta, tau],
        "multiplicities": {"positive": kplus, "negative": expected.v - 1 - kplus},
    }
    witnesses: list = []
    ok = True
    if not spectrum.all_rational():
        ok = False
        bad = np.flatnonzero(~spectrum.rational)[:5]
        witnesses.extend({"character": int(b), "irrational": True} for b in bad)
    got = spectrum.nonprincipal_value_counts()
    want = {theta: kplus, tau: expected.v - 1 - kplus}
    want = {a: b for a, b in want.items() if b}
    if got != want:
        ok = False
        details["observed"] = {str(a): b for a, b in sorted(got.items())}
    if int(spectrum.values[0]) != expected.k:
        ok = False
        details["principal"] = int(spectrum.values[0])
    # orthogonality: nonprincipal sums add to -|D| since 0 is not in D
    if int(spectrum.values[1:][spectrum.rational[1:]].sum()) != -expected.k and ok:
        ok = False
        details["orthogonality"] = "failed"
    return CheckItem("two-valued-spectrum", ok, details=details, witnesses=witnesses)


def check_case_split(
    pds: PdsSet,
    tower: Tower,
    indexer: GroupIndexer,
    spectrum: CharacterSpectrum,
    R: Subspace,
) -> CheckItem:
    """Verify which characters attain which value, character by character.

    For the primal set the character labelled (a, b) attains the negative
    value exactly when (a != 0, b = 0) or both coordinates are nonzero and
    the norm ratio falls in R-perp; dually for the dual set, with the
    positive value on (a != 0, b = 0) or ratio in R.
    """
    if pds.provenance not in ("primal", "dual", "delsarte-dual"):
        return _skip("case-split", "only defined for primal/dual provenance")
    exp = expected_params(pds)
    theta, tau = exp.eigenvalues
    g1, g2 = tower.norm_dlogs(1), tower.norm_dlogs(2)
    ordm = tower.mid.order
    if pds.provenance == "primal":
        in_space = tower._ratio_membership(dual_subspace(R))
        special_value = tau  # (a != 0, b = 0) and ratio-in-space characters
    else:
        in_space = tower._ratio_membership(R)
        special_value = theta
    other_value = theta if special_value == tau else tau
    # predicted values indexed by character dot-index
    chidx = indexer.char_index_table()
    anti1 = tower.f1.antilog_array()
    anti2 = tower.f2.antilog_array()
    predicted = np.full(indexer.v, other_value, dtype=np.int64)
    # principal character
    predicted[0] = exp.k
    # a != 0, b = 0
    ga = chidx[anti1]
    predicted[ga] = special_value
    # both nonzero: ratio test
    mask = in_space[(g2[None, :] - g1[:, None]) % ordm]
    grid = chidx[anti1[:, None] + indexer.sz1 * anti2[None, :]]
    predicted[grid[mask]] = special_value
    ok = bool(spectrum.rational.all()) and bool((spectrum.values == predicted).all())
    witnesses = []
    if not ok:
        bad = np.flatnonzero(spectrum.values != predicted)[:5]
        for b in bad:
            witnesses.append(
                {
                    "character": list(indexer.pair_of_char_index(int(b))),
                    "value": int(spectrum.values[b]),
                    "want": int(predicted[b]),
                }
            )
    counts = {
        "special": int((predicted == special_value).sum()),
        "other": int((predicted == other_value).sum()),
    }
    return CheckItem("case-split", ok, details=counts, witnesses=witnesses)


def srg_common_neighbors(
    pds: PdsSet,
    indexer: GroupIndexer,
    cap: int = DEFAULT_NEIGHBOR_CAP,
    threads: int = 0,
) -> CheckItem:
    """Common-neighbor counts of (0, g) in the Cayley graph, computed from
    the membership indicator alone; vertex-transitivity makes the base
    vertex exhaustive.  Full pass up to the cap, deterministic sample above."""
    v, p = indexer.v, indexer.p
    exp = expected_params(pds)
    idx = indexer.indices_of(pds)
    member = np.zeros(v, dtype=np.int64)
    member[idx] = 1
    sampled = v > cap
    if sampled:
        stride = (v + cap - 1) // cap
        targets = np.arange(1, v, stride, dtype=np.int64)
    else:
        targets = np.arange(1, v, dtype=np.int64)
    digits = indexer.digits_all()
    weights = indexer.weights()
    chunk = max(1, CHUNK_TARGET_BYTES // (v * indexer.n * 8))
    ranges = _chunk_ranges(len(targets), chunk)

    def one(rng):
        lo, hi = rng
        gs = targets[lo:hi]
        # indices of h - g for all h, per g in the chunk
        diff = (digits[None, :, :] - digits[gs][:, None, :]) % p
        perm = diff @ weights
        return member[perm] @ member

    cn = np.concatenate(_run_chunks(one, ranges, threads))
    want = np.where(member[targets] == 1, exp.lam, exp.mu)
    bad = np.flatnonzero(cn != want)
    ok = len(bad) == 0 and int(member.sum()) == exp.k
    witnesses = [
        {
            "vertex": list(indexer.pair_of_index(int(targets[b]))),
            "count": int(cn[b]),
            "want": int(want[b]),
        }
        for b in bad[:5]
    ]
    details = {
        "pairs_checked": int(len(targets)),
        "degree": int(member.sum()),
        "sampled": sampled,
    }
    return CheckItem("common-neighbors", ok, details=details, witnesses=witnesses)


def eigen_check(expected: pm.SrgParams, spectrum: CharacterSpectrum) -> CheckItem:
    """The two observed sums must be the roots of
    x^2 + (mu - lam) x + (mu - k)."""
    obs = sorted(spectrum.nonprincipal_value_counts())
    ok = spectrum.all_rational()
    details = {"observed": obs}
    for x in obs:
        if x * x + (expected.mu - expected.lam) * x + (expected.mu - expected.k) != 0:
            ok = False
            details["not_a_root"] = x
    theta, tau = expected.eigenvalues
    if set(obs) != {theta, tau}:
        ok = False
        details["expected"] = [theta, tau]
    return CheckItem("eigenvalues", ok, details=details)


def clique_certificate(pds: PdsSet, tower: Tower) -> CheckItem:
    """Certify the designated maximum clique and the emptiness assertion
    that bounds every clique by distinct coordinates."""
    if pds.provenance not in ("primal", "dual", "delsarte-dual"):
        return _skip("clique", "only defined for primal/dual provenance")
    ord1, ord2 = tower.f1.order, tower.f2.order
    elems = pds.elements
    if pds.provenance == "primal":
        clique_ok = all((i, -1) in elems for i in range(ord1))
        empty_ok = not any((-1, j) in elems for j in range(ord2))
        size = tower.f1.size
    else:
        clique_ok = all((-1, j) in elems for j in range(ord2))
        empty_ok = not any((i, -1) in elems for i in range(ord1))
        size = tower.f2.size
    details = {"clique_size": size, "differences_inside": clique_ok, "bound_holds": empty_ok}
    return CheckItem("clique", clique_ok and empty_ok, details=details)


def delsarte_dual(
    pds: PdsSet,
    indexer: GroupIndexer,
    spectrum: CharacterSpectrum | None = None,
    cap: int = DEFAULT_SPECTRUM_CAP,
) -> PdsSet:
    """Collect the characters attaining the positive value and pull them
    back to group elements through the trace pairing."""
    exp = expected_params(pds)
    if not pm.is_perfect_square(exp.delta):
        raise DeltaNotSquareError("delta is not a perfect square")
    if spectrum is None:
        spectrum = character_spectrum(pds, indexer, cap=cap)
    if not spectrum.all_rational():
        raise SpectrumNotTwoValuedError("spectrum has irrational sums")
    vals = set(spectrum.nonprincipal_value_counts())
    theta, tau = exp.eigenvalues
    if not vals <= {theta, tau}:
        raise SpectrumNotTwoValuedError("spectrum values %s unexpected" % sorted(vals))
    sel = np.flatnonzero(spectrum.values == theta)
    sel = sel[sel != 0]
    pairs = frozenset(indexer.pair_of_char_index(int(g)) for g in sel)
    claimed = pm.delsarte_dual_params(exp)
    if len(pairs) != claimed.k:
        raise InternalError("dual has size %d, expected %d" % (len(pairs), claimed.k))
    if pds.provenance not in DELSARTE_TAG:
        raise ValueError("cannot dualize provenance %r" % pds.provenance)
    return PdsSet(
        pds.params, DELSARTE_TAG[pds.provenance], pairs, claimed, pds.subspace_rows
    )


# -- graph export --


def cayley_edges(pds: PdsSet, indexer: GroupIndexer, cap: int = DEFAULT_PROFILE_CAP) -> np.ndarray:
    """Undirected edge array (E, 2), each edge once with the smaller index
    first, sorted lexicographically."""
    v, p = indexer.v, indexer.p
    if v > cap:
        raise CapExceededError("graph export: v=%d above cap %d" % (v, cap))
    idx = indexer.indices_of(pds)
    digits = indexer.digits_all()
    weights = indexer.weights()
    us, ws = [], []
    for d in idx:
        w = ((digits + digits[d]) % p) @ weights
        u = np.arange(v, dtype=np.int64)
        keep = u < w
        us.append(u[keep])
        ws.append(w[keep])
    u = np.concatenate(us)
    w = np.concatenate(ws)
    order = np.lexsort((w, u))
    edges = np.stack([u[order], w[order]], axis=1)
    if 2 * len(edges) != v * len(idx):
        raise InternalError("edge count must be v k / 2")
    return edges


@dataclass
class SrgCheckReport:
    items: list[CheckItem] = field(default_factory=list)
    caps: Caps = field(default_factory=Caps)
    meta: dict = field(default_factory=dict)

    def add(self, item: CheckItem) -> None:
        self.items.append(item)

    @property
    def ok(self) -> bool:
        return all(it.passed for it in self.items if it.skipped is None)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "meta": self.meta,
            "caps": self.caps.as_dict(),
            "checks": [it.as_dict() for it in self.items],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        width = max((len(it.name) for it in self.items), default=10) + 2
        lines = []
        for it in self.items:
            status = it.status.upper()
            extra = ""
            if it.skipped is not None:
                extra = "  (%s)" % it.skipped
            elif not it.passed and it.witnesses:
                extra = "  witness: %s" % json.dumps(it.witnesses[0], sort_keys=True)
            lines.append("%s%s%s" % (it.name.ljust(width), status, extra))
        lines.append("RESULT: %s" % ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines) + "\n"


def verify_pds(
    pds: PdsSet,
    tower: Tower,
    R: Subspace | None = None,
    caps: Caps = Caps(),
    threads: int = 0,
) -> SrgCheckReport:
    """Run every oracle that fits under the caps and collect a report."""
    indexer = GroupIndexer(tower)
    exp = expected_params(pds)
    report = SrgCheckReport(caps=caps)
    report.meta = {
        "tower": tower.params.as_dict(),
        "provenance": pds.provenance,
        "degenerate": pds.params.degenerate,
        "claimed": pds.claimed.as_dict(),
        "expected": exp.as_dict(),
        "k": pds.k,
    }
    v = tower.params.v
    if v <= caps.profile:
        profile = difference_profile(pds, indexer, cap=caps.profile, threads=threads)
        report.add(check_pds(pds, indexer, profile, exp))
    else:
        report.add(_skip("pds-differences", "cap"))
    spectrum = None
    if v <= caps.spectrum:
        spectrum = character_spectrum(pds, indexer, cap=caps.spectrum)
        report.add(check_two_valued(spectrum, exp))
        if R is not None and pds.provenance in ("primal", "dual", "delsarte-dual"):
            report.add(check_case_split(pds, tower, indexer, spectrum, R))
        else:
            report.add(_skip("case-split", "no subspace supplied"))
        report.add(eigen_check(exp, spectrum))
    else:
        report.add(_skip("two-valued-spectrum", "cap"))
        report.add(_skip("case-split", "cap"))
        report.add(_skip("eigenvalues", "cap"))
    report.add(clique_certificate(pds, tower))
    if v <= caps.profile:
        report.add(srg_common_neighbors(pds, indexer, cap=caps.neighbor, threads=threads))
    else:
        report.add(_skip("common-neighbors", "cap"))
    return report
