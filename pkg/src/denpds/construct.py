"""Construction of both set families inside a two-field tower.

The ambient group is G = (K1 x K2, +) for K1 = GF(q^(m*ell)) and
K2 = GF(q^(m*(ell+1))), realized over a concrete middle field GF(q^m) that
embeds into both.  Set elements are stored as pairs (i, j) of discrete
logs with respect to the two deterministic field generators; -1 encodes
the zero coordinate.

Two independent routes build the primal set:

* ``build_D``: the norm-ratio membership test.  Both coordinate norms are
  pulled back through the subfield embeddings into the middle field and
  their ratio is tested against the materialized subspace R.
* ``build_D_cosets``: the multiplicative-coset union over compatible
  generators alpha, beta whose norms agree on a common middle-field
  generator gamma.

Their set equality is a core oracle and is never assumed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from . import modp, params as pm
from .errors import (
    FieldMismatchError,
    InternalError,
    NotASubspaceError,
    TableCapExceededError,
)
from .ff import DEFAULT_TABLE_CAP, FieldElement, FiniteField, build_field, embed, is_prime

PairSet = frozenset

# How the family tag of a set transforms under complementation and under
# the character-group dual.  The four families are closed under both maps:
# the complement of the rank-r dual family is the rank-(m-r) primal family
# realized at the same stored parameters, and vice versa.
COMPLEMENT_TAG = {
    "primal": "complement",
    "complement": "primal",
    "dual": "complement-dual",
    "delsarte-dual": "complement-dual",
    "complement-dual": "dual",
}
DELSARTE_TAG = {
    "primal": "delsarte-dual",
    "dual": "primal",
    "delsarte-dual": "primal",
    "complement": "complement-dual",
    "complement-dual": "complement",
}


@dataclass(frozen=True)
class TowerParams:
    """The tuple (p, s, m, ell, r) plus everything derived from it."""

    p: int
    s: int
    m: int
    ell: int
    r: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError("p must be prime")
        if self.s < 1 or self.m < 1 or self.ell < 1:
            raise ValueError("s, m, ell must be >= 1")
        if not 0 <= self.r <= self.m:
            raise ValueError("need 0 <= r <= m")

    @property
    def q(self) -> int:
        return self.p**self.s

    @property
    def e(self) -> int:
        return (self.q**self.m - 1) // (self.q - 1)

    @property
    def deg_base(self) -> int:
        return self.s

    @property
    def deg_mid(self) -> int:
        return self.s * self.m

    @property
    def deg1(self) -> int:
        return self.s * self.m * self.ell

    @property
    def deg2(self) -> int:
        return self.s * self.m * (self.ell + 1)

    @property
    def dim_p(self) -> int:
        return self.s * self.m * (2 * self.ell + 1)

    @property
    def dim_q(self) -> int:
        return self.m * (2 * self.ell + 1)

    @property
    def v(self) -> int:
        return self.p**self.dim_p

    @property
    def degenerate(self) -> bool:
        return self.r in (0, self.m)

    def primal_params(self) -> pm.SrgParams:
        return pm.denniston_params(self.q, self.m, self.ell, self.r)

    def dual_params(self) -> pm.SrgParams:
        return pm.dual_denniston_params(self.q, self.m, self.ell, self.r)

    def spectrum_values(self) -> tuple[int, int]:
        """(positive, negative) nonprincipal character values of the primal set."""
        q, m, ell, r = self.q, self.m, self.ell, self.r
        pos = pm.exact_div((q**m - q**r) * (q ** (m * ell) - 1), q**m - 1)
        neg = -pm.exact_div((q**r - 1) * (q ** (m * (ell + 1)) - 1), q**m - 1) - 1
        return pos, neg

    def as_dict(self) -> dict:
        return {"p": self.p, "s": self.s, "m": self.m, "ell": self.ell, "r": self.r}

    def with_r(self, r: int) -> "TowerParams":
        return replace(self, r=r)


@dataclass(frozen=True)
class Subspace:
    """A GF(q)-subspace of the middle field, fully materialized."""

    mid: FiniteField
    base: FiniteField
    basis: tuple[int, ...]  # packed middle-field elements, GF(q)-independent
    elements: frozenset[int]  # packed
    dim: int  # over GF(q)

    def contains_packed(self, packed: int) -> bool:
        return packed in self.elements

    def basis_coeff_rows(self) -> list[list[int]]:
        return [list(self.mid.digits(b)) for b in self.basis]


def _base_scalar_images(mid: FiniteField, base: FiniteField) -> list[int]:
    e = embed(base, mid)
    return [e.apply_packed(s) for s in range(base.size)]


def subspace_from_basis(
    mid: FiniteField, base: FiniteField, basis_packed: list[int]
) -> Subspace:
    """Span the given vectors over GF(q); reject dependent input."""
    scalars = _base_scalar_images(mid, base)
    span = {0}
    for b in basis_packed:
        scaled = [mid.mul_packed(s, b) for s in scalars]
        span = {mid.add_packed(x, sc) for x in span for sc in scaled}
    q = base.size
    if len(span) != q ** len(basis_packed):
        raise NotASubspaceError("basis vectors are GF(q)-dependent")
    return Subspace(mid, base, tuple(basis_packed), frozenset(span), len(basis_packed))


def subspace_from_elements(
    mid: FiniteField, base: FiniteField, elements
) -> Subspace:
    """Verify closure of an explicit element set and extract a GF(q)-basis."""
    elems = frozenset(int(x) for x in elements)
    if 0 not in elems:
        raise NotASubspaceError("subspace must contain zero")
    q = base.size
    dim_float = math.log(len(elems), q)
    dim = round(dim_float)
    if q**dim != len(elems):
        raise NotASubspaceError("cardinality %d is not a power of q" % len(elems))
    scalars = _base_scalar_images(mid, base)
    for x in elems:
        for y in elems:
            if mid.add_packed(x, y) not in elems:
                raise NotASubspaceError("not closed under addition")
        for s in scalars:
            if mid.mul_packed(s, x) not in elems:
                raise NotASubspaceError("not closed under GF(q) scaling")
    # greedy GF(q)-basis
    basis: list[int] = []
    span = {0}
    for x in sorted(elems):
        if x in span or x == 0:
            continue
        basis.append(x)
        scaled = [mid.mul_packed(s, x) for s in scalars]
        span = {mid.add_packed(a, sc) for a in span for sc in scaled}
        if len(span) == len(elems):
            break
    if len(basis) != dim:
        raise InternalError("basis extraction failed")
    return Subspace(mid, base, tuple(basis), elems, dim)


def dual_subspace(R: Subspace) -> Subspace:
    """R-perp under (x, y) -> Tr(x y) into GF(p), via a kernel solve."""
    mid, base = R.mid, R.base
    p, n, s = mid.p, mid.n, base.n
    tr = mid.trace_table()
    # GF(p)-spanning rows of R: base polynomial basis scalars times basis
    rows = []
    base_emb = embed(base, mid)
    for b in R.basis:
        for t in range(s):
            y = mid.mul_packed(base_emb.apply_packed(base._pows[t]), b)
            rows.append([int(tr[mid.mul_packed(mid._pows[i], y)]) for i in range(n)])
    if not rows:  # R = {0}: the dual is everything
        return subspace_from_elements(mid, base, range(mid.size))
    kernel = modp.kernel_basis(np.array(rows, dtype=np.int64), p)
    elems = {0}
    for vec in kernel:
        packed = mid.pack(int(d) for d in vec)
        elems = {mid.add_packed(x, mid.mul_packed(c, packed)) for x in elems for c in range(p)}
        # scalar c here means the prime-field constant c
    out = subspace_from_elements(mid, base, elems)
    expected_dim_p = s * (R.mid.n // s - R.dim)
    if len(kernel) != expected_dim_p:
        raise InternalError("dual space has wrong GF(p)-dimension")
    return out


@dataclass(frozen=True)
class CompatiblePrimitives:
    """Generators alpha, beta of the two big fields whose norms land on one
    middle-field generator gamma."""

    alpha: FieldElement  # = K1's deterministic generator
    beta: FieldElement  # = K2's generator raised to beta_adjust
    gamma: FieldElement  # middle-field element, pullback of both norms
    beta_adjust: int
    gamma_exp: int  # dlog of gamma w.r.t. the middle field's own generator


@dataclass(frozen=True)
class PdsSet:
    """A candidate partial difference set with its provenance."""

    params: TowerParams
    provenance: str  # primal | dual | complement | delsarte-dual
    elements: PairSet
    claimed: pm.SrgParams
    subspace_rows: tuple = ()  # GF(p) coefficient rows of the R basis used

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def degenerate(self) -> bool:
        return self.params.degenerate

    def sorted_elements(self) -> list[tuple[int, int]]:
        return sorted(self.elements)

    def to_json_dict(self, tower: "Tower | None" = None) -> dict:
        tw = tower if tower is not None else Tower(self.params)
        return {
            "type": "pds-set",
            "version": 1,
            "tower": self.params.as_dict(),
            "provenance": self.provenance,
            "degenerate": self.params.degenerate,
            "claimed": self.claimed.as_dict(),
            "fields": {
                "base": tw.base.describe(),
                "middle": tw.mid.describe(),
                "left": tw.f1.describe(),
                "right": tw.f2.describe(),
            },
            "pairing": "zeta_p^(Tr1(a x) + Tr2(b y))",
            "subspace_rows": [list(r) for r in self.subspace_rows],
            "elements": [list(e) for e in self.sorted_elements()],
        }

    def to_json(self, tower: "Tower | None" = None) -> str:
        return json.dumps(self.to_json_dict(tower), sort_keys=True, indent=2) + "\n"


def pds_from_json_dict(doc: dict, table_cap: int = DEFAULT_TABLE_CAP) -> tuple["Tower", PdsSet]:
    tp = TowerParams(**doc["tower"])
    tower = Tower(tp, table_cap=table_cap)
    described = {
        "base": tower.base.describe(),
        "middle": tower.mid.describe(),
        "left": tower.f1.describe(),
        "right": tower.f2.describe(),
    }
    if doc.get("fields") != described:
        raise FieldMismatchError(
            "set file uses a different field model than this build constructs"
        )
    elems = frozenset((int(a), int(b)) for a, b in doc["elements"])
    for a, b in elems:
        if not (-1 <= a < tower.f1.order and -1 <= b < tower.f2.order):
            raise ValueError("element exponents out of range")
    c = doc["claimed"]
    claimed = pm.SrgParams(c["v"], c["k"], c["lambda"], c["mu"])
    pds = PdsSet(
        tp,
        doc["provenance"],
        elems,
        claimed,
        tuple(tuple(r) for r in doc.get("subspace_rows", [])),
    )
    return tower, pds


class Tower:
    """All fields, embeddings and norm tables for one parameter tuple."""

    def __init__(self, tp: TowerParams, table_cap: int = DEFAULT_TABLE_CAP):
        if tp.v > table_cap:
            raise TableCapExceededError(
                "group of order %d exceeds the table cap %d" % (tp.v, table_cap)
            )
        self.params = tp
        self.base = build_field(tp.p, tp.deg_base, table_cap)
        self.mid = build_field(tp.p, tp.deg_mid, table_cap)
        self.f1 = build_field(tp.p, tp.deg1, table_cap)
        self.f2 = build_field(tp.p, tp.deg2, table_cap)
        self.emb_mid1 = embed(self.mid, self.f1)
        self.emb_mid2 = embed(self.mid, self.f2)
        self._norm_dlogs: dict[int, np.ndarray] = {}
        self._compatible: CompatiblePrimitives | None = None

    # -- compatible generators --

    @property
    def compatible(self) -> CompatiblePrimitives:
        if self._compatible is None:
            self._compatible = self._make_compatible()
        return self._compatible

    def _make_compatible(self) -> CompatiblePrimitives:
        tp = self.params
        ord1, ord2, ordm = self.f1.order, self.f2.order, self.mid.order
        t1, t2 = ord1 // ordm, ord2 // ordm
        alpha = self.f1.primitive
        gamma_packed = self.emb_mid1.preimage_packed(self.f1.antilog[t1 % ord1])
        if gamma_packed is None:
            raise InternalError("norm of alpha left the middle-field copy")
        g = self.mid.dlog[gamma_packed]
        if math.gcd(g, ordm) != 1:
            raise InternalError("norm of a generator must generate the subfield")
        c_packed = self.emb_mid2.preimage_packed(self.f2.antilog[t2 % ord2])
        if c_packed is None:
            raise InternalError("norm of beta0 left the middle-field copy")
        c = (self.mid.dlog[c_packed] * pow(g, -1, ordm)) % ordm
        d = pow(c, -1, ordm)
        if d == 0:
            d = ordm
        while math.gcd(d, ord2) != 1:
            d += ordm
            if d >= ord2:
                raise InternalError("no compatible exponent below the field order")
        beta = self.f2.element(d)
        # postconditions: beta generates, and both norms pull back to gamma
        if math.gcd(d, ord2) != 1:
            raise InternalError("beta is not a generator")
        nb = self.emb_mid2.preimage_packed(self.f2.antilog[(d * t2) % ord2])
        if nb != gamma_packed:
            raise InternalError("norm of beta does not match gamma")
        return CompatiblePrimitives(
            alpha=alpha,
            beta=beta,
            gamma=self.mid.from_packed(gamma_packed),
            beta_adjust=d,
            gamma_exp=g,
        )

    # -- norm pullback tables (middle-field dlogs, indexed by coordinate dlog) --

    def norm_dlogs(self, which: int) -> np.ndarray:
        """For coordinate field ``which`` (1 or 2): array over exponents i of
        dlog_mid(pullback(Norm(pi^i)))."""
        arr = self._norm_dlogs.get(which)
        if arr is None:
            big = self.f1 if which == 1 else self.f2
            emb = self.emb_mid1 if which == 1 else self.emb_mid2
            ordb, ordm = big.order, self.mid.order
            t = ordb // ordm
            base_packed = emb.preimage_packed(big.antilog[t % ordb])
            if base_packed is None:
                raise InternalError("norm left the middle-field copy")
            gexp = self.mid.dlog[base_packed]
            # Norm(pi^i) = (pi^t)^i pulls back to (gamma_which)^i
            arr = (np.arange(ordb, dtype=np.int64) * gexp) % ordm
            # route check on a couple of entries through the literal pullback
            for i in (0, 1, ordb // 2):
                lit = emb.preimage_packed(big.antilog[(i * t) % ordb])
                if lit is None or self.mid.dlog[lit] != int(arr[i]):
                    raise InternalError("norm pullback table mismatch")
            arr.setflags(write=False)
            self._norm_dlogs[which] = arr
        return arr

    def _ratio_membership(self, space: Subspace) -> np.ndarray:
        """Boolean array over middle-field dlogs t: antilog(t) in space."""
        ordm = self.mid.order
        out = np.zeros(ordm, dtype=bool)
        for t in range(ordm):
            out[t] = self.mid.antilog[t] in space.elements
        out.setflags(write=False)
        return out

    # -- subspace constructors --

    def default_subspace(self) -> Subspace:
        """Span of the first r powers of the middle field's own generator."""
        r = self.params.r
        if r == 0:
            return subspace_from_elements(self.mid, self.base, [0])
        basis = [self.mid.antilog[j % self.mid.order] for j in range(r)]
        return subspace_from_basis(self.mid, self.base, basis)

    def subspace_from_exponents(self, exps) -> Subspace:
        basis = [self.mid.antilog[e % self.mid.order] for e in exps]
        return subspace_from_basis(self.mid, self.base, basis)

    def subspace_from_coeff_rows(self, rows) -> Subspace:
        basis = [self.mid.pack(row) for row in rows]
        if any(b == 0 for b in basis):
            raise NotASubspaceError("zero vector cannot be a basis element")
        return subspace_from_basis(self.mid, self.base, basis)

    def index_set_T(self, R: Subspace) -> tuple[int, ...]:
        """T = { 0 <= i < e : gamma^i in R } for the construction gamma."""
        if R.mid is not self.mid:
            raise FieldMismatchError("subspace lives in a different field")
        tp = self.params
        g = self.compatible.gamma_exp
        ordm = self.mid.order
        T = tuple(
            i for i in range(tp.e) if self.mid.antilog[(g * i) % ordm] in R.elements
        )
        want = (tp.q ** R.dim - 1) // (tp.q - 1)
        if len(T) != want:
            raise InternalError("|T| = %d but expected %d" % (len(T), want))
        return T

    # -- set construction --

    def _check_r(self, R: Subspace | None) -> Subspace:
        R = self.default_subspace() if R is None else R
        if R.dim != self.params.r:
            raise NotASubspaceError(
                "subspace has rank %d but the tower expects r=%d"
                % (R.dim, self.params.r)
            )
        return R

    def _finish(self, pairs, provenance: str, claimed: pm.SrgParams, R: Subspace) -> PdsSet:
        elems = frozenset(pairs)
        if (-1, -1) in elems:
            raise InternalError("constructed set contains the identity")
        if len(elems) != claimed.k:
            raise InternalError(
                "constructed size %d but closed form says %d" % (len(elems), claimed.k)
            )
        pds = PdsSet(
            self.params,
            provenance,
            elems,
            claimed,
            tuple(tuple(row) for row in R.basis_coeff_rows()),
        )
        if not self.is_symmetric(pds):
            raise InternalError("constructed set is not inversion-symmetric")
        return pds

    def neg_pair(self, pair: tuple[int, int]) -> tuple[int, int]:
        i, j = pair
        if self.params.p == 2:
            return pair
        h1, h2 = self.f1.order // 2, self.f2.order // 2
        return (
            i if i < 0 else (i + h1) % self.f1.order,
            j if j < 0 else (j + h2) % self.f2.order,
        )

    def is_symmetric(self, pds: PdsSet) -> bool:
        if self.params.p == 2:
            return True
        return all(self.neg_pair(e) in pds.elements for e in pds.elements)

    def build_D(self, R: Subspace | None = None) -> PdsSet:
        """Norm-ratio construction of the primal set."""
        R = self._check_r(R)
        g1, g2 = self.norm_dlogs(1), self.norm_dlogs(2)
        in_R = self._ratio_membership(R)
        ordm = self.mid.order
        mask = in_R[(g2[None, :] - g1[:, None]) % ordm]
        pairs = [(int(i), int(j)) for i, j in np.argwhere(mask)]
        pairs.extend((i, -1) for i in range(self.f1.order))
        return self._finish(pairs, "primal", self.params.primal_params(), R)

    def build_D_cosets(self, R: Subspace | None = None) -> PdsSet:
        """Coset-union construction; independent of the norm-ratio route."""
        R = self._check_r(R)
        comp = self.compatible
        tp = self.params
        e = tp.e
        ord1, ord2 = self.f1.order, self.f2.order
        d = comp.beta_adjust
        T = self.index_set_T(R)
        size1, size2 = ord1 // e, ord2 // e
        pairs: list[tuple[int, int]] = []
        for i in range(e):
            left = [(i + e * u) % ord1 for u in range(size1)]
            right: set[int] = set()
            for t in T:
                base = i + t
                right.update((d * (base + e * w)) % ord2 for w in range(size2))
            pairs.extend((a, b) for a in left for b in right)
        pairs.extend((i, -1) for i in range(ord1))
        return self._finish(pairs, "primal", tp.primal_params(), R)

    def build_D_dual(self, R: Subspace | None = None) -> PdsSet:
        """Norm-ratio construction of the dual set (complement membership)."""
        R = self._check_r(R)
        Rperp = dual_subspace(R)
        g1, g2 = self.norm_dlogs(1), self.norm_dlogs(2)
        in_perp = self._ratio_membership(Rperp)
        ordm = self.mid.order
        mask = ~in_perp[(g2[None, :] - g1[:, None]) % ordm]
        pairs = [(int(i), int(j)) for i, j in np.argwhere(mask)]
        pairs.extend((-1, j) for j in range(self.f2.order))
        return self._finish(pairs, "dual", self.params.dual_params(), R)

    def complement(self, pds: PdsSet) -> PdsSet:
        full = {
            (i, j)
            for i in range(-1, self.f1.order)
            for j in range(-1, self.f2.order)
        }
        full.discard((-1, -1))
        elems = frozenset(full - pds.elements)
        claimed = pm.complement_params(pds.claimed)
        if pds.provenance not in COMPLEMENT_TAG:
            raise ValueError("cannot complement provenance %r" % pds.provenance)
        out = PdsSet(
            self.params, COMPLEMENT_TAG[pds.provenance], elems, claimed, pds.subspace_rows
        )
        if len(elems) != claimed.k:
            raise InternalError("complement has the wrong size")
        return out
