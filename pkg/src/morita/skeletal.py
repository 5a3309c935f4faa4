"""Skeletal data for unitary fusion, module and bimodule categories.

A bimodule category is specified by five sparse associator tensors. We index
them uniformly: an entry ``F[a, b, c, d; al, e, be; mu, f, nu]`` relates the
two ways of evaluating a three-strand diagram with outer labels ``(a, b, c)``
and total ``d``,

    left tree   ((a b) c) -> d   with inner edge e and vertex indices (al, be),
    right tree  (a (b c)) -> d   with inner edge f and vertex indices (mu, nu).

The five families differ only in which categories the strands live in:

    =======  ==============  =================================
    family   strand types    vertex spaces (r1, r2 | c1, c2)
    =======  ==============  =================================
    f0       C C C           cc cc | cc cc
    f1       C C M           cc cm | cm cm
    f2       C M D           cm md | md cm
    f3       M D D           md md | dd md
    f4       D D D           dd dd | dd dd
    =======  ==============  =================================

where ``cc`` is fusion in C, ``cm`` the left action of C on M, ``md`` the
right action of D on M, and ``dd`` fusion in D. Labels are dense integers
with the unit always 0; multiplicity indices are 0-based internally.

The inverse of an F-symbol is written with the same index layout and is
defined by sum_{mu,f,nu} F[..;al,e,be;mu,f,nu] Finv[..;al',e',be';mu,f,nu]
= delta. As a block matrix this means Finv = (F^{-1})^T.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InconsistentAction,
    MissingBlock,
    NonUnitalFusion,
    NumericalFailure,
    ShapeMismatch,
)

UNIT = 0

DEFAULT_TOL = 1e-9
DIM_TOL = 1e-12

# vertex-space kinds of (row1, row2, col1, col2) and categories of the inner
# edges e, f for each family
FAMILY_KINDS = {
    "f0": ("cc", "cc", "cc", "cc", "C", "C"),
    "f1": ("cc", "cm", "cm", "cm", "C", "M"),
    "f2": ("cm", "md", "md", "cm", "M", "M"),
    "f3": ("md", "md", "dd", "md", "M", "D"),
    "f4": ("dd", "dd", "dd", "dd", "D", "D"),
}

# strand types of the pentagon words and the families they exercise
WORD_TYPES = {
    "CCCC": ("C", "C", "C", "C"),
    "CCCM": ("C", "C", "C", "M"),
    "CCMD": ("C", "C", "M", "D"),
    "CMDD": ("C", "M", "D", "D"),
    "MDDD": ("M", "D", "D", "D"),
    "DDDD": ("D", "D", "D", "D"),
}

WORD_FAMILIES = {
    "CCCC": ("f0",),
    "CCCM": ("f0", "f1"),
    "CCMD": ("f1", "f2"),
    "CMDD": ("f2", "f3"),
    "MDDD": ("f3", "f4"),
    "DDDD": ("f4",),
}

_FUSE = {("C", "C"): "C", ("C", "M"): "M", ("M", "D"): "M", ("D", "D"): "D"}
_KIND = {("C", "C"): "cc", ("C", "M"): "cm", ("M", "D"): "md", ("D", "D"): "dd"}
_FAMILY_BY_TYPES = {
    ("C", "C", "C"): "f0",
    ("C", "C", "M"): "f1",
    ("C", "M", "D"): "f2",
    ("M", "D", "D"): "f3",
    ("D", "D", "D"): "f4",
}


class FContext:
    """Ranks and vertex-space dimensions backing the F-symbol index sets."""

    def __init__(self, fusion_c=None, left_act=None, right_act=None, fusion_d=None):
        self.fusion_c = fusion_c
        self.left_act = left_act
        self.right_act = right_act
        self.fusion_d = fusion_d
        self.ranks = {}
        if fusion_c is not None:
            self.ranks["C"] = fusion_c.shape[0]
        if left_act is not None:
            self.ranks["M"] = left_act.shape[1]
        elif right_act is not None:
            self.ranks["M"] = right_act.shape[0]
        if fusion_d is not None:
            self.ranks["D"] = fusion_d.shape[0]

    def rank(self, cat: str) -> int:
        return self.ranks[cat]

    def dim(self, kind: str, x: int, y: int, z: int) -> int:
        """Dimension of the vertex space of the given kind at labels (x, y, z)."""
        if kind == "cc":
            return int(self.fusion_c[x, y, z])
        if kind == "cm":
            return int(self.left_act[x, y, z])
        if kind == "md":
            return int(self.right_act[x, y, z])
        if kind == "dd":
            return int(self.fusion_d[x, y, z])
        raise ValueError(f"unknown vertex kind {kind!r}")


class FSymbols:
    """One sparse associator family with block assembly and per-block inverses.

    Entries are keyed by the full 10-tuple (a, b, c, d, al, e, be, mu, f, nu).
    An absent key inside a stored block is a structural zero; a block without
    any stored entry counts as missing.
    """

    def __init__(self, family: str, ctx: FContext, entries: dict | None = None):
        if family not in FAMILY_KINDS:
            raise ValueError(f"unknown F family {family!r}")
        self.family = family
        self.ctx = ctx
        self.entries = dict(entries or {})
        self._blocks: dict[tuple, tuple] = {}
        self._inv: dict[tuple, np.ndarray] = {}
        self._present = {k[:4] for k in self.entries}

    # -- index sets ---------------------------------------------------------

    def rows(self, a, b, c, d):
        k1, k2, _, _, e_cat, _ = FAMILY_KINDS[self.family]
        out = []
        for e in range(self.ctx.rank(e_cat)):
            n1 = self.ctx.dim(k1, a, b, e)
            if n1 == 0:
                continue
            n2 = self.ctx.dim(k2, e, c, d)
            for al in range(n1):
                for be in range(n2):
                    out.append((al, e, be))
        return out

    def cols(self, a, b, c, d):
        _, _, k3, k4, _, f_cat = FAMILY_KINDS[self.family]
        out = []
        for f in range(self.ctx.rank(f_cat)):
            n3 = self.ctx.dim(k3, b, c, f)
            if n3 == 0:
                continue
            n4 = self.ctx.dim(k4, a, f, d)
            for mu in range(n3):
                for nu in range(n4):
                    out.append((mu, f, nu))
        return out

    def upper_keys(self):
        """All (a, b, c, d) with at least one stored entry."""
        return sorted(self._present)

    def has_block(self, a, b, c, d) -> bool:
        return (a, b, c, d) in self._present

    # -- values -------------------------------------------------------------

    def entry(self, key) -> complex:
        return self.entries.get(tuple(key), 0.0 + 0.0j)

    def block(self, a, b, c, d):
        """Return (rows, cols, matrix) for one block; matrix is dense complex."""
        key = (a, b, c, d)
        cached = self._blocks.get(key)
        if cached is not None:
            return cached
        rows = self.rows(a, b, c, d)
        cols = self.cols(a, b, c, d)
        mat = np.zeros((len(rows), len(cols)), dtype=complex)
        ridx = {r: i for i, r in enumerate(rows)}
        cidx = {c: i for i, c in enumerate(cols)}
        for k, v in self.entries.items():
            if k[:4] != key:
                continue
            r = (k[4], k[5], k[6])
            c = (k[7], k[8], k[9])
            if r not in ridx or c not in cidx:
                raise ShapeMismatch(
                    f"{self.family} entry {k} lies outside the fusion-allowed block"
                )
            mat[ridx[r], cidx[c]] = v
        out = (rows, cols, mat)
        self._blocks[key] = out
        return out

    def inv_block(self, a, b, c, d) -> np.ndarray:
        """The inverse tensor of this block, in the same (row, col) layout."""
        key = (a, b, c, d)
        cached = self._inv.get(key)
        if cached is not None:
            return cached
        rows, cols, mat = self.block(a, b, c, d)
        if len(rows) != len(cols):
            raise ShapeMismatch(
                f"{self.family} block {key} is not square ({len(rows)}x{len(cols)})"
            )
        try:
            inv = np.linalg.inv(mat).T
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure(f"{self.family} block {key} is singular") from exc
        self._inv[key] = inv
        return inv

    def inv_entry(self, key) -> complex:
        key = tuple(key)
        a, b, c, d = key[:4]
        if not self.has_block(a, b, c, d):
            return 0.0 + 0.0j
        rows = self.rows(a, b, c, d)
        cols = self.cols(a, b, c, d)
        r = (key[4], key[5], key[6])
        cl = (key[7], key[8], key[9])
        inv = self.inv_block(a, b, c, d)
        try:
            return complex(inv[rows.index(r), cols.index(cl)])
        except ValueError:
            return 0.0 + 0.0j

    def replace_entries(self, entries: dict) -> "FSymbols":
        return FSymbols(self.family, self.ctx, entries)


# ---------------------------------------------------------------------------
# dimension computations


def compute_fp_dims(fusion: np.ndarray, tol: float = DIM_TOL) -> np.ndarray:
    """Frobenius-Perron dimensions of a fusion ring.

    ``fusion[a, b, c]`` holds the multiplicity of c in a x b. The dimension of
    a is the Perron eigenvalue of the matrix (N_a)_{bc} = fusion[a, b, c].
    """
    fusion = np.asarray(fusion)
    r = fusion.shape[0]
    if fusion.shape != (r, r, r) or np.any(fusion < 0):
        raise NonUnitalFusion("fusion tensor must be a nonnegative cube")
    eye = np.eye(r, dtype=fusion.dtype)
    if not (np.array_equal(fusion[UNIT], eye) and np.array_equal(fusion[:, UNIT, :], eye)):
        raise NonUnitalFusion("unit row/column of the fusion tensor is not the identity")
    dims = np.zeros(r)
    for a in range(r):
        ev = np.linalg.eigvals(fusion[a].astype(float))
        rad = np.max(np.abs(ev))
        near = ev[np.abs(ev - rad) < max(tol, 1e-9 * rad)]
        if near.size == 0:
            raise NumericalFailure(
                f"Perron eigenvalue of N_{a} is not separated within tolerance"
            )
        if abs(rad - round(rad)) < 1e-9:
            rad = float(round(rad))  # integer dimensions are exact
        dims[a] = rad
    # the dimension equation must hold, otherwise the ring is not based
    lhs = np.einsum("a,b->ab", dims, dims)
    rhs = np.einsum("abc,c->ab", fusion.astype(float), dims)
    err = np.max(np.abs(lhs - rhs))
    if err > 1e-10 * max(1.0, np.max(dims) ** 2):
        raise NumericalFailure(f"fusion dimensions violate d_a d_b = sum N d_c by {err:.2e}")
    return dims


def compute_module_dims(act: np.ndarray, fp_dims: np.ndarray, tol: float = DIM_TOL) -> np.ndarray:
    """Frobenius-Perron dimensions of the simple objects of a module category.

    Solves d_x m_a = sum_c act[x, a, c] m_c with the normalization
    sum_a m_a^2 = sum_x d_x^2.
    """
    act = np.asarray(act)
    nc, nm = act.shape[0], act.shape[1]
    if act.shape != (nc, nm, nm) or np.any(act < 0):
        raise InconsistentAction("action tensor must be a nonnegative (rC, rM, rM) array")
    if not np.array_equal(act[UNIT], np.eye(nm, dtype=act.dtype)):
        raise InconsistentAction("unit of C must act trivially on the module labels")
    total = act.astype(float).sum(axis=0)
    ev, vecs = np.linalg.eig(total)
    k = int(np.argmax(ev.real))
    m = vecs[:, k].real
    if np.max(np.abs(vecs[:, k].imag)) > 1e-9:
        raise InconsistentAction("Perron eigenvector of the total action is not real")
    if m.sum() < 0:
        m = -m
    if np.min(m) <= tol:
        raise InconsistentAction("no entrywise-positive solution of the dimension equations")
    fpdim = float(np.sum(fp_dims**2))
    m = m * np.sqrt(fpdim / np.sum(m**2))
    for x in range(nc):
        err = np.max(np.abs(act[x].astype(float) @ m - fp_dims[x] * m))
        if err > 1e-9 * max(1.0, fpdim):
            raise InconsistentAction(
                f"module dimensions violate the action equation for label {x} by {err:.2e}"
            )
    return m


def _dual_from_fusion(fusion: np.ndarray) -> np.ndarray:
    r = fusion.shape[0]
    dual = np.full(r, -1, dtype=int)
    for a in range(r):
        hits = np.nonzero(fusion[a, :, UNIT])[0]
        if hits.size != 1 or fusion[a, hits[0], UNIT] != 1:
            raise NonUnitalFusion(f"label {a} has no unique dual (rigidity fails)")
        dual[a] = hits[0]
    if not np.array_equal(dual[dual], np.arange(r)):
        raise NonUnitalFusion("dual map is not an involution")
    return dual


# ---------------------------------------------------------------------------
# containers


class SkeletalCategory:
    """A unitary skeletal fusion category: fusion rules plus F-symbols."""

    def __init__(self, fusion, f0_entries=None, tolerance: float = DEFAULT_TOL, name: str = ""):
        self.fusion = np.asarray(fusion, dtype=int)
        self.rank = self.fusion.shape[0]
        self.tolerance = tolerance
        self.name = name
        self.fp_dims = compute_fp_dims(self.fusion)
        self.dual = _dual_from_fusion(self.fusion)
        self._ctx = FContext(fusion_c=self.fusion)
        self.f0 = FSymbols("f0", self._ctx, f0_entries)

    @property
    def fpdim(self) -> float:
        return float(np.sum(self.fp_dims**2))

    def n(self, a, b, c) -> int:
        return int(self.fusion[a, b, c])

    def __repr__(self):
        return f"SkeletalCategory(rank={self.rank}, name={self.name!r})"


class ModuleData:
    """A left module category over a skeletal fusion category."""

    def __init__(self, base: SkeletalCategory, act, f1_entries=None,
                 tolerance: float = DEFAULT_TOL, name: str = ""):
        self.base = base
        self.act = np.asarray(act, dtype=int)
        if self.act.shape[0] != base.rank:
            raise InconsistentAction("action tensor does not match the category rank")
        self.mrank = self.act.shape[1]
        self.tolerance = tolerance
        self.name = name
        self.m_dims = compute_module_dims(self.act, base.fp_dims)
        self._ctx = FContext(fusion_c=base.fusion, left_act=self.act)
        self.f0 = FSymbols("f0", self._ctx, base.f0.entries)
        self.f1 = FSymbols("f1", self._ctx, f1_entries)

    def nact(self, x, a, c) -> int:
        return int(self.act[x, a, c])

    def __repr__(self):
        return f"ModuleData(base={self.base!r}, mrank={self.mrank})"


class BimoduleData:
    """Full skeletal data of a (C, D)-bimodule category.

    The F0 tensor lives on ``left`` and F4 on ``right``; the mixed families
    f1, f2, f3 are stored here together with both action tensors.
    """

    def __init__(self, left: SkeletalCategory, right: SkeletalCategory,
                 left_act, right_act, f1_entries=None, f2_entries=None,
                 f3_entries=None, tolerance: float = DEFAULT_TOL):
        self.left = left
        self.right = right
        self.left_act = np.asarray(left_act, dtype=int)
        self.right_act = np.asarray(right_act, dtype=int)
        self.mrank = self.left_act.shape[1]
        if self.right_act.shape != (self.mrank, right.rank, self.mrank):
            raise ShapeMismatch("right action tensor has the wrong shape")
        self.tolerance = tolerance
        self.m_dims = compute_module_dims(self.left_act, left.fp_dims)
        self._ctx = FContext(fusion_c=left.fusion, left_act=self.left_act,
                             right_act=self.right_act, fusion_d=right.fusion)
        self.f0 = FSymbols("f0", self._ctx, left.f0.entries)
        self.f1 = FSymbols("f1", self._ctx, f1_entries)
        self.f2 = FSymbols("f2", self._ctx, f2_entries)
        self.f3 = FSymbols("f3", self._ctx, f3_entries)
        self.f4 = FSymbols("f4", self._ctx, right.f0.entries)

    def as_module(self) -> ModuleData:
        """The underlying left module (C acting on M), forgetting D."""
        return ModuleData(self.left, self.left_act, self.f1.entries,
                          tolerance=self.tolerance)

    def tensors(self) -> dict[str, FSymbols]:
        return {"f0": self.f0, "f1": self.f1, "f2": self.f2, "f3": self.f3, "f4": self.f4}

    def __repr__(self):
        return (f"BimoduleData(C rank {self.left.rank}, D rank {self.right.rank}, "
                f"M rank {self.mrank})")


def _tensors_of(data) -> dict[str, FSymbols]:
    if isinstance(data, BimoduleData):
        return data.tensors()
    if isinstance(data, ModuleData):
        return {"f0": data.f0, "f1": data.f1}
    if isinstance(data, SkeletalCategory):
        return {"f0": data.f0}
    raise TypeError(f"unsupported data container {type(data)!r}")


def _ctx_of(data) -> FContext:
    return data._ctx


# ---------------------------------------------------------------------------
# pentagon verification


@dataclass
class PentagonReport:
    residuals: dict = field(default_factory=dict)
    instances: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def passed(self, tol: float) -> bool:
        return self.max_residual < tol


def _word_residual(word: str, tensors: dict[str, FSymbols], ctx: FContext):
    """Maximum pentagon residual over all instances of one 4-strand word."""
    tA, tB, tC, tD = WORD_TYPES[word]
    tP = _FUSE[tA, tB]
    tQ = _FUSE[tP, tC]
    tT = _FUSE[tQ, tD]
    tR = _FUSE[tC, tD]
    tS = _FUSE[tB, tR]
    tU = _FUSE[_FUSE[tB, tC], tD]

    missing: set = set()

    def fam(tx, ty, tz):
        return _FAMILY_BY_TYPES[tx, ty, tz]

    def dim(tx, ty, x, y, z):
        return ctx.dim(_KIND[tx, ty], x, y, z)

    def fentry(family, key):
        tens = tensors[family]
        a, b, c, d = key[:4]
        if not tens.has_block(a, b, c, d):
            if tens.rows(a, b, c, d) and tens.cols(a, b, c, d):
                missing.add((family, (a, b, c, d)))
            return 0.0 + 0.0j
        return tens.entry(key)

    def fcols(family, a, b, c, d):
        return tensors[family].cols(a, b, c, d)

    worst = 0.0
    count = 0
    rng = {t: range(ctx.rank(t)) for t in set(WORD_TYPES[word]) | {tT}}
    for a, b, c, d in itertools.product(rng[tA], rng[tB], rng[tC], rng[tD]):
        for T in range(ctx.rank(tT)):
            # enumerate left-associated states (al, p, be, q, ga)
            t1_states = []
            for p in range(ctx.rank(tP)):
                n1 = dim(tA, tB, a, b, p)
                if n1 == 0:
                    continue
                for q in range(ctx.rank(tQ)):
                    n2 = dim(tP, tC, p, c, q)
                    if n2 == 0:
                        continue
                    n3 = dim(tQ, tD, q, d, T)
                    for al, be, ga in itertools.product(range(n1), range(n2), range(n3)):
                        t1_states.append((al, p, be, q, ga))
            if not t1_states:
                continue
            famA = fam(tP, tC, tD)   # move 1: reassociate the top pair
            famB = fam(tA, tB, tR)   # move 2
            famC = fam(tA, tB, tC)   # move 3: reassociate inside q
            famD = fam(tA, _FUSE[tB, tC], tD)  # move 4
            famE = fam(tB, tC, tD)   # move 5
            for st in t1_states:
                al, p, be, q, ga = st
                # path A: moves 1 then 2
                A: dict = {}
                for mu, r_, nu in fcols(famA, p, c, d, T):
                    v1 = fentry(famA, (p, c, d, T, be, q, ga, mu, r_, nu))
                    if v1 == 0:
                        continue
                    for nu3, s_, rho in fcols(famB, a, b, r_, T):
                        v2 = fentry(famB, (a, b, r_, T, al, p, nu, nu3, s_, rho))
                        if v2 == 0:
                            continue
                        k = (mu, r_, nu3, s_, rho)
                        A[k] = A.get(k, 0.0) + v1 * v2
                # path B: moves 3, 4, 5
                B: dict = {}
                for sg, t_, de in fcols(famC, a, b, c, q):
                    v1 = fentry(famC, (a, b, c, q, al, p, be, sg, t_, de))
                    if v1 == 0:
                        continue
                    for tau, u_, rho in fcols(famD, a, t_, d, T):
                        v2 = fentry(famD, (a, t_, d, T, de, q, ga, tau, u_, rho))
                        if v2 == 0:
                            continue
                        for mu, r_, nu3 in fcols(famE, b, c, d, u_):
                            v3 = fentry(famE, (b, c, d, u_, sg, t_, tau, mu, r_, nu3))
                            if v3 == 0:
                                continue
                            k = (mu, r_, nu3, u_, rho)
                            B[k] = B.get(k, 0.0) + v1 * v2 * v3
                count += 1
                for k in A.keys() | B.keys():
                    worst = max(worst, abs(A.get(k, 0.0) - B.get(k, 0.0)))
    if missing:
        fam_name, blk = sorted(missing)[0]
        raise MissingBlock(
            f"pentagon word {word} references {len(missing)} absent block(s); "
            f"first: {fam_name}{blk}"
        )
    return worst, count


def verify_pentagons(data, tolerance: float | None = None) -> PentagonReport:
    """Check every pentagon family supported by the tensors present in `data`.

    Returns the maximum absolute residual per 4-strand word. Words whose
    tensors are absent are skipped, so partial data (for instance only
    (F0, F1) on a ModuleData) is allowed.
    """
    tensors = _tensors_of(data)
    ctx = _ctx_of(data)
    report = PentagonReport()
    for word, fams in WORD_FAMILIES.items():
        if any(f not in tensors for f in fams):
            continue
        if any(t not in ctx.ranks for t in WORD_TYPES[word]):
            continue
        res, count = _word_residual(word, tensors, ctx)
        report.residuals[word] = res
        report.instances[word] = count
    return report


# ---------------------------------------------------------------------------
# unitarity and unit-strand normalization


@dataclass
class UnitarityReport:
    residuals: dict = field(default_factory=dict)
    worst_block: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def passed(self, tol: float) -> bool:
        return self.max_residual < tol


def verify_unitarity(data) -> UnitarityReport:
    """Per-block ||F F^dag - 1||_max for every stored block of every family."""
    report = UnitarityReport()
    for name, tens in _tensors_of(data).items():
        worst, worst_key = 0.0, None
        for key in tens.upper_keys():
            rows, cols, mat = tens.block(*key)
            if not rows or not cols:
                continue
            if len(rows) != len(cols):
                raise ShapeMismatch(f"{name} block {key} is not square")
            res = float(np.max(np.abs(mat @ mat.conj().T - np.eye(len(rows)))))
            if res > worst:
                worst, worst_key = res, key
        report.residuals[name] = worst
        report.worst_block[name] = worst_key
    return report


def _unit_slots(family: str):
    # which of the strands (a, b, c) are unit objects of a *fusion* category
    if family == "f0":
        return (0, 1, 2)
    if family == "f1":
        return (0, 1)
    if family == "f2":
        return (0, 2)
    if family == "f3":
        return (1, 2)
    return (0, 1, 2)


def verify_unit_blocks(data) -> dict[str, float]:
    """Residual of the normalized-gauge condition: unit-strand blocks are 1."""
    out = {}
    for name, tens in _tensors_of(data).items():
        worst = 0.0
        for key in tens.upper_keys():
            if not any(key[s] == UNIT for s in _unit_slots(name)):
                continue
            rows, cols, mat = tens.block(*key)
            if not rows:
                continue
            worst = max(worst, float(np.max(np.abs(mat - np.eye(len(rows))))))
        out[name] = worst
    return out


# ---------------------------------------------------------------------------
# gauge transformations


class GaugeTransform:
    """Unitary basis changes of the fusion/action vertex spaces.

    Matrices are keyed per (x, y, z) triple within the four vertex families
    cc, cm, md, dd; absent keys mean the identity. Spaces with a unit strand
    must carry the identity, so the normalized gauge is preserved.
    """

    def __init__(self, cc=None, cm=None, md=None, dd=None):
        self.maps = {"cc": dict(cc or {}), "cm": dict(cm or {}),
                     "md": dict(md or {}), "dd": dict(dd or {})}

    def matrix(self, kind: str, triple, dim: int) -> np.ndarray:
        mat = self.maps[kind].get(tuple(triple))
        if mat is None:
            return np.eye(dim)
        mat = np.asarray(mat, dtype=complex)
        if mat.shape != (dim, dim):
            raise ShapeMismatch(
                f"gauge matrix for {kind}{tuple(triple)} has shape {mat.shape}, "
                f"expected {(dim, dim)}"
            )
        return mat

    def validate(self, tol: float = DEFAULT_TOL):
        for kind, maps in self.maps.items():
            for triple, mat in maps.items():
                mat = np.asarray(mat, dtype=complex)
                if mat.shape[0] != mat.shape[1]:
                    raise ShapeMismatch(f"gauge matrix {kind}{triple} is not square")
                if np.max(np.abs(mat @ mat.conj().T - np.eye(mat.shape[0]))) > tol:
                    raise ShapeMismatch(f"gauge matrix {kind}{triple} is not unitary")
                x, y, _ = triple
                is_unit_space = (kind in ("cc", "dd") and (x == UNIT or y == UNIT)) or \
                    (kind == "cm" and x == UNIT) or (kind == "md" and y == UNIT)
                if is_unit_space and np.max(np.abs(mat - np.eye(mat.shape[0]))) > tol:
                    raise ShapeMismatch(
                        f"gauge on unit-strand space {kind}{triple} must be the identity"
                    )


def _transform_family(tens: FSymbols, gauge: GaugeTransform) -> dict:
    """Basis-change all stored blocks of one family; returns new entries."""
    k1, k2, k3, k4, _, _ = FAMILY_KINDS[tens.family]
    ctx = tens.ctx
    new = {}
    for key in tens.upper_keys():
        a, b, c, d = key
        rows, cols, mat = tens.block(a, b, c, d)
        if not rows or not cols:
            continue
        rblocks = []
        for e in sorted({r[1] for r in rows}):
            u1 = gauge.matrix(k1, (a, b, e), ctx.dim(k1, a, b, e))
            u2 = gauge.matrix(k2, (e, c, d), ctx.dim(k2, e, c, d))
            rblocks.append(np.kron(u1, u2))
        cblocks = []
        for f in sorted({cl[1] for cl in cols}):
            u3 = gauge.matrix(k3, (b, c, f), ctx.dim(k3, b, c, f))
            u4 = gauge.matrix(k4, (a, f, d), ctx.dim(k4, a, f, d))
            cblocks.append(np.kron(u3, u4))
        R = _blockdiag(rblocks)
        C = _blockdiag(cblocks)
        out = R.T @ mat @ C.conj()
        for i, r in enumerate(rows):
            for j, cl in enumerate(cols):
                v = out[i, j]
                if abs(v) > 1e-15:
                    new[key + r + cl] = complex(v)
    return new


def _blockdiag(blocks):
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=complex)
    i = 0
    for b in blocks:
        out[i:i + b.shape[0], i:i + b.shape[0]] = b
        i += b.shape[0]
    return out


def apply_gauge(data, gauge: GaugeTransform):
    """Return a copy of `data` with all F tensors in the gauged bases."""
    gauge.validate()
    return _apply_gauge_raw(data, gauge)


def _apply_gauge_raw(data, gauge: GaugeTransform):
    if isinstance(data, SkeletalCategory):
        return SkeletalCategory(data.fusion, _transform_family(data.f0, gauge),
                                tolerance=data.tolerance, name=data.name)
    if isinstance(data, ModuleData):
        base = SkeletalCategory(data.base.fusion, _transform_family(data.f0, gauge),
                                tolerance=data.base.tolerance, name=data.base.name)
        return ModuleData(base, data.act, _transform_family(data.f1, gauge),
                          tolerance=data.tolerance, name=data.name)
    if isinstance(data, BimoduleData):
        left = SkeletalCategory(data.left.fusion, _transform_family(data.f0, gauge),
                                tolerance=data.left.tolerance, name=data.left.name)
        right = SkeletalCategory(data.right.fusion, _transform_family(data.f4, gauge),
                                 tolerance=data.right.tolerance, name=data.right.name)
        return BimoduleData(left, right, data.left_act, data.right_act,
                            _transform_family(data.f1, gauge),
                            _transform_family(data.f2, gauge),
                            _transform_family(data.f3, gauge),
                            tolerance=data.tolerance)
    raise TypeError(f"unsupported data container {type(data)!r}")
