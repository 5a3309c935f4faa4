"""Decomposition of a tube algebra into graded, orthonormal *-representations.

The regular representation carries the inner product <u, v> = lambda(u* v),
which makes it a faithful *-representation. Minimal invariant subspaces are
found by projecting random Hermitian elements into the commutant with the
Haar-integral averaging

    X_M = rho(S(Lambda_(1))) M rho(Lambda_(2)),

whose eigenspaces are submodules; the same averaging is a projection onto
the space of module maps, so its trace counts Hom dimensions. Each irreducible
is equipped with the grading by the idempotent summands of the unit, one
orthonormal basis per sector, and a fixed phase convention so that repeated
runs with the same seed reproduce identical data.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .annular import AlgElement, AnnularAlgebra, TubeLabel
from .errors import DecompositionFailure, DegenerateSpectrum, RankAmbiguous

DEFAULT_SEED = 0x5EED
CLUSTER_TOL = 1e-7
RETRY_BUDGET = 8


class Irrep:
    """An irreducible graded *-representation of a tube algebra."""

    def __init__(self, alg: AnnularAlgebra, matrices: np.ndarray, sectors, id=-1):
        self.alg = alg
        self.matrices = np.asarray(matrices, dtype=complex)
        self.dim = self.matrices.shape[1]
        self.sectors = list(sectors)
        self.id = id
        self.dual = None
        self.char = np.einsum("tii->t", self.matrices)
        self.sector_offsets: dict[tuple[int, int], tuple[int, int]] = {}
        pos = 0
        for key, grp in itertools.groupby(self.sectors):
            size = len(list(grp))
            self.sector_offsets[key] = (pos, size)
            pos += size

    def sector_dim(self, m1: int, m2: int) -> int:
        return self.sector_offsets.get((m1, m2), (0, 0))[1]

    def grading_signature(self) -> tuple:
        rk = self.alg.rk
        return tuple(self.sector_dim(m1, m2) for m1 in range(rk) for m2 in range(rk))

    def matrix(self, t: TubeLabel) -> np.ndarray:
        return self.matrices[self.alg.index[t]]

    def rho(self, u: AlgElement) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for t, c in u.coeffs.items():
            out += c * self.matrices[self.alg.index[t]]
        return out

    def document(self) -> dict:
        """JSON-ready summary used by the CLI report."""
        return {
            "id": self.id,
            "dim": self.dim,
            "dual": self.dual,
            "sectors": [list(s) for s in self.sectors],
            "character": [[z.real, z.imag] for z in self.char],
        }

    def __repr__(self):
        return f"Irrep(id={self.id}, dim={self.dim})"


class ProductRep:
    """The (possibly reducible) representation on V x W truncated by Delta(1).

    V occupies the bottom strip of the stacked diagram and W the top one, so
    a basis pair survives exactly when the top label of the V-vector matches
    the bottom label of the W-vector.
    """

    def __init__(self, alg: AnnularAlgebra, V, W):
        self.alg = alg
        self.factors = (V, W)
        pairs = [(i, j) for i in range(V.dim) for j in range(W.dim)
                 if V.sectors[i][1] == W.sectors[j][0]]
        self.pairs = pairs
        self.sectors = [(V.sectors[i][0], W.sectors[j][1]) for i, j in pairs]
        self.dim = len(pairs)
        sel = [i * W.dim + j for i, j in pairs]
        self.embedding = np.zeros((V.dim * W.dim, self.dim), dtype=complex)
        for col, flat in enumerate(sel):
            self.embedding[flat, col] = 1.0
        mats = np.zeros((alg.dim, self.dim, self.dim), dtype=complex)
        sel_arr = np.asarray(sel)
        for k in range(alg.dim):
            full = np.zeros((V.dim * W.dim, V.dim * W.dim), dtype=complex)
            for w, i1, i2 in alg.delta[k]:
                # the bottom half of the cut tube acts on the bottom strip V
                full += w * np.kron(V.matrices[i2], W.matrices[i1])
            mats[k] = full[np.ix_(sel_arr, sel_arr)]
        self.matrices = mats
        self.char = np.einsum("tii->t", mats)
        ident = self.rho(alg.unit)
        if np.max(np.abs(ident - np.eye(self.dim))) > 1e-9:
            raise DecompositionFailure("Delta(1) does not act as identity on the "
                                       "sector-matched subspace")

    def rho(self, u: AlgElement) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for t, c in u.coeffs.items():
            out += c * self.matrices[self.alg.index[t]]
        return out

    def __repr__(self):
        return f"ProductRep(dim={self.dim})"


@dataclass
class Intertwiner:
    """Isometry embedding irrep c into the product of irreps a and b.

    The matrix maps V_c into the ambient tensor product of a and b (with the
    a factor as the slow index); its image lies in the Delta(1)-truncated
    subspace and it commutes with the coproduct action.
    """

    a: int
    b: int
    c: int
    alpha: int
    matrix: np.ndarray


# ---------------------------------------------------------------------------
# character pairings and Hom dimensions


def _haar_sweedler(alg: AnnularAlgebra):
    out = []
    for t, c in alg.Lambda.coeffs.items():
        for w, i1, i2 in alg.delta[alg.index[t]]:
            out.append((c * w, i1, i2))
    return out


def character(V, t: TubeLabel) -> complex:
    """Trace of the tube in the given representation."""
    return complex(V.char[V.alg.index[t]])


def schur_pair(V, W) -> complex:
    """The character pairing <chi_V* chi_W, Lambda>; delta_{V,W} on irreps."""
    alg = V.alg
    if W.alg is not alg:
        raise DecompositionFailure("representations live on different algebras")
    chi_s = alg.S_mat.T @ V.char
    return complex(sum(c * chi_s[i1] * W.char[i2] for c, i1, i2 in _haar_sweedler(alg)))


def hom_dim(V, W) -> int:
    """dim Hom_A(V, W), the rank of M -> rho_W(S(Lambda_(1))) M rho_V(Lambda_(2)).

    That map is a projection onto the space of module maps (it fixes them and
    lands inside), so its rank equals its trace, which only involves the two
    characters.
    """
    alg = V.alg
    chi_s = alg.S_mat.T @ W.char
    val = complex(sum(c * chi_s[i1] * V.char[i2] for c, i1, i2 in _haar_sweedler(alg)))
    n = round(val.real)
    if abs(val - n) > 0.01:
        raise RankAmbiguous(f"Hom dimension {val} is not close to an integer")
    return int(n)


def tensor_module(V, W) -> ProductRep:
    """The product representation of V and W on the Delta(1)-truncated space."""
    return ProductRep(V.alg, V, W)


# ---------------------------------------------------------------------------
# decomposition of the regular representation


def _cluster(eigs: np.ndarray):
    groups, start = [], 0
    for i in range(1, len(eigs) + 1):
        if i == len(eigs) or eigs[i] - eigs[i - 1] > CLUSTER_TOL:
            groups.append(slice(start, i))
            start = i
    return groups


class _Decomposer:
    def __init__(self, alg: AnnularAlgebra, seed: int):
        self.alg = alg
        self.rng = np.random.default_rng(seed)
        gram = alg.gram()
        gram = (gram + gram.conj().T) / 2
        ev, vecs = np.linalg.eigh(gram)
        if ev[0] <= 0:
            raise DecompositionFailure("inner product lambda(u* v) is not positive")
        self.w = vecs @ np.diag(np.sqrt(ev)) @ vecs.conj().T
        winv = vecs @ np.diag(1.0 / np.sqrt(ev)) @ vecs.conj().T
        self.rho = np.stack([self.w @ alg.left_regular(i) @ winv
                             for i in range(alg.dim)])
        star_err = 0.0
        for j in range(alg.dim):
            adj = np.einsum("k,kab->ab", alg.star_mat[:, j], self.rho)
            star_err = max(star_err, float(np.max(np.abs(
                self.rho[j].conj().T - adj))))
        if star_err > 1e-8:
            raise DecompositionFailure(
                f"orthonormalized regular representation is not a *-representation "
                f"(residual {star_err:.2e})")
        self.sweedler = _haar_sweedler(alg)
        self.avg_ops = [(c, np.einsum("k,kab->ab", alg.S_mat[:, i1], self.rho),
                         self.rho[i2]) for c, i1, i2 in self.sweedler]

    def _self_hom(self, q: np.ndarray) -> float:
        val = 0.0j
        for c, a, b in self.avg_ops:
            val += c * np.trace(q.conj().T @ a @ q) * np.trace(q.conj().T @ b @ q)
        return val.real

    def _average(self, q: np.ndarray, m: np.ndarray) -> np.ndarray:
        out = np.zeros_like(m)
        for c, a, b in self.avg_ops:
            out += c * (q.conj().T @ a @ q) @ m @ (q.conj().T @ b @ q)
        return out

    def split(self, q: np.ndarray) -> list[np.ndarray]:
        k = q.shape[1]
        h = self._self_hom(q)
        if abs(h - round(h)) > 0.01:
            raise DecompositionFailure(f"self-Hom dimension {h} is not an integer")
        if round(h) == 1:
            return [q]
        for _ in range(RETRY_BUDGET):
            # a random Hermitian *matrix*, not rho of an algebra element: the
            # averaging maps the latter into the center, which cannot split
            # multiplicity spaces
            herm = self.rng.standard_normal((k, k)) \
                + 1j * self.rng.standard_normal((k, k))
            herm = herm + herm.conj().T
            x = self._average(q, herm)
            x = (x + x.conj().T) / 2
            ev, vecs = np.linalg.eigh(x)
            groups = _cluster(ev)
            if len(groups) > 1:
                out = []
                for grp in groups:
                    out.extend(self.split(q @ vecs[:, grp]))
                return out
        raise DegenerateSpectrum(
            f"failed to split a {k}-dimensional module within the retry budget")


def _canonical_trivial(alg: AnnularAlgebra) -> Irrep:
    """The vacuum representation, one basis vector per module label.

    A tube with equal inner labels, equal outer labels and matching
    multiplicity indices sends the inner-label vector to sqrt(d_x) times the
    outer-label one; everything else acts as zero. This choice pins the
    unit-strand blocks of the computed dual data to exact identity matrices.
    """
    rk = alg.rk
    mats = np.zeros((alg.dim, rk, rk), dtype=complex)
    for i, t in enumerate(alg.basis):
        if t.a == t.b and t.c == t.d and t.al == t.be:
            mats[i, t.c, t.a] = math.sqrt(alg.d[t.x])
    rep = Irrep(alg, mats, [(m, m) for m in range(rk)])
    err = 0.0
    for (i, j), sc in alg._mul.items():
        prod = sum(v * mats[k] for k, v in sc.items())
        err = max(err, float(np.max(np.abs(mats[i] @ mats[j] - prod))))
    lone = {(i, j) for i in range(alg.dim) for j in range(alg.dim)} - set(alg._mul)
    for i, j in lone:
        err = max(err, float(np.max(np.abs(mats[i] @ mats[j]))))
    if err > 1e-9:
        raise DecompositionFailure(
            f"canonical vacuum representation fails multiplicativity ({err:.2e})")
    if abs(rep.rho(alg.Lambda).trace() - 1.0) > 1e-9:
        raise DecompositionFailure("canonical vacuum representation has chi(Lambda) != 1")
    return rep


def decompose(alg: AnnularAlgebra, seed: int = DEFAULT_SEED) -> list[Irrep]:
    """All irreducible representations of the tube algebra, up to equivalence.

    Irreps come with orthonormal sector-ordered bases and a deterministic id
    assignment: the vacuum representation (the unique one whose character
    takes value 1 on the Haar integral) is id 0, the rest are sorted by
    dimension, grading signature, and character. sum(dim^2) is checked
    against the algebra dimension.
    """
    dec = _Decomposer(alg, seed)
    blocks = dec.split(np.eye(alg.dim, dtype=complex))

    # group equivalent copies via character orthogonality, keep one per class
    reps = []
    for q in blocks:
        char = np.einsum("ai,tab,bi->t", q.conj(), dec.rho, q)
        reps.append((q, char))
    classes: list[list] = []
    for q, char in reps:
        placed = False
        for cls in classes:
            pair = _schur_chars(alg, cls[0][1], char)
            if abs(pair - 1.0) < 1e-6:
                cls.append((q, char))
                placed = True
                break
            if abs(pair) > 1e-6:
                raise DecompositionFailure(
                    f"character pairing {pair} is neither 0 nor 1")
        if not placed:
            classes.append([(q, char)])

    irreps = []
    for cls in classes:
        candidates = [_graded_irrep(alg, dec, q) for q, _ in cls]
        candidates.sort(key=lambda v: v.grading_signature())
        irreps.append(candidates[0])

    if sum(v.dim**2 for v in irreps) != alg.dim:
        raise DecompositionFailure(
            f"sum of squared irrep dimensions {[v.dim for v in irreps]} "
            f"does not match dim(Ann) = {alg.dim}")

    trivial = [v for v in irreps if abs(v.rho(alg.Lambda).trace() - 1.0) < 1e-8]
    if len(trivial) != 1:
        raise DecompositionFailure("expected exactly one trivial representation")
    canon = _canonical_trivial(alg)
    if np.max(np.abs(canon.char - trivial[0].char)) > 1e-8:
        raise DecompositionFailure("canonical vacuum representation is not "
                                   "equivalent to the computed trivial one")
    rest = [v for v in irreps if v is not trivial[0]]
    rest.sort(key=lambda v: (v.dim, v.grading_signature(), _char_key(v.char)))
    ordered = [canon] + rest
    for i, v in enumerate(ordered):
        v.id = i
    _assign_duals(alg, ordered)
    return ordered


def _schur_chars(alg, chi_v, chi_w) -> complex:
    chi_s = alg.S_mat.T @ chi_v
    return complex(sum(c * chi_s[i1] * chi_w[i2] for c, i1, i2 in _haar_sweedler(alg)))


def _char_key(char: np.ndarray):
    return tuple((round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0) for z in char)


def _graded_irrep(alg: AnnularAlgebra, dec: _Decomposer, q: np.ndarray) -> Irrep:
    """Reorder an invariant subspace basis by grading sector and fix phases."""
    cols = []
    sectors = []
    for m1 in range(alg.rk):
        for m2 in range(alg.rk):
            p = alg.tube(alg._ptube(m1, m2)).vector()
            proj = q.conj().T @ np.einsum("k,kab->ab", p, dec.rho) @ q
            ev, vecs = np.linalg.eigh((proj + proj.conj().T) / 2)
            for col in range(len(ev)):
                if ev[col] > 0.5:
                    vec = q @ vecs[:, col]
                    k = int(np.argmax(np.abs(vec)))
                    vec = vec * (abs(vec[k]) / vec[k])
                    cols.append(vec)
                    sectors.append((m1, m2))
    if len(cols) != q.shape[1]:
        raise DecompositionFailure("grading projectors do not exhaust the module")
    basis = np.column_stack(cols)
    mats = np.einsum("ai,tab,bj->tij", basis.conj(), dec.rho, basis)
    return Irrep(alg, mats, sectors)


def _assign_duals(alg: AnnularAlgebra, irreps: list[Irrep]):
    """Match each character against the conjugate-antipode character."""
    star_s = alg.star_mat @ alg.S_mat.conj()
    for v in irreps:
        chi_star = np.conj(star_s.T @ v.char)
        hits = [w for w in irreps if np.max(np.abs(w.char - chi_star)) < 1e-7]
        if len(hits) != 1:
            raise DecompositionFailure(f"no unique dual for irrep {v.id}")
        v.dual = hits[0].id


# ---------------------------------------------------------------------------
# intertwiners


def intertwiners(a: Irrep, b: Irrep, c: Irrep) -> list[Intertwiner]:
    """Orthonormal isometric module maps embedding c into the product of a, b.

    Returns hom_dim(c, a x b) isometries with a deterministic ordering and
    phases; when one factor is the vacuum representation the canonical unitor
    embedding is used, which keeps unit-strand blocks of the derived data
    exactly trivial.
    """
    alg = a.alg
    prod = tensor_module(a, b)
    count = hom_dim(c, prod)
    if count == 0:
        return []
    if a.id == 0 or b.id == 0:
        full = _canonical_unit_intertwiner(a, b, c)
        if full is not None:
            return [Intertwiner(a.id, b.id, c.id, 0, full)]
    p, cd = prod.dim, c.dim
    rows = []
    for k in range(alg.dim):
        rows.append(np.kron(prod.matrices[k], np.eye(cd))
                    - np.kron(np.eye(p), c.matrices[k].T))
    system = np.vstack(rows)
    _, svals, vh = np.linalg.svd(system)
    n = vh.shape[0]
    scale = max(1.0, float(svals[0])) if len(svals) else 1.0
    null_svals = svals[n - count:] if len(svals) == n else np.zeros(count)
    if np.max(null_svals, initial=0.0) > 1e-7 * scale:
        raise DecompositionFailure(
            f"intertwiner candidates have residual {np.max(null_svals):.2e}")
    if count < n and svals[n - count - 1] < 1e-6 * scale:
        raise DecompositionFailure("intertwiner nullspace dimension is ambiguous")
    mats = [vh[i].conj().reshape(p, cd) for i in range(n - count, n)]
    out = []
    for x in mats:
        for y in out:
            x = x - np.trace(y.conj().T @ x) / cd * y
        lam = np.trace(x.conj().T @ x).real / cd
        if lam < 1e-10:
            continue
        x = x / math.sqrt(lam)
        if np.max(np.abs(x.conj().T @ x - np.eye(cd))) > 1e-8:
            raise DecompositionFailure("intertwiner is not an isometry up to scale")
        out.append(x)
    if len(out) != count:
        raise DecompositionFailure(
            f"found {len(out)} independent intertwiners, expected {count}")
    result = []
    for alpha, x in enumerate(out):
        full = prod.embedding @ x
        k = int(np.argmax(np.abs(full)))
        full = full * (abs(full.flat[k]) / full.flat[k])
        result.append(Intertwiner(a.id, b.id, c.id, alpha, full))
    return result


def _canonical_unit_intertwiner(a: Irrep, b: Irrep, c: Irrep):
    """The unitor embeddings V_b -> V_1 x V_b and V_a -> V_a x V_1."""
    if a.id == 0 and c is b:
        full = np.zeros((a.dim * b.dim, c.dim), dtype=complex)
        for j, (m1, _) in enumerate(b.sectors):
            full[m1 * b.dim + j, j] = 1.0
        return full
    if b.id == 0 and c is a:
        full = np.zeros((a.dim * b.dim, c.dim), dtype=complex)
        for j, (_, m2) in enumerate(a.sectors):
            full[j * b.dim + m2, j] = 1.0
        return full
    if a.id == 0 and b.id == 0 and c.id == 0:
        full = np.zeros((a.dim * b.dim, c.dim), dtype=complex)
        for m in range(a.dim):
            full[m * b.dim + m, m] = 1.0
        return full
    return None
