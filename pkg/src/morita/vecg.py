"""Pointed-category data generation and classical finite-group oracles.

For a finite group G, the category of G-graded lines acts on the category of
plain vector spaces (a single simple object). The resulting module data has
group multiplication as fusion, all F0 entries +1, and F1 entries given by a
normalized 2-cocycle. Everything downstream (tube algebra, dual category) can
then be cross-checked against classical character theory, which this module
computes independently by brute-force decomposition of the regular
representation.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import MismatchedRank, MoritaError, DegenerateSpectrum
from .skeletal import ModuleData, SkeletalCategory

DEFAULT_SEED = 0x5EED
_IRREP_BOUND = 48


class FiniteGroup:
    """A finite group given by its multiplication table; identity is index 0."""

    def __init__(self, table, name: str = ""):
        self.table = np.asarray(table, dtype=int)
        self.order = self.table.shape[0]
        self.name = name
        self._validate()
        self.inverse = np.array([int(np.nonzero(self.table[g] == 0)[0][0])
                                 for g in range(self.order)])

    def _validate(self):
        n = self.order
        t = self.table
        if t.shape != (n, n) or np.any(t < 0) or np.any(t >= n):
            raise MoritaError("multiplication table must be an (n, n) array of indices")
        if not (np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
            raise MoritaError("identity must be index 0")
        for g in range(n):
            if sorted(t[g]) != list(range(n)) or sorted(t[:, g]) != list(range(n)):
                raise MoritaError(f"row/column {g} is not a permutation")
            if 0 not in t[g]:
                raise MoritaError(f"element {g} has no inverse")
        for g, h, k in itertools.product(range(n), repeat=3):
            if t[t[g, h], k] != t[g, t[h, k]]:
                raise MoritaError(f"associativity fails at ({g}, {h}, {k})")

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, name={self.name!r})"


def _perm_group(perms, name):
    perms = list(perms)
    idx = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), dtype=int)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = idx[tuple(p[q[k]] for k in range(len(p)))]
    return FiniteGroup(table, name=name)


def cyclic_group(n: int) -> FiniteGroup:
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(table, name=f"Z{n}")


def klein_four_group() -> FiniteGroup:
    table = np.arange(4)[:, None] ^ np.arange(4)[None, :]
    return FiniteGroup(table, name="Z2xZ2")


def symmetric_group(n: int) -> FiniteGroup:
    return _perm_group(itertools.permutations(range(n)), name=f"S{n}")


def dihedral_group_4() -> FiniteGroup:
    r = (1, 2, 3, 0)
    s = (3, 2, 1, 0)
    e = (0, 1, 2, 3)
    elems = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for p in frontier:
            for q in (r, s):
                pq = tuple(p[q[k]] for k in range(4))
                if pq not in elems:
                    elems.append(pq)
                    nxt.append(pq)
        frontier = nxt
    return _perm_group(elems, name="D4")


def quaternion_group() -> FiniteGroup:
    # elements 1, -1, i, -i, j, -j, k, -k encoded as (axis, sign)
    basis = [(0, 1), (0, -1), (1, 1), (1, -1), (2, 1), (2, -1), (3, 1), (3, -1)]
    mul_axis = {(0, a): (a, 1) for a in range(4)}
    mul_axis.update({(a, 0): (a, 1) for a in range(4)})
    mul_axis.update({(1, 1): (0, -1), (2, 2): (0, -1), (3, 3): (0, -1),
                     (1, 2): (3, 1), (2, 1): (3, -1),
                     (2, 3): (1, 1), (3, 2): (1, -1),
                     (3, 1): (2, 1), (1, 3): (2, -1)})
    idx = {q: i for i, q in enumerate(basis)}
    table = np.zeros((8, 8), dtype=int)
    for i, (ax1, s1) in enumerate(basis):
        for j, (ax2, s2) in enumerate(basis):
            ax, s = mul_axis[(ax1, ax2)]
            table[i, j] = idx[(ax, s1 * s2 * s)]
    return FiniteGroup(table, name="Q8")


_BUILTIN = {
    "Z2xZ2": klein_four_group,
    "S3": lambda: symmetric_group(3),
    "S4": lambda: symmetric_group(4),
    "D4": dihedral_group_4,
    "Q8": quaternion_group,
}


def group_by_name(name: str) -> FiniteGroup:
    """Bundled groups: Zn for any n, plus Z2xZ2, S3, S4, D4, Q8."""
    if name in _BUILTIN:
        return _BUILTIN[name]()
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    raise MoritaError(f"unknown group name {name!r}")


class Cocycle:
    """A normalized 2-cocycle on G with values in the unit circle."""

    def __init__(self, group: FiniteGroup, values=None, tol: float = 1e-12):
        self.group = group
        n = group.order
        if values is None:
            self.values = np.ones((n, n), dtype=complex)
        else:
            self.values = np.asarray(values, dtype=complex)
            if self.values.shape != (n, n):
                raise MoritaError("cocycle value table has the wrong shape")
        self._validate(tol)

    def _validate(self, tol):
        n = self.group.order
        v = self.values
        if np.max(np.abs(np.abs(v) - 1.0)) > tol:
            raise MoritaError("cocycle values must lie on the unit circle")
        if np.max(np.abs(v[0, :] - 1.0)) > tol or np.max(np.abs(v[:, 0] - 1.0)) > tol:
            raise MoritaError("cocycle is not normalized")
        t = self.group.table
        for g, h, k in itertools.product(range(n), repeat=3):
            lhs = v[g, h] * v[t[g, h], k]
            rhs = v[g, t[h, k]] * v[h, k]
            if abs(lhs - rhs) > tol:
                raise MoritaError(f"2-cocycle identity fails at ({g}, {h}, {k})")

    def __call__(self, g: int, h: int) -> complex:
        return complex(self.values[g, h])


def symplectic_cocycle() -> Cocycle:
    """The standard nontrivial 2-cocycle on Z2xZ2: phi((a,b),(c,d)) = (-1)^{bc}."""
    group = klein_four_group()
    vals = np.ones((4, 4), dtype=complex)
    for i, j in itertools.product(range(4), repeat=2):
        b, c = i & 1, (j >> 1) & 1
        vals[i, j] = (-1.0) ** (b * c)
    return Cocycle(group, vals)


def group_fusion(group: FiniteGroup) -> np.ndarray:
    n = group.order
    fusion = np.zeros((n, n, n), dtype=int)
    for g, h in itertools.product(range(n), repeat=2):
        fusion[g, h, group.mul(g, h)] = 1
    return fusion


def gen_vecg(group: FiniteGroup, cocycle: Cocycle | None = None) -> ModuleData:
    """Module data for the G-graded lines acting on plain vector spaces.

    Fusion is the group law with all F0 entries +1; the single module object
    carries F1 entries given by the (optionally nontrivial) cocycle.
    """
    if cocycle is None:
        cocycle = Cocycle(group)
    if cocycle.group.order != group.order or not np.array_equal(cocycle.group.table, group.table):
        raise MoritaError("cocycle is defined on a different group")
    n = group.order
    fusion = group_fusion(group)
    f0 = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        d = group.mul(group.mul(a, b), c)
        f0[(a, b, c, d, 0, group.mul(a, b), 0, 0, group.mul(b, c), 0)] = 1.0 + 0.0j
    cat = SkeletalCategory(fusion, f0, name=group.name or f"Vec[{n}]")
    act = np.ones((n, 1, 1), dtype=int)
    f1 = {}
    for g, h in itertools.product(range(n), repeat=2):
        f1[(g, h, 0, 0, 0, group.mul(g, h), 0, 0, 0, 0)] = cocycle(g, h)
    return ModuleData(cat, act, f1, name="Vec")


# ---------------------------------------------------------------------------
# classical representation theory (the oracle side)


class GroupIrrep:
    """A unitary irreducible representation given by explicit matrices."""

    def __init__(self, matrices: np.ndarray):
        self.matrices = np.asarray(matrices, dtype=complex)
        self.dim = self.matrices.shape[1]
        self.char = np.einsum("gii->g", self.matrices)

    def __repr__(self):
        return f"GroupIrrep(dim={self.dim})"


def _split_invariant(mats, basis, rng, depth=0):
    """Recursively split an invariant subspace of a unitary group action."""
    k = basis.shape[1]
    sub = np.einsum("ai,gab,bj->gij", basis.conj(), mats, basis)
    chi = np.einsum("gii->g", sub)
    if abs(np.sum(np.abs(chi) ** 2).real / mats.shape[0] - 1.0) < 1e-8:
        return [basis]
    for _ in range(8):
        h = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
        h = h + h.conj().T
        avg = np.einsum("gij,jk,glk->il", sub, h, sub.conj()) / mats.shape[0]
        avg = (avg + avg.conj().T) / 2
        ev, vecs = np.linalg.eigh(avg)
        groups, start = [], 0
        for i in range(1, k + 1):
            if i == k or ev[i] - ev[i - 1] > 1e-7:
                groups.append(range(start, i))
                start = i
        if len(groups) > 1:
            out = []
            for grp in groups:
                out.extend(_split_invariant(mats, basis @ vecs[:, grp], rng, depth + 1))
            return out
    raise DegenerateSpectrum("could not split a reducible group representation")


def classical_irreps(group: FiniteGroup, seed: int = DEFAULT_SEED) -> list[GroupIrrep]:
    """Unitary irreps of G from the regular representation, trivial first.

    Uses random commutant elements to split the left regular action; the
    result is deterministic for a fixed seed. Characters are validated to be
    orthonormal before returning.
    """
    n = group.order
    if n > _IRREP_BOUND:
        raise MoritaError(f"group order {n} exceeds the brute-force bound {_IRREP_BOUND}")
    rng = np.random.default_rng(seed)
    left = np.zeros((n, n, n), dtype=complex)
    for g in range(n):
        for h in range(n):
            left[g, group.mul(g, h), h] = 1.0
    blocks = _split_invariant(left, np.eye(n, dtype=complex), rng)
    seen: list[GroupIrrep] = []
    for basis in blocks:
        rep = GroupIrrep(np.einsum("ai,gab,bj->gij", basis.conj(), left, basis))
        if not any(np.allclose(rep.char, s.char, atol=1e-8) for s in seen):
            seen.append(rep)
    trivial = [r for r in seen if np.allclose(r.char, 1.0, atol=1e-8)]
    rest = [r for r in seen if r not in trivial]
    rest.sort(key=lambda r: (r.dim, tuple(np.round(r.char, 8).view(float))))
    irreps = trivial + rest
    if sum(r.dim**2 for r in irreps) != n:
        raise MismatchedRank("irrep dimensions do not sum to the group order")
    table = np.array([r.char for r in irreps])
    gram = table @ table.conj().T / n
    if np.max(np.abs(gram - np.eye(len(irreps)))) > 1e-8:
        raise MismatchedRank("classical character table is not orthonormal")
    return irreps


def rep_fusion(irreps: list[GroupIrrep], group: FiniteGroup) -> np.ndarray:
    """Tensor-product multiplicities N^{ab}_c from the character table."""
    r = len(irreps)
    n = group.order
    fusion = np.zeros((r, r, r), dtype=int)
    for a, b, c in itertools.product(range(r), repeat=3):
        val = np.sum(irreps[a].char * irreps[b].char * irreps[c].char.conj()) / n
        fusion[a, b, c] = int(round(val.real))
        if abs(val - fusion[a, b, c]) > 1e-8:
            raise MismatchedRank(f"non-integer tensor multiplicity at ({a}, {b}, {c})")
    return fusion


def clebsch_gordan(group: FiniteGroup, irreps: list[GroupIrrep],
                   a: int, b: int, c: int) -> list[np.ndarray]:
    """Orthonormal isometries embedding irrep c into irrep a tensor b.

    Computed by group-averaging matrix units, the textbook projection-operator
    construction; used as an independent oracle for the F3 data of pointed
    categories.
    """
    ra, rb, rc = irreps[a], irreps[b], irreps[c]
    n = group.order
    prod = np.einsum("gij,gkl->gikjl", ra.matrices, rb.matrices)
    prod = prod.reshape(n, ra.dim * rb.dim, ra.dim * rb.dim)
    found: list[np.ndarray] = []
    for i in range(ra.dim * rb.dim):
        for j in range(rc.dim):
            m = np.zeros((ra.dim * rb.dim, rc.dim), dtype=complex)
            m[i, j] = 1.0
            x = np.einsum("gab,bc,gdc->ad", prod, m, rc.matrices.conj()) / n
            for y in found:
                x = x - np.trace(y.conj().T @ x) / rc.dim * y
            lam = np.trace(x.conj().T @ x).real / rc.dim
            if lam > 1e-8:
                x = x / np.sqrt(lam)
                flat = np.argmax(np.abs(x))
                x = x * np.abs(x.flat[flat]) / x.flat[flat]
                found.append(x)
    return found


def align_representation(mats_a: np.ndarray, mats_b: np.ndarray,
                         seed: int = DEFAULT_SEED) -> np.ndarray:
    """Unitary U with mats_a[g] = U mats_b[g] U^dag for equivalent unitary reps."""
    n, d = mats_a.shape[0], mats_a.shape[1]
    rng = np.random.default_rng(seed)
    for _ in range(8):
        m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        x = sum(mats_a[g] @ m @ mats_b[g].conj().T for g in range(n)) / n
        u, s, vh = np.linalg.svd(x)
        if np.min(s) > 1e-8:
            return u @ vh
    raise DegenerateSpectrum("failed to align equivalent representations")


class VecGCrossCheck:
    """Residuals from comparing the pipeline output against classical data."""

    def __init__(self, permutation, char_residual, f2_residual, eq34_residual):
        self.permutation = permutation
        self.char_residual = char_residual
        self.f2_residual = f2_residual
        self.eq34_residual = eq34_residual

    def passed(self, tol: float = 1e-9) -> bool:
        return max(self.char_residual, self.f2_residual, self.eq34_residual) < tol

    def __repr__(self):
        return (f"VecGCrossCheck(char={self.char_residual:.2e}, "
                f"f2={self.f2_residual:.2e}, eq34={self.eq34_residual:.2e})")


def crosscheck_vecg(group: FiniteGroup, cocycle: Cocycle | None = None,
                    seed: int = DEFAULT_SEED) -> VecGCrossCheck:
    """Validate the pipeline on graded lines against classical group data.

    Checks that the dual irreps match the classical ones up to permutation of
    labels and a unitary change of basis, that the bimodule associator blocks
    are the classical representation matrices in that basis, and that the
    computed right-module associator solves the classical product-of-matrices
    recoupling identity.
    """
    from .dualdata import assemble_dual

    if cocycle is not None and np.max(np.abs(cocycle.values - 1.0)) > 1e-12:
        raise MoritaError("classical cross-checks require the trivial cocycle")
    bim = assemble_dual(gen_vecg(group, cocycle), seed=seed)
    classic = classical_irreps(group, seed=seed)
    if len(classic) != bim.right.rank:
        raise MismatchedRank(
            f"pipeline found {bim.right.rank} irreps, oracle found {len(classic)}")
    n = group.order
    # pipeline representation matrices: f2 blocks at the single module object
    pipe = []
    for c in range(bim.right.rank):
        dim = int(bim.right_act[0, c, 0])
        mats = np.zeros((n, dim, dim), dtype=complex)
        for g in range(n):
            for i in range(dim):
                for j in range(dim):
                    mats[g, i, j] = bim.f2.entry((g, 0, c, 0, 0, 0, i, j, 0, 0))
        pipe.append(mats)
    chars = [np.einsum("gii->g", mats) for mats in pipe]
    perm = []
    char_res = 0.0
    for c, chi in enumerate(chars):
        hits = [k for k, r in enumerate(classic)
                if np.max(np.abs(r.char - chi)) < 1e-6]
        if len(hits) != 1:
            raise MismatchedRank(f"pipeline irrep {c} matches {len(hits)} oracle "
                                 f"characters")
        perm.append(hits[0])
        char_res = max(char_res, float(np.max(np.abs(classic[hits[0]].char - chi))))
    if sorted(perm) != list(range(len(classic))):
        raise MismatchedRank("character matching is not a permutation")
    # align bases and compare matrices entrywise
    aligners = []
    f2_res = 0.0
    for c, mats in enumerate(pipe):
        u = align_representation(mats, classic[perm[c]].matrices, seed=seed)
        aligners.append(u)
        f2_res = max(f2_res, float(np.max(np.abs(
            mats - np.einsum("ab,gbc,dc->gad", u, classic[perm[c]].matrices,
                             u.conj())))))
    # recoupling identity with classical matrices and the transformed F3
    eq34 = 0.0
    rD = bim.right.rank
    for s, t in itertools.product(range(rD), repeat=2):
        ds, dt = pipe[s].shape[1], pipe[t].shape[1]
        rows, cols = [], []
        for al in range(ds):
            for be in range(dt):
                rows.append((al, 0, be))
        for f in range(rD):
            for mu in range(bim.right.fusion[s, t, f]):
                for nu in range(pipe[f].shape[1]):
                    cols.append((mu, f, nu))
        fmat = np.zeros((len(rows), len(cols)), dtype=complex)
        for i, r in enumerate(rows):
            for j, cl in enumerate(cols):
                fmat[i, j] = bim.f3.entry((0, s, t, 0) + r + cl)
        col_u = np.zeros((len(cols), len(cols)), dtype=complex)
        for i, (mu, f, nu) in enumerate(cols):
            for j, (mup, fp, nup) in enumerate(cols):
                if mu == mup and f == fp:
                    col_u[i, j] = aligners[f][nu, nup]
        b_cl = np.kron(aligners[s], aligners[t]).conj().T @ fmat @ col_u
        for g in range(n):
            blk = np.zeros((len(cols), len(cols)), dtype=complex)
            for i, (mu, f, nu) in enumerate(cols):
                for j, (mup, fp, nup) in enumerate(cols):
                    if mu == mup and f == fp:
                        blk[i, j] = classic[perm[f]].matrices[g, nu, nup]
            lhs = np.kron(classic[perm[s]].matrices[g], classic[perm[t]].matrices[g])
            rhs = b_cl @ blk @ np.linalg.inv(b_cl)
            eq34 = max(eq34, float(np.max(np.abs(lhs - rhs))))
    return VecGCrossCheck(perm, char_res, f2_res, eq34)
