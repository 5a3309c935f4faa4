"""The annular (tube) algebra of a module category, as a C*-weak Hopf algebra.

Basis diagrams are tubes on a cylinder::

    |  d                outer top
    |  |--be            vertex in Hom(x > b, d)
    |  b                inner top
    | (x)               string wrapping the annulus
    |  a                inner bottom
    |  |--al            vertex in Hom(x > a, c)
    |  c                outer bottom

Multiplication stacks a second tube concentrically outside the first; the
composite is reduced to the picture basis with one F1 move on the bottom
boundary strand and one inverse F1 move on the top one. The remaining maps
(coproduct, counit, antipode, star, Haar integral and measure, canonical
grouplike) all act by explicit structure constants in this basis, and
``verify_wha`` checks every axiom numerically rather than by proof.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AlgebraMismatch
from .skeletal import ModuleData, UNIT

PRUNE_TOL = 1e-12


@dataclass(frozen=True, order=True)
class TubeLabel:
    """One basis tube: inner boundary (a, b), outer boundary (c, d), string x.

    al indexes Hom(x > a, c) and be indexes Hom(x > b, d); both 0-based.
    The natural enumeration order is lexicographic in (a, b, c, d, x, al, be).
    """

    a: int
    b: int
    c: int
    d: int
    x: int
    al: int
    be: int


class AlgElement:
    """A sparse complex combination of basis tubes of one algebra."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: "AnnularAlgebra", coeffs: dict | None = None):
        self.alg = alg
        self.coeffs = {}
        for t, v in (coeffs or {}).items():
            if abs(v) > PRUNE_TOL:
                self.coeffs[t] = complex(v)

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for t, v in other.coeffs.items():
            out[t] = out.get(t, 0.0) + v
        return AlgElement(self.alg, out)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __rmul__(self, scalar):
        return AlgElement(self.alg, {t: scalar * v for t, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            return self.alg.multiply(self, other)
        return AlgElement(self.alg, {t: other * v for t, v in self.coeffs.items()})

    def _check(self, other):
        if other.alg is not self.alg:
            raise AlgebraMismatch("elements belong to different annular algebras")

    def vector(self) -> np.ndarray:
        out = np.zeros(self.alg.dim, dtype=complex)
        for t, v in self.coeffs.items():
            out[self.alg.index[t]] = v
        return out

    def norm(self) -> float:
        return math.sqrt(sum(abs(v) ** 2 for v in self.coeffs.values()))

    def __repr__(self):
        terms = sorted(self.coeffs.items())[:4]
        body = " + ".join(f"({v:.4g})*{t}" for t, v in terms)
        more = "" if len(self.coeffs) <= 4 else f" + {len(self.coeffs) - 4} more"
        return f"AlgElement({body}{more})"


class AnnularAlgebra:
    """Tube algebra of a validated module category, with its WHA maps.

    All structure constants are precomputed at construction; the object is
    immutable afterwards and safe for concurrent reads.
    """

    def __init__(self, module: ModuleData):
        self.module = module
        self.cat = module.base
        self.d = module.base.fp_dims
        self.m = module.m_dims
        self.rk = module.mrank
        self.basis: list[TubeLabel] = []
        for a, b, c, d in itertools.product(range(self.rk), repeat=4):
            for x in range(self.cat.rank):
                for al in range(module.nact(x, a, c)):
                    for be in range(module.nact(x, b, d)):
                        self.basis.append(TubeLabel(a, b, c, d, x, al, be))
        self.basis.sort()
        self.index = {t: i for i, t in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._mul: dict[tuple[int, int], dict[int, complex]] = {}
        self._build_product()
        self.unit = AlgElement(self, {self._ptube(a, b): 1.0
                                      for a in range(self.rk) for b in range(self.rk)})
        self.delta: list[list[tuple[complex, int, int]]] = [
            self._coproduct_tube(t) for t in self.basis]
        self.eps_vec = np.array([self._counit_tube(t) for t in self.basis])
        self.S_mat = self._build_antipode()
        self.star_mat = self._build_star()
        self.lam_vec = np.array([self._haar_measure_tube(t) for t in self.basis])
        self.Lambda = self._build_haar()
        self.g = AlgElement(self, {self._ptube(a, b): self.m[a] / self.m[b]
                                   for a in range(self.rk) for b in range(self.rk)})
        self.g_inv = AlgElement(self, {self._ptube(a, b): self.m[b] / self.m[a]
                                       for a in range(self.rk) for b in range(self.rk)})
        self._reg = {}

    # -- construction ---------------------------------------------------

    def _ptube(self, a, b) -> TubeLabel:
        return TubeLabel(a, b, a, b, UNIT, 0, 0)

    def _build_product(self):
        f1 = self.module.f1
        act = self.module.act
        nfuse = self.cat.fusion
        for i, u in enumerate(self.basis):       # outer tube
            for j, v in enumerate(self.basis):   # inner tube
                if (v.c, v.d) != (u.a, u.b):
                    continue
                out: dict[int, complex] = {}
                for y in range(self.cat.rank):
                    nz = nfuse[u.x, v.x, y]
                    if nz == 0:
                        continue
                    w = math.sqrt(self.d[v.x] * self.d[u.x] / self.d[y])
                    for ze in range(nz):
                        for mu in range(act[y, v.a, u.c]):
                            fbot = f1.entry((u.x, v.x, v.a, u.c, ze, y, mu,
                                             v.al, v.c, u.al))
                            if fbot == 0:
                                continue
                            for nu in range(act[y, v.b, u.d]):
                                ftop = f1.inv_entry((u.x, v.x, v.b, u.d, ze, y, nu,
                                                     v.be, v.d, u.be))
                                if ftop == 0:
                                    continue
                                t = TubeLabel(v.a, v.b, u.c, u.d, y, mu, nu)
                                k = self.index[t]
                                out[k] = out.get(k, 0.0) + w * fbot * ftop
                out = {k: val for k, val in out.items() if abs(val) > PRUNE_TOL}
                if out:
                    self._mul[i, j] = out

    def _coproduct_tube(self, t: TubeLabel):
        """Cut the tube horizontally: first factor is the top half."""
        act = self.module.act
        w = 1.0 / math.sqrt(self.d[t.x])
        out = []
        for e in range(self.rk):
            for f in range(self.rk):
                for mu in range(act[t.x, e, f]):
                    top = TubeLabel(e, t.b, f, t.d, t.x, mu, t.be)
                    bot = TubeLabel(t.a, e, t.c, f, t.x, t.al, mu)
                    out.append((complex(w), self.index[top], self.index[bot]))
        return out

    def _counit_tube(self, t: TubeLabel) -> complex:
        if t.a == t.b and t.c == t.d and t.al == t.be:
            return complex(math.sqrt(self.d[t.x]))
        return 0.0j

    def _build_antipode(self) -> np.ndarray:
        f1 = self.module.f1
        act = self.module.act
        dual = self.cat.dual
        S = np.zeros((self.dim, self.dim), dtype=complex)
        for j, t in enumerate(self.basis):
            xb = dual[t.x]
            w = self.m[t.b] * self.d[t.x] / self.m[t.d]
            for mu in range(act[xb, t.d, t.b]):
                ftop = f1.inv_entry((xb, t.x, t.b, t.b, 0, UNIT, 0, t.be, t.d, mu))
                if ftop == 0:
                    continue
                for nu in range(act[xb, t.c, t.a]):
                    fbot = f1.entry((xb, t.x, t.a, t.a, 0, UNIT, 0, t.al, t.c, nu))
                    if fbot == 0:
                        continue
                    out = TubeLabel(t.d, t.c, t.b, t.a, xb, mu, nu)
                    S[self.index[out], j] += w * fbot * ftop
        return S

    def _build_star(self) -> np.ndarray:
        f1 = self.module.f1
        act = self.module.act
        dual = self.cat.dual
        st = np.zeros((self.dim, self.dim), dtype=complex)
        for j, t in enumerate(self.basis):
            xb = dual[t.x]
            w = self.d[t.x] * math.sqrt(self.m[t.a] * self.m[t.b]
                                        / (self.m[t.c] * self.m[t.d]))
            for mu in range(act[xb, t.c, t.a]):
                fbot = f1.inv_entry((xb, t.x, t.a, t.a, 0, UNIT, 0, t.al, t.c, mu))
                if fbot == 0:
                    continue
                for nu in range(act[xb, t.d, t.b]):
                    ftop = f1.entry((xb, t.x, t.b, t.b, 0, UNIT, 0, t.be, t.d, nu))
                    if ftop == 0:
                        continue
                    out = TubeLabel(t.c, t.d, t.a, t.b, xb, mu, nu)
                    st[self.index[out], j] += w * fbot * ftop
        return st

    def _haar_measure_tube(self, t: TubeLabel) -> complex:
        if t.x == UNIT and t.al == 0 and t.be == 0 and t.a == t.c and t.b == t.d:
            return complex(self.rk * self.m[t.a] ** 2)
        return 0.0j

    def _build_haar(self) -> AlgElement:
        act = self.module.act
        coeffs = {}
        for a in range(self.rk):
            for b in range(self.rk):
                for x in range(self.cat.rank):
                    for al in range(act[x, a, b]):
                        t = TubeLabel(a, a, b, b, x, al, al)
                        coeffs[t] = math.sqrt(self.d[x]) / (self.m[a] * self.m[b] * self.rk)
        return AlgElement(self, coeffs)

    # -- the WHA maps -----------------------------------------------------

    def element(self, coeffs: dict) -> AlgElement:
        return AlgElement(self, coeffs)

    def tube(self, t: TubeLabel) -> AlgElement:
        return AlgElement(self, {t: 1.0})

    def multiply(self, u: AlgElement, v: AlgElement) -> AlgElement:
        u._check(v)
        if u.alg is not self:
            raise AlgebraMismatch("elements belong to a different algebra")
        out: dict[int, complex] = {}
        for tu, cu in u.coeffs.items():
            iu = self.index[tu]
            for tv, cv in v.coeffs.items():
                sc = self._mul.get((iu, self.index[tv]))
                if not sc:
                    continue
                cuv = cu * cv
                for k, val in sc.items():
                    out[k] = out.get(k, 0.0) + cuv * val
        return AlgElement(self, {self.basis[k]: v for k, v in out.items()})

    def coproduct(self, u: AlgElement) -> list[tuple[AlgElement, AlgElement]]:
        """Sweedler terms of Delta(u) as (first, second) element pairs."""
        out = []
        for t, c in u.coeffs.items():
            for w, i1, i2 in self.delta[self.index[t]]:
                out.append((self.element({self.basis[i1]: c * w}),
                            self.tube(self.basis[i2])))
        return out

    def counit(self, u: AlgElement) -> complex:
        return complex(sum(c * self.eps_vec[self.index[t]] for t, c in u.coeffs.items()))

    def antipode(self, u: AlgElement) -> AlgElement:
        vec = self.S_mat @ u.vector()
        return self._from_vector(vec)

    def star(self, u: AlgElement) -> AlgElement:
        vec = self.star_mat @ u.vector().conj()
        return self._from_vector(vec)

    def haar(self) -> AlgElement:
        return self.Lambda

    def haar_measure(self, u: AlgElement) -> complex:
        return complex(self.lam_vec @ u.vector())

    def grouplike(self, inverse: bool = False) -> AlgElement:
        return self.g_inv if inverse else self.g

    def proj_left(self, u: AlgElement) -> AlgElement:
        """Target counital map: u maps to eps(1_(1) u) 1_(2)."""
        out: dict[TubeLabel, complex] = {}
        for t1, c1 in self.unit.coeffs.items():
            for w, i1, i2 in self.delta[self.index[t1]]:
                val = c1 * w * self.counit(self.multiply(self.tube(self.basis[i1]), u))
                if abs(val) > PRUNE_TOL:
                    t2 = self.basis[i2]
                    out[t2] = out.get(t2, 0.0) + val
        return AlgElement(self, out)

    def proj_right(self, u: AlgElement) -> AlgElement:
        """Source counital map: u maps to 1_(1) eps(u 1_(2))."""
        out: dict[TubeLabel, complex] = {}
        for t1, c1 in self.unit.coeffs.items():
            for w, i1, i2 in self.delta[self.index[t1]]:
                val = c1 * w * self.counit(self.multiply(u, self.tube(self.basis[i2])))
                if abs(val) > PRUNE_TOL:
                    t2 = self.basis[i1]
                    out[t2] = out.get(t2, 0.0) + val
        return AlgElement(self, out)

    # -- linear-algebra views ----------------------------------------------

    def left_regular(self, i: int) -> np.ndarray:
        """Matrix of left multiplication by basis tube i in the tube basis."""
        cached = self._reg.get(i)
        if cached is not None:
            return cached
        mat = np.zeros((self.dim, self.dim), dtype=complex)
        for j in range(self.dim):
            sc = self._mul.get((i, j))
            if sc:
                for k, v in sc.items():
                    mat[k, j] = v
        self._reg[i] = mat
        return mat

    def gram(self) -> np.ndarray:
        """Positive-definite Gram matrix of <u, v> = lambda(u* v)."""
        lam_of_mul = np.zeros((self.dim, self.dim), dtype=complex)
        for (i, j), sc in self._mul.items():
            lam_of_mul[i, j] = sum(self.lam_vec[k] * v for k, v in sc.items())
        return self.star_mat.T @ lam_of_mul

    def _from_vector(self, vec: np.ndarray) -> AlgElement:
        return AlgElement(self, {self.basis[k]: v for k, v in enumerate(vec)
                                 if abs(v) > PRUNE_TOL})

    def structure_dump(self) -> dict:
        """Structure constants as a JSON-ready dictionary, for debugging."""
        def tkey(t: TubeLabel) -> str:
            return f"{t.a},{t.b},{t.c},{t.d},{t.x},{t.al + 1},{t.be + 1}"

        product = {}
        for (i, j), sc in sorted(self._mul.items()):
            product[f"{tkey(self.basis[i])} * {tkey(self.basis[j])}"] = {
                tkey(self.basis[k]): [v.real, v.imag] for k, v in sorted(sc.items())}
        return {
            "dimension": self.dim,
            "basis": [tkey(t) for t in self.basis],
            "product": product,
            "counit": [[v.real, v.imag] for v in self.eps_vec],
            "haar_integral": {tkey(t): [v.real, v.imag]
                              for t, v in sorted(self.Lambda.coeffs.items())},
        }

    def __repr__(self):
        return f"AnnularAlgebra(dim={self.dim}, module={self.module!r})"


def build_algebra(module: ModuleData) -> AnnularAlgebra:
    """Construct the tube algebra of a validated module category."""
    return AnnularAlgebra(module)


# ---------------------------------------------------------------------------
# axiom verification


@dataclass
class WhaReport:
    """Numerical residuals of the weak Hopf and C* axioms."""

    residuals: dict = field(default_factory=dict)
    informative: dict = field(default_factory=dict)
    gram_min_eig: float = 0.0
    first_violation: tuple | None = None

    def passed(self, tol: float) -> bool:
        return max(self.residuals.values(), default=0.0) < tol and self.gram_min_eig > 0


def _pairs_product(alg, pairs_a, pairs_b):
    """Multiply two formal sums of tensor-square terms componentwise."""
    out = {}
    for ca, (l1, r1) in pairs_a:
        for cb, (l2, r2) in pairs_b:
            left = alg._mul.get((l1, l2), {})
            right = alg._mul.get((r1, r2), {})
            for kl, vl in left.items():
                for kr, vr in right.items():
                    key = (kl, kr)
                    out[key] = out.get(key, 0.0) + ca * cb * vl * vr
    return {k: v for k, v in out.items() if abs(v) > PRUNE_TOL}


def verify_wha(alg: AnnularAlgebra, tolerance: float = 1e-9) -> WhaReport:
    """Check every weak-Hopf and C* axiom of the tube algebra numerically.

    Covers (co)associativity, (co)unit laws, multiplicativity of the
    coproduct, the weak unit/counit compatibilities, the antipode axioms via
    the counital maps, the star axioms, Haar invariance and idempotency, and
    positive-definiteness of lambda(u* v). The identity S^2 = Ad_g is
    reported separately as informative.
    """
    rep = WhaReport()
    n = alg.dim

    def record(name, value):
        rep.residuals[name] = max(rep.residuals.get(name, 0.0), value)
        if value > tolerance and rep.first_violation is None:
            rep.first_violation = (name, value)

    unit_vec = alg.unit.vector()
    reg = [alg.left_regular(i) for i in range(n)]

    # associativity and unit laws through the regular representation
    assoc = 0.0
    for i in range(n):
        for j in range(n):
            prod_ij = np.zeros((n, n), dtype=complex)
            sc = alg._mul.get((i, j), {})
            for k, v in sc.items():
                prod_ij += v * reg[k]
            assoc = max(assoc, float(np.max(np.abs(reg[i] @ reg[j] - prod_ij))))
    record("associativity", assoc)
    unit_mat = sum(unit_vec[i] * reg[i] for i in range(n))
    record("unit_left", float(np.max(np.abs(unit_mat - np.eye(n)))))
    record("unit_right", float(np.max(np.abs(
        np.column_stack([reg[i] @ unit_vec for i in range(n)]) - np.eye(n)))))

    # coassociativity and counit laws
    coassoc = 0.0
    counit_law = 0.0
    for i, t in enumerate(alg.basis):
        lhs: dict = {}
        rhs: dict = {}
        left_sum = np.zeros(n, dtype=complex)
        right_sum = np.zeros(n, dtype=complex)
        for w, i1, i2 in alg.delta[i]:
            for w2, j1, j2 in alg.delta[i1]:
                key = (j1, j2, i2)
                lhs[key] = lhs.get(key, 0.0) + w * w2
            for w2, j1, j2 in alg.delta[i2]:
                key = (i1, j1, j2)
                rhs[key] = rhs.get(key, 0.0) + w * w2
            left_sum[i2] += w * alg.eps_vec[i1]
            right_sum[i1] += w * alg.eps_vec[i2]
        for key in lhs.keys() | rhs.keys():
            coassoc = max(coassoc, abs(lhs.get(key, 0.0) - rhs.get(key, 0.0)))
        target = np.zeros(n, dtype=complex)
        target[i] = 1.0
        counit_law = max(counit_law, float(np.max(np.abs(left_sum - target))),
                         float(np.max(np.abs(right_sum - target))))
    record("coassociativity", coassoc)
    record("counit_law", counit_law)

    # Delta(uv) = Delta(u) Delta(v)
    mult = 0.0
    delta_pairs = [[(w, (i1, i2)) for w, i1, i2 in alg.delta[i]] for i in range(n)]
    for i in range(n):
        for j in range(n):
            sc = alg._mul.get((i, j), {})
            lhs: dict = {}
            for k, v in sc.items():
                for w, i1, i2 in alg.delta[k]:
                    key = (i1, i2)
                    lhs[key] = lhs.get(key, 0.0) + v * w
            rhs = _pairs_product(alg, delta_pairs[i], delta_pairs[j])
            for key in lhs.keys() | rhs.keys():
                mult = max(mult, abs(lhs.get(key, 0.0) - rhs.get(key, 0.0)))
    record("coproduct_multiplicative", mult)

    # weak unit axiom: Delta^2(1) = (Delta(1) x 1)(1 x Delta(1)) and swapped
    unit_pairs = []
    for t, c in alg.unit.coeffs.items():
        for w, i1, i2 in alg.delta[alg.index[t]]:
            unit_pairs.append((c * w, (i1, i2)))
    d2: dict = {}
    for c, (i1, i2) in unit_pairs:
        for w, j1, j2 in alg.delta[i1]:
            key = (j1, j2, i2)
            d2[key] = d2.get(key, 0.0) + c * w
    for swap in (False, True):
        # without swap: 1_(1) x 1_(2) 1'_(1) x 1'_(2); with: 1_(1) x 1'_(1) 1_(2) x 1'_(2)
        acc: dict = {}
        for c1, (i1, i2) in unit_pairs:
            for c2, (j1, j2) in unit_pairs:
                mid = alg._mul.get((j1, i2) if swap else (i2, j1), {})
                for km, vm in mid.items():
                    key0 = (i1, km, j2)
                    acc[key0] = acc.get(key0, 0.0) + c1 * c2 * vm
        err = 0.0
        for key in d2.keys() | acc.keys():
            err = max(err, abs(d2.get(key, 0.0) - acc.get(key, 0.0)))
        record("weak_unit_swapped" if swap else "weak_unit", err)

    # weak counit axiom: eps(uvw) = eps(u v_(1)) eps(v_(2) w) = eps(u v_(2)) eps(v_(1) w)
    eps_mul = np.zeros((n, n), dtype=complex)
    for (i, j), sc in alg._mul.items():
        eps_mul[i, j] = sum(alg.eps_vec[k] * v for k, v in sc.items())
    weak_counit = 0.0
    for j in range(n):
        a1 = np.zeros((n, n), dtype=complex)
        a2 = np.zeros((n, n), dtype=complex)
        full = np.zeros((n, n), dtype=complex)
        for w, j1, j2 in alg.delta[j]:
            a1 += w * np.outer(eps_mul[:, j1], eps_mul[j2, :])
            a2 += w * np.outer(eps_mul[:, j2], eps_mul[j1, :])
        for i in range(n):
            sc = alg._mul.get((i, j), {})
            for k, v in sc.items():
                full[i, :] += v * eps_mul[k, :]
        weak_counit = max(weak_counit, float(np.max(np.abs(full - a1))),
                          float(np.max(np.abs(full - a2))))
    record("weak_counit", weak_counit)

    # antipode axioms
    anti = 0.0
    anti3 = 0.0
    s_anti = 0.0
    for i, t in enumerate(alg.basis):
        u = alg.tube(t)
        lhs1 = AlgElement(alg)
        lhs2 = AlgElement(alg)
        lhs3 = AlgElement(alg)
        for w, i1, i2 in alg.delta[i]:
            t1, t2 = alg.basis[i1], alg.basis[i2]
            lhs1 = lhs1 + w * alg.multiply(alg.tube(t1), alg.antipode(alg.tube(t2)))
            lhs2 = lhs2 + w * alg.multiply(alg.antipode(alg.tube(t1)), alg.tube(t2))
            for w2, j1, j2 in alg.delta[i1]:
                term = alg.multiply(
                    alg.multiply(alg.antipode(alg.tube(alg.basis[j1])),
                                 alg.tube(alg.basis[j2])),
                    alg.antipode(alg.tube(t2)))
                lhs3 = lhs3 + (w * w2) * term
        anti = max(anti, (lhs1 - alg.proj_left(u)).norm(),
                   (lhs2 - alg.proj_right(u)).norm())
        anti3 = max(anti3, (lhs3 - alg.antipode(u)).norm())
    record("antipode_counital", anti)
    record("antipode_triple", anti3)
    for i in range(n):
        for j in range(n):
            u, v = alg.tube(alg.basis[i]), alg.tube(alg.basis[j])
            lhs = alg.antipode(alg.multiply(u, v))
            rhs = alg.multiply(alg.antipode(v), alg.antipode(u))
            s_anti = max(s_anti, (lhs - rhs).norm())
    record("antipode_antihom", s_anti)

    # star axioms
    star_inv = float(np.max(np.abs(alg.star_mat @ alg.star_mat.conj() - np.eye(n))))
    record("star_involution", star_inv)
    star_prod = 0.0
    for i in range(n):
        for j in range(n):
            u, v = alg.tube(alg.basis[i]), alg.tube(alg.basis[j])
            lhs = alg.star(alg.multiply(u, v))
            rhs = alg.multiply(alg.star(v), alg.star(u))
            star_prod = max(star_prod, (lhs - rhs).norm())
    record("star_antimultiplicative", star_prod)
    star_cop = 0.0
    for i in range(n):
        lhs: dict = {}
        star_i = alg.star(alg.tube(alg.basis[i]))
        for t, c in star_i.coeffs.items():
            for w, i1, i2 in alg.delta[alg.index[t]]:
                key = (i1, i2)
                lhs[key] = lhs.get(key, 0.0) + c * w
        rhs: dict = {}
        for w, i1, i2 in alg.delta[i]:
            s1 = alg.star(alg.tube(alg.basis[i1]))
            s2 = alg.star(alg.tube(alg.basis[i2]))
            for ta, ca in s1.coeffs.items():
                for tb, cb in s2.coeffs.items():
                    key = (alg.index[ta], alg.index[tb])
                    rhs[key] = rhs.get(key, 0.0) + np.conj(w) * ca * cb
        err = 0.0
        for key in lhs.keys() | rhs.keys():
            err = max(err, abs(lhs.get(key, 0.0) - rhs.get(key, 0.0)))
        star_cop = max(star_cop, err)
    record("star_comultiplicative", star_cop)

    # Haar integral properties
    lam = alg.Lambda
    record("haar_idempotent", (alg.multiply(lam, lam) - lam).norm())
    record("haar_antipode_fixed", (alg.antipode(lam) - lam).norm())
    record("haar_star_fixed", (alg.star(lam) - lam).norm())
    record("haar_counital_unit", (alg.proj_left(lam) - alg.unit).norm())
    inv = 0.0
    for i in range(n):
        u = alg.tube(alg.basis[i])
        inv = max(inv, (alg.multiply(u, lam)
                        - alg.multiply(alg.proj_left(u), lam)).norm())
        inv = max(inv, (alg.multiply(lam, u)
                        - alg.multiply(lam, alg.proj_right(u))).norm())
    record("haar_invariance", inv)

    # grouplike element
    record("grouplike_inverse", (alg.multiply(alg.g, alg.g_inv) - alg.unit).norm())
    dg: dict = {}
    for t, c in alg.g.coeffs.items():
        for w, i1, i2 in alg.delta[alg.index[t]]:
            key = (i1, i2)
            dg[key] = dg.get(key, 0.0) + c * w
    gg_d1: dict = {}
    for tg1, cg1 in alg.g.coeffs.items():
        for tg2, cg2 in alg.g.coeffs.items():
            i1g, i2g = alg.index[tg1], alg.index[tg2]
            for t, c in alg.unit.coeffs.items():
                for w, i1, i2 in alg.delta[alg.index[t]]:
                    left = alg._mul.get((i1g, i1), {})
                    right = alg._mul.get((i2g, i2), {})
                    for kl, vl in left.items():
                        for kr, vr in right.items():
                            key = (kl, kr)
                            gg_d1[key] = gg_d1.get(key, 0.0) + cg1 * cg2 * c * w * vl * vr
    gerr = 0.0
    for key in dg.keys() | gg_d1.keys():
        gerr = max(gerr, abs(dg.get(key, 0.0) - gg_d1.get(key, 0.0)))
    record("grouplike_coproduct", gerr)

    # S^2 = Ad_g: a standard consequence; reported as informative only
    s2 = alg.S_mat @ alg.S_mat
    adg = np.zeros((n, n), dtype=complex)
    for i in range(n):
        conj = alg.multiply(alg.multiply(alg.g, alg.tube(alg.basis[i])), alg.g_inv)
        adg[:, i] = conj.vector()
    rep.informative["antipode_squared_adg"] = float(np.max(np.abs(s2 - adg)))

    # positivity of the inner product lambda(u* v)
    gram = alg.gram()
    record("gram_hermitian", float(np.max(np.abs(gram - gram.conj().T))))
    rep.gram_min_eig = float(np.min(np.linalg.eigvalsh((gram + gram.conj().T) / 2)))
    if rep.gram_min_eig <= 0:
        rep.first_violation = rep.first_violation or ("gram_positive", rep.gram_min_eig)

    # Hopf degeneration: with a single module object the coproduct is unital
    if alg.rk == 1:
        du: dict = {}
        for t, c in alg.unit.coeffs.items():
            for w, i1, i2 in alg.delta[alg.index[t]]:
                key = (i1, i2)
                du[key] = du.get(key, 0.0) + c * w
        uu = {(alg.index[t1], alg.index[t2]): c1 * c2
              for t1, c1 in alg.unit.coeffs.items()
              for t2, c2 in alg.unit.coeffs.items()}
        err = 0.0
        for key in du.keys() | uu.keys():
            err = max(err, abs(du.get(key, 0.0) - uu.get(key, 0.0)))
        record("hopf_degeneration", err)

    return rep
