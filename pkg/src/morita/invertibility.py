"""Invertibility of a bimodule category from its skeletal data.

The decision rests on two conditions: the two categories have equal total
dimension, and the character Gram matrix built from the bimodule associator
is the identity. When the Gram matrix deviates, its integer structure tells
us how invertibility fails: an off-diagonal 1 means two labels carry the same
irreducible, a diagonal entry above 1 means a label carries a reducible
representation, and a perfect Gram with a dimension deficit means some
irreducibles are missing. The same data also supports the matrix-element
orthogonality sum and the tensor-network injectivity identity, which agree
with each other on every input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .skeletal import BimoduleData

FPDIM_RTOL = 1e-8
OFF_DIAGONAL_THRESHOLD = 0.5
REDUCIBLE_THRESHOLD = 1.5


@dataclass
class Verdict:
    """Outcome of the invertibility decision with failure-mode witnesses."""

    invertible: bool
    fpdim_c: float
    fpdim_d: float
    gram: np.ndarray
    failure_modes: dict = field(default_factory=dict)
    tolerance: float = 1e-9

    def summary(self) -> str:
        if self.invertible:
            return "invertible"
        parts = []
        for mode, witness in self.failure_modes.items():
            parts.append(f"{mode}: {witness}")
        return "not invertible; " + "; ".join(parts) if parts else "not invertible"


def character_gram(data: BimoduleData) -> np.ndarray:
    """The pairing matrix of the characters labeled by the right category.

    Entry (c, c') sums (d_a / m_b^2) times a bimodule-associator entry against
    an inverse one over all closed tube configurations, divided by the number
    of module labels; it equals the identity exactly when the right category
    labels the irreducible tube representations bijectively.
    """
    rk = data.mrank
    rC = data.left.rank
    rD = data.right.rank
    d = data.left.fp_dims
    m = data.m_dims
    gram = np.zeros((rD, rD), dtype=complex)
    for c, cp in itertools.product(range(rD), repeat=2):
        total = 0.0 + 0.0j
        for a, b, dd in itertools.product(range(rC), range(rk), range(rk)):
            nal = data.left_act[a, b, b]
            nbe = data.left_act[a, dd, dd]
            if nal == 0 or nbe == 0:
                continue
            w = d[a] / m[b] ** 2
            for al, be in itertools.product(range(nal), range(nbe)):
                for mu in range(data.right_act[b, c, dd]):
                    f_val = data.f2.entry((a, b, c, dd, al, b, mu, mu, dd, be))
                    if f_val == 0:
                        continue
                    for nu in range(data.right_act[b, cp, dd]):
                        fi_val = data.f2.inv_entry((a, b, cp, dd, al, b, nu, nu, dd, be))
                        if fi_val != 0:
                            total += w * f_val * fi_val
        gram[c, cp] = total / rk
    return gram


def check_invertible(data: BimoduleData, tolerance: float | None = None) -> Verdict:
    """Decide invertibility and diagnose the failure modes otherwise."""
    tol = data.tolerance if tolerance is None else tolerance
    gram = character_gram(data)
    fp_c = data.left.fpdim
    fp_d = data.right.fpdim
    rD = data.right.rank
    gram_ok = float(np.max(np.abs(gram - np.eye(rD)))) < tol
    fp_ok = abs(fp_c - fp_d) < FPDIM_RTOL * max(1.0, fp_c, fp_d)
    modes: dict = {}
    reducible = [c for c in range(rD) if gram[c, c].real > REDUCIBLE_THRESHOLD]
    if reducible:
        modes["ReducibleLabels"] = {
            int(c): float(round(gram[c, c].real, 9)) for c in reducible}
    duplicates = [[int(c), int(cp)] for c in range(rD) for cp in range(c + 1, rD)
                  if abs(gram[c, cp]) > OFF_DIAGONAL_THRESHOLD
                  and gram[c, c].real <= REDUCIBLE_THRESHOLD
                  and gram[cp, cp].real <= REDUCIBLE_THRESHOLD]
    if duplicates:
        modes["DuplicateLabels"] = duplicates
    if gram_ok and not fp_ok:
        modes["MissingIrreps"] = f"FPdim {_fmt(fp_c)} != {_fmt(fp_d)}"
    return Verdict(invertible=gram_ok and fp_ok, fpdim_c=fp_c, fpdim_d=fp_d,
                   gram=gram, failure_modes=modes, tolerance=tol)


def _fmt(x: float) -> str:
    return f"{x:g}" if abs(x - round(x)) < 1e-9 else f"{x:.6f}"


@dataclass
class OrthogonalityReport:
    max_residual: float
    worst: tuple | None = None

    def passed(self, tol: float) -> bool:
        return self.max_residual < tol


def check_matrix_orthogonality(data: BimoduleData) -> OrthogonalityReport:
    """Residual of the matrix-element orthogonality sum.

    Sums d_a F2 Fi2 over the wrapping label and its two vertex indices; on
    invertible data this telescopes to delta factors times m_e m_f / d_c. Runs
    on arbitrary data and reports the worst violation.
    """
    rk = data.mrank
    rC = data.left.rank
    rD = data.right.rank
    d = data.left.fp_dims
    dd_dims = data.right.fp_dims
    m = data.m_dims
    la, ra = data.left_act, data.right_act
    worst, worst_at = 0.0, None
    for b, e, f, dm in itertools.product(range(rk), repeat=4):
        for c, cp in itertools.product(range(rD), repeat=2):
            nbe, nbep = ra[e, c, dm], ra[e, cp, dm]
            nmu, nmup = ra[b, c, f], ra[b, cp, f]
            if nbe * nmu == 0 or nbep * nmup == 0:
                continue
            for be, bep, mu, mup in itertools.product(
                    range(nbe), range(nbep), range(nmu), range(nmup)):
                total = 0.0 + 0.0j
                for a in range(rC):
                    for al in range(la[a, b, e]):
                        for nu in range(la[a, f, dm]):
                            fv = data.f2.entry((a, b, c, dm, al, e, be, mu, f, nu))
                            if fv == 0:
                                continue
                            fiv = data.f2.inv_entry(
                                (a, b, cp, dm, al, e, bep, mup, f, nu))
                            total += d[a] * fv * fiv
                expected = 0.0
                if c == cp and be == bep and mu == mup:
                    expected = m[e] * m[f] / dd_dims[c]
                res = abs(total - expected)
                if res > worst:
                    worst, worst_at = res, (b, e, f, dm, c, cp, be, bep, mu, mup)
    return OrthogonalityReport(worst, worst_at)


@dataclass
class MpoReport:
    """Residuals of the injectivity identity and its orthogonality reduction."""

    mpo_residual: float
    schur_residual: float
    tolerance: float

    @property
    def mpo_passed(self) -> bool:
        return self.mpo_residual < self.tolerance

    @property
    def schur_passed(self) -> bool:
        return self.schur_residual < self.tolerance

    @property
    def agreement(self) -> bool:
        return self.mpo_passed == self.schur_passed


def check_mpo_injectivity(data: BimoduleData,
                          tolerance: float | None = None) -> MpoReport:
    """The scalar injectivity identity for the tensor-network transfer matrix.

    Both sides run over all admissible open-index assignments: the left side
    pairs two right-module associators through the fused symmetry label, the
    right side threads a wrapping label through three bimodule associators.
    Also evaluates the reduced orthogonality form, whose pass/fail verdict
    agrees with the full identity on every input.
    """
    tol = data.tolerance if tolerance is None else tolerance
    rk = data.mrank
    rC = data.left.rank
    rD = data.right.rank
    d = data.left.fp_dims
    dd_dims = data.right.fp_dims
    m = data.m_dims
    la, ra = data.left_act, data.right_act
    fp_c = data.left.fpdim
    fp_d = data.right.fpdim
    worst = 0.0
    for g, h, cp in itertools.product(range(rD), repeat=3):
        for b, e, dm, f, j, k in itertools.product(range(rk), repeat=6):
            n_g0, n_g1 = ra[e, g, k], ra[b, g, j]
            n_e0, n_e1 = ra[k, h, dm], ra[j, h, f]
            n_bp, n_mp = ra[e, cp, dm], ra[b, cp, f]
            if n_g0 * n_g1 * n_e0 * n_e1 * n_bp * n_mp == 0:
                continue
            for g0, g1, e0, e1, bp, mp in itertools.product(
                    range(n_g0), range(n_g1), range(n_e0), range(n_e1),
                    range(n_bp), range(n_mp)):
                lhs = 0.0 + 0.0j
                for ze in range(data.right.fusion[g, h, cp]):
                    f3i = data.f3.inv_entry((b, g, h, f, g1, j, e1, ze, cp, mp))
                    if f3i == 0:
                        continue
                    f3v = data.f3.entry((e, g, h, dm, g0, k, e0, ze, cp, bp))
                    lhs += f3i * f3v
                lhs *= m[e] * m[f] / (dd_dims[cp] * fp_d)
                rhs = 0.0 + 0.0j
                for a in range(rC):
                    wa = d[a] / fp_c
                    for al in range(la[a, b, e]):
                        for eta in range(la[a, j, k]):
                            f2b = data.f2.entry((a, b, g, k, al, e, g0, g1, j, eta))
                            if f2b == 0:
                                continue
                            for nu in range(la[a, f, dm]):
                                f2i = data.f2.inv_entry(
                                    (a, b, cp, dm, al, e, bp, mp, f, nu))
                                if f2i == 0:
                                    continue
                                f2c = data.f2.entry(
                                    (a, j, h, dm, eta, k, e0, e1, f, nu))
                                rhs += wa * f2i * f2b * f2c
                worst = max(worst, abs(lhs - rhs))
    schur = check_matrix_orthogonality(data)
    return MpoReport(mpo_residual=worst, schur_residual=schur.max_residual,
                     tolerance=tol)
